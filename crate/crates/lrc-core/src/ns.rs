//! Nekrasov–Shatashvili limit from refined invariants of one-dimensional sheaves.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec::Vec;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::rat::{factorial, is_integer, ri, Rat};
use crate::series::{RatSeries, Var};

/// `Ω_d(y^{1/2})` for each degree, keyed by the exponent of `y^{1/2}`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct OmegaTable {
    entries: BTreeMap<u32, BTreeMap<i32, Rat>>,
}

impl OmegaTable {
    pub fn new() -> Self {
        Self::default()
    }

    /// Builds a table from `(degree, chi, coefficients)` rows. Rows sharing a degree
    /// are averaged over their `chi` values; `chi = None` means a single averaged row.
    pub fn from_rows(rows: &[(u32, Option<i64>, Vec<(i32, Rat)>)]) -> Result<Self> {
        let mut grouped: BTreeMap<u32, Vec<&Vec<(i32, Rat)>>> = BTreeMap::new();
        for (d, _, c) in rows {
            if *d == 0 {
                return Err(Error::InvalidInput("degree must be positive".into()));
            }
            grouped.entry(*d).or_default().push(c);
        }
        let mut t = OmegaTable::new();
        for (d, list) in grouped {
            let mut acc: BTreeMap<i32, Rat> = BTreeMap::new();
            for c in &list {
                for (e, v) in c.iter() {
                    *acc.entry(*e).or_insert_with(Rat::zero) += v;
                }
            }
            let n = ri(list.len() as i64);
            acc.retain(|_, v| !v.is_zero());
            for v in acc.values_mut() {
                *v = &*v / &n;
            }
            t.insert(d, acc)?;
        }
        Ok(t)
    }

    /// Adds one averaged entry after checking the palindromic and integrality constraints.
    pub fn insert(&mut self, d: u32, coeffs: BTreeMap<i32, Rat>) -> Result<()> {
        for (e, c) in &coeffs {
            if coeffs.get(&-e).cloned().unwrap_or_else(Rat::zero) != *c {
                return Err(Error::InvalidInput(format!("Omega_{d} is not palindromic at exponent {e}/2")));
            }
        }
        let at_one: Rat = coeffs.values().cloned().sum();
        if !is_integer(&at_one) {
            return Err(Error::InvalidInput(format!("Omega_{d}(1) = {at_one} is not an integer")));
        }
        self.entries.insert(d, coeffs);
        Ok(())
    }

    pub fn get(&self, d: u32) -> Option<&BTreeMap<i32, Rat>> {
        self.entries.get(&d)
    }

    pub fn degrees(&self) -> impl Iterator<Item = u32> + '_ {
        self.entries.keys().copied()
    }

    pub fn max_degree(&self) -> u32 {
        self.entries.keys().next_back().copied().unwrap_or(0)
    }

    /// Genus-zero Gopakumar–Vafa number `Ω_d(1)`.
    pub fn at_one(&self, d: u32) -> Option<Rat> {
        self.entries.get(&d).map(|c| c.values().cloned().sum())
    }
}

/// `cos(a ħ)` to and including `ħ^order`.
fn cos_series(a: &Rat, order: i64) -> RatSeries {
    RatSeries::from_fn(Var::Hbar, 0, order, |n| {
        if n % 2 != 0 {
            return Rat::zero();
        }
        let m = n / 2;
        let sign = if m % 2 == 0 { Rat::one() } else { -Rat::one() };
        sign * crate::rat::rpow(a, n) / Rat::from_integer(factorial(n as u64))
    })
}

/// `1/(2 sin(a ħ))`, a Laurent series starting at `ħ^{-1}`.
fn half_csc(a: &Rat, order: i64) -> Result<RatSeries> {
    let s = RatSeries::from_fn(Var::Hbar, 1, order + 2, |n| {
        if n % 2 == 0 {
            return Rat::zero();
        }
        let m = (n - 1) / 2;
        let sign = if m % 2 == 0 { Rat::one() } else { -Rat::one() };
        ri(2) * sign * crate::rat::rpow(a, n) / Rat::from_integer(factorial(n as u64))
    });
    Ok(s.inverse()?.truncate(order))
}

/// `Ω_d(e^{ikħ/2}) / (2 sin(kħ/2))`; for a palindromic `Ω` the numerator is a cosine sum.
fn cover_term(coeffs: &BTreeMap<i32, Rat>, k: i64, order: i64) -> Result<RatSeries> {
    let mut num = RatSeries::zero(Var::Hbar, order + 1);
    for (e, c) in coeffs {
        num = num.checked_add(&cos_series(&Rat::new((k * *e as i64).into(), 2.into()), order + 1).scale(c))?;
    }
    num.checked_mul(&half_csc(&Rat::new(k.into(), 2.into()), order)?)
}

/// Coefficient of `Q^D` in the NS free energy for `1 <= D <= dmax`:
/// `sum_{kd = D} k^{-2} Ω_d(e^{ikħ/2}) / (2 sin(kħ/2))`, truncated at `ħ^hbar_order`.
pub fn ns_free_energy(table: &OmegaTable, dmax: u32, hbar_order: i64) -> Result<BTreeMap<u32, RatSeries>> {
    let mut out = BTreeMap::new();
    for big_d in 1..=dmax {
        let mut acc = RatSeries::zero(Var::Hbar, hbar_order);
        for k in 1..=big_d {
            if big_d % k != 0 {
                continue;
            }
            let d = big_d / k;
            let c = table.get(d).ok_or_else(|| Error::InvalidInput(format!("Omega table has no degree {d}")))?;
            let t = cover_term(c, k as i64, hbar_order)?.scale(&Rat::new(1.into(), (k as i64 * k as i64).into()));
            acc = acc.checked_add(&t)?;
        }
        out.insert(big_d, acc);
    }
    Ok(out)
}

/// `(-1)^g` times the `ħ^{2g-1}` coefficient, as a `Q`-series through `Q^dmax`.
pub fn ns_genus(table: &OmegaTable, g: u32, dmax: u32) -> Result<RatSeries> {
    let p = 2 * g as i64 - 1;
    let f = ns_free_energy(table, dmax, p)?;
    let sign = if g % 2 == 0 { Rat::one() } else { -Rat::one() };
    Ok(RatSeries::from_fn(Var::BigQ, 1, dmax as i64, |d| &sign * f[&(d as u32)].coeff(p)))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NsComparison {
    pub g: u32,
    pub d: u32,
    pub ns: Rat,
    pub relative: Rat,
}

impl NsComparison {
    pub fn matches(&self) -> bool {
        self.ns == self.relative
    }
}

/// Pairs the NS prediction with the log-free `Q`-coefficients of the relative free energies.
/// `relative[g]` must be a `Q`-series for each `g <= gmax`.
pub fn compare_ns_relative(table: &OmegaTable, gmax: u32, dmax: u32, relative: &[RatSeries]) -> Result<Vec<NsComparison>> {
    if relative.len() <= gmax as usize {
        return Err(Error::InvalidInput(format!("relative tower stops below genus {gmax}")));
    }
    let mut out = Vec::new();
    for g in 0..=gmax {
        let ns = ns_genus(table, g, dmax)?;
        let rel = &relative[g as usize];
        if rel.var() != Var::BigQ {
            return Err(Error::VariableMismatch { left: "Q".into(), right: rel.var().symbol().into() });
        }
        for d in 1..=dmax {
            out.push(NsComparison { g, d, ns: ns.coeff(d as i64), relative: rel.try_coeff(d as i64).ok_or(Error::InsufficientPrecision { needed: d as i64, available: rel.order() })? });
        }
    }
    Ok(out)
}

/// The degree-one and degree-two entries for ℙ²: `M_{1,χ} = ℙ²` and `M_{2,χ} = ℙ⁵`.
pub fn p2_low_degree_table() -> OmegaTable {
    let row = |exps: &[i32], c: i64| exps.iter().map(|&e| (e, ri(c))).collect::<Vec<_>>();
    OmegaTable::from_rows(&[(1, None, row(&[-2, 0, 2], 1)), (2, None, row(&[-5, -3, -1, 1, 3, 5], -1))]).expect("valid table")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::rq;

    #[test]
    fn degree_one_expansion() {
        let t = p2_low_degree_table();
        let f = ns_free_energy(&t, 1, 3).unwrap();
        let s = &f[&1];
        assert_eq!(s.coeff(-1), ri(3));
        assert_eq!(s.coeff(0), Rat::zero());
        assert_eq!(s.coeff(1), rq(-7, 8));
        assert_eq!(s.coeff(3), rq(29, 640));
    }

    #[test]
    fn multicover_low_genus() {
        let t = p2_low_degree_table();
        let g0 = ns_genus(&t, 0, 2).unwrap();
        assert_eq!((g0.coeff(1), g0.coeff(2)), (ri(3), rq(-45, 8)));
        let g1 = ns_genus(&t, 1, 2).unwrap();
        assert_eq!((g1.coeff(1), g1.coeff(2)), (rq(7, 8), rq(-129, 16)));
        let g2 = ns_genus(&t, 2, 2).unwrap();
        assert_eq!(g2.coeff(2), rq(-207, 64));
    }

    #[test]
    fn only_odd_powers() {
        let f = ns_free_energy(&p2_low_degree_table(), 2, 7).unwrap();
        for s in f.values() {
            for n in (0..=6).step_by(2) {
                assert!(s.coeff(n).is_zero());
            }
        }
    }

    #[test]
    fn validation() {
        let mut t = OmegaTable::new();
        let bad: BTreeMap<i32, Rat> = [(-2, ri(1)), (2, ri(2))].into_iter().collect();
        assert!(t.insert(1, bad).is_err());
        let frac: BTreeMap<i32, Rat> = [(0, rq(1, 2))].into_iter().collect();
        assert!(t.insert(1, frac).is_err());
        // Two chi-rows averaged.
        let rows = [(1, Some(0), vec![(0, ri(2))]), (1, Some(1), vec![(0, ri(4))])];
        assert_eq!(OmegaTable::from_rows(&rows).unwrap().at_one(1), Some(ri(3)));
    }
}
