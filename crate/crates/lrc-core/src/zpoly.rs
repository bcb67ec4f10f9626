//! Multivariate polynomials in `z_1..z_n` with series coefficients.
//!
//! Exponents are at least `-1` in every variable, and only terms of total
//! degree at most `bound` are kept. Everything at higher total degree is
//! treated as unknown, exactly like the truncation order of a series.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::rat::{ri, Rat};
use crate::series::{RatSeries, Var, EXACT};

pub type Exps = Vec<i32>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZPoly {
    nvars: usize,
    bound: i64,
    cvar: Var,
    terms: BTreeMap<Exps, RatSeries>,
}

fn tdeg(e: &[i32]) -> i64 {
    e.iter().map(|&x| x as i64).sum()
}

impl ZPoly {
    pub fn zero(nvars: usize, bound: i64, cvar: Var) -> Self {
        ZPoly { nvars, bound, cvar, terms: BTreeMap::new() }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn bound(&self) -> i64 {
        self.bound
    }

    pub fn coeff_var(&self) -> Var {
        self.cvar
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exps, &RatSeries)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Coefficient of `z^e`, zero if absent.
    ///
    /// # Panics
    /// If the degree of `e` exceeds the bound, since that coefficient is unknown.
    pub fn coeff(&self, e: &[i32]) -> RatSeries {
        assert!(tdeg(e) <= self.bound, "monomial degree {} beyond bound {}", tdeg(e), self.bound);
        self.terms.get(e).cloned().unwrap_or_else(|| RatSeries::zero(self.cvar, self.min_order()))
    }

    /// Smallest truncation order among the coefficients.
    pub fn min_order(&self) -> i64 {
        self.terms.values().map(|s| s.order()).min().unwrap_or(EXACT)
    }

    /// Adds `c z^e`; monomials past the bound are dropped.
    pub fn add_term(&mut self, e: Exps, c: RatSeries) -> Result<()> {
        if e.len() != self.nvars {
            return Err(Error::InvalidInput(format!("monomial has {} entries, expected {}", e.len(), self.nvars)));
        }
        if let Some(bad) = e.iter().find(|&&x| x < -1) {
            return Err(Error::UncancelledPole(format!("exponent {bad} below -1")));
        }
        if c.var() != self.cvar {
            return Err(Error::VariableMismatch { left: self.cvar.symbol().into(), right: c.var().symbol().into() });
        }
        if tdeg(&e) > self.bound {
            return Ok(());
        }
        match self.terms.get_mut(&e) {
            Some(old) => {
                let s = old.checked_add(&c)?;
                if s.is_zero() {
                    self.terms.remove(&e);
                } else {
                    *old = s;
                }
            }
            None => {
                if !c.is_zero() {
                    self.terms.insert(e, c);
                }
            }
        }
        Ok(())
    }

    fn valuation(&self) -> i64 {
        self.terms.keys().map(|e| tdeg(e)).min().unwrap_or(self.bound + 1)
    }

    fn check(&self, o: &Self) -> Result<()> {
        if self.nvars != o.nvars {
            return Err(Error::InvalidInput(format!("variable counts differ: {} vs {}", self.nvars, o.nvars)));
        }
        if self.cvar != o.cvar {
            return Err(Error::VariableMismatch { left: self.cvar.symbol().into(), right: o.cvar.symbol().into() });
        }
        Ok(())
    }

    pub fn checked_add(&self, o: &Self) -> Result<Self> {
        self.check(o)?;
        let mut r = ZPoly::zero(self.nvars, self.bound.min(o.bound), self.cvar);
        for (e, c) in self.terms.iter().chain(o.terms.iter()) {
            r.add_term(e.clone(), c.clone())?;
        }
        Ok(r)
    }

    pub fn scale(&self, c: &Rat) -> Self {
        let mut r = ZPoly::zero(self.nvars, self.bound, self.cvar);
        if c.is_zero() {
            return r;
        }
        for (e, s) in &self.terms {
            r.terms.insert(e.clone(), s.scale(c));
        }
        r
    }

    pub fn checked_sub(&self, o: &Self) -> Result<Self> {
        self.checked_add(&o.scale(&ri(-1)))
    }

    pub fn checked_mul(&self, o: &Self) -> Result<Self> {
        self.check(o)?;
        let bound = (self.bound + o.valuation()).min(o.bound + self.valuation());
        let mut r = ZPoly::zero(self.nvars, bound, self.cvar);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &o.terms {
                let e: Exps = ea.iter().zip(eb.iter()).map(|(x, y)| x + y).collect();
                if tdeg(&e) <= bound {
                    r.add_term(e, ca.checked_mul(cb)?)?;
                }
            }
        }
        Ok(r)
    }

    /// Places variable `i` of `self` at position `slots[i]` of an `n`-variable polynomial.
    pub fn embed(&self, n: usize, slots: &[usize]) -> Result<Self> {
        if slots.len() != self.nvars || slots.iter().any(|&s| s >= n) {
            return Err(Error::InvalidInput("bad embedding slots".into()));
        }
        let mut r = ZPoly::zero(n, self.bound, self.cvar);
        for (e, c) in &self.terms {
            let mut f = vec![0; n];
            for (i, &x) in e.iter().enumerate() {
                f[slots[i]] = x;
            }
            r.add_term(f, c.clone())?;
        }
        Ok(r)
    }

    /// Lowers the total-degree bound.
    pub fn truncate_degree(&self, bound: i64) -> Self {
        let mut r = self.clone();
        r.bound = r.bound.min(bound);
        r.terms.retain(|e, _| tdeg(e) <= r.bound);
        r
    }

    /// Substitutes `z_i = sum_j m[i][j] w_j`. A factor `z_i^{-1}` is only
    /// allowed when row `i` has a single nonzero entry, since otherwise the
    /// result is not a Laurent polynomial.
    pub fn linear_substitute(&self, m: &[Vec<i64>]) -> Result<Self> {
        let n = self.nvars;
        if m.len() != n || m.iter().any(|row| row.len() != n) {
            return Err(Error::InvalidInput("substitution matrix has the wrong shape".into()));
        }
        let mr: Vec<Vec<Rat>> = m.iter().map(|row| row.iter().map(|&x| ri(x)).collect()).collect();
        if crate::linalg::determinant(&mr).is_zero() {
            return Err(Error::NotInvertible("substitution matrix is singular"));
        }
        // Cache of (row, power) -> rational polynomial in w.
        let mut cache: BTreeMap<(usize, i32), BTreeMap<Exps, Rat>> = BTreeMap::new();
        let mut r = ZPoly::zero(n, self.bound, self.cvar);
        for (e, c) in &self.terms {
            let mut acc: BTreeMap<Exps, Rat> = BTreeMap::new();
            acc.insert(vec![0; n], Rat::one());
            for (i, &p) in e.iter().enumerate() {
                if p == 0 {
                    continue;
                }
                let f = match cache.get(&(i, p)) {
                    Some(f) => f.clone(),
                    None => {
                        let f = row_power(&m[i], p)?;
                        cache.insert((i, p), f.clone());
                        f
                    }
                };
                acc = poly_mul(&acc, &f);
            }
            for (w, k) in acc {
                if w.iter().any(|&x| x < -1) {
                    return Err(Error::UncancelledPole(format!("substitution produced exponent vector {w:?}")));
                }
                r.add_term(w, c.scale(&k))?;
            }
        }
        Ok(r)
    }

    /// Applies `f` to every coefficient.
    pub fn map_coeffs(&self, mut f: impl FnMut(&RatSeries) -> Result<RatSeries>) -> Result<Self> {
        let mut r: Option<ZPoly> = None;
        for (e, c) in &self.terms {
            let s = f(c)?;
            let rr = r.get_or_insert_with(|| ZPoly::zero(self.nvars, self.bound, s.var()));
            rr.add_term(e.clone(), s)?;
        }
        Ok(r.unwrap_or_else(|| self.clone()))
    }
}

fn poly_mul(a: &BTreeMap<Exps, Rat>, b: &BTreeMap<Exps, Rat>) -> BTreeMap<Exps, Rat> {
    let mut r: BTreeMap<Exps, Rat> = BTreeMap::new();
    for (ea, ca) in a {
        for (eb, cb) in b {
            let e: Exps = ea.iter().zip(eb.iter()).map(|(x, y)| x + y).collect();
            let v = r.entry(e).or_insert_with(Rat::zero);
            *v += ca * cb;
        }
    }
    r.retain(|_, v| !v.is_zero());
    r
}

fn row_power(row: &[i64], p: i32) -> Result<BTreeMap<Exps, Rat>> {
    let n = row.len();
    if p < 0 {
        let nz: Vec<usize> = (0..n).filter(|&j| row[j] != 0).collect();
        if p < -1 || nz.len() != 1 {
            return Err(Error::UncancelledPole(format!("cannot invert the linear form {row:?}")));
        }
        let mut e = vec![0; n];
        e[nz[0]] = -1;
        let mut r = BTreeMap::new();
        r.insert(e, ri(row[nz[0]]).recip());
        return Ok(r);
    }
    let mut lin = BTreeMap::new();
    for (j, &c) in row.iter().enumerate() {
        if c != 0 {
            let mut e = vec![0; n];
            e[j] = 1;
            lin.insert(e, ri(c));
        }
    }
    let mut acc = BTreeMap::new();
    acc.insert(vec![0; n], Rat::one());
    for _ in 0..p {
        acc = poly_mul(&acc, &lin);
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn one() -> RatSeries {
        RatSeries::one(Var::EllQ, 5)
    }

    #[test]
    fn triangular_substitution() {
        let mut p = ZPoly::zero(2, 3, Var::EllQ);
        p.add_term(vec![1, 0], one()).unwrap();
        p.add_term(vec![0, 1], one()).unwrap();
        // z1 = y1, z2 = y2 - y1.
        let r = p.linear_substitute(&[vec![1, 0], vec![-1, 1]]).unwrap();
        assert_eq!(r.len(), 1);
        assert_eq!(r.coeff(&[0, 1]), one());
    }

    #[test]
    fn pole_through_sum_is_rejected() {
        let mut p = ZPoly::zero(2, 3, Var::EllQ);
        p.add_term(vec![0, -1], one()).unwrap();
        assert!(matches!(p.linear_substitute(&[vec![1, 0], vec![-1, 1]]), Err(Error::UncancelledPole(_))));
        assert!(matches!(p.linear_substitute(&[vec![1, 1], vec![1, 1]]), Err(Error::NotInvertible(_))));
        assert!(p.clone().add_term(vec![-2, 0], one()).is_err());
    }

    #[test]
    fn product_bound_tracks_valuation() {
        let mut a = ZPoly::zero(2, 3, Var::EllQ);
        a.add_term(vec![-1, 0], one()).unwrap();
        let mut b = ZPoly::zero(2, 3, Var::EllQ);
        b.add_term(vec![0, -1], one()).unwrap();
        b.add_term(vec![0, 1], one()).unwrap();
        let c = a.checked_mul(&b).unwrap();
        assert_eq!(c.bound(), 2);
        assert_eq!(c.coeff(&[-1, -1]), one());
        assert_eq!(c.coeff(&[-1, 1]), one());
    }
}
