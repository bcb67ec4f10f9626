//! The local/relative correspondence: correction terms, their values, and
//! solving for either side genus by genus.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec::Vec;

use num_traits::{One, Zero};

use crate::elliptic::{default_qorder, f1_empty, EllipticCache, Label};
use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::mirror::{cq_change, BModElement, GenusOne, MirrorData};
use crate::quasimod::RECOGNITION_MARGIN;
use crate::rat::{ri, rq, Rat};
use crate::series::RatSeries;

/// One summand: an elliptic factor of genus `h` with legs `(a_j, g_j)`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct CorrTerm {
    pub h: u32,
    /// Sorted decreasingly; `(0, 0)` never occurs.
    pub legs: Vec<(u32, u32)>,
    pub aut_order: u64,
}

impl CorrTerm {
    pub fn genus(&self) -> u32 {
        self.h + self.legs.iter().map(|l| l.1).sum::<u32>()
    }

    pub fn label(&self) -> Label {
        Label { h: self.h, a: self.legs.iter().map(|l| l.0 as i32).collect() }
    }
}

fn aut_of(legs: &[(u32, u32)]) -> u64 {
    let mut mult: BTreeMap<(u32, u32), u64> = BTreeMap::new();
    for l in legs {
        *mult.entry(*l).or_insert(0) += 1;
    }
    mult.values().map(|&m| (1..=m).product::<u64>()).product()
}

/// All correction terms at genus `g`, ordered by `h` and then by legs.
pub fn enumerate_terms(g: u32) -> Vec<CorrTerm> {
    fn rec(rem_a: u32, rem_g: u32, max: (u32, u32), cur: &mut Vec<(u32, u32)>, out: &mut Vec<Vec<(u32, u32)>>) {
        if rem_a == 0 && rem_g == 0 {
            out.push(cur.clone());
            return;
        }
        for a in (0..=rem_a.min(max.0)).rev() {
            for gg in (0..=rem_g).rev() {
                if (a, gg) == (0, 0) || (a, gg) > max {
                    continue;
                }
                cur.push((a, gg));
                rec(rem_a - a, rem_g - gg, (a, gg), cur, out);
                cur.pop();
            }
        }
    }
    let mut out = Vec::new();
    for h in 1..=g {
        let mut found = Vec::new();
        rec(2 * h - 2, g - h, (u32::MAX, u32::MAX), &mut Vec::new(), &mut found);
        for legs in found {
            let aut_order = aut_of(&legs);
            out.push(CorrTerm { h, legs, aut_order });
        }
    }
    out
}

/// Counts ordered leg sequences directly, for cross-checking the automorphism factors:
/// returns `(sum over terms of n!/|Aut|, number of ordered sequences)`.
pub fn labeled_counts(g: u32) -> (u64, u64) {
    let from_terms: u64 = enumerate_terms(g)
        .iter()
        .map(|t| {
            let n = t.legs.len() as u64;
            let nf: u64 = (1..=n).product();
            nf / t.aut_order
        })
        .sum();
    fn seqs(rem_a: u32, rem_g: u32) -> u64 {
        if rem_a == 0 && rem_g == 0 {
            return 1;
        }
        let mut c = 0;
        for a in 0..=rem_a {
            for g in 0..=rem_g {
                if (a, g) != (0, 0) {
                    c += seqs(rem_a - a, rem_g - g);
                }
            }
        }
        c
    }
    let brute = (1..=g).map(|h| seqs(2 * h - 2, g - h)).sum();
    (from_terms, brute)
}

/// Topological data entering the classical and unstable pieces.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SurfaceParams {
    /// `E · E`.
    pub ee: i64,
    /// Euler characteristic `χ(S)`.
    pub chi: i64,
    /// `r` with `Q^E = Q^r`.
    pub r: i64,
}

impl SurfaceParams {
    pub const P2: SurfaceParams = SurfaceParams { ee: 9, chi: 3, r: 3 };

    pub fn new(ee: i64, chi: i64, r: i64) -> Result<Self> {
        if ee < 0 {
            return Err(Error::InvalidInput(format!("E.E = {ee} must be nonnegative")));
        }
        Ok(SurfaceParams { ee, chi, r })
    }

    /// `(1 - δ)/(E·E)^k` with the convention that it vanishes for `E·E = 0`.
    fn inv_ee(&self, k: u32) -> Rat {
        if self.ee == 0 {
            Rat::zero()
        } else {
            Rat::from_integer(1.into()) / Rat::from_integer(num_bigint::BigInt::from(self.ee).pow(k))
        }
    }

    /// Coefficient of `(log Q)³` in the genus-zero classical term.
    pub fn classical_cubic(&self) -> Rat {
        -self.inv_ee(2) / ri(6) * ri(self.r.pow(3))
    }

    /// Coefficient of `log Q` in the local genus-one unstable term.
    pub fn local_unstable_log(&self) -> Rat {
        (self.inv_ee(1) * rq(self.chi, 24) - rq(1, 24)) * ri(self.r)
    }

    /// Coefficient of `log Q` in the relative genus-one unstable term.
    pub fn relative_unstable_log(&self) -> Rat {
        -self.inv_ee(1) * rq(self.chi, 24) * ri(self.r)
    }
}

/// Relative free energies by genus: genus one as a logarithmic form, higher genera as ring elements.
#[derive(Clone, Debug)]
pub struct Tower {
    pub genus_one: GenusOne,
    pub higher: BTreeMap<u32, BModElement>,
}

impl Tower {
    pub fn new(genus_one: GenusOne) -> Self {
        Tower { genus_one, higher: BTreeMap::new() }
    }

    /// `D^k F_g`.
    pub fn d_power(&self, g: u32, k: u32) -> Result<BModElement> {
        let (start, base) = match g {
            // D³F₀ = -9X/I₁₁³ from the Yukawa coupling.
            0 => {
                if k < 3 {
                    return Err(Error::InvalidInput("genus-zero legs need at least three derivatives".into()));
                }
                (3, BModElement::monomial(ri(-9), 0, 1, 3))
            }
            1 => {
                if k < 1 {
                    return Err(Error::InvalidInput("genus-one free energy is not a ring element".into()));
                }
                (1, self.genus_one.derive_d())
            }
            _ => (0, self.higher.get(&g).cloned().ok_or_else(|| Error::InvalidInput(format!("tower has no genus {g}")))?),
        };
        let mut e = base;
        for _ in start..k {
            e = e.derive_d();
        }
        Ok(e)
    }
}

fn sign(k: i64) -> Rat {
    if k.rem_euclid(2) == 0 {
        Rat::one()
    } else {
        -Rat::one()
    }
}

/// Elliptic cache deep enough for every correction term up to genus `g`.
pub fn elliptic_cache_for(g: u32) -> EllipticCache {
    let w = (1..=g).flat_map(enumerate_terms).filter(|t| !t.legs.is_empty()).map(|t| t.label().weight().max(0) as u32).max().unwrap_or(0);
    EllipticCache::new(default_qorder(w))
}

/// Value of a correction term with at least one leg, as a ring element.
pub fn correction_value<E: Exec>(term: &CorrTerm, tower: &Tower, ell: &mut EllipticCache, exec: &E) -> Result<BModElement> {
    if term.legs.is_empty() {
        return Err(Error::InvalidInput("the term without legs is logarithmic; handled at genus one".into()));
    }
    let fe = ell.value(&term.label(), exec)?;
    let mut acc = BModElement::from_qmod(&fe.to_qmod())?;
    for &(a, g) in &term.legs {
        let d = tower.d_power(g, a + 2)?.scale(&sign(g as i64 - 1));
        acc = acc.mul(&d);
    }
    let k = sign(term.h as i64 - 1) / Rat::from_integer(num_bigint::BigInt::from(term.aut_order));
    Ok(acc.scale(&k))
}

/// `sum` of all correction terms at genus `g >= 2`, evaluated in parallel and summed in order.
pub fn correction_sum<E: Exec>(g: u32, tower: &Tower, ell: &mut EllipticCache, exec: &E) -> Result<BModElement> {
    let terms = enumerate_terms(g);
    // Warm the elliptic cache sequentially so the per-term work below is pure.
    for t in &terms {
        ell.value(&t.label(), exec)?;
    }
    let snapshot = ell.clone();
    let vals: Vec<Result<BModElement>> = exec.map(terms.len(), |i| {
        let mut local = snapshot.clone();
        correction_value(&terms[i], tower, &mut local, &crate::exec::Sequential)
    });
    let mut acc = BModElement::zero(0);
    for v in vals {
        acc = acc.checked_add(&v?)?;
    }
    Ok(acc)
}

/// `F_g^{S/E} = (-1)^g (F_g^{K} - corrections)` for `g >= 2`.
pub fn solve_relative<E: Exec>(g: u32, local: &BModElement, tower: &Tower, ell: &mut EllipticCache, exec: &E) -> Result<BModElement> {
    if g < 2 {
        return Err(Error::InvalidInput("use the genus-one solver below genus two".into()));
    }
    let c = correction_sum(g, tower, ell, exec)?;
    Ok(local.checked_add(&c.scale(&ri(-1)))?.scale(&sign(g as i64)))
}

/// `F_g^{K} = (-1)^g F_g^{S/E} + corrections` for `g >= 2`.
pub fn solve_local<E: Exec>(g: u32, relative: &BModElement, tower: &Tower, ell: &mut EllipticCache, exec: &E) -> Result<BModElement> {
    if g < 2 {
        return Err(Error::InvalidInput("use the genus-one solver below genus two".into()));
    }
    let c = correction_sum(g, tower, ell, exec)?;
    relative.scale(&sign(g as i64)).checked_add(&c)
}

/// `F_{1,∅}^E` as a `q`-series, logarithmic slot in `log q`.
pub fn f1_empty_in_q(md: &MirrorData) -> Result<RatSeries> {
    // Q̃-order o reaches q-order 3o + 2, so a third of the q-order suffices.
    let o = md.order / 3 + 1;
    Ok(cq_change(&f1_empty(o), md)?.truncate(md.order))
}

/// Genus one: `F₁^{S/E} = F_{1,∅}^E - F₁^{K}`. The logarithms must balance and
/// the result is fitted back to the logarithmic shape.
pub fn solve_relative_genus_one(local: &GenusOne, md: &MirrorData) -> Result<(RatSeries, GenusOne)> {
    let fe = f1_empty_in_q(md)?;
    let fk = local.to_series(md)?;
    let rel = fe.checked_sub(&fk)?;
    let form = GenusOne::recognize(&rel, md, RECOGNITION_MARGIN).map_err(|e| match e {
        Error::RecognitionFailed { residual_at, .. } => Error::RecognitionFailed {
            context: "genus-one logarithmic slots do not balance".into(),
            residual_at,
        },
        other => other,
    })?;
    Ok((rel, form))
}

pub fn solve_local_genus_one(relative: &GenusOne, md: &MirrorData) -> Result<(RatSeries, GenusOne)> {
    let fe = f1_empty_in_q(md)?;
    let fr = relative.to_series(md)?;
    let loc = fe.checked_sub(&fr)?;
    let form = GenusOne::recognize(&loc, md, RECOGNITION_MARGIN)?;
    Ok((loc, form))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn term_lists() {
        let t1 = enumerate_terms(1);
        assert_eq!(t1.len(), 1);
        assert!(t1[0].legs.is_empty());
        let t2 = enumerate_terms(2);
        let shapes: Vec<(u32, Vec<(u32, u32)>, u64)> = t2.iter().map(|t| (t.h, t.legs.clone(), t.aut_order)).collect();
        assert_eq!(
            shapes,
            alloc::vec![(1, alloc::vec![(0, 1)], 1), (2, alloc::vec![(2, 0)], 1), (2, alloc::vec![(1, 0), (1, 0)], 2)]
        );
        assert_eq!(enumerate_terms(3).len(), 11);
        for g in 1..=5 {
            assert!(enumerate_terms(g).iter().all(|t| t.genus() == g));
        }
    }

    #[test]
    fn aut_bookkeeping() {
        for g in 1..=4 {
            let (a, b) = labeled_counts(g);
            assert_eq!(a, b, "genus {g}");
        }
    }

    #[test]
    fn p2_unstable_terms() {
        let p = SurfaceParams::P2;
        assert_eq!(p.classical_cubic(), rq(-1, 18));
        assert_eq!(p.local_unstable_log(), rq(-1, 12));
        assert_eq!(p.relative_unstable_log(), rq(-1, 24));
        let flat = SurfaceParams::new(0, 4, 1).unwrap();
        assert_eq!(flat.classical_cubic(), Rat::zero());
        assert_eq!(flat.local_unstable_log(), rq(-1, 24));
        assert!(SurfaceParams::new(-1, 0, 1).is_err());
    }
}
