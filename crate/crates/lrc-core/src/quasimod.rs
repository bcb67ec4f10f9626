//! Quasimodular forms for Γ₁(3): eta quotients, Eisenstein series and the
//! polynomial ring `Q[A, B, C][C⁻¹]` with its Ramanujan-type derivative.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec::Vec;
use core::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::linalg::fit_series;
use crate::rat::{bernoulli_table, divisor_sigma, ri, rq, Rat};
use crate::series::{RatSeries, Var, EXACT};

/// Default number of surplus coefficients demanded by every recognition.
pub const RECOGNITION_MARGIN: usize = 10;

/// `v^{sum m e / 24} prod_{n >= 1} prod_{(m, e)} (1 - v^{m n})^e`.
pub fn eta_quotient(factors: &[(i64, i64)], var: Var, order: i64) -> Result<RatSeries> {
    let weight24: i64 = factors.iter().map(|(m, e)| m * e).sum();
    if weight24 % 24 != 0 {
        return Err(Error::InvalidInput(format!("eta quotient has fractional leading power {weight24}/24")));
    }
    let lead = weight24 / 24;
    let len = (order - lead + 1).max(0) as usize;
    let mut c: Vec<Rat> = alloc::vec![Rat::zero(); len];
    if len > 0 {
        c[0] = Rat::one();
    }
    for &(m, e) in factors {
        if m < 1 {
            return Err(Error::InvalidInput(format!("eta level {m} must be positive")));
        }
        let mut step = m as usize;
        while step < len {
            for _ in 0..e.unsigned_abs() {
                if e > 0 {
                    for k in (step..len).rev() {
                        let t = c[k - step].clone();
                        c[k] -= t;
                    }
                } else {
                    for k in step..len {
                        let t = c[k - step].clone();
                        c[k] += t;
                    }
                }
            }
            step += m as usize;
        }
    }
    Ok(RatSeries::from_coeffs(var, lead, c, order))
}

/// Weight-`k` Eisenstein series `E_k(m τ) = 1 - (2k/B_k) sum sigma_{k-1}(n) v^{m n}`.
pub fn eisenstein(k: u32, level: i64, var: Var, order: i64) -> Result<RatSeries> {
    if k < 2 || k % 2 == 1 {
        return Err(Error::InvalidInput(format!("Eisenstein weight {k} must be even and at least 2")));
    }
    let bk = bernoulli_table(k as usize)[k as usize].clone();
    let f = -ri(2 * k as i64) / bk;
    let s = RatSeries::from_fn(var, 0, order, |e| {
        if e == 0 {
            Rat::one()
        } else if e % level == 0 {
            &f * Rat::from_integer(divisor_sigma((e / level) as u64, k - 1))
        } else {
            Rat::zero()
        }
    });
    Ok(s)
}

/// `𝒬`-expansions of the generators and of the cusp form `η₃⁹/η³`.
#[derive(Clone, Debug)]
pub struct Generators {
    pub a: RatSeries,
    pub b: RatSeries,
    pub c: RatSeries,
    pub cusp: RatSeries,
    pub order: i64,
}

pub fn generator_series(order: i64) -> Result<Generators> {
    let v = Var::ModQ;
    let c = eta_quotient(&[(1, 9), (3, -3)], v, order)?;
    let cusp = eta_quotient(&[(3, 9), (1, -3)], v, order)?;
    let a = (&c + &cusp.scale(&ri(27))).nth_root(3)?;
    let e2 = eisenstein(2, 1, v, order)?;
    let e2_3 = eisenstein(2, 3, v, order)?;
    let b = (&e2 + &e2_3.scale(&ri(3))).scale(&rq(1, 4));
    Ok(Generators { a, b, c, cusp, order })
}

/// Exponent triple for `A^a B^b C^c`; `a, b >= 0`, `c` may be negative.
pub type AbcExp = [i32; 3];

/// Element of `Q[A, B, C][C⁻¹]`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct QModElement {
    terms: BTreeMap<AbcExp, Rat>,
}

impl QModElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: Rat) -> Self {
        Self::monomial(c, [0, 0, 0])
    }

    pub fn monomial(c: Rat, e: AbcExp) -> Self {
        let mut s = Self::zero();
        s.add_term(e, c);
        s
    }

    pub fn gen_a() -> Self {
        Self::monomial(Rat::one(), [1, 0, 0])
    }

    pub fn gen_b() -> Self {
        Self::monomial(Rat::one(), [0, 1, 0])
    }

    pub fn gen_c() -> Self {
        Self::monomial(Rat::one(), [0, 0, 1])
    }

    pub fn add_term(&mut self, e: AbcExp, c: Rat) {
        assert!(e[0] >= 0 && e[1] >= 0, "A and B exponents must be nonnegative");
        if c.is_zero() {
            return;
        }
        let v = self.terms.entry(e).or_insert_with(Rat::zero);
        *v += c;
        if v.is_zero() {
            self.terms.remove(&e);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&AbcExp, &Rat)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// The common weight `a + 2b + 3c` of all terms, if homogeneous.
    pub fn weight(&self) -> Option<i32> {
        let mut it = self.terms.keys().map(|e| e[0] + 2 * e[1] + 3 * e[2]);
        let w = it.next().unwrap_or(0);
        it.all(|x| x == w).then_some(w)
    }

    /// Smallest `k >= 0` with `C^k * self` polynomial.
    pub fn c_pole(&self) -> i32 {
        self.terms.keys().map(|e| -e[2]).max().unwrap_or(0).max(0)
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut r = self.clone();
        for (e, c) in &o.terms {
            r.add_term(*e, c.clone());
        }
        r
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.scale(&ri(-1)))
    }

    pub fn scale(&self, k: &Rat) -> Self {
        let mut r = Self::zero();
        for (e, c) in &self.terms {
            r.add_term(*e, c * k);
        }
        r
    }

    pub fn mul(&self, o: &Self) -> Self {
        let mut r = Self::zero();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &o.terms {
                r.add_term([ea[0] + eb[0], ea[1] + eb[1], ea[2] + eb[2]], ca * cb);
            }
        }
        r
    }

    pub fn pow(&self, n: u32) -> Self {
        (0..n).fold(Self::constant(Rat::one()), |acc, _| acc.mul(self))
    }

    /// `∂_τ = 𝒬 d/d𝒬`, through
    /// `∂A = A(B+A²)/6 - C/3`, `∂B = (B²-A⁴)/6`, `∂C = C(B-A²)/2`.
    pub fn derive(&self) -> Self {
        let mut r = Self::zero();
        for (e, k) in &self.terms {
            let [a, b, c] = *e;
            if a > 0 {
                let f = k * ri(a as i64);
                r.add_term([a, b + 1, c], &f * rq(1, 6));
                r.add_term([a + 2, b, c], &f * rq(1, 6));
                r.add_term([a - 1, b, c + 1], &f * rq(-1, 3));
            }
            if b > 0 {
                let f = k * ri(b as i64);
                r.add_term([a, b + 1, c], &f * rq(1, 6));
                r.add_term([a + 4, b - 1, c], &f * rq(-1, 6));
            }
            if c != 0 {
                let f = k * ri(c as i64);
                r.add_term([a, b + 1, c], &f * rq(1, 2));
                r.add_term([a + 2, b, c], &f * rq(-1, 2));
            }
        }
        r
    }

    /// Formal partial derivative in `B`.
    pub fn partial_b(&self) -> Self {
        let mut r = Self::zero();
        for (e, k) in &self.terms {
            if e[1] > 0 {
                r.add_term([e[0], e[1] - 1, e[2]], k * ri(e[1] as i64));
            }
        }
        r
    }

    /// The `𝒬`-expansion, using precomputed generator series.
    pub fn to_qseries(&self, g: &Generators) -> Result<RatSeries> {
        let mut acc = RatSeries::zero(Var::ModQ, g.order);
        let cinv = g.c.inverse()?;
        let mut cache: BTreeMap<(u8, i32), RatSeries> = BTreeMap::new();
        let mut power = |which: u8, n: i32| -> Result<RatSeries> {
            if let Some(s) = cache.get(&(which, n)) {
                return Ok(s.clone());
            }
            let base = match (which, n >= 0) {
                (0, _) => &g.a,
                (1, _) => &g.b,
                (_, true) => &g.c,
                (_, false) => &cinv,
            };
            let s = base.pow_int(n.unsigned_abs() as i64)?;
            cache.insert((which, n), s.clone());
            Ok(s)
        };
        for (e, k) in &self.terms {
            let t = power(0, e[0])?.checked_mul(&power(1, e[1])?)?.checked_mul(&power(2, e[2])?)?;
            acc = acc.checked_add(&t.scale(k))?;
        }
        Ok(acc.truncate(g.order))
    }
}

impl fmt::Display for QModElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (e, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "({c})")?;
            for (sym, p) in ["A", "B", "C"].iter().zip(e.iter()) {
                match p {
                    0 => {}
                    1 => write!(f, "*{sym}")?,
                    _ => write!(f, "*{sym}^{p}")?,
                }
            }
        }
        Ok(())
    }
}

/// Monomials `A^a B^b C^c` with `a + 2b + 3c = w`, all exponents nonnegative.
pub fn abc_monomials(w: i32) -> Vec<AbcExp> {
    let mut out = Vec::new();
    if w < 0 {
        return out;
    }
    for c in 0..=w / 3 {
        for b in 0..=(w - 3 * c) / 2 {
            out.push([w - 3 * c - 2 * b, b, c]);
        }
    }
    out
}

/// Identifies a `𝒬`-series as an element of weight `weight` with at most `c_pole` powers of `C⁻¹`.
pub fn recognize(series: &RatSeries, weight: i32, c_pole: i32, g: &Generators, margin: usize) -> Result<QModElement> {
    if series.var() != Var::ModQ {
        return Err(Error::VariableMismatch { left: "cQ".into(), right: series.var().symbol().into() });
    }
    if !series.log_coeff().is_zero() {
        return Err(Error::LogUnsupported("recognize"));
    }
    let target = series.checked_mul(&g.c.pow_int(c_pole as i64)?)?;
    let monos = abc_monomials(weight + 3 * c_pole);
    let basis: Vec<RatSeries> = monos
        .iter()
        .map(|e| QModElement::monomial(Rat::one(), *e).to_qseries(g))
        .collect::<Result<_>>()?;
    let ctx = format!("weight {weight} with C-pole {c_pole}");
    let x = fit_series(&basis, &target, 0, margin, &ctx)?;
    let mut r = QModElement::zero();
    for (e, c) in monos.iter().zip(x) {
        r.add_term([e[0], e[1], e[2] - c_pole], c);
    }
    Ok(r)
}

/// `E_k(3τ)` written in `A, B, C`, for `k = 2, 4, 6`.
pub fn sl2_embed(k: u32) -> Result<QModElement> {
    let m = |c: Rat, e: AbcExp| QModElement::monomial(c, e);
    Ok(match k {
        2 => m(rq(2, 3), [0, 1, 0]).add(&m(rq(1, 3), [2, 0, 0])),
        4 => m(rq(1, 9), [4, 0, 0]).add(&m(rq(8, 9), [1, 0, 1])),
        6 => m(rq(-1, 27), [6, 0, 0]).add(&m(rq(20, 27), [3, 0, 1])).add(&m(rq(8, 27), [0, 0, 2])),
        _ => return Err(Error::InvalidInput(format!("no embedding for weight {k}"))),
    })
}

/// Exponent triple for `E₂^i E₄^j E₆^k`.
pub type EExp = [u32; 3];

/// Polynomial in the level-one quasimodular generators `E₂, E₄, E₆`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct EPoly {
    terms: BTreeMap<EExp, Rat>,
}

impl EPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: Rat) -> Self {
        Self::monomial(c, [0, 0, 0])
    }

    pub fn monomial(c: Rat, e: EExp) -> Self {
        let mut s = Self::zero();
        s.add_term(e, c);
        s
    }

    pub fn add_term(&mut self, e: EExp, c: Rat) {
        if c.is_zero() {
            return;
        }
        let v = self.terms.entry(e).or_insert_with(Rat::zero);
        *v += c;
        if v.is_zero() {
            self.terms.remove(&e);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&EExp, &Rat)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn weight(&self) -> Option<u32> {
        let mut it = self.terms.keys().map(|e| 2 * e[0] + 4 * e[1] + 6 * e[2]);
        let w = it.next().unwrap_or(0);
        it.all(|x| x == w).then_some(w)
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut r = self.clone();
        for (e, c) in &o.terms {
            r.add_term(*e, c.clone());
        }
        r
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.scale(&ri(-1)))
    }

    pub fn scale(&self, k: &Rat) -> Self {
        let mut r = Self::zero();
        for (e, c) in &self.terms {
            r.add_term(*e, c * k);
        }
        r
    }

    pub fn mul(&self, o: &Self) -> Self {
        let mut r = Self::zero();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &o.terms {
                r.add_term([ea[0] + eb[0], ea[1] + eb[1], ea[2] + eb[2]], ca * cb);
            }
        }
        r
    }

    pub fn partial_e2(&self) -> Self {
        let mut r = Self::zero();
        for (e, c) in &self.terms {
            if e[0] > 0 {
                r.add_term([e[0] - 1, e[1], e[2]], c * ri(e[0] as i64));
            }
        }
        r
    }

    /// Expansion in the elliptic coordinate `Q̃`.
    pub fn to_series(&self, order: i64) -> Result<RatSeries> {
        let v = Var::EllQ;
        let gens = [eisenstein(2, 1, v, order)?, eisenstein(4, 1, v, order)?, eisenstein(6, 1, v, order)?];
        let mut acc = RatSeries::zero(v, order);
        for (e, c) in &self.terms {
            let mut t = RatSeries::constant(v, c.clone(), EXACT);
            for (g, &p) in gens.iter().zip(e.iter()) {
                t = t.checked_mul(&g.pow_int(p as i64)?)?;
            }
            acc = acc.checked_add(&t)?;
        }
        Ok(acc.truncate(order))
    }

    /// Pull-back along `Q̃ = 𝒬³`, landing in `Q[A, B, C]`.
    pub fn to_qmod(&self) -> QModElement {
        let emb = [sl2_embed(2).unwrap(), sl2_embed(4).unwrap(), sl2_embed(6).unwrap()];
        let mut r = QModElement::zero();
        for (e, c) in &self.terms {
            let mut t = QModElement::constant(c.clone());
            for (g, &p) in emb.iter().zip(e.iter()) {
                t = t.mul(&g.pow(p));
            }
            r = r.add(&t);
        }
        r
    }
}

impl fmt::Display for EPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (e, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "({c})")?;
            for (sym, p) in ["E2", "E4", "E6"].iter().zip(e.iter()) {
                match p {
                    0 => {}
                    1 => write!(f, "*{sym}")?,
                    _ => write!(f, "*{sym}^{p}")?,
                }
            }
        }
        Ok(())
    }
}

pub fn e_monomials(w: u32) -> Vec<EExp> {
    let mut out = Vec::new();
    if w % 2 == 1 {
        return out;
    }
    for k in 0..=w / 6 {
        for j in 0..=(w - 6 * k) / 4 {
            let rest = w - 6 * k - 4 * j;
            out.push([rest / 2, j, k]);
        }
    }
    out
}

/// Dimension of the weight-`w` part of `Q[E₂, E₄, E₆]`.
pub fn e_dimension(w: u32) -> usize {
    e_monomials(w).len()
}

/// Identifies a `Q̃`-series as a weight-`w` polynomial in `E₂, E₄, E₆`.
pub fn recognize_e(series: &RatSeries, w: u32, margin: usize) -> Result<EPoly> {
    if series.var() != Var::EllQ {
        return Err(Error::VariableMismatch { left: "Qt".into(), right: series.var().symbol().into() });
    }
    let monos = e_monomials(w);
    let order = series.order();
    let basis: Vec<RatSeries> =
        monos.iter().map(|e| EPoly::monomial(Rat::one(), *e).to_series(order)).collect::<Result<_>>()?;
    let x = fit_series(&basis, series, 0, margin, &format!("E-polynomial of weight {w}"))?;
    let mut r = EPoly::zero();
    for (e, c) in monos.iter().zip(x) {
        r.add_term(*e, c);
    }
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generator_expansions() {
        let g = generator_series(9).unwrap();
        assert_eq!(g.c.coeff_range(0, 7), [1, -9, 27, -9, -117, 216, 27, -450].map(ri));
        assert_eq!(g.cusp.coeff_range(1, 7), [1, 3, 9, 13, 24, 27, 50].map(ri));
        assert_eq!(g.a.coeff_range(0, 9), [1, 6, 0, 6, 6, 0, 0, 12, 0, 6].map(ri));
        assert_eq!(g.b.coeff_range(0, 4), [1, -6, -18, -42, -42].map(ri));
    }

    #[test]
    fn ramanujan_on_generators() {
        let g = generator_series(25).unwrap();
        for (x, s) in [(QModElement::gen_a(), &g.a), (QModElement::gen_b(), &g.b), (QModElement::gen_c(), &g.c)] {
            assert_eq!(x.derive().to_qseries(&g).unwrap(), s.theta());
        }
    }

    #[test]
    fn embedding_matches_level_three_eisenstein() {
        let g = generator_series(20).unwrap();
        for k in [2, 4, 6] {
            let lhs = sl2_embed(k).unwrap().to_qseries(&g).unwrap();
            assert_eq!(lhs, eisenstein(k, 3, Var::ModQ, 20).unwrap());
        }
    }

    #[test]
    fn recognize_roundtrip() {
        let g = generator_series(30).unwrap();
        let x = QModElement::monomial(rq(3, 2), [3, 1, -2]).add(&QModElement::monomial(ri(-7), [2, 0, -1]));
        let s = x.to_qseries(&g).unwrap();
        assert_eq!(recognize(&s, -1, 2, &g, RECOGNITION_MARGIN).unwrap(), x);
    }

    #[test]
    fn e_dimensions() {
        assert_eq!(e_dimension(12), 7);
        assert_eq!(e_dimension(6), 3);
        assert_eq!(e_dimension(0), 1);
    }
}
