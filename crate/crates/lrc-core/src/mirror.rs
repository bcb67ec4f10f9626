//! Mirror data of local ℙ² near large volume, and the ring `I₁₁⁻ⁿ Q[S, X, X⁻¹]`
//! in which all free energies are written.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec::Vec;
use core::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::linalg::fit_series;
use crate::quasimod::{Generators, QModElement};
use crate::rat::{binomial, factorial, ri, rq, Rat};
use crate::series::{RatSeries, Var, EXACT};

/// Everything derived from the mirror I-function, to a fixed `q`-order.
#[derive(Clone, Debug)]
pub struct MirrorData {
    pub order: i64,
    /// Power-series part of `I₁ = log q + Ī₁`.
    pub ibar1: RatSeries,
    pub i11: RatSeries,
    /// Power-series part of `I₁₂ = I₁₁ log q + J`.
    pub j: RatSeries,
    pub x: RatSeries,
    /// `1 + 27q`, exact.
    pub x_inv: RatSeries,
    pub s: RatSeries,
    /// `Q(q) = q exp(Ī₁)`.
    pub big_q_of_q: RatSeries,
    /// `q(Q)`, a series in `Q`.
    pub q_of_big_q: RatSeries,
    /// `𝒬(q) = -q exp(J / I₁₁)`.
    pub cq_of_q: RatSeries,
    /// Conifold flat coordinate `t̂(u)`.
    pub t_hat: RatSeries,
}

/// `θ² + 3q(3θ+1)(3θ+2)` applied to `f`; its kernel holds `I₁₁` and `I₁₂`.
pub fn picard_fuchs(f: &RatSeries) -> Result<RatSeries> {
    let q = RatSeries::var_series(f.var(), EXACT);
    let t1 = f.theta();
    let t2 = t1.theta();
    let inner = t2.scale(&ri(9)).checked_add(&t1.scale(&ri(9)))?.checked_add(&f.scale(&ri(2)))?;
    t2.checked_add(&q.scale(&ri(3)).checked_mul(&inner)?)
}

/// Coefficients of `Ī₁ = 3 sum_{k>=1} (3k-1)!/(k!)³ (-1)^k q^k`.
fn ibar1_series(order: i64) -> RatSeries {
    RatSeries::from_fn(Var::SmallQ, 1, order, |k| {
        let num = factorial((3 * k - 1) as u64);
        let den = factorial(k as u64).pow(3);
        let sign = if k % 2 == 0 { 1 } else { -1 };
        ri(3 * sign) * Rat::new(num, den)
    })
}

/// Solves `L(I₁₁ log q + J) = 0` for the power series `J` with `J(0) = 0`.
/// Writing `L = (1+27q)θ² + 27qθ + 6q` in the sign convention of `I₁₁`, the
/// logarithmic part of `L` forces `L(J) = -2(1+27q)θI₁₁ - 27q I₁₁`.
fn frobenius_j(i11: &RatSeries, order: i64) -> Result<RatSeries> {
    let q = RatSeries::var_series(Var::SmallQ, EXACT);
    let one27 = RatSeries::from_ints(Var::SmallQ, 0, &[1, 27], EXACT);
    let rhs = one27.checked_mul(&i11.theta())?.scale(&ri(-2)).checked_sub(&q.checked_mul(i11)?.scale(&ri(27)))?;
    let mut j: Vec<Rat> = alloc::vec![Rat::zero(); (order + 1) as usize];
    if !rhs.coeff(0).is_zero() {
        return Err(Error::InvalidInput("logarithmic solution has no consistent constant term".into()));
    }
    for k in 1..=order {
        // k² j_k + (27k² - 27k + 6) j_{k-1} = rhs_k; the leading k² never vanishes.
        let lead = ri(k * k);
        debug_assert!(!lead.is_zero());
        let prev = &j[(k - 1) as usize] * ri(27 * k * k - 27 * k + 6);
        j[k as usize] = (rhs.coeff(k) - prev) / lead;
    }
    Ok(RatSeries::from_coeffs(Var::SmallQ, 0, j, order))
}

/// Conifold flat coordinate: the solution `u + O(u²)` of the mirror ODE in
/// `u = 1 + 27q`. The recursion comes from `θ = (u-1) d/du`; its leading
/// coefficient `(k+1)²(k+2)` never vanishes, so `c₀ = 0, c₁ = 1` fix it.
pub fn conifold_flat_coordinate(order: i64) -> RatSeries {
    let mut c: Vec<Rat> = alloc::vec![Rat::zero(); (order + 1).max(2) as usize];
    c[1] = Rat::one();
    for k in 0..(order - 1).max(0) {
        let kk = ri(k);
        let k1 = ri(k + 1);
        let a = ri(k * k + k) + rq(2, 9);
        let top = &k1 * &k1 * &k1 * &c[(k + 1) as usize] + a * (&k1 * &c[(k + 1) as usize] - &kk * &c[k as usize]);
        c[(k + 2) as usize] = top / (&k1 * &k1 * ri(k + 2));
    }
    RatSeries::from_coeffs(Var::U, 0, c, order)
}

/// The mirror ODE `θ³ + 3qθ(3θ+1)(3θ+2)` written in `u`, applied to `f(u)`.
pub fn mirror_ode_in_u(f: &RatSeries) -> Result<RatSeries> {
    let um1 = RatSeries::from_ints(Var::U, 0, &[-1, 1], EXACT);
    let th = |g: &RatSeries| -> Result<RatSeries> { um1.checked_mul(&g.derivative()?) };
    let t1 = th(f)?;
    let t2 = th(&t1)?;
    let t3 = th(&t2)?;
    // 3q = (u - 1)/9.
    let inner = t3.scale(&ri(9)).checked_add(&t2.scale(&ri(9)))?.checked_add(&t1.scale(&ri(2)))?;
    t3.checked_add(&um1.scale(&rq(1, 9)).checked_mul(&inner)?)
}

pub fn build_mirror_data(order: i64) -> Result<MirrorData> {
    if order < 1 {
        return Err(Error::InvalidInput("mirror data needs order at least 1".into()));
    }
    let v = Var::SmallQ;
    let ibar1 = ibar1_series(order);
    let i11 = RatSeries::one(v, EXACT).checked_add(&ibar1.theta())?;
    let j = frobenius_j(&i11, order)?;
    let x_inv = RatSeries::from_ints(v, 0, &[1, 27], EXACT);
    let x = x_inv.inverse_to(order)?;
    let s = i11.theta().checked_div(&i11)?.checked_sub(&x.checked_sub(&RatSeries::one(v, EXACT))?.scale(&rq(1, 3)))?;
    let big_q_of_q = ibar1.clone().with_log(Rat::one()).exp()?;
    let q_of_big_q = big_q_of_q.revert()?.with_var(Var::BigQ);
    let cq_of_q = j.checked_div(&i11)?.with_log(Rat::one()).exp()?.neg();
    let t_hat = conifold_flat_coordinate(order);
    Ok(MirrorData { order, ibar1, i11, j, x, x_inv, s, big_q_of_q, q_of_big_q, cq_of_q, t_hat })
}

/// Instanton part `sum N_d Q^d` of the genus-zero free energy, from
/// `(Q d/dQ)² F₀ = -(log q + J/I₁₁)/3` after removing the classical `-T/3`.
pub fn genus_zero_instantons(md: &MirrorData) -> Result<RatSeries> {
    let second = md.j.checked_div(&md.i11)?.with_log(Rat::one()).compose(&md.q_of_big_q)?;
    if second.log_coeff() != &Rat::one() {
        return Err(Error::InvalidComposition("the genus-zero second derivative lost its log Q slot"));
    }
    let c = RatSeries::from_fn(Var::BigQ, 1, second.order(), |d| -second.coeff(d) / ri(3 * d * d));
    Ok(c)
}

/// `q` as a function of `𝒬`, read off the Hauptmodul `X = A³/C`.
pub fn q_of_cq(g: &Generators) -> Result<RatSeries> {
    let x_inv = g.c.checked_div(&g.a.pow_int(3)?)?;
    Ok(x_inv.checked_sub(&RatSeries::one(Var::ModQ, EXACT))?.scale(&rq(1, 27)))
}

/// Changes a `𝒬`- or `Q̃`-series into a `q`-series. For these two variables the
/// logarithmic slot is read as `log(-𝒬)` and `log(-Q̃)`, which keeps every
/// coefficient rational: `-𝒬 = q exp(J/I₁₁)` and `-Q̃ = (-𝒬)³`.
pub fn cq_change(f: &RatSeries, md: &MirrorData) -> Result<RatSeries> {
    let w = md.cq_of_q.neg();
    let inner = match f.var() {
        Var::ModQ => w,
        Var::EllQ => w.pow_int(3)?,
        other => {
            return Err(Error::VariableMismatch { left: "cQ or Qt".into(), right: other.symbol().into() });
        }
    };
    let ell = f.log_coeff().clone();
    let outer = f.clone().without_log().scale_var(&ri(-1))?.with_log(ell);
    outer.compose(&inner)
}

/// Element `I₁₁^{-n} P(S, X, X⁻¹)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BModElement {
    i11_degree: i32,
    /// Keyed by `(S exponent, X exponent)`.
    terms: BTreeMap<(i32, i32), Rat>,
}

impl BModElement {
    pub fn zero(i11_degree: i32) -> Self {
        BModElement { i11_degree, terms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        Self::monomial(Rat::one(), 0, 0, 0)
    }

    pub fn monomial(c: Rat, s: i32, x: i32, i11_degree: i32) -> Self {
        let mut r = Self::zero(i11_degree);
        r.add_term(s, x, c);
        r
    }

    pub fn s() -> Self {
        Self::monomial(Rat::one(), 1, 0, 0)
    }

    pub fn x() -> Self {
        Self::monomial(Rat::one(), 0, 1, 0)
    }

    pub fn from_terms(i11_degree: i32, terms: &[(Rat, i32, i32)]) -> Self {
        let mut r = Self::zero(i11_degree);
        for (c, s, x) in terms {
            r.add_term(*s, *x, c.clone());
        }
        r
    }

    pub fn i11_degree(&self) -> i32 {
        self.i11_degree
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(i32, i32), &Rat)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, s: i32, x: i32, c: Rat) {
        assert!(s >= 0, "negative power of S");
        if c.is_zero() {
            return;
        }
        let v = self.terms.entry((s, x)).or_insert_with(Rat::zero);
        *v += c;
        if v.is_zero() {
            self.terms.remove(&(s, x));
        }
    }

    /// Coefficient of `S^s X^x`.
    pub fn coeff(&self, s: i32, x: i32) -> Rat {
        self.terms.get(&(s, x)).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn checked_add(&self, o: &Self) -> Result<Self> {
        if self.is_zero() {
            return Ok(o.clone());
        }
        if o.is_zero() {
            return Ok(self.clone());
        }
        if self.i11_degree != o.i11_degree {
            return Err(Error::NotInRing(format!(
                "adding I11 degrees {} and {}",
                self.i11_degree, o.i11_degree
            )));
        }
        let mut r = self.clone();
        for (&(s, x), c) in &o.terms {
            r.add_term(s, x, c.clone());
        }
        Ok(r)
    }

    /// # Panics
    /// If the `I₁₁` degrees differ and neither side is zero.
    pub fn add(&self, o: &Self) -> Self {
        self.checked_add(o).unwrap_or_else(|e| panic!("{e}"))
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.scale(&ri(-1)))
    }

    pub fn scale(&self, k: &Rat) -> Self {
        let mut r = Self::zero(self.i11_degree);
        for (&(s, x), c) in &self.terms {
            r.add_term(s, x, c * k);
        }
        r
    }

    pub fn mul(&self, o: &Self) -> Self {
        let mut r = Self::zero(self.i11_degree + o.i11_degree);
        for (&(sa, xa), ca) in &self.terms {
            for (&(sb, xb), cb) in &o.terms {
                r.add_term(sa + sb, xa + xb, ca * cb);
            }
        }
        r
    }

    pub fn pow(&self, n: u32) -> Self {
        (0..n).fold(Self::one(), |acc, _| acc.mul(self))
    }

    /// `θ = q d/dq` on the polynomial part only.
    fn theta_poly(&self) -> Self {
        let mut r = Self::zero(self.i11_degree);
        for (&(s, x), c) in &self.terms {
            if s > 0 {
                // s S^{s-1} X^x θS, θS = -S² + (X-1)S/3 - X(X-1)/9.
                let f = c * ri(s as i64);
                r.add_term(s + 1, x, -f.clone());
                r.add_term(s, x + 1, &f * rq(1, 3));
                r.add_term(s, x, &f * rq(-1, 3));
                r.add_term(s - 1, x + 2, &f * rq(-1, 9));
                r.add_term(s - 1, x + 1, &f * rq(1, 9));
            }
            if x != 0 {
                // x X^x (X - 1).
                let f = c * ri(x as i64);
                r.add_term(s, x + 1, f.clone());
                r.add_term(s, x, -f);
            }
        }
        r
    }

    /// `θ = q d/dq`, including the action on `I₁₁^{-n}` through `θI₁₁ = I₁₁(S + (X-1)/3)`.
    pub fn theta(&self) -> Self {
        let n = self.i11_degree;
        let mut r = self.theta_poly();
        if n != 0 {
            let f = BModElement::from_terms(0, &[(Rat::one(), 1, 0), (rq(1, 3), 0, 1), (rq(-1, 3), 0, 0)]);
            let corr = self.mul(&f).scale(&ri(-(n as i64)));
            r = r.add(&corr);
        }
        r
    }

    /// `D = 3 Q d/dQ = 3 I₁₁⁻¹ θ`.
    pub fn derive_d(&self) -> Self {
        let t = self.theta();
        let mut r = t.scale(&ri(3));
        r.i11_degree += 1;
        r
    }

    /// `Q d/dQ = I₁₁⁻¹ θ`.
    pub fn derive_big_q(&self) -> Self {
        let mut r = self.theta();
        r.i11_degree += 1;
        r
    }

    pub fn partial_s(&self) -> Self {
        let mut r = Self::zero(self.i11_degree);
        for (&(s, x), c) in &self.terms {
            if s > 0 {
                r.add_term(s - 1, x, c * ri(s as i64));
            }
        }
        r
    }

    /// Multiplies by `I₁₁^{k}` (i.e. lowers the `I₁₁⁻¹` degree by `k`).
    pub fn times_i11_pow(&self, k: i32) -> Self {
        let mut r = self.clone();
        r.i11_degree -= k;
        r
    }

    pub fn s_degree(&self) -> i32 {
        self.terms.keys().map(|k| k.0).max().unwrap_or(0)
    }

    pub fn x_range(&self) -> Option<(i32, i32)> {
        let lo = self.terms.keys().map(|k| k.1).min()?;
        let hi = self.terms.keys().map(|k| k.1).max()?;
        Some((lo, hi))
    }

    /// Largest `deg_S + deg_X` over the terms.
    pub fn total_degree(&self) -> i32 {
        self.terms.keys().map(|k| k.0 + k.1).max().unwrap_or(0)
    }

    /// Evaluates with `S`, `X`, `I₁₁` replaced by series in `q`, then optionally re-expands in `Q`.
    pub fn eval(&self, md: &MirrorData, target: Var) -> Result<RatSeries> {
        let v = Var::SmallQ;
        let mut acc = RatSeries::zero(v, md.order);
        let mut spow: BTreeMap<i32, RatSeries> = BTreeMap::new();
        let mut xpow: BTreeMap<i32, RatSeries> = BTreeMap::new();
        for (&(s, x), c) in &self.terms {
            if !spow.contains_key(&s) {
                spow.insert(s, md.s.pow_int(s as i64)?);
            }
            if !xpow.contains_key(&x) {
                let p = if x >= 0 { md.x.pow_int(x as i64)? } else { md.x_inv.pow_int(-x as i64)? };
                xpow.insert(x, p);
            }
            let t = spow[&s].checked_mul(&xpow[&x])?.scale(c);
            acc = acc.checked_add(&t)?;
        }
        let ipow = if self.i11_degree >= 0 {
            md.i11.inverse()?.pow_int(self.i11_degree as i64)?
        } else {
            md.i11.pow_int(-self.i11_degree as i64)?
        };
        let r = acc.checked_mul(&ipow)?.truncate(md.order);
        match target {
            Var::SmallQ => Ok(r),
            Var::BigQ => r.compose(&md.q_of_big_q),
            other => Err(Error::VariableMismatch { left: "q or Q".into(), right: other.symbol().into() }),
        }
    }

    /// Rewrites through `X = A³/C`, `S = (AB - A³)/(6C)`, `I₁₁ = A`.
    pub fn to_qmod(&self) -> Result<QModElement> {
        let mut raw: BTreeMap<[i32; 3], Rat> = BTreeMap::new();
        for (&(s, x), c) in &self.terms {
            let base = c * rpow_i(&rq(1, 6), s);
            for j in 0..=s {
                let sign = if (s - j) % 2 == 0 { Rat::one() } else { -Rat::one() };
                let k = &base * Rat::from_integer(binomial(s as i64, j as i64)) * sign;
                let e = [3 * x + s - self.i11_degree + 2 * (s - j), j, -x - s];
                let v = raw.entry(e).or_insert_with(Rat::zero);
                *v += k;
            }
        }
        let mut r = QModElement::zero();
        for (e, c) in raw {
            if c.is_zero() {
                continue;
            }
            if e[0] < 0 {
                return Err(Error::NotInRing(format!("term A^{} survives after rewriting", e[0])));
            }
            r.add_term(e, c);
        }
        Ok(r)
    }

    /// Rewrites a homogeneous element of `Q[A, B, C][C⁻¹]` through
    /// `A = I₁₁`, `B = I₁₁²(X + 6S)/X`, `C = I₁₁³/X`.
    pub fn from_qmod(m: &QModElement) -> Result<Self> {
        let w = m.weight().ok_or_else(|| Error::NotInRing("inhomogeneous quasimodular element".into()))?;
        let mut r = Self::zero(-w);
        let x_plus_6s = BModElement::from_terms(0, &[(Rat::one(), 0, 1), (ri(6), 1, 0)]);
        for (e, c) in m.terms() {
            let [_, b, cc] = *e;
            let mut t = x_plus_6s.pow(b as u32);
            let mut shifted = BModElement::zero(-w);
            for (&(s, x), k) in &t.terms {
                shifted.add_term(s, x - b - cc, k * c);
            }
            t = shifted;
            r = r.add(&t);
        }
        Ok(r)
    }
}

fn rpow_i(x: &Rat, k: i32) -> Rat {
    crate::rat::rpow(x, k as i64)
}

impl fmt::Display for BModElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.i11_degree != 0 {
            write!(f, "I11^{} * (", -self.i11_degree)?;
        }
        if self.terms.is_empty() {
            f.write_str("0")?;
        }
        for (i, (&(s, x), c)) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "({c})")?;
            match s {
                0 => {}
                1 => f.write_str("*S")?,
                _ => write!(f, "*S^{s}")?,
            }
            match x {
                0 => {}
                1 => f.write_str("*X")?,
                _ => write!(f, "*X^{x}")?,
            }
        }
        if self.i11_degree != 0 {
            f.write_str(")")?;
        }
        Ok(())
    }
}

/// `c_q log q + c_i log I₁₁ + c_u log(1 + 27q)`, the shape of both genus-one free energies.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GenusOne {
    pub log_q: Rat,
    pub log_i11: Rat,
    pub log_xinv: Rat,
}

impl GenusOne {
    pub fn local() -> Self {
        GenusOne { log_q: rq(-1, 12), log_i11: rq(-1, 2), log_xinv: rq(-1, 12) }
    }

    pub fn to_series(&self, md: &MirrorData) -> Result<RatSeries> {
        let li = md.i11.log()?;
        let lu = md.x_inv.truncate(md.order).log()?;
        let s = li.scale(&self.log_i11).checked_add(&lu.scale(&self.log_xinv))?;
        Ok(s.with_log(self.log_q.clone()))
    }

    /// `Q d/dQ` of the free energy, as a ring element.
    pub fn derive_big_q(&self) -> BModElement {
        // θ log q = 1, θ log I₁₁ = S + (X-1)/3, θ log(1+27q) = 1 - X.
        let mut p = BModElement::zero(1);
        p.add_term(0, 0, &self.log_q + &self.log_xinv - &self.log_i11 * rq(1, 3));
        p.add_term(1, 0, self.log_i11.clone());
        p.add_term(0, 1, &self.log_i11 * rq(1, 3) - &self.log_xinv);
        p
    }

    pub fn derive_d(&self) -> BModElement {
        self.derive_big_q().scale(&ri(3))
    }

    /// Fits a logarithmic `q`-series to this shape, demanding `margin` spare coefficients.
    pub fn recognize(f: &RatSeries, md: &MirrorData, margin: usize) -> Result<Self> {
        let li = md.i11.log()?;
        let lu = md.x_inv.truncate(md.order).log()?;
        let x = fit_series(&[li, lu], &f.clone().without_log(), 0, margin, "genus-one logarithmic form")?;
        Ok(GenusOne { log_q: f.log_coeff().clone(), log_i11: x[0].clone(), log_xinv: x[1].clone() })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quasimod::generator_series;

    #[test]
    fn mirror_map_coefficients() {
        let md = build_mirror_data(8).unwrap();
        assert_eq!(md.ibar1.coeff_range(1, 2), [-6, 45].map(ri));
        assert_eq!(md.big_q_of_q.coeff_range(1, 6), [1, -6, 63, -866, 13899, -246366].map(ri));
        assert_eq!(md.q_of_big_q.coeff_range(1, 6), [1, 6, 9, 56, -300, 3942].map(ri));
        assert_eq!(md.i11.coeff_range(0, 2), [1, -6, 90].map(ri));
        assert_eq!(md.s.coeff(0), ri(0));
        assert_eq!(md.s.coeff(1), ri(3));
    }

    #[test]
    fn periods_solve_picard_fuchs() {
        let md = build_mirror_data(15).unwrap();
        assert!(picard_fuchs(&md.i11).unwrap().is_zero());
    }

    #[test]
    fn yukawa_from_second_period() {
        // θ(log q + J/I₁₁) = X/I₁₁².
        let md = build_mirror_data(20).unwrap();
        let lhs = md.j.checked_div(&md.i11).unwrap().theta().checked_add(&RatSeries::one(Var::SmallQ, EXACT)).unwrap();
        let rhs = md.x.checked_div(&md.i11.pow_int(2).unwrap()).unwrap();
        assert!(lhs.agrees_to(&rhs, 20));
    }

    #[test]
    fn propagator_relations() {
        let md = build_mirror_data(20).unwrap();
        let one = RatSeries::one(Var::SmallQ, EXACT);
        let xm1 = md.x.checked_sub(&one).unwrap();
        let ts = md.s.pow_int(2).unwrap().neg()
            + (&xm1 * &md.s).scale(&rq(1, 3))
            - (&md.x * &xm1).scale(&rq(1, 9));
        assert!(md.s.theta().agrees_to(&ts, 20));
        assert!(md.x.theta().agrees_to(&(&md.x * &xm1), 20));
    }

    #[test]
    fn flat_coordinate_solves_ode() {
        let t = conifold_flat_coordinate(12);
        assert_eq!(t.coeff_range(1, 5), alloc::vec![ri(1), rq(11, 18), rq(109, 243), rq(9389, 26244), rq(88351, 295245)]);
        let r = mirror_ode_in_u(&t).unwrap();
        assert!(r.is_zero(), "{r}");
    }

    #[test]
    fn derivative_of_yukawa() {
        let d3 = BModElement::monomial(ri(-9), 0, 1, 3);
        assert_eq!(d3.derive_d(), BModElement::monomial(ri(81), 1, 1, 4));
        assert_eq!(d3.to_qmod().unwrap(), QModElement::monomial(ri(-9), [0, 0, -1]));
    }

    #[test]
    fn genus_one_local_derivative() {
        let d = GenusOne::local().derive_big_q();
        let expect = BModElement::from_terms(1, &[(rq(-1, 2), 1, 0), (rq(-1, 12), 0, 1)]);
        assert_eq!(d, expect);
    }

    #[test]
    fn modular_bridge() {
        let n = 25;
        let md = build_mirror_data(n).unwrap();
        let g = generator_series(n).unwrap();
        assert!(cq_change(&g.a, &md).unwrap().agrees_to(&md.i11, n));
        let b = BModElement::from_qmod(&QModElement::gen_b()).unwrap().eval(&md, Var::SmallQ).unwrap();
        assert!(cq_change(&g.b, &md).unwrap().agrees_to(&b, n));
        let c = BModElement::from_qmod(&QModElement::gen_c()).unwrap().eval(&md, Var::SmallQ).unwrap();
        assert!(cq_change(&g.c, &md).unwrap().agrees_to(&c, n));
        let q = q_of_cq(&g).unwrap();
        assert!(md.cq_of_q.revert().unwrap().with_var(Var::ModQ).agrees_to(&q, n));
    }

    #[test]
    fn qmod_roundtrip() {
        let m = QModElement::monomial(rq(5, 3), [1, 2, -1]).add(&QModElement::monomial(ri(-2), [2, 0, 0]));
        let e = BModElement::from_qmod(&m).unwrap();
        assert_eq!(e.i11_degree(), -2);
        assert_eq!(e.to_qmod().unwrap(), m);
    }
}
