//! Gromov–Witten theory of the elliptic curve: the theta function, the
//! permutation-determinant formula for the disconnected n-point series, its
//! connected part, and the holomorphic anomaly equation in `E₂`.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::combinat::{monomials_up_to, multiset_permutations, partitions_at_most, permutation_sign, permutations, set_partitions};
use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::linalg::solve_overdetermined;
use crate::quasimod::{e_dimension, eisenstein, recognize_e, EPoly, RECOGNITION_MARGIN};
use crate::rat::{bernoulli_table, binomial, factorial, ri, Rat};
use crate::series::{RatSeries, Var, EXACT};
use crate::zpoly::ZPoly;

/// Surplus lines beyond the interpolation count; each one re-checks pole cancellation.
const LINE_MARGIN: usize = 3;

/// Coefficients of a series in one auxiliary variable, each a `Q̃`-series.
pub type ZSeries = Vec<RatSeries>;

/// `Θ(z) = sum coeffs[k] z^k` through `z^zdeg`.
#[derive(Clone, Debug)]
pub struct ThetaExpansion {
    pub order: i64,
    pub coeffs: ZSeries,
}

fn zs_mul(a: &[RatSeries], b: &[RatSeries], deg: usize, order: i64) -> Result<ZSeries> {
    let mut out = vec![RatSeries::zero(Var::EllQ, order); deg + 1];
    for (i, x) in a.iter().enumerate().take(deg + 1) {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate().take(deg + 1 - i) {
            if !y.is_zero() {
                out[i + j] = out[i + j].checked_add(&x.checked_mul(y)?)?;
            }
        }
    }
    Ok(out)
}

fn zs_exp(l: &[RatSeries], deg: usize, order: i64) -> Result<ZSeries> {
    let mut g = vec![RatSeries::one(Var::EllQ, order)];
    for k in 1..=deg {
        let mut s = RatSeries::zero(Var::EllQ, order);
        for j in 1..=k {
            if let Some(lj) = l.get(j) {
                if !lj.is_zero() {
                    s = s.checked_add(&lj.checked_mul(&g[k - j])?.scale(&ri(j as i64)))?;
                }
            }
        }
        g.push(s.scale(&Rat::new(BigInt::one(), BigInt::from(k))));
    }
    Ok(g)
}

/// `log(Θ(z)/z) = sum_k B_{2k} / (2k (2k)!) E_{2k} z^{2k}` through `z^deg`.
fn log_theta_over_z(deg: usize, order: i64) -> Result<ZSeries> {
    let b = bernoulli_table(deg.max(2));
    let mut l = vec![RatSeries::zero(Var::EllQ, order); deg + 1];
    for k in 1..=deg / 2 {
        let w = 2 * k;
        let c = &b[w] / Rat::from_integer(BigInt::from(w) * factorial(w as u64));
        l[w] = eisenstein(w as u32, 1, Var::EllQ, order)?.scale(&c);
    }
    Ok(l)
}

pub fn theta_z(zdeg: usize, qorder: i64) -> Result<ThetaExpansion> {
    let l = log_theta_over_z(zdeg, qorder)?;
    let g = zs_exp(&l, zdeg.saturating_sub(1), qorder)?;
    let mut coeffs = vec![RatSeries::zero(Var::EllQ, qorder)];
    coeffs.extend(g);
    coeffs.truncate(zdeg + 1);
    Ok(ThetaExpansion { order: qorder, coeffs })
}

/// `z / Θ(z)` through `z^deg`.
pub fn z_over_theta(deg: usize, qorder: i64) -> Result<ZSeries> {
    let l: ZSeries = log_theta_over_z(deg, qorder)?.iter().map(|s| s.neg()).collect();
    zs_exp(&l, deg, qorder)
}

/// Deterministic generator for the interpolation lines.
struct Lcg(u64);

impl Lcg {
    fn next(&mut self) -> u64 {
        self.0 = self.0.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
        self.0 >> 33
    }
}

fn lines(n: usize, count: usize) -> Vec<Vec<i64>> {
    let mut rng = Lcg(0x5eed_0000 + n as u64);
    (0..count).map(|_| (0..n).map(|_| 1 + (rng.next() % 61) as i64).collect()).collect()
}

fn int_pow_table(c: i64, top: u32) -> Vec<BigInt> {
    let mut v = Vec::with_capacity(top as usize + 1);
    let mut p = BigInt::one();
    for _ in 0..=top {
        v.push(p.clone());
        p *= c;
    }
    v
}

/// Disconnected n-point series `F•(z_1..z_n)` with all terms of total degree at most `bound`.
///
/// With `y_k = z_{σ(1)} + ... + z_{σ(k)}`, every permutation contributes
/// `R(y) / (y_1 ... y_n)` where `R = det M(y) · prod_k y_k/Θ(y_k)` is a power
/// series. On a line `z = λ s` each `y_k` is a nonzero multiple of `s`, so the
/// sum over `σ` is an ordinary Laurent series in `s`. Its coefficients are the
/// homogeneous parts of `F• · prod z_i` evaluated at `λ`; these are symmetric
/// polynomials, recovered exactly from enough lines.
pub fn npoint_disconnected<E: Exec>(n: usize, bound: i64, qorder: i64, exec: &E) -> Result<ZPoly> {
    if n == 0 {
        return Err(Error::InvalidInput("n-point series needs n >= 1".into()));
    }
    if bound < -(n as i64) {
        return Ok(ZPoly::zero(n, bound, Var::EllQ));
    }
    let dmax = (bound + n as i64) as u32;
    let d = dmax as usize;
    let theta = theta_z(d + n + 2, qorder)?;
    let th = &theta.coeffs;
    let h = z_over_theta(d, qorder)?;
    // G[m] = (Θ^{(m)}/m!) · (y/Θ), the factor a column contributes for its variable.
    let mut gm: Vec<ZSeries> = Vec::with_capacity(n + 1);
    for m in 0..=n {
        let deriv: ZSeries = (0..=d)
            .map(|i| th.get(i + m).map_or_else(|| RatSeries::zero(Var::EllQ, qorder), |t| t.scale(&Rat::from_integer(binomial((i + m) as i64, m as i64)))))
            .collect();
        gm.push(zs_mul(&deriv, &h, d, qorder)?);
    }
    // Nonvanishing determinant terms: column j takes row π(j) with m = j - π(j) + 1 >= 0.
    struct DetTerm {
        sign: i64,
        konst: RatSeries,
        ms: Vec<usize>,
    }
    let mut dterms = Vec::new();
    for p in permutations(n) {
        if (0..n).any(|j| j + 1 < p[j]) {
            continue;
        }
        let m_last = n - p[n - 1];
        let konst = th.get(m_last).cloned().unwrap_or_else(|| RatSeries::zero(Var::EllQ, qorder));
        if konst.is_zero() {
            continue;
        }
        // Variable y_k (k = 1..n-1) sits in column n-1-k.
        let ms = (1..n).map(|k| {
            let j = n - 1 - k;
            j + 1 - p[j]
        });
        dterms.push(DetTerm { sign: permutation_sign(&p), konst, ms: ms.collect() });
    }
    // A_{e'} over the first n-1 variables, then R_e = A_{e'} h_{e_n}.
    let heads = monomials_up_to(n - 1, dmax);
    let a_vals: Vec<Result<RatSeries>> = exec.map(heads.len(), |idx| {
        let e = &heads[idx];
        let mut acc = RatSeries::zero(Var::EllQ, qorder);
        for t in &dterms {
            let mut prod = t.konst.scale(&ri(t.sign));
            for (k, &m) in t.ms.iter().enumerate() {
                prod = prod.checked_mul(&gm[m][e[k] as usize])?;
                if prod.is_zero() {
                    break;
                }
            }
            acc = acc.checked_add(&prod)?;
        }
        Ok(acc)
    });
    let mut r_coeffs: Vec<(Vec<u32>, RatSeries)> = Vec::new();
    for (e, a) in heads.iter().zip(a_vals) {
        let a = a?;
        if a.is_zero() {
            continue;
        }
        let used: u32 = e.iter().sum();
        for last in 0..=(dmax - used) {
            let r = a.checked_mul(&h[last as usize])?;
            if !r.is_zero() {
                let mut full = e.clone();
                full.push(last);
                r_coeffs.push((full, r));
            }
        }
    }
    // Number of lines from the largest symmetric basis needed.
    let parts: Vec<Vec<Vec<u32>>> = (0..=dmax).map(|dd| partitions_at_most(dd, n)).collect();
    let unknowns = parts.iter().map(|p| p.len()).max().unwrap_or(1);
    let pts = lines(n, unknowns + LINE_MARGIN);
    let perms = permutations(n);
    let values: Vec<Result<Vec<RatSeries>>> = exec.map(pts.len(), |li| {
        let lam = &pts[li];
        let lam_prod: BigInt = lam.iter().map(|&x| BigInt::from(x)).product();
        let mut sig: Vec<(Vec<Vec<BigInt>>, BigInt)> = Vec::with_capacity(perms.len());
        let mut l = BigInt::one();
        for p in &perms {
            let mut c = 0i64;
            let mut tables = Vec::with_capacity(n);
            let mut prod = BigInt::one();
            for &i in p {
                c += lam[i];
                prod *= c;
                tables.push(int_pow_table(c, dmax));
            }
            l = l.lcm(&prod);
            sig.push((tables, prod));
        }
        let factors: Vec<BigInt> = sig.iter().map(|(_, p)| &l / p).collect();
        let mut by_deg = vec![RatSeries::zero(Var::EllQ, qorder); d + 1];
        for (e, r) in &r_coeffs {
            let mut w = BigInt::zero();
            for ((tables, _), f) in sig.iter().zip(factors.iter()) {
                let mut t = f.clone();
                for (k, &ek) in e.iter().enumerate() {
                    if ek > 0 {
                        t *= &tables[k][ek as usize];
                    }
                }
                w += t;
            }
            if w.is_zero() {
                continue;
            }
            let deg = e.iter().sum::<u32>() as usize;
            by_deg[deg] = by_deg[deg].checked_add(&r.scale(&Rat::from_integer(w)))?;
        }
        let scale = Rat::new(lam_prod, l);
        Ok(by_deg.into_iter().map(|s| s.scale(&scale)).collect())
    });
    let values: Vec<Vec<RatSeries>> = values.into_iter().collect::<Result<_>>()?;
    let mut out = ZPoly::zero(n, bound, Var::EllQ);
    for dd in 0..=d {
        let mus = &parts[dd];
        let rows: Vec<Vec<Rat>> = pts.iter().map(|lam| mus.iter().map(|mu| monomial_symmetric(mu, lam)).collect()).collect();
        let order = values.iter().map(|v| v[dd].order()).min().unwrap_or(qorder).min(qorder);
        let rhs: Vec<Vec<Rat>> = values.iter().map(|v| v[dd].coeff_range(0, order)).collect();
        let sol = solve_overdetermined(&rows, &rhs, mus.len(), "symmetric interpolation").map_err(|e| match e {
            Error::RecognitionFailed { .. } => {
                Error::UncancelledPole(format!("{n}-point series is not polynomial in degree {}", dd as i64 - n as i64))
            }
            other => other,
        })?;
        for (mu, coeffs) in mus.iter().zip(sol) {
            let s = RatSeries::from_coeffs(Var::EllQ, 0, coeffs, order);
            if s.is_zero() {
                continue;
            }
            for p in multiset_permutations(mu) {
                out.add_term(p.iter().map(|&x| x as i32 - 1).collect(), s.clone())?;
            }
        }
    }
    Ok(out)
}

fn monomial_symmetric(mu: &[u32], lam: &[i64]) -> Rat {
    let mut s = BigInt::zero();
    for p in multiset_permutations(mu) {
        let mut t = BigInt::one();
        for (&e, &x) in p.iter().zip(lam.iter()) {
            t *= BigInt::from(x).pow(e);
        }
        s += t;
    }
    Rat::from_integer(s)
}

/// Label `(h, a)` of a connected elliptic invariant `F_{h,a}`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Label {
    pub h: u32,
    pub a: Vec<i32>,
}

impl Label {
    pub fn new(h: u32, a: &[i32]) -> Self {
        Label { h, a: a.to_vec() }
    }

    /// Canonical form: entries sorted decreasingly (the invariants are symmetric).
    pub fn canonical(&self) -> Self {
        let mut a = self.a.clone();
        a.sort_unstable_by(|x, y| y.cmp(x));
        Label { h: self.h, a }
    }

    /// `sum (a_j + 2)`.
    pub fn weight(&self) -> i32 {
        self.a.iter().map(|x| x + 2).sum()
    }

    /// Whether the label can carry a nonzero invariant without special conventions.
    pub fn is_regular(&self) -> bool {
        !self.a.is_empty() && self.a.iter().all(|&x| x >= 0) && self.a.iter().sum::<i32>() == 2 * self.h as i32 - 2
    }
}

/// Surplus `Q̃` coefficients beyond the weight dimension.
pub fn default_qorder(max_weight: u32) -> i64 {
    (e_dimension(max_weight) + RECOGNITION_MARGIN) as i64
}

/// Memoised disconnected series and recognised connected invariants.
#[derive(Clone, Debug)]
pub struct EllipticCache {
    qorder: i64,
    disc: BTreeMap<usize, ZPoly>,
    values: BTreeMap<Label, EPoly>,
}

impl EllipticCache {
    pub fn new(qorder: i64) -> Self {
        EllipticCache { qorder, disc: BTreeMap::new(), values: BTreeMap::new() }
    }

    pub fn qorder(&self) -> i64 {
        self.qorder
    }

    pub fn disconnected<E: Exec>(&mut self, n: usize, bound: i64, exec: &E) -> Result<&ZPoly> {
        let stale = self.disc.get(&n).is_none_or(|z| z.bound() < bound);
        if stale {
            let z = npoint_disconnected(n, bound, self.qorder, exec)?;
            self.disc.insert(n, z);
        }
        Ok(&self.disc[&n])
    }

    /// `Q̃`-series of `F_{h,a}` for a regular label, by Möbius inversion over set partitions.
    /// The coefficient of `prod z_j^{a_j+1}` in a product over disjoint blocks is the
    /// product of the block coefficients, so only those are looked up.
    pub fn connected_series<E: Exec>(&mut self, label: &Label, exec: &E) -> Result<RatSeries> {
        if !label.is_regular() {
            return Err(Error::InvalidInput(format!("irregular label {label:?}")));
        }
        let n = label.a.len();
        let total: i64 = label.a.iter().map(|&x| x as i64 + 1).sum();
        for m in 1..=n {
            let need = total - (n - m) as i64;
            let have = self.disc.get(&m).map_or(i64::MIN, |z| z.bound());
            if have < need {
                self.disconnected(m, need, exec)?;
            }
        }
        let mut acc = RatSeries::zero(Var::EllQ, self.qorder);
        for blocks in set_partitions(n) {
            let k = blocks.len() as u64;
            let mu = Rat::from_integer(factorial(k - 1)) * ri(if k % 2 == 1 { 1 } else { -1 });
            let mut prod = RatSeries::constant(Var::EllQ, mu, EXACT);
            for b in &blocks {
                let e: Vec<i32> = b.iter().map(|&i| label.a[i] + 1).collect();
                prod = prod.checked_mul(&self.disc[&b.len()].coeff(&e))?;
                if prod.is_zero() {
                    break;
                }
            }
            acc = acc.checked_add(&prod)?;
        }
        Ok(acc)
    }

    /// `F_{h,a}` as a polynomial in `E₂, E₄, E₆`, including the boundary conventions:
    /// `F_{0,(-2)} = 1` (the unstable pairing `<ω, 1, 1>`), and zero for any
    /// other negative entry or for entries not summing to `2h - 2`.
    pub fn value<E: Exec>(&mut self, label: &Label, exec: &E) -> Result<EPoly> {
        if label.a.is_empty() {
            return Err(Error::InvalidInput("use f1_empty for the label without insertions".into()));
        }
        if label.h == 0 && label.a == [-2] {
            return Ok(EPoly::constant(Rat::one()));
        }
        if !label.is_regular() {
            return Ok(EPoly::zero());
        }
        let key = label.canonical();
        if let Some(v) = self.values.get(&key) {
            return Ok(v.clone());
        }
        let s = self.connected_series(&key, exec)?;
        let w = key.weight() as u32;
        let need = (e_dimension(w) + RECOGNITION_MARGIN) as i64;
        if s.order() + 1 < need {
            return Err(Error::InsufficientPrecision { needed: need - 1, available: s.order() });
        }
        let v = recognize_e(&s, w, RECOGNITION_MARGIN)?;
        self.values.insert(key, v.clone());
        Ok(v)
    }

    /// Full connected series as a polynomial in `z`, by Möbius inversion of ZPoly products.
    pub fn connected_zpoly<E: Exec>(&mut self, n: usize, bound: i64, exec: &E) -> Result<ZPoly> {
        for m in 1..=n {
            self.disconnected(m, bound + (n - m) as i64, exec)?;
        }
        let mut acc = ZPoly::zero(n, bound, Var::EllQ);
        for blocks in set_partitions(n) {
            let k = blocks.len() as u64;
            let mu = Rat::from_integer(factorial(k - 1)) * ri(if k % 2 == 1 { 1 } else { -1 });
            let mut prod: Option<ZPoly> = None;
            for b in &blocks {
                let z = self.disc[&b.len()].embed(n, b)?;
                prod = Some(match prod {
                    None => z,
                    Some(p) => p.checked_mul(&z)?,
                });
            }
            let prod = prod.expect("nonempty partition").scale(&mu).truncate_degree(bound);
            acc = acc.checked_add(&prod)?;
        }
        Ok(acc)
    }
}

/// `F_{1,∅} = -(1/24) log(-Q̃) - sum_n log(1 - Q̃ⁿ)`; the log slot is read as `log(-Q̃)`.
pub fn f1_empty(qorder: i64) -> RatSeries {
    let s = RatSeries::from_fn(Var::EllQ, 1, qorder, |n| {
        Rat::new(crate::rat::divisor_sigma(n as u64, 1), BigInt::from(n))
    });
    s.with_log(Rat::new(BigInt::from(-1), BigInt::from(24)))
}

/// Both sides of `-24 ∂_{E₂} F_{h,a} = loop + splitting - 2 sum_{i≠j} binom(a_i+a_j+1, a_i) F_{h, merge_ij(a)}`.
pub fn elliptic_hae_check<E: Exec>(label: &Label, cache: &mut EllipticCache, exec: &E) -> Result<(EPoly, EPoly)> {
    let lhs = cache.value(label, exec)?.partial_e2().scale(&ri(-24));
    let n = label.a.len();
    let a = &label.a;
    let mut rhs = EPoly::zero();
    if label.h >= 1 {
        for i in 0..n {
            for j in 0..n {
                let mut b = a.clone();
                b[i] -= 1;
                b[j] -= 1;
                rhs = rhs.add(&cache.value(&Label { h: label.h - 1, a: b }, exec)?);
            }
        }
    }
    for mask in 0..(1u32 << n) {
        let left: Vec<usize> = (0..n).filter(|&i| mask & (1 << i) != 0).collect();
        let right: Vec<usize> = (0..n).filter(|&i| mask & (1 << i) == 0).collect();
        if left.is_empty() || right.is_empty() {
            continue;
        }
        for h1 in 0..=label.h {
            let h2 = label.h - h1;
            for li in 0..left.len() {
                for rj in 0..right.len() {
                    let mut b1: Vec<i32> = left.iter().map(|&k| a[k]).collect();
                    let mut b2: Vec<i32> = right.iter().map(|&k| a[k]).collect();
                    b1[li] -= 1;
                    b2[rj] -= 1;
                    let f1 = cache.value(&Label { h: h1, a: b1 }, exec)?;
                    if f1.is_zero() {
                        continue;
                    }
                    let f2 = cache.value(&Label { h: h2, a: b2 }, exec)?;
                    rhs = rhs.add(&f1.mul(&f2));
                }
            }
        }
    }
    for i in 0..n {
        for j in 0..n {
            if i == j {
                continue;
            }
            let mut b: Vec<i32> = (0..n).filter(|&k| k != i && k != j).map(|k| a[k]).collect();
            b.push(a[i] + a[j]);
            let c = Rat::from_integer(binomial((a[i] + a[j] + 1) as i64, a[i] as i64));
            let f = cache.value(&Label { h: label.h, a: b }, exec)?;
            rhs = rhs.sub(&f.scale(&(c * ri(2))));
        }
    }
    Ok((lhs, rhs))
}

/// Every regular label with `h <= hmax` and at most `nmax` insertions.
pub fn labels_up_to(hmax: u32, nmax: usize) -> Vec<Label> {
    let mut out = Vec::new();
    for h in 1..=hmax {
        for n in 1..=nmax {
            for p in partitions_at_most((2 * h - 2) as u32, n) {
                out.push(Label { h, a: p.iter().map(|&x| x as i32).collect() });
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exec::Sequential;
    use crate::rat::rq;

    #[test]
    fn inverse_theta_coefficients() {
        let q = 12;
        let h = z_over_theta(6, q).unwrap();
        // 1/Θ = z⁻¹ - E₂ z/24 + (E₄/2880 + E₂²/1152) z³ - ...
        assert_eq!(recognize_e(&h[2], 2, 5).unwrap(), EPoly::monomial(rq(-1, 24), [1, 0, 0]));
        let z3 = EPoly::monomial(rq(1, 2880), [0, 1, 0]).add(&EPoly::monomial(rq(1, 1152), [2, 0, 0]));
        assert_eq!(recognize_e(&h[4], 4, 5).unwrap(), z3);
        let z5 = EPoly::monomial(rq(-1, 181440), [0, 0, 1])
            .add(&EPoly::monomial(rq(-1, 69120), [1, 1, 0]))
            .add(&EPoly::monomial(rq(-1, 82944), [3, 0, 0]));
        assert_eq!(recognize_e(&h[6], 6, 5).unwrap(), z5);
    }

    #[test]
    fn one_point_is_inverse_theta() {
        let f = npoint_disconnected(1, 5, 8, &Sequential).unwrap();
        let h = z_over_theta(6, 8).unwrap();
        for k in 0..=6 {
            assert_eq!(f.coeff(&[k - 1]), h[k as usize], "z^{}", k - 1);
        }
    }

    #[test]
    fn two_point_low_labels() {
        let mut c = EllipticCache::new(14);
        let ex = Sequential;
        let f10 = c.value(&Label::new(1, &[0]), &ex).unwrap();
        assert_eq!(f10, EPoly::monomial(rq(-1, 24), [1, 0, 0]));
        let f100 = c.value(&Label::new(1, &[0, 0]), &ex).unwrap();
        let expect = EPoly::monomial(rq(-1, 288), [2, 0, 0]).add(&EPoly::monomial(rq(1, 288), [0, 1, 0]));
        assert_eq!(f100, expect);
        let f211 = c.value(&Label::new(2, &[1, 1]), &ex).unwrap();
        let expect = EPoly::monomial(rq(-2, 25920), [0, 0, 1])
            .add(&EPoly::monomial(rq(-3, 25920), [1, 1, 0]))
            .add(&EPoly::monomial(rq(5, 25920), [3, 0, 0]));
        assert_eq!(f211, expect);
        let f22 = c.value(&Label::new(2, &[2]), &ex).unwrap();
        assert_eq!(f22, EPoly::monomial(rq(2, 5760), [0, 1, 0]).add(&EPoly::monomial(rq(5, 5760), [2, 0, 0])));
    }

    #[test]
    fn connected_two_point_is_regular_and_symmetric() {
        let mut c = EllipticCache::new(8);
        let z = c.connected_zpoly(2, 4, &Sequential).unwrap();
        for (e, _) in z.terms() {
            assert!(e.iter().all(|&x| x >= 1), "negative exponent {e:?}");
            let sw = [e[1], e[0]];
            assert_eq!(z.coeff(&sw), z.coeff(e));
        }
    }
}

#[cfg(test)]
mod heavy_tests {
    use super::*;
    use crate::exec::Sequential;

    #[test]
    fn anomaly_and_weight_for_all_small_labels() {
        let mut c = EllipticCache::new(default_qorder(16));
        for l in labels_up_to(3, 4) {
            let v = c.value(&l, &Sequential).unwrap();
            assert_eq!(v.weight(), Some(l.weight() as u32), "{l:?}");
            let (lhs, rhs) = elliptic_hae_check(&l, &mut c, &Sequential).unwrap();
            assert_eq!(lhs, rhs, "{l:?}");
        }
    }
}
