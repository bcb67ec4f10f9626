//! Truncated Laurent series with exact rational coefficients.
//!
//! A [`RatSeries`] stands for `log_coeff * log(v) + sum_{k = min_exp}^{order} c_k v^k + O(v^{order+1})`.
//! Every operation carries the truncation order forward so that no coefficient
//! is ever reported beyond the point where it is actually known.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::rat::{ri, Rat};

/// Order used for series that are exact (finitely many terms, no truncation).
pub const EXACT: i64 = i64::MAX / 8;

/// The expansion variables that appear in the pipeline.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Var {
    /// B-model coordinate `q` near large volume.
    SmallQ,
    /// A-model Kähler coordinate `Q`.
    BigQ,
    /// Modular coordinate `𝒬`.
    ModQ,
    /// Elliptic-curve coordinate `Q̃ = 𝒬³`.
    EllQ,
    /// Conifold coordinate `u = 1 + 27q`.
    U,
    /// Conifold flat coordinate.
    THat,
    Hbar,
    /// Generic variable, used for abstract tests and internal helpers.
    T,
    /// Line parameter in the n-point evaluation.
    S,
}

impl Var {
    pub fn symbol(self) -> &'static str {
        match self {
            Var::SmallQ => "q",
            Var::BigQ => "Q",
            Var::ModQ => "cQ",
            Var::EllQ => "Qt",
            Var::U => "u",
            Var::THat => "that",
            Var::Hbar => "hbar",
            Var::T => "t",
            Var::S => "s",
        }
    }

    pub fn from_symbol(s: &str) -> Option<Var> {
        Some(match s {
            "q" => Var::SmallQ,
            "Q" => Var::BigQ,
            "cQ" => Var::ModQ,
            "Qt" => Var::EllQ,
            "u" => Var::U,
            "that" => Var::THat,
            "hbar" => Var::Hbar,
            "t" => Var::T,
            "s" => Var::S,
            _ => return None,
        })
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.symbol())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RatSeries {
    var: Var,
    /// Exponent of `coeffs[0]`. After normalisation `coeffs[0] != 0`; an
    /// all-zero series has no stored coefficients and `min_exp = order + 1`.
    min_exp: i64,
    order: i64,
    coeffs: Vec<Rat>,
    log_coeff: Rat,
}

fn mismatch(a: Var, b: Var) -> Error {
    Error::VariableMismatch { left: String::from(a.symbol()), right: String::from(b.symbol()) }
}

impl RatSeries {
    // ---------- construction ----------

    pub fn zero(var: Var, order: i64) -> Self {
        RatSeries { var, min_exp: order.saturating_add(1), order, coeffs: Vec::new(), log_coeff: Rat::zero() }
    }

    pub fn constant(var: Var, c: Rat, order: i64) -> Self {
        Self::monomial(var, c, 0, order)
    }

    pub fn one(var: Var, order: i64) -> Self {
        Self::constant(var, Rat::one(), order)
    }

    /// `c * v^k + O(v^{order+1})`.
    pub fn monomial(var: Var, c: Rat, k: i64, order: i64) -> Self {
        if k > order {
            return Self::zero(var, order);
        }
        Self::from_coeffs(var, k, vec![c], order)
    }

    /// The variable itself, `v`.
    pub fn var_series(var: Var, order: i64) -> Self {
        Self::monomial(var, Rat::one(), 1, order)
    }

    /// `coeffs[i]` is the coefficient of `v^{min_exp + i}`; positions up to `order`
    /// that are not supplied are zero, positions past `order` are dropped.
    pub fn from_coeffs(var: Var, min_exp: i64, mut coeffs: Vec<Rat>, order: i64) -> Self {
        let keep = (order - min_exp + 1).max(0) as usize;
        coeffs.truncate(keep);
        let mut s = RatSeries { var, min_exp, order, coeffs, log_coeff: Rat::zero() };
        s.normalize();
        s
    }

    pub fn from_fn(var: Var, start: i64, order: i64, f: impl FnMut(i64) -> Rat) -> Self {
        let coeffs = (start..=order).map(f).collect();
        Self::from_coeffs(var, start, coeffs, order)
    }

    pub fn from_ints(var: Var, min_exp: i64, coeffs: &[i64], order: i64) -> Self {
        Self::from_coeffs(var, min_exp, coeffs.iter().map(|&c| ri(c)).collect(), order)
    }

    fn normalize(&mut self) {
        let lead = self.coeffs.iter().position(|c| !c.is_zero());
        match lead {
            None => {
                self.coeffs.clear();
                self.min_exp = self.order.saturating_add(1);
            }
            Some(p) => {
                if p > 0 {
                    self.coeffs.drain(..p);
                    self.min_exp += p as i64;
                }
                while self.coeffs.last().is_some_and(|c| c.is_zero()) {
                    self.coeffs.pop();
                }
            }
        }
    }

    // ---------- accessors ----------

    pub fn var(&self) -> Var {
        self.var
    }

    pub fn order(&self) -> i64 {
        self.order
    }

    pub fn is_exact(&self) -> bool {
        self.order >= EXACT
    }

    pub fn log_coeff(&self) -> &Rat {
        &self.log_coeff
    }

    /// Lowest exponent with a nonzero coefficient, if any is known.
    pub fn valuation(&self) -> Option<i64> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.min_exp)
        }
    }

    /// Valuation, or `order + 1` when nothing nonzero is known.
    fn val_floor(&self) -> i64 {
        self.min_exp
    }

    /// Coefficient of `v^k`; zero below the valuation.
    ///
    /// # Panics
    /// If `k` is beyond the truncation order.
    pub fn coeff(&self, k: i64) -> Rat {
        self.try_coeff(k).unwrap_or_else(|| panic!("coefficient {k} requested past order {}", self.order))
    }

    pub fn try_coeff(&self, k: i64) -> Option<Rat> {
        if k > self.order {
            return None;
        }
        if k < self.min_exp {
            return Some(Rat::zero());
        }
        Some(self.coeffs.get((k - self.min_exp) as usize).cloned().unwrap_or_else(Rat::zero))
    }

    fn c(&self, k: i64) -> Rat {
        if k < self.min_exp || k > self.order {
            return Rat::zero();
        }
        self.coeffs.get((k - self.min_exp) as usize).cloned().unwrap_or_else(Rat::zero)
    }

    fn cref(&self, k: i64) -> Option<&Rat> {
        if k < self.min_exp {
            return None;
        }
        self.coeffs.get((k - self.min_exp) as usize)
    }

    /// Nonzero terms as `(exponent, coefficient)` pairs in increasing order.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &Rat)> {
        let m = self.min_exp;
        self.coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(move |(i, c)| (m + i as i64, c))
    }

    /// Coefficients `c_from..=c_to` as a vector.
    pub fn coeff_range(&self, from: i64, to: i64) -> Vec<Rat> {
        (from..=to).map(|k| self.coeff(k)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty() && self.log_coeff.is_zero()
    }

    /// True when the power-series part is a single constant and there is no log.
    pub fn as_constant(&self) -> Option<Rat> {
        if !self.log_coeff.is_zero() {
            return None;
        }
        match self.valuation() {
            None => Some(Rat::zero()),
            Some(0) if self.coeffs.len() == 1 => Some(self.coeffs[0].clone()),
            _ => None,
        }
    }

    // ---------- simple transformations ----------

    pub fn with_var(mut self, var: Var) -> Self {
        self.var = var;
        self
    }

    pub fn with_log(mut self, c: Rat) -> Self {
        self.log_coeff = c;
        self
    }

    pub fn without_log(mut self) -> Self {
        self.log_coeff = Rat::zero();
        self
    }

    pub fn truncate(&self, order: i64) -> Self {
        if order >= self.order {
            return self.clone();
        }
        let mut s = self.clone();
        s.order = order;
        let keep = (order - s.min_exp + 1).max(0) as usize;
        s.coeffs.truncate(keep);
        s.normalize();
        s
    }

    pub fn scale(&self, c: &Rat) -> Self {
        let mut s = self.clone();
        for x in s.coeffs.iter_mut() {
            *x *= c;
        }
        s.log_coeff *= c;
        s.normalize();
        s
    }

    pub fn neg(&self) -> Self {
        self.scale(&ri(-1))
    }

    /// Multiplication by `v^k`. Logarithmic terms are not allowed.
    pub fn shift(&self, k: i64) -> Result<Self> {
        if !self.log_coeff.is_zero() {
            return Err(Error::LogUnsupported("shift"));
        }
        let mut s = self.clone();
        s.min_exp += k;
        if !s.is_exact() {
            s.order += k;
        }
        Ok(s)
    }

    /// Substitutes `v -> v^m` for `m >= 1`.
    pub fn substitute_power(&self, m: i64) -> Self {
        assert!(m >= 1, "substitute_power needs a positive power");
        let order = if self.is_exact() { EXACT } else { m * (self.order + 1) - 1 };
        if let Some(v) = self.valuation() {
            let n = self.coeffs.len();
            let mut out = vec![Rat::zero(); (m as usize) * (n - 1) + 1];
            for (i, c) in self.coeffs.iter().enumerate() {
                out[i * m as usize] = c.clone();
            }
            let mut s = Self::from_coeffs(self.var, v * m, out, order);
            s.log_coeff = &self.log_coeff * ri(m);
            return s;
        }
        let mut s = Self::zero(self.var, order);
        s.log_coeff = &self.log_coeff * ri(m);
        s
    }

    /// Substitutes `v -> c v`; only allowed with a logarithm when `c = 1`.
    pub fn scale_var(&self, c: &Rat) -> Result<Self> {
        if !self.log_coeff.is_zero() && !c.is_one() {
            return Err(Error::LogUnsupported("scale_var"));
        }
        let mut s = self.clone();
        let mut p = crate::rat::rpow(c, s.min_exp);
        for x in s.coeffs.iter_mut() {
            *x *= &p;
            p *= c;
        }
        s.normalize();
        Ok(s)
    }

    // ---------- ring operations ----------

    fn check_var(&self, o: &Self) -> Result<()> {
        if self.var != o.var {
            Err(mismatch(self.var, o.var))
        } else {
            Ok(())
        }
    }

    pub fn checked_add(&self, o: &Self) -> Result<Self> {
        self.check_var(o)?;
        let order = self.order.min(o.order);
        let lo = self.min_exp.min(o.min_exp).min(order + 1);
        let top = |s: &Self| if s.coeffs.is_empty() { i64::MIN } else { s.min_exp + s.coeffs.len() as i64 - 1 };
        let hi = order.min(top(self).max(top(o)));
        let coeffs = (lo..=hi).map(|k| self.c(k) + o.c(k)).collect();
        let mut s = Self::from_coeffs(self.var, lo, coeffs, order);
        s.log_coeff = &self.log_coeff + &o.log_coeff;
        Ok(s)
    }

    pub fn checked_sub(&self, o: &Self) -> Result<Self> {
        self.checked_add(&o.neg())
    }

    pub fn checked_mul(&self, o: &Self) -> Result<Self> {
        self.check_var(o)?;
        let log = match (self.log_coeff.is_zero(), o.log_coeff.is_zero()) {
            (true, true) => Rat::zero(),
            (false, false) => return Err(Error::LogUnsupported("mul of two logarithmic series")),
            (false, true) => {
                let c = o.as_constant().ok_or(Error::LogUnsupported("mul of log by non-constant"))?;
                &self.log_coeff * c
            }
            (true, false) => {
                let c = self.as_constant().ok_or(Error::LogUnsupported("mul of log by non-constant"))?;
                &o.log_coeff * c
            }
        };
        let va = self.val_floor();
        let vb = o.val_floor();
        let order = self.order.saturating_add(vb).min(o.order.saturating_add(va)).min(EXACT);
        let lo = va + vb;
        let mut out = if self.coeffs.is_empty() || o.coeffs.is_empty() || order < lo {
            Vec::new()
        } else {
            let n = (order - lo + 1) as usize;
            let n = n.min(self.coeffs.len() + o.coeffs.len() - 1);
            let mut out = vec![Rat::zero(); n];
            for (i, a) in self.coeffs.iter().enumerate() {
                if i >= n || a.is_zero() {
                    continue;
                }
                for (j, b) in o.coeffs.iter().enumerate().take(n - i) {
                    if !b.is_zero() {
                        out[i + j] += a * b;
                    }
                }
            }
            out
        };
        if out.is_empty() {
            out = Vec::new();
        }
        let mut s = Self::from_coeffs(self.var, lo, out, order);
        s.log_coeff = log;
        Ok(s)
    }

    /// Multiplicative inverse of a series with a known nonzero leading term.
    pub fn inverse(&self) -> Result<Self> {
        if !self.log_coeff.is_zero() {
            return Err(Error::LogUnsupported("inverse"));
        }
        let v = self.valuation().ok_or(Error::DivisionByZero)?;
        let rel = if self.is_exact() { None } else { Some(self.order - v) };
        let inv_order = |n: i64| match rel {
            Some(r) => r.min(n),
            None => n,
        };
        // Unit part u = f / v^v, inverted coefficientwise.
        let a0 = self.coeffs[0].clone();
        let a0inv = a0.recip();
        // For exact input we still need a finite target; the caller truncates.
        let target = match rel {
            Some(r) => r,
            None => {
                if self.coeffs.len() == 1 {
                    let mut s = Self::monomial(self.var, a0inv, -v, EXACT);
                    s.order = EXACT;
                    return Ok(s);
                }
                return Err(Error::InsufficientPrecision { needed: EXACT, available: EXACT });
            }
        };
        let n = inv_order(target) as usize + 1;
        let mut b: Vec<Rat> = Vec::with_capacity(n);
        b.push(a0inv.clone());
        for k in 1..n {
            let mut s = Rat::zero();
            for j in 1..=k.min(self.coeffs.len() - 1) {
                let aj = &self.coeffs[j];
                if !aj.is_zero() {
                    s += aj * &b[k - j];
                }
            }
            b.push(-s * &a0inv);
        }
        Ok(Self::from_coeffs(self.var, -v, b, target - v))
    }

    /// Inverse of an exact series, computed to a finite order.
    pub fn inverse_to(&self, order: i64) -> Result<Self> {
        if self.is_exact() && self.coeffs.len() > 1 {
            let v = self.valuation().ok_or(Error::DivisionByZero)?;
            return self.truncate(order + 2 * v).inverse();
        }
        Ok(self.inverse()?.truncate(order))
    }

    pub fn checked_div(&self, o: &Self) -> Result<Self> {
        if o.is_exact() && o.coeffs.len() > 1 {
            let v = o.valuation().ok_or(Error::DivisionByZero)?;
            let need = self.order - self.val_floor() + 2 * v;
            return self.checked_mul(&o.truncate(need).inverse()?);
        }
        self.checked_mul(&o.inverse()?)
    }

    /// Integer power.
    pub fn pow_int(&self, n: i64) -> Result<Self> {
        if n < 0 {
            return self.inverse()?.pow_int(-n);
        }
        if !self.log_coeff.is_zero() && n > 1 {
            return Err(Error::LogUnsupported("pow"));
        }
        let mut result = Self::one(self.var, EXACT);
        let mut base = self.clone();
        let mut e = n;
        while e > 0 {
            if e & 1 == 1 {
                result = result.checked_mul(&base)?;
            }
            e >>= 1;
            if e > 0 {
                base = base.checked_mul(&base)?;
            }
        }
        Ok(result)
    }

    // ---------- transcendental operations ----------

    /// `exp` of a series whose power-series part has no constant or negative terms.
    /// An integer logarithmic coefficient `n` contributes the factor `v^n`.
    pub fn exp(&self) -> Result<Self> {
        if !crate::rat::is_integer(&self.log_coeff) {
            return Err(Error::LogUnsupported("exp with non-integer log coefficient"));
        }
        if self.valuation().is_some_and(|v| v < 1) {
            return Err(Error::NotUnit("exp needs zero constant term"));
        }
        let n = self.order.max(0).min(EXACT);
        if self.is_exact() {
            return Err(Error::InsufficientPrecision { needed: EXACT, available: EXACT });
        }
        let len = (n + 1) as usize;
        let mut g: Vec<Rat> = Vec::with_capacity(len);
        g.push(Rat::one());
        for k in 1..len {
            let mut s = Rat::zero();
            for j in 1..=k {
                if let Some(fj) = self.cref(j as i64) {
                    if !fj.is_zero() {
                        s += ri(j as i64) * fj * &g[k - j];
                    }
                }
            }
            g.push(s / ri(k as i64));
        }
        let e = self.log_coeff.to_integer();
        let shift: i64 = i64::try_from(&e).map_err(|_| Error::InvalidInput("log coefficient too large".into()))?;
        let s = Self::from_coeffs(self.var, 0, g, n);
        s.shift(shift)
    }

    /// `log` of `v^k (1 + ...)`; the monomial factor becomes `k log v`.
    pub fn log(&self) -> Result<Self> {
        if !self.log_coeff.is_zero() {
            return Err(Error::LogUnsupported("log"));
        }
        let v = self.valuation().ok_or(Error::NotUnit("log of zero"))?;
        if !self.coeffs[0].is_one() {
            return Err(Error::NotUnit("log needs leading coefficient 1"));
        }
        if self.is_exact() {
            return Err(Error::InsufficientPrecision { needed: EXACT, available: EXACT });
        }
        let n = self.order - v;
        let f = &self.coeffs;
        let len = (n + 1) as usize;
        let fk = |k: usize| -> Rat { f.get(k).cloned().unwrap_or_else(Rat::zero) };
        let mut g: Vec<Rat> = vec![Rat::zero(); len];
        for k in 1..len {
            let mut s = ri(k as i64) * fk(k);
            for j in 1..k {
                let fj = fk(k - j);
                if !fj.is_zero() && !g[j].is_zero() {
                    s -= ri(j as i64) * &g[j] * fj;
                }
            }
            g[k] = s / ri(k as i64);
        }
        let mut s = Self::from_coeffs(self.var, 0, g, n);
        s.log_coeff = ri(v);
        Ok(s)
    }

    /// `f^alpha` for a unit `f = 1 + O(v)`.
    pub fn pow_rat(&self, alpha: &Rat) -> Result<Self> {
        if !self.log_coeff.is_zero() {
            return Err(Error::LogUnsupported("power"));
        }
        if self.valuation() != Some(0) || !self.coeffs[0].is_one() {
            return Err(Error::NotUnit("rational power needs constant term 1"));
        }
        if self.is_exact() {
            return Err(Error::InsufficientPrecision { needed: EXACT, available: EXACT });
        }
        let len = (self.order + 1) as usize;
        let f = &self.coeffs;
        let a1 = alpha + Rat::one();
        let mut g: Vec<Rat> = Vec::with_capacity(len);
        g.push(Rat::one());
        for k in 1..len {
            let mut s = Rat::zero();
            for j in 1..=k.min(f.len() - 1) {
                if !f[j].is_zero() {
                    s += (&a1 * ri(j as i64) - ri(k as i64)) * &f[j] * &g[k - j];
                }
            }
            g.push(s / ri(k as i64));
        }
        Ok(Self::from_coeffs(self.var, 0, g, self.order))
    }

    pub fn nth_root(&self, n: i64) -> Result<Self> {
        self.pow_rat(&Rat::new(BigInt::one(), BigInt::from(n)))
    }

    /// `v d/dv`.
    pub fn theta(&self) -> Self {
        let m = self.min_exp;
        let coeffs = self.coeffs.iter().enumerate().map(|(i, c)| c * ri(m + i as i64)).collect();
        let mut s = Self::from_coeffs(self.var, m, coeffs, self.order);
        if !self.log_coeff.is_zero() {
            s = s.checked_add(&Self::constant(self.var, self.log_coeff.clone(), EXACT)).expect("same variable");
        }
        s
    }

    /// `d/dv`.
    pub fn derivative(&self) -> Result<Self> {
        self.theta().shift(-1)
    }

    /// `outer(inner)`; `inner` must have positive valuation. A logarithm in `outer`
    /// is allowed when `inner = v^m (1 + ...)`, giving `m log v + log(1 + ...)`.
    pub fn compose(&self, inner: &Self) -> Result<Self> {
        if !inner.log_coeff.is_zero() {
            return Err(Error::InvalidComposition("inner series has a logarithm"));
        }
        let m = inner.valuation().ok_or(Error::InvalidComposition("inner series is zero"))?;
        if m < 1 {
            return Err(Error::InvalidComposition("inner series must vanish at the origin"));
        }
        let var = inner.var;
        // Horner over the power-series part, after pulling out v^{min_exp}.
        let mut acc = Self::zero(var, EXACT);
        if let Some(lo) = self.valuation() {
            for c in self.coeffs.iter().rev() {
                acc = acc.checked_mul(inner)?;
                acc = acc.checked_add(&Self::constant(var, c.clone(), EXACT))?;
            }
            if lo != 0 {
                acc = acc.checked_mul(&inner.pow_int(lo)?)?;
            }
        }
        if !self.is_exact() {
            let cut = m.saturating_mul(self.order.saturating_add(1)).saturating_sub(1);
            acc = acc.truncate(cut);
        }
        if !self.log_coeff.is_zero() {
            let l = inner.log()?;
            acc = acc.checked_add(&l.scale(&self.log_coeff))?;
        }
        Ok(acc)
    }

    /// Compositional inverse of `f = c v + ...` with `c != 0`, by Lagrange inversion.
    pub fn revert(&self) -> Result<Self> {
        if !self.log_coeff.is_zero() {
            return Err(Error::LogUnsupported("revert"));
        }
        if self.valuation() != Some(1) {
            return Err(Error::NotInvertible("reversion needs valuation exactly 1"));
        }
        if self.is_exact() {
            return Err(Error::InsufficientPrecision { needed: EXACT, available: EXACT });
        }
        let n = self.order;
        // h = v / f(v), a unit known to order n - 1.
        let h = self.shift(-1)?.inverse()?;
        let mut hp = Self::one(self.var, EXACT);
        let mut g = Vec::with_capacity(n.max(0) as usize);
        for k in 1..=n {
            hp = hp.checked_mul(&h)?;
            g.push(hp.coeff(k - 1) / ri(k));
        }
        Ok(Self::from_coeffs(self.var, 1, g, n))
    }

    /// Agreement of the power-series parts and logarithms through exponent `order`.
    pub fn agrees_to(&self, o: &Self, order: i64) -> bool {
        if self.var != o.var || self.log_coeff != o.log_coeff || self.order < order || o.order < order {
            return false;
        }
        let lo = self.min_exp.min(o.min_exp);
        (lo..=order).all(|k| self.c(k) == o.c(k))
    }
}

impl fmt::Display for RatSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let v = self.var.symbol();
        let mut first = true;
        if !self.log_coeff.is_zero() {
            write!(f, "({})*log({v})", self.log_coeff)?;
            first = false;
        }
        for (k, c) in self.terms() {
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            match k {
                0 => write!(f, "{c}")?,
                1 => write!(f, "({c})*{v}")?,
                _ => write!(f, "({c})*{v}^{k}")?,
            }
        }
        if !self.is_exact() {
            if !first {
                f.write_str(" + ")?;
            }
            write!(f, "O({v}^{})", self.order + 1)?;
        } else if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

macro_rules! op_impl {
    ($tr:ident, $m:ident, $checked:ident) => {
        impl core::ops::$tr<&RatSeries> for &RatSeries {
            type Output = RatSeries;
            /// # Panics
            /// On the error conditions of the checked variant.
            fn $m(self, o: &RatSeries) -> RatSeries {
                self.$checked(o).unwrap_or_else(|e| panic!("{e}"))
            }
        }
        impl core::ops::$tr<RatSeries> for RatSeries {
            type Output = RatSeries;
            fn $m(self, o: RatSeries) -> RatSeries {
                (&self).$m(&o)
            }
        }
        impl core::ops::$tr<&RatSeries> for RatSeries {
            type Output = RatSeries;
            fn $m(self, o: &RatSeries) -> RatSeries {
                (&self).$m(o)
            }
        }
        impl core::ops::$tr<RatSeries> for &RatSeries {
            type Output = RatSeries;
            fn $m(self, o: RatSeries) -> RatSeries {
                self.$m(&o)
            }
        }
    };
}

op_impl!(Add, add, checked_add);
op_impl!(Sub, sub, checked_sub);
op_impl!(Mul, mul, checked_mul);
op_impl!(Div, div, checked_div);

impl core::ops::Neg for RatSeries {
    type Output = RatSeries;
    fn neg(self) -> RatSeries {
        RatSeries::neg(&self)
    }
}

impl core::ops::Neg for &RatSeries {
    type Output = RatSeries;
    fn neg(self) -> RatSeries {
        RatSeries::neg(self)
    }
}

/// `true` if every coefficient is an integer.
pub fn is_integral(s: &RatSeries) -> bool {
    s.terms().all(|(_, c)| c.denom().is_one()) && s.log_coeff().denom().is_one()
}

/// The absolute value of the largest numerator, handy for size diagnostics.
pub fn max_height(s: &RatSeries) -> BigInt {
    s.terms().map(|(_, c)| c.numer().abs().max(c.denom().clone())).max().unwrap_or_else(BigInt::zero)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::rq;

    fn q(order: i64) -> RatSeries {
        RatSeries::var_series(Var::SmallQ, order)
    }

    #[test]
    fn geometric_product_cancels() {
        let a = RatSeries::from_ints(Var::SmallQ, 0, &[1, -27, 729], 2);
        let b = RatSeries::from_ints(Var::SmallQ, 0, &[1, 27], EXACT);
        let p = &a * &b;
        assert_eq!(p.order(), 2);
        assert_eq!(p.coeff_range(0, 2), vec![ri(1), ri(0), ri(0)]);
        let inv = b.inverse_to(2).unwrap();
        assert_eq!(inv, a);
    }

    #[test]
    fn log_exp_roundtrip() {
        let f = RatSeries::from_ints(Var::SmallQ, 1, &[1, 2, 3, 4, 5, 6], 6);
        let e = f.exp().unwrap();
        let back = e.log().unwrap();
        assert_eq!(back, f);
    }

    #[test]
    fn log_of_monomial_times_unit() {
        let f = RatSeries::from_ints(Var::SmallQ, 1, &[1, 3, 7], 3);
        let l = f.log().unwrap();
        assert_eq!(*l.log_coeff(), ri(1));
        assert_eq!(l.order(), 2);
        assert_eq!(l.coeff(1), ri(3));
        assert_eq!(l.exp().unwrap(), f);
    }

    #[test]
    fn reversion_of_geometric() {
        // f = v/(1-v), inverse v/(1+v).
        let f = RatSeries::from_fn(Var::T, 1, 8, |_| ri(1));
        let g = f.revert().unwrap();
        let expect = RatSeries::from_fn(Var::T, 1, 8, |k| ri(if k % 2 == 1 { 1 } else { -1 }));
        assert_eq!(g, expect);
        let id = f.compose(&g).unwrap();
        assert_eq!(id, RatSeries::var_series(Var::T, 8));
    }

    #[test]
    fn cube_root() {
        let f = RatSeries::from_ints(Var::T, 0, &[1, 3, 3, 1], EXACT).truncate(10);
        let r = f.nth_root(3).unwrap();
        assert_eq!(r, RatSeries::from_ints(Var::T, 0, &[1, 1], 10));
    }

    #[test]
    fn theta_with_log() {
        let f = RatSeries::from_ints(Var::SmallQ, 1, &[2, 3], 4).with_log(rq(-1, 24));
        let t = f.theta();
        assert_eq!(t.coeff(0), rq(-1, 24));
        assert_eq!(t.coeff(1), ri(2));
        assert_eq!(t.coeff(2), ri(6));
        assert!(t.log_coeff().is_zero());
    }

    #[test]
    fn laurent_division_precision() {
        let a = RatSeries::from_ints(Var::T, 0, &[1, 1, 1, 1], 3);
        let b = RatSeries::from_ints(Var::T, 1, &[1, 1, 1], 3);
        let d = &a / &b;
        assert_eq!(d.valuation(), Some(-1));
        assert_eq!(d.order(), 1);
        assert_eq!(d.coeff_range(-1, 1), vec![ri(1), ri(0), ri(0)]);
    }

    #[test]
    fn variable_mismatch_is_error() {
        let a = q(3);
        let b = RatSeries::var_series(Var::BigQ, 3);
        assert!(matches!(a.checked_add(&b), Err(Error::VariableMismatch { .. })));
    }

    #[test]
    fn compose_with_log_outer() {
        // log v composed with v(1+v) gives log v + log(1+v).
        let outer = RatSeries::zero(Var::T, 5).with_log(ri(1));
        let inner = RatSeries::from_ints(Var::S, 1, &[1, 1], 5);
        let c = outer.compose(&inner).unwrap();
        assert_eq!(*c.log_coeff(), ri(1));
        assert_eq!(c.coeff(1), ri(1));
        assert_eq!(c.coeff(2), rq(-1, 2));
        assert_eq!(c.coeff(3), rq(1, 3));
    }

    #[test]
    fn substitute_power_spreads() {
        let f = RatSeries::from_ints(Var::T, 0, &[1, 2], 2);
        let g = f.substitute_power(3);
        assert_eq!(g.order(), 8);
        assert_eq!(g.coeff(3), ri(2));
        assert_eq!(g.coeff(6), ri(0));
    }
}
