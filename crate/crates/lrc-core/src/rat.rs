//! Rational helpers shared by every module.

use alloc::vec::Vec;
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Rat = BigRational;

pub fn ri(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

pub fn rq(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

/// Parses `"p"` or `"p/q"`.
pub fn parse_rat(s: &str) -> Result<Rat> {
    let s = s.trim();
    let bad = || Error::InvalidInput(alloc::format!("not a rational number: {s:?}"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(Rat::new(n, d))
        }
        None => Ok(Rat::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

pub fn binomial(n: i64, k: i64) -> BigInt {
    if k < 0 || n < 0 || k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

pub fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |a, k| a * BigInt::from(k))
}

/// Bernoulli numbers `B_0..=B_n` with `B_1 = -1/2`.
pub fn bernoulli_table(n: usize) -> Vec<Rat> {
    let mut b: Vec<Rat> = Vec::with_capacity(n + 1);
    b.push(Rat::one());
    for m in 1..=n {
        let mut s = Rat::zero();
        for (j, bj) in b.iter().enumerate() {
            s += Rat::from_integer(binomial(m as i64 + 1, j as i64)) * bj;
        }
        b.push(-s / ri(m as i64 + 1));
    }
    b
}

/// `x^k` for a possibly negative exponent.
pub fn rpow(x: &Rat, k: i64) -> Rat {
    if k >= 0 {
        num_traits::pow(x.clone(), k as usize)
    } else {
        num_traits::pow(x.recip(), (-k) as usize)
    }
}

/// `sum_{d | n} d^k` for `n >= 1`.
pub fn divisor_sigma(n: u64, k: u32) -> BigInt {
    let mut s = BigInt::zero();
    let mut d = 1;
    while d * d <= n {
        if n % d == 0 {
            s += BigInt::from(d).pow(k);
            let e = n / d;
            if e != d {
                s += BigInt::from(e).pow(k);
            }
        }
        d += 1;
    }
    s
}

pub fn is_integer(x: &Rat) -> bool {
    x.denom().is_one()
}

/// Reduced numerator/denominator pair as decimal strings, denominator positive.
pub fn num_den_strings(x: &Rat) -> (alloc::string::String, alloc::string::String) {
    use alloc::string::ToString;
    (x.numer().to_string(), x.denom().to_string())
}

pub fn gcd_big(a: &BigInt, b: &BigInt) -> BigInt {
    a.abs().gcd(&b.abs())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bernoulli_values() {
        let b = bernoulli_table(12);
        assert_eq!(b[1], rq(-1, 2));
        assert_eq!(b[2], rq(1, 6));
        assert_eq!(b[4], rq(-1, 30));
        assert_eq!(b[6], rq(1, 42));
        assert_eq!(b[12], rq(-691, 2730));
        assert!(b[7].is_zero());
    }

    #[test]
    fn sigma_and_binomial() {
        assert_eq!(divisor_sigma(12, 1), BigInt::from(28));
        assert_eq!(divisor_sigma(6, 3), BigInt::from(1 + 8 + 27 + 216));
        assert_eq!(binomial(7, 3), BigInt::from(35));
        assert_eq!(parse_rat("-12/8").unwrap(), rq(-3, 2));
        assert!(parse_rat("1/0").is_err());
    }
}
