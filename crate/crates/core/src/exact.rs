//! Exact comparisons between products of rational powers of integers.
//!
//! Every threshold in the reductions has the shape `coeff * n^c * B^d` with
//! rational `c, d`. Raising both sides of a comparison to the common
//! denominator of all exponents turns it into a comparison of big integers,
//! so no floating point value ever decides a branch.

use std::cmp::Ordering;

use num::bigint::{BigInt, BigUint, Sign};
use num::integer::Integer;
use num::rational::Ratio;
use num::traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Rational = Ratio<i64>;

/// Largest common exponent denominator accepted by the exact comparisons.
pub const MAX_EXPONENT_DENOMINATOR: i64 = 256;

/// `coeff * prod(base_i ^ exp_i)` with nonnegative rational exponents.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PowerProduct {
    coeff: BigUint,
    factors: Vec<(BigUint, Rational)>,
}

impl PowerProduct {
    pub fn integer(value: impl Into<BigUint>) -> Self {
        PowerProduct {
            coeff: value.into(),
            factors: Vec::new(),
        }
    }

    pub fn one() -> Self {
        Self::integer(1u32)
    }

    /// Multiplies by `base^exp`. Panics on a negative exponent.
    pub fn times_power(mut self, base: impl Into<BigUint>, exp: Rational) -> Self {
        assert!(exp >= Rational::zero(), "negative exponent {exp}");
        if !exp.is_zero() {
            self.factors.push((base.into(), exp));
        }
        self
    }

    pub fn scaled(mut self, by: impl Into<BigUint>) -> Self {
        self.coeff *= by.into();
        self
    }

    /// Raises every exponent (and the coefficient) to the integer power `e`.
    pub fn powi(&self, e: u32) -> Self {
        PowerProduct {
            coeff: self.coeff.pow(e),
            factors: self
                .factors
                .iter()
                .map(|(b, x)| (b.clone(), *x * Rational::from_integer(e as i64)))
                .collect(),
        }
    }

    fn denominator(&self) -> i64 {
        self.factors
            .iter()
            .fold(1i64, |acc, (_, e)| acc.lcm(e.denom()))
    }

    fn raised(&self, q: i64) -> BigUint {
        let mut out = self.coeff.pow(q as u32);
        for (base, exp) in &self.factors {
            let power = exp * Rational::from_integer(q);
            debug_assert!(power.is_integer());
            out *= base.pow(power.to_integer() as u32);
        }
        out
    }

    /// Exact ordering of `self` against `other`.
    pub fn try_cmp(&self, other: &PowerProduct) -> Result<Ordering> {
        let q = self.denominator().lcm(&other.denominator());
        if q > MAX_EXPONENT_DENOMINATOR {
            return Err(Error::Overflow(format!(
                "common exponent denominator {q} exceeds {MAX_EXPONENT_DENOMINATOR}"
            )));
        }
        Ok(self.raised(q).cmp(&other.raised(q)))
    }

    /// Exact ordering of the integer `lhs` against `self`.
    pub fn cmp_integer(&self, lhs: &BigInt) -> Result<Ordering> {
        match lhs.sign() {
            Sign::Minus => Ok(Ordering::Less),
            _ => PowerProduct::integer(lhs.magnitude().clone()).try_cmp(self),
        }
    }

    pub fn to_f64(&self) -> f64 {
        let direct = self.factors.iter().fold(
            self.coeff.to_f64().unwrap_or(f64::INFINITY),
            |acc, (b, e)| {
                acc * b
                    .to_f64()
                    .unwrap_or(f64::INFINITY)
                    .powf(e.to_f64().unwrap_or(f64::NAN))
            },
        );
        if direct.is_finite() && direct > 0.0 {
            return direct;
        }
        let mut log = ln_big(&self.coeff);
        for (base, exp) in &self.factors {
            log += ln_big(base) * exp.to_f64().unwrap_or(f64::NAN);
        }
        log.exp()
    }
}

fn ln_big(v: &BigUint) -> f64 {
    if v.is_zero() {
        return f64::NEG_INFINITY;
    }
    match v.to_f64() {
        Some(x) if x.is_finite() => x.ln(),
        _ => {
            // Keep the top 64 bits.
            let shift = v.bits().saturating_sub(64);
            let top = (v >> shift).to_f64().unwrap_or(f64::INFINITY);
            top.ln() + shift as f64 * std::f64::consts::LN_2
        }
    }
}

/// Smallest `x >= 0` with `pred(x)`, for a monotone predicate, searching
/// outward from a floating point estimate.
pub fn smallest_satisfying<F>(estimate: f64, mut pred: F) -> Result<BigUint>
where
    F: FnMut(&BigUint) -> Result<bool>,
{
    if !estimate.is_finite() {
        return Err(Error::Overflow(format!(
            "estimate {estimate} is not finite"
        )));
    }
    let zero = BigUint::zero();
    if pred(&zero)? {
        return Ok(zero);
    }
    let centre = BigUint::from_f64_floor(estimate.max(0.0));
    let mut width = BigUint::from_f64_floor(estimate.abs() * 1e-9) + 4u32;

    // Invariant after bracketing: pred(lo) is false, pred(hi) is true.
    let mut lo = if centre > width {
        &centre - &width
    } else {
        zero.clone()
    };
    while !lo.is_zero() && pred(&lo)? {
        width <<= 1;
        lo = if centre > width {
            &centre - &width
        } else {
            zero.clone()
        };
    }
    let mut hi = &centre + &width;
    while !pred(&hi)? {
        width <<= 1;
        hi = &centre + &width;
    }
    while &hi - &lo > BigUint::one() {
        let mid = (&lo + &hi) >> 1;
        if pred(&mid)? {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(hi)
}

trait FromF64Floor {
    fn from_f64_floor(x: f64) -> Self;
}

impl FromF64Floor for BigUint {
    fn from_f64_floor(x: f64) -> Self {
        num::FromPrimitive::from_f64(x.floor()).unwrap_or_default()
    }
}

/// Parses `"3"`, `"1/4"` or `"0.25"` into an exact rational.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let text = text.trim();
    let bad = || Error::InvalidInput(format!("cannot parse rational {text:?}"));
    if let Some((num, den)) = text.split_once('/') {
        let num: i64 = num.trim().parse().map_err(|_| bad())?;
        let den: i64 = den.trim().parse().map_err(|_| bad())?;
        if den == 0 {
            return Err(bad());
        }
        return Ok(Rational::new(num, den));
    }
    if let Some((int, frac)) = text.split_once('.') {
        if frac.is_empty() || frac.len() > 12 || !frac.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        let negative = int.starts_with('-');
        let int: i64 = if int.is_empty() || int == "-" {
            0
        } else {
            int.parse().map_err(|_| bad())?
        };
        let den = 10i64.pow(frac.len() as u32);
        let frac: i64 = frac.parse().map_err(|_| bad())?;
        let mag = int.abs() * den + frac;
        return Ok(Rational::new(if negative { -mag } else { mag }, den));
    }
    text.parse::<i64>()
        .map(Rational::from_integer)
        .map_err(|_| bad())
}
