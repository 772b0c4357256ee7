//! Exact rational arithmetic and univariate polynomial algebra.
//!
//! Every identity that holds exactly is checked here with `BigRational`
//! values, so an equality test is a comparison of canonical reduced fractions
//! and "zero" means zero.

mod poly;

pub use poly::{discriminant, resultant, MobiusImage, RationalPoly};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{domain, Result};

/// Arbitrary-precision rational, always reduced with a positive denominator.
pub type Rational = BigRational;

/// The rational `num/den`. Panics on a zero denominator.
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// `r^k` for a signed exponent. Panics when `r` is zero and `k < 0`.
pub fn pow_i(r: &Rational, k: i64) -> Rational {
    if k >= 0 {
        num_traits::pow(r.clone(), k as usize)
    } else {
        num_traits::pow(r.recip(), k.unsigned_abs() as usize)
    }
}

/// Nearest `f64`; saturates to infinity for values beyond the double range.
pub fn to_f64(r: &Rational) -> f64 {
    r.to_f64().unwrap_or_else(|| {
        if r.is_negative() {
            f64::NEG_INFINITY
        } else {
            f64::INFINITY
        }
    })
}

/// Parses `"p/q"`, an integer, or a terminating decimal such as `"-2.25"`.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || crate::error::Error::Domain(format!("cannot parse rational from {s:?}"));
    if let Some((p, q)) = s.split_once('/') {
        let p: BigInt = p.trim().parse().map_err(|_| bad())?;
        let q: BigInt = q.trim().parse().map_err(|_| bad())?;
        if q.is_zero() {
            return domain(format!("zero denominator in {s:?}"));
        }
        return Ok(Rational::new(p, q));
    }
    if let Some((whole, frac)) = s.split_once('.') {
        if frac.is_empty() || !frac.chars().all(|c| c.is_ascii_digit()) {
            return Err(bad());
        }
        let negative = whole.starts_with('-');
        let whole_val: BigInt = match whole.trim_start_matches(['-', '+']) {
            "" => BigInt::zero(),
            w => w.parse().map_err(|_| bad())?,
        };
        let frac_val: BigInt = frac.parse().map_err(|_| bad())?;
        let scale = num_traits::pow(BigInt::from(10), frac.len());
        let magnitude = Rational::new(whole_val * &scale + frac_val, scale);
        return Ok(if negative { -magnitude } else { magnitude });
    }
    let n: BigInt = s.parse().map_err(|_| bad())?;
    Ok(Rational::from_integer(n))
}

/// Rising factorial `(a)_n = a (a+1) ... (a+n-1)`, with `(a)_0 = 1`.
pub fn pochhammer(a: &Rational, n: usize) -> Rational {
    let (p, q) = (a.numer(), a.denom());
    let mut num = BigInt::one();
    let mut term = p.clone();
    for _ in 0..n {
        num *= &term;
        term += q;
    }
    Rational::new(num, num_traits::pow(q.clone(), n))
}

/// Rising factorial extended to index `-1` by `(a)_{-1} = 1/(a-1)`.
///
/// Only the closed-form cross-term sum needs the negative index, where it
/// appears as `(alpha+2)_{-1}` whenever one of the two degrees is zero.
pub(crate) fn pochhammer_ext(a: &Rational, n: i64) -> Result<Rational> {
    match n {
        n if n >= 0 => Ok(pochhammer(a, n as usize)),
        -1 => {
            let d = a - Rational::one();
            if d.is_zero() {
                domain("(1)_{-1} is undefined")
            } else {
                Ok(d.recip())
            }
        }
        _ => domain(format!("pochhammer index {n} below -1")),
    }
}

pub fn factorial(n: usize) -> Rational {
    pochhammer(&Rational::one(), n)
}

/// True when `r` is the square of a rational number.
pub fn is_rational_square(r: &Rational) -> bool {
    if r.is_negative() {
        return false;
    }
    let is_sq = |n: &BigInt| {
        let s = n.sqrt();
        &s * &s == *n
    };
    is_sq(r.numer()) && is_sq(r.denom())
}

/// Positive power `base^exponent` kept symbolic until reported.
///
/// The exponents that arise (`alpha + 2` and friends) are rational but in
/// general not integral, so the value is irrational; exact pipelines carry the
/// pair and only collapse it when a floating value is requested.
#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize)]
pub struct ScaleFactor {
    #[serde(serialize_with = "crate::report::ser_rational")]
    pub base: Rational,
    #[serde(serialize_with = "crate::report::ser_rational")]
    pub exponent: Rational,
}

impl ScaleFactor {
    pub fn new(base: Rational, exponent: Rational) -> Result<Self> {
        if !base.is_positive() {
            return domain(format!("scale factor base {base} must be positive"));
        }
        Ok(Self { base, exponent })
    }

    pub fn one() -> Self {
        Self {
            base: Rational::one(),
            exponent: Rational::zero(),
        }
    }

    pub fn ln(&self) -> f64 {
        to_f64(&self.exponent) * ln_rational(&self.base)
    }

    pub fn to_f64(&self) -> f64 {
        self.ln().exp()
    }

    /// Exact value when the exponent is an integer.
    pub fn exact(&self) -> Option<Rational> {
        if self.exponent.is_integer() {
            let k = self.exponent.to_integer().to_i64()?;
            Some(pow_i(&self.base, k))
        } else {
            None
        }
    }
}

/// Natural log of a positive rational that may be far outside the `f64` range.
pub fn ln_rational(r: &Rational) -> f64 {
    ln_bigint(r.numer()) - ln_bigint(r.denom())
}

fn ln_bigint(n: &BigInt) -> f64 {
    let bits = n.bits();
    if bits < 1000 {
        return n.to_f64().map(f64::ln).unwrap_or(f64::NAN);
    }
    let shift = bits - 900;
    let top: BigInt = n >> shift;
    top.to_f64().map(f64::ln).unwrap_or(f64::NAN) + shift as f64 * std::f64::consts::LN_2
}
