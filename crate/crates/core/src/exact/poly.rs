use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{pow_i, to_f64, Rational};
use crate::error::{domain, Error, Result};

/// Univariate polynomial with rational coefficients, `coeffs[j]` multiplying
/// `x^j`. Trailing zeros are always stripped, so the zero polynomial has no
/// coefficients and structural equality is polynomial equality.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct RationalPoly {
    coeffs: Vec<Rational>,
}

/// Numerator of `p((a + b x)/(c + d x))` after multiplying through by
/// `(c + d x)^cleared_power`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MobiusImage {
    pub numerator: RationalPoly,
    pub cleared_power: usize,
}

impl RationalPoly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::new(vec![c])
    }

    /// `c x^k`
    pub fn monomial(c: Rational, k: usize) -> Self {
        let mut coeffs = vec![Rational::zero(); k + 1];
        coeffs[k] = c;
        Self::new(coeffs)
    }

    /// The linear polynomial `a + b x`.
    pub fn linear(a: Rational, b: Rational) -> Self {
        Self::new(vec![a, b])
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| super::int(c)).collect())
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// Coefficient of `x^j`, zero beyond the degree.
    pub fn coeff(&self, j: usize) -> Rational {
        self.coeffs.get(j).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading_coeff(&self) -> Option<&Rational> {
        self.coeffs.last()
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    /// Horner evaluation with coefficients rounded to `f64`.
    pub fn eval_f64(&self, x: f64) -> f64 {
        self.coeffs.iter().rev().fold(0.0, |acc, c| acc * x + to_f64(c))
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(j, c)| c * Rational::from_integer(BigInt::from(j)))
                .collect(),
        )
    }

    /// Multiplies every coefficient by `c`.
    pub fn scale(&self, c: &Rational) -> Self {
        Self::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// `p(b x)`
    pub fn scale_arg(&self, b: &Rational) -> Self {
        let mut power = Rational::one();
        let mut out = Vec::with_capacity(self.coeffs.len());
        for c in &self.coeffs {
            out.push(c * &power);
            power *= b;
        }
        Self::new(out)
    }

    pub fn pow(&self, k: usize) -> Self {
        let mut acc = Self::one();
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Substitutes `x -> (a + b x)/(c + d x)` and clears the denominator
    /// `(c + d x)^deg`. The cleared factor is reported so callers can account
    /// for it; a zero polynomial clears nothing.
    pub fn mobius_substitute(&self, a: &Rational, b: &Rational, c: &Rational, d: &Rational) -> Result<MobiusImage> {
        if b.is_zero() && d.is_zero() {
            return domain("Mobius substitution needs b or d nonzero");
        }
        let Some(deg) = self.degree() else {
            return Ok(MobiusImage {
                numerator: Self::zero(),
                cleared_power: 0,
            });
        };
        let num = Self::linear(a.clone(), b.clone());
        let den = Self::linear(c.clone(), d.clone());
        let num_powers = powers(&num, deg);
        let den_powers = powers(&den, deg);
        let mut acc = Self::zero();
        for (j, pj) in self.coeffs.iter().enumerate() {
            if pj.is_zero() {
                continue;
            }
            let term = (&num_powers[j] * &den_powers[deg - j]).scale(pj);
            acc = &acc + &term;
        }
        Ok(MobiusImage {
            numerator: acc,
            cleared_power: deg,
        })
    }

    /// Euclidean division over the rationals: `self = q * divisor + r` with
    /// `deg r < deg divisor`.
    pub fn div_rem(&self, divisor: &Self) -> Result<(Self, Self)> {
        let Some(dd) = divisor.degree() else {
            return domain("polynomial division by zero");
        };
        let lead = divisor.coeffs[dd].clone();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![Rational::zero(); rem.len().saturating_sub(dd)];
        while rem.len() > dd {
            let top = rem.len() - 1;
            let q = &rem[top] / &lead;
            let shift = top - dd;
            if !q.is_zero() {
                for (i, c) in divisor.coeffs.iter().enumerate() {
                    rem[shift + i] -= &q * c;
                }
            }
            quot[shift] = q;
            rem.pop();
        }
        Ok((Self::new(quot), Self::new(rem)))
    }

    /// Monic greatest common divisor; zero only when both inputs are zero.
    pub fn gcd(&self, other: &Self) -> Self {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b).expect("nonzero divisor");
            a = b;
            b = r;
        }
        match a.leading_coeff().cloned() {
            Some(lc) => a.scale(&lc.recip()),
            None => a,
        }
    }

    /// Integer-coefficient multiple with content 1 and positive leading
    /// coefficient. Returns the polynomial and the positive-or-negative
    /// rational `s` with `primitive = s * self`.
    pub fn primitive_part(&self) -> (Self, Rational) {
        if self.is_zero() {
            return (Self::zero(), Rational::one());
        }
        let lcm_den = self.coeffs.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let gcd_num = self
            .coeffs
            .iter()
            .fold(BigInt::zero(), |acc, c| acc.gcd(&(c.numer() * (&lcm_den / c.denom()))));
        let mut s = Rational::new(lcm_den, gcd_num);
        if self.leading_coeff().is_some_and(Signed::is_negative) {
            s = -s;
        }
        (self.scale(&s), s)
    }

    /// Largest `k` such that `(x - root)^k` divides `self`, and the quotient.
    pub fn deflate(&self, root: &Rational) -> (usize, Self) {
        let factor = Self::linear(-root.clone(), Rational::one());
        let mut k = 0;
        let mut p = self.clone();
        while !p.is_zero() {
            let (q, r) = p.div_rem(&factor).expect("nonzero divisor");
            if !r.is_zero() {
                break;
            }
            p = q;
            k += 1;
        }
        (k, p)
    }
}

fn powers(p: &RationalPoly, max: usize) -> Vec<RationalPoly> {
    let mut out = Vec::with_capacity(max + 1);
    out.push(RationalPoly::one());
    for k in 1..=max {
        let next = &out[k - 1] * p;
        out.push(next);
    }
    out
}

impl fmt::Debug for RationalPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RationalPoly[")?;
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, "]")
    }
}

impl Add for &RationalPoly {
    type Output = RationalPoly;
    fn add(self, rhs: &RationalPoly) -> RationalPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        RationalPoly::new((0..n).map(|j| self.coeff(j) + rhs.coeff(j)).collect())
    }
}

impl Sub for &RationalPoly {
    type Output = RationalPoly;
    fn sub(self, rhs: &RationalPoly) -> RationalPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        RationalPoly::new((0..n).map(|j| self.coeff(j) - rhs.coeff(j)).collect())
    }
}

impl Mul for &RationalPoly {
    type Output = RationalPoly;
    fn mul(self, rhs: &RationalPoly) -> RationalPoly {
        if self.is_zero() || rhs.is_zero() {
            return RationalPoly::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        RationalPoly::new(out)
    }
}

impl Neg for &RationalPoly {
    type Output = RationalPoly;
    fn neg(self) -> RationalPoly {
        RationalPoly::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

macro_rules! owned_binop {
    ($tr:ident, $method:ident) => {
        impl $tr for RationalPoly {
            type Output = RationalPoly;
            fn $method(self, rhs: RationalPoly) -> RationalPoly {
                (&self).$method(&rhs)
            }
        }
    };
}

owned_binop!(Add, add);
owned_binop!(Sub, sub);
owned_binop!(Mul, mul);

/// Pseudo-remainder `lc(b)^(deg a - deg b + 1) * a mod b`.
fn pseudo_rem(a: &RationalPoly, b: &RationalPoly) -> RationalPoly {
    let da = a.degree().expect("nonzero");
    let db = b.degree().expect("nonzero");
    let lead = b.leading_coeff().expect("nonzero");
    let scaled = a.scale(&pow_i(lead, (da - db + 1) as i64));
    scaled.div_rem(b).expect("nonzero divisor").1
}

/// Resultant in the Sylvester-matrix convention, by the subresultant
/// polynomial remainder sequence.
pub fn resultant(p: &RationalPoly, q: &RationalPoly) -> Result<Rational> {
    if p.is_zero() || q.is_zero() {
        return Err(Error::UndefinedResultant("zero polynomial input"));
    }
    let (mut a, mut b) = (p.clone(), q.clone());
    let mut sign = Rational::one();
    let odd = |d: usize| d % 2 == 1;
    if a.degree() < b.degree() {
        if odd(a.degree().unwrap()) && odd(b.degree().unwrap()) {
            sign = -sign;
        }
        std::mem::swap(&mut a, &mut b);
    }
    let da = a.degree().unwrap();
    if b.degree() == Some(0) {
        return Ok(sign * pow_i(&b.coeffs[0], da as i64));
    }

    let mut g = Rational::one();
    let mut h = Rational::one();
    loop {
        let da = a.degree().unwrap();
        let db = b.degree().unwrap();
        let delta = (da - db) as i64;
        if odd(da) && odd(db) {
            sign = -sign;
        }
        let r = pseudo_rem(&a, &b);
        a = b;
        b = r.scale(&(&g * pow_i(&h, delta)).recip());
        g = a.leading_coeff().unwrap().clone();
        h = pow_i(&h, 1 - delta) * pow_i(&g, delta);
        match b.degree() {
            None => return Ok(Rational::zero()),
            Some(0) => break,
            Some(_) => {}
        }
    }
    let da = a.degree().unwrap() as i64;
    let h = pow_i(&h, 1 - da) * pow_i(&b.coeffs[0], da);
    Ok(sign * h)
}

/// `(-1)^(d(d-1)/2) * resultant(p, p') / lc(p)` for `d = deg p >= 1`.
pub fn discriminant(p: &RationalPoly) -> Result<Rational> {
    let d = match p.degree() {
        Some(d) if d >= 1 => d,
        _ => return domain("discriminant of a constant polynomial"),
    };
    let res = resultant(p, &p.derivative())?;
    let lc = p.leading_coeff().unwrap();
    let value = res / lc;
    Ok(if (d * (d - 1) / 2) % 2 == 1 { -value } else { value })
}
