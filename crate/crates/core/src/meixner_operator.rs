//! The second-order difference operator
//!
//! `D f(x) = (x+alpha+3)/(x+2) f(x+1) + ((alpha+1)/(x+1) - 2) f(x) + f(x-1)`
//!
//! on functions of `x = -1, 0, 1, ...` with `f(-1) = 0`. It is symmetric for
//! the weight `(alpha+2)_{x+1}/(x+1)!` and has the `h_n^alpha` as
//! eigenfunctions; the solutions of `D f = -lambda f` form a one-parameter
//! family whose `lambda = 0` member is the pointwise limit of `h_n^alpha`.

use std::fmt::Debug;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use crate::error::{domain, Error, Result};
use crate::exact::{int, pow_i, to_f64, Rational};
use crate::meixner_basis::{u_param, HFunction};

/// Values the operator can act on exactly (`Rational`) or approximately
/// (`f64`).
pub trait Scalar:
    Clone
    + Debug
    + PartialEq
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    fn zero() -> Self;
    fn from_rational(r: &Rational) -> Self;
    fn magnitude(&self) -> Self;
}

impl Scalar for Rational {
    fn zero() -> Self {
        Zero::zero()
    }

    fn from_rational(r: &Rational) -> Self {
        r.clone()
    }

    fn magnitude(&self) -> Self {
        self.abs()
    }
}

impl Scalar for f64 {
    fn zero() -> Self {
        0.0
    }

    fn from_rational(r: &Rational) -> Self {
        to_f64(r)
    }

    fn magnitude(&self) -> Self {
        self.abs()
    }
}

/// `f(0), ..., f(xmax)` with `f(-1) = 0`. A compactly supported function is
/// also zero beyond `xmax`; otherwise values there are unknown.
#[derive(Debug, Clone, PartialEq)]
pub struct DiscreteFunction<T> {
    values: Vec<T>,
    compact: bool,
}

impl<T: Scalar> DiscreteFunction<T> {
    pub fn new(values: Vec<T>) -> Self {
        Self { values, compact: false }
    }

    pub fn compact(values: Vec<T>) -> Self {
        Self { values, compact: true }
    }

    pub fn from_fn(xmax: usize, f: impl Fn(usize) -> T) -> Self {
        Self::new((0..=xmax).map(f).collect())
    }

    pub fn values(&self) -> &[T] {
        &self.values
    }

    /// Largest `x` with a stored value; `None` when empty.
    pub fn xmax(&self) -> Option<usize> {
        self.values.len().checked_sub(1)
    }

    pub fn is_compact(&self) -> bool {
        self.compact
    }

    pub fn get(&self, x: i64) -> Option<T> {
        match x {
            -1 => Some(T::zero()),
            x if x < -1 => None,
            x => match self.values.get(x as usize) {
                Some(v) => Some(v.clone()),
                None if self.compact => Some(T::zero()),
                None => None,
            },
        }
    }
}

fn at<T: Scalar>(f: &DiscreteFunction<T>, x: i64) -> Result<T> {
    f.get(x)
        .ok_or_else(|| Error::Domain(format!("function is not defined at x = {x}")))
}

fn operator_coefficients<T: Scalar>(alpha: &Rational, x: usize) -> (T, T) {
    let xr = int(x as i64);
    let up = (&xr + alpha + int(3)) / (&xr + int(2));
    let mid = (alpha + int(1)) / (&xr + int(1)) - int(2);
    (T::from_rational(&up), T::from_rational(&mid))
}

pub fn apply_d<T: Scalar>(f: &DiscreteFunction<T>, alpha: &Rational, x: i64) -> Result<T> {
    if x < 0 {
        return domain(format!("the operator acts at x >= 0, got {x}"));
    }
    let (up, mid) = operator_coefficients::<T>(alpha, x as usize);
    Ok(up * at(f, x + 1)? + mid * at(f, x)? + at(f, x - 1)?)
}

/// `D f` at every `x` where it is determined: up to `xmax - 1`, or `xmax + 1`
/// for a compactly supported `f`.
pub fn apply_d_all<T: Scalar>(f: &DiscreteFunction<T>, alpha: &Rational) -> Result<DiscreteFunction<T>> {
    let len = f.values.len();
    let top = if f.compact { len + 1 } else { len.saturating_sub(1) };
    let values = (0..top as i64)
        .map(|x| apply_d(f, alpha, x))
        .collect::<Result<Vec<_>>>()?;
    Ok(if f.compact {
        DiscreteFunction::compact(values)
    } else {
        DiscreteFunction::new(values)
    })
}

/// `D f(x)` minus its regrouping as a second difference, a first difference
/// with coefficient `(alpha+1)/(x+2)`, and the potential
/// `(alpha+1)(1/(x+1) + 1/(x+2))`.
pub fn decomposition_residual<T: Scalar>(f: &DiscreteFunction<T>, alpha: &Rational, x: i64) -> Result<T> {
    let d = apply_d(f, alpha, x)?;
    let (fm, f0, fp) = (at(f, x - 1)?, at(f, x)?, at(f, x + 1)?);
    let xr = int(x);
    let a1 = alpha + int(1);
    let drift = T::from_rational(&(&a1 / (&xr + int(2))));
    let potential = T::from_rational(&(&a1 * ((&xr + int(1)).recip() + (&xr + int(2)).recip())));
    let two = T::from_rational(&int(2));
    let regrouped = (fp.clone() - two * f0.clone() + fm) + drift * (fp - f0.clone()) + potential * f0;
    Ok(d - regrouped)
}

/// `(alpha+2)_{x+1} / (x+1)!`, built by the ratio `(alpha+x+2)/(x+1)`.
pub fn operator_weights(alpha: &Rational, xmax: usize) -> Vec<Rational> {
    let mut w = Vec::with_capacity(xmax + 1);
    let mut cur = alpha + int(2);
    for x in 0..=xmax {
        if x > 0 {
            cur = cur * (alpha + int(x as i64 + 2)) / int(x as i64 + 1);
        }
        w.push(cur.clone());
    }
    w
}

fn weighted_inner<T: Scalar>(a: &DiscreteFunction<T>, b: &DiscreteFunction<T>, w: &[Rational]) -> Result<T> {
    let mut acc = T::zero();
    for (x, wx) in w.iter().enumerate() {
        acc = acc + T::from_rational(wx) * at(a, x as i64)? * at(b, x as i64)?;
    }
    Ok(acc)
}

/// `|<D f1, f2> - <f1, D f2>|` for compactly supported `f1, f2`.
pub fn symmetry_residual<T: Scalar>(f1: &DiscreteFunction<T>, f2: &DiscreteFunction<T>, alpha: &Rational) -> Result<T> {
    if !f1.compact || !f2.compact {
        return domain("symmetry is checked for compactly supported functions");
    }
    let top = f1.values.len().max(f2.values.len()) + 1;
    let w = operator_weights(alpha, top);
    let (d1, d2) = (apply_d_all(f1, alpha)?, apply_d_all(f2, alpha)?);
    Ok((weighted_inner(&d1, f2, &w)? - weighted_inner(f1, &d2, &w)?).magnitude())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EigenCheck {
    /// `(u_n - 1)^2 / u_n`
    pub eigenvalue: Rational,
    /// `(alpha+1)^2 / (n(alpha+n+1))`
    pub closed: Rational,
    /// `max_x |D h_{n-1}(x) - eigenvalue h_{n-1}(x)|` over `0..=xmax`.
    pub residual: Rational,
}

impl EigenCheck {
    pub fn passes(&self) -> bool {
        self.eigenvalue == self.closed && self.residual.is_zero()
    }
}

pub fn eigen_residual(n: usize, alpha: &Rational, xmax: usize) -> Result<EigenCheck> {
    if n == 0 {
        return domain("the eigenfamily is indexed from n = 1");
    }
    if alpha.is_negative() {
        return domain(format!("alpha = {alpha} must be nonnegative"));
    }
    let u = u_param(n, alpha);
    let eigenvalue = (&u - int(1)) * (&u - int(1)) / &u;
    let closed = (alpha + int(1)) * (alpha + int(1)) / (int(n as i64) * (alpha + int(n as i64 + 1)));
    let h = HFunction::new(alpha.clone(), n - 1)?;
    let f = DiscreteFunction::new(
        (0..=xmax as i64 + 1)
            .map(|x| h.eval_exact(x))
            .collect::<Result<Vec<_>>>()?,
    );
    let mut residual = <Rational as Zero>::zero();
    for x in 0..=xmax as i64 {
        let r = apply_d(&f, alpha, x)? - &eigenvalue * at(&f, x)?;
        residual = Ord::max(residual, r.abs());
    }
    Ok(EigenCheck {
        eigenvalue,
        closed,
        residual,
    })
}

/// The solution of `D f = -lambda f` with `f(-1) = 0`, `f(0) = 1`, by forward
/// recurrence.
pub fn solve_difference<T: Scalar>(lambda: &T, alpha: &Rational, xmax: usize) -> DiscreteFunction<T> {
    let mut values = Vec::with_capacity(xmax + 1);
    let mut prev = T::zero();
    let mut cur = T::from_rational(&int(1));
    values.push(cur.clone());
    for x in 0..xmax {
        let (up, mid) = operator_coefficients::<T>(alpha, x);
        let next = (-(lambda.clone() * cur.clone()) - mid * cur.clone() - prev) / up;
        values.push(next.clone());
        prev = cur;
        cur = next;
    }
    DiscreteFunction::new(values)
}

/// The spectral parametrization `u = (1+g)/(alpha+2+g)`,
/// `lambda = -(alpha+1)^2/((g+1)(alpha+g+2))`; `g = n` gives `h_n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpectralSolution {
    pub gamma: Rational,
    pub alpha: Rational,
    pub u: Rational,
    pub lambda: Rational,
}

impl SpectralSolution {
    pub fn new(gamma: Rational, alpha: Rational) -> Result<Self> {
        if alpha.is_negative() {
            return domain(format!("alpha = {alpha} must be nonnegative"));
        }
        if gamma <= int(-1) {
            return domain(format!("spectral parameter {gamma} must exceed -1"));
        }
        let u = (&gamma + int(1)) / (&alpha + int(2) + &gamma);
        let lambda = -(&alpha + int(1)) * (&alpha + int(1)) / ((&gamma + int(1)) * (&alpha + &gamma + int(2)));
        Ok(Self {
            gamma,
            alpha,
            u,
            lambda,
        })
    }

    /// `u^2 - (2 - lambda) u + 1`, zero by construction.
    pub fn quadratic_residual(&self) -> Rational {
        &self.u * &self.u - (int(2) - &self.lambda) * &self.u + int(1)
    }

    /// `a_{j+1} / a_j = (u^2-1)(j-g) / (u^2 (j+1)(j+alpha+3))`
    fn ratio(&self, j: usize) -> Rational {
        let jr = int(j as i64);
        let u2 = &self.u * &self.u;
        (&u2 - int(1)) * (&jr - &self.gamma) / (&u2 * (&jr + int(1)) * (&jr + &self.alpha + int(3)))
    }

    /// `u^x (x+1) sum_j a_j (-x)_j`, which terminates at integer `x`.
    pub fn eval_exact(&self, x: usize) -> Rational {
        let mut a = Rational::one();
        let mut falling = Rational::one();
        let mut sum = Rational::one();
        for j in 0..x {
            a *= self.ratio(j);
            falling *= int(j as i64) - int(x as i64);
            sum += &a * &falling;
        }
        pow_i(&self.u, x as i64) * int(x as i64 + 1) * sum
    }

    pub fn series(&self, x: f64, tol: f64) -> Result<SeriesValue> {
        series_solution(self, x, tol)
    }
}

/// A possibly divergent series summed to the requested tolerance or, failing
/// that, up to its smallest term.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesValue {
    pub value: f64,
    pub terms: usize,
    pub tail_estimate: f64,
    pub converged: bool,
}

const MAX_SERIES_TERMS: usize = 10_000;

pub fn series_solution(s: &SpectralSolution, x: f64, tol: f64) -> Result<SeriesValue> {
    if !(tol > 0.0) {
        return domain(format!("tolerance {tol} must be positive"));
    }
    if x < -1.0 {
        return domain(format!("x = {x} is below -1"));
    }
    let u = to_f64(&s.u);
    let (g, a) = (to_f64(&s.gamma), to_f64(&s.alpha));
    let u2 = u * u;
    let front = u.powf(x) * (x + 1.0);
    let mut term = 1.0;
    let mut sum = 1.0;
    let mut smallest = f64::INFINITY;
    let mut best = (sum, 1usize);
    for j in 0..MAX_SERIES_TERMS {
        let jf = j as f64;
        let ratio = (u2 - 1.0) * (jf - g) * (jf - x) / (u2 * (jf + 1.0) * (jf + a + 3.0));
        term *= ratio;
        if term == 0.0 {
            return Ok(SeriesValue {
                value: front * sum,
                terms: j + 1,
                tail_estimate: 0.0,
                converged: true,
            });
        }
        if term.abs() < smallest {
            smallest = term.abs();
            best = (sum, j + 1);
        } else if ratio.abs() >= 1.0 && jf > x.abs() + g.abs() + 1.0 {
            // terms grow from here on: stop at the smallest one
            return Ok(SeriesValue {
                value: front * best.0,
                terms: best.1,
                tail_estimate: (front * smallest).abs(),
                converged: false,
            });
        }
        sum += term;
        let r = ratio.abs();
        if r < 1.0 && term.abs() * r / (1.0 - r) < tol * sum.abs() {
            return Ok(SeriesValue {
                value: front * sum,
                terms: j + 2,
                tail_estimate: (front * term * r / (1.0 - r)).abs(),
                converged: true,
            });
        }
    }
    Err(Error::NoConvergence(MAX_SERIES_TERMS))
}

/// Exact `h_inf^alpha(x) = (x+1) sum_j (-x)_j/(alpha+3)_j (2(alpha+1))^j/j!` at
/// an integer `x >= -1`.
pub fn h_infinity_exact(alpha: &Rational, x: i64) -> Result<Rational> {
    if alpha.is_negative() {
        return domain(format!("alpha = {alpha} must be nonnegative"));
    }
    if x < -1 {
        return domain(format!("x = {x} is below -1"));
    }
    let two_a1 = int(2) * (alpha + int(1));
    let mut term = Rational::one();
    let mut sum = Rational::one();
    for j in 0..x.max(0) {
        term = term * (int(j) - int(x)) * &two_a1 / ((alpha + int(j + 3)) * int(j + 1));
        sum += &term;
    }
    Ok(int(x + 1) * sum)
}

/// `h_inf^alpha(x)` for real `x`; stops once a term is below `tol` relative
/// to the partial sum and the terms are shrinking.
pub fn h_infinity_eval(alpha: &Rational, x: f64, tol: f64) -> Result<f64> {
    if alpha.is_negative() {
        return domain(format!("alpha = {alpha} must be nonnegative"));
    }
    if !(tol > 0.0) {
        return domain(format!("tolerance {tol} must be positive"));
    }
    let a = to_f64(alpha);
    let c = 2.0 * (a + 1.0);
    let mut term = 1.0;
    let mut sum = 1.0;
    for j in 0..MAX_SERIES_TERMS {
        let jf = j as f64;
        let ratio = (jf - x) * c / ((jf + a + 3.0) * (jf + 1.0));
        term *= ratio;
        sum += term;
        if term == 0.0 || (term.abs() < tol * sum.abs() && ratio.abs() < 1.0) {
            return Ok((x + 1.0) * sum);
        }
    }
    Err(Error::NoConvergence(MAX_SERIES_TERMS))
}

#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
pub struct LimitRow {
    pub n: usize,
    pub value: f64,
    pub error: f64,
}

#[derive(Debug, Clone, PartialEq, serde::Serialize)]
pub struct LimitStudy {
    pub x: f64,
    pub limit: f64,
    pub rows: Vec<LimitRow>,
}

impl LimitStudy {
    /// Errors never increase along the supplied degrees.
    pub fn monotone(&self) -> bool {
        self.rows.windows(2).all(|w| w[1].error <= w[0].error)
    }

    /// Errors strictly decrease along the supplied degrees.
    pub fn strictly_decreasing(&self) -> bool {
        self.rows.windows(2).all(|w| w[1].error < w[0].error)
    }

    pub fn final_error(&self) -> f64 {
        self.rows.last().map_or(0.0, |r| r.error)
    }
}

/// `|h_n^alpha(x) - h_inf^alpha(x)|` for each `n` in `ns`.
pub fn limit_study(alpha: &Rational, x: f64, ns: &[usize], tol: f64) -> Result<LimitStudy> {
    if ns.windows(2).any(|w| w[1] <= w[0]) {
        return domain("degrees must be strictly increasing");
    }
    let limit = h_infinity_eval(alpha, x, tol)?;
    let rows = ns
        .iter()
        .map(|&n| {
            let value = HFunction::new(alpha.clone(), n)?.eval(x);
            Ok(LimitRow {
                n,
                value,
                error: (value - limit).abs(),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(LimitStudy { x, limit, rows })
}

/// Default spacing of the zero scan grid on `(-1, xmax]`.
pub const ZERO_SCAN_STEP: f64 = 0.05;
/// Default right end of the zero scan.
pub const ZERO_SCAN_XMAX: f64 = 30.0;
/// Bracket width at which bisection stops.
pub const ZERO_TOL: f64 = 1e-10;

/// The first `k` zeros of `f` on `(-1, xmax]`, located by sign changes on a
/// grid of spacing `step` and refined by bisection. A grid point where `f` is
/// exactly zero counts as a zero.
pub fn first_zeros(f: impl Fn(f64) -> f64, k: usize, xmax: f64, step: f64) -> Result<Vec<f64>> {
    if !(step > 0.0) || !(xmax > -1.0) {
        return domain("zero scan needs step > 0 and xmax > -1");
    }
    let mut zeros = Vec::with_capacity(k);
    let mut i = 1usize;
    let mut left = (-1.0 + step, f(-1.0 + step));
    if left.1 == 0.0 {
        zeros.push(left.0);
    }
    while zeros.len() < k {
        i += 1;
        let x = -1.0 + step * i as f64;
        if x > xmax + 1e-12 {
            break;
        }
        let right = (x, f(x));
        if right.1 == 0.0 {
            zeros.push(x);
        } else if left.1 != 0.0 && (left.1 < 0.0) != (right.1 < 0.0) {
            zeros.push(bisect(&f, left, right));
        }
        left = right;
    }
    if zeros.len() < k {
        return Err(Error::InsufficientZeros {
            found: zeros.len(),
            requested: k,
            xmax,
        });
    }
    Ok(zeros)
}

fn bisect(f: &impl Fn(f64) -> f64, mut lo: (f64, f64), mut hi: (f64, f64)) -> f64 {
    while hi.0 - lo.0 > ZERO_TOL {
        let mid = 0.5 * (lo.0 + hi.0);
        let fm = f(mid);
        if fm == 0.0 {
            return mid;
        }
        if (fm < 0.0) == (lo.1 < 0.0) {
            lo = (mid, fm);
        } else {
            hi = (mid, fm);
        }
    }
    0.5 * (lo.0 + hi.0)
}
