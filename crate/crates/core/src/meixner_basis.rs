//! Change of basis between the strange functions `phi_n` and the ordinary
//! `L_m^(alpha+1)(x/(alpha+1)) e^{-x/(2(alpha+1))}` basis.
//!
//! The transform entries are Meixner polynomials evaluated at integers, which
//! leads to the functions `h_n^alpha` and an orthogonality relation for them
//! with a weight that does not depend on `n`.

use num_traits::{Signed, Zero};

use crate::error::{domain, Result};
use crate::exact::{factorial, int, ln_rational, pochhammer, pochhammer_ext, pow_i, to_f64, Rational, ScaleFactor};
use crate::integrate::{gamma_moment, ln_gamma};
use crate::specfun::{hyp2f1_terminating, laguerre_coeffs, meixner_eval_f64, meixner_poly, LaguerreSpec, MeixnerSpec};

fn check_alpha(alpha: &Rational) -> Result<()> {
    if *alpha <= int(-1) {
        return domain(format!("alpha = {alpha} must exceed -1"));
    }
    Ok(())
}

/// `u_n = n/(alpha+n+1)`
pub fn u_param(n: usize, alpha: &Rational) -> Rational {
    int(n as i64) / (alpha + int(n as i64 + 1))
}

/// `h_n^alpha(x) = u^x (x+1) M_n(x; alpha+3, u^2)` with `u = u_{n+1}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HFunction {
    alpha: Rational,
    n: usize,
    u: Rational,
    meixner: MeixnerSpec,
}

impl HFunction {
    pub fn new(alpha: Rational, n: usize) -> Result<Self> {
        check_alpha(&alpha)?;
        let u = u_param(n + 1, &alpha);
        let meixner = MeixnerSpec::new(n, &alpha + int(3), &u * &u)?;
        Ok(Self { alpha, n, u, meixner })
    }

    pub fn alpha(&self) -> &Rational {
        &self.alpha
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn u(&self) -> &Rational {
        &self.u
    }

    pub fn meixner(&self) -> &MeixnerSpec {
        &self.meixner
    }

    /// Exact value at an integer `x >= -1`.
    pub fn eval_exact(&self, x: i64) -> Result<Rational> {
        if x < -1 {
            return domain(format!("h is evaluated exactly only for integers x >= -1, got {x}"));
        }
        if x == -1 {
            return Ok(Rational::zero());
        }
        let m = meixner_poly(&self.meixner).eval(&int(x));
        Ok(pow_i(&self.u, x) * int(x + 1) * m)
    }

    pub fn eval(&self, x: f64) -> f64 {
        h_eval(self, x)
    }
}

pub fn h_eval(h: &HFunction, x: f64) -> f64 {
    let u = to_f64(&h.u);
    let m = meixner_eval_f64(h.n, to_f64(&h.alpha) + 3.0, u * u, x);
    u.powf(x) * (x + 1.0) * m
}

/// Both evaluations of the overlap
/// `Gamma(alpha+2)^{-1} int L_n^(alpha+1)(beta x) L_m^(alpha+1)((2-beta)x) e^{-x} x^(alpha+1) dx`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Overlap {
    pub direct: Rational,
    /// `(1-beta)^(n+m) (-1)^m (alpha+2)_n (alpha+2)_m / (n! m!) M_n(m; alpha+2, (1-beta)^2)`
    pub closed: Rational,
}

impl Overlap {
    pub fn agree(&self) -> bool {
        self.direct == self.closed
    }
}

pub fn illustration_overlap(n: usize, m: usize, alpha: &Rational, beta: &Rational) -> Result<Overlap> {
    check_alpha(alpha)?;
    if !beta.is_positive() || *beta >= int(2) {
        return domain(format!("beta = {beta} must lie in (0, 2)"));
    }
    if *beta == int(1) {
        return domain("beta = 1 is the plain orthogonality relation");
    }
    let a1 = alpha + int(1);
    let ln = laguerre_coeffs(&LaguerreSpec::new(n, a1.clone())?).scale_arg(beta);
    let lm = laguerre_coeffs(&LaguerreSpec::new(m, a1.clone())?).scale_arg(&(int(2) - beta));
    let direct = gamma_moment(&(&ln * &lm), &a1)?.coefficient;

    let one_minus = int(1) - beta;
    let a2 = alpha + int(2);
    let spec = MeixnerSpec::new(n, a2.clone(), &one_minus * &one_minus)?;
    let sign = if m % 2 == 0 { int(1) } else { int(-1) };
    let closed = pow_i(&one_minus, (n + m) as i64) * sign * pochhammer(&a2, n) * pochhammer(&a2, m)
        / (factorial(n) * factorial(m))
        * meixner_poly(&spec).eval(&int(m as i64));
    Ok(Overlap { direct, closed })
}

/// `I(n, m) = prefactor * rational`, computed three ways.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TransformEntry {
    pub n: usize,
    pub m: usize,
    /// Gamma-moment reduction of the defining integral.
    pub direct: Rational,
    /// The `2F1` closed form.
    pub closed: Rational,
    /// Recomposed from `h_{n-1}(m-1)`; `None` for `n = 0`.
    pub from_h: Option<Rational>,
    /// `((alpha+1)(1+u_n))^(alpha+2)`
    pub prefactor: ScaleFactor,
}

impl TransformEntry {
    pub fn consistent(&self) -> bool {
        self.direct == self.closed && self.from_h.as_ref().is_none_or(|h| *h == self.closed)
    }

    pub fn to_f64(&self) -> f64 {
        scaled_f64(&self.closed, self.prefactor.ln())
    }
}

fn scaled_f64(r: &Rational, ln_scale: f64) -> f64 {
    if r.is_zero() {
        return 0.0;
    }
    let mag = (ln_rational(&r.abs()) + ln_scale).exp();
    if r.is_negative() {
        -mag
    } else {
        mag
    }
}

fn transform_prefactor(n: usize, alpha: &Rational) -> Result<ScaleFactor> {
    let base = (alpha + int(1)) * (int(1) + u_param(n, alpha));
    ScaleFactor::new(base, alpha + int(2))
}

/// Rational part of the closed form of `I(n, m)`.
pub fn transform_closed(n: usize, m: usize, alpha: &Rational) -> Result<Rational> {
    check_alpha(alpha)?;
    if n == 0 || m == 0 {
        return Ok(if n == m { int(1) } else { Rational::zero() });
    }
    let u = u_param(n, alpha);
    let sign = if (m - 1) % 2 == 0 { int(1) } else { int(-1) };
    let a3 = alpha + int(3);
    let front = pochhammer(&a3, m - 1) * pochhammer(&(alpha + int(2)), n - 1) / (factorial(m - 1) * factorial(n - 1))
        * sign
        * (int(1) - &u * &u)
        * pow_i(&u, (m + n) as i64 - 3);
    let z = int(1) - pow_i(&u, -2);
    Ok(front * hyp2f1_terminating(n - 1, &int(1 - m as i64), &a3, &z)?)
}

/// Sign and log-magnitude of [`transform_closed`], with the factors that grow
/// with `m` taken in floating point.
fn transform_closed_ln(n: usize, m: usize, alpha: &Rational) -> Result<(f64, f64)> {
    if n == 0 || m == 0 {
        return Ok(if n == m { (1.0, 0.0) } else { (0.0, 0.0) });
    }
    let u = u_param(n, alpha);
    let a = to_f64(alpha);
    let (nf, mf) = (n as f64, m as f64);
    let z = int(1) - pow_i(&u, -2);
    let hyper = hyp2f1_terminating(n - 1, &int(1 - m as i64), &(alpha + int(3)), &z)?;
    if hyper.is_zero() {
        return Ok((0.0, 0.0));
    }
    let exact = pochhammer(&(alpha + int(2)), n - 1) / factorial(n - 1) * (int(1) - &u * &u) * &hyper;
    let ln_mag = ln_rational(&exact.abs()) + ln_gamma(a + 2.0 + mf) - ln_gamma(a + 3.0) - ln_gamma(mf)
        + (mf + nf - 3.0) * ln_rational(&u);
    let sign = if (m - 1) % 2 == 0 { 1.0 } else { -1.0 } * if exact.is_negative() { -1.0 } else { 1.0 };
    Ok((sign, ln_mag))
}

fn transform_direct(n: usize, m: usize, alpha: &Rational) -> Result<Rational> {
    let beta = (alpha + int(1)) / (alpha + int(n as i64 + 1));
    let ln = laguerre_coeffs(&LaguerreSpec::new(n, alpha.clone())?).scale_arg(&beta);
    let lm = laguerre_coeffs(&LaguerreSpec::new(m, alpha + int(1))?).scale_arg(&(int(2) - &beta));
    Ok(gamma_moment(&(&ln * &lm), &(alpha + int(1)))?.coefficient)
}

fn transform_from_h(n: usize, m: usize, alpha: &Rational) -> Result<Rational> {
    if m == 0 {
        return Ok(Rational::zero());
    }
    let u = u_param(n, alpha);
    let h = HFunction::new(alpha.clone(), n - 1)?.eval_exact(m as i64 - 1)?;
    let sign = if (m - 1) % 2 == 0 { int(1) } else { int(-1) };
    Ok(
        pochhammer(&(alpha + int(3)), m - 1) * pochhammer(&(alpha + int(2)), n - 1) / (factorial(m) * factorial(n - 1))
            * sign
            * (int(1) - &u * &u)
            * pow_i(&u, n as i64 - 2)
            * h,
    )
}

pub fn transform_entry(n: usize, m: usize, alpha: &Rational) -> Result<TransformEntry> {
    check_alpha(alpha)?;
    Ok(TransformEntry {
        n,
        m,
        direct: transform_direct(n, m, alpha)?,
        closed: transform_closed(n, m, alpha)?,
        from_h: if n == 0 {
            None
        } else {
            Some(transform_from_h(n, m, alpha)?)
        },
        prefactor: transform_prefactor(n, alpha)?,
    })
}

/// `ln N_m` with `N_m = (alpha+1)^(alpha+2) (alpha+2)_m / m!`.
fn ln_column_norm(m: usize, alpha: &Rational) -> f64 {
    let a = to_f64(alpha);
    (a + 2.0) * (a + 1.0).ln() + ln_rational(&(pochhammer(&(alpha + int(2)), m) / factorial(m)))
}

pub fn column_norm(m: usize, alpha: &Rational) -> Result<f64> {
    check_alpha(alpha)?;
    Ok(ln_column_norm(m, alpha).exp())
}

/// `ln ||phi_n||^2` with `||phi_n||^2 = (alpha+2n+1)^(alpha+3) (alpha+2)_{n-1} / n!`.
fn ln_phi_norm_sq(n: usize, alpha: &Rational) -> Result<f64> {
    let a = to_f64(alpha);
    let ratio = pochhammer_ext(&(alpha + int(2)), n as i64 - 1)? / factorial(n);
    Ok((a + 3.0) * (a + 2.0 * n as f64 + 1.0).ln() + ln_rational(&ratio))
}

pub fn phi_norm_sq(n: usize, alpha: &Rational) -> Result<f64> {
    check_alpha(alpha)?;
    Ok(ln_phi_norm_sq(n, alpha)?.exp())
}

/// Truncated block `I(n,m) / (||phi_n|| N_m^(1/2))`, `0 <= n <= nmax`,
/// `0 <= m <= mmax`.
#[derive(Debug, Clone, PartialEq)]
pub struct TransformMatrix {
    pub alpha: Rational,
    pub nmax: usize,
    pub mmax: usize,
    /// Row-major normalized entries.
    pub entries: Vec<Vec<f64>>,
    /// `||phi_n||`
    pub row_norms: Vec<f64>,
    /// `N_m^(1/2)`
    pub column_norms: Vec<f64>,
}

impl TransformMatrix {
    pub fn gram(&self) -> Vec<Vec<f64>> {
        let rows = &self.entries;
        rows.iter()
            .map(|a| rows.iter().map(|b| a.iter().zip(b).map(|(x, y)| x * y).sum()).collect())
            .collect()
    }

    /// Largest `|G - Id|` entry of the row Gram matrix.
    pub fn gram_deviation(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for (i, row) in self.gram().iter().enumerate() {
            for (j, g) in row.iter().enumerate() {
                let target = if i == j { 1.0 } else { 0.0 };
                worst = worst.max((g - target).abs());
            }
        }
        worst
    }
}

pub fn orthogonal_block(alpha: &Rational, nmax: usize, mmax: usize) -> Result<TransformMatrix> {
    check_alpha(alpha)?;
    let mut entries = Vec::with_capacity(nmax + 1);
    let mut row_norms = Vec::with_capacity(nmax + 1);
    let ln_cols: Vec<f64> = (0..=mmax).map(|m| ln_column_norm(m, alpha)).collect();
    for n in 0..=nmax {
        let ln_row = 0.5 * ln_phi_norm_sq(n, alpha)?;
        row_norms.push(ln_row.exp());
        let pref = transform_prefactor(n, alpha)?.ln();
        let row = (0..=mmax)
            .map(|m| {
                let (sign, ln_mag) = transform_closed_ln(n, m, alpha)?;
                Ok(sign * (ln_mag + pref - ln_row - 0.5 * ln_cols[m]).exp())
            })
            .collect::<Result<Vec<_>>>()?;
        entries.push(row);
    }
    Ok(TransformMatrix {
        alpha: alpha.clone(),
        nmax,
        mmax,
        entries,
        row_norms,
        column_norms: ln_cols.iter().map(|l| (0.5 * l).exp()).collect(),
    })
}

/// A truncated infinite sum and the bound on what was left out.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TailSum {
    pub value: f64,
    pub terms: usize,
    pub tail_bound: f64,
}

const MAX_TERMS: usize = 1_000_000;

/// Sums `term(k)` for `k >= start` until the envelope tail bound falls below
/// `tol`. `envelope(k) >= |term(k)|` must be eventually geometric; once its
/// ratio `q` is below one and not increasing, the rest is at most
/// `envelope(k+1) / (1 - q)`.
pub(crate) fn sum_with_envelope(
    start: usize,
    tol: f64,
    term: impl Fn(usize) -> f64,
    envelope: impl Fn(usize) -> f64,
) -> Result<TailSum> {
    if !(tol > 0.0) {
        return domain(format!("tolerance {tol} must be positive"));
    }
    let mut value = 0.0;
    let mut comp = 0.0;
    for k in start..start + MAX_TERMS {
        let t = term(k) - comp;
        let next = value + t;
        comp = (next - value) - t;
        value = next;
        let (e0, e1, e2) = (envelope(k), envelope(k + 1), envelope(k + 2));
        if e1 == 0.0 {
            return Ok(TailSum {
                value,
                terms: k + 1 - start,
                tail_bound: 0.0,
            });
        }
        let q = e1 / e0;
        if q < 1.0 && e2 / e1 <= q {
            let tail_bound = e1 / (1.0 - q);
            if tail_bound < tol {
                return Ok(TailSum {
                    value,
                    terms: k + 1 - start,
                    tail_bound,
                });
            }
        }
    }
    Err(crate::Error::NoConvergence(MAX_TERMS))
}

/// `sum_j |c_j| x^j`, an upper bound for `|p(x)|` at `x >= 0`.
fn abs_poly(p: &crate::exact::RationalPoly) -> impl Fn(f64) -> f64 {
    let c: Vec<f64> = p.coeffs().iter().map(|c| to_f64(c).abs()).collect();
    move |x| c.iter().rev().fold(0.0, |acc, cj| acc * x + cj)
}

fn ln_weight(alpha: f64, m: usize) -> f64 {
    ln_gamma(alpha + 2.0 + m as f64) - ln_gamma(alpha + 2.0) - ln_gamma(m as f64 + 1.0)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HOrthogonality {
    pub sum: TailSum,
    pub rhs: f64,
}

/// The closed right-hand side for `n = l`:
/// `(n-1)!/(alpha+2)_{n-1} (alpha+2)^2 (alpha+n+1)^(2alpha+2n+4)
///  / ((alpha+1)^(alpha+4) (alpha+2n+1)^(alpha+3) n^(2n-3))`.
pub fn h_norm_closed(n: usize, alpha: &Rational) -> Result<f64> {
    if n == 0 {
        return domain("h orthogonality is indexed from n = 1");
    }
    check_alpha(alpha)?;
    let a = to_f64(alpha);
    let nf = n as f64;
    let ratio = factorial(n - 1) / pochhammer(&(alpha + int(2)), n - 1);
    Ok(
        (ln_rational(&ratio) + 2.0 * (a + 2.0).ln() + (2.0 * a + 2.0 * nf + 4.0) * (a + nf + 1.0).ln()
            - (a + 4.0) * (a + 1.0).ln()
            - (a + 3.0) * (a + 2.0 * nf + 1.0).ln()
            - (2.0 * nf - 3.0) * nf.ln())
        .exp(),
    )
}

/// `sum_{m>=1} (alpha+2)_m/m! h_{n-1}(m-1) h_{l-1}(m-1)`; `tol` bounds the
/// omitted tail relative to `sqrt(rhs_n rhs_l)`.
pub fn h_orthogonality_sum(n: usize, l: usize, alpha: &Rational, tol: f64) -> Result<HOrthogonality> {
    if *alpha < int(0) {
        return domain(format!("h orthogonality needs alpha >= 0, got {alpha}"));
    }
    let scale = (h_norm_closed(n, alpha)? * h_norm_closed(l, alpha)?).sqrt();
    let ha = HFunction::new(alpha.clone(), n - 1)?;
    let hb = HFunction::new(alpha.clone(), l - 1)?;
    let a = to_f64(alpha);
    let (ua, ub) = (to_f64(ha.u()), to_f64(hb.u()));
    let pa = abs_poly(&meixner_poly(ha.meixner()));
    let pb = abs_poly(&meixner_poly(hb.meixner()));
    let sum = sum_with_envelope(
        1,
        tol * scale,
        |m| ln_weight(a, m).exp() * ha.eval((m - 1) as f64) * hb.eval((m - 1) as f64),
        |m| {
            let x = (m - 1) as f64;
            (ln_weight(a, m) + x * (ua * ub).ln()).exp() * (x + 1.0).powi(2) * pa(x) * pb(x)
        },
    )?;
    let rhs = if n == l { h_norm_closed(n, alpha)? } else { 0.0 };
    Ok(HOrthogonality { sum, rhs })
}

/// `sum_{x>=0} (gamma)_x/x! c^x M_n(x) M_m(x)`, tail below `tol`.
pub fn meixner_norm_sum(n: usize, m: usize, gamma: &Rational, c: &Rational, tol: f64) -> Result<TailSum> {
    let sn = MeixnerSpec::new(n, gamma.clone(), c.clone())?;
    let sm = MeixnerSpec::new(m, gamma.clone(), c.clone())?;
    let (pn, pm) = (meixner_poly(&sn), meixner_poly(&sm));
    let (an, am) = (abs_poly(&pn), abs_poly(&pm));
    let (g, cf) = (to_f64(gamma), to_f64(c));
    let w = |x: usize| {
        let xf = x as f64;
        (ln_gamma(g + xf) - ln_gamma(g) - ln_gamma(xf + 1.0) + xf * cf.ln()).exp()
    };
    sum_with_envelope(
        0,
        tol,
        |x| w(x) * pn.eval_f64(x as f64) * pm.eval_f64(x as f64),
        |x| w(x) * an(x as f64) * am(x as f64),
    )
}

/// `n! / ((gamma)_n c^n (1-c)^gamma)`
pub fn meixner_norm_closed(n: usize, gamma: &Rational, c: &Rational) -> f64 {
    let ratio = factorial(n) / (pochhammer(gamma, n) * pow_i(c, n as i64));
    (ln_rational(&ratio) - to_f64(gamma) * ln_rational(&(int(1) - c))).exp()
}

/// The two computations of the `M_{n-1}` coefficient of
/// `(x+1) M_{n-1}(x; alpha+3, u_n^2)` in the basis `M_{n-2}, M_{n-1}, M_n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Recentering {
    /// From the three-term recurrence: `1 + (k + (k+gamma)c)/(1-c)`, `k = n-1`.
    pub recurrence: Rational,
    /// By exact division in the polynomial basis.
    pub expansion: Rational,
    /// `n(alpha+n+1)/(alpha+1)`
    pub closed: Rational,
}

impl Recentering {
    pub fn agree(&self) -> bool {
        self.recurrence == self.expansion && self.expansion == self.closed
    }
}

pub fn recentering_coefficient(n: usize, alpha: &Rational) -> Result<Recentering> {
    if n == 0 {
        return domain("recentering needs n >= 1");
    }
    check_alpha(alpha)?;
    let k = n - 1;
    let gamma = alpha + int(3);
    let u = u_param(n, alpha);
    let c = &u * &u;
    let kr = int(k as i64);
    let recurrence = int(1) + (&kr + (&kr + &gamma) * &c) / (int(1) - &c);

    let basis = |j: usize| -> Result<crate::exact::RationalPoly> {
        Ok(meixner_poly(&MeixnerSpec::new(j, gamma.clone(), c.clone())?))
    };
    let target = &crate::exact::RationalPoly::from_ints(&[1, 1]) * &basis(k)?;
    // peel off M_n, then M_{n-1}, then M_{n-2} by leading coefficients
    let mut rest = target;
    let mut coefficients = Vec::new();
    for j in (k.saturating_sub(1)..=k + 1).rev() {
        let b = basis(j)?;
        let coef = if rest.degree() == b.degree() {
            rest.leading_coeff().expect("nonzero") / b.leading_coeff().expect("nonzero")
        } else {
            Rational::zero()
        };
        rest = &rest - &b.scale(&coef);
        coefficients.push((j, coef));
    }
    if !rest.is_zero() {
        return Err(crate::Error::Verification(format!(
            "(x+1) M_{k} is not in the span of three neighbouring Meixner polynomials"
        )));
    }
    let expansion = coefficients
        .into_iter()
        .find(|(j, _)| *j == k)
        .map(|(_, c)| c)
        .expect("k is in range");
    let closed = int(n as i64) * (alpha + int(n as i64 + 1)) / (alpha + int(1));
    Ok(Recentering {
        recurrence,
        expansion,
        closed,
    })
}
