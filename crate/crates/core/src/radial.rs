//! Hydrogenic radial functions and their degree-scaled orthogonality.
//!
//! With the coupling fixed to one, the bound states of the radial equation
//! are `phi_n(x) = L_n^alpha(x/(alpha+2n+1)) exp(-x/(2(alpha+2n+1)))`, and
//! they are orthogonal for the weight `x^(alpha+1)` even though each degree
//! uses its own scaling. The exact check reduces every cross term to a
//! Gamma moment; the closed-form sum and the `2F1` contiguity identity give a
//! second exact route, and quadrature a floating one.

use num_traits::{One, Signed, Zero};

use crate::error::{domain, Result};
use crate::exact::{factorial, int, pochhammer, pochhammer_ext, pow_i, Rational, ScaleFactor};
use crate::integrate::{gamma_moment, gauss_laguerre_rule, ln_gamma, quad_integrate, ReducedIntegral};
use crate::specfun::{hyp2f1_terminating, laguerre_coeffs, laguerre_eval, LaguerreSpec};

/// Quantum numbers of a bound state: dimension, angular momentum, radial
/// degree, and the Coulomb coupling `k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RadialMode {
    dim: u32,
    l: u32,
    n: u32,
    k: Rational,
}

impl RadialMode {
    pub fn new(dim: u32, l: u32, n: u32, k: Rational) -> Result<Self> {
        if dim == 0 {
            return domain("dimension must be at least 1");
        }
        if dim + 2 * l < 2 {
            return domain(format!("alpha = N + 2l - 2 must exceed -1 (N={dim}, l={l})"));
        }
        if !k.is_positive() {
            return domain(format!("coupling k = {k} must be positive"));
        }
        Ok(Self { dim, l, n, k })
    }

    pub fn dim(&self) -> u32 {
        self.dim
    }

    pub fn l(&self) -> u32 {
        self.l
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn k(&self) -> &Rational {
        &self.k
    }

    /// `alpha = N + 2l - 2`
    pub fn alpha(&self) -> Rational {
        int(self.dim as i64 + 2 * self.l as i64 - 2)
    }

    /// `mu_n = k / (2(alpha + 2n + 1))`
    pub fn mu(&self) -> Rational {
        &self.k / (int(2) * (self.alpha() + int(2 * self.n as i64 + 1)))
    }
}

/// Energy level `-mu_n^2`.
pub fn energy_level(mode: &RadialMode) -> Rational {
    let mu = mode.mu();
    -(&mu * &mu)
}

/// `phi_n` for index `alpha` with unit coupling.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PhiFunction {
    alpha: Rational,
    n: usize,
}

impl PhiFunction {
    pub fn new(alpha: Rational, n: usize) -> Result<Self> {
        LaguerreSpec::new(n, alpha.clone())?;
        Ok(Self { alpha, n })
    }

    pub fn alpha(&self) -> &Rational {
        &self.alpha
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// The degree-dependent scale `alpha + 2n + 1`.
    pub fn scale(&self) -> Rational {
        &self.alpha + int(2 * self.n as i64 + 1)
    }

    pub fn eval(&self, x: f64) -> f64 {
        phi_eval(self, x)
    }
}

/// `L_n^alpha(x/(alpha+2n+1)) exp(-x/(2(alpha+2n+1)))`
pub fn phi_eval(phi: &PhiFunction, x: f64) -> f64 {
    let a = crate::exact::to_f64(&phi.alpha);
    let s = a + 2.0 * phi.n as f64 + 1.0;
    laguerre_eval(phi.n, a, x / s) * (-x / (2.0 * s)).exp()
}

/// Exact `int L_m^alpha(beta s) L_n^alpha((2-beta) s) s^(alpha+kappa) e^{-s} ds`
/// as a rational multiple of `Gamma(alpha + kappa + 1)`.
pub fn cross_integral_reduced(
    m: usize,
    n: usize,
    alpha: &Rational,
    kappa: &Rational,
    beta: &Rational,
) -> Result<ReducedIntegral> {
    if !beta.is_positive() || *beta >= int(2) {
        return domain(format!("beta = {beta} must lie in (0, 2)"));
    }
    let lm = laguerre_coeffs(&LaguerreSpec::new(m, alpha.clone())?).scale_arg(beta);
    let ln = laguerre_coeffs(&LaguerreSpec::new(n, alpha.clone())?).scale_arg(&(int(2) - beta));
    gamma_moment(&(&lm * &ln), &(alpha + kappa))
}

/// `int phi_m phi_n x^(alpha+1) dx` split into an exact reduced integral and
/// the positive substitution prefactor.
#[derive(Debug, Clone, PartialEq)]
pub struct PhiInnerProduct {
    /// The cross integral after substituting `x = P s`.
    pub reduced: ReducedIntegral,
    /// `P^(alpha+2)` with `P = (alpha+2m+1)(alpha+2n+1)/(alpha+m+n+1)`.
    pub prefactor: ScaleFactor,
    pub beta: Rational,
    pub value: f64,
}

impl PhiInnerProduct {
    pub fn is_exact_zero(&self) -> bool {
        self.reduced.is_zero()
    }
}

/// The `beta` of the orthogonality substitution,
/// `(alpha+2n+1)/(alpha+m+n+1)`; equal to one on the diagonal.
pub fn orthogonality_beta(m: usize, n: usize, alpha: &Rational) -> Rational {
    (alpha + int(2 * n as i64 + 1)) / (alpha + int((m + n) as i64 + 1))
}

pub fn phi_inner_product(m: usize, n: usize, alpha: &Rational) -> Result<PhiInnerProduct> {
    let beta = orthogonality_beta(m, n, alpha);
    let reduced = cross_integral_reduced(m, n, alpha, &int(1), &beta)?;
    let base = (alpha + int(2 * m as i64 + 1)) * (alpha + int(2 * n as i64 + 1)) / (alpha + int((m + n) as i64 + 1));
    let prefactor = ScaleFactor::new(base, alpha + int(2))?;
    let log_mag = prefactor.ln() + ln_gamma(crate::exact::to_f64(&reduced.base) + 1.0);
    let value = crate::exact::to_f64(&reduced.coefficient) * log_mag.exp();
    Ok(PhiInnerProduct {
        reduced,
        prefactor,
        beta,
        value,
    })
}

/// Closed-form diagonal norm `(alpha+2n+1)^(alpha+3) Gamma(alpha+1+n) / n!`.
pub fn phi_norm_closed(n: usize, alpha: f64) -> f64 {
    let s = alpha + 2.0 * n as f64 + 1.0;
    ((alpha + 3.0) * s.ln() + ln_gamma(alpha + 1.0 + n as f64) - ln_gamma(n as f64 + 1.0)).exp()
}

/// Default node count for quadrature cross-checks of `<phi_m, phi_n>`.
pub fn phi_rule_size(m: usize, n: usize) -> usize {
    m + n + 10
}

/// `int phi_m phi_n x^(alpha+1) dx` by Gauss-Laguerre quadrature in the
/// original variable, using the floating Laguerre recurrence.
pub fn phi_inner_product_quadrature(m: usize, n: usize, alpha: f64, nodes: usize) -> Result<f64> {
    let sm = alpha + 2.0 * m as f64 + 1.0;
    let sn = alpha + 2.0 * n as f64 + 1.0;
    let decay = 0.5 * (1.0 / sm + 1.0 / sn);
    let rule = gauss_laguerre_rule(nodes, alpha + 1.0)?;
    let integral = quad_integrate(
        |s| {
            let x = s / decay;
            laguerre_eval(m, alpha, x / sm) * laguerre_eval(n, alpha, x / sn)
        },
        &rule,
    )?;
    Ok(integral * (-(alpha + 2.0) * decay.ln()).exp())
}

/// `(gamma-1) 2F1(1-m,1-n;alpha+2;gamma) + 2F1(-m,-n;alpha+2;gamma)
///  - gamma (alpha+m+n+1)/(alpha+2) 2F1(1-m,1-n;alpha+3;gamma)`,
/// which vanishes identically for `m, n >= 1`.
pub fn contiguity_combination(m: usize, n: usize, alpha: &Rational, gamma: &Rational) -> Result<Rational> {
    if m == 0 || n == 0 {
        return domain("contiguity combination needs m, n >= 1");
    }
    if gamma.is_one() {
        return domain("contiguity combination needs gamma != 1");
    }
    let a2 = alpha + int(2);
    let a3 = alpha + int(3);
    let one_minus_n = int(1 - n as i64);
    let f1 = hyp2f1_terminating(m - 1, &one_minus_n, &a2, gamma)?;
    let f2 = hyp2f1_terminating(m, &int(-(n as i64)), &a2, gamma)?;
    let f3 = hyp2f1_terminating(m - 1, &one_minus_n, &a3, gamma)?;
    let weight = gamma * (alpha + int((m + n) as i64 + 1)) / &a2;
    Ok((gamma - int(1)) * f1 + f2 - weight * f3)
}

/// Both exact evaluations of the reduced cross term for `m != n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BsumCheck {
    /// The closed-form sum over `L_j^(alpha+1)` coefficients.
    pub closed_form: Rational,
    /// Direct Gamma-moment reduction of the product polynomial.
    pub direct: Rational,
}

impl BsumCheck {
    pub fn agree(&self) -> bool {
        self.closed_form == self.direct
    }

    pub fn is_zero(&self) -> bool {
        self.agree() && self.closed_form.is_zero()
    }
}

/// Evaluates the cross term through its expansion in the `L_j^(alpha+1)`
/// basis,
///
/// `(alpha+2)_{m-1} (alpha+2)_{n-1} / (m! n!) (1-beta)^{m-1} (beta-1)^{n-1}
///  * sum_j (-m)_j (-n)_j / ((alpha+2)_j j!) g^j (j - n(2-beta)) (j - m beta)`
///
/// with `g = beta(beta-2)/(1-beta)^2` and `(alpha+2)_{-1} = 1/(alpha+1)`, and
/// pairs it with the direct moment reduction.
pub fn bsum_check(m: usize, n: usize, alpha: &Rational) -> Result<BsumCheck> {
    if m == n {
        return domain("closed-form cross sum needs distinct degrees");
    }
    LaguerreSpec::new(m.max(n), alpha.clone())?;
    let beta = orthogonality_beta(m, n, alpha);
    let one_minus_beta = int(1) - &beta;
    let a2 = alpha + int(2);
    let (mi, ni) = (m as i64, n as i64);

    let front = pochhammer_ext(&a2, mi - 1)? * pochhammer_ext(&a2, ni - 1)? / (factorial(m) * factorial(n))
        * pow_i(&one_minus_beta, mi - 1)
        * pow_i(&(-&one_minus_beta), ni - 1);
    let g = &beta * (&beta - int(2)) / (&one_minus_beta * &one_minus_beta);
    let two_minus_beta = int(2) - &beta;

    let mut sum = Rational::zero();
    for j in 0..=m.min(n) {
        let jr = int(j as i64);
        let hyper = pochhammer(&int(-mi), j) * pochhammer(&int(-ni), j) / (pochhammer(&a2, j) * factorial(j));
        let tail = (&jr - int(ni) * &two_minus_beta) * (&jr - int(mi) * &beta);
        sum += hyper * pow_i(&g, j as i64) * tail;
    }
    let closed_form = front * sum;
    let direct = cross_integral_reduced(m, n, alpha, &int(1), &beta)?.coefficient;
    Ok(BsumCheck { closed_form, direct })
}

/// `int x L_n^alpha(x)^2 x^alpha e^{-x} dx / Gamma(alpha+1)`, exactly.
pub fn first_moment_norm(n: usize, alpha: &Rational) -> Result<Rational> {
    let l = laguerre_coeffs(&LaguerreSpec::new(n, alpha.clone())?);
    let xl2 = &crate::exact::RationalPoly::monomial(int(1), 1) * &(&l * &l);
    Ok(gamma_moment(&xl2, alpha)?.coefficient)
}
