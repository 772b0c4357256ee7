//! Uniqueness of the scaling: among families `L_n^alpha(g_n x) e^{-g_n x/2}`
//! orthogonal for `x^(alpha+kappa) dx`, only `kappa = 0` (constant `g_n`) and
//! `kappa = 1` (`g_n = (alpha+1)/(alpha+2n+1)`) survive.
//!
//! Each orthogonality condition is a polynomial in `beta = 2 g_m/(g_m+g_n)`;
//! a Mobius substitution turns it into a polynomial in the unknown scaling.
//! Positive factors cleared along the way never change a zero set, and are
//! recorded rather than dropped silently.

use num_traits::{One, Signed, Zero};

use crate::error::{domain, Error, Result};
use crate::exact::{
    discriminant, int, is_rational_square, pochhammer, pow_i, resultant, MobiusImage, Rational, RationalPoly,
    ScaleFactor,
};
use crate::integrate::ReducedIntegral;
use crate::radial::cross_integral_reduced;
use crate::specfun::{laguerre_coeffs, LaguerreSpec};

fn admissible(alpha: &Rational, kappa: &Rational) -> Result<()> {
    if *alpha <= int(-1) {
        return domain(format!("alpha = {alpha} must exceed -1"));
    }
    if alpha + kappa + int(1) <= Rational::zero() {
        return domain(format!(
            "integrability needs alpha + kappa + 1 > 0 (alpha={alpha}, kappa={kappa})"
        ));
    }
    Ok(())
}

/// A candidate family of scalings `g_0 = 1, g_1, ...` for weight
/// `x^(alpha+kappa)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScalingFamily {
    alpha: Rational,
    kappa: Rational,
    scalings: Vec<Rational>,
}

impl ScalingFamily {
    pub fn new(alpha: Rational, kappa: Rational, scalings: Vec<Rational>) -> Result<Self> {
        admissible(&alpha, &kappa)?;
        if scalings.first().is_some_and(|g| !g.is_one()) {
            return domain("the family is normalized to g_0 = 1");
        }
        if let Some(g) = scalings.iter().find(|g| !g.is_positive()) {
            return domain(format!("scaling {g} must be positive"));
        }
        Ok(Self { alpha, kappa, scalings })
    }

    /// `g_n = 1` for all `n`.
    pub fn constant(alpha: Rational, len: usize) -> Result<Self> {
        Self::new(alpha, int(0), vec![int(1); len])
    }

    /// `g_n = (alpha+1)/(alpha+2n+1)` with `kappa = 1`.
    pub fn strange(alpha: Rational, len: usize) -> Result<Self> {
        let scalings = (0..len)
            .map(|n| (&alpha + int(1)) / (&alpha + int(2 * n as i64 + 1)))
            .collect();
        Self::new(alpha, int(1), scalings)
    }

    pub fn len(&self) -> usize {
        self.scalings.len()
    }

    pub fn is_empty(&self) -> bool {
        self.scalings.is_empty()
    }

    pub fn scaling(&self, n: usize) -> &Rational {
        &self.scalings[n]
    }

    /// Normalized inner product of members `m` and `n`.
    pub fn inner(&self, m: usize, n: usize) -> Result<ScaledInner> {
        scaled_inner_reduced(m, n, &self.scalings[m], &self.scalings[n], &self.alpha, &self.kappa)
    }
}

/// `<phi_m, phi_n>` under `Gamma(alpha+kappa+1)^{-1} int f g x^(alpha+kappa) dx`,
/// split as `prefactor * reduced.coefficient`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScaledInner {
    pub reduced: ReducedIntegral,
    pub beta: Rational,
    /// `((g_m+g_n)/2)^(-(alpha+kappa+1))`, positive.
    pub prefactor: ScaleFactor,
}

impl ScaledInner {
    pub fn to_f64(&self) -> f64 {
        crate::exact::to_f64(&self.reduced.coefficient) * self.prefactor.to_f64()
    }
}

pub fn scaled_inner_reduced(
    m: usize,
    n: usize,
    gm: &Rational,
    gn: &Rational,
    alpha: &Rational,
    kappa: &Rational,
) -> Result<ScaledInner> {
    admissible(alpha, kappa)?;
    if !gm.is_positive() || !gn.is_positive() {
        return domain("scalings must be positive");
    }
    let sum = gm + gn;
    let beta = int(2) * gm / &sum;
    let reduced = cross_integral_reduced(m, n, alpha, kappa, &beta)?;
    let prefactor = ScaleFactor::new(sum / int(2), -(alpha + kappa + int(1)))?;
    Ok(ScaledInner {
        reduced,
        beta,
        prefactor,
    })
}

/// The reduced cross coefficient as an exact polynomial in `beta`:
/// `sum_{i,k} l_i l'_k (alpha+kappa+1)_{i+k} beta^i (2-beta)^k`.
pub fn cross_coefficient_in_beta(m: usize, n: usize, alpha: &Rational, kappa: &Rational) -> Result<RationalPoly> {
    admissible(alpha, kappa)?;
    let lm = laguerre_coeffs(&LaguerreSpec::new(m, alpha.clone())?);
    let ln = laguerre_coeffs(&LaguerreSpec::new(n, alpha.clone())?);
    let b1 = alpha + kappa + int(1);
    let two_minus = RationalPoly::from_ints(&[2, -1]);
    let mut out = RationalPoly::zero();
    for (k, lk) in ln.coeffs().iter().enumerate() {
        let right = two_minus.pow(k);
        for (i, li) in lm.coeffs().iter().enumerate() {
            let c = li * lk * pochhammer(&b1, i + k);
            out = &out + &(&RationalPoly::monomial(c, i) * &right);
        }
    }
    Ok(out)
}

/// The orthogonality condition `<phi_m, phi_n> = 0` with `g_m` fixed, as a
/// polynomial in `t = g_n`. Substitutes `beta = 2 g_m / (g_m + t)` and clears
/// the positive factor `(g_m + t)^cleared_power`.
pub fn condition_in_scaling(
    m: usize,
    n: usize,
    gm: &Rational,
    alpha: &Rational,
    kappa: &Rational,
) -> Result<MobiusImage> {
    let in_beta = cross_coefficient_in_beta(m, n, alpha, kappa)?;
    in_beta.mobius_substitute(&(int(2) * gm), &int(0), gm, &int(1))
}

/// Solves `<phi_0, phi_1> = 0` for `g_1`; the condition is linear in `g_1`.
pub fn gamma1_solve(alpha: &Rational, kappa: &Rational) -> Result<Rational> {
    if (alpha + int(2) * kappa + int(1)).is_zero() {
        return domain("alpha + 2 kappa + 1 = 0 leaves g_1 undetermined");
    }
    let cond = condition_in_scaling(0, 1, &int(1), alpha, kappa)?.numerator;
    if cond.degree() != Some(1) {
        return Err(Error::Verification(format!(
            "<phi_0, phi_1> condition is not linear in g_1: {cond:?}"
        )));
    }
    let root = -cond.coeff(0) / cond.coeff(1);
    if !root.is_positive() {
        return Err(Error::Domain(format!("no admissible scaling: g_1 = {root}")));
    }
    let check = scaled_inner_reduced(0, 1, &int(1), &root, alpha, kappa)?;
    if !check.reduced.is_zero() {
        return Err(Error::Verification(format!(
            "g_1 = {root} leaves <phi_0, phi_1> = {}",
            check.reduced.coefficient
        )));
    }
    Ok(root)
}

/// `q2` from `<phi_0, phi_2> = 0` and `q3` from `<phi_1, phi_2> = 0`, both in
/// the unknown `g_2`, each primitive with positive leading coefficient.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QPolynomials {
    pub alpha: Rational,
    pub kappa: Rational,
    pub gamma1: Rational,
    pub q2: RationalPoly,
    pub q3: RationalPoly,
}

pub fn q_polynomials(alpha: &Rational, kappa: &Rational) -> Result<QPolynomials> {
    let gamma1 = gamma1_solve(alpha, kappa)?;
    let q2 = condition_in_scaling(0, 2, &int(1), alpha, kappa)?
        .numerator
        .primitive_part()
        .0;
    let q3 = condition_in_scaling(1, 2, &gamma1, alpha, kappa)?
        .numerator
        .primitive_part()
        .0;
    if q2.degree() != Some(2) || q3.degree() != Some(3) {
        return domain(format!(
            "degree drop at alpha={alpha}, kappa={kappa}: deg q2 = {:?}, deg q3 = {:?}",
            q2.degree(),
            q3.degree()
        ));
    }
    Ok(QPolynomials {
        alpha: alpha.clone(),
        kappa: kappa.clone(),
        gamma1,
        q2,
        q3,
    })
}

/// Discriminant of `q2` against `16 kappa (alpha+kappa+1)(alpha+2)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiscriminantCheck {
    pub computed: Rational,
    pub closed_form: Rational,
    /// `computed / closed_form` when the closed form is nonzero.
    pub ratio: Option<Rational>,
}

impl DiscriminantCheck {
    /// Same sign, same zero set, and a ratio that is a rational square (the
    /// normalization of `q2` only fixes it up to a scalar).
    pub fn passes(&self) -> bool {
        match &self.ratio {
            None => self.computed.is_zero() && self.closed_form.is_zero(),
            Some(r) => self.computed.signum() == self.closed_form.signum() && is_rational_square(r),
        }
    }

    /// Whether `q2` has a real root.
    pub fn has_real_roots(&self) -> bool {
        !self.computed.is_negative()
    }
}

pub fn discriminant_check(alpha: &Rational, kappa: &Rational) -> Result<DiscriminantCheck> {
    admissible(alpha, kappa)?;
    let q2 = condition_in_scaling(0, 2, &int(1), alpha, kappa)?
        .numerator
        .primitive_part()
        .0;
    if q2.degree() != Some(2) {
        return domain(format!("q2 is not quadratic at alpha={alpha}, kappa={kappa}"));
    }
    let computed = discriminant(&q2)?;
    let closed_form = int(16) * kappa * (alpha + kappa + int(1)) * (alpha + int(2));
    if closed_form.is_zero() && !computed.is_zero() {
        return Err(Error::Verification(format!(
            "closed-form discriminant vanishes but computed = {computed}"
        )));
    }
    let ratio = (!closed_form.is_zero()).then(|| &computed / &closed_form);
    Ok(DiscriminantCheck {
        computed,
        closed_form,
        ratio,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize)]
pub struct ResultantRow {
    #[serde(serialize_with = "crate::report::ser_rational")]
    pub alpha: Rational,
    #[serde(serialize_with = "crate::report::ser_rational")]
    pub kappa: Rational,
    #[serde(serialize_with = "crate::report::ser_rational")]
    pub resultant: Rational,
    pub vanishes: bool,
}

/// `resultant(q2, q3)` over a grid of `(alpha, kappa)`, row-major in `alpha`.
pub fn resultant_scan(alphas: &[Rational], kappas: &[Rational]) -> Result<Vec<ResultantRow>> {
    let mut rows = Vec::with_capacity(alphas.len() * kappas.len());
    for alpha in alphas {
        for kappa in kappas {
            let q = q_polynomials(alpha, kappa)?;
            let res = resultant(&q.q2, &q.q3)?;
            rows.push(ResultantRow {
                alpha: alpha.clone(),
                kappa: kappa.clone(),
                vanishes: res.is_zero(),
                resultant: res,
            });
        }
    }
    Ok(rows)
}

/// `<phi_0, phi_n>` for `kappa = 0` factored as `cofactor * (beta - 1)^n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Kappa0Factor {
    pub beta: Rational,
    pub coefficient: Rational,
    pub cofactor: Rational,
}

pub fn kappa0_factor_check(n: usize, alpha: &Rational, gamma_n: &Rational) -> Result<Kappa0Factor> {
    if n == 0 {
        return domain("kappa = 0 factor check needs n >= 1");
    }
    if !gamma_n.is_positive() {
        return domain("scaling must be positive");
    }
    let kappa = int(0);
    let in_beta = cross_coefficient_in_beta(0, n, alpha, &kappa)?;
    let (mult, quotient) = in_beta.deflate(&int(1));
    if mult < n || quotient.degree() != Some(0) {
        return Err(Error::Verification(format!(
            "<phi_0, phi_{n}> is not a constant times (beta-1)^{n}: {in_beta:?}"
        )));
    }
    let cofactor = quotient.coeff(0);
    let beta = int(2) / (int(1) + gamma_n);
    let coefficient = scaled_inner_reduced(0, n, &int(1), gamma_n, alpha, &kappa)?
        .reduced
        .coefficient;
    if coefficient != &cofactor * pow_i(&(&beta - int(1)), n as i64) {
        return Err(Error::Verification(format!(
            "reduced coefficient {coefficient} disagrees with the factored form"
        )));
    }
    Ok(Kappa0Factor {
        beta,
        coefficient,
        cofactor,
    })
}

/// `<phi_1, phi_n>` for `kappa = 1`, `g_1 = (alpha+1)/(alpha+3)`, `g_n = 1`,
/// against its closed form
/// `(-1)^{n-1} n((alpha+3)n-1)(alpha+3)(alpha+3)_{n-2} / ((alpha+1)^{n-2}(alpha+2))`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Kappa1Check {
    pub inner: ScaledInner,
    pub closed_form: Rational,
    /// `closed_form / inner.reduced.coefficient`; positive when consistent.
    pub factor: Option<Rational>,
}

impl Kappa1Check {
    pub fn passes(&self) -> bool {
        !self.inner.reduced.is_zero() && self.factor.as_ref().is_some_and(Signed::is_positive)
    }
}

pub fn kappa1_closed_form(n: usize, alpha: &Rational) -> Result<Rational> {
    if n < 2 {
        return domain("the closed form holds for n >= 2");
    }
    let a3 = alpha + int(3);
    let ni = n as i64;
    let sign = if (n - 1) % 2 == 0 { int(1) } else { int(-1) };
    Ok(sign * int(ni) * (&a3 * int(ni) - int(1)) * &a3 * pochhammer(&a3, n - 2)
        / (pow_i(&(alpha + int(1)), ni - 2) * (alpha + int(2))))
}

pub fn kappa1_phi1_phin(n: usize, alpha: &Rational) -> Result<Kappa1Check> {
    let closed_form = kappa1_closed_form(n, alpha)?;
    let gamma1 = (alpha + int(1)) / (alpha + int(3));
    let inner = scaled_inner_reduced(1, n, &gamma1, &int(1), alpha, &int(1))?;
    if inner.reduced.is_zero() {
        return Err(Error::Verification(format!("<phi_1, phi_{n}> vanishes with g_{n} = 1")));
    }
    let factor = Some(&closed_form / &inner.reduced.coefficient);
    Ok(Kappa1Check {
        inner,
        closed_form,
        factor,
    })
}

/// Roots of `<phi_0, phi_n> = 0` in `g_n` for `kappa = 1`: `g_n = 1` with
/// multiplicity `n - 1`, and one further root.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Kappa1Roots {
    pub multiplicity_at_one: usize,
    pub other_root: Rational,
}

pub fn kappa1_scaling_roots(n: usize, alpha: &Rational) -> Result<Kappa1Roots> {
    if n == 0 {
        return domain("kappa = 1 root extraction needs n >= 1");
    }
    let cond = condition_in_scaling(0, n, &int(1), alpha, &int(1))?.numerator;
    let (multiplicity_at_one, rest) = cond.deflate(&int(1));
    if rest.degree() != Some(1) {
        return Err(Error::Verification(format!(
            "after removing (g_{n} - 1)^{multiplicity_at_one} the condition has degree {:?}",
            rest.degree()
        )));
    }
    Ok(Kappa1Roots {
        multiplicity_at_one,
        other_root: -rest.coeff(0) / rest.coeff(1),
    })
}

/// The scaling `g_n` forced for `kappa = 1` once `g_n = 1` is excluded: the
/// non-unit root, after confirming `<phi_1, phi_n> != 0` at `g_n = 1`.
pub fn kappa1_forced_scaling(n: usize, alpha: &Rational) -> Result<Rational> {
    let roots = kappa1_scaling_roots(n, alpha)?;
    if n >= 2 {
        kappa1_phi1_phin(n, alpha)?;
    }
    Ok(roots.other_root)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;

    fn alphas() -> Vec<Rational> {
        vec![int(0), rat(1, 2), int(1), int(2)]
    }

    #[test]
    fn beta_polynomial_matches_pointwise_reduction() {
        let (a, k) = (rat(1, 2), rat(3, 4));
        let p = cross_coefficient_in_beta(2, 3, &a, &k).unwrap();
        for beta in [rat(1, 3), int(1), rat(7, 5)] {
            let direct = cross_integral_reduced(2, 3, &a, &k, &beta).unwrap().coefficient;
            assert_eq!(p.eval(&beta), direct);
        }
    }

    #[test]
    fn scaled_inner_examples() {
        let a = rat(2, 3);
        let s = scaled_inner_reduced(0, 0, &int(1), &rat(5, 2), &a, &int(0)).unwrap();
        assert_eq!(s.reduced.coefficient, int(1));
        for a in alphas() {
            for k in [int(0), rat(1, 2), int(1), int(2)] {
                let g1 = (&a + int(1)) / (&a + int(2) * &k + int(1));
                let s = scaled_inner_reduced(0, 1, &int(1), &g1, &a, &k).unwrap();
                assert!(s.reduced.is_zero(), "a={a} k={k}");
            }
        }
        let s = scaled_inner_reduced(0, 2, &int(1), &rat(1, 5), &int(0), &int(1)).unwrap();
        assert!(s.reduced.is_zero());
        assert!(scaled_inner_reduced(0, 1, &int(1), &int(1), &int(0), &int(-1)).is_err());
    }

    #[test]
    fn inner_product_value_matches_quadrature() {
        // <phi_1, phi_2> at kappa = 1/2 with arbitrary scalings, floating oracle
        use crate::integrate::{gauss_laguerre_rule, ln_gamma, quad_integrate};
        use crate::specfun::laguerre_eval;
        let (a, k) = (0.5, 0.5);
        let (g1, g2) = (0.75, 0.3);
        let s = scaled_inner_reduced(1, 2, &rat(3, 4), &rat(3, 10), &rat(1, 2), &rat(1, 2)).unwrap();
        let decay = 0.5 * (g1 + g2);
        let rule = gauss_laguerre_rule(16, a + k).unwrap();
        let q = quad_integrate(
            |u| {
                let x = u / decay;
                laguerre_eval(1, a, g1 * x) * laguerre_eval(2, a, g2 * x)
            },
            &rule,
        )
        .unwrap()
            * decay.powf(-(a + k + 1.0))
            / ln_gamma(a + k + 1.0).exp();
        assert!(
            (s.to_f64() - q).abs() < 1e-12 * q.abs().max(1.0),
            "{} vs {q}",
            s.to_f64()
        );
    }

    #[test]
    fn gamma1_examples() {
        for a in alphas() {
            assert_eq!(gamma1_solve(&a, &int(1)).unwrap(), (&a + int(1)) / (&a + int(3)));
            assert_eq!(gamma1_solve(&a, &int(0)).unwrap(), int(1));
        }
        assert_eq!(gamma1_solve(&int(0), &int(2)).unwrap(), rat(1, 5));
        assert!(gamma1_solve(&int(0), &rat(-1, 2)).is_err());
        assert!(gamma1_solve(&int(0), &rat(-3, 4)).is_err());
    }

    #[test]
    fn q_polynomial_examples() {
        let q = q_polynomials(&int(0), &int(1)).unwrap();
        assert!(q.q2.eval(&rat(1, 5)).is_zero());
        assert!(q.q3.eval(&rat(1, 5)).is_zero());
        assert!(q.q2.leading_coeff().unwrap().is_positive());
        assert_eq!(q.q2, RationalPoly::from_ints(&[1, -6, 5]));

        let q = q_polynomials(&int(0), &int(0)).unwrap();
        let (mult, rest) = q.q2.deflate(&int(1));
        assert_eq!(mult, 2);
        assert_eq!(rest.degree(), Some(0));
    }

    #[test]
    fn discriminant_examples() {
        for a in alphas() {
            let d = discriminant_check(&a, &int(0)).unwrap();
            assert!(d.computed.is_zero() && d.closed_form.is_zero() && d.passes());
        }
        let d = discriminant_check(&int(0), &int(1)).unwrap();
        assert_eq!(d.closed_form, int(64));
        assert!(d.passes(), "{d:?}");
        let d = discriminant_check(&int(0), &rat(-1, 4)).unwrap();
        assert_eq!(d.closed_form, int(-6));
        assert!(d.passes() && !d.has_real_roots());
    }

    #[test]
    fn discriminant_sign_grid() {
        let alphas = [rat(-1, 2), int(0), rat(1, 2), int(1), int(2)];
        let kappas = [
            rat(-1, 3),
            rat(-1, 4),
            int(0),
            rat(1, 4),
            rat(1, 2),
            int(1),
            int(2),
            int(3),
        ];
        let mut n = 0;
        for a in &alphas {
            for k in &kappas {
                if a + k + int(1) <= int(0) {
                    continue;
                }
                assert!(discriminant_check(a, k).unwrap().passes(), "a={a} k={k}");
                n += 1;
            }
        }
        assert!(n >= 40);
    }

    #[test]
    fn resultant_examples() {
        let rows = resultant_scan(&[int(0), rat(1, 2)], &[int(0), rat(1, 2), int(1)]).unwrap();
        let vanish: Vec<_> = rows.iter().map(|r| r.vanishes).collect();
        assert_eq!(vanish, vec![true, false, true, true, false, true]);
    }

    #[test]
    fn kappa0_examples() {
        let f = kappa0_factor_check(2, &int(0), &int(3)).unwrap();
        assert_eq!(f.beta, rat(1, 2));
        assert_eq!(f.cofactor, int(1));
        assert_eq!(f.coefficient, rat(1, 4));
        let f = kappa0_factor_check(1, &int(1), &int(1)).unwrap();
        assert!(f.coefficient.is_zero());
        assert_eq!(f.cofactor, int(2));
        let f = kappa0_factor_check(3, &rat(1, 2), &int(2)).unwrap();
        assert!(!f.coefficient.is_zero() && !f.cofactor.is_zero());
        // the cofactor is (alpha+1)_n / n!
        assert_eq!(f.cofactor, pochhammer(&rat(3, 2), 3) / int(6));
    }

    #[test]
    fn kappa0_family_is_orthogonal() {
        for a in alphas() {
            let fam = ScalingFamily::constant(a.clone(), 9).unwrap();
            for m in 0..=8 {
                for n in 0..=8 {
                    if m != n {
                        assert!(fam.inner(m, n).unwrap().reduced.is_zero());
                    }
                }
            }
        }
    }

    #[test]
    fn strange_family_is_orthogonal() {
        let fam = ScalingFamily::strange(rat(7, 3), 7).unwrap();
        for m in 0..7 {
            for n in m + 1..7 {
                assert!(fam.inner(m, n).unwrap().reduced.is_zero());
            }
        }
        assert!(ScalingFamily::new(int(0), int(1), vec![int(2)]).is_err());
        assert!(ScalingFamily::new(int(0), int(1), vec![int(1), int(0)]).is_err());
    }

    #[test]
    fn kappa1_closed_form_examples() {
        assert_eq!(kappa1_closed_form(2, &int(0)).unwrap(), int(-15));
        assert_eq!(kappa1_closed_form(3, &int(0)).unwrap(), int(108));
        let c = kappa1_phi1_phin(2, &int(0)).unwrap();
        assert_eq!(c.inner.reduced.coefficient, rat(-15, 4));
        assert_eq!(c.factor, Some(int(4)));
        assert!(c.passes());
        assert!(kappa1_phi1_phin(2, &int(1)).unwrap().passes());
    }

    #[test]
    fn kappa1_roots_reproduce_strange_scaling() {
        for a in alphas() {
            for n in 1..=10usize {
                let r = kappa1_scaling_roots(n, &a).unwrap();
                assert_eq!(r.multiplicity_at_one, n - 1, "a={a} n={n}");
                let expect = (&a + int(1)) / (&a + int(2 * n as i64 + 1));
                assert_eq!(r.other_root, expect);
                assert_eq!(kappa1_forced_scaling(n, &a).unwrap(), expect);
            }
        }
    }
}
