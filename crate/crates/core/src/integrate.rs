//! Two independent ways to integrate against `s^a e^{-s}` on `(0, inf)`.
//!
//! The exact route reduces `int p(s) s^base e^{-s} ds` to `Gamma(base+1)`
//! times a rational, never evaluating the Gamma function. The floating route
//! is Gauss-Laguerre quadrature built by the Golub-Welsch construction; it is
//! used as an oracle for the exact route and for non-polynomial integrands.

use num_traits::{One, Zero};

use crate::error::{domain, Error, Result};
use crate::exact::{int, to_f64, Rational, RationalPoly};
use crate::specfun::{laguerre_coeffs, LaguerreSpec};

/// `coefficient * Gamma(base + 1)`, with the Gamma factor kept symbolic.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReducedIntegral {
    pub coefficient: Rational,
    pub base: Rational,
}

impl ReducedIntegral {
    pub fn is_zero(&self) -> bool {
        self.coefficient.is_zero()
    }

    /// Floating value, multiplying in `Gamma(base + 1)` through its logarithm.
    pub fn to_f64(&self) -> f64 {
        to_f64(&self.coefficient) * ln_gamma(to_f64(&self.base) + 1.0).exp()
    }
}

/// `ln Gamma(x)` for `x > 0`.
pub fn ln_gamma(x: f64) -> f64 {
    libm::lgamma(x)
}

/// `Gamma(x)` for `x > 0`.
pub fn gamma(x: f64) -> f64 {
    libm::tgamma(x)
}

/// Exact reduction of `int p(s) s^base e^{-s} ds` using
/// `int s^(base+j) e^{-s} ds = Gamma(base+1) (base+1)_j`.
pub fn gamma_moment(p: &RationalPoly, base: &Rational) -> Result<ReducedIntegral> {
    if *base <= int(-1) {
        return Err(Error::DivergentIntegral(base.to_string()));
    }
    let b1 = base + int(1);
    let mut rising = Rational::one();
    let mut coefficient = Rational::zero();
    for (j, c) in p.coeffs().iter().enumerate() {
        if j > 0 {
            rising *= &b1 + int(j as i64 - 1);
        }
        if !c.is_zero() {
            coefficient += c * &rising;
        }
    }
    Ok(ReducedIntegral {
        coefficient,
        base: base.clone(),
    })
}

/// Nodes and weights of an `N`-point Gauss rule for the weight `s^a e^{-s}`.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadRule {
    pub exponent: f64,
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

impl QuadRule {
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }
}

/// Off-diagonal convergence threshold for the QL sweeps, relative to the
/// adjacent diagonal entries.
const QL_TOL: f64 = 1e-14;
const QL_MAX_ITER: usize = 60;

/// Golub-Welsch construction: eigenvalues of the Jacobi matrix are the nodes,
/// squared first eigenvector components times `Gamma(a+1)` are the weights.
pub fn gauss_laguerre_rule(n: usize, a: f64) -> Result<QuadRule> {
    if n == 0 {
        return domain("quadrature rule needs at least one node");
    }
    if !(a > -1.0) {
        return domain(format!("weight exponent {a} must exceed -1"));
    }
    let mut diag: Vec<f64> = (0..n).map(|i| 2.0 * i as f64 + a + 1.0).collect();
    let mut off: Vec<f64> = (1..=n)
        .map(|i| if i < n { (i as f64 * (i as f64 + a)).sqrt() } else { 0.0 })
        .collect();
    let mut first = vec![0.0; n];
    first[0] = 1.0;
    tridiagonal_ql(&mut diag, &mut off, &mut first)?;

    let mut pairs: Vec<(f64, f64)> = diag.into_iter().zip(first).collect();
    pairs.sort_by(|x, y| x.0.total_cmp(&y.0));
    let mu0 = ln_gamma(a + 1.0).exp();
    let (nodes, weights) = pairs.into_iter().map(|(x, v)| (x, mu0 * v * v)).unzip();
    Ok(QuadRule {
        exponent: a,
        nodes,
        weights,
    })
}

/// Implicit-shift QL on a symmetric tridiagonal matrix. On return `diag`
/// holds the eigenvalues and `row` the corresponding entries of the rotated
/// input row (the first eigenvector components when `row = e_1`).
fn tridiagonal_ql(diag: &mut [f64], off: &mut [f64], row: &mut [f64]) -> Result<()> {
    let n = diag.len();
    for l in 0..n {
        let mut iter = 0;
        loop {
            let mut m = l;
            while m + 1 < n {
                let dd = diag[m].abs() + diag[m + 1].abs();
                if off[m].abs() <= QL_TOL * dd {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            iter += 1;
            if iter > QL_MAX_ITER {
                return Err(Error::NoConvergence(QL_MAX_ITER));
            }
            let mut g = (diag[l + 1] - diag[l]) / (2.0 * off[l]);
            let mut r = g.hypot(1.0);
            g = diag[m] - diag[l] + off[l] / (g + r.copysign(g));
            let (mut s, mut c, mut p) = (1.0, 1.0, 0.0);
            let mut deflated = false;
            for i in (l..m).rev() {
                let f = s * off[i];
                let b = c * off[i];
                r = f.hypot(g);
                off[i + 1] = r;
                if r == 0.0 {
                    diag[i + 1] -= p;
                    off[m] = 0.0;
                    deflated = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = diag[i + 1] - p;
                r = (diag[i] - g) * s + 2.0 * c * b;
                p = s * r;
                diag[i + 1] = g + p;
                g = c * r - b;
                let t = row[i + 1];
                row[i + 1] = s * row[i] + c * t;
                row[i] = c * row[i] - s * t;
            }
            if deflated {
                continue;
            }
            diag[l] -= p;
            off[l] = g;
            off[m] = 0.0;
        }
    }
    Ok(())
}

/// `sum_i w_i f(x_i)`, approximating `int f(s) s^a e^{-s} ds`.
pub fn quad_integrate<F: Fn(f64) -> f64>(f: F, rule: &QuadRule) -> Result<f64> {
    let mut sum = 0.0;
    for (&x, &w) in rule.nodes.iter().zip(&rule.weights) {
        let v = f(x);
        if !v.is_finite() {
            return Err(Error::NonFinite { node: x, value: v });
        }
        sum += w * v;
    }
    Ok(sum)
}

/// Node count used when a rule checks the product of degrees `m` and `n`.
pub fn oracle_rule_size(m: usize, n: usize) -> usize {
    m + n + 8
}

/// `int L_m^alpha L_n^alpha x^alpha e^{-x} dx / Gamma(alpha+1)`, exactly.
pub fn laguerre_orthonorm_check(m: usize, n: usize, alpha: &Rational) -> Result<Rational> {
    let lm = laguerre_coeffs(&LaguerreSpec::new(m, alpha.clone())?);
    let ln = laguerre_coeffs(&LaguerreSpec::new(n, alpha.clone())?);
    Ok(gamma_moment(&(&lm * &ln), alpha)?.coefficient)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{factorial, pochhammer, rat};
    use crate::specfun::laguerre_eval;
    use num_traits::Signed;

    fn rel(a: f64, b: f64) -> f64 {
        (a - b).abs() / b.abs().max(f64::MIN_POSITIVE)
    }

    #[test]
    fn gamma_moment_examples() {
        let a = rat(7, 3);
        assert_eq!(gamma_moment(&RationalPoly::one(), &a).unwrap().coefficient, int(1));
        assert_eq!(
            gamma_moment(&RationalPoly::from_ints(&[0, 1]), &int(1))
                .unwrap()
                .coefficient,
            int(2)
        );
        assert_eq!(
            gamma_moment(&RationalPoly::from_ints(&[1, -2, 1]), &int(0))
                .unwrap()
                .coefficient,
            int(1)
        );
        assert!(matches!(
            gamma_moment(&RationalPoly::one(), &int(-1)),
            Err(Error::DivergentIntegral(_))
        ));
    }

    #[test]
    fn small_rules() {
        let r = gauss_laguerre_rule(1, 0.0).unwrap();
        assert!((r.nodes[0] - 1.0).abs() < 1e-15);
        assert!((r.weights[0] - 1.0).abs() < 1e-15);

        let r = gauss_laguerre_rule(2, 0.0).unwrap();
        let s = 2f64.sqrt();
        assert!((r.nodes[0] - (2.0 - s)).abs() < 1e-14);
        assert!((r.nodes[1] - (2.0 + s)).abs() < 1e-14);
        assert!((r.weights[0] - (2.0 + s) / 4.0).abs() < 1e-14);
        assert!((r.weights[1] - (2.0 - s) / 4.0).abs() < 1e-14);

        assert!(gauss_laguerre_rule(0, 0.0).is_err());
        assert!(gauss_laguerre_rule(3, -1.0).is_err());
    }

    #[test]
    fn rule_exact_on_monomials() {
        let r = gauss_laguerre_rule(10, 0.0).unwrap();
        for k in 0..=19usize {
            let exact = gamma_moment(&RationalPoly::monomial(int(1), k), &int(0))
                .unwrap()
                .to_f64();
            let q = quad_integrate(|s| s.powi(k as i32), &r).unwrap();
            assert!(rel(q, exact) < 1e-12, "k={k}: {q} vs {exact}");
        }
    }

    #[test]
    fn rule_invariants() {
        for &(n, a) in &[(1, 0.0), (5, 0.5), (20, 2.0), (40, 7.0 / 3.0), (64, -0.5)] {
            let r = gauss_laguerre_rule(n, a).unwrap();
            assert_eq!(r.len(), n);
            assert!(r.nodes[0] > 0.0);
            assert!(r.nodes.windows(2).all(|w| w[0] < w[1]));
            assert!(r.weights.iter().all(|&w| w > 0.0));
            let total: f64 = r.weights.iter().sum();
            assert!(rel(total, gamma(a + 1.0)) < 1e-12, "n={n} a={a}");
        }
    }

    #[test]
    fn quadrature_agrees_with_gamma_moments() {
        for a in [int(0), rat(1, 2), int(1), rat(7, 3)] {
            let af = to_f64(&a);
            for n in [3usize, 8, 15] {
                let r = gauss_laguerre_rule(n, af).unwrap();
                // a fixed dense polynomial of degree 2n-1
                let p = RationalPoly::new((0..2 * n).map(|j| rat((j as i64 % 5) - 2, j as i64 + 1)).collect());
                let exact = gamma_moment(&p, &a).unwrap().to_f64();
                let q = quad_integrate(|s| p.eval_f64(s), &r).unwrap();
                let scale = gamma_moment(&RationalPoly::new(p.coeffs().iter().map(|c| c.abs()).collect()), &a)
                    .unwrap()
                    .to_f64();
                assert!((q - exact).abs() <= 1e-11 * scale, "a={a} n={n}: {q} vs {exact}");
            }
        }
    }

    #[test]
    fn quad_integrate_examples() {
        let r = gauss_laguerre_rule(4, 0.0).unwrap();
        assert!((quad_integrate(|_| 1.0, &r).unwrap() - 1.0).abs() < 1e-14);
        assert!((quad_integrate(|s| s, &r).unwrap() - 1.0).abs() < 1e-14);
        let r5 = gauss_laguerre_rule(5, 0.0).unwrap();
        let norm = quad_integrate(|s| laguerre_eval(3, 0.0, s).powi(2), &r5).unwrap();
        assert!((norm - 1.0).abs() < 1e-13);
        let err = quad_integrate(|s| 1.0 / (s - r.nodes[1]), &r).unwrap_err();
        assert!(matches!(err, Error::NonFinite { node, .. } if node == r.nodes[1]));
    }

    #[test]
    fn orthonormality_examples() {
        assert_eq!(laguerre_orthonorm_check(0, 1, &int(0)).unwrap(), int(0));
        assert_eq!(laguerre_orthonorm_check(1, 1, &int(0)).unwrap(), int(1));
        // (3/2)_2 / 2! = 15/8
        assert_eq!(laguerre_orthonorm_check(2, 2, &rat(1, 2)).unwrap(), rat(15, 8));
    }

    #[test]
    fn orthonormality_grid() {
        for a in [int(0), rat(1, 2), int(1), int(2)] {
            for m in 0..=12usize {
                for n in 0..=12usize {
                    let v = laguerre_orthonorm_check(m, n, &a).unwrap();
                    let expect = if m == n {
                        pochhammer(&(&a + int(1)), n) / factorial(n)
                    } else {
                        int(0)
                    };
                    assert_eq!(v, expect, "m={m} n={n} a={a}");
                }
            }
        }
    }
}
