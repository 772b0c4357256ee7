//! Laguerre and Meixner polynomials, terminating `2F1` sums, and the two
//! Laguerre expansion identities used by the orthogonality proofs.

use num_traits::{One, Signed, Zero};

use crate::error::{domain, Error, Result};
use crate::exact::{factorial, int, pochhammer, pow_i, to_f64, Rational, RationalPoly};

/// Degree and index of a Laguerre polynomial `L_n^alpha`, `alpha > -1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LaguerreSpec {
    degree: usize,
    alpha: Rational,
}

impl LaguerreSpec {
    pub fn new(degree: usize, alpha: Rational) -> Result<Self> {
        if alpha <= int(-1) {
            return domain(format!("Laguerre index {alpha} must exceed -1"));
        }
        Ok(Self { degree, alpha })
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn alpha(&self) -> &Rational {
        &self.alpha
    }
}

/// Exact coefficients of `L_n^alpha` in the monomial basis.
pub fn laguerre_coeffs(spec: &LaguerreSpec) -> RationalPoly {
    let n = spec.degree;
    let a1 = &spec.alpha + int(1);
    // (a+1)_n / ((a+1)_j j!) * (-n)_j / n!, built from the top coefficient down
    // via c_{j} = c_{j+1} * (j+1)(a+1+j) / (-(n-j))
    let mut coeffs = vec![Rational::zero(); n + 1];
    let top = if n % 2 == 0 { int(1) } else { int(-1) } / factorial(n);
    coeffs[n] = top;
    for j in (0..n).rev() {
        let ratio = int((j + 1) as i64) * (&a1 + int(j as i64)) / int(-((n - j) as i64));
        coeffs[j] = &coeffs[j + 1] * ratio;
    }
    RationalPoly::new(coeffs)
}

/// `L_n^alpha(x)` by the upward three-term recurrence.
pub fn laguerre_eval(n: usize, alpha: f64, x: f64) -> f64 {
    let mut prev = 1.0;
    if n == 0 {
        return prev;
    }
    let mut cur = alpha + 1.0 - x;
    for k in 1..n {
        let k = k as f64;
        let next = ((alpha + 1.0 + 2.0 * k - x) * cur - (k + alpha) * prev) / (k + 1.0);
        prev = cur;
        cur = next;
    }
    cur
}

/// `x p'' + (alpha + 1 - x) p' + n p` for `p = L_n^alpha`; identically zero.
pub fn ode_residual(spec: &LaguerreSpec) -> RationalPoly {
    let p = laguerre_coeffs(spec);
    let d1 = p.derivative();
    let d2 = d1.derivative();
    let x = RationalPoly::from_ints(&[0, 1]);
    let drift = RationalPoly::linear(&spec.alpha + int(1), int(-1));
    let n = int(spec.degree as i64);
    &(&(&x * &d2) + &(&drift * &d1)) + &p.scale(&n)
}

/// `(L_n^{alpha+1}, L_{n-1}^{alpha+1})`, whose difference is `L_n^alpha`.
pub fn contig_expand(spec: &LaguerreSpec) -> Result<(RationalPoly, RationalPoly)> {
    if spec.degree == 0 {
        return domain("contiguity expansion needs degree >= 1");
    }
    let shifted = &spec.alpha + int(1);
    let upper = laguerre_coeffs(&LaguerreSpec::new(spec.degree, shifted.clone())?);
    let lower = laguerre_coeffs(&LaguerreSpec::new(spec.degree - 1, shifted)?);
    Ok((upper, lower))
}

/// Coefficients `c_j` with `L_n^delta(b x) = sum_j c_j L_j^delta(x)`:
/// `c_j = (delta+1+j)_{n-j} / (n-j)! * b^j (1-b)^{n-j}`.
pub fn rescale_expand(n: usize, delta: &Rational, b: &Rational) -> Result<Vec<Rational>> {
    if *delta <= int(-1) {
        return domain(format!("rescale index {delta} must exceed -1"));
    }
    let one_minus_b = int(1) - b;
    Ok((0..=n)
        .map(|j| {
            let lead = pochhammer(&(delta + int(1 + j as i64)), n - j) / factorial(n - j);
            lead * pow_i(b, j as i64) * pow_i(&one_minus_b, (n - j) as i64)
        })
        .collect())
}

/// `2F1(-m, b; c; z)` as the finite sum over `j = 0..=m`.
///
/// The sum stops early once the numerator Pochhammer product vanishes, so a
/// nonpositive-integer `c` is only a pole when it is reached first.
pub fn hyp2f1_terminating(m: usize, b: &Rational, c: &Rational, z: &Rational) -> Result<Rational> {
    let mut sum = Rational::one();
    let mut upper = Rational::one(); // (-m)_j (b)_j
    let mut lower = Rational::one(); // (c)_j j!
    let neg_m = int(-(m as i64));
    for j in 0..m {
        let jr = int(j as i64);
        upper *= (&neg_m + &jr) * (b + &jr);
        if upper.is_zero() {
            return Ok(sum);
        }
        lower *= (c + &jr) * int(j as i64 + 1);
        if lower.is_zero() {
            return Err(Error::LowerParameterPole { term: j + 1 });
        }
        sum += &upper / &lower * pow_i(z, j as i64 + 1);
    }
    Ok(sum)
}

/// Meixner parameters `(n, gamma, c)` with `gamma > 0`, `0 < c < 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MeixnerSpec {
    degree: usize,
    gamma: Rational,
    c: Rational,
}

impl MeixnerSpec {
    pub fn new(degree: usize, gamma: Rational, c: Rational) -> Result<Self> {
        if !gamma.is_positive() {
            return domain(format!("Meixner gamma {gamma} must be positive"));
        }
        if !c.is_positive() || c >= int(1) {
            return domain(format!("Meixner c {c} must lie in (0, 1)"));
        }
        Ok(Self { degree, gamma, c })
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn gamma(&self) -> &Rational {
        &self.gamma
    }

    pub fn c(&self) -> &Rational {
        &self.c
    }

    /// The `2F1` argument `1 - 1/c`.
    pub fn argument(&self) -> Rational {
        int(1) - self.c.recip()
    }
}

/// `M_n(x; gamma, c)` as an exact polynomial in `x`.
pub fn meixner_poly(spec: &MeixnerSpec) -> RationalPoly {
    let z = spec.argument();
    let n = spec.degree;
    let mut falling = RationalPoly::one(); // (-x)_j
    let mut out = RationalPoly::one();
    let mut scalar = Rational::one(); // (-n)_j z^j / ((gamma)_j j!)
    for j in 0..n {
        let jr = int(j as i64);
        falling = &falling * &RationalPoly::linear(jr.clone(), int(-1));
        scalar = scalar * (int(-(n as i64)) + &jr) * &z / ((&spec.gamma + &jr) * int(j as i64 + 1));
        out = &out + &falling.scale(&scalar);
    }
    out
}

/// `M_n(x; gamma, c)` for real `x`, summing the terminating series with
/// `(-x)_j` formed as a product.
pub fn meixner_eval(spec: &MeixnerSpec, x: f64) -> f64 {
    meixner_eval_f64(spec.degree, to_f64(&spec.gamma), to_f64(&spec.c), x)
}

/// Floating counterpart of [`meixner_eval`] with parameters already rounded.
pub fn meixner_eval_f64(n: usize, gamma: f64, c: f64, x: f64) -> f64 {
    let z = 1.0 - 1.0 / c;
    let nf = n as f64;
    let mut term = 1.0;
    let mut sum = 1.0;
    for j in 0..n {
        let jf = j as f64;
        term *= (jf - nf) * (jf - x) * z / ((gamma + jf) * (jf + 1.0));
        sum += term;
    }
    sum
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;

    fn spec(n: usize, a: Rational) -> LaguerreSpec {
        LaguerreSpec::new(n, a).unwrap()
    }

    fn alphas() -> Vec<Rational> {
        vec![int(0), rat(1, 2), int(1), int(2)]
    }

    /// Direct evaluation of the defining series, independent of the
    /// coefficient recursion used by `laguerre_coeffs`.
    fn series_oracle(n: usize, a: &Rational) -> RationalPoly {
        let a1 = a + int(1);
        let front = pochhammer(&a1, n) / factorial(n);
        RationalPoly::new(
            (0..=n)
                .map(|j| &front * pochhammer(&int(-(n as i64)), j) / (pochhammer(&a1, j) * factorial(j)))
                .collect(),
        )
    }

    #[test]
    fn laguerre_coefficient_examples() {
        assert_eq!(laguerre_coeffs(&spec(0, rat(3, 2))), RationalPoly::one());
        assert_eq!(laguerre_coeffs(&spec(1, int(0))), RationalPoly::from_ints(&[1, -1]));
        assert_eq!(
            laguerre_coeffs(&spec(2, int(0))),
            RationalPoly::new(vec![int(1), int(-2), rat(1, 2)])
        );
        for a in alphas() {
            for n in 0..12 {
                assert_eq!(laguerre_coeffs(&spec(n, a.clone())), series_oracle(n, &a));
            }
        }
        assert!(LaguerreSpec::new(2, int(-1)).is_err());
    }

    #[test]
    fn laguerre_eval_examples() {
        assert_eq!(laguerre_eval(2, 0.0, 0.0), 1.0);
        assert_eq!(laguerre_eval(1, 0.7, 1.7), 0.0);
        let exact = laguerre_coeffs(&spec(3, rat(1, 2))).eval(&int(1));
        assert!((laguerre_eval(3, 0.5, 1.0) - to_f64(&exact)).abs() < 1e-14);
    }

    #[test]
    fn laguerre_eval_matches_exact_grid() {
        for n in [0, 1, 5, 17, 33, 50] {
            for a in alphas() {
                let p = laguerre_coeffs(&spec(n, a.clone()));
                for x in [0, 3, 17, 60, 130, 200] {
                    let exact = to_f64(&p.eval(&int(x)));
                    let float = laguerre_eval(n, to_f64(&a), x as f64);
                    let scale = exact.abs().max(1e-300);
                    // near a root the relative error is meaningless; compare
                    // against the size of the largest term instead
                    let terms: f64 = p
                        .coeffs()
                        .iter()
                        .enumerate()
                        .map(|(j, c)| (to_f64(c) * (x as f64).powi(j as i32)).abs())
                        .fold(0.0, f64::max);
                    let err = (exact - float).abs();
                    assert!(
                        err <= 1e-12 * scale || err <= 1e-13 * terms,
                        "n={n} a={a} x={x}: {exact} vs {float}"
                    );
                }
            }
        }
    }

    #[test]
    fn ode_residual_vanishes() {
        assert!(ode_residual(&spec(0, int(0))).is_zero());
        assert!(ode_residual(&spec(1, int(0))).is_zero());
        assert!(ode_residual(&spec(5, rat(3, 2))).is_zero());
        for a in alphas() {
            for n in 0..=15 {
                assert!(ode_residual(&spec(n, a.clone())).is_zero(), "n={n} a={a}");
            }
        }
    }

    #[test]
    fn three_term_recurrence_exact() {
        for a in alphas() {
            for n in 1..=15usize {
                let lm = laguerre_coeffs(&spec(n - 1, a.clone()));
                let l = laguerre_coeffs(&spec(n, a.clone()));
                let lp = laguerre_coeffs(&spec(n + 1, a.clone()));
                let mid = RationalPoly::linear(&a + int(1 + 2 * n as i64), int(-1));
                let total = &(&lp.scale(&int(n as i64 + 1)) - &(&mid * &l)) + &lm.scale(&(int(n as i64) + &a));
                assert!(total.is_zero(), "n={n} a={a}");
            }
        }
    }

    #[test]
    fn contiguity_identity() {
        let (u, l) = contig_expand(&spec(1, int(0))).unwrap();
        assert_eq!(u, RationalPoly::from_ints(&[2, -1]));
        assert_eq!(l, RationalPoly::one());
        for a in [int(0), rat(1, 2), int(1)] {
            for n in 1..=10 {
                let (u, l) = contig_expand(&spec(n, a.clone())).unwrap();
                assert_eq!(&u - &l, laguerre_coeffs(&spec(n, a.clone())));
            }
        }
        assert!(contig_expand(&spec(0, int(0))).is_err());
    }

    #[test]
    fn rescale_identity() {
        let c = rescale_expand(4, &int(0), &int(1)).unwrap();
        assert_eq!(c, vec![int(0), int(0), int(0), int(0), int(1)]);
        let d = rat(3, 2);
        let b = rat(2, 7);
        let c = rescale_expand(1, &d, &b).unwrap();
        assert_eq!(c, vec![(&d + int(1)) * (int(1) - &b), b.clone()]);
        for d in [int(0), rat(3, 2)] {
            let b = rat(2, 3);
            for n in 0..=8 {
                let c = rescale_expand(n, &d, &b).unwrap();
                let recon = c.iter().enumerate().fold(RationalPoly::zero(), |acc, (j, cj)| {
                    &acc + &laguerre_coeffs(&spec(j, d.clone())).scale(cj)
                });
                let target = laguerre_coeffs(&spec(n, d.clone())).scale_arg(&b);
                assert_eq!(recon, target, "n={n} d={d}");
            }
        }
    }

    #[test]
    fn hyp2f1_examples() {
        assert_eq!(hyp2f1_terminating(0, &int(5), &int(3), &int(9)).unwrap(), int(1));
        let c = rat(7, 4);
        let z = rat(-2, 5);
        assert_eq!(hyp2f1_terminating(1, &int(-1), &c, &z).unwrap(), int(1) + &z / &c);
        assert_eq!(
            hyp2f1_terminating(2, &int(-1), &int(3), &rat(-7, 9)).unwrap(),
            rat(13, 27)
        );
        assert_eq!(
            hyp2f1_terminating(3, &int(2), &int(-1), &int(1)),
            Err(Error::LowerParameterPole { term: 2 })
        );
        // (b)_j vanishes before (c)_j does
        assert_eq!(
            hyp2f1_terminating(3, &int(-1), &int(-2), &int(1)).unwrap(),
            int(1) + int(-3) * int(-1) / int(-2)
        );
    }

    #[test]
    fn meixner_examples() {
        let m0 = MeixnerSpec::new(0, int(3), rat(1, 2)).unwrap();
        assert_eq!(meixner_poly(&m0), RationalPoly::one());
        let (g, c) = (rat(5, 2), rat(1, 3));
        let m1 = MeixnerSpec::new(1, g.clone(), c.clone()).unwrap();
        assert_eq!(
            meixner_poly(&m1),
            RationalPoly::linear(int(1), (int(1) - c.recip()) / g)
        );
        let m2 = MeixnerSpec::new(2, int(3), rat(9, 16)).unwrap();
        assert_eq!(meixner_poly(&m2).eval(&int(1)), rat(13, 27));
        assert!((meixner_eval(&m2, 1.0) - 13.0 / 27.0).abs() < 1e-15);
        assert!(MeixnerSpec::new(1, int(0), rat(1, 2)).is_err());
        assert!(MeixnerSpec::new(1, int(1), int(1)).is_err());
    }

    #[test]
    fn meixner_poly_matches_hyp2f1_at_integers() {
        let s = MeixnerSpec::new(6, rat(7, 2), rat(3, 5)).unwrap();
        let p = meixner_poly(&s);
        for x in 0..15i64 {
            let direct = hyp2f1_terminating(6, &int(-x), s.gamma(), &s.argument()).unwrap();
            assert_eq!(p.eval(&int(x)), direct);
        }
    }

    #[test]
    fn meixner_real_eval_matches_poly() {
        let s = MeixnerSpec::new(7, rat(10, 3), rat(4, 9)).unwrap();
        let p = meixner_poly(&s);
        for x in [0.3, 1.7, 4.25, 9.9, 22.0] {
            let a = meixner_eval(&s, x);
            let b = p.eval_f64(x);
            assert!((a - b).abs() <= 1e-12 * a.abs().max(1.0), "x={x}: {a} vs {b}");
        }
    }

    #[test]
    fn meixner_three_term_recurrence() {
        let x = RationalPoly::from_ints(&[0, 1]);
        for (g, c) in [(int(3), rat(1, 4)), (rat(7, 2), rat(4, 9)), (int(5), rat(9, 16))] {
            let m = |n: usize| meixner_poly(&MeixnerSpec::new(n, g.clone(), c.clone()).unwrap());
            for n in 1..=10usize {
                let nr = int(n as i64);
                let lhs = &x * &m(n);
                let a = &c * (&g + &nr) / (&c - int(1));
                let b = (&nr + (&nr + &g) * &c) / (int(1) - &c);
                let d = &nr / (&c - int(1));
                let rhs = &(&m(n + 1).scale(&a) + &m(n).scale(&b)) + &m(n - 1).scale(&d);
                assert_eq!(lhs, rhs, "n={n}");
            }
        }
    }

    #[test]
    fn meixner_difference_equation() {
        for (g, c) in [(int(3), rat(1, 4)), (rat(7, 2), rat(4, 9))] {
            for n in 0..=10usize {
                let p = meixner_poly(&MeixnerSpec::new(n, g.clone(), c.clone()).unwrap());
                for x in 0..=40i64 {
                    let xr = int(x);
                    let lhs = &c * (&xr + &g) * p.eval(&int(x + 1)) - (&xr + (&xr + &g) * &c) * p.eval(&xr)
                        + &xr * p.eval(&int(x - 1));
                    let rhs = int(n as i64) * (&c - int(1)) * p.eval(&xr);
                    assert_eq!(lhs, rhs, "n={n} x={x}");
                }
            }
        }
    }
}
