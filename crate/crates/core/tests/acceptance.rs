//! End-to-end acceptance: one PASS/FAIL line per criterion, all tolerances pinned.

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use strange_ortho::exact::{int, rat, resultant, to_f64, Rational};
use strange_ortho::meixner_basis::{
    h_orthogonality_sum, meixner_norm_closed, meixner_norm_sum, orthogonal_block, transform_entry, HFunction,
};
use strange_ortho::meixner_operator::{
    eigen_residual, first_zeros, h_infinity_eval, h_infinity_exact, limit_study, symmetry_residual, DiscreteFunction,
    ZERO_SCAN_STEP,
};
use strange_ortho::radial::{
    bsum_check, contiguity_combination, energy_level, orthogonality_beta, phi_inner_product,
    phi_inner_product_quadrature, phi_norm_closed, phi_rule_size, RadialMode,
};
use strange_ortho::uniqueness::{
    discriminant_check, kappa1_closed_form, kappa1_phi1_phin, kappa1_scaling_roots, q_polynomials,
};
use strange_ortho::Result;

const NORM_REL_TOL: f64 = 1e-10;
const GRAM_TOL: f64 = 1e-8;
const H_SUM_TOL: f64 = 1e-10;
const MEIXNER_NORM_TOL: f64 = 1e-12;
const SERIES_TOL: f64 = 1e-15;
const LIMIT_LAST_ERROR: f64 = 1e-3;
const ZERO_SCAN_XMAX: f64 = 30.0;

fn ortho_alphas() -> Vec<Rational> {
    vec![int(0), rat(1, 2), int(1), int(2), rat(7, 3)]
}

fn criterion_1() -> Result<bool> {
    let mut ok = true;
    for a in ortho_alphas() {
        for n in 1..=12 {
            for m in 0..n {
                ok &= phi_inner_product(m, n, &a)?.reduced.coefficient.is_zero();
            }
        }
        let af = to_f64(&a);
        for n in 0..=12 {
            let q = phi_inner_product_quadrature(n, n, af, phi_rule_size(n, n))?;
            let expect = phi_norm_closed(n, af);
            ok &= (q - expect).abs() <= NORM_REL_TOL * expect.abs();
        }
    }
    Ok(ok)
}

fn criterion_2() -> Result<bool> {
    let mut ok = true;
    for a in ortho_alphas() {
        for m in 1..=10 {
            for n in (1..=10).filter(|&n| n != m) {
                let b = bsum_check(m, n, &a)?;
                ok &= b.agree() && b.is_zero();
                let beta = orthogonality_beta(m, n, &a);
                let one_minus = int(1) - &beta;
                let g = &beta * (&beta - int(2)) / (&one_minus * &one_minus);
                ok &= contiguity_combination(m, n, &a, &g)?.is_zero();
            }
        }
    }
    Ok(ok)
}

fn criterion_3() -> Result<bool> {
    let mut ok = true;
    let kappas = [
        rat(-1, 3),
        int(0),
        rat(1, 4),
        rat(1, 2),
        int(1),
        rat(3, 2),
        int(2),
        int(3),
    ];
    for a in [int(0), rat(1, 2), int(1), int(2)] {
        for k in &kappas {
            let q = q_polynomials(&a, k)?;
            let vanishes = resultant(&q.q2, &q.q3)?.is_zero();
            ok &= vanishes == (k.is_zero() || *k == int(1));
            ok &= discriminant_check(&a, k)?.passes();
        }
        for n in 1..=10 {
            let r = kappa1_scaling_roots(n, &a)?;
            ok &= r.other_root == (&a + int(1)) / (&a + int(2 * n as i64 + 1));
            ok &= r.multiplicity_at_one == n - 1;
        }
        for n in 2..=10 {
            ok &= kappa1_phi1_phin(n, &a)?.passes();
        }
    }
    ok &= kappa1_closed_form(2, &int(0))? == int(-15);
    let c = kappa1_phi1_phin(2, &int(0))?;
    ok &= c.factor.is_some_and(|f| f > Rational::zero());
    Ok(ok)
}

fn criterion_4() -> Result<bool> {
    let e = transform_entry(1, 1, &int(0))?;
    let mut ok = e.prefactor.exact().map(|p| p * &e.closed) == Some(rat(27, 8));
    for a in [int(0), rat(1, 2), int(1)] {
        for n in 0..=8 {
            for m in 0..=8 {
                ok &= transform_entry(n, m, &a)?.consistent();
            }
        }
        ok &= orthogonal_block(&a, 6, 200)?.gram_deviation() < GRAM_TOL;
    }
    Ok(ok)
}

fn criterion_5() -> Result<bool> {
    let a = int(0);
    let first = h_orthogonality_sum(1, 1, &a, 1e-3 * H_SUM_TOL)?;
    let mut ok =
        (first.rhs - 256.0 / 27.0).abs() < 1e-14 && (first.sum.value - first.rhs).abs() <= H_SUM_TOL * first.rhs;
    for n in 1..=8 {
        for l in 1..=8 {
            let s = h_orthogonality_sum(n, l, &a, 1e-3 * H_SUM_TOL)?;
            ok &= if n == l {
                (s.sum.value - s.rhs).abs() <= H_SUM_TOL * s.rhs
            } else {
                s.sum.value.abs() < H_SUM_TOL
            };
        }
    }
    for (g, c) in [(int(3), rat(1, 4)), (rat(5, 2), rat(1, 2)), (int(1), rat(2, 3))] {
        for n in 0..=4 {
            for m in 0..=4 {
                let s = meixner_norm_sum(n, m, &g, &c, SERIES_TOL)?.value;
                ok &= if n == m {
                    let expect = meixner_norm_closed(n, &g, &c);
                    (s - expect).abs() <= MEIXNER_NORM_TOL * expect
                } else {
                    s.abs() <= MEIXNER_NORM_TOL
                };
            }
        }
    }
    Ok(ok)
}

fn criterion_6() -> Result<bool> {
    let mut ok = eigen_residual(1, &int(0), 60)?.eigenvalue == rat(1, 2);
    for a in [int(0), rat(1, 2), int(1), int(2)] {
        for n in 1..=10 {
            let e = eigen_residual(n, &a, 60)?;
            ok &= e.passes()
                && e.eigenvalue == (&a + int(1)) * (&a + int(1)) / (int(n as i64) * (&a + int(n as i64 + 1)));
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0xacce);
    let alpha = rat(1, 2);
    for _ in 0..100 {
        let mut random = || {
            let len = rng.gen_range(1..=21);
            DiscreteFunction::compact(
                (0..len)
                    .map(|_| rat(rng.gen_range(-50..=50), rng.gen_range(1..=12)))
                    .collect(),
            )
        };
        let (f, g) = (random(), random());
        ok &= symmetry_residual(&f, &g, &alpha)?.is_zero();
    }
    Ok(ok)
}

fn criterion_7() -> Result<bool> {
    let a0 = int(0);
    let mut ok = HFunction::new(a0.clone(), 1)?.eval_exact(1)? == rat(7, 9);
    ok &= HFunction::new(a0.clone(), 2)?.eval_exact(1)? == rat(13, 18);
    ok &= h_infinity_exact(&a0, 1)? == rat(2, 3);
    for a in [int(0), int(1)] {
        for x in [0.5, 1.0, 2.5] {
            let l = limit_study(&a, x, &[10, 50, 200], SERIES_TOL)?;
            ok &= l.strictly_decreasing() && l.final_error() < LIMIT_LAST_ERROR;
        }
    }
    let lim = first_zeros(
        |x| h_infinity_eval(&a0, x, SERIES_TOL).unwrap_or(f64::NAN),
        1,
        ZERO_SCAN_XMAX,
        ZERO_SCAN_STEP,
    )?[0];
    let mut dist = Vec::new();
    for n in [5usize, 20, 80] {
        let h = HFunction::new(a0.clone(), n)?;
        dist.push((first_zeros(|x| h.eval(x), 1, ZERO_SCAN_XMAX, ZERO_SCAN_STEP)?[0] - lim).abs());
    }
    ok &= dist.windows(2).all(|w| w[1] < w[0]);
    Ok(ok)
}

fn criterion_8() -> Result<bool> {
    let mut ok = true;
    for l in 0..=4u32 {
        for n in 0..=8u32 {
            let e = energy_level(&RadialMode::new(3, l, n, int(1))?);
            let d = int(4 * (n + l + 1) as i64);
            ok &= e == -(int(1) / (&d * &d));
        }
    }
    Ok(ok)
}

#[test]
fn acceptance() {
    let criteria: [(&str, fn() -> Result<bool>); 8] = [
        ("1 exact zeros m<n<=12, norms by quadrature", criterion_1),
        ("2 moment sum and contiguity agree", criterion_2),
        ("3 resultant, discriminant, kappa=1 roots", criterion_3),
        ("4 transform matrix and Gram block", criterion_4),
        ("5 h and Meixner orthogonality sums", criterion_5),
        ("6 difference operator eigen and symmetry", criterion_6),
        ("7 pointwise limit and zeros", criterion_7),
        ("8 Coulomb energy levels", criterion_8),
    ];
    let mut failed = Vec::new();
    for (name, f) in criteria {
        let pass = match f() {
            Ok(p) => p,
            Err(e) => {
                println!("  error: {e}");
                false
            }
        };
        println!("{} criterion {name}", if pass { "PASS" } else { "FAIL" });
        if !pass {
            failed.push(name);
        }
    }
    assert!(failed.is_empty(), "failed: {failed:?}");
}
