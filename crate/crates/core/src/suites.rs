//! Verification suites: each runs one module's invariants over a grid and
//! returns a [`VerificationReport`].

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::exact::{int, rat, resultant, to_f64, Rational};
use crate::inputs;
use crate::meixner_basis::{
    h_orthogonality_sum, illustration_overlap, meixner_norm_closed, meixner_norm_sum, orthogonal_block,
    recentering_coefficient, transform_entry, HFunction,
};
use crate::meixner_operator::{
    apply_d, decomposition_residual, eigen_residual, first_zeros, h_infinity_eval, limit_study, solve_difference,
    symmetry_residual, DiscreteFunction, SpectralSolution, ZERO_SCAN_STEP,
};
use crate::radial::{
    bsum_check, contiguity_combination, energy_level, orthogonality_beta, phi_inner_product,
    phi_inner_product_quadrature, phi_norm_closed, phi_rule_size, RadialMode,
};
use crate::report::{fmt_f64, Outcome, Recorder, VerificationReport};
use crate::uniqueness::{discriminant_check, kappa1_phi1_phin, kappa1_scaling_roots, q_polynomials, ScalingFamily};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    Ortho,
    Uniqueness,
    Basis,
    Operator,
    Limit,
    All,
}

impl Suite {
    pub const NAMES: [&'static str; 6] = ["ortho", "uniqueness", "basis", "operator", "limit", "all"];

    pub fn as_str(self) -> &'static str {
        match self {
            Suite::Ortho => "ortho",
            Suite::Uniqueness => "uniqueness",
            Suite::Basis => "basis",
            Suite::Operator => "operator",
            Suite::Limit => "limit",
            Suite::All => "all",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "ortho" => Suite::Ortho,
            "uniqueness" => Suite::Uniqueness,
            "basis" => Suite::Basis,
            "operator" => Suite::Operator,
            "limit" => Suite::Limit,
            "all" => Suite::All,
            _ => {
                return Err(Error::Domain(format!(
                    "unknown suite {s:?}; expected one of {}",
                    Suite::NAMES.join(", ")
                )))
            }
        })
    }
}

/// Overrides for a suite run; `None` keeps the suite's default.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct SuiteConfig {
    pub alphas: Option<Vec<Rational>>,
    pub kappas: Option<Vec<Rational>>,
    pub nmax: Option<usize>,
    pub mmax: Option<usize>,
    pub tol: Option<f64>,
    pub xmax: Option<f64>,
    /// Record per-check wall-clock time (breaks byte-for-byte determinism).
    pub timing: bool,
}

pub fn default_alphas() -> Vec<Rational> {
    vec![int(0), rat(1, 2), int(1), int(2), rat(7, 3)]
}

pub fn default_kappas() -> Vec<Rational> {
    vec![
        rat(-1, 3),
        int(0),
        rat(1, 4),
        rat(1, 2),
        int(1),
        rat(3, 2),
        int(2),
        int(3),
    ]
}

impl SuiteConfig {
    fn alphas_or(&self, default: Vec<Rational>) -> Vec<Rational> {
        self.alphas.clone().unwrap_or(default)
    }

    /// Rejects settings no suite could run with, so that they surface as
    /// configuration errors rather than failed checks.
    pub fn validate(&self, suite: Suite) -> Result<()> {
        let needs_nonnegative = matches!(suite, Suite::Basis | Suite::Operator | Suite::Limit | Suite::All);
        for a in self.alphas.iter().flatten() {
            if *a <= int(-1) || (needs_nonnegative && a.is_negative()) {
                let bound = if needs_nonnegative { "alpha >= 0" } else { "alpha > -1" };
                return Err(Error::Domain(format!("suite {suite} needs {bound}, got {a}")));
            }
        }
        if self.alphas.as_ref().is_some_and(Vec::is_empty) || self.kappas.as_ref().is_some_and(Vec::is_empty) {
            return Err(Error::Domain("grids must not be empty".into()));
        }
        if self.nmax == Some(0) || self.mmax == Some(0) {
            return Err(Error::Domain("nmax and mmax must be positive".into()));
        }
        if self.tol.is_some_and(|t| !(t > 0.0 && t.is_finite())) {
            return Err(Error::Domain("tol must be a positive number".into()));
        }
        if self.xmax.is_some_and(|x| !(x > 0.0 && x.is_finite())) {
            return Err(Error::Domain("xmax must be a positive number".into()));
        }
        Ok(())
    }

    fn describe(&self) -> BTreeMap<String, String> {
        let list = |v: &Vec<Rational>| v.iter().map(|r| r.to_string()).collect::<Vec<_>>().join(",");
        let mut m = BTreeMap::new();
        if let Some(a) = &self.alphas {
            m.insert("alpha".into(), list(a));
        }
        if let Some(k) = &self.kappas {
            m.insert("kappa_grid".into(), list(k));
        }
        if let Some(n) = self.nmax {
            m.insert("nmax".into(), n.to_string());
        }
        if let Some(n) = self.mmax {
            m.insert("mmax".into(), n.to_string());
        }
        if let Some(t) = self.tol {
            m.insert("tol".into(), fmt_f64(t));
        }
        if let Some(x) = self.xmax {
            m.insert("xmax".into(), fmt_f64(x));
        }
        m
    }
}

pub fn run_suite(suite: Suite, cfg: &SuiteConfig) -> VerificationReport {
    let mut rec = Recorder::new(cfg.timing);
    match suite {
        Suite::Ortho => ortho(&mut rec, cfg),
        Suite::Uniqueness => uniqueness(&mut rec, cfg),
        Suite::Basis => basis(&mut rec, cfg),
        Suite::Operator => operator(&mut rec, cfg),
        Suite::Limit => limit(&mut rec, cfg),
        Suite::All => {
            ortho(&mut rec, cfg);
            uniqueness(&mut rec, cfg);
            basis(&mut rec, cfg);
            operator(&mut rec, cfg);
            limit(&mut rec, cfg);
        }
    }
    VerificationReport::new(suite.as_str(), cfg.describe(), rec.into_checks())
}

fn ortho(rec: &mut Recorder, cfg: &SuiteConfig) {
    let alphas = cfg.alphas_or(default_alphas());
    let nmax = cfg.nmax.unwrap_or(12);
    let tol = cfg.tol.unwrap_or(1e-10);
    let pipeline_max = nmax.min(10);
    for a in &alphas {
        for n in 1..=nmax {
            for m in 0..n {
                rec.check("ortho.exact_zero", inputs!("alpha" => a, "m" => m, "n" => n), || {
                    let p = phi_inner_product(m, n, a)?;
                    Ok(Outcome::equal(&Rational::zero(), &p.reduced.coefficient))
                });
            }
        }
        let af = to_f64(a);
        for n in 0..=nmax {
            rec.check("ortho.norm_quadrature", inputs!("alpha" => a, "n" => n), || {
                let q = phi_inner_product_quadrature(n, n, af, phi_rule_size(n, n))?;
                Ok(Outcome::relative(phi_norm_closed(n, af), q, tol))
            });
        }
        for m in 1..=pipeline_max {
            for n in 1..=pipeline_max {
                if m == n {
                    continue;
                }
                rec.check(
                    "ortho.bsum_closed_form",
                    inputs!("alpha" => a, "m" => m, "n" => n),
                    || {
                        let c = bsum_check(m, n, a)?;
                        Ok(Outcome::exact(&c.closed_form, &c.direct, c.agree() && c.is_zero()))
                    },
                );
                rec.check("ortho.contiguity", inputs!("alpha" => a, "m" => m, "n" => n), || {
                    let beta = orthogonality_beta(m, n, a);
                    let one_minus = int(1) - &beta;
                    let g = &beta * (&beta - int(2)) / (&one_minus * &one_minus);
                    let v = contiguity_combination(m, n, a, &g)?;
                    Ok(Outcome::equal(&Rational::zero(), &v))
                });
            }
        }
    }
    for n in 0..=5u32 {
        for l in 0..=2u32 {
            rec.check(
                "ortho.energy_level",
                inputs!("N" => 3, "k" => 1, "l" => l, "n" => n),
                || {
                    let e = energy_level(&RadialMode::new(3, l, n, int(1))?);
                    let d = int(4 * (n + l + 1) as i64);
                    Ok(Outcome::equal(&-(int(1) / (&d * &d)), &e))
                },
            );
        }
    }
}

fn uniqueness(rec: &mut Recorder, cfg: &SuiteConfig) {
    let alphas = cfg.alphas_or(default_alphas());
    let kappas = cfg.kappas.clone().unwrap_or_else(default_kappas);
    let nmax = cfg.nmax.unwrap_or(10);
    for a in &alphas {
        for k in &kappas {
            if a + k + int(1) <= int(0) {
                continue;
            }
            let expect_zero = k.is_zero() || *k == int(1);
            rec.check("uniqueness.resultant", inputs!("alpha" => a, "kappa" => k), || {
                let q = q_polynomials(a, k)?;
                let r = resultant(&q.q2, &q.q3)?;
                let expected = if expect_zero { "0" } else { "nonzero" };
                Ok(Outcome::exact(expected, &r, r.is_zero() == expect_zero))
            });
            rec.check("uniqueness.discriminant", inputs!("alpha" => a, "kappa" => k), || {
                let d = discriminant_check(a, k)?;
                let ratio = d.ratio.as_ref().map_or("undefined".to_string(), |r| r.to_string());
                Ok(Outcome::exact(
                    format!("sign of {} with square ratio", d.closed_form),
                    format!("{} (ratio {ratio})", d.computed),
                    d.passes(),
                ))
            });
        }
        for n in 1..=nmax {
            rec.check("uniqueness.kappa1_roots", inputs!("alpha" => a, "n" => n), || {
                let r = kappa1_scaling_roots(n, a)?;
                let expect = (a + int(1)) / (a + int(2 * n as i64 + 1));
                Ok(Outcome::exact(
                    format!("{expect} and 1^{}", n - 1),
                    format!("{} and 1^{}", r.other_root, r.multiplicity_at_one),
                    r.other_root == expect && r.multiplicity_at_one == n - 1,
                ))
            });
        }
        for n in 2..=nmax {
            rec.check("uniqueness.kappa1_phi1_phin", inputs!("alpha" => a, "n" => n), || {
                let c = kappa1_phi1_phin(n, a)?;
                let factor = c.factor.as_ref().map_or("undefined".to_string(), |f| f.to_string());
                Ok(Outcome::exact(
                    format!("{} / positive factor", c.closed_form),
                    format!("{} (factor {factor})", c.inner.reduced.coefficient),
                    c.passes(),
                ))
            });
        }
        rec.check("uniqueness.kappa0_family", inputs!("alpha" => a, "nmax" => 8), || {
            let fam = ScalingFamily::constant(a.clone(), 9)?;
            let mut nonzero = 0;
            for m in 0..=8 {
                for n in 0..=8 {
                    if m != n && !fam.inner(m, n)?.reduced.is_zero() {
                        nonzero += 1;
                    }
                }
            }
            Ok(Outcome::exact(0, nonzero, nonzero == 0))
        });
    }
}

fn basis(rec: &mut Recorder, cfg: &SuiteConfig) {
    let alphas = cfg.alphas_or(vec![int(0), rat(1, 2), int(1)]);
    let nmax = cfg.nmax.unwrap_or(8);
    let mmax = cfg.mmax.unwrap_or(200);
    let tol = cfg.tol.unwrap_or(1e-10);
    rec.check("basis.transform_1_1", inputs!("alpha" => 0, "m" => 1, "n" => 1), || {
        let e = transform_entry(1, 1, &int(0))?;
        let value = e.prefactor.exact().map(|p| p * &e.closed).unwrap_or_default();
        Ok(Outcome::equal(&rat(27, 8), &value))
    });
    for a in &alphas {
        for n in 0..=nmax {
            for m in 0..=nmax {
                rec.check(
                    "basis.transform_identity",
                    inputs!("alpha" => a, "m" => m, "n" => n),
                    || {
                        let e = transform_entry(n, m, a)?;
                        Ok(Outcome::exact(&e.closed, &e.direct, e.consistent()))
                    },
                );
                if n.max(m) <= 8 {
                    rec.check(
                        "basis.overlap_closed_form",
                        inputs!("alpha" => a, "beta" => "1/3", "m" => m, "n" => n),
                        || {
                            let o = illustration_overlap(n, m, a, &rat(1, 3))?;
                            Ok(Outcome::equal(&o.closed, &o.direct))
                        },
                    );
                }
            }
        }
        let block_n = nmax.min(6);
        rec.check(
            "basis.gram_deviation",
            inputs!("alpha" => a, "mmax" => mmax, "nmax" => block_n),
            || {
                let b = orthogonal_block(a, block_n, mmax)?;
                Ok(Outcome::absolute(0.0, b.gram_deviation(), 1e-8))
            },
        );
        for n in 1..=nmax {
            rec.check("basis.recentering", inputs!("alpha" => a, "n" => n), || {
                let r = recentering_coefficient(n, a)?;
                Ok(Outcome::exact(
                    &r.closed,
                    format!("{} / {}", r.recurrence, r.expansion),
                    r.agree(),
                ))
            });
        }
        for n in 1..=nmax {
            for l in 1..=nmax {
                rec.check(
                    "basis.h_orthogonality",
                    inputs!("alpha" => a, "l" => l, "n" => n),
                    || {
                        let s = h_orthogonality_sum(n, l, a, 1e-3 * tol)?;
                        Ok(if n == l {
                            Outcome::relative(s.rhs, s.sum.value, tol)
                        } else {
                            Outcome::absolute(0.0, s.sum.value, tol)
                        })
                    },
                );
            }
        }
    }
    for (g, c) in [(int(3), rat(1, 4)), (rat(5, 2), rat(1, 2)), (int(1), rat(2, 3))] {
        for n in 0..=4 {
            for m in 0..=4 {
                rec.check(
                    "basis.meixner_norm",
                    inputs!("c" => &c, "gamma" => &g, "m" => m, "n" => n),
                    || {
                        let s = meixner_norm_sum(n, m, &g, &c, 1e-15)?;
                        Ok(if n == m {
                            Outcome::relative(meixner_norm_closed(n, &g, &c), s.value, 1e-12)
                        } else {
                            Outcome::absolute(0.0, s.value, 1e-12)
                        })
                    },
                );
            }
        }
    }
}

fn operator(rec: &mut Recorder, cfg: &SuiteConfig) {
    let alphas = cfg.alphas_or(vec![int(0), rat(1, 2), int(1), int(2)]);
    let nmax = cfg.nmax.unwrap_or(10);
    let xmax = cfg.xmax.map_or(60, |x| x.max(1.0) as usize);
    for a in &alphas {
        for n in 1..=nmax {
            rec.check(
                "operator.eigen",
                inputs!("alpha" => a, "n" => n, "xmax" => xmax),
                || {
                    let e = eigen_residual(n, a, xmax)?;
                    Ok(Outcome::exact(
                        format!("residual 0, eigenvalue {}", e.closed),
                        format!("residual {}, eigenvalue {}", e.residual, e.eigenvalue),
                        e.passes(),
                    ))
                },
            );
            rec.check("operator.solve_matches_h", inputs!("alpha" => a, "n" => n), || {
                let s = SpectralSolution::new(int(n as i64 - 1), a.clone())?;
                let f = solve_difference(&s.lambda, a, 30);
                let h = HFunction::new(a.clone(), n - 1)?;
                let mut mismatches = 0;
                for (x, v) in f.values().iter().enumerate() {
                    if *v != h.eval_exact(x as i64)? {
                        mismatches += 1;
                    }
                }
                Ok(Outcome::exact(0, mismatches, mismatches == 0))
            });
        }
        for g in [rat(-1, 2), rat(1, 2), rat(7, 3)] {
            rec.check(
                "operator.series_solves",
                inputs!("alpha" => a, "gamma" => &g, "xmax" => 40),
                || {
                    let s = SpectralSolution::new(g.clone(), a.clone())?;
                    let f = DiscreteFunction::new((0..=41).map(|x| s.eval_exact(x)).collect());
                    let reference = solve_difference(&s.lambda, a, 41);
                    let mut worst = Rational::zero();
                    for x in 0..=40 {
                        let r = apply_d(&f, a, x)? + &s.lambda * &f.values()[x as usize];
                        worst = std::cmp::max(worst, r.abs());
                    }
                    let pass = worst.is_zero() && f == reference && s.quadratic_residual().is_zero();
                    Ok(Outcome::exact(0, &worst, pass))
                },
            );
        }
        rec.check("operator.decomposition", inputs!("alpha" => a), || {
            let f = DiscreteFunction::from_fn(20, |x| rat(3 * (x * x) as i64 - 7, 2 * x as i64 + 1));
            let mut worst = Rational::zero();
            for x in 0..20 {
                worst = std::cmp::max(worst, decomposition_residual(&f, a, x)?.abs());
            }
            Ok(Outcome::equal(&Rational::zero(), &worst))
        });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let alpha = rat(1, 2);
    for i in 0..100 {
        let mut random = || {
            let len = rng.gen_range(1..=21);
            DiscreteFunction::compact(
                (0..len)
                    .map(|_| rat(rng.gen_range(-50..=50), rng.gen_range(1..=12)))
                    .collect(),
            )
        };
        let (f1, f2) = (random(), random());
        rec.check("operator.symmetry", inputs!("alpha" => &alpha, "pair" => i), || {
            Ok(Outcome::equal(&Rational::zero(), &symmetry_residual(&f1, &f2, &alpha)?))
        });
    }
}

/// Largest error allowed at the last degree of a limit study.
pub const LIMIT_THRESHOLD: f64 = 1e-3;

fn limit(rec: &mut Recorder, cfg: &SuiteConfig) {
    let alphas = cfg.alphas_or(vec![int(0), int(1)]);
    let tol = cfg.tol.unwrap_or(1e-14);
    let xmax = cfg.xmax.unwrap_or(30.0);
    let ns = [10usize, 50, 200];
    for (n, expect) in [(1usize, rat(7, 9)), (2, rat(13, 18))] {
        rec.check("limit.hand_value", inputs!("alpha" => 0, "n" => n, "x" => 1), || {
            Ok(Outcome::equal(&expect, &HFunction::new(int(0), n)?.eval_exact(1)?))
        });
    }
    rec.check(
        "limit.hand_value",
        inputs!("alpha" => 0, "n" => "inf", "x" => 1),
        || {
            Ok(Outcome::equal(
                &rat(2, 3),
                &crate::meixner_operator::h_infinity_exact(&int(0), 1)?,
            ))
        },
    );
    for a in &alphas {
        for x in [0.5, 1.0, 2.5] {
            rec.check(
                "limit.decreasing",
                inputs!("alpha" => a, "n" => "10,50,200", "x" => x),
                || {
                    let l = limit_study(a, x, &ns, tol)?;
                    let errs: Vec<String> = l.rows.iter().map(|r| fmt_f64(r.error)).collect();
                    Ok(Outcome::property(
                        format!("strictly decreasing, last < {}", fmt_f64(LIMIT_THRESHOLD)),
                        errs.join(" > "),
                        l.strictly_decreasing() && l.final_error() < LIMIT_THRESHOLD,
                    ))
                },
            );
        }
    }
    rec.check(
        "limit.first_zero",
        inputs!("alpha" => 0, "n" => "5,20,80", "xmax" => xmax),
        || {
            let a = int(0);
            let lim = first_zeros(
                |x| h_infinity_eval(&a, x, tol).unwrap_or(f64::NAN),
                1,
                xmax,
                ZERO_SCAN_STEP,
            )?[0];
            let mut dist = Vec::new();
            for n in [5usize, 20, 80] {
                let h = HFunction::new(a.clone(), n)?;
                dist.push((first_zeros(|x| h.eval(x), 1, xmax, ZERO_SCAN_STEP)?[0] - lim).abs());
            }
            let text: Vec<String> = dist.iter().map(|d| fmt_f64(*d)).collect();
            Ok(Outcome::property(
                "strictly decreasing",
                text.join(" > "),
                dist.windows(2).all(|w| w[1] < w[0]),
            ))
        },
    );
}
