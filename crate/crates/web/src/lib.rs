//! WebAssembly bindings for the browser demo in `www/`.
//!
//! Every function takes `alpha` as a rational string such as `"1/2"`.
//! Curves come back as flat row-major arrays with one row per function.

use strange_ortho::exact::{parse_rational, Rational};
use strange_ortho::meixner_basis::{orthogonal_block, HFunction};
use strange_ortho::meixner_operator::{h_infinity_eval, limit_study};
use strange_ortho::radial::PhiFunction;
use wasm_bindgen::prelude::*;

const SERIES_TOL: f64 = 1e-15;
const MAX_SAMPLES: usize = 4096;
const MAX_BLOCK: usize = 400;

fn alpha_arg(alpha: &str) -> Result<Rational, String> {
    parse_rational(alpha.trim()).map_err(|e| e.to_string())
}

fn grid(x0: f64, x1: f64, samples: usize) -> Result<Vec<f64>, String> {
    if !(x0.is_finite() && x1.is_finite() && x0 < x1) {
        return Err(format!("bad range [{x0}, {x1}]"));
    }
    if !(2..=MAX_SAMPLES).contains(&samples) {
        return Err(format!("samples must lie in 2..={MAX_SAMPLES}"));
    }
    let dx = (x1 - x0) / (samples - 1) as f64;
    Ok((0..samples).map(|i| x0 + dx * i as f64).collect())
}

/// Sample points matching [`h_curves`] and [`phi_curves`].
#[wasm_bindgen]
pub fn sample_grid(x0: f64, x1: f64, samples: usize) -> Result<Vec<f64>, String> {
    grid(x0, x1, samples)
}

/// `h_n(x)` for each degree, followed by the limit `h_inf(x)` as the last row.
#[wasm_bindgen]
pub fn h_curves(alpha: &str, degrees: &[u32], x0: f64, x1: f64, samples: usize) -> Result<Vec<f64>, String> {
    let a = alpha_arg(alpha)?;
    let xs = grid(x0, x1, samples)?;
    let mut out = Vec::with_capacity(xs.len() * (degrees.len() + 1));
    for &n in degrees {
        let h = HFunction::new(a.clone(), n as usize).map_err(|e| e.to_string())?;
        out.extend(xs.iter().map(|&x| h.eval(x)));
    }
    for &x in &xs {
        out.push(h_infinity_eval(&a, x, SERIES_TOL).map_err(|e| e.to_string())?);
    }
    Ok(out)
}

/// `|h_n(x) - h_inf(x)|` for each degree.
#[wasm_bindgen]
pub fn limit_errors(alpha: &str, x: f64, degrees: &[u32]) -> Result<Vec<f64>, String> {
    let a = alpha_arg(alpha)?;
    let ns: Vec<usize> = degrees.iter().map(|&n| n as usize).collect();
    let study = limit_study(&a, x, &ns, SERIES_TOL).map_err(|e| e.to_string())?;
    Ok(study.rows.iter().map(|r| r.error).collect())
}

/// `phi_n(x) = L_n^alpha(x/(alpha+2n+1)) exp(-x/(2(alpha+2n+1)))` for each degree.
#[wasm_bindgen]
pub fn phi_curves(alpha: &str, degrees: &[u32], x0: f64, x1: f64, samples: usize) -> Result<Vec<f64>, String> {
    let a = alpha_arg(alpha)?;
    let xs = grid(x0, x1, samples)?;
    let mut out = Vec::with_capacity(xs.len() * degrees.len());
    for &n in degrees {
        let phi = PhiFunction::new(a.clone(), n as usize).map_err(|e| e.to_string())?;
        out.extend(xs.iter().map(|&x| phi.eval(x)));
    }
    Ok(out)
}

#[wasm_bindgen]
pub struct Transform {
    rows: usize,
    cols: usize,
    entries: Vec<f64>,
    gram_deviation: f64,
}

#[wasm_bindgen]
impl Transform {
    #[wasm_bindgen(getter)]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[wasm_bindgen(getter)]
    pub fn cols(&self) -> usize {
        self.cols
    }

    /// Normalized entries, row-major.
    #[wasm_bindgen(getter)]
    pub fn entries(&self) -> Vec<f64> {
        self.entries.clone()
    }

    /// Largest entry of `|G - Id|` for the row Gram matrix.
    #[wasm_bindgen(getter)]
    pub fn gram_deviation(&self) -> f64 {
        self.gram_deviation
    }
}

/// Rows `n = 0..=nmax`, columns `m = 0..=mmax` of the normalized transform.
#[wasm_bindgen]
pub fn transform_matrix(alpha: &str, nmax: usize, mmax: usize) -> Result<Transform, String> {
    let a = alpha_arg(alpha)?;
    if nmax > MAX_BLOCK || mmax > MAX_BLOCK {
        return Err(format!("nmax and mmax are limited to {MAX_BLOCK}"));
    }
    let block = orthogonal_block(&a, nmax, mmax).map_err(|e| e.to_string())?;
    Ok(Transform {
        rows: nmax + 1,
        cols: mmax + 1,
        gram_deviation: block.gram_deviation(),
        entries: block.entries.into_iter().flatten().collect(),
    })
}
