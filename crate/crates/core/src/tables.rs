//! Data tables for plotting and inspection. Floats carry 17 significant
//! digits; exact columns hold rationals as `p/q`.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::{int, to_f64, Rational};
use crate::meixner_basis::{orthogonal_block, HFunction};
use crate::meixner_operator::{first_zeros, h_infinity_eval, limit_study, ZERO_SCAN_STEP};
use crate::radial::{energy_level, RadialMode};
use crate::report::fmt_f64;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TableKind {
    TransformMatrix,
    EnergyLevels,
    HValues,
    Zeros,
    LimitErrors,
}

impl TableKind {
    pub const NAMES: [&'static str; 5] = ["transform-matrix", "energy-levels", "h-values", "zeros", "limit-errors"];

    pub fn as_str(self) -> &'static str {
        match self {
            TableKind::TransformMatrix => "transform-matrix",
            TableKind::EnergyLevels => "energy-levels",
            TableKind::HValues => "h-values",
            TableKind::Zeros => "zeros",
            TableKind::LimitErrors => "limit-errors",
        }
    }
}

impl fmt::Display for TableKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for TableKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        TableKind::NAMES
            .iter()
            .zip([
                TableKind::TransformMatrix,
                TableKind::EnergyLevels,
                TableKind::HValues,
                TableKind::Zeros,
                TableKind::LimitErrors,
            ])
            .find(|(n, _)| **n == s)
            .map(|(_, k)| k)
            .ok_or_else(|| {
                Error::Domain(format!(
                    "unknown table {s:?}; expected one of {}",
                    TableKind::NAMES.join(", ")
                ))
            })
    }
}

/// Overrides for table generation; `None` keeps the per-table default.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct TableConfig {
    pub alpha: Option<Rational>,
    pub nmax: Option<usize>,
    pub mmax: Option<usize>,
    pub xmax: Option<f64>,
    pub dim: Option<u32>,
    pub coupling: Option<Rational>,
    pub lmax: Option<u32>,
    pub degrees: Option<Vec<usize>>,
    pub points: Option<Vec<f64>>,
    pub count: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Table {
    pub kind: String,
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

pub fn emit_table(kind: TableKind, cfg: &TableConfig) -> Result<Table> {
    let alpha = cfg.alpha.clone().unwrap_or_else(|| int(0));
    let (header, rows) = match kind {
        TableKind::TransformMatrix => transform_matrix(&alpha, cfg)?,
        TableKind::EnergyLevels => energy_levels(cfg)?,
        TableKind::HValues => h_values(&alpha, cfg)?,
        TableKind::Zeros => zeros(&alpha, cfg)?,
        TableKind::LimitErrors => limit_errors(&alpha, cfg)?,
    };
    Ok(Table {
        kind: kind.as_str().into(),
        header: header.into_iter().map(String::from).collect(),
        rows,
    })
}

type Rows = (Vec<String>, Vec<Vec<String>>);

fn transform_matrix(alpha: &Rational, cfg: &TableConfig) -> Result<Rows> {
    let (nmax, mmax) = (cfg.nmax.unwrap_or(4), cfg.mmax.unwrap_or(12));
    let block = orthogonal_block(alpha, nmax, mmax)?;
    let mut header = vec!["n".to_string()];
    header.extend((0..=mmax).map(|m| format!("m{m}")));
    let rows = block
        .entries
        .iter()
        .enumerate()
        .map(|(n, row)| {
            let mut r = vec![n.to_string()];
            r.extend(row.iter().map(|v| fmt_f64(*v)));
            r
        })
        .collect();
    Ok((header, rows))
}

fn energy_levels(cfg: &TableConfig) -> Result<Rows> {
    let dim = cfg.dim.unwrap_or(3);
    let k = cfg.coupling.clone().unwrap_or_else(|| int(1));
    let (nmax, lmax) = (cfg.nmax.unwrap_or(5), cfg.lmax.unwrap_or(2));
    let header = ["N", "l", "n", "k", "alpha", "energy", "energy_float"]
        .map(String::from)
        .to_vec();
    let mut rows = Vec::new();
    for l in 0..=lmax {
        for n in 0..=nmax as u32 {
            let mode = RadialMode::new(dim, l, n, k.clone())?;
            let e = energy_level(&mode);
            rows.push(vec![
                dim.to_string(),
                l.to_string(),
                n.to_string(),
                k.to_string(),
                mode.alpha().to_string(),
                e.to_string(),
                fmt_f64(to_f64(&e)),
            ]);
        }
    }
    Ok((header, rows))
}

fn h_values(alpha: &Rational, cfg: &TableConfig) -> Result<Rows> {
    let degrees = cfg.degrees.clone().unwrap_or_else(|| vec![1, 2]);
    let xs = cfg.points.clone().unwrap_or_else(|| {
        let xmax = cfg.xmax.unwrap_or(10.0);
        (0..)
            .map(|i| -1.0 + 0.25 * i as f64)
            .take_while(|x| *x <= xmax + 1e-12)
            .collect()
    });
    let hs = degrees
        .iter()
        .map(|&n| HFunction::new(alpha.clone(), n))
        .collect::<Result<Vec<_>>>()?;
    let mut header = vec!["x".to_string()];
    header.extend(degrees.iter().map(|n| format!("h_{n}")));
    header.push("h_inf".into());
    let rows = xs
        .iter()
        .map(|&x| {
            let mut r = vec![fmt_f64(x)];
            r.extend(hs.iter().map(|h| fmt_f64(h.eval(x))));
            r.push(fmt_f64(h_infinity_eval(alpha, x, 1e-15)?));
            Ok(r)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok((header, rows))
}

fn zeros(alpha: &Rational, cfg: &TableConfig) -> Result<Rows> {
    let degrees = cfg.degrees.clone().unwrap_or_else(|| vec![5, 20, 80]);
    let count = cfg.count.unwrap_or(3);
    let xmax = cfg.xmax.unwrap_or(30.0);
    let header = ["n", "index", "zero"].map(String::from).to_vec();
    let mut rows = Vec::new();
    for &n in &degrees {
        let h = HFunction::new(alpha.clone(), n)?;
        for (i, z) in first_zeros(|x| h.eval(x), count, xmax, ZERO_SCAN_STEP)?
            .into_iter()
            .enumerate()
        {
            rows.push(vec![n.to_string(), (i + 1).to_string(), fmt_f64(z)]);
        }
    }
    let lim = first_zeros(
        |x| h_infinity_eval(alpha, x, 1e-15).unwrap_or(f64::NAN),
        count,
        xmax,
        ZERO_SCAN_STEP,
    )?;
    for (i, z) in lim.into_iter().enumerate() {
        rows.push(vec!["inf".into(), (i + 1).to_string(), fmt_f64(z)]);
    }
    Ok((header, rows))
}

fn limit_errors(alpha: &Rational, cfg: &TableConfig) -> Result<Rows> {
    let degrees = cfg.degrees.clone().unwrap_or_else(|| vec![10, 50, 200]);
    let xs = cfg.points.clone().unwrap_or_else(|| vec![0.5, 1.0, 2.5]);
    let header = ["x", "n", "h_n", "h_inf", "error"].map(String::from).to_vec();
    let mut rows = Vec::new();
    for &x in &xs {
        let study = limit_study(alpha, x, &degrees, 1e-15)?;
        for r in &study.rows {
            rows.push(vec![
                fmt_f64(x),
                r.n.to_string(),
                fmt_f64(r.value),
                fmt_f64(study.limit),
                fmt_f64(r.error),
            ]);
        }
    }
    Ok((header, rows))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{parse_rational, rat};

    #[test]
    fn kinds_round_trip() {
        for name in TableKind::NAMES {
            assert_eq!(name.parse::<TableKind>().unwrap().as_str(), name);
        }
        assert!("nope".parse::<TableKind>().is_err());
    }

    #[test]
    fn transform_matrix_shape() {
        let t = emit_table(TableKind::TransformMatrix, &TableConfig::default()).unwrap();
        assert_eq!(t.header.len(), 14);
        assert_eq!(t.rows.len(), 5);
        assert!(t.rows.iter().all(|r| r.len() == 14));
    }

    #[test]
    fn energy_levels_match_closed_form() {
        let t = emit_table(TableKind::EnergyLevels, &TableConfig::default()).unwrap();
        assert_eq!(t.rows.len(), 18);
        for r in &t.rows {
            let (l, n): (i64, i64) = (r[1].parse().unwrap(), r[2].parse().unwrap());
            let d = 4 * (n + l + 1);
            assert_eq!(parse_rational(&r[5]).unwrap(), -rat(1, d * d));
        }
    }

    #[test]
    fn h_values_and_zeros() {
        let cfg = TableConfig {
            points: Some(vec![-1.0, 0.0, 1.0]),
            ..Default::default()
        };
        let t = emit_table(TableKind::HValues, &cfg).unwrap();
        assert_eq!(t.header, ["x", "h_1", "h_2", "h_inf"]);
        assert_eq!(t.rows[1][1..], [fmt_f64(1.0), fmt_f64(1.0), fmt_f64(1.0)]);
        let t = emit_table(
            TableKind::Zeros,
            &TableConfig {
                count: Some(1),
                ..Default::default()
            },
        )
        .unwrap();
        assert_eq!(t.rows.len(), 4);
        let t = emit_table(TableKind::LimitErrors, &TableConfig::default()).unwrap();
        assert_eq!(t.rows.len(), 9);
    }
}
