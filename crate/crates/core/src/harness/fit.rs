//! Least-squares fit of mean deficit against a growth function of `n`.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use super::{ExperimentRecord, HarnessError};

/// Candidate growth laws; logarithms are base 2.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Scaling {
    SqrtNLogN,
    NThreeQuarters,
    LogSquared,
    Linear,
}

impl Scaling {
    pub fn eval(&self, n: usize) -> f64 {
        let x = n as f64;
        match self {
            Scaling::SqrtNLogN => x.sqrt() * x.log2(),
            Scaling::NThreeQuarters => x.powf(0.75),
            Scaling::LogSquared => x.log2().powi(2),
            Scaling::Linear => x,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Scaling::SqrtNLogN => "sqrt(n)*log2(n)",
            Scaling::NThreeQuarters => "n^0.75",
            Scaling::LogSquared => "log2(n)^2",
            Scaling::Linear => "n",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct FitRow {
    pub n: usize,
    pub runs: usize,
    pub mean: f64,
    pub min: usize,
    pub max: usize,
    pub predicted: f64,
    pub residual: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct DeficitFit {
    pub scaling: Scaling,
    /// `k` in `mean deficit ~ k * f(n)`.
    pub coefficient: f64,
    /// `1 - SS_res / SS_tot` over the per-`n` means.
    pub r_squared: f64,
    pub rows: Vec<FitRow>,
}

impl DeficitFit {
    pub fn to_csv(&self) -> String {
        let mut out = String::from("n,runs,mean_deficit,min_deficit,max_deficit,predicted,residual\n");
        for r in &self.rows {
            let _ = writeln!(
                out,
                "{},{},{:.4},{},{},{:.4},{:.4}",
                r.n, r.runs, r.mean, r.min, r.max, r.predicted, r.residual
            );
        }
        out
    }
}

/// Fits `k * f(n)` through the origin to the mean deficit per `n`, using
/// only valid records.
pub fn fit_deficit(records: &[ExperimentRecord], scaling: Scaling) -> Result<DeficitFit, HarnessError> {
    let mut groups: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for r in records.iter().filter(|r| r.valid) {
        if let Some(d) = r.deficit {
            groups.entry(r.n).or_default().push(d);
        }
    }
    if groups.len() < 3 {
        return Err(HarnessError::InsufficientData(groups.len()));
    }
    let points: Vec<(usize, f64, &Vec<usize>)> =
        groups.iter().map(|(&n, ds)| (n, ds.iter().sum::<usize>() as f64 / ds.len() as f64, ds)).collect();
    let (mut fy, mut ff) = (0.0, 0.0);
    for &(n, mean, _) in &points {
        let f = scaling.eval(n);
        fy += f * mean;
        ff += f * f;
    }
    let coefficient = fy / ff;
    let grand = points.iter().map(|p| p.1).sum::<f64>() / points.len() as f64;
    let (mut ss_res, mut ss_tot) = (0.0, 0.0);
    let rows = points
        .iter()
        .map(|&(n, mean, ds)| {
            let predicted = coefficient * scaling.eval(n);
            ss_res += (mean - predicted).powi(2);
            ss_tot += (mean - grand).powi(2);
            FitRow {
                n,
                runs: ds.len(),
                mean,
                min: *ds.iter().min().unwrap(),
                max: *ds.iter().max().unwrap(),
                predicted,
                residual: mean - predicted,
            }
        })
        .collect();
    let r_squared = if ss_tot > 0.0 { 1.0 - ss_res / ss_tot } else { f64::NAN };
    Ok(DeficitFit { scaling, coefficient, r_squared, rows })
}
