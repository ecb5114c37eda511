//! Per-method correlation analysis of reputations on a clean dataset.

use repute_core::metrics::{self, BinnedMean};
use repute_core::{Method, MethodConfig, RatingDataset};

use crate::files::Table;

pub const HEADER: [&str; 8] = ["method", "rho_delta", "rho_degree", "rho_phi", "simpson", "iterations", "converged", "final_change"];
pub const BINNED_HEADER: [&str; 5] = ["method", "indicator", "center", "mean_reputation", "count"];

/// The user indicators reputations are correlated against.
#[derive(Clone, Debug, PartialEq)]
pub struct Indicators {
    /// Mean absolute deviation from the plain object means.
    pub delta: Vec<f64>,
    pub degree: Vec<f64>,
    /// Mean degree of the rated objects.
    pub phi: Vec<f64>,
}

impl Indicators {
    pub fn of(dataset: &RatingDataset) -> Self {
        Indicators {
            delta: metrics::rating_error(dataset),
            degree: dataset.user_degrees().iter().map(|&k| k as f64).collect(),
            phi: metrics::trend_following(dataset),
        }
    }

    fn named(&self) -> [(&'static str, &[f64]); 3] {
        [("delta", &self.delta), ("degree", &self.degree), ("phi", &self.phi)]
    }
}

/// `None` marks an undefined statistic (zero variance and the like).
#[derive(Clone, Debug, PartialEq)]
pub struct CorrelationRow {
    pub method: Method,
    pub rho_delta: Option<f64>,
    pub rho_degree: Option<f64>,
    pub rho_phi: Option<f64>,
    pub simpson: Option<f64>,
    pub iterations: usize,
    pub converged: bool,
    pub final_change: Option<f64>,
    pub binned: Vec<(&'static str, BinnedMean)>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct MethodFailure {
    pub method: Method,
    pub message: String,
}

pub type Outcome = Result<CorrelationRow, MethodFailure>;

pub fn correlate_method(
    dataset: &RatingDataset,
    indicators: &Indicators,
    method: Method,
    config: &MethodConfig,
    bins: usize,
    bin_width: Option<f64>,
) -> Outcome {
    let fail = |e: repute_core::Error| MethodFailure { method, message: e.to_string() };
    let rep = method.rank(dataset, config).map_err(fail)?;
    let r = rep.values();
    let mut binned = Vec::new();
    if let Some(width) = bin_width {
        for (name, xs) in indicators.named() {
            // A constant indicator has no binned curve; skip it.
            if let Ok(rows) = metrics::binned_means(xs, r, width) {
                binned.extend(rows.into_iter().map(|b| (name, b)));
            }
        }
    }
    let simpson = match metrics::simpson_diversity(r, bins) {
        Ok(s) => Some(s),
        Err(repute_core::Error::InvalidBins(_)) => return Err(fail(repute_core::Error::InvalidBins(bins))),
        Err(_) => None,
    };
    Ok(CorrelationRow {
        method,
        rho_delta: metrics::pearson(&indicators.delta, r).ok(),
        rho_degree: metrics::pearson(&indicators.degree, r).ok(),
        rho_phi: metrics::pearson(&indicators.phi, r).ok(),
        simpson,
        iterations: rep.iterations,
        converged: rep.converged,
        final_change: rep.final_change,
        binned,
    })
}

pub fn correlate(dataset: &RatingDataset, methods: &[Method], config: &MethodConfig, bins: usize, bin_width: Option<f64>) -> Vec<Outcome> {
    let indicators = Indicators::of(dataset);
    methods
        .iter()
        .map(|&m| correlate_method(dataset, &indicators, m, config, bins, bin_width))
        .collect()
}

fn cell(v: Option<f64>) -> String {
    v.map_or_else(|| "undefined".into(), |x| x.to_string())
}

pub fn correlation_table(outcomes: &[Outcome]) -> Table {
    let mut table = Table::new(HEADER);
    for outcome in outcomes {
        match outcome {
            Ok(row) => table.push([
                row.method.name().to_string(),
                cell(row.rho_delta),
                cell(row.rho_degree),
                cell(row.rho_phi),
                cell(row.simpson),
                row.iterations.to_string(),
                row.converged.to_string(),
                cell(row.final_change),
            ]),
            Err(f) => {
                let msg = format!("error: {}", f.message);
                let mut cells = vec![f.method.name().to_string()];
                cells.extend(std::iter::repeat_n(msg, HEADER.len() - 1));
                table.push(cells);
            }
        }
    }
    table
}

pub fn binned_table(outcomes: &[Outcome]) -> Table {
    let mut table = Table::new(BINNED_HEADER);
    for row in outcomes.iter().flatten() {
        for (name, b) in &row.binned {
            table.push([
                row.method.name().to_string(),
                name.to_string(),
                b.center.to_string(),
                b.mean.to_string(),
                b.count.to_string(),
            ]);
        }
    }
    table
}
