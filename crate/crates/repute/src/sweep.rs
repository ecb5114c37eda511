//! Repeated-realization spam experiments.
//!
//! Each (p, realization) cell injects spammers with its own derived seed,
//! then ranks the attacked dataset with every requested method and records
//! recall at `L = d`, exact AUC and convergence bookkeeping. Cells are
//! independent, so they may run in parallel; results are always reported in
//! (method, p, realization) order.

use rayon::prelude::*;
use repute_core::metrics::{self, DegreeSubgroups, Subgroup};
use repute_core::seed::realization_seed;
use repute_core::stats::mean_sd;
use repute_core::{inject, Method, MethodConfig, RatingDataset, SpamKind, SpamSpec};

use crate::error::{ReputeError, Result};
use crate::files::Table;

pub const HEADER: [&str; 6] = ["method", "attack", "p", "realization", "metric", "value"];

#[derive(Clone, Debug, PartialEq)]
pub struct SweepSettings {
    pub methods: Vec<Method>,
    pub attack: SpamKind,
    pub ratios: Vec<f64>,
    pub realizations: usize,
    pub seed: u64,
    pub config: MethodConfig,
    /// Also report AUC within the Low/Mid/High degree subgroups.
    pub subgroups: bool,
}

impl SweepSettings {
    pub fn validate(&self) -> Result<()> {
        if self.methods.is_empty() {
            return Err(ReputeError::Usage("at least one method is required".into()));
        }
        if self.ratios.is_empty() {
            return Err(ReputeError::Usage("at least one p value is required".into()));
        }
        if let Some(p) = self.ratios.iter().find(|p| !(**p > 0.0 && **p < 1.0)) {
            return Err(ReputeError::Usage(format!("p = {p} must lie strictly between 0 and 1")));
        }
        if self.realizations == 0 {
            return Err(ReputeError::Usage("realizations must be at least 1".into()));
        }
        self.config.validate()?;
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Cell {
    Value(f64),
    Undefined,
    Failed(String),
}

impl Cell {
    pub fn value(&self) -> Option<f64> {
        match self {
            Cell::Value(v) => Some(*v),
            _ => None,
        }
    }

    fn render(&self) -> String {
        match self {
            Cell::Value(v) => v.to_string(),
            Cell::Undefined => "undefined".into(),
            Cell::Failed(msg) => msg.clone(),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Observation {
    pub method: Method,
    pub p: f64,
    pub realization: usize,
    pub metric: &'static str,
    pub cell: Cell,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SweepReport {
    pub attack: SpamKind,
    pub observations: Vec<Observation>,
}

impl SweepReport {
    pub fn failures(&self) -> usize {
        self.observations.iter().filter(|o| matches!(o.cell, Cell::Failed(_))).count()
    }

    pub fn unconverged(&self) -> usize {
        self.observations
            .iter()
            .filter(|o| o.metric == "converged" && o.cell == Cell::Value(0.0))
            .count()
    }

    pub fn values(&self, method: Method, p: f64, metric: &str) -> Vec<f64> {
        self.observations
            .iter()
            .filter(|o| o.method == method && o.p == p && o.metric == metric)
            .filter_map(|o| o.cell.value())
            .collect()
    }

    /// Mean and population standard deviation over the defined realizations.
    pub fn summary(&self, method: Method, p: f64, metric: &str) -> Option<(f64, f64)> {
        let v = self.values(method, p, metric);
        (!v.is_empty()).then(|| mean_sd(&v))
    }

    /// Per-realization rows followed, for each (method, p), by one
    /// `summary` row per metric whose value reads `mean+-sd`.
    pub fn table(&self) -> Table {
        let mut table = Table::new(HEADER);
        let attack = self.attack.name();
        let mut start = 0;
        while start < self.observations.len() {
            let (method, p) = (self.observations[start].method, self.observations[start].p);
            let end = self.observations[start..]
                .iter()
                .position(|o| o.method != method || o.p != p)
                .map_or(self.observations.len(), |k| start + k);
            let block = &self.observations[start..end];
            let mut metric_order: Vec<&'static str> = Vec::new();
            for o in block {
                table.push([
                    method.name().to_string(),
                    attack.to_string(),
                    p.to_string(),
                    o.realization.to_string(),
                    o.metric.to_string(),
                    o.cell.render(),
                ]);
                if o.metric != "error" && !metric_order.contains(&o.metric) {
                    metric_order.push(o.metric);
                }
            }
            for metric in metric_order {
                let value = match self.summary(method, p, metric) {
                    Some((mean, sd)) => format!("{mean}+-{sd}"),
                    None => "undefined".into(),
                };
                table.push([
                    method.name().to_string(),
                    attack.to_string(),
                    p.to_string(),
                    "summary".to_string(),
                    metric.to_string(),
                    value,
                ]);
            }
            start = end;
        }
        table
    }
}

type CellResult = Vec<(Method, Vec<(&'static str, Cell)>)>;

fn run_cell(dataset: &RatingDataset, settings: &SweepSettings, groups: Option<&DegreeSubgroups>, p: f64, realization: usize) -> CellResult {
    let seed = realization_seed(settings.seed, p, realization as u64);
    let experiment = SpamSpec::new(settings.attack, p, seed).and_then(|spec| inject(dataset, spec));
    let experiment = match experiment {
        Ok(x) => x,
        Err(e) => {
            let msg = format!("error: {e}");
            return settings
                .methods
                .iter()
                .map(|&m| (m, vec![("error", Cell::Failed(msg.clone()))]))
                .collect();
        }
    };
    let mask = experiment.mask();
    settings
        .methods
        .iter()
        .map(|&method| {
            let outcome = method.rank(&experiment.attacked, &settings.config).and_then(|rep| {
                let eval = metrics::evaluate(rep.values(), &mask)?;
                let mut cells = vec![
                    ("recall", Cell::Value(eval.recall)),
                    ("auc", Cell::Value(eval.auc)),
                    ("iterations", Cell::Value(rep.iterations as f64)),
                    ("converged", Cell::Value(if rep.converged { 1.0 } else { 0.0 })),
                ];
                if settings.subgroups {
                    let per_group = match groups {
                        Some(g) => Some(metrics::subgroup_auc(rep.values(), &mask, g)?),
                        None => None,
                    };
                    for group in Subgroup::ALL {
                        let cell = per_group
                            .and_then(|s| s.get(group))
                            .map_or(Cell::Undefined, Cell::Value);
                        cells.push((subgroup_metric(group), cell));
                    }
                }
                Ok(cells)
            });
            match outcome {
                Ok(cells) => (method, cells),
                Err(e) => (method, vec![("error", Cell::Failed(format!("error: {e}")))]),
            }
        })
        .collect()
}

fn subgroup_metric(group: Subgroup) -> &'static str {
    match group {
        Subgroup::Low => "auc_low",
        Subgroup::Mid => "auc_mid",
        Subgroup::High => "auc_high",
        Subgroup::All => "auc_all",
    }
}

pub fn run_sweep(dataset: &RatingDataset, settings: &SweepSettings, parallel: bool) -> Result<SweepReport> {
    settings.validate()?;
    let groups = if settings.subgroups { metrics::degree_subgroups(dataset).ok() } else { None };
    let cells: Vec<(usize, usize)> = (0..settings.ratios.len())
        .flat_map(|pi| (0..settings.realizations).map(move |r| (pi, r)))
        .collect();
    let work = |&(pi, r): &(usize, usize)| run_cell(dataset, settings, groups.as_ref(), settings.ratios[pi], r);
    let results: Vec<CellResult> = if parallel {
        cells.par_iter().map(work).collect()
    } else {
        cells.iter().map(work).collect()
    };

    let mut observations = Vec::new();
    for (mi, &method) in settings.methods.iter().enumerate() {
        for (&(pi, realization), result) in cells.iter().zip(&results) {
            let (m, metrics) = &result[mi];
            debug_assert_eq!(*m, method);
            for (metric, cell) in metrics {
                observations.push(Observation {
                    method,
                    p: settings.ratios[pi],
                    realization,
                    metric,
                    cell: cell.clone(),
                });
            }
        }
    }
    Ok(SweepReport { attack: settings.attack, observations })
}

#[cfg(test)]
mod tests {
    use super::*;
    use repute_core::RatingScale;

    fn small() -> RatingDataset {
        let mut t = Vec::new();
        for u in 0..40usize {
            for o in 0..(5 + u % 7) {
                t.push((format!("{u}"), format!("{o}"), ((u + 2 * o) % 5 + 1) as f64));
            }
        }
        RatingDataset::from_triples(t, RatingScale::five_star()).unwrap()
    }

    fn settings() -> SweepSettings {
        SweepSettings {
            methods: vec![Method::Gr],
            attack: SpamKind::Random,
            ratios: vec![0.1],
            realizations: 1,
            seed: 5,
            config: MethodConfig::default(),
            subgroups: false,
        }
    }

    #[test]
    fn one_cell_gives_one_data_and_one_summary_row_per_metric() {
        let report = run_sweep(&small(), &settings(), false).unwrap();
        let table = report.table();
        let metrics = ["recall", "auc", "iterations", "converged"];
        assert_eq!(table.rows.len(), 2 * metrics.len());
        for metric in metrics {
            let rows: Vec<_> = table.rows.iter().filter(|r| r[4] == metric).collect();
            assert_eq!(rows.len(), 2);
            assert_eq!(rows[0][3], "0");
            assert_eq!(rows[1][3], "summary");
        }
    }

    #[test]
    fn subgroup_rows_are_added() {
        let s = SweepSettings { subgroups: true, ..settings() };
        let report = run_sweep(&small(), &s, false).unwrap();
        for m in ["auc_low", "auc_mid", "auc_high", "auc_all"] {
            assert_eq!(report.observations.iter().filter(|o| o.metric == m).count(), 1);
        }
        let all = report.values(Method::Gr, 0.1, "auc_all");
        assert_eq!(all, report.values(Method::Gr, 0.1, "auc"));
    }

    #[test]
    fn failures_are_recorded_per_row() {
        // floor(0.01 * 40) = 0 spammers
        let s = SweepSettings { ratios: vec![0.01, 0.2], ..settings() };
        let report = run_sweep(&small(), &s, false).unwrap();
        assert_eq!(report.failures(), 1);
        assert!(report.summary(Method::Gr, 0.2, "auc").is_some());
    }

    #[test]
    fn rejects_bad_settings() {
        assert!(run_sweep(&small(), &SweepSettings { ratios: vec![1.5], ..settings() }, false).is_err());
        assert!(run_sweep(&small(), &SweepSettings { realizations: 0, ..settings() }, false).is_err());
        assert!(run_sweep(&small(), &SweepSettings { methods: vec![], ..settings() }, false).is_err());
    }
}
