//! Case tags and new root positions across a range of couplings `α`.

use std::path::{Path, PathBuf};

use serde::Serialize;

use krein_core::krein::Tolerances;

use crate::error::CliError;
use crate::report::{num, write_csv, write_json};
use crate::run::{dirichlet_study, mode_entry, RESOLVED_REL_TOL};
use crate::scenario::Format;

#[derive(Clone, Copy, Debug)]
pub struct SweepConfig {
    pub from: f64,
    pub to: f64,
    pub steps: usize,
    pub nodes: usize,
    /// Events with `k` above this are dropped.
    pub k_max: f64,
}

/// One row: either the case tag at `k0 = nπ` or a new eigenvalue of `B`.
#[derive(Clone, Debug, Serialize)]
pub struct SweepEvent {
    pub alpha: f64,
    pub event: &'static str,
    pub mode: Option<usize>,
    pub k: f64,
    pub lambda: f64,
    pub case: Option<String>,
}

pub const SWEEP_COLUMNS: [&str; 6] = ["alpha", "event", "mode", "k", "lambda", "case"];

pub fn alpha_grid(from: f64, to: f64, steps: usize) -> Result<Vec<f64>, CliError> {
    if !(from.is_finite() && to.is_finite()) {
        return Err(CliError::Input("--from/--to: must be finite".into()));
    }
    match steps {
        0 => Err(CliError::Input("--steps: must be at least 1".into())),
        1 => Ok(vec![from]),
        s => Ok((0..s)
            .map(|i| from + (to - from) * i as f64 / (s - 1) as f64)
            .collect()),
    }
}

pub fn sweep_alpha(cfg: &SweepConfig, tol: Tolerances) -> Result<Vec<SweepEvent>, CliError> {
    if !(cfg.k_max > 0.0) {
        return Err(CliError::Input("--k-max: must be positive".into()));
    }
    let mut events = Vec::new();
    for alpha in alpha_grid(cfg.from, cfg.to, cfg.steps)? {
        let study = dirichlet_study(alpha, cfg.nodes, tol)?;
        let resolved = study.resolved_modes(RESOLVED_REL_TOL);
        let mut rows = Vec::new();
        for mode in 1..=resolved {
            let m = mode_entry(&study, mode)?;
            if m.k0 > cfg.k_max {
                break;
            }
            rows.push(SweepEvent {
                alpha,
                event: "mode",
                mode: Some(mode),
                k: m.k0,
                lambda: m.lambda0,
                case: Some(m.case),
            });
        }
        let roots = study
            .new_roots()
            .map_err(|e| CliError::from_core("roots", e))?;
        for r in roots.into_iter().filter(|r| r.k <= cfg.k_max) {
            rows.push(SweepEvent {
                alpha,
                event: "root",
                mode: None,
                k: r.k,
                lambda: r.lambda,
                case: None,
            });
        }
        rows.sort_by(|a, b| a.k.total_cmp(&b.k));
        events.extend(rows);
    }
    Ok(events)
}

pub fn write_sweep(dir: &Path, format: Format, events: &[SweepEvent]) -> Result<PathBuf, CliError> {
    std::fs::create_dir_all(dir)?;
    match format {
        Format::Json => {
            let p = dir.join("sweep.json");
            write_json(&p, &events)?;
            Ok(p)
        }
        Format::Csv => {
            let p = dir.join("sweep.csv");
            let rows = events.iter().map(|e| {
                vec![
                    num(e.alpha),
                    e.event.to_owned(),
                    e.mode.map(|m| m.to_string()).unwrap_or_default(),
                    num(e.k),
                    num(e.lambda),
                    e.case.clone().unwrap_or_default(),
                ]
            });
            write_csv(&p, &SWEEP_COLUMNS, rows)?;
            Ok(p)
        }
    }
}
