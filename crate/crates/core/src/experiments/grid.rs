use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;

use crate::ellipsoid::{fit_identity_perturbation, fit_least_squares, sym_dim, PointCloud};
use crate::error::{Error, Result};
use crate::numerics::{stream_id, RngStream};
use crate::sdpfeas::{ef_feasible, FeasibilityConfig, FeasibilityStatus};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Construction {
    Sdp,
    Ls,
    Ip,
}

impl Construction {
    pub fn as_str(self) -> &'static str {
        match self {
            Construction::Sdp => "sdp",
            Construction::Ls => "ls",
            Construction::Ip => "ip",
        }
    }

    fn code(self) -> u64 {
        match self {
            Construction::Sdp => 1,
            Construction::Ls => 2,
            Construction::Ip => 3,
        }
    }
}

impl fmt::Display for Construction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Construction {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "sdp" => Ok(Construction::Sdp),
            "ls" => Ok(Construction::Ls),
            "ip" => Ok(Construction::Ip),
            other => Err(Error::Parse(format!("unknown construction {other:?}"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Shortcut {
    None,
    DimensionInfeasible,
    FillSuccess,
}

impl Shortcut {
    pub fn as_str(self) -> &'static str {
        match self {
            Shortcut::None => "none",
            Shortcut::DimensionInfeasible => "dimension_infeasible",
            Shortcut::FillSuccess => "fill_success",
        }
    }
}

impl FromStr for Shortcut {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "none" => Ok(Shortcut::None),
            "dimension_infeasible" => Ok(Shortcut::DimensionInfeasible),
            "fill_success" => Ok(Shortcut::FillSuccess),
            other => Err(Error::Parse(format!("unknown shortcut {other:?}"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PhaseGridConfig {
    pub construction: Construction,
    pub d_max: usize,
    pub n_max: usize,
    pub trials: usize,
    pub master_seed: u64,
    pub consecutive_fill: usize,
    pub overlay_c: Option<f64>,
    pub feasibility: FeasibilityConfig,
    /// Worker threads; `None` uses the global pool.
    pub threads: Option<usize>,
}

impl PhaseGridConfig {
    pub fn new(construction: Construction, d_max: usize, n_max: usize) -> Self {
        Self {
            construction,
            d_max,
            n_max,
            trials: 10,
            master_seed: 0,
            consecutive_fill: 5,
            overlay_c: None,
            feasibility: FeasibilityConfig::default(),
            threads: None,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.trials == 0 {
            return Err(Error::InvalidConfig("trials must be at least 1".into()));
        }
        if self.d_max == 0 || self.d_max > self.n_max {
            return Err(Error::InvalidConfig(format!(
                "need 1 <= d_max <= n_max, got d_max = {}, n_max = {}",
                self.d_max, self.n_max
            )));
        }
        if self.consecutive_fill == 0 {
            return Err(Error::InvalidConfig("consecutive_fill must be at least 1".into()));
        }
        if self.threads == Some(0) {
            return Err(Error::InvalidConfig("threads must be at least 1".into()));
        }
        if let Some(c) = self.overlay_c {
            if !(c.is_finite() && c > 0.0) {
                return Err(Error::InvalidConfig("overlay_c must be positive".into()));
            }
        }
        self.feasibility.validate()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CellResult {
    pub construction: Construction,
    pub d: usize,
    pub n: usize,
    /// Configured trial count.
    pub trials: usize,
    /// Trials actually simulated (0 for shortcut cells).
    pub trials_run: usize,
    pub successes: usize,
    pub shortcut: Shortcut,
}

impl CellResult {
    pub fn fraction(&self) -> f64 {
        self.successes as f64 / self.trials as f64
    }
}

/// Whether one seeded trial yields a valid fitting ellipsoid. Errors count as failures.
pub fn run_trial(construction: Construction, n: usize, d: usize, trial: usize, cfg: &PhaseGridConfig) -> bool {
    let stream = stream_id(&[construction.code(), n as u64, d as u64, trial as u64]);
    let mut rng = RngStream::new(cfg.master_seed, stream);
    let Ok(cloud) = PointCloud::gaussian(n, d, &mut rng) else {
        return false;
    };
    match construction {
        Construction::Ls => fit_least_squares(&cloud).map(|f| f.is_fit()).unwrap_or(false),
        Construction::Ip => fit_identity_perturbation(&cloud).map(|f| f.is_fit()).unwrap_or(false),
        Construction::Sdp => ef_feasible(&cloud, &cfg.feasibility)
            .map(|v| v.status == FeasibilityStatus::Feasible)
            .unwrap_or(false),
    }
}

/// Scans `d = 1..=min(n, d_max)` for one `n`, applying both shortcuts.
fn scan_row(n: usize, cfg: &PhaseGridConfig) -> Vec<CellResult> {
    let c = cfg.construction;
    let mut out = Vec::new();
    let mut streak = 0;
    for d in 1..=n.min(cfg.d_max) {
        let base = CellResult { construction: c, d, n, trials: cfg.trials, trials_run: 0, successes: 0, shortcut: Shortcut::None };
        let cell = if streak >= cfg.consecutive_fill {
            CellResult { successes: cfg.trials, shortcut: Shortcut::FillSuccess, ..base }
        } else if c == Construction::Sdp && n > sym_dim(d) {
            streak = 0;
            CellResult { shortcut: Shortcut::DimensionInfeasible, ..base }
        } else {
            let successes = (0..cfg.trials).filter(|&t| run_trial(c, n, d, t, cfg)).count();
            streak = if successes == cfg.trials { streak + 1 } else { 0 };
            CellResult { trials_run: cfg.trials, successes, ..base }
        };
        out.push(cell);
    }
    out
}

/// Every cell `1 <= d <= min(n, d_max)`, `1 <= n <= n_max`, ordered by `n` then `d`.
pub fn run_phase_grid(cfg: &PhaseGridConfig) -> Result<Vec<CellResult>> {
    cfg.validate()?;
    let run = || -> Vec<CellResult> {
        (1..=cfg.n_max).into_par_iter().map(|n| scan_row(n, cfg)).flatten().collect()
    };
    match cfg.threads {
        None => Ok(run()),
        Some(k) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(k)
                .build()
                .map_err(|e| Error::InvalidConfig(format!("thread pool: {e}")))?;
            Ok(pool.install(run))
        }
    }
}
