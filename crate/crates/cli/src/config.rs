//! HBMO parameter files and the parameter echo written into reports.

use std::path::Path;

use anyhow::Context;
use pmu_core::HbmoParams;
use serde::{Deserialize, Serialize};

/// Optional overrides read from a TOML parameter file. Missing keys keep
/// their defaults.
#[derive(Debug, Clone, Default, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ParamsFile {
    pub n_drones: Option<usize>,
    pub spermatheca_capacity: Option<usize>,
    pub n_broods: Option<usize>,
    pub speed_init: Option<f64>,
    pub speed_decay: Option<f64>,
    pub speed_min: Option<f64>,
    pub max_iterations: Option<usize>,
    pub mutation_rate: Option<f64>,
    pub penalty_weight: Option<f64>,
    pub seed: Option<u64>,
    pub stagnation_window: Option<usize>,
}

impl ParamsFile {
    pub fn load(path: &Path) -> anyhow::Result<Self> {
        let text = std::fs::read_to_string(path)
            .with_context(|| format!("reading parameter file {}", path.display()))?;
        toml::from_str(&text).with_context(|| format!("parsing parameter file {}", path.display()))
    }

    pub fn apply(&self, mut p: HbmoParams<f64>) -> HbmoParams<f64> {
        macro_rules! take {
            ($($field:ident),*) => {
                $(if let Some(v) = self.$field { p.$field = v; })*
            };
        }
        take!(
            n_drones,
            spermatheca_capacity,
            n_broods,
            speed_init,
            speed_decay,
            speed_min,
            max_iterations,
            mutation_rate,
            seed
        );
        if self.penalty_weight.is_some() {
            p.penalty_weight = self.penalty_weight;
        }
        if self.stagnation_window.is_some() {
            p.stagnation_window = self.stagnation_window;
        }
        p
    }
}

/// Effective parameters as echoed in a report.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ParamsEcho {
    pub n_drones: usize,
    pub spermatheca_capacity: usize,
    pub n_broods: usize,
    pub speed_init: f64,
    pub speed_decay: f64,
    pub speed_min: f64,
    pub max_iterations: usize,
    pub mutation_rate: f64,
    pub penalty_weight: f64,
    pub seed: u64,
    pub stagnation_window: Option<usize>,
}

impl ParamsEcho {
    pub fn new(p: &HbmoParams<f64>, penalty_weight: f64) -> Self {
        Self {
            n_drones: p.n_drones,
            spermatheca_capacity: p.spermatheca_capacity,
            n_broods: p.n_broods,
            speed_init: p.speed_init,
            speed_decay: p.speed_decay,
            speed_min: p.speed_min,
            max_iterations: p.max_iterations,
            mutation_rate: p.mutation_rate,
            penalty_weight,
            seed: p.seed,
            stagnation_window: p.stagnation_window,
        }
    }
}
