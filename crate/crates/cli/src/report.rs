//! Report schema. All bus numbers and line ids are 1-based.

use std::fmt::{self, Write as _};

use serde::{Deserialize, Serialize};

use crate::config::ParamsEcho;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CaseInfo {
    /// Path or bundled case name as given on the command line.
    pub source: String,
    pub format: String,
    pub buses: usize,
    pub branches: usize,
    pub zib: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RegimeInfo {
    /// `base`, `line-outage` or `pmu-loss`.
    pub contingency: String,
    pub use_zib: bool,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub pmu_loss_mode: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub mob: Option<u32>,
}

/// Outcome of one verification check. `failing` lists unobserved buses for
/// `observability`, outaged line ids for `line-outage`, lost PMU buses for
/// `pmu-loss` in removal-sim mode and under-covered buses in count-threshold
/// mode.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub failing: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OracleInfo {
    pub optima: u64,
    pub examined: u64,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub greedy_cardinality: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub command: String,
    pub case: CaseInfo,
    pub regime: RegimeInfo,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub algorithm: Option<String>,
    pub placement: Vec<usize>,
    pub cardinality: usize,
    pub total_cost: f64,
    pub feasible: bool,
    pub direct_counts: Vec<u32>,
    pub redundancy_index: f64,
    pub checks: Vec<Check>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub history: Option<Vec<f64>>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub seed: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub params: Option<ParamsEcho>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub oracle: Option<OracleInfo>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub evaluations: Option<u64>,
    /// Elapsed wall time; the only field that varies between identical runs.
    pub wall_time_ms: f64,
}

impl Report {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serialises");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> serde_json::Result<Self> {
        serde_json::from_str(text)
    }

    pub fn to_text(&self) -> String {
        self.to_string()
    }
}

fn list(items: &[usize]) -> String {
    items
        .iter()
        .map(|i| i.to_string())
        .collect::<Vec<_>>()
        .join(", ")
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut out = String::new();
        let c = &self.case;
        writeln!(out, "{}: {} ({} format)", self.command, c.source, c.format)?;
        writeln!(
            out,
            "  buses {}, branches {}, zib [{}]",
            c.buses,
            c.branches,
            list(&c.zib)
        )?;
        let r = &self.regime;
        write!(out, "  regime {}", r.contingency)?;
        if let (Some(mode), Some(mob)) = (&r.pmu_loss_mode, r.mob) {
            write!(out, " ({mode}, mob {mob})")?;
        }
        writeln!(
            out,
            ", zib inference {}",
            if r.use_zib { "on" } else { "off" }
        )?;
        if let Some(algo) = &self.algorithm {
            write!(out, "  algorithm {algo}")?;
            if let Some(seed) = self.seed {
                write!(out, ", seed {seed}")?;
            }
            writeln!(out)?;
        }
        writeln!(out, "placement [{}]", list(&self.placement))?;
        writeln!(
            out,
            "  {} PMUs, cost {}, {}",
            self.cardinality,
            self.total_cost,
            if self.feasible {
                "feasible"
            } else {
                "INFEASIBLE"
            }
        )?;
        writeln!(out, "  redundancy index {:.4}", self.redundancy_index)?;
        for check in &self.checks {
            write!(
                out,
                "  check {:<14} {}",
                check.name,
                if check.passed { "pass" } else { "FAIL" }
            )?;
            if !check.failing.is_empty() {
                write!(out, " [{}]", list(&check.failing))?;
            }
            writeln!(out)?;
        }
        if let Some(o) = &self.oracle {
            write!(out, "  optima {}, examined {}", o.optima, o.examined)?;
            if let Some(g) = o.greedy_cardinality {
                write!(out, ", greedy {g}")?;
            }
            writeln!(out)?;
        }
        if let Some(h) = &self.history {
            if let (Some(first), Some(last)) = (h.first(), h.last()) {
                writeln!(out, "  history {} generations, {first} -> {last}", h.len())?;
            }
        }
        if let Some(e) = self.evaluations {
            writeln!(out, "  evaluations {e}")?;
        }
        writeln!(out, "  wall time {:.1} ms", self.wall_time_ms)?;
        f.write_str(&out)
    }
}
