//! Exact and greedy baselines.

use thiserror::Error;

use crate::improve::{greedy_repair, prune};
use crate::netmodel::Network;
use crate::observability::{Evaluator, ObservabilityError, Placement, Regime};
use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error(
        "enumeration budget of {budget} placements exceeded; no feasible placement with at most {reached} PMUs"
    )]
    BudgetExceeded { budget: u64, reached: usize },
    #[error("no feasible placement with at most {size_cap} PMUs")]
    Infeasible { size_cap: usize },
    #[error(transparent)]
    Observability(#[from] ObservabilityError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OracleOptions {
    /// Largest cardinality to try; `None` means the bus count.
    pub size_cap: Option<usize>,
    /// Maximum number of placements to check.
    pub budget: u64,
}

impl Default for OracleOptions {
    fn default() -> Self {
        Self {
            size_cap: None,
            budget: 10_000_000,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleResult {
    pub cardinality: usize,
    /// Lexicographically smallest optimal placement.
    pub witness: Placement,
    /// Number of feasible placements of minimal cardinality.
    pub optima: u64,
    pub examined: u64,
}

fn binomial(n: usize, k: usize) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
        if acc > u64::MAX as u128 {
            return u64::MAX;
        }
    }
    acc as u64
}

/// Advances `idx` to the next k-combination of `0..n` in lexicographic
/// order. Returns false after the last one.
fn next_combination(idx: &mut [usize], n: usize) -> bool {
    let k = idx.len();
    let mut i = k;
    while i > 0 {
        i -= 1;
        if idx[i] < n - k + i {
            idx[i] += 1;
            for j in i + 1..k {
                idx[j] = idx[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// Minimum-cardinality feasible placement by ascending enumeration.
///
/// Placements are tried by cardinality, lexicographically within each; the
/// first cardinality with a feasible member is enumerated completely to count
/// its optima. Costs are ignored: this certifies the PMU count.
pub fn exhaustive_min<T: Scalar>(
    net: &Network<T>,
    regime: Regime,
    options: OracleOptions,
) -> Result<OracleResult, OracleError> {
    let eval = Evaluator::new(net, regime)?;
    let n = net.bus_count();
    let size_cap = options.size_cap.unwrap_or(n).min(n);
    let mut examined = 0u64;

    for k in 0..=size_cap {
        let level = binomial(n, k);
        if examined.saturating_add(level) > options.budget {
            return Err(OracleError::BudgetExceeded {
                budget: options.budget,
                reached: k.saturating_sub(1),
            });
        }
        let mut idx: Vec<usize> = (0..k).collect();
        let mut witness = None;
        let mut optima = 0u64;
        loop {
            let mut p = Placement::empty(n);
            for &b in &idx {
                p.insert(b);
            }
            examined += 1;
            if eval.is_feasible(&p) {
                optima += 1;
                witness.get_or_insert(p);
            }
            if !next_combination(&mut idx, n) {
                break;
            }
        }
        if let Some(witness) = witness {
            return Ok(OracleResult {
                cardinality: k,
                witness,
                optima,
                examined,
            });
        }
    }
    Err(OracleError::Infeasible { size_cap })
}

/// Greedy set-cover baseline: add the bus that removes the most violations
/// (lowest index on ties) until feasible, then prune redundant PMUs in
/// ascending order.
pub fn greedy_cover<T: Scalar>(
    net: &Network<T>,
    regime: Regime,
) -> Result<Placement, ObservabilityError> {
    let eval = Evaluator::new(net, regime)?;
    let mut p = Placement::empty(net.bus_count());
    greedy_repair(&eval, &mut p);
    prune(&eval, &mut p);
    Ok(p)
}
