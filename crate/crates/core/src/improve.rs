//! Greedy repair and prune steps shared by the HBMO workers and the greedy
//! baseline.

use crate::observability::{Evaluator, Placement};
use crate::scalar::Scalar;

/// Adds PMUs until the placement is feasible, each time picking the bus whose
/// addition leaves the fewest violations (lowest index on ties). Returns the
/// remaining violation count, which is non-zero only if even the full
/// placement is infeasible.
pub(crate) fn greedy_repair<T: Scalar>(eval: &Evaluator<'_, T>, p: &mut Placement) -> usize {
    let n = p.bus_count();
    let mut current = eval.violations(p);
    while current > 0 {
        let mut best: Option<(usize, usize)> = None;
        for bus in 0..n {
            if p.contains(bus) {
                continue;
            }
            p.insert(bus);
            let v = eval.violations(p);
            p.remove(bus);
            if best.is_none_or(|(bv, _)| v < bv) {
                best = Some((v, bus));
            }
        }
        let Some((v, bus)) = best else {
            break;
        };
        p.insert(bus);
        current = v;
    }
    current
}

/// Drops every PMU whose removal keeps the placement feasible, scanning in
/// ascending bus order. Feasibility is upward closed in every regime, so a
/// PMU that could not be dropped earlier in the scan cannot become droppable
/// later and one pass reaches a minimal placement.
pub(crate) fn prune<T: Scalar>(eval: &Evaluator<'_, T>, p: &mut Placement) {
    if !eval.is_feasible(p) {
        return;
    }
    let buses: Vec<usize> = p.iter().collect();
    for bus in buses {
        p.remove(bus);
        if !eval.is_feasible(p) {
            p.insert(bus);
        }
    }
}
