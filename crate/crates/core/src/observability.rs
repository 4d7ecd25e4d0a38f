//! Topological observability rules.
//!
//! A PMU observes its own bus and every adjacent bus. A zero-injection bus
//! (ZIB) whose closed neighbourhood has exactly one unobserved member lets
//! that member be inferred; the rule is iterated to a fixed point. The
//! robustness checks quantify over every single line outage or every single
//! PMU loss.

use std::fmt;
use std::sync::atomic::{AtomicU64, Ordering};

use fixedbitset::FixedBitSet;
use thiserror::Error;

use crate::netmodel::{connectivity_matrix, line_outage_matrix, ConnectivityMatrix, Network};
use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ObservabilityError {
    #[error("dimension mismatch: {what} has size {got}, network has {expected} buses")]
    DimensionMismatch {
        what: &'static str,
        got: usize,
        expected: usize,
    },
    #[error("bus {bus} out of range 1..={bus_count}")]
    BusOutOfRange { bus: usize, bus_count: usize },
    #[error("minimum observation count must be at least 1, got {0}")]
    InvalidMob(u32),
}

/// Set of buses carrying a PMU.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Placement {
    buses: FixedBitSet,
}

impl Placement {
    pub fn empty(bus_count: usize) -> Self {
        Self {
            buses: FixedBitSet::with_capacity(bus_count),
        }
    }

    pub fn full(bus_count: usize) -> Self {
        let mut buses = FixedBitSet::with_capacity(bus_count);
        buses.insert_range(..);
        Self { buses }
    }

    /// Builds a placement from 1-based bus numbers; duplicates collapse.
    pub fn from_one_based(bus_count: usize, buses: &[usize]) -> Result<Self, ObservabilityError> {
        let mut p = Self::empty(bus_count);
        for &bus in buses {
            if bus == 0 || bus > bus_count {
                return Err(ObservabilityError::BusOutOfRange { bus, bus_count });
            }
            p.buses.insert(bus - 1);
        }
        Ok(p)
    }

    pub fn from_bitset(buses: FixedBitSet) -> Self {
        Self { buses }
    }

    pub fn bus_count(&self) -> usize {
        self.buses.len()
    }

    pub fn len(&self) -> usize {
        self.buses.count_ones(..)
    }

    pub fn is_empty(&self) -> bool {
        self.buses.is_clear()
    }

    pub fn contains(&self, bus: usize) -> bool {
        self.buses.contains(bus)
    }

    /// Returns true if the bus was newly added.
    pub fn insert(&mut self, bus: usize) -> bool {
        !self.buses.put(bus)
    }

    /// Returns true if the bus was present.
    pub fn remove(&mut self, bus: usize) -> bool {
        let was = self.buses.contains(bus);
        self.buses.set(bus, false);
        was
    }

    pub fn toggle(&mut self, bus: usize) {
        self.buses.toggle(bus);
    }

    /// PMU buses, 0-based and ascending.
    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.buses.ones()
    }

    pub fn to_one_based(&self) -> Vec<usize> {
        self.buses.ones().map(|b| b + 1).collect()
    }

    pub fn as_bitset(&self) -> &FixedBitSet {
        &self.buses
    }

    pub fn is_subset(&self, other: &Placement) -> bool {
        self.buses.is_subset(&other.buses)
    }

    pub fn total_cost<T: Scalar>(&self, net: &Network<T>) -> T {
        self.iter().fold(T::zero(), |acc, b| acc + net.cost(b))
    }
}

impl fmt::Display for Placement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let buses: Vec<String> = self.to_one_based().iter().map(|b| b.to_string()).collect();
        write!(f, "{{{}}}", buses.join(", "))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PmuLossMode {
    /// Robust iff removing any single PMU leaves the network observable.
    RemovalSim,
    /// Robust iff every bus has at least `mob` direct observations, a bus
    /// inferred through a ZIB counting as one extra.
    CountThreshold,
}

impl fmt::Display for PmuLossMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            PmuLossMode::RemovalSim => "removal-sim",
            PmuLossMode::CountThreshold => "count-threshold",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ContingencySpec {
    Base,
    /// Every single branch outage, bridges included.
    LineOutage,
    /// Every single PMU loss.
    PmuLoss {
        mode: PmuLossMode,
        mob: u32,
    },
}

impl ContingencySpec {
    /// Removal-simulation PMU loss with the default threshold of two.
    pub fn pmu_loss() -> Self {
        ContingencySpec::PmuLoss {
            mode: PmuLossMode::RemovalSim,
            mob: 2,
        }
    }
}

impl fmt::Display for ContingencySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ContingencySpec::Base => f.write_str("base"),
            ContingencySpec::LineOutage => f.write_str("line-outage"),
            ContingencySpec::PmuLoss { mode, mob } => write!(f, "pmu-loss ({mode}, mob {mob})"),
        }
    }
}

/// Contingency regime together with the ZIB switch.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Regime {
    pub contingency: ContingencySpec,
    pub use_zib: bool,
}

impl Regime {
    pub fn new(contingency: ContingencySpec, use_zib: bool) -> Self {
        Self {
            contingency,
            use_zib,
        }
    }

    pub fn base(use_zib: bool) -> Self {
        Self::new(ContingencySpec::Base, use_zib)
    }

    fn validate(&self) -> Result<(), ObservabilityError> {
        match self.contingency {
            ContingencySpec::PmuLoss { mob: 0, .. } => Err(ObservabilityError::InvalidMob(0)),
            _ => Ok(()),
        }
    }
}

impl fmt::Display for Regime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}{}",
            self.contingency,
            if self.use_zib { " + zib" } else { "" }
        )
    }
}

/// Result of evaluating one placement on one connectivity matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ObservabilityReport {
    direct_counts: Vec<u32>,
    observed: FixedBitSet,
    zib_derived: FixedBitSet,
}

impl ObservabilityReport {
    /// Number of PMUs directly observing each bus.
    pub fn direct_counts(&self) -> &[u32] {
        &self.direct_counts
    }

    /// Buses observed after ZIB inference.
    pub fn observed(&self) -> &FixedBitSet {
        &self.observed
    }

    /// Buses observed only through ZIB inference.
    pub fn zib_derived(&self) -> &FixedBitSet {
        &self.zib_derived
    }

    pub fn fully_observable(&self) -> bool {
        self.observed.is_full()
    }

    /// Unobserved buses, 0-based.
    pub fn unobserved(&self) -> impl Iterator<Item = usize> + '_ {
        self.observed.zeroes()
    }

    /// Mean number of direct observations per bus.
    pub fn redundancy_index<T: Scalar>(&self) -> T {
        redundancy_index(self)
    }
}

/// Verdict of a robustness check. `failing` holds 1-based line ids for
/// line outages, 1-based PMU buses for removal-sim PMU loss, and 1-based
/// buses for the count threshold and the base regime.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ContingencyVerdict {
    pub robust: bool,
    pub intact_observable: bool,
    pub failing: Vec<usize>,
}

fn check_dims<T: Scalar>(
    net: &Network<T>,
    k: &ConnectivityMatrix,
    p: &Placement,
) -> Result<(), ObservabilityError> {
    let expected = net.bus_count();
    if k.dim() != expected {
        return Err(ObservabilityError::DimensionMismatch {
            what: "connectivity matrix",
            got: k.dim(),
            expected,
        });
    }
    if p.bus_count() != expected {
        return Err(ObservabilityError::DimensionMismatch {
            what: "placement",
            got: p.bus_count(),
            expected,
        });
    }
    Ok(())
}

/// Direct observation count `sum_j U_j K_ij` for every bus.
pub fn observe_base<T: Scalar>(
    net: &Network<T>,
    k: &ConnectivityMatrix,
    p: &Placement,
) -> Result<Vec<u32>, ObservabilityError> {
    check_dims(net, k, p)?;
    let mut counts = vec![0u32; net.bus_count()];
    for j in p.iter() {
        for i in k.row(j).ones() {
            counts[i] += 1;
        }
    }
    Ok(counts)
}

/// Applies the ZIB rule in place until nothing changes. `row(z)` must return
/// the closed neighbourhood of ZIB `z`.
fn propagate_with<'k, F>(observed: &mut FixedBitSet, zibs: &[usize], row: F)
where
    F: Fn(usize) -> &'k FixedBitSet,
{
    loop {
        let mut changed = false;
        for &z in zibs {
            let mut missing = row(z).difference(observed);
            if let (Some(u), None) = (missing.next(), missing.next()) {
                observed.insert(u);
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
}

/// Least fixed point of the ZIB inference rules over `directly_observed`.
///
/// For a ZIB `z` whose closed neighbourhood contains exactly one unobserved
/// bus, that bus becomes observed. This covers both the case of one unknown
/// neighbour of an observed ZIB and the case of an unobserved ZIB with all
/// neighbours known.
pub fn propagate_zib<T: Scalar>(
    net: &Network<T>,
    k: &ConnectivityMatrix,
    directly_observed: &FixedBitSet,
) -> FixedBitSet {
    let zibs: Vec<usize> = net.zib().ones().collect();
    let mut observed = directly_observed.clone();
    propagate_with(&mut observed, &zibs, |z| k.row(z));
    observed
}

pub fn evaluate<T: Scalar>(
    net: &Network<T>,
    p: &Placement,
    use_zib: bool,
    k: &ConnectivityMatrix,
) -> Result<ObservabilityReport, ObservabilityError> {
    let direct_counts = observe_base(net, k, p)?;
    let mut direct = FixedBitSet::with_capacity(net.bus_count());
    for (i, &c) in direct_counts.iter().enumerate() {
        direct.set(i, c > 0);
    }
    let observed = if use_zib {
        propagate_zib(net, k, &direct)
    } else {
        direct.clone()
    };
    let mut zib_derived = observed.clone();
    zib_derived.difference_with(&direct);
    Ok(ObservabilityReport {
        direct_counts,
        observed,
        zib_derived,
    })
}

/// Checks observability under every single-branch outage. The intact network
/// must be observable as well.
pub fn check_line_outage_robust<T: Scalar>(
    net: &Network<T>,
    p: &Placement,
    use_zib: bool,
) -> Result<ContingencyVerdict, ObservabilityError> {
    let intact = evaluate(net, p, use_zib, &connectivity_matrix(net))?;
    let mut failing = Vec::new();
    for b in net.branches() {
        let k = line_outage_matrix(net, b.line_id()).expect("line id taken from network");
        if !evaluate(net, p, use_zib, &k)?.fully_observable() {
            failing.push(b.line_id());
        }
    }
    failing.sort_unstable();
    let intact_observable = intact.fully_observable();
    Ok(ContingencyVerdict {
        robust: intact_observable && failing.is_empty(),
        intact_observable,
        failing,
    })
}

/// Checks robustness against the loss of any single PMU.
pub fn check_pmu_loss_robust<T: Scalar>(
    net: &Network<T>,
    p: &Placement,
    use_zib: bool,
    mode: PmuLossMode,
    mob: u32,
) -> Result<ContingencyVerdict, ObservabilityError> {
    if mob == 0 {
        return Err(ObservabilityError::InvalidMob(mob));
    }
    let k = connectivity_matrix(net);
    let intact = evaluate(net, p, use_zib, &k)?;
    let failing = match mode {
        PmuLossMode::RemovalSim => {
            let mut failing = Vec::new();
            for g in p.iter() {
                let mut reduced = p.clone();
                reduced.remove(g);
                if !evaluate(net, &reduced, use_zib, &k)?.fully_observable() {
                    failing.push(g + 1);
                }
            }
            failing
        }
        PmuLossMode::CountThreshold => (0..net.bus_count())
            .filter(|&i| {
                let inferred = u32::from(intact.zib_derived().contains(i));
                intact.direct_counts()[i] + inferred < mob
            })
            .map(|i| i + 1)
            .collect(),
    };
    let intact_observable = intact.fully_observable();
    Ok(ContingencyVerdict {
        robust: intact_observable && failing.is_empty(),
        intact_observable,
        failing,
    })
}

/// Mean of the direct observation counts.
pub fn redundancy_index<T: Scalar>(report: &ObservabilityReport) -> T {
    let n = report.direct_counts.len();
    if n == 0 {
        return T::zero();
    }
    let total: usize = report.direct_counts.iter().map(|&c| c as usize).sum();
    T::from_count(total) / T::from_count(n)
}

/// Per-branch data needed to evaluate one outage without rebuilding `K`.
#[derive(Debug, Clone)]
struct OutagePatch {
    line_id: usize,
    a: usize,
    b: usize,
    /// False when a parallel circuit keeps `a` and `b` adjacent.
    severed: bool,
    row_a: FixedBitSet,
    row_b: FixedBitSet,
}

/// Precomputed feasibility oracle for one network and regime.
///
/// This is the hot path used by the optimiser and the exhaustive search.
/// It gives the same verdicts as [`check_line_outage_robust`] and
/// [`check_pmu_loss_robust`] but patches the intact observation set per
/// contingency instead of rebuilding connectivity matrices.
#[derive(Debug)]
pub struct Evaluator<'a, T> {
    net: &'a Network<T>,
    regime: Regime,
    k: ConnectivityMatrix,
    zibs: Vec<usize>,
    outages: Vec<OutagePatch>,
    evaluations: AtomicU64,
}

impl<'a, T: Scalar> Evaluator<'a, T> {
    pub fn new(net: &'a Network<T>, regime: Regime) -> Result<Self, ObservabilityError> {
        regime.validate()?;
        let k = connectivity_matrix(net);
        let zibs = if regime.use_zib {
            net.zib().ones().collect()
        } else {
            Vec::new()
        };
        let outages = if regime.contingency == ContingencySpec::LineOutage {
            net.branches()
                .iter()
                .map(|br| {
                    let (a, b) = (br.from(), br.to());
                    let severed = !net
                        .branches()
                        .iter()
                        .any(|o| o.line_id() != br.line_id() && o.joins(a, b));
                    let mut row_a = k.row(a).clone();
                    let mut row_b = k.row(b).clone();
                    if severed {
                        row_a.set(b, false);
                        row_b.set(a, false);
                    }
                    OutagePatch {
                        line_id: br.line_id(),
                        a,
                        b,
                        severed,
                        row_a,
                        row_b,
                    }
                })
                .collect()
        } else {
            Vec::new()
        };
        Ok(Self {
            net,
            regime,
            k,
            zibs,
            outages,
            evaluations: AtomicU64::new(0),
        })
    }

    pub fn network(&self) -> &'a Network<T> {
        self.net
    }

    pub fn regime(&self) -> Regime {
        self.regime
    }

    pub fn matrix(&self) -> &ConnectivityMatrix {
        &self.k
    }

    /// Number of placements scored so far.
    pub fn evaluations(&self) -> u64 {
        self.evaluations.load(Ordering::Relaxed)
    }

    /// Observation report on the intact network.
    pub fn report(&self, p: &Placement) -> Result<ObservabilityReport, ObservabilityError> {
        evaluate(self.net, p, self.regime.use_zib, &self.k)
    }

    fn direct(&self, p: &Placement) -> FixedBitSet {
        let mut s = FixedBitSet::with_capacity(self.net.bus_count());
        for j in p.iter() {
            s.union_with(self.k.row(j));
        }
        s
    }

    fn close(&self, s: &mut FixedBitSet) {
        if !self.zibs.is_empty() {
            propagate_with(s, &self.zibs, |z| self.k.row(z));
        }
    }

    fn outage_observable(&self, p: &Placement, direct: &FixedBitSet, o: &OutagePatch) -> bool {
        let touches_pmu = p.contains(o.a) || p.contains(o.b);
        let touches_zib = self.regime.use_zib && (self.net.is_zib(o.a) || self.net.is_zib(o.b));
        if !o.severed || !(touches_pmu || touches_zib) {
            // K^l only differs in rows a and b, which neither a PMU nor a ZIB
            // reads; the outcome equals the intact one.
            let mut s = direct.clone();
            self.close(&mut s);
            return s.is_full();
        }
        let pmus = p.as_bitset();
        let mut s = direct.clone();
        if p.contains(o.a) && pmus.intersection_count(self.k.row(o.b)) == 1 {
            s.set(o.b, false);
        }
        if p.contains(o.b) && pmus.intersection_count(self.k.row(o.a)) == 1 {
            s.set(o.a, false);
        }
        if !self.zibs.is_empty() {
            propagate_with(&mut s, &self.zibs, |z| {
                if z == o.a {
                    &o.row_a
                } else if z == o.b {
                    &o.row_b
                } else {
                    self.k.row(z)
                }
            });
        }
        s.is_full()
    }

    /// Direct observation counts collapsed to "at least one" and "at least
    /// two" sets.
    fn coverage_levels(&self, p: &Placement) -> (FixedBitSet, FixedBitSet) {
        let n = self.net.bus_count();
        let mut once = FixedBitSet::with_capacity(n);
        let mut twice = FixedBitSet::with_capacity(n);
        for j in p.iter() {
            let row = self.k.row(j);
            let mut both = once.clone();
            both.intersect_with(row);
            twice.union_with(&both);
            once.union_with(row);
        }
        (once, twice)
    }

    /// Walks the contingencies of the regime, calling `on_fail` with the
    /// 1-based identifier of each failing one. Stops early when `on_fail`
    /// returns false. Returns whether the intact network is observable.
    fn scan<F>(&self, p: &Placement, mut on_fail: F) -> bool
    where
        F: FnMut(usize) -> bool,
    {
        self.evaluations.fetch_add(1, Ordering::Relaxed);
        let direct = self.direct(p);
        let mut intact = direct.clone();
        self.close(&mut intact);
        let intact_ok = intact.is_full();
        match self.regime.contingency {
            ContingencySpec::Base => {
                for bus in intact.zeroes() {
                    if !on_fail(bus + 1) {
                        break;
                    }
                }
            }
            ContingencySpec::LineOutage => {
                for o in &self.outages {
                    if !self.outage_observable(p, &direct, o) && !on_fail(o.line_id) {
                        break;
                    }
                }
            }
            ContingencySpec::PmuLoss {
                mode: PmuLossMode::RemovalSim,
                ..
            } => {
                let (once, twice) = self.coverage_levels(p);
                for g in p.iter() {
                    let mut s = once.clone();
                    s.difference_with(self.k.row(g));
                    s.union_with(&twice);
                    self.close(&mut s);
                    if !s.is_full() && !on_fail(g + 1) {
                        break;
                    }
                }
            }
            ContingencySpec::PmuLoss {
                mode: PmuLossMode::CountThreshold,
                mob,
            } => {
                let counts: Vec<u32> = (0..self.net.bus_count())
                    .map(|i| p.as_bitset().intersection_count(self.k.row(i)) as u32)
                    .collect();
                for (i, &c) in counts.iter().enumerate() {
                    let inferred = u32::from(intact.contains(i) && !direct.contains(i));
                    if c + inferred < mob && !on_fail(i + 1) {
                        break;
                    }
                }
            }
        }
        intact_ok
    }

    /// Violation count used as the penalty multiplier: unobserved buses on
    /// the intact network plus failing contingencies. Zero iff feasible.
    pub fn violations(&self, p: &Placement) -> usize {
        let mut failing = 0;
        let intact_ok = self.scan(p, |_| {
            failing += 1;
            true
        });
        match self.regime.contingency {
            ContingencySpec::Base => failing,
            _ => {
                let unobserved = if intact_ok {
                    0
                } else {
                    let mut s = self.direct(p);
                    self.close(&mut s);
                    s.count_zeroes(..)
                };
                unobserved + failing
            }
        }
    }

    pub fn is_feasible(&self, p: &Placement) -> bool {
        let mut ok = true;
        let intact_ok = self.scan(p, |_| {
            ok = false;
            false
        });
        intact_ok && ok
    }

    pub fn verdict(&self, p: &Placement) -> ContingencyVerdict {
        let mut failing = Vec::new();
        let intact_observable = self.scan(p, |id| {
            failing.push(id);
            true
        });
        failing.sort_unstable();
        ContingencyVerdict {
            robust: intact_observable && failing.is_empty(),
            intact_observable,
            failing,
        }
    }
}
