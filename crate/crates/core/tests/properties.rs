//! Randomised invariants on small networks (N <= 8).

use pmu_core::hbmo::{self, HbmoParams};
use pmu_core::observability::{
    check_line_outage_robust, check_pmu_loss_robust, evaluate, propagate_zib,
};
use pmu_core::oracle::{exhaustive_min, greedy_cover, OracleError, OracleOptions};
use pmu_core::{
    connectivity_matrix, line_outage_matrix, parse_case, CaseFormat, ContingencySpec, Evaluator,
    FixedBitSet, Network64, Placement, PmuLossMode, Regime,
};
use proptest::prelude::*;

#[derive(Debug, Clone)]
struct Case {
    n: usize,
    edges: Vec<(usize, usize)>,
    zib: Vec<bool>,
    a: Vec<bool>,
    b: Vec<bool>,
}

impl Case {
    fn network(&self) -> Network64 {
        let zib: Vec<usize> = (1..=self.n).filter(|&i| self.zib[i - 1]).collect();
        Network64::from_edges(self.n, self.edges.iter().map(|&(f, t)| (f + 1, t + 1)))
            .unwrap()
            .with_zib(zib)
            .unwrap()
    }

    fn placement(&self, mask: &[bool]) -> Placement {
        let buses: Vec<usize> = (1..=self.n).filter(|&i| mask[i - 1]).collect();
        Placement::from_one_based(self.n, &buses).unwrap()
    }
}

fn case() -> impl Strategy<Value = Case> {
    (1usize..=8).prop_flat_map(|n| {
        let edge = (0..n, 0..n).prop_filter("no self loops", |(f, t)| f != t);
        let edges = if n == 1 {
            Just(Vec::new()).boxed()
        } else {
            prop::collection::vec(edge, 0..=12).boxed()
        };
        (
            Just(n),
            edges,
            prop::collection::vec(prop::bool::weighted(0.3), n),
            prop::collection::vec(any::<bool>(), n),
            prop::collection::vec(any::<bool>(), n),
        )
            .prop_map(|(n, edges, zib, a, b)| Case {
                n,
                edges,
                zib,
                a,
                b,
            })
    })
}

fn regimes() -> Vec<Regime> {
    let mut out = Vec::new();
    for use_zib in [false, true] {
        out.push(Regime::base(use_zib));
        out.push(Regime::new(ContingencySpec::LineOutage, use_zib));
        out.push(Regime::new(ContingencySpec::pmu_loss(), use_zib));
        out.push(Regime::new(
            ContingencySpec::PmuLoss {
                mode: PmuLossMode::CountThreshold,
                mob: 2,
            },
            use_zib,
        ));
    }
    out
}

fn set_of(n: usize, mask: &[bool]) -> FixedBitSet {
    let mut s = FixedBitSet::with_capacity(n);
    for (i, &m) in mask.iter().enumerate() {
        s.set(i, m);
    }
    s
}

/// Straight transcription of the rules: dense adjacency, sum of U_j K_ij,
/// then rescans every ZIB until nothing is added.
fn naive_observed(
    case: &Case,
    mask: &[bool],
    use_zib: bool,
    skip_edge: Option<usize>,
) -> Vec<bool> {
    let n = case.n;
    let mut k = vec![vec![0u32; n]; n];
    for (i, row) in k.iter_mut().enumerate() {
        row[i] = 1;
    }
    for (e, &(f, t)) in case.edges.iter().enumerate() {
        if Some(e) != skip_edge {
            k[f][t] = 1;
            k[t][f] = 1;
        }
    }
    let mut observed: Vec<bool> = (0..n)
        .map(|i| (0..n).map(|j| u32::from(mask[j]) * k[i][j]).sum::<u32>() >= 1)
        .collect();
    if use_zib {
        loop {
            let mut changed = false;
            for z in (0..n).filter(|&z| case.zib[z]) {
                let missing: Vec<usize> =
                    (0..n).filter(|&j| k[z][j] == 1 && !observed[j]).collect();
                if missing.len() == 1 {
                    observed[missing[0]] = true;
                    changed = true;
                }
            }
            if !changed {
                break;
            }
        }
    }
    observed
}

fn observed_vec(net: &Network64, p: &Placement, use_zib: bool) -> Vec<bool> {
    let report = evaluate(net, p, use_zib, &connectivity_matrix(net)).unwrap();
    (0..net.bus_count())
        .map(|i| report.observed().contains(i))
        .collect()
}

fn subset(a: &[bool], b: &[bool]) -> bool {
    a.iter().zip(b).all(|(&x, &y)| !x || y)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn observed_set_is_monotone(c in case()) {
        let net = c.network();
        let union: Vec<bool> = c.a.iter().zip(&c.b).map(|(&x, &y)| x || y).collect();
        for use_zib in [false, true] {
            let small = observed_vec(&net, &c.placement(&c.a), use_zib);
            let large = observed_vec(&net, &c.placement(&union), use_zib);
            prop_assert!(subset(&small, &large));
        }
    }

    #[test]
    fn zib_propagation_is_idempotent_and_monotone(c in case()) {
        let net = c.network();
        let k = connectivity_matrix(&net);
        let a = set_of(c.n, &c.a);
        let mut ab = a.clone();
        ab.union_with(&set_of(c.n, &c.b));
        let once = propagate_zib(&net, &k, &a);
        prop_assert!(a.is_subset(&once));
        prop_assert_eq!(&propagate_zib(&net, &k, &once), &once);
        prop_assert!(once.is_subset(&propagate_zib(&net, &k, &ab)));
    }

    #[test]
    fn zib_never_hurts(c in case()) {
        let net = c.network();
        let p = c.placement(&c.a);
        prop_assert!(subset(&observed_vec(&net, &p, false), &observed_vec(&net, &p, true)));
    }

    #[test]
    fn matches_naive_rules(c in case()) {
        let net = c.network();
        let p = c.placement(&c.a);
        for use_zib in [false, true] {
            prop_assert_eq!(observed_vec(&net, &p, use_zib), naive_observed(&c, &c.a, use_zib, None));
            for b in net.branches() {
                let k = line_outage_matrix(&net, b.line_id()).unwrap();
                let r = evaluate(&net, &p, use_zib, &k).unwrap();
                let got: Vec<bool> = (0..c.n).map(|i| r.observed().contains(i)).collect();
                prop_assert_eq!(got, naive_observed(&c, &c.a, use_zib, Some(b.line_id() - 1)));
            }
        }
        let k = connectivity_matrix(&net);
        let r = evaluate(&net, &p, false, &k).unwrap();
        for i in 0..c.n {
            let direct = (0..c.n).filter(|&j| c.a[j] && k.get(i, j)).count() as u32;
            prop_assert_eq!(r.direct_counts()[i], direct);
            prop_assert!(!(r.zib_derived().contains(i) && direct > 0));
        }
    }

    #[test]
    fn outage_changes_at_most_two_entries(c in case()) {
        let net = c.network();
        let k = connectivity_matrix(&net);
        for b in net.branches() {
            let kl = line_outage_matrix(&net, b.line_id()).unwrap();
            prop_assert!(kl.differing_entries(&k).len() <= 2);
            prop_assert!(kl.is_symmetric() && kl.has_unit_diagonal());
        }
    }

    #[test]
    fn robust_implies_intact_observable(c in case()) {
        let net = c.network();
        let p = c.placement(&c.a);
        for use_zib in [false, true] {
            let base = evaluate(&net, &p, use_zib, &connectivity_matrix(&net)).unwrap();
            let lo = check_line_outage_robust(&net, &p, use_zib).unwrap();
            prop_assert!(!lo.robust || base.fully_observable());
            let pl = check_pmu_loss_robust(&net, &p, use_zib, PmuLossMode::RemovalSim, 2).unwrap();
            prop_assert!(!(pl.robust && !p.is_empty()) || base.fully_observable());
        }
    }

    #[test]
    fn evaluator_agrees_with_reference_checks(c in case()) {
        let net = c.network();
        let p = c.placement(&c.a);
        for regime in regimes() {
            let eval = Evaluator::new(&net, regime).unwrap();
            let fast = eval.verdict(&p);
            let reference = match regime.contingency {
                ContingencySpec::Base => None,
                ContingencySpec::LineOutage => Some(check_line_outage_robust(&net, &p, regime.use_zib).unwrap()),
                ContingencySpec::PmuLoss { mode, mob } => {
                    Some(check_pmu_loss_robust(&net, &p, regime.use_zib, mode, mob).unwrap())
                }
            };
            match reference {
                Some(r) => prop_assert_eq!(&fast, &r, "{}", regime),
                None => {
                    let full = observed_vec(&net, &p, regime.use_zib).iter().all(|&o| o);
                    prop_assert_eq!(fast.robust, full);
                }
            }
            prop_assert_eq!(eval.is_feasible(&p), fast.robust);
            prop_assert_eq!(eval.violations(&p) == 0, fast.robust);
        }
    }

    #[test]
    fn oracle_orderings(c in case()) {
        let net = c.network();
        let n = c.n;
        // None when even the all-bus placement fails, e.g. an isolated bus
        // under a PMU-loss regime.
        let min = |r: Regime| match exhaustive_min(&net, r, OracleOptions::default()) {
            Ok(o) => Some(o.cardinality),
            Err(OracleError::Infeasible { .. }) => None,
            Err(e) => panic!("{e}"),
        };
        for regime in regimes() {
            let eval = Evaluator::new(&net, regime).unwrap();
            let greedy = greedy_cover(&net, regime).unwrap();
            if !eval.is_feasible(&Placement::full(n)) {
                prop_assert_eq!(min(regime), None);
                continue;
            }
            let exact = exhaustive_min(&net, regime, OracleOptions::default()).unwrap();
            prop_assert!(exact.cardinality <= greedy.len() && greedy.len() <= n);
            prop_assert!(exact.optima >= 1);
            prop_assert!(eval.is_feasible(&exact.witness) && eval.is_feasible(&greedy));
        }
        for use_zib in [false, true] {
            let base = min(Regime::base(use_zib)).expect("all buses always observe the base case");
            for contingency in [ContingencySpec::LineOutage, ContingencySpec::pmu_loss()] {
                if let Some(m) = min(Regime::new(contingency, use_zib)) {
                    prop_assert!(m >= base);
                }
            }
        }
        for regime in regimes() {
            let plain = min(Regime { use_zib: false, ..regime });
            let zib = min(Regime { use_zib: true, ..regime });
            if let Some(plain) = plain {
                prop_assert!(zib.is_some_and(|z| z <= plain), "{}", regime);
            }
        }
    }

    #[test]
    fn native_text_round_trips(c in case()) {
        let net = c.network();
        let again: Network64 = parse_case(&net.to_native(), CaseFormat::Native).unwrap();
        prop_assert_eq!(again, net);
    }

    #[test]
    fn toggle_round_trip(c in case(), bus in 0usize..8) {
        let net = c.network();
        let bus = bus % c.n;
        let p = c.placement(&c.a);
        let mut q = p.clone();
        q.toggle(bus);
        q.toggle(bus);
        prop_assert_eq!(&q, &p);
        let k = connectivity_matrix(&net);
        prop_assert_eq!(evaluate(&net, &q, true, &k).unwrap(), evaluate(&net, &p, true, &k).unwrap());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn hbmo_never_beats_the_oracle(c in case(), seed in any::<u64>()) {
        let net = c.network();
        let params = HbmoParams {
            n_drones: 8,
            spermatheca_capacity: 4,
            n_broods: 4,
            max_iterations: 10,
            ..HbmoParams::default().with_seed(seed)
        };
        for regime in regimes() {
            let r = hbmo::solve(&net, regime, &params).unwrap();
            match exhaustive_min(&net, regime, OracleOptions::default()) {
                Ok(exact) => prop_assert!(r.best.len() >= exact.cardinality),
                Err(_) => prop_assert!(!r.feasible),
            }
            prop_assert!(r.history.windows(2).all(|w| w[1] <= w[0]));
            if r.feasible {
                prop_assert!(Evaluator::new(&net, regime).unwrap().is_feasible(&r.best));
                prop_assert_eq!(r.best_fitness, r.best.total_cost(&net));
            }
        }
    }
}
