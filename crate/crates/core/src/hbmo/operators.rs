use rand::seq::SliceRandom;
use rand::Rng;

use super::Candidate;
use crate::improve::{greedy_repair, prune};
use crate::observability::{Evaluator, Placement};
use crate::scalar::Scalar;

/// Draws `n_drones` placements, each bus included with probability 1/2.
pub fn initialize_population<R: Rng + ?Sized>(
    bus_count: usize,
    n_drones: usize,
    rng: &mut R,
) -> Vec<Placement> {
    (0..n_drones)
        .map(|_| {
            let mut p = Placement::empty(bus_count);
            for bus in 0..bus_count {
                if rng.gen_bool(0.5) {
                    p.insert(bus);
                }
            }
            p
        })
        .collect()
}

/// Annealing schedule of one mating flight.
#[derive(Debug, Clone, Copy)]
pub struct Flight {
    pub speed: f64,
    pub decay: f64,
    pub min_speed: f64,
    pub capacity: usize,
}

/// Acceptance probability of a drone whose fitness differs from the queen's
/// by `gap` when the queen flies at `speed`.
pub fn acceptance_probability(gap: f64, speed: f64) -> f64 {
    (-gap.abs() / speed).exp()
}

/// Probes drones in random order while the queen is fast enough and her
/// spermatheca has room. Returns the indices of accepted drones in
/// acceptance order.
pub fn mating_flight<T: Scalar, R: Rng + ?Sized>(
    queen: &Candidate<T>,
    drones: &[Candidate<T>],
    flight: Flight,
    rng: &mut R,
) -> Vec<usize> {
    let mut order: Vec<usize> = (0..drones.len()).collect();
    order.shuffle(rng);
    let mut speed = flight.speed;
    let mut accepted = Vec::new();
    for i in order {
        if speed <= flight.min_speed || accepted.len() >= flight.capacity {
            break;
        }
        let gap = (drones[i].fitness - queen.fitness)
            .to_f64()
            .unwrap_or(f64::INFINITY);
        if rng.gen::<f64>() < acceptance_probability(gap, speed) {
            accepted.push(i);
        }
        speed *= flight.decay;
    }
    accepted
}

/// Uniform crossover: each bus follows the queen or the sperm with equal
/// probability.
pub fn breed<R: Rng + ?Sized>(queen: &Placement, sperm: &Placement, rng: &mut R) -> Placement {
    debug_assert_eq!(queen.bus_count(), sperm.bus_count());
    let mut child = Placement::empty(queen.bus_count());
    for bus in 0..queen.bus_count() {
        let parent = if rng.gen_bool(0.5) { queen } else { sperm };
        if parent.contains(bus) {
            child.insert(bus);
        }
    }
    child
}

/// Worker step: random bit flips, then greedy repair, then greedy prune.
pub fn worker_improve<T: Scalar, R: Rng + ?Sized>(
    eval: &Evaluator<'_, T>,
    mut child: Placement,
    mutation_rate: f64,
    rng: &mut R,
) -> Placement {
    if mutation_rate > 0.0 {
        for bus in 0..child.bus_count() {
            if rng.gen_bool(mutation_rate) {
                child.toggle(bus);
            }
        }
    }
    greedy_repair(eval, &mut child);
    prune(eval, &mut child);
    child
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::netmodel::Network;
    use crate::observability::Regime;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn cand(buses: &[usize], fitness: f64) -> Candidate<f64> {
        Candidate {
            placement: Placement::from_one_based(4, buses).unwrap(),
            fitness,
            violations: 0,
        }
    }

    fn flight() -> Flight {
        Flight {
            speed: 10.0,
            decay: 0.98,
            min_speed: 0.1,
            capacity: 10,
        }
    }

    #[test]
    fn population_is_seeded() {
        let a = initialize_population(14, 50, &mut ChaCha8Rng::seed_from_u64(3));
        let b = initialize_population(14, 50, &mut ChaCha8Rng::seed_from_u64(3));
        assert_eq!(a, b);
        assert_eq!(a.len(), 50);
    }

    #[test]
    fn population_mean_size_is_half() {
        let pop = initialize_population(14, 1000, &mut ChaCha8Rng::seed_from_u64(11));
        let mean = pop.iter().map(Placement::len).sum::<usize>() as f64 / 1000.0;
        assert!((mean - 7.0).abs() <= 1.0, "mean {mean}");
    }

    #[test]
    fn acceptance_limits() {
        assert_eq!(acceptance_probability(0.0, 10.0), 1.0);
        assert!(acceptance_probability(1.0, 1e-9) < 1e-300);
        assert!(acceptance_probability(5.0, 10.0) > acceptance_probability(5.0, 1.0));
    }

    #[test]
    fn equal_fitness_drones_always_accepted() {
        let queen = cand(&[1], 3.0);
        let drones: Vec<_> = (0..5).map(|_| cand(&[2], 3.0)).collect();
        let got = mating_flight(&queen, &drones, flight(), &mut ChaCha8Rng::seed_from_u64(0));
        assert_eq!(got.len(), 5);
    }

    #[test]
    fn flight_respects_capacity_and_speed() {
        let queen = cand(&[1], 3.0);
        let drones: Vec<_> = (0..30).map(|_| cand(&[2], 3.0)).collect();
        let mut f = flight();
        f.capacity = 4;
        let got = mating_flight(&queen, &drones, f, &mut ChaCha8Rng::seed_from_u64(0));
        assert_eq!(got.len(), 4);
        f.capacity = 30;
        f.speed = 0.1;
        let got = mating_flight(&queen, &drones, f, &mut ChaCha8Rng::seed_from_u64(0));
        assert!(got.is_empty());
        // far-off drones at low speed are practically never accepted
        let far: Vec<_> = (0..30).map(|_| cand(&[2], 1000.0)).collect();
        let mut f = flight();
        f.speed = 0.5;
        let got = mating_flight(&queen, &far, f, &mut ChaCha8Rng::seed_from_u64(0));
        assert!(got.is_empty());
    }

    #[test]
    fn flight_is_deterministic() {
        let queen = cand(&[1], 3.0);
        let drones: Vec<_> = (0..20).map(|i| cand(&[2], 3.0 + i as f64)).collect();
        let a = mating_flight(&queen, &drones, flight(), &mut ChaCha8Rng::seed_from_u64(9));
        let b = mating_flight(&queen, &drones, flight(), &mut ChaCha8Rng::seed_from_u64(9));
        assert_eq!(a, b);
    }

    #[test]
    fn crossover_properties() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let p = Placement::from_one_based(6, &[1, 4, 5]).unwrap();
        assert_eq!(breed(&p, &p, &mut rng), p);
        let q = Placement::from_one_based(6, &[2, 4]).unwrap();
        for _ in 0..100 {
            let c = breed(&p, &q, &mut rng);
            for bus in c.iter() {
                assert!(p.contains(bus) || q.contains(bus));
            }
            for bus in 0..6 {
                if p.contains(bus) && q.contains(bus) {
                    assert!(c.contains(bus));
                }
            }
        }
        let empty = Placement::empty(40);
        let full = Placement::full(40);
        let sizes: Vec<usize> = (0..500)
            .map(|_| breed(&empty, &full, &mut rng).len())
            .collect();
        let mean = sizes.iter().sum::<usize>() as f64 / 500.0;
        assert!((mean - 20.0).abs() < 1.0, "mean {mean}");
    }

    #[test]
    fn worker_prunes_and_repairs() {
        let net = Network::<f64>::from_edges(3, [(1, 2), (2, 3)]).unwrap();
        let eval = Evaluator::new(&net, Regime::base(false)).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let redundant = Placement::from_one_based(3, &[2, 3]).unwrap();
        let out = worker_improve(&eval, redundant, 0.0, &mut rng);
        assert_eq!(out.to_one_based(), vec![2]);
        let out = worker_improve(&eval, Placement::empty(3), 0.0, &mut rng);
        assert_eq!(out.to_one_based(), vec![2]);
        let minimal = Placement::from_one_based(3, &[2]).unwrap();
        assert_eq!(
            worker_improve(&eval, minimal.clone(), 0.0, &mut rng),
            minimal
        );
    }
}
