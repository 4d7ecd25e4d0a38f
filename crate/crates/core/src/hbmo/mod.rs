//! Honey bee mating optimisation for minimum-cost PMU placement.
//!
//! Each generation the queen (best placement so far) performs a mating flight
//! over the drone population, accepting drones with an annealing-style
//! probability. Broods are bred by uniform crossover between the queen and
//! accepted drones, then improved by workers (mutation, greedy repair, greedy
//! prune). A brood that strictly beats the queen replaces her; broods also
//! refresh the drone population.
//!
//! Every random draw comes from a ChaCha stream keyed by
//! `(seed, phase, generation, index)`, so serial and parallel brood
//! evaluation give bit-identical results.

mod operators;
mod params;

use std::cmp::Ordering;
use std::time::{Duration, Instant};

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use thiserror::Error;

pub use operators::{
    acceptance_probability, breed, initialize_population, mating_flight, worker_improve, Flight,
};
pub use params::HbmoParams;

use crate::netmodel::Network;
use crate::observability::{Evaluator, ObservabilityError, Placement, Regime};
use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HbmoError {
    #[error("invalid parameter {name}: {reason}")]
    InvalidParam { name: &'static str, reason: String },
    #[error("penalty weight {penalty} must exceed the total PMU cost {total_cost}")]
    PenaltyTooSmall { penalty: String, total_cost: String },
    #[error(transparent)]
    Observability(#[from] ObservabilityError),
}

/// A placement with its penalised fitness.
#[derive(Debug, Clone, PartialEq)]
pub struct Candidate<T> {
    pub placement: Placement,
    pub fitness: T,
    pub violations: usize,
}

impl<T: Scalar> Candidate<T> {
    fn score(eval: &Evaluator<'_, T>, placement: Placement, penalty: T) -> Self {
        let violations = eval.violations(&placement);
        let fitness = placement.total_cost(eval.network()) + penalty * T::from_count(violations);
        Self {
            placement,
            fitness,
            violations,
        }
    }

    pub fn feasible(&self) -> bool {
        self.violations == 0
    }
}

/// How brood evaluation is scheduled. Results do not depend on the choice.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub enum Execution {
    #[default]
    Serial,
    Parallel,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SolveResult<T> {
    pub best: Placement,
    pub best_fitness: T,
    pub feasible: bool,
    /// Queen fitness after each generation; non-increasing.
    pub history: Vec<T>,
    /// Placements scored, including those probed by repair and prune.
    pub evaluations: u64,
    pub wall_time: Duration,
}

/// Penalised cost: total PMU cost plus `penalty_weight` per violation
/// (unobserved buses on the intact network plus failing contingencies).
pub fn fitness<T: Scalar>(
    net: &Network<T>,
    p: &Placement,
    regime: Regime,
    params: &HbmoParams<T>,
) -> Result<T, HbmoError> {
    let penalty = params.validate(net)?;
    let eval = Evaluator::new(net, regime)?;
    Ok(Candidate::score(&eval, p.clone(), penalty).fitness)
}

const PHASE_INIT: u64 = 1;
const PHASE_FLIGHT: u64 = 2;
const PHASE_BROOD: u64 = 3;

/// Independent random stream for one `(phase, generation, index)` slot.
fn stream(seed: u64, phase: u64, generation: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream((phase << 56) | ((generation & 0xFF_FFFF_FFFF) << 16) | (index & 0xFFFF));
    rng
}

fn by_fitness<T: Scalar>(a: &Candidate<T>, b: &Candidate<T>) -> Ordering {
    a.fitness.partial_cmp(&b.fitness).unwrap_or(Ordering::Equal)
}

/// Lowest fitness, first index on ties.
fn best_of<T: Scalar>(pool: &[Candidate<T>]) -> Option<&Candidate<T>> {
    pool.iter()
        .fold(None, |best: Option<&Candidate<T>>, c| match best {
            Some(b) if by_fitness(c, b) != Ordering::Less => Some(b),
            _ => Some(c),
        })
}

pub fn solve<T: Scalar>(
    net: &Network<T>,
    regime: Regime,
    params: &HbmoParams<T>,
) -> Result<SolveResult<T>, HbmoError> {
    solve_with(net, regime, params, Execution::Serial)
}

pub fn solve_with<T: Scalar>(
    net: &Network<T>,
    regime: Regime,
    params: &HbmoParams<T>,
    execution: Execution,
) -> Result<SolveResult<T>, HbmoError> {
    let started = Instant::now();
    let penalty = params.validate(net)?;
    let eval = Evaluator::new(net, regime)?;
    let n = net.bus_count();

    let mut init_rng = stream(params.seed, PHASE_INIT, 0, 0);
    let mut drones: Vec<Candidate<T>> = initialize_population(n, params.n_drones, &mut init_rng)
        .into_iter()
        .map(|p| Candidate::score(&eval, p, penalty))
        .collect();
    let mut queen = best_of(&drones).expect("n_drones > 0").clone();

    let flight = Flight {
        speed: params.speed_init,
        decay: params.speed_decay,
        min_speed: params.speed_min,
        capacity: params.spermatheca_capacity,
    };

    let mut history = Vec::with_capacity(params.max_iterations);
    let mut stagnant = 0usize;
    for generation in 0..params.max_iterations as u64 {
        let mut flight_rng = stream(params.seed, PHASE_FLIGHT, generation, 0);
        let spermatheca = mating_flight(&queen, &drones, flight, &mut flight_rng);

        let make_brood = |index: usize| {
            let mut rng = stream(params.seed, PHASE_BROOD, generation, index as u64);
            let sperm = if spermatheca.is_empty() {
                &queen.placement
            } else {
                &drones[spermatheca[rng.gen_range(0..spermatheca.len())]].placement
            };
            let child = breed(&queen.placement, sperm, &mut rng);
            let child = worker_improve(&eval, child, params.mutation_rate, &mut rng);
            Candidate::score(&eval, child, penalty)
        };
        let broods: Vec<Candidate<T>> = match execution {
            Execution::Serial => (0..params.n_broods).map(make_brood).collect(),
            Execution::Parallel => (0..params.n_broods)
                .into_par_iter()
                .map(make_brood)
                .collect(),
        };

        let improved = match best_of(&broods) {
            Some(b) if by_fitness(b, &queen) == Ordering::Less => {
                queen = b.clone();
                true
            }
            _ => false,
        };

        // Broods join the drone pool; keep the fittest distinct placements.
        for b in broods {
            if !drones.iter().any(|d| d.placement == b.placement) {
                drones.push(b);
            }
        }
        drones.sort_by(by_fitness);
        drones.truncate(params.n_drones);

        history.push(queen.fitness);
        stagnant = if improved { 0 } else { stagnant + 1 };
        if params.stagnation_window.is_some_and(|w| stagnant >= w) {
            break;
        }
    }

    Ok(SolveResult {
        feasible: queen.feasible(),
        best_fitness: queen.fitness,
        best: queen.placement,
        history,
        evaluations: eval.evaluations(),
        wall_time: started.elapsed(),
    })
}
