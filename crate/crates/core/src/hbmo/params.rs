use super::HbmoError;
use crate::netmodel::Network;
use crate::scalar::Scalar;

/// Honey bee mating optimisation settings.
#[derive(Debug, Clone, PartialEq)]
pub struct HbmoParams<T = f64> {
    /// Size of the drone population.
    pub n_drones: usize,
    /// Maximum number of drones accepted per mating flight.
    pub spermatheca_capacity: usize,
    /// Children bred per generation.
    pub n_broods: usize,
    /// Queen speed at the start of each flight (annealing temperature).
    pub speed_init: f64,
    /// Multiplicative speed decay applied after each probe.
    pub speed_decay: f64,
    /// The flight ends once speed drops to this value.
    pub speed_min: f64,
    pub max_iterations: usize,
    /// Per-bus flip probability in the worker step.
    pub mutation_rate: f64,
    /// Cost charged per violation. `None` resolves to 1000 times the largest
    /// bus cost.
    pub penalty_weight: Option<T>,
    pub seed: u64,
    /// Stop after this many generations without improvement.
    pub stagnation_window: Option<usize>,
}

impl<T: Scalar> Default for HbmoParams<T> {
    fn default() -> Self {
        Self {
            n_drones: 50,
            spermatheca_capacity: 10,
            n_broods: 20,
            speed_init: 10.0,
            speed_decay: 0.98,
            speed_min: 0.1,
            max_iterations: 200,
            mutation_rate: 0.05,
            penalty_weight: None,
            seed: 0,
            stagnation_window: None,
        }
    }
}

impl<T: Scalar> HbmoParams<T> {
    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    /// Penalty weight in effect for `net`. The default is 1000 times the
    /// largest bus cost, raised to twice the total cost plus one when that
    /// would not exceed the cost of the full placement (e.g. all-zero costs).
    pub fn resolved_penalty(&self, net: &Network<T>) -> T {
        self.penalty_weight.unwrap_or_else(|| {
            let total = net.total_cost();
            let scaled = T::from_count(1000) * net.max_cost();
            if scaled > total {
                scaled
            } else {
                total + total + T::one()
            }
        })
    }

    /// Checks every bound and returns the resolved penalty weight.
    pub fn validate(&self, net: &Network<T>) -> Result<T, HbmoError> {
        let bad = |name: &'static str, reason: &str| {
            Err(HbmoError::InvalidParam {
                name,
                reason: reason.to_string(),
            })
        };
        if self.n_drones == 0 {
            return bad("n_drones", "must be positive");
        }
        if self.spermatheca_capacity == 0 || self.spermatheca_capacity > self.n_drones {
            return bad("spermatheca_capacity", "must be in 1..=n_drones");
        }
        if self.n_broods == 0 {
            return bad("n_broods", "must be positive");
        }
        if !(self.speed_init.is_finite() && self.speed_init > 0.0) {
            return bad("speed_init", "must be positive");
        }
        if !(self.speed_decay > 0.0 && self.speed_decay < 1.0) {
            return bad("speed_decay", "must be in (0, 1)");
        }
        if !(self.speed_min.is_finite() && self.speed_min > 0.0) {
            return bad("speed_min", "must be positive");
        }
        if self.max_iterations == 0 {
            return bad("max_iterations", "must be positive");
        }
        if !(0.0..=1.0).contains(&self.mutation_rate) {
            return bad("mutation_rate", "must be in [0, 1]");
        }
        if self.stagnation_window == Some(0) {
            return bad("stagnation_window", "must be positive when set");
        }
        let penalty = self.resolved_penalty(net);
        let total = net.total_cost();
        if penalty <= total {
            return Err(HbmoError::PenaltyTooSmall {
                penalty: penalty.to_string(),
                total_cost: total.to_string(),
            });
        }
        Ok(penalty)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn chain() -> Network<f64> {
        Network::from_edges(3, [(1, 2), (2, 3)]).unwrap()
    }

    #[test]
    fn defaults_validate() {
        let p = HbmoParams::<f64>::default();
        assert_eq!(p.validate(&chain()).unwrap(), 1000.0);
    }

    #[test]
    fn rejects_out_of_bounds() {
        let net = chain();
        let cases: Vec<HbmoParams<f64>> = vec![
            HbmoParams {
                n_drones: 0,
                ..Default::default()
            },
            HbmoParams {
                spermatheca_capacity: 51,
                ..Default::default()
            },
            HbmoParams {
                n_broods: 0,
                ..Default::default()
            },
            HbmoParams {
                speed_init: 0.0,
                ..Default::default()
            },
            HbmoParams {
                speed_decay: 1.0,
                ..Default::default()
            },
            HbmoParams {
                speed_min: -1.0,
                ..Default::default()
            },
            HbmoParams {
                max_iterations: 0,
                ..Default::default()
            },
            HbmoParams {
                mutation_rate: 1.5,
                ..Default::default()
            },
            HbmoParams {
                stagnation_window: Some(0),
                ..Default::default()
            },
        ];
        for c in cases {
            assert!(
                matches!(c.validate(&net), Err(HbmoError::InvalidParam { .. })),
                "{c:?}"
            );
        }
        let low = HbmoParams {
            penalty_weight: Some(3.0),
            ..Default::default()
        };
        assert!(matches!(
            low.validate(&net),
            Err(HbmoError::PenaltyTooSmall { .. })
        ));
    }

    #[test]
    fn zero_costs_still_get_a_penalty() {
        let net = chain().with_costs(vec![0.0; 3]).unwrap();
        assert_eq!(HbmoParams::<f64>::default().validate(&net).unwrap(), 1.0);
    }
}
