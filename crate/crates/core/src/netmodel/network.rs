use fixedbitset::FixedBitSet;
use thiserror::Error;

use crate::scalar::Scalar;

/// Errors raised while assembling a [`Network`]. Bus numbers are 1-based.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NetworkError {
    #[error("network has no buses")]
    Empty,
    #[error("bus {bus} out of range 1..={bus_count}")]
    BusOutOfRange { bus: usize, bus_count: usize },
    #[error("line {line_id} connects bus {bus} to itself")]
    SelfLoop { line_id: usize, bus: usize },
    #[error("duplicate line id {0}")]
    DuplicateLineId(usize),
    #[error("line ids must be contiguous from 1 to {branch_count}, found {line_id}")]
    NonContiguousLineIds { line_id: usize, branch_count: usize },
    #[error("unknown line id {0}")]
    UnknownLine(usize),
    #[error("cost vector has {got} entries, expected {expected}")]
    CostLength { got: usize, expected: usize },
    #[error("cost of bus {bus} is negative or not finite")]
    InvalidCost { bus: usize },
}

/// A transmission branch. Endpoints are stored 0-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Branch {
    line_id: usize,
    from: usize,
    to: usize,
}

impl Branch {
    /// 1-based line identifier, unique within the network.
    pub fn line_id(&self) -> usize {
        self.line_id
    }

    pub fn from(&self) -> usize {
        self.from
    }

    pub fn to(&self) -> usize {
        self.to
    }

    /// True if the branch joins `a` and `b` in either direction.
    pub fn joins(&self, a: usize, b: usize) -> bool {
        (self.from == a && self.to == b) || (self.from == b && self.to == a)
    }

    /// The endpoint opposite to `bus`, if `bus` is an endpoint.
    pub fn other(&self, bus: usize) -> Option<usize> {
        if self.from == bus {
            Some(self.to)
        } else if self.to == bus {
            Some(self.from)
        } else {
            None
        }
    }
}

/// Immutable grid topology with zero-injection flags and per-bus PMU costs.
///
/// All accessors take and return 0-based bus indices unless their name says
/// otherwise. Constructors take 1-based indices, matching case files and
/// published tables.
#[derive(Debug, Clone, PartialEq)]
pub struct Network<T = f64> {
    bus_count: usize,
    branches: Vec<Branch>,
    zib: FixedBitSet,
    cost: Vec<T>,
}

impl<T: Scalar> Network<T> {
    /// Builds a network from `(line_id, from, to)` triples, all 1-based.
    /// Branch order is preserved. Costs default to one per bus.
    pub fn new<I>(bus_count: usize, branches: I) -> Result<Self, NetworkError>
    where
        I: IntoIterator<Item = (usize, usize, usize)>,
    {
        if bus_count == 0 {
            return Err(NetworkError::Empty);
        }
        let check = |bus: usize| {
            if bus == 0 || bus > bus_count {
                Err(NetworkError::BusOutOfRange { bus, bus_count })
            } else {
                Ok(bus - 1)
            }
        };
        let mut out = Vec::new();
        for (line_id, from, to) in branches {
            let (f, t) = (check(from)?, check(to)?);
            if f == t {
                return Err(NetworkError::SelfLoop { line_id, bus: from });
            }
            out.push(Branch {
                line_id,
                from: f,
                to: t,
            });
        }
        let mut seen = FixedBitSet::with_capacity(out.len() + 1);
        for b in &out {
            if b.line_id == 0 || b.line_id > out.len() {
                return Err(NetworkError::NonContiguousLineIds {
                    line_id: b.line_id,
                    branch_count: out.len(),
                });
            }
            if seen.put(b.line_id) {
                return Err(NetworkError::DuplicateLineId(b.line_id));
            }
        }
        Ok(Self {
            bus_count,
            branches: out,
            zib: FixedBitSet::with_capacity(bus_count),
            cost: vec![T::one(); bus_count],
        })
    }

    /// Builds a network from `(from, to)` pairs, numbering lines in order.
    pub fn from_edges<I>(bus_count: usize, edges: I) -> Result<Self, NetworkError>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        Self::new(
            bus_count,
            edges
                .into_iter()
                .enumerate()
                .map(|(i, (f, t))| (i + 1, f, t)),
        )
    }

    /// Flags the given 1-based buses as zero-injection buses (replacing any
    /// previous set).
    pub fn with_zib<I>(mut self, buses: I) -> Result<Self, NetworkError>
    where
        I: IntoIterator<Item = usize>,
    {
        let mut zib = FixedBitSet::with_capacity(self.bus_count);
        for bus in buses {
            if bus == 0 || bus > self.bus_count {
                return Err(NetworkError::BusOutOfRange {
                    bus,
                    bus_count: self.bus_count,
                });
            }
            zib.insert(bus - 1);
        }
        self.zib = zib;
        Ok(self)
    }

    /// Replaces the per-bus cost vector (indexed 0-based).
    pub fn with_costs(mut self, cost: Vec<T>) -> Result<Self, NetworkError> {
        if cost.len() != self.bus_count {
            return Err(NetworkError::CostLength {
                got: cost.len(),
                expected: self.bus_count,
            });
        }
        for (i, c) in cost.iter().enumerate() {
            let finite = c.to_f64().is_some_and(f64::is_finite);
            if !finite || *c < T::zero() {
                return Err(NetworkError::InvalidCost { bus: i + 1 });
            }
        }
        self.cost = cost;
        Ok(self)
    }

    pub fn bus_count(&self) -> usize {
        self.bus_count
    }

    pub fn branch_count(&self) -> usize {
        self.branches.len()
    }

    /// Branches in case-file order.
    pub fn branches(&self) -> &[Branch] {
        &self.branches
    }

    pub fn branch(&self, line_id: usize) -> Option<&Branch> {
        self.branches.iter().find(|b| b.line_id == line_id)
    }

    pub fn zib(&self) -> &FixedBitSet {
        &self.zib
    }

    pub fn is_zib(&self, bus: usize) -> bool {
        self.zib.contains(bus)
    }

    /// Zero-injection buses, 1-based and ascending.
    pub fn zib_one_based(&self) -> Vec<usize> {
        self.zib.ones().map(|b| b + 1).collect()
    }

    pub fn cost(&self, bus: usize) -> T {
        self.cost[bus]
    }

    pub fn costs(&self) -> &[T] {
        &self.cost
    }

    /// Cost of placing a PMU on every bus.
    pub fn total_cost(&self) -> T {
        self.cost.iter().fold(T::zero(), |acc, &c| acc + c)
    }

    pub fn max_cost(&self) -> T {
        self.cost
            .iter()
            .fold(T::zero(), |acc, &c| if c > acc { c } else { acc })
    }

    /// Number of branches incident to `bus`, parallel circuits counted
    /// separately.
    pub fn branch_degree(&self, bus: usize) -> usize {
        self.branches
            .iter()
            .filter(|b| b.from == bus || b.to == bus)
            .count()
    }

    /// Same topology and ZIB flags with every bus cost converted to `U`.
    pub fn map_costs<U: Scalar>(&self, f: impl Fn(T) -> U) -> Network<U> {
        Network {
            bus_count: self.bus_count,
            branches: self.branches.clone(),
            zib: self.zib.clone(),
            cost: self.cost.iter().map(|&c| f(c)).collect(),
        }
    }

    /// Serialises to the native line-oriented case format.
    pub fn to_native(&self) -> String {
        let mut out = format!("buses {}\n", self.bus_count);
        for b in &self.branches {
            out.push_str(&format!("edge {} {} {}\n", b.line_id, b.from + 1, b.to + 1));
        }
        for z in self.zib.ones() {
            out.push_str(&format!("zib {}\n", z + 1));
        }
        for (i, c) in self.cost.iter().enumerate() {
            if !c.is_one() {
                out.push_str(&format!("cost {} {}\n", i + 1, c));
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builds_chain() {
        let net = Network::<f64>::from_edges(3, [(1, 2), (2, 3)]).unwrap();
        assert_eq!(net.bus_count(), 3);
        assert_eq!(net.branch_count(), 2);
        assert_eq!(net.branch(2).unwrap().from(), 1);
        assert_eq!(net.total_cost(), 3.0);
    }

    #[test]
    fn rejects_invalid_topology() {
        assert_eq!(
            Network::<f64>::from_edges(0, []).unwrap_err(),
            NetworkError::Empty
        );
        assert_eq!(
            Network::<f64>::from_edges(2, [(1, 3)]).unwrap_err(),
            NetworkError::BusOutOfRange {
                bus: 3,
                bus_count: 2
            }
        );
        assert_eq!(
            Network::<f64>::from_edges(2, [(2, 2)]).unwrap_err(),
            NetworkError::SelfLoop { line_id: 1, bus: 2 }
        );
        assert_eq!(
            Network::<f64>::new(3, [(1, 1, 2), (1, 2, 3)]).unwrap_err(),
            NetworkError::DuplicateLineId(1)
        );
        assert!(matches!(
            Network::<f64>::new(3, [(1, 1, 2), (3, 2, 3)]).unwrap_err(),
            NetworkError::NonContiguousLineIds { line_id: 3, .. }
        ));
    }

    #[test]
    fn line_ids_may_appear_out_of_order() {
        let net = Network::<f64>::new(3, [(2, 1, 2), (1, 2, 3)]).unwrap();
        assert_eq!(net.branches()[0].line_id(), 2);
        assert!(net.branch(1).unwrap().joins(2, 1));
    }

    #[test]
    fn parallel_branches_kept() {
        let net = Network::<f64>::from_edges(2, [(1, 2), (2, 1)]).unwrap();
        assert_eq!(net.branch_count(), 2);
        assert_eq!(net.branch_degree(0), 2);
    }

    #[test]
    fn zib_and_costs_validated() {
        let net = Network::<f64>::from_edges(2, [(1, 2)]).unwrap();
        assert!(net.clone().with_zib([3]).is_err());
        assert!(net.clone().with_costs(vec![1.0]).is_err());
        assert!(net.clone().with_costs(vec![1.0, -1.0]).is_err());
        assert!(net.clone().with_costs(vec![1.0, f64::NAN]).is_err());
        let net = net
            .with_zib([2])
            .unwrap()
            .with_costs(vec![2.0, 0.5])
            .unwrap();
        assert_eq!(net.zib_one_based(), vec![2]);
        assert_eq!(net.max_cost(), 2.0);
    }
}
