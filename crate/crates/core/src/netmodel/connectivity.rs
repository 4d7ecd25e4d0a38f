use fixedbitset::FixedBitSet;

use super::network::{Branch, Network, NetworkError};
use crate::scalar::Scalar;

/// Binary bus incidence `K` with unit diagonal: `K[i][j] = 1` iff `i == j`
/// or an in-service branch joins `i` and `j`. Each row is the closed
/// neighbourhood of its bus, i.e. the set of buses a PMU there observes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConnectivityMatrix {
    rows: Vec<FixedBitSet>,
}

impl ConnectivityMatrix {
    pub fn identity(n: usize) -> Self {
        let rows = (0..n)
            .map(|i| {
                let mut row = FixedBitSet::with_capacity(n);
                row.insert(i);
                row
            })
            .collect();
        Self { rows }
    }

    pub(crate) fn from_branches<'a, I>(n: usize, branches: I) -> Self
    where
        I: IntoIterator<Item = &'a Branch>,
    {
        let mut k = Self::identity(n);
        for b in branches {
            k.rows[b.from()].insert(b.to());
            k.rows[b.to()].insert(b.from());
        }
        k
    }

    /// Builds a matrix from dense 0/1 rows. Returns `None` unless the input is
    /// square, symmetric and has a unit diagonal.
    pub fn from_dense(dense: &[Vec<u8>]) -> Option<Self> {
        let n = dense.len();
        let mut rows = Vec::with_capacity(n);
        for (i, r) in dense.iter().enumerate() {
            if r.len() != n || r[i] != 1 {
                return None;
            }
            let mut row = FixedBitSet::with_capacity(n);
            for (j, &v) in r.iter().enumerate() {
                match v {
                    0 => {}
                    1 => row.insert(j),
                    _ => return None,
                }
            }
            rows.push(row);
        }
        let k = Self { rows };
        k.is_symmetric().then_some(k)
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn get(&self, i: usize, j: usize) -> bool {
        self.rows[i].contains(j)
    }

    /// Closed neighbourhood of bus `i`.
    pub fn row(&self, i: usize) -> &FixedBitSet {
        &self.rows[i]
    }

    /// Adjacent buses of `i`, excluding `i` itself.
    pub fn neighbors(&self, i: usize) -> impl Iterator<Item = usize> + '_ {
        self.rows[i].ones().filter(move |&j| j != i)
    }

    pub fn row_sum(&self, i: usize) -> usize {
        self.rows[i].count_ones(..)
    }

    pub fn is_symmetric(&self) -> bool {
        self.rows
            .iter()
            .enumerate()
            .all(|(i, row)| row.ones().all(|j| self.rows[j].contains(i)))
    }

    pub fn has_unit_diagonal(&self) -> bool {
        self.rows.iter().enumerate().all(|(i, r)| r.contains(i))
    }

    pub fn to_dense(&self) -> Vec<Vec<u8>> {
        let n = self.dim();
        self.rows
            .iter()
            .map(|r| (0..n).map(|j| u8::from(r.contains(j))).collect())
            .collect()
    }

    /// Entries `(i, j)` where the two matrices disagree, in row-major order.
    pub fn differing_entries(&self, other: &Self) -> Vec<(usize, usize)> {
        assert_eq!(self.dim(), other.dim(), "matrix dimensions differ");
        self.rows
            .iter()
            .zip(&other.rows)
            .enumerate()
            .flat_map(|(i, (a, b))| a.symmetric_difference(b).map(move |j| (i, j)))
            .collect()
    }
}

/// Connectivity matrix of the intact network.
pub fn connectivity_matrix<T: Scalar>(net: &Network<T>) -> ConnectivityMatrix {
    ConnectivityMatrix::from_branches(net.bus_count(), net.branches())
}

/// Connectivity matrix with branch `line_id` out of service. A parallel
/// circuit between the same buses keeps the entry at one.
pub fn line_outage_matrix<T: Scalar>(
    net: &Network<T>,
    line_id: usize,
) -> Result<ConnectivityMatrix, NetworkError> {
    if net.branch(line_id).is_none() {
        return Err(NetworkError::UnknownLine(line_id));
    }
    Ok(ConnectivityMatrix::from_branches(
        net.bus_count(),
        net.branches().iter().filter(|b| b.line_id() != line_id),
    ))
}
