//! Small random networks for property checks.

use pmu_core::{Network64, Placement};
use rand::Rng;

#[derive(Debug, Clone)]
pub struct RandomCase {
    pub n: usize,
    /// 0-based endpoints; line `k + 1` is `edges[k]`.
    pub edges: Vec<(usize, usize)>,
    pub zib: Vec<bool>,
    /// Two independent placement masks.
    pub a: Vec<bool>,
    pub b: Vec<bool>,
}

impl RandomCase {
    /// Up to `max_n` buses, up to 12 branches (parallels allowed), about 30%
    /// zero-injection buses and fair-coin placements.
    pub fn generate<R: Rng + ?Sized>(rng: &mut R, max_n: usize) -> Self {
        let n = rng.gen_range(1..=max_n);
        let m = if n == 1 { 0 } else { rng.gen_range(0..=12) };
        let edges = (0..m)
            .map(|_| {
                let f = rng.gen_range(0..n);
                let t = (f + rng.gen_range(1..n)) % n;
                (f, t)
            })
            .collect();
        let zib = (0..n).map(|_| rng.gen_bool(0.3)).collect();
        let a = (0..n).map(|_| rng.gen_bool(0.5)).collect();
        let b = (0..n).map(|_| rng.gen_bool(0.5)).collect();
        Self {
            n,
            edges,
            zib,
            a,
            b,
        }
    }

    pub fn network(&self) -> Network64 {
        let zib: Vec<usize> = (1..=self.n).filter(|&i| self.zib[i - 1]).collect();
        Network64::from_edges(self.n, self.edges.iter().map(|&(f, t)| (f + 1, t + 1)))
            .and_then(|net| net.with_zib(zib))
            .expect("generated networks are valid")
    }

    pub fn placement(&self, mask: &[bool]) -> Placement {
        let buses: Vec<usize> = (1..=self.n).filter(|&i| mask[i - 1]).collect();
        Placement::from_one_based(self.n, &buses).expect("mask matches bus count")
    }

    pub fn union(&self) -> Vec<bool> {
        self.a.iter().zip(&self.b).map(|(&x, &y)| x || y).collect()
    }
}
