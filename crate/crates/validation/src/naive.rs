//! Deliberately plain reimplementation of the observability rules on dense
//! matrices, independent of the bitset code in `pmu-core`.

use crate::random::RandomCase;

/// Dense `K` with unit diagonal, optionally with one 0-based branch removed.
pub fn dense_k(case: &RandomCase, skip_edge: Option<usize>) -> Vec<Vec<u32>> {
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
    k
}

/// `sum_j U_j K_ij` for every bus.
pub fn direct_counts(k: &[Vec<u32>], mask: &[bool]) -> Vec<u32> {
    k.iter()
        .map(|row| {
            row.iter()
                .zip(mask)
                .map(|(&kij, &u)| kij * u32::from(u))
                .sum()
        })
        .collect()
}

/// Observed buses after rescanning every ZIB until nothing changes.
pub fn observed(case: &RandomCase, k: &[Vec<u32>], mask: &[bool], use_zib: bool) -> Vec<bool> {
    let n = case.n;
    let mut seen: Vec<bool> = direct_counts(k, mask).iter().map(|&c| c >= 1).collect();
    if !use_zib {
        return seen;
    }
    loop {
        let mut changed = false;
        for z in (0..n).filter(|&z| case.zib[z]) {
            let missing: Vec<usize> = (0..n).filter(|&j| k[z][j] == 1 && !seen[j]).collect();
            if let [only] = missing[..] {
                seen[only] = true;
                changed = true;
            }
        }
        if !changed {
            return seen;
        }
    }
}

/// Smallest feasible cardinality by brute force over all `2^n` masks,
/// or `None` when no mask is feasible.
pub fn min_cardinality(n: usize, feasible: impl Fn(&[bool]) -> bool) -> Option<usize> {
    (0u32..1 << n)
        .filter_map(|bits| {
            let mask: Vec<bool> = (0..n).map(|i| bits >> i & 1 == 1).collect();
            feasible(&mask).then_some(bits.count_ones() as usize)
        })
        .min()
}
