//! Exhaustive connected-subgraph form of the classical lower bound.

use std::collections::BTreeMap;

use super::OracleError;
use crate::graph::{all_pairs, pair_key, OverlapGraph};

pub const MAX_SUBGRAPH_VERTICES: usize = 7;

/// Calls `visit(vertex_mask, value)` for every nonempty edge subset whose
/// edges form one connected subgraph, with `value = 1 − m′ + Σ r`.
fn for_each_connected_subgraph(g: &OverlapGraph<f64>, mut visit: impl FnMut(u32, f64)) -> Result<(), OracleError> {
    let n = g.n();
    if n > MAX_SUBGRAPH_VERTICES {
        return Err(OracleError::TooLarge {
            size: n,
            max: MAX_SUBGRAPH_VERTICES,
        });
    }
    let edges: Vec<(usize, usize, f64)> = g.edges().map(|((i, j), e)| (i, j, e.value.lo())).collect();
    let m = edges.len();
    for subset in 1u32..(1u32 << m) {
        let mut parent: [usize; MAX_SUBGRAPH_VERTICES] = [0, 1, 2, 3, 4, 5, 6];
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        let mut mask = 0u32;
        let mut sum = 0.0;
        let mut count = 0usize;
        for (bit, &(i, j, r)) in edges.iter().enumerate() {
            if subset & (1 << bit) == 0 {
                continue;
            }
            mask |= (1 << i) | (1 << j);
            sum += r;
            count += 1;
            let (a, b) = (find(&mut parent, i), find(&mut parent, j));
            parent[a] = b;
        }
        let root = find(&mut parent, mask.trailing_zeros() as usize);
        let connected = (0..n).all(|v| mask & (1 << v) == 0 || find(&mut parent, v) == root);
        if connected {
            visit(mask, 1.0 - count as f64 + sum);
        }
    }
    Ok(())
}

/// Largest `1 − m′ + Σ r` over connected edge subgraphs containing both `k`
/// and `l`, clamped at 0. At most 7 vertices.
pub fn connected_subgraph_lower(g: &OverlapGraph<f64>, k: usize, l: usize) -> Result<f64, OracleError> {
    let want = (1u32 << k) | (1u32 << l);
    let mut best = 0.0f64;
    for_each_connected_subgraph(g, |mask, value| {
        if mask & want == want {
            best = best.max(value);
        }
    })?;
    Ok(best)
}

/// [`connected_subgraph_lower`] for every vertex pair from one enumeration.
pub fn connected_subgraph_lower_all(g: &OverlapGraph<f64>) -> Result<BTreeMap<(usize, usize), f64>, OracleError> {
    let n = g.n();
    let mut best: BTreeMap<(usize, usize), f64> = all_pairs(n).map(|p| (p, 0.0)).collect();
    for_each_connected_subgraph(g, |mask, value| {
        let members: Vec<usize> = (0..n).filter(|v| mask & (1 << v) != 0).collect();
        for (x, &i) in members.iter().enumerate() {
            for &j in &members[x + 1..] {
                let slot = best.get_mut(&pair_key(i, j)).expect("pair present");
                *slot = slot.max(value);
            }
        }
    })?;
    Ok(best)
}
