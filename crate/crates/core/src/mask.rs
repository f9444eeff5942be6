//! 128-bit mask kernel backing the exhaustive searches.

use crate::error::{invalid, Result};
use crate::fault::{FaultKind, FaultModelSpec};
use crate::{Graph, VertexSet};

pub(crate) const MAX_MASK_VERTICES: usize = 128;

#[derive(Clone, Debug)]
pub(crate) struct MaskGraph {
    pub n: usize,
    pub adj: Vec<u128>,
    pub full: u128,
}

pub(crate) fn bits(mut m: u128) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if m == 0 {
            None
        } else {
            let b = m.trailing_zeros() as usize;
            m &= m - 1;
            Some(b)
        }
    })
}

#[inline]
pub(crate) fn lowest(m: u128) -> u128 {
    m & m.wrapping_neg()
}

impl MaskGraph {
    pub fn new(graph: &Graph) -> Result<MaskGraph> {
        let n = graph.vertex_count();
        if n > MAX_MASK_VERTICES {
            return Err(invalid(format!(
                "exhaustive search supports at most {MAX_MASK_VERTICES} vertices, graph has {n}"
            )));
        }
        let adj = (0..n).map(|v| graph.neighbors(v).iter().fold(0u128, |m, &w| m | 1 << w)).collect();
        let full = if n == 128 { u128::MAX } else { (1u128 << n) - 1 };
        Ok(MaskGraph { n, adj, full })
    }

    #[cfg(test)]
    pub fn mask(&self, set: &VertexSet) -> u128 {
        set.iter().fold(0, |m, v| m | 1 << v)
    }

    pub fn set(&self, mask: u128) -> VertexSet {
        let mut s = VertexSet::new(self.n);
        for v in bits(mask) {
            s.insert(v);
        }
        s
    }

    #[inline]
    pub fn neighbourhood(&self, m: u128) -> u128 {
        bits(m).fold(0, |acc, v| acc | self.adj[v])
    }

    /// Component of `alive` containing the lowest bit of `seed`.
    #[inline]
    pub fn component(&self, seed: u128, alive: u128) -> u128 {
        let mut comp = 0u128;
        let mut frontier = lowest(seed);
        while frontier != 0 {
            comp |= frontier;
            frontier = self.neighbourhood(frontier) & alive & !comp;
        }
        comp
    }

    /// Component masks of `G - removed` in order of smallest member.
    pub fn components(&self, removed: u128) -> Vec<u128> {
        let mut rest = self.full & !removed;
        let alive = rest;
        let mut out = Vec::new();
        while rest != 0 {
            let c = self.component(rest, alive);
            out.push(c);
            rest &= !c;
        }
        out
    }

    pub fn is_disconnected_after(&self, removed: u128) -> bool {
        let alive = self.full & !removed;
        alive != 0 && self.component(alive, alive) != alive
    }

    pub fn is_faulty(&self, f: u128, spec: FaultModelSpec) -> bool {
        let alive = self.full & !f;
        match spec.kind {
            FaultKind::Unrestricted => true,
            FaultKind::Conditional => self.adj.iter().all(|&a| a & alive != 0),
            FaultKind::GGoodNeighbor => {
                let g = spec.g as u32;
                g == 0 || bits(alive).all(|v| (self.adj[v] & alive).count_ones() >= g)
            }
            FaultKind::GExtra => {
                let g = spec.g as u32;
                if g == 0 {
                    return true;
                }
                let mut rest = alive;
                while rest != 0 {
                    let c = self.component(rest, alive);
                    if c.count_ones() <= g {
                        return false;
                    }
                    rest &= !c;
                }
                true
            }
        }
    }
}

/// Visits every `size`-subset of `pool` (given as ascending bit positions) in
/// lexicographic order, stopping at the first subset for which `visit` returns `Some`.
pub(crate) fn first_subset<T>(
    pool: &[usize],
    size: usize,
    base: u128,
    mut visit: impl FnMut(u128) -> Option<T>,
) -> Option<T> {
    if size > pool.len() {
        return None;
    }
    if size == 0 {
        return visit(base);
    }
    let mut idx: Vec<usize> = (0..size).collect();
    loop {
        let m = idx.iter().fold(base, |m, &i| m | 1 << pool[i]);
        if let Some(t) = visit(m) {
            return Some(t);
        }
        let mut i = size;
        loop {
            if i == 0 {
                return None;
            }
            i -= 1;
            if idx[i] < pool.len() - size + i {
                break;
            }
        }
        idx[i] += 1;
        for j in i + 1..size {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn subsets_are_lexicographic_and_complete() {
        let mut seen = Vec::new();
        first_subset(&[1, 3, 4, 7], 2, 0, |m| {
            seen.push(bits(m).collect::<Vec<_>>());
            None::<()>
        });
        assert_eq!(seen, vec![vec![1, 3], vec![1, 4], vec![1, 7], vec![3, 4], vec![3, 7], vec![4, 7]]);
        let mut empty = 0;
        first_subset(&[1, 2], 0, 0b1000, |m| {
            assert_eq!(m, 0b1000);
            empty += 1;
            None::<()>
        });
        assert_eq!(empty, 1);
        assert!(first_subset(&[1], 2, 0, |_| Some(())).is_none());
    }
}
