//! Options and parallel helpers shared by the exhaustive searches.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::mask::first_subset;

/// Controls an exhaustive search. Results never depend on `workers`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchOptions {
    /// Largest size examined; `None` selects the operation's default.
    pub cap: Option<usize>,
    pub workers: usize,
    /// Anchor vertex 0 on vertex-transitive graphs.
    pub use_symmetry: bool,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions { cap: None, workers: 1, use_symmetry: true }
    }
}

impl SearchOptions {
    pub fn with_cap(cap: usize) -> Self {
        SearchOptions { cap: Some(cap), ..Self::default() }
    }

    pub fn workers(mut self, workers: usize) -> Self {
        self.workers = workers.max(1);
        self
    }

    pub fn symmetry(mut self, on: bool) -> Self {
        self.use_symmetry = on;
        self
    }
}

pub(crate) fn with_pool<T: Send>(workers: usize, f: impl FnOnce() -> T + Send) -> T {
    match rayon::ThreadPoolBuilder::new().num_threads(workers.max(1)).build() {
        Ok(pool) => pool.install(f),
        Err(_) => f(),
    }
}

/// Lexicographically first `size`-subset of `pool`, joined with `base`, satisfying `pred`.
/// Work is split by the two smallest chosen elements; the answer is the same as a
/// sequential scan.
pub(crate) fn par_first_subset(
    pool: &[usize],
    size: usize,
    base: u128,
    pred: impl Fn(u128) -> bool + Sync,
) -> Option<u128> {
    let test = |m: u128| pred(m).then_some(m);
    if size < 2 || pool.len() < 2 {
        return first_subset(pool, size, base, test);
    }
    let prefixes: Vec<(usize, usize)> = (0..pool.len())
        .flat_map(|i| (i + 1..pool.len()).map(move |j| (i, j)))
        .filter(|&(_, j)| pool.len() - j > size - 2)
        .collect();
    prefixes.par_iter().find_map_first(|&(i, j)| {
        let head = base | 1 << pool[i] | 1 << pool[j];
        first_subset(&pool[j + 1..], size - 2, head, test)
    })
}
