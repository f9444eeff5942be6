//! Exhaustive M-diagnosability search.
//!
//! Candidates are organised by the common part `I = F1 ∩ F2` and the symmetric
//! difference `Δ`. Indistinguishability constrains `Δ` before any split into
//! `F1 \ F2` and `F2 \ F1` is tried: under PMC `Δ` is a union of components of
//! `G - I`; under MM* every survivor touching `Δ` has no surviving neighbour and at
//! most two neighbours in `Δ`.

use std::cmp::Ordering;

use rayon::prelude::*;
use serde_json::json;

use crate::distinguish::{distinguishable, mask_distinguishable, syndrome_oracle_distinguishable, DiagnosticModel};
use crate::error::{invalid, Error, Result};
use crate::fault::{is_faulty_set, FaultModelSpec};
use crate::mask::{bits, first_subset, lowest, MaskGraph};
use crate::search::{with_pool, SearchOptions};
use crate::{Graph, VertexSet};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiagnosabilityResult {
    /// Exact when `exhaustive`; otherwise every pair up to `cap` was distinguishable.
    pub t: usize,
    pub exhaustive: bool,
    /// A smallest indistinguishable pair, with `f1` lexicographically first.
    pub extremal_pair: Option<(VertexSet, VertexSet)>,
    pub model: FaultModelSpec,
    pub diagnostic: DiagnosticModel,
    pub cap: usize,
}

impl DiagnosabilityResult {
    pub fn to_json(&self, graph: &Graph) -> serde_json::Value {
        json!({
            "t": self.t,
            "exhaustive": self.exhaustive,
            "extremal_pair": self.extremal_pair.as_ref().map(|(a, b)| json!({
                "f1": graph.labels_of(a),
                "f2": graph.labels_of(b),
            })),
            "model": self.model,
            "diagnostic": self.diagnostic,
            "cap": self.cap,
        })
    }
}

pub fn brute_force_diagnosability(
    graph: &Graph,
    model: FaultModelSpec,
    diagnostic: DiagnosticModel,
    cap: usize,
) -> Result<DiagnosabilityResult> {
    brute_force_diagnosability_with(graph, model, diagnostic, &SearchOptions::with_cap(cap))
}

/// Largest `t` such that all distinct admissible pairs of size at most `t` are
/// distinguishable, searching the maximum pair size upward to the cap (default `|V|`).
pub fn brute_force_diagnosability_with(
    graph: &Graph,
    model: FaultModelSpec,
    diagnostic: DiagnosticModel,
    opts: &SearchOptions,
) -> Result<DiagnosabilityResult> {
    let n = graph.vertex_count();
    if !graph.is_connected() {
        return Err(invalid("diagnosability search needs a connected graph"));
    }
    let cap = opts.cap.unwrap_or(n);
    if cap > n {
        return Err(invalid(format!("cap {cap} exceeds the vertex count {n}")));
    }
    let ctx = Ctx {
        mg: MaskGraph::new(graph)?,
        model,
        diagnostic,
        anchored: opts.use_symmetry && graph.is_vertex_transitive(),
    };
    let found = with_pool(opts.workers, || (1..=cap).find_map(|s| ctx.best_at_level(s).map(|c| (s, c))));
    let Some((s, best)) = found else {
        return Ok(DiagnosabilityResult { t: cap, exhaustive: cap >= n, extremal_pair: None, model, diagnostic, cap });
    };
    let (f1, f2) = (ctx.mg.set(best.lo), ctx.mg.set(best.hi));
    revalidate(graph, &f1, &f2, model, diagnostic)?;
    Ok(DiagnosabilityResult { t: s - 1, exhaustive: true, extremal_pair: Some((f1, f2)), model, diagnostic, cap })
}

fn revalidate(
    graph: &Graph,
    f1: &VertexSet,
    f2: &VertexSet,
    model: FaultModelSpec,
    diagnostic: DiagnosticModel,
) -> Result<()> {
    let faulty = is_faulty_set(graph, f1, model)? && is_faulty_set(graph, f2, model)?;
    let decided = distinguishable(graph, f1, f2, diagnostic)?.distinguishable;
    let oracle = syndrome_oracle_distinguishable(graph, f1, f2, diagnostic)?;
    if !faulty || decided || oracle {
        return Err(Error::VerificationFailed(format!(
            "extremal pair failed re-validation (faulty: {faulty}, decider: {decided}, oracle: {oracle})"
        )));
    }
    Ok(())
}

/// Lexicographic order of the ascending member lists of two masks.
pub(crate) fn lex_cmp_mask(a: u128, b: u128) -> Ordering {
    bits(a).cmp(bits(b))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
struct Candidate {
    total: u32,
    lo: u128,
    hi: u128,
}

impl Candidate {
    fn new(f1: u128, f2: u128) -> Self {
        let (lo, hi) = if lex_cmp_mask(f1, f2) == Ordering::Greater { (f2, f1) } else { (f1, f2) };
        Candidate { total: f1.count_ones() + f2.count_ones(), lo, hi }
    }

    fn cmp(&self, other: &Self) -> Ordering {
        self.total
            .cmp(&other.total)
            .then_with(|| lex_cmp_mask(self.lo, other.lo))
            .then_with(|| lex_cmp_mask(self.hi, other.hi))
    }
}

fn better(a: Option<Candidate>, b: Option<Candidate>) -> Option<Candidate> {
    match (a, b) {
        (Some(x), Some(y)) => Some(if y.cmp(&x) == Ordering::Less { y } else { x }),
        (x, None) => x,
        (None, y) => y,
    }
}

struct Ctx {
    mg: MaskGraph,
    model: FaultModelSpec,
    diagnostic: DiagnosticModel,
    anchored: bool,
}

impl Ctx {
    /// Best indistinguishable pair with `max(|F1|, |F2|) = s`.
    fn best_at_level(&self, s: usize) -> Option<Candidate> {
        let n = self.mg.n;
        let pool: Vec<usize> = if self.anchored { (1..n).collect() } else { (0..n).collect() };
        let mut best = None;
        for i in 0..s {
            let m = s - i;
            if i + m > n {
                continue;
            }
            let mut commons = Vec::new();
            first_subset(&pool, i, 0, |c| {
                commons.push(c);
                None::<()>
            });
            let level = commons.par_iter().map(|&common| self.scan_common(common, m)).reduce(|| None, better);
            best = better(best, level);
        }
        best
    }

    fn scan_common(&self, common: u128, m: usize) -> Option<Candidate> {
        let mut best = None;
        let mut visit = |delta: u128| {
            best = better(best, self.split(common, delta, m));
        };
        match self.diagnostic {
            DiagnosticModel::Pmc => self.pmc_deltas(common, m, &mut visit),
            DiagnosticModel::MmStar => self.mmstar_deltas(common, m, &mut visit),
        }
        best
    }

    fn pmc_deltas(&self, common: u128, m: usize, visit: &mut impl FnMut(u128)) {
        let comps = self.mg.components(common);
        let (forced, free): (Vec<u128>, Vec<u128>) =
            if self.anchored { comps.into_iter().partition(|c| c & 1 != 0) } else { (Vec::new(), comps) };
        let start = forced.first().copied().unwrap_or(0);
        fn rec(free: &[u128], acc: u128, lo: u32, hi: u32, visit: &mut impl FnMut(u128)) {
            let size = acc.count_ones();
            if size > hi {
                return;
            }
            if free.is_empty() {
                if size >= lo && acc != 0 {
                    visit(acc);
                }
                return;
            }
            rec(&free[1..], acc, lo, hi, visit);
            rec(&free[1..], acc | free[0], lo, hi, visit);
        }
        rec(&free, start, m as u32, 2 * m as u32, visit);
    }

    fn mmstar_deltas(&self, common: u128, m: usize, visit: &mut impl FnMut(u128)) {
        let rest = self.mg.full & !common;
        let base = if self.anchored { 1u128 } else { 0 };
        let pool: Vec<usize> = bits(rest & !base).collect();
        let fixed = base.count_ones() as usize;
        for d in m..=2 * m {
            if d < fixed || d - fixed > pool.len() {
                continue;
            }
            first_subset(&pool, d - fixed, base, |delta| {
                if self.mmstar_delta_ok(rest, delta) {
                    visit(delta);
                }
                None::<()>
            });
        }
    }

    fn mmstar_delta_ok(&self, rest: u128, delta: u128) -> bool {
        let survivors = rest & !delta;
        let touching = self.mg.neighbourhood(delta) & survivors;
        bits(touching).all(|w| {
            let adj = self.mg.adj[w];
            adj & survivors == 0 && (adj & delta).count_ones() <= 2
        })
    }

    /// Tries every split of `delta` into `F1 \ F2` (holding the anchor) and `F2 \ F1`
    /// whose larger side has exactly `m` vertices.
    fn split(&self, common: u128, delta: u128, m: usize) -> Option<Candidate> {
        let d = delta.count_ones() as usize;
        let anchor = if self.anchored { 1u128 } else { lowest(delta) };
        let others: Vec<usize> = bits(delta & !anchor).collect();
        let mut sizes = vec![m];
        if d - m != m {
            sizes.push(d - m);
        }
        let mut best = None;
        for a in sizes {
            if a == 0 {
                continue;
            }
            first_subset(&others, a - 1, anchor, |side_a| {
                let f1 = common | side_a;
                let f2 = common | (delta & !side_a);
                if !mask_distinguishable(&self.mg, f1, f2, self.diagnostic)
                    && self.mg.is_faulty(f1, self.model)
                    && self.mg.is_faulty(f2, self.model)
                {
                    best = better(best, Some(Candidate::new(f1, f2)));
                }
                None::<()>
            });
        }
        best
    }
}
