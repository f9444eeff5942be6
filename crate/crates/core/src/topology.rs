//! Generators for hypercubes, (n,k)-star graphs and arrangement graphs, plus the
//! standard partitions used in connectivity arguments.

use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};
use crate::{Graph, VertexSet};

const MAX_VERTICES: usize = 1 << 22;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum TopologySpec {
    Hypercube { n: usize },
    NkStar { n: usize, k: usize },
    Arrangement { n: usize, k: usize },
}

impl TopologySpec {
    pub fn family(&self) -> &'static str {
        match self {
            TopologySpec::Hypercube { .. } => "hypercube",
            TopologySpec::NkStar { .. } => "nk_star",
            TopologySpec::Arrangement { .. } => "arrangement",
        }
    }

    pub fn params(&self) -> BTreeMap<String, u64> {
        let mut p = BTreeMap::new();
        match *self {
            TopologySpec::Hypercube { n } => {
                p.insert("n".to_string(), n as u64);
            }
            TopologySpec::NkStar { n, k } | TopologySpec::Arrangement { n, k } => {
                p.insert("n".to_string(), n as u64);
                p.insert("k".to_string(), k as u64);
            }
        }
        p
    }

    /// Parses a family name (`nk-star` and `nk_star` both accepted) and its parameters.
    pub fn from_family_params(family: &str, params: &BTreeMap<String, u64>) -> Result<Self> {
        let get = |key: &str| {
            params
                .get(key)
                .map(|&v| v as usize)
                .ok_or_else(|| invalid(format!("family {family} needs parameter {key}")))
        };
        match family.to_ascii_lowercase().replace('-', "_").as_str() {
            "hypercube" => Ok(TopologySpec::Hypercube { n: get("n")? }),
            "nk_star" => Ok(TopologySpec::NkStar { n: get("n")?, k: get("k")? }),
            "arrangement" => Ok(TopologySpec::Arrangement { n: get("n")?, k: get("k")? }),
            other => Err(invalid(format!("unknown topology family {other:?}"))),
        }
    }

    pub fn generate(&self) -> Result<Graph> {
        match *self {
            TopologySpec::Hypercube { n } => hypercube(n),
            TopologySpec::NkStar { n, k } => nk_star(n, k),
            TopologySpec::Arrangement { n, k } => arrangement(n, k),
        }
    }

    pub fn name(&self) -> String {
        match *self {
            TopologySpec::Hypercube { n } => format!("Q_{n}"),
            TopologySpec::NkStar { n, k } => format!("S_{{{n},{k}}}"),
            TopologySpec::Arrangement { n, k } => format!("A_{{{n},{k}}}"),
        }
    }
}

/// The n-dimensional hypercube; labels are n-bit strings, most significant bit first.
pub fn hypercube(n: usize) -> Result<Graph> {
    if n == 0 {
        return Err(invalid("hypercube dimension must be at least 1"));
    }
    if n > 22 {
        return Err(invalid(format!("hypercube dimension {n} is too large")));
    }
    let count = 1usize << n;
    let labels = (0..count).map(|v| format!("{v:0n$b}")).collect();
    let edges = (0..count).flat_map(|v| (0..n).map(move |b| v ^ (1 << b)).filter(move |&w| w > v).map(move |w| (v, w)));
    let params = TopologySpec::Hypercube { n }.params();
    Ok(Graph::from_edges("hypercube", params, labels, edges)?.mark_vertex_transitive())
}

fn permutation_count(n: usize, k: usize) -> Option<usize> {
    (n - k + 1..=n).try_fold(1usize, |acc, x| acc.checked_mul(x))
}

/// All k-permutations of `1..=n` in lexicographic order.
fn k_permutations(n: usize, k: usize) -> Vec<Vec<u8>> {
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(k);
    let mut used = vec![false; n + 1];
    fn rec(n: usize, k: usize, cur: &mut Vec<u8>, used: &mut [bool], out: &mut Vec<Vec<u8>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for s in 1..=n {
            if !used[s] {
                used[s] = true;
                cur.push(s as u8);
                rec(n, k, cur, used, out);
                cur.pop();
                used[s] = false;
            }
        }
    }
    rec(n, k, &mut current, &mut used, &mut out);
    out
}

/// Formats a permutation as `[1,2,3]`.
pub fn permutation_label(p: &[u8]) -> String {
    let body: Vec<String> = p.iter().map(u8::to_string).collect();
    format!("[{}]", body.join(","))
}

/// Accepts `[1,2]`, `[1, 2]` or (for symbols below 10) the bare digits `12`.
pub fn parse_permutation(text: &str) -> Option<Vec<u8>> {
    let t = text.trim();
    if let Some(inner) = t.strip_prefix('[').and_then(|s| s.strip_suffix(']')) {
        return inner.split(',').map(|s| s.trim().parse::<u8>().ok()).collect();
    }
    if !t.is_empty() && t.chars().all(|c| c.is_ascii_digit()) {
        return Some(t.bytes().map(|b| b - b'0').collect());
    }
    None
}

/// Looks a vertex up by label, normalising permutation spellings.
pub fn resolve_vertex(graph: &Graph, text: &str) -> Result<usize> {
    if let Some(v) = graph.vertex(text.trim()) {
        return Ok(v);
    }
    if graph.family() != "hypercube" {
        if let Some(p) = parse_permutation(text) {
            if let Some(v) = graph.vertex(&permutation_label(&p)) {
                return Ok(v);
            }
        }
    }
    Err(invalid(format!("no vertex labelled {text:?}")))
}

/// Resolves a list of labels into a vertex set.
pub fn resolve_set<S: AsRef<str>>(graph: &Graph, labels: &[S]) -> Result<VertexSet> {
    let mut set = graph.empty_set();
    for l in labels {
        set.insert(resolve_vertex(graph, l.as_ref())?);
    }
    Ok(set)
}

fn permutation_graph(
    family: &str,
    spec: TopologySpec,
    n: usize,
    k: usize,
    neighbours: impl Fn(&[u8], &[bool]) -> Vec<Vec<u8>>,
) -> Result<Graph> {
    let count = permutation_count(n, k)
        .filter(|&c| c <= MAX_VERTICES)
        .ok_or_else(|| invalid(format!("{} has too many vertices", spec.name())))?;
    let perms = k_permutations(n, k);
    debug_assert_eq!(perms.len(), count);
    let index: HashMap<&[u8], usize> = perms.iter().enumerate().map(|(i, p)| (p.as_slice(), i)).collect();
    let mut edges = Vec::new();
    let mut used = vec![false; n + 1];
    for (i, p) in perms.iter().enumerate() {
        used.iter_mut().for_each(|u| *u = false);
        for &s in p {
            used[s as usize] = true;
        }
        for q in neighbours(p, &used) {
            let j = index[q.as_slice()];
            if j > i {
                edges.push((i, j));
            }
        }
    }
    let labels = perms.iter().map(|p| permutation_label(p)).collect();
    Ok(Graph::from_edges(family, spec.params(), labels, edges)?.mark_vertex_transitive())
}

/// The (n,k)-star graph: swap the first symbol with position i, or replace it with
/// an unused symbol.
pub fn nk_star(n: usize, k: usize) -> Result<Graph> {
    if n < 2 || k == 0 || k >= n {
        return Err(invalid(format!("S_{{n,k}} needs n >= 2 and 1 <= k < n, got n={n}, k={k}")));
    }
    permutation_graph("nk_star", TopologySpec::NkStar { n, k }, n, k, |p, used| {
        let mut out = Vec::with_capacity(n - 1);
        for i in 1..p.len() {
            let mut q = p.to_vec();
            q.swap(0, i);
            out.push(q);
        }
        for s in (1..=n).filter(|&s| !used[s]) {
            let mut q = p.to_vec();
            q[0] = s as u8;
            out.push(q);
        }
        out
    })
}

/// The (n,k)-arrangement graph: k-permutations adjacent when they differ in exactly
/// one position.
pub fn arrangement(n: usize, k: usize) -> Result<Graph> {
    if n < 2 || k == 0 || k >= n {
        return Err(invalid(format!("A_{{n,k}} needs n >= 2 and 1 <= k < n, got n={n}, k={k}")));
    }
    permutation_graph("arrangement", TopologySpec::Arrangement { n, k }, n, k, |p, used| {
        let mut out = Vec::with_capacity(k * (n - k));
        for i in 0..p.len() {
            for s in (1..=n).filter(|&s| !used[s]) {
                let mut q = p.to_vec();
                q[i] = s as u8;
                out.push(q);
            }
        }
        out
    })
}

/// Splits a permutation graph into `H_1..H_n` by last symbol; entry `i - 1` holds `H_i`.
pub fn decompose_by_last_symbol(graph: &Graph) -> Result<Vec<VertexSet>> {
    let n = match graph.family() {
        "nk_star" | "arrangement" => graph.params().get("n").copied().unwrap_or(0) as usize,
        other => return Err(invalid(format!("last-symbol decomposition applies to permutation graphs, not {other}"))),
    };
    let mut parts = vec![graph.empty_set(); n];
    for v in 0..graph.vertex_count() {
        let p = parse_permutation(graph.label(v))
            .ok_or_else(|| invalid(format!("label {:?} is not a permutation", graph.label(v))))?;
        let last = *p.last().ok_or_else(|| invalid("empty permutation label"))? as usize;
        if last == 0 || last > n {
            return Err(invalid(format!("symbol {last} out of range")));
        }
        parts[last - 1].insert(v);
    }
    Ok(parts)
}

/// Splits `Q_n` into the halves with bit `bit` (counted from the least significant end)
/// equal to 0 and to 1.
pub fn hypercube_bit_split(graph: &Graph, bit: usize) -> Result<(VertexSet, VertexSet)> {
    if graph.family() != "hypercube" {
        return Err(invalid("bit split applies to hypercubes only"));
    }
    let n = graph.params().get("n").copied().unwrap_or(0) as usize;
    if bit >= n {
        return Err(invalid(format!("bit {bit} out of range for Q_{n}")));
    }
    let mut zero = graph.empty_set();
    let mut one = graph.empty_set();
    for v in 0..graph.vertex_count() {
        if v >> bit & 1 == 0 {
            zero.insert(v);
        } else {
            one.insert(v);
        }
    }
    Ok((zero, one))
}
