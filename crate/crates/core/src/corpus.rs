//! Exhaustive sweep over small tree pairs.
//!
//! Shapes come from canonical level sequences of rooted trees, so each
//! unlabeled rooted shape appears once. Every coloring with bullet
//! terminals is then tried, and every index map of bounded weight that is
//! essentially positive. Colorings are not reduced modulo automorphisms of
//! the shape, so some pairs repeat; that only costs time.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::oracle::{verify_reduction_with, Prime};
use crate::par::{self, Execution};
use crate::tree::{is_essentially_positive, tree_to_json, Color, Edge, IndexMap, Tree, Vertex};

pub const MAX_EDGES_LIMIT: usize = 8;
pub const MAX_WEIGHT_LIMIT: u32 = 10;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CorpusSpec {
    pub max_edges: usize,
    pub max_weight: u32,
    pub primes: Vec<u64>,
}

impl CorpusSpec {
    pub fn new(max_edges: usize, max_weight: u32, primes: Vec<u64>) -> Result<Self> {
        if max_edges == 0 || max_edges > MAX_EDGES_LIMIT {
            return Err(Error::InvalidArgument(format!(
                "max-edges must lie in 1..={MAX_EDGES_LIMIT}, got {max_edges}"
            )));
        }
        if max_weight == 0 || max_weight > MAX_WEIGHT_LIMIT {
            return Err(Error::InvalidArgument(format!(
                "max-weight must lie in 1..={MAX_WEIGHT_LIMIT}, got {max_weight}"
            )));
        }
        for &p in &primes {
            Prime::new(p)?;
        }
        if primes.is_empty() {
            return Err(Error::InvalidArgument(
                "at least one prime is required".into(),
            ));
        }
        Ok(CorpusSpec {
            max_edges,
            max_weight,
            primes,
        })
    }
}

/// A pair on which the reduction disagrees with the oracle, or on which the
/// pipeline raised an error.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CorpusFailure {
    pub tree: serde_json::Value,
    pub p: Option<u64>,
    pub lhs: Option<u64>,
    pub rhs: Option<u64>,
    pub error: Option<String>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct CorpusSummary {
    pub shapes: usize,
    pub colored_trees: usize,
    pub pairs: usize,
    pub checks: usize,
    pub passed: usize,
    pub failures: Vec<CorpusFailure>,
}

impl CorpusSummary {
    pub fn pass(&self) -> bool {
        self.failures.is_empty()
    }

    fn merge(&mut self, other: CorpusSummary) {
        self.colored_trees += other.colored_trees;
        self.pairs += other.pairs;
        self.checks += other.checks;
        self.passed += other.passed;
        self.failures.extend(other.failures);
    }
}

/// Canonical level sequences (root at level 0) of all rooted trees with `n`
/// vertices, in the successor order of Beyer and Hedetniemi.
pub fn level_sequences(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return Vec::new();
    }
    let mut seq: Vec<usize> = (0..n).collect();
    let mut out = vec![seq.clone()];
    loop {
        let Some(p) = (0..n).rev().find(|&i| seq[i] > 1) else {
            return out;
        };
        let q = (0..p)
            .rev()
            .find(|&i| seq[i] == seq[p] - 1)
            .expect("levels step by one");
        for i in p..n {
            seq[i] = seq[i - (p - q)];
        }
        out.push(seq.clone());
    }
}

/// Parent index of each non-root vertex in a level sequence.
pub fn parents(levels: &[usize]) -> Vec<Option<usize>> {
    let mut last_at = vec![0usize; levels.len() + 1];
    levels
        .iter()
        .enumerate()
        .map(|(i, &l)| {
            last_at[l] = i;
            (l > 0).then(|| last_at[l - 1])
        })
        .collect()
}

fn vertex_id(i: usize) -> String {
    format!("v{i}")
}

/// Every valid coloring of the shape: terminals are bullets, every other
/// vertex takes either color.
fn colorings(levels: &[usize]) -> Vec<Tree> {
    let n = levels.len();
    let par = parents(levels);
    let mut degree = vec![0usize; n];
    for (i, p) in par.iter().enumerate() {
        if let Some(p) = *p {
            degree[i] += 1;
            degree[p] += 1;
        }
    }
    let free: Vec<usize> = (0..n).filter(|&i| degree[i] >= 2).collect();
    let edges: Vec<Edge> = par
        .iter()
        .enumerate()
        .filter_map(|(i, p)| p.map(|p| Edge::new(vertex_id(p), vertex_id(i))))
        .collect();
    (0u32..1 << free.len())
        .map(|mask| {
            let mut colors = vec![Color::Bullet; n];
            for (bit, &i) in free.iter().enumerate() {
                if mask >> bit & 1 == 1 {
                    colors[i] = Color::Circle;
                }
            }
            let vertices = (0..n).map(|i| Vertex {
                id: vertex_id(i),
                color: colors[i],
            });
            Tree::new(vertices, edges.iter().cloned(), vertex_id(0))
                .expect("level sequences give valid trees")
        })
        .collect()
}

/// All rooted, colored trees with `1..=max_edges` edges.
pub fn colored_trees(max_edges: usize) -> (usize, Vec<Tree>) {
    let mut shapes = 0;
    let mut trees = Vec::new();
    for n in 2..=max_edges + 1 {
        for levels in level_sequences(n) {
            shapes += 1;
            trees.extend(colorings(&levels));
        }
    }
    (shapes, trees)
}

/// Calls `f` on every index map of `tree` with total weight at most
/// `max_weight` (zeros allowed).
pub fn for_each_index(tree: &Tree, max_weight: u32, mut f: impl FnMut(IndexMap)) {
    let edges: Vec<Edge> = tree.edges().collect();
    let mut values = vec![0u32; edges.len()];
    fn rec(
        pos: usize,
        left: u32,
        edges: &[Edge],
        values: &mut Vec<u32>,
        f: &mut dyn FnMut(IndexMap),
    ) {
        if pos == edges.len() {
            let map = edges.iter().cloned().zip(values.iter().copied()).collect();
            f(IndexMap::from_map(map));
            return;
        }
        for v in 0..=left {
            values[pos] = v;
            rec(pos + 1, left - v, edges, values, f);
        }
    }
    rec(0, max_weight, &edges, &mut values, &mut f);
}

/// Essentially positive index maps of `tree` with weight at most `max_weight`.
pub fn positive_indices(tree: &Tree, max_weight: u32) -> Vec<IndexMap> {
    let mut out = Vec::new();
    for_each_index(tree, max_weight, |k| {
        if is_essentially_positive(tree, &k) {
            out.push(k);
        }
    });
    out
}

fn sweep_tree(tree: &Tree, spec: &CorpusSpec) -> CorpusSummary {
    let mut s = CorpusSummary {
        colored_trees: 1,
        ..Default::default()
    };
    for k in positive_indices(tree, spec.max_weight) {
        s.pairs += 1;
        let dump = || serde_json::from_str(&tree_to_json(tree, &k)).expect("own JSON parses");
        match verify_reduction_with(tree, &k, &spec.primes, Execution::Sequential) {
            Ok(report) => {
                for r in report.primes {
                    s.checks += 1;
                    if r.pass {
                        s.passed += 1;
                    } else {
                        s.failures.push(CorpusFailure {
                            tree: dump(),
                            p: Some(r.p),
                            lhs: Some(r.lhs),
                            rhs: Some(r.rhs),
                            error: None,
                        });
                    }
                }
            }
            Err(e) => s.failures.push(CorpusFailure {
                tree: dump(),
                p: None,
                lhs: None,
                rhs: None,
                error: Some(e.to_string()),
            }),
        }
    }
    s
}

/// Verifies the reduction on every pair of the corpus.
pub fn run_corpus(spec: &CorpusSpec, exec: Execution) -> CorpusSummary {
    let (shapes, trees) = colored_trees(spec.max_edges);
    let parts = par::map(exec, &trees, |t| sweep_tree(t, spec));
    let mut total = CorpusSummary {
        shapes,
        ..Default::default()
    };
    for part in parts {
        total.merge(part);
    }
    total
}
