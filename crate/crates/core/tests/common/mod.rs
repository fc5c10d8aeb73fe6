#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

use fmzv::{Color, Edge, IndexMap, Tree, Vertex};
use rand::rngs::StdRng;
use rand::Rng;

pub fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    acc
}

/// `a^{-k} mod p`, finding the inverse by search.
pub fn inv_pow(a: u64, k: u32, p: u64) -> u64 {
    let a = a % p;
    let inv = (1..p).find(|&b| a * b % p == 1).expect("a is a unit");
    pow_mod(inv, u64::from(k), p)
}

pub fn neg_mod(a: u64, p: u64) -> u64 {
    (p - a % p) % p
}

/// All compositions of `total` into `parts` positive parts.
pub fn compositions(total: u64, parts: usize) -> Vec<Vec<u64>> {
    if parts == 0 {
        return if total == 0 { vec![vec![]] } else { vec![] };
    }
    let mut out = Vec::new();
    for first in 1..=total {
        for mut rest in compositions(total - first, parts - 1) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// Vertices separated from `root` when edge `(a, b)` is cut.
fn far_side(tree: &Tree, root: &str, a: &str, b: &str) -> BTreeSet<String> {
    let reach = |start: &str| {
        let mut seen = BTreeSet::from([start.to_string()]);
        let mut stack = vec![start.to_string()];
        while let Some(v) = stack.pop() {
            for w in tree.neighbors(&v) {
                let crossing = (v == a && w == b) || (v == b && w == a);
                if !crossing && seen.insert(w.to_string()) {
                    stack.push(w.to_string());
                }
            }
        }
        seen
    };
    let from_a = reach(a);
    if from_a.contains(root) {
        reach(b)
    } else {
        from_a
    }
}

/// The tree sum straight from its definition.
pub fn naive_tree_value(tree: &Tree, k: &IndexMap, p: u64) -> u64 {
    let root = tree.root().to_string();
    let bullets: Vec<String> = tree.bullets().map(str::to_string).collect();
    let cuts: Vec<(BTreeSet<String>, u32)> = tree
        .edges()
        .map(|e| {
            let (a, b) = e.endpoints();
            (far_side(tree, &root, a, b), k.get(&e).unwrap())
        })
        .collect();
    let mut acc = 0;
    for m in compositions(p, bullets.len()) {
        let value: BTreeMap<&str, u64> = bullets.iter().map(String::as_str).zip(m).collect();
        let mut term = 1;
        for (side, kk) in &cuts {
            let l: u64 = side.iter().filter_map(|v| value.get(v.as_str())).sum();
            term = term * inv_pow(l, *kk, p) % p;
        }
        acc = (acc + term) % p;
    }
    acc
}

/// `sum_{0 < n_1 < ... < n_r < p} prod n_i^{-k_i}` by nested enumeration.
pub fn naive_fmzv(ks: &[u32], p: u64) -> u64 {
    fn rec(ks: &[u32], lo: u64, p: u64) -> u64 {
        let Some((&k, rest)) = ks.split_first() else {
            return 1;
        };
        (lo + 1..p)
            .map(|n| inv_pow(n, k, p) * rec(rest, n, p) % p)
            .sum::<u64>()
            % p
    }
    rec(ks, 0, p)
}

/// `sum_{m_i >= 1, sum m_i < p} prod m_i^{-k_i} (sum m_i)^{-k_last}`.
pub fn naive_mt(ks: &[u32], k_last: u32, p: u64) -> u64 {
    let mut acc = 0;
    for total in ks.len() as u64..p {
        for m in compositions(total, ks.len()) {
            let mut term = inv_pow(total, k_last, p);
            for (mi, &ki) in m.iter().zip(ks) {
                term = term * inv_pow(*mi, ki, p) % p;
            }
            acc = (acc + term) % p;
        }
    }
    acc
}

/// Random valid tree on `n` vertices: random recursive shape, terminals
/// bullet, other vertices circle with probability 1/2, random root, indices
/// in `0..=max_k`.
pub fn random_pair(rng: &mut StdRng, n: usize, max_k: u32) -> (Tree, IndexMap) {
    let ids: Vec<String> = (0..n).map(|i| format!("t{i}")).collect();
    let mut degree = vec![0; n];
    let mut edges = Vec::new();
    for i in 1..n {
        let parent = rng.gen_range(0..i);
        degree[parent] += 1;
        degree[i] += 1;
        edges.push(Edge::new(ids[parent].clone(), ids[i].clone()));
    }
    let vertices: Vec<Vertex> = (0..n)
        .map(|i| {
            let circle = degree[i] >= 2 && rng.gen_bool(0.5);
            Vertex {
                id: ids[i].clone(),
                color: if circle { Color::Circle } else { Color::Bullet },
            }
        })
        .collect();
    let root = ids[rng.gen_range(0..n)].clone();
    let tree = Tree::new(vertices, edges.clone(), root).unwrap();
    let k = IndexMap::new(
        &tree,
        edges.into_iter().map(|e| (e, rng.gen_range(0..=max_k))),
    )
    .unwrap();
    (tree, k)
}

/// Like [`random_pair`], rejecting until the index is essentially positive.
pub fn random_positive_pair(rng: &mut StdRng, n: usize, max_k: u32) -> (Tree, IndexMap) {
    loop {
        let (t, k) = random_pair(rng, n, max_k);
        if fmzv::tree::is_essentially_positive(&t, &k) {
            return (t, k);
        }
    }
}

pub fn with_index(tree: &Tree, k: &IndexMap, e: &Edge, value: u32) -> IndexMap {
    IndexMap::new(
        tree,
        k.iter()
            .map(|(f, v)| (f.clone(), if f == e { value } else { v })),
    )
    .unwrap()
}

/// Subdivides `e` with a new circle vertex `mid`, splitting its index as
/// `(first, k(e) - first)`.
pub fn subdivide(tree: &Tree, k: &IndexMap, e: &Edge, mid: &str, first: u32) -> (Tree, IndexMap) {
    let (a, b) = e.endpoints();
    let total = k.get(e).unwrap();
    let mut vertices: Vec<Vertex> = tree.vertices().collect();
    vertices.push(Vertex::circle(mid));
    let mut idx: Vec<(Edge, u32)> = k
        .iter()
        .filter(|(f, _)| *f != e)
        .map(|(f, v)| (f.clone(), v))
        .collect();
    idx.push((Edge::new(a, mid), first));
    idx.push((Edge::new(mid, b), total - first));
    let t = Tree::new(vertices, idx.iter().map(|(f, _)| f.clone()), tree.root()).unwrap();
    let k = IndexMap::new(&t, idx).unwrap();
    (t, k)
}
