//! Value-preserving moves on tree pairs: contracting a zero-index edge at a
//! circle vertex, contracting through a degree-2 circle vertex, moving the
//! root (which costs a sign), splitting a branched bullet vertex, and the
//! normalisation to a harvestable pair built from them.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::sign::Sign;
use crate::tree::{
    harvestable_violation, path_index_sum, require_essentially_positive, Color, Edge, IndexMap,
    Tree, TreeFile, RESERVED_MARKER,
};

/// A tree pair together with the sign relating its value to the pair it
/// was derived from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SignedTreePair {
    pub tree: Tree,
    pub k: IndexMap,
    pub sign: Sign,
}

impl SignedTreePair {
    pub fn to_file(&self) -> SignedTreeFile {
        SignedTreeFile {
            tree: TreeFile::from_pair(&self.tree, &self.k),
            sign: self.sign,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SignedTreeFile {
    #[serde(flatten)]
    pub tree: TreeFile,
    pub sign: Sign,
}

/// Merges `absorbed` into `kept`, rewiring edges and re-keying the index.
fn merge_vertices(
    tree: &Tree,
    k: &IndexMap,
    kept: &str,
    absorbed: &str,
    kept_color: Color,
) -> (Tree, IndexMap) {
    let (mut colors, mut adj, root) = tree.clone().into_parts();
    let mut idx = k.clone().into_map();
    idx.remove(&Edge::new(kept, absorbed));
    colors.remove(absorbed);
    colors.insert(kept.to_string(), kept_color);
    let moved: BTreeSet<String> = adj.remove(absorbed).unwrap_or_default();
    adj.get_mut(kept).unwrap().remove(absorbed);
    for w in moved.into_iter().filter(|w| w != kept) {
        let weight = idx.remove(&Edge::new(absorbed, w.as_str())).unwrap();
        idx.insert(Edge::new(kept, w.as_str()), weight);
        let ns = adj.get_mut(&w).unwrap();
        ns.remove(absorbed);
        ns.insert(kept.to_string());
        adj.get_mut(kept).unwrap().insert(w);
    }
    let root = if root == absorbed {
        kept.to_string()
    } else {
        root
    };
    (Tree::from_parts(colors, adj, root), IndexMap::from_map(idx))
}

/// Contracts an edge with index 0 and at least one circle endpoint.
///
/// The merged vertex is a bullet iff either endpoint was, and keeps the id
/// of a bullet endpoint (the smaller id if both are circles). The root maps
/// to its image.
pub fn contract_zero_circle_edge(tree: &Tree, k: &IndexMap, e: &Edge) -> Result<(Tree, IndexMap)> {
    tree.require_edge(e)?;
    let weight = k[e];
    if weight != 0 {
        return Err(Error::NonzeroIndex(e.to_string(), weight));
    }
    let (a, b) = e.endpoints();
    let (kept, absorbed, color) = match (tree.color(a).unwrap(), tree.color(b).unwrap()) {
        (Color::Bullet, Color::Bullet) => return Err(Error::NoCircleEndpoint(e.to_string())),
        (Color::Bullet, Color::Circle) => (a, b, Color::Bullet),
        (Color::Circle, Color::Bullet) => (b, a, Color::Bullet),
        (Color::Circle, Color::Circle) => (a, b, Color::Circle),
    };
    Ok(merge_vertices(tree, k, kept, absorbed, color))
}

/// Removes a non-root circle vertex of degree 2, joining its neighbors by a
/// single edge carrying the sum of the two indices.
pub fn contract_degree2_circle(tree: &Tree, k: &IndexMap, v: &str) -> Result<(Tree, IndexMap)> {
    tree.require_vertex(v)?;
    if !tree.is_circle(v) || tree.degree(v) != 2 {
        return Err(Error::NotDegreeTwoCircle(v.to_string()));
    }
    if tree.root() == v {
        return Err(Error::RootContraction(v.to_string()));
    }
    let ns: Vec<String> = tree.neighbors(v).map(str::to_string).collect();
    let (x, y) = (&ns[0], &ns[1]);
    let joined = k.at(x, v) + k.at(v, y);

    let (mut colors, mut adj, root) = tree.clone().into_parts();
    let mut idx = k.clone().into_map();
    colors.remove(v);
    adj.remove(v);
    idx.remove(&Edge::new(x.as_str(), v));
    idx.remove(&Edge::new(v, y.as_str()));
    for (from, to) in [(x, y), (y, x)] {
        let set = adj.get_mut(from).unwrap();
        set.remove(v);
        set.insert(to.clone());
    }
    idx.insert(Edge::new(x.as_str(), y.as_str()), joined);
    Ok((Tree::from_parts(colors, adj, root), IndexMap::from_map(idx)))
}

/// Id of the circle vertex created when splitting `v`.
pub fn split_vertex_id(v: &str) -> String {
    format!("{v}{RESERVED_MARKER}c")
}

/// Splits a non-root bullet vertex of degree at least 3: `v` keeps its
/// parent edge, a new circle vertex takes over all of its child edges, and
/// `v` is joined to it by a new edge of index 0.
///
/// Contracting the new edge with [`contract_zero_circle_edge`] gives back
/// the input.
pub fn split_bullet_branch_vertex(tree: &Tree, k: &IndexMap, v: &str) -> Result<(Tree, IndexMap)> {
    tree.require_vertex(v)?;
    if !tree.is_bullet(v) || tree.degree(v) < 3 {
        return Err(Error::NotBulletBranch(v.to_string()));
    }
    if tree.root() == v {
        return Err(Error::RootSplit(v.to_string()));
    }
    let fresh = split_vertex_id(v);
    if tree.contains_vertex(&fresh) {
        return Err(Error::DuplicateVertexId(fresh));
    }
    let children: Vec<String> = tree.children(v).into_iter().map(str::to_string).collect();

    let (mut colors, mut adj, root) = tree.clone().into_parts();
    let mut idx = k.clone().into_map();
    colors.insert(fresh.clone(), Color::Circle);
    adj.insert(fresh.clone(), BTreeSet::new());
    for c in &children {
        let weight = idx.remove(&Edge::new(v, c.as_str())).unwrap();
        idx.insert(Edge::new(fresh.as_str(), c.as_str()), weight);
        adj.get_mut(v).unwrap().remove(c);
        let set = adj.get_mut(c).unwrap();
        set.remove(v);
        set.insert(fresh.clone());
        adj.get_mut(&fresh).unwrap().insert(c.clone());
    }
    adj.get_mut(v).unwrap().insert(fresh.clone());
    adj.get_mut(&fresh).unwrap().insert(v.to_string());
    idx.insert(Edge::new(v, fresh.as_str()), 0);
    Ok((Tree::from_parts(colors, adj, root), IndexMap::from_map(idx)))
}

/// Moves the root to `new_root`. The value changes by
/// `(-1)^{k(P(old root, new root))}`.
pub fn move_root(tree: &Tree, k: &IndexMap, new_root: &str) -> Result<(Tree, Sign)> {
    tree.require_vertex(new_root)?;
    let sum = path_index_sum(tree, k, tree.root(), new_root)?;
    Ok((tree.with_root(new_root)?, Sign::from_parity(sum)))
}

/// One contraction applicable to a non-harvestable pair, if any: a zero
/// edge with a circle endpoint first, else a non-root degree-2 circle.
fn next_contraction(tree: &Tree, k: &IndexMap) -> Option<Contraction> {
    for (e, weight) in k.iter() {
        let (a, b) = e.endpoints();
        if weight == 0 && (tree.is_circle(a) || tree.is_circle(b)) {
            return Some(Contraction::ZeroEdge(e.clone()));
        }
    }
    tree.vertex_ids()
        .find(|v| tree.is_circle(v) && tree.degree(v) == 2 && *v != tree.root())
        .map(|v| Contraction::Degree2(v.to_string()))
}

enum Contraction {
    ZeroEdge(Edge),
    Degree2(String),
}

fn contract_to_fixpoint(mut tree: Tree, mut k: IndexMap) -> (Tree, IndexMap) {
    while let Some(step) = next_contraction(&tree, &k) {
        let (t, kk) = match step {
            Contraction::ZeroEdge(e) => contract_zero_circle_edge(&tree, &k, &e),
            Contraction::Degree2(v) => contract_degree2_circle(&tree, &k, &v),
        }
        .expect("contraction preconditions hold by selection");
        tree = t;
        k = kk;
    }
    (tree, k)
}

/// A harvestable pair with the same value up to the returned sign.
///
/// Harvestable input is returned unchanged with sign `+1`. Otherwise:
///
/// 1. contract zero edges with a circle endpoint and non-root degree-2
///    circle vertices until none remain;
/// 2. if the root is not a terminal, move it to the smallest terminal id
///    and record the sign, then contract the old root if it was a degree-2
///    circle vertex;
/// 3. split every bullet vertex of degree at least 3, in id order.
pub fn harvestable_form(tree: &Tree, k: &IndexMap) -> Result<SignedTreePair> {
    k.check_domain(tree)?;
    require_essentially_positive(tree, k)?;
    if harvestable_violation(tree, k).is_none() {
        return Ok(SignedTreePair {
            tree: tree.clone(),
            k: k.clone(),
            sign: Sign::Plus,
        });
    }

    let (mut t, mut kk) = contract_to_fixpoint(tree.clone(), k.clone());

    let mut sign = Sign::Plus;
    if !t.is_terminal(t.root()) {
        let target = t
            .terminals()
            .next()
            .expect("a tree has a terminal")
            .to_string();
        let (moved, s) = move_root(&t, &kk, &target)?;
        sign = s;
        (t, kk) = contract_to_fixpoint(moved, kk);
    }

    let branched: Vec<String> = t
        .bullets()
        .filter(|v| t.degree(v) >= 3)
        .map(str::to_string)
        .collect();
    for v in branched {
        (t, kk) = split_bullet_branch_vertex(&t, &kk, &v)?;
    }

    debug_assert_eq!(harvestable_violation(&t, &kk), None);
    debug_assert!(crate::tree::is_essentially_positive(&t, &kk));
    Ok(SignedTreePair {
        tree: t,
        k: kk,
        sign,
    })
}
