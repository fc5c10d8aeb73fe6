//! 2-colored rooted trees, indices on their edges, and the path / cut
//! queries everything else is built from.
//!
//! Vertices are identified by caller-supplied string ids and edges by the
//! unordered pair of their endpoint ids. All iteration is in lexicographic
//! id order so that every derived quantity is reproducible.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Marker reserved for vertices created by the library (split vertices,
/// synthetic roots). User input may not contain it.
pub const RESERVED_MARKER: char = '#';

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Color {
    Bullet,
    Circle,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Vertex {
    pub id: String,
    pub color: Color,
}

impl Vertex {
    pub fn bullet(id: impl Into<String>) -> Self {
        Vertex {
            id: id.into(),
            color: Color::Bullet,
        }
    }

    pub fn circle(id: impl Into<String>) -> Self {
        Vertex {
            id: id.into(),
            color: Color::Circle,
        }
    }
}

/// An undirected edge, stored with its endpoints in sorted order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Edge {
    a: String,
    b: String,
}

impl Edge {
    pub fn new(x: impl Into<String>, y: impl Into<String>) -> Self {
        let (x, y) = (x.into(), y.into());
        if x <= y {
            Edge { a: x, b: y }
        } else {
            Edge { a: y, b: x }
        }
    }

    pub fn endpoints(&self) -> (&str, &str) {
        (&self.a, &self.b)
    }

    pub fn contains(&self, v: &str) -> bool {
        self.a == v || self.b == v
    }

    /// The endpoint that is not `v`, if `v` is an endpoint.
    pub fn other(&self, v: &str) -> Option<&str> {
        if self.a == v {
            Some(&self.b)
        } else if self.b == v {
            Some(&self.a)
        } else {
            None
        }
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.a, self.b)
    }
}

/// A finite tree with a distinguished root in which every terminal is a
/// bullet vertex. Construction validates; a `Tree` value is always valid.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Tree {
    colors: BTreeMap<String, Color>,
    adj: BTreeMap<String, BTreeSet<String>>,
    root: String,
}

impl Tree {
    /// Builds and validates a tree.
    pub fn new(
        vertices: impl IntoIterator<Item = Vertex>,
        edges: impl IntoIterator<Item = Edge>,
        root: impl Into<String>,
    ) -> Result<Self> {
        let mut colors = BTreeMap::new();
        for v in vertices {
            if v.id.is_empty() {
                return Err(Error::EmptyVertexId);
            }
            if colors.insert(v.id.clone(), v.color).is_some() {
                return Err(Error::DuplicateVertexId(v.id));
            }
        }
        let mut adj: BTreeMap<String, BTreeSet<String>> = colors
            .keys()
            .map(|id| (id.clone(), BTreeSet::new()))
            .collect();
        for e in edges {
            let (a, b) = e.endpoints();
            if a == b {
                return Err(Error::NotATree(format!("self-loop at {a}")));
            }
            for v in [a, b] {
                if !colors.contains_key(v) {
                    return Err(Error::UnknownVertex(v.to_string()));
                }
            }
            if !adj.get_mut(a).unwrap().insert(b.to_string()) {
                return Err(Error::NotATree(format!("repeated edge {e}")));
            }
            adj.get_mut(b).unwrap().insert(a.to_string());
        }
        let tree = Tree {
            colors,
            adj,
            root: root.into(),
        };
        tree.validate()?;
        Ok(tree)
    }

    /// Checks every structural invariant: the root exists, the graph is
    /// connected and acyclic, and no terminal is a circle vertex.
    pub fn validate(&self) -> Result<()> {
        if !self.colors.contains_key(&self.root) {
            return Err(Error::RootMissing(self.root.clone()));
        }
        let n = self.colors.len();
        let m = self.edge_count();
        let reached = self.bfs_parents(&self.root).len();
        if reached != n {
            return Err(Error::NotATree("graph is disconnected".into()));
        }
        if m + 1 != n {
            return Err(Error::NotATree("graph contains a cycle".into()));
        }
        for (id, color) in &self.colors {
            if *color == Color::Circle && self.is_terminal(id) {
                return Err(Error::CircleTerminal(id.clone()));
            }
        }
        Ok(())
    }

    pub(crate) fn from_parts(
        colors: BTreeMap<String, Color>,
        adj: BTreeMap<String, BTreeSet<String>>,
        root: String,
    ) -> Self {
        let tree = Tree { colors, adj, root };
        debug_assert_eq!(tree.validate(), Ok(()));
        tree
    }

    pub(crate) fn into_parts(
        self,
    ) -> (
        BTreeMap<String, Color>,
        BTreeMap<String, BTreeSet<String>>,
        String,
    ) {
        (self.colors, self.adj, self.root)
    }

    pub fn root(&self) -> &str {
        &self.root
    }

    /// Same tree, different root.
    pub fn with_root(&self, root: &str) -> Result<Self> {
        self.require_vertex(root)?;
        Ok(Tree {
            root: root.to_string(),
            ..self.clone()
        })
    }

    pub fn vertex_count(&self) -> usize {
        self.colors.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.values().map(BTreeSet::len).sum::<usize>() / 2
    }

    pub fn vertices(&self) -> impl Iterator<Item = Vertex> + '_ {
        self.colors.iter().map(|(id, &color)| Vertex {
            id: id.clone(),
            color,
        })
    }

    pub fn vertex_ids(&self) -> impl Iterator<Item = &str> {
        self.colors.keys().map(String::as_str)
    }

    pub fn contains_vertex(&self, v: &str) -> bool {
        self.colors.contains_key(v)
    }

    pub fn color(&self, v: &str) -> Option<Color> {
        self.colors.get(v).copied()
    }

    pub fn is_bullet(&self, v: &str) -> bool {
        self.color(v) == Some(Color::Bullet)
    }

    pub fn is_circle(&self, v: &str) -> bool {
        self.color(v) == Some(Color::Circle)
    }

    pub fn bullets(&self) -> impl Iterator<Item = &str> {
        self.colors
            .iter()
            .filter(|(_, c)| **c == Color::Bullet)
            .map(|(id, _)| id.as_str())
    }

    pub fn bullet_count(&self) -> usize {
        self.bullets().count()
    }

    pub fn degree(&self, v: &str) -> usize {
        self.adj.get(v).map_or(0, BTreeSet::len)
    }

    pub fn neighbors(&self, v: &str) -> impl Iterator<Item = &str> {
        self.adj.get(v).into_iter().flatten().map(String::as_str)
    }

    /// Degree-1 vertices; the single vertex of a one-vertex tree counts too.
    pub fn is_terminal(&self, v: &str) -> bool {
        self.contains_vertex(v) && (self.degree(v) == 1 || self.vertex_count() == 1)
    }

    pub fn terminals(&self) -> impl Iterator<Item = &str> {
        self.vertex_ids().filter(|v| self.is_terminal(v))
    }

    /// Edges in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = Edge> + '_ {
        self.adj.iter().flat_map(|(a, ns)| {
            ns.iter()
                .filter(move |b| a.as_str() < b.as_str())
                .map(move |b| Edge::new(a.clone(), b.clone()))
        })
    }

    pub fn contains_edge(&self, e: &Edge) -> bool {
        let (a, b) = e.endpoints();
        self.adj.get(a).is_some_and(|ns| ns.contains(b))
    }

    pub(crate) fn require_vertex(&self, v: &str) -> Result<()> {
        if self.contains_vertex(v) {
            Ok(())
        } else {
            Err(Error::UnknownVertex(v.to_string()))
        }
    }

    pub(crate) fn require_edge(&self, e: &Edge) -> Result<()> {
        if self.contains_edge(e) {
            Ok(())
        } else {
            Err(Error::UnknownEdge(e.to_string()))
        }
    }

    /// Parent pointers of the tree hung from `from`. `from` maps to itself.
    pub(crate) fn bfs_parents<'a>(&'a self, from: &'a str) -> BTreeMap<&'a str, &'a str> {
        let mut parent = BTreeMap::new();
        parent.insert(from, from);
        let mut queue = VecDeque::from([from]);
        while let Some(v) = queue.pop_front() {
            for w in self.neighbors(v) {
                if !parent.contains_key(w) {
                    parent.insert(w, v);
                    queue.push_back(w);
                }
            }
        }
        parent
    }

    /// Parent of `v` with respect to the root; `None` for the root.
    pub fn parent(&self, v: &str) -> Option<&str> {
        let parents = self.bfs_parents(&self.root);
        parents.get(v).copied().filter(|p| *p != v)
    }

    /// Children of `v` with respect to the root, in id order.
    pub fn children(&self, v: &str) -> Vec<&str> {
        let parent = self.parent(v);
        self.neighbors(v).filter(|w| Some(*w) != parent).collect()
    }

    /// Children of `v` when the tree is hung from `v`'s neighbor `parent`.
    pub(crate) fn children_from<'a>(&'a self, v: &str, parent: &str) -> Vec<&'a str> {
        self.neighbors(v).filter(|w| *w != parent).collect()
    }

    /// All vertices of the component of `T - (parent, v)` containing `v`.
    pub(crate) fn subtree_from<'a>(&'a self, v: &'a str, parent: &'a str) -> Vec<&'a str> {
        let mut out = vec![v];
        let mut stack = vec![(v, parent)];
        while let Some((x, px)) = stack.pop() {
            for w in self.neighbors(x) {
                if w != px {
                    out.push(w);
                    stack.push((w, x));
                }
            }
        }
        out
    }

    /// Bullet vertices on the far side of `edge` from the root: those `v`
    /// whose root path uses `edge`. `L_e` is the sum of `m_v` over this set.
    pub fn bullet_descendants(&self, edge: &Edge) -> Result<BTreeSet<String>> {
        self.require_edge(edge)?;
        let parents = self.bfs_parents(&self.root);
        let (a, b) = edge.endpoints();
        let (child, parent) = if parents[a] == b { (a, b) } else { (b, a) };
        Ok(self
            .subtree_from(child, parent)
            .into_iter()
            .filter(|v| self.is_bullet(v))
            .map(str::to_string)
            .collect())
    }

    /// The edge sequence of the unique path from `from` to `to`.
    pub fn path(&self, from: &str, to: &str) -> Result<Vec<Edge>> {
        self.require_vertex(from)?;
        self.require_vertex(to)?;
        let parents = self.bfs_parents(to);
        let mut out = Vec::new();
        let mut cur = from;
        while cur != to {
            let next = parents[cur];
            out.push(Edge::new(cur, next));
            cur = next;
        }
        Ok(out)
    }

    /// Vertices of the path from `from` to `to`, both ends included.
    pub(crate) fn path_vertices<'a>(&'a self, from: &'a str, to: &'a str) -> Vec<&'a str> {
        let parents = self.bfs_parents(to);
        let mut out = vec![from];
        let mut cur = from;
        while cur != to {
            cur = parents[cur];
            out.push(cur);
        }
        out
    }
}

/// An index on a tree: a nonnegative integer on every edge.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct IndexMap(BTreeMap<Edge, u32>);

impl IndexMap {
    /// Builds an index, checking that its domain is exactly the edge set.
    pub fn new(tree: &Tree, values: impl IntoIterator<Item = (Edge, u32)>) -> Result<Self> {
        let mut map = BTreeMap::new();
        for (e, k) in values {
            if !tree.contains_edge(&e) {
                return Err(Error::IndexDomain(format!(
                    "{e} is not an edge of the tree"
                )));
            }
            if map.insert(e.clone(), k).is_some() {
                return Err(Error::IndexDomain(format!("{e} assigned twice")));
            }
        }
        let idx = IndexMap(map);
        idx.check_domain(tree)?;
        Ok(idx)
    }

    pub(crate) fn from_map(map: BTreeMap<Edge, u32>) -> Self {
        IndexMap(map)
    }

    pub(crate) fn into_map(self) -> BTreeMap<Edge, u32> {
        self.0
    }

    pub fn check_domain(&self, tree: &Tree) -> Result<()> {
        if self.0.len() != tree.edge_count() {
            return Err(Error::IndexDomain(format!(
                "index has {} entries, tree has {} edges",
                self.0.len(),
                tree.edge_count()
            )));
        }
        for e in tree.edges() {
            if !self.0.contains_key(&e) {
                return Err(Error::IndexDomain(format!("no index on edge {e}")));
            }
        }
        Ok(())
    }

    pub fn get(&self, e: &Edge) -> Option<u32> {
        self.0.get(e).copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Edge, u32)> {
        self.0.iter().map(|(e, &k)| (e, k))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Total weight `sum_e k(e)`.
    pub fn weight(&self) -> u64 {
        self.0.values().map(|&k| u64::from(k)).sum()
    }

    pub(crate) fn at(&self, a: &str, b: &str) -> u32 {
        self.0[&Edge::new(a, b)]
    }
}

impl std::ops::Index<&Edge> for IndexMap {
    type Output = u32;

    fn index(&self, e: &Edge) -> &u32 {
        &self.0[e]
    }
}

/// `k(P(from, to))`, the sum of the index over the path.
pub fn path_index_sum(tree: &Tree, k: &IndexMap, from: &str, to: &str) -> Result<u64> {
    Ok(tree.path(from, to)?.iter().map(|e| u64::from(k[e])).sum())
}

/// A pair of distinct bullet vertices joined by a path of index sum zero,
/// if one exists.
///
/// Such a pair exists iff some connected component of the zero-index
/// subgraph holds two bullets, so this is linear in the tree size.
pub fn zero_path_witness(tree: &Tree, k: &IndexMap) -> Option<(String, String)> {
    let mut seen = BTreeSet::new();
    for start in tree.vertex_ids() {
        if !seen.insert(start) {
            continue;
        }
        let mut first_bullet: Option<&str> = None;
        let mut stack = vec![start];
        while let Some(v) = stack.pop() {
            if tree.is_bullet(v) {
                match first_bullet {
                    Some(b) => return Some((b.to_string(), v.to_string())),
                    None => first_bullet = Some(v),
                }
            }
            for w in tree.neighbors(v) {
                if k.at(v, w) == 0 && seen.insert(w) {
                    stack.push(w);
                }
            }
        }
    }
    None
}

/// Every path between two distinct bullet vertices carries a positive
/// total index.
pub fn is_essentially_positive(tree: &Tree, k: &IndexMap) -> bool {
    zero_path_witness(tree, k).is_none()
}

pub(crate) fn require_essentially_positive(tree: &Tree, k: &IndexMap) -> Result<()> {
    match zero_path_witness(tree, k) {
        None => Ok(()),
        Some((a, b)) => Err(Error::NotEssentiallyPositive(a, b)),
    }
}

/// The first harvestability condition that fails, if any.
pub(crate) fn harvestable_violation(tree: &Tree, k: &IndexMap) -> Option<String> {
    if !tree.is_terminal(tree.root()) {
        return Some(format!("H1: root {} is not a terminal", tree.root()));
    }
    for v in tree.vertex_ids() {
        let deg = tree.degree(v);
        if tree.is_bullet(v) && deg > 2 {
            return Some(format!("H2: bullet vertex {v} has degree {deg}"));
        }
        if tree.is_circle(v) && deg < 3 {
            return Some(format!("H2: circle vertex {v} has degree {deg}"));
        }
    }
    let parents = tree.bfs_parents(tree.root());
    for (&child, &parent) in &parents {
        if child == parent {
            continue;
        }
        if tree.is_circle(parent)
            && tree.degree(parent) >= 3
            && tree.is_bullet(child)
            && k.at(parent, child) == 0
        {
            return Some(format!(
                "H3: edge {} into bullet child has index 0",
                Edge::new(parent, child)
            ));
        }
    }
    None
}

/// Conditions H1 (root is a terminal), H2 (bullets have degree at most 2,
/// circles at least 3) and H3 (edges from a branched circle vertex to a
/// bullet child are positive).
pub fn is_harvestable(tree: &Tree, k: &IndexMap) -> bool {
    harvestable_violation(tree, k).is_none()
}

/// Fluent construction of a tree together with its index.
#[derive(Debug, Default, Clone)]
pub struct TreeBuilder {
    vertices: Vec<Vertex>,
    edges: Vec<(String, String, u32)>,
    root: Option<String>,
}

impl TreeBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn bullet(mut self, id: impl Into<String>) -> Self {
        self.vertices.push(Vertex::bullet(id));
        self
    }

    pub fn circle(mut self, id: impl Into<String>) -> Self {
        self.vertices.push(Vertex::circle(id));
        self
    }

    pub fn vertex(mut self, v: Vertex) -> Self {
        self.vertices.push(v);
        self
    }

    pub fn edge(mut self, a: impl Into<String>, b: impl Into<String>, k: u32) -> Self {
        self.edges.push((a.into(), b.into(), k));
        self
    }

    pub fn root(mut self, id: impl Into<String>) -> Self {
        self.root = Some(id.into());
        self
    }

    pub fn build(self) -> Result<(Tree, IndexMap)> {
        let root = self.root.ok_or_else(|| Error::RootMissing(String::new()))?;
        let tree = Tree::new(
            self.vertices,
            self.edges
                .iter()
                .map(|(a, b, _)| Edge::new(a.clone(), b.clone())),
            root,
        )?;
        let k = IndexMap::new(
            &tree,
            self.edges.into_iter().map(|(a, b, k)| (Edge::new(a, b), k)),
        )?;
        Ok((tree, k))
    }
}

/// The on-disk tree format:
/// `{"vertices":[{"id":"v1","color":"bullet"},..],"edges":[{"a":"v1","b":"c","k":2},..],"root":"v1"}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TreeFile {
    pub vertices: Vec<Vertex>,
    pub edges: Vec<EdgeRecord>,
    pub root: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeRecord {
    pub a: String,
    pub b: String,
    pub k: u32,
}

impl TreeFile {
    /// Canonical form: vertices and edges in id order.
    pub fn from_pair(tree: &Tree, k: &IndexMap) -> Self {
        TreeFile {
            vertices: tree.vertices().collect(),
            edges: k
                .iter()
                .map(|(e, weight)| {
                    let (a, b) = e.endpoints();
                    EdgeRecord {
                        a: a.to_string(),
                        b: b.to_string(),
                        k: weight,
                    }
                })
                .collect(),
            root: tree.root().to_string(),
        }
    }

    /// Validates user input, including the reserved-marker rule.
    pub fn into_pair(self) -> Result<(Tree, IndexMap)> {
        for v in &self.vertices {
            if v.id.contains(RESERVED_MARKER) {
                return Err(Error::ReservedVertexId(v.id.clone()));
            }
        }
        let mut builder = TreeBuilder::new();
        for v in self.vertices {
            builder = builder.vertex(v);
        }
        for e in self.edges {
            builder = builder.edge(e.a, e.b, e.k);
        }
        builder.root(self.root).build()
    }
}

pub fn parse_tree_json(text: &str) -> Result<(Tree, IndexMap)> {
    let file: TreeFile = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    file.into_pair()
}

pub fn tree_to_json(tree: &Tree, k: &IndexMap) -> String {
    serde_json::to_string(&TreeFile::from_pair(tree, k)).expect("tree serialises")
}
