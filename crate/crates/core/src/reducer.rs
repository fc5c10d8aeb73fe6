//! Reduction of a tree pair to a signed integer combination of z-words.
//!
//! For a harvestable pair the combination is built by structural recursion:
//! a bare bullet chain gives a single word `z_{k_1} ... z_{k_r}` read from
//! the leaf; otherwise, with `v'` the branch point nearest the root,
//!
//! ```text
//! w = (w_1 ш ... ш w_s) x^{k'} z_{k_1} ... z_{k_r}
//! ```
//!
//! where `k'` indexes the edge above `v'`, `k_1 .. k_r` index the bullet
//! chain from there up to the root, and `w_j` is the word of the branch
//! hanging off `v'` through edge `f_j`, re-rooted at a fresh bullet vertex
//! attached by an edge of index `k(f_j)`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::hoffman::{concat_right, shuffle_lincomb, z_word, LinComb, Word, ZTerm, ZTuple};
use crate::sign::Sign;
use crate::transforms::harvestable_form;
use crate::tree::{
    harvestable_violation, is_essentially_positive, require_essentially_positive, Color, Edge,
    IndexMap, Tree, RESERVED_MARKER,
};

/// `value(tree, k) = sign * Z_A(comb)` at every prime.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SignedReduction {
    pub sign: Sign,
    pub comb: LinComb,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SignedReductionJson {
    pub sign: Sign,
    pub terms: Vec<ZTerm>,
}

impl SignedReduction {
    pub fn to_json(&self) -> SignedReductionJson {
        SignedReductionJson {
            sign: self.sign,
            terms: self.comb.to_z_json().expect("reductions lie in Q + yH"),
        }
    }
}

fn require_root_terminal(tree: &Tree) -> Result<()> {
    if tree.is_terminal(tree.root()) {
        Ok(())
    } else {
        Err(Error::RootNotTerminal(tree.root().to_string()))
    }
}

/// Walks down from the root; returns `(branch point, vertex above it)`.
fn walk_to_branch(tree: &Tree) -> Option<(&str, &str)> {
    let mut prev = tree.root();
    let mut cur = tree.neighbors(prev).next()?;
    loop {
        let children = tree.children_from(cur, prev);
        match children.len() {
            0 => return None,
            1 => {
                prev = cur;
                cur = children[0];
            }
            _ => return Some((cur, prev)),
        }
    }
}

/// The first vertex of degree at least 3 on the way down from the root, or
/// `None` if the tree is a path.
pub fn nearest_branch_point(tree: &Tree) -> Result<Option<String>> {
    require_root_terminal(tree)?;
    Ok(walk_to_branch(tree).map(|(v, _)| v.to_string()))
}

/// Sum of the index over every edge below the nearest branch point; 0 when
/// there is none.
pub fn branch_statistic(tree: &Tree, k: &IndexMap) -> Result<u64> {
    require_root_terminal(tree)?;
    let Some((v, above)) = walk_to_branch(tree) else {
        return Ok(0);
    };
    let below = tree.subtree_from(v, above);
    let mut total = 0u64;
    for x in below {
        if x == v {
            continue;
        }
        let parent = tree
            .path_vertices(x, v)
            .get(1)
            .copied()
            .expect("x differs from v");
        total += u64::from(k.at(x, parent));
    }
    Ok(total)
}

/// Id of the synthetic root attached above a branch whose top is `top`.
pub fn branch_root_id(top: &str) -> String {
    format!("{top}{RESERVED_MARKER}r")
}

/// The child pair for the branch through `top` below branch point `v`:
/// the subtree of `top` plus a new bullet root joined to `top` by an edge
/// carrying `k(v, top)`.
pub fn child_pair(tree: &Tree, k: &IndexMap, v: &str, top: &str) -> Result<(Tree, IndexMap)> {
    let edge = Edge::new(v, top);
    tree.require_edge(&edge)?;
    let root = branch_root_id(top);
    let members = tree.subtree_from(top, v);
    let mut vertices: Vec<crate::tree::Vertex> = members
        .iter()
        .map(|id| crate::tree::Vertex {
            id: id.to_string(),
            color: tree.color(id).unwrap(),
        })
        .collect();
    vertices.push(crate::tree::Vertex {
        id: root.clone(),
        color: Color::Bullet,
    });
    let mut idx: BTreeMap<Edge, u32> = BTreeMap::new();
    for (e, weight) in k.iter() {
        let (a, b) = e.endpoints();
        if members.contains(&a) && members.contains(&b) {
            idx.insert(e.clone(), weight);
        }
    }
    idx.insert(Edge::new(root.as_str(), top), k[&edge]);
    let sub = Tree::new(vertices, idx.keys().cloned(), root)?;
    let sub_k = IndexMap::new(&sub, idx)?;
    Ok((sub, sub_k))
}

/// Word of the pair "fresh bullet root --`top_index`-- `top` + subtree of
/// `top` away from `parent`".
fn branch_word(tree: &Tree, k: &IndexMap, top: &str, parent: &str, top_index: u32) -> LinComb {
    if cfg!(debug_assertions) && tree.contains_edge(&Edge::new(top, parent)) {
        if let Ok((sub, sub_k)) = child_pair(tree, k, parent, top) {
            debug_assert_eq!(harvestable_violation(&sub, &sub_k), None);
            debug_assert!(is_essentially_positive(&sub, &sub_k));
        }
    }
    // indices from the (virtual) root downwards
    let mut chain = vec![top_index];
    let (mut prev, mut cur) = (parent, top);
    loop {
        let children = tree.children_from(cur, prev);
        match children.len() {
            0 => {
                debug_assert!(tree.is_bullet(cur));
                let from_leaf: Vec<u32> = chain.into_iter().rev().collect();
                let t = ZTuple::new(from_leaf).expect("chain edges are positive");
                return LinComb::monomial(z_word(&t), 1);
            }
            1 => {
                debug_assert!(tree.is_bullet(cur));
                chain.push(k.at(cur, children[0]));
                prev = cur;
                cur = children[0];
            }
            _ => {
                debug_assert!(tree.is_circle(cur));
                let k_prime = chain.pop().expect("chain starts nonempty");
                let upper: Vec<u32> = chain.into_iter().rev().collect();
                let upper = ZTuple::new(upper).expect("chain edges are positive");

                let mut branches: Vec<(&str, &str)> = children
                    .iter()
                    .map(|&c| {
                        let min_id = tree.subtree_from(c, cur).into_iter().min().unwrap();
                        (min_id, c)
                    })
                    .collect();
                branches.sort();
                let mut product = LinComb::one();
                for (_, c) in branches {
                    let w = branch_word(tree, k, c, cur, k.at(cur, c));
                    product = shuffle_lincomb(&product, &w);
                }
                let tail = Word::x_power(k_prime).concat(&z_word(&upper));
                return concat_right(&product, &tail);
            }
        }
    }
}

/// The combination `w` with `value(tree, k) = Z_A(w)` for a harvestable,
/// essentially positive pair.
pub fn reduce_harvestable(tree: &Tree, k: &IndexMap) -> Result<LinComb> {
    k.check_domain(tree)?;
    if let Some(why) = harvestable_violation(tree, k) {
        return Err(Error::NotHarvestable(why));
    }
    require_essentially_positive(tree, k)?;
    let root = tree.root();
    let Some(top) = tree.neighbors(root).next() else {
        return Ok(LinComb::one());
    };
    Ok(branch_word(tree, k, top, root, k.at(root, top)))
}

/// Reduces any essentially positive pair: normalise to a harvestable form,
/// then reduce that.
pub fn reduce(tree: &Tree, k: &IndexMap) -> Result<SignedReduction> {
    let h = harvestable_form(tree, k)?;
    let comb = reduce_harvestable(&h.tree, &h.k)?;
    Ok(SignedReduction { sign: h.sign, comb })
}

/// Convenience: the z-form terms of a reduction as `(index, coeff)` pairs.
pub fn reduction_terms(r: &SignedReduction) -> Vec<(ZTuple, BigInt)> {
    r.comb.z_terms().expect("reductions lie in Q + yH")
}
