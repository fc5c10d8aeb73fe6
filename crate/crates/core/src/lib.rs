//! Finite multiple zeta values attached to 2-colored rooted trees.
//!
//! A tree pair `(X, k)` is a tree with bullet and circle vertices, a root
//! and a nonnegative index on each edge. Its value modulo `p` is a sum over
//! the compositions of `p` into one positive part per bullet vertex. This
//! crate reduces such a value to a signed integer combination of ordinary
//! finite multiple zeta values, and checks every reduction against a
//! brute-force evaluation at sampled primes.
//!
//! ```
//! use fmzv::{families, reduce, verify_reduction};
//!
//! let (tree, k) = families::mt_star(&[1, 1], 1).unwrap();
//! let r = reduce(&tree, &k).unwrap();
//! assert_eq!(r.comb.display_z().unwrap(), "2·z1z2");
//! assert!(verify_reduction(&tree, &k, &[5, 7, 11, 13]).unwrap().pass);
//! ```

pub mod cli;
pub mod corpus;
pub mod error;
pub mod families;
pub mod hoffman;
pub mod oracle;
pub mod par;
pub mod reducer;
pub mod sign;
pub mod transforms;
pub mod tree;

pub use error::{Error, Result};
pub use hoffman::{shuffle, shuffle_lincomb, z_word, Letter, LinComb, Word, ZTuple};
pub use oracle::{
    bernoulli_mod_p, eval_fmzv_mod_p, eval_mt_mod_p, eval_tree_mod_p, eval_word_mod_p,
    verify_reduction, verify_shuffle_relation, ModValue, VerificationReport,
};
pub use par::Execution;
pub use reducer::{reduce, reduce_harvestable, SignedReduction};
pub use sign::Sign;
pub use transforms::{harvestable_form, move_root, SignedTreePair};
pub use tree::{Color, Edge, IndexMap, Tree, TreeBuilder, Vertex};
