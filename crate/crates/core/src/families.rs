//! Named tree families whose values have closed forms.

use crate::error::{Error, Result};
use crate::tree::{IndexMap, Tree, TreeBuilder};

/// Bullet path `v1 -k1- v2 - ... -kr- v{r+1}` rooted at `v{r+1}`; its value
/// is `zeta_A(k1, ..., kr)`.
pub fn chain(ks: &[u32]) -> Result<(Tree, IndexMap)> {
    let mut b = TreeBuilder::new();
    for i in 1..=ks.len() + 1 {
        b = b.bullet(format!("v{i}"));
    }
    for (i, &k) in ks.iter().enumerate() {
        b = b.edge(format!("v{}", i + 1), format!("v{}", i + 2), k);
    }
    b.root(format!("v{}", ks.len() + 1)).build()
}

/// Leaves `v1 .. vr` joined to a circle `c` by `k1 .. kr`, and `c` joined to
/// the bullet root `r` by `k_last`; its value is the MT-type sum
/// `zeta^MT_A(k1, ..., kr; k_last)`.
pub fn mt_star(ks: &[u32], k_last: u32) -> Result<(Tree, IndexMap)> {
    if ks.is_empty() {
        return Err(Error::InvalidArgument(
            "an MT star needs at least one leaf".into(),
        ));
    }
    let mut b = TreeBuilder::new()
        .circle("c")
        .bullet("r")
        .edge("c", "r", k_last);
    for (i, &k) in ks.iter().enumerate() {
        let leaf = format!("v{}", i + 1);
        b = b.bullet(leaf.clone()).edge(leaf, "c", k);
    }
    b.root("r").build()
}

/// Two bullet chains `p` and `q` (each read from its leaf) meeting at the
/// bullet junction `j`, followed by the chain `r` from `j` to the root.
/// With `r` empty the junction itself is the root.
pub fn kmt_tree(p: &[u32], q: &[u32], r: &[u32]) -> Result<(Tree, IndexMap)> {
    if p.is_empty() || q.is_empty() {
        return Err(Error::InvalidArgument(
            "both KMT branches need at least one edge".into(),
        ));
    }
    let mut b = TreeBuilder::new().bullet("j");
    for (name, ks) in [("p", p), ("q", q)] {
        let ids: Vec<String> = (1..=ks.len()).map(|i| format!("{name}{i}")).collect();
        for (i, &k) in ks.iter().enumerate() {
            let next = ids.get(i + 1).cloned().unwrap_or_else(|| "j".to_string());
            b = b.bullet(ids[i].clone()).edge(ids[i].clone(), next, k);
        }
    }
    let mut prev = "j".to_string();
    for (i, &k) in r.iter().enumerate() {
        let id = format!("r{}", i + 1);
        b = b.bullet(id.clone()).edge(prev, id.clone(), k);
        prev = id;
    }
    b.root(prev).build()
}

/// Leaves `a1 .. ai` joined to a circle `c` by `ks`, then the bullet chain
/// `c -l1- u1 -l2- u2 ... u_s` rooted at `u_s`.
pub fn caterpillar(ks: &[u32], ls: &[u32]) -> Result<(Tree, IndexMap)> {
    if ks.len() < 2 || ls.is_empty() {
        return Err(Error::InvalidArgument(
            "a caterpillar needs at least two leaves and one chain edge".into(),
        ));
    }
    let mut b = TreeBuilder::new().circle("c");
    for (i, &k) in ks.iter().enumerate() {
        let leaf = format!("a{}", i + 1);
        b = b.bullet(leaf.clone()).edge(leaf, "c", k);
    }
    let mut prev = "c".to_string();
    for (i, &l) in ls.iter().enumerate() {
        let id = format!("u{}", i + 1);
        b = b.bullet(id.clone()).edge(prev, id.clone(), l);
        prev = id;
    }
    b.root(prev).build()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hoffman::ZTuple;
    use crate::oracle::{eval_fmzv_mod_p, eval_mt_mod_p, eval_tree_mod_p};

    #[test]
    fn chain_and_star_values() {
        let (t, k) = chain(&[2, 1]).unwrap();
        assert_eq!(t.root(), "v3");
        assert_eq!(eval_tree_mod_p(&t, &k, 7).unwrap().residue, 4);
        let z = eval_fmzv_mod_p(&ZTuple::new(vec![2, 1]).unwrap(), 7).unwrap();
        assert_eq!(z.residue, 4);

        let (s, k) = mt_star(&[1, 1], 1).unwrap();
        assert_eq!(eval_tree_mod_p(&s, &k, 7).unwrap().residue, 6);
        assert_eq!(eval_mt_mod_p(&[1, 1], 1, 7).unwrap().residue, 6);
    }

    #[test]
    fn shapes() {
        let (t, _) = kmt_tree(&[1, 1], &[1], &[1, 1]).unwrap();
        assert_eq!(t.vertex_count(), 6);
        assert_eq!(t.root(), "r2");
        assert_eq!(t.degree("j"), 3);
        let (t, _) = kmt_tree(&[1], &[1], &[]).unwrap();
        assert_eq!(t.root(), "j");
        let (t, _) = caterpillar(&[1, 2, 1], &[2, 1]).unwrap();
        assert_eq!(t.root(), "u2");
        assert_eq!(t.degree("c"), 4);
        assert!(mt_star(&[], 1).is_err());
        assert!(caterpillar(&[1], &[1]).is_err());
    }
}
