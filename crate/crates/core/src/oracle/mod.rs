//! Brute-force evaluation modulo a prime.
//!
//! Everything here works straight from the defining sums and never touches
//! the reducer, so it can serve as the independent side of every identity
//! check. An identity in the adelic ring holds when both sides agree at all
//! but finitely many primes; agreement at a finite sample of primes is a
//! necessary condition only.

mod modp;
mod verify;

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::ToPrimitive;

pub use modp::{is_prime, primes, InverseTable, ModValue, Prime};
pub use verify::{
    verify_reduction, verify_reduction_with, verify_shuffle_relation, PrimeRecord,
    VerificationReport,
};

use crate::error::{Error, Result};
use crate::hoffman::{LinComb, ZTuple};
use crate::par::{self, Execution};
use crate::tree::{IndexMap, Tree};

/// Below this many compositions the parallel split costs more than it saves.
const PARALLEL_THRESHOLD: u64 = 50_000;

/// A tree pair compiled for repeated summation: bullets are numbered in id
/// order and each positively indexed edge becomes `(far-bullet mask, k)`.
#[derive(Debug, Clone)]
pub struct CompiledTree {
    bullets: usize,
    cuts: Vec<(u64, u32)>,
}

impl CompiledTree {
    pub fn new(tree: &Tree, k: &IndexMap) -> Result<Self> {
        k.check_domain(tree)?;
        let position: BTreeMap<&str, usize> =
            tree.bullets().enumerate().map(|(i, v)| (v, i)).collect();
        if position.len() > 64 {
            return Err(Error::InvalidArgument(format!(
                "{} bullet vertices exceed the supported 64",
                position.len()
            )));
        }
        let mut cuts = Vec::new();
        for (e, weight) in k.iter() {
            if weight == 0 {
                continue;
            }
            let mask = tree
                .bullet_descendants(e)?
                .iter()
                .fold(0u64, |m, v| m | 1 << position[v.as_str()]);
            cuts.push((mask, weight));
        }
        Ok(CompiledTree {
            bullets: position.len(),
            cuts,
        })
    }

    pub fn bullet_count(&self) -> usize {
        self.bullets
    }

    /// Number of compositions of `p` into `bullets` positive parts.
    pub fn term_count(&self, p: Prime) -> u64 {
        let p = p.get();
        let b = self.bullets as u64;
        if p < b {
            return 0;
        }
        binomial(p - 1, b - 1)
    }

    pub fn eval(&self, p: Prime, exec: Execution) -> u64 {
        let pv = p.get();
        let b = self.bullets;
        if (pv as usize) < b {
            return 0;
        }
        if b == 1 {
            // the only composition is m = (p); with one bullet there are no edges
            return 1 % pv;
        }
        let table = InverseTable::new(p);
        let mut rows: BTreeMap<u32, Vec<u64>> = BTreeMap::new();
        for &(_, k) in &self.cuts {
            rows.entry(k).or_insert_with(|| table.inv_pow_row(k));
        }
        let cuts: Vec<(u64, &[u64])> = self
            .cuts
            .iter()
            .map(|&(mask, k)| (mask, rows[&k].as_slice()))
            .collect();

        let first_max = pv - (b as u64 - 1);
        let exec = if self.term_count(p) >= PARALLEL_THRESHOLD {
            exec
        } else {
            Execution::Sequential
        };
        par::sum_mod(exec, 1..first_max + 1, pv, |m0| {
            let mut parts = vec![0u64; b];
            parts[0] = m0;
            composition_sum(&cuts, &mut parts, 1, pv - m0, pv)
        })
    }
}

/// Sums the product over all completions of `parts[idx..]` summing to `rest`.
fn composition_sum(
    cuts: &[(u64, &[u64])],
    parts: &mut [u64],
    idx: usize,
    rest: u64,
    p: u64,
) -> u64 {
    let b = parts.len();
    if idx == b - 1 {
        parts[idx] = rest;
        let mut prod = 1u64;
        for &(mask, row) in cuts {
            let mut l = 0u64;
            let mut bits = mask;
            while bits != 0 {
                l += parts[bits.trailing_zeros() as usize];
                bits &= bits - 1;
            }
            prod = prod * row[l as usize] % p;
        }
        return prod;
    }
    let remaining_slots = (b - 1 - idx) as u64;
    let mut acc = 0;
    for m in 1..=rest - remaining_slots {
        parts[idx] = m;
        acc = (acc + composition_sum(cuts, parts, idx + 1, rest - m, p)) % p;
    }
    acc
}

fn binomial(n: u64, k: u64) -> u64 {
    let k = k.min(n - k);
    (0..k).fold(1u64, |acc, i| acc.saturating_mul(n - i) / (i + 1))
}

/// The tree sum
/// `sum_{m : V_bullet -> Z_{>=1}, sum m_v = p} prod_e L_e(m)^{-k(e)} mod p`.
///
/// The sum is empty (value 0) when `p` is smaller than the number of bullet
/// vertices; a one-vertex tree has value 1.
pub fn eval_tree_mod_p(tree: &Tree, k: &IndexMap, p: u64) -> Result<ModValue> {
    eval_tree_mod_p_with(tree, k, p, Execution::default())
}

pub fn eval_tree_mod_p_with(
    tree: &Tree,
    k: &IndexMap,
    p: u64,
    exec: Execution,
) -> Result<ModValue> {
    let p = Prime::new(p)?;
    let compiled = CompiledTree::new(tree, k)?;
    Ok(ModValue::new(compiled.eval(p, exec), p))
}

/// `sum_{0 < n_1 < ... < n_r < p} n_1^{-k_1} ... n_r^{-k_r} mod p` by the
/// prefix-sum recursion `A_j(n) = n^{-k_j} sum_{m<n} A_{j-1}(m)`, `O(r p)`.
pub fn eval_fmzv_mod_p(t: &ZTuple, p: u64) -> Result<ModValue> {
    let p = Prime::new(p)?;
    Ok(ModValue::new(fmzv_residue(t, &InverseTable::new(p)), p))
}

pub(crate) fn fmzv_residue(t: &ZTuple, table: &InverseTable) -> u64 {
    let p = table.prime();
    let pv = p.get();
    if t.depth() == 0 {
        return 1 % pv;
    }
    // level[n] = A_j(n) for 1 <= n < p
    let mut level: Vec<u64> = vec![1; pv as usize];
    level[0] = 0;
    let mut first = true;
    for &k in t.entries() {
        let row = table.inv_pow_row(k);
        let mut next = vec![0u64; pv as usize];
        let mut prefix = 0u64;
        for n in 1..pv as usize {
            let carried = if first { 1 } else { prefix };
            next[n] = p.mul(row[n], carried);
            prefix = p.add(prefix, level[n]);
        }
        level = next;
        first = false;
    }
    level.iter().fold(0, |acc, &v| p.add(acc, v))
}

/// `sum_{m_1..m_r >= 1, sum m_i <= p-1} m_1^{-k_1} ... m_r^{-k_r} (sum m_i)^{-k_last}`
/// by direct enumeration of the `r`-tuples.
pub fn eval_mt_mod_p(ks: &[u32], k_last: u32, p: u64) -> Result<ModValue> {
    let p = Prime::new(p)?;
    if ks.is_empty() || ks.contains(&0) {
        return Err(Error::InvalidArgument(format!(
            "MT arguments must be a nonempty list of positive integers, got {ks:?}"
        )));
    }
    let table = InverseTable::new(p);
    let rows: Vec<Vec<u64>> = ks.iter().map(|&k| table.inv_pow_row(k)).collect();
    let last = table.inv_pow_row(k_last);
    let value = mt_sum(&rows, &last, 0, 0, 1, p);
    Ok(ModValue::new(value, p))
}

fn mt_sum(rows: &[Vec<u64>], last: &[u64], idx: usize, total: u64, prod: u64, p: Prime) -> u64 {
    let pv = p.get();
    if idx == rows.len() {
        return p.mul(prod, last[total as usize]);
    }
    let slots_after = (rows.len() - idx - 1) as u64;
    let mut acc = 0;
    let mut m = 1;
    while total + m + slots_after < pv {
        acc = p.add(
            acc,
            mt_sum(
                rows,
                last,
                idx + 1,
                total + m,
                p.mul(prod, rows[idx][m as usize]),
                p,
            ),
        );
        m += 1;
    }
    acc
}

/// `Z_A` on a combination: `sum coeff * zeta_A(word) mod p`.
pub fn eval_word_mod_p(a: &LinComb, p: u64) -> Result<ModValue> {
    let p = Prime::new(p)?;
    Ok(ModValue::new(word_residue(a, &InverseTable::new(p))?, p))
}

pub(crate) fn word_residue(a: &LinComb, table: &InverseTable) -> Result<u64> {
    let p = table.prime();
    let modulus = BigInt::from(p.get());
    let mut acc = 0;
    for (t, c) in a.z_terms()? {
        let c = ((c % &modulus) + &modulus) % &modulus;
        let c = c.to_u64().expect("residue fits in u64");
        acc = p.add(acc, p.mul(c, fmzv_residue(&t, table)));
    }
    Ok(acc)
}

/// The Bernoulli number `B_n mod p` (convention `B_1 = -1/2`) from
/// `sum_{j=0}^{n} C(n+1, j) B_j = 0`.
///
/// Defined for `n <= p - 2`; odd `n >= 3` gives 0 for every `p`. Indices
/// with `(p-1) | n` are not p-integral.
pub fn bernoulli_mod_p(n: u64, p: u64) -> Result<ModValue> {
    let p = Prime::new(p)?;
    let pv = p.get();
    if n >= 3 && n % 2 == 1 {
        return Ok(ModValue::new(0, p));
    }
    if n > 0 && n.is_multiple_of(pv - 1) {
        return Err(Error::NotPIntegral(n, pv));
    }
    if n > pv - 2 {
        return Err(Error::BernoulliOutOfRange(n, pv));
    }
    let n = n as usize;
    // binomials C(m, j) mod p for m <= n + 1 < p
    let mut pascal: Vec<Vec<u64>> = vec![vec![1]];
    for m in 1..=n + 1 {
        let prev = &pascal[m - 1];
        let mut row = vec![1u64; m + 1];
        for j in 1..m {
            row[j] = p.add(prev[j - 1], prev[j]);
        }
        pascal.push(row);
    }
    let mut b = vec![1u64];
    for m in 1..=n {
        let s = (0..m).fold(0, |acc, j| p.add(acc, p.mul(pascal[m + 1][j], b[j])));
        b.push(p.neg(p.mul(s, p.inv((m + 1) as u64))));
    }
    Ok(ModValue::new(b[n], p))
}
