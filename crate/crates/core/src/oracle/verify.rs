//! Identity checks: both sides evaluated independently at each sampled prime.

use serde::Serialize;

use super::{fmzv_residue, word_residue, CompiledTree, InverseTable, Prime};
use crate::error::Result;
use crate::hoffman::{shuffle, z_word, LinComb, ZTuple};
use crate::par::Execution;
use crate::reducer::reduce;
use crate::sign::Sign;
use crate::tree::{IndexMap, Tree};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct PrimeRecord {
    pub p: u64,
    pub lhs: u64,
    pub rhs: u64,
    pub pass: bool,
}

/// Per-prime residues of both sides. `pass` holds iff every record passes.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub pass: bool,
    pub primes: Vec<PrimeRecord>,
}

impl VerificationReport {
    fn from_records(primes: Vec<PrimeRecord>) -> Self {
        VerificationReport {
            pass: primes.iter().all(|r| r.pass),
            primes,
        }
    }

    pub fn failures(&self) -> impl Iterator<Item = &PrimeRecord> {
        self.primes.iter().filter(|r| !r.pass)
    }
}

fn record(p: Prime, lhs: u64, rhs: u64) -> PrimeRecord {
    PrimeRecord {
        p: p.get(),
        lhs,
        rhs,
        pass: lhs == rhs,
    }
}

/// Checks `value(tree, k) = sign * Z_A(w)` where `(sign, w) = reduce(tree, k)`.
pub fn verify_reduction(tree: &Tree, k: &IndexMap, primes: &[u64]) -> Result<VerificationReport> {
    verify_reduction_with(tree, k, primes, Execution::default())
}

pub fn verify_reduction_with(
    tree: &Tree,
    k: &IndexMap,
    primes: &[u64],
    exec: Execution,
) -> Result<VerificationReport> {
    let primes = super::primes(primes)?;
    let reduction = reduce(tree, k)?;
    let compiled = CompiledTree::new(tree, k)?;
    let mut records = Vec::with_capacity(primes.len());
    for p in primes {
        let table = InverseTable::new(p);
        let lhs = compiled.eval(p, exec);
        let rhs = reduction
            .sign
            .apply_mod(word_residue(&reduction.comb, &table)?, p.get());
        records.push(record(p, lhs, rhs));
    }
    Ok(VerificationReport::from_records(records))
}

/// Checks `Z_A(z(t) ш z(u)) = (-1)^{|u|} Z_A(t, reversed u)`.
pub fn verify_shuffle_relation(
    t: &ZTuple,
    u: &ZTuple,
    primes: &[u64],
) -> Result<VerificationReport> {
    let primes = super::primes(primes)?;
    let lhs_comb: LinComb = shuffle(&z_word(t), &z_word(u));
    let joined = t.concat(&u.reversed());
    let sign = Sign::from_parity(u.weight());
    let mut records = Vec::with_capacity(primes.len());
    for p in primes {
        let table = InverseTable::new(p);
        let lhs = word_residue(&lhs_comb, &table)?;
        let rhs = sign.apply_mod(fmzv_residue(&joined, &table), p.get());
        records.push(record(p, lhs, rhs));
    }
    Ok(VerificationReport::from_records(records))
}
