//! Residues modulo an odd prime and the per-prime inverse table.

use serde::Serialize;

use crate::error::{Error, Result};

/// An odd prime, checked by trial division.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct Prime(u64);

impl Prime {
    /// Largest accepted prime; keeps every product of two residues in `u64`.
    pub const MAX: u64 = 1 << 31;

    pub fn new(p: u64) -> Result<Self> {
        if p == 2 {
            return Err(Error::EvenPrime);
        }
        if !(2..=Self::MAX).contains(&p) || !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(Prime(p))
    }

    pub fn get(self) -> u64 {
        self.0
    }

    pub fn reduce_i64(self, x: i64) -> u64 {
        x.rem_euclid(self.0 as i64) as u64
    }

    pub fn mul(self, a: u64, b: u64) -> u64 {
        a * b % self.0
    }

    pub fn add(self, a: u64, b: u64) -> u64 {
        (a + b) % self.0
    }

    pub fn neg(self, a: u64) -> u64 {
        (self.0 - a % self.0) % self.0
    }

    pub fn pow(self, mut base: u64, mut exp: u64) -> u64 {
        let mut acc = 1 % self.0;
        base %= self.0;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    /// Inverse by Fermat's little theorem. `a` must be nonzero mod p.
    pub fn inv(self, a: u64) -> u64 {
        debug_assert!(!a.is_multiple_of(self.0));
        self.pow(a, self.0 - 2)
    }
}

impl std::fmt::Display for Prime {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        self.0.fmt(f)
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

pub fn primes(ps: &[u64]) -> Result<Vec<Prime>> {
    ps.iter().map(|&p| Prime::new(p)).collect()
}

/// One sampled component of an element of the adelic ring.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ModValue {
    pub residue: u64,
    pub p: Prime,
}

impl ModValue {
    pub fn new(residue: u64, p: Prime) -> Self {
        ModValue {
            residue: residue % p.get(),
            p,
        }
    }
}

/// `inv[a] = a^{-1} mod p` for `1 <= a < p`, computed once per prime.
#[derive(Debug, Clone)]
pub struct InverseTable {
    p: Prime,
    inv: Vec<u64>,
}

impl InverseTable {
    pub fn new(p: Prime) -> Self {
        let mut inv = vec![0; p.get() as usize];
        for (a, slot) in inv.iter_mut().enumerate().skip(1) {
            *slot = p.inv(a as u64);
        }
        InverseTable { p, inv }
    }

    pub fn prime(&self) -> Prime {
        self.p
    }

    /// `a^{-1}`; `a` is taken mod p and must be nonzero.
    pub fn inv(&self, a: u64) -> u64 {
        self.inv[(a % self.p.get()) as usize]
    }

    /// `a^{-k}`.
    pub fn inv_pow(&self, a: u64, k: u32) -> u64 {
        self.p.pow(self.inv(a), u64::from(k))
    }

    /// Row `t[a] = a^{-k}` for `0 <= a < p` (entry 0 is unused).
    pub fn inv_pow_row(&self, k: u32) -> Vec<u64> {
        self.inv
            .iter()
            .map(|&i| self.p.pow(i, u64::from(k)))
            .collect()
    }
}
