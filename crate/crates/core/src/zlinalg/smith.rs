use std::collections::BTreeMap;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::int::Int;
use super::sparse::{combine, SparseIntMatrix, Work};
use crate::error::{Error, Result};

/// Invariant factors `d_1 | d_2 | ... | d_r`, all positive, `r` the rank.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithForm {
    pub invariant_factors: Vec<BigInt>,
}

impl SmithForm {
    pub fn rank(&self) -> usize {
        self.invariant_factors.len()
    }

    /// Prime-power orders of the torsion of the cokernel, ascending.
    pub fn elementary_divisors(&self) -> Vec<BigUint> {
        let mut out: Vec<BigUint> = self
            .invariant_factors
            .iter()
            .flat_map(|d| prime_powers(d.magnitude()).into_iter().map(|(_, q)| q))
            .collect();
        out.sort();
        out
    }
}

/// `Z^free_rank ⊕ ⊕ Z/torsion[k]`, torsion as a sorted multiset of prime powers.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct AbelianGroup {
    pub free_rank: usize,
    pub torsion: Vec<u64>,
}

impl AbelianGroup {
    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }

    /// Number of `Z/2` summands.
    pub fn two_torsion(&self) -> usize {
        self.torsion.iter().filter(|&&t| t == 2).count()
    }
}

impl std::fmt::Display for AbelianGroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        let mut counts: BTreeMap<u64, usize> = BTreeMap::new();
        for &t in &self.torsion {
            *counts.entry(t).or_default() += 1;
        }
        for (t, k) in counts {
            parts.push(if k == 1 {
                format!("Z/{t}")
            } else {
                format!("(Z/{t})^{k}")
            });
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

/// `(p, p^k)` for every prime dividing `n`, ascending in `p`.
fn prime_powers(n: &BigUint) -> Vec<(BigUint, BigUint)> {
    let mut n = n.clone();
    let mut out = Vec::new();
    let mut p = BigUint::from(2u32);
    while &p * &p <= n {
        let mut q = BigUint::one();
        while (&n % &p).is_zero() {
            n /= &p;
            q *= &p;
        }
        if !q.is_one() {
            out.push((p.clone(), q));
        }
        p += if p == BigUint::from(2u32) { 1u32 } else { 2u32 };
    }
    if n > BigUint::one() {
        out.push((n.clone(), n));
    }
    out
}

/// Invariant factors from an arbitrary list of diagonal entries.
fn normalise_diagonal(diag: Vec<BigInt>) -> Vec<BigInt> {
    let rank = diag.len();
    let mut by_prime: BTreeMap<BigUint, Vec<BigUint>> = BTreeMap::new();
    for d in &diag {
        for (p, q) in prime_powers(d.magnitude()) {
            by_prime.entry(p).or_default().push(q);
        }
    }
    let nontrivial = by_prime.values().map(Vec::len).max().unwrap_or(0);
    let mut factors = vec![BigUint::one(); nontrivial];
    for powers in by_prime.values_mut() {
        powers.sort();
        let offset = nontrivial - powers.len();
        for (k, q) in powers.iter().enumerate() {
            factors[offset + k] *= q;
        }
    }
    let mut out = vec![BigInt::one(); rank - nontrivial];
    out.extend(factors.into_iter().map(BigInt::from));
    out
}

pub fn smith_normal_form(m: &SparseIntMatrix) -> SmithForm {
    let mut w = Work::new(m);
    let mut diag = Vec::new();
    while let Some(piv) = w.pick_pivot() {
        let p = piv.value.clone();
        if !p.is_unit() {
            // clear a non-divisible entry before committing to the pivot
            if let Some(r2) = w
                .col_support(piv.col)
                .into_iter()
                .find(|&r| !w.entry(r, piv.col).unwrap().is_multiple_of(&p))
            {
                let q = w.entry(r2, piv.col).unwrap() / &p;
                let new = combine(&Int::one(), &w.rows[r2], &-q, &w.rows[piv.row]);
                w.replace_row(r2, new);
                continue;
            }
            if let Some((c2, b)) = w.rows[piv.row]
                .iter()
                .find(|(_, b)| !b.is_multiple_of(&p))
                .cloned()
            {
                let q = &b / &p;
                for r in w.col_support(piv.col) {
                    let a = w.entry(r, piv.col).unwrap().clone();
                    let cur = w.entry(r, c2).cloned().unwrap_or_default();
                    w.set(r, c2, &cur - &(&q * &a));
                }
                continue;
            }
        }
        let pivot_row = w.rows[piv.row].clone();
        for r in w.col_support(piv.col) {
            if r == piv.row {
                continue;
            }
            let q = w.entry(r, piv.col).unwrap() / &p;
            let new = combine(&Int::one(), &w.rows[r], &-q, &pivot_row);
            w.replace_row(r, new);
        }
        w.retire(piv.row, piv.col);
        diag.push(BigInt::from(p.abs()));
    }
    debug_assert!(w.is_empty());
    SmithForm {
        invariant_factors: normalise_diagonal(diag),
    }
}

/// Homology `ker d_out / im d_in` at the middle group of
/// `C_prev --d_in--> C --d_out--> C_next`.
pub fn homology_group(d_out: &SparseIntMatrix, d_in: &SparseIntMatrix) -> Result<AbelianGroup> {
    if d_out.cols() != d_in.rows() {
        return Err(Error::Shape(format!(
            "outgoing map has {} columns but incoming map has {} rows",
            d_out.cols(),
            d_in.rows()
        )));
    }
    if !d_out.mul(d_in)?.is_zero() {
        return Err(Error::NonzeroProduct);
    }
    let rank_out = smith_normal_form(d_out).rank();
    Ok(group_from(d_out.cols(), rank_out, &smith_normal_form(d_in)))
}

pub(crate) fn group_from(dim: usize, rank_out: usize, snf_in: &SmithForm) -> AbelianGroup {
    let torsion = snf_in
        .elementary_divisors()
        .iter()
        .map(|q| q.to_u64().expect("torsion order fits in 64 bits"))
        .collect();
    AbelianGroup {
        free_rank: dim - rank_out - snf_in.rank(),
        torsion,
    }
}
