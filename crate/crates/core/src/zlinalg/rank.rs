use num_bigint::BigInt;
use num_integer::Integer;

use super::int::Int;
use super::sparse::{combine, SparseIntMatrix, Work};

/// Rank over the rationals by fraction-free elimination: each updated row
/// becomes `p·row - a·pivot_row` and is then divided by its content.
pub fn rank_over_q(m: &SparseIntMatrix) -> usize {
    let mut w = Work::new(m);
    let mut rank = 0;
    while let Some(piv) = w.pick_pivot() {
        let pivot_row = w.rows[piv.row].clone();
        for r in w.col_support(piv.col) {
            if r == piv.row {
                continue;
            }
            let a = w.entry(r, piv.col).unwrap().clone();
            let g = a.gcd(&piv.value);
            let (s, t) = (&piv.value / &g, -(&a / &g));
            let mut new = combine(&s, &w.rows[r], &t, &pivot_row);
            let content = new.iter().fold(Int::default(), |acc, (_, v)| acc.gcd(v));
            if !content.is_zero() && !content.is_one() {
                for (_, v) in &mut new {
                    *v = &*v / &content;
                }
            }
            w.replace_row(r, new);
        }
        w.retire(piv.row, piv.col);
        rank += 1;
    }
    rank
}

/// Rank over `Z/p` for a prime `p`, by dense elimination on reduced rows.
pub fn rank_mod_p(m: &SparseIntMatrix, p: u64) -> usize {
    let modulus = BigInt::from(p);
    let mut rows: Vec<Vec<u64>> = vec![vec![0; m.cols()]; m.rows()];
    for (r, c, v) in m.iter() {
        let red = v.mod_floor(&modulus);
        rows[r][c] = red.iter_u64_digits().next().unwrap_or(0);
    }
    let inv = |a: u64| -> u64 {
        let (mut base, mut e, mut acc) = (a as u128, p - 2, 1u128);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base % p as u128;
            }
            base = base * base % p as u128;
            e >>= 1;
        }
        acc as u64
    };
    let mut rank = 0;
    for c in 0..m.cols() {
        let Some(k) = (rank..rows.len()).find(|&r| rows[r][c] != 0) else {
            continue;
        };
        rows.swap(rank, k);
        let f = inv(rows[rank][c]);
        for v in &mut rows[rank] {
            *v = (*v as u128 * f as u128 % p as u128) as u64;
        }
        for r in 0..rows.len() {
            if r != rank && rows[r][c] != 0 {
                let a = rows[r][c] as u128;
                for cc in c..m.cols() {
                    let sub = a * rows[rank][cc] as u128 % p as u128;
                    rows[r][cc] = ((rows[r][cc] as u128 + p as u128 - sub) % p as u128) as u64;
                }
            }
        }
        rank += 1;
    }
    rank
}
