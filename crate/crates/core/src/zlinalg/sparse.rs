use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::ops::AddAssign;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

use super::int::Int;
use crate::error::{Error, Result};

/// Sparse integer matrix; zeros are never stored.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct SparseIntMatrix {
    rows: usize,
    cols: usize,
    entries: BTreeMap<(usize, usize), BigInt>,
}

impl SparseIntMatrix {
    pub fn new(rows: usize, cols: usize) -> Self {
        SparseIntMatrix {
            rows,
            cols,
            entries: BTreeMap::new(),
        }
    }

    /// Builds a matrix from `(row, col, value)` triplets; repeated positions
    /// are summed.
    pub fn from_triplets<T, I>(rows: usize, cols: usize, triplets: I) -> Result<Self>
    where
        T: Into<BigInt>,
        I: IntoIterator<Item = (usize, usize, T)>,
    {
        let mut m = SparseIntMatrix::new(rows, cols);
        for (r, c, v) in triplets {
            if r >= rows || c >= cols {
                return Err(Error::Shape(format!(
                    "entry ({r},{c}) outside a {rows}x{cols} matrix"
                )));
            }
            let slot = m.entries.entry((r, c)).or_insert_with(BigInt::zero);
            *slot += v.into();
            if slot.is_zero() {
                m.entries.remove(&(r, c));
            }
        }
        Ok(m)
    }

    pub fn from_dense(rows: &[Vec<i64>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::Shape("ragged dense matrix".into()));
        }
        Self::from_triplets(
            rows.len(),
            cols,
            rows.iter()
                .enumerate()
                .flat_map(|(r, row)| row.iter().enumerate().map(move |(c, &v)| (r, c, v))),
        )
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, r: usize, c: usize) -> BigInt {
        self.entries.get(&(r, c)).cloned().unwrap_or_default()
    }

    pub fn set(&mut self, r: usize, c: usize, v: impl Into<BigInt>) -> Result<()> {
        if r >= self.rows || c >= self.cols {
            return Err(Error::Shape(format!("({r},{c}) out of range")));
        }
        let v = v.into();
        if v.is_zero() {
            self.entries.remove(&(r, c));
        } else {
            self.entries.insert((r, c), v);
        }
        Ok(())
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, usize, &BigInt)> {
        self.entries.iter().map(|(&(r, c), v)| (r, c, v))
    }

    pub fn transpose(&self) -> Self {
        SparseIntMatrix {
            rows: self.cols,
            cols: self.rows,
            entries: self
                .entries
                .iter()
                .map(|(&(r, c), v)| ((c, r), v.clone()))
                .collect(),
        }
    }

    pub fn mul(&self, other: &SparseIntMatrix) -> Result<SparseIntMatrix> {
        if self.cols != other.rows {
            return Err(Error::Shape(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let small = |m: &SparseIntMatrix| -> Option<Vec<i64>> {
            m.entries.values().map(ToPrimitive::to_i64).collect()
        };
        // i64 products summed in i128 cannot overflow at any realistic size
        let entries = match (small(self), small(other)) {
            (Some(a), Some(b)) => product(self, &a, other, &b, |x, y| i128::from(*x) * i128::from(*y))
                .into_iter()
                .map(|(k, v)| (k, BigInt::from(v)))
                .collect(),
            _ => {
                let a: Vec<&BigInt> = self.entries.values().collect();
                let b: Vec<&BigInt> = other.entries.values().collect();
                product(self, &a, other, &b, |x, y| *x * *y).into_iter().collect()
            }
        };
        Ok(SparseIntMatrix {
            rows: self.rows,
            cols: other.cols,
            entries,
        })
    }

    /// `rows cols nnz` header followed by one `r c v` line per entry.
    pub fn to_triplet_text(&self) -> String {
        let mut s = format!("{} {} {}\n", self.rows, self.cols, self.nnz());
        for (&(r, c), v) in &self.entries {
            let _ = writeln!(s, "{r} {c} {v}");
        }
        s
    }

    pub fn from_triplet_text(text: &str) -> Result<Self> {
        let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty());
        let bad = |l: &str| Error::MalformedRecord(l.to_string());
        let header = lines.next().ok_or_else(|| bad(""))?;
        let h: Vec<usize> = header
            .split_whitespace()
            .map(|t| t.parse().map_err(|_| bad(header)))
            .collect::<Result<_>>()?;
        let [rows, cols, nnz] = h[..] else {
            return Err(bad(header));
        };
        let mut triplets = Vec::with_capacity(nnz);
        for line in lines {
            let t: Vec<&str> = line.split_whitespace().collect();
            let [r, c, v] = t[..] else {
                return Err(bad(line));
            };
            triplets.push((
                r.parse::<usize>().map_err(|_| bad(line))?,
                c.parse::<usize>().map_err(|_| bad(line))?,
                v.parse::<BigInt>().map_err(|_| bad(line))?,
            ));
        }
        if triplets.len() != nnz {
            return Err(Error::MalformedRecord(format!(
                "expected {nnz} entries, found {}",
                triplets.len()
            )));
        }
        Self::from_triplets(rows, cols, triplets)
    }
}

/// Sparse product with values supplied alongside each matrix in entry order.
fn product<V, T>(
    a: &SparseIntMatrix,
    av: &[V],
    b: &SparseIntMatrix,
    bv: &[V],
    mul: impl Fn(&V, &V) -> T,
) -> Vec<((usize, usize), T)>
where
    T: Zero + AddAssign,
{
    let mut by_row: Vec<Vec<(usize, &V)>> = (0..b.rows).map(|_| Vec::new()).collect();
    for (&(r, c), v) in b.entries.keys().zip(bv) {
        by_row[r].push((c, v));
    }
    let mut entries: Vec<((usize, usize), T)> = Vec::new();
    let mut acc: Vec<(usize, T)> = Vec::new();
    let mut iter = a.entries.keys().zip(av).peekable();
    while let Some((&(r, k), x)) = iter.next() {
        acc.extend(by_row[k].iter().map(|&(c, y)| (c, mul(x, y))));
        if iter.peek().is_some_and(|((r2, _), _)| *r2 == r) {
            continue;
        }
        acc.sort_unstable_by_key(|e| e.0);
        for (c, v) in acc.drain(..) {
            match entries.last_mut() {
                Some(((r0, c0), sum)) if *r0 == r && *c0 == c => *sum += v,
                _ => entries.push(((r, c), v)),
            }
        }
    }
    entries.retain(|(_, v)| !v.is_zero());
    entries
}

/// Row-major elimination workspace shared by the integer and rational
/// reductions. Rows are kept sorted by column and column supports are
/// tracked. Columns holding units sit in buckets indexed by a lower bound on
/// their cheapest unit's cost, refreshed lazily as the matrix changes.
pub(crate) struct Work {
    pub rows: Vec<Vec<(usize, Int)>>,
    /// Rows holding each column in insertion order; lists flagged in
    /// `stale` may also hold removed or repeated indices. `col_count` is exact.
    col_rows: Vec<Vec<usize>>,
    col_count: Vec<usize>,
    stale: Vec<bool>,
    /// Scratch marks, one per row, cleared after each use.
    seen: Vec<bool>,
    /// Number of columns with at least one entry.
    live_cols: usize,
    /// `best_len[c]` is at most the length of the shortest row with a unit
    /// in column `c` (`usize::MAX` when the column is known to hold none).
    best_len: Vec<usize>,
    /// `buckets[k]` holds columns queued at cost `k`; every column with a
    /// unit has a record at most `col_count + best_len`.
    buckets: Vec<Vec<usize>>,
    lowest: usize,
    dirty_rows: Vec<usize>,
    dirty_cols: Vec<usize>,
}

pub(crate) struct Pivot {
    pub row: usize,
    pub col: usize,
    pub value: Int,
}

impl Work {
    pub fn new(m: &SparseIntMatrix) -> Self {
        let mut rows: Vec<Vec<(usize, Int)>> = vec![Vec::new(); m.rows];
        let mut col_rows = vec![Vec::new(); m.cols];
        for (&(r, c), v) in &m.entries {
            rows[r].push((c, Int::from(v)));
            col_rows[c].push(r);
        }
        let col_count: Vec<usize> = col_rows.iter().map(Vec::len).collect();
        let live_cols = col_count.iter().filter(|&&n| n > 0).count();
        let mut w = Work {
            rows,
            col_rows,
            col_count,
            stale: vec![false; m.cols],
            seen: vec![false; m.rows],
            live_cols,
            best_len: vec![usize::MAX; m.cols],
            buckets: vec![Vec::new(); m.rows + m.cols + 1],
            lowest: usize::MAX,
            dirty_rows: Vec::new(),
            dirty_cols: Vec::new(),
        };
        for r in 0..w.rows.len() {
            w.lower_bounds(r);
        }
        w
    }

    pub fn is_empty(&self) -> bool {
        self.live_cols == 0
    }

    /// Rows with an entry in column `c`.
    pub fn col_support(&mut self, c: usize) -> Vec<usize> {
        self.compact(c);
        self.col_rows[c].clone()
    }

    fn compact(&mut self, c: usize) {
        if !self.stale[c] {
            return;
        }
        let (rows, seen) = (&self.rows, &mut self.seen);
        let list = &mut self.col_rows[c];
        list.retain(|&r| {
            let keep = !seen[r] && rows[r].binary_search_by_key(&c, |e| e.0).is_ok();
            seen[r] |= keep;
            keep
        });
        for &r in list.iter() {
            seen[r] = false;
        }
        self.stale[c] = false;
        debug_assert_eq!(list.len(), self.col_count[c]);
    }

    pub fn entry(&self, r: usize, c: usize) -> Option<&Int> {
        let row = &self.rows[r];
        row.binary_search_by_key(&c, |e| e.0).ok().map(|k| &row[k].1)
    }

    fn enqueue(&mut self, c: usize) {
        let k = self.col_count[c] + self.best_len[c];
        self.buckets[k].push(c);
        self.lowest = self.lowest.min(k);
    }

    /// Row `r` may have shrunk or gained units: lower the bounds it beats.
    fn lower_bounds(&mut self, r: usize) {
        let len = self.rows[r].len();
        for k in 0..len {
            let (c, ref v) = self.rows[r][k];
            if v.is_unit() && len < self.best_len[c] {
                self.best_len[c] = len;
                self.enqueue(c);
            }
        }
    }

    /// Shortest row holding a unit in column `c`, lowest index first.
    fn cheapest_unit(&mut self, c: usize) -> Option<(usize, usize)> {
        self.compact(c);
        let mut best: Option<(usize, usize)> = None;
        for &r in &self.col_rows[c] {
            let len = self.rows[r].len();
            if best.is_none_or(|b| len < b.1) && self.entry(r, c).is_some_and(Int::is_unit) {
                best = Some((r, len));
            }
        }
        best
    }

    fn touch_col(&mut self, c: usize, r: usize, present: bool) {
        // callers report only genuine insertions and removals
        if present {
            self.col_rows[c].push(r);
            self.col_count[c] += 1;
            if self.col_count[c] == 1 {
                self.live_cols += 1;
            }
        } else {
            self.col_count[c] -= 1;
            if self.col_count[c] == 0 {
                self.live_cols -= 1;
                self.col_rows[c].clear();
                self.stale[c] = false;
            } else {
                self.stale[c] = true;
            }
            self.dirty_cols.push(c);
        }
    }

    /// Replaces row `r` wholesale, keeping the column supports in step.
    pub fn replace_row(&mut self, r: usize, new: Vec<(usize, Int)>) {
        let old = std::mem::take(&mut self.rows[r]);
        let (mut a, mut b) = (0, 0);
        while a < old.len() || b < new.len() {
            let ca = old.get(a).map_or(usize::MAX, |e| e.0);
            let cb = new.get(b).map_or(usize::MAX, |e| e.0);
            if ca < cb {
                self.touch_col(ca, r, false);
                a += 1;
            } else if cb < ca {
                self.touch_col(cb, r, true);
                b += 1;
            } else {
                a += 1;
                b += 1;
            }
        }
        self.rows[r] = new;
        self.dirty_rows.push(r);
    }

    /// Drops row `r` and column `c` from further consideration.
    pub fn retire(&mut self, r: usize, c: usize) {
        self.replace_row(r, Vec::new());
        for r2 in self.col_support(c) {
            let mut row = std::mem::take(&mut self.rows[r2]);
            row.retain(|e| e.0 != c);
            self.replace_row(r2, row);
        }
    }

    /// Sets entry `(r, c)`, removing it when zero.
    pub fn set(&mut self, r: usize, c: usize, v: Int) {
        let row = &mut self.rows[r];
        match row.binary_search_by_key(&c, |e| e.0) {
            Ok(k) if v.is_zero() => {
                row.remove(k);
                self.touch_col(c, r, false);
            }
            Ok(k) => row[k].1 = v,
            Err(_) if v.is_zero() => {}
            Err(k) => {
                row.insert(k, (c, v));
                self.touch_col(c, r, true);
            }
        }
        self.dirty_rows.push(r);
    }

    fn refresh(&mut self) {
        let mut cols = std::mem::take(&mut self.dirty_cols);
        cols.sort_unstable();
        cols.dedup();
        for c in cols {
            if self.col_rows[c].len() > 2 * self.col_count[c] + 8 {
                self.compact(c);
            }
            if self.best_len[c] != usize::MAX {
                self.enqueue(c);
            }
        }
        let mut rows = std::mem::take(&mut self.dirty_rows);
        rows.sort_unstable();
        rows.dedup();
        for r in rows {
            self.lower_bounds(r);
        }
    }

    /// Minimal absolute value first, then fewest nonzeros in the pivot's row
    /// and column. Unit ties go to the most recently queued column and then
    /// the lowest row; the non-unit scan breaks ties by the sparser column.
    pub fn pick_pivot(&mut self) -> Option<Pivot> {
        self.refresh();
        while self.lowest < self.buckets.len() {
            let k = self.lowest;
            let Some(col) = self.buckets[k].pop() else {
                self.lowest += 1;
                continue;
            };
            let Some((row, len)) = self.cheapest_unit(col) else {
                self.best_len[col] = usize::MAX;
                continue;
            };
            self.best_len[col] = len;
            if self.col_count[col] + len == k {
                let value = self.entry(row, col).unwrap().clone();
                return Some(Pivot { row, col, value });
            }
            self.enqueue(col);
        }
        self.lowest = usize::MAX;
        let mut pick: Option<(Int, usize, usize, usize, usize)> = None;
        for (r, row) in self.rows.iter().enumerate() {
            for (c, v) in row {
                let a = v.abs();
                let count = self.col_count[*c];
                let cost = count + row.len();
                let better = match &pick {
                    None => true,
                    Some((b, bc, bn, _, _)) => {
                        a < *b || (a == *b && (cost, count) < (*bc, *bn))
                    }
                };
                if better {
                    pick = Some((a, cost, count, r, *c));
                }
            }
        }
        pick.map(|(_, _, _, row, col)| Pivot {
            row,
            col,
            value: self.entry(row, col).unwrap().clone(),
        })
    }
}

/// `a*x + b*y` over two sorted sparse rows, dropping zeros.
pub(crate) fn combine(
    a: &Int,
    x: &[(usize, Int)],
    b: &Int,
    y: &[(usize, Int)],
) -> Vec<(usize, Int)> {
    let mut out = Vec::with_capacity(x.len() + y.len());
    let (mut i, mut k) = (0, 0);
    let scale = |s: &Int, v: &Int| if s.is_one() { v.clone() } else { s * v };
    while i < x.len() || k < y.len() {
        let cx = x.get(i).map_or(usize::MAX, |e| e.0);
        let cy = y.get(k).map_or(usize::MAX, |e| e.0);
        let (c, v) = if cx < cy {
            i += 1;
            (cx, scale(a, &x[i - 1].1))
        } else if cy < cx {
            k += 1;
            (cy, scale(b, &y[k - 1].1))
        } else {
            i += 1;
            k += 1;
            (cx, scale(a, &x[i - 1].1) + scale(b, &y[k - 1].1))
        };
        if !v.is_zero() {
            out.push((c, v));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn triplets_sum_and_drop_zeros() {
        let m = SparseIntMatrix::from_triplets(2, 2, [(0, 0, 1), (0, 0, -1), (1, 1, 3)]).unwrap();
        assert_eq!(m.nnz(), 1);
        assert_eq!(m.get(1, 1), BigInt::from(3));
        assert!(SparseIntMatrix::from_triplets(1, 1, [(1, 0, 1)]).is_err());
    }

    #[test]
    fn text_round_trip() {
        let m = SparseIntMatrix::from_dense(&[vec![1, 0, -2], vec![0, 5, 0]]).unwrap();
        let t = m.to_triplet_text();
        assert_eq!(t, "2 3 3\n0 0 1\n0 2 -2\n1 1 5\n");
        assert_eq!(SparseIntMatrix::from_triplet_text(&t).unwrap(), m);
        assert!(SparseIntMatrix::from_triplet_text("1 1 2\n0 0 1\n").is_err());
    }

    #[test]
    fn products() {
        let a = SparseIntMatrix::from_dense(&[vec![1, 1], vec![0, 1]]).unwrap();
        let b = SparseIntMatrix::from_dense(&[vec![1, -1], vec![0, 1]]).unwrap();
        let p = a.mul(&b).unwrap();
        assert_eq!(p, SparseIntMatrix::from_dense(&[vec![1, 0], vec![0, 1]]).unwrap());
        assert!(a.mul(&SparseIntMatrix::new(3, 1)).is_err());
        assert_eq!(a.transpose().get(1, 0), BigInt::from(1));
        // entries beyond i64 take the arbitrary-precision path
        let big: BigInt = BigInt::from(1) << 70u32;
        let x = SparseIntMatrix::from_triplets(1, 2, [(0, 0, big.clone()), (0, 1, BigInt::from(1))]).unwrap();
        let y = SparseIntMatrix::from_triplets(2, 1, [(0, 0, big.clone()), (1, 0, -(&big * &big))]).unwrap();
        assert!(x.mul(&y).unwrap().is_zero());
        let y = SparseIntMatrix::from_triplets(2, 1, [(0, 0, BigInt::from(3)), (1, 0, BigInt::from(-2))]).unwrap();
        assert_eq!(x.mul(&y).unwrap().get(0, 0), &big * 3 - 2);
    }

    #[test]
    fn pivot_prefers_units_in_sparse_lines() {
        let m = SparseIntMatrix::from_dense(&[vec![2, 0, 1], vec![1, 0, 0], vec![3, 3, 0]]).unwrap();
        let p = Work::new(&m).pick_pivot().unwrap();
        // (0,2) costs 3, (1,0) costs 4
        assert_eq!((p.row, p.col), (0, 2));
        let m = SparseIntMatrix::from_dense(&[vec![2, 6], vec![4, 0]]).unwrap();
        let p = Work::new(&m).pick_pivot().unwrap();
        // no unit: smallest magnitude wins even in a denser line
        assert_eq!((p.row, p.col, p.value), (0, 0, Int::from(2)));
    }
}
