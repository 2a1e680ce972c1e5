use super::snf::{smith_normal_form, IntegerMatrix};
use num_bigint::BigInt;
use num_traits::One;

/// Column-sparse integer matrix.
#[derive(Clone, Debug, Default)]
pub struct SparseMatrix {
    pub rows: usize,
    /// Each column is sorted by row.
    pub cols: Vec<Vec<(u32, i64)>>,
}

impl SparseMatrix {
    pub fn new(rows: usize) -> Self {
        SparseMatrix { rows, cols: Vec::new() }
    }

    pub fn push_col(&mut self, mut col: Vec<(u32, i64)>) {
        col.sort_by_key(|e| e.0);
        let mut merged: Vec<(u32, i64)> = Vec::with_capacity(col.len());
        for (r, v) in col {
            match merged.last_mut() {
                Some(last) if last.0 == r => last.1 += v,
                _ => merged.push((r, v)),
            }
        }
        merged.retain(|e| e.1 != 0);
        self.cols.push(merged);
    }

    pub fn to_dense(&self) -> IntegerMatrix {
        let mut m = IntegerMatrix::zeros(self.rows, self.cols.len());
        for (j, col) in self.cols.iter().enumerate() {
            for &(i, v) in col {
                m.set(i as usize, j, BigInt::from(v));
            }
        }
        m
    }

    /// `self · other` where `other` has `self.cols.len()` rows.
    pub fn mul(&self, other: &SparseMatrix) -> SparseMatrix {
        let mut out = SparseMatrix::new(self.rows);
        for col in &other.cols {
            let mut acc: Vec<(u32, i64)> = Vec::new();
            for &(k, v) in col {
                for &(i, w) in &self.cols[k as usize] {
                    acc.push((i, v * w));
                }
            }
            out.push_col(acc);
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.cols.iter().all(|c| c.is_empty())
    }
}

/// `a - q·b` on sorted sparse vectors; `None` on overflow.
fn axpy(a: &[(u32, i64)], q: i64, b: &[(u32, i64)]) -> Option<Vec<(u32, i64)>> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let take_a = j == b.len() || (i < a.len() && a[i].0 < b[j].0);
        let take_b = i == a.len() || (j < b.len() && b[j].0 < a[i].0);
        if take_a {
            out.push(a[i]);
            i += 1;
        } else if take_b {
            out.push((b[j].0, q.checked_mul(b[j].1)?.checked_neg()?));
            j += 1;
        } else {
            let v = a[i].1.checked_sub(q.checked_mul(b[j].1)?)?;
            if v != 0 {
                out.push((a[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    Some(out)
}

/// Rank and invariant factors of a sparse matrix. Unit pivots are eliminated
/// sparsely; the rest is handed to the dense Smith normal form.
pub fn invariant_factors(m: &SparseMatrix) -> (usize, Vec<BigInt>) {
    match unit_eliminate(m) {
        Some((units, rest)) => {
            let snf = smith_normal_form(&rest);
            let mut f: Vec<BigInt> = vec![BigInt::one(); units];
            f.extend(snf.invariant_factors);
            (f.len(), f)
        }
        None => {
            let snf = smith_normal_form(&m.to_dense());
            (snf.rank, snf.invariant_factors)
        }
    }
}

fn unit_eliminate(m: &SparseMatrix) -> Option<(usize, IntegerMatrix)> {
    let mut cols = m.cols.clone();
    let mut alive = vec![true; cols.len()];
    let mut row_dead = vec![false; m.rows];
    let mut row_cols: Vec<Vec<u32>> = vec![Vec::new(); m.rows];
    for (j, c) in cols.iter().enumerate() {
        for &(i, _) in c {
            row_cols[i as usize].push(j as u32);
        }
    }
    let mut units = 0;
    let mut progress = true;
    while progress {
        progress = false;
        let mut order: Vec<usize> = (0..cols.len()).filter(|&j| alive[j] && !cols[j].is_empty()).collect();
        order.sort_by_key(|&j| cols[j].len());
        for j in order {
            if !alive[j] || cols[j].is_empty() {
                continue;
            }
            let pivot = cols[j]
                .iter()
                .filter(|e| e.1.abs() == 1)
                .min_by_key(|e| row_cols[e.0 as usize].len())
                .copied();
            let Some((r, v)) = pivot else { continue };
            let pc = std::mem::take(&mut cols[j]);
            alive[j] = false;
            let others = std::mem::take(&mut row_cols[r as usize]);
            for &k in &others {
                let k = k as usize;
                if !alive[k] {
                    continue;
                }
                let Ok(pos) = cols[k].binary_search_by_key(&r, |e| e.0) else { continue };
                let q = cols[k][pos].1.checked_mul(v)?;
                let before: Vec<u32> = cols[k].iter().map(|e| e.0).collect();
                cols[k] = axpy(&cols[k], q, &pc)?;
                for &(i, _) in &cols[k] {
                    if before.binary_search(&i).is_err() {
                        row_cols[i as usize].push(k as u32);
                    }
                }
            }
            row_dead[r as usize] = true;
            units += 1;
            progress = true;
        }
    }
    let live_rows: Vec<usize> = (0..m.rows).filter(|&i| !row_dead[i]).collect();
    let mut row_pos = vec![usize::MAX; m.rows];
    for (p, &i) in live_rows.iter().enumerate() {
        row_pos[i] = p;
    }
    let live_cols: Vec<usize> = (0..cols.len()).filter(|&j| alive[j] && !cols[j].is_empty()).collect();
    let mut rest = IntegerMatrix::zeros(live_rows.len(), live_cols.len());
    for (b, &j) in live_cols.iter().enumerate() {
        for &(i, v) in &cols[j] {
            debug_assert!(!row_dead[i as usize]);
            rest.set(row_pos[i as usize], b, BigInt::from(v));
        }
    }
    Some((units, rest))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sparse_matches_dense() {
        let rows = vec![vec![2i64, 4, 0, 1], vec![1, 3, 2, 0], vec![0, 6, 4, 2]];
        let mut s = SparseMatrix::new(3);
        for j in 0..4 {
            s.push_col((0..3).map(|i| (i as u32, rows[i][j])).collect());
        }
        let dense = smith_normal_form(&IntegerMatrix::from_rows(&rows));
        let (rank, f) = invariant_factors(&s);
        assert_eq!(rank, dense.rank);
        assert_eq!(f, dense.invariant_factors);
    }
}
