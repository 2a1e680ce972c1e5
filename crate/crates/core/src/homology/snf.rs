use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntegerMatrix {
    pub rows: usize,
    pub cols: usize,
    /// Row-major entries.
    pub entries: Vec<BigInt>,
}

impl IntegerMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntegerMatrix {
            rows,
            cols,
            entries: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged matrix");
        IntegerMatrix {
            rows: r,
            cols: c,
            entries: rows.iter().flatten().map(|&v| BigInt::from(v)).collect(),
        }
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.entries[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        self.entries[i * self.cols + j] = v;
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.entries.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a != b {
            for i in 0..self.rows {
                self.entries.swap(i * self.cols + a, i * self.cols + b);
            }
        }
    }

    /// row_a -= q · row_b
    fn row_sub(&mut self, a: usize, b: usize, q: &BigInt, from: usize) {
        for j in from..self.cols {
            let t = self.get(b, j) * q;
            if !t.is_zero() {
                let v = self.get(a, j) - t;
                self.set(a, j, v);
            }
        }
    }

    /// col_a -= q · col_b
    fn col_sub(&mut self, a: usize, b: usize, q: &BigInt, from: usize) {
        for i in from..self.rows {
            let t = self.get(i, b) * q;
            if !t.is_zero() {
                let v = self.get(i, a) - t;
                self.set(i, a, v);
            }
        }
    }

    pub fn is_diagonal(&self) -> bool {
        (0..self.rows).all(|i| (0..self.cols).all(|j| i == j || self.get(i, j).is_zero()))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Snf {
    pub diagonal: IntegerMatrix,
    pub rank: usize,
    /// The nonzero diagonal entries `d₁ | d₂ | …`, all positive.
    pub invariant_factors: Vec<BigInt>,
}

/// Smith normal form by elimination with a pivot of least absolute value.
pub fn smith_normal_form(m: &IntegerMatrix) -> Snf {
    let mut a = m.clone();
    let (r, c) = (a.rows, a.cols);
    let mut t = 0;
    while t < r.min(c) {
        // least nonzero entry of the trailing block
        let mut best: Option<(usize, usize)> = None;
        for i in t..r {
            for j in t..c {
                let v = a.get(i, j);
                if !v.is_zero() && best.map_or(true, |(bi, bj)| v.abs() < a.get(bi, bj).abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((bi, bj)) = best else { break };
        a.swap_rows(t, bi);
        a.swap_cols(t, bj);
        loop {
            let mut dirty = false;
            for i in t + 1..r {
                if !a.get(i, t).is_zero() {
                    let q = a.get(i, t).div_floor(a.get(t, t));
                    a.row_sub(i, t, &q, t);
                    dirty |= !a.get(i, t).is_zero();
                }
            }
            for j in t + 1..c {
                if !a.get(t, j).is_zero() {
                    let q = a.get(t, j).div_floor(a.get(t, t));
                    a.col_sub(j, t, &q, t);
                    dirty |= !a.get(t, j).is_zero();
                }
            }
            if dirty {
                // a smaller remainder appeared in row or column t
                let mut best = (t, t);
                for i in t..r {
                    let v = a.get(i, t);
                    if !v.is_zero() && v.abs() < a.get(best.0, best.1).abs() {
                        best = (i, t);
                    }
                }
                for j in t..c {
                    let v = a.get(t, j);
                    if !v.is_zero() && v.abs() < a.get(best.0, best.1).abs() {
                        best = (t, j);
                    }
                }
                a.swap_rows(t, best.0);
                a.swap_cols(t, best.1);
                continue;
            }
            let p = a.get(t, t).clone();
            let mut bad = None;
            'scan: for i in t + 1..r {
                for j in t + 1..c {
                    if !a.get(i, j).is_multiple_of(&p) {
                        bad = Some(i);
                        break 'scan;
                    }
                }
            }
            match bad {
                Some(i) => {
                    // row_t += row_i and reduce again
                    a.row_sub(t, i, &-BigInt::one(), t);
                }
                None => break,
            }
        }
        if a.get(t, t).is_negative() {
            let v = -a.get(t, t).clone();
            a.set(t, t, v);
        }
        t += 1;
    }
    let invariant_factors: Vec<BigInt> = (0..t).map(|i| a.get(i, i).clone()).collect();
    Snf {
        rank: invariant_factors.len(),
        diagonal: a,
        invariant_factors,
    }
}

/// Determinant by fraction-free elimination.
pub fn determinant(m: &IntegerMatrix) -> BigInt {
    assert_eq!(m.rows, m.cols);
    let n = m.rows;
    if n == 0 {
        return BigInt::one();
    }
    let mut a = m.clone();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a.get(k, k).is_zero() {
            match (k + 1..n).find(|&i| !a.get(i, k).is_zero()) {
                Some(i) => {
                    a.swap_rows(k, i);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (a.get(i, j) * a.get(k, k) - a.get(i, k) * a.get(k, j)) / &prev;
                a.set(i, j, v);
            }
        }
        prev = a.get(k, k).clone();
    }
    sign * a.get(n - 1, n - 1)
}

/// gcd of all `k × k` minors.
pub fn minor_gcd(m: &IntegerMatrix, k: usize) -> BigInt {
    fn combos(n: usize, k: usize) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        let mut cur = Vec::new();
        fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
            if cur.len() == k {
                out.push(cur.clone());
                return;
            }
            for i in start..n {
                cur.push(i);
                go(i + 1, n, k, cur, out);
                cur.pop();
            }
        }
        go(0, n, k, &mut cur, &mut out);
        out
    }
    let mut g = BigInt::zero();
    for rs in combos(m.rows, k) {
        for cs in combos(m.cols, k) {
            let mut sub = IntegerMatrix::zeros(k, k);
            for (a, &i) in rs.iter().enumerate() {
                for (b, &j) in cs.iter().enumerate() {
                    sub.set(a, b, m.get(i, j).clone());
                }
            }
            g = g.gcd(&determinant(&sub));
        }
    }
    g
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_entry() {
        let s = smith_normal_form(&IntegerMatrix::from_rows(&[vec![2]]));
        assert_eq!(s.invariant_factors, vec![BigInt::from(2)]);
    }

    #[test]
    fn coprime_diagonal_merges() {
        let s = smith_normal_form(&IntegerMatrix::from_rows(&[vec![2, 0], vec![0, 3]]));
        assert_eq!(s.invariant_factors, vec![BigInt::from(1), BigInt::from(6)]);
    }

    #[test]
    fn zero_matrix() {
        let s = smith_normal_form(&IntegerMatrix::zeros(3, 2));
        assert_eq!(s.rank, 0);
        assert!(s.diagonal.is_diagonal());
    }

    #[test]
    fn determinant_small() {
        let m = IntegerMatrix::from_rows(&[vec![2, 1, 0], vec![1, 3, 1], vec![0, 1, 4]]);
        assert_eq!(determinant(&m), BigInt::from(18));
    }
}
