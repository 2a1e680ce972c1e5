use crate::cset::{CubeModel, CubicalSet};
use crate::error::Result;
use crate::exec::Config;
use std::collections::HashMap;

/// A cube `(x, y)` of `X ⊗ Y` with `x ∈ X_m`. Stored in canonical form: `x`
/// is never of the form `w·σ_m`; such degeneracies are moved to `y`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TensorCube {
    pub m: u8,
    pub x: u32,
    pub y: u32,
}

pub(crate) struct TensorModel<'a> {
    pub x: &'a CubicalSet,
    pub y: &'a CubicalSet,
}

impl TensorModel<'_> {
    fn last_degenerate(&self, m: usize, x: u32) -> bool {
        m >= 1 && self.x.degen(m - 1, self.x.face(m, x, m, 0), m) == x
    }

    pub fn canonical(&self, mut m: usize, mut x: u32, mut n: usize, mut y: u32) -> TensorCube {
        while self.last_degenerate(m, x) {
            x = self.x.face(m, x, m, 0);
            y = self.y.degen(n, y, 1);
            m -= 1;
            n += 1;
        }
        TensorCube { m: m as u8, x, y }
    }
}

impl CubeModel for TensorModel<'_> {
    type Cube = TensorCube;

    fn cubes(&self, k: usize) -> Result<Vec<TensorCube>> {
        let mut out = Vec::new();
        for m in 0..=k.min(self.x.max_dim()) {
            let n = k - m;
            if n > self.y.max_dim() {
                continue;
            }
            for x in 0..self.x.count(m) as u32 {
                if self.last_degenerate(m, x) {
                    continue;
                }
                for y in 0..self.y.count(n) as u32 {
                    out.push(TensorCube { m: m as u8, x, y });
                }
            }
        }
        Ok(out)
    }

    fn face(&self, k: usize, c: &TensorCube, i: usize, eps: u8) -> TensorCube {
        let (m, n) = (c.m as usize, k - c.m as usize);
        if i <= m {
            self.canonical(m - 1, self.x.face(m, c.x, i, eps), n, c.y)
        } else {
            self.canonical(m, c.x, n - 1, self.y.face(n, c.y, i - m, eps))
        }
    }

    fn degen(&self, k: usize, c: &TensorCube, i: usize) -> TensorCube {
        let (m, n) = (c.m as usize, k - c.m as usize);
        if i <= m {
            self.canonical(m + 1, self.x.degen(m, c.x, i), n, c.y)
        } else {
            self.canonical(m, c.x, n + 1, self.y.degen(n, c.y, i - m))
        }
    }

    fn conn(&self, k: usize, c: &TensorCube, i: usize, eps: u8) -> TensorCube {
        let (m, n) = (c.m as usize, k - c.m as usize);
        if i <= m {
            self.canonical(m + 1, self.x.conn(m, c.x, i, eps), n, c.y)
        } else {
            self.canonical(m, c.x, n + 1, self.y.conn(n, c.y, i - m, eps))
        }
    }

    fn name(&self, k: usize, c: &TensorCube) -> Option<String> {
        let m = c.m as usize;
        Some(format!("({}⊗{})", self.x.name(m, c.x), self.y.name(k - m, c.y)))
    }
}

/// `X ⊗ Y` truncated at the smaller truncation of the factors.
pub struct TensorProduct {
    pub set: CubicalSet,
    pub cubes: Vec<Vec<TensorCube>>,
    index: Vec<HashMap<TensorCube, u32>>,
}

impl TensorProduct {
    pub(crate) fn from_parts(x: &CubicalSet, y: &CubicalSet, cfg: &Config) -> Result<Self> {
        let d = x.max_dim().min(y.max_dim());
        let (set, cubes) = CubicalSet::build(&TensorModel { x, y }, d, cfg)?;
        let index = cubes
            .iter()
            .map(|cs| cs.iter().enumerate().map(|(i, c)| (*c, i as u32)).collect())
            .collect();
        Ok(TensorProduct { set, cubes, index })
    }

    /// Index of the cube represented by `(x, y)` with `x ∈ X_m`, `y ∈ Y_n`.
    pub fn lookup(&self, x_set: &CubicalSet, y_set: &CubicalSet, m: usize, x: u32, n: usize, y: u32) -> Option<u32> {
        if m + n > self.set.max_dim() {
            return None;
        }
        let c = TensorModel { x: x_set, y: y_set }.canonical(m, x, n, y);
        self.index[m + n].get(&c).copied()
    }

    pub fn cube(&self, dim: usize, idx: u32) -> TensorCube {
        self.cubes[dim][idx as usize]
    }
}

pub fn tensor(x: &CubicalSet, y: &CubicalSet, cfg: &Config) -> Result<TensorProduct> {
    TensorProduct::from_parts(x, y, cfg)
}
