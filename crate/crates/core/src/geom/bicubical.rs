use crate::cset::{CubeModel, CubicalSet, UnionFind};
use crate::cube::{self, Generator};
use crate::error::{domain, Result};
use crate::exec::Config;
use std::hash::Hash;

/// A bicubical set given cell by cell. The horizontal index is `m`, the
/// vertical index `n`; horizontal operators change `m`, vertical ones `n`.
pub trait BicubicalModel: Sync {
    type Cell: Clone + Eq + Hash + Send + Sync;

    fn cells(&self, m: usize, n: usize) -> Result<Vec<Self::Cell>>;
    fn h_act(&self, m: usize, n: usize, c: &Self::Cell, g: Generator) -> Self::Cell;
    fn v_act(&self, m: usize, n: usize, c: &Self::Cell, g: Generator) -> Self::Cell;

    fn name(&self, _m: usize, _n: usize, _c: &Self::Cell) -> Option<String> {
        None
    }
}

struct DiagModel<'a, B: BicubicalModel>(&'a B);

impl<B: BicubicalModel> CubeModel for DiagModel<'_, B> {
    type Cube = B::Cell;

    fn cubes(&self, n: usize) -> Result<Vec<B::Cell>> {
        self.0.cells(n, n)
    }

    fn face(&self, n: usize, c: &B::Cell, i: usize, eps: u8) -> B::Cell {
        let g = cube::face(i, eps);
        let h = self.0.h_act(n, n, c, g);
        self.0.v_act(n - 1, n, &h, g)
    }

    fn degen(&self, n: usize, c: &B::Cell, i: usize) -> B::Cell {
        let g = cube::degen(i);
        let h = self.0.h_act(n, n, c, g);
        self.0.v_act(n + 1, n, &h, g)
    }

    fn conn(&self, n: usize, c: &B::Cell, i: usize, eps: u8) -> B::Cell {
        let g = cube::conn(i, eps);
        let h = self.0.h_act(n, n, c, g);
        self.0.v_act(n + 1, n, &h, g)
    }

    fn name(&self, n: usize, c: &B::Cell) -> Option<String> {
        self.0.name(n, n, c)
    }
}

/// The diagonal `n ↦ B_{n,n}` of a bicubical model, truncated at `d`.
pub fn diagonal_of<B: BicubicalModel>(b: &B, d: usize, cfg: &Config) -> Result<(CubicalSet, Vec<Vec<B::Cell>>)> {
    CubicalSet::build(&DiagModel(b), d, cfg)
}

struct RowModel<'a, B: BicubicalModel> {
    b: &'a B,
    m: usize,
}

impl<B: BicubicalModel> CubeModel for RowModel<'_, B> {
    type Cube = B::Cell;

    fn cubes(&self, n: usize) -> Result<Vec<B::Cell>> {
        self.b.cells(self.m, n)
    }

    fn face(&self, n: usize, c: &B::Cell, i: usize, eps: u8) -> B::Cell {
        self.b.v_act(self.m, n, c, cube::face(i, eps))
    }

    fn degen(&self, n: usize, c: &B::Cell, i: usize) -> B::Cell {
        self.b.v_act(self.m, n, c, cube::degen(i))
    }

    fn conn(&self, n: usize, c: &B::Cell, i: usize, eps: u8) -> B::Cell {
        self.b.v_act(self.m, n, c, cube::conn(i, eps))
    }

    fn name(&self, n: usize, c: &B::Cell) -> Option<String> {
        self.b.name(self.m, n, c)
    }
}

struct ColModel<'a, B: BicubicalModel> {
    b: &'a B,
    n: usize,
}

impl<B: BicubicalModel> CubeModel for ColModel<'_, B> {
    type Cube = B::Cell;

    fn cubes(&self, m: usize) -> Result<Vec<B::Cell>> {
        self.b.cells(m, self.n)
    }

    fn face(&self, m: usize, c: &B::Cell, i: usize, eps: u8) -> B::Cell {
        self.b.h_act(m, self.n, c, cube::face(i, eps))
    }

    fn degen(&self, m: usize, c: &B::Cell, i: usize) -> B::Cell {
        self.b.h_act(m, self.n, c, cube::degen(i))
    }

    fn conn(&self, m: usize, c: &B::Cell, i: usize, eps: u8) -> B::Cell {
        self.b.h_act(m, self.n, c, cube::conn(i, eps))
    }
}

/// A tabulated bicubical set: each row `B_{m,•}` and each column `B_{•,n}`
/// is a cubical set on the same cell indices.
pub struct BicubicalSet {
    pub rows: Vec<CubicalSet>,
    pub cols: Vec<CubicalSet>,
}

fn generators(dim: usize, top: usize) -> Vec<Generator> {
    let mut g = Vec::new();
    for i in 1..=dim {
        g.push(cube::face(i, 0));
        g.push(cube::face(i, 1));
    }
    if dim < top {
        g.extend((1..=dim + 1).map(cube::degen));
        for i in 1..=dim {
            g.push(cube::conn(i, 0));
            g.push(cube::conn(i, 1));
        }
    }
    g
}

impl BicubicalSet {
    /// Tabulate a model with horizontal truncation `max_h` and vertical
    /// truncation `max_v`, checking that the two structures commute.
    pub fn from_model<B: BicubicalModel>(b: &B, max_h: usize, max_v: usize, cfg: &Config) -> Result<Self> {
        let rows = (0..=max_h)
            .map(|m| CubicalSet::build(&RowModel { b, m }, max_v, cfg).map(|r| r.0))
            .collect::<Result<Vec<_>>>()?;
        let cols = (0..=max_v)
            .map(|n| CubicalSet::build(&ColModel { b, n }, max_h, cfg).map(|r| r.0))
            .collect::<Result<Vec<_>>>()?;
        let s = BicubicalSet { rows, cols };
        if cfg.validate {
            s.check_commute()?;
        }
        Ok(s)
    }

    pub fn max_h(&self) -> usize {
        self.rows.len() - 1
    }

    pub fn max_v(&self) -> usize {
        self.cols.len() - 1
    }

    fn check_commute(&self) -> Result<()> {
        for m in 0..=self.max_h() {
            for n in 0..=self.max_v() {
                for c in 0..self.rows[m].count(n) as u32 {
                    for gh in generators(m, self.max_h()) {
                        for gv in generators(n, self.max_v()) {
                            let (m2, a) = self.cols[n].act(m, c, gh).unwrap();
                            let (n2, a) = self.rows[m2].act(n, a, gv).unwrap();
                            let (_, b) = self.rows[m].act(n, c, gv).unwrap();
                            let (_, b) = self.cols[n2].act(m, b, gh).unwrap();
                            if a != b {
                                return domain(format!(
                                    "horizontal {gh} and vertical {gv} do not commute on cell ({m},{n}) #{c}"
                                ));
                            }
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// Components computed from row 0 glued along horizontal edges.
    pub fn pi0_by_rows(&self) -> Vec<usize> {
        let v = self.rows[0].count(0);
        let mut uf = UnionFind::new(v);
        if self.max_v() >= 1 {
            for e in 0..self.rows[0].count(1) as u32 {
                uf.union(self.rows[0].face(1, e, 1, 0) as usize, self.rows[0].face(1, e, 1, 1) as usize);
            }
        }
        if self.max_h() >= 1 {
            for e in 0..self.cols[0].count(1) as u32 {
                uf.union(self.cols[0].face(1, e, 1, 0) as usize, self.cols[0].face(1, e, 1, 1) as usize);
            }
        }
        uf.labels()
    }
}

impl BicubicalModel for BicubicalSet {
    type Cell = u32;

    fn cells(&self, m: usize, n: usize) -> Result<Vec<u32>> {
        Ok((0..self.rows[m].count(n) as u32).collect())
    }

    fn h_act(&self, m: usize, n: usize, c: &u32, g: Generator) -> u32 {
        self.cols[n].act(m, *c, g).unwrap().1
    }

    fn v_act(&self, m: usize, n: usize, c: &u32, g: Generator) -> u32 {
        self.rows[m].act(n, *c, g).unwrap().1
    }

    fn name(&self, m: usize, n: usize, c: &u32) -> Option<String> {
        Some(self.rows[m].name(n, *c))
    }
}

pub fn diagonal(b: &BicubicalSet, cfg: &Config) -> Result<CubicalSet> {
    Ok(diagonal_of(b, b.max_h().min(b.max_v()), cfg)?.0)
}

/// `B_{m,n} = X_m`, with trivial vertical structure.
pub struct DiscreteRows<'a>(pub &'a CubicalSet);

impl BicubicalModel for DiscreteRows<'_> {
    type Cell = u32;

    fn cells(&self, m: usize, _n: usize) -> Result<Vec<u32>> {
        Ok((0..self.0.count(m) as u32).collect())
    }

    fn h_act(&self, m: usize, _n: usize, c: &u32, g: Generator) -> u32 {
        self.0.act(m, *c, g).unwrap().1
    }

    fn v_act(&self, _m: usize, _n: usize, c: &u32, _g: Generator) -> u32 {
        *c
    }

    fn name(&self, m: usize, _n: usize, c: &u32) -> Option<String> {
        Some(self.0.name(m, *c))
    }
}

/// `B_{m,n} = Y_n`, with trivial horizontal structure.
pub struct Constant<'a>(pub &'a CubicalSet);

impl BicubicalModel for Constant<'_> {
    type Cell = u32;

    fn cells(&self, _m: usize, n: usize) -> Result<Vec<u32>> {
        Ok((0..self.0.count(n) as u32).collect())
    }

    fn h_act(&self, _m: usize, _n: usize, c: &u32, _g: Generator) -> u32 {
        *c
    }

    fn v_act(&self, _m: usize, n: usize, c: &u32, g: Generator) -> u32 {
        self.0.act(n, *c, g).unwrap().1
    }

    fn name(&self, _m: usize, n: usize, c: &u32) -> Option<String> {
        Some(self.0.name(n, *c))
    }
}

/// `B_{m,n} = A_m × B_n`.
pub struct ExternalProduct<'a>(pub &'a CubicalSet, pub &'a CubicalSet);

impl BicubicalModel for ExternalProduct<'_> {
    type Cell = (u32, u32);

    fn cells(&self, m: usize, n: usize) -> Result<Vec<(u32, u32)>> {
        let mut v = Vec::new();
        for a in 0..self.0.count(m) as u32 {
            for b in 0..self.1.count(n) as u32 {
                v.push((a, b));
            }
        }
        Ok(v)
    }

    fn h_act(&self, m: usize, _n: usize, c: &(u32, u32), g: Generator) -> (u32, u32) {
        (self.0.act(m, c.0, g).unwrap().1, c.1)
    }

    fn v_act(&self, _m: usize, n: usize, c: &(u32, u32), g: Generator) -> (u32, u32) {
        (c.0, self.1.act(n, c.1, g).unwrap().1)
    }

    fn name(&self, m: usize, n: usize, c: &(u32, u32)) -> Option<String> {
        Some(format!("({},{})", self.0.name(m, c.0), self.1.name(n, c.1)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cset::{representable, standard_cell, CellKind};

    #[test]
    fn diagonal_of_discrete_rows_is_original() {
        let cfg = Config::default();
        let x = standard_cell(CellKind::Boundary, 2, 2, &cfg).unwrap().set;
        let b = BicubicalSet::from_model(&DiscreteRows(&x), 2, 2, &cfg).unwrap();
        let d = diagonal(&b, &cfg).unwrap();
        assert_eq!(d.counts(), x.counts());
    }

    #[test]
    fn two_ways_to_pi0_agree() {
        let cfg = Config::default();
        let a = standard_cell(CellKind::Boundary, 1, 1, &cfg).unwrap().set;
        let y = representable(1, 1, &cfg).unwrap();
        let b = BicubicalSet::from_model(&ExternalProduct(&a, &y), 1, 1, &cfg).unwrap();
        let d = diagonal(&b, &cfg).unwrap();
        let p = b.pi0_by_rows();
        let q = d.pi0();
        assert_eq!(p, q);
        assert_eq!(d.pi0_count(), 2);
    }
}
