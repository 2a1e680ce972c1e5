use super::tensor::{tensor, TensorProduct};
use crate::cset::{enumerate_maps, standard_cell, CellKind, Cell, CubeModel, CubicalMap, CubicalSet};
use crate::cube::{self, BoxMorphism, Generator};
use crate::error::{domain, Result};
use crate::exec::Config;
use std::collections::HashMap;

struct Level {
    cell: Cell,
    tensor: TensorProduct,
}

struct HomModel<'a> {
    y: &'a CubicalSet,
    levels: Vec<Level>,
    /// `(n, g)` ↦ the map `□^{n'} ⊗ X → □^n ⊗ X` induced by `g`.
    induced: HashMap<(usize, Generator), Vec<Vec<u32>>>,
    cfg: Config,
}

impl<'a> HomModel<'a> {
    fn new(x: &'a CubicalSet, y: &'a CubicalSet, d: usize, cfg: &Config) -> Result<Self> {
        let t = x.max_dim().min(y.max_dim());
        let mut levels = Vec::new();
        for n in 0..=d + 1 {
            let cell = standard_cell(CellKind::Cube, n, t, cfg)?;
            let tensor = tensor(&cell.set, x, cfg)?;
            levels.push(Level { cell, tensor });
        }
        let mut induced = HashMap::new();
        for n in 0..=d {
            let mut gens: Vec<Generator> = Vec::new();
            for i in 1..=n {
                gens.push(cube::face(i, 0));
                gens.push(cube::face(i, 1));
            }
            gens.extend((1..=n + 1).map(cube::degen));
            for i in 1..=n {
                gens.push(cube::conn(i, 0));
                gens.push(cube::conn(i, 1));
            }
            for g in gens {
                let src = g.source_dim(n).unwrap();
                let gm = BoxMorphism::generator(g, src)?;
                let (from, to) = (&levels[src], &levels[n]);
                let mut table = Vec::new();
                for k in 0..=from.tensor.set.max_dim() {
                    let row: Vec<u32> = from.tensor.cubes[k]
                        .iter()
                        .map(|c| {
                            let m = c.m as usize;
                            let a = &from.cell.cubes[m][c.x as usize];
                            let ga = gm.compose(a).unwrap();
                            let ai = to.cell.index_of(&ga).unwrap();
                            to.tensor
                                .lookup(&to.cell.set, x, m, ai, k - m, c.y)
                                .expect("induced cube exists")
                        })
                        .collect();
                    table.push(row);
                }
                induced.insert((n, g), table);
            }
        }
        Ok(HomModel {
            y,
            levels,
            induced,
            cfg: *cfg,
        })
    }

    fn pull(&self, n: usize, h: &CubicalMap, g: Generator) -> CubicalMap {
        let t = &self.induced[&(n, g)];
        CubicalMap {
            images: t
                .iter()
                .enumerate()
                .map(|(k, row)| row.iter().map(|&c| h.at(k, c)).collect())
                .collect(),
        }
    }
}

impl CubeModel for HomModel<'_> {
    type Cube = CubicalMap;

    fn cubes(&self, n: usize) -> Result<Vec<CubicalMap>> {
        enumerate_maps(&self.levels[n].tensor.set, self.y, &self.cfg)
    }

    fn face(&self, n: usize, h: &CubicalMap, i: usize, eps: u8) -> CubicalMap {
        self.pull(n, h, cube::face(i, eps))
    }

    fn degen(&self, n: usize, h: &CubicalMap, i: usize) -> CubicalMap {
        self.pull(n, h, cube::degen(i))
    }

    fn conn(&self, n: usize, h: &CubicalMap, i: usize, eps: u8) -> CubicalMap {
        self.pull(n, h, cube::conn(i, eps))
    }
}

/// `hom(X, Y)` truncated at `d`; its `n`-cubes are maps `□^n ⊗ X → Y`.
pub struct InternalHom {
    pub set: CubicalSet,
    pub maps: Vec<Vec<CubicalMap>>,
    levels: Vec<Level>,
    index: Vec<HashMap<CubicalMap, u32>>,
}

impl InternalHom {
    pub fn tensor_at(&self, n: usize) -> &TensorProduct {
        &self.levels[n].tensor
    }

    pub fn index_of(&self, n: usize, h: &CubicalMap) -> Option<u32> {
        self.index.get(n)?.get(h).copied()
    }

    /// The standard cell `□^n` whose tensor with `X` indexes the `n`-cubes.
    pub fn cell_at(&self, n: usize) -> &Cell {
        &self.levels[n].cell
    }
}

pub fn internal_hom(x: &CubicalSet, y: &CubicalSet, d: usize, cfg: &Config) -> Result<InternalHom> {
    let model = HomModel::new(x, y, d, cfg)?;
    let (set, maps) = CubicalSet::build(&model, d, cfg)?;
    let index = maps
        .iter()
        .map(|ms| ms.iter().enumerate().map(|(i, m)| (m.clone(), i as u32)).collect())
        .collect();
    Ok(InternalHom {
        set,
        maps,
        levels: model.levels,
        index,
    })
}

/// The adjoint `Z → hom(X, Y)` of a map `F: Z ⊗ X → Y`, given by
/// `z ↦ ((a, x) ↦ F(z·a, x))`.
pub fn curry(
    z: &CubicalSet,
    x: &CubicalSet,
    zx: &TensorProduct,
    f: &CubicalMap,
    hom: &InternalHom,
) -> Result<CubicalMap> {
    let d = z.max_dim().min(hom.set.max_dim());
    let mut images = Vec::new();
    for n in 0..=d {
        let lvl = &hom.levels[n];
        let mut row = Vec::with_capacity(z.count(n));
        for zc in 0..z.count(n) as u32 {
            let mut h = Vec::new();
            for k in 0..=lvl.tensor.set.max_dim() {
                let mut r = Vec::with_capacity(lvl.tensor.cubes[k].len());
                for c in &lvl.tensor.cubes[k] {
                    let m = c.m as usize;
                    let a = &lvl.cell.cubes[m][c.x as usize];
                    let Some((_, za)) = z.act_morphism(n, zc, a) else {
                        return domain("truncation too small for currying");
                    };
                    let Some(t) = zx.lookup(z, x, m, za, k - m, c.y) else {
                        return domain("tensor cube missing while currying");
                    };
                    r.push(f.at(k, t));
                }
                h.push(r);
            }
            let h = CubicalMap { images: h };
            match hom.index_of(n, &h) {
                Some(i) => row.push(i),
                None => return domain("curried cube is not a map □^n ⊗ X → Y"),
            }
        }
        images.push(row);
    }
    Ok(CubicalMap { images })
}

/// The comparison `(X ⊗ Y) ⊗ Z → X ⊗ (Y ⊗ Z)`, `((x, y), z) ↦ (x, (y, z))`.
pub fn associator(
    x: &CubicalSet,
    y: &CubicalSet,
    z: &CubicalSet,
    xy: &TensorProduct,
    xy_z: &TensorProduct,
    yz: &TensorProduct,
    x_yz: &TensorProduct,
) -> Result<CubicalMap> {
    let d = xy_z.set.max_dim().min(x_yz.set.max_dim());
    let mut images = Vec::new();
    for k in 0..=d {
        let mut row = Vec::new();
        for c in &xy_z.cubes[k] {
            let k1 = c.m as usize;
            let inner = xy.cube(k1, c.x);
            let m = inner.m as usize;
            let p = k1 - m;
            let q = k - k1;
            let Some(b) = yz.lookup(y, z, p, inner.y, q, c.y) else {
                return domain("associator: inner cube missing");
            };
            let Some(t) = x_yz.lookup(x, &yz.set, m, inner.x, p + q, b) else {
                return domain("associator: outer cube missing");
            };
            row.push(t);
        }
        images.push(row);
    }
    Ok(CubicalMap { images })
}

/// The comparison `□^p ⊗ □^q → □^{p+q}`, `(a, b) ↦ a × b`.
pub fn representable_product_map(p: &Cell, q: &Cell, pq: &TensorProduct, target: &Cell) -> Result<CubicalMap> {
    let mut images = Vec::new();
    for k in 0..=pq.set.max_dim() {
        let mut row = Vec::new();
        for c in &pq.cubes[k] {
            let m = c.m as usize;
            let a = &p.cubes[m][c.x as usize];
            let b = &q.cubes[k - m][c.y as usize];
            match target.index_of(&a.product(b)) {
                Some(i) => row.push(i),
                None => return domain("product morphism missing from target cell"),
            }
        }
        images.push(row);
    }
    Ok(CubicalMap { images })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cset::{find_isomorphism, representable};

    #[test]
    fn square_is_product_of_intervals() {
        let cfg = Config::default();
        let i = standard_cell(CellKind::Cube, 1, 3, &cfg).unwrap();
        let sq = standard_cell(CellKind::Cube, 2, 3, &cfg).unwrap();
        let t = tensor(&i.set, &i.set, &cfg).unwrap();
        let f = representable_product_map(&i, &i, &t, &sq).unwrap();
        assert!(f.check_natural(&t.set, &sq.set).is_ok());
        assert!(f.is_bijective(&t.set, &sq.set));
        assert!(find_isomorphism(&t.set, &sq.set, &cfg).unwrap().is_some());
    }

    #[test]
    fn hom_from_point_is_target() {
        let cfg = Config::default();
        let p = representable(0, 2, &cfg).unwrap();
        let y = standard_cell(CellKind::Boundary, 2, 2, &cfg).unwrap().set;
        let h = internal_hom(&p, &y, 2, &cfg).unwrap();
        assert_eq!(h.set.counts(), y.counts());
        assert!(find_isomorphism(&h.set, &y, &cfg).unwrap().is_some());
    }

    #[test]
    fn hom_vertices_are_maps() {
        let cfg = Config::default();
        let b1 = standard_cell(CellKind::Boundary, 1, 1, &cfg).unwrap().set;
        let i = representable(1, 1, &cfg).unwrap();
        let h = internal_hom(&b1, &i, 1, &cfg).unwrap();
        assert_eq!(h.set.count(0), 4);
    }
}
