use super::graph::{CotensorTower, GraphCategory};
use super::{mapping_space, CubicalCategory, MappingSpace};
use crate::cset::{standard_cell, Cell, CellKind, CubicalMap};
use crate::error::{Error, Result};
use crate::exec::Config;
use crate::geom::{internal_hom, InternalHom};
use crate::report::{Check, Verdict};

/// Candidate data exhibiting `W` as the cotensor `A ⋔ X`: for each `Z` in
/// the slot list, a map `C(Z, W) → hom(A, C(Z, X))`, or `None` when the
/// candidate offers no formula.
pub struct CotensorWitness {
    pub x: usize,
    pub w: usize,
    pub a: Cell,
    pub slots: Vec<usize>,
    pub components: Vec<Option<CubicalMap>>,
}

struct Slot {
    zw: MappingSpace<Vec<u32>>,
    zx: MappingSpace<Vec<u32>>,
    hom: InternalHom,
}

fn level(cat: &GraphCategory, a: &Cell) -> Result<usize> {
    let dim_a = (0..=a.set.max_dim()).rev().find(|&k| !a.set.nondegenerate(k).is_empty()).unwrap_or(0);
    cat.truncation().checked_sub(dim_a).ok_or_else(|| {
        Error::Truncation(format!(
            "a weak cotensor by a {dim_a}-dimensional set needs truncation ≥ {dim_a}"
        ))
    })
}

fn slot(cat: &GraphCategory, w: &CotensorWitness, z: usize, l: usize, cfg: &Config) -> Result<Slot> {
    let d = cat.truncation();
    let zw = mapping_space(cat, z, w.w, l, cfg)?;
    let zx = mapping_space(cat, z, w.x, d, cfg)?;
    let hom = internal_hom(&w.a.set, &zx.set, l, cfg)?;
    Ok(Slot { zw, zx, hom })
}

/// Builders for witnesses in `Graph¹` whose candidate is a tower level.
pub struct GraphCotensor;

impl GraphCotensor {
    /// The witness for `W = T_p = hom(I₁^{□p}, X)` sending a cube
    /// `φ: I₁^{□n} □ Z → W` to `(μ, ν) ↦ ((v, z) ↦ φ(μ(v₁), z)(ν(v₂)))`.
    pub fn tower_witness(
        cat: &GraphCategory,
        tower: &CotensorTower,
        x: usize,
        w: usize,
        p: usize,
        slots: &[usize],
        cfg: &Config,
    ) -> Result<CotensorWitness> {
        let d = cat.truncation();
        let a = standard_cell(CellKind::Cube, p, d, cfg)?;
        let mut wit = CotensorWitness {
            x,
            w,
            a,
            slots: slots.to_vec(),
            components: Vec::new(),
        };
        let l = level(cat, &wit.a)?;
        let maps = &tower.levels[p].maps;
        for &z in slots {
            let s = slot(cat, &wit, z, l, cfg)?;
            let nz = cat.graph(z).order();
            let mut images = Vec::with_capacity(l + 1);
            for n in 0..=l {
                let cell = s.hom.cell_at(n);
                let ten = s.hom.tensor_at(n);
                let mut row = Vec::with_capacity(s.zw.cubes[n].len());
                for phi in &s.zw.cubes[n] {
                    let mut h = Vec::with_capacity(ten.set.max_dim() + 1);
                    for k in 0..=ten.set.max_dim() {
                        let mut r = Vec::with_capacity(ten.cubes[k].len());
                        for c in &ten.cubes[k] {
                            let m = c.m as usize;
                            let mu = &cell.cubes[m][c.x as usize];
                            let nu = &wit.a.cubes[k - m][c.y as usize];
                            let mut cube = Vec::with_capacity((1 << k) * nz);
                            for v in 0..1u32 << k {
                                let (v1, v2) = (v & ((1 << m) - 1), v >> m);
                                let (u, t) = (mu.apply(v1) as usize, nu.apply(v2) as usize);
                                for zz in 0..nz {
                                    cube.push(maps[phi[u * nz + zz] as usize][t]);
                                }
                            }
                            match s.zx.index_of(k, &cube) {
                                Some(i) => r.push(i),
                                None => {
                                    return Err(Error::Domain(format!(
                                        "witness cube is not a {k}-cube of the mapping space"
                                    )))
                                }
                            }
                        }
                        h.push(r);
                    }
                    let h = CubicalMap { images: h };
                    match s.hom.index_of(n, &h) {
                        Some(i) => row.push(i),
                        None => return Err(Error::Domain("witness cube is not a map □ⁿ ⊗ A → C(Z, X)".into())),
                    }
                }
                images.push(row);
            }
            wit.components.push(Some(CubicalMap { images }));
        }
        Ok(wit)
    }

    /// A candidate without a formula; only counts can be compared.
    pub fn bare(cat: &GraphCategory, x: usize, w: usize, p: usize, slots: &[usize], cfg: &Config) -> Result<CotensorWitness> {
        Ok(CotensorWitness {
            x,
            w,
            a: standard_cell(CellKind::Cube, p, cat.truncation(), cfg)?,
            slots: slots.to_vec(),
            components: vec![None; slots.len()],
        })
    }
}

/// Check each component is an isomorphism in the dimensions where both
/// sides are exact, and naturality in `Z` over all 0-cubes `Z′ → Z`
/// between slots.
pub fn verify_cotensor(cat: &GraphCategory, w: &CotensorWitness, cfg: &Config) -> Result<Vec<Check>> {
    let l = level(cat, &w.a)?;
    let mut checks = Vec::new();
    let mut slots = Vec::new();
    for (i, &z) in w.slots.iter().enumerate() {
        let s = slot(cat, w, z, l, cfg)?;
        let zname = cat.object_name(z);
        let lhs = s.zw.set.truncate(l);
        let rhs = s.hom.set.truncate(l);
        let name = format!("C({zname}, W) ≅ hom(A, C({zname}, X)) in dimensions ≤ {l}");
        if lhs.counts() != rhs.counts() {
            checks.push(Check::new(
                name,
                Verdict::Fail(format!("cube counts differ: {:?} vs {:?}", lhs.counts(), rhs.counts())),
            ));
        } else if let Some(c) = &w.components[i] {
            let v = match c.check_natural(&lhs, &rhs) {
                Err(e) => Verdict::Fail(format!("component is not a cubical map: {e}")),
                Ok(()) if !c.is_bijective(&lhs, &rhs) => Verdict::Fail("component is not bijective".into()),
                Ok(()) => Verdict::Pass,
            };
            checks.push(Check::new(name, v));
        } else {
            checks.push(Check::new(name, Verdict::Inconclusive("counts agree but no component was supplied".into())));
        }
        slots.push(s);
    }
    if checks.iter().any(|c| !c.verdict.is_pass()) {
        return Ok(checks);
    }
    for (i, &z) in w.slots.iter().enumerate() {
        for (i2, &z2) in w.slots.iter().enumerate() {
            let (s, s2) = (&slots[i], &slots[i2]);
            let (c, c2) = (w.components[i].as_ref().unwrap(), w.components[i2].as_ref().unwrap());
            let mut bad = None;
            let hs = cat.cubes(z2, z, 0, cfg)?;
            for h in &hs {
                // h^*: C(Z, X) → C(Z′, X)
                let pull = CubicalMap {
                    images: (0..=s.zx.set.max_dim())
                        .map(|k| {
                            s.zx.cubes[k]
                                .iter()
                                .map(|psi| s2.zx.index_of(k, &cat.compose(z2, z, w.x, k, psi, 0, h)).unwrap())
                                .collect()
                        })
                        .collect(),
                };
                'cubes: for n in 0..=l {
                    for (pi, phi) in s.zw.cubes[n].iter().enumerate() {
                        let left = s2.zw.index_of(n, &cat.compose(z2, z, w.w, n, phi, 0, h)).unwrap();
                        let left = c2.at(n, left);
                        let img = s.hom.maps[n][c.at(n, pi as u32) as usize].then(&pull);
                        if s2.hom.index_of(n, &img) != Some(left) {
                            bad = Some(format!("square fails at h = {}", cat.cube_name(z2, z, 0, h)));
                            break 'cubes;
                        }
                    }
                }
                if bad.is_some() {
                    break;
                }
            }
            checks.push(Check::new(
                format!(
                    "naturality along {} 0-cube(s) {} → {}",
                    hs.len(),
                    cat.object_name(z2),
                    cat.object_name(z)
                ),
                Verdict::from_bool(bad.is_none(), || bad.unwrap_or_default()),
            ));
        }
    }
    Ok(checks)
}
