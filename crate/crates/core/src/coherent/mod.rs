//! The rigidification `𝔠`, the cubical homotopy-coherent nerve and the
//! comparison of homotopy categories.

mod ho;
mod nerve;
mod tuple;

pub use ho::{ho_nerve_iso_check, simplicial_ho, SimplicialHo};
pub use nerve::{coherent_nerve, counit_eval, counit_functor, CoherentNerve, CoherentSimplex};
pub use tuple::{rigidification, ReductionOrder, RigidPair, RigidTuple, Rigidification, TupleOps};

use crate::cube::BoxMorphism;
use crate::enriched::{check_axioms, CubicalCategory, FiniteCategory};
use crate::error::{domain, Result};
use crate::exec::Config;
use crate::simplicial::SimplicialSet;

/// `𝔠(θ)` on `hom(a, b)` for a monotone `θ: [n′] → [n]` given by its value
/// list: a vertex of `[1]^{b−a−1}` is a set of objects strictly between
/// `a` and `b` (coordinate `q` is object `b − q`), sent to its image
/// intersected with the open interval `(θa, θb)`.
pub fn rigid_map(theta: &[usize], a: usize, b: usize) -> BoxMorphism {
    let src = b - a - 1;
    let (ta, tb) = (theta[a], theta[b]);
    let dst = if tb > ta { tb - ta - 1 } else { 0 };
    let table = (0..1u32 << src)
        .map(|v| {
            let mut out = 0;
            for q in 1..=src {
                if v >> (q - 1) & 1 == 1 {
                    let tc = theta[b - q];
                    if ta < tc && tc < tb {
                        out |= 1 << (tb - tc - 1);
                    }
                }
            }
            out
        })
        .collect();
    BoxMorphism::from_table_unchecked(src, dst, table)
}

fn terminal(k: usize) -> BoxMorphism {
    BoxMorphism::from_table_unchecked(k, 0, vec![0; 1 << k])
}

/// `𝔠[n]`: objects `0..n`, `hom(i, j) = □^{j−i−1}` for `i < j`. A `k`-cube
/// is a box map `[1]^k → [1]^{j−i−1}`; composition through `j` inserts a
/// constant `1` at the coordinate of `j`.
#[derive(Clone, Debug)]
pub struct RigidSimplex {
    n: usize,
    d: usize,
}

impl RigidSimplex {
    pub fn new(n: usize, d: usize) -> Self {
        RigidSimplex { n, d }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    fn hom_dim(a: usize, b: usize) -> usize {
        if b > a {
            b - a - 1
        } else {
            0
        }
    }
}

/// `𝔠[n]` truncated at `d`, with the enriched-category axioms checked.
pub fn rigid_simplex(n: usize, d: usize, cfg: &Config) -> Result<RigidSimplex> {
    let c = RigidSimplex::new(n, d);
    let r = check_axioms(&c, cfg)?;
    if !r.failures.is_empty() {
        return domain(format!("𝔠[{n}] fails an axiom: {}", r.failures[0]));
    }
    Ok(c)
}

impl CubicalCategory for RigidSimplex {
    type Cube = BoxMorphism;

    fn object_count(&self) -> usize {
        self.n + 1
    }

    fn object_name(&self, a: usize) -> String {
        a.to_string()
    }

    fn truncation(&self) -> usize {
        self.d
    }

    fn cubes(&self, a: usize, b: usize, k: usize, _cfg: &Config) -> Result<Vec<BoxMorphism>> {
        Ok(match a.cmp(&b) {
            std::cmp::Ordering::Less => crate::cube::all_morphisms(k, b - a - 1),
            std::cmp::Ordering::Equal => vec![terminal(k)],
            std::cmp::Ordering::Greater => Vec::new(),
        })
    }

    fn contains(&self, a: usize, b: usize, k: usize, c: &BoxMorphism) -> bool {
        a <= b && b <= self.n && k <= self.d && c.src() == k && c.dst() == Self::hom_dim(a, b)
    }

    fn face(&self, _a: usize, _b: usize, _k: usize, c: &BoxMorphism, i: usize, eps: u8) -> BoxMorphism {
        c.after(crate::cube::face(i, eps)).expect("face in range")
    }

    fn degen(&self, _a: usize, _b: usize, _k: usize, c: &BoxMorphism, i: usize) -> BoxMorphism {
        c.after(crate::cube::degen(i)).expect("degeneracy in range")
    }

    fn conn(&self, _a: usize, _b: usize, _k: usize, c: &BoxMorphism, i: usize, eps: u8) -> BoxMorphism {
        c.after(crate::cube::conn(i, eps)).expect("connection in range")
    }

    fn identity(&self, _a: usize) -> BoxMorphism {
        BoxMorphism::identity(0)
    }

    fn compose(&self, a: usize, b: usize, c: usize, _j: usize, g: &BoxMorphism, _k: usize, f: &BoxMorphism) -> BoxMorphism {
        let p = g.product(f);
        if a < b && b < c {
            let ins = BoxMorphism::generator(crate::cube::face(c - b, 1), p.dst()).expect("face in range");
            ins.compose(&p).expect("dimensions match")
        } else {
            p
        }
    }

    fn cube_name(&self, _a: usize, _b: usize, _k: usize, c: &BoxMorphism) -> String {
        c.word_string()
    }
}

/// `E¹`, the nerve of the thin groupoid on two objects.
pub fn e1(d: usize, cfg: &Config) -> Result<SimplicialSet> {
    FiniteCategory::thin_groupoid(2).nerve(d, cfg)
}

#[cfg(test)]
mod tests;
