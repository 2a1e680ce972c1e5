use super::sparse::{invariant_factors, SparseMatrix};
use crate::cset::CubicalSet;
use crate::error::{Error, Result};
use crate::exec::Config;
use crate::geom::triangulate_with;
use crate::report::Verdict;
use crate::simplicial::{SimplicialMap, SimplicialSet};
use num_bigint::BigInt;
use num_traits::One;
use serde::{Deserialize, Serialize};
use std::fmt;

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct HomologyGroup {
    pub degree: usize,
    pub betti: usize,
    /// Torsion coefficients, each `> 1`, with `d₁ | d₂ | …`.
    pub torsion: Vec<BigInt>,
}

impl HomologyGroup {
    pub fn is_zero(&self) -> bool {
        self.betti == 0 && self.torsion.is_empty()
    }

    /// Right-hand side of `H_k = …`.
    pub fn group_string(&self) -> String {
        let mut parts = Vec::new();
        match self.betti {
            0 => {}
            1 => parts.push("Z".to_string()),
            b => parts.push(format!("Z^{b}")),
        }
        parts.extend(self.torsion.iter().map(|d| format!("Z/{d}")));
        if parts.is_empty() {
            "0".to_string()
        } else {
            parts.join(" ⊕ ")
        }
    }
}

impl fmt::Display for HomologyGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "H_{} = {}", self.degree, self.group_string())
    }
}

/// Normalized chains on nondegenerate simplices, up to a top degree.
#[derive(Clone, Debug)]
pub struct ChainComplex {
    /// Rank of the chain group in each degree.
    pub ranks: Vec<usize>,
    /// `boundaries[k]: C_k → C_{k-1}`; `boundaries[0]` is empty.
    pub boundaries: Vec<SparseMatrix>,
    /// Nondegenerate simplex indices per degree.
    pub basis: Vec<Vec<u32>>,
    /// Position in `basis` of each simplex, or `u32::MAX` if degenerate.
    pub position: Vec<Vec<u32>>,
}

impl ChainComplex {
    pub fn of(s: &SimplicialSet, top: usize) -> Self {
        let basis: Vec<Vec<u32>> = (0..=top).map(|k| s.nondegenerate(k)).collect();
        let position: Vec<Vec<u32>> = (0..=top)
            .map(|k| {
                let mut p = vec![u32::MAX; s.count(k)];
                for (i, &x) in basis[k].iter().enumerate() {
                    p[x as usize] = i as u32;
                }
                p
            })
            .collect();
        let mut boundaries = vec![SparseMatrix::new(0)];
        for k in 1..=top {
            let mut m = SparseMatrix::new(basis[k - 1].len());
            for &x in &basis[k] {
                let col = (0..=k)
                    .filter_map(|i| {
                        let p = position[k - 1][s.face(k, x, i) as usize];
                        (p != u32::MAX).then_some((p, if i % 2 == 0 { 1 } else { -1 }))
                    })
                    .collect();
                m.push_col(col);
            }
            boundaries.push(m);
        }
        ChainComplex {
            ranks: basis.iter().map(Vec::len).collect(),
            boundaries,
            basis,
            position,
        }
    }

    pub fn top(&self) -> usize {
        self.ranks.len() - 1
    }

    /// Whether every composite `∂_{k-1} ∂_k` vanishes.
    pub fn boundary_squares_to_zero(&self) -> bool {
        (2..=self.top()).all(|k| self.boundaries[k - 1].mul(&self.boundaries[k]).is_zero())
    }

    /// Homology in degrees `0..=top-1`.
    pub fn homology(&self) -> Vec<HomologyGroup> {
        let top = self.top();
        let factors: Vec<(usize, Vec<BigInt>)> = (0..=top)
            .map(|k| {
                if k == 0 {
                    (0, Vec::new())
                } else {
                    invariant_factors(&self.boundaries[k])
                }
            })
            .collect();
        (0..top)
            .map(|k| {
                let rank_k = factors[k].0;
                let rank_k1 = factors[k + 1].0;
                HomologyGroup {
                    degree: k,
                    betti: self.ranks[k] - rank_k - rank_k1,
                    torsion: factors[k + 1].1.iter().filter(|d| !d.is_one()).cloned().collect(),
                }
            })
            .collect()
    }
}

/// `H_0 … H_{up_to}` of a simplicial set.
pub fn homology_groups(s: &SimplicialSet, up_to: usize) -> Result<Vec<HomologyGroup>> {
    if up_to + 1 > s.max_dim() {
        return Err(Error::Domain(format!(
            "homology through degree {up_to} needs simplices of dimension {}, truncation is {}",
            up_to + 1,
            s.max_dim()
        )));
    }
    Ok(ChainComplex::of(s, up_to + 1).homology())
}

/// `H_0 … H_{up_to}` of a cubical set, computed on its triangulation.
pub fn cubical_homology(x: &CubicalSet, up_to: usize, cfg: &Config) -> Result<Vec<HomologyGroup>> {
    if up_to + 1 > x.max_dim() {
        return Err(Error::Domain(format!(
            "homology through degree {up_to} needs cubes of dimension {}, truncation is {}",
            up_to + 1,
            x.max_dim()
        )));
    }
    let t = triangulate_with(x, up_to + 1, cfg)?;
    homology_groups(&t.set, up_to)
}

/// A simplicial map as a chain map between normalized complexes.
pub struct ChainMap {
    pub matrices: Vec<SparseMatrix>,
}

impl ChainMap {
    pub fn of(f: &SimplicialMap, a: &ChainComplex, b: &ChainComplex) -> Self {
        let top = a.top().min(b.top());
        let matrices = (0..=top)
            .map(|k| {
                let mut m = SparseMatrix::new(b.ranks[k]);
                for &x in &a.basis[k] {
                    let p = b.position[k][f.at(k, x) as usize];
                    m.push_col(if p == u32::MAX { Vec::new() } else { vec![(p, 1)] });
                }
                m
            })
            .collect();
        ChainMap { matrices }
    }
}

/// Whether `f: A → B` induces isomorphisms on `H_0` and `H_1`.
///
/// Uses the mapping cone `C_k = B_k ⊕ A_{k-1}`: `H_0(C) = H_1(C) = 0` exactly
/// when `f_*` is bijective on `H_0` and surjective on `H_1`; the latter is an
/// isomorphism when `H_1(A) ≅ H_1(B)`, since finitely generated abelian
/// groups are Hopfian.
pub fn induced_iso_low(a: &SimplicialSet, b: &SimplicialSet, f: &SimplicialMap) -> Result<Verdict> {
    if a.max_dim() < 2 || b.max_dim() < 2 {
        return Err(Error::Truncation("H_1 comparison needs truncation 2".into()));
    }
    let ca = ChainComplex::of(a, 2);
    let cb = ChainComplex::of(b, 2);
    let fm = ChainMap::of(f, &ca, &cb);
    Ok(cone_iso_low(&ca, &cb, &fm))
}

/// The mapping-cone test behind [`induced_iso_low`], on complexes through
/// degree 2.
pub(crate) fn cone_iso_low(ca: &ChainComplex, cb: &ChainComplex, fm: &ChainMap) -> Verdict {
    let ha = ca.homology();
    let hb = cb.homology();
    // cone differentials: ∂(b, a) = (∂b + f a, -∂a)
    let mut d1 = SparseMatrix::new(cb.ranks[0]);
    for col in &cb.boundaries[1].cols {
        d1.push_col(col.clone());
    }
    for col in &fm.matrices[0].cols {
        d1.push_col(col.clone());
    }
    let off = cb.ranks[1] as u32;
    let mut d2 = SparseMatrix::new(cb.ranks[1] + ca.ranks[0]);
    for col in &cb.boundaries[2].cols {
        d2.push_col(col.clone());
    }
    for (j, col) in fm.matrices[1].cols.iter().enumerate() {
        let mut c = col.clone();
        c.extend(ca.boundaries[1].cols[j].iter().map(|&(i, v)| (i + off, -v)));
        d2.push_col(c);
    }
    let (r1, _) = invariant_factors(&d1);
    let (r2, t2) = invariant_factors(&d2);
    let h0_zero = cb.ranks[0] == r1;
    let h1_zero = cb.ranks[1] + ca.ranks[0] - r1 - r2 == 0 && t2.iter().all(|d| d.is_one());
    if !h0_zero {
        return Verdict::Fail(format!(
            "f_* not surjective on H_0 ({} → {})",
            ha[0].group_string(),
            hb[0].group_string()
        ));
    }
    if !h1_zero {
        return Verdict::Fail(format!(
            "f_* not an isomorphism in degrees ≤ 1: H_1 {} → {}",
            ha[1].group_string(),
            hb[1].group_string()
        ));
    }
    if ha[1] != hb[1] {
        return Verdict::Fail(format!(
            "H_1 differs: {} vs {}",
            ha[1].group_string(),
            hb[1].group_string()
        ));
    }
    Verdict::Pass
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::simplicial::{boundary_delta, delta};

    #[test]
    fn circle_and_disc() {
        let cfg = Config::default();
        let c = boundary_delta(2, 2, &cfg).unwrap();
        let h = homology_groups(&c, 1).unwrap();
        assert_eq!(h[0].to_string(), "H_0 = Z");
        assert_eq!(h[1].to_string(), "H_1 = Z");
        let d = delta(2, 2, &cfg).unwrap();
        let h = homology_groups(&d, 1).unwrap();
        assert!(h[1].is_zero());
    }

    #[test]
    fn truncation_is_checked() {
        let d = delta(1, 1, &Config::default()).unwrap();
        assert!(homology_groups(&d, 1).is_err());
    }

    #[test]
    fn format_with_torsion() {
        let g = HomologyGroup {
            degree: 1,
            betti: 2,
            torsion: vec![BigInt::from(2), BigInt::from(4)],
        };
        assert_eq!(g.to_string(), "H_1 = Z^2 ⊕ Z/2 ⊕ Z/4");
    }
}
