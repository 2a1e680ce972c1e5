use super::{box_product, graph_maps, hom_graph, nerve_homology, nerve_map, Graph, HomGraph};
use super::nerve::graph_nerve;
use crate::error::{domain, Result};
use crate::exec::Config;
use crate::geom::triangulate_with;
use crate::homology::induced_iso_low;
use crate::report::Verdict;
use serde::{Deserialize, Serialize};
use std::collections::VecDeque;

pub const DEFAULT_SEARCH_BOUND: usize = 4;

/// A homotopy `X □ I_n → Y` recorded by its stages `H(-, 0), …, H(-, n)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Homotopy {
    pub stages: Vec<Vec<u32>>,
}

impl Homotopy {
    pub fn constant(f: Vec<u32>) -> Self {
        Homotopy { stages: vec![f] }
    }

    pub fn length(&self) -> usize {
        self.stages.len() - 1
    }

    pub fn source(&self) -> &[u32] {
        &self.stages[0]
    }

    pub fn target(&self) -> &[u32] {
        self.stages.last().expect("nonempty")
    }

    /// `self` followed by `other`, a map out of `X □ I_{n+n'}`.
    pub fn concat(&self, other: &Homotopy) -> Result<Homotopy> {
        if self.target() != other.source() {
            return domain("homotopies do not meet");
        }
        let mut stages = self.stages.clone();
        stages.extend(other.stages[1..].iter().cloned());
        Ok(Homotopy { stages })
    }

    pub fn reverse(&self) -> Homotopy {
        let mut stages = self.stages.clone();
        stages.reverse();
        Homotopy { stages }
    }

    /// The map `X □ I_n → Y` on the vertex order of [`box_product`].
    pub fn to_map(&self, x: &Graph) -> Vec<u32> {
        let n = self.length() + 1;
        (0..x.order() * n).map(|p| self.stages[p % n][p / n]).collect()
    }

    /// Whether the stages assemble to a graph map `X □ I_n → Y`.
    pub fn verify(&self, x: &Graph, y: &Graph) -> bool {
        let grid = box_product(x, &Graph::interval(self.length()));
        grid.is_map_to(y, &self.to_map(x))
    }
}

/// Graph maps `X → Y` partitioned by homotopy.
#[derive(Clone, Debug)]
pub struct HomotopyClasses {
    pub hom: HomGraph,
    /// Class of each map.
    pub labels: Vec<usize>,
    pub classes: Vec<Vec<u32>>,
}

impl HomotopyClasses {
    pub fn count(&self) -> usize {
        self.classes.len()
    }

    pub fn class_of(&self, f: &[u32]) -> Option<usize> {
        self.hom.index_of(f).map(|i| self.labels[i as usize])
    }

    /// A shortest homotopy from `f` to `g`.
    pub fn path(&self, f: &[u32], g: &[u32]) -> Option<Homotopy> {
        let (a, b) = (self.hom.index_of(f)?, self.hom.index_of(g)?);
        let n = self.hom.maps.len();
        let mut prev = vec![u32::MAX; n];
        prev[a as usize] = a;
        let mut queue = VecDeque::from([a]);
        while let Some(v) = queue.pop_front() {
            if v == b {
                break;
            }
            for &w in self.hom.graph.neighbours(v) {
                if prev[w as usize] == u32::MAX {
                    prev[w as usize] = v;
                    queue.push_back(w);
                }
            }
        }
        if prev[b as usize] == u32::MAX {
            return None;
        }
        let mut stages = vec![self.hom.map(b).to_vec()];
        let mut v = b;
        while v != a {
            v = prev[v as usize];
            stages.push(self.hom.map(v).to_vec());
        }
        stages.reverse();
        Some(Homotopy { stages })
    }
}

/// Components of the hom graph.
pub fn homotopy_classes(x: &Graph, y: &Graph, cfg: &Config) -> Result<HomotopyClasses> {
    let hom = hom_graph(x, y, cfg)?;
    let labels = hom.graph.components();
    let count = labels.iter().max().map_or(0, |m| m + 1);
    let mut classes = vec![Vec::new(); count];
    for (i, &l) in labels.iter().enumerate() {
        classes[l].push(i as u32);
    }
    Ok(HomotopyClasses { hom, labels, classes })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    /// `pi0` or `H1`.
    pub invariant: String,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Equivalence {
    Yes {
        inverse: Vec<u32>,
        /// `g f ⇒ id_X`.
        gf: Homotopy,
        /// `f g ⇒ id_Y`.
        fg: Homotopy,
    },
    No(Certificate),
    Unknown(String),
}

impl Equivalence {
    pub fn verdict(&self) -> Verdict {
        match self {
            Equivalence::Yes { .. } => Verdict::Pass,
            Equivalence::No(c) => Verdict::Fail(format!("{}: {}", c.invariant, c.detail)),
            Equivalence::Unknown(r) => Verdict::Inconclusive(r.clone()),
        }
    }
}

fn compose(g: &[u32], f: &[u32]) -> Vec<u32> {
    f.iter().map(|&v| g[v as usize]).collect()
}

/// Decide whether `f: X → Y` is a homotopy equivalence.
///
/// Inverses are searched exhaustively with homotopies of length at most
/// `bound`; a negative answer needs a π₀ or `H_1(N^G_1)` certificate.
pub fn is_homotopy_equivalence(
    x: &Graph,
    y: &Graph,
    f: &[u32],
    bound: usize,
    cfg: &Config,
) -> Result<Equivalence> {
    if !x.is_map_to(y, f) {
        return domain("not a graph map");
    }
    let mut reason = format!("no inverse with homotopies of length ≤ {bound}");
    match search_inverse(x, y, f, bound, cfg) {
        Ok(Some(e)) => return Ok(e),
        Ok(None) => {}
        Err(e) => reason = format!("inverse search aborted: {e}"),
    }
    if let Some(c) = pi0_certificate(x, y, f) {
        return Ok(Equivalence::No(c));
    }
    if let Some(c) = h1_certificate(x, y, f, cfg)? {
        return Ok(Equivalence::No(c));
    }
    Ok(Equivalence::Unknown(reason))
}

fn search_inverse(x: &Graph, y: &Graph, f: &[u32], bound: usize, cfg: &Config) -> Result<Option<Equivalence>> {
    let xx = homotopy_classes(x, x, cfg)?;
    let yy = homotopy_classes(y, y, cfg)?;
    let id_x: Vec<u32> = (0..x.order() as u32).collect();
    let id_y: Vec<u32> = (0..y.order() as u32).collect();
    let cx = xx.class_of(&id_x);
    let cy = yy.class_of(&id_y);
    for g in graph_maps(y, x, cfg)? {
        let gf = compose(&g, f);
        let fg = compose(f, &g);
        if xx.class_of(&gf) != cx || yy.class_of(&fg) != cy {
            continue;
        }
        let (Some(h1), Some(h2)) = (xx.path(&gf, &id_x), yy.path(&fg, &id_y)) else {
            continue;
        };
        if h1.length() <= bound && h2.length() <= bound {
            return Ok(Some(Equivalence::Yes { inverse: g, gf: h1, fg: h2 }));
        }
    }
    Ok(None)
}

fn pi0_certificate(x: &Graph, y: &Graph, f: &[u32]) -> Option<Certificate> {
    let (lx, ly) = (x.components(), y.components());
    let (nx, ny) = (x.component_count(), y.component_count());
    let mut image = vec![usize::MAX; nx];
    for v in 0..x.order() {
        image[lx[v]] = ly[f[v] as usize];
    }
    let mut hit = vec![false; ny];
    let injective = image.iter().all(|&c| !std::mem::replace(&mut hit[c], true));
    if injective && nx == ny {
        None
    } else {
        Some(Certificate {
            invariant: "pi0".into(),
            detail: format!("f_* : π₀ X ({nx}) → π₀ Y ({ny}) is not a bijection"),
        })
    }
}

fn h1_certificate(x: &Graph, y: &Graph, f: &[u32], cfg: &Config) -> Result<Option<Certificate>> {
    let hx = nerve_homology(x, 1, cfg)?;
    let hy = nerve_homology(y, 1, cfg)?;
    if hx[1] != hy[1] {
        return Ok(Some(Certificate {
            invariant: "H1".into(),
            detail: format!(
                "H_1(N^G_1 X) = {} but H_1(N^G_1 Y) = {}",
                hx[1].group_string(),
                hy[1].group_string()
            ),
        }));
    }
    let nx = graph_nerve(x, 1, 2, cfg)?;
    let ny = graph_nerve(y, 1, 2, cfg)?;
    let nf = nerve_map(&nx, &ny, f)?;
    let tx = triangulate_with(&nx.set, 2, cfg)?;
    let ty = triangulate_with(&ny.set, 2, cfg)?;
    let tf = tx.induced(&nf, &ty, &ny.set);
    Ok(match induced_iso_low(&tx.set, &ty.set, &tf)? {
        Verdict::Fail(c) => Some(Certificate {
            invariant: "H1".into(),
            detail: format!("on N^G_1: {c}"),
        }),
        _ => None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg() -> Config {
        Config::default()
    }

    #[test]
    fn small_cycles_contract() {
        let i0 = Graph::interval(0);
        for n in [3, 4] {
            let c = Graph::cycle(n).unwrap();
            let f = vec![0; n];
            match is_homotopy_equivalence(&c, &i0, &f, DEFAULT_SEARCH_BOUND, &cfg()).unwrap() {
                Equivalence::Yes { inverse, gf, fg } => {
                    assert_eq!(inverse.len(), 1);
                    assert!(gf.verify(&c, &c) && fg.verify(&i0, &i0));
                    assert_eq!(gf.target(), (0..n as u32).collect::<Vec<_>>().as_slice());
                }
                other => panic!("C{n}: {other:?}"),
            }
        }
    }

    #[test]
    fn five_cycle_does_not_contract() {
        let c5 = Graph::cycle(5).unwrap();
        let r = is_homotopy_equivalence(&c5, &Graph::interval(0), &[0; 5], 4, &cfg()).unwrap();
        match r {
            Equivalence::No(c) => assert_eq!(c.invariant, "H1"),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn class_counts() {
        let c4 = Graph::cycle(4).unwrap();
        let c5 = Graph::cycle(5).unwrap();
        let i0 = Graph::interval(0);
        assert_eq!(homotopy_classes(&c4, &i0, &cfg()).unwrap().count(), 1);
        assert_eq!(homotopy_classes(&i0, &c5, &cfg()).unwrap().count(), 1);
        assert_eq!(homotopy_classes(&Graph::cycle(3).unwrap(), &Graph::cycle(3).unwrap(), &cfg()).unwrap().count(), 1);
        let h = homotopy_classes(&c5, &c5, &cfg()).unwrap();
        let id: Vec<u32> = (0..5).collect();
        assert_ne!(h.class_of(&id), h.class_of(&[0; 5]));
    }

    #[test]
    fn concat_and_reverse() {
        let i2 = Graph::interval(2);
        let a = Homotopy { stages: vec![vec![0, 1, 2], vec![1, 1, 2]] };
        let b = Homotopy { stages: vec![vec![1, 1, 2], vec![1, 2, 2]] };
        let c = a.concat(&b).unwrap();
        assert_eq!(c.length(), 2);
        assert!(c.verify(&i2, &i2) && c.reverse().verify(&i2, &i2));
        assert!(b.concat(&a).is_err());
    }
}
