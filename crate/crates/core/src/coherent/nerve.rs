use super::rigid_map;
use super::tuple::RigidTuple;
use crate::cube::Generator;
use crate::enriched::{act_word, degenerate_identity, CubicalCategory, CubicalFunctor, Materialized};
use crate::error::{domain, Error, Result};
use crate::exec::Config;
use crate::simplicial::{SimplexModel, SimplicialSet};
use std::collections::HashMap;

/// A cubical functor `𝔠[n] → C`: objects `x_0..x_n` and the images
/// `F_ab ∈ C(x_a, x_b)_{b−a−1}` of the top cubes, stored at `a·(n+1) + b`
/// for `a ≤ b` (the identity on the diagonal) and `u32::MAX` below it.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CoherentSimplex {
    pub objects: Vec<u16>,
    pub cubes: Vec<u32>,
}

impl CoherentSimplex {
    pub fn dim(&self) -> usize {
        self.objects.len() - 1
    }

    pub fn top(&self, a: usize, b: usize) -> u32 {
        self.cubes[a * self.objects.len() + b]
    }
}

/// `N_□C` truncated at `n_max`, with `C` tabulated.
pub struct CoherentNerve<'a, C: CubicalCategory> {
    pub category: Materialized<'a, C>,
    pub set: SimplicialSet,
    pub simplices: Vec<Vec<CoherentSimplex>>,
}

struct NerveModel<'c, 'a, C: CubicalCategory> {
    m: &'c Materialized<'a, C>,
    /// `∂_{1,1}` index per `(a, b, k)`.
    by_face: HashMap<(usize, usize, usize), HashMap<u32, Vec<u32>>>,
    /// Words of `𝔠(θ)_{ab}` per cosimplicial operator.
    words: HashMap<Vec<usize>, Vec<Vec<Generator>>>,
    n_max: usize,
}

fn operators(n_max: usize) -> Vec<Vec<usize>> {
    let mut ops = Vec::new();
    for n in 1..=n_max {
        for i in 0..=n {
            ops.push((0..n).map(|v| if v < i { v } else { v + 1 }).collect());
        }
    }
    for n in 0..n_max {
        for i in 0..=n {
            ops.push((0..=n + 1).map(|v| if v <= i { v } else { v - 1 }).collect());
        }
    }
    ops
}

impl<C: CubicalCategory> NerveModel<'_, '_, C> {
    fn act(&self, s: &CoherentSimplex, theta: &[usize]) -> CoherentSimplex {
        let n2 = theta.len() - 1;
        let objects: Vec<u16> = theta.iter().map(|&t| s.objects[t]).collect();
        let words = &self.words[theta];
        let mut cubes = vec![u32::MAX; (n2 + 1) * (n2 + 1)];
        for a in 0..=n2 {
            for b in a..=n2 {
                let (xa, xb) = (objects[a] as usize, objects[b] as usize);
                let (ta, tb) = (theta[a], theta[b]);
                let src = s.top(ta, tb);
                let k = tb.saturating_sub(ta + 1);
                cubes[a * (n2 + 1) + b] = if a == b {
                    self.m.identity(xa)
                } else {
                    act_word(self.m, xa, xb, k, &src, &words[a * (n2 + 1) + b]).expect("within truncation").1
                };
            }
        }
        CoherentSimplex { objects, cubes }
    }
}

impl<C: CubicalCategory> SimplexModel for NerveModel<'_, '_, C> {
    type Simplex = CoherentSimplex;

    fn simplices(&self, n: usize) -> Result<Vec<CoherentSimplex>> {
        let no = self.m.object_count();
        let mut out = Vec::new();
        let mut objects = vec![0u16; n + 1];
        let positions: Vec<(usize, usize)> = (1..=n).flat_map(|l| (0..=n - l).map(move |a| (a, a + l))).collect();
        loop {
            let mut cubes = vec![u32::MAX; (n + 1) * (n + 1)];
            for a in 0..=n {
                cubes[a * (n + 1) + a] = self.m.identity(objects[a] as usize);
            }
            self.fill(&objects, &positions, 0, &mut cubes, &mut out);
            let mut i = 0;
            while i <= n {
                objects[i] += 1;
                if (objects[i] as usize) < no {
                    break;
                }
                objects[i] = 0;
                i += 1;
            }
            if i > n {
                break;
            }
        }
        Ok(out)
    }

    fn face(&self, n: usize, s: &CoherentSimplex, i: usize) -> CoherentSimplex {
        let theta: Vec<usize> = (0..n).map(|v| if v < i { v } else { v + 1 }).collect();
        self.act(s, &theta)
    }

    fn degen(&self, n: usize, s: &CoherentSimplex, i: usize) -> CoherentSimplex {
        let theta: Vec<usize> = (0..=n + 1).map(|v| if v <= i { v } else { v - 1 }).collect();
        self.act(s, &theta)
    }

    fn name(&self, n: usize, s: &CoherentSimplex) -> Option<String> {
        if n == 0 {
            return Some(self.m.object_name(s.objects[0] as usize));
        }
        let parts: Vec<String> = (0..n)
            .flat_map(|a| (a + 1..=n).map(move |b| (a, b)))
            .map(|(a, b)| self.m.cube_name(s.objects[a] as usize, s.objects[b] as usize, b - a - 1, &s.top(a, b)))
            .collect();
        Some(format!("<{}>", parts.join(";")))
    }
}

impl<C: CubicalCategory> NerveModel<'_, '_, C> {
    fn fill(&self, objects: &[u16], positions: &[(usize, usize)], at: usize, cubes: &mut Vec<u32>, out: &mut Vec<CoherentSimplex>) {
        let w = objects.len();
        let Some(&(a, b)) = positions.get(at) else {
            out.push(CoherentSimplex { objects: objects.to_vec(), cubes: cubes.clone() });
            return;
        };
        let (xa, xb) = (objects[a] as usize, objects[b] as usize);
        let l = b - a;
        let candidates: Vec<u32> = if l == 1 {
            (0..self.m.space(xa, xb).set.count(0) as u32).collect()
        } else {
            let xc = objects[b - 1] as usize;
            let want = self.m.compose(xa, xc, xb, 0, &cubes[(b - 1) * w + b], l - 2, &cubes[a * w + b - 1]);
            self.by_face[&(xa, xb, l - 1)].get(&want).cloned().unwrap_or_default()
        };
        'cand: for c in candidates {
            for p in 2..l {
                let m = b - p;
                let xm = objects[m] as usize;
                let want = self.m.compose(xa, xm, xb, p - 1, &cubes[m * w + b], m - a - 1, &cubes[a * w + m]);
                if self.m.face(xa, xb, l - 1, &c, p, 1) != want {
                    continue 'cand;
                }
            }
            cubes[a * w + b] = c;
            self.fill(objects, positions, at + 1, cubes, out);
        }
        cubes[a * w + b] = u32::MAX;
    }
}

/// `N_□C` in dimensions `≤ n_max`; needs `n_max ≤ 3` and `n_max ≤ D + 1`.
pub fn coherent_nerve<'a, C: CubicalCategory>(cat: &'a C, n_max: usize, cfg: &Config) -> Result<CoherentNerve<'a, C>> {
    if n_max > 3 {
        return domain("the coherent nerve is enumerated up to dimension 3");
    }
    if n_max > cat.truncation() + 1 {
        return Err(Error::Truncation(format!(
            "{n_max}-simplices need cubes of dimension {}, the category is truncated at {}",
            n_max - 1,
            cat.truncation()
        )));
    }
    let m = Materialized::new(cat, cat.truncation(), cfg)?;
    let no = cat.object_count();
    let mut by_face = HashMap::new();
    for a in 0..no {
        for b in 0..no {
            let set = &m.space(a, b).set;
            for k in 1..=m.truncation() {
                let mut idx: HashMap<u32, Vec<u32>> = HashMap::new();
                for c in 0..set.count(k) as u32 {
                    idx.entry(set.face(k, c, 1, 1)).or_default().push(c);
                }
                by_face.insert((a, b, k), idx);
            }
        }
    }
    let words = operators(n_max)
        .into_iter()
        .map(|theta| {
            let n2 = theta.len() - 1;
            let mut w = vec![Vec::new(); (n2 + 1) * (n2 + 1)];
            for a in 0..=n2 {
                for b in a + 1..=n2 {
                    w[a * (n2 + 1) + b] = rigid_map(&theta, a, b).word();
                }
            }
            (theta, w)
        })
        .collect();
    let model = NerveModel { m: &m, by_face, words, n_max };
    let (set, simplices) = SimplicialSet::build(&model, model.n_max, cfg)?;
    drop(model);
    Ok(CoherentNerve { category: m, set, simplices })
}

/// `ε((s_n, f_n), …, (s_1, f_1)) = (s_n f_n) ∘ ⋯ ∘ (s_1 f_1)` at the object
/// `x` for the empty tuple.
pub fn counit_eval<C: CubicalCategory>(nerve: &CoherentNerve<'_, C>, x: usize, t: &RigidTuple) -> u32 {
    let m = &nerve.category;
    let mut acc: Option<(usize, usize, usize, u32)> = None;
    for p in t.pairs.iter().rev() {
        let s = &nerve.simplices[p.m as usize][p.s as usize];
        let (a, b) = (s.objects[0] as usize, s.objects[p.m as usize] as usize);
        let v = act_word(m, a, b, p.m as usize - 1, &s.top(0, p.m as usize), &p.f.word())
            .expect("within truncation")
            .1;
        let d = p.f.src();
        acc = Some(match acc {
            None => (a, b, d, v),
            Some((src, mid, k, f)) => (src, b, d + k, m.compose(src, mid, b, d, &v, k, &f)),
        });
    }
    match acc {
        Some((_, _, _, c)) => c,
        None => degenerate_identity(m, x, t.dim()),
    }
}

/// The counit `𝔠N_□C → C` as a cubical functor out of the rigidification
/// of `nerve.set`, whose objects are the vertices of the nerve.
pub fn counit_functor<'n, C: CubicalCategory>(nerve: &'n CoherentNerve<'_, C>) -> CubicalFunctor<'n, RigidTuple, u32> {
    let objects = nerve.simplices[0].iter().map(|s| s.objects[0] as usize).collect();
    CubicalFunctor::new(objects, move |a, _b, _k, t: &RigidTuple| {
        counit_eval(nerve, nerve.simplices[0][a].objects[0] as usize, t)
    })
}
