use crate::error::{domain, Result};
use crate::exec::Config;
use crate::simplicial::{SimplexModel, SimplicialSet};
use serde::{Deserialize, Serialize};
use std::collections::HashMap;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Arrow {
    pub src: u32,
    pub dst: u32,
    pub name: String,
}

/// An ordinary finite category with a full composition table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteCategory {
    objects: Vec<String>,
    arrows: Vec<Arrow>,
    ids: Vec<u32>,
    /// `(g, f) ↦ g ∘ f` for composable pairs.
    table: HashMap<(u32, u32), u32>,
    homs: Vec<Vec<u32>>,
}

impl FiniteCategory {
    /// Validate objects, arrows, identities and the composition table
    /// `(g, f, g∘f)`, which must cover every composable pair.
    pub fn new(objects: Vec<String>, arrows: Vec<Arrow>, ids: Vec<u32>, compose: &[(u32, u32, u32)]) -> Result<Self> {
        let n = objects.len() as u32;
        if arrows.iter().any(|a| a.src >= n || a.dst >= n) {
            return domain("arrow endpoint out of range");
        }
        if ids.len() != objects.len() {
            return domain("need one identity per object");
        }
        for (o, &i) in ids.iter().enumerate() {
            match arrows.get(i as usize) {
                Some(a) if a.src == o as u32 && a.dst == o as u32 => {}
                _ => return domain(format!("identity of {} is not an endomorphism of it", objects[o])),
            }
        }
        let mut table = HashMap::new();
        for &(g, f, h) in compose {
            let (ga, fa, ha) = match (arrows.get(g as usize), arrows.get(f as usize), arrows.get(h as usize)) {
                (Some(x), Some(y), Some(z)) => (x, y, z),
                _ => return domain("composition entry refers to an unknown arrow"),
            };
            if fa.dst != ga.src || ha.src != fa.src || ha.dst != ga.dst {
                return domain(format!("{} ∘ {} = {} has mismatched endpoints", ga.name, fa.name, ha.name));
            }
            if table.insert((g, f), h).is_some_and(|old| old != h) {
                return domain(format!("{} ∘ {} given twice", ga.name, fa.name));
            }
        }
        let mut homs = vec![Vec::new(); objects.len() * objects.len()];
        for (i, a) in arrows.iter().enumerate() {
            homs[(a.src * n + a.dst) as usize].push(i as u32);
        }
        let mut cat = FiniteCategory {
            objects,
            arrows,
            ids,
            table,
            homs,
        };
        for (i, a) in cat.arrows.iter().enumerate() {
            let i = i as u32;
            cat.table.entry((cat.ids[a.dst as usize], i)).or_insert(i);
            cat.table.entry((i, cat.ids[a.src as usize])).or_insert(i);
        }
        cat.validate()?;
        Ok(cat)
    }

    fn validate(&self) -> Result<()> {
        for (g, ga) in self.arrows.iter().enumerate() {
            for (f, fa) in self.arrows.iter().enumerate() {
                if fa.dst != ga.src {
                    continue;
                }
                if !self.table.contains_key(&(g as u32, f as u32)) {
                    return domain(format!("composite {} ∘ {} is missing", ga.name, fa.name));
                }
            }
        }
        for (i, a) in self.arrows.iter().enumerate() {
            let i = i as u32;
            if self.compose(self.ids[a.dst as usize], i) != Some(i) || self.compose(i, self.ids[a.src as usize]) != Some(i) {
                return domain(format!("identity law fails for {}", a.name));
            }
        }
        for h in 0..self.arrows.len() as u32 {
            for g in self.homs_into(self.arrows[h as usize].src) {
                for f in self.homs_into(self.arrows[g as usize].src) {
                    let l = self.compose(self.compose(h, g).unwrap(), f);
                    let r = self.compose(h, self.compose(g, f).unwrap());
                    if l != r {
                        return domain(format!(
                            "associativity fails for {}, {}, {}",
                            self.arrows[h as usize].name, self.arrows[g as usize].name, self.arrows[f as usize].name
                        ));
                    }
                }
            }
        }
        Ok(())
    }

    fn homs_into(&self, b: u32) -> Vec<u32> {
        (0..self.arrows.len() as u32)
            .filter(|&f| self.arrows[f as usize].dst == b)
            .collect()
    }

    /// The poset `0 < 1 < … < n`.
    pub fn chain(n: usize) -> FiniteCategory {
        let objects: Vec<String> = (0..=n).map(|i| i.to_string()).collect();
        let mut arrows = Vec::new();
        let mut id = HashMap::new();
        for i in 0..=n {
            for j in i..=n {
                id.insert((i, j), arrows.len() as u32);
                arrows.push(Arrow {
                    src: i as u32,
                    dst: j as u32,
                    name: if i == j { format!("id{i}") } else { format!("{i}<{j}") },
                });
            }
        }
        let mut comp = Vec::new();
        for i in 0..=n {
            for j in i..=n {
                for k in j..=n {
                    comp.push((id[&(j, k)], id[&(i, j)], id[&(i, k)]));
                }
            }
        }
        let ids = (0..=n).map(|i| id[&(i, i)]).collect();
        FiniteCategory::new(objects, arrows, ids, &comp).expect("chain is a category")
    }

    /// Two objects and two parallel arrows `a, b: 0 → 1`.
    pub fn parallel_pair() -> FiniteCategory {
        let arrows = vec![
            Arrow { src: 0, dst: 0, name: "id0".into() },
            Arrow { src: 1, dst: 1, name: "id1".into() },
            Arrow { src: 0, dst: 1, name: "a".into() },
            Arrow { src: 0, dst: 1, name: "b".into() },
        ];
        FiniteCategory::new(vec!["0".into(), "1".into()], arrows, vec![0, 1], &[]).expect("parallel pair is a category")
    }

    /// The cyclic group of order `n` as a one-object category.
    pub fn cyclic_group(n: usize) -> FiniteCategory {
        let arrows = (0..n)
            .map(|i| Arrow { src: 0, dst: 0, name: if i == 0 { "e".into() } else { format!("t{i}") } })
            .collect();
        let mut comp = Vec::new();
        for g in 0..n {
            for f in 0..n {
                comp.push((g as u32, f as u32, ((g + f) % n) as u32));
            }
        }
        FiniteCategory::new(vec!["*".into()], arrows, vec![0], &comp).expect("a group is a category")
    }

    /// The thin groupoid on `n` objects: exactly one arrow between any two.
    pub fn thin_groupoid(n: usize) -> FiniteCategory {
        let mut arrows = Vec::new();
        for a in 0..n {
            for b in 0..n {
                let name = if a == b { format!("id{a}") } else { format!("{a}~{b}") };
                arrows.push(Arrow { src: a as u32, dst: b as u32, name });
            }
        }
        let at = |a: usize, b: usize| (a * n + b) as u32;
        let mut comp = Vec::new();
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    comp.push((at(b, c), at(a, b), at(a, c)));
                }
            }
        }
        let ids = (0..n).map(|a| at(a, a)).collect();
        FiniteCategory::new((0..n).map(|i| i.to_string()).collect(), arrows, ids, &comp).expect("thin groupoid")
    }

    pub fn discrete(n: usize) -> FiniteCategory {
        let arrows = (0..n)
            .map(|i| Arrow { src: i as u32, dst: i as u32, name: format!("id{i}") })
            .collect();
        FiniteCategory::new((0..n).map(|i| i.to_string()).collect(), arrows, (0..n as u32).collect(), &[])
            .expect("discrete category")
    }

    pub fn object_count(&self) -> usize {
        self.objects.len()
    }

    pub fn object_name(&self, a: usize) -> &str {
        &self.objects[a]
    }

    pub fn objects(&self) -> &[String] {
        &self.objects
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn arrow(&self, f: u32) -> &Arrow {
        &self.arrows[f as usize]
    }

    pub fn identity(&self, a: usize) -> u32 {
        self.ids[a]
    }

    pub fn hom(&self, a: usize, b: usize) -> &[u32] {
        &self.homs[a * self.objects.len() + b]
    }

    pub fn compose(&self, g: u32, f: u32) -> Option<u32> {
        self.table.get(&(g, f)).copied()
    }

    /// Composition triples `(g, f, g∘f)` in a deterministic order.
    pub fn composition_table(&self) -> Vec<(u32, u32, u32)> {
        let mut t: Vec<_> = self.table.iter().map(|(&(g, f), &h)| (g, f, h)).collect();
        t.sort();
        t
    }

    pub fn inverse(&self, f: u32) -> Option<u32> {
        let a = &self.arrows[f as usize];
        self.hom(a.dst as usize, a.src as usize).iter().copied().find(|&g| {
            self.compose(g, f) == Some(self.ids[a.src as usize]) && self.compose(f, g) == Some(self.ids[a.dst as usize])
        })
    }

    pub fn initial_object(&self) -> Option<usize> {
        let n = self.objects.len();
        (0..n).find(|&a| (0..n).all(|b| self.hom(a, b).len() == 1))
    }

    pub fn terminal_object(&self) -> Option<usize> {
        let n = self.objects.len();
        (0..n).find(|&b| (0..n).all(|a| self.hom(a, b).len() == 1))
    }

    /// The nerve truncated at `d`.
    pub fn nerve(&self, d: usize, cfg: &Config) -> Result<SimplicialSet> {
        Ok(SimplicialSet::build(&NerveModel { c: self }, d, cfg)?.0)
    }

    /// Whether `(objects, arrows)` maps `self` isomorphically onto `other`.
    pub fn is_isomorphism(&self, other: &FiniteCategory, objects: &[usize], arrows: &[u32]) -> bool {
        if objects.len() != self.objects.len() || arrows.len() != self.arrows.len() {
            return false;
        }
        if self.objects.len() != other.objects.len() || self.arrows.len() != other.arrows.len() {
            return false;
        }
        let mut seen_o = vec![false; other.objects.len()];
        for &o in objects {
            if o >= seen_o.len() || std::mem::replace(&mut seen_o[o], true) {
                return false;
            }
        }
        let mut seen_a = vec![false; other.arrows.len()];
        for &a in arrows {
            if a as usize >= seen_a.len() || std::mem::replace(&mut seen_a[a as usize], true) {
                return false;
            }
        }
        for (f, a) in self.arrows.iter().enumerate() {
            let b = &other.arrows[arrows[f] as usize];
            if objects[a.src as usize] != b.src as usize || objects[a.dst as usize] != b.dst as usize {
                return false;
            }
        }
        if (0..self.objects.len()).any(|o| arrows[self.ids[o] as usize] != other.ids[objects[o]]) {
            return false;
        }
        self.table
            .iter()
            .all(|(&(g, f), &h)| other.compose(arrows[g as usize], arrows[f as usize]) == Some(arrows[h as usize]))
    }
}

/// A `k`-simplex of the nerve: a start object and `k` composable arrows.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
struct Path {
    start: u32,
    arrows: Vec<u32>,
}

struct NerveModel<'a> {
    c: &'a FiniteCategory,
}

impl SimplexModel for NerveModel<'_> {
    type Simplex = Path;

    fn simplices(&self, k: usize) -> Result<Vec<Path>> {
        let mut out: Vec<Path> = (0..self.c.object_count() as u32)
            .map(|o| Path { start: o, arrows: Vec::new() })
            .collect();
        for _ in 0..k {
            let mut next = Vec::new();
            for p in &out {
                let end = p.arrows.last().map_or(p.start, |&f| self.c.arrow(f).dst);
                for b in 0..self.c.object_count() {
                    for &f in self.c.hom(end as usize, b) {
                        let mut q = p.clone();
                        q.arrows.push(f);
                        next.push(q);
                    }
                }
            }
            out = next;
        }
        Ok(out)
    }

    fn face(&self, k: usize, s: &Path, i: usize) -> Path {
        let mut a = s.arrows.clone();
        if i == 0 {
            let f = a.remove(0);
            Path { start: self.c.arrow(f).dst, arrows: a }
        } else if i == k {
            a.pop();
            Path { start: s.start, arrows: a }
        } else {
            let f = a.remove(i - 1);
            a[i - 1] = self.c.compose(a[i - 1], f).expect("composable");
            Path { start: s.start, arrows: a }
        }
    }

    fn degen(&self, _k: usize, s: &Path, i: usize) -> Path {
        let mut a = s.arrows.clone();
        let obj = if i == 0 { s.start } else { self.c.arrow(a[i - 1]).dst };
        a.insert(i, self.c.identity(obj as usize));
        Path { start: s.start, arrows: a }
    }

    fn name(&self, _k: usize, s: &Path) -> Option<String> {
        if s.arrows.is_empty() {
            return Some(self.c.object_name(s.start as usize).to_string());
        }
        Some(s.arrows.iter().map(|&f| self.c.arrow(f).name.clone()).collect::<Vec<_>>().join(","))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::homology::homology_groups;

    #[test]
    fn chain_has_initial_and_terminal() {
        let c = FiniteCategory::chain(2);
        assert_eq!(c.arrows().len(), 6);
        assert_eq!(c.initial_object(), Some(0));
        assert_eq!(c.terminal_object(), Some(2));
    }

    #[test]
    fn group_arrows_invert() {
        let g = FiniteCategory::cyclic_group(3);
        assert_eq!(g.inverse(1), Some(2));
        assert_eq!(g.initial_object(), None);
    }

    #[test]
    fn parallel_pair_nerve_is_a_circle() {
        let cfg = Config::default();
        let p = FiniteCategory::parallel_pair();
        let n = p.nerve(2, &cfg).unwrap();
        assert_eq!(n.nondegenerate(1).len(), 2);
        let h = homology_groups(&n, 1).unwrap();
        assert_eq!(h[1].betti, 1);
    }

    #[test]
    fn rejects_bad_associativity() {
        let arrows = ["1", "x", "y"]
            .iter()
            .map(|n| Arrow { src: 0, dst: 0, name: n.to_string() })
            .collect();
        let table = [(1, 1, 2), (1, 2, 1), (2, 1, 2), (2, 2, 2)];
        let bad = FiniteCategory::new(vec!["*".into()], arrows, vec![0], &table);
        assert!(bad.is_err());
    }
}
