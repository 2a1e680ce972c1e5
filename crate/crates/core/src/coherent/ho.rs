use super::nerve::coherent_nerve;
use crate::cset::UnionFind;
use crate::enriched::{ho, Arrow, CubicalCategory, FiniteCategory};
use crate::error::{domain, Error, Result};
use crate::exec::Config;
use crate::report::{Check, Verdict};
use crate::simplicial::SimplicialSet;
use std::collections::HashMap;

/// `Ho X`, presented by 1-simplices and 2-simplices, when every composable
/// pair of edge classes is the boundary of a 2-simplex.
pub struct SimplicialHo {
    pub category: FiniteCategory,
    /// Arrow of each 1-simplex.
    pub arrow_of_edge: Vec<u32>,
}

/// Congruence closure of `d₀σ ∘ d₂σ ~ d₁σ` over 2-simplices `σ`, with
/// degenerate edges as identities.
pub fn simplicial_ho(x: &SimplicialSet, cfg: &Config) -> Result<SimplicialHo> {
    if x.max_dim() < 2 {
        return Err(Error::Truncation("the homotopy category needs 2-simplices".into()));
    }
    let ne = x.count(1);
    let src = |e: usize| x.face(1, e as u32, 1) as usize;
    let dst = |e: usize| x.face(1, e as u32, 0) as usize;
    let tris: Vec<(usize, usize, usize)> = (0..x.count(2) as u32)
        .map(|t| (x.face(2, t, 0) as usize, x.face(2, t, 2) as usize, x.face(2, t, 1) as usize))
        .collect();
    let mut uf = UnionFind::new(ne);
    let mut rounds = 0;
    let table = loop {
        rounds += 1;
        cfg.check("relation closure rounds", rounds * (tris.len() + 1))?;
        let mut changed = false;
        let mut table: HashMap<(usize, usize), usize> = HashMap::new();
        for &(g, f, h) in &tris {
            let key = (uf.find(g), uf.find(f));
            let h = uf.find(h);
            match table.get(&key) {
                Some(&h2) if h2 != h => {
                    uf.union(h, h2);
                    changed = true;
                }
                Some(_) => {}
                None => {
                    table.insert(key, h);
                }
            }
        }
        if changed {
            continue;
        }
        let classes: Vec<usize> = (0..ne).filter(|&e| uf.find(e) == e).collect();
        let mut by_src: HashMap<usize, Vec<usize>> = HashMap::new();
        for &c in &classes {
            by_src.entry(src(c)).or_default().push(c);
        }
        let empty = Vec::new();
        for &f in &classes {
            for &g in by_src.get(&dst(f)).unwrap_or(&empty) {
                if !table.contains_key(&(g, f)) {
                    return domain(format!(
                        "{} ∘ {} bounds no 2-simplex; the presentation is not finite",
                        x.name(1, g as u32),
                        x.name(1, f as u32)
                    ));
                }
            }
        }
        for &f in &classes {
            for &g in by_src.get(&dst(f)).unwrap_or(&empty) {
                for &h in by_src.get(&dst(g)).unwrap_or(&empty) {
                    let l = table[&(uf.find(table[&(h, g)]), f)];
                    let r = table[&(h, uf.find(table[&(g, f)]))];
                    if uf.find(l) != uf.find(r) {
                        uf.union(l, r);
                        changed = true;
                    }
                }
            }
        }
        if !changed {
            break table;
        }
    };
    let mut arrow_id: HashMap<usize, u32> = HashMap::new();
    let mut arrows = Vec::new();
    for e in 0..ne {
        let r = uf.find(e);
        arrow_id.entry(r).or_insert_with(|| {
            arrows.push(Arrow {
                src: src(r) as u32,
                dst: dst(r) as u32,
                name: x.name(1, e as u32),
            });
            (arrows.len() - 1) as u32
        });
    }
    let arrow_of_edge: Vec<u32> = (0..ne).map(|e| arrow_id[&uf.find(e)]).collect();
    let ids = (0..x.count(0) as u32).map(|v| arrow_of_edge[x.degen(0, v, 0) as usize]).collect();
    let comp: Vec<(u32, u32, u32)> = table
        .iter()
        .map(|(&(g, f), &h)| (arrow_of_edge[g], arrow_of_edge[f], arrow_of_edge[h]))
        .collect();
    let objects = (0..x.count(0) as u32).map(|v| x.name(0, v)).collect();
    let category = FiniteCategory::new(objects, arrows, ids, &comp)?;
    Ok(SimplicialHo { category, arrow_of_edge })
}

/// `Ho C ≅ Ho N_□C` via `Φ[f] = [f]` and `Ψ[f] = [f]`, with both functors
/// checked well defined, functorial and mutually inverse.
pub fn ho_nerve_iso_check<C: CubicalCategory>(cat: &C, cfg: &Config) -> Result<Vec<Check>> {
    if cat.truncation() < 1 {
        return Err(Error::Truncation("2-simplices of the nerve need 1-cubes".into()));
    }
    let nerve = coherent_nerve(cat, 2, cfg)?;
    let m = &nerve.category;
    let hn = simplicial_ho(&nerve.set, cfg)?;
    let hc = ho(m, cfg)?;
    let mut checks = Vec::new();
    let objects: Vec<usize> = nerve.simplices[0].iter().map(|s| s.objects[0] as usize).collect();
    let mut obj_inv = vec![usize::MAX; cat.object_count()];
    for (v, &o) in objects.iter().enumerate() {
        obj_inv[o] = v;
    }
    checks.push(Check::new(
        "N_□C has the objects of C as vertices",
        Verdict::from_bool(obj_inv.iter().all(|&v| v != usize::MAX), || "an object is missing".into()),
    ));
    let mut edge_of: HashMap<(usize, usize, u32), usize> = HashMap::new();
    for (e, s) in nerve.simplices[1].iter().enumerate() {
        edge_of.insert((s.objects[0] as usize, s.objects[1] as usize, s.top(0, 1)), e);
    }
    let phi: Vec<u32> = hc
        .category
        .arrows()
        .iter()
        .zip(&hc.reps)
        .map(|(a, r)| hn.arrow_of_edge[edge_of[&(a.src as usize, a.dst as usize, *r)]])
        .collect();
    let mut psi = vec![u32::MAX; hn.category.arrows().len()];
    let mut phi_ok = true;
    let mut psi_ok = true;
    for (e, s) in nerve.simplices[1].iter().enumerate() {
        let (a, b) = (s.objects[0] as usize, s.objects[1] as usize);
        let c = hc.class_of(a, b, &s.top(0, 1)).expect("0-cube has a class");
        let n = hn.arrow_of_edge[e];
        phi_ok &= phi[c as usize] == n;
        if psi[n as usize] == u32::MAX {
            psi[n as usize] = c;
        }
        psi_ok &= psi[n as usize] == c;
    }
    checks.push(Check::new(
        "Φ is well defined: homotopic 0-cubes are identified in Ho N_□C",
        Verdict::from_bool(phi_ok, || "two homotopic 0-cubes give different classes".into()),
    ));
    checks.push(Check::new(
        "Ψ is well defined on the generating 1-simplices",
        Verdict::from_bool(psi_ok, || "a class of 1-simplices meets two components".into()),
    ));
    let back: Vec<usize> = (0..objects.len()).map(|v| objects[v]).collect();
    checks.push(Check::new(
        "Φ is a functor and an isomorphism Ho C → Ho N_□C",
        Verdict::from_bool(hc.category.is_isomorphism(&hn.category, &obj_inv, &phi), || {
            "Φ fails on objects, identities or composites".into()
        }),
    ));
    checks.push(Check::new(
        "Ψ is a functor Ho N_□C → Ho C",
        Verdict::from_bool(psi_ok && hn.category.is_isomorphism(&hc.category, &back, &psi), || {
            "Ψ fails on objects, identities or composites".into()
        }),
    ));
    let round_c = phi.iter().enumerate().all(|(c, &n)| psi.get(n as usize) == Some(&(c as u32)));
    let round_n = psi.iter().enumerate().all(|(n, &c)| phi.get(c as usize) == Some(&(n as u32)));
    checks.push(Check::new(
        "Ψ ∘ Φ = id and Φ ∘ Ψ = id on generators",
        Verdict::from_bool(round_c && round_n, || "a composite moves a generator".into()),
    ));
    Ok(checks)
}
