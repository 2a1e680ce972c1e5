use crate::cset::{CubicalMap, CubicalSet};
use crate::error::Result;
use crate::exec::Config;
use crate::geom::{diagonal, BicubicalSet, DiscreteRows};
use crate::graphs::{graph_nerve_unnamed, hom_graph, homotopy_classes, Graph, GraphNerve};
use crate::report::{overall, Check, Verdict};
use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ShadowReport {
    pub components: usize,
    pub classes: usize,
    pub checks: Vec<Check>,
}

impl ShadowReport {
    pub fn verdict(&self) -> Verdict {
        overall(&self.checks)
    }
}

/// Whether two labellings of the same vertices give the same partition.
fn same_partition(a: &[usize], b: &[usize]) -> bool {
    let mut ab = std::collections::HashMap::new();
    let mut ba = std::collections::HashMap::new();
    a.iter().zip(b).all(|(&x, &y)| *ab.entry(x).or_insert(y) == y && *ba.entry(y).or_insert(x) == x)
}

/// `π₀ N^G_m hom(X, Y) ↔ [X, Y]`, and the same at level `m + 1` with `l^*`
/// and `r^*` inducing the identity of `[X, Y]`. Nerves are truncated at 1,
/// which determines π₀.
pub fn graph_localization_shadow(x: &Graph, y: &Graph, m: usize, cfg: &Config) -> Result<ShadowReport> {
    let hom = hom_graph(x, y, cfg)?;
    let classes = homotopy_classes(x, y, cfg)?;
    let class_of: Vec<usize> = hom
        .maps
        .iter()
        .map(|f| classes.class_of(f).expect("every map has a class"))
        .collect();
    let nm = graph_nerve_unnamed(&hom.graph, m, 1, cfg)?;
    let nm1 = graph_nerve_unnamed(&hom.graph, m + 1, 1, cfg)?;
    // vertex v of the nerve is the constant grid at hom vertex v
    let vertex = |n: &GraphNerve, v: usize| n.cube(0, v as u32)[0] as usize;
    let labels = |n: &GraphNerve| {
        let p = n.set.pi0();
        let mut by_hom = vec![0; hom.graph.order()];
        for (v, &c) in p.iter().enumerate() {
            by_hom[vertex(n, v)] = c;
        }
        by_hom
    };
    let (lm, lm1) = (labels(&nm), labels(&nm1));
    let components = nm.set.pi0_count();
    let mut checks = vec![Check::new(
        format!("π₀ N^G_{m} hom(X, Y) ↔ homotopy classes ({components} ↔ {})", classes.count()),
        Verdict::from_bool(components == classes.count() && same_partition(&lm, &class_of), || {
            format!("{components} components against {} classes", classes.count())
        }),
    )];
    let mut stable = same_partition(&lm, &lm1);
    let mut detail = String::from("components change from level m to m + 1");
    for (name, map) in [("l*", nm.l_star(&nm1)?), ("r*", nm.r_star(&nm1)?)] {
        if let Err(e) = map.check_natural(&nm.set, &nm1.set) {
            stable = false;
            detail = format!("{name} is not a cubical map: {e}");
        } else if (0..nm.set.count(0)).any(|v| class_of[vertex(&nm1, map.at(0, v as u32) as usize)] != class_of[vertex(&nm, v)]) {
            stable = false;
            detail = format!("{name} moves a homotopy class");
        }
    }
    checks.push(Check::new(
        format!("l*, r*: N^G_{m} → N^G_{} commute with the bijection", m + 1),
        Verdict::from_bool(stable, || detail.clone()),
    ));
    Ok(ShadowReport {
        components,
        classes: classes.count(),
        checks,
    })
}

/// The levelwise-discrete bicubical set `[1]^m ↦ X_m` has diagonal `X`.
pub fn diagonal_identity_check(x: &CubicalSet, cfg: &Config) -> Result<Vec<Check>> {
    let d = x.max_dim();
    let b = BicubicalSet::from_model(&DiscreteRows(x), d, d, cfg)?;
    let diag = diagonal(&b, cfg)?;
    let id = CubicalMap::identity(x);
    let iso = diag.counts() == x.counts() && id.check_natural(&diag, x).is_ok() && id.check_natural(x, &diag).is_ok();
    let names = !x.has_names() || (0..=d).all(|k| (0..x.count(k) as u32).all(|c| diag.name(k, c) == x.name(k, c)));
    let by_rows = b.pi0_by_rows();
    let by_diag = diag.pi0();
    Ok(vec![
        Check::new(
            format!("diag([1]^m ↦ X_m) ≅ X by identifiers, within truncation {d}"),
            Verdict::from_bool(iso && names, || {
                if iso { "names differ".into() } else { "structure maps differ".into() }
            }),
        ),
        Check::new(
            "π₀ of the diagonal agrees with π₀ glued from row 0",
            Verdict::from_bool(same_partition(&by_rows, &by_diag), || "component partitions differ".into()),
        ),
    ])
}
