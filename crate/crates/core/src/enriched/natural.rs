use super::{act_morphism, mapping_space, verify_functor, CoherenceReport, CubicalCategory, CubicalFunctor};
use crate::cset::{standard_cell, CellKind, CubicalMap};
use crate::error::{domain, Result};
use crate::exec::Config;
use crate::geom::tensor;
use crate::report::{Check, Verdict};

/// Components `α_X ∈ D(FX, GX)_0` of a transformation `F ⇒ G`.
pub struct NaturalTransformation<Y> {
    pub components: Vec<Y>,
}

/// `C × [1]`: objects `(x, i)` at index `2x + i`, with
/// `(C × [1])((x, i), (y, j)) = C(x, y) ⊗ [1](i, j)`, which is `C(x, y)` for
/// `i ≤ j` and empty otherwise.
pub struct ArrowProduct<'a, C> {
    pub base: &'a C,
}

impl<C: CubicalCategory> CubicalCategory for ArrowProduct<'_, C> {
    type Cube = C::Cube;

    fn object_count(&self) -> usize {
        2 * self.base.object_count()
    }

    fn object_name(&self, a: usize) -> String {
        format!("({}, {})", self.base.object_name(a / 2), a % 2)
    }

    fn truncation(&self) -> usize {
        self.base.truncation()
    }

    fn cubes(&self, a: usize, b: usize, k: usize, cfg: &Config) -> Result<Vec<C::Cube>> {
        if a % 2 > b % 2 {
            return Ok(Vec::new());
        }
        self.base.cubes(a / 2, b / 2, k, cfg)
    }

    fn contains(&self, a: usize, b: usize, k: usize, c: &C::Cube) -> bool {
        a % 2 <= b % 2 && self.base.contains(a / 2, b / 2, k, c)
    }

    fn face(&self, a: usize, b: usize, k: usize, c: &C::Cube, i: usize, eps: u8) -> C::Cube {
        self.base.face(a / 2, b / 2, k, c, i, eps)
    }

    fn degen(&self, a: usize, b: usize, k: usize, c: &C::Cube, i: usize) -> C::Cube {
        self.base.degen(a / 2, b / 2, k, c, i)
    }

    fn conn(&self, a: usize, b: usize, k: usize, c: &C::Cube, i: usize, eps: u8) -> C::Cube {
        self.base.conn(a / 2, b / 2, k, c, i, eps)
    }

    fn identity(&self, a: usize) -> C::Cube {
        self.base.identity(a / 2)
    }

    fn compose(&self, a: usize, b: usize, c: usize, j: usize, g: &C::Cube, k: usize, f: &C::Cube) -> C::Cube {
        self.base.compose(a / 2, b / 2, c / 2, j, g, k, f)
    }

    fn cube_name(&self, a: usize, b: usize, k: usize, c: &C::Cube) -> String {
        self.base.cube_name(a / 2, b / 2, k, c)
    }
}

/// Check the naturality square `α_Y ∘ Fφ = Gφ ∘ α_X` on every cube within
/// the truncation, then realize `α` as a functor `C × [1] → D` and check it.
pub fn verify_natural_transformation<C: CubicalCategory, D: CubicalCategory>(
    c: &C,
    d: &D,
    f: &CubicalFunctor<'_, C::Cube, D::Cube>,
    g: &CubicalFunctor<'_, C::Cube, D::Cube>,
    alpha: &NaturalTransformation<D::Cube>,
    cfg: &Config,
) -> Result<Vec<Check>> {
    let n = c.object_count();
    if alpha.components.len() != n {
        return domain("one component per object is needed");
    }
    let mut checks = Vec::new();
    let comp_ok = (0..n).all(|x| d.contains(f.objects[x], g.objects[x], 0, &alpha.components[x]));
    checks.push(Check::new(
        "components are 0-cubes D(FX, GX)",
        Verdict::from_bool(comp_ok, || "a component is not a 0-cube".into()),
    ));
    if !comp_ok {
        return Ok(checks);
    }
    let t = c.truncation().min(d.truncation());
    let mut failures = Vec::new();
    let mut checked = 0;
    for x in 0..n {
        for y in 0..n {
            let (fx, fy, gx, gy) = (f.objects[x], f.objects[y], g.objects[x], g.objects[y]);
            for k in 0..=t {
                for phi in c.cubes(x, y, k, cfg)? {
                    let lhs = d.compose(fx, fy, gy, 0, &alpha.components[y], k, &f.apply(x, y, k, &phi));
                    let rhs = d.compose(fx, gx, gy, k, &g.apply(x, y, k, &phi), 0, &alpha.components[x]);
                    checked += 1;
                    if lhs != rhs && failures.len() < 10 {
                        failures.push(format!("square fails at {}", c.cube_name(x, y, k, &phi)));
                    }
                }
            }
        }
    }
    checks.push(Check::new(
        format!("naturality squares ({checked} cubes, verified within truncation {t})"),
        Verdict::from_bool(failures.is_empty(), || failures.join("; ")),
    ));
    let prod = ArrowProduct { base: c };
    let objects = (0..2 * n)
        .map(|o| if o % 2 == 0 { f.objects[o / 2] } else { g.objects[o / 2] })
        .collect();
    let h = CubicalFunctor::new(objects, |a, b, k, phi: &C::Cube| match (a % 2, b % 2) {
        (0, 0) => f.apply(a / 2, b / 2, k, phi),
        (1, 1) => g.apply(a / 2, b / 2, k, phi),
        _ => d.compose(
            f.objects[a / 2],
            f.objects[b / 2],
            g.objects[b / 2],
            0,
            &alpha.components[b / 2],
            k,
            &f.apply(a / 2, b / 2, k, phi),
        ),
    });
    let r: CoherenceReport = verify_functor(&prod, d, &h, cfg)?;
    checks.push(r.check("α realized as a functor C × [1] → D"));
    Ok(checks)
}

/// For a 1-cube `H: f ⇝ g` of `C(x, y)`, the homotopy
/// `□¹ ⊗ C(w, x) → C(w, y)`, `(μ, φ) ↦ (H·μ) ∘ φ`, checked to be a cubical
/// map restricting to `f_*` and `g_*`.
pub fn postcomposition_homotopy<C: CubicalCategory>(
    cat: &C,
    w: usize,
    x: usize,
    y: usize,
    h: &C::Cube,
    cfg: &Config,
) -> Result<Vec<Check>> {
    whisker(cat, w, x, y, h, true, cfg)
}

/// For a 1-cube `H: f ⇝ g` of `C(x, y)`, the homotopy
/// `C(y, w) ⊗ □¹ → C(x, w)`, `(ψ, μ) ↦ ψ ∘ (H·μ)`.
pub fn precomposition_homotopy<C: CubicalCategory>(
    cat: &C,
    w: usize,
    x: usize,
    y: usize,
    h: &C::Cube,
    cfg: &Config,
) -> Result<Vec<Check>> {
    whisker(cat, w, x, y, h, false, cfg)
}

fn whisker<C: CubicalCategory>(
    cat: &C,
    w: usize,
    x: usize,
    y: usize,
    h: &C::Cube,
    post: bool,
    cfg: &Config,
) -> Result<Vec<Check>> {
    let d = cat.truncation();
    if d < 1 || !cat.contains(x, y, 1, h) {
        return domain("H must be a 1-cube of C(x, y)");
    }
    let (s0, s1) = if post { ((w, x), (w, y)) } else { ((y, w), (x, w)) };
    let src = mapping_space(cat, s0.0, s0.1, d, cfg)?;
    let dst = mapping_space(cat, s1.0, s1.1, d, cfg)?;
    let interval = standard_cell(CellKind::Cube, 1, d, cfg)?;
    let t = if post {
        tensor(&interval.set, &src.set, cfg)?
    } else {
        tensor(&src.set, &interval.set, cfg)?
    };
    let mut images = Vec::new();
    let mut missing = false;
    for k in 0..=t.set.max_dim() {
        let mut row = Vec::new();
        for c in &t.cubes[k] {
            let m = c.m as usize;
            let img = if post {
                let mu = &interval.cubes[m][c.x as usize];
                let hm = act_morphism(cat, x, y, h, mu).expect("within truncation");
                cat.compose(w, x, y, m, &hm, k - m, src.cube(k - m, c.y))
            } else {
                let mu = &interval.cubes[k - m][c.y as usize];
                let hm = act_morphism(cat, x, y, h, mu).expect("within truncation");
                cat.compose(x, y, w, m, src.cube(m, c.x), k - m, &hm)
            };
            match dst.index_of(k, &img) {
                Some(i) => row.push(i),
                None => {
                    missing = true;
                    row.push(0);
                }
            }
        }
        images.push(row);
    }
    let map = CubicalMap { images };
    let label = if post { "postcomposition f_* ∼ g_*" } else { "precomposition f^* ∼ g^*" };
    let mut checks = vec![Check::new(
        format!("{label} is a cubical map (verified within truncation {d})"),
        if missing {
            Verdict::Fail("an image is not a cube of the target".into())
        } else {
            match map.check_natural(&t.set, &dst.set) {
                Ok(()) => Verdict::Pass,
                Err(e) => Verdict::Fail(e),
            }
        },
    )];
    let (f, g) = (cat.face(x, y, 1, h, 1, 0), cat.face(x, y, 1, h, 1, 1));
    let mut ends_ok = !missing;
    for k in 0..=t.set.max_dim() {
        for (i, phi) in src.cubes[k].iter().enumerate() {
            if !ends_ok {
                break;
            }
            for (e, end) in [(0u32, &f), (1, &g)] {
                let v = interval.index_of(&crate::cube::BoxMorphism::from_word(0, &[crate::cube::face(1, e as u8)]).unwrap());
                let Some(v) = v else { continue };
                let cell = if post {
                    t.lookup(&interval.set, &src.set, 0, v, k, i as u32)
                } else {
                    t.lookup(&src.set, &interval.set, k, i as u32, 0, v)
                };
                let Some(cell) = cell else { continue };
                let want = if post {
                    cat.compose(w, x, y, 0, end, k, phi)
                } else {
                    cat.compose(x, y, w, k, phi, 0, end)
                };
                if dst.index_of(k, &want) != Some(map.at(k, cell)) {
                    ends_ok = false;
                }
            }
        }
    }
    checks.push(Check::new(
        format!("{label} restricts to the endpoint whiskerings"),
        Verdict::from_bool(ends_ok, || "an endpoint restriction differs".into()),
    ));
    Ok(checks)
}
