//! Command-line front end for `cubix`.
//!
//! [`run`] parses arguments, executes one verb and returns the exit code with
//! the rendered report, so the binary and the tests share one code path.

use clap::{Args, Parser, Subcommand};
use cubix::cset::{kan_box_check, standard_cell, CellKind, CubicalSet};
use cubix::cube::{all_morphisms, cubical_identities, normal_form, parse_map_spec, word_to_string, Membership};
use cubix::dmsl::{diagonal_identity_check, graph_localization_shadow, graph_resolution, GraphDiagram, GraphTest};
use cubix::enriched::{
    check_axioms, connection_homotopy_check, is_homotopy_equivalence_enriched, mapping_space, sk0, suspension,
    CotensorTower, CubicalCategory, FiniteCategory, GraphCategory,
};
use cubix::geom::{tensor, triangulate};
use cubix::graphs::{box_product, find_graph_isomorphism, graph_nerve, hom_graph, homotopy_classes, is_homotopy_equivalence, Equivalence, Graph};
use cubix::homology::cubical_homology_direct;
use cubix::simplicial::{boundary_delta, delta, spine, SimplicialSet};
use cubix::report::overall;
use cubix::{Check, Config, Error, Exec, Result, Verdict};
use serde::{Deserialize, Serialize};

/// Usage errors exit with this code.
pub const EXIT_USAGE: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "cubix", version, about = "Cubical sets with connections and graph homotopy")]
pub struct Cli {
    /// Emit the report as JSON.
    #[arg(long, global = true)]
    pub json: bool,
    /// Run every kernel on one thread.
    #[arg(long, global = true)]
    pub sequential: bool,
    /// Cap on enumerated cells (overrides CUBIX_MAX_CELLS).
    #[arg(long, global = true)]
    pub max_cells: Option<usize>,
    /// Truncation dimension.
    #[arg(long, global = true, default_value_t = 2)]
    pub trunc: usize,
    /// Homotopy search bound.
    #[arg(long, global = true, default_value_t = 4)]
    pub bound: usize,
    #[command(subcommand)]
    pub verb: Verb,
}

#[derive(Subcommand, Debug)]
pub enum Verb {
    /// Maps of the box category.
    #[command(subcommand)]
    Cube(CubeCmd),
    /// Finite cubical sets.
    #[command(subcommand)]
    Cset(CsetCmd),
    /// Reflexive graphs.
    #[command(subcommand)]
    Graph(GraphCmd),
    /// Graph nerves N^G_m.
    #[command(subcommand)]
    Nerve(NerveCmd),
    /// Cubically enriched categories.
    #[command(subcommand)]
    Enriched(EnrichedCmd),
    /// Resolutions and their shadows.
    #[command(subcommand)]
    Dmsl(DmslCmd),
}

#[derive(Subcommand, Debug)]
pub enum CubeCmd {
    /// Canonical word of a vertex map, e.g. `max2`, `2:g(1,0)` or `2>1:0,1,1,1`.
    NormalForm {
        #[arg(long)]
        map: String,
    },
    /// Verify the cubical identities up to an ambient dimension.
    Identities {
        #[arg(long, default_value_t = 5)]
        max_dim: usize,
    },
    /// List the box maps `[1]^src → [1]^dst`.
    Morphisms {
        #[arg(long)]
        src: usize,
        #[arg(long)]
        dst: usize,
    },
}

#[derive(Args, Debug)]
pub struct SetArg {
    /// `cube:N`, `boundary:N`, `box:N:I:E`, `nerve:GRAPH:M` or a JSON file.
    #[arg(long)]
    pub set: String,
}

#[derive(Subcommand, Debug)]
pub enum CsetCmd {
    /// Cube counts and the JSON encoding.
    Show(SetArg),
    /// Search for unfilled open boxes.
    Kan {
        #[command(flatten)]
        set: SetArg,
        #[arg(long, default_value_t = 1)]
        up_to: usize,
    },
    /// Integral homology on normalized cubical chains.
    Homology {
        #[command(flatten)]
        set: SetArg,
        #[arg(long, default_value_t = 1)]
        up_to: usize,
    },
    /// Path components.
    Pi0(SetArg),
    /// The geometric product of two sets.
    Tensor {
        #[arg(long)]
        left: String,
        #[arg(long)]
        right: String,
    },
    /// The triangulation as a simplicial set.
    Triangulate(SetArg),
}

#[derive(Args, Debug)]
pub struct PairArgs {
    /// Builder `I<n>`, `C<n>`, `K<n>` or a JSON file.
    #[arg(long)]
    pub x: String,
    #[arg(long)]
    pub y: String,
}

#[derive(Subcommand, Debug)]
pub enum GraphCmd {
    /// Vertices, edges and the JSON encoding.
    Show {
        #[arg(long)]
        graph: String,
    },
    /// The box product `X □ Y`.
    Box(PairArgs),
    /// The hom graph `hom(X, Y)`.
    Hom(PairArgs),
    /// Homotopy classes of maps `X → Y`.
    HtpyClasses(PairArgs),
    /// Decide whether a map is a homotopy equivalence.
    Equiv {
        #[command(flatten)]
        pair: PairArgs,
        /// Vertex images, comma separated.
        #[arg(long)]
        map: String,
    },
    /// Search for an isomorphism.
    Iso(PairArgs),
}

#[derive(Args, Debug)]
pub struct NerveArgs {
    #[arg(long)]
    pub graph: String,
    #[arg(long, default_value_t = 1)]
    pub m: usize,
}

#[derive(Subcommand, Debug)]
pub enum NerveCmd {
    /// `H_1` of the nerve, truncated at 2.
    H1(NerveArgs),
    /// Homology of the nerve up to a degree.
    Homology {
        #[command(flatten)]
        nerve: NerveArgs,
        #[arg(long, default_value_t = 1)]
        up_to: usize,
    },
    /// Cube counts of the truncated nerve.
    Counts(NerveArgs),
    /// Open boxes of the truncated nerve.
    Kan {
        #[command(flatten)]
        nerve: NerveArgs,
        #[arg(long, default_value_t = 1)]
        up_to: usize,
    },
}

#[derive(Args, Debug)]
pub struct CategoryArgs {
    /// Objects of Graph¹, comma separated graphs.
    #[arg(long, conflicts_with_all = ["sk0", "suspension"])]
    pub objects: Option<String>,
    /// Sk₀ of `chain:N`, `discrete:N`, `parallel`, `cyclic:N` or `groupoid:N`.
    #[arg(long, conflicts_with = "suspension")]
    pub sk0: Option<String>,
    /// Σ of a cubical set.
    #[arg(long)]
    pub suspension: Option<String>,
}

#[derive(Subcommand, Debug)]
pub enum EnrichedCmd {
    /// Connection homotopies along the Graph¹ cotensor tower.
    Tower {
        #[arg(long)]
        y: String,
        #[arg(long, default_value_t = 2)]
        n: usize,
    },
    /// Ho C ≅ Ho N_□C.
    HoIso(CategoryArgs),
    /// Composition, associativity and units.
    Axioms(CategoryArgs),
    /// Homotopy equivalence between two objects of Graph¹.
    Equiv {
        #[arg(long)]
        objects: String,
        #[arg(long)]
        from: usize,
        #[arg(long)]
        to: usize,
        #[arg(long)]
        map: String,
    },
    /// A mapping space of the rigidification.
    Rigidify {
        /// `delta:N`, `boundary:N`, `spine:N` or a JSON file.
        #[arg(long)]
        simplicial: String,
        #[arg(long)]
        from: u32,
        #[arg(long)]
        to: u32,
    },
}

#[derive(Subcommand, Debug)]
pub enum DmslCmd {
    /// Check (R1)-(R3) for a diagram under a graph in Graph¹.
    Resolution {
        #[arg(long)]
        y: String,
        /// `tower`, `constant`, `under:GRAPH:v,v,...` or `finite:SHAPE`.
        #[arg(long, default_value = "tower")]
        shape: String,
        #[arg(long, default_value_t = 2)]
        n: usize,
        /// `X>Y` (a collapse when Y has one vertex) or `X>Y:v,v,...`.
        #[arg(long = "test")]
        tests: Vec<String>,
    },
    /// π₀ of the nerve of the hom graph against homotopy classes.
    Shadow {
        #[command(flatten)]
        pair: PairArgs,
        #[arg(long, default_value_t = 1)]
        m: usize,
    },
    /// The diagonal of the levelwise-discrete bicubical set.
    Diagonal(SetArg),
}

/// Everything a verb prints.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub command: String,
    pub lines: Vec<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub checks: Vec<Check>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub verdict: Option<Verdict>,
    /// The constructed object, in its JSON encoding.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub data: Option<serde_json::Value>,
}

impl Report {
    fn new(command: &str) -> Self {
        Report {
            command: command.into(),
            lines: Vec::new(),
            checks: Vec::new(),
            verdict: None,
            data: None,
        }
    }

    fn line(mut self, l: impl Into<String>) -> Self {
        self.lines.push(l.into());
        self
    }

    fn checks(mut self, checks: Vec<Check>) -> Self {
        self.verdict = Some(overall(&checks));
        self.checks = checks;
        self
    }

    fn verdict(mut self, v: Verdict) -> Self {
        self.verdict = Some(v);
        self
    }

    fn data(mut self, d: serde_json::Value) -> Self {
        self.data = Some(d);
        self
    }

    pub fn exit_code(&self) -> i32 {
        self.verdict.as_ref().map_or(0, Verdict::exit_code)
    }

    pub fn render_text(&self) -> String {
        let mut out = String::new();
        for l in &self.lines {
            out.push_str(l);
            out.push('\n');
        }
        for c in &self.checks {
            let (tag, extra) = match &c.verdict {
                Verdict::Pass => ("pass", String::new()),
                Verdict::Fail(m) => ("FAIL", format!(": {m}")),
                Verdict::Inconclusive(m) => ("inconclusive", format!(": {m}")),
            };
            out.push_str(&format!("[{tag}] {}{extra}\n", c.name));
        }
        if !self.checks.is_empty() {
            if let Some(v) = &self.verdict {
                out.push_str(&format!("verdict: {v}\n"));
            }
        }
        out
    }
}

/// Exit code and output of one invocation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Exit code for a library error: bad input is a usage error, limits and
/// truncation are inconclusive.
pub fn error_code(e: &Error) -> i32 {
    match e {
        Error::Domain(_) | Error::Parse { .. } => EXIT_USAGE,
        Error::Resource { .. } | Error::Truncation(_) => 2,
    }
}

pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => 0,
                _ => EXIT_USAGE,
            };
            let text = e.render().to_string();
            let (stdout, stderr) = if code == 0 { (text, String::new()) } else { (String::new(), text) };
            return Outcome { code, stdout, stderr };
        }
    };
    let mut cfg = Config::default();
    if cli.sequential {
        cfg = cfg.with_exec(Exec::Sequential);
    }
    if let Some(n) = cli.max_cells {
        cfg = cfg.with_max_cells(n);
    }
    match execute(&cli, &cfg) {
        Ok(r) => Outcome {
            code: r.exit_code(),
            stdout: if cli.json {
                serde_json::to_string_pretty(&r).expect("serializable") + "\n"
            } else {
                r.render_text()
            },
            stderr: String::new(),
        },
        Err(e) => Outcome {
            code: error_code(&e),
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
        },
    }
}

fn usage<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Domain(msg.into()))
}

fn read_file(path: &str) -> Result<Option<String>> {
    let p = std::path::Path::new(path);
    if !p.is_file() {
        return Ok(None);
    }
    std::fs::read_to_string(p).map(Some).map_err(|e| Error::Domain(format!("cannot read {path}: {e}")))
}

fn number(s: &str, what: &str) -> Result<usize> {
    s.trim().parse().map_err(|_| Error::Domain(format!("bad {what} `{s}`")))
}

pub fn parse_graph(s: &str) -> Result<Graph> {
    match read_file(s)? {
        Some(text) => Graph::from_json_str(&text),
        None => Graph::builtin(s),
    }
}

pub fn parse_vertex_map(s: &str) -> Result<Vec<u32>> {
    s.split(',').map(|t| t.trim().parse::<u32>().map_err(|_| Error::Domain(format!("bad vertex `{t}`")))).collect()
}

pub fn parse_set(s: &str, trunc: usize, cfg: &Config) -> Result<CubicalSet> {
    if let Some(text) = read_file(s)? {
        return CubicalSet::from_json_str(&text, cfg);
    }
    let parts: Vec<&str> = s.split(':').collect();
    match parts.as_slice() {
        ["cube", n] => Ok(standard_cell(CellKind::Cube, number(n, "dimension")?, trunc, cfg)?.set),
        ["boundary", n] => Ok(standard_cell(CellKind::Boundary, number(n, "dimension")?, trunc, cfg)?.set),
        ["box", n, i, e] => {
            let kind = CellKind::OpenBox {
                i: number(i, "face index")?,
                eps: number(e, "face side")?.min(2) as u8,
            };
            Ok(standard_cell(kind, number(n, "dimension")?, trunc, cfg)?.set)
        }
        ["nerve", g, m] => Ok(graph_nerve(&parse_graph(g)?, number(m, "grid length")?, trunc, cfg)?.set),
        _ => usage(format!("unknown cubical set `{s}`")),
    }
}

pub fn parse_simplicial(s: &str, max_dim: usize, cfg: &Config) -> Result<SimplicialSet> {
    if let Some(text) = read_file(s)? {
        return SimplicialSet::from_json_str(&text, cfg);
    }
    match s.split_once(':') {
        Some(("delta", n)) => delta(number(n, "dimension")?, max_dim, cfg),
        Some(("boundary", n)) => boundary_delta(number(n, "dimension")?, max_dim, cfg),
        Some(("spine", n)) => spine(number(n, "dimension")?, max_dim, cfg),
        _ => usage(format!("unknown simplicial set `{s}`")),
    }
}

pub fn parse_finite(s: &str) -> Result<FiniteCategory> {
    match s.split_once(':') {
        Some(("chain", n)) => Ok(FiniteCategory::chain(number(n, "length")?)),
        Some(("discrete", n)) => Ok(FiniteCategory::discrete(number(n, "size")?)),
        Some(("cyclic", n)) => Ok(FiniteCategory::cyclic_group(number(n, "order")?)),
        Some(("groupoid", n)) => Ok(FiniteCategory::thin_groupoid(number(n, "size")?)),
        None if s == "parallel" => Ok(FiniteCategory::parallel_pair()),
        _ => usage(format!("unknown finite category `{s}`")),
    }
}

fn parse_objects(s: &str) -> Result<Vec<(String, Graph)>> {
    s.split(',').map(|t| Ok((t.trim().to_string(), parse_graph(t.trim())?))).collect()
}

fn parse_test(s: &str) -> Result<GraphTest> {
    let (pair, map) = match s.split_once(':') {
        Some((p, m)) => (p, Some(parse_vertex_map(m)?)),
        None => (s, None),
    };
    let Some((a, b)) = pair.split_once('>') else {
        return usage(format!("test `{s}` should read X>Y or X>Y:v,v,..."));
    };
    let (x, y) = (parse_graph(a)?, parse_graph(b)?);
    let map = match map {
        Some(m) => m,
        None if y.order() == 1 => vec![0; x.order()],
        None => return usage(format!("test `{s}` needs a vertex map")),
    };
    Ok(GraphTest {
        source: (a.trim().into(), x),
        target: (b.trim().into(), y),
        map,
    })
}

fn parse_shape(s: &str, n: usize) -> Result<GraphDiagram> {
    let parts: Vec<&str> = s.splitn(3, ':').collect();
    match parts.as_slice() {
        ["tower"] => Ok(GraphDiagram::Tower { n }),
        ["constant"] => Ok(GraphDiagram::Constant { n }),
        ["under", z, map] => Ok(GraphDiagram::TowerUnder {
            n,
            z: (z.to_string(), parse_graph(z)?),
            map: parse_vertex_map(map)?,
        }),
        ["finite", rest @ ..] => Ok(GraphDiagram::Finite(parse_finite(&rest.join(":"))?)),
        _ => usage(format!("unknown shape `{s}`")),
    }
}

fn count_lines(x: &CubicalSet) -> Vec<String> {
    (0..=x.max_dim())
        .map(|k| format!("dim {k}: {} cubes, {} nondegenerate", x.count(k), x.nondegenerate(k).len()))
        .collect()
}

fn simplex_lines(x: &SimplicialSet) -> Vec<String> {
    (0..=x.max_dim())
        .map(|k| format!("dim {k}: {} simplices, {} nondegenerate", x.count(k), x.nondegenerate(k).len()))
        .collect()
}

fn graph_report(command: &str, g: &Graph) -> Report {
    Report::new(command)
        .line(format!("vertices: {}", g.order()))
        .line(format!("edges: {}", g.edges().len()))
        .data(g.to_json())
}

fn show_map(f: &[u32]) -> String {
    f.iter().map(u32::to_string).collect::<Vec<_>>().join(",")
}

fn homology_report(command: &str, x: &CubicalSet, up_to: usize, cfg: &Config) -> Result<Report> {
    let h = cubical_homology_direct(x, up_to, cfg)?;
    let mut r = Report::new(command);
    for g in &h {
        r = r.line(g.to_string());
    }
    Ok(r.data(serde_json::to_value(&h).expect("serializable")))
}

/// A category chosen on the command line.
enum AnyCategory {
    Graph(GraphCategory),
    Tabulated(cubix::enriched::TabulatedCategory),
}

fn parse_category(a: &CategoryArgs, trunc: usize, cfg: &Config) -> Result<AnyCategory> {
    match (&a.objects, &a.sk0, &a.suspension) {
        (Some(o), _, _) => Ok(AnyCategory::Graph(GraphCategory::new(parse_objects(o)?, 1, trunc)?)),
        (_, Some(s), _) => Ok(AnyCategory::Tabulated(sk0(&parse_finite(s)?, trunc, cfg)?)),
        (_, _, Some(s)) => Ok(AnyCategory::Tabulated(suspension(&parse_set(s, trunc, cfg)?, cfg)?)),
        _ => usage("give one of --objects, --sk0 or --suspension"),
    }
}

impl AnyCategory {
    fn ho_iso(&self, cfg: &Config) -> Result<Vec<Check>> {
        match self {
            AnyCategory::Graph(c) => cubix::coherent::ho_nerve_iso_check(c, cfg),
            AnyCategory::Tabulated(c) => cubix::coherent::ho_nerve_iso_check(c, cfg),
        }
    }

    fn axioms(&self, cfg: &Config) -> Result<Check> {
        let rep = match self {
            AnyCategory::Graph(c) => check_axioms(c, cfg)?,
            AnyCategory::Tabulated(c) => check_axioms(c, cfg)?,
        };
        Ok(rep.check("composition, associativity and units"))
    }

    fn object_count(&self) -> usize {
        match self {
            AnyCategory::Graph(c) => c.object_count(),
            AnyCategory::Tabulated(c) => c.object_count(),
        }
    }
}

fn execute(cli: &Cli, cfg: &Config) -> Result<Report> {
    let d = cli.trunc;
    match &cli.verb {
        Verb::Cube(c) => match c {
            CubeCmd::NormalForm { map } => {
                let (src, dst, table) = parse_map_spec(map)?;
                Ok(match normal_form(src, dst, &table)? {
                    Membership::InBox(_, word) => {
                        Report::new("cube normal-form").line(word_to_string(&word)).verdict(Verdict::Pass)
                    }
                    Membership::NotInBox => Report::new("cube normal-form")
                        .line("not a map of □")
                        .verdict(Verdict::Fail(format!("{map} is monotone but not generated by faces, degeneracies and connections"))),
                })
            }
            CubeCmd::Identities { max_dim } => {
                let ids = cubical_identities(*max_dim);
                let bad: Vec<_> = ids.iter().filter(|i| !i.holds()).collect();
                let check = Check::new(
                    format!("cubical identities in ambient dimension ≤ {max_dim}"),
                    Verdict::from_bool(bad.is_empty(), || format!("{} violations, first: {}", bad.len(), bad[0].label)),
                );
                Ok(Report::new("cube identities")
                    .line(format!("instances: {}", ids.len()))
                    .line(format!("violations: {}", bad.len()))
                    .checks(vec![check]))
            }
            CubeCmd::Morphisms { src, dst } => {
                if *src > 6 || *dst > 6 {
                    return usage("dimensions above 6 are not listed");
                }
                let ms = all_morphisms(*src, *dst);
                let mut r = Report::new("cube morphisms").line(format!("count: {}", ms.len()));
                for m in &ms {
                    r = r.line(m.word_string());
                }
                Ok(r)
            }
        },
        Verb::Cset(c) => match c {
            CsetCmd::Show(s) => {
                let x = parse_set(&s.set, d, cfg)?;
                let mut r = Report::new("cset show");
                r.lines = count_lines(&x);
                Ok(r.data(x.to_json()))
            }
            CsetCmd::Kan { set, up_to } => {
                let x = parse_set(&set.set, d, cfg)?;
                let k = kan_box_check(&x, *up_to, cfg)?;
                let mut r = Report::new("cset kan").line(format!("open boxes checked: {}", k.boxes_checked));
                for b in k.failures.iter().take(10) {
                    r = r.line(format!("unfilled: dimension {}, face ({},{}) missing", b.dim, b.i, b.eps));
                }
                let check = Check::new(
                    format!("every open box fills, dimension ≤ {up_to} (within truncation {})", x.max_dim()),
                    Verdict::from_bool(k.is_kan(), || format!("{} unfilled open boxes", k.failures.len())),
                );
                Ok(r.checks(vec![check]).data(serde_json::to_value(&k).expect("serializable")))
            }
            CsetCmd::Homology { set, up_to } => {
                let x = parse_set(&set.set, d.max(up_to + 1), cfg)?;
                homology_report("cset homology", &x, *up_to, cfg)
            }
            CsetCmd::Pi0(s) => {
                let x = parse_set(&s.set, d, cfg)?;
                Ok(Report::new("cset pi0").line(format!("components: {}", x.pi0_count())))
            }
            CsetCmd::Tensor { left, right } => {
                let t = tensor(&parse_set(left, d, cfg)?, &parse_set(right, d, cfg)?, cfg)?;
                let mut r = Report::new("cset tensor");
                r.lines = count_lines(&t.set);
                Ok(r.data(t.set.to_json()))
            }
            CsetCmd::Triangulate(s) => {
                let t = triangulate(&parse_set(&s.set, d, cfg)?, cfg)?;
                let mut r = Report::new("cset triangulate");
                r.lines = simplex_lines(&t);
                Ok(r.data(t.to_json()))
            }
        },
        Verb::Graph(c) => match c {
            GraphCmd::Show { graph } => Ok(graph_report("graph show", &parse_graph(graph)?)),
            GraphCmd::Box(p) => Ok(graph_report("graph box", &box_product(&parse_graph(&p.x)?, &parse_graph(&p.y)?))),
            GraphCmd::Hom(p) => {
                let h = hom_graph(&parse_graph(&p.x)?, &parse_graph(&p.y)?, cfg)?;
                Ok(graph_report("graph hom", &h.graph))
            }
            GraphCmd::HtpyClasses(p) => {
                let c = homotopy_classes(&parse_graph(&p.x)?, &parse_graph(&p.y)?, cfg)?;
                let mut r = Report::new("graph htpy-classes").line(format!("classes: {}", c.count()));
                for (i, class) in c.classes.iter().enumerate() {
                    let rep = c.hom.map(class[0]);
                    r = r.line(format!("class {i}: {} maps, e.g. {}", class.len(), show_map(rep)));
                }
                Ok(r)
            }
            GraphCmd::Equiv { pair, map } => {
                let (x, y) = (parse_graph(&pair.x)?, parse_graph(&pair.y)?);
                let e = is_homotopy_equivalence(&x, &y, &parse_vertex_map(map)?, cli.bound, cfg)?;
                let mut r = Report::new("graph equiv");
                if let Equivalence::Yes { inverse, gf, fg } = &e {
                    r = r
                        .line(format!("inverse: {}", show_map(inverse)))
                        .line(format!("g∘f ⇒ id in {} steps", gf.stages.len().saturating_sub(1)))
                        .line(format!("f∘g ⇒ id in {} steps", fg.stages.len().saturating_sub(1)));
                }
                let check = Check::new(format!("{} → {} is a homotopy equivalence", pair.x, pair.y), e.verdict());
                Ok(r.checks(vec![check]).data(serde_json::to_value(&e).expect("serializable")))
            }
            GraphCmd::Iso(p) => {
                let found = find_graph_isomorphism(&parse_graph(&p.x)?, &parse_graph(&p.y)?, cfg)?;
                let mut r = Report::new("graph iso");
                if let Some(f) = &found {
                    r = r.line(format!("isomorphism: {}", show_map(f)));
                }
                let check = Check::new(
                    format!("{} ≅ {}", p.x, p.y),
                    Verdict::from_bool(found.is_some(), || "no isomorphism".into()),
                );
                Ok(r.checks(vec![check]))
            }
        },
        Verb::Nerve(c) => match c {
            NerveCmd::H1(a) => {
                let n = graph_nerve(&parse_graph(&a.graph)?, a.m, 2, cfg)?;
                let h = cubical_homology_direct(&n.set, 1, cfg)?;
                Ok(Report::new("nerve h1").line(h[1].to_string()).data(serde_json::to_value(&h[1]).expect("serializable")))
            }
            NerveCmd::Homology { nerve, up_to } => {
                let n = graph_nerve(&parse_graph(&nerve.graph)?, nerve.m, up_to + 1, cfg)?;
                homology_report("nerve homology", &n.set, *up_to, cfg)
            }
            NerveCmd::Counts(a) => {
                let n = graph_nerve(&parse_graph(&a.graph)?, a.m, d, cfg)?;
                let mut r = Report::new("nerve counts");
                r.lines = count_lines(&n.set);
                Ok(r)
            }
            NerveCmd::Kan { nerve, up_to } => {
                let n = graph_nerve(&parse_graph(&nerve.graph)?, nerve.m, d, cfg)?;
                let k = kan_box_check(&n.set, *up_to, cfg)?;
                let check = Check::new(
                    format!("every open box fills, dimension ≤ {up_to} (within truncation {d})"),
                    Verdict::from_bool(k.is_kan(), || format!("{} unfilled open boxes", k.failures.len())),
                );
                Ok(Report::new("nerve kan").line(format!("open boxes checked: {}", k.boxes_checked)).checks(vec![check]))
            }
        },
        Verb::Enriched(c) => match c {
            EnrichedCmd::Tower { y, n } => {
                let tower = CotensorTower::new(&parse_graph(y)?, *n, cfg)?;
                let cat = tower.category(&[], 1)?;
                let (checks, steps, w) = connection_homotopy_check(&cat, &tower, *n)?;
                let mut r = Report::new("enriched tower");
                for k in 0..=*n {
                    r = r.line(format!("T{k}: {} vertices", tower.level(k).order()));
                }
                for s in &steps {
                    r = r.line(format!("step {}: homotopy 1-cube of length {}", s.level, s.homotopy.len()));
                }
                r = r.line(format!("witness zig-zags: {} and {} steps", w.gf.len(), w.fg.len()));
                Ok(r.checks(checks))
            }
            EnrichedCmd::HoIso(a) => {
                let cat = parse_category(a, d.max(1), cfg)?;
                Ok(Report::new("enriched ho-iso").checks(cat.ho_iso(cfg)?))
            }
            EnrichedCmd::Axioms(a) => {
                let cat = parse_category(a, d, cfg)?;
                Ok(Report::new("enriched axioms")
                    .line(format!("objects: {}", cat.object_count()))
                    .checks(vec![cat.axioms(cfg)?]))
            }
            EnrichedCmd::Equiv { objects, from, to, map } => {
                let cat = GraphCategory::new(parse_objects(objects)?, 1, d.max(1))?;
                if *from >= cat.object_count() || *to >= cat.object_count() {
                    return usage("object index out of range");
                }
                let Some(f) = cat.morphism(*from, *to, &parse_vertex_map(map)?) else {
                    return usage("not a graph map between the chosen objects");
                };
                let e = is_homotopy_equivalence_enriched(&cat, *from, *to, &f, cli.bound, cfg)?;
                let check = Check::new(
                    format!("{} → {} is a homotopy equivalence in Graph¹", cat.object_name(*from), cat.object_name(*to)),
                    e.verdict(),
                );
                Ok(Report::new("enriched equiv").checks(vec![check]))
            }
            EnrichedCmd::Rigidify { simplicial, from, to } => {
                let x = parse_simplicial(simplicial, d + 1, cfg)?;
                if *from as usize >= x.count(0) || *to as usize >= x.count(0) {
                    return usage("vertex out of range");
                }
                let r = cubix::coherent::rigidification(&x, d, cfg)?;
                let hom = mapping_space(&r, *from as usize, *to as usize, d, cfg)?;
                let total: usize = (0..=hom.set.max_dim()).map(|k| hom.set.nondegenerate(k).len()).sum();
                let mut rep = Report::new("enriched rigidify");
                rep.lines = count_lines(&hom.set);
                Ok(rep.line(format!("nondegenerate cubes: {total}")).data(hom.set.to_json()))
            }
        },
        Verb::Dmsl(c) => match c {
            DmslCmd::Resolution { y, shape, n, tests } => {
                let y = (y.clone(), parse_graph(y)?);
                let diagram = parse_shape(shape, *n)?;
                let tests = tests.iter().map(|t| parse_test(t)).collect::<Result<Vec<_>>>()?;
                let rep = graph_resolution(&y, &diagram, &tests, cli.bound, cfg)?;
                let mut r = Report::new("dmsl resolution").line(format!("shape: {}", rep.shape));
                for c in &rep.conditions {
                    r = r.line(format!("{}: {}", c.condition, c.verdict));
                }
                let mut checks = rep.diagram.clone();
                checks.extend(rep.conditions.iter().flat_map(|c| {
                    c.checks.iter().map(|k| Check::new(format!("{}: {}", c.condition, k.name), k.verdict.clone()))
                }));
                let verdict = rep.overall();
                let mut r = r.checks(checks).data(serde_json::to_value(&rep).expect("serializable"));
                r.verdict = Some(verdict);
                Ok(r)
            }
            DmslCmd::Shadow { pair, m } => {
                let s = graph_localization_shadow(&parse_graph(&pair.x)?, &parse_graph(&pair.y)?, *m, cfg)?;
                Ok(Report::new("dmsl shadow")
                    .line(format!("components: {}", s.components))
                    .line(format!("classes: {}", s.classes))
                    .checks(s.checks.clone())
                    .data(serde_json::to_value(&s).expect("serializable")))
            }
            DmslCmd::Diagonal(s) => {
                let x = parse_set(&s.set, d, cfg)?;
                Ok(Report::new("dmsl diagonal").checks(diagonal_identity_check(&x, cfg)?))
            }
        },
    }
}
