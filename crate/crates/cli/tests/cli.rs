use cubix::cset::CubicalSet;
use cubix::dmsl::{ResolutionReport, ShadowReport};
use cubix::graphs::Graph;
use cubix::homology::HomologyGroup;
use cubix::simplicial::SimplicialSet;
use cubix::Config;
use cubix_cli::{run, Outcome, Report};
use std::process::Command;

fn cubix(args: &str) -> Outcome {
    run(std::iter::once("cubix").chain(args.split_whitespace()))
}

fn json(args: &str) -> (i32, Report) {
    let out = cubix(&format!("--json {args}"));
    let report: Report = serde_json::from_str(&out.stdout).unwrap_or_else(|e| panic!("{args}: {e}\n{}", out.stdout));
    let again = serde_json::to_string_pretty(&report).unwrap() + "\n";
    assert_eq!(again, out.stdout, "report JSON is not stable for {args}");
    (out.code, report)
}

fn data(r: &Report) -> String {
    r.data.as_ref().expect("report carries data").to_string()
}

#[test]
fn documented_examples() {
    let out = cubix("graph htpy-classes --x C4 --y I0");
    assert_eq!(out.code, 0);
    assert_eq!(out.stdout.lines().next(), Some("classes: 1"));
    let out = cubix("nerve h1 --graph C5 --m 1");
    assert_eq!((out.code, out.stdout.as_str()), (0, "H_1 = Z\n"));
    let out = cubix("cube normal-form --map max2");
    assert_eq!((out.code, out.stdout.as_str()), (0, "g(1,0)\n"));
}

#[test]
fn exit_codes() {
    assert_eq!(cubix("graph equiv --x C5 --y I0 --map 0,0,0,0,0").code, 1);
    assert_eq!(cubix("graph equiv --x C4 --y I0 --map 0,0,0,0").code, 0);
    // the coordinate swap is monotone but not a box map
    assert_eq!(cubix("cube normal-form --map 2>2:00,01,10,11").code, 1);
    assert_eq!(cubix("graph hom --x C5 --y C5 --max-cells 10").code, 2);
    assert_eq!(cubix("no-such-verb").code, 3);
    assert_eq!(cubix("graph show --graph Q7").code, 3);
    assert_eq!(cubix("graph equiv --x C4 --y I1 --map 0,0,0").code, 3);
    assert_eq!(cubix("--help").code, 0);
}

#[test]
fn resolution_verdicts() {
    let (code, r) = json("dmsl resolution --y C4 --test C4>I0");
    assert_eq!(code, 0);
    let rep: ResolutionReport = serde_json::from_str(&data(&r)).unwrap();
    assert!(rep.overall().is_pass());
    let (code, r) = json("dmsl resolution --y C5 --shape under:I0:0 --test C4>I0");
    assert_eq!(code, 1);
    let rep: ResolutionReport = serde_json::from_str(&data(&r)).unwrap();
    assert!(rep.verdict("R2").unwrap().is_fail());
    assert!(rep.verdict("R3").unwrap().is_pass());
    let (code, _) = json("dmsl resolution --y I0 --shape finite:discrete:2 --test C4>I0");
    assert_eq!(code, 1);
}

#[test]
fn graph_outputs_round_trip() {
    for args in ["graph show --graph C5", "graph box --x I1 --y I1", "graph hom --x I1 --y I1"] {
        let (code, r) = json(args);
        assert_eq!(code, 0);
        let g = Graph::from_json_str(&data(&r)).unwrap();
        assert_eq!(g.to_json().to_string(), data(&r), "{args}");
    }
    let (_, r) = json("graph box --x I1 --y I1");
    let g = Graph::from_json_str(&data(&r)).unwrap();
    assert!(cubix::graphs::find_graph_isomorphism(&g, &Graph::builtin("C4").unwrap(), &Config::default())
        .unwrap()
        .is_some());
}

#[test]
fn set_outputs_round_trip() {
    let cfg = Config::default();
    for args in [
        "cset show --set boundary:2",
        "cset show --set box:2:1:0",
        "cset tensor --left cube:1 --right cube:1",
        "enriched rigidify --simplicial delta:3 --from 0 --to 3",
    ] {
        let (code, r) = json(args);
        assert_eq!(code, 0, "{args}");
        let x = CubicalSet::from_json_str(&data(&r), &cfg).unwrap();
        assert_eq!(x.to_json().to_string(), data(&r), "{args}");
    }
    let (_, r) = json("cset triangulate --set cube:2");
    let t = SimplicialSet::from_json_str(&data(&r), &cfg).unwrap();
    assert_eq!(t.nondegenerate(2).len(), 2);
}

#[test]
fn report_outputs_round_trip() {
    let (_, r) = json("nerve homology --graph C5 --up-to 1");
    let h: Vec<HomologyGroup> = serde_json::from_str(&data(&r)).unwrap();
    assert_eq!(h[1].group_string(), "Z");
    let (code, r) = json("dmsl shadow --x C5 --y C5");
    assert_eq!(code, 0);
    let s: ShadowReport = serde_json::from_str(&data(&r)).unwrap();
    assert!(s.components >= 2 && s.components == s.classes);
    for args in [
        "cube identities --max-dim 3",
        "cube morphisms --src 1 --dst 1",
        "cset kan --set box:2:1:0",
        "cset pi0 --set boundary:1",
        "nerve counts --graph C4",
        "nerve kan --graph I1",
        "enriched tower --y C4 --n 1",
        "enriched ho-iso --objects C4,I0",
        "enriched ho-iso --sk0 chain:2",
        "enriched axioms --objects I1,I0",
        "enriched equiv --objects C4,I0 --from 0 --to 1 --map 0,0,0,0",
        "dmsl diagonal --set boundary:2",
    ] {
        let (code, _) = json(args);
        assert_eq!(code, 0, "{args}");
    }
}

#[test]
fn files_are_accepted() {
    let dir = std::env::temp_dir().join(format!("cubix-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let set = dir.join("square.json");
    let (_, r) = json("cset show --set boundary:2");
    std::fs::write(&set, data(&r)).unwrap();
    let out = cubix(&format!("cset homology --set {}", set.display()));
    assert_eq!(out.stdout, "H_0 = Z\nH_1 = Z\n");
    let graph = dir.join("c5.json");
    std::fs::write(&graph, Graph::builtin("C5").unwrap().to_json().to_string()).unwrap();
    assert_eq!(cubix(&format!("nerve h1 --graph {}", graph.display())).stdout, "H_1 = Z\n");
    let bad = dir.join("bad.json");
    std::fs::write(&bad, "{\n  \"max_dim\": 1,\n  \"cubes\": {\"0\": [\"a\"]\n").unwrap();
    let out = cubix(&format!("cset show --set {}", bad.display()));
    assert_eq!(out.code, 3);
    assert!(out.stderr.contains("line 4"), "{}", out.stderr);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn output_is_deterministic() {
    for args in ["graph htpy-classes --x C5 --y C5", "dmsl resolution --y C4 --test C4>I0", "--json cset show --set cube:2"] {
        let a = cubix(args);
        assert_eq!(a, cubix(args));
        assert_eq!(a, cubix(&format!("--sequential {args}")));
    }
}

#[test]
fn binary_honours_the_cell_cap() {
    let bin = env!("CARGO_BIN_EXE_cubix");
    let out = Command::new(bin).args(["graph", "hom", "--x", "C5", "--y", "C5"]).env("CUBIX_MAX_CELLS", "10").output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("resource limit exceeded"));
    let out = Command::new(bin).args(["nerve", "h1", "--graph", "C5"]).output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(String::from_utf8_lossy(&out.stdout), "H_1 = Z\n");
}
