//! JSON encodings of cubical and simplicial sets.
//!
//! Cubes are identified by strings, unique within a dimension. Action tables
//! map a dimension to a cube name to an operator to the image name, with
//! operators written as in [`crate::cube`] (`d(i,e)`, `s(i)`, `g(i,e)`) for
//! cubical sets and as `d<i>`, `s<i>` for simplicial sets.

use crate::cset::CubicalSet;
use crate::cube::{conn, degen, face, Generator};
use crate::error::{domain, Result};
use crate::exec::Config;
use crate::simplicial::SimplicialSet;
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, HashMap};

type Table = BTreeMap<String, BTreeMap<String, BTreeMap<String, String>>>;

#[derive(Clone, Debug, Serialize, Deserialize)]
struct CubicalJson {
    max_dim: usize,
    cubes: BTreeMap<String, Vec<String>>,
    #[serde(default)]
    faces: Table,
    #[serde(default)]
    degens: Table,
    #[serde(default)]
    conns: Table,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
struct SimplicialJson {
    max_dim: usize,
    simplices: BTreeMap<String, Vec<String>>,
    #[serde(default)]
    faces: Table,
    #[serde(default)]
    degens: Table,
}

fn names_by_dim(max_dim: usize, cells: &BTreeMap<String, Vec<String>>, what: &str) -> Result<Vec<Vec<String>>> {
    let mut out = Vec::with_capacity(max_dim + 1);
    for k in 0..=max_dim {
        let v = cells.get(&k.to_string()).cloned().unwrap_or_default();
        let mut seen = std::collections::HashSet::new();
        if let Some(dup) = v.iter().find(|n| !seen.insert(n.as_str())) {
            return domain(format!("{what} `{dup}` listed twice in dimension {k}"));
        }
        out.push(v);
    }
    if let Some(k) = cells.keys().find(|k| k.parse::<usize>().map_or(true, |k| k > max_dim)) {
        return domain(format!("dimension `{k}` is outside the truncation {max_dim}"));
    }
    Ok(out)
}

/// Reads `table[k][cell][op]` for every cell of dimension `k` and every
/// operator in `ops`, as indices into dimension `target`.
fn lookup(
    table: &Table,
    names: &[Vec<String>],
    k: usize,
    target: usize,
    ops: &[String],
    kind: &str,
) -> Result<Vec<u32>> {
    let index: HashMap<&str, u32> = names[target].iter().enumerate().map(|(i, n)| (n.as_str(), i as u32)).collect();
    let rows = table.get(&k.to_string());
    let mut out = Vec::with_capacity(names[k].len() * ops.len());
    for x in &names[k] {
        let row = rows.and_then(|r| r.get(x));
        for op in ops {
            let Some(image) = row.and_then(|r| r.get(op)) else {
                return domain(format!("{kind} table has no entry {op} for `{x}` in dimension {k}"));
            };
            match index.get(image.as_str()) {
                Some(&i) => out.push(i),
                None => return domain(format!("{op} of `{x}` names unknown cell `{image}` in dimension {target}")),
            }
        }
    }
    Ok(out)
}

fn emit(table: &mut Table, k: usize, x: String, ops: impl IntoIterator<Item = (String, String)>) {
    table.entry(k.to_string()).or_default().entry(x).or_default().extend(ops);
}

fn cube_ops(ops: impl IntoIterator<Item = Generator>) -> Vec<String> {
    ops.into_iter().map(|g| g.to_string()).collect()
}

fn face_ops(k: usize) -> Vec<String> {
    cube_ops((1..=k).flat_map(|i| [face(i, 0), face(i, 1)]))
}

fn conn_ops(k: usize) -> Vec<String> {
    cube_ops((1..=k).flat_map(|i| [conn(i, 0), conn(i, 1)]))
}

fn degen_ops(k: usize) -> Vec<String> {
    cube_ops((1..=k + 1).map(degen))
}

impl CubicalSet {
    pub fn to_json(&self) -> serde_json::Value {
        let d = self.max_dim();
        let mut j = CubicalJson {
            max_dim: d,
            cubes: BTreeMap::new(),
            faces: Table::new(),
            degens: Table::new(),
            conns: Table::new(),
        };
        for k in 0..=d {
            let n = self.count(k) as u32;
            j.cubes.insert(k.to_string(), (0..n).map(|x| self.name(k, x)).collect());
            for x in 0..n {
                if k >= 1 {
                    let ops = face_ops(k).into_iter().zip(self.faces_of(k, x).iter().map(|&f| self.name(k - 1, f)));
                    emit(&mut j.faces, k, self.name(k, x), ops);
                }
                if k < d {
                    let ops = degen_ops(k).into_iter().zip((1..=k + 1).map(|i| self.name(k + 1, self.degen(k, x, i))));
                    emit(&mut j.degens, k, self.name(k, x), ops);
                    if k >= 1 {
                        let imgs = (1..=k).flat_map(|i| [0, 1].map(|e| self.name(k + 1, self.conn(k, x, i, e))));
                        emit(&mut j.conns, k, self.name(k, x), conn_ops(k).into_iter().zip(imgs));
                    }
                }
            }
        }
        serde_json::to_value(j).expect("serializable")
    }

    /// Parse the JSON encoding; syntax errors carry line and column.
    pub fn from_json_str(s: &str, cfg: &Config) -> Result<CubicalSet> {
        let j: CubicalJson = serde_json::from_str(s)?;
        let d = j.max_dim;
        let names = names_by_dim(d, &j.cubes, "cube")?;
        let mut faces = vec![Vec::new()];
        for k in 1..=d {
            faces.push(lookup(&j.faces, &names, k, k - 1, &face_ops(k), "face")?);
        }
        let mut degens = Vec::new();
        let mut conns = Vec::new();
        for k in 0..d {
            degens.push(lookup(&j.degens, &names, k, k + 1, &degen_ops(k), "degeneracy")?);
            conns.push(lookup(&j.conns, &names, k, k + 1, &conn_ops(k), "connection")?);
        }
        let counts = names.iter().map(Vec::len).collect();
        CubicalSet::from_raw(d, counts, Some(names), faces, degens, conns, cfg)
    }
}

impl SimplicialSet {
    pub fn to_json(&self) -> serde_json::Value {
        let d = self.max_dim();
        let mut j = SimplicialJson {
            max_dim: d,
            simplices: BTreeMap::new(),
            faces: Table::new(),
            degens: Table::new(),
        };
        for k in 0..=d {
            let n = self.count(k) as u32;
            j.simplices.insert(k.to_string(), (0..n).map(|x| self.name(k, x)).collect());
            for x in 0..n {
                if k >= 1 {
                    let ops = (0..=k).map(|i| (format!("d{i}"), self.name(k - 1, self.face(k, x, i))));
                    emit(&mut j.faces, k, self.name(k, x), ops);
                }
                if k < d {
                    let ops = (0..=k).map(|i| (format!("s{i}"), self.name(k + 1, self.degen(k, x, i))));
                    emit(&mut j.degens, k, self.name(k, x), ops);
                }
            }
        }
        serde_json::to_value(j).expect("serializable")
    }

    /// Parse the JSON encoding; syntax errors carry line and column.
    pub fn from_json_str(s: &str, cfg: &Config) -> Result<SimplicialSet> {
        let j: SimplicialJson = serde_json::from_str(s)?;
        let d = j.max_dim;
        let names = names_by_dim(d, &j.simplices, "simplex")?;
        let ops = |p: char, k: usize| (0..=k).map(|i| format!("{p}{i}")).collect::<Vec<_>>();
        let mut faces = vec![Vec::new()];
        for k in 1..=d {
            faces.push(lookup(&j.faces, &names, k, k - 1, &ops('d', k), "face")?);
        }
        let mut degens = Vec::new();
        for k in 0..d {
            degens.push(lookup(&j.degens, &names, k, k + 1, &ops('s', k), "degeneracy")?);
        }
        let counts = names.iter().map(Vec::len).collect();
        SimplicialSet::from_raw(d, counts, Some(names), faces, degens, cfg)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cset::{standard_cell, CellKind};
    use crate::error::Error;
    use crate::graphs::{graph_nerve, Graph};
    use crate::simplicial::{boundary_delta, delta};

    #[test]
    fn cubical_round_trip() {
        let cfg = Config::default();
        let sets = [
            standard_cell(CellKind::Cube, 2, 3, &cfg).unwrap().set,
            standard_cell(CellKind::Boundary, 2, 2, &cfg).unwrap().set,
            graph_nerve(&Graph::builtin("C4").unwrap(), 1, 2, &cfg).unwrap().set,
        ];
        for x in sets {
            let text = x.to_json().to_string();
            let y = CubicalSet::from_json_str(&text, &cfg).unwrap();
            assert_eq!(y.counts(), x.counts());
            assert_eq!(y.to_json().to_string(), text);
        }
    }

    #[test]
    fn simplicial_round_trip() {
        let cfg = Config::default();
        for x in [delta(2, 3, &cfg).unwrap(), boundary_delta(2, 2, &cfg).unwrap()] {
            let text = x.to_json().to_string();
            let y = SimplicialSet::from_json_str(&text, &cfg).unwrap();
            assert_eq!(y.to_json().to_string(), text);
        }
    }

    #[test]
    fn syntax_errors_have_positions() {
        let err = CubicalSet::from_json_str("{\n  \"max_dim\": 1,\n  \"cubes\": [\n", &Config::default()).unwrap_err();
        assert!(matches!(err, Error::Parse { line: 3, .. }), "{err}");
    }

    #[test]
    fn broken_identities_are_rejected() {
        let cfg = Config::default();
        let edge = standard_cell(CellKind::Cube, 1, 1, &cfg).unwrap().set;
        let mut j = edge.to_json();
        let (v0, v1) = (edge.name(0, 0), edge.name(0, 1));
        let s1 = j["degens"]["0"][v1.as_str()]["s(1)"].clone();
        j["degens"]["0"][v0.as_str()]["s(1)"] = s1;
        assert!(CubicalSet::from_json_str(&j.to_string(), &cfg).is_err());
    }
}
