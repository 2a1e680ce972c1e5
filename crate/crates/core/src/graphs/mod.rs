//! Reflexive graphs, the box product and the hom graph.

mod homotopy;
pub(crate) mod nerve;

pub use homotopy::{
    homotopy_classes, is_homotopy_equivalence, Certificate, Equivalence, Homotopy, HomotopyClasses,
    DEFAULT_SEARCH_BOUND,
};
pub(crate) use nerve::graph_nerve_unnamed;
pub use nerve::{graph_nerve, grid, nerve_homology, nerve_map, GraphNerve};

use crate::cset::UnionFind;
use crate::error::{domain, Result};
use crate::exec::{map_ordered, Budget, Config};
use serde::{Deserialize, Serialize};
use std::collections::HashMap;

/// A finite graph with a symmetric relation; every vertex is related to
/// itself and loops are never stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    names: Vec<String>,
    /// Closed neighbourhoods, sorted.
    nbrs: Vec<Vec<u32>>,
}

#[derive(Serialize, Deserialize)]
struct GraphJson {
    vertices: Vec<String>,
    edges: Vec<[String; 2]>,
}

impl Graph {
    pub fn new(names: Vec<String>, edges: &[(u32, u32)]) -> Result<Graph> {
        let n = names.len();
        let mut nbrs: Vec<Vec<u32>> = (0..n as u32).map(|v| vec![v]).collect();
        for &(a, b) in edges {
            if a as usize >= n || b as usize >= n {
                return domain(format!("edge ({a}, {b}) out of range"));
            }
            if a != b {
                nbrs[a as usize].push(b);
                nbrs[b as usize].push(a);
            }
        }
        for l in &mut nbrs {
            l.sort_unstable();
            l.dedup();
        }
        let mut seen = std::collections::HashSet::new();
        if let Some(dup) = names.iter().find(|s| !seen.insert(s.as_str())) {
            return domain(format!("duplicate vertex {dup}"));
        }
        Ok(Graph { names, nbrs })
    }

    fn numbered(n: usize, edges: impl Iterator<Item = (u32, u32)>) -> Graph {
        let e: Vec<_> = edges.collect();
        Graph::new((0..n).map(|i| i.to_string()).collect(), &e).expect("valid builder")
    }

    /// The interval `I_n` on `0, …, n`.
    pub fn interval(n: usize) -> Graph {
        Graph::numbered(n + 1, (0..n as u32).map(|i| (i, i + 1)))
    }

    /// The cycle `C_n`, `n ≥ 3`.
    pub fn cycle(n: usize) -> Result<Graph> {
        if n < 3 {
            return domain("cycles need at least 3 vertices");
        }
        Ok(Graph::numbered(n, (0..n as u32).map(|i| (i, (i + 1) % n as u32))))
    }

    /// The complete graph `K_n`.
    pub fn complete(n: usize) -> Graph {
        let n32 = n as u32;
        Graph::numbered(n, (0..n32).flat_map(|a| (a + 1..n32).map(move |b| (a, b))))
    }

    /// Parse a builder name: `I<n>`, `C<n>` or `K<n>`.
    pub fn builtin(spec: &str) -> Result<Graph> {
        let spec = spec.trim();
        let (kind, num) = spec.split_at(spec.chars().next().map_or(0, char::len_utf8));
        let n: usize = match num.parse() {
            Ok(n) => n,
            Err(_) => return domain(format!("unknown graph `{spec}`; expected I<n>, C<n> or K<n>")),
        };
        match kind {
            "I" => Ok(Graph::interval(n)),
            "C" => Graph::cycle(n),
            "K" => Ok(Graph::complete(n)),
            _ => domain(format!("unknown graph `{spec}`; expected I<n>, C<n> or K<n>")),
        }
    }

    pub fn order(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, v: u32) -> &str {
        &self.names[v as usize]
    }

    pub fn vertex(&self, name: &str) -> Option<u32> {
        self.names.iter().position(|s| s == name).map(|p| p as u32)
    }

    /// Closed neighbourhood of `v`, sorted.
    pub fn neighbours(&self, v: u32) -> &[u32] {
        &self.nbrs[v as usize]
    }

    pub fn adjacent(&self, a: u32, b: u32) -> bool {
        self.nbrs[a as usize].binary_search(&b).is_ok()
    }

    /// Edges `a < b`, in lexicographic order.
    pub fn edges(&self) -> Vec<(u32, u32)> {
        (0..self.order() as u32)
            .flat_map(|a| self.nbrs[a as usize].iter().filter(move |&&b| b > a).map(move |&b| (a, b)))
            .collect()
    }

    pub fn edge_count(&self) -> usize {
        self.edges().len()
    }

    /// Component label of each vertex, numbered by first occurrence.
    pub fn components(&self) -> Vec<usize> {
        let mut uf = UnionFind::new(self.order());
        for (a, b) in self.edges() {
            uf.union(a as usize, b as usize);
        }
        uf.labels()
    }

    pub fn component_count(&self) -> usize {
        self.components().iter().max().map_or(0, |m| m + 1)
    }

    /// Whether `f` (images indexed by vertex) is a graph map `self → y`.
    pub fn is_map_to(&self, y: &Graph, f: &[u32]) -> bool {
        f.len() == self.order()
            && f.iter().all(|&v| (v as usize) < y.order())
            && self.edges().iter().all(|&(a, b)| y.adjacent(f[a as usize], f[b as usize]))
    }

    pub fn to_json(&self) -> serde_json::Value {
        let g = GraphJson {
            vertices: self.names.clone(),
            edges: self
                .edges()
                .into_iter()
                .map(|(a, b)| [self.names[a as usize].clone(), self.names[b as usize].clone()])
                .collect(),
        };
        serde_json::to_value(g).expect("serializable")
    }

    pub fn from_json_str(s: &str) -> Result<Graph> {
        let g: GraphJson = serde_json::from_str(s)?;
        let index: HashMap<&str, u32> =
            g.vertices.iter().enumerate().map(|(i, s)| (s.as_str(), i as u32)).collect();
        let mut edges = Vec::with_capacity(g.edges.len());
        for [a, b] in &g.edges {
            match (index.get(a.as_str()), index.get(b.as_str())) {
                (Some(&a), Some(&b)) => edges.push((a, b)),
                _ => return domain(format!("edge [{a}, {b}] names an unknown vertex")),
            }
        }
        Graph::new(g.vertices.clone(), &edges)
    }
}

/// Vertex order for backtracking: breadth first from each unvisited
/// vertex, with the already placed neighbours of each vertex.
fn search_order(x: &Graph) -> Vec<(u32, Vec<u32>)> {
    let n = x.order();
    let mut placed = vec![usize::MAX; n];
    let mut order = Vec::with_capacity(n);
    for s in 0..n as u32 {
        if placed[s as usize] != usize::MAX {
            continue;
        }
        let mut queue = std::collections::VecDeque::from([s]);
        placed[s as usize] = order.len();
        while let Some(v) = queue.pop_front() {
            let before: Vec<u32> = x
                .neighbours(v)
                .iter()
                .copied()
                .filter(|&w| w != v && placed[w as usize] < placed[v as usize])
                .collect();
            order.push((v, before));
            for &w in x.neighbours(v) {
                if placed[w as usize] == usize::MAX {
                    placed[w as usize] = order.len() + queue.len();
                    queue.push_back(w);
                }
            }
        }
    }
    order
}

fn extend(
    y: &Graph,
    order: &[(u32, Vec<u32>)],
    pos: usize,
    f: &mut [u32],
    out: &mut Vec<Vec<u32>>,
    budget: &Budget,
) -> Result<()> {
    if pos == order.len() {
        budget.take(1)?;
        out.push(f.to_vec());
        return Ok(());
    }
    let (v, before) = &order[pos];
    let candidates: Vec<u32> = match before.split_first() {
        None => (0..y.order() as u32).collect(),
        Some((first, rest)) => y
            .neighbours(f[*first as usize])
            .iter()
            .copied()
            .filter(|&c| rest.iter().all(|&w| y.adjacent(f[w as usize], c)))
            .collect(),
    };
    for c in candidates {
        f[*v as usize] = c;
        extend(y, order, pos + 1, f, out, budget)?;
    }
    Ok(())
}

/// All graph maps `x → y` as image vectors, in lexicographic order.
pub fn graph_maps(x: &Graph, y: &Graph, cfg: &Config) -> Result<Vec<Vec<u32>>> {
    if x.order() == 0 {
        return Ok(vec![Vec::new()]);
    }
    if y.order() == 0 {
        return Ok(Vec::new());
    }
    let order = search_order(x);
    let budget = Budget::new(cfg, "graph maps");
    let first = order[0].0;
    let starts: Vec<u32> = (0..y.order() as u32).collect();
    let parts = map_ordered(cfg.exec, &starts, |&c| {
        let mut f = vec![0u32; x.order()];
        f[first as usize] = c;
        let mut out = Vec::new();
        extend(y, &order, 1, &mut f, &mut out, &budget).map(|_| out)
    });
    let mut all = Vec::new();
    for p in parts {
        all.extend(p?);
    }
    all.sort_unstable();
    Ok(all)
}

/// An isomorphism `x → y`, if one exists.
pub fn find_graph_isomorphism(x: &Graph, y: &Graph, cfg: &Config) -> Result<Option<Vec<u32>>> {
    if x.order() != y.order() || x.edge_count() != y.edge_count() {
        return Ok(None);
    }
    let degrees = |g: &Graph| {
        let mut d: Vec<usize> = (0..g.order() as u32).map(|v| g.neighbours(v).len()).collect();
        d.sort_unstable();
        d
    };
    if degrees(x) != degrees(y) {
        return Ok(None);
    }
    let order = search_order(x);
    let budget = Budget::new(cfg, "isomorphism search nodes");
    let mut f = vec![0u32; x.order()];
    let mut used = vec![false; y.order()];
    let found = extend_iso(x, y, &order, 0, &mut f, &mut used, &budget)?;
    Ok(found.then_some(f))
}

/// Injective extension preserving adjacency and non-adjacency among placed
/// vertices.
#[allow(clippy::too_many_arguments)]
fn extend_iso(
    x: &Graph,
    y: &Graph,
    order: &[(u32, Vec<u32>)],
    pos: usize,
    f: &mut [u32],
    used: &mut [bool],
    budget: &Budget,
) -> Result<bool> {
    if pos == order.len() {
        return Ok(true);
    }
    budget.take(1)?;
    let (v, before) = &order[pos];
    let degree = x.neighbours(*v).len();
    let placed = || order[..pos].iter().map(|(w, _)| *w);
    let candidates: Vec<u32> = match before.first() {
        None => (0..y.order() as u32).collect(),
        Some(&w) => y.neighbours(f[w as usize]).to_vec(),
    };
    for c in candidates {
        if used[c as usize] || y.neighbours(c).len() != degree {
            continue;
        }
        if placed().any(|w| x.adjacent(*v, w) != y.adjacent(c, f[w as usize])) {
            continue;
        }
        f[*v as usize] = c;
        used[c as usize] = true;
        if extend_iso(x, y, order, pos + 1, f, used, budget)? {
            return Ok(true);
        }
        used[c as usize] = false;
    }
    Ok(false)
}

/// `x □ y`; the vertex `(a, b)` has index `a·|y| + b`.
pub fn box_product(x: &Graph, y: &Graph) -> Graph {
    let ny = y.order() as u32;
    let names = x
        .names
        .iter()
        .flat_map(|a| y.names.iter().map(move |b| format!("({a},{b})")))
        .collect();
    let mut edges = Vec::new();
    for (a, b) in x.edges() {
        for v in 0..ny {
            edges.push((a * ny + v, b * ny + v));
        }
    }
    for u in 0..x.order() as u32 {
        for (a, b) in y.edges() {
            edges.push((u * ny + a, u * ny + b));
        }
    }
    Graph::new(names, &edges).expect("product names are distinct")
}

/// The hom graph: vertices are graph maps, adjacent when pointwise adjacent.
#[derive(Clone, Debug)]
pub struct HomGraph {
    pub graph: Graph,
    pub maps: Vec<Vec<u32>>,
    index: HashMap<Vec<u32>, u32>,
}

impl HomGraph {
    pub fn index_of(&self, f: &[u32]) -> Option<u32> {
        self.index.get(f).copied()
    }

    pub fn map(&self, v: u32) -> &[u32] {
        &self.maps[v as usize]
    }
}

pub(crate) fn map_name(y: &Graph, f: &[u32]) -> String {
    let parts: Vec<&str> = f.iter().map(|&v| y.name(v)).collect();
    format!("[{}]", parts.join(" "))
}

pub fn hom_graph(x: &Graph, y: &Graph, cfg: &Config) -> Result<HomGraph> {
    let maps = graph_maps(x, y, cfg)?;
    let index: HashMap<Vec<u32>, u32> =
        maps.iter().enumerate().map(|(i, f)| (f.clone(), i as u32)).collect();
    let order = search_order(x);
    let budget = Budget::new(cfg, "hom graph edges");
    let rows = map_ordered(cfg.exec, &maps, |f| -> Result<Vec<(u32, u32)>> {
        // g with g(v) ∈ N[f(v)] for every v
        let me = index[f];
        let mut out = Vec::new();
        let mut g = vec![0u32; x.order()];
        neighbour_maps(y, &order, 0, f, &mut g, &mut |g| {
            let other = index[g];
            if other > me {
                out.push((me, other));
            }
        });
        budget.take(out.len())?;
        Ok(out)
    });
    let mut edges = Vec::new();
    for r in rows {
        edges.extend(r?);
    }
    let names = maps.iter().map(|f| map_name(y, f)).collect();
    let graph = Graph::new(names, &edges)?;
    Ok(HomGraph { graph, maps, index })
}

fn neighbour_maps(
    y: &Graph,
    order: &[(u32, Vec<u32>)],
    pos: usize,
    f: &[u32],
    g: &mut [u32],
    emit: &mut dyn FnMut(&[u32]),
) {
    if pos == order.len() {
        emit(g);
        return;
    }
    let (v, before) = &order[pos];
    for &c in y.neighbours(f[*v as usize]) {
        if before.iter().all(|&w| y.adjacent(g[w as usize], c)) {
            g[*v as usize] = c;
            neighbour_maps(y, order, pos + 1, f, g, emit);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg() -> Config {
        Config::default()
    }

    #[test]
    fn square_is_a_four_cycle() {
        let i1 = Graph::interval(1);
        let sq = box_product(&i1, &i1);
        let c4 = Graph::cycle(4).unwrap();
        assert!(find_graph_isomorphism(&sq, &c4, &cfg()).unwrap().is_some());
        assert_eq!(box_product(&Graph::interval(2), &Graph::interval(3)).order(), 12);
    }

    #[test]
    fn map_counts() {
        let c4 = Graph::cycle(4).unwrap();
        assert_eq!(graph_maps(&Graph::interval(1), &c4, &cfg()).unwrap().len(), 12);
        assert_eq!(graph_maps(&c4, &Graph::interval(0), &cfg()).unwrap().len(), 1);
    }

    #[test]
    fn hom_of_interval() {
        let i1 = Graph::interval(1);
        let h = hom_graph(&i1, &i1, &cfg()).unwrap();
        assert_eq!(h.graph.order(), 4);
        assert_eq!(h.graph.edge_count(), 6);
    }

    #[test]
    fn hom_from_point() {
        let c5 = Graph::cycle(5).unwrap();
        let h = hom_graph(&Graph::interval(0), &c5, &cfg()).unwrap();
        assert!(find_graph_isomorphism(&h.graph, &c5, &cfg()).unwrap().is_some());
    }

    #[test]
    fn json_round_trip() {
        let g = Graph::cycle(5).unwrap();
        let s = g.to_json().to_string();
        assert_eq!(Graph::from_json_str(&s).unwrap(), g);
    }

    #[test]
    fn builtin_names() {
        assert_eq!(Graph::builtin("K3").unwrap().edge_count(), 3);
        assert!(Graph::builtin("C2").is_err());
        assert!(Graph::builtin("Q4").is_err());
    }
}
