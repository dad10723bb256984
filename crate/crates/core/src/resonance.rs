//! Resonance graphs and their sextet orientation.
//!
//! Vertices are perfect matchings of a host system; two matchings are
//! adjacent exactly when their symmetric difference is the edge set of one
//! hexagon, which labels the edge. Directing every edge from the endpoint in
//! which the shared hexagon is a proper sextet yields a DAG.

use std::collections::HashMap;

use crate::cube::SimpleGraph;
use crate::hexsys::HexagonalSystem;
use crate::matching::{classify_hexagon, enumerate_perfect_matchings, PerfectMatching, SextetClass};
use crate::{Error, Limits, Result};

/// Undirected resonance-graph edge. `a < b`; `hexagon` indexes the host's
/// hexagon list; the `proper_in_*` flags record the sextet class of that
/// hexagon in each endpoint.
#[derive(Clone, Copy, Debug)]
pub struct ResonanceEdge {
    pub a: usize,
    pub b: usize,
    pub hexagon: usize,
    pub proper_in_a: bool,
    pub proper_in_b: bool,
}

#[derive(Clone, Debug)]
pub struct ResonanceGraph {
    matchings: Vec<PerfectMatching>,
    edges: Vec<ResonanceEdge>,
    /// Per-vertex sorted list of (neighbor, edge index into `edges`).
    adj: Vec<Vec<(usize, usize)>>,
    index: HashMap<Vec<usize>, usize>,
}

impl ResonanceGraph {
    pub fn matchings(&self) -> &[PerfectMatching] {
        &self.matchings
    }

    pub fn matching(&self, id: usize) -> &PerfectMatching {
        &self.matchings[id]
    }

    pub fn vertex_count(&self) -> usize {
        self.matchings.len()
    }

    pub fn edges(&self) -> &[ResonanceEdge] {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn adjacency(&self) -> &[Vec<(usize, usize)>] {
        &self.adj
    }

    /// Id of the matching with exactly this sorted edge set.
    pub fn matching_id(&self, edges: &[usize]) -> Option<usize> {
        self.index.get(edges).copied()
    }

    /// Forget matchings and labels; keep the plain graph.
    pub fn to_simple_graph(&self) -> SimpleGraph {
        let pairs: Vec<(usize, usize)> = self.edges.iter().map(|e| (e.a, e.b)).collect();
        SimpleGraph::new(self.matchings.len(), &pairs).expect("resonance graph is simple")
    }
}

/// Arcs point from the endpoint where the label is proper to the endpoint
/// where it is improper.
#[derive(Clone, Debug)]
pub struct DirectedResonanceGraph {
    n: usize,
    /// (from, to, hexagon), in undirected edge order.
    arcs: Vec<(usize, usize, usize)>,
    out: Vec<Vec<(usize, usize)>>,
}

impl DirectedResonanceGraph {
    pub fn new(n: usize, arcs: Vec<(usize, usize, usize)>) -> Self {
        let mut out = vec![Vec::new(); n];
        for &(from, to, hexagon) in &arcs {
            out[from].push((to, hexagon));
        }
        for list in &mut out {
            list.sort_unstable();
        }
        DirectedResonanceGraph { n, arcs, out }
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn arcs(&self) -> &[(usize, usize, usize)] {
        &self.arcs
    }

    pub fn out_arcs(&self, v: usize) -> &[(usize, usize)] {
        &self.out[v]
    }
}

/// Build R(H). Adjacency is found by flipping each alternating hexagon of
/// each matching and hashing the result, never by an all-pairs scan.
pub fn build_resonance_graph(system: &HexagonalSystem, limits: &Limits) -> Result<ResonanceGraph> {
    let matchings = enumerate_perfect_matchings(system, limits)?;
    let index: HashMap<Vec<usize>, usize> = matchings
        .iter()
        .map(|m| (m.edge_ids().to_vec(), m.id))
        .collect();
    let mut edges = Vec::new();
    let mut adj = vec![Vec::new(); matchings.len()];
    for m in &matchings {
        for (hexagon_id, hexagon) in system.hexagons().iter().enumerate() {
            let Some(class) = classify_hexagon(m, hexagon) else {
                continue;
            };
            let flipped = m.flip_hexagon(hexagon);
            let other = index
                .get(&flipped)
                .copied()
                .expect("a hexagon flip of a perfect matching is a perfect matching");
            if m.id < other {
                let partner_class = classify_hexagon(&matchings[other], hexagon)
                    .ok_or_else(|| internal_edge_error(m.id, other, hexagon_id))?;
                if partner_class == class {
                    return Err(internal_edge_error(m.id, other, hexagon_id));
                }
                let edge_id = edges.len();
                edges.push(ResonanceEdge {
                    a: m.id,
                    b: other,
                    hexagon: hexagon_id,
                    proper_in_a: class == SextetClass::Proper,
                    proper_in_b: partner_class == SextetClass::Proper,
                });
                adj[m.id].push((other, edge_id));
                adj[other].push((m.id, edge_id));
            }
        }
    }
    for list in &mut adj {
        list.sort_unstable();
    }
    Ok(ResonanceGraph {
        matchings,
        edges,
        adj,
        index,
    })
}

fn internal_edge_error(a: usize, b: usize, hexagon: usize) -> Error {
    Error::Invalid(format!(
        "internal: resonance edge {a}-{b} has hexagon {hexagon} not alternating properly in exactly one endpoint"
    ))
}

/// Direct each edge from its proper side toward its improper side.
pub fn orient(rg: &ResonanceGraph) -> Result<DirectedResonanceGraph> {
    let mut arcs = Vec::with_capacity(rg.edge_count());
    for e in rg.edges() {
        if e.proper_in_a == e.proper_in_b {
            return Err(internal_edge_error(e.a, e.b, e.hexagon));
        }
        if e.proper_in_a {
            arcs.push((e.a, e.b, e.hexagon));
        } else {
            arcs.push((e.b, e.a, e.hexagon));
        }
    }
    Ok(DirectedResonanceGraph::new(rg.vertex_count(), arcs))
}

/// Kahn topological sort over the orientation; on failure returns the
/// directed cycle that blocks it.
pub fn assert_acyclic(drg: &DirectedResonanceGraph) -> Result<Vec<usize>> {
    let n = drg.vertex_count();
    let mut indegree = vec![0usize; n];
    for &(_, to, _) in drg.arcs() {
        indegree[to] += 1;
    }
    let mut ready: std::collections::BTreeSet<usize> = (0..n)
        .filter(|&v| indegree[v] == 0)
        .collect();
    let mut order = Vec::with_capacity(n);
    let mut remaining = vec![true; n];
    while let Some(&v) = ready.iter().next() {
        ready.remove(&v);
        remaining[v] = false;
        order.push(v);
        for &(to, _) in drg.out_arcs(v) {
            indegree[to] -= 1;
            if indegree[to] == 0 {
                ready.insert(to);
            }
        }
    }
    if order.len() == n {
        return Ok(order);
    }
    // Every leftover vertex keeps an incoming arc from the leftovers, so a
    // backward walk must revisit a vertex; the revisited stretch, reversed,
    // is a directed cycle.
    let mut preds = vec![Vec::new(); n];
    for &(from, to, _) in drg.arcs() {
        preds[to].push(from);
    }
    let start = remaining.iter().position(|&r| r).expect("leftover vertex");
    let mut seen_at = HashMap::new();
    let mut path = vec![start];
    seen_at.insert(start, 0usize);
    loop {
        let cur = *path.last().expect("nonempty");
        let prev = preds[cur]
            .iter()
            .copied()
            .find(|&p| remaining[p])
            .expect("leftover vertices have leftover predecessors");
        if let Some(&at) = seen_at.get(&prev) {
            let mut cycle = path[at..].to_vec();
            cycle.reverse();
            return Err(Error::DirectedCycle(cycle));
        }
        seen_at.insert(prev, path.len());
        path.push(prev);
    }
}

/// DOT rendering of the undirected resonance graph; vertices are `m<id>`,
/// edges carry the hexagon cell.
pub fn dot_undirected(rg: &ResonanceGraph, system: &HexagonalSystem) -> String {
    let mut out = String::from("graph resonance {\n");
    for m in rg.matchings() {
        out.push_str(&format!("  m{};\n", m.id));
    }
    for e in rg.edges() {
        let cell = system.hexagons()[e.hexagon].cell;
        out.push_str(&format!("  m{} -- m{} [label=\"{}\"];\n", e.a, e.b, cell));
    }
    out.push_str("}\n");
    out
}

/// DOT rendering of the orientation.
pub fn dot_directed(drg: &DirectedResonanceGraph, system: &HexagonalSystem) -> String {
    let mut out = String::from("digraph resonance {\n");
    for v in 0..drg.vertex_count() {
        out.push_str(&format!("  m{v};\n"));
    }
    for &(from, to, hexagon) in drg.arcs() {
        let cell = system.hexagons()[hexagon].cell;
        out.push_str(&format!("  m{from} -> m{to} [label=\"{cell}\"];\n"));
    }
    out.push_str("}\n");
    out
}

/// JSON export: `{"vertices": n, "edges": [[i, j, "q r"], ...]}`.
pub fn to_json(rg: &ResonanceGraph, system: &HexagonalSystem) -> serde_json::Value {
    let edges: Vec<serde_json::Value> = rg
        .edges()
        .iter()
        .map(|e| {
            let cell = system.hexagons()[e.hexagon].cell;
            serde_json::json!([e.a, e.b, format!("{} {}", cell.q, cell.r)])
        })
        .collect();
    serde_json::json!({
        "vertices": rg.vertex_count(),
        "edges": edges,
    })
}
