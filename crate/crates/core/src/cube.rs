//! Induced hypercubes of simple graphs.
//!
//! Holds the generic graph container together with the cube-side machinery:
//! exhaustive induced-hypercube enumeration, the cube polynomial, the
//! containment poset's maximal elements, the brute-force median-graph check,
//! Fibonacci cube generation, and a backtracking isomorphism test for small
//! graphs.

use std::collections::{BTreeMap, HashMap, HashSet, VecDeque};

use num_bigint::BigInt;

use crate::poly::IntPolynomial;
use crate::{Error, Limits, Result};

/// Undirected simple graph on vertices `0..n` with sorted adjacency lists.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SimpleGraph {
    adj: Vec<Vec<usize>>,
}

impl SimpleGraph {
    pub fn new(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut adj = vec![Vec::new(); n];
        let mut seen = HashSet::new();
        for &(i, j) in edges {
            if i >= n || j >= n {
                return Err(Error::Invalid(format!(
                    "edge ({i},{j}) out of range for {n} vertices"
                )));
            }
            if i == j {
                return Err(Error::Invalid(format!("loop at vertex {i}")));
            }
            if !seen.insert((i.min(j), i.max(j))) {
                return Err(Error::Invalid(format!("parallel edge ({i},{j})")));
            }
            adj[i].push(j);
            adj[j].push(i);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        Ok(SimpleGraph { adj })
    }

    pub fn vertex_count(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|l| l.len()).sum::<usize>() / 2
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn adjacent(&self, u: usize, v: usize) -> bool {
        self.adj[u].binary_search(&v).is_ok()
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    /// Sorted edge list.
    pub fn edge_list(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for (i, list) in self.adj.iter().enumerate() {
            for &j in list {
                if i < j {
                    out.push((i, j));
                }
            }
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        if self.adj.is_empty() {
            return false;
        }
        let mut seen = vec![false; self.adj.len()];
        let mut queue = VecDeque::from([0usize]);
        seen[0] = true;
        let mut count = 1;
        while let Some(v) = queue.pop_front() {
            for &w in &self.adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    count += 1;
                    queue.push_back(w);
                }
            }
        }
        count == self.adj.len()
    }

    /// JSON shape `{"n": int, "edges": [[i,j], ...]}`. Parsing also accepts
    /// `"vertices"` for the count and ignores edge labels beyond the two
    /// endpoints, so resonance-graph exports load directly.
    pub fn to_json(&self) -> serde_json::Value {
        let edges: Vec<serde_json::Value> = self
            .edge_list()
            .iter()
            .map(|&(i, j)| serde_json::json!([i, j]))
            .collect();
        serde_json::json!({ "n": self.vertex_count(), "edges": edges })
    }

    pub fn from_json(value: &serde_json::Value) -> Result<Self> {
        let n = value
            .get("n")
            .or_else(|| value.get("vertices"))
            .and_then(|v| v.as_u64())
            .ok_or_else(|| Error::Invalid("graph JSON needs \"n\" or \"vertices\"".into()))?;
        let raw_edges = value
            .get("edges")
            .and_then(|v| v.as_array())
            .ok_or_else(|| Error::Invalid("graph JSON needs \"edges\"".into()))?;
        let mut edges = Vec::with_capacity(raw_edges.len());
        for e in raw_edges {
            let pair = e.as_array().filter(|a| a.len() >= 2);
            let (i, j) = pair
                .and_then(|a| a[0].as_u64().zip(a[1].as_u64()))
                .ok_or_else(|| Error::Invalid(format!("bad edge entry {e}")))?;
            edges.push((i as usize, j as usize));
        }
        SimpleGraph::new(n as usize, &edges)
    }
}

/// An induced subgraph isomorphic to a hypercube, recorded as its sorted
/// vertex set.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct HypercubeEmbedding {
    pub vertices: Vec<usize>,
    pub dim: usize,
}

/// Exhaustive binary-labeling check: does `set` induce a `dim`-cube?
/// Labels are grown by BFS from the minimum vertex and then adjacency is
/// compared against Hamming distance 1 in both directions.
pub fn is_induced_hypercube(graph: &SimpleGraph, set: &[usize]) -> Option<usize> {
    let k = set.len();
    if k == 0 || (k & (k - 1)) != 0 {
        return None;
    }
    let dim = k.trailing_zeros() as usize;
    let in_set: HashSet<usize> = set.iter().copied().collect();
    if in_set.len() != k {
        return None;
    }
    let root = *set.iter().min().expect("nonempty");
    let mut labels: HashMap<usize, u64> = HashMap::from([(root, 0)]);
    let root_neighbors: Vec<usize> = graph
        .neighbors(root)
        .iter()
        .copied()
        .filter(|v| in_set.contains(v))
        .collect();
    if root_neighbors.len() != dim {
        return None;
    }
    for (bit, &v) in root_neighbors.iter().enumerate() {
        labels.insert(v, 1 << bit);
    }
    let mut frontier = root_neighbors;
    while labels.len() < k {
        let mut next = Vec::new();
        for &v in &frontier {
            for &w in graph.neighbors(v) {
                if !in_set.contains(&w) || labels.contains_key(&w) {
                    continue;
                }
                // label(w) must be the union of two labeled neighbors that
                // differ from it in one bit each
                let known: Vec<u64> = graph
                    .neighbors(w)
                    .iter()
                    .filter_map(|x| labels.get(x).copied())
                    .collect();
                if known.len() < 2 {
                    continue;
                }
                let candidate = known[0] | known[1];
                labels.insert(w, candidate);
                next.push(w);
            }
        }
        if next.is_empty() {
            return None; // not connected enough to label
        }
        frontier = next;
    }
    // bijectivity onto {0,1}^dim
    let mut used = vec![false; k];
    for &label in labels.values() {
        let idx = label as usize;
        if idx >= k || used[idx] {
            return None;
        }
        used[idx] = true;
    }
    // adjacency inside the set must be exactly Hamming distance 1
    for (i, &u) in set.iter().enumerate() {
        for &v in &set[i + 1..] {
            let hamming_one = (labels[&u] ^ labels[&v]).count_ones() == 1;
            if graph.adjacent(u, v) != hamming_one {
                return None;
            }
        }
    }
    Some(dim)
}

/// All vertex sets inducing hypercubes, grouped by dimension. Dimension n is
/// grown from dimension n-1: for each recorded cube S and each neighbor w of
/// its minimum vertex outside S, a partner map is completed by backtracking
/// and the candidate set is validated in full before being recorded.
pub fn enumerate_induced_hypercubes(
    graph: &SimpleGraph,
    limits: &Limits,
) -> Result<BTreeMap<usize, Vec<HypercubeEmbedding>>> {
    let n = graph.vertex_count();
    let mut by_dim: BTreeMap<usize, Vec<HypercubeEmbedding>> = BTreeMap::new();
    let mut total = 0usize;
    let push = |dim: usize,
                    vertices: Vec<usize>,
                    by_dim: &mut BTreeMap<usize, Vec<HypercubeEmbedding>>,
                    total: &mut usize|
     -> Result<()> {
        *total += 1;
        if *total > limits.max_cubes {
            return Err(Error::CapExceeded {
                what: "induced hypercube enumeration",
                cap: limits.max_cubes,
            });
        }
        by_dim
            .entry(dim)
            .or_default()
            .push(HypercubeEmbedding { vertices, dim });
        Ok(())
    };
    if n == 0 {
        return Ok(by_dim);
    }
    for v in 0..n {
        push(0, vec![v], &mut by_dim, &mut total)?;
    }
    for (i, j) in graph.edge_list() {
        push(1, vec![i, j], &mut by_dim, &mut total)?;
    }
    let mut dim = 2;
    while let Some(previous) = by_dim.get(&(dim - 1)) {
        let mut found: HashSet<Vec<usize>> = HashSet::new();
        for embedding in previous {
            let base = embedding.vertices[0];
            for &w in graph.neighbors(base) {
                if embedding.vertices.binary_search(&w).is_ok() {
                    continue;
                }
                extend_with_partner(graph, &embedding.vertices, w, &mut found);
            }
        }
        if found.is_empty() {
            break;
        }
        let mut fresh: Vec<Vec<usize>> = found.into_iter().collect();
        fresh.sort_unstable();
        for vertices in fresh {
            push(dim, vertices, &mut by_dim, &mut total)?;
        }
        dim += 1;
    }
    Ok(by_dim)
}

/// Try to pair every vertex of `cube` with a fresh partner so that the union
/// induces a hypercube one dimension up; `base_partner` is forced as the
/// partner of the minimum vertex. Candidate partners may be ambiguous, so the
/// map is completed by backtracking and each completed set is validated.
fn extend_with_partner(
    graph: &SimpleGraph,
    cube: &[usize],
    base_partner: usize,
    found: &mut HashSet<Vec<usize>>,
) {
    let in_cube: HashSet<usize> = cube.iter().copied().collect();
    // BFS order over the cube's induced adjacency so every vertex after the
    // first has a previously mapped neighbor.
    let mut order = vec![cube[0]];
    let mut seen: HashSet<usize> = HashSet::from([cube[0]]);
    let mut head = 0;
    while head < order.len() {
        let v = order[head];
        head += 1;
        for &w in graph.neighbors(v) {
            if in_cube.contains(&w) && seen.insert(w) {
                order.push(w);
            }
        }
    }
    if order.len() != cube.len() {
        return; // disconnected set cannot be a hypercube face
    }
    let mut partner: HashMap<usize, usize> = HashMap::from([(cube[0], base_partner)]);
    let mut used: HashSet<usize> = HashSet::from([base_partner]);
    backtrack_partners(graph, &order, 1, &in_cube, &mut partner, &mut used, found);
}

fn backtrack_partners(
    graph: &SimpleGraph,
    order: &[usize],
    depth: usize,
    in_cube: &HashSet<usize>,
    partner: &mut HashMap<usize, usize>,
    used: &mut HashSet<usize>,
    found: &mut HashSet<Vec<usize>>,
) {
    if depth == order.len() {
        let mut vertices: Vec<usize> = in_cube.iter().copied().collect();
        vertices.extend(partner.values().copied());
        vertices.sort_unstable();
        if found.contains(&vertices) {
            return;
        }
        if is_induced_hypercube(graph, &vertices) == Some(order.len().trailing_zeros() as usize + 1)
        {
            found.insert(vertices);
        }
        return;
    }
    let v = order[depth];
    // candidates: neighbors of v outside the cube, adjacent to the partner of
    // every already-mapped cube-neighbor of v
    let mapped_neighbors: Vec<usize> = graph
        .neighbors(v)
        .iter()
        .filter(|w| in_cube.contains(w))
        .filter_map(|w| partner.get(w).copied())
        .collect();
    let candidates: Vec<usize> = graph
        .neighbors(v)
        .iter()
        .copied()
        .filter(|c| !in_cube.contains(c) && !used.contains(c))
        .filter(|&c| mapped_neighbors.iter().all(|&p| graph.adjacent(c, p)))
        .collect();
    for c in candidates {
        partner.insert(v, c);
        used.insert(c);
        backtrack_partners(graph, order, depth + 1, in_cube, partner, used, found);
        partner.remove(&v);
        used.remove(&c);
    }
}

/// `C(G, x)`: coefficient i counts induced i-cubes.
pub fn cube_polynomial(graph: &SimpleGraph, limits: &Limits) -> Result<IntPolynomial> {
    let cubes = enumerate_induced_hypercubes(graph, limits)?;
    let top = cubes.keys().max().copied().unwrap_or(0);
    let mut coeffs = vec![BigInt::from(0); top + 1];
    for (dim, list) in &cubes {
        coeffs[*dim] = BigInt::from(list.len());
    }
    Ok(IntPolynomial::new(coeffs))
}

/// Embeddings whose vertex set is contained in no other embedding's set.
pub fn maximal_hypercubes(
    graph: &SimpleGraph,
    limits: &Limits,
) -> Result<Vec<HypercubeEmbedding>> {
    let cubes = enumerate_induced_hypercubes(graph, limits)?;
    let mut all: Vec<&HypercubeEmbedding> = cubes.values().flatten().collect();
    all.sort_by_key(|e| (e.dim, e.vertices.clone()));
    let mut maximal = Vec::new();
    for e in &all {
        let contained = all.iter().any(|other| {
            other.dim > e.dim
                && e.vertices
                    .iter()
                    .all(|v| other.vertices.binary_search(v).is_ok())
        });
        if !contained {
            maximal.push((*e).clone());
        }
    }
    Ok(maximal)
}

/// Outcome of the median-graph triple check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MedianCheck {
    Median,
    NotMedian {
        triple: (usize, usize, usize),
        median_count: usize,
    },
}

impl MedianCheck {
    pub fn is_median(&self) -> bool {
        matches!(self, MedianCheck::Median)
    }
}

/// Brute-force median test over all vertex triples, using all-pairs BFS
/// distances. Exact and intentionally free of cleverness.
pub fn is_median_graph(graph: &SimpleGraph, limits: &Limits) -> Result<MedianCheck> {
    let n = graph.vertex_count();
    if n == 0 {
        return Err(Error::Invalid("median check on the empty graph".into()));
    }
    if n > limits.median_bound {
        return Err(Error::SizeBound {
            what: "median triple check",
            bound: limits.median_bound,
            got: n,
        });
    }
    if !graph.is_connected() {
        return Err(Error::Invalid("median check needs a connected graph".into()));
    }
    let dist = all_pairs_distances(graph);
    for u in 0..n {
        for v in u..n {
            for w in v..n {
                let mut medians = 0usize;
                for x in 0..n {
                    if dist[u][x] + dist[x][v] == dist[u][v]
                        && dist[u][x] + dist[x][w] == dist[u][w]
                        && dist[v][x] + dist[x][w] == dist[v][w]
                    {
                        medians += 1;
                        if medians > 1 {
                            break;
                        }
                    }
                }
                if medians != 1 {
                    return Ok(MedianCheck::NotMedian {
                        triple: (u, v, w),
                        median_count: medians,
                    });
                }
            }
        }
    }
    Ok(MedianCheck::Median)
}

fn all_pairs_distances(graph: &SimpleGraph) -> Vec<Vec<u32>> {
    let n = graph.vertex_count();
    let mut dist = vec![vec![u32::MAX; n]; n];
    for (s, row) in dist.iter_mut().enumerate() {
        row[s] = 0;
        let mut queue = VecDeque::from([s]);
        while let Some(v) = queue.pop_front() {
            for &w in graph.neighbors(v) {
                if row[w] == u32::MAX {
                    row[w] = row[v] + 1;
                    queue.push_back(w);
                }
            }
        }
    }
    dist
}

/// Fibonacci cube: vertices are the length-n binary strings without two
/// consecutive 1s, sorted numerically; edges join strings at Hamming
/// distance 1.
pub fn fibonacci_cube(n: usize, limits: &Limits) -> Result<SimpleGraph> {
    if n > limits.max_fibonacci_order {
        return Err(Error::SizeBound {
            what: "Fibonacci cube order",
            bound: limits.max_fibonacci_order,
            got: n,
        });
    }
    let mut strings = Vec::new();
    for value in 0u64..(1 << n) {
        if value & (value >> 1) == 0 {
            strings.push(value);
        }
    }
    let index: HashMap<u64, usize> = strings.iter().enumerate().map(|(i, &s)| (s, i)).collect();
    let mut edges = Vec::new();
    for (i, &s) in strings.iter().enumerate() {
        for bit in 0..n {
            let t = s ^ (1 << bit);
            if let Some(&j) = index.get(&t) {
                if i < j {
                    edges.push((i, j));
                }
            }
        }
    }
    SimpleGraph::new(strings.len(), &edges)
}

/// The n-dimensional hypercube graph.
pub fn hypercube_graph(n: usize) -> SimpleGraph {
    let size = 1usize << n;
    let mut edges = Vec::new();
    for v in 0..size {
        for bit in 0..n {
            let w = v ^ (1 << bit);
            if v < w {
                edges.push((v, w));
            }
        }
    }
    SimpleGraph::new(size, &edges).expect("hypercube is simple")
}

/// Isomorphism by backtracking with iterated neighborhood-color refinement
/// for pruning. Intended for small graphs.
pub fn graph_isomorphic(g1: &SimpleGraph, g2: &SimpleGraph, limits: &Limits) -> Result<bool> {
    let n = g1.vertex_count();
    for g in [g1, g2] {
        if g.vertex_count() > limits.iso_bound {
            return Err(Error::SizeBound {
                what: "isomorphism search",
                bound: limits.iso_bound,
                got: g.vertex_count(),
            });
        }
    }
    if n != g2.vertex_count() || g1.edge_count() != g2.edge_count() {
        return Ok(false);
    }
    if n == 0 {
        return Ok(true);
    }
    let colors1 = refine_colors(g1);
    let colors2 = refine_colors(g2);
    let histogram = |colors: &[u64]| {
        let mut h: BTreeMap<u64, usize> = BTreeMap::new();
        for &c in colors {
            *h.entry(c).or_insert(0) += 1;
        }
        h
    };
    if histogram(&colors1) != histogram(&colors2) {
        return Ok(false);
    }
    // order g1's vertices: rarest color first, then grow through neighbors
    let h1 = histogram(&colors1);
    let mut order: Vec<usize> = Vec::with_capacity(n);
    let mut placed = vec![false; n];
    while order.len() < n {
        let seed = (0..n)
            .filter(|&v| !placed[v])
            .min_by_key(|&v| (h1[&colors1[v]], colors1[v], v))
            .expect("vertex remains");
        let mut queue = VecDeque::from([seed]);
        placed[seed] = true;
        while let Some(v) = queue.pop_front() {
            order.push(v);
            for &w in g1.neighbors(v) {
                if !placed[w] {
                    placed[w] = true;
                    queue.push_back(w);
                }
            }
        }
    }
    let mut mapping = vec![usize::MAX; n];
    let mut used = vec![false; n];
    Ok(match_next(
        g1, g2, &colors1, &colors2, &order, 0, &mut mapping, &mut used,
    ))
}

#[allow(clippy::too_many_arguments)]
fn match_next(
    g1: &SimpleGraph,
    g2: &SimpleGraph,
    colors1: &[u64],
    colors2: &[u64],
    order: &[usize],
    depth: usize,
    mapping: &mut Vec<usize>,
    used: &mut Vec<bool>,
) -> bool {
    if depth == order.len() {
        return true;
    }
    let v = order[depth];
    'candidates: for c in 0..g2.vertex_count() {
        if used[c] || colors2[c] != colors1[v] {
            continue;
        }
        for &w in g1.neighbors(v) {
            if mapping[w] != usize::MAX && !g2.adjacent(c, mapping[w]) {
                continue 'candidates;
            }
        }
        // non-adjacency is preserved iff c has no extra used neighbors
        let mapped_nb = g1
            .neighbors(v)
            .iter()
            .filter(|&&w| mapping[w] != usize::MAX)
            .count();
        let back_count = g2.neighbors(c).iter().filter(|&&w2| used[w2]).count();
        if mapped_nb != back_count {
            continue;
        }
        mapping[v] = c;
        used[c] = true;
        if match_next(g1, g2, colors1, colors2, order, depth + 1, mapping, used) {
            return true;
        }
        mapping[v] = usize::MAX;
        used[c] = false;
    }
    false
}

/// Iterated color refinement; colors are stable hashes of (own color, sorted
/// neighbor colors).
fn refine_colors(graph: &SimpleGraph) -> Vec<u64> {
    let n = graph.vertex_count();
    let mut colors: Vec<u64> = (0..n).map(|v| graph.degree(v) as u64).collect();
    for _ in 0..n.max(1).ilog2() as usize + 2 {
        let mut next = Vec::with_capacity(n);
        for v in 0..n {
            let mut neighbor_colors: Vec<u64> =
                graph.neighbors(v).iter().map(|&w| colors[w]).collect();
            neighbor_colors.sort_unstable();
            next.push(stable_hash(colors[v], &neighbor_colors));
        }
        if next == colors {
            break;
        }
        colors = next;
    }
    colors
}

fn stable_hash(own: u64, neighbors: &[u64]) -> u64 {
    // FNV-1a over the color tuple
    let mut h = 0xcbf29ce484222325u64;
    let mut eat = |x: u64| {
        for byte in x.to_le_bytes() {
            h ^= byte as u64;
            h = h.wrapping_mul(0x100000001b3);
        }
    };
    eat(own);
    for &c in neighbors {
        eat(c);
    }
    h
}
