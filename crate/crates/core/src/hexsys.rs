//! Integer-lattice hexagonal systems.
//!
//! A cell is addressed by axial coordinates (q, r) and embedded with pointy-top
//! hexagons: the cell center sits at (2q + r, 3r) in scaled Cartesian
//! coordinates whose horizontal unit is sqrt(3)/2 and vertical unit is 1/2.
//! Under this embedding every hexagon has exactly two vertical edges, which is
//! what makes the proper/improper sextet distinction decidable from integer
//! coordinates alone.

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::{Error, Result};

/// Axial cell address.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct HexCell {
    pub q: i64,
    pub r: i64,
}

impl HexCell {
    pub fn new(q: i64, r: i64) -> Self {
        HexCell { q, r }
    }

    /// Center of the cell in scaled Cartesian coordinates.
    pub fn center(&self) -> LatticeVertex {
        LatticeVertex {
            u: 2 * self.q + self.r,
            v: 3 * self.r,
        }
    }
}

impl fmt::Display for HexCell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.q, self.r)
    }
}

/// Vertex of the embedded graph, in scaled Cartesian coordinates.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct LatticeVertex {
    pub u: i64,
    pub v: i64,
}

impl fmt::Display for LatticeVertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.u, self.v)
    }
}

/// Ring offsets from a cell center, clockwise from the upper-right vertex.
/// Edge i joins offsets i and i+1 (mod 6), so edge 0 is the right vertical
/// edge and edge 3 the left vertical edge.
pub const RING_OFFSETS: [(i64, i64); 6] = [(1, 1), (1, -1), (0, -2), (-1, -1), (-1, 1), (0, 2)];

/// Axial displacements of the six edge-adjacent cells.
pub const CELL_NEIGHBORS: [(i64, i64); 6] = [(1, 0), (0, 1), (-1, 1), (-1, 0), (0, -1), (1, -1)];

/// A cell whose full ring is present in the host graph.
#[derive(Clone, Debug)]
pub struct Hexagon {
    pub cell: HexCell,
    /// Vertex indices of the ring, in the canonical cyclic order.
    pub ring: [usize; 6],
    /// Edge ids of the ring; `edges[i]` joins `ring[i]` and `ring[(i+1)%6]`.
    pub edges: [usize; 6],
}

impl Hexagon {
    pub fn right_vertical(&self) -> usize {
        self.edges[0]
    }

    pub fn left_vertical(&self) -> usize {
        self.edges[3]
    }

    /// The two perfect matchings of the ring: the triple through the right
    /// vertical edge and the triple through the left one.
    pub fn proper_triple(&self) -> [usize; 3] {
        [self.edges[0], self.edges[2], self.edges[4]]
    }

    pub fn improper_triple(&self) -> [usize; 3] {
        [self.edges[1], self.edges[3], self.edges[5]]
    }
}

/// A (generalized) hexagonal system: a subgraph of the hexagonal lattice
/// together with the ambient cells it was built from. Immutable after
/// construction.
#[derive(Clone, Debug)]
pub struct HexagonalSystem {
    cells: Vec<HexCell>,
    vertices: Vec<LatticeVertex>,
    edges: Vec<(usize, usize)>,
    /// Per-vertex sorted list of (neighbor, edge id).
    adj: Vec<Vec<(usize, usize)>>,
    hexagons: Vec<Hexagon>,
    generalized: bool,
}

impl HexagonalSystem {
    /// Build a plain hexagonal system from a cell set. The cells must be
    /// edge-connected; duplicate cells collapse silently. A cell set that
    /// encloses a hole is accepted but marked generalized.
    pub fn from_cells<I: IntoIterator<Item = HexCell>>(cells: I) -> Result<Self> {
        let cells: BTreeSet<HexCell> = cells.into_iter().collect();
        if cells.is_empty() {
            return Err(Error::Validation("no cells given".into()));
        }
        check_cell_connectivity(&cells)?;
        let mut vertices = BTreeSet::new();
        let mut edges = BTreeSet::new();
        for cell in &cells {
            let ring = ring_vertices(cell);
            for i in 0..6 {
                vertices.insert(ring[i]);
                edges.insert(ordered(ring[i], ring[(i + 1) % 6]));
            }
        }
        let generalized = encloses_hole(&cells);
        Ok(Self::from_parts(cells, vertices, edges, generalized))
    }

    /// Assemble a system from explicit vertex and edge sets. Hexagons are the
    /// ambient cells whose full ring survives in the given sets.
    fn from_parts(
        cells: BTreeSet<HexCell>,
        vertex_set: BTreeSet<LatticeVertex>,
        edge_set: BTreeSet<(LatticeVertex, LatticeVertex)>,
        generalized: bool,
    ) -> Self {
        let vertices: Vec<LatticeVertex> = vertex_set.into_iter().collect();
        let index: HashMap<LatticeVertex, usize> = vertices
            .iter()
            .enumerate()
            .map(|(i, &p)| (p, i))
            .collect();
        let edges: Vec<(usize, usize)> = edge_set
            .into_iter()
            .map(|(a, b)| {
                let (i, j) = (index[&a], index[&b]);
                (i.min(j), i.max(j))
            })
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        let mut adj = vec![Vec::new(); vertices.len()];
        let mut edge_ids = HashMap::new();
        for (e, &(i, j)) in edges.iter().enumerate() {
            adj[i].push((j, e));
            adj[j].push((i, e));
            edge_ids.insert((i, j), e);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        let mut hexagons = Vec::new();
        for &cell in &cells {
            let ring_pts = ring_vertices(&cell);
            let Some(ring) = ring_pts
                .iter()
                .map(|p| index.get(p).copied())
                .collect::<Option<Vec<usize>>>()
            else {
                continue;
            };
            let ring_edges: Option<Vec<usize>> = (0..6)
                .map(|i| {
                    let a = ring[i];
                    let b = ring[(i + 1) % 6];
                    edge_ids.get(&(a.min(b), a.max(b))).copied()
                })
                .collect();
            if let Some(ring_edges) = ring_edges {
                hexagons.push(Hexagon {
                    cell,
                    ring: ring.try_into().expect("six ring vertices"),
                    edges: ring_edges.try_into().expect("six ring edges"),
                });
            }
        }
        HexagonalSystem {
            cells: cells.into_iter().collect(),
            vertices,
            edges,
            adj,
            hexagons,
            generalized,
        }
    }

    pub fn cells(&self) -> &[HexCell] {
        &self.cells
    }

    pub fn vertices(&self) -> &[LatticeVertex] {
        &self.vertices
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Endpoints of edge `e` as (smaller index, larger index).
    pub fn edge(&self, e: usize) -> (usize, usize) {
        self.edges[e]
    }

    pub fn adjacency(&self) -> &[Vec<(usize, usize)>] {
        &self.adj
    }

    pub fn hexagons(&self) -> &[Hexagon] {
        &self.hexagons
    }

    pub fn hexagon_count(&self) -> usize {
        self.hexagons.len()
    }

    pub fn generalized(&self) -> bool {
        self.generalized
    }

    /// Index of the hexagon centered at `cell`, if its ring is intact.
    pub fn hexagon_at(&self, cell: HexCell) -> Option<usize> {
        self.hexagons.iter().position(|h| h.cell == cell)
    }

    /// The `.hex` serialization: one `q r` line per cell, sorted.
    pub fn to_hex_text(&self) -> String {
        let mut out = String::new();
        for cell in &self.cells {
            out.push_str(&format!("{} {}\n", cell.q, cell.r));
        }
        out
    }

    /// Remove the six vertices of hexagon `h` and all incident edges. The
    /// result is generalized and may be empty or disconnected.
    pub fn delete_hexagon(&self, h: usize) -> Result<HexagonalSystem> {
        self.delete_sextet_pattern(&[h])
    }

    /// Remove the vertices of a set of pairwise disjoint hexagons; equivalent
    /// to iterating `delete_hexagon` in any order.
    pub fn delete_sextet_pattern(&self, hexagon_ids: &[usize]) -> Result<HexagonalSystem> {
        let mut removed: BTreeSet<usize> = BTreeSet::new();
        for &h in hexagon_ids {
            let hexagon = self
                .hexagons
                .get(h)
                .ok_or_else(|| Error::Invalid(format!("hexagon index {h} out of range")))?;
            for &v in &hexagon.ring {
                if !removed.insert(v) {
                    return Err(Error::Invalid(format!(
                        "hexagons in the pattern overlap at vertex {}",
                        self.vertices[v]
                    )));
                }
            }
        }
        let vertex_set: BTreeSet<LatticeVertex> = self
            .vertices
            .iter()
            .enumerate()
            .filter(|(i, _)| !removed.contains(i))
            .map(|(_, &p)| p)
            .collect();
        let edge_set: BTreeSet<(LatticeVertex, LatticeVertex)> = self
            .edges
            .iter()
            .filter(|(i, j)| !removed.contains(i) && !removed.contains(j))
            .map(|&(i, j)| ordered(self.vertices[i], self.vertices[j]))
            .collect();
        // the empty pattern leaves the system untouched
        let generalized = if removed.is_empty() {
            self.generalized
        } else {
            true
        };
        Ok(Self::from_parts(
            self.cells.iter().copied().collect(),
            vertex_set,
            edge_set,
            generalized,
        ))
    }

    /// Mirror image across a vertical axis. Swaps left and right, hence
    /// proper and improper sextets downstream.
    pub fn reflect(&self) -> HexagonalSystem {
        let cells: BTreeSet<HexCell> = self
            .cells
            .iter()
            .map(|c| HexCell::new(-c.q - c.r, c.r))
            .collect();
        let vertex_set: BTreeSet<LatticeVertex> =
            self.vertices.iter().map(|p| mirror_vertex(*p)).collect();
        let edge_set: BTreeSet<(LatticeVertex, LatticeVertex)> = self
            .edges
            .iter()
            .map(|&(i, j)| ordered(mirror_vertex(self.vertices[i]), mirror_vertex(self.vertices[j])))
            .collect();
        Self::from_parts(cells, vertex_set, edge_set, self.generalized)
    }

    /// Map a vertex of this system to the corresponding vertex index of the
    /// mirror image.
    pub fn reflected_vertex_index(&self, mirror: &HexagonalSystem, v: usize) -> Option<usize> {
        let target = mirror_vertex(self.vertices[v]);
        mirror.vertices.binary_search(&target).ok()
    }
}

fn mirror_vertex(p: LatticeVertex) -> LatticeVertex {
    LatticeVertex { u: -p.u, v: p.v }
}

fn ordered(a: LatticeVertex, b: LatticeVertex) -> (LatticeVertex, LatticeVertex) {
    if a <= b {
        (a, b)
    } else {
        (b, a)
    }
}

fn ring_vertices(cell: &HexCell) -> [LatticeVertex; 6] {
    let c = cell.center();
    RING_OFFSETS.map(|(du, dv)| LatticeVertex {
        u: c.u + du,
        v: c.v + dv,
    })
}

fn check_cell_connectivity(cells: &BTreeSet<HexCell>) -> Result<()> {
    let root = *cells.iter().next().expect("nonempty");
    let mut seen = BTreeSet::from([root]);
    let mut queue = VecDeque::from([root]);
    while let Some(cell) = queue.pop_front() {
        for (dq, dr) in CELL_NEIGHBORS {
            let next = HexCell::new(cell.q + dq, cell.r + dr);
            if cells.contains(&next) && seen.insert(next) {
                queue.push_back(next);
            }
        }
    }
    if let Some(&stranded) = cells.iter().find(|c| !seen.contains(c)) {
        return Err(Error::DisconnectedCells {
            a: root,
            b: stranded,
        });
    }
    Ok(())
}

/// True when the complement of the cell set has a bounded component, i.e. the
/// cells enclose a hole (a coronoid). Checked on a margin-padded bounding box.
fn encloses_hole(cells: &BTreeSet<HexCell>) -> bool {
    let (mut q_min, mut q_max, mut r_min, mut r_max) = (i64::MAX, i64::MIN, i64::MAX, i64::MIN);
    for c in cells {
        q_min = q_min.min(c.q);
        q_max = q_max.max(c.q);
        r_min = r_min.min(c.r);
        r_max = r_max.max(c.r);
    }
    let (q_min, q_max, r_min, r_max) = (q_min - 1, q_max + 1, r_min - 1, r_max + 1);
    let start = HexCell::new(q_min, r_min);
    let mut seen = BTreeSet::from([start]);
    let mut queue = VecDeque::from([start]);
    while let Some(cell) = queue.pop_front() {
        for (dq, dr) in CELL_NEIGHBORS {
            let next = HexCell::new(cell.q + dq, cell.r + dr);
            if next.q < q_min || next.q > q_max || next.r < r_min || next.r > r_max {
                continue;
            }
            if !cells.contains(&next) && seen.insert(next) {
                queue.push_back(next);
            }
        }
    }
    for q in q_min..=q_max {
        for r in r_min..=r_max {
            let cell = HexCell::new(q, r);
            if !cells.contains(&cell) && !seen.contains(&cell) {
                return true;
            }
        }
    }
    false
}

/// Parse the `.hex` format: one `q r` cell per line, `#` comments and blank
/// lines ignored, duplicates collapsed.
pub fn parse_hex_file(text: &str) -> Result<HexagonalSystem> {
    let mut cells = BTreeSet::new();
    for (number, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        let parsed: Option<(i64, i64)> = match fields.as_slice() {
            [q, r] => q.parse().ok().zip(r.parse().ok()),
            _ => None,
        };
        let Some((q, r)) = parsed else {
            return Err(Error::Parse {
                line: number + 1,
                msg: format!("expected two integers `q r`, got `{}`", line),
            });
        };
        cells.insert(HexCell::new(q, r));
    }
    HexagonalSystem::from_cells(cells)
}

/// Named systems and parametric families used throughout the test catalog.
pub fn catalog(name: &str, n: Option<usize>, seed: Option<u64>) -> Result<HexagonalSystem> {
    let need_n = |param: Option<usize>| {
        param.ok_or_else(|| Error::MissingParam {
            name: name.to_string(),
            param: "n",
        })
    };
    let cells: Vec<HexCell> = match name {
        "benzene" => vec![HexCell::new(0, 0)],
        "naphthalene" => chain_cells(&[(1, 0)]),
        "anthracene" => return catalog("linear", Some(3), None),
        "phenanthrene" => return catalog("zigzag", Some(3), None),
        "triphenylene" => vec![
            HexCell::new(0, 0),
            HexCell::new(1, 0),
            HexCell::new(-1, 1),
            HexCell::new(0, -1),
        ],
        "pyrene" => vec![
            HexCell::new(0, 0),
            HexCell::new(1, 0),
            HexCell::new(0, 1),
            HexCell::new(1, 1),
        ],
        "coronene" => {
            let mut cells = vec![HexCell::new(0, 0)];
            cells.extend(CELL_NEIGHBORS.map(|(dq, dr)| HexCell::new(dq, dr)));
            cells
        }
        "linear" => {
            let n = need_n(n)?;
            (0..n as i64).map(|i| HexCell::new(i, 0)).collect()
        }
        "zigzag" => {
            let n = need_n(n)?;
            let mut cells = vec![HexCell::new(0, 0)];
            let mut cur = HexCell::new(0, 0);
            for i in 1..n {
                let step = if i % 2 == 1 { (1, 0) } else { (0, 1) };
                cur = HexCell::new(cur.q + step.0, cur.r + step.1);
                cells.push(cur);
            }
            cells
        }
        "random_cata" => {
            let n = need_n(n)?;
            let seed = seed.ok_or_else(|| Error::MissingParam {
                name: name.to_string(),
                param: "seed",
            })?;
            random_catafusene(n, seed)?
        }
        other => return Err(Error::UnknownCatalog(other.to_string())),
    };
    if cells.is_empty() {
        return Err(Error::MissingParam {
            name: name.to_string(),
            param: "n >= 1",
        });
    }
    HexagonalSystem::from_cells(cells)
}

fn chain_cells(steps: &[(i64, i64)]) -> Vec<HexCell> {
    let mut cells = vec![HexCell::new(0, 0)];
    let mut cur = HexCell::new(0, 0);
    for &(dq, dr) in steps {
        cur = HexCell::new(cur.q + dq, cur.r + dr);
        cells.push(cur);
    }
    cells
}

/// A random hexagonal chain: each new cell is adjacent to the previous cell
/// only, so the dualist stays a path and no three rings share a vertex.
/// Rejection sampling with a fixed retry cap keeps runs reproducible.
fn random_catafusene(n: usize, seed: u64) -> Result<Vec<HexCell>> {
    const RETRY_CAP: usize = 1000;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut retries = 0;
    'attempt: loop {
        let mut cells = vec![HexCell::new(0, 0)];
        let mut set = BTreeSet::from([HexCell::new(0, 0)]);
        while cells.len() < n {
            let last = *cells.last().expect("nonempty");
            let mut placed = false;
            for _ in 0..12 {
                let (dq, dr) = CELL_NEIGHBORS[rng.gen_range(0..6)];
                let cand = HexCell::new(last.q + dq, last.r + dr);
                if set.contains(&cand) {
                    continue;
                }
                let touches_older = CELL_NEIGHBORS.iter().any(|&(aq, ar)| {
                    let nb = HexCell::new(cand.q + aq, cand.r + ar);
                    nb != last && set.contains(&nb)
                });
                if touches_older {
                    continue;
                }
                cells.push(cand);
                set.insert(cand);
                placed = true;
                break;
            }
            if !placed {
                retries += 1;
                if retries >= RETRY_CAP {
                    return Err(Error::RandomCataExhausted { retries });
                }
                continue 'attempt;
            }
        }
        return Ok(cells);
    }
}

/// Fixed catalog names that take no parameters.
pub const NAMED_SYSTEMS: [&str; 7] = [
    "benzene",
    "naphthalene",
    "anthracene",
    "phenanthrene",
    "triphenylene",
    "pyrene",
    "coronene",
];

/// The verification catalog: every named system, linear and zigzag chains for
/// n = 1..=8, and twenty seeded random catafusenes with 3 to 8 hexagons.
pub fn catalog_suite() -> Vec<(String, HexagonalSystem)> {
    let mut suite = Vec::new();
    for name in NAMED_SYSTEMS {
        suite.push((name.to_string(), catalog(name, None, None).expect("named")));
    }
    for n in 1..=8 {
        suite.push((
            format!("linear({n})"),
            catalog("linear", Some(n), None).expect("linear"),
        ));
        suite.push((
            format!("zigzag({n})"),
            catalog("zigzag", Some(n), None).expect("zigzag"),
        ));
    }
    for seed in 1..=20u64 {
        let n = 3 + ((seed as usize - 1) % 6);
        suite.push((
            format!("random_cata({n},seed={seed})"),
            catalog("random_cata", Some(n), Some(seed)).expect("random catafusene"),
        ));
    }
    suite
}

/// Ring-count defect: for a 2-connected benzenoid (cata- or peri-fused),
/// |E| = |V| + #hexagons - 1, so this is zero.
pub fn euler_ring_defect(system: &HexagonalSystem) -> i64 {
    system.edge_count() as i64 - system.vertex_count() as i64 - system.hexagon_count() as i64 + 1
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_cell_parses() {
        let h = parse_hex_file("0 0").unwrap();
        assert_eq!(h.vertex_count(), 6);
        assert_eq!(h.edge_count(), 6);
        assert_eq!(h.hexagon_count(), 1);
        assert!(!h.generalized());
    }

    #[test]
    fn comments_blanks_and_duplicates() {
        let h = parse_hex_file("# benzene\n\n0 0   # the only cell\n0 0\n").unwrap();
        assert_eq!(h.cells(), &[HexCell::new(0, 0)]);
    }

    #[test]
    fn parse_error_carries_line_number() {
        let err = parse_hex_file("0 0\n1 zero\n").unwrap_err();
        match err {
            Error::Parse { line, .. } => assert_eq!(line, 2),
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn disconnected_cells_rejected() {
        let err = parse_hex_file("0 0\n5 5\n").unwrap_err();
        match err {
            Error::DisconnectedCells { a, b } => {
                assert_ne!(a, b);
            }
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn pyrene_and_coronene_counts() {
        let pyrene = catalog("pyrene", None, None).unwrap();
        assert_eq!(
            (pyrene.vertex_count(), pyrene.edge_count(), pyrene.hexagon_count()),
            (16, 19, 4)
        );
        let coronene = catalog("coronene", None, None).unwrap();
        assert_eq!(
            (
                coronene.vertex_count(),
                coronene.edge_count(),
                coronene.hexagon_count()
            ),
            (24, 30, 7)
        );
    }

    #[test]
    fn catalog_euler_relation() {
        for (name, system) in catalog_suite() {
            assert_eq!(euler_ring_defect(&system), 0, "{name}");
        }
    }

    #[test]
    fn benzene_equals_parse_of_origin() {
        let a = catalog("benzene", None, None).unwrap();
        let b = parse_hex_file("0 0").unwrap();
        assert_eq!(a.cells(), b.cells());
        assert_eq!(a.vertices(), b.vertices());
        assert_eq!(a.edges(), b.edges());
    }

    #[test]
    fn linear_three_is_anthracene() {
        let h = catalog("linear", Some(3), None).unwrap();
        assert_eq!((h.vertex_count(), h.edge_count(), h.hexagon_count()), (14, 16, 3));
        let named = catalog("anthracene", None, None).unwrap();
        assert_eq!(h.cells(), named.cells());
    }

    #[test]
    fn zigzag_two_is_naphthalene() {
        let z = catalog("zigzag", Some(2), None).unwrap();
        let n = catalog("naphthalene", None, None).unwrap();
        assert_eq!(z.cells(), n.cells());
    }

    #[test]
    fn delete_benzene_hexagon_gives_empty() {
        let h = catalog("benzene", None, None).unwrap();
        let d = h.delete_hexagon(0).unwrap();
        assert_eq!(d.vertex_count(), 0);
        assert_eq!(d.edge_count(), 0);
        assert_eq!(d.hexagon_count(), 0);
        assert!(d.generalized());
    }

    #[test]
    fn delete_naphthalene_hexagon_leaves_path() {
        let h = catalog("naphthalene", None, None).unwrap();
        let d = h.delete_hexagon(0).unwrap();
        assert_eq!(d.vertex_count(), 4);
        assert_eq!(d.edge_count(), 3);
        assert_eq!(d.hexagon_count(), 0);
        let degrees: Vec<usize> = (0..4).map(|v| d.adjacency()[v].len()).collect();
        let ones = degrees.iter().filter(|&&d| d == 1).count();
        assert_eq!(ones, 2, "a path has exactly two endpoints");
    }

    #[test]
    fn delete_anthracene_middle_gives_two_paths() {
        let h = catalog("anthracene", None, None).unwrap();
        let middle = h.hexagon_at(HexCell::new(1, 0)).unwrap();
        let d = h.delete_hexagon(middle).unwrap();
        assert_eq!(d.vertex_count(), 8);
        assert_eq!(d.edge_count(), 6);
        assert_eq!(d.hexagon_count(), 0);
    }

    #[test]
    fn delete_empty_pattern_is_identity() {
        let h = catalog("pyrene", None, None).unwrap();
        let d = h.delete_sextet_pattern(&[]).unwrap();
        assert_eq!(d.vertex_count(), h.vertex_count());
        assert_eq!(d.edge_count(), h.edge_count());
        assert_eq!(d.hexagon_count(), h.hexagon_count());
        assert_eq!(d.generalized(), h.generalized());
    }

    #[test]
    fn delete_singleton_equals_delete_hexagon() {
        let h = catalog("coronene", None, None).unwrap();
        for i in 0..h.hexagon_count() {
            let a = h.delete_hexagon(i).unwrap();
            let b = h.delete_sextet_pattern(&[i]).unwrap();
            assert_eq!(a.vertices(), b.vertices());
            assert_eq!(a.edges(), b.edges());
        }
    }

    #[test]
    fn delete_opposite_coronene_hexagons() {
        let h = catalog("coronene", None, None).unwrap();
        let a = h.hexagon_at(HexCell::new(1, 0)).unwrap();
        let b = h.hexagon_at(HexCell::new(-1, 0)).unwrap();
        let d = h.delete_sextet_pattern(&[a, b]).unwrap();
        assert_eq!(d.vertex_count(), 12);
        let d2 = h.delete_sextet_pattern(&[b, a]).unwrap();
        assert_eq!(d.vertices(), d2.vertices());
        assert_eq!(d.edges(), d2.edges());
    }

    #[test]
    fn overlapping_pattern_rejected() {
        let h = catalog("coronene", None, None).unwrap();
        let center = h.hexagon_at(HexCell::new(0, 0)).unwrap();
        let next = h.hexagon_at(HexCell::new(1, 0)).unwrap();
        assert!(h.delete_sextet_pattern(&[center, next]).is_err());
    }

    #[test]
    fn degree_and_hexagon_sharing_bounds() {
        for (name, system) in catalog_suite() {
            for list in system.adjacency() {
                assert!(list.len() <= 3, "{name}: vertex degree above 3");
            }
            // Every edge lies on at most 2 hexagons and two hexagons share
            // at most one edge.
            let mut edge_use = vec![0usize; system.edge_count()];
            for h in system.hexagons() {
                for &e in &h.edges {
                    edge_use[e] += 1;
                }
            }
            assert!(edge_use.iter().all(|&c| c <= 2), "{name}");
            let hexagons = system.hexagons();
            for i in 0..hexagons.len() {
                for j in i + 1..hexagons.len() {
                    let shared = hexagons[i]
                        .edges
                        .iter()
                        .filter(|e| hexagons[j].edges.contains(e))
                        .count();
                    assert!(shared <= 1, "{name}: hexagons share {shared} edges");
                }
            }
        }
    }

    #[test]
    fn vertical_edges_have_equal_u() {
        let h = catalog("pyrene", None, None).unwrap();
        for hexagon in h.hexagons() {
            for e in [hexagon.right_vertical(), hexagon.left_vertical()] {
                let (i, j) = h.edge(e);
                assert_eq!(h.vertices()[i].u, h.vertices()[j].u);
                assert_eq!((h.vertices()[i].v - h.vertices()[j].v).abs(), 2);
            }
            let (r, _) = h.edge(hexagon.right_vertical());
            let (l, _) = h.edge(hexagon.left_vertical());
            assert!(h.vertices()[r].u > h.vertices()[l].u);
        }
    }

    #[test]
    fn serialize_round_trip() {
        for (name, system) in catalog_suite() {
            let text = system.to_hex_text();
            let parsed = parse_hex_file(&text).unwrap();
            assert_eq!(parsed.cells(), system.cells(), "{name}");
        }
    }

    #[test]
    fn random_cata_deterministic_and_chain() {
        for seed in 0..10u64 {
            let a = catalog("random_cata", Some(6), Some(seed)).unwrap();
            let b = catalog("random_cata", Some(6), Some(seed)).unwrap();
            assert_eq!(a.cells(), b.cells());
            assert_eq!(a.cells().len(), 6);
            assert_eq!(euler_ring_defect(&a), 0);
            // chain: exactly two cells with one neighbor, rest with two
            let ones = a
                .cells()
                .iter()
                .filter(|c| {
                    CELL_NEIGHBORS
                        .iter()
                        .filter(|&&(dq, dr)| {
                            a.cells().contains(&HexCell::new(c.q + dq, c.r + dr))
                        })
                        .count()
                        == 1
                })
                .count();
            assert_eq!(ones, 2);
        }
    }

    #[test]
    fn coronoid_ring_is_generalized() {
        // Six cells around an empty center: a hole.
        let ring: Vec<HexCell> = CELL_NEIGHBORS
            .iter()
            .map(|&(dq, dr)| HexCell::new(dq, dr))
            .collect();
        let h = HexagonalSystem::from_cells(ring).unwrap();
        assert!(h.generalized());
        let full = catalog("coronene", None, None).unwrap();
        assert!(!full.generalized());
    }

    #[test]
    fn reflect_is_involution_on_cells() {
        for (name, system) in catalog_suite() {
            let back = system.reflect().reflect();
            assert_eq!(back.cells(), system.cells(), "{name}");
            assert_eq!(back.vertices(), system.vertices(), "{name}");
        }
    }

    #[test]
    fn unknown_catalog_name() {
        assert!(matches!(
            catalog("graphene", None, None),
            Err(Error::UnknownCatalog(_))
        ));
        assert!(matches!(
            catalog("linear", None, None),
            Err(Error::MissingParam { .. })
        ));
    }
}
