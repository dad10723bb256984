//! Clar covers and the counting polynomials built on them.
//!
//! A Clar cover is a spanning subgraph whose components are disjoint hexagon
//! rings and isolated edges. Covers are enumerated by choosing a disjoint
//! hexagon set by sorted-cell backtracking and completing each choice with
//! every perfect matching of the remaining vertices, so counting by hexagon
//! number gives the Zhang-Zhang polynomial directly.

use std::collections::BTreeMap;

use num_bigint::BigInt;

use crate::hexsys::HexagonalSystem;
use crate::matching;
use crate::poly::IntPolynomial;
use crate::{Error, Limits, Result};

/// A Clar cover of a host system: disjoint hexagons plus the isolated edges
/// covering every remaining vertex. Both lists are sorted.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct ClarCover {
    hexagons: Vec<usize>,
    isolated_edges: Vec<usize>,
}

impl ClarCover {
    pub fn new(mut hexagons: Vec<usize>, mut isolated_edges: Vec<usize>) -> Self {
        hexagons.sort_unstable();
        isolated_edges.sort_unstable();
        ClarCover {
            hexagons,
            isolated_edges,
        }
    }

    pub fn hexagons(&self) -> &[usize] {
        &self.hexagons
    }

    pub fn isolated_edges(&self) -> &[usize] {
        &self.isolated_edges
    }

    pub fn hexagon_count(&self) -> usize {
        self.hexagons.len()
    }

    pub fn has_hexagon(&self, h: usize) -> bool {
        self.hexagons.binary_search(&h).is_ok()
    }
}

/// Check that a cover's components exactly partition the host's vertices.
pub fn validate_cover(system: &HexagonalSystem, cover: &ClarCover) -> Result<()> {
    let mut covered = vec![false; system.vertex_count()];
    let mut claim = |v: usize| -> Result<()> {
        if covered[v] {
            return Err(Error::Invalid(format!(
                "cover components overlap at vertex {}",
                system.vertices()[v]
            )));
        }
        covered[v] = true;
        Ok(())
    };
    for &h in &cover.hexagons {
        let hexagon = system
            .hexagons()
            .get(h)
            .ok_or_else(|| Error::Invalid(format!("hexagon index {h} not in host")))?;
        for &v in &hexagon.ring {
            claim(v)?;
        }
    }
    for &e in &cover.isolated_edges {
        if e >= system.edge_count() {
            return Err(Error::Invalid(format!("edge index {e} not in host")));
        }
        let (i, j) = system.edge(e);
        claim(i)?;
        claim(j)?;
    }
    if let Some(missed) = covered.iter().position(|&c| !c) {
        return Err(Error::Invalid(format!(
            "cover misses vertex {}",
            system.vertices()[missed]
        )));
    }
    Ok(())
}

/// All sets of pairwise vertex-disjoint hexagons, the empty set included, in
/// ascending lexicographic order of hexagon indices.
fn disjoint_hexagon_sets(system: &HexagonalSystem, cap: usize) -> Result<Vec<Vec<usize>>> {
    let hexagons = system.hexagons();
    let rings: Vec<&[usize; 6]> = hexagons.iter().map(|h| &h.ring).collect();
    let disjoint = |a: usize, b: usize| rings[a].iter().all(|v| !rings[b].contains(v));
    let mut sets = Vec::new();
    let mut current = Vec::new();
    fn extend(
        start: usize,
        total: usize,
        disjoint: &dyn Fn(usize, usize) -> bool,
        current: &mut Vec<usize>,
        sets: &mut Vec<Vec<usize>>,
        cap: usize,
    ) -> Result<()> {
        if sets.len() >= cap {
            return Err(Error::CapExceeded {
                what: "disjoint hexagon set enumeration",
                cap,
            });
        }
        sets.push(current.clone());
        for h in start..total {
            if current.iter().all(|&g| disjoint(g, h)) {
                current.push(h);
                extend(h + 1, total, disjoint, current, sets, cap)?;
                current.pop();
            }
        }
        Ok(())
    }
    extend(0, hexagons.len(), &disjoint, &mut current, &mut sets, cap)?;
    Ok(sets)
}

fn removal_mask(system: &HexagonalSystem, hexagons: &[usize]) -> Vec<bool> {
    let mut removed = vec![false; system.vertex_count()];
    for &h in hexagons {
        for &v in &system.hexagons()[h].ring {
            removed[v] = true;
        }
    }
    removed
}

/// Every Clar cover, grouped by hexagon count, in deterministic order.
pub fn enumerate_clar_covers(
    system: &HexagonalSystem,
    limits: &Limits,
) -> Result<BTreeMap<usize, Vec<ClarCover>>> {
    let mut covers: BTreeMap<usize, Vec<ClarCover>> = BTreeMap::new();
    let mut total = 0usize;
    for set in disjoint_hexagon_sets(system, limits.max_covers)? {
        let removed = removal_mask(system, &set);
        let completions = matching::matchings_avoiding(system, &removed, limits.max_matchings)?;
        for edges in completions {
            total += 1;
            if total > limits.max_covers {
                return Err(Error::CapExceeded {
                    what: "Clar cover enumeration",
                    cap: limits.max_covers,
                });
            }
            covers
                .entry(set.len())
                .or_default()
                .push(ClarCover::new(set.clone(), edges));
        }
    }
    Ok(covers)
}

/// The Clar covering polynomial: coefficient k counts the Clar covers with
/// exactly k hexagons. By convention the empty system has polynomial 1 and a
/// system without perfect matchings has the zero polynomial.
pub fn zz_polynomial(system: &HexagonalSystem, limits: &Limits) -> Result<IntPolynomial> {
    let mut counts: BTreeMap<usize, u64> = BTreeMap::new();
    let mut budget = limits.max_covers as u64;
    for set in disjoint_hexagon_sets(system, limits.max_covers)? {
        let removed = removal_mask(system, &set);
        let count =
            matching::count_matchings_avoiding(system, &removed, limits.max_matchings)?;
        if count > budget {
            return Err(Error::CapExceeded {
                what: "Clar cover count",
                cap: limits.max_covers,
            });
        }
        budget -= count;
        *counts.entry(set.len()).or_insert(0) += count;
    }
    let top = counts.keys().max().copied().unwrap_or(0);
    let mut coeffs = vec![BigInt::from(0); top + 1];
    for (k, c) in counts {
        coeffs[k] = BigInt::from(c);
    }
    Ok(IntPolynomial::new(coeffs))
}

/// Degree of the Clar covering polynomial; fails on non-Kekuléan systems.
pub fn clar_number(system: &HexagonalSystem, limits: &Limits) -> Result<usize> {
    zz_polynomial(system, limits)?
        .degree()
        .ok_or(Error::NoClarCover)
}

/// The sextet polynomial: coefficient k counts the sextet patterns (disjoint
/// hexagon sets whose removal leaves a matchable, possibly empty, graph) with
/// k hexagons.
pub fn sextet_polynomial(system: &HexagonalSystem, limits: &Limits) -> Result<IntPolynomial> {
    let mut counts: BTreeMap<usize, u64> = BTreeMap::new();
    for set in disjoint_hexagon_sets(system, limits.max_covers)? {
        let removed = removal_mask(system, &set);
        if matching::has_matching_avoiding(system, &removed) {
            *counts.entry(set.len()).or_insert(0) += 1;
        }
    }
    let top = counts.keys().max().copied().unwrap_or(0);
    let mut coeffs = vec![BigInt::from(0); top + 1];
    for (k, c) in counts {
        coeffs[k] = BigInt::from(c);
    }
    Ok(IntPolynomial::new(coeffs))
}

/// The Clar cover partial order: `a <= b` iff the hexagons of `a` all belong
/// to `b` and the two covers agree edge-for-edge outside the hexagons of `b`.
pub fn clar_cover_leq(
    system: &HexagonalSystem,
    a: &ClarCover,
    b: &ClarCover,
) -> Result<bool> {
    validate_cover(system, a)?;
    validate_cover(system, b)?;
    if !a.hexagons.iter().all(|h| b.has_hexagon(*h)) {
        return Ok(false);
    }
    let inside_b: Vec<usize> = b
        .hexagons
        .iter()
        .flat_map(|&h| system.hexagons()[h].edges)
        .collect();
    let outside = |edges: &[usize]| -> Vec<usize> {
        edges
            .iter()
            .copied()
            .filter(|e| !inside_b.contains(e))
            .collect()
    };
    Ok(outside(&a.isolated_edges) == outside(&b.isolated_edges))
}

/// Covers with no alternating hexagon left: no hexagon outside the cover has
/// its ring perfectly matched by the cover's isolated edges. These are
/// exactly the maximal elements of the cover order.
pub fn maximal_clar_covers(
    system: &HexagonalSystem,
    limits: &Limits,
) -> Result<Vec<ClarCover>> {
    let covers = enumerate_clar_covers(system, limits)?;
    let mut out = Vec::new();
    for cover in covers.values().flatten() {
        if !has_alternating_hexagon(system, cover) {
            out.push(cover.clone());
        }
    }
    Ok(out)
}

/// True when some hexagon not in the cover is perfectly matched by the
/// cover's isolated edges.
pub fn has_alternating_hexagon(system: &HexagonalSystem, cover: &ClarCover) -> bool {
    system.hexagons().iter().enumerate().any(|(i, hexagon)| {
        if cover.has_hexagon(i) {
            return false;
        }
        let in_cover = |e: &usize| cover.isolated_edges.binary_search(e).is_ok();
        hexagon.proper_triple().iter().all(in_cover)
            || hexagon.improper_triple().iter().all(in_cover)
    })
}

/// JSON shape `{"hexagons": [[q,r],...], "edges": [[[u,v],[u2,v2]],...]}`.
pub fn cover_to_json(system: &HexagonalSystem, cover: &ClarCover) -> serde_json::Value {
    let hexagons: Vec<serde_json::Value> = cover
        .hexagons
        .iter()
        .map(|&h| {
            let c = system.hexagons()[h].cell;
            serde_json::json!([c.q, c.r])
        })
        .collect();
    let edges: Vec<serde_json::Value> = cover
        .isolated_edges
        .iter()
        .map(|&e| {
            let (i, j) = system.edge(e);
            let (a, b) = (system.vertices()[i], system.vertices()[j]);
            serde_json::json!([[a.u, a.v], [b.u, b.v]])
        })
        .collect();
    serde_json::json!({ "hexagons": hexagons, "edges": edges })
}
