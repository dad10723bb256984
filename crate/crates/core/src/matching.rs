//! Kekulé structures: perfect matching enumeration and sextet classification.

use std::collections::BTreeMap;

use crate::hexsys::{Hexagon, HexagonalSystem};
use crate::{Error, Limits, Result};

/// A perfect matching of a host system, identified by its position in the
/// canonical enumeration order.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct PerfectMatching {
    pub id: usize,
    edges: Vec<usize>,
}

impl PerfectMatching {
    pub fn edge_ids(&self) -> &[usize] {
        &self.edges
    }

    pub fn contains_edge(&self, e: usize) -> bool {
        self.edges.binary_search(&e).is_ok()
    }

    /// Edge set after flipping the two perfect matchings of one hexagon ring.
    /// Only valid when the hexagon is alternating in this matching.
    pub fn flip_hexagon(&self, hexagon: &Hexagon) -> Vec<usize> {
        let (take, drop) = if self.contains_edge(hexagon.right_vertical()) {
            (hexagon.improper_triple(), hexagon.proper_triple())
        } else {
            (hexagon.proper_triple(), hexagon.improper_triple())
        };
        let mut edges: Vec<usize> = self
            .edges
            .iter()
            .copied()
            .filter(|e| !drop.contains(e))
            .collect();
        edges.extend(take);
        edges.sort_unstable();
        edges
    }
}

/// Whether an alternating hexagon holds the right (proper) or left (improper)
/// vertical edge of its ring in the matching.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum SextetClass {
    Proper,
    Improper,
}

/// All perfect matchings in the canonical order: backtracking on the minimum
/// uncovered vertex with neighbors visited in ascending order. The empty
/// graph yields exactly one empty matching.
pub fn enumerate_perfect_matchings(
    system: &HexagonalSystem,
    limits: &Limits,
) -> Result<Vec<PerfectMatching>> {
    let removed = vec![false; system.vertex_count()];
    let sets = matchings_avoiding(system, &removed, limits.max_matchings)?;
    Ok(sets
        .into_iter()
        .enumerate()
        .map(|(id, edges)| PerfectMatching { id, edges })
        .collect())
}

/// Perfect matchings of the subgraph induced on the vertices not flagged in
/// `removed`, as sorted edge-id sets of the host system.
pub(crate) fn matchings_avoiding(
    system: &HexagonalSystem,
    removed: &[bool],
    cap: usize,
) -> Result<Vec<Vec<usize>>> {
    let mut out = Vec::new();
    let mut covered = removed.to_vec();
    let mut chosen = Vec::new();
    search(system, &mut covered, &mut chosen, &mut |m| {
        if out.len() >= cap {
            return Err(Error::CapExceeded {
                what: "perfect matching enumeration",
                cap,
            });
        }
        out.push(m.to_vec());
        Ok(())
    })?;
    Ok(out)
}

/// Count without materializing; same traversal, same cap semantics.
pub(crate) fn count_matchings_avoiding(
    system: &HexagonalSystem,
    removed: &[bool],
    cap: usize,
) -> Result<u64> {
    let mut count = 0u64;
    let mut covered = removed.to_vec();
    let mut chosen = Vec::new();
    search(system, &mut covered, &mut chosen, &mut |_| {
        if count as usize >= cap {
            return Err(Error::CapExceeded {
                what: "perfect matching count",
                cap,
            });
        }
        count += 1;
        Ok(())
    })?;
    Ok(count)
}

/// True when the induced subgraph has at least one perfect matching.
pub(crate) fn has_matching_avoiding(system: &HexagonalSystem, removed: &[bool]) -> bool {
    let mut found = false;
    let mut covered = removed.to_vec();
    let mut chosen = Vec::new();
    // The visitor error is used as a short-circuit.
    let result = search(system, &mut covered, &mut chosen, &mut |_| {
        found = true;
        Err(Error::Invalid("stop".into()))
    });
    debug_assert!(result.is_ok() || found);
    found
}

fn search(
    system: &HexagonalSystem,
    covered: &mut [bool],
    chosen: &mut Vec<usize>,
    emit: &mut impl FnMut(&[usize]) -> Result<()>,
) -> Result<()> {
    let Some(v) = covered.iter().position(|&c| !c) else {
        let mut edges = chosen.clone();
        edges.sort_unstable();
        return emit(&edges);
    };
    covered[v] = true;
    for &(w, e) in &system.adjacency()[v] {
        if covered[w] {
            continue;
        }
        covered[w] = true;
        chosen.push(e);
        let status = search(system, covered, chosen, emit);
        chosen.pop();
        covered[w] = false;
        status?;
    }
    covered[v] = false;
    Ok(())
}

/// Classify one hexagon against a matching: `Some(class)` when the matching
/// restricted to the ring is one of its two perfect matchings.
pub fn classify_hexagon(m: &PerfectMatching, hexagon: &Hexagon) -> Option<SextetClass> {
    if hexagon.proper_triple().iter().all(|&e| m.contains_edge(e)) {
        Some(SextetClass::Proper)
    } else if hexagon.improper_triple().iter().all(|&e| m.contains_edge(e)) {
        Some(SextetClass::Improper)
    } else {
        None
    }
}

/// Every M-alternating hexagon with its proper/improper classification, in
/// hexagon order.
pub fn alternating_hexagons(
    system: &HexagonalSystem,
    m: &PerfectMatching,
) -> Vec<(usize, SextetClass)> {
    system
        .hexagons()
        .iter()
        .enumerate()
        .filter_map(|(i, h)| classify_hexagon(m, h).map(|c| (i, c)))
        .collect()
}

/// `a(H, i)`: the number of perfect matchings with exactly `i` proper sextets.
pub fn proper_sextet_histogram(
    system: &HexagonalSystem,
    limits: &Limits,
) -> Result<BTreeMap<usize, u64>> {
    let matchings = enumerate_perfect_matchings(system, limits)?;
    let mut histogram = BTreeMap::new();
    for m in &matchings {
        let proper = alternating_hexagons(system, m)
            .iter()
            .filter(|(_, c)| *c == SextetClass::Proper)
            .count();
        *histogram.entry(proper).or_insert(0u64) += 1;
    }
    Ok(histogram)
}

/// Matching as a sorted list of coordinate edge pairs, for JSON reports.
pub fn matching_to_json(system: &HexagonalSystem, m: &PerfectMatching) -> serde_json::Value {
    let edges: Vec<serde_json::Value> = m
        .edge_ids()
        .iter()
        .map(|&e| {
            let (i, j) = system.edge(e);
            let (a, b) = (system.vertices()[i], system.vertices()[j]);
            serde_json::json!([[a.u, a.v], [b.u, b.v]])
        })
        .collect();
    serde_json::Value::Array(edges)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hexsys::{catalog, catalog_suite, HexCell};

    fn limits() -> Limits {
        Limits::default()
    }

    #[test]
    fn benzene_has_two_matchings() {
        let h = catalog("benzene", None, None).unwrap();
        let ms = enumerate_perfect_matchings(&h, &limits()).unwrap();
        assert_eq!(ms.len(), 2);
        assert_eq!(ms[0].id, 0);
        assert_eq!(ms[1].id, 1);
    }

    #[test]
    fn naphthalene_has_three_matchings() {
        let h = catalog("naphthalene", None, None).unwrap();
        assert_eq!(enumerate_perfect_matchings(&h, &limits()).unwrap().len(), 3);
    }

    #[test]
    fn coronene_has_twenty_matchings() {
        let h = catalog("coronene", None, None).unwrap();
        assert_eq!(
            enumerate_perfect_matchings(&h, &limits()).unwrap().len(),
            20
        );
    }

    #[test]
    fn empty_graph_has_one_empty_matching() {
        let h = catalog("benzene", None, None).unwrap().delete_hexagon(0).unwrap();
        let ms = enumerate_perfect_matchings(&h, &limits()).unwrap();
        assert_eq!(ms.len(), 1);
        assert!(ms[0].edge_ids().is_empty());
    }

    #[test]
    fn odd_system_has_no_matching() {
        // phenalene: three mutually adjacent cells, 13 vertices
        let h = crate::hexsys::HexagonalSystem::from_cells([
            HexCell::new(0, 0),
            HexCell::new(1, 0),
            HexCell::new(0, 1),
        ])
        .unwrap();
        assert_eq!(h.vertex_count(), 13);
        assert!(enumerate_perfect_matchings(&h, &limits()).unwrap().is_empty());
        assert!(!has_matching_avoiding(&h, &[false; 13]));
    }

    #[test]
    fn benzene_sextet_classes() {
        let h = catalog("benzene", None, None).unwrap();
        let ms = enumerate_perfect_matchings(&h, &limits()).unwrap();
        let hexagon = &h.hexagons()[0];
        let mut seen = Vec::new();
        for m in &ms {
            let alt = alternating_hexagons(&h, m);
            assert_eq!(alt.len(), 1);
            let with_right = m.contains_edge(hexagon.right_vertical());
            match alt[0].1 {
                SextetClass::Proper => {
                    assert!(with_right);
                }
                SextetClass::Improper => {
                    assert!(m.contains_edge(hexagon.left_vertical()));
                    assert!(!with_right);
                }
            }
            seen.push(alt[0].1);
        }
        assert!(seen.contains(&SextetClass::Proper));
        assert!(seen.contains(&SextetClass::Improper));
    }

    #[test]
    fn pyrene_proper_histogram() {
        let h = catalog("pyrene", None, None).unwrap();
        let hist = proper_sextet_histogram(&h, &limits()).unwrap();
        assert_eq!(hist, BTreeMap::from([(0, 1), (1, 4), (2, 1)]));
    }

    #[test]
    fn coronene_proper_histogram() {
        let h = catalog("coronene", None, None).unwrap();
        let hist = proper_sextet_histogram(&h, &limits()).unwrap();
        assert_eq!(hist, BTreeMap::from([(0, 1), (1, 8), (2, 9), (3, 2)]));
    }

    #[test]
    fn proper_and_improper_sextets_are_disjoint() {
        for (name, system) in catalog_suite() {
            let ms = enumerate_perfect_matchings(&system, &limits()).unwrap();
            for m in &ms {
                for class in [SextetClass::Proper, SextetClass::Improper] {
                    let chosen: Vec<usize> = alternating_hexagons(&system, m)
                        .into_iter()
                        .filter(|(_, c)| *c == class)
                        .map(|(i, _)| i)
                        .collect();
                    let mut used = std::collections::BTreeSet::new();
                    for &i in &chosen {
                        for &v in &system.hexagons()[i].ring {
                            assert!(used.insert(v), "{name}: sextets overlap");
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn reflection_swaps_proper_and_improper_histograms() {
        for (name, system) in catalog_suite() {
            let mirror = system.reflect();
            let proper_mirror = proper_sextet_histogram(&mirror, &limits()).unwrap();
            // histogram of improper counts on the original
            let ms = enumerate_perfect_matchings(&system, &limits()).unwrap();
            let mut improper_hist = BTreeMap::new();
            for m in &ms {
                let improper = alternating_hexagons(&system, m)
                    .iter()
                    .filter(|(_, c)| *c == SextetClass::Improper)
                    .count();
                *improper_hist.entry(improper).or_insert(0u64) += 1;
            }
            assert_eq!(improper_hist, proper_mirror, "{name}");
        }
    }

    #[test]
    fn enumeration_is_deterministic() {
        let h = catalog("coronene", None, None).unwrap();
        let a = enumerate_perfect_matchings(&h, &limits()).unwrap();
        let b = enumerate_perfect_matchings(&h, &limits()).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn cap_is_enforced() {
        let h = catalog("coronene", None, None).unwrap();
        let tiny = Limits {
            max_matchings: 5,
            ..Limits::default()
        };
        assert!(matches!(
            enumerate_perfect_matchings(&h, &tiny),
            Err(Error::CapExceeded { .. })
        ));
    }

    #[test]
    fn flip_hexagon_round_trips() {
        let h = catalog("pyrene", None, None).unwrap();
        let ms = enumerate_perfect_matchings(&h, &limits()).unwrap();
        for m in &ms {
            for (i, _) in alternating_hexagons(&h, m) {
                let flipped = m.flip_hexagon(&h.hexagons()[i]);
                let back = PerfectMatching {
                    id: usize::MAX,
                    edges: flipped.clone(),
                }
                .flip_hexagon(&h.hexagons()[i]);
                assert_eq!(back, m.edge_ids());
            }
        }
    }
}
