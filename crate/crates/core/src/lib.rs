//! Exact combinatorics of benzenoid (hexagonal) systems.
//!
//! The crate builds hexagonal systems on an integer lattice, enumerates their
//! Kekulé structures (perfect matchings) and Clar covers, constructs resonance
//! graphs with their sextet orientation, counts induced hypercubes of arbitrary
//! graphs, and machine-checks the identity between the Clar covering
//! (Zhang-Zhang) polynomial of a system and the cube polynomial of its
//! resonance graph, together with the poset, derivative, basis-change and
//! root-location structure that surrounds it.
//!
//! Everything is exact: counts are arbitrary-precision integers and root
//! machinery runs over exact rationals. No floating point participates in any
//! verdict.

pub mod bijection;
pub mod clar;
pub mod cube;
mod error;
pub mod hexsys;
pub mod matching;
pub mod poly;
pub mod resonance;

pub use error::{Error, Result};

/// Resource guards for the exponential enumerations.
///
/// Defaults are sized so the whole verification catalog runs in seconds on a
/// laptop while still refusing inputs that would not finish at a desk.
#[derive(Clone, Debug)]
pub struct Limits {
    /// Cap on enumerated or counted perfect matchings per system.
    pub max_matchings: usize,
    /// Cap on enumerated Clar covers (and on disjoint hexagon sets visited).
    pub max_covers: usize,
    /// Cap on enumerated induced hypercubes per graph.
    pub max_cubes: usize,
    /// Largest vertex count accepted by the median-graph triple check.
    pub median_bound: usize,
    /// Largest vertex count accepted by the isomorphism search.
    pub iso_bound: usize,
    /// Largest Fibonacci cube order that will be generated.
    pub max_fibonacci_order: usize,
    /// Largest fibonacene length accepted by `verify_fibonacene`.
    pub max_fibonacene: usize,
    /// Largest cover count on which poset pair checks run exhaustively.
    pub max_poset_covers: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_matchings: 100_000,
            max_covers: 100_000,
            max_cubes: 1_000_000,
            median_bound: 300,
            iso_bound: 2_000,
            max_fibonacci_order: 20,
            max_fibonacene: 8,
            max_poset_covers: 500,
        }
    }
}
