//! Shared test oracles, kept independent of the library's enumeration paths.

use clarcube_core::hexsys::HexagonalSystem;

/// Kekulé count via Ryser's permanent formula on the biadjacency matrix.
/// A completely different algorithm from the backtracking enumerator.
pub fn kekule_count_by_permanent(system: &HexagonalSystem) -> u64 {
    let n = system.vertex_count();
    if n == 0 {
        return 1;
    }
    if n % 2 == 1 {
        return 0;
    }
    // 2-color by BFS; hexagonal systems are bipartite
    let mut color = vec![usize::MAX; n];
    for start in 0..n {
        if color[start] != usize::MAX {
            continue;
        }
        color[start] = 0;
        let mut queue = std::collections::VecDeque::from([start]);
        while let Some(v) = queue.pop_front() {
            for &(w, _) in &system.adjacency()[v] {
                if color[w] == usize::MAX {
                    color[w] = 1 - color[v];
                    queue.push_back(w);
                } else {
                    assert_ne!(color[w], color[v], "system is not bipartite");
                }
            }
        }
    }
    let side_a: Vec<usize> = (0..n).filter(|&v| color[v] == 0).collect();
    let side_b: Vec<usize> = (0..n).filter(|&v| color[v] == 1).collect();
    if side_a.len() != side_b.len() {
        return 0;
    }
    let half = side_a.len();
    let index_b: std::collections::HashMap<usize, usize> = side_b
        .iter()
        .enumerate()
        .map(|(j, &v)| (v, j))
        .collect();
    let rows: Vec<u64> = side_a
        .iter()
        .map(|&v| {
            let mut mask = 0u64;
            for &(w, _) in &system.adjacency()[v] {
                mask |= 1 << index_b[&w];
            }
            mask
        })
        .collect();
    assert!(half <= 60, "permanent oracle limited to desk scale");
    // perm = (-1)^half * sum over column subsets S of (-1)^|S| prod_i |row_i & S|
    let mut total: i64 = 0;
    for subset in 0u64..(1 << half) {
        let mut product: i64 = 1;
        for &row in &rows {
            let hits = (row & subset).count_ones() as i64;
            if hits == 0 {
                product = 0;
                break;
            }
            product *= hits;
        }
        if product == 0 {
            continue;
        }
        if (half as u32 - subset.count_ones()).is_multiple_of(2) {
            total += product;
        } else {
            total -= product;
        }
    }
    u64::try_from(total).expect("permanent of a 0/1 matrix is nonnegative")
}
