//! Isomorph-free exhaustive enumeration of all graphs on up to eight
//! vertices, by vertex augmentation with canonical-code deduplication.

use crate::graph::Graph;

pub const MAX_SMALL_N: usize = 8;

/// Canonical code: the lexicographically largest packed upper-triangle
/// bitstring over all vertex orderings, found by branch-and-bound (only
/// orderings achieving the running column maximum are explored).
pub fn canonical_code(rows: &[u16], n: usize) -> u32 {
    assert!(n <= MAX_SMALL_N);
    if n <= 1 {
        return 0;
    }
    let mut best = 0u32;
    let mut placed: Vec<usize> = Vec::with_capacity(n);
    search(rows, n, &mut placed, 0, &mut best);
    best
}

fn search(rows: &[u16], n: usize, placed: &mut Vec<usize>, code: u32, best: &mut u32) {
    let j = placed.len();
    if j == n {
        if code > *best {
            *best = code;
        }
        return;
    }
    // column value of candidate v against the placed prefix, highest bit
    // for placed[0]
    let col = |v: usize| -> u32 {
        let mut c = 0u32;
        for (i, &p) in placed.iter().enumerate() {
            if rows[v] & (1 << p) != 0 {
                c |= 1 << (j - 1 - i);
            }
        }
        c
    };
    let mut best_col = 0u32;
    let mut candidates: Vec<(usize, u32)> = Vec::new();
    for v in 0..n {
        if placed.contains(&v) {
            continue;
        }
        let c = col(v);
        if c > best_col {
            best_col = c;
            candidates.clear();
        }
        if c == best_col {
            candidates.push((v, c));
        }
    }
    for (v, c) in candidates {
        placed.push(v);
        search(rows, n, placed, (code << j) | c, best);
        placed.pop();
    }
}

fn decode(code: u32, n: usize) -> Vec<u16> {
    let mut rows = vec![0u16; n];
    let mut bits = Vec::new();
    for j in 1..n {
        for i in 0..j {
            bits.push((i, j));
        }
    }
    // bits were appended column by column, most significant first
    let total = bits.len();
    for (idx, (i, j)) in bits.into_iter().enumerate() {
        if code >> (total - 1 - idx) & 1 == 1 {
            rows[i] |= 1 << j;
            rows[j] |= 1 << i;
        }
    }
    rows
}

#[cfg(test)]
fn encode_identity(rows: &[u16], n: usize) -> u32 {
    let mut code = 0u32;
    for j in 1..n {
        for i in 0..j {
            code <<= 1;
            if rows[i] & (1 << j) != 0 {
                code |= 1;
            }
        }
    }
    code
}

/// All graphs on exactly `n` vertices up to isomorphism, as canonical codes.
pub fn all_graph_codes(n: usize) -> Vec<u32> {
    assert!((1..=MAX_SMALL_N).contains(&n));
    let mut level: Vec<u32> = vec![0];
    for k in 2..=n {
        let mut next = std::collections::HashSet::new();
        for &code in &level {
            let prev = decode(code, k - 1);
            for nbhd in 0u16..(1 << (k - 1)) {
                let mut rows = prev.clone();
                rows.push(nbhd);
                for i in 0..k - 1 {
                    if nbhd & (1 << i) != 0 {
                        rows[i] |= 1 << (k - 1);
                    }
                }
                next.insert(canonical_code(&rows, k));
            }
        }
        let mut v: Vec<u32> = next.into_iter().collect();
        v.sort_unstable();
        level = v;
    }
    level
}

fn rows_to_graph(rows: &[u16], n: usize) -> Graph {
    let mut edges = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if rows[i] & (1 << j) != 0 {
                edges.push((i, j));
            }
        }
    }
    Graph::new(n, &edges).unwrap()
}

fn is_connected_rows(rows: &[u16], n: usize) -> bool {
    if n == 0 {
        return true;
    }
    let mut seen = 1u16;
    loop {
        let mut grow = seen;
        for v in 0..n {
            if seen & (1 << v) != 0 {
                grow |= rows[v];
            }
        }
        if grow == seen {
            break;
        }
        seen = grow;
    }
    seen.count_ones() as usize == n
}

/// Every connected graph with between 1 and `max_n` vertices, one per
/// isomorphism class, smallest orders first.
pub fn connected_graphs_up_to(max_n: usize) -> Vec<Graph> {
    let mut out = Vec::new();
    for n in 1..=max_n {
        for code in all_graph_codes(n) {
            let rows = decode(code, n);
            if is_connected_rows(&rows, n) {
                out.push(rows_to_graph(&rows, n));
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_code_is_isomorphism_invariant() {
        // C5 under two labelings
        let mk = |edges: &[(usize, usize)]| {
            let mut rows = vec![0u16; 5];
            for &(u, v) in edges {
                rows[u] |= 1 << v;
                rows[v] |= 1 << u;
            }
            rows
        };
        let a = mk(&[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)]);
        let b = mk(&[(0, 2), (2, 4), (4, 1), (1, 3), (3, 0)]);
        assert_eq!(canonical_code(&a, 5), canonical_code(&b, 5));
    }

    #[test]
    fn decode_round_trips() {
        let rows = decode(0b101011, 4);
        let code = encode_identity(&rows, 4);
        assert_eq!(code, 0b101011);
    }

    #[test]
    fn graph_counts_match_oeis() {
        // unlabeled graphs: 1, 2, 4, 11, 34, 156, 1044
        let counts: Vec<usize> = (1..=7).map(|n| all_graph_codes(n).len()).collect();
        assert_eq!(counts, vec![1, 2, 4, 11, 34, 156, 1044]);

        // unlabeled connected graphs: 1, 1, 2, 6, 21, 112, 853
        let mut conn = vec![0usize; 7];
        for g in connected_graphs_up_to(7) {
            conn[g.n() - 1] += 1;
        }
        assert_eq!(conn, vec![1, 1, 2, 6, 21, 112, 853]);
    }
}
