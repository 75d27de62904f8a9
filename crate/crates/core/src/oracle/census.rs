//! Brute-force structure census by exhaustive subset enumeration over
//! bitmask graphs. Independent of the anchored detectors in `detect`; the
//! two are checked against each other.

use crate::graph::{Graph, VertexSet};

/// Adjacency rows packed into `u32`, for masks of at most 20 vertices.
pub struct BitGraph {
    pub n: usize,
    pub rows: Vec<u32>,
    /// Original vertex ids, indexed by bit position.
    pub ids: Vec<usize>,
}

pub const CENSUS_MAX_N: usize = 20;

impl BitGraph {
    pub fn from_graph(g: &Graph, mask: &VertexSet) -> BitGraph {
        let ids = mask.to_vec();
        assert!(
            ids.len() <= CENSUS_MAX_N,
            "census works on at most {CENSUS_MAX_N} vertices"
        );
        let index_of: std::collections::HashMap<usize, usize> =
            ids.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let rows = ids
            .iter()
            .map(|&v| {
                let mut row = 0u32;
                for &u in g.neighbors(v) {
                    if let Some(&i) = index_of.get(&u) {
                        row |= 1 << i;
                    }
                }
                row
            })
            .collect();
        BitGraph {
            n: ids.len(),
            rows,
            ids,
        }
    }

    fn connected(&self, sub: u32) -> bool {
        if sub == 0 {
            return true;
        }
        let start = sub.trailing_zeros() as usize;
        let mut comp = 1u32 << start;
        loop {
            let mut grow = comp;
            let mut bits = comp;
            while bits != 0 {
                let v = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                grow |= self.rows[v] & sub;
            }
            if grow == comp {
                break;
            }
            comp = grow;
        }
        comp == sub
    }

    fn deg(&self, v: usize, sub: u32) -> u32 {
        (self.rows[v] & sub).count_ones()
    }

    /// Follow a chain of degree-2 vertices starting at `start` (entered from
    /// `from`); returns the first vertex of other degree plus the interior.
    fn chain_walk(&self, sub: u32, start: usize, from: usize) -> (usize, u32) {
        let mut prev = from;
        let mut cur = start;
        let mut interior = 0u32;
        loop {
            if self.deg(cur, sub) != 2 {
                return (cur, interior);
            }
            interior |= 1 << cur;
            let next_bits = self.rows[cur] & sub & !(1u32 << prev);
            debug_assert_eq!(next_bits.count_ones(), 1);
            prev = cur;
            cur = next_bits.trailing_zeros() as usize;
        }
    }

    pub fn is_c4_set(&self, sub: u32) -> bool {
        if sub.count_ones() != 4 {
            return false;
        }
        let mut bits = sub;
        while bits != 0 {
            let v = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            if self.deg(v, sub) != 2 {
                return false;
            }
        }
        true
    }

    pub fn is_hole_set(&self, sub: u32) -> bool {
        if sub.count_ones() < 4 {
            return false;
        }
        let mut bits = sub;
        while bits != 0 {
            let v = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            if self.deg(v, sub) != 2 {
                return false;
            }
        }
        self.connected(sub)
    }

    fn degree_profile(&self, sub: u32, three_count: usize) -> Option<Vec<usize>> {
        let mut threes = Vec::new();
        let mut bits = sub;
        while bits != 0 {
            let v = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            match self.deg(v, sub) {
                2 => {}
                3 => threes.push(v),
                _ => return None,
            }
        }
        if threes.len() == three_count {
            Some(threes)
        } else {
            None
        }
    }

    pub fn is_theta_set(&self, sub: u32) -> bool {
        let threes = match self.degree_profile(sub, 2) {
            Some(t) => t,
            None => return false,
        };
        let (a, b) = (threes[0], threes[1]);
        if self.rows[a] & (1 << b) != 0 || !self.connected(sub) {
            return false;
        }
        let mut covered = (1u32 << a) | (1 << b);
        let mut bits = self.rows[a] & sub;
        while bits != 0 {
            let x = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            let (terminal, interior) = self.chain_walk(sub, x, a);
            if terminal != b || covered & interior != 0 {
                return false;
            }
            covered |= interior;
        }
        covered == sub
    }

    pub fn is_prism_set(&self, sub: u32) -> bool {
        let threes = match self.degree_profile(sub, 6) {
            Some(t) => t,
            None => return false,
        };
        if !self.connected(sub) {
            return false;
        }
        let triangle = |x: usize, y: usize, z: usize| -> bool {
            self.rows[x] & (1 << y) != 0
                && self.rows[x] & (1 << z) != 0
                && self.rows[y] & (1 << z) != 0
        };
        // split the six degree-3 vertices into two triangles
        for i in 1..5 {
            for j in i + 1..6 {
                let t1 = [threes[0], threes[i], threes[j]];
                let t2: Vec<usize> = (1..6)
                    .filter(|&k| k != i && k != j)
                    .map(|k| threes[k])
                    .collect();
                if !triangle(t1[0], t1[1], t1[2]) || !triangle(t2[0], t2[1], t2[2]) {
                    continue;
                }
                let t1_mask: u32 = t1.iter().map(|&v| 1u32 << v).sum();
                let t2_mask: u32 = t2.iter().map(|&v| 1u32 << v).sum();
                let mut covered = t1_mask | t2_mask;
                let mut terminals = 0u32;
                let mut ok = true;
                for &t in &t1 {
                    let other_bits = self.rows[t] & sub & !t1_mask;
                    if other_bits.count_ones() != 1 {
                        ok = false;
                        break;
                    }
                    let start = other_bits.trailing_zeros() as usize;
                    let (terminal, interior) = self.chain_walk(sub, start, t);
                    let tbit = 1u32 << terminal;
                    if tbit & t2_mask == 0 || terminals & tbit != 0 || covered & interior != 0 {
                        ok = false;
                        break;
                    }
                    terminals |= tbit;
                    covered |= interior;
                }
                if ok && covered == sub {
                    return true;
                }
            }
        }
        false
    }

    pub fn is_pyramid_set(&self, sub: u32) -> bool {
        let threes = match self.degree_profile(sub, 4) {
            Some(t) => t,
            None => return false,
        };
        if !self.connected(sub) {
            return false;
        }
        'apex: for pick in 0..4 {
            let a = threes[pick];
            let tri: Vec<usize> = (0..4).filter(|&k| k != pick).map(|k| threes[k]).collect();
            let tri_mask: u32 = tri.iter().map(|&v| 1u32 << v).sum();
            let tri_ok = tri
                .iter()
                .enumerate()
                .all(|(i, &x)| tri[i + 1..].iter().all(|&y| self.rows[x] & (1 << y) != 0));
            if !tri_ok {
                continue;
            }
            let mut covered = tri_mask | (1 << a);
            let mut terminals = 0u32;
            let mut direct = 0;
            let mut bits = self.rows[a] & sub;
            while bits != 0 {
                let x = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                if tri_mask & (1 << x) != 0 {
                    direct += 1;
                    if direct > 1 || terminals & (1 << x) != 0 {
                        continue 'apex;
                    }
                    terminals |= 1 << x;
                    continue;
                }
                let (terminal, interior) = self.chain_walk(sub, x, a);
                let tbit = 1u32 << terminal;
                if tbit & tri_mask == 0 || terminals & tbit != 0 || covered & interior != 0 {
                    continue 'apex;
                }
                terminals |= tbit;
                covered |= interior;
            }
            if terminals == tri_mask && covered == sub {
                return true;
            }
        }
        false
    }
}

/// Which forbidden structures occur anywhere in the mask, decided purely by
/// subset enumeration.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct StructureCensus {
    pub c4: bool,
    pub theta: bool,
    pub prism: bool,
    pub pyramid: bool,
    pub even_wheel: bool,
}

pub fn census_all(g: &Graph, mask: &VertexSet) -> StructureCensus {
    let bg = BitGraph::from_graph(g, mask);
    let full: u32 = if bg.n == 32 { !0 } else { (1u32 << bg.n) - 1 };
    let mut out = StructureCensus::default();
    for sub in 0u32..=full {
        if !out.c4 && bg.is_c4_set(sub) {
            out.c4 = true;
        }
        if !out.theta && bg.is_theta_set(sub) {
            out.theta = true;
        }
        if !out.prism && bg.is_prism_set(sub) {
            out.prism = true;
        }
        if !out.pyramid && bg.is_pyramid_set(sub) {
            out.pyramid = true;
        }
        if !out.even_wheel && bg.is_hole_set(sub) {
            let mut rest = full & !sub;
            while rest != 0 {
                let v = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                let spokes = (bg.rows[v] & sub).count_ones();
                if spokes >= 3 && spokes % 2 == 0 {
                    out.even_wheel = true;
                    break;
                }
            }
        }
        if out.c4 && out.theta && out.prism && out.pyramid && out.even_wheel {
            break;
        }
    }
    out
}

/// Number of holes of length in `[4, max_len]`, by subset enumeration.
pub fn hole_count(g: &Graph, mask: &VertexSet, max_len: usize) -> usize {
    let bg = BitGraph::from_graph(g, mask);
    let full: u32 = (1u32 << bg.n) - 1;
    let mut count = 0;
    for sub in 0u32..=full {
        if sub.count_ones() as usize <= max_len && bg.is_hole_set(sub) {
            count += 1;
        }
    }
    count
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn census_on_known_graphs() {
        let c4 = Graph::cycle(4);
        let s = census_all(&c4, &c4.vertices());
        assert!(s.c4 && !s.theta && !s.prism && !s.pyramid && !s.even_wheel);

        let k23 = Graph::new(5, &[(0, 2), (0, 3), (0, 4), (1, 2), (1, 3), (1, 4)]).unwrap();
        let s = census_all(&k23, &k23.vertices());
        assert!(s.theta);

        let prism = Graph::new(
            6,
            &[
                (0, 1),
                (0, 2),
                (1, 2),
                (3, 4),
                (3, 5),
                (4, 5),
                (0, 3),
                (1, 4),
                (2, 5),
            ],
        )
        .unwrap();
        assert!(census_all(&prism, &prism.vertices()).prism);

        let c7 = Graph::cycle(7);
        let s = census_all(&c7, &c7.vertices());
        assert!(!s.c4 && !s.theta && !s.prism && !s.pyramid && !s.even_wheel);
    }

    #[test]
    fn hole_census_matches_enumerator() {
        let mut edges = Vec::new();
        for i in 0..5 {
            edges.push((i, (i + 1) % 5));
            edges.push((5 + i, 5 + (i + 2) % 5));
            edges.push((i, 5 + i));
        }
        let petersen = Graph::new(10, &edges).unwrap();
        assert_eq!(hole_count(&petersen, &petersen.vertices(), 5), 12);
    }
}
