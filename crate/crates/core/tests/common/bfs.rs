// SPDX-License-Identifier: MIT OR Apache-2.0

//! Independent model of the supersingular 2-isogeny graph over F_{p²},
//! p ≡ 3 mod 4: its own field arithmetic, edges from the classical
//! modular polynomial Φ₂, vertices by breadth-first search from 1728.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

/// (a, b) for a + b·i.
pub type J = (u64, u64);

#[derive(Clone, Copy)]
struct Fld {
    p: u64,
}

impl Fld {
    fn add(&self, x: J, y: J) -> J {
        ((x.0 + y.0) % self.p, (x.1 + y.1) % self.p)
    }
    fn mul(&self, x: J, y: J) -> J {
        let p = self.p as u128;
        let (a, b, c, d) = (x.0 as u128, x.1 as u128, y.0 as u128, y.1 as u128);
        (((a * c + (p - b) * d) % p) as u64, ((a * d + b * c) % p) as u64)
    }
    fn int(&self, n: i128) -> J {
        (n.rem_euclid(self.p as i128) as u64, 0)
    }
}

/// Φ₂(X, Y) as (coefficient, deg X, deg Y).
const PHI2: [(i128, u32, u32); 10] = [
    (1, 3, 0),
    (1, 0, 3),
    (-1, 2, 2),
    (1488, 2, 1),
    (1488, 1, 2),
    (-162000, 2, 0),
    (-162000, 0, 2),
    (40773375, 1, 1),
    (8748000000, 1, 0),
    (8748000000, 0, 1),
];
const PHI2_CONST: i128 = -157464000000000;

fn pow(f: Fld, x: J, e: u32) -> J {
    (0..e).fold((1, 0), |acc, _| f.mul(acc, x))
}

fn phi2(f: Fld, x: J, y: J) -> J {
    let mut s = f.int(PHI2_CONST);
    for (c, dx, dy) in PHI2 {
        s = f.add(s, f.mul(f.int(c), f.mul(pow(f, x, dx), pow(f, y, dy))));
    }
    s
}

/// Adjacency lists of the connected component of 1728, loops and
/// multiple edges collapsed.
pub struct Graph {
    pub p: u64,
    pub adj: BTreeMap<J, BTreeSet<J>>,
}

impl Graph {
    pub fn build(p: u64) -> Graph {
        assert_eq!(p % 4, 3);
        let f = Fld { p };
        let all: Vec<J> = (0..p).flat_map(|a| (0..p).map(move |b| (a, b))).collect();
        let start = f.int(1728);
        let mut adj: BTreeMap<J, BTreeSet<J>> = BTreeMap::new();
        let mut queue = VecDeque::from([start]);
        adj.insert(start, BTreeSet::new());
        while let Some(j) = queue.pop_front() {
            let nbrs: Vec<J> = all.iter().copied().filter(|y| phi2(f, j, *y) == (0, 0)).collect();
            for y in nbrs {
                adj.get_mut(&j).unwrap().insert(y);
                if let std::collections::btree_map::Entry::Vacant(e) = adj.entry(y) {
                    e.insert(BTreeSet::new());
                    queue.push_back(y);
                }
            }
        }
        Graph { p, adj }
    }

    /// ⌊p/12⌋ + ε with ε from p mod 12, the supersingular count.
    pub fn expected_size(p: u64) -> usize {
        let eps = match p % 12 {
            1 => 0,
            5 | 7 => 1,
            _ => 2,
        };
        (p / 12) as usize + eps
    }

    pub fn has_edge(&self, a: J, b: J) -> bool {
        self.adj.get(&a).is_some_and(|s| s.contains(&b))
    }

    /// Whether `js` is a walk in the graph.
    pub fn is_walk(&self, js: &[J]) -> bool {
        js.iter().all(|j| self.adj.contains_key(j)) && js.windows(2).all(|w| self.has_edge(w[0], w[1]))
    }
}
