// SPDX-License-Identifier: MIT OR Apache-2.0

mod common;

use common::bfs::Graph;
use common::check_planted;
use std::time::Instant;

#[test]
fn oracle_graph_sizes() {
    for p in [179, 223, 251] {
        let g = Graph::build(p);
        assert_eq!(g.adj.len(), Graph::expected_size(p), "p = {p}");
        for (a, nbrs) in &g.adj {
            for b in nbrs {
                assert!(g.has_edge(*b, *a));
            }
        }
    }
}

#[test]
fn planted_paths_are_graph_walks() {
    // a few per prime; the acceptance runner covers all 25
    for p in [179, 223, 251] {
        let g = Graph::build(p);
        for seed in 0..3 {
            let t0 = Instant::now();
            let (disc, len) = check_planted(&g, seed).unwrap();
            eprintln!("p={p} seed={seed} disc={disc} len={len} {:?}", t0.elapsed());
        }
    }
}
