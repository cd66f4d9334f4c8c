// SPDX-License-Identifier: MIT OR Apache-2.0

//! Shared fixtures for the p = 179 running example.

#![allow(dead_code)]

pub mod bfs;
pub mod props;

use ssorient::ec::Curve;
use ssorient::endo::{PowersmoothBound, TracedEndo};
use ssorient::ff_poly::Fp2;
use ssorient::isogeny::{velu, Isogeny};
use ssorient::quat::{realize_endo_1728, QuatElem};
use ssorient::walk::{ascend_to_rim, kernel_lines, rim_cycle};

pub const P: u64 = 179;

pub fn g(c0: i128, c1: i128) -> Fp2 {
    Fp2::new(c0, c1, P)
}

/// (3i + k)/2 of trace 0 and norm 47.
pub fn theta47() -> QuatElem {
    QuatElem::new([0, 3, 0, 1], 2, P)
}

/// The (2, 48) powersmooth chain on E₁₇₂₈.
pub fn theta_2_48() -> TracedEndo {
    let th = realize_endo_1728(&theta47()).unwrap();
    th.suitable_translate_powersmooth(2, PowersmoothBound::new(50).unwrap()).unwrap()
}

/// (E₂₂, θ₂₂, 1, 12) reached by ascending from E₁₇₂₈.
pub fn theta22() -> TracedEndo {
    let up = ascend_to_rim(&theta_2_48(), 2, PowersmoothBound::default()).unwrap();
    up.steps[0].endo.clone()
}

/// The 2-isogeny from `e` to the curve with j-invariant `j`.
pub fn step_to(e: &Curve, j: Fp2) -> Isogeny {
    let (lines, _) = kernel_lines(e, 2).unwrap();
    lines
        .iter()
        .map(|r| velu(e, std::slice::from_ref(r)).unwrap())
        .find(|phi| phi.codomain.j() == j)
        .expect("no 2-isogeny to the requested j")
}

/// Model y² = x³ + (7i + 86)x + (45i + 174) of j = 120.
pub fn e120() -> Curve {
    Curve::new(g(86, 7), g(174, 45)).unwrap()
}

/// (E₁₂₀, θ₁₂₀, 20, 288): the rim endomorphism at j = 5i + 109 moved down
/// two levels through j = 171, onto the model above, plus [8].
pub fn theta120() -> TracedEndo {
    let rim = rim_cycle(&theta22(), 2).unwrap();
    let th = rim.steps[1].endo.clone();
    assert_eq!(th.curve.j(), g(109, 5));
    let nu1 = step_to(&th.curve, g(171, 0));
    let th = th.transfer(&nu1).unwrap();
    let nu2 = step_to(&th.curve, g(120, 0));
    let th = th.transfer(&nu2).unwrap();
    let iso = th.curve.isomorphism(&e120()).expect("model is a twist");
    th.transfer(&Isogeny::from_iso(&iso)).unwrap().translate(8).unwrap()
}

/// Fundamental discriminants −200 < Δ < −4 with p inert in Q(√Δ).
pub fn plantable_discs(p: u64) -> Vec<i128> {
    (5..200)
        .map(|d| -(d as i128))
        .filter(|&d| {
            ssorient::quad::is_discriminant(d)
                && ssorient::quad::QuadOrder::new(d).unwrap().conductor == 1
                && ssorient::quad::kronecker(d, p) == -1
        })
        .collect()
}

/// A curve reached from E₁₇₂₈ by a random 2-isogeny walk, with an
/// endomorphism carried along it from an orientation of E₁₇₂₈.
pub fn plant(p: u64, seed: u64) -> (i128, TracedEndo) {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let discs = plantable_discs(p);
    let disc = discs[rng.gen_range(0..discs.len())];
    // the least-norm orientation keeps translate norms powersmooth
    let sol = ssorient::pathfind::orient_1728(disc, 2, p, 12).unwrap().next().unwrap().unwrap();
    let q = &sol.quat;
    let mut th = realize_endo_1728(q)
        .unwrap()
        .suitable_translate_powersmooth(2, PowersmoothBound::new(50).unwrap())
        .unwrap();
    for _ in 0..rng.gen_range(1..=3) {
        let (lines, _) = kernel_lines(&th.curve, 2).unwrap();
        let r = &lines[rng.gen_range(0..lines.len())];
        let nu = velu(&th.curve, std::slice::from_ref(r)).unwrap();
        th = th.transfer(&nu).unwrap();
    }
    (disc, th)
}

pub fn as_pair(j: Fp2) -> bfs::J {
    (j.c0, j.c1)
}

/// The 25 planted instances: (p, seed).
pub fn planted_instances() -> Vec<(u64, u64)> {
    [(179u64, 9u64), (223, 8), (251, 8)].iter().flat_map(|&(p, n)| (0..n).map(move |s| (p, s))).collect()
}

/// Plant an instance, find a path back to 1728 and check it against the
/// oracle graph; the discriminant and path length on success.
pub fn check_planted(g: &bfs::Graph, seed: u64) -> Result<(i128, usize), String> {
    use ssorient::pathfind::{path_to_1728, PathOptions};
    // desk-scale bound: keeps every torsion field small
    let opts = PathOptions { bound: PowersmoothBound::new(50).unwrap(), r_cap: None };
    let p = g.p;
    let (disc, th) = plant(p, seed);
    let path = path_to_1728(&th, 2, opts).map_err(|e| format!("p = {p}, seed = {seed}: {e}"))?;
    let js: Vec<_> = path.j_invariants().into_iter().map(as_pair).collect();
    if js[0] != (1728 % p, 0) || *js.last().unwrap() != as_pair(th.curve.j()) {
        return Err(format!("p = {p}, seed = {seed}: wrong endpoints {js:?}"));
    }
    if !g.is_walk(&js) {
        return Err(format!("p = {p}, seed = {seed}: not a walk in the graph: {js:?}"));
    }
    Ok((disc, path.len()))
}
