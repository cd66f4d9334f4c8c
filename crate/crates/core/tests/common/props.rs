// SPDX-License-Identifier: MIT OR Apache-2.0

//! Property suites as plain functions, so both the `properties` test
//! target and the acceptance runner can drive them.

use super::{plantable_discs, theta22, P};
use proptest::prelude::*;
use proptest::test_runner::{Config, TestRunner};
use rayon::prelude::*;
use ssorient::ec::Curve;
use ssorient::endo::{PowersmoothBound, TracedEndo};
use ssorient::isogeny::{compose, dual, velu, Isogeny};
use ssorient::pathfind::orient_1728;
use ssorient::quad::{class_group, cornacchia, ell_fundamental_part, is_discriminant, QuadOrder};
use ssorient::quat::{in_maximal_order, realize_endo_1728, QuatElem};
use ssorient::walk::{
    ascend_to_rim, classify_by_divisibility, classify_directions, distance_to_rim, kernel_lines, make_primitive,
    rim_cycle, suitable_translate,
};
use std::sync::OnceLock;

pub type Outcome = Result<(), String>;

pub const CASES: u32 = 100;
const POOL_SIZE: usize = 12;

fn runner() -> TestRunner {
    TestRunner::new(Config { cases: CASES, failure_persistence: None, ..Config::default() })
}

fn bound() -> PowersmoothBound {
    PowersmoothBound::new(50).unwrap()
}

/// A curve a few random 2-isogenies away from E₁₇₂₈.
fn curve_after_walk(walk: &[u8]) -> Curve {
    let mut e = Curve::e1728(P);
    for &w in walk {
        let (lines, _) = kernel_lines(&e, 2).unwrap();
        e = velu(&e, std::slice::from_ref(&lines[w as usize % lines.len()])).unwrap().codomain;
    }
    e
}

/// Chain-form endomorphisms on E₁₇₂₈, one per Δ, built once.
fn chain_pool() -> &'static [TracedEndo] {
    static POOL: OnceLock<Vec<TracedEndo>> = OnceLock::new();
    POOL.get_or_init(|| {
        plantable_discs(P)
            .into_par_iter()
            .take(POOL_SIZE)
            .map(|disc| {
                let sol = orient_1728(disc, 2, P, 10).unwrap().next().unwrap().unwrap();
                realize_endo_1728(&sol.quat).unwrap().suitable_translate_powersmooth(2, bound()).unwrap()
            })
            .collect()
    })
}

/// Endomorphisms of discriminant −47 around the rim through j = 22.
fn rim_pool() -> &'static [TracedEndo] {
    static POOL: OnceLock<Vec<TracedEndo>> = OnceLock::new();
    POOL.get_or_init(|| rim_cycle(&theta22(), 2).unwrap().steps.iter().map(|s| s.endo.clone()).collect())
}

/// Maximal-order element a + b·i + c·(i+k)/2 + d·(1+j)/2.
fn order_elem(a: i128, b: i128, c: i128, d: i128) -> QuatElem {
    QuatElem::new([2 * a + d, 2 * b + c, d, c], 2, P)
}

/// φ̂ ∘ φ = [deg φ] for 2- and 3-isogenies out of random curves.
pub fn dual_composes_to_degree() -> Outcome {
    let strat = (prop::collection::vec(any::<u8>(), 0..3), prop::sample::select(vec![2u64, 3]), any::<u8>());
    runner()
        .run(&strat, |(walk, ell, pick)| {
            let e = curve_after_walk(&walk);
            let (lines, _) = kernel_lines(&e, ell).unwrap();
            let phi = velu(&e, std::slice::from_ref(&lines[pick as usize % lines.len()])).unwrap();
            let back = compose(&dual(&phi).unwrap(), &phi).unwrap();
            let m = Isogeny::multiplication(&e, ell as i64);
            prop_assert_eq!(back.x_map, m.x_map);
            prop_assert_eq!(back.y_map, m.y_map);
            Ok(())
        })
        .map_err(|e| e.to_string())
}

/// Quaternion endomorphisms of E₁₇₂₈ and their translates satisfy
/// θ² − tθ + n = 0, and translation keeps the discriminant.
pub fn quaternion_endos_satisfy_min_poly() -> Outcome {
    let strat = (-3i128..4, -3i128..4, -2i128..3, -2i128..3, -5i128..6);
    runner()
        .run(&strat, |(a, b, c, d, shift)| {
            let q = order_elem(a, b, c, d);
            prop_assume!(in_maximal_order(&q));
            let (n, _) = q.norm();
            prop_assume!(n > 0 && n % P as i128 != 0 && !q.is_integer());
            let th = realize_endo_1728(&q).unwrap();
            prop_assert!(th.satisfies_min_poly(3, a as u64 ^ 0x55).unwrap());
            if let Ok(tr) = th.translate(shift) {
                prop_assert_eq!(tr.disc(), th.disc());
                prop_assert!(tr.satisfies_min_poly(3, 7).unwrap());
            }
            Ok(())
        })
        .map_err(|e| e.to_string())
}

/// Chains, their translates and transfers satisfy their minimal
/// polynomials; the two direction labelings agree on every kernel.
pub fn chains_and_labels() -> Outcome {
    let strat = (0usize..64, -4i128..5, any::<u8>());
    runner()
        .run(&strat, |(idx, shift, walk)| {
            let pool = chain_pool();
            let th = &pool[idx % pool.len()];
            prop_assert!(th.satisfies_min_poly(3, 1).unwrap());
            let tr = th.translate(shift).unwrap();
            prop_assert_eq!(tr.disc(), th.disc());
            prop_assert!(tr.satisfies_min_poly(3, 2).unwrap());

            let (lines, _) = kernel_lines(&th.curve, 2).unwrap();
            let nu = velu(&th.curve, std::slice::from_ref(&lines[walk as usize % 3])).unwrap();
            let moved = th.transfer(&nu).unwrap();
            prop_assert_eq!(moved.disc(), 4 * th.disc());
            prop_assert!(moved.satisfies_min_poly(3, 3).unwrap());
            let s = suitable_translate(&moved, 2, bound()).unwrap();
            for (r, kind) in classify_directions(&s, 2).unwrap() {
                prop_assert_eq!(classify_by_divisibility(&s, &r, 2).unwrap(), kind);
            }
            Ok(())
        })
        .map_err(|e| e.to_string())
}

/// Each ascending step divides the discriminant by exactly 4.
pub fn ascent_divides_disc_by_four() -> Outcome {
    let strat = (0usize..5, 0usize..3, -3i128..4);
    runner()
        .run(&strat, |(v, dir, shift)| {
            let top = rim_pool()[v].translate(shift).unwrap();
            let (lines, _) = kernel_lines(&top.curve, 2).unwrap();
            let nu = velu(&top.curve, std::slice::from_ref(&lines[dir])).unwrap();
            // horizontal directions carry a non-primitive endomorphism
            let (th, _) = make_primitive(&top.transfer(&nu).unwrap(), 2, bound()).unwrap();
            let up = ascend_to_rim(&th, 2, bound()).unwrap();
            prop_assert_eq!(up.len() as u32, distance_to_rim(th.disc(), 2));
            let mut d = th.disc();
            for s in &up.steps {
                prop_assert_eq!(s.endo.disc() * 4, d);
                prop_assert!(s.endo.satisfies_min_poly(2, 5).unwrap());
                d = s.endo.disc();
            }
            prop_assert_eq!(d, -47);
            Ok(())
        })
        .map_err(|e| e.to_string())
}

pub fn ell_fundamental_part_cases() -> Outcome {
    for (d, want) in [(-752, -47), (-188, -47), (-32, -8)] {
        let got = ell_fundamental_part(d, 2);
        if got != want {
            return Err(format!("ell_fundamental_part({d}, 2) = {got}, want {want}"));
        }
    }
    Ok(())
}

fn is_square(n: u64) -> bool {
    let r = (n as f64).sqrt() as u64;
    (r.saturating_sub(1)..=r + 1).any(|s| s * s == n)
}

/// Cornacchia against a scan over y, for every m ≤ 10⁴.
pub fn cornacchia_against_exhaustive_search() -> Outcome {
    for d in [1u64, 2, 3, 7] {
        for m in 1..=10_000u64 {
            let exists = (0..).take_while(|y| y * y <= m).any(|y| {
                let rest = m - y * y;
                rest % d == 0 && is_square(rest / d)
            });
            match cornacchia(d, m) {
                Some((y, z)) if y * y + d * z * z != m => return Err(format!("bad solution for d = {d}, m = {m}")),
                None if exists => return Err(format!("missed a solution for d = {d}, m = {m}")),
                _ => {}
            }
        }
    }
    Ok(())
}

/// Reduced primitive forms counted straight from the definition.
pub fn count_forms(disc: i128) -> usize {
    let gcd = |mut a: i128, mut b: i128| {
        while b != 0 {
            (a, b) = (b, a % b);
        }
        a.abs()
    };
    let mut count = 0;
    let mut a = 1;
    while 3 * a * a <= -disc {
        for b in -a + 1..=a {
            let num = b * b - disc;
            if num % (4 * a) != 0 {
                continue;
            }
            let c = num / (4 * a);
            if c < a || (c == a && b < 0) || gcd(gcd(a, b), c) != 1 {
                continue;
            }
            count += 1;
        }
        a += 1;
    }
    count
}

/// Class numbers of all fundamental Δ with |Δ| ≤ 2000.
pub fn class_numbers_against_form_count() -> Outcome {
    let mut checked = 0;
    for d in 3..=2000i128 {
        let disc = -d;
        if !is_discriminant(disc) || QuadOrder::new(disc).unwrap().conductor != 1 {
            continue;
        }
        let o = QuadOrder::new(disc).unwrap();
        let (h, want) = (class_group(&o).map_err(|e| e.to_string())?.h(), count_forms(disc));
        if h != want {
            return Err(format!("h({disc}) = {h}, form count {want}"));
        }
        checked += 1;
    }
    if count_forms(-47) != 5 || count_forms(-4) != 1 || checked < 500 {
        return Err("form counter sanity check failed".into());
    }
    Ok(())
}

/// Every suite, by name.
pub const ALL: [(&str, fn() -> Outcome); 7] = [
    ("dual", dual_composes_to_degree),
    ("min-poly (quaternion)", quaternion_endos_satisfy_min_poly),
    ("min-poly, translation, labels (chains)", chains_and_labels),
    ("ascent discriminants", ascent_divides_disc_by_four),
    ("ell_fundamental_part", ell_fundamental_part_cases),
    ("cornacchia", cornacchia_against_exhaustive_search),
    ("class numbers", class_numbers_against_form_count),
];
