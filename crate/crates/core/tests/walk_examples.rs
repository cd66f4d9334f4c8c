// SPDX-License-Identifier: MIT OR Apache-2.0

use ssorient::endo::{PowersmoothBound, TracedEndo};
use ssorient::ff_poly::{Fp2, Fq};
use ssorient::quat::{realize_endo_1728, QuatElem};
use ssorient::walk::{ascend_to_rim, classify_by_divisibility, classify_directions, make_primitive, rim_cycle, StepKind};

const P: u64 = 179;

fn g(c0: i128, c1: i128) -> Fp2 {
    Fp2::new(c0, c1, P)
}

fn theta_2_48() -> TracedEndo {
    let th = realize_endo_1728(&QuatElem::new([0, 3, 0, 1], 2, P)).unwrap();
    th.suitable_translate_powersmooth(2, PowersmoothBound::new(50).unwrap()).unwrap()
}

#[test]
fn chain_example_up_and_around() {
    let th = theta_2_48();
    let (same, c) = make_primitive(&th, 2, PowersmoothBound::default()).unwrap();
    assert_eq!((c, same.t, same.n), (0, 2, 48));

    let up = ascend_to_rim(&th, 2, PowersmoothBound::default()).unwrap();
    assert_eq!(up.len(), 1);
    let step = &up.steps[0];
    assert_eq!(step.kernel.x().unwrap().descend(), Some(g(178, 0)));
    assert_eq!(step.isogeny.codomain.j(), g(22, 0));
    let th22 = step.endo.clone();
    assert_eq!((th22.t, th22.n), (1, 12));
    assert_eq!(th22.link_degrees(), vec![4, 3]);
    assert!(th22.satisfies_min_poly(10, 3).unwrap());

    let labels = classify_directions(&th22, 2).unwrap();
    let horiz: Vec<Fp2> = labels
        .iter()
        .filter(|(_, k)| *k == StepKind::Horizontal)
        .map(|(r, _)| r.x().unwrap().descend().unwrap())
        .collect();
    assert_eq!(horiz.len(), 2);
    assert!(horiz.contains(&g(178, 156)));
    for (r, k) in &labels {
        assert_eq!(classify_by_divisibility(&th22, r, 2).unwrap(), *k);
    }

    let rim = rim_cycle(&th22, 2).unwrap();
    assert_eq!(rim.steps[0].kernel.x().unwrap().descend(), Some(g(178, 156)));
    let c1 = rim.steps[0].isogeny.codomain;
    assert_eq!((c1.a, c1.b), (g(88, 26), g(104, 141)));
    assert_eq!(
        rim.j_invariants(),
        vec![g(22, 0), g(107, 99), g(109, 5), g(109, 174), g(107, 80), g(22, 0)]
    );
    for s in &rim.steps {
        assert_eq!((s.endo.t, s.endo.n), (1, 12));
    }
}
