// SPDX-License-Identifier: MIT OR Apache-2.0

use ssorient::ec::Curve;
use ssorient::endo::{PowersmoothBound, TracedEndo};
use ssorient::ff_poly::Fp2;
use ssorient::quat::{eval_1728, rational_map, realize_endo_1728, QuatElem};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const P: u64 = 179;

fn theta47() -> QuatElem {
    QuatElem::new([0, 3, 0, 1], 2, P)
}

fn g(c0: i128, c1: i128) -> Fp2 {
    Fp2::new(c0, c1, P)
}

#[test]
fn degree_47_rational_map() {
    let phi = rational_map(&theta47()).unwrap();
    let (xn, xd) = (phi.x_map.num(), phi.x_map.den());
    assert_eq!(xn.deg(), 47);
    assert_eq!(xd.deg(), 46);
    let lc = xd.lead();
    let xn = xn.scale(&lc.invert().unwrap());
    let xd = xd.monic();
    assert_eq!((xn.coeff(47), xn.coeff(46), xn.coeff(0)), (g(99, 0), g(22, 0), g(77, 0)));
    assert_eq!((xd.coeff(45), xd.coeff(0)), (g(40, 0), g(77, 0)));
    let (yn, yd) = (phi.y_map.num(), phi.y_map.den());
    let yn = yn.scale(&yd.lead().invert().unwrap());
    let yd = yd.monic();
    assert_eq!((yn.deg(), yd.deg()), (69, 69));
    assert_eq!((yn.coeff(69), yn.coeff(68), yn.coeff(0)), (g(0, 113), g(0, 157), g(0, 63)));
    assert_eq!((yd.coeff(68), yd.coeff(0)), (g(60, 0), g(158, 0)));

    // the map and the halving evaluation agree
    let e = Curve::e1728(P);
    let f = e.base_field();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..10 {
        let pt = e.random_point(&f, &mut rng);
        assert_eq!(phi.eval(&pt), eval_1728(&theta47(), &pt).unwrap());
    }
}

#[test]
fn powersmooth_translate_example() {
    let th = realize_endo_1728(&theta47()).unwrap();
    assert_eq!((th.t, th.n), (0, 47));
    assert!(th.satisfies_min_poly(10, 1).unwrap());
    let out = th.suitable_translate_powersmooth(2, PowersmoothBound::new(50).unwrap()).unwrap();
    assert_eq!((out.t, out.n), (2, 48));
    assert_eq!(out.link_degrees(), vec![16, 3]);
    assert!(out.is_prime_power_chain());
    assert!(out.satisfies_min_poly(10, 2).unwrap());
    let (links, _) = out.links().unwrap();
    let a = &links[0];
    let xd = a.x_map.den().monic();
    let xn = a.x_map.num().scale(&a.x_map.den().lead().invert().unwrap());
    assert_eq!((xn.deg(), xn.coeff(15), xn.coeff(0)), (16, g(63, 156), g(36, 56)));
    assert_eq!((xd.deg(), xd.coeff(14), xd.coeff(0)), (15, g(63, 156), g(71, 10)));
    assert_eq!(a.codomain.j(), g(171, 0));
    // The last link carries the closing isomorphism; compare up to scaling.
    let b = &links[1];
    let xd = b.x_map.den().monic();
    let xn = b.x_map.num().monic();
    assert_eq!(xn.coeffs(), &[g(158, 10), g(74, 31), g(30, 102), g(1, 0)]);
    assert_eq!(xd.coeffs(), &[g(130, 98), g(30, 102), g(1, 0)]);
    let yd = b.y_map.den().monic();
    let yn = b.y_map.num().monic();
    assert_eq!(yn.coeffs(), &[g(108, 102), g(88, 3), g(45, 153), g(1, 0)]);
    assert_eq!(yd.coeffs(), &[g(174, 45), g(32, 115), g(45, 153), g(1, 0)]);
}

#[test]
fn chain_matches_quaternion() {
    let th = realize_endo_1728(&theta47()).unwrap().translate(1).unwrap();
    let ch = th.refactor_chain().unwrap();
    let e = Curve::e1728(P);
    let f = e.base_field();
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..20 {
        let pt = e.random_point(&f, &mut rng);
        assert_eq!(th.eval(&pt).unwrap(), ch.eval(&pt).unwrap());
    }
    let _ = TracedEndo::clone(&ch);
}
