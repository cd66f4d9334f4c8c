// SPDX-License-Identifier: MIT OR Apache-2.0

//! The bundled input records, rebuilt from scratch. Set SSORIENT_BLESS=1
//! to rewrite them.

mod common;

use ssorient::cli::format::{push_curve, push_ratfunc, Instance, Record};
use ssorient::ec::Curve;
use ssorient::isogeny::{compose, Isogeny};
use ssorient::quat::{rational_map, QuatElem};
use std::path::PathBuf;

fn golden(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("golden").join(name)
}

fn check_or_bless(name: &str, header: &str, r: &Record) {
    let text = format!("{header}{}", r.render());
    let path = golden(name);
    if std::env::var_os("SSORIENT_BLESS").is_some() {
        std::fs::write(&path, &text).unwrap();
    }
    let bundled = Record::parse(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(&bundled, r, "{name} is stale");
}

#[test]
fn division_input() {
    let e = Curve::e1728(common::P);
    let one_plus_i = rational_map(&QuatElem::new([1, 1, 0, 0], 1, common::P)).unwrap();
    let three = compose(&Isogeny::multiplication(&e, 3), &one_plus_i).unwrap();
    let mut r = Record::new();
    r.push("p", common::P);
    r.push("ell", 3);
    push_curve(&mut r, "e1", &e);
    push_ratfunc(&mut r, "f", &three.x_map);
    push_ratfunc(&mut r, "g", &three.y_map);
    check_or_bless("div3.in", "# [3]∘(1 + [i]) on y^2 = x^3 - x over F_179\n", &r);
}

#[test]
fn theta120_input() {
    let th = common::theta120();
    let phi = th.rational_map().unwrap();
    let th = ssorient::endo::TracedEndo::from_isogeny(phi, th.t).unwrap();
    let inst = Instance { p: common::P, curve: th.curve, endo: th };
    check_or_bless("theta120.in", "# degree-288 endomorphism of trace 20 on a model of j = 120\n", &inst.to_record());
}
