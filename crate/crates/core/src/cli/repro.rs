// SPDX-License-Identifier: MIT OR Apache-2.0

//! The p = 179 running example recomputed and compared line by line with
//! the golden records bundled under `golden/`.

use super::format::{fmt_fp2, fmt_poly, parse_poly, Instance, Record};
use super::{divide_record, path_record};
use crate::divell::eval_transform;
use crate::ec::Curve;
use crate::endo::PowersmoothBound;
use crate::error::Result;
use crate::ff_poly::{Fp2, Fq};
use crate::pathfind::{orient_1728, path_to_1728, PathOptions};
use crate::quat::{realize_endo_1728, QuatElem};
use crate::walk::{ascend_to_rim, make_primitive, rim_cycle};

pub const P: u64 = 179;

pub const DIV3_IN: &str = include_str!("../../golden/div3.in");
pub const DIV3_OUT: &str = include_str!("../../golden/div3.out");
pub const TRANSFORM_IN: &str = include_str!("../../golden/transform.in");
pub const TRANSFORM_OUT: &str = include_str!("../../golden/transform.out");
pub const TRANSLATE_OUT: &str = include_str!("../../golden/translate.out");
pub const ORIENT_OUT: &str = include_str!("../../golden/orient.out");
pub const RIM_OUT: &str = include_str!("../../golden/rim.out");
pub const ASCENT_OUT: &str = include_str!("../../golden/ascent.out");
pub const THETA120: &str = include_str!("../../golden/theta120.in");
pub const PATH_OUT: &str = include_str!("../../golden/path.out");

pub struct Check {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

/// Compare rendered output with a golden record, ignoring comments.
fn compare(name: &'static str, got: Result<Record>, golden: &str) -> Check {
    let got = match got {
        Ok(r) => r,
        Err(e) => return Check { name, passed: false, detail: format!(": {e}") },
    };
    let want = match Record::parse(golden) {
        Ok(r) => r,
        Err(e) => return Check { name, passed: false, detail: format!(": bad golden file: {e}") },
    };
    if got == want {
        return Check { name, passed: true, detail: String::new() };
    }
    let (g, w) = (got.render(), want.render());
    let line = g
        .lines()
        .zip(w.lines())
        .find(|(a, b)| a != b)
        .map(|(a, b)| format!(": got `{a}`, want `{b}`"))
        .unwrap_or_else(|| ": record lengths differ".into());
    Check { name, passed: false, detail: line }
}

pub fn division() -> Result<Record> {
    divide_record(&Record::parse(DIV3_IN)?)
}

pub fn transform() -> Result<Record> {
    let r = Record::parse(TRANSFORM_IN)?;
    let e = Curve::e1728(P);
    let poly = parse_poly(r.get("p_poly")?, P)?;
    let (x3, _) = e.multiplication_map(3);
    let mut out = Record::new();
    out.push("transform", fmt_poly(&eval_transform(&e, &poly, &x3)?));
    Ok(out)
}

pub fn theta47() -> QuatElem {
    QuatElem::new([0, 3, 0, 1], 2, P)
}

pub fn translate() -> Result<Record> {
    let th = realize_endo_1728(&theta47())?.suitable_translate_powersmooth(2, PowersmoothBound::new(50)?)?;
    let mut out = Record::new();
    out.push("t", th.t);
    out.push("n", th.n);
    out.push("degrees", th.link_degrees().iter().map(|d| d.to_string()).collect::<Vec<_>>().join(" "));
    if let Some((links, _)) = th.links() {
        let x = &links[0].x_map;
        let s = x.den().lead().invert().unwrap();
        let (num, den) = (x.num().scale(&s), x.den().scale(&s));
        out.push("link.0.x_num.15", fmt_fp2(&num.coeff(15)));
        out.push("link.0.x_num.0", fmt_fp2(&num.coeff(0)));
        out.push("link.0.x_den.14", fmt_fp2(&den.coeff(14)));
        out.push("link.0.x_den.0", fmt_fp2(&den.coeff(0)));
        out.push("link.0.codomain_j", fmt_fp2(&links[0].codomain.j()));
    }
    Ok(out)
}

pub fn orientations() -> Result<Record> {
    let mut out = Record::new();
    let sols: Vec<_> = orient_1728(-47, 2, P, 8)?.map_while(|s| s.ok()).collect();
    out.push("first.r", sols[0].r);
    out.push("first.quat", sols[0].quat);
    let listed = [(7, 371), (8, 153), (8, 511)];
    for (k, (r, x)) in listed.iter().enumerate() {
        if let Some(s) = sols.iter().find(|s| s.r == *r && s.quat.num[1] == *x) {
            out.push(&format!("listed.{k}.r"), s.r);
            out.push(&format!("listed.{k}.quat"), s.quat);
        }
    }
    Ok(out)
}

fn theta22() -> Result<crate::endo::TracedEndo> {
    let th = realize_endo_1728(&theta47())?.suitable_translate_powersmooth(2, PowersmoothBound::new(50)?)?;
    let up = ascend_to_rim(&th, 2, PowersmoothBound::default())?;
    Ok(up.steps[0].endo.clone())
}

pub fn rim() -> Result<Record> {
    let rim = rim_cycle(&theta22()?, 2)?;
    let mut out = Record::new();
    out.push("length", rim.len());
    let js = rim.j_invariants();
    out.push("j", js.iter().map(fmt_fp2).collect::<Vec<_>>().join(" "));
    out.push("kernel.0.x", fmt_fp2(&rim.steps[0].kernel.x().unwrap().descend().unwrap()));
    Ok(out)
}

pub fn theta120() -> Result<Instance> {
    Instance::parse(&Record::parse(THETA120)?)
}

pub fn ascent() -> Result<Record> {
    let mut out = Record::new();
    let th = realize_endo_1728(&theta47())?.suitable_translate_powersmooth(2, PowersmoothBound::new(50)?)?;
    let e171 = th.links().unwrap().0[0].codomain;
    let up = ascend_to_rim(&th, 2, PowersmoothBound::default())?;
    out.push("from1728.length", up.len());
    out.push("from1728.j", fmt_fp2(&up.end().j()));
    let top = &up.steps[0].endo;
    out.push("from1728.t", top.t);
    out.push("from1728.n", top.n);

    let inst = theta120()?;
    let (prim, _) = make_primitive(&inst.endo, 2, PowersmoothBound::default())?;
    out.push("from120.t", prim.t);
    out.push("from120.n", prim.n);
    let up = ascend_to_rim(&prim, 2, PowersmoothBound::default())?;
    out.push("from120.length", up.len());
    for (k, s) in up.steps.iter().enumerate() {
        // Kernels are reported on the j = 171 model reached from E₁₇₂₈.
        let kernel = match s.isogeny.domain.isomorphism(&e171) {
            Some(iso) if s.isogeny.domain.j() == e171.j() => iso.apply(&s.kernel),
            _ => s.kernel.clone(),
        };
        let x: Fp2 = kernel.x().unwrap().descend().unwrap();
        out.push(&format!("from120.kernel.{k}.x"), fmt_fp2(&x));
        out.push(&format!("from120.j.{k}"), fmt_fp2(&s.isogeny.codomain.j()));
    }
    Ok(out)
}

pub fn path() -> Result<Record> {
    let inst = theta120()?;
    let path = path_to_1728(&inst.endo, 2, PathOptions::default())?;
    let full = path_record(&path, P)?;
    let mut out = Record::new();
    out.push("length", full.get("length")?);
    out.push("j", full.get("j")?);
    Ok(out)
}

pub fn run_all() -> Vec<Check> {
    vec![
        compare("division-by-3", division(), DIV3_OUT),
        compare("transform", transform(), TRANSFORM_OUT),
        compare("powersmooth-translate", translate(), TRANSLATE_OUT),
        compare("orient-1728", orientations(), ORIENT_OUT),
        compare("rim-walk", rim(), RIM_OUT),
        compare("ascent", ascent(), ASCENT_OUT),
        compare("path-to-1728", path(), PATH_OUT),
    ]
}
