// SPDX-License-Identifier: MIT OR Apache-2.0

//! Line-oriented `key = value` records.
//!
//! An F_{p²} element c0 + c1·i is written `c0,c1` (or `c0` when c1 = 0;
//! the bracketed list `[c0,c1]` is accepted on input);
//! a polynomial is its coefficient list from degree 0 up, space-separated.

use crate::ec::Curve;
use crate::endo::{Rep, TracedEndo};
use crate::error::{Error, Result};
use crate::ff_poly::{Fp2, Poly, RatFunc};
use crate::isogeny::Isogeny;
use crate::quat::QuatElem;
use std::fmt::Write;

fn parse_err(msg: impl Into<String>) -> Error {
    Error::Parse(msg.into())
}

/// Ordered key/value record.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Record {
    entries: Vec<(String, String)>,
}

impl Record {
    pub fn new() -> Record {
        Record::default()
    }

    pub fn parse(text: &str) -> Result<Record> {
        let mut r = Record::new();
        for (no, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap().trim();
            if line.is_empty() {
                continue;
            }
            let (k, v) = line
                .split_once('=')
                .ok_or_else(|| parse_err(format!("line {}: expected `key = value`", no + 1)))?;
            let (k, v) = (k.trim(), v.trim());
            if k.is_empty() {
                return Err(parse_err(format!("line {}: empty key", no + 1)));
            }
            if r.get_opt(k).is_some_and(|old| old != v) {
                return Err(parse_err(format!("line {}: conflicting values for {k}", no + 1)));
            }
            if r.get_opt(k).is_none() {
                r.push(k, v);
            }
        }
        Ok(r)
    }

    /// Union of two records; shared keys must agree.
    pub fn merge(&self, other: &Record) -> Result<Record> {
        let mut out = self.clone();
        for (k, v) in &other.entries {
            match out.get_opt(k) {
                Some(old) if old != v => return Err(parse_err(format!("conflicting values for {k}"))),
                Some(_) => {}
                None => out.push(k, v),
            }
        }
        Ok(out)
    }

    pub fn push(&mut self, key: &str, value: impl ToString) {
        self.entries.push((key.to_string(), value.to_string()));
    }

    pub fn get_opt(&self, key: &str) -> Option<&str> {
        self.entries.iter().find(|(k, _)| k == key).map(|(_, v)| v.as_str())
    }

    pub fn get(&self, key: &str) -> Result<&str> {
        self.get_opt(key).ok_or_else(|| parse_err(format!("missing key {key}")))
    }

    pub fn int<T: std::str::FromStr>(&self, key: &str) -> Result<T> {
        let v = self.get(key)?;
        v.parse().map_err(|_| parse_err(format!("{key}: bad integer {v}")))
    }

    pub fn int_opt<T: std::str::FromStr>(&self, key: &str) -> Result<Option<T>> {
        self.get_opt(key).map(|_| self.int(key)).transpose()
    }

    pub fn render(&self) -> String {
        let mut s = String::new();
        for (k, v) in &self.entries {
            writeln!(s, "{k} = {v}").unwrap();
        }
        s
    }
}

pub fn parse_fp2(s: &str, p: u64) -> Result<Fp2> {
    let bad = || parse_err(format!("bad field element {s}"));
    let s = s.trim();
    let s = s.strip_prefix('[').and_then(|t| t.strip_suffix(']')).unwrap_or(s);
    let (a, b) = s.split_once(',').unwrap_or((s, "0"));
    let a: i128 = a.trim().parse().map_err(|_| bad())?;
    let b: i128 = b.trim().parse().map_err(|_| bad())?;
    Ok(Fp2::new(a, b, p))
}

pub fn fmt_fp2(x: &Fp2) -> String {
    if x.c1 == 0 {
        x.c0.to_string()
    } else {
        format!("{},{}", x.c0, x.c1)
    }
}

pub fn parse_poly(s: &str, p: u64) -> Result<Poly<Fp2>> {
    let c: Vec<Fp2> = s.split_whitespace().map(|t| parse_fp2(t, p)).collect::<Result<_>>()?;
    Ok(Poly::new(c, Fp2::zero_p(p)))
}

pub fn fmt_poly(f: &Poly<Fp2>) -> String {
    if f.coeffs().is_empty() {
        return "0".into();
    }
    f.coeffs().iter().map(fmt_fp2).collect::<Vec<_>>().join(" ")
}

pub fn parse_ratfunc(r: &Record, prefix: &str, p: u64) -> Result<RatFunc<Fp2>> {
    let num = parse_poly(r.get(&format!("{prefix}_num"))?, p)?;
    let den = parse_poly(r.get(&format!("{prefix}_den"))?, p)?;
    RatFunc::reduce(num, den).map_err(|_| parse_err(format!("{prefix}: zero denominator")))
}

pub fn push_ratfunc(r: &mut Record, prefix: &str, f: &RatFunc<Fp2>) {
    r.push(&format!("{prefix}_num"), fmt_poly(f.num()));
    r.push(&format!("{prefix}_den"), fmt_poly(f.den()));
}

pub fn parse_curve(r: &Record, prefix: &str, p: u64) -> Result<Curve> {
    let a = parse_fp2(r.get(&format!("{prefix}.a"))?, p)?;
    let b = parse_fp2(r.get(&format!("{prefix}.b"))?, p)?;
    Curve::new(a, b).map_err(|_| parse_err(format!("{prefix}: singular curve")))
}

pub fn push_curve(r: &mut Record, prefix: &str, e: &Curve) {
    r.push(&format!("{prefix}.a"), fmt_fp2(&e.a));
    r.push(&format!("{prefix}.b"), fmt_fp2(&e.b));
}

fn parse_isogeny(r: &Record, prefix: &str, domain: Curve, p: u64) -> Result<Isogeny> {
    let codomain = match r.get_opt(&format!("{prefix}.codomain.a")) {
        Some(_) => parse_curve(r, &format!("{prefix}.codomain"), p)?,
        None => domain,
    };
    let x = parse_ratfunc(r, &format!("{prefix}.x"), p)?;
    let y = parse_ratfunc(r, &format!("{prefix}.y"), p)?;
    let degree = r.int(&format!("{prefix}.degree"))?;
    Isogeny::from_maps(domain, codomain, x, y, degree)
}

fn push_isogeny(r: &mut Record, prefix: &str, phi: &Isogeny) {
    if phi.codomain != phi.domain {
        push_curve(r, &format!("{prefix}.codomain"), &phi.codomain);
    }
    push_ratfunc(r, &format!("{prefix}.x"), &phi.x_map);
    push_ratfunc(r, &format!("{prefix}.y"), &phi.y_map);
    r.push(&format!("{prefix}.degree"), phi.degree);
}

/// Endomorphism record under `endo.*` on the curve `curve`.
pub fn parse_endo(r: &Record, curve: Curve) -> Result<TracedEndo> {
    let p = curve.p();
    match r.get("endo.kind")? {
        "quaternion" => {
            let q = QuatElem::parse(r.get("endo.quat")?, p)?;
            if curve != Curve::e1728(p) {
                return Err(parse_err("quaternion endomorphisms need the curve y^2 = x^3 - x"));
            }
            crate::quat::realize_endo_1728(&q)
        }
        "rational" => {
            let phi = parse_isogeny(r, "endo", curve, p)?;
            TracedEndo::from_isogeny(phi, r.int("endo.t")?)
        }
        "chain" => {
            let count: usize = r.int("endo.links")?;
            let mut links = Vec::with_capacity(count);
            let mut dom = curve;
            for k in 0..count {
                let l = parse_isogeny(r, &format!("endo.link.{k}"), dom, p)?;
                dom = l.codomain;
                links.push(l);
            }
            let shift = r.int_opt("endo.shift")?.unwrap_or(0);
            TracedEndo::from_chain(curve, links, shift, r.int("endo.t")?, r.int("endo.n")?)
        }
        other => Err(parse_err(format!("unknown endo.kind {other}"))),
    }
}

pub fn push_endo(r: &mut Record, th: &TracedEndo) {
    match &th.rep {
        Rep::Quaternion(q) => {
            r.push("endo.kind", "quaternion");
            r.push("endo.quat", q);
        }
        Rep::Rational(phi) => {
            r.push("endo.kind", "rational");
            r.push("endo.t", th.t);
            push_isogeny(r, "endo", phi);
        }
        Rep::Chain { links, shift } => {
            r.push("endo.kind", "chain");
            r.push("endo.t", th.t);
            r.push("endo.n", th.n);
            r.push("endo.shift", shift);
            r.push("endo.links", links.len());
            for (k, l) in links.iter().enumerate() {
                push_isogeny(r, &format!("endo.link.{k}"), l);
            }
        }
    }
}

/// A curve with an endomorphism and options, from one or more records.
#[derive(Clone, Debug)]
pub struct Instance {
    pub p: u64,
    pub curve: Curve,
    pub endo: TracedEndo,
}

impl Instance {
    pub fn parse(r: &Record) -> Result<Instance> {
        let p: u64 = r.int("p")?;
        if p < 5 || p % 4 != 3 || !crate::arith::is_prime(p as u128) {
            return Err(parse_err(format!("p = {p} must be a prime ≡ 3 mod 4")));
        }
        let curve = parse_curve(r, "curve", p)?;
        let endo = parse_endo(r, curve)?;
        Ok(Instance { p, curve, endo })
    }

    pub fn to_record(&self) -> Record {
        let mut r = Record::new();
        r.push("p", self.p);
        push_curve(&mut r, "curve", &self.curve);
        push_endo(&mut r, &self.endo);
        r
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn record_round_trip() {
        let text = "p = 179\n# comment\ncurve.a = 178\ncurve.b = 0\nendo.kind = quaternion\nendo.quat = 0 3/2 0 1/2\n";
        let r = Record::parse(text).unwrap();
        let inst = Instance::parse(&r).unwrap();
        assert_eq!((inst.endo.t, inst.endo.n), (0, 47));
        let again = Record::parse(&inst.to_record().render()).unwrap();
        assert_eq!(again, r);
    }

    #[test]
    fn field_and_poly_syntax() {
        assert_eq!(parse_fp2("109,5", 179).unwrap(), Fp2::new(109, 5, 179));
        assert_eq!(parse_fp2("-1", 179).unwrap(), Fp2::new(178, 0, 179));
        assert_eq!(parse_fp2("[109,5]", 179).unwrap(), Fp2::new(109, 5, 179));
        assert!(parse_fp2("x", 179).is_err());
        let f = parse_poly("1 0 2,3", 179).unwrap();
        assert_eq!(fmt_poly(&f), "1 0 2,3");
        assert_eq!(fmt_poly(&parse_poly("0", 179).unwrap()), "0");
    }

    #[test]
    fn conflicting_keys_rejected() {
        assert!(Record::parse("a = 1\na = 2").is_err());
        assert!(Record::parse("novalue").is_err());
    }
}
