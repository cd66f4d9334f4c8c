// SPDX-License-Identifier: MIT OR Apache-2.0

//! The quaternion algebra B_{p,∞} = Q⟨i, j⟩ with i² = −1, j² = −p, k = ij,
//! realized on E₁₇₂₈: y² = x³ − x by i(x, y) = (−x, √−1·y) and j = π_p.

use crate::ec::{Curve, Point};
use crate::endo::{Rep, TracedEndo};
use crate::error::{Error, Result};
use crate::ff_poly::{Fp2, Fq, Poly, RatFunc};
use crate::isogeny::{add_maps, compose_maps, Isogeny, MapPair};
use std::fmt;

/// (w + x·i + y·j + z·k) / den with den > 0 and the five integers coprime.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct QuatElem {
    pub num: [i128; 4],
    pub den: i128,
    pub p: u64,
}

fn gcd(a: i128, b: i128) -> i128 {
    crate::arith::gcd_i(a, b)
}

impl QuatElem {
    pub fn new(num: [i128; 4], den: i128, p: u64) -> QuatElem {
        assert!(den != 0);
        let s = if den < 0 { -1 } else { 1 };
        let g = num.iter().fold(den.abs(), |g, &c| gcd(g, c)).max(1);
        QuatElem { num: num.map(|c| s * c / g), den: den.abs() / g, p }
    }

    pub fn int(n: i128, p: u64) -> QuatElem {
        QuatElem::new([n, 0, 0, 0], 1, p)
    }

    pub fn i(p: u64) -> QuatElem {
        QuatElem::new([0, 1, 0, 0], 1, p)
    }

    pub fn j(p: u64) -> QuatElem {
        QuatElem::new([0, 0, 1, 0], 1, p)
    }

    pub fn k(p: u64) -> QuatElem {
        QuatElem::new([0, 0, 0, 1], 1, p)
    }

    pub fn add(&self, o: &QuatElem) -> QuatElem {
        let n: Vec<i128> = (0..4).map(|t| self.num[t] * o.den + o.num[t] * self.den).collect();
        QuatElem::new([n[0], n[1], n[2], n[3]], self.den * o.den, self.p)
    }

    pub fn neg(&self) -> QuatElem {
        QuatElem::new(self.num.map(|c| -c), self.den, self.p)
    }

    pub fn sub(&self, o: &QuatElem) -> QuatElem {
        self.add(&o.neg())
    }

    pub fn add_int(&self, n: i128) -> QuatElem {
        self.add(&QuatElem::int(n, self.p))
    }

    pub fn scale(&self, n: i128) -> QuatElem {
        QuatElem::new(self.num.map(|c| c * n), self.den, self.p)
    }

    pub fn div_int(&self, n: i128) -> QuatElem {
        QuatElem::new(self.num, self.den * n, self.p)
    }

    pub fn mul(&self, o: &QuatElem) -> QuatElem {
        let p = self.p as i128;
        let [a1, b1, c1, d1] = self.num;
        let [a2, b2, c2, d2] = o.num;
        let w = a1 * a2 - b1 * b2 - p * c1 * c2 - p * d1 * d2;
        let x = a1 * b2 + b1 * a2 + p * (c1 * d2 - d1 * c2);
        let y = a1 * c2 + c1 * a2 - b1 * d2 + d1 * b2;
        let z = a1 * d2 + d1 * a2 + b1 * c2 - c1 * b2;
        QuatElem::new([w, x, y, z], self.den * o.den, self.p)
    }

    pub fn conj(&self) -> QuatElem {
        let [w, x, y, z] = self.num;
        QuatElem::new([w, -x, -y, -z], self.den, self.p)
    }

    /// Reduced trace 2w as a fraction (num, den).
    pub fn trace(&self) -> (i128, i128) {
        reduce_frac(2 * self.num[0], self.den)
    }

    /// Reduced norm w² + x² + p y² + p z² as a fraction (num, den).
    pub fn norm(&self) -> (i128, i128) {
        let p = self.p as i128;
        let [w, x, y, z] = self.num;
        reduce_frac(w * w + x * x + p * y * y + p * z * z, self.den * self.den)
    }

    /// Coordinates in the basis 1, i, (i+k)/2, (1+j)/2, if integral.
    pub fn order_coords(&self) -> Option<[i128; 4]> {
        if 2 % self.den != 0 {
            return None;
        }
        let h = 2 / self.den;
        let [w, x, y, z] = self.num.map(|c| c * h); // twice the coordinates
        let c = z;
        let d = y;
        if (w - y) % 2 != 0 || (x - z) % 2 != 0 {
            return None;
        }
        Some([(w - y) / 2, (x - z) / 2, c, d])
    }

    pub fn is_integer(&self) -> bool {
        self.den == 1 && self.num[1..].iter().all(|&c| c == 0)
    }
}

fn reduce_frac(n: i128, d: i128) -> (i128, i128) {
    let g = gcd(n, d).max(1);
    (n / g, d / g)
}

/// Membership in ⟨1, i, (i+k)/2, (1+j)/2⟩.
pub fn in_maximal_order(q: &QuatElem) -> bool {
    q.order_coords().is_some()
}

impl fmt::Debug for QuatElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for QuatElem {
    /// Four rationals `w x y z` as `num/den`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .num
            .iter()
            .map(|&c| {
                let (n, d) = reduce_frac(c, self.den);
                if d == 1 {
                    format!("{n}")
                } else {
                    format!("{n}/{d}")
                }
            })
            .collect();
        write!(f, "{}", parts.join(" "))
    }
}

impl QuatElem {
    /// Parse four whitespace-separated rationals `w x y z`.
    pub fn parse(s: &str, p: u64) -> Result<QuatElem> {
        let parts: Vec<&str> = s.split_whitespace().collect();
        if parts.len() != 4 {
            return Err(Error::Parse(format!("quaternion needs 4 coordinates: {s:?}")));
        }
        let mut acc = QuatElem::int(0, p);
        for (t, part) in parts.iter().enumerate() {
            let (n, d) = match part.split_once('/') {
                Some((n, d)) => (n, d),
                None => (*part, "1"),
            };
            let n: i128 = n.trim().parse().map_err(|_| Error::Parse(format!("bad rational {part:?}")))?;
            let d: i128 = d.trim().parse().map_err(|_| Error::Parse(format!("bad rational {part:?}")))?;
            if d == 0 {
                return Err(Error::Parse("zero denominator".into()));
            }
            let mut num = [0; 4];
            num[t] = n;
            acc = acc.add(&QuatElem::new(num, d, p));
        }
        Ok(acc)
    }
}

fn sqrt_minus_one(p: u64) -> Fp2 {
    Fp2::i(p)
}

fn apply_i(pt: &Point) -> Point {
    match &pt.xy {
        None => pt.clone(),
        Some((x, y)) => Point { curve: pt.curve, xy: Some((x.neg(), y.mul(&y.embed(sqrt_minus_one(pt.curve.p()))))) },
    }
}

fn apply_j(pt: &Point) -> Point {
    let f = pt.frobenius();
    Point { curve: pt.curve, xy: f.xy }
}

fn apply_integral(num: &[i128; 4], pt: &Point) -> Point {
    let [w, x, y, z] = *num;
    let jp = apply_j(pt);
    let mut acc = pt.mul(w);
    if x != 0 {
        acc = acc.add(&apply_i(pt).mul(x));
    }
    if y != 0 {
        acc = acc.add(&jp.mul(y));
    }
    if z != 0 {
        acc = acc.add(&apply_i(&jp).mul(z));
    }
    acc
}

/// q(P) on E₁₇₂₈. Half-integral q is applied to 2q at a point H with
/// [2]H = P; the result does not depend on the choice of H.
pub fn eval_1728(q: &QuatElem, pt: &Point) -> Result<Point> {
    if !in_maximal_order(q) {
        return Err(Error::NotInOrder);
    }
    if pt.is_identity() {
        return Ok(pt.clone());
    }
    if q.den == 1 {
        return Ok(apply_integral(&q.num, pt));
    }
    let h = pt.halve();
    let r = apply_integral(&q.num, &h);
    r.lower(pt.x().unwrap().field()).ok_or_else(|| Error::Invariant("half-point image left the field".into()))
}

fn i_map(p: u64) -> MapPair {
    let t = Fp2::zero_p(p);
    (RatFunc::x(&t).neg(), RatFunc::constant(sqrt_minus_one(p)))
}

fn j_map(e: &Curve) -> MapPair {
    let p = e.p();
    let xp = RatFunc::from_poly(Poly::monomial(Fp2::one_p(p), p as usize));
    let yq = RatFunc::from_poly(e.rhs_poly().pow((p - 1) / 2));
    (xp, yq)
}

fn mult_then(e: &Curve, n: i128, m: &MapPair) -> Result<MapPair> {
    let (x, y) = e.multiplication_map(n.unsigned_abs() as u64);
    let y = if n < 0 { y.neg() } else { y };
    compose_maps(&(x, y), m)
}

/// q as an explicit rational map. The integral element den·q is summed
/// term by term under the group law and then divided by [2] when den = 2.
/// Practical only while the j and k coefficients are small.
pub fn rational_map(q: &QuatElem) -> Result<Isogeny> {
    if !in_maximal_order(q) {
        return Err(Error::NotInOrder);
    }
    if q.is_integer() {
        return Err(Error::Unsupported("integer quaternion has no separable non-scalar map".into()));
    }
    let p = q.p;
    let e = Curve::e1728(p);
    let t = Fp2::zero_p(p);
    let id: MapPair = (RatFunc::x(&t), RatFunc::constant(Fp2::one_p(p)));
    let [w, x, y, z] = q.num;
    let jm = j_map(&e);
    let mut terms: Vec<MapPair> = Vec::new();
    if w != 0 {
        terms.push(mult_then(&e, w, &id)?);
    }
    if x != 0 {
        terms.push(mult_then(&e, x, &i_map(p))?);
    }
    if y != 0 {
        terms.push(mult_then(&e, y, &jm)?);
    }
    if z != 0 {
        let k = compose_maps(&i_map(p), &jm)?;
        terms.push(mult_then(&e, z, &k)?);
    }
    let mut acc = terms[0].clone();
    for tm in &terms[1..] {
        acc = add_maps(&e, &acc, tm)?;
    }
    let whole = QuatElem::new(q.num, 1, p);
    let (wn, _) = whole.norm();
    if wn % p as i128 == 0 {
        return Err(Error::Inseparable);
    }
    let phi = Isogeny { domain: e, codomain: e, x_map: acc.0, y_map: acc.1, degree: wn as u64 };
    if q.den == 1 {
        return Ok(phi);
    }
    crate::divell::divide_isogeny(&phi, 2)
}

/// The traced endomorphism of E₁₇₂₈ given by a maximal-order element.
pub fn realize_endo_1728(q: &QuatElem) -> Result<TracedEndo> {
    if !in_maximal_order(q) {
        return Err(Error::NotInOrder);
    }
    if q.is_integer() {
        return Err(Error::Unsupported("integer quaternion".into()));
    }
    let (t, _) = q.trace();
    let (n, _) = q.norm();
    Ok(TracedEndo { curve: Curve::e1728(q.p), rep: Rep::Quaternion(*q), t, n })
}
