// SPDX-License-Identifier: MIT OR Apache-2.0

use super::Fq;
use num_bigint::BigUint;
use std::fmt;

/// Dense univariate polynomial, coefficients least significant first.
///
/// The zero polynomial has an empty coefficient list. A zero element of the
/// coefficient field is carried along so operations never need an external
/// field handle.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly<F: Fq> {
    c: Vec<F>,
    zero: F,
}

const KARATSUBA_CUTOFF: usize = 64;

impl<F: Fq> Poly<F> {
    pub fn new(mut c: Vec<F>, zero: F) -> Self {
        while c.last().is_some_and(|x| x.is_zero()) {
            c.pop();
        }
        Poly { c, zero: zero.zero() }
    }

    pub fn zero(t: &F) -> Self {
        Poly { c: Vec::new(), zero: t.zero() }
    }

    pub fn one(t: &F) -> Self {
        Poly::constant(t.one())
    }

    pub fn x(t: &F) -> Self {
        Poly { c: vec![t.zero(), t.one()], zero: t.zero() }
    }

    pub fn constant(c: F) -> Self {
        let z = c.zero();
        Poly::new(vec![c], z)
    }

    /// c·x^k.
    pub fn monomial(c: F, k: usize) -> Self {
        let z = c.zero();
        let mut v = vec![z.clone(); k];
        v.push(c);
        Poly::new(v, z)
    }

    /// x − r.
    pub fn linear(r: &F) -> Self {
        Poly { c: vec![r.neg(), r.one()], zero: r.zero() }
    }

    /// ∏ (x − r) over the given roots.
    pub fn from_roots(roots: &[F], t: &F) -> Self {
        roots.iter().fold(Poly::one(t), |acc, r| acc.mul(&Poly::linear(r)))
    }

    pub fn coeffs(&self) -> &[F] {
        &self.c
    }

    pub fn into_coeffs(self) -> Vec<F> {
        self.c
    }

    pub fn template(&self) -> &F {
        &self.zero
    }

    pub fn coeff(&self, i: usize) -> F {
        self.c.get(i).cloned().unwrap_or_else(|| self.zero.clone())
    }

    pub fn degree(&self) -> Option<usize> {
        self.c.len().checked_sub(1)
    }

    /// Degree with deg 0 = 0 (convenient for bounds).
    pub fn deg(&self) -> usize {
        self.c.len().saturating_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.c.len() == 1 && self.c[0].is_one()
    }

    pub fn is_constant(&self) -> bool {
        self.c.len() <= 1
    }

    pub fn lead(&self) -> F {
        self.c.last().cloned().unwrap_or_else(|| self.zero.clone())
    }

    pub fn is_monic(&self) -> bool {
        self.c.last().is_some_and(|x| x.is_one())
    }

    pub fn monic(&self) -> Self {
        match self.c.last() {
            None => self.clone(),
            Some(l) => self.scale(&l.inv().expect("nonzero leading coefficient")),
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        let n = self.c.len().max(o.c.len());
        let v = (0..n)
            .map(|i| match (self.c.get(i), o.c.get(i)) {
                (Some(a), Some(b)) => a.add(b),
                (Some(a), None) => a.clone(),
                (None, Some(b)) => b.clone(),
                (None, None) => unreachable!(),
            })
            .collect();
        Poly::new(v, self.zero.clone())
    }

    pub fn sub(&self, o: &Self) -> Self {
        let n = self.c.len().max(o.c.len());
        let v = (0..n)
            .map(|i| match (self.c.get(i), o.c.get(i)) {
                (Some(a), Some(b)) => a.sub(b),
                (Some(a), None) => a.clone(),
                (None, Some(b)) => b.neg(),
                (None, None) => unreachable!(),
            })
            .collect();
        Poly::new(v, self.zero.clone())
    }

    pub fn neg(&self) -> Self {
        Poly { c: self.c.iter().map(|a| a.neg()).collect(), zero: self.zero.clone() }
    }

    pub fn scale(&self, s: &F) -> Self {
        if s.is_zero() {
            return Poly::zero(&self.zero);
        }
        Poly::new(self.c.iter().map(|a| a.mul(s)).collect(), self.zero.clone())
    }

    /// Multiply by x^k.
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut v = vec![self.zero.clone(); k];
        v.extend(self.c.iter().cloned());
        Poly { c: v, zero: self.zero.clone() }
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Poly::zero(&self.zero);
        }
        Poly::new(mul_slices(&self.c, &o.c, &self.zero), self.zero.clone())
    }

    pub fn square(&self) -> Self {
        self.mul(self)
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut r = Poly::one(&self.zero);
        let mut b = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                r = r.mul(&b);
            }
            e >>= 1;
            if e > 0 {
                b = b.square();
            }
        }
        r
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn divrem(&self, d: &Self) -> (Self, Self) {
        assert!(!d.is_zero(), "polynomial division by zero");
        if self.c.len() < d.c.len() {
            return (Poly::zero(&self.zero), self.clone());
        }
        let inv = d.lead().inv().expect("nonzero leading coefficient");
        let dl = d.c.len();
        let mut r = self.c.clone();
        let mut q = vec![self.zero.clone(); r.len() - dl + 1];
        let monic = inv.is_one();
        for i in (0..q.len()).rev() {
            let top = &r[i + dl - 1];
            if top.is_zero() {
                continue;
            }
            let c = if monic { top.clone() } else { top.mul(&inv) };
            for j in 0..dl - 1 {
                if !d.c[j].is_zero() {
                    r[i + j] = r[i + j].sub(&c.mul(&d.c[j]));
                }
            }
            r[i + dl - 1] = self.zero.clone();
            q[i] = c;
        }
        r.truncate(dl - 1);
        (Poly::new(q, self.zero.clone()), Poly::new(r, self.zero.clone()))
    }

    pub fn rem(&self, d: &Self) -> Self {
        self.divrem(d).1
    }

    /// Exact quotient, or `None` when `d` does not divide `self`.
    pub fn div_exact(&self, d: &Self) -> Option<Self> {
        let (q, r) = self.divrem(d);
        r.is_zero().then_some(q)
    }

    /// Monic gcd (zero only if both inputs are zero).
    pub fn gcd(&self, o: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// (g, s, t) with s·self + t·o = g monic.
    pub fn xgcd(&self, o: &Self) -> (Self, Self, Self) {
        let t0 = &self.zero;
        let (mut r0, mut r1) = (self.clone(), o.clone());
        let (mut s0, mut s1) = (Poly::one(t0), Poly::zero(t0));
        let (mut u0, mut u1) = (Poly::zero(t0), Poly::one(t0));
        while !r1.is_zero() {
            let (q, r) = r0.divrem(&r1);
            r0 = std::mem::replace(&mut r1, r);
            let s = s0.sub(&q.mul(&s1));
            s0 = std::mem::replace(&mut s1, s);
            let u = u0.sub(&q.mul(&u1));
            u0 = std::mem::replace(&mut u1, u);
        }
        if r0.is_zero() {
            return (r0, s0, u0);
        }
        let li = r0.lead().inv().unwrap();
        (r0.scale(&li), s0.scale(&li), u0.scale(&li))
    }

    /// Inverse of `self` modulo `m`, if coprime.
    pub fn inv_mod(&self, m: &Self) -> Option<Self> {
        let (g, s, _) = self.rem(m).xgcd(m);
        g.is_one().then(|| s.rem(m))
    }

    pub fn eval(&self, x: &F) -> F {
        let mut acc = self.zero.clone();
        for c in self.c.iter().rev() {
            acc = acc.mul(x).add(c);
        }
        acc
    }

    /// Evaluate at a point of a (possibly larger) field, embedding coefficients.
    pub fn eval_in<G: Fq>(&self, x: &G, embed: impl Fn(&F) -> G) -> G {
        let mut acc = x.zero();
        for c in self.c.iter().rev() {
            acc = acc.mul(x).add(&embed(c));
        }
        acc
    }

    /// self(g(x)).
    pub fn compose(&self, g: &Self) -> Self {
        let mut acc = Poly::zero(&self.zero);
        for c in self.c.iter().rev() {
            acc = acc.mul(g).add(&Poly::constant(c.clone()));
        }
        acc
    }

    pub fn derivative(&self) -> Self {
        let v = self
            .c
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, a)| a.scale_int(i as i128))
            .collect();
        Poly::new(v, self.zero.clone())
    }

    /// self^e mod m.
    pub fn pow_mod(&self, e: &BigUint, m: &Self) -> Self {
        let mut r = Poly::one(&self.zero).rem(m);
        let b = self.rem(m);
        for i in (0..e.bits()).rev() {
            r = r.square().rem(m);
            if e.bit(i) {
                r = r.mul(&b).rem(m);
            }
        }
        r
    }

    /// Coefficientwise map into another coefficient field.
    pub fn map<G: Fq>(&self, zero: &G, f: impl Fn(&F) -> G) -> Poly<G> {
        Poly::new(self.c.iter().map(f).collect(), zero.clone())
    }

    /// Apply the p-power Frobenius to every coefficient.
    pub fn frobenius(&self) -> Self {
        Poly::new(self.c.iter().map(|a| a.frobenius()).collect(), self.zero.clone())
    }
}

/// Schoolbook product, with Karatsuba above a fixed size.
fn mul_slices<F: Fq>(a: &[F], b: &[F], zero: &F) -> Vec<F> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    if a.len() < KARATSUBA_CUTOFF || b.len() < KARATSUBA_CUTOFF {
        let mut out = vec![zero.clone(); a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                if !y.is_zero() {
                    out[i + j] = out[i + j].add(&x.mul(y));
                }
            }
        }
        return out;
    }
    let h = a.len().max(b.len()) / 2;
    let split = |s: &[F]| -> (Vec<F>, Vec<F>) {
        if s.len() <= h {
            (s.to_vec(), Vec::new())
        } else {
            (s[..h].to_vec(), s[h..].to_vec())
        }
    };
    let (a0, a1) = split(a);
    let (b0, b1) = split(b);
    let add = |x: &[F], y: &[F]| -> Vec<F> {
        (0..x.len().max(y.len()))
            .map(|i| match (x.get(i), y.get(i)) {
                (Some(u), Some(v)) => u.add(v),
                (Some(u), None) => u.clone(),
                (None, Some(v)) => v.clone(),
                _ => unreachable!(),
            })
            .collect()
    };
    let z0 = mul_slices(&a0, &b0, zero);
    let z2 = mul_slices(&a1, &b1, zero);
    let z1 = mul_slices(&add(&a0, &a1), &add(&b0, &b1), zero);
    let mut out = vec![zero.clone(); a.len() + b.len() - 1];
    for (i, v) in z0.iter().enumerate() {
        out[i] = out[i].add(v);
        out[i + h] = out[i + h].sub(v);
    }
    for (i, v) in z2.iter().enumerate() {
        out[i + 2 * h] = out[i + 2 * h].add(v);
        out[i + h] = out[i + h].sub(v);
    }
    for (i, v) in z1.iter().enumerate() {
        if i + h < out.len() {
            out[i + h] = out[i + h].add(v);
        }
    }
    out
}

impl<F: Fq> fmt::Debug for Poly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.c.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.c.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "({c:?})")?,
                1 => write!(f, "({c:?})x")?,
                _ => write!(f, "({c:?})x^{i}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ff_poly::Fp2;

    fn p(c: &[i128]) -> Poly<Fp2> {
        Poly::new(c.iter().map(|&x| Fp2::from_int(x, 179)).collect(), Fp2::zero_p(179))
    }

    #[test]
    fn divrem_and_gcd() {
        let (q, r) = p(&[-1, 0, 1]).divrem(&p(&[-1, 1]));
        assert_eq!(q, p(&[1, 1]));
        assert!(r.is_zero());
        let h = p(&[3, 1, 1]);
        let g = p(&[5, 0, 2, 1]).mul(&h).gcd(&p(&[7, 1]).mul(&h));
        assert_eq!(g, h);
    }

    #[test]
    fn karatsuba_matches_schoolbook() {
        let a: Vec<i128> = (0..150).map(|i| (i * i + 3) % 179).collect();
        let b: Vec<i128> = (0..97).map(|i| (7 * i + 1) % 179).collect();
        let fast = p(&a).mul(&p(&b));
        let mut slow = vec![0i128; a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            for (j, y) in b.iter().enumerate() {
                slow[i + j] = (slow[i + j] + x * y) % 179;
            }
        }
        assert_eq!(fast, p(&slow));
    }
}
