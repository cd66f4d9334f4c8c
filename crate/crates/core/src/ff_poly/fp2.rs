// SPDX-License-Identifier: MIT OR Apache-2.0

//! F_{p²} = F_p[i]/(i²+1) for p ≡ 3 (mod 4), as a copyable value.

use super::Fq;
use crate::arith::{mul_mod, pow_mod};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// c0 + c1·i with both coordinates reduced mod p.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Fp2 {
    pub c0: u64,
    pub c1: u64,
    pub p: u64,
}

#[inline]
fn mm(a: u64, b: u64, p: u64) -> u64 {
    if p < (1 << 32) {
        (a * b) % p
    } else {
        mul_mod(a, b, p)
    }
}

impl Fp2 {
    pub fn new(c0: i128, c1: i128, p: u64) -> Self {
        Fp2 {
            c0: c0.rem_euclid(p as i128) as u64,
            c1: c1.rem_euclid(p as i128) as u64,
            p,
        }
    }

    pub fn from_int(n: i128, p: u64) -> Self {
        Fp2::new(n, 0, p)
    }

    pub fn zero_p(p: u64) -> Self {
        Fp2 { c0: 0, c1: 0, p }
    }

    pub fn one_p(p: u64) -> Self {
        Fp2 { c0: 1 % p, c1: 0, p }
    }

    /// The square root of −1 fixed by the tower.
    pub fn i(p: u64) -> Self {
        Fp2 { c0: 0, c1: 1, p }
    }

    pub fn conj(self) -> Self {
        Fp2 { c0: self.c0, c1: (self.p - self.c1) % self.p, p: self.p }
    }

    pub fn norm(self) -> u64 {
        let p = self.p;
        (mm(self.c0, self.c0, p) + mm(self.c1, self.c1, p)) % p
    }

    pub fn is_in_fp(self) -> bool {
        self.c1 == 0
    }

    pub fn invert(self) -> Option<Self> {
        let n = self.norm();
        if n == 0 {
            return None;
        }
        let ni = pow_mod(n, self.p - 2, self.p);
        let c = self.conj();
        Some(Fp2 { c0: mm(c.c0, ni, self.p), c1: mm(c.c1, ni, self.p), p: self.p })
    }

    pub fn pow_u(self, mut e: u128) -> Self {
        let mut r = Fp2::one_p(self.p);
        let mut b = self;
        while e > 0 {
            if e & 1 == 1 {
                r = r * b;
            }
            b = b * b;
            e >>= 1;
        }
        r
    }
}

impl Add for Fp2 {
    type Output = Fp2;
    #[inline]
    fn add(self, o: Fp2) -> Fp2 {
        let p = self.p;
        let a = self.c0 + o.c0;
        let b = self.c1 + o.c1;
        Fp2 { c0: if a >= p { a - p } else { a }, c1: if b >= p { b - p } else { b }, p }
    }
}

impl Sub for Fp2 {
    type Output = Fp2;
    #[inline]
    fn sub(self, o: Fp2) -> Fp2 {
        let p = self.p;
        Fp2 {
            c0: if self.c0 >= o.c0 { self.c0 - o.c0 } else { self.c0 + p - o.c0 },
            c1: if self.c1 >= o.c1 { self.c1 - o.c1 } else { self.c1 + p - o.c1 },
            p,
        }
    }
}

impl Neg for Fp2 {
    type Output = Fp2;
    #[inline]
    fn neg(self) -> Fp2 {
        Fp2 { c0: (self.p - self.c0) % self.p, c1: (self.p - self.c1) % self.p, p: self.p }
    }
}

impl Mul for Fp2 {
    type Output = Fp2;
    #[inline]
    fn mul(self, o: Fp2) -> Fp2 {
        let p = self.p;
        if p < (1 << 31) {
            let re = (self.c0 * o.c0 + (p - self.c1) * o.c1) % p;
            let im = (self.c0 * o.c1 + self.c1 * o.c0) % p;
            Fp2 { c0: re, c1: im, p }
        } else {
            let re = (mm(self.c0, o.c0, p) + p - mm(self.c1, o.c1, p)) % p;
            let im = (mm(self.c0, o.c1, p) + mm(self.c1, o.c0, p)) % p;
            Fp2 { c0: re, c1: im, p }
        }
    }
}

impl fmt::Debug for Fp2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Prints in the `ai + b` style used for j-invariants, e.g. `99i+107`.
impl fmt::Display for Fp2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.c1, self.c0) {
            (0, c) => write!(f, "{c}"),
            (1, 0) => write!(f, "i"),
            (a, 0) => write!(f, "{a}i"),
            (1, c) => write!(f, "i+{c}"),
            (a, c) => write!(f, "{a}i+{c}"),
        }
    }
}

impl Fq for Fp2 {
    fn zero(&self) -> Self {
        Fp2::zero_p(self.p)
    }
    fn one(&self) -> Self {
        Fp2::one_p(self.p)
    }
    fn is_zero(&self) -> bool {
        self.c0 == 0 && self.c1 == 0
    }
    fn add(&self, o: &Self) -> Self {
        *self + *o
    }
    fn sub(&self, o: &Self) -> Self {
        *self - *o
    }
    fn neg(&self) -> Self {
        -*self
    }
    fn mul(&self, o: &Self) -> Self {
        *self * *o
    }
    fn inv(&self) -> Option<Self> {
        self.invert()
    }
    fn from_int(&self, n: i128) -> Self {
        Fp2::from_int(n, self.p)
    }
    fn embed(&self, c: Fp2) -> Self {
        c
    }
    fn descend(&self) -> Option<Fp2> {
        Some(*self)
    }
    fn frobenius(&self) -> Self {
        self.conj()
    }
    fn char_p(&self) -> u64 {
        self.p
    }
    fn degree(&self) -> usize {
        2
    }
    fn coeffs(&self) -> Vec<u64> {
        vec![self.c0, self.c1]
    }
    fn from_coeffs_like(&self, c: &[u64]) -> Self {
        Fp2 {
            c0: c.first().copied().unwrap_or(0) % self.p,
            c1: c.get(1).copied().unwrap_or(0) % self.p,
            p: self.p,
        }
    }
}
