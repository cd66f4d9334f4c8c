// SPDX-License-Identifier: MIT OR Apache-2.0

//! Extension towers F_p ⊂ F_{p²} ⊂ F_{p^{2k}} ⊂ … with flat storage.
//!
//! An element of a tower with levels of degrees d₁, d₂, … is stored as its
//! coordinates over F_p in the basis z₁^{e₁} z₂^{e₂} ⋯, with the index of z₁
//! varying fastest. The first level over F_p is always x² + 1, so the leading
//! two coordinates of any element are an F_{p²} value and F_{p²} embeds by
//! zero-padding. The same holds between a tower and any extension of it.

use super::{enumerate_elements, is_irreducible, Fp2, Fq, Poly};
use crate::arith::{factor, mul_mod, pow_mod};
use num_bigint::BigUint;
use num_traits::One;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

#[derive(Debug, PartialEq, Eq, Hash)]
struct Level {
    k: usize,
    /// Monic modulus z^k + Σ low[i] z^i, coefficients over the level below.
    low: Vec<Vec<u64>>,
}

#[derive(Debug)]
struct Tower {
    p: u64,
    levels: Vec<Level>,
    /// sizes[j] = degree over F_p after j levels.
    sizes: Vec<usize>,
}

impl PartialEq for Tower {
    fn eq(&self, o: &Self) -> bool {
        self.p == o.p && self.levels == o.levels
    }
}

/// Handle to an immutable field tower; cheap to clone and share.
#[derive(Clone, Debug)]
pub struct Field(Arc<Tower>);

impl PartialEq for Field {
    fn eq(&self, o: &Self) -> bool {
        Arc::ptr_eq(&self.0, &o.0) || *self.0 == *o.0
    }
}
impl Eq for Field {}

impl Hash for Field {
    fn hash<H: Hasher>(&self, h: &mut H) {
        self.0.p.hash(h);
        self.0.levels.hash(h);
    }
}

impl Field {
    /// The prime field F_p.
    pub fn prime(p: u64) -> Field {
        Field(Arc::new(Tower { p, levels: Vec::new(), sizes: vec![1] }))
    }

    /// F_{p²} = F_p[i]/(i²+1); requires p ≡ 3 (mod 4).
    pub fn fp2(p: u64) -> Field {
        assert!(p % 4 == 3, "F_p2 model needs p = 3 mod 4");
        field_extend(&Field::prime(p), 2)
    }

    /// Smallest tower over F_{p²} whose top level has degree `k` over F_{p²}.
    pub fn over_fp2(p: u64, k: usize) -> Field {
        field_extend(&Field::fp2(p), k)
    }

    pub fn p(&self) -> u64 {
        self.0.p
    }

    pub fn degree(&self) -> usize {
        *self.0.sizes.last().unwrap()
    }

    pub fn level_degrees(&self) -> Vec<usize> {
        self.0.levels.iter().map(|l| l.k).collect()
    }

    /// Level moduli as coefficient lists (least significant first, monic
    /// leading 1 included), each coefficient flat over F_p.
    pub fn moduli(&self) -> Vec<Vec<Vec<u64>>> {
        self.0
            .levels
            .iter()
            .enumerate()
            .map(|(j, l)| {
                let mut v = l.low.clone();
                let mut one = vec![0; self.0.sizes[j]];
                one[0] = 1;
                v.push(one);
                v
            })
            .collect()
    }

    /// True when `self` is a sub-tower (prefix) of `o`.
    pub fn is_prefix_of(&self, o: &Field) -> bool {
        self.0.p == o.0.p
            && self.0.levels.len() <= o.0.levels.len()
            && self.0.levels.iter().zip(&o.0.levels).all(|(a, b)| a == b)
    }

    pub fn zero(&self) -> Ext {
        Ext { f: self.clone(), c: vec![0; self.degree()] }
    }

    pub fn one(&self) -> Ext {
        let mut c = vec![0; self.degree()];
        c[0] = 1;
        Ext { f: self.clone(), c }
    }

    pub fn from_fp2(&self, a: Fp2) -> Ext {
        let mut c = vec![0; self.degree()];
        c[0] = a.c0;
        if self.degree() >= 2 {
            c[1] = a.c1;
        } else {
            assert!(a.c1 == 0, "F_p2 element in prime field");
        }
        Ext { f: self.clone(), c }
    }

    pub fn from_coeffs(&self, c: &[u64]) -> Ext {
        let p = self.p();
        let mut v = vec![0; self.degree()];
        for (s, x) in v.iter_mut().zip(c) {
            *s = x % p;
        }
        Ext { f: self.clone(), c: v }
    }

    /// The adjoined root of the top level.
    pub fn generator(&self) -> Ext {
        let n = self.0.levels.len();
        if n == 0 {
            return self.one();
        }
        let mut c = vec![0; self.degree()];
        c[self.0.sizes[n - 1]] = 1;
        Ext { f: self.clone(), c }
    }

    /// The field consisting of the first `levels` levels.
    pub fn truncate(&self, levels: usize) -> Field {
        let t = &self.0;
        let lv = levels.min(t.levels.len());
        Field(Arc::new(Tower {
            p: t.p,
            levels: t.levels[..lv].iter().map(|l| Level { k: l.k, low: l.low.clone() }).collect(),
            sizes: t.sizes[..=lv].to_vec(),
        }))
    }

    pub fn num_levels(&self) -> usize {
        self.0.levels.len()
    }
}

/// Extend the top of `field` by a level of degree `k`. Moduli are chosen
/// deterministically: x² + 1 directly over F_p, otherwise binomials x^k − c,
/// then trinomials x^k − x − c, with c in lexicographic order.
pub fn field_extend(field: &Field, k: usize) -> Field {
    assert!(k >= 1);
    if k == 1 {
        return field.clone();
    }
    // The modulus search dominates torsion-basis setup, and the same
    // extensions recur across every refactor of a path computation.
    static CACHE: OnceLock<Mutex<HashMap<(Field, usize), Field>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(f) = cache.lock().unwrap().get(&(field.clone(), k)) {
        return f.clone();
    }
    let ext = build_extension(field, k);
    cache.lock().unwrap().entry((field.clone(), k)).or_insert(ext).clone()
}

fn build_extension(field: &Field, k: usize) -> Field {
    let t = &field.0;
    let p = t.p;
    let low = if t.levels.is_empty() && k == 2 && p % 4 == 3 {
        vec![vec![1], vec![0]]
    } else {
        choose_modulus(field, k)
    };
    let mut levels: Vec<Level> = t.levels.iter().map(|l| Level { k: l.k, low: l.low.clone() }).collect();
    levels.push(Level { k, low });
    let mut sizes = t.sizes.clone();
    sizes.push(field.degree() * k);
    Field(Arc::new(Tower { p, levels, sizes }))
}

fn choose_modulus(base: &Field, k: usize) -> Vec<Vec<u64>> {
    let one = base.one();
    let zero = base.zero();
    let q = one.order();
    let binomial_possible = factor(k as u128).iter().all(|&(r, _)| {
        (q.clone() - BigUint::one()) % BigUint::from(r) == BigUint::from(0u32)
    }) && (!k.is_multiple_of(4) || q.clone() % BigUint::from(4u32) == BigUint::one());
    // Small elements first; beyond them, shifts of the top generator, since
    // elements of a proper subfield are often r-th powers in the base.
    let mut candidates = enumerate_elements(&one, 20_000);
    if base.num_levels() > 1 {
        let g = base.generator();
        let shifted: Vec<Ext> = candidates.iter().take(2_000).map(|c| g.add(c)).collect();
        candidates.extend(shifted);
    }
    // x^k − c is irreducible iff c is not an r-th power for every prime r | k.
    let binomial_ok = |c: &Ext| {
        !c.is_zero()
            && factor(k as u128).iter().all(|&(r, _)| !c.pow_big(&((q.clone() - BigUint::one()) / BigUint::from(r))).is_one())
    };
    let build = |c: &Ext, trinomial: bool| {
        let mut coeffs = vec![zero.clone(); k + 1];
        coeffs[0] = c.neg();
        if trinomial {
            coeffs[1] = one.neg();
        }
        coeffs[k] = one.clone();
        Poly::new(coeffs, zero.clone())
    };
    let to_low = |f: &Poly<Ext>| f.coeffs()[..k].iter().map(|e| e.c.clone()).collect::<Vec<_>>();
    if binomial_possible {
        if let Some(c) = candidates.iter().find(|c| binomial_ok(c)) {
            let f = build(c, false);
            debug_assert!(is_irreducible(&f));
            return to_low(&f);
        }
    }
    for c in &candidates {
        let f = build(c, true);
        if is_irreducible(&f) {
            return to_low(&f);
        }
    }
    // Dense fallback in lexicographic order of the low coefficients.
    let mut idx = vec![0usize; k];
    loop {
        let mut coeffs: Vec<Ext> = idx.iter().map(|&i| if i == 0 { zero.clone() } else { candidates[i - 1].clone() }).collect();
        coeffs.push(one.clone());
        let f = Poly::new(coeffs, zero.clone());
        if f.degree() == Some(k) && is_irreducible(&f) {
            return to_low(&f);
        }
        let mut pos = 0;
        loop {
            idx[pos] += 1;
            if idx[pos] <= candidates.len() {
                break;
            }
            idx[pos] = 0;
            pos += 1;
            assert!(pos < k, "modulus search exhausted");
        }
    }
}

impl Tower {
    fn add(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        let p = self.p;
        a.iter().zip(b).map(|(x, y)| { let s = x + y; if s >= p { s - p } else { s } }).collect()
    }

    fn add_assign(&self, a: &mut [u64], b: &[u64]) {
        let p = self.p;
        for (x, y) in a.iter_mut().zip(b) {
            let s = *x + y;
            *x = if s >= p { s - p } else { s };
        }
    }

    fn sub_assign(&self, a: &mut [u64], b: &[u64]) {
        let p = self.p;
        for (x, y) in a.iter_mut().zip(b) {
            *x = if *x >= *y { *x - y } else { *x + p - y };
        }
    }

    fn mul(&self, j: usize, a: &[u64], b: &[u64]) -> Vec<u64> {
        let p = self.p;
        if j == 0 {
            return vec![mul_mod(a[0], b[0], p)];
        }
        if j == 1 && self.levels[0].k == 2 && self.levels[0].low == [vec![1], vec![0]] {
            let x = Fp2 { c0: a[0], c1: a[1], p } * Fp2 { c0: b[0], c1: b[1], p };
            return vec![x.c0, x.c1];
        }
        let k = self.levels[j - 1].k;
        let s = self.sizes[j - 1];
        let mut prod = vec![0u64; (2 * k - 1) * s];
        for u in 0..k {
            let au = &a[u * s..(u + 1) * s];
            if au.iter().all(|&x| x == 0) {
                continue;
            }
            for v in 0..k {
                let bv = &b[v * s..(v + 1) * s];
                if bv.iter().all(|&x| x == 0) {
                    continue;
                }
                let m = self.mul(j - 1, au, bv);
                self.add_assign(&mut prod[(u + v) * s..(u + v + 1) * s], &m);
            }
        }
        let low = &self.levels[j - 1].low;
        for m in (k..2 * k - 1).rev() {
            let t: Vec<u64> = prod[m * s..(m + 1) * s].to_vec();
            if t.iter().all(|&x| x == 0) {
                continue;
            }
            for (i, li) in low.iter().enumerate() {
                if li.iter().all(|&x| x == 0) {
                    continue;
                }
                let r = self.mul(j - 1, &t, li);
                self.sub_assign(&mut prod[(m - k + i) * s..(m - k + i + 1) * s], &r);
            }
        }
        prod.truncate(k * s);
        prod
    }

    fn inv(&self, j: usize, a: &[u64]) -> Option<Vec<u64>> {
        if a.iter().all(|&x| x == 0) {
            return None;
        }
        let p = self.p;
        if j == 0 {
            return Some(vec![pow_mod(a[0], p - 2, p)]);
        }
        let k = self.levels[j - 1].k;
        let s = self.sizes[j - 1];
        // Extended Euclid over the level below on polynomials in z.
        let split = |v: &[u64]| -> Vec<Vec<u64>> { v.chunks(s).map(|c| c.to_vec()).collect() };
        let mut r0: Vec<Vec<u64>> = self.levels[j - 1].low.clone();
        let mut one = vec![0u64; s];
        one[0] = 1;
        r0.push(one.clone());
        let mut r1 = split(a);
        let mut s0: Vec<Vec<u64>> = vec![vec![0; s]];
        let mut s1: Vec<Vec<u64>> = vec![one];
        let trim = |v: &mut Vec<Vec<u64>>| {
            while v.len() > 1 && v.last().unwrap().iter().all(|&x| x == 0) {
                v.pop();
            }
        };
        let is_zero_poly = |v: &Vec<Vec<u64>>| v.iter().all(|c| c.iter().all(|&x| x == 0));
        trim(&mut r1);
        while r1.len() > 1 {
            // (q, r) = divrem(r0, r1)
            let lead_inv = self.inv(j - 1, r1.last().unwrap())?;
            let mut r = r0.clone();
            let mut q = vec![vec![0u64; s]; r0.len().saturating_sub(r1.len()) + 1];
            while r.len() >= r1.len() && !is_zero_poly(&r) {
                let shift = r.len() - r1.len();
                let c = self.mul(j - 1, r.last().unwrap(), &lead_inv);
                for (i, ri) in r1.iter().enumerate() {
                    let t = self.mul(j - 1, &c, ri);
                    self.sub_assign(&mut r[shift + i], &t);
                }
                q[shift] = c;
                r.pop();
                trim(&mut r);
                if r.len() < r1.len() {
                    break;
                }
            }
            trim(&mut r);
            // s_new = s0 - q*s1
            let mut qs = vec![vec![0u64; s]; q.len() + s1.len()];
            for (u, qu) in q.iter().enumerate() {
                for (v, sv) in s1.iter().enumerate() {
                    let t = self.mul(j - 1, qu, sv);
                    self.add_assign(&mut qs[u + v], &t);
                }
            }
            let mut s_new = s0.clone();
            s_new.resize(s_new.len().max(qs.len()), vec![0; s]);
            for (i, t) in qs.iter().enumerate() {
                self.sub_assign(&mut s_new[i], t);
            }
            trim(&mut s_new);
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s_new);
            if is_zero_poly(&r1) {
                return None;
            }
        }
        let c_inv = self.inv(j - 1, &r1[0])?;
        let mut out = vec![0u64; k * s];
        for (i, si) in s1.iter().enumerate().take(k) {
            let t = self.mul(j - 1, si, &c_inv);
            out[i * s..(i + 1) * s].copy_from_slice(&t);
        }
        Some(out)
    }
}

/// Element of a [`Field`] tower.
#[derive(Clone)]
pub struct Ext {
    f: Field,
    c: Vec<u64>,
}

impl Ext {
    pub fn field(&self) -> &Field {
        &self.f
    }

    pub fn raw(&self) -> &[u64] {
        &self.c
    }

    /// Re-express in a larger tower that has this one as prefix.
    pub fn lift(&self, f: &Field) -> Ext {
        debug_assert!(self.f.is_prefix_of(f));
        let mut c = self.c.clone();
        c.resize(f.degree(), 0);
        Ext { f: f.clone(), c }
    }

    /// Re-express in a sub-tower if the element lies in it.
    pub fn lower(&self, f: &Field) -> Option<Ext> {
        let d = f.degree();
        if self.c[d.min(self.c.len())..].iter().any(|&x| x != 0) {
            return None;
        }
        let mut c = self.c.clone();
        c.resize(d, 0);
        Some(Ext { f: f.clone(), c })
    }

    fn align<'a>(&'a self, o: &'a Ext) -> (std::borrow::Cow<'a, Ext>, std::borrow::Cow<'a, Ext>) {
        use std::borrow::Cow;
        if self.c.len() == o.c.len() {
            (Cow::Borrowed(self), Cow::Borrowed(o))
        } else if self.c.len() < o.c.len() {
            (Cow::Owned(self.lift(&o.f)), Cow::Borrowed(o))
        } else {
            (Cow::Borrowed(self), Cow::Owned(o.lift(&self.f)))
        }
    }

    fn top(&self) -> usize {
        self.f.0.levels.len()
    }
}

impl PartialEq for Ext {
    fn eq(&self, o: &Self) -> bool {
        let n = self.c.len().max(o.c.len());
        (0..n).all(|i| self.c.get(i).copied().unwrap_or(0) == o.c.get(i).copied().unwrap_or(0))
    }
}
impl Eq for Ext {}

impl Hash for Ext {
    fn hash<H: Hasher>(&self, h: &mut H) {
        let mut n = self.c.len();
        while n > 0 && self.c[n - 1] == 0 {
            n -= 1;
        }
        self.c[..n].hash(h);
    }
}

impl fmt::Debug for Ext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(x) = self.descend() {
            write!(f, "{x}")
        } else {
            write!(f, "{:?}", self.c)
        }
    }
}

impl Fq for Ext {
    fn zero(&self) -> Self {
        self.f.zero()
    }
    fn one(&self) -> Self {
        self.f.one()
    }
    fn is_zero(&self) -> bool {
        self.c.iter().all(|&x| x == 0)
    }
    fn add(&self, o: &Self) -> Self {
        let (a, b) = self.align(o);
        Ext { f: a.f.clone(), c: a.f.0.add(&a.c, &b.c) }
    }
    fn sub(&self, o: &Self) -> Self {
        let (a, b) = self.align(o);
        let mut c = a.c.clone();
        a.f.0.sub_assign(&mut c, &b.c);
        Ext { f: a.f.clone(), c }
    }
    fn neg(&self) -> Self {
        let p = self.f.p();
        Ext { f: self.f.clone(), c: self.c.iter().map(|&x| (p - x) % p).collect() }
    }
    fn mul(&self, o: &Self) -> Self {
        let (a, b) = self.align(o);
        let c = a.f.0.mul(a.top(), &a.c, &b.c);
        Ext { f: a.f.clone(), c }
    }
    fn inv(&self) -> Option<Self> {
        let c = self.f.0.inv(self.top(), &self.c)?;
        Some(Ext { f: self.f.clone(), c })
    }
    fn from_int(&self, n: i128) -> Self {
        let mut c = vec![0; self.c.len()];
        c[0] = n.rem_euclid(self.f.p() as i128) as u64;
        Ext { f: self.f.clone(), c }
    }
    fn embed(&self, c: Fp2) -> Self {
        self.f.from_fp2(c)
    }
    fn descend(&self) -> Option<Fp2> {
        if self.c.len() > 2 && self.c[2..].iter().any(|&x| x != 0) {
            return None;
        }
        let p = self.f.p();
        Some(Fp2 { c0: self.c[0], c1: self.c.get(1).copied().unwrap_or(0), p })
    }
    fn frobenius(&self) -> Self {
        self.pow_u(self.f.p() as u128)
    }
    fn char_p(&self) -> u64 {
        self.f.p()
    }
    fn degree(&self) -> usize {
        self.c.len()
    }
    fn coeffs(&self) -> Vec<u64> {
        self.c.clone()
    }
    fn from_coeffs_like(&self, c: &[u64]) -> Self {
        self.f.from_coeffs(c)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fp2_level_is_gaussian() {
        let f = Field::fp2(179);
        assert_eq!(f.moduli(), vec![vec![vec![1], vec![0], vec![1]]]);
        let i = f.generator();
        assert_eq!(i.square(), f.from_fp2(Fp2::from_int(-1, 179)));
        assert_eq!(field_extend(&f, 1), f);
    }

    #[test]
    fn quartic_level_irreducible_exhaustive() {
        let f2 = Field::fp2(179);
        let f4 = field_extend(&f2, 2);
        assert_eq!(f4.degree(), 4);
        let m = &f4.moduli()[1];
        let c0 = Fp2 { c0: m[0][0], c1: m[0][1], p: 179 };
        let c1 = Fp2 { c0: m[1][0], c1: m[1][1], p: 179 };
        // No root of z² + c1 z + c0 in F_{179²}.
        for a in 0..179 {
            for b in 0..179 {
                let z = Fp2::new(a, b, 179);
                assert!(!(z * z + c1 * z + c0).is_zero());
            }
        }
        let g = f4.generator();
        let lhs = g.square().add(&g.mul(&f4.from_fp2(c1))).add(&f4.from_fp2(c0));
        assert!(lhs.is_zero());
    }

    #[test]
    fn inverse_and_frobenius() {
        let f = field_extend(&field_extend(&Field::fp2(179), 3), 2);
        assert_eq!(f.degree(), 12);
        let mut rng = rand::rngs::mock::StepRng::new(17, 1_000_003);
        for _ in 0..20 {
            let a = f.one().random_like(&mut rng);
            if a.is_zero() {
                continue;
            }
            assert!(a.mul(&a.inv().unwrap()).is_one());
            let b = f.one().random_like(&mut rng);
            assert_eq!(a.mul(&b).frobenius(), a.frobenius().mul(&b.frobenius()));
        }
        let x = f.from_fp2(Fp2::new(3, 5, 179));
        assert_eq!(x.frobenius().descend(), Some(Fp2::new(3, -5, 179)));
    }

    #[test]
    fn deterministic_construction() {
        let a = field_extend(&Field::fp2(179), 3).moduli();
        let b = field_extend(&Field::fp2(179), 3).moduli();
        assert_eq!(a, b);
    }
}
