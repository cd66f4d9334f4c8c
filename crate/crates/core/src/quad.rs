// SPDX-License-Identifier: MIT OR Apache-2.0

//! Imaginary quadratic orders: discriminants, Kronecker symbols, class
//! groups by reduced binary quadratic forms, prime ideals above ℓ and
//! Cornacchia's algorithm.

use crate::arith::{factor, gcd_i, is_square, isqrt, pow_mod, sqrt_mod_all};
use crate::error::{Error, Result};
use std::collections::HashMap;

/// Order of discriminant `disc = conductor² · fundamental_disc`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct QuadOrder {
    pub disc: i128,
    pub fundamental_disc: i128,
    pub conductor: i128,
}

pub fn is_discriminant(d: i128) -> bool {
    d.rem_euclid(4) == 0 || d.rem_euclid(4) == 1
}

impl QuadOrder {
    pub fn new(disc: i128) -> Result<QuadOrder> {
        if disc >= 0 || !is_discriminant(disc) {
            return Err(Error::Invariant(format!("{disc} is not a negative discriminant")));
        }
        let mut f = 1i128;
        let mut dk = disc;
        for (q, e) in factor(disc.unsigned_abs()) {
            let q = q as i128;
            for _ in 0..e / 2 {
                let cand = dk / (q * q);
                if is_discriminant(cand) {
                    dk = cand;
                    f *= q;
                }
            }
        }
        Ok(QuadOrder { disc, fundamental_disc: dk, conductor: f })
    }

    pub fn maximal(&self) -> QuadOrder {
        QuadOrder::new(self.fundamental_disc).unwrap()
    }

    /// Trace and norm of ω = (1+√Δ)/2 (Δ ≡ 1 mod 4) or √Δ/2 (Δ ≡ 0 mod 4).
    pub fn omega(&self) -> (i128, i128) {
        if self.disc.rem_euclid(4) == 1 {
            (1, (1 - self.disc) / 4)
        } else {
            (0, -self.disc / 4)
        }
    }

    pub fn class_number(&self) -> usize {
        reduced_forms(self.disc).len()
    }
}

/// Largest divisor of Δ that is a discriminant with conductor prime to ℓ.
pub fn ell_fundamental_part(disc: i128, ell: u64) -> i128 {
    let o = QuadOrder::new(disc).expect("valid discriminant");
    let mut f = o.conductor;
    while f % ell as i128 == 0 {
        f /= ell as i128;
    }
    o.fundamental_disc * f * f
}

/// Kronecker symbol (a/n) for n ≥ 1.
pub fn kronecker(a: i128, n: u64) -> i8 {
    let mut result = 1i8;
    let mut n = n as i128;
    let mut a = a;
    if n == 0 {
        return if a.abs() == 1 { 1 } else { 0 };
    }
    let mut v = 0;
    while n % 2 == 0 {
        n /= 2;
        v += 1;
    }
    if v > 0 {
        if a % 2 == 0 {
            return 0;
        }
        if v % 2 == 1 && matches!(a.rem_euclid(8), 3 | 5) {
            result = -result;
        }
    }
    // Jacobi (a/n) for odd n.
    a = a.rem_euclid(n);
    while a != 0 {
        while a % 2 == 0 {
            a /= 2;
            if matches!(n % 8, 3 | 5) {
                result = -result;
            }
        }
        std::mem::swap(&mut a, &mut n);
        if a % 4 == 3 && n % 4 == 3 {
            result = -result;
        }
        a %= n;
    }
    if n == 1 {
        result
    } else {
        0
    }
}

/// Primitive positive definite binary quadratic form ax² + bxy + cy².
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Form {
    pub a: i128,
    pub b: i128,
    pub c: i128,
}

impl Form {
    pub fn disc(&self) -> i128 {
        self.b * self.b - 4 * self.a * self.c
    }

    pub fn identity(disc: i128) -> Form {
        let b = disc.rem_euclid(2);
        Form { a: 1, b, c: (b * b - disc) / 4 }
    }

    pub fn is_reduced(&self) -> bool {
        self.b.abs() <= self.a && self.a <= self.c && !((self.b.abs() == self.a || self.a == self.c) && self.b < 0)
    }

    pub fn reduce(self) -> Form {
        let Form { mut a, mut b, mut c } = self;
        loop {
            if b > a || b <= -a {
                // Normalize b into (−a, a].
                let k = (a - b).div_euclid(2 * a);
                let nb = b + 2 * k * a;
                c = (nb * nb - (b * b - 4 * a * c)) / (4 * a);
                b = nb;
            }
            if a > c {
                std::mem::swap(&mut a, &mut c);
                b = -b;
                continue;
            }
            if a == c && b < 0 {
                b = -b;
            }
            break;
        }
        Form { a, b, c }
    }

    pub fn inverse(&self) -> Form {
        Form { a: self.a, b: -self.b, c: self.c }.reduce()
    }

    /// Composition of forms of equal discriminant, reduced.
    pub fn compose(&self, o: &Form) -> Form {
        let (f1, f2) = if self.a > o.a { (o, self) } else { (self, o) };
        let disc = f1.disc();
        let s = (f1.b + f2.b) / 2;
        let n = f2.b - s;
        let (d, y1) = if f2.a % f1.a == 0 {
            (f1.a, 0)
        } else {
            let (d, u, _) = ext_gcd(f2.a, f1.a);
            (d, u)
        };
        let (d1, x2, y2) = if s % d == 0 {
            (d, 0, -1)
        } else {
            let (d1, x2, y2) = ext_gcd(s, d);
            (d1, x2, -y2)
        };
        let v1 = f1.a / d1;
        let v2 = f2.a / d1;
        let r = (y1 * y2 * n - x2 * f2.c).rem_euclid(v1);
        let a3 = v1 * v2;
        let b3 = f2.b + 2 * v2 * r;
        let c3 = (b3 * b3 - disc) / (4 * a3);
        Form { a: a3, b: b3, c: c3 }.reduce()
    }

    pub fn pow(&self, mut e: u64) -> Form {
        let mut r = Form::identity(self.disc());
        let mut b = *self;
        while e > 0 {
            if e & 1 == 1 {
                r = r.compose(&b);
            }
            b = b.compose(&b);
            e >>= 1;
        }
        r
    }

    pub fn order(&self) -> u64 {
        let id = Form::identity(self.disc());
        let mut f = self.reduce();
        let mut k = 1;
        while f != id {
            f = f.compose(self);
            k += 1;
        }
        k
    }
}

fn ext_gcd(a: i128, b: i128) -> (i128, i128, i128) {
    let (mut r0, mut r1) = (a, b);
    let (mut s0, mut s1) = (1i128, 0i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0.div_euclid(r1);
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    if r0 < 0 {
        (-r0, -s0, -t0)
    } else {
        (r0, s0, t0)
    }
}

/// All reduced primitive forms of discriminant Δ < 0, sorted.
pub fn reduced_forms(disc: i128) -> Vec<Form> {
    let mut out = Vec::new();
    let amax = isqrt(disc.unsigned_abs() / 3) as i128;
    for a in 1..=amax {
        for b in -a + 1..=a {
            if (b - disc).rem_euclid(2) != 0 {
                continue;
            }
            let num = b * b - disc;
            if num % (4 * a) != 0 {
                continue;
            }
            let c = num / (4 * a);
            let f = Form { a, b, c };
            if c >= a && f.is_reduced() && gcd_i(gcd_i(a, b), c) == 1 {
                out.push(f);
            }
        }
    }
    out.sort();
    out
}

/// Class group as the list of reduced forms with a composition table.
#[derive(Clone, Debug)]
pub struct ClassGroup {
    pub disc: i128,
    pub forms: Vec<Form>,
    index: HashMap<Form, usize>,
}

impl ClassGroup {
    pub fn h(&self) -> usize {
        self.forms.len()
    }

    pub fn identity(&self) -> Form {
        Form::identity(self.disc)
    }

    pub fn compose(&self, a: &Form, b: &Form) -> Form {
        a.compose(b)
    }

    pub fn index_of(&self, f: &Form) -> Option<usize> {
        self.index.get(&f.reduce()).copied()
    }

    pub fn order_of(&self, f: &Form) -> u64 {
        f.order()
    }

    /// table[i][j] = index of forms[i]·forms[j].
    pub fn table(&self) -> Vec<Vec<usize>> {
        self.forms
            .iter()
            .map(|a| self.forms.iter().map(|b| self.index[&a.compose(b)]).collect())
            .collect()
    }
}

pub const CLASS_GROUP_BUDGET: i128 = 100_000_000;

pub fn class_group(o: &QuadOrder) -> Result<ClassGroup> {
    if o.disc.abs() > CLASS_GROUP_BUDGET {
        return Err(Error::Unsupported("discriminant beyond enumeration budget".into()));
    }
    let forms = reduced_forms(o.disc);
    let index = forms.iter().enumerate().map(|(i, f)| (*f, i)).collect();
    Ok(ClassGroup { disc: o.disc, forms, index })
}

/// Σ h(O′) over the orders O ⊆ O′ ⊆ O_K.
pub fn class_number_sum(o: &QuadOrder) -> usize {
    let f = o.conductor;
    (1..=f)
        .filter(|g| f % g == 0)
        .map(|g| reduced_forms(o.fundamental_disc * g * g).len())
        .sum()
}

/// Some (y, z) with y² + d·z² = m, y, z ≥ 0, or `None`. Primitive
/// solutions come from Cornacchia's algorithm on every square root of −d;
/// imprimitive ones from smaller m/g².
pub fn cornacchia(d: u64, m: u64) -> Option<(u64, u64)> {
    if m == 0 {
        return Some((0, 0));
    }
    // Try g = 1 first so primitive solutions win.
    let mut g = 1u64;
    while g * g <= m {
        if m.is_multiple_of(g * g) {
            if let Some((y, z)) = cornacchia_primitive(d, m / (g * g)) {
                return Some((y * g, z * g));
            }
        }
        g += 1;
    }
    None
}

fn cornacchia_primitive(d: u64, m: u64) -> Option<(u64, u64)> {
    if m == 1 {
        return Some((1, 0));
    }
    if d == m {
        return Some((0, 1));
    }
    let mut best: Option<(u64, u64)> = None;
    for r0 in sqrt_mod_all(-(d as i128), m as u128) {
        // Take roots in (m/2, m] as well as their negatives implicitly.
        let mut a = m as u128;
        let mut b = r0;
        if b == 0 {
            continue;
        }
        let lim = isqrt(m as u128);
        while b > lim {
            let t = a % b;
            a = b;
            b = t;
        }
        let rest = m as u128 - b * b;
        if rest.is_multiple_of(d as u128) {
            if let Some(z) = is_square(rest / d as u128) {
                if crate::arith::gcd(b, z) == 1 {
                    let cand = (b as u64, z as u64);
                    best = Some(match best {
                        None => cand,
                        Some(o) => o.min(cand),
                    });
                }
            }
        }
    }
    best
}

/// The prime 𝔩 = (ℓ, a + b·α) above ℓ, for α with trace t and norm n.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct IdealAboveEll {
    pub order: QuadOrder,
    pub ell: u64,
    pub a: i128,
    pub b: i128,
    /// Root λ of x² − tx + n mod ℓ, with τ = α − λ.
    pub lambda: u64,
    pub t: i128,
    pub n: i128,
}

impl IdealAboveEll {
    /// The primitive form ℓx² + (2λ − t)xy + cy² of this ideal's class.
    pub fn form(&self) -> Form {
        let b = 2 * self.lambda as i128 - self.t;
        Form { a: self.ell as i128, b, c: (b * b - self.order.disc) / (4 * self.ell as i128) }
    }

    pub fn conjugate(&self) -> IdealAboveEll {
        let lam = (self.t - self.lambda as i128).rem_euclid(self.ell as i128) as u64;
        IdealAboveEll { lambda: lam, a: -(lam as i128), ..*self }
    }

    /// Order of [𝔩] in Cl(O).
    pub fn class_order(&self) -> u64 {
        self.form().order()
    }
}

/// Roots of x² − tx + n modulo a prime ℓ, ascending.
pub fn roots_mod_ell(t: i128, n: i128, ell: u64) -> Vec<u64> {
    let l = ell as i128;
    if ell < 5000 {
        return (0..ell).filter(|&x| {
            let x = x as i128;
            (x * x - t * x + n).rem_euclid(l) == 0
        }).collect();
    }
    let disc = (t * t - 4 * n).rem_euclid(l) as u64;
    let r = match crate::arith::sqrt_mod_prime(disc, ell) {
        Some(r) => r,
        None => return Vec::new(),
    };
    let inv2 = pow_mod(2, ell - 2, ell) as i128;
    let mut v: Vec<u64> = [r as i128, -(r as i128)]
        .iter()
        .map(|s| ((t + s).rem_euclid(l) * inv2).rem_euclid(l) as u64)
        .collect();
    v.sort_unstable();
    v.dedup();
    v
}

/// Prime above ℓ in Z[α] for α of trace t and norm n, using the least root.
pub fn prime_above_elem(t: i128, n: i128, ell: u64) -> Option<IdealAboveEll> {
    let order = QuadOrder::new(t * t - 4 * n).ok()?;
    let lam = *roots_mod_ell(t, n, ell).first()?;
    Some(IdealAboveEll { order, ell, a: -(lam as i128), b: 1, lambda: lam, t, n })
}

/// Prime above ℓ in O, expressed on ω.
pub fn prime_above(o: &QuadOrder, ell: u64) -> Option<IdealAboveEll> {
    if o.conductor % ell as i128 == 0 {
        return None;
    }
    let (t, n) = o.omega();
    prime_above_elem(t, n, ell).map(|mut i| {
        i.order = *o;
        i
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fundamental_parts() {
        assert_eq!(ell_fundamental_part(-752, 2), -47);
        assert_eq!(ell_fundamental_part(-188, 2), -47);
        assert_eq!(ell_fundamental_part(-32, 2), -8);
        assert_eq!(ell_fundamental_part(-47 * 9, 2), -47 * 9);
        let o = QuadOrder::new(-188).unwrap();
        assert_eq!((o.fundamental_disc, o.conductor), (-47, 2));
    }

    #[test]
    fn kronecker_small() {
        assert_eq!(kronecker(-47, 2), 1);
        assert_eq!(kronecker(-47, 13), -1);
        assert_eq!(kronecker(-44, 2), 0);
        assert_eq!(kronecker(-3, 7), 1);
    }

    #[test]
    fn class_numbers() {
        assert_eq!(QuadOrder::new(-47).unwrap().class_number(), 5);
        assert_eq!(QuadOrder::new(-3).unwrap().class_number(), 1);
        assert_eq!(QuadOrder::new(-188).unwrap().class_number(), 5);
        assert_eq!(class_number_sum(&QuadOrder::new(-188).unwrap()), 10);
        let l = prime_above(&QuadOrder::new(-47).unwrap(), 2).unwrap();
        assert_eq!((l.a, l.b), (0, 1));
        assert_eq!(l.class_order(), 5);
    }

    #[test]
    fn cornacchia_small() {
        assert_eq!(cornacchia(1, 1), Some((1, 0)));
        assert_eq!(cornacchia(1, 2), Some((1, 1)));
        let (y, z) = cornacchia(1, 13).unwrap();
        assert!(matches!((y, z), (2, 3) | (3, 2)));
        assert_eq!(cornacchia(1, 3), None);
    }
}
