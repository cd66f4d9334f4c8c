// SPDX-License-Identifier: MIT OR Apache-2.0

//! Finite-field tower arithmetic and univariate polynomial / rational-function
//! arithmetic over it.
//!
//! Two element types implement [`Fq`]: the copyable [`Fp2`] used for every
//! curve and isogeny coefficient, and [`Ext`], an element of a tower
//! F_p ⊂ F_{p²} ⊂ … used for torsion points. Elements of F_{p²} embed into
//! any tower by zero-padding.

mod fp2;
mod poly;
mod ratfunc;
mod roots;
mod tower;

pub use fp2::Fp2;
pub use poly::Poly;
pub use ratfunc::RatFunc;
pub use roots::{factor_degrees, fq_sqrt, is_irreducible, poly_nth_root, roots, squarefree_decomposition};
pub use tower::{field_extend, Ext, Field};

use num_bigint::BigUint;
use num_traits::One;
use rand::Rng;
use std::fmt::Debug;
use std::hash::Hash;

/// Operations shared by [`Fp2`] and tower elements.
pub trait Fq: Clone + PartialEq + Eq + Hash + Debug + Send + Sync + 'static {
    fn zero(&self) -> Self;
    fn one(&self) -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn neg(&self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn inv(&self) -> Option<Self>;
    fn from_int(&self, n: i128) -> Self;
    /// Embed an F_{p²} element into the field of `self`.
    fn embed(&self, c: Fp2) -> Self;
    /// Return the element as an F_{p²} value if it lies there.
    fn descend(&self) -> Option<Fp2>;
    /// x ↦ x^p.
    fn frobenius(&self) -> Self;
    fn char_p(&self) -> u64;
    /// Degree over F_p.
    fn degree(&self) -> usize;
    /// Flat coordinates over F_p in the tower basis, least significant first.
    fn coeffs(&self) -> Vec<u64>;
    fn from_coeffs_like(&self, c: &[u64]) -> Self;

    fn is_one(&self) -> bool {
        *self == self.one()
    }
    fn square(&self) -> Self {
        self.mul(self)
    }
    fn scale_int(&self, n: i128) -> Self {
        self.mul(&self.from_int(n))
    }
    fn order(&self) -> BigUint {
        BigUint::from(self.char_p()).pow(self.degree() as u32)
    }
    fn pow_big(&self, e: &BigUint) -> Self {
        let mut r = self.one();
        for i in (0..e.bits()).rev() {
            r = r.square();
            if e.bit(i) {
                r = r.mul(self);
            }
        }
        r
    }
    fn pow_u(&self, e: u128) -> Self {
        self.pow_big(&BigUint::from(e))
    }
    /// Legendre-style character: 1 for nonzero squares, −1 otherwise, 0 at 0.
    fn quadratic_character(&self) -> i8 {
        if self.is_zero() {
            return 0;
        }
        let e = (self.order() - BigUint::one()) >> 1;
        if self.pow_big(&e).is_one() {
            1
        } else {
            -1
        }
    }
    fn random_like<R: Rng + ?Sized>(&self, rng: &mut R) -> Self {
        let p = self.char_p();
        let c: Vec<u64> = (0..self.degree()).map(|_| rng.gen_range(0..p)).collect();
        self.from_coeffs_like(&c)
    }
    /// Lexicographic comparison of coefficient vectors (least significant first).
    fn lex_cmp(&self, o: &Self) -> std::cmp::Ordering {
        self.coeffs().cmp(&o.coeffs())
    }
}

/// Elements in lexicographic order of their coefficient vectors, starting at 1.
pub fn elements_lex<F: Fq>(template: &F) -> impl Iterator<Item = F> + '_ {
    let p = template.char_p() as u128;
    let d = template.degree();
    (1u128..).map_while(move |n| {
        let mut c = vec![0u64; d];
        let mut m = n;
        for slot in c.iter_mut() {
            *slot = (m % p) as u64;
            m /= p;
        }
        (m == 0).then(|| template.from_coeffs_like(&c))
    })
}

pub fn enumerate_elements<F: Fq>(template: &F, count: usize) -> Vec<F> {
    elements_lex(template).take(count).collect()
}
