// SPDX-License-Identifier: MIT OR Apache-2.0

//! Square roots, polynomial root finding, irreducibility and squarefree
//! decomposition over any [`Fq`] field.

use super::{Fq, Poly};
use num_bigint::BigUint;
use num_traits::One;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Square root with the lexicographically least coefficient vector, or
/// `None` for a non-residue.
pub fn fq_sqrt<F: Fq>(a: &F) -> Option<F> {
    if a.is_zero() {
        return Some(a.clone());
    }
    if a.quadratic_character() != 1 {
        return None;
    }
    let q = a.order();
    let qm1 = &q - BigUint::one();
    let r = if q.bit(0) && q.bit(1) {
        // q ≡ 3 mod 4
        a.pow_big(&((&q + BigUint::one()) >> 2))
    } else {
        let s = qm1.trailing_zeros().unwrap();
        let m = &qm1 >> s;
        // Random search: small elements often lie in a subfield of even index.
        let mut rng = ChaCha8Rng::seed_from_u64(0x2a);
        let z = std::iter::repeat_with(|| a.random_like(&mut rng))
            .find(|e| e.quadratic_character() == -1)
            .unwrap();
        let mut c = z.pow_big(&m);
        let mut t = a.pow_big(&m);
        let mut r = a.pow_big(&((&m + BigUint::one()) >> 1));
        let mut mm = s;
        while !t.is_one() {
            let mut i = 0;
            let mut tt = t.clone();
            while !tt.is_one() {
                tt = tt.square();
                i += 1;
            }
            let mut b = c.clone();
            for _ in 0..(mm - i - 1) {
                b = b.square();
            }
            mm = i;
            c = b.square();
            t = t.mul(&c);
            r = r.mul(&b);
        }
        r
    };
    debug_assert!(r.square() == *a);
    let n = r.neg();
    Some(if n.lex_cmp(&r).is_lt() { n } else { r })
}

/// Distinct roots of `f` in its coefficient field, in lexicographic order.
pub fn roots<F: Fq>(f: &Poly<F>) -> Vec<F> {
    if f.degree().unwrap_or(0) == 0 {
        return Vec::new();
    }
    let t = f.template().clone();
    let f = f.monic();
    let q = t.order();
    let x = Poly::x(&t);
    let xq = x.pow_mod(&q, &f);
    let g = xq.sub(&x).gcd(&f);
    let mut out = Vec::new();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    split_linear(&g, &q, &mut rng, &mut out);
    out.sort_by(|a, b| a.lex_cmp(b));
    out
}

fn split_linear<F: Fq>(g: &Poly<F>, q: &BigUint, rng: &mut ChaCha8Rng, out: &mut Vec<F>) {
    let d = match g.degree() {
        None | Some(0) => return,
        Some(d) => d,
    };
    let t = g.template().clone();
    if d == 1 {
        out.push(g.coeff(0).neg().mul(&g.lead().inv().unwrap()));
        return;
    }
    let e = (q - BigUint::one()) >> 1;
    loop {
        let delta = t.random_like(rng);
        let h = Poly::new(vec![delta, t.one()], t.zero());
        let s = h.pow_mod(&e, g).sub(&Poly::one(&t));
        let a = s.gcd(g);
        let da = a.degree().unwrap_or(0);
        if da > 0 && da < d {
            let b = g.div_exact(&a).unwrap();
            split_linear(&a, q, rng, out);
            split_linear(&b, q, rng, out);
            return;
        }
    }
}

/// Ben-Or's irreducibility test: f is irreducible iff it shares no factor
/// with x^{q^k} − x for k ≤ deg f / 2. Exits at the least factor degree.
pub fn is_irreducible<F: Fq>(f: &Poly<F>) -> bool {
    let n = match f.degree() {
        None | Some(0) => return false,
        Some(n) => n,
    };
    if n == 1 {
        return true;
    }
    let t = f.template().clone();
    let f = f.monic();
    let q = t.order();
    let x = Poly::x(&t).rem(&f);
    let mut h = x.clone();
    for _ in 1..=n / 2 {
        h = h.pow_mod(&q, &f);
        if !h.sub(&x).gcd(&f).is_one() {
            return false;
        }
    }
    true
}

/// Squarefree factors with exact multiplicities, for monic `f`. Every
/// irreducible factor of `f` lies in exactly one returned factor.
pub fn squarefree_decomposition<F: Fq>(f: &Poly<F>) -> Vec<(Poly<F>, usize)> {
    let f = f.monic();
    let mut out = Vec::new();
    if f.degree().unwrap_or(0) == 0 {
        return out;
    }
    let t = f.template().clone();
    let p = t.char_p() as usize;
    let df = f.derivative();
    let mut c = f.gcd(&df);
    let mut w = f.div_exact(&c).unwrap();
    let mut i = 1;
    while !w.is_one() {
        let y = w.gcd(&c);
        let fac = w.div_exact(&y).unwrap();
        if !fac.is_one() {
            out.push((fac, i));
        }
        c = c.div_exact(&y).unwrap();
        w = y;
        i += 1;
    }
    if !c.is_one() {
        let r = pth_root(&c);
        for (g, m) in squarefree_decomposition(&r) {
            out.push((g, m * p));
        }
    }
    out
}

/// For c(x) = d(x^p), return d^{1/p} coefficientwise so the result r has r^p = c.
fn pth_root<F: Fq>(c: &Poly<F>) -> Poly<F> {
    let t = c.template().clone();
    let p = t.char_p() as usize;
    let e = BigUint::from(t.char_p()).pow(t.degree() as u32 - 1);
    let v: Vec<F> = c
        .coeffs()
        .iter()
        .step_by(p)
        .map(|a| a.pow_big(&e))
        .collect();
    debug_assert!(c.coeffs().iter().enumerate().all(|(i, a)| i % p == 0 || a.is_zero()));
    Poly::new(v, t.zero())
}

/// Monic n-th root of a monic polynomial, or `None` if it is not an n-th power.
pub fn poly_nth_root<F: Fq>(f: &Poly<F>, n: usize) -> Option<Poly<F>> {
    assert!(n >= 1);
    if !f.is_monic() {
        return None;
    }
    if n == 1 {
        return Some(f.clone());
    }
    let t = f.template().clone();
    let mut r = Poly::one(&t);
    for (g, m) in squarefree_decomposition(f) {
        if m % n != 0 {
            return None;
        }
        r = r.mul(&g.pow((m / n) as u64));
    }
    (r.pow(n as u64) == *f).then_some(r)
}

/// Degrees of the irreducible factors of a squarefree monic `f`, with
/// multiplicity, by distinct-degree factorization.
pub fn factor_degrees<F: Fq>(f: &Poly<F>) -> Vec<usize> {
    let t = f.template().clone();
    let q = t.order();
    let x = Poly::x(&t);
    let mut rest = f.monic();
    let mut h = x.clone();
    let mut out = Vec::new();
    let mut d = 0;
    while rest.degree().unwrap_or(0) > 0 {
        d += 1;
        if 2 * d > rest.deg() {
            out.push(rest.deg());
            break;
        }
        h = h.pow_mod(&q, &rest);
        let g = h.sub(&x).gcd(&rest);
        if !g.is_one() {
            for _ in 0..g.deg() / d {
                out.push(d);
            }
            rest = rest.div_exact(&g).unwrap();
            h = h.rem(&rest);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ff_poly::Fp2;

    fn p(c: &[i128]) -> Poly<Fp2> {
        Poly::new(c.iter().map(|&x| Fp2::from_int(x, 179)).collect(), Fp2::zero_p(179))
    }

    #[test]
    fn sqrt_small_cases() {
        let one = Fp2::one_p(179);
        assert_eq!(fq_sqrt(&one), Some(one));
        let r = fq_sqrt(&Fp2::from_int(188, 179)).unwrap();
        assert_eq!(r, Fp2::from_int(3, 179));
        // −1 is a square in F_{p²}
        assert_eq!(fq_sqrt(&Fp2::from_int(-1, 179)).unwrap().square(), Fp2::from_int(-1, 179));
    }

    #[test]
    fn cubic_roots_1728() {
        let r = roots(&p(&[0, -1, 0, 1]));
        assert_eq!(r, vec![Fp2::from_int(0, 179), Fp2::from_int(1, 179), Fp2::from_int(178, 179)]);
    }

    #[test]
    fn nth_root_examples() {
        let x9 = Poly::monomial(Fp2::one_p(179), 9);
        assert_eq!(poly_nth_root(&x9, 9), Some(Poly::x(&Fp2::one_p(179))));
        let big = p(&[178, 0, 9, 0, 143, 0, 84, 0, 53, 0, 126, 0, 95, 0, 36, 0, 170, 0, 1]);
        assert_eq!(poly_nth_root(&big, 9), Some(p(&[178, 0, 1])));
        assert_eq!(poly_nth_root(&p(&[1, 1, 1]), 2), None);
    }

    #[test]
    fn nth_root_multiple_of_p() {
        // Exponent divisible by the characteristic exercises the p-th root branch.
        let g = p(&[5, 3, 1]);
        assert_eq!(poly_nth_root(&g.pow(179 * 2), 2 * 179), Some(g));
    }

    #[test]
    fn irreducibility() {
        assert!(!is_irreducible(&p(&[1, 0, 1]).map(&Fp2::zero_p(179), |c| *c)));
        assert!(!is_irreducible(&p(&[0, -1, 0, 1])));
    }
}
