// SPDX-License-Identifier: MIT OR Apache-2.0

use super::{Fq, Poly};
use crate::error::{Error, Result};
use std::fmt;

/// Reduced quotient of polynomials with monic denominator.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatFunc<F: Fq> {
    num: Poly<F>,
    den: Poly<F>,
}

impl<F: Fq> RatFunc<F> {
    /// Reduce num/den to lowest terms with a monic denominator.
    pub fn reduce(num: Poly<F>, den: Poly<F>) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let g = num.gcd(&den);
        let (mut n, mut d) = if g.is_one() || g.is_zero() {
            (num, den)
        } else {
            (num.div_exact(&g).unwrap(), den.div_exact(&g).unwrap())
        };
        let l = d.lead();
        if !l.is_one() {
            let li = l.inv().unwrap();
            n = n.scale(&li);
            d = d.scale(&li);
        }
        Ok(RatFunc { num: n, den: d })
    }

    /// Build without reducing; the caller guarantees the invariants.
    pub fn from_parts_unchecked(num: Poly<F>, den: Poly<F>) -> Self {
        debug_assert!(den.is_monic());
        RatFunc { num, den }
    }

    pub fn from_poly(p: Poly<F>) -> Self {
        let t = p.template().clone();
        RatFunc { num: p, den: Poly::one(&t) }
    }

    pub fn constant(c: F) -> Self {
        RatFunc::from_poly(Poly::constant(c))
    }

    pub fn x(t: &F) -> Self {
        RatFunc::from_poly(Poly::x(t))
    }

    pub fn num(&self) -> &Poly<F> {
        &self.num
    }

    pub fn den(&self) -> &Poly<F> {
        &self.den
    }

    pub fn template(&self) -> &F {
        self.den.template()
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// max(deg num, deg den).
    pub fn degree(&self) -> usize {
        self.num.deg().max(self.den.deg())
    }

    pub fn add(&self, o: &Self) -> Self {
        if self.den == o.den {
            return RatFunc::reduce(self.num.add(&o.num), self.den.clone()).unwrap();
        }
        let g = self.den.gcd(&o.den);
        let a = o.den.div_exact(&g).unwrap();
        let b = self.den.div_exact(&g).unwrap();
        let n = self.num.mul(&a).add(&o.num.mul(&b));
        RatFunc::reduce(n, self.den.mul(&a)).unwrap()
    }

    pub fn neg(&self) -> Self {
        RatFunc { num: self.num.neg(), den: self.den.clone() }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Self) -> Self {
        // Cross-cancel first to keep intermediate degrees low.
        let g1 = self.num.gcd(&o.den);
        let g2 = o.num.gcd(&self.den);
        let cut = |p: &Poly<F>, g: &Poly<F>| if g.is_zero() || g.is_one() { p.clone() } else { p.div_exact(g).unwrap() };
        let n = cut(&self.num, &g1).mul(&cut(&o.num, &g2));
        let d = cut(&self.den, &g2).mul(&cut(&o.den, &g1));
        RatFunc::reduce(n, d).unwrap()
    }

    pub fn scale(&self, s: &F) -> Self {
        RatFunc { num: self.num.scale(s), den: self.den.clone() }
    }

    pub fn inv(&self) -> Result<Self> {
        RatFunc::reduce(self.den.clone(), self.num.clone())
    }

    pub fn div(&self, o: &Self) -> Result<Self> {
        Ok(self.mul(&o.inv()?))
    }

    pub fn pow(&self, e: u32) -> Self {
        RatFunc { num: self.num.pow(e as u64), den: self.den.pow(e as u64) }
    }

    /// Value at x, or `None` at a pole.
    pub fn eval(&self, x: &F) -> Option<F> {
        let d = self.den.eval(x);
        d.inv().map(|di| self.num.eval(x).mul(&di))
    }

    pub fn eval_in<G: Fq>(&self, x: &G, embed: impl Fn(&F) -> G + Copy) -> Option<G> {
        let d = self.den.eval_in(x, embed);
        d.inv().map(|di| self.num.eval_in(x, embed).mul(&di))
    }

    /// self(g(x)).
    pub fn compose(&self, g: &Self) -> Self {
        let dn = self.num.deg();
        let dd = self.den.deg();
        let m = dn.max(dd);
        let a = &g.num;
        let b = &g.den;
        let mut bp = vec![Poly::one(self.template())];
        for i in 1..=m {
            bp.push(bp[i - 1].mul(b));
        }
        // Homogenize: P(a/b)·b^m.
        let hom = |p: &Poly<F>| {
            let mut acc = Poly::zero(self.template());
            let d = p.deg();
            for (i, c) in p.coeffs().iter().enumerate().rev() {
                acc = acc.mul(a);
                if !c.is_zero() {
                    acc = acc.add(&bp[d - i].scale(c));
                }
            }
            if p.is_zero() {
                acc
            } else {
                acc.mul(&bp[m - d])
            }
        };
        RatFunc::reduce(hom(&self.num), hom(&self.den)).unwrap()
    }

    pub fn derivative(&self) -> Self {
        let n = self.num.derivative().mul(&self.den).sub(&self.num.mul(&self.den.derivative()));
        RatFunc::reduce(n, self.den.square()).unwrap()
    }

    pub fn frobenius(&self) -> Self {
        RatFunc { num: self.num.frobenius(), den: self.den.frobenius() }
    }

    pub fn map<G: Fq>(&self, zero: &G, f: impl Fn(&F) -> G + Copy) -> RatFunc<G> {
        RatFunc::reduce(self.num.map(zero, f), self.den.map(zero, f)).unwrap()
    }
}

impl<F: Fq> fmt::Debug for RatFunc<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({:?}) / ({:?})", self.num, self.den)
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
    fn reduce_cancels() {
        let r = RatFunc::reduce(p(&[-1, 0, 1]), p(&[-1, 1])).unwrap();
        assert_eq!(r.num(), &p(&[1, 1]));
        assert!(r.den().is_one());
        assert!(RatFunc::reduce(p(&[1]), p(&[])).is_err());
    }

    #[test]
    fn compose_matches_eval() {
        let f = RatFunc::reduce(p(&[3, 0, 1]), p(&[1, 2])).unwrap();
        let g = RatFunc::reduce(p(&[5, 1, 0, 4]), p(&[0, 0, 1])).unwrap();
        let h = f.compose(&g);
        for x in 1..30 {
            let xx = Fp2::new(x, 2 * x, 179);
            if let (Some(gx), Some(hx)) = (g.eval(&xx), h.eval(&xx)) {
                if let Some(fgx) = f.eval(&gx) {
                    assert_eq!(fgx, hx);
                }
            }
        }
    }
}
