// SPDX-License-Identifier: MIT OR Apache-2.0

//! Division of a rational-map isogeny by [ℓ], following McMurdy.
//!
//! For P(x) = ∏ (x − r_j) the transform P|X₁ = ∏ (x − X₁(r_j)) is obtained
//! without factoring P: the product N_P(x) = ∏_{S ∈ E[ℓ]} P(x(·+S)) equals
//! (P|X₁)(X₁(x)), and its coefficients in powers of X₁ are read off by
//! repeated evaluation at a zero ζ of X₁. For odd ℓ the pair S, −S is handled
//! together so that only y² and y_S² occur, both replaced by W₁.

use crate::arith::gcd;
use crate::ec::Curve;
use crate::error::{Error, Result};
use crate::ff_poly::{factor_degrees, poly_nth_root, roots, squarefree_decomposition, Ext, Field, Fp2, Fq, Poly, RatFunc};
use crate::isogeny::Isogeny;
use rayon::prelude::*;

/// Input of a division: ([ℓ]φ)(x, y) = (F(x), G(x)·y) with F split as
/// c_F·P / (ψ²·Q) (odd ℓ) or c_F·P / (W₁·Q) (ℓ = 2).
#[derive(Clone, Debug)]
pub struct DivisionProblem {
    pub e1: Curve,
    pub e2: Curve,
    pub f: RatFunc<Fp2>,
    pub g: RatFunc<Fp2>,
    pub ell: u64,
    pub c_f: Fp2,
    pub p_poly: Poly<Fp2>,
    pub q_poly: Poly<Fp2>,
}

impl DivisionProblem {
    pub fn new(e1: Curve, e2: Curve, f: RatFunc<Fp2>, g: RatFunc<Fp2>, ell: u64) -> Result<DivisionProblem> {
        if ![2, 3, 5, 7].contains(&ell) {
            return Err(Error::Unsupported(format!("division by {ell}")));
        }
        let c_f = f.num().lead();
        if c_f.is_zero() {
            return Err(Error::NotDivisible(ell));
        }
        let p_poly = f.num().monic();
        let strip = if ell == 2 { e1.rhs_poly() } else { e1.division_polynomial(ell).square() };
        let q_poly = f.den().div_exact(&strip).ok_or(Error::NotDivisible(ell))?;
        Ok(DivisionProblem { e1, e2, f, g, ell, c_f, p_poly, q_poly })
    }

    pub fn from_isogeny(phi: &Isogeny, ell: u64) -> Result<DivisionProblem> {
        DivisionProblem::new(phi.domain, phi.codomain, phi.x_map.clone(), phi.y_map.clone(), ell)
    }
}

/// Data shared by both transforms of one division: the ℓ-torsion
/// x-coordinates and the evaluation point ζ.
pub struct EvalContext {
    ell: u64,
    w: Poly<Fp2>,
    x1: RatFunc<Fp2>,
    field: Field,
    xs: Vec<Ext>,
    zeta: Ext,
}

fn splitting_field(p: u64, f: &Poly<Fp2>) -> Field {
    let sq = squarefree_decomposition(f).into_iter().fold(Poly::one(&Fp2::zero_p(p)), |a, (g, _)| a.mul(&g));
    let k = factor_degrees(&sq).iter().fold(1u128, |acc, &d| acc / gcd(acc, d as u128) * d as u128);
    Field::over_fp2(p, k as usize)
}

impl EvalContext {
    pub fn new(e1: &Curve, x1: &RatFunc<Fp2>, ell: u64) -> EvalContext {
        let p = e1.p();
        let t = Fp2::zero_p(p);
        let tors = if ell == 2 { e1.rhs_poly() } else { e1.division_polynomial(ell) };
        // ζ = 0 when X₁(0) = 0, else the least root of the numerator of X₁ in
        // the smallest extension holding one.
        let u = x1.num();
        let (zfield, zeta_c) = if u.coeff(0).is_zero() {
            (Field::fp2(p), None)
        } else {
            let sq = squarefree_decomposition(u).into_iter().fold(Poly::one(&t), |a, (g, _)| a.mul(&g));
            let k = *factor_degrees(&sq).iter().min().unwrap();
            (Field::over_fp2(p, k), Some(()))
        };
        let tfield = splitting_field(p, &tors);
        // Work in one tower holding both ζ and the torsion x-coordinates.
        let field = if zfield.degree() <= 2 {
            tfield.clone()
        } else if tfield.degree() <= 2 || tfield == zfield {
            zfield.clone()
        } else {
            let k = (zfield.degree() / 2) as u128;
            let m = (tfield.degree() / 2) as u128;
            Field::over_fp2(p, (k / gcd(k, m) * m) as usize)
        };
        let fz = field.zero();
        let emb = |q: &Poly<Fp2>| q.map(&fz, |c| field.from_fp2(*c));
        let zeta = match zeta_c {
            None => fz.clone(),
            Some(()) => roots(&emb(u))[0].clone(),
        };
        let mut xs = roots(&emb(&tors));
        xs.sort_by(|a, b| a.lex_cmp(b));
        EvalContext { ell, w: e1.rhs_poly(), x1: x1.clone(), field, xs, zeta }
    }

    /// P|X₁ for monic P.
    pub fn transform(&self, poly: &Poly<Fp2>) -> Result<Poly<Fp2>> {
        let n = poly.deg();
        let p = self.w.template().p;
        let t = Fp2::zero_p(p);
        if poly.is_one() {
            return Ok(poly.clone());
        }
        let fz = self.field.zero();
        let lift = |q: &Poly<Fp2>| q.map(&fz, |c| self.field.from_fp2(*c));
        let pk = lift(poly);
        let wk = lift(&self.w);
        let x = Poly::x(&fz);
        // One factor per torsion x-coordinate: x_i runs over representatives of ±S.
        let factors: Vec<Poly<Ext>> = self
            .xs
            .par_iter()
            .map(|xi| {
                let wi = self.w.eval_in(xi, |c| xi.embed(*c));
                let lin = x.sub(&Poly::constant(xi.clone()));
                let den = lin.square();
                let a = wk
                    .add(&Poly::constant(wi.clone()))
                    .sub(&x.add(&Poly::constant(xi.clone())).mul(&den));
                let mut den_pows = vec![Poly::one(&fz)];
                for k in 1..=n {
                    den_pows.push(den_pows[k - 1].mul(&den));
                }
                if self.ell == 2 {
                    // Σ c_k a^k den^{n−k}
                    let mut h = Poly::one(&fz);
                    for k in (0..n).rev() {
                        h = h.mul(&a).add(&den_pows[n - k].scale(&pk.coeff(k)));
                    }
                    h
                } else {
                    // (E + βO) with β = −2y·y_i, β² = 4W(x)W(x_i).
                    let b2 = wk.scale(&wi.scale_int(4));
                    let mut e = Poly::one(&fz);
                    let mut o = Poly::zero(&fz);
                    for k in (0..n).rev() {
                        let ne = e.mul(&a).add(&b2.mul(&o)).add(&den_pows[n - k].scale(&pk.coeff(k)));
                        let no = e.add(&o.mul(&a));
                        e = ne;
                        o = no;
                    }
                    e.square().sub(&b2.mul(&o.square()))
                }
            })
            .collect();
        let prod = factors.into_iter().fold(pk.clone(), |acc, f| acc.mul(&f));
        let down = |q: &Poly<Ext>| -> Result<Poly<Fp2>> {
            let c: Option<Vec<Fp2>> = q.coeffs().iter().map(|c| c.descend()).collect();
            c.map(|c| Poly::new(c, t)).ok_or_else(|| Error::Invariant("norm not defined over F_p2".into()))
        };
        let mut num = down(&prod)?;
        // D = V^{2n} for the monic denominator V of X₁.
        let v = self.x1.den().clone();
        let u = self.x1.num().clone();
        let d = v.pow(2 * n as u64);
        let zeta = &self.zeta;
        let ev = |q: &Poly<Fp2>| q.eval_in(zeta, |c| zeta.embed(*c));
        let d_at = ev(&d).inv().ok_or_else(|| Error::Invariant("ζ is a pole".into()))?;
        let mut coeffs = Vec::with_capacity(n + 1);
        for _ in 0..=n {
            let a = ev(&num).mul(&d_at);
            let a2 = a.descend().ok_or_else(|| Error::Invariant("coefficient outside F_p2".into()))?;
            coeffs.push(a2);
            let rest = num.sub(&d.scale(&a2));
            num = rest.div_exact(&u).ok_or(Error::NotDivisible(self.ell))?.mul(&v);
        }
        // N_P agrees with (P|X₁)(X₁) up to a constant; P|X₁ is monic.
        Ok(Poly::new(coeffs, t).monic())
    }
}

/// P|X₁ where X₁ is the x-map of [ℓ] on `e1`.
pub fn eval_transform(e1: &Curve, poly: &Poly<Fp2>, x1: &RatFunc<Fp2>) -> Result<Poly<Fp2>> {
    let ell = crate::arith::isqrt(x1.degree() as u128) as u64;
    EvalContext::new(e1, x1, ell).transform(poly)
}

/// Recover φ from [ℓ]φ: returns (f, g) with φ(x, y) = (f(x), g(x)·y).
pub fn divide_by_ell(prob: &DivisionProblem) -> Result<(RatFunc<Fp2>, RatFunc<Fp2>)> {
    let ell = prob.ell;
    let (x1, _) = prob.e1.multiplication_map(ell);
    let (_, y2) = prob.e2.multiplication_map(ell);
    let ctx = EvalContext::new(&prob.e1, &x1, ell);
    let pp = ctx.transform(&prob.p_poly)?;
    let qq = ctx.transform(&prob.q_poly)?;
    let n = (ell * ell) as usize;
    let p0 = poly_nth_root(&pp, n).ok_or(Error::NotDivisible(ell))?;
    let q0 = poly_nth_root(&qq, n).ok_or(Error::NotDivisible(ell))?;
    let c = prob.c_f * Fp2::from_int((ell * ell) as i128, prob.e1.p());
    let f = RatFunc::reduce(p0.scale(&c), q0)?;
    let g = prob.g.div(&y2.compose(&f))?;
    Ok((f, g))
}

/// φ = ([ℓ]φ)/ℓ as an isogeny.
pub fn divide_isogeny(phi: &Isogeny, ell: u64) -> Result<Isogeny> {
    if !phi.degree.is_multiple_of(ell * ell) {
        return Err(Error::NotDivisible(ell));
    }
    let prob = DivisionProblem::from_isogeny(phi, ell)?;
    let (f, g) = divide_by_ell(&prob)?;
    let out = Isogeny { domain: phi.domain, codomain: phi.codomain, x_map: f, y_map: g, degree: phi.degree / (ell * ell) };
    if out.x_map.degree() as u64 != out.degree {
        return Err(Error::NotDivisible(ell));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fp(v: &[i128]) -> Poly<Fp2> {
        Poly::new(v.iter().map(|&c| Fp2::from_int(c, 179)).collect(), Fp2::zero_p(179))
    }

    #[test]
    fn transform_example_poly() {
        let e = Curve::e1728(179);
        let (x1, _) = e.multiplication_map(3);
        let pp = fp(&[178, 0, 57, 0, 43, 0, 114, 0, 150, 0, 29, 0, 65, 0, 136, 0, 122, 0, 1]);
        let out = eval_transform(&e, &pp, &x1).unwrap();
        assert_eq!(out, fp(&[178, 0, 9, 0, 143, 0, 84, 0, 53, 0, 126, 0, 95, 0, 36, 0, 170, 0, 1]));
    }

    #[test]
    fn single_root_transform() {
        let e = Curve::e1728(179);
        let (x1, _) = e.multiplication_map(3);
        let r = Fp2::new(5, 7, 179);
        let out = eval_transform(&e, &Poly::linear(&r), &x1).unwrap();
        assert_eq!(out, Poly::linear(&x1.eval(&r).unwrap()));
    }

    #[test]
    fn divide_identity() {
        let e = Curve::e1728(179);
        for ell in [2u64, 3] {
            let m = Isogeny::multiplication(&e, ell as i64);
            let id = divide_isogeny(&m, ell).unwrap();
            assert_eq!(id, Isogeny::identity(&e));
        }
    }

    fn fq(c0: i128, c1: i128) -> Fp2 {
        Fp2::new(c0, c1, 179)
    }

    #[test]
    fn divide_three_one_plus_i() {
        let e = Curve::e1728(179);
        let z = Fp2::zero_p(179);
        let one_plus_i = Isogeny {
            domain: e,
            codomain: e,
            x_map: RatFunc::reduce(
                Poly::new(vec![fq(0, 90), z, fq(0, 89)], z),
                Poly::new(vec![z, fq(1, 0)], z),
            )
            .unwrap(),
            y_map: RatFunc::reduce(
                Poly::new(vec![fq(134, 134), z, fq(134, 134)], z),
                Poly::new(vec![z, z, fq(1, 0)], z),
            )
            .unwrap(),
            degree: 2,
        };
        let three = crate::isogeny::compose(&Isogeny::multiplication(&e, 3), &one_plus_i).unwrap();
        let prob = DivisionProblem::from_isogeny(&three, 3).unwrap();
        assert_eq!(prob.c_f, fq(0, 169));
        let (f, g) = divide_by_ell(&prob).unwrap();
        assert_eq!(f, one_plus_i.x_map);
        assert_eq!(g, one_plus_i.y_map);
    }
}
