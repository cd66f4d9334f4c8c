// SPDX-License-Identifier: MIT OR Apache-2.0

//! Separable isogenies as rational maps (x, y) ↦ (X(x), Y(x)·y).

use crate::ec::{Curve, Iso, Point};
use crate::error::{Error, Result};
use crate::ff_poly::{factor_degrees, roots, squarefree_decomposition, Ext, Field, Fp2, Fq, Poly, RatFunc};
use crate::arith::gcd;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::collections::HashSet;

/// A map (x, y) ↦ (X(x), Y(x)·y) between curves, not necessarily an isogeny
/// of known degree.
pub type MapPair = (RatFunc<Fp2>, RatFunc<Fp2>);

/// Pointwise sum of two maps into `e` under the group law. Fails when the
/// x-maps coincide up to sign of the y-map (sum is [0] or a doubling).
pub fn add_maps(e: &Curve, f: &MapPair, g: &MapPair) -> Result<MapPair> {
    let dx = f.0.sub(&g.0);
    if dx.is_zero() {
        return Err(Error::Invariant("adding maps with equal x-coordinates".into()));
    }
    let w = RatFunc::from_poly(e.rhs_poly());
    let lam = f.1.sub(&g.1).div(&dx)?;
    let x3 = lam.mul(&lam).mul(&w).sub(&f.0).sub(&g.0);
    let y3 = lam.mul(&f.0.sub(&x3)).sub(&f.1);
    Ok((x3, y3))
}

/// f ∘ g for maps of the form above.
pub fn compose_maps(f: &MapPair, g: &MapPair) -> Result<MapPair> {
    let x = f.0.compose(&g.0);
    let y = f.1.compose(&g.0).mul(&g.1);
    Ok((x, y))
}

/// Closure cap for kernels given by generators.
pub const KERNEL_CAP: usize = 10_000;

#[derive(Clone, PartialEq, Eq)]
pub struct Isogeny {
    pub domain: Curve,
    pub codomain: Curve,
    pub x_map: RatFunc<Fp2>,
    pub y_map: RatFunc<Fp2>,
    pub degree: u64,
}

impl std::fmt::Debug for Isogeny {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Isogeny[{}: j={} -> j={}]", self.degree, self.domain.j(), self.codomain.j())
    }
}

fn zero(p: u64) -> Fp2 {
    Fp2::zero_p(p)
}

impl Isogeny {
    pub fn identity(e: &Curve) -> Isogeny {
        let t = zero(e.p());
        Isogeny { domain: *e, codomain: *e, x_map: RatFunc::x(&t), y_map: RatFunc::constant(t.one()), degree: 1 }
    }

    pub fn from_iso(iso: &Iso) -> Isogeny {
        let u2 = iso.u * iso.u;
        let t = zero(iso.u.p);
        Isogeny {
            domain: iso.domain,
            codomain: iso.codomain,
            x_map: RatFunc::x(&t).scale(&u2),
            y_map: RatFunc::constant(u2 * iso.u),
            degree: 1,
        }
    }

    /// [n] as an isogeny E → E.
    pub fn multiplication(e: &Curve, n: i64) -> Isogeny {
        let (x, y) = e.multiplication_map(n.unsigned_abs());
        let y = if n < 0 { y.neg() } else { y };
        Isogeny { domain: *e, codomain: *e, x_map: x, y_map: y, degree: (n * n) as u64 }
    }

    /// Build from explicit maps; spot-checks that F_{p²} points land on the codomain.
    pub fn from_maps(domain: Curve, codomain: Curve, x_map: RatFunc<Fp2>, y_map: RatFunc<Fp2>, degree: u64) -> Result<Isogeny> {
        let phi = Isogeny { domain, codomain, x_map, y_map, degree };
        phi.spot_check()?;
        Ok(phi)
    }

    fn spot_check(&self) -> Result<()> {
        let f = self.domain.base_field();
        let mut rng = ChaCha8Rng::seed_from_u64(0xc4ec);
        for _ in 0..3 {
            let pt = self.domain.random_point(&f, &mut rng);
            let img = self.eval(&pt);
            if let Some((x, y)) = &img.xy {
                if y.square() != self.codomain.rhs(x) {
                    return Err(Error::Invariant("map does not land on the codomain".into()));
                }
            }
        }
        Ok(())
    }

    pub fn p(&self) -> u64 {
        self.domain.p()
    }

    /// φ(P); points whose x is a pole map to O.
    pub fn eval(&self, pt: &Point) -> Point {
        let (x, y) = match &pt.xy {
            None => return self.codomain.identity(),
            Some(v) => v,
        };
        let emb = |c: &Fp2| x.embed(*c);
        match self.x_map.eval_in(x, emb) {
            None => self.codomain.identity(),
            Some(xx) => {
                let yy = self.y_map.eval_in(x, emb).expect("y-map pole outside kernel").mul(y);
                Point { curve: self.codomain, xy: Some((xx, yy)) }
            }
        }
    }

    /// Checked evaluation: the point must lie on the domain.
    pub fn evaluate(&self, pt: &Point) -> Result<Point> {
        if pt.curve != self.domain {
            return Err(Error::CurveMismatch);
        }
        Ok(self.eval(pt))
    }

    /// Monic polynomial vanishing exactly on x(ker φ \ {O}).
    pub fn kernel_polynomial(&self) -> Poly<Fp2> {
        let d = self.x_map.den();
        let t = zero(self.p());
        squarefree_decomposition(d).into_iter().fold(Poly::one(&t), |acc, (g, _)| acc.mul(&g))
    }

    pub fn frobenius(&self) -> Isogeny {
        Isogeny {
            domain: self.domain.frobenius(),
            codomain: self.codomain.frobenius(),
            x_map: self.x_map.frobenius(),
            y_map: self.y_map.frobenius(),
            degree: self.degree,
        }
    }

    /// Post-compose with an isomorphism of the codomain.
    pub fn then_iso(&self, iso: &Iso) -> Result<Isogeny> {
        compose(&Isogeny::from_iso(iso), self)
    }

    pub fn neg(&self) -> Isogeny {
        Isogeny { y_map: self.y_map.neg(), ..self.clone() }
    }
}

/// ψ ∘ φ.
pub fn compose(psi: &Isogeny, phi: &Isogeny) -> Result<Isogeny> {
    if psi.domain != phi.codomain {
        return Err(Error::CurveMismatch);
    }
    if phi.degree == 1 && phi.x_map.num().deg() == 1 && phi.x_map.den().is_one() && phi.x_map.num().coeff(1).is_one()
        && phi.y_map.num().coeff(0).is_one() && phi.y_map.den().is_one() && phi.y_map.num().deg() == 0 {
            return Ok(psi.clone());
        }
    let x = psi.x_map.compose(&phi.x_map);
    let y = psi.y_map.compose(&phi.x_map).mul(&phi.y_map);
    Ok(Isogeny { domain: phi.domain, codomain: psi.codomain, x_map: x, y_map: y, degree: psi.degree * phi.degree })
}

/// Close a generator list under the group law.
pub fn subgroup(e: &Curve, gens: &[Point]) -> Result<Vec<Point>> {
    let mut set: HashSet<Point> = HashSet::new();
    let mut elems = vec![e.identity()];
    set.insert(e.identity());
    for g in gens {
        if g.curve != *e {
            return Err(Error::CurveMismatch);
        }
        if let Some((x, y)) = &g.xy {
            if y.square() != e.rhs(x) {
                return Err(Error::NotSubgroup("generator not on the curve".into()));
            }
        }
        if set.contains(g) {
            continue;
        }
        // Multiply the current group by the cyclic group of g.
        let base = elems.clone();
        let mut shift = g.clone();
        while !set.contains(&shift) {
            for h in &base {
                let s = h.add(&shift);
                if set.insert(s.clone()) {
                    elems.push(s);
                }
            }
            if elems.len() > KERNEL_CAP {
                return Err(Error::NotSubgroup(format!("closure exceeds {KERNEL_CAP} elements")));
            }
            shift = shift.add(g);
        }
    }
    Ok(elems)
}

/// Vélu's isogeny with kernel generated by `kernel`.
pub fn velu(e: &Curve, kernel: &[Point]) -> Result<Isogeny> {
    let group = subgroup(e, kernel)?;
    if (group.len() as u64).is_multiple_of(e.p()) {
        return Err(Error::NotSubgroup("order divisible by p".into()));
    }
    velu_group(e, &group)
}

fn velu_group(e: &Curve, group: &[Point]) -> Result<Isogeny> {
    let p = e.p();
    let t = zero(p);
    if group.len() == 1 {
        return Ok(Isogeny::identity(e));
    }
    let field: Field = group.iter().find_map(|q| q.x().map(|x| x.field().clone())).unwrap();
    let ez = field.zero();
    // One representative per ± pair.
    let mut seen: HashSet<Ext> = HashSet::new();
    let mut reps: Vec<(Ext, Ext)> = Vec::new();
    for q in group {
        if let Some((x, y)) = &q.xy {
            if seen.insert(x.lift_or_self(&field)) {
                reps.push((x.lift_or_self(&field), y.lift_or_self(&field)));
            }
        }
    }
    let a = field.from_fp2(e.a);
    let mut v_sum = ez.clone();
    let mut w_sum = ez.clone();
    let mut vs = Vec::with_capacity(reps.len());
    let mut us = Vec::with_capacity(reps.len());
    for (x, y) in &reps {
        let gx = x.square().scale_int(3).add(&a);
        let v = if y.is_zero() { gx } else { gx.scale_int(2) };
        let u = y.square().scale_int(4);
        v_sum = v_sum.add(&v);
        w_sum = w_sum.add(&u.add(&x.mul(&v)));
        vs.push(v);
        us.push(u);
    }
    let a2 = a.sub(&v_sum.scale_int(5)).descend();
    let b2 = field.from_fp2(e.b).sub(&w_sum.scale_int(7)).descend();
    let (a2, b2) = match (a2, b2) {
        (Some(a2), Some(b2)) => (a2, b2),
        _ => return Err(Error::NotSubgroup("kernel not Galois-stable".into())),
    };
    let codomain = Curve::new(a2, b2)?;
    // X = x + [D·Σ v_Q D_Q + Σ u_Q D_Q²] / D², D = ∏ (x − x_Q).
    let lin: Vec<Poly<Ext>> = reps.iter().map(|(x, _)| Poly::linear(x)).collect();
    let d = lin.iter().fold(Poly::one(&ez), |acc, l| acc.mul(l));
    let mut sv = Poly::zero(&ez);
    let mut su = Poly::zero(&ez);
    for (i, l) in lin.iter().enumerate() {
        let dq = d.div_exact(l).unwrap();
        sv = sv.add(&dq.scale(&vs[i]));
        if !us[i].is_zero() {
            su = su.add(&dq.square().scale(&us[i]));
        }
    }
    let num = d.mul(&sv).add(&su);
    let down = |p_: &Poly<Ext>| -> Result<Poly<Fp2>> {
        let c: Option<Vec<Fp2>> = p_.coeffs().iter().map(|c| c.descend()).collect();
        c.map(|c| Poly::new(c, t)).ok_or_else(|| Error::NotSubgroup("kernel not Galois-stable".into()))
    };
    let d2 = down(&d.square())?;
    let frac = RatFunc::reduce(down(&num)?, d2)?;
    let x_map = frac.add(&RatFunc::x(&t));
    let y_map = x_map.derivative();
    Ok(Isogeny { domain: *e, codomain, x_map, y_map, degree: group.len() as u64 })
}

trait LiftOrSelf {
    fn lift_or_self(&self, f: &Field) -> Self;
}

impl LiftOrSelf for Ext {
    fn lift_or_self(&self, f: &Field) -> Ext {
        if self.field() == f {
            self.clone()
        } else {
            self.lift(f)
        }
    }
}

/// Points generating the kernel cut out by a monic polynomial D over F_{p²}.
pub fn kernel_points(e: &Curve, d: &Poly<Fp2>) -> Result<Vec<Point>> {
    let p = e.p();
    if d.is_constant() {
        return Ok(Vec::new());
    }
    let degs = factor_degrees(d);
    let k = degs.iter().fold(1u128, |acc, &x| acc / gcd(acc, x as u128) * x as u128) as usize;
    let base = Field::over_fp2(p, k);
    let dz = base.zero();
    let rs = roots(&d.map(&dz, |c| base.from_fp2(*c)));
    if rs.len() != d.deg() {
        return Err(Error::NotSubgroup("kernel polynomial not squarefree".into()));
    }
    let mut pts = Vec::new();
    let mut ext: Option<Field> = None;
    for x in rs {
        match e.lift_x(&x) {
            Some(pt) => pts.push(pt),
            None => {
                let f2 = ext.get_or_insert_with(|| crate::ff_poly::field_extend(&base, 2)).clone();
                pts.push(e.lift_x(&x.lift(&f2)).expect("y in quadratic extension"));
            }
        }
    }
    if let Some(f2) = &ext {
        pts = pts.into_iter().map(|q| if q.x().unwrap().field() == f2 { q } else { q.lift(f2) }).collect();
    }
    Ok(pts)
}

/// Vélu from a kernel polynomial; fails unless the generated subgroup has
/// exactly the given x-coordinates.
pub fn velu_from_kernel_poly(e: &Curve, d: &Poly<Fp2>) -> Result<Isogeny> {
    let pts = kernel_points(e, d)?;
    let phi = velu(e, &pts)?;
    if phi.kernel_polynomial() != d.monic() {
        return Err(Error::NotSubgroup("roots do not form a subgroup".into()));
    }
    Ok(phi)
}

/// φ̂: Vélu on φ(E[d]) followed by the isomorphism back to the domain that
/// makes φ̂∘φ = [d]. For a normalized φ this is (x, y) ↦ (x/d², y/d³).
pub fn dual(phi: &Isogeny) -> Result<Isogeny> {
    let d = phi.degree;
    if d == 1 {
        let iso = phi
            .domain
            .isomorphisms(&phi.codomain)
            .into_iter()
            .find(|u| Isogeny::from_iso(&Iso { domain: phi.domain, codomain: phi.codomain, u: *u }) == *phi)
            .ok_or_else(|| Error::Invariant("degree-1 map is not an isomorphism".into()))?;
        return Ok(Isogeny::from_iso(&Iso { domain: phi.domain, codomain: phi.codomain, u: iso }.inverse()));
    }
    let (p1, p2) = phi.domain.torsion_basis(d)?;
    let gens: Vec<Point> = [phi.eval(&p1), phi.eval(&p2)].into_iter().filter(|q| !q.is_identity()).collect();
    let psi = velu(&phi.codomain, &gens)?;
    let dinv = Fp2::from_int(d as i128, phi.p()).invert().ok_or(Error::Inseparable)?;
    let mut us = vec![dinv];
    us.extend(psi.codomain.isomorphisms(&phi.domain));
    let f = phi.domain.base_field();
    let mut rng = ChaCha8Rng::seed_from_u64(0xd0a1);
    let tests: Vec<Point> = (0..2).map(|_| phi.domain.random_point(&f, &mut rng)).collect();
    for u in us {
        let u2 = u * u;
        if u2 * u2 * psi.codomain.a != phi.domain.a || u2 * u2 * u2 * psi.codomain.b != phi.domain.b {
            continue;
        }
        let iso = Iso { domain: psi.codomain, codomain: phi.domain, u };
        let cand = compose(&Isogeny::from_iso(&iso), &psi)?;
        if tests.iter().all(|t| cand.eval(&phi.eval(t)) == t.mul(d as i128)) {
            return Ok(cand);
        }
    }
    Err(Error::Invariant("no isomorphism closes the dual".into()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e22() -> Curve {
        Curve::new(Fp2::from_int(-11, 179), Fp2::from_int(14, 179)).unwrap()
    }

    #[test]
    fn velu_1728_to_22() {
        let e = Curve::e1728(179);
        let k = e.point_fp2(Fp2::from_int(-1, 179), Fp2::zero_p(179)).unwrap();
        let phi = velu(&e, &[k]).unwrap();
        assert_eq!(phi.codomain, e22());
        assert_eq!(phi.degree, 2);
    }

    #[test]
    fn velu_e22_to_99i107() {
        let e = e22();
        let k = e.point_fp2(Fp2::new(178, 156, 179), Fp2::zero_p(179)).unwrap();
        let phi = velu(&e, &[k]).unwrap();
        assert_eq!(phi.codomain.a, Fp2::new(88, 26, 179));
        assert_eq!(phi.codomain.b, Fp2::new(104, 141, 179));
        assert_eq!(phi.codomain.j(), Fp2::new(107, 99, 179));
    }

    #[test]
    fn dual_of_two_isogeny() {
        let e = e22();
        let k = e.point_fp2(Fp2::new(178, 156, 179), Fp2::zero_p(179)).unwrap();
        let phi = velu(&e, &[k]).unwrap();
        let d = dual(&phi).unwrap();
        let two = compose(&d, &phi).unwrap();
        assert_eq!(two.x_map, Isogeny::multiplication(&e, 2).x_map);
        assert_eq!(two.y_map, Isogeny::multiplication(&e, 2).y_map);
    }

    #[test]
    fn kernel_poly_roundtrip() {
        let e = Curve::e1728(179);
        let (p3, _) = e.torsion_basis(3).unwrap();
        let phi = velu(&e, &[p3]).unwrap();
        let again = velu_from_kernel_poly(&e, &phi.kernel_polynomial()).unwrap();
        assert_eq!(again, phi);
    }
}
