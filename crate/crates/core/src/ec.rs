// SPDX-License-Identifier: MIT OR Apache-2.0

//! Short Weierstrass curves y² = x³ + ax + b with F_{p²} coefficients.
//!
//! Points carry tower coordinates ([`Ext`]) so the same curve can be
//! evaluated over whatever extension a torsion subgroup needs. All curves
//! handled here satisfy π_{p²} = [s] with s = ±p, so
//! E(F_{p^{2k}}) ≅ (Z/|s^k − 1|)² and every subgroup is Galois-stable.

use crate::error::{Error, Result};
use crate::ff_poly::{fq_sqrt, roots, Ext, Field, Fp2, Fq, Poly, RatFunc};
use num_bigint::BigUint;
use num_traits::{One, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::fmt;

#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Curve {
    pub a: Fp2,
    pub b: Fp2,
}

impl fmt::Debug for Curve {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "y^2 = x^3 + ({})x + ({})", self.a, self.b)
    }
}

impl Curve {
    pub fn new(a: Fp2, b: Fp2) -> Result<Curve> {
        let e = Curve { a, b };
        if e.discriminant().is_zero() {
            return Err(Error::Invariant("singular curve".into()));
        }
        Ok(e)
    }

    /// The fixed model y² = x³ − x of j = 1728.
    pub fn e1728(p: u64) -> Curve {
        Curve { a: Fp2::from_int(-1, p), b: Fp2::zero_p(p) }
    }

    /// Standard model for a j-invariant: y² = x³ + 3j(1728−j)x + 2j(1728−j)²,
    /// with the special models y² = x³ + 1 at j = 0 and y² = x³ − x at 1728.
    pub fn from_j(j: Fp2) -> Curve {
        let p = j.p;
        if j.is_zero() {
            return Curve { a: Fp2::zero_p(p), b: Fp2::one_p(p) };
        }
        let k = Fp2::from_int(1728, p) - j;
        if k.is_zero() {
            return Curve::e1728(p);
        }
        Curve { a: Fp2::from_int(3, p) * j * k, b: Fp2::from_int(2, p) * j * k * k }
    }

    pub fn p(&self) -> u64 {
        self.a.p
    }

    /// 4a³ + 27b².
    pub fn discriminant(&self) -> Fp2 {
        let p = self.p();
        Fp2::from_int(4, p) * self.a * self.a * self.a + Fp2::from_int(27, p) * self.b * self.b
    }

    pub fn j(&self) -> Fp2 {
        let p = self.p();
        let a3 = Fp2::from_int(4, p) * self.a * self.a * self.a;
        Fp2::from_int(1728, p) * a3 * self.discriminant().invert().expect("nonsingular")
    }

    /// W(x) = x³ + ax + b.
    pub fn rhs_poly(&self) -> Poly<Fp2> {
        let z = Fp2::zero_p(self.p());
        Poly::new(vec![self.b, self.a, z, z.one()], z)
    }

    pub fn rhs<F: Fq>(&self, x: &F) -> F {
        x.square().mul(x).add(&x.embed(self.a).mul(x)).add(&x.embed(self.b))
    }

    pub fn base_field(&self) -> Field {
        Field::fp2(self.p())
    }

    pub fn identity(&self) -> Point {
        Point { curve: *self, xy: None }
    }

    pub fn point(&self, x: Ext, y: Ext) -> Result<Point> {
        if y.square() != self.rhs(&x) {
            return Err(Error::Invariant("point not on curve".into()));
        }
        Ok(Point { curve: *self, xy: Some((x, y)) })
    }

    pub fn point_fp2(&self, x: Fp2, y: Fp2) -> Result<Point> {
        let f = self.base_field();
        self.point(f.from_fp2(x), f.from_fp2(y))
    }

    /// Point with the given x and the lexicographically least y, if any.
    pub fn lift_x(&self, x: &Ext) -> Option<Point> {
        let y = fq_sqrt(&self.rhs(x))?;
        Some(Point { curve: *self, xy: Some((x.clone(), y)) })
    }

    /// Roots of W in F_{p²} (x-coordinates of the rational 2-torsion).
    pub fn two_torsion_x(&self) -> Vec<Fp2> {
        roots(&self.rhs_poly())
    }

    pub fn random_point(&self, field: &Field, rng: &mut ChaCha8Rng) -> Point {
        loop {
            let x = field.zero().random_like(rng);
            if let Some(mut pt) = self.lift_x(&x) {
                if let Some((_, y)) = &mut pt.xy {
                    if rand::Rng::gen_bool(rng, 0.5) {
                        *y = y.neg();
                    }
                }
                return pt;
            }
        }
    }

    /// Sign s with π_{p²} = [s·p]: +1 or −1. Decided on random F_{p²}
    /// points; `None` when neither [p+1] nor [p−1] kills them.
    pub fn frobenius_sign(&self) -> Option<i8> {
        let p = self.p() as i128;
        let f = self.base_field();
        let mut rng = ChaCha8Rng::seed_from_u64(0xf00d);
        let pts: Vec<Point> = (0..4).map(|_| self.random_point(&f, &mut rng)).collect();
        if pts.iter().all(|q| q.mul(p + 1).is_identity()) {
            Some(-1)
        } else if pts.iter().all(|q| q.mul(p - 1).is_identity()) {
            Some(1)
        } else {
            None
        }
    }

    /// Exact test via the Hasse invariant: the coefficient of x^{p−1} in
    /// W(x)^{(p−1)/2} vanishes.
    pub fn is_supersingular(&self) -> bool {
        let p = self.p();
        let w = self.rhs_poly().pow((p - 1) / 2);
        w.coeff((p - 1) as usize).is_zero()
    }

    /// E^{(p)}.
    pub fn frobenius(&self) -> Curve {
        Curve { a: self.a.conj(), b: self.b.conj() }
    }

    /// Every u ∈ F_{p²} with (x, y) ↦ (u²x, u³y) an isomorphism self → other,
    /// in lexicographic order.
    pub fn isomorphisms(&self, other: &Curve) -> Vec<Fp2> {
        if self.p() != other.p() || self.j() != other.j() {
            return Vec::new();
        }
        let p = self.p();
        let t = Fp2::zero_p(p);
        // u^{e} = c for the appropriate exponent, solved by root finding.
        let (e, c) = if self.a.is_zero() {
            (6, other.b * self.b.invert().unwrap())
        } else if self.b.is_zero() {
            (4, other.a * self.a.invert().unwrap())
        } else {
            (2, (other.b * self.a) * (self.b * other.a).invert().unwrap())
        };
        let poly = Poly::monomial(t.one(), e).sub(&Poly::constant(c));
        let cands = if e == 2 {
            match fq_sqrt(&c) {
                Some(r) if r.is_zero() => vec![r],
                Some(r) => {
                    let mut v = vec![r, -r];
                    v.sort_by(|x, y| x.lex_cmp(y));
                    v
                }
                None => Vec::new(),
            }
        } else {
            roots(&poly)
        };
        cands
            .into_iter()
            .filter(|u| {
                let u2 = *u * *u;
                u2 * u2 * self.a == other.a && u2 * u2 * u2 * self.b == other.b
            })
            .collect()
    }

    /// The lexicographically least isomorphism scalar, if any.
    pub fn isomorphism(&self, other: &Curve) -> Option<Iso> {
        self.isomorphisms(other).into_iter().next().map(|u| Iso { domain: *self, codomain: *other, u })
    }

    /// Univariate division polynomial: ψ_N for odd N, ψ_N/(2y) for even N, monic.
    pub fn division_polynomial(&self, n: u64) -> Poly<Fp2> {
        let f = self.division_polys(n as usize);
        let g = &f[n as usize];
        if g.is_zero() {
            return g.clone();
        }
        g.monic()
    }

    /// Washington's f_0..f_n: ψ_m = f_m for odd m, ψ_m = y·f_m for even m.
    pub fn division_polys(&self, n: usize) -> Vec<Poly<Fp2>> {
        let p = self.p();
        let t = Fp2::zero_p(p);
        let c = |v: i128| Fp2::from_int(v, p);
        let (a, b) = (self.a, self.b);
        let mut f: Vec<Poly<Fp2>> = vec![
            Poly::zero(&t),
            Poly::one(&t),
            Poly::constant(c(2)),
            Poly::new(vec![-(a * a), c(12) * b, c(6) * a, t, c(3)], t),
            Poly::new(
                vec![
                    c(-4) * (c(8) * b * b + a * a * a),
                    c(-16) * a * b,
                    c(-20) * a * a,
                    c(80) * b,
                    c(20) * a,
                    t,
                    c(4),
                ],
                t,
            ),
        ];
        let w2 = self.rhs_poly().square();
        let half = c(2).invert().unwrap();
        for m in f.len()..=n {
            let k = m / 2;
            let v = if m % 2 == 1 {
                let a1 = f[k + 2].mul(&f[k].pow(3));
                let a2 = f[k - 1].mul(&f[k + 1].pow(3));
                if k % 2 == 0 {
                    w2.mul(&a1).sub(&a2)
                } else {
                    a1.sub(&w2.mul(&a2))
                }
            } else {
                let inner = f[k + 2].mul(&f[k - 1].square()).sub(&f[k - 2].mul(&f[k + 1].square()));
                f[k].mul(&inner).scale(&half)
            };
            f.push(v);
        }
        f.truncate(n + 1);
        f
    }

    /// [N](x, y) = (X(x), Y(x)·y).
    pub fn multiplication_map(&self, n: u64) -> (RatFunc<Fp2>, RatFunc<Fp2>) {
        let t = Fp2::zero_p(self.p());
        if n == 1 {
            return (RatFunc::x(&t), RatFunc::constant(t.one()));
        }
        let f = self.division_polys(n as usize + 1);
        let n_ = n as usize;
        let x = Poly::x(&t);
        let w = self.rhs_poly();
        let (num, den) = if n % 2 == 1 {
            let d = f[n_].square();
            (x.mul(&d).sub(&w.mul(&f[n_ - 1]).mul(&f[n_ + 1])), d)
        } else {
            let d = w.mul(&f[n_].square());
            (x.mul(&d).sub(&f[n_ - 1].mul(&f[n_ + 1])), d)
        };
        let xmap = RatFunc::reduce(num, den).unwrap();
        let ymap = xmap.derivative().scale(&Fp2::from_int(n as i128, self.p()).invert().unwrap());
        (xmap, ymap)
    }

    /// Extension degree k (over F_{p²}) with E[N] ⊆ E(F_{p^{2k}}): the order
    /// of s·p modulo N.
    pub fn torsion_degree(&self, n: u64) -> Result<usize> {
        let s = self.frobenius_sign().ok_or_else(|| Error::Unsupported("Frobenius is not ±p".into()))?;
        let sp = (s as i128 * self.p() as i128).rem_euclid(n as i128) as u128;
        if n == 1 {
            return Ok(1);
        }
        let mut v = sp % n as u128;
        let mut k = 1;
        while v != 1 % n as u128 {
            v = v * sp % n as u128;
            k += 1;
            if k > 4 * n as usize {
                return Err(Error::Unsupported(format!("N = {n} not coprime to p")));
            }
        }
        Ok(k)
    }

    /// Exponent |(sp)^k − 1| of E(F_{p^{2k}}).
    pub fn group_exponent(&self, k: usize) -> Result<BigUint> {
        let s = self.frobenius_sign().ok_or_else(|| Error::Unsupported("Frobenius is not ±p".into()))?;
        let p = BigUint::from(self.p());
        let pk = p.pow(k as u32);
        Ok(if s < 0 && k % 2 == 1 { pk + BigUint::one() } else { pk - BigUint::one() })
    }

    /// Field containing E[N].
    pub fn torsion_field(&self, n: u64) -> Result<Field> {
        Ok(Field::over_fp2(self.p(), self.torsion_degree(n)?))
    }

    /// A basis of E[N] over the smallest tower containing it. Random points
    /// from a fixed seed are pushed into E[N] by the cofactor and kept once
    /// the [N/q] multiples are independent for every prime q | N.
    pub fn torsion_basis(&self, n: u64) -> Result<(Point, Point)> {
        let field = self.torsion_field(n)?;
        self.torsion_basis_in(n, &field)
    }

    pub fn torsion_basis_in(&self, n: u64, field: &Field) -> Result<(Point, Point)> {
        if n.is_multiple_of(self.p()) {
            return Err(Error::Unsupported("N divisible by p".into()));
        }
        let k = field.degree() / 2;
        let m = self.group_exponent(k)?;
        let nb = BigUint::from(n);
        if !(&m % &nb).is_zero() {
            return Err(Error::Invariant(format!("E[{n}] not rational over the given field")));
        }
        let cof = &m / &nb;
        let primes: Vec<u64> = crate::arith::factor(n as u128).iter().map(|&(q, _)| q as u64).collect();
        let mut rng = ChaCha8Rng::seed_from_u64(0x7041 ^ n);
        let full_order = |pt: &Point| primes.iter().all(|&q| !pt.mul((n / q) as i128).is_identity());
        let mut first: Option<Point> = None;
        for _ in 0..10_000 {
            let r = self.random_point(field, &mut rng).mul_big(&cof);
            if !full_order(&r) {
                continue;
            }
            match &first {
                None => first = Some(r),
                Some(pp) => {
                    let ok = primes.iter().all(|&q| {
                        let a = pp.mul((n / q) as i128);
                        let b = r.mul((n / q) as i128);
                        let mut acc = self.identity();
                        (0..q).all(|_| {
                            let hit = acc == b;
                            acc = acc.add(&a);
                            !hit
                        })
                    });
                    if ok {
                        return Ok((pp.clone(), r));
                    }
                }
            }
        }
        Err(Error::Failure(format!("no basis of E[{n}] found")))
    }

    /// All points of E[N] as [a]P + [b]Q, a, b ∈ [0, N).
    pub fn torsion_points(&self, n: u64) -> Result<Vec<Point>> {
        let (p, q) = self.torsion_basis(n)?;
        let mut out = Vec::with_capacity((n * n) as usize);
        let mut row = self.identity();
        for _ in 0..n {
            let mut pt = row.clone();
            for _ in 0..n {
                out.push(pt.clone());
                pt = pt.add(&q);
            }
            row = row.add(&p);
        }
        Ok(out)
    }
}

/// Isomorphism (x, y) ↦ (u²x, u³y).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Iso {
    pub domain: Curve,
    pub codomain: Curve,
    pub u: Fp2,
}

impl Iso {
    pub fn apply(&self, pt: &Point) -> Point {
        match &pt.xy {
            None => self.codomain.identity(),
            Some((x, y)) => {
                let u2 = self.u * self.u;
                let u3 = u2 * self.u;
                Point { curve: self.codomain, xy: Some((x.mul(&x.embed(u2)), y.mul(&y.embed(u3)))) }
            }
        }
    }

    pub fn inverse(&self) -> Iso {
        Iso { domain: self.codomain, codomain: self.domain, u: self.u.invert().unwrap() }
    }
}

/// Affine point or the identity, on a fixed curve.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Point {
    pub curve: Curve,
    pub xy: Option<(Ext, Ext)>,
}

impl fmt::Debug for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.xy {
            None => write!(f, "O"),
            Some((x, y)) => write!(f, "({x:?}, {y:?})"),
        }
    }
}

impl Point {
    pub fn is_identity(&self) -> bool {
        self.xy.is_none()
    }

    pub fn x(&self) -> Option<&Ext> {
        self.xy.as_ref().map(|(x, _)| x)
    }

    pub fn y(&self) -> Option<&Ext> {
        self.xy.as_ref().map(|(_, y)| y)
    }

    pub fn neg(&self) -> Point {
        Point { curve: self.curve, xy: self.xy.as_ref().map(|(x, y)| (x.clone(), y.neg())) }
    }

    pub fn add(&self, o: &Point) -> Point {
        debug_assert_eq!(self.curve, o.curve);
        let (x1, y1) = match &self.xy {
            None => return o.clone(),
            Some(v) => v,
        };
        let (x2, y2) = match &o.xy {
            None => return self.clone(),
            Some(v) => v,
        };
        let lambda = if x1 == x2 {
            if y1.add(y2).is_zero() {
                return self.curve.identity();
            }
            let num = x1.square().scale_int(3).add(&x1.embed(self.curve.a));
            num.mul(&y1.scale_int(2).inv().unwrap())
        } else {
            y2.sub(y1).mul(&x2.sub(x1).inv().unwrap())
        };
        let x3 = lambda.square().sub(x1).sub(x2);
        let y3 = lambda.mul(&x1.sub(&x3)).sub(y1);
        Point { curve: self.curve, xy: Some((x3, y3)) }
    }

    pub fn sub(&self, o: &Point) -> Point {
        self.add(&o.neg())
    }

    pub fn double(&self) -> Point {
        self.add(self)
    }

    pub fn mul(&self, n: i128) -> Point {
        let base = if n < 0 { self.neg() } else { self.clone() };
        base.mul_big(&BigUint::from(n.unsigned_abs()))
    }

    pub fn mul_big(&self, n: &BigUint) -> Point {
        let mut r = self.curve.identity();
        for i in (0..n.bits()).rev() {
            r = r.double();
            if n.bit(i) {
                r = r.add(self);
            }
        }
        r
    }

    /// Coordinates raised to the p-th power, on E^{(p)}.
    pub fn frobenius(&self) -> Point {
        Point {
            curve: self.curve.frobenius(),
            xy: self.xy.as_ref().map(|(x, y)| (x.frobenius(), y.frobenius())),
        }
    }

    /// Re-express in a larger tower.
    pub fn lift(&self, f: &Field) -> Point {
        Point { curve: self.curve, xy: self.xy.as_ref().map(|(x, y)| (x.lift(f), y.lift(f))) }
    }

    /// A point H with [2]H = P, over the smallest extension of P's field
    /// that contains one. The lexicographically least x is taken.
    pub fn halve(&self) -> Point {
        let (xp, _) = match &self.xy {
            None => return self.clone(),
            Some(v) => v,
        };
        let field = xp.field().clone();
        let e = self.curve;
        let z = field.zero();
        // x⁴ − 2ax² − 8bx + a² − 4x_P(x³ + ax + b)
        let a = field.from_fp2(e.a);
        let b = field.from_fp2(e.b);
        let four_x = xp.scale_int(4);
        let h = Poly::new(
            vec![
                a.square().sub(&four_x.mul(&b)),
                b.scale_int(-8).sub(&four_x.mul(&a)),
                a.scale_int(-2),
                four_x.neg(),
                z.one(),
            ],
            z.clone(),
        );
        let d = crate::ff_poly::factor_degrees(&crate::ff_poly::squarefree_decomposition(&h)[0].0)
            .into_iter()
            .min()
            .unwrap();
        let f1 = if d == 1 { field.clone() } else { crate::ff_poly::field_extend(&field, d) };
        let hx = h.map(&f1.zero(), |c| c.lift(&f1));
        let x = roots(&hx).into_iter().next().expect("halving root");
        let target = self.lift(&f1);
        let (x, y, fin) = match fq_sqrt(&e.rhs(&x)) {
            Some(y) => (x, y, f1),
            None => {
                let f2 = crate::ff_poly::field_extend(&f1, 2);
                let x2 = x.lift(&f2);
                let y = fq_sqrt(&e.rhs(&x2)).expect("square root in quadratic extension");
                (x2, y, f2)
            }
        };
        let cand = Point { curve: e, xy: Some((x, y)) };
        let tgt = if fin == target.x().unwrap().field().clone() { target } else { target.lift(&fin) };
        if cand.double() == tgt {
            cand
        } else {
            cand.neg()
        }
    }

    /// Re-express in a smaller tower when the coordinates lie there.
    pub fn lower(&self, f: &Field) -> Option<Point> {
        match &self.xy {
            None => Some(self.clone()),
            Some((x, y)) => Some(Point { curve: self.curve, xy: Some((x.lower(f)?, y.lower(f)?)) }),
        }
    }

    /// Order, given a multiple of it.
    pub fn order_dividing(&self, m: u128) -> u128 {
        let mut ord = m;
        for (q, e) in crate::arith::factor(m) {
            for _ in 0..e {
                if self.mul((ord / q) as i128).is_identity() {
                    ord /= q;
                } else {
                    break;
                }
            }
        }
        ord
    }
}

/// [a]P + [b]Q.
pub fn linear_combination(p: &Point, q: &Point, a: i128, b: i128) -> Result<Point> {
    if p.curve != q.curve {
        return Err(Error::CurveMismatch);
    }
    Ok(p.mul(a).add(&q.mul(b)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e(p: u64, a: (i128, i128), b: (i128, i128)) -> Curve {
        Curve::new(Fp2::new(a.0, a.1, p), Fp2::new(b.0, b.1, p)).unwrap()
    }

    #[test]
    fn psi3_on_1728() {
        let psi = Curve::e1728(179).division_polynomial(3);
        let t = Fp2::zero_p(179);
        let want = Poly::new([119, 0, 177, 0, 1].iter().map(|&c| Fp2::from_int(c, 179)).collect(), t);
        assert_eq!(psi, want);
        assert!(Curve::e1728(179).division_polynomial(1).is_one());
    }

    #[test]
    fn x_of_triple_on_1728() {
        let (x3, _) = Curve::e1728(179).multiplication_map(3);
        let c = |v: &[i128]| Poly::new(v.iter().map(|&c| Fp2::from_int(c, 179)).collect(), Fp2::zero_p(179));
        assert_eq!(x3.num(), &c(&[0, 1, 0, 175, 0, 63, 0, 61, 0, 20]));
        assert_eq!(x3.den(), &c(&[20, 0, 61, 0, 63, 0, 175, 0, 1]));
    }

    #[test]
    fn supersingular_and_sign() {
        let e = Curve::e1728(179);
        assert!(e.is_supersingular());
        assert_eq!(e.frobenius_sign(), Some(-1));
        let e22 = e_from(&[(-11, 0), (14, 0)]);
        assert_eq!(e22.j(), Fp2::from_int(22, 179));
        assert!(e22.is_supersingular());
        // j = 1 is ordinary at p = 179 (not in the supersingular list).
        assert!(!Curve::from_j(Fp2::from_int(1, 179)).is_supersingular());
    }

    fn e_from(v: &[(i128, i128); 2]) -> Curve {
        e(179, v[0], v[1])
    }

    #[test]
    fn e22_two_torsion() {
        let e22 = e_from(&[(-11, 0), (14, 0)]);
        let mut xs: Vec<Fp2> = e22.two_torsion_x();
        xs.sort_by(|a, b| a.lex_cmp(b));
        let mut want = vec![Fp2::from_int(2, 179), Fp2::new(178, 156, 179), Fp2::new(178, 23, 179)];
        want.sort_by(|a, b| a.lex_cmp(b));
        assert_eq!(xs, want);
    }

    #[test]
    fn isomorphism_e22_prime() {
        let e22 = e_from(&[(-11, 0), (14, 0)]);
        let e22p = e_from(&[(98, 125), (152, 84)]);
        let iso = e22.isomorphism(&e22p).unwrap();
        let f = e22.base_field();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let pt = e22.random_point(&f, &mut rng);
        let img = iso.apply(&pt);
        assert!(e22p.point(img.x().unwrap().clone(), img.y().unwrap().clone()).is_ok());
        assert!(e22.isomorphism(&Curve::e1728(179)).is_none());
        assert_eq!(e22.isomorphism(&e22).unwrap().u.lex_cmp(&Fp2::one_p(179)), std::cmp::Ordering::Equal);
    }

    #[test]
    fn three_torsion_1728() {
        let e = Curve::e1728(179);
        let pts = e.torsion_points(3).unwrap();
        let mut xs: Vec<Fp2> = pts.iter().filter_map(|q| q.x().and_then(|x| x.descend())).collect();
        xs.sort_by(|a, b| a.lex_cmp(b));
        xs.dedup();
        assert!(xs.contains(&Fp2::from_int(103, 179)));
        assert!(xs.contains(&Fp2::from_int(76, 179)));
        assert_eq!(xs.len(), 4);
    }
}
