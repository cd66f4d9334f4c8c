// SPDX-License-Identifier: MIT OR Apache-2.0

//! Traced endomorphisms (E, θ, t, n): evaluation, lazy translation,
//! refactoring into prime-power chains, division by ℓ, powersmooth
//! ℓ-suitable translates and primitive orders.

use crate::arith::{factor, is_powersmooth};
use crate::divell::divide_isogeny;
use crate::ec::{Curve, Iso, Point};
use crate::error::{Error, Result};
use crate::isogeny::{add_maps, compose, dual, velu, Isogeny};
use crate::quad::QuadOrder;
use crate::quat::{eval_1728, QuatElem};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use std::collections::HashMap;

/// Candidates tried by the b-sweep of the powersmooth translate search.
pub const TRANSLATE_BUDGET: u64 = 10_000;

#[derive(Clone, Debug)]
pub enum Rep {
    /// An explicit rational map E → E.
    Rational(Isogeny),
    /// links[last] ∘ … ∘ links[0] + [shift].
    Chain { links: Vec<Isogeny>, shift: i128 },
    /// A maximal-order element acting on E₁₇₂₈.
    Quaternion(QuatElem),
}

#[derive(Clone, Debug)]
pub struct TracedEndo {
    pub curve: Curve,
    pub rep: Rep,
    pub t: i128,
    pub n: i128,
}

/// Bound B on the prime powers of a chain degree; `None` is unbounded.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PowersmoothBound(pub Option<u128>);

impl PowersmoothBound {
    pub fn new(b: u128) -> Result<PowersmoothBound> {
        if b < 2 {
            return Err(Error::Invariant(format!("powersmooth bound {b} below 2")));
        }
        Ok(PowersmoothBound(Some(b)))
    }

    pub fn unbounded() -> PowersmoothBound {
        PowersmoothBound(None)
    }

    pub fn accepts(&self, n: u128) -> bool {
        match self.0 {
            None => n > 0,
            Some(b) => is_powersmooth(n, b),
        }
    }
}

impl Default for PowersmoothBound {
    fn default() -> Self {
        PowersmoothBound(Some(200))
    }
}

impl TracedEndo {
    pub fn from_isogeny(phi: Isogeny, t: i128) -> Result<TracedEndo> {
        if phi.domain != phi.codomain {
            return Err(Error::CurveMismatch);
        }
        let n = phi.degree as i128;
        TracedEndo::checked(TracedEndo { curve: phi.domain, rep: Rep::Rational(phi), t, n })
    }

    pub fn from_chain(curve: Curve, links: Vec<Isogeny>, shift: i128, t: i128, n: i128) -> Result<TracedEndo> {
        let mut cur = curve;
        for l in &links {
            if l.domain != cur {
                return Err(Error::CurveMismatch);
            }
            cur = l.codomain;
        }
        if cur != curve {
            return Err(Error::CurveMismatch);
        }
        TracedEndo::checked(TracedEndo { curve, rep: Rep::Chain { links, shift }, t, n })
    }

    fn checked(e: TracedEndo) -> Result<TracedEndo> {
        if e.disc() >= 0 {
            return Err(Error::Invariant(format!("t² − 4n = {} is not negative", e.disc())));
        }
        Ok(e)
    }

    pub fn p(&self) -> u64 {
        self.curve.p()
    }

    pub fn disc(&self) -> i128 {
        self.t * self.t - 4 * self.n
    }

    pub fn order(&self) -> Result<QuadOrder> {
        QuadOrder::new(self.disc())
    }

    /// θ(P) for P on the curve over any extension.
    pub fn eval(&self, pt: &Point) -> Result<Point> {
        if pt.curve != self.curve {
            return Err(Error::CurveMismatch);
        }
        match &self.rep {
            Rep::Rational(phi) => Ok(phi.eval(pt)),
            Rep::Chain { links, shift } => {
                let img = links.iter().fold(pt.clone(), |acc, l| l.eval(&acc));
                Ok(img.add(&pt.mul(*shift)))
            }
            Rep::Quaternion(q) => eval_1728(q, pt),
        }
    }

    /// Whether θ² − [t]θ + [n] vanishes at `count` random F_{p²} points.
    pub fn satisfies_min_poly(&self, count: usize, seed: u64) -> Result<bool> {
        let f = self.curve.base_field();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..count {
            let pt = self.curve.random_point(&f, &mut rng);
            let a = self.eval(&pt)?;
            let aa = self.eval(&a)?;
            if !aa.sub(&a.mul(self.t)).add(&pt.mul(self.n)).is_identity() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Chain links and shift, or `None` for other representations.
    pub fn links(&self) -> Option<(&[Isogeny], i128)> {
        match &self.rep {
            Rep::Chain { links, shift } => Some((links, *shift)),
            _ => None,
        }
    }

    /// Chain with zero shift and pairwise coprime prime-power links.
    pub fn is_prime_power_chain(&self) -> bool {
        let Some((links, shift)) = self.links() else { return false };
        if shift != 0 {
            return false;
        }
        let mut primes = Vec::new();
        for l in links {
            let f = factor(l.degree as u128);
            if f.len() > 1 {
                return false;
            }
            if let Some(&(q, _)) = f.first() {
                if primes.contains(&q) {
                    return false;
                }
                primes.push(q);
            }
        }
        true
    }

    pub fn link_degrees(&self) -> Vec<u64> {
        self.links().map(|(l, _)| l.iter().map(|x| x.degree).collect()).unwrap_or_default()
    }

    /// θ + [N]. Chains and quaternions translate symbolically; rational
    /// maps are re-added under the group law.
    pub fn translate(&self, m: i128) -> Result<TracedEndo> {
        if m == 0 {
            return Ok(self.clone());
        }
        let n = self.n + self.t * m + m * m;
        if n.rem_euclid(self.p() as i128) == 0 {
            return Err(Error::Inseparable);
        }
        let t = self.t + 2 * m;
        let rep = match &self.rep {
            Rep::Chain { links, shift } => Rep::Chain { links: links.clone(), shift: shift + m },
            Rep::Quaternion(q) => Rep::Quaternion(q.add_int(m)),
            Rep::Rational(phi) => {
                let mm = Isogeny::multiplication(&self.curve, m as i64);
                let (x, y) = add_maps(&self.curve, &(phi.x_map.clone(), phi.y_map.clone()), &(mm.x_map, mm.y_map))?;
                Rep::Rational(Isogeny { x_map: x, y_map: y, degree: n as u64, ..phi.clone() })
            }
        };
        TracedEndo::checked(TracedEndo { curve: self.curve, rep, t, n })
    }

    /// θ as one explicit rational map of degree n.
    pub fn rational_map(&self) -> Result<Isogeny> {
        match &self.rep {
            Rep::Rational(phi) => Ok(phi.clone()),
            Rep::Quaternion(q) => crate::quat::rational_map(q),
            Rep::Chain { links, shift } => {
                let mut acc = Isogeny::identity(&self.curve);
                for l in links {
                    acc = compose(l, &acc)?;
                }
                if *shift != 0 {
                    let m = Isogeny::multiplication(&self.curve, *shift as i64);
                    let (x, y) = add_maps(&self.curve, &(acc.x_map, acc.y_map), &(m.x_map, m.y_map))?;
                    acc = Isogeny { domain: self.curve, codomain: self.curve, x_map: x, y_map: y, degree: 0 };
                }
                acc.degree = self.n as u64;
                Ok(acc)
            }
        }
    }

    /// Whether θ kills E[ℓ], tested on a basis.
    pub fn kills_torsion(&self, ell: u64) -> Result<bool> {
        let (p, q) = self.curve.torsion_basis(ell)?;
        Ok(self.eval(&p)?.is_identity() && self.eval(&q)?.is_identity())
    }

    /// Prime-power chain for θ, one link per q^k ∥ n in increasing q, with
    /// the final isomorphism back to E folded into the last link.
    pub fn refactor_chain(&self) -> Result<TracedEndo> {
        let p = self.p();
        if self.n.rem_euclid(p as i128) == 0 {
            return Err(Error::Inseparable);
        }
        let e = self.curve;
        let mut links: Vec<Isogeny> = Vec::new();
        let mut cur = e;
        for (q, k) in factor(self.n as u128) {
            let m = q.pow(k) as u64;
            let kernel = self.kernel_part(m)?;
            let pushed: Vec<Point> = kernel.iter().map(|g| links.iter().fold(g.clone(), |acc, l| l.eval(&acc))).collect();
            let phi = velu(&cur, &pushed)?;
            if phi.degree != m {
                return Err(Error::Invariant(format!("kernel part of order {} for q^k = {m}", phi.degree)));
            }
            cur = phi.codomain;
            links.push(phi);
        }
        if links.is_empty() {
            return Err(Error::Unsupported("degree-1 endomorphism".into()));
        }
        let u = self.closing_iso(&links, &cur)?;
        let last = links.pop().unwrap();
        links.push(last.then_iso(&Iso { domain: cur, codomain: e, u })?);
        TracedEndo::from_chain(e, links, 0, self.t, self.n)
    }

    /// Generators of ker θ ∩ E[m].
    fn kernel_part(&self, m: u64) -> Result<Vec<Point>> {
        let (bp, bq) = self.curve.torsion_basis(m)?;
        let tp = self.eval(&bp)?;
        let tq = self.eval(&bq)?;
        // a·θ(P) = −b·θ(Q)
        let mut table: HashMap<Point, Vec<u64>> = HashMap::new();
        let mut acc = self.curve.identity();
        let ntq = tq.neg();
        for b in 0..m {
            table.entry(acc.clone()).or_default().push(b);
            acc = acc.add(&ntq);
        }
        let mut gens = Vec::new();
        let mut ap = self.curve.identity();
        let mut a_pt = tp.curve.identity();
        for _a in 0..m {
            if let Some(bs) = table.get(&a_pt) {
                for &b in bs {
                    gens.push(ap.add(&bq.mul(b as i128)));
                }
            }
            a_pt = a_pt.add(&tp);
            ap = ap.add(&bp);
        }
        Ok(gens)
    }

    fn closing_iso(&self, links: &[Isogeny], cur: &Curve) -> Result<crate::ff_poly::Fp2> {
        let f = self.curve.base_field();
        let mut rng = ChaCha8Rng::seed_from_u64(0x150);
        let tests: Vec<Point> = (0..4).map(|_| self.curve.random_point(&f, &mut rng)).collect();
        let imgs: Vec<(Point, Point)> = tests
            .iter()
            .map(|r| Ok((links.iter().fold(r.clone(), |acc, l| l.eval(&acc)), self.eval(r)?)))
            .collect::<Result<_>>()?;
        cur.isomorphisms(&self.curve)
            .into_iter()
            .find(|&u| {
                let iso = Iso { domain: *cur, codomain: self.curve, u };
                imgs.iter().all(|(c, t)| iso.apply(c) == *t)
            })
            .ok_or_else(|| Error::Invariant("refactored chain differs from θ by no automorphism".into()))
    }

    /// θ/ℓ, given that θ kills E[ℓ].
    pub fn divide_chain_by_ell(&self, ell: u64) -> Result<TracedEndo> {
        let l = ell as i128;
        if self.t % l != 0 || self.n % (l * l) != 0 || !self.kills_torsion(ell)? {
            return Err(Error::NotDivisible(ell));
        }
        let (t, n) = (self.t / l, self.n / (l * l));
        if let Rep::Rational(phi) = &self.rep {
            let psi = divide_isogeny(phi, ell)?;
            return TracedEndo::checked(TracedEndo { curve: self.curve, rep: Rep::Rational(psi), t, n });
        }
        let base = if self.is_prime_power_chain() { self.clone() } else { self.refactor_chain()? };
        let (links, _) = base.links().unwrap();
        let mut links = links.to_vec();
        let idx = links
            .iter()
            .position(|x| x.degree % ell == 0)
            .ok_or(Error::NotDivisible(ell))?;
        let link = &links[idx];
        if link.degree == ell * ell {
            let u = scalar_quotient_iso(link, ell)?;
            let iso = Isogeny::from_iso(&Iso { domain: link.domain, codomain: link.codomain, u });
            // Fold the isomorphism into a neighbour to keep the chain prime-power.
            if idx + 1 < links.len() {
                links[idx + 1] = compose(&links[idx + 1], &iso)?;
                links.remove(idx);
            } else if idx > 0 {
                links[idx - 1] = compose(&iso, &links[idx - 1])?;
                links.remove(idx);
            } else {
                links[idx] = iso;
            }
        } else {
            links[idx] = divide_isogeny(link, ell)?;
        }
        TracedEndo::from_chain(self.curve, links, 0, t, n)
    }

    /// ν ∘ θ ∘ ν̂ on the codomain of ν.
    pub fn transfer(&self, nu: &Isogeny) -> Result<TracedEndo> {
        if nu.domain != self.curve {
            return Err(Error::CurveMismatch);
        }
        let base = match &self.rep {
            Rep::Chain { .. } => self.clone(),
            Rep::Rational(phi) => TracedEndo { rep: Rep::Chain { links: vec![phi.clone()], shift: 0 }, ..self.clone() },
            Rep::Quaternion(_) => self.refactor_chain()?,
        };
        let (links, shift) = base.links().unwrap();
        let d = nu.degree as i128;
        let mut out = vec![dual(nu)?];
        out.extend(links.iter().cloned());
        out.push(nu.clone());
        TracedEndo::from_chain(nu.codomain, out, shift * d, self.t * d, self.n * d * d)
    }

    /// Minimal powersmooth ℓ-suitable translate θ + T + bℓ, refactored.
    pub fn suitable_translate_powersmooth(&self, ell: u64, bound: PowersmoothBound) -> Result<TracedEndo> {
        let (_, s) = self.find_powersmooth_translate(ell, bound, TRANSLATE_BUDGET)?;
        self.translate(s)?.refactor_chain()
    }

    /// The smallest b ≥ 0 whose translate norm n(b) is B-powersmooth and
    /// prime to p, with the total shift T + bℓ.
    pub fn find_powersmooth_translate(&self, ell: u64, bound: PowersmoothBound, budget: u64) -> Result<(u64, i128)> {
        let (_, _, tmin) = suitable_translation_class(self.t, self.disc(), ell as i128);
        let p = self.p() as i128;
        let (t, n, l) = (self.t, self.n, ell as i128);
        let norm = |b: u64| {
            let s = tmin + b as i128 * l;
            (s, n + s * t + s * s)
        };
        (0..budget)
            .into_par_iter()
            .find_first(|&b| {
                let (_, nb) = norm(b);
                nb > 0 && nb % p != 0 && bound.accepts(nb as u128)
            })
            .map(|b| (b, norm(b).0))
            .ok_or(Error::SearchBudget { budget })
    }

    /// Q(θ) ∩ End(E), found by dividing suitable translates for each prime
    /// of the conductor as long as [q] divides them.
    pub fn primitive_order(&self, bound: PowersmoothBound) -> Result<QuadOrder> {
        let o = self.order()?;
        let mut disc = o.disc;
        for (q, r) in factor(o.conductor as u128) {
            let q = q as u64;
            let mut cur = self.clone();
            for _ in 0..r {
                let s = cur.suitable_translate_powersmooth(q, bound)?;
                if !s.kills_torsion(q)? {
                    break;
                }
                cur = s.divide_chain_by_ell(q)?;
                disc /= (q * q) as i128;
            }
        }
        QuadOrder::new(disc)
    }
}

/// u with φ = ι_u ∘ [ℓ] for a degree-ℓ² isogeny killing E[ℓ].
fn scalar_quotient_iso(phi: &Isogeny, ell: u64) -> Result<crate::ff_poly::Fp2> {
    let f = phi.domain.base_field();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5ca1);
    let tests: Vec<Point> = (0..4).map(|_| phi.domain.random_point(&f, &mut rng)).collect();
    phi.domain
        .isomorphisms(&phi.codomain)
        .into_iter()
        .find(|&u| {
            let iso = Iso { domain: phi.domain, codomain: phi.codomain, u };
            tests.iter().all(|r| iso.apply(&r.mul(ell as i128)) == phi.eval(r))
        })
        .ok_or(Error::NotDivisible(ell))
}

/// The N-suitable translates T of an element with trace t and
/// discriminant disc: returns (residue, modulus, minimal T), where the
/// minimal T gives the least non-negative trace t + 2T.
pub fn suitable_translation_class(t: i128, disc: i128, m: i128) -> (i128, i128, i128) {
    let o = QuadOrder::new(disc).expect("negative discriminant");
    let r = if o.fundamental_disc.rem_euclid(4) == 1 { (o.conductor - t) / 2 } else { -t / 2 };
    let r = r.rem_euclid(m);
    // least T ≡ r mod m with t + 2T ≥ 0
    let lo = (-t).div_euclid(2) + if (-t).rem_euclid(2) != 0 { 1 } else { 0 };
    let tmin = lo + (r - lo).rem_euclid(m);
    (r, m, tmin)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn translation_class_examples() {
        assert_eq!(suitable_translation_class(0, -188, 2), (1, 2, 1));
        for t in -5..5 {
            let (_, _, tm) = suitable_translation_class(t, t * t - 4 * 50, 1);
            assert!((0..=1).contains(&(t + 2 * tm)));
        }
    }
}
