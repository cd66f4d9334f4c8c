// SPDX-License-Identifier: MIT OR Apache-2.0

//! Moving through the oriented ℓ-isogeny graph: direction labels,
//! ℓ-primitive reduction, rim walks and ascent to the rim.

use crate::arith::valuation;
use crate::ec::{Curve, Iso, Point};
use crate::endo::{suitable_translation_class, PowersmoothBound, TracedEndo, TRANSLATE_BUDGET};
use crate::error::{Error, Result};
use crate::ff_poly::{Fp2, Fq};
use crate::isogeny::{velu, Isogeny};
use crate::quad::{ell_fundamental_part, prime_above_elem, roots_mod_ell};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::cmp::Ordering;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum StepKind {
    Ascending,
    Horizontal,
    Descending,
}

/// One oriented step: the isogeny, its kernel generator on the domain and
/// the endomorphism carried to the codomain.
#[derive(Clone, Debug)]
pub struct Step {
    pub isogeny: Isogeny,
    pub kernel: Point,
    pub endo: TracedEndo,
}

#[derive(Clone, Debug)]
pub struct OrientedPath {
    pub start: Curve,
    pub steps: Vec<Step>,
}

impl OrientedPath {
    pub fn empty(start: Curve) -> OrientedPath {
        OrientedPath { start, steps: Vec::new() }
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn end(&self) -> Curve {
        self.steps.last().map(|s| s.isogeny.codomain).unwrap_or(self.start)
    }

    /// j-invariants visited, start included.
    pub fn j_invariants(&self) -> Vec<Fp2> {
        let mut v = vec![self.start.j()];
        v.extend(self.steps.iter().map(|s| s.isogeny.codomain.j()));
        v
    }
}

fn point_cmp(a: &Point, b: &Point) -> Ordering {
    match (&a.xy, &b.xy) {
        (None, None) => Ordering::Equal,
        (None, _) => Ordering::Less,
        (_, None) => Ordering::Greater,
        (Some((x1, y1)), Some((x2, y2))) => x1.lex_cmp(x2).then_with(|| y1.lex_cmp(y2)),
    }
}

/// The ℓ + 1 cyclic subgroups of order ℓ, each by its lexicographically
/// least generator, sorted by that generator; with the E[ℓ] basis used.
pub fn kernel_lines(e: &Curve, ell: u64) -> Result<(Vec<Point>, (Point, Point))> {
    let (p, q) = e.torsion_basis(ell)?;
    let mut lines = vec![q.clone()];
    let mut r = p.clone();
    for _ in 0..ell {
        lines.push(r.clone());
        r = r.add(&q);
    }
    let mut canon: Vec<Point> = lines
        .into_iter()
        .map(|g| {
            let mut best = g.clone();
            let mut m = g.clone();
            for _ in 1..ell {
                if point_cmp(&m, &best).is_lt() {
                    best = m.clone();
                }
                m = m.add(&g);
            }
            best
        })
        .collect();
    canon.sort_by(point_cmp);
    Ok((canon, (p, q)))
}

/// Discrete logarithm of `r` in the basis (p, q) of E[m], by search.
fn coords(r: &Point, p: &Point, q: &Point, m: u64) -> Result<(u64, u64)> {
    let mut ap = p.curve.identity();
    for a in 0..m {
        let mut pt = ap.clone();
        for b in 0..m {
            if pt == *r {
                return Ok((a, b));
            }
            pt = pt.add(q);
        }
        ap = ap.add(p);
    }
    Err(Error::Invariant("point outside the torsion subgroup".into()))
}

/// Smallest c with θ(R) = [c]R, if R spans an eigenline.
fn eigenvalue(theta: &TracedEndo, r: &Point, ell: u64) -> Result<Option<u64>> {
    let img = theta.eval(r)?;
    let mut m = r.curve.identity();
    for c in 0..ell {
        if m == img {
            return Ok(Some(c));
        }
        m = m.add(r);
    }
    Ok(None)
}

fn require_suitable(theta: &TracedEndo, ell: u64) -> Result<()> {
    if suitable_translation_class(theta.t, theta.disc(), ell as i128).0 != 0 {
        return Err(Error::NotSuitable(ell));
    }
    Ok(())
}

/// Direction of every ℓ-isogeny from E from the eigenspaces of θ on E[ℓ].
pub fn classify_directions(theta: &TracedEndo, ell: u64) -> Result<Vec<(Point, StepKind)>> {
    require_suitable(theta, ell)?;
    let (lines, (p, q)) = kernel_lines(&theta.curve, ell)?;
    // The action on the basis must have characteristic polynomial x² − tx + n.
    let (a, c) = coords(&theta.eval(&p)?, &p, &q, ell)?;
    let (b, d) = coords(&theta.eval(&q)?, &p, &q, ell)?;
    let l = ell as i128;
    let (a, b, c, d) = (a as i128, b as i128, c as i128, d as i128);
    if (a + d - theta.t).rem_euclid(l) != 0 || (a * d - b * c - theta.n).rem_euclid(l) != 0 {
        return Err(Error::Invariant("θ on E[ℓ] disagrees with its trace and norm".into()));
    }
    let roots = roots_mod_ell(theta.t, theta.n, ell);
    let double_zero = roots == [0] && (theta.t * theta.t - 4 * theta.n).rem_euclid(l) == 0;
    lines
        .into_iter()
        .map(|r| {
            let kind = match eigenvalue(theta, &r, ell)? {
                None => StepKind::Descending,
                Some(_) if double_zero => StepKind::Ascending,
                Some(_) => StepKind::Horizontal,
            };
            Ok((r, kind))
        })
        .collect()
}

/// Direction of the ℓ-isogeny with kernel ⟨R⟩ from the divisibility of
/// ψ∘θ∘ψ̂ by [ℓ] and [ℓ]².
pub fn classify_by_divisibility(theta: &TracedEndo, r: &Point, ell: u64) -> Result<StepKind> {
    require_suitable(theta, ell)?;
    let psi = velu(&theta.curve, std::slice::from_ref(r))?;
    let moved = theta.transfer(&psi)?;
    Ok(if !moved.kills_torsion(ell)? {
        StepKind::Descending
    } else if moved.kills_torsion(ell * ell)? {
        StepKind::Ascending
    } else {
        StepKind::Horizontal
    })
}

fn is_ell_fundamental(disc: i128, ell: u64) -> bool {
    ell_fundamental_part(disc, ell) == disc
}

/// An ℓ-suitable translate whose norm is B-powersmooth and prime to p.
pub fn suitable_translate(theta: &TracedEndo, ell: u64, bound: PowersmoothBound) -> Result<TracedEndo> {
    let (_, s) = theta.find_powersmooth_translate(ell, bound, TRANSLATE_BUDGET)?;
    theta.translate(s)
}

/// An ℓ-primitive endomorphism generating a ring containing Z[θ] with
/// index ℓ^c, and c.
pub fn make_primitive(theta: &TracedEndo, ell: u64, bound: PowersmoothBound) -> Result<(TracedEndo, u32)> {
    if is_ell_fundamental(theta.disc(), ell) {
        return Ok((theta.clone(), 0));
    }
    let mut cur = suitable_translate(theta, ell, bound)?;
    let mut c = 0;
    while cur.kills_torsion(ell)? {
        cur = cur.divide_chain_by_ell(ell)?;
        c += 1;
        if is_ell_fundamental(cur.disc(), ell) {
            return Ok((cur, c));
        }
        cur = suitable_translate(&cur, ell, bound)?;
    }
    Ok((cur, c))
}

/// Whether (E_a, θ_a) and (E_b, θ_b) are isomorphic as oriented curves:
/// some isomorphism ρ has ρ∘θ_a = θ_b∘ρ on E_a[6] and two random points.
pub fn same_oriented(a: &TracedEndo, b: &TracedEndo) -> Result<bool> {
    if a.curve.j() != b.curve.j() || a.t != b.t || a.n != b.n {
        return Ok(false);
    }
    let (p, q) = a.curve.torsion_basis(6)?;
    let f = a.curve.base_field();
    let mut rng = ChaCha8Rng::seed_from_u64(0x0e1e);
    let mut tests = vec![p, q];
    tests.push(a.curve.random_point(&f, &mut rng));
    tests.push(a.curve.random_point(&f, &mut rng));
    let imgs: Vec<Point> = tests.iter().map(|r| a.eval(r)).collect::<Result<_>>()?;
    for u in a.curve.isomorphisms(&b.curve) {
        let rho = Iso { domain: a.curve, codomain: b.curve, u };
        let mut ok = true;
        for (r, ir) in tests.iter().zip(&imgs) {
            if rho.apply(ir) != b.eval(&rho.apply(r))? {
                ok = false;
                break;
            }
        }
        if ok {
            return Ok(true);
        }
    }
    Ok(false)
}

/// One horizontal step by 𝔩 = (ℓ, θ − λ).
fn rim_step(theta: &TracedEndo, lambda: u64, ell: u64) -> Result<Step> {
    let (lines, _) = kernel_lines(&theta.curve, ell)?;
    let mut kernel = None;
    for r in lines {
        if eigenvalue(theta, &r, ell)? == Some(lambda) {
            kernel = Some(r);
            break;
        }
    }
    let kernel = kernel.ok_or_else(|| Error::Invariant("no eigenline for λ".into()))?;
    let nu = velu(&theta.curve, std::slice::from_ref(&kernel))?;
    let endo = theta.transfer(&nu)?.divide_chain_by_ell(ell)?;
    Ok(Step { isogeny: nu, kernel, endo })
}

fn rim_setup(theta1: &TracedEndo, ell: u64) -> Result<u64> {
    let disc = theta1.disc();
    if disc.rem_euclid(ell as i128) == 0 {
        return Err(Error::Failure(format!("{ell} divides the discriminant {disc}")));
    }
    let ideal = prime_above_elem(theta1.t, theta1.n, ell)
        .ok_or_else(|| Error::Failure(format!("{ell} is inert in the order of discriminant {disc}")))?;
    Ok(ideal.lambda)
}

/// Horizontal path from (E₁, θ₁) to a curve with j(E₂), acting by the
/// prime 𝔩 above ℓ fixed by the least root of x² − tx + n mod ℓ.
pub fn walk_rim(theta1: &TracedEndo, target: &Curve, ell: u64) -> Result<OrientedPath> {
    let lambda = rim_setup(theta1, ell)?;
    let mut path = OrientedPath::empty(theta1.curve);
    if theta1.curve.j() == target.j() {
        return Ok(path);
    }
    let bound = theta1.order()?.class_number() + 1;
    let mut cur = theta1.clone();
    for _ in 0..bound {
        let step = rim_step(&cur, lambda, ell)?;
        cur = step.endo.clone();
        path.steps.push(step);
        if cur.curve.j() == target.j() {
            return Ok(path);
        }
        if same_oriented(&cur, theta1)? {
            return Err(Error::Failure("target is not on the rim".into()));
        }
    }
    Err(Error::Failure("rim walk did not close".into()))
}

/// The whole rim through (E₁, θ₁): walk until the oriented start recurs.
pub fn rim_cycle(theta1: &TracedEndo, ell: u64) -> Result<OrientedPath> {
    let lambda = rim_setup(theta1, ell)?;
    let mut path = OrientedPath::empty(theta1.curve);
    let bound = theta1.order()?.class_number() + 1;
    let mut cur = theta1.clone();
    for _ in 0..bound {
        let step = rim_step(&cur, lambda, ell)?;
        cur = step.endo.clone();
        path.steps.push(step);
        if same_oriented(&cur, theta1)? {
            return Ok(path);
        }
    }
    Err(Error::Failure("rim walk did not close".into()))
}

/// Number of ascending steps to the rim for an ℓ-primitive discriminant.
pub fn distance_to_rim(disc: i128, ell: u64) -> u32 {
    let v = valuation(disc, ell as i128);
    let mut k = v / 2;
    if ell == 2 && k > 0 && (disc >> (2 * k)).rem_euclid(4) != 1 {
        k -= 1;
    }
    k
}

/// Ascending path from an ℓ-primitive (E, θ) to the rim.
pub fn ascend_to_rim(theta: &TracedEndo, ell: u64, bound: PowersmoothBound) -> Result<OrientedPath> {
    let k = distance_to_rim(theta.disc(), ell);
    let mut path = OrientedPath::empty(theta.curve);
    let mut cur = theta.clone();
    for _ in 0..k {
        let s = suitable_translate(&cur, ell, bound)?;
        let (lines, _) = kernel_lines(&s.curve, ell)?;
        let mut kernel = None;
        for r in lines {
            if s.eval(&r)?.is_identity() {
                kernel = Some(r);
                break;
            }
        }
        let kernel = kernel.ok_or_else(|| Error::Invariant("no ascending direction".into()))?;
        let nu = velu(&s.curve, std::slice::from_ref(&kernel))?;
        let endo = s.transfer(&nu)?.divide_chain_by_ell(ell)?.divide_chain_by_ell(ell)?;
        cur = endo.clone();
        path.steps.push(Step { isogeny: nu, kernel, endo });
    }
    Ok(path)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rim_distance() {
        assert_eq!(distance_to_rim(-752, 2), 2);
        assert_eq!(distance_to_rim(-188, 2), 1);
        assert_eq!(distance_to_rim(-47, 2), 0);
        assert_eq!(distance_to_rim(-32, 2), 1);
        assert_eq!(distance_to_rim(-47 * 9, 3), 1);
    }
}
