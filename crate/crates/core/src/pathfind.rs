// SPDX-License-Identifier: MIT OR Apache-2.0

//! Orienting j = 1728 by a given discriminant and joining an arbitrary
//! oriented curve to j = 1728 through a shared rim.

use crate::arith::{ceil_log, is_prime, sqrt_mod_prime};
use crate::ec::{Curve, Point};
use crate::endo::{suitable_translation_class, PowersmoothBound, TracedEndo};
use crate::error::{Error, Result};
use crate::ff_poly::Fp2;
use crate::isogeny::{velu, Isogeny};
use crate::quad::{cornacchia, ell_fundamental_part, prime_above_elem};
use crate::quat::{in_maximal_order, realize_endo_1728, QuatElem};
use crate::walk::{ascend_to_rim, make_primitive, rim_cycle, OrientedPath, Step};

/// An element of End(E₁₇₂₈) generating an order of index ℓ^r in the
/// ℓ-fundamental order of the requested discriminant.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrientationSolution {
    pub quat: QuatElem,
    pub r: u32,
    pub disc: i128,
}

/// Default depth cap 2⌈log_ℓ p⌉ + 4.
pub fn default_r_cap(p: u64, ell: u64) -> u32 {
    2 * ceil_log(p as u128, ell as u128) + 4
}

/// Lazy stream of orientations of E₁₇₂₈ in nondecreasing r, and by
/// increasing x within a level. Both square roots mod p are scanned.
///
/// Past the cap the stream yields `Error::Exhausted` once and then ends.
pub struct Orient1728 {
    disc: i128,
    ell: u64,
    p: u64,
    r_cap: u32,
    r: u32,
    // −Δℓ^{2r} and the next x to try in the current lane
    target: u128,
    x: Option<u128>,
    done: bool,
}

pub fn orient_1728(disc: i128, ell: u64, p: u64, r_cap: u32) -> Result<Orient1728> {
    if disc >= 0 || disc.rem_euclid(4) > 1 {
        return Err(Error::Parse(format!("{disc} is not a negative discriminant")));
    }
    if disc.rem_euclid(p as i128) == 0 {
        return Err(Error::Unsupported(format!("p divides {disc}")));
    }
    if ell_fundamental_part(disc, ell) != disc {
        return Err(Error::Unsupported(format!("{disc} is not {ell}-fundamental")));
    }
    let mut it = Orient1728 { disc, ell, p, r_cap, r: 0, target: (-disc) as u128, x: None, done: false };
    it.x = it.first_x();
    Ok(it)
}

impl Orient1728 {
    fn first_x(&self) -> Option<u128> {
        let s = sqrt_mod_prime((self.target % self.p as u128) as u64, self.p)? as u128;
        Some(s.min(self.p as u128 - s))
    }

    /// Next x after `x` with x ≡ ±√(−Δℓ^{2r}) mod p.
    fn step_x(&self, x: u128) -> u128 {
        let p = self.p as u128;
        let a = x % p;
        let b = p - a;
        if b > a {
            x + (b - a)
        } else {
            x + p - (a - b)
        }
    }

    fn next_lane(&mut self) -> bool {
        let l2 = (self.ell as u128) * (self.ell as u128);
        match self.target.checked_mul(l2) {
            Some(t) if self.r < self.r_cap => {
                self.r += 1;
                self.target = t;
                self.x = self.first_x();
                true
            }
            _ => false,
        }
    }

    /// θ for the lane's current x, if D passes the gate.
    fn candidate(&self, x: u128) -> Option<QuatElem> {
        let d = (self.target - x * x) / self.p as u128;
        // D = 1 is let through: it is how (3i + k)/2 arises for −47 at 179.
        if d % 4 != 1 || !(d == 1 || is_prime(d)) {
            return None;
        }
        let (mut y, mut z) = cornacchia(1, u64::try_from(d).ok()?)?;
        if y % 2 == 1 {
            std::mem::swap(&mut y, &mut z);
        }
        let (x, y, z) = (x as i128, y as i128, z as i128);
        Some(if x % 2 == 0 {
            QuatElem::new([1, x, z, y], 2, self.p)
        } else {
            QuatElem::new([0, x, y, z], 2, self.p)
        })
    }

    /// Divide out powers of ℓ while a minimally ℓ-suitable translate allows it.
    fn make_primitive(&self, theta: QuatElem) -> OrientationSolution {
        let l = self.ell as i128;
        let mut theta = theta;
        let mut c = 0;
        while c < self.r {
            let (t, _) = theta.trace();
            let (n, _) = theta.norm();
            let (_, _, shift) = suitable_translation_class(t, t * t - 4 * n, l);
            let cand = theta.add_int(shift).div_int(l);
            if !in_maximal_order(&cand) {
                break;
            }
            theta = cand;
            c += 1;
        }
        OrientationSolution { quat: theta, r: self.r - c, disc: self.disc * l.pow(2 * (self.r - c)) }
    }
}

impl Iterator for Orient1728 {
    type Item = Result<OrientationSolution>;

    fn next(&mut self) -> Option<Self::Item> {
        if self.done {
            return None;
        }
        loop {
            if let Some(x) = self.x {
                if x * x < self.target {
                    self.x = Some(self.step_x(x));
                    if let Some(q) = self.candidate(x) {
                        return Some(Ok(self.make_primitive(q)));
                    }
                    continue;
                }
            }
            if !self.next_lane() {
                self.done = true;
                return Some(Err(Error::Exhausted(self.r_cap)));
            }
        }
    }
}

/// One ℓ-isogeny of a path: the domain model, a generator of the kernel
/// and the j-invariant reached.
#[derive(Clone, Debug)]
pub struct PathEdge {
    pub domain: Curve,
    pub kernel: Point,
    pub codomain_j: Fp2,
}

impl PathEdge {
    fn from_step(s: &Step) -> PathEdge {
        PathEdge { domain: s.isogeny.domain, kernel: s.kernel.clone(), codomain_j: s.isogeny.codomain.j() }
    }

    /// The dual direction: kernel ν(P) for P ∈ E[ℓ] outside ker ν.
    fn reversed(nu: &Isogeny, ell: u64) -> Result<PathEdge> {
        let (a, b) = nu.domain.torsion_basis(ell)?;
        let mut img = nu.evaluate(&a)?;
        if img.is_identity() {
            img = nu.evaluate(&b)?;
        }
        Ok(PathEdge { domain: nu.codomain, kernel: img, codomain_j: nu.domain.j() })
    }

    fn conjugate(&self) -> PathEdge {
        PathEdge { domain: self.domain.frobenius(), kernel: self.kernel.frobenius(), codomain_j: self.codomain_j.conj() }
    }
}

/// A walk in the ℓ-isogeny graph from j = 1728 to the input curve.
#[derive(Clone, Debug)]
pub struct PathResult {
    pub ell: u64,
    pub start: Fp2,
    pub end: Fp2,
    pub edges: Vec<PathEdge>,
}

impl PathResult {
    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn j_invariants(&self) -> Vec<Fp2> {
        let mut v = vec![self.start];
        v.extend(self.edges.iter().map(|e| e.codomain_j));
        v
    }

    /// Rebuild every edge by Vélu from its stored kernel.
    pub fn verify(&self) -> Result<()> {
        let mut here = self.start;
        for (i, e) in self.edges.iter().enumerate() {
            if e.domain.j() != here {
                return Err(Error::Invariant(format!("edge {i} does not start where edge {} ended", i.max(1) - 1)));
            }
            if e.kernel.is_identity() || !e.kernel.mul(self.ell as i128).is_identity() {
                return Err(Error::Invariant(format!("edge {i} kernel does not have order {}", self.ell)));
            }
            let phi = velu(&e.domain, std::slice::from_ref(&e.kernel))?;
            if phi.degree != self.ell || phi.codomain.j() != e.codomain_j {
                return Err(Error::Invariant(format!("edge {i} does not reach its recorded j")));
            }
            here = e.codomain_j;
        }
        if here != self.end {
            return Err(Error::Invariant("path ends at the wrong curve".into()));
        }
        Ok(())
    }
}

/// Knobs for path finding.
#[derive(Clone, Copy, Debug)]
#[derive(Default)]
pub struct PathOptions {
    pub bound: PowersmoothBound,
    pub r_cap: Option<u32>,
}


/// Rim through (E₁, θ₁) as a walk returning to E₁; a single vertex when
/// ℓ ramifies or is inert.
fn rim_of(theta1: &TracedEndo, disc: i128, ell: u64) -> Result<OrientedPath> {
    if disc.rem_euclid(ell as i128) == 0 || prime_above_elem(theta1.t, theta1.n, ell).is_none() {
        return Ok(OrientedPath::empty(theta1.curve));
    }
    rim_cycle(theta1, ell)
}

/// Edges along the rim from vertex m back to the start, by the shorter arc.
fn rim_arc(rim: &OrientedPath, m: usize, ell: u64) -> Result<Vec<PathEdge>> {
    let h = rim.len();
    if h - m <= m {
        Ok(rim.steps[m..].iter().map(PathEdge::from_step).collect())
    } else {
        rim.steps[..m].iter().rev().map(|s| PathEdge::reversed(&s.isogeny, ell)).collect()
    }
}

/// Path from E₁₇₂₈ to the curve of θ by meeting on a common rim.
pub fn path_to_1728(theta: &TracedEndo, ell: u64, opts: PathOptions) -> Result<PathResult> {
    let p = theta.p();
    let (th, _) = make_primitive(theta, ell, opts.bound)?;
    let disc = ell_fundamental_part(th.disc(), ell);
    let h2 = ascend_to_rim(&th, ell, opts.bound)?;
    let theta1 = h2.steps.last().map(|s| s.endo.clone()).unwrap_or(th);
    let rim = rim_of(&theta1, disc, ell)?;
    let mut rim_js = rim.j_invariants();
    if !rim.is_empty() {
        rim_js.pop();
    }

    let r_cap = opts.r_cap.unwrap_or_else(|| default_r_cap(p, ell));
    for sol in orient_1728(disc, ell, p, r_cap)? {
        let sol = sol?;
        let th0 = realize_endo_1728(&sol.quat)?.suitable_translate_powersmooth(ell, opts.bound)?;
        let h1 = ascend_to_rim(&th0, ell, opts.bound)?;
        let j0 = h1.end().j();
        let (m, conj) = match rim_js.iter().position(|j| *j == j0) {
            Some(m) => (m, false),
            None => match rim_js.iter().position(|j| *j == j0.conj()) {
                Some(m) => (m, true),
                None => continue,
            },
        };
        let mut edges: Vec<PathEdge> = h1.steps.iter().map(PathEdge::from_step).collect();
        if conj {
            edges = edges.iter().map(PathEdge::conjugate).collect();
        }
        edges.extend(rim_arc(&rim, m, ell)?);
        for s in h2.steps.iter().rev() {
            edges.push(PathEdge::reversed(&s.isogeny, ell)?);
        }
        let path = PathResult { ell, start: Curve::e1728(p).j(), end: theta.curve.j(), edges };
        path.verify()?;
        return Ok(path);
    }
    Err(Error::Exhausted(r_cap))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn r_cap_default() {
        assert_eq!(default_r_cap(179, 2), 20);
        assert_eq!(default_r_cap(179, 3), 14);
    }

    #[test]
    fn rejects_non_fundamental() {
        assert!(orient_1728(-188, 2, 179, 4).is_err());
        assert!(orient_1728(-47, 2, 47, 4).is_err());
    }
}
