//! τ-factorizations `a = λ·a₁⋯a_n`: certification, bounded enumeration,
//! τ-divisibility, refinement and combination.

pub mod bits;
pub mod index;

use serde::Serialize;
use thiserror::Error;

use crate::associates::AssocData;
use crate::ring::{Elem, Ring};
use crate::taurel::TauRelation;

use self::index::FactorIndex;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FactorError {
    #[error("position {position} out of range for {len} factors")]
    Position { position: usize, len: usize },
    #[error("factorization index exceeded {states} states")]
    Budget { states: usize },
}

/// `target = lambda · factors[0] ⋯ factors[n-1]`. Not necessarily certified.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct Factorization {
    pub target: Elem,
    pub lambda: Elem,
    pub factors: Vec<Elem>,
}

impl Factorization {
    pub fn len(&self) -> usize {
        self.factors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }

    /// A single factor (which is then `≈ target` when certified).
    pub fn is_trivial(&self) -> bool {
        self.factors.len() == 1
    }

    /// The factors sorted, i.e. the identity of the factorization.
    pub fn multiset(&self) -> Vec<Elem> {
        let mut m = self.factors.clone();
        m.sort_unstable();
        m
    }

    pub fn certify(&self, tau: &TauRelation) -> bool {
        certify(tau, self.target, self.lambda, &self.factors)
    }

    /// `0 = 6·10·15`, with λ shown only when it is not 1.
    pub fn describe(&self, ring: &Ring) -> String {
        let mut parts: Vec<String> = Vec::new();
        if self.lambda != ring.one() {
            parts.push(ring.format_elem(self.lambda));
        }
        parts.extend(self.factors.iter().map(|&f| ring.format_elem(f)));
        format!("{} = {}", ring.format_elem(self.target), parts.join("·"))
    }
}

/// Whether `a = λ·factors` is a τ-factorization. The degenerate `0 = λ·0`
/// is accepted.
pub fn certify(tau: &TauRelation, a: Elem, lambda: Elem, factors: &[Elem]) -> bool {
    let ring = tau.ring();
    if a >= ring.order() || lambda >= ring.order() || !ring.is_unit(lambda) || factors.is_empty() {
        return false;
    }
    if factors == [0] {
        return a == 0;
    }
    let sharp = |x: Elem| x < ring.order() && x != 0 && !ring.is_unit(x);
    if !factors.iter().all(|&x| sharp(x)) {
        return false;
    }
    for i in 0..factors.len() {
        for j in i + 1..factors.len() {
            if !tau.relates(factors[i], factors[j]) {
                return false;
            }
        }
    }
    ring.mul(lambda, ring.product(factors.iter().copied())) == a
}

/// A unit `λ` with `a = λ·p`, if `p ≈ a`.
pub fn unit_between(ring: &Ring, a: Elem, p: Elem) -> Option<Elem> {
    ring.units().iter().copied().find(|&u| ring.mul(u, p) == a)
}

/// Non-trivial τ-factorizations of one element up to a length bound.
#[derive(Debug, Clone, Serialize)]
pub struct Enumeration {
    pub target: Elem,
    pub max_len: usize,
    /// Sorted factor multisets, each of length `2..=max_len`.
    pub multisets: Vec<Vec<Elem>>,
    /// No pairwise-τ multiset of length `max_len + 1` exists at all, so no
    /// longer factorization of anything exists either.
    pub complete: bool,
    /// The `≈`-class of the target: the factors of its trivial factorizations.
    pub trivial_class: Vec<Elem>,
}

impl Enumeration {
    pub fn factorizations(&self, ring: &Ring) -> Vec<Factorization> {
        self.multisets
            .iter()
            .map(|m| Factorization {
                target: self.target,
                lambda: unit_between(ring, self.target, ring.product(m.iter().copied()))
                    .expect("enumerated product is a strong associate"),
                factors: m.clone(),
            })
            .collect()
    }
}

/// Depth-first search over non-decreasing factors with pairwise-τ pruning.
pub fn enumerate(tau: &TauRelation, a: Elem, max_len: usize) -> Enumeration {
    let ring = tau.ring();
    let data = AssocData::get(ring);
    let sharp = ring.nonzero_nonunits();
    let class = data.class_of(a);
    let mut multisets = Vec::new();
    let mut stack = Vec::new();
    search(tau, sharp, 0, ring.one(), &mut stack, max_len, &mut |stack, p| {
        if stack.len() >= 2 && data.class_of(p) == class {
            multisets.push(stack.to_vec());
        }
        // a ∈ (p) is necessary for extending p to a factorization of a
        data.ideal_within(a, p)
    });
    let mut longer = false;
    search(tau, sharp, 0, ring.one(), &mut stack, max_len + 1, &mut |stack, _| {
        longer |= stack.len() == max_len + 1;
        !longer
    });
    multisets.sort();
    Enumeration {
        target: a,
        max_len,
        multisets,
        complete: !longer,
        trivial_class: data.class_members(class).to_vec(),
    }
}

/// Visits every pairwise-τ multiset (sorted) up to `max_len`; `visit` sees
/// the multiset and its product and returns whether to descend.
#[allow(clippy::too_many_arguments)]
fn search(
    tau: &TauRelation,
    sharp: &[Elem],
    start: usize,
    prod: Elem,
    stack: &mut Vec<Elem>,
    max_len: usize,
    visit: &mut impl FnMut(&[Elem], Elem) -> bool,
) -> bool {
    let ring = tau.ring();
    if !stack.is_empty() && !visit(stack, prod) {
        return true;
    }
    if stack.len() == max_len {
        return true;
    }
    for (i, &x) in sharp.iter().enumerate().skip(start) {
        if !stack.iter().all(|&y| tau.relates(x, y)) {
            continue;
        }
        stack.push(x);
        search(tau, sharp, i, ring.mul(prod, x), stack, max_len, visit);
        stack.pop();
    }
    true
}

/// `b ∣_τ a`: `b` is a factor of some τ-factorization of `a`. With
/// `nontrivial` only factorizations of length at least two count.
pub fn tau_divides(tau: &TauRelation, b: Elem, a: Elem, nontrivial: bool) -> bool {
    let ring = tau.ring();
    let data = AssocData::get(ring);
    if !nontrivial && data.class_of(a) == data.class_of(b) {
        return true;
    }
    if b == 0 || ring.is_unit(b) {
        return false;
    }
    FactorIndex::for_tau(tau).nontrivial_divisors(a).binary_search(&b).is_ok()
}

/// Replaces factor `i` of `f` by the factors of `sub` (a factorization of
/// that factor), moving the unit into λ. The result is not certified.
pub fn refine(ring: &Ring, f: &Factorization, i: usize, sub: &Factorization) -> Result<Factorization, FactorError> {
    if i >= f.len() {
        return Err(FactorError::Position {
            position: i,
            len: f.len(),
        });
    }
    let mut factors = f.factors.clone();
    factors.splice(i..=i, sub.factors.iter().copied());
    Ok(Factorization {
        target: f.target,
        lambda: ring.mul(f.lambda, sub.lambda),
        factors,
    })
}

/// Merges factors `i` and `i + 1` of `f`. The result is not certified.
pub fn combine(ring: &Ring, f: &Factorization, i: usize) -> Result<Factorization, FactorError> {
    if i + 1 >= f.len() {
        return Err(FactorError::Position {
            position: i,
            len: f.len(),
        });
    }
    let mut factors = f.factors.clone();
    let merged = ring.mul(factors[i], factors[i + 1]);
    factors.splice(i..=i + 1, [merged]);
    Ok(Factorization {
        target: f.target,
        lambda: f.lambda,
        factors,
    })
}
