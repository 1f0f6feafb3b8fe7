//! Exact index of all non-trivial τ-factorizations of a finite ring, grouped
//! by the `≈`-class of the product.
//!
//! Factors are abstracted into *letters*. When τ is preserved by `≈` a
//! letter is a whole `≈`-class of R# (any member may stand in for any other,
//! the unit difference moving into λ); otherwise each element of R# is its
//! own letter. A factorization is then a multiset of letters that is
//! pairwise compatible, where a repeated letter needs `x τ x`.
//!
//! The search state is `(set of letters used, class of the product, length
//! ≥ 2)`. There are finitely many states, so a breadth-first sweep visits
//! all of them even when lengths are unbounded. For every state the two
//! smallest lengths reaching it are kept: the two smallest values of a union
//! of shifted sets come from the two smallest of each part, so this is exact
//! and enough to tell whether a family of factorizations has more than one
//! length.

use std::collections::HashMap;

use crate::associates::AssocData;
use crate::factor::bits::Bits;
use crate::factor::{FactorError, Factorization};
use crate::ring::{Elem, Ring};
use crate::taurel::{TauRelation, TauWitness};

/// Most states the exact sweep may create before falling back to a bounded
/// sweep.
pub const STATE_CAP: usize = 1 << 21;
/// Length bound used by the fallback sweep.
pub const DEFAULT_BOUND: usize = 6;

const NONE: u32 = u32::MAX;

#[derive(Debug, Clone)]
pub struct Letter {
    pub members: Vec<Elem>,
    /// `≈`-class shared by all members.
    pub class: u32,
    /// `x τ x` for members `x`.
    pub repeatable: bool,
}

#[derive(Debug, Clone, Copy)]
struct Parent {
    prev: u32,
    which: u8,
    letter: u32,
}

const NO_PARENT: Parent = Parent {
    prev: NONE,
    which: 0,
    letter: NONE,
};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
struct Key {
    set: Bits,
    prod: u32,
    long: bool,
}

#[derive(Debug)]
pub struct FactorIndex<'t> {
    tau: &'t TauRelation,
    letters: Vec<Letter>,
    /// `compat[l]`: letters `m ≠ l` whose members relate to members of `l`.
    compat: Vec<Bits>,
    letter_of: Vec<u32>,
    class_letters: bool,
    keys: Vec<Key>,
    /// Two smallest lengths per state; 0 marks an empty slot.
    lens: Vec<[u32; 2]>,
    parents: Vec<[Parent; 2]>,
    long_by_class: Vec<Vec<u32>>,
    bound: Option<usize>,
    saturated: bool,
}

/// True when `a τ b` and `b ≈ b'` always give `a τ b'`.
pub fn preserves_strong_associates(tau: &TauRelation) -> bool {
    let ring = tau.ring();
    let data = AssocData::get(ring);
    let sharp = ring.nonzero_nonunits();
    sharp.iter().all(|&a| {
        sharp.iter().filter(|&&b| tau.relates(a, b)).all(|&b| {
            data.class_members(data.class_of(b))
                .iter()
                .all(|&c| tau.relates(a, c))
        })
    })
}

impl<'t> FactorIndex<'t> {
    /// The exact index, or a bounded one when the exact sweep is too large.
    pub fn for_tau(tau: &'t TauRelation) -> FactorIndex<'t> {
        FactorIndex::for_tau_bounded(tau, DEFAULT_BOUND)
    }

    /// Like [`FactorIndex::for_tau`] with an explicit fallback bound.
    pub fn for_tau_bounded(tau: &'t TauRelation, fallback: usize) -> FactorIndex<'t> {
        match FactorIndex::build(tau, None, STATE_CAP) {
            Ok(index) => index,
            Err(_) => FactorIndex::build(tau, Some(fallback.max(2)), usize::MAX)
                .expect("bounded sweep has no state cap"),
        }
    }

    /// Sweeps all states, or only those of length at most `bound`.
    pub fn build(tau: &'t TauRelation, bound: Option<usize>, cap: usize) -> Result<FactorIndex<'t>, FactorError> {
        let ring = tau.ring();
        let data = AssocData::get(ring);
        let sharp = ring.nonzero_nonunits();
        let class_letters = preserves_strong_associates(tau);

        let mut letters = Vec::new();
        if class_letters {
            for (id, members) in data.classes().iter().enumerate() {
                let rep = members[0];
                if rep != 0 && !ring.is_unit(rep) {
                    letters.push(Letter {
                        members: members.clone(),
                        class: id as u32,
                        repeatable: tau.relates(rep, rep),
                    });
                }
            }
        } else {
            for &x in sharp {
                letters.push(Letter {
                    members: vec![x],
                    class: data.class_of(x),
                    repeatable: tau.relates(x, x),
                });
            }
        }
        let nl = letters.len();
        let mut letter_of = vec![NONE; ring.order() as usize];
        for (i, l) in letters.iter().enumerate() {
            for &m in &l.members {
                letter_of[m as usize] = i as u32;
            }
        }
        let compat: Vec<Bits> = (0..nl)
            .map(|i| {
                let mut b = Bits::new(nl);
                for j in 0..nl {
                    if i != j && tau.relates(letters[i].members[0], letters[j].members[0]) {
                        b.insert(j);
                    }
                }
                b
            })
            .collect();

        let mut index = FactorIndex {
            tau,
            letters,
            compat,
            letter_of,
            class_letters,
            keys: Vec::new(),
            lens: Vec::new(),
            parents: Vec::new(),
            long_by_class: vec![Vec::new(); data.classes().len()],
            bound,
            saturated: false,
        };
        index.sweep(data, cap)?;
        for (id, key) in index.keys.iter().enumerate() {
            if key.long {
                index.long_by_class[key.prod as usize].push(id as u32);
            }
        }
        Ok(index)
    }

    fn sweep(&mut self, data: &AssocData, cap: usize) -> Result<(), FactorError> {
        let nl = self.letters.len();
        let mut map: HashMap<Key, u32> = HashMap::new();
        let mut current: Vec<(u32, u8)> = Vec::new();
        for l in 0..nl {
            let mut set = Bits::new(nl);
            set.insert(l);
            let key = Key {
                set,
                prod: self.letters[l].class,
                long: false,
            };
            let id = self.keys.len() as u32;
            map.insert(key.clone(), id);
            self.keys.push(key);
            self.lens.push([1, 0]);
            self.parents.push([
                Parent {
                    prev: NONE,
                    which: 0,
                    letter: l as u32,
                },
                NO_PARENT,
            ]);
            current.push((id, 0));
        }
        let mut len = 1u32;
        while !current.is_empty() {
            if let Some(b) = self.bound {
                if len as usize >= b {
                    self.saturated = current
                        .iter()
                        .any(|&(id, _)| (0..nl).any(|l| self.allowed(&self.keys[id as usize].set, l)));
                    break;
                }
            }
            let mut next = Vec::new();
            for &(id, which) in &current {
                let set = self.keys[id as usize].set.clone();
                let prod = self.keys[id as usize].prod;
                for l in 0..nl {
                    if !self.allowed(&set, l) {
                        continue;
                    }
                    let mut grown = set.clone();
                    grown.insert(l);
                    let key = Key {
                        set: grown,
                        prod: data.class_mul(prod, self.letters[l].class),
                        long: true,
                    };
                    let parent = Parent {
                        prev: id,
                        which,
                        letter: l as u32,
                    };
                    let new_len = len + 1;
                    match map.get(&key) {
                        Some(&k) => {
                            let slot = &mut self.lens[k as usize];
                            if slot[0] == new_len || slot[1] != 0 {
                                continue;
                            }
                            slot[1] = new_len;
                            self.parents[k as usize][1] = parent;
                            next.push((k, 1));
                        }
                        None => {
                            if self.keys.len() >= cap {
                                return Err(FactorError::Budget { states: cap });
                            }
                            let k = self.keys.len() as u32;
                            map.insert(key.clone(), k);
                            self.keys.push(key);
                            self.lens.push([new_len, 0]);
                            self.parents.push([parent, NO_PARENT]);
                            next.push((k, 0));
                        }
                    }
                }
            }
            current = next;
            len += 1;
        }
        Ok(())
    }

    #[inline]
    fn allowed(&self, set: &Bits, l: usize) -> bool {
        if set.contains(l) {
            self.letters[l].repeatable
        } else {
            set.is_subset(&self.compat[l])
        }
    }

    pub fn tau(&self) -> &'t TauRelation {
        self.tau
    }

    pub fn ring(&self) -> &'t Ring {
        self.tau.ring()
    }

    /// `Some(L)` when only factorizations of length at most `L` were swept.
    pub fn bound(&self) -> Option<usize> {
        self.bound
    }

    /// In a bounded index: some factorization of length `L` extends further.
    pub fn saturated(&self) -> bool {
        self.saturated
    }

    pub fn uses_class_letters(&self) -> bool {
        self.class_letters
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn state_count(&self) -> usize {
        self.keys.len()
    }

    pub fn letter_of(&self, a: Elem) -> Option<u32> {
        let l = self.letter_of[a as usize];
        (l != NONE).then_some(l)
    }

    pub fn compatible(&self, l: u32, m: u32) -> bool {
        if l == m {
            self.letters[l as usize].repeatable
        } else {
            self.compat[l as usize].contains(m as usize)
        }
    }

    /// Letters satisfying `pred`.
    pub fn letters_where(&self, pred: impl Fn(&Letter) -> bool) -> Bits {
        let mut b = Bits::new(self.letters.len());
        for (i, l) in self.letters.iter().enumerate() {
            if pred(l) {
                b.insert(i);
            }
        }
        b
    }

    /// States of non-trivial factorizations whose product lies in `class`.
    pub fn long_keys(&self, class: u32) -> &[u32] {
        &self.long_by_class[class as usize]
    }

    pub fn key_letters(&self, key: u32) -> &Bits {
        &self.keys[key as usize].set
    }

    /// The (at most two) smallest lengths recorded for a state.
    pub fn key_lengths(&self, key: u32) -> impl Iterator<Item = u32> + '_ {
        self.lens[key as usize].iter().copied().filter(|&l| l != 0)
    }

    pub fn has_nontrivial(&self, class: u32) -> bool {
        !self.long_by_class[class as usize].is_empty()
    }

    /// First non-trivial state for `class` whose letter set passes `pred`.
    pub fn find_key(&self, class: u32, pred: impl Fn(&Bits) -> bool) -> Option<u32> {
        self.long_keys(class).iter().copied().find(|&k| pred(self.key_letters(k)))
    }

    /// Letters occurring in some non-trivial factorization of `class`.
    pub fn nontrivial_letters(&self, class: u32) -> Bits {
        let mut out = Bits::new(self.letters.len());
        for &k in self.long_keys(class) {
            out.union_with(self.key_letters(k));
        }
        out
    }

    /// Elements `b` with `b ∣_τ a` through a non-trivial factorization.
    pub fn nontrivial_divisors(&self, a: Elem) -> Vec<Elem> {
        let class = AssocData::get(self.ring()).class_of(a);
        let mut out: Vec<Elem> = self
            .nontrivial_letters(class)
            .iter()
            .flat_map(|l| self.letters[l].members.iter().copied())
            .collect();
        out.sort_unstable();
        out
    }

    /// The letter sequence along the recorded path to a state.
    pub fn letter_path(&self, key: u32, which: u8) -> Vec<u32> {
        let mut out = Vec::new();
        let (mut k, mut w) = (key, which);
        while k != NONE {
            let p = self.parents[k as usize][w as usize];
            out.push(p.letter);
            k = p.prev;
            w = p.which;
        }
        out.reverse();
        out
    }

    /// Turns a letter multiset whose product is `≈ target` into a concrete
    /// factorization. `prefer` pins the member used for the first occurrence
    /// of a letter.
    pub fn realize(&self, letters: &[u32], target: Elem, prefer: &[(u32, Elem)]) -> Factorization {
        let ring = self.ring();
        let mut pinned: Vec<(u32, Elem)> = prefer.to_vec();
        let mut factors: Vec<Elem> = letters
            .iter()
            .map(|&l| match pinned.iter().position(|&(pl, _)| pl == l) {
                Some(i) => pinned.swap_remove(i).1,
                None => self.letters[l as usize].members[0],
            })
            .collect();
        factors.sort_unstable();
        let product = ring.product(factors.iter().copied());
        let lambda = ring
            .units()
            .iter()
            .copied()
            .find(|&u| ring.mul(u, product) == target)
            .expect("letter product is a strong associate of the target");
        Factorization {
            target,
            lambda,
            factors,
        }
    }

    /// A factorization of `target` along the path recorded for a state.
    pub fn witness(&self, key: u32, which: u8, target: Elem, prefer: &[(u32, Elem)]) -> Factorization {
        self.realize(&self.letter_path(key, which), target, prefer)
    }

    /// Visits each letter multiset with length in `min..=max`, letters drawn
    /// from `allowed`, pairwise compatible, and product in `class`. Stops when
    /// `visit` returns false.
    pub fn for_each_multiset(
        &self,
        class: u32,
        allowed: &Bits,
        min: usize,
        max: usize,
        mut visit: impl FnMut(&[u32]) -> bool,
    ) {
        let data = AssocData::get(self.ring());
        let candidates: Vec<u32> = allowed.iter().map(|l| l as u32).collect();
        let one = data.class_of(self.ring().one());
        let mut stack = Vec::new();
        let mut used = Bits::new(self.letters.len());
        self.multiset_dfs(
            data,
            &candidates,
            0,
            one,
            class,
            min,
            max,
            &mut stack,
            &mut used,
            &mut visit,
        );
    }

    #[allow(clippy::too_many_arguments)]
    fn multiset_dfs(
        &self,
        data: &AssocData,
        candidates: &[u32],
        start: usize,
        prod: u32,
        class: u32,
        min: usize,
        max: usize,
        stack: &mut Vec<u32>,
        used: &mut Bits,
        visit: &mut impl FnMut(&[u32]) -> bool,
    ) -> bool {
        if stack.len() >= min && prod == class && !visit(stack) {
            return false;
        }
        if stack.len() == max {
            return true;
        }
        for (i, &l) in candidates.iter().enumerate().skip(start) {
            if !self.allowed(used, l as usize) {
                continue;
            }
            let fresh = !used.contains(l as usize);
            if fresh {
                used.insert(l as usize);
            }
            stack.push(l);
            let next = data.class_mul(prod, self.letters[l as usize].class);
            let go_on = self.multiset_dfs(data, candidates, i, next, class, min, max, stack, used, visit);
            stack.pop();
            if fresh {
                used.remove(l as usize);
            }
            if !go_on {
                return false;
            }
        }
        true
    }

    /// A refinement that breaks τ, if one exists.
    ///
    /// Refining replaces factors by non-trivial τ-factorizations of
    /// themselves. Every failing pair lives in two blocks, so it suffices to
    /// look at two-factor factorizations `x·y` and check that every
    /// non-trivial divisor of `x` (or `x` itself) relates to every one of
    /// `y` (or `y` itself).
    pub fn refinable_witness(&self) -> Option<TauWitness> {
        let ring = self.ring();
        let tau = self.tau;
        let sharp = ring.nonzero_nonunits();
        let mut divisors: HashMap<Elem, Vec<Elem>> = HashMap::new();
        let mut divisors_of = |x: Elem| -> Vec<Elem> {
            divisors
                .entry(x)
                .or_insert_with(|| {
                    let mut d = self.nontrivial_divisors(x);
                    if !d.contains(&x) {
                        d.push(x);
                        d.sort_unstable();
                    }
                    d
                })
                .clone()
        };
        for &x in sharp {
            for &y in sharp.iter().filter(|&&y| y >= x && tau.relates(x, y)) {
                let dx = divisors_of(x);
                let dy = divisors_of(y);
                for &b in &dx {
                    for &c in &dy {
                        if tau.relates(b, c) {
                            continue;
                        }
                        let mut refined = self.block_containing(x, b);
                        refined.extend(self.block_containing(y, c));
                        refined.sort_unstable();
                        return Some(TauWitness::Refine {
                            factors: vec![x, y],
                            refined,
                        });
                    }
                }
            }
        }
        None
    }

    /// `[x]` when `b = x`, else the factors of a non-trivial factorization of
    /// `x` that uses `b`.
    fn block_containing(&self, x: Elem, b: Elem) -> Vec<Elem> {
        if b == x {
            return vec![x];
        }
        let data = AssocData::get(self.ring());
        let lb = self.letter_of(b).expect("divisor lies in R#");
        let key = self
            .find_key(data.class_of(x), |s| s.contains(lb as usize))
            .expect("divisor came from some state");
        self.witness(key, 0, x, &[(lb, b)]).factors
    }
}
