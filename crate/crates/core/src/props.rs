//! Ring-level finite factorization properties of a pair `(R, τ)`:
//! α-atomic, ACCP and τ-ACCP, BFR, FFR, WFFR, df, HFR and UFR, plus the
//! implication diagram between them and the closed-form criteria for `τ_z`
//! and `τ_z^Δ`.
//!
//! In a finite ring every factorization property reduces to finite data
//! except unbounded lengths, and lengths are unbounded exactly when some
//! `x τ x` (then `x^m` for infinitely many `m` takes some value infinitely
//! often). Without such `x` no factor repeats and every length is at most
//! `|R#|`. So BFR and FFR are decided exactly, and the state index gives the
//! remaining properties exactly as well.

use std::collections::{HashMap, HashSet};
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::associates::{AssocData, AssocKind};
use crate::factor::bits::Bits;
use crate::factor::index::FactorIndex;
use crate::factor::Factorization;
use crate::irr::{classify_all, Flavor, IrrFlags};
use crate::ring::{Elem, Ring};
use crate::taurel::{TauProperty, TauRelation};
use crate::verdict::Verdict;
use crate::zdgraph::ZdGraph;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum AlphaKind {
    Atomic,
    StronglyAtomic,
    MAtomic,
    VeryStronglyAtomic,
}

impl AlphaKind {
    pub const ALL: [AlphaKind; 4] = [
        AlphaKind::Atomic,
        AlphaKind::StronglyAtomic,
        AlphaKind::MAtomic,
        AlphaKind::VeryStronglyAtomic,
    ];

    pub fn flavor(self) -> Flavor {
        match self {
            AlphaKind::Atomic => Flavor::Irreducible,
            AlphaKind::StronglyAtomic => Flavor::Strong,
            AlphaKind::MAtomic => Flavor::M,
            AlphaKind::VeryStronglyAtomic => Flavor::VeryStrong,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            AlphaKind::Atomic => "atomic",
            AlphaKind::StronglyAtomic => "strongly_atomic",
            AlphaKind::MAtomic => "m_atomic",
            AlphaKind::VeryStronglyAtomic => "very_strongly_atomic",
        }
    }
}

impl fmt::Display for AlphaKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for AlphaKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "atomic" => Ok(AlphaKind::Atomic),
            "strongly_atomic" | "strong" => Ok(AlphaKind::StronglyAtomic),
            "m_atomic" | "m" => Ok(AlphaKind::MAtomic),
            "very_strongly_atomic" | "very_strong" | "vs" => Ok(AlphaKind::VeryStronglyAtomic),
            other => Err(format!("unknown atomicity `{other}`")),
        }
    }
}

/// How factorizations or divisors are identified when counting: raw
/// (the "strong" variants) or up to an associate relation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Counting {
    Raw,
    UpTo(AssocKind),
}

impl fmt::Display for Counting {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Counting::Raw => f.write_str("raw"),
            Counting::UpTo(k) => write!(f, "{k}"),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ElemCount {
    pub elem: Elem,
    pub count: u64,
}

#[derive(Debug, Clone, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum PropWitness {
    /// A non-unit with no τ-α-factorization.
    NotAtomic { elem: Elem },
    /// `x τ x` and `target = x^m` for both exponents, hence for infinitely
    /// many.
    Pumping { target: Elem, factor: Elem, exponents: [usize; 2] },
    /// Two τ-α-factorizations of different lengths.
    Lengths { first: Factorization, second: Factorization },
    /// Two τ-α-factorizations of equal length that no rearrangement matches.
    Unmatched { first: Factorization, second: Factorization },
    /// Longest non-trivial factorization length per `≈`-class representative.
    Bounds { bounds: Vec<ElemCount> },
    /// Counts per `≈`-class representative with a non-zero count.
    Counts { counts: Vec<ElemCount> },
    /// A longest strictly ascending τ-divisor chain, by generator.
    Chain { length: usize, chain: Vec<Elem> },
}

impl PropWitness {
    pub fn describe(&self, ring: &Ring) -> String {
        let f = |a: Elem| ring.format_elem(a);
        let counts = |v: &[ElemCount]| {
            v.iter()
                .map(|c| format!("{}: {}", f(c.elem), c.count))
                .collect::<Vec<_>>()
                .join(", ")
        };
        match self {
            PropWitness::NotAtomic { elem } => format!("{} has no such factorization", f(*elem)),
            PropWitness::Pumping {
                target,
                factor,
                exponents,
            } => {
                let pow = |m: usize| vec![f(*factor); m].join("·");
                format!(
                    "{} = {} = {}",
                    f(*target),
                    pow(exponents[0]),
                    pow(exponents[1])
                )
            }
            PropWitness::Lengths { first, second } | PropWitness::Unmatched { first, second } => {
                format!("{} and {}", first.describe(ring), second.describe(ring))
            }
            PropWitness::Bounds { bounds } => format!("N: {}", counts(bounds)),
            PropWitness::Counts { counts: c } => counts(c),
            PropWitness::Chain { length, chain } => {
                let gens: Vec<String> = chain.iter().map(|&a| format!("({})", f(a))).collect();
                format!("length {length}: {}", gens.join(" ⊊ "))
            }
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct PropVerdict {
    pub property: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub alpha: Option<AlphaKind>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counting: Option<Counting>,
    pub verdict: Verdict,
    pub witness: Option<PropWitness>,
}

impl PropVerdict {
    pub fn label(&self) -> String {
        let mut s = self.property.to_string();
        match self.alpha {
            Some(a) if self.property == "atomic" => s = a.to_string(),
            Some(a) => s = format!("{a}-{s}"),
            None => {}
        }
        if let Some(c) = self.counting {
            s = format!("{s}({c})");
        }
        s
    }
}

/// An arrow of the implication diagram that fails.
#[derive(Debug, Clone, Serialize)]
pub struct Violation {
    pub arrow: &'static str,
    pub alpha: AlphaKind,
    pub beta: AssocKind,
    pub source: Verdict,
    pub target: Verdict,
}

/// A closed-form criterion compared with the definitional verdict.
#[derive(Debug, Clone, Serialize)]
pub struct CrossCheck {
    pub name: &'static str,
    pub definitional: bool,
    pub criterion: bool,
}

impl CrossCheck {
    pub fn agrees(&self) -> bool {
        self.definitional == self.criterion
    }
}

/// Evaluates properties of one `(R, τ)` from a single factorization index.
pub struct Evaluator<'t> {
    tau: &'t TauRelation,
    index: FactorIndex<'t>,
    flags: Vec<IrrFlags>,
    /// Flags per `≈`-class of non-units.
    class_flags: Vec<Option<usize>>,
}

const SINGULAR: u64 = 1 << 40;
/// Cap on the clique census.
pub const CENSUS_CAP: u64 = 1_000_000;

impl<'t> Evaluator<'t> {
    pub fn new(tau: &'t TauRelation) -> Evaluator<'t> {
        Evaluator::from_index(FactorIndex::for_tau(tau))
    }

    /// `fallback` bounds factorization length only when the exact index
    /// would be too large.
    pub fn with_fallback(tau: &'t TauRelation, fallback: usize) -> Evaluator<'t> {
        Evaluator::from_index(FactorIndex::for_tau_bounded(tau, fallback))
    }

    fn from_index(index: FactorIndex<'t>) -> Evaluator<'t> {
        let tau = index.tau();
        let flags = classify_all(&index);
        let data = AssocData::get(tau.ring());
        let mut class_flags = vec![None; data.classes().len()];
        for (i, f) in flags.iter().enumerate() {
            class_flags[data.class_of(f.elem) as usize].get_or_insert(i);
        }
        Evaluator {
            tau,
            index,
            flags,
            class_flags,
        }
    }

    pub fn tau(&self) -> &'t TauRelation {
        self.tau
    }

    pub fn ring(&self) -> &'t Ring {
        self.tau.ring()
    }

    pub fn index(&self) -> &FactorIndex<'t> {
        &self.index
    }

    pub fn flags(&self) -> &[IrrFlags] {
        &self.flags
    }

    fn data(&self) -> &'t AssocData {
        AssocData::get(self.tau.ring())
    }

    fn bound(&self) -> Option<usize> {
        self.index.bound()
    }

    /// Whether the non-unit `a` is τ-α.
    pub fn is_alpha(&self, alpha: AlphaKind, a: Elem) -> bool {
        let c = self.data().class_of(a) as usize;
        let i = self.class_flags[c].expect("non-unit");
        self.flags[i].get(alpha.flavor())
    }

    fn alpha_letters(&self, alpha: AlphaKind) -> Bits {
        self.index.letters_where(|l| self.is_alpha(alpha, l.members[0]))
    }

    /// One representative per `≈`-class of non-units.
    fn class_reps(&self) -> Vec<Elem> {
        let data = self.data();
        data.classes()
            .iter()
            .map(|c| c[0])
            .filter(|&a| !self.ring().is_unit(a))
            .collect()
    }

    fn verdict(&self, witness: &Option<PropWitness>) -> Verdict {
        Verdict::from_bool(witness.is_none()).bounded(self.bound())
    }

    /// A non-trivial τ-α-factorization of `a`, as a state id.
    fn alpha_key(&self, a: Elem, letters: &Bits) -> Option<u32> {
        self.index
            .find_key(self.data().class_of(a), |s| s.is_subset(letters))
    }

    pub fn atomic(&self, alpha: AlphaKind) -> PropVerdict {
        let letters = self.alpha_letters(alpha);
        let bad = self
            .class_reps()
            .into_iter()
            .find(|&a| !self.is_alpha(alpha, a) && self.alpha_key(a, &letters).is_none());
        let witness = bad.map(|elem| PropWitness::NotAtomic { elem });
        PropVerdict {
            property: "atomic",
            alpha: Some(alpha),
            counting: None,
            verdict: self.verdict(&witness),
            witness,
        }
    }

    /// Every ascending chain of principal ideals stabilizes: always, as there
    /// are finitely many.
    pub fn accp(&self) -> PropVerdict {
        PropVerdict {
            property: "accp",
            alpha: None,
            counting: None,
            verdict: Verdict::Yes,
            witness: None,
        }
    }

    /// Longest chain `(a₁) ⊊ (a₂) ⊊ ⋯` where each `a_{i+1}` is a τ-divisor
    /// of the previous term (steps that keep the ideal are free).
    pub fn longest_tau_chain(&self) -> (usize, Vec<Elem>) {
        let ring = self.ring();
        let data = self.data();
        let reps = self.class_reps();
        let mut order: Vec<(usize, Elem)> = reps
            .iter()
            .map(|&a| (ring.principal_ideal(a).len(), a))
            .collect();
        order.sort_by(|x, y| y.cmp(x));
        let nclass = data.classes().len();
        let mut best = vec![0usize; nclass];
        let mut next: Vec<Option<Elem>> = vec![None; nclass];
        // same-ideal divisor moves, handled by iterating to a fixed point
        // inside each ideal
        let divisors = |a: Elem| -> Vec<Elem> {
            let mut d: Vec<Elem> = self
                .index
                .nontrivial_letters(data.class_of(a))
                .iter()
                .map(|l| self.index.letters()[l].members[0])
                .collect();
            d.push(a);
            d
        };
        let mut i = 0;
        while i < order.len() {
            let ideal = data.ideal_of(order[i].1);
            let mut j = i;
            while j < order.len() && data.ideal_of(order[j].1) == ideal {
                j += 1;
            }
            let group: Vec<Elem> = order[i..j].iter().map(|&(_, a)| a).collect();
            for &a in &group {
                for b in divisors(a) {
                    if data.ideal_strictly_within(a, b) {
                        let cand = best[data.class_of(b) as usize] + 1;
                        if cand > best[data.class_of(a) as usize] {
                            best[data.class_of(a) as usize] = cand;
                            next[data.class_of(a) as usize] = Some(b);
                        }
                    }
                }
            }
            let mut changed = true;
            while changed {
                changed = false;
                for &a in &group {
                    for b in divisors(a) {
                        if data.ideal_of(b) == ideal {
                            let (ca, cb) = (data.class_of(a) as usize, data.class_of(b) as usize);
                            if best[cb] > best[ca] {
                                best[ca] = best[cb];
                                next[ca] = Some(b);
                                changed = true;
                            }
                        }
                    }
                }
            }
            i = j;
        }
        let Some(&start) = reps.iter().max_by_key(|&&a| (best[data.class_of(a) as usize], std::cmp::Reverse(a)))
        else {
            return (0, Vec::new());
        };
        let length = best[data.class_of(start) as usize];
        let mut chain = vec![start];
        let mut cur = start;
        while let Some(b) = next[data.class_of(cur) as usize] {
            if data.ideal_strictly_within(cur, b) {
                chain.push(b);
            }
            cur = b;
        }
        (length, chain)
    }

    pub fn tau_accp(&self) -> PropVerdict {
        let (length, chain) = self.longest_tau_chain();
        PropVerdict {
            property: "tau_accp",
            alpha: None,
            counting: None,
            verdict: Verdict::Yes,
            witness: Some(PropWitness::Chain { length, chain }),
        }
    }

    fn pumping(&self) -> Option<PropWitness> {
        let ring = self.ring();
        let x = self.tau.reflexive_point()?;
        let mut seen: HashMap<Elem, usize> = HashMap::new();
        let mut p = ring.mul(x, x);
        let mut m = 2;
        loop {
            if let Some(&m0) = seen.get(&p) {
                return Some(PropWitness::Pumping {
                    target: p,
                    factor: x,
                    exponents: [m0, m],
                });
            }
            seen.insert(p, m);
            p = ring.mul(p, x);
            m += 1;
        }
    }

    /// Longest non-trivial factorization of `a` (0 when there is none).
    /// Only meaningful when τ is irreflexive, where lengths are set sizes.
    pub fn longest_nontrivial(&self, a: Elem) -> usize {
        self.index
            .long_keys(self.data().class_of(a))
            .iter()
            .flat_map(|&k| self.index.key_lengths(k))
            .max()
            .unwrap_or(0) as usize
    }

    pub fn bfr(&self) -> PropVerdict {
        let witness = self.pumping().or_else(|| {
            let bounds = self
                .class_reps()
                .into_iter()
                .map(|a| ElemCount {
                    elem: a,
                    count: self.longest_nontrivial(a) as u64,
                })
                .collect();
            Some(PropWitness::Bounds { bounds })
        });
        let holds = !matches!(witness, Some(PropWitness::Pumping { .. }));
        PropVerdict {
            property: "bfr",
            alpha: None,
            counting: None,
            verdict: Verdict::from_bool(holds),
            witness,
        }
    }

    fn beta_key(&self, kind: AssocKind, a: Elem) -> u64 {
        let data = self.data();
        match kind {
            AssocKind::Associate => data.ideal_of(a) as u64,
            AssocKind::Strong => data.class_of(a) as u64,
            AssocKind::VeryStrong if data.self_cong(a) => data.ideal_of(a) as u64,
            AssocKind::VeryStrong => SINGULAR | a as u64,
        }
    }

    /// Non-trivial factorizations of each class representative, counted raw
    /// or up to β (at most `cap`).
    pub fn factorization_counts(&self, counting: Counting, cap: u64) -> Vec<ElemCount> {
        let mut out = Vec::new();
        for a in self.class_reps() {
            let class = self.data().class_of(a);
            let mut seen: HashSet<Vec<u64>> = HashSet::new();
            let mut raw = 0u64;
            for &k in self.index.long_keys(class) {
                let letters: Vec<usize> = self.index.key_letters(k).iter().collect();
                let members: Vec<&[Elem]> = letters
                    .iter()
                    .map(|&l| self.index.letters()[l].members.as_slice())
                    .collect();
                match counting {
                    Counting::Raw => {
                        let n = members.iter().fold(1u64, |acc, m| acc.saturating_mul(m.len() as u64));
                        raw = raw.saturating_add(n).min(cap);
                    }
                    Counting::UpTo(kind) => {
                        // each letter contributes its distinct β-keys
                        let mut partial: Vec<Vec<u64>> = vec![Vec::new()];
                        for m in &members {
                            let mut keys: Vec<u64> = m.iter().map(|&x| self.beta_key(kind, x)).collect();
                            keys.sort_unstable();
                            keys.dedup();
                            partial = partial
                                .into_iter()
                                .flat_map(|p| {
                                    keys.iter().map(move |&key| {
                                        let mut q = p.clone();
                                        q.push(key);
                                        q
                                    })
                                })
                                .collect();
                            if partial.len() as u64 > cap {
                                break;
                            }
                        }
                        for mut p in partial {
                            p.sort_unstable();
                            seen.insert(p);
                        }
                    }
                }
                if raw >= cap || seen.len() as u64 >= cap {
                    break;
                }
            }
            let count = match counting {
                Counting::Raw => raw,
                Counting::UpTo(_) => (seen.len() as u64).min(cap),
            };
            if count > 0 {
                out.push(ElemCount { elem: a, count });
            }
        }
        out
    }

    /// Finitely many non-trivial factorizations per element. Infinitely many
    /// exist exactly when lengths are unbounded, whatever the counting.
    pub fn ffr(&self, counting: Counting) -> PropVerdict {
        let witness = self.pumping().or_else(|| {
            Some(PropWitness::Counts {
                counts: self.factorization_counts(counting, u64::MAX),
            })
        });
        let holds = !matches!(witness, Some(PropWitness::Pumping { .. }));
        PropVerdict {
            property: "ffr",
            alpha: None,
            counting: Some(counting),
            verdict: Verdict::from_bool(holds),
            witness,
        }
    }

    fn divisor_counts(&self, counting: Counting, alpha: Option<AlphaKind>) -> Vec<ElemCount> {
        let mut out = Vec::new();
        for a in self.class_reps() {
            let divisors = self.index.nontrivial_divisors(a);
            let keys: HashSet<u64> = divisors
                .iter()
                .filter(|&&b| alpha.is_none_or(|al| self.is_alpha(al, b)))
                .map(|&b| match counting {
                    Counting::Raw => b as u64,
                    Counting::UpTo(kind) => self.beta_key(kind, b),
                })
                .collect();
            if !keys.is_empty() {
                out.push(ElemCount {
                    elem: a,
                    count: keys.len() as u64,
                });
            }
        }
        out
    }

    /// Finitely many non-trivial τ-divisors: always, the ring being finite.
    pub fn wffr(&self, counting: Counting) -> PropVerdict {
        PropVerdict {
            property: "wffr",
            alpha: None,
            counting: Some(counting),
            verdict: Verdict::Yes,
            witness: Some(PropWitness::Counts {
                counts: self.divisor_counts(counting, None),
            }),
        }
    }

    /// Finitely many non-trivial τ-α τ-divisors: always.
    pub fn df(&self, alpha: AlphaKind, counting: Counting) -> PropVerdict {
        PropVerdict {
            property: "df",
            alpha: Some(alpha),
            counting: Some(counting),
            verdict: Verdict::Yes,
            witness: Some(PropWitness::Counts {
                counts: self.divisor_counts(counting, Some(alpha)),
            }),
        }
    }

    /// Two τ-α-factorizations of `a` of different lengths, if any. The
    /// trivial factorization has length 1 and counts when `a` is τ-α.
    fn length_witness(&self, alpha: AlphaKind, a: Elem, letters: &Bits) -> Option<PropWitness> {
        let class = self.data().class_of(a);
        let mut found: Vec<(u32, u32, u8)> = Vec::new();
        if self.is_alpha(alpha, a) {
            found.push((1, u32::MAX, 0));
        }
        for &k in self.index.long_keys(class) {
            if !self.index.key_letters(k).is_subset(letters) {
                continue;
            }
            for (which, len) in self.index.key_lengths(k).enumerate() {
                if found.iter().all(|&(l, _, _)| l != len) {
                    found.push((len, k, which as u8));
                }
                if found.len() >= 2 {
                    let make = |(len, k, which): (u32, u32, u8)| {
                        if k == u32::MAX {
                            debug_assert_eq!(len, 1);
                            trivial(self.ring(), a)
                        } else {
                            self.index.witness(k, which, a, &[])
                        }
                    };
                    return Some(PropWitness::Lengths {
                        first: make(found[0]),
                        second: make(found[1]),
                    });
                }
            }
        }
        None
    }

    pub fn hfr(&self, alpha: AlphaKind) -> PropVerdict {
        let atomic = self.atomic(alpha);
        let witness = if atomic.verdict.is_no() {
            atomic.witness
        } else {
            let letters = self.alpha_letters(alpha);
            self.class_reps()
                .into_iter()
                .find_map(|a| self.length_witness(alpha, a, &letters))
        };
        PropVerdict {
            property: "hfr",
            alpha: Some(alpha),
            counting: None,
            verdict: self.verdict(&witness),
            witness,
        }
    }

    /// Two τ-α-factorizations of `a` of the same length that are not
    /// β-matched, assuming all have the same length.
    fn unmatched_witness(&self, alpha: AlphaKind, beta: AssocKind, a: Elem, letters: &Bits) -> Option<PropWitness> {
        let ring = self.ring();
        let data = self.data();
        if self.is_alpha(alpha, a) {
            // only trivial factorizations, one per member of the class
            let class = data.class_members(data.class_of(a));
            if class.len() <= 1 || self.beta_key(beta, a) & SINGULAR == 0 {
                return None;
            }
            let other = *class.iter().find(|&&b| b != a).unwrap();
            return Some(PropWitness::Unmatched {
                first: trivial(ring, a),
                second: Factorization {
                    target: a,
                    lambda: crate::factor::unit_between(ring, a, other).unwrap(),
                    factors: vec![other],
                },
            });
        }
        let class = data.class_of(a);
        let n = self
            .index
            .long_keys(class)
            .iter()
            .filter(|&&k| self.index.key_letters(k).is_subset(letters))
            .flat_map(|&k| self.index.key_lengths(k))
            .min()?;
        let letter_key = |l: u32| self.beta_key(beta, self.index.letters()[l as usize].members[0]);
        let mut first: Option<(Vec<u32>, Vec<u64>)> = None;
        let mut raw = 0u128;
        let mut result = None;
        self.index.for_each_multiset(class, letters, n as usize, n as usize, |ms| {
            let mut keys: Vec<u64> = ms.iter().map(|&l| letter_key(l)).collect();
            keys.sort_unstable();
            raw = raw.saturating_add(raw_count(&self.index, ms));
            match &first {
                None => {
                    first = Some((ms.to_vec(), keys));
                }
                Some((f, fk)) => {
                    if *fk != keys {
                        result = Some((f.clone(), ms.to_vec()));
                        return false;
                    }
                }
            }
            true
        });
        if let Some((f, s)) = result {
            return Some(PropWitness::Unmatched {
                first: self.index.realize(&f, a, &[]),
                second: self.index.realize(&s, a, &[]),
            });
        }
        let (ms, keys) = first?;
        if raw <= 1 || keys.iter().all(|&k| k & SINGULAR == 0) {
            return None;
        }
        // matching keys but some factor is not `≅` to itself: two
        // realizations differing somewhere are unmatched
        let mut all: Vec<Vec<u32>> = Vec::new();
        self.index.for_each_multiset(class, letters, n as usize, n as usize, |m| {
            all.push(m.to_vec());
            all.len() < 2
        });
        if all.len() >= 2 {
            return Some(PropWitness::Unmatched {
                first: self.index.realize(&all[0], a, &[]),
                second: self.index.realize(&all[1], a, &[]),
            });
        }
        let l = *ms
            .iter()
            .find(|&&l| self.index.letters()[l as usize].members.len() > 1)
            .expect("raw count above one needs a letter with two members");
        let alt = self.index.letters()[l as usize].members[1];
        Some(PropWitness::Unmatched {
            first: self.index.realize(&ms, a, &[]),
            second: self.index.realize(&ms, a, &[(l, alt)]),
        })
    }

    pub fn ufr(&self, alpha: AlphaKind, beta: AssocKind) -> PropVerdict {
        let hfr = self.hfr(alpha);
        let witness = if hfr.verdict.is_no() {
            hfr.witness
        } else {
            let letters = self.alpha_letters(alpha);
            self.class_reps()
                .into_iter()
                .find_map(|a| self.unmatched_witness(alpha, beta, a, &letters))
        };
        PropVerdict {
            property: "ufr",
            alpha: Some(alpha),
            counting: Some(Counting::UpTo(beta)),
            verdict: self.verdict(&witness),
            witness,
        }
    }

    /// Refinable and associate preserving: the side condition of the starred
    /// arrows.
    pub fn star(&self) -> bool {
        self.tau.check_property(TauProperty::Refinable).verdict.holds()
            && self
                .tau
                .check_property(TauProperty::AssociatePreserving(AssocKind::Associate))
                .verdict
                .holds()
    }

    /// Arrows of the implication diagram between the properties that fail
    /// for this `(α, β)`.
    pub fn diagram(&self, alpha: AlphaKind, beta: AssocKind) -> Vec<Violation> {
        self.diagram_with(alpha, beta, self.star())
    }

    fn diagram_with(&self, alpha: AlphaKind, beta: AssocKind, star: bool) -> Vec<Violation> {
        let by = Counting::UpTo(beta);
        let ufr = self.ufr(alpha, beta).verdict;
        let hfr = self.hfr(alpha).verdict;
        let bfr = self.bfr().verdict;
        let ffr = self.ffr(by).verdict;
        let wffr = self.wffr(by).verdict;
        let df = self.df(alpha, by).verdict;
        let atomic = self.atomic(alpha).verdict;
        let tau_accp = self.tau_accp().verdict;
        let accp = self.accp().verdict;
        let both = Verdict::and;

        let arrows: [(&'static str, bool, Verdict, Verdict); 11] = [
            ("ufr => hfr", true, ufr, hfr),
            ("hfr => bfr", star, hfr, bfr),
            ("ufr => ffr", star, ufr, ffr),
            ("ffr => bfr", true, ffr, bfr),
            ("ffr => wffr", true, ffr, wffr),
            ("wffr => df", true, wffr, df),
            ("wffr => atomic and df", star, wffr, both(atomic, df)),
            ("atomic and df => df", true, both(atomic, df), df),
            ("bfr => tau_accp", star, bfr, tau_accp),
            ("tau_accp => atomic", star, tau_accp, atomic),
            ("accp => tau_accp", true, accp, tau_accp),
        ];
        arrows
            .into_iter()
            .filter(|&(_, active, s, t)| active && s.holds() && t.is_no())
            .map(|(arrow, _, source, target)| Violation {
                arrow,
                alpha,
                beta,
                source,
                target,
            })
            .collect()
    }

    /// The diagram for every `(α, β)`.
    pub fn diagram_all(&self) -> Vec<Violation> {
        let star = self.star();
        AlphaKind::ALL
            .iter()
            .flat_map(|&a| AssocKind::ALL.iter().map(move |&b| (a, b)))
            .flat_map(|(a, b)| self.diagram_with(a, b, star))
            .collect()
    }

    /// Every property for every `(α, β)`.
    pub fn all(&self) -> Vec<PropVerdict> {
        let mut out = vec![self.accp(), self.tau_accp(), self.bfr(), self.ffr(Counting::Raw)];
        for beta in AssocKind::ALL {
            out.push(self.ffr(Counting::UpTo(beta)));
        }
        out.push(self.wffr(Counting::Raw));
        for beta in AssocKind::ALL {
            out.push(self.wffr(Counting::UpTo(beta)));
        }
        for alpha in AlphaKind::ALL {
            out.push(self.atomic(alpha));
            out.push(self.hfr(alpha));
            out.push(self.df(alpha, Counting::Raw));
            for beta in AssocKind::ALL {
                out.push(self.df(alpha, Counting::UpTo(beta)));
                out.push(self.ufr(alpha, beta));
            }
        }
        out
    }

    /// For `τ_z` and `τ_z^Δ`: definitional verdicts against the closed-form
    /// criteria in terms of reducedness and the zero-divisor graph. Empty
    /// for other relations.
    pub fn criteria(&self, graph: &ZdGraph) -> Vec<CrossCheck> {
        let ring = self.ring();
        let delta = self.tau.is_tau_z_delta();
        if !self.tau.is_tau_z() && !delta {
            return Vec::new();
        }
        let reduced = ring.is_reduced();
        let omega = graph.clique_number();
        let domain = ring.is_domain();
        let mut out = Vec::new();
        let mut push = |name, definitional: bool, criterion: bool| {
            out.push(CrossCheck {
                name,
                definitional,
                criterion,
            })
        };
        let bfr = self.bfr().verdict.holds();
        let hfr = self.hfr(AlphaKind::Atomic).verdict.holds();
        let ufr = self.ufr(AlphaKind::Atomic, AssocKind::Associate).verdict.holds();
        push("atomic", self.atomic(AlphaKind::Atomic).verdict.holds(), true);
        push("bfr iff reduced", bfr, delta || reduced);
        for counting in [Counting::Raw, Counting::UpTo(AssocKind::Associate), Counting::UpTo(AssocKind::Strong)] {
            push("ffr iff reduced", self.ffr(counting).verdict.holds(), delta || reduced);
        }
        push("wffr", self.wffr(Counting::Raw).verdict.holds(), true);
        push("df", self.df(AlphaKind::Atomic, Counting::Raw).verdict.holds(), true);
        push("hfr iff reduced with clique number at most 2", hfr, (delta || reduced) && omega <= 2);
        // 0 is the only element with non-trivial factorizations, all of
        // whose factors have no further ones
        push(
            "longest tau chain is 1 when 0 factors",
            self.longest_tau_chain().0 == 1,
            if delta { omega >= 2 } else { !domain },
        );
        push(
            "no non-zero element has a non-trivial factorization",
            ring.nonzero_nonunits()
                .iter()
                .all(|&a| self.longest_nontrivial(a) == 0),
            true,
        );
        if !delta {
            for kind in AssocKind::ALL {
                let check = self.tau.check_property(TauProperty::AssociatePreserving(kind));
                push("associate preserving", check.verdict.holds(), true);
            }
        }
        if reduced {
            push("longest factorization of 0 is the clique number", self.longest_nontrivial(0) == omega, true);
        }
        if delta {
            let census = graph.clique_census(CENSUS_CAP);
            push(
                "strong ffr iff finitely many complete subgraphs",
                self.ffr(Counting::Raw).verdict.holds(),
                !census.overflow,
            );
        }
        if !delta {
            push(
                "ufr iff domain or two fields",
                ufr,
                domain || ring.two_field_decomposition().is_some(),
            );
            if reduced {
                push("hfr iff ufr on reduced rings", hfr, ufr);
            }
        }
        out
    }
}

fn trivial(ring: &Ring, a: Elem) -> Factorization {
    Factorization {
        target: a,
        lambda: ring.one(),
        factors: vec![a],
    }
}

/// Raw multisets represented by a letter multiset: `∏ C(s + m − 1, m)` over
/// letters of size `s` used `m` times.
fn raw_count(index: &FactorIndex<'_>, ms: &[u32]) -> u128 {
    let mut total = 1u128;
    let mut i = 0;
    while i < ms.len() {
        let mut j = i;
        while j < ms.len() && ms[j] == ms[i] {
            j += 1;
        }
        let s = index.letters()[ms[i] as usize].members.len() as u128;
        let m = (j - i) as u128;
        let mut c = 1u128;
        for t in 0..m {
            c = c.saturating_mul(s + t) / (t + 1);
        }
        total = total.saturating_mul(c);
        i = j;
    }
    total
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::zdgraph::GraphMode;

    fn eval_with<R>(spec: &str, build: fn(Arc<Ring>) -> TauRelation, f: impl FnOnce(&Evaluator) -> R) -> R {
        let tau = build(Arc::new(Ring::parse(spec).unwrap()));
        let e = Evaluator::new(&tau);
        f(&e)
    }

    #[test]
    fn bfr_examples() {
        eval_with("Z/12", TauRelation::tau_z, |e| {
            let v = e.bfr();
            assert!(v.verdict.is_no());
            match v.witness {
                Some(PropWitness::Pumping { target, factor, exponents }) => {
                    assert_eq!((target, factor), (0, 6));
                    assert_eq!(exponents, [2, 3]);
                }
                other => panic!("{other:?}"),
            }
        });
        eval_with("Z/30", TauRelation::tau_z, |e| {
            assert!(e.bfr().verdict.is_yes());
            assert_eq!(e.longest_nontrivial(0), 3);
        });
    }

    #[test]
    fn ffr_counts_z6() {
        eval_with("Z/6", TauRelation::tau_z, |e| {
            let raw = e.factorization_counts(Counting::Raw, u64::MAX);
            let assoc = e.factorization_counts(Counting::UpTo(AssocKind::Associate), u64::MAX);
            assert_eq!(raw.iter().find(|c| c.elem == 0).unwrap().count, 2);
            assert_eq!(assoc.iter().find(|c| c.elem == 0).unwrap().count, 1);
        });
    }

    #[test]
    fn z4_ffr_split() {
        eval_with("Z/4", TauRelation::tau_z, |e| assert!(e.ffr(Counting::Raw).verdict.is_no()));
        eval_with("Z/4", TauRelation::tau_z_delta, |e| assert!(e.ffr(Counting::Raw).verdict.is_yes()));
    }

    #[test]
    fn hfr_and_ufr() {
        eval_with("Z/6", TauRelation::tau_z, |e| {
            assert!(e.hfr(AlphaKind::Atomic).verdict.is_yes());
            assert!(e.ufr(AlphaKind::Atomic, AssocKind::Associate).verdict.is_yes());
        });
        eval_with("Z/30", TauRelation::tau_z, |e| {
            let v = e.hfr(AlphaKind::Atomic);
            assert!(v.verdict.is_no());
            match v.witness {
                Some(PropWitness::Lengths { first, second }) => assert_ne!(first.len(), second.len()),
                other => panic!("{other:?}"),
            }
            assert!(e.ufr(AlphaKind::Atomic, AssocKind::Associate).verdict.is_no());
        });
        eval_with("GF(2) x Z/4", TauRelation::tau_z_delta, |e| {
            assert!(e.hfr(AlphaKind::Atomic).verdict.is_yes());
            let v = e.ufr(AlphaKind::Atomic, AssocKind::Associate);
            assert!(v.verdict.is_no());
            assert!(matches!(v.witness, Some(PropWitness::Unmatched { .. })));
        });
        eval_with("Z/4", TauRelation::tau_z, |e| {
            assert!(e.ufr(AlphaKind::Atomic, AssocKind::Associate).verdict.is_no());
        });
    }

    #[test]
    fn atomic_and_chains() {
        eval_with("Z/4", TauRelation::tau_z_delta, |e| {
            assert!(e.atomic(AlphaKind::Atomic).verdict.is_yes());
        });
        eval_with("Z/30", TauRelation::tau_z, |e| assert_eq!(e.longest_tau_chain().0, 1));
        eval_with("GF(7)", TauRelation::tau_z, |e| assert_eq!(e.longest_tau_chain().0, 0));
        eval_with("Z/12", TauRelation::full, |e| {
            let (len, chain) = e.longest_tau_chain();
            assert!(len >= 2);
            assert_eq!(chain.len(), len + 1);
        });
    }

    #[test]
    fn diagram_examples() {
        for spec in ["Z/12", "Z/30"] {
            eval_with(spec, TauRelation::tau_z, |e| {
                assert!(e.diagram(AlphaKind::Atomic, AssocKind::Associate).is_empty());
            });
        }
    }

    #[test]
    fn tau_z_criteria_hold_on_small_rings() {
        for spec in ["Z/6", "Z/12", "Z/30", "Z/4", "GF(2) x Z/4", "GF(4) x GF(2)", "GF(9)"] {
            let ring = Arc::new(Ring::parse(spec).unwrap());
            let graph = ZdGraph::build(&ring, GraphMode::Plain).unwrap();
            for tau in [TauRelation::tau_z(ring.clone()), TauRelation::tau_z_delta(ring.clone())] {
                let e = Evaluator::new(&tau);
                for c in e.criteria(&graph) {
                    assert!(c.agrees(), "{spec} {}: {c:?}", tau.name());
                }
            }
        }
    }
}
