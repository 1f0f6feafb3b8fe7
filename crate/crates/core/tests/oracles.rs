//! The factorization index against plain enumeration.

use std::sync::Arc;

use taufact::associates::{AssocData, AssocKind};
use taufact::corpus::CorpusTau;
use taufact::factor::{self, index::FactorIndex, Factorization};
use taufact::irr::classify_all;
use taufact::taurel::{TauProperty, TauRelation, TauWitness};
use taufact::Ring;

const RINGS: [&str; 12] = [
    "Z/4", "Z/6", "Z/8", "Z/9", "Z/10", "Z/12", "Z/16", "Z/18", "GF(2) x Z/4", "GF(2) x GF(2)", "Z/4 x Z/2", "GF(4) x GF(2)",
];

fn relations(spec: &str) -> Vec<TauRelation> {
    let ring = Arc::new(Ring::parse(spec).unwrap());
    let mut out: Vec<TauRelation> = [
        CorpusTau::Full,
        CorpusTau::Empty,
        CorpusTau::TauZ,
        CorpusTau::TauZDelta,
        CorpusTau::ClassSubset,
        CorpusTau::SmallSubset,
    ]
    .iter()
    .map(|t| t.build(ring.clone()))
    .collect();
    // a relation that is not ≈-preserving, to exercise element letters
    let sharp = ring.nonzero_nonunits();
    if sharp.len() >= 2 {
        let pairs: Vec<_> = sharp.windows(2).map(|w| (w[0], w[1])).collect();
        out.push(TauRelation::explicit(ring.clone(), &pairs).unwrap());
    }
    out
}

const MAX_LEN: usize = 4;

#[test]
fn irreducibility_matches_enumeration() {
    for spec in RINGS {
        for tau in relations(spec) {
            let ring = tau.ring();
            let data = AssocData::get(ring);
            let index = FactorIndex::for_tau(&tau);
            for flags in classify_all(&index) {
                let a = flags.elem;
                let e = factor::enumerate(&tau, a, MAX_LEN);
                let sim = |x| data.is_related(AssocKind::Associate, x, a);
                let approx = |x| data.class_of(x) == data.class_of(a);
                let found_irr = e.multisets.iter().any(|m| !m.iter().any(|&x| sim(x)));
                let found_strong = e.multisets.iter().any(|m| !m.iter().any(|&x| approx(x)));
                let found_m = e.multisets.iter().any(|m| m.iter().any(|&x| !sim(x)));
                let ctx = format!("{spec} {} at {}", tau.name(), ring.format_elem(a));
                // a short counterexample refutes the flag
                assert!(!(found_irr && flags.irr), "{ctx}");
                assert!(!(found_strong && flags.strong), "{ctx}");
                assert!(!(found_m && flags.m), "{ctx}");
                assert!(!(flags.vs && !e.multisets.is_empty()), "{ctx}");
                if e.complete {
                    assert_eq!(found_irr, !flags.irr, "{ctx}");
                    assert_eq!(found_strong, !flags.strong, "{ctx}");
                    assert_eq!(found_m, !flags.m, "{ctx}");
                    assert_eq!(flags.vs, flags.vs_defined && e.multisets.is_empty(), "{ctx}");
                }
            }
        }
    }
}

#[test]
fn nontrivial_divisors_match_enumeration() {
    for spec in RINGS {
        for tau in relations(spec) {
            let ring = tau.ring();
            let index = FactorIndex::for_tau(&tau);
            for &a in ring.nonunits() {
                let e = factor::enumerate(&tau, a, MAX_LEN);
                let mut short: Vec<_> = e.multisets.iter().flatten().copied().collect();
                short.sort_unstable();
                short.dedup();
                let exact = index.nontrivial_divisors(a);
                for x in &short {
                    assert!(exact.binary_search(x).is_ok(), "{spec} {} {a}", tau.name());
                }
                if e.complete {
                    assert_eq!(short, exact, "{spec} {} {a}", tau.name());
                }
            }
        }
    }
}

fn permutations(v: &[u32]) -> Vec<Vec<u32>> {
    if v.len() <= 1 {
        return vec![v.to_vec()];
    }
    let mut out = Vec::new();
    for i in 0..v.len() {
        let mut rest = v.to_vec();
        let x = rest.remove(i);
        for mut p in permutations(&rest) {
            p.insert(0, x);
            out.push(p);
        }
    }
    out
}

fn all_factorizations(tau: &TauRelation, max_len: usize) -> Vec<Factorization> {
    let ring = tau.ring();
    ring.nonunits()
        .iter()
        .flat_map(|&a| factor::enumerate(tau, a, max_len).factorizations(ring))
        .collect()
}

#[test]
fn combinable_matches_brute_force() {
    for spec in RINGS {
        for tau in relations(spec) {
            let ring = tau.ring();
            let mut broken = None;
            'search: for f in all_factorizations(&tau, MAX_LEN) {
                for order in permutations(&f.factors) {
                    let f = Factorization { factors: order, ..f.clone() };
                    for i in 0..f.len() - 1 {
                        let merged = factor::combine(ring, &f, i).unwrap();
                        if !merged.certify(&tau) {
                            broken = Some(merged);
                            break 'search;
                        }
                    }
                }
            }
            let check = tau.check_property(TauProperty::Combinable);
            assert_eq!(check.verdict.is_no(), broken.is_some(), "{spec} {}: {broken:?}", tau.name());
            if let Some(TauWitness::Combine { factors, position }) = check.witness {
                let target = ring.product(factors.iter().copied());
                let f = Factorization {
                    target,
                    lambda: ring.one(),
                    factors,
                };
                assert!(f.certify(&tau));
                assert!(!factor::combine(ring, &f, position).unwrap().certify(&tau));
            }
        }
    }
}

#[test]
fn refinable_matches_brute_force() {
    for spec in RINGS {
        for tau in relations(spec) {
            let ring = tau.ring();
            let all = all_factorizations(&tau, 3);
            let mut broken = false;
            'search: for f in &all {
                for (i, &x) in f.factors.iter().enumerate() {
                    for sub in all.iter().filter(|s| s.target == x) {
                        if !factor::refine(ring, f, i, sub).unwrap().certify(&tau) {
                            broken = true;
                            break 'search;
                        }
                    }
                }
            }
            let check = tau.check_property(TauProperty::Refinable);
            if broken {
                assert!(check.verdict.is_no(), "{spec} {}", tau.name());
            }
            match check.witness {
                Some(TauWitness::Refine { factors, refined }) => {
                    assert!(factor::certify(&tau, ring.product(factors.iter().copied()), ring.one(), &factors));
                    assert!(!factor::certify(&tau, ring.product(refined.iter().copied()), ring.one(), &refined));
                }
                Some(other) => panic!("unexpected witness {other:?}"),
                None => assert!(!broken),
            }
        }
    }
}
