use std::sync::Arc;

use proptest::prelude::*;

use taufact::associates::{AssocData, AssocKind};
use taufact::factor::{self, index::FactorIndex};
use taufact::irr::{check_strong_associate_closure, classify_all, Flavor};
use taufact::props::{AlphaKind, Evaluator, PropWitness};
use taufact::taurel::TauRelation;
use taufact::Ring;

const SPECS: [&str; 10] = [
    "Z/6", "Z/8", "Z/9", "Z/12", "Z/16", "Z/20", "GF(4)", "GF(2) x Z/4", "GF(3) x GF(3)", "Z/4 x Z/4",
];

fn ring_strategy() -> impl Strategy<Value = Arc<Ring>> {
    prop::sample::select(SPECS.to_vec()).prop_map(|s| Arc::new(Ring::parse(s).unwrap()))
}

/// A ring with a random symmetric relation on R#, given as a pair mask.
fn tau_strategy() -> impl Strategy<Value = TauRelation> {
    (ring_strategy(), prop::collection::vec(any::<bool>(), 256)).prop_map(|(ring, mask)| {
        let sharp = ring.nonzero_nonunits().to_vec();
        let mut pairs = Vec::new();
        let mut k = 0;
        for i in 0..sharp.len() {
            for j in i..sharp.len() {
                if mask[k % mask.len()] {
                    pairs.push((sharp[i], sharp[j]));
                }
                k += 1;
            }
        }
        TauRelation::explicit(ring, &pairs).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn ring_axioms(ring in ring_strategy(), x in any::<u32>(), y in any::<u32>(), z in any::<u32>()) {
        let n = ring.order();
        let (a, b, c) = (x % n, y % n, z % n);
        prop_assert_eq!(ring.mul(a, b), ring.mul(b, a));
        prop_assert_eq!(ring.mul(ring.mul(a, b), c), ring.mul(a, ring.mul(b, c)));
        prop_assert_eq!(ring.mul(a, ring.add(b, c)), ring.add(ring.mul(a, b), ring.mul(a, c)));
        prop_assert_eq!(ring.mul(a, ring.one()), a);
        prop_assert_eq!(ring.add(a, ring.neg(a)), ring.zero());
        prop_assert_eq!(ring.parse_elem(&ring.format_elem(a)).unwrap(), a);
    }

    #[test]
    fn associate_chain(ring in ring_strategy(), x in any::<u32>(), y in any::<u32>()) {
        let n = ring.order();
        let (a, b) = (x % n, y % n);
        let data = AssocData::get(&ring);
        if data.is_related(AssocKind::VeryStrong, a, b) {
            prop_assert!(data.is_related(AssocKind::Strong, a, b));
        }
        if data.is_related(AssocKind::Strong, a, b) {
            prop_assert!(data.is_related(AssocKind::Associate, a, b));
        }
        prop_assert!(data.is_related(AssocKind::Strong, a, a));
    }

    #[test]
    fn certify_ignores_order(tau in tau_strategy(), max_len in 2usize..4) {
        let ring = tau.ring();
        for &a in ring.nonunits().iter().take(4) {
            for f in factor::enumerate(&tau, a, max_len).factorizations(ring) {
                prop_assert!(f.certify(&tau));
                let mut rev = f.clone();
                rev.factors.reverse();
                prop_assert!(rev.certify(&tau));
            }
        }
    }

    #[test]
    fn irreducibility_diagram_and_closure(tau in tau_strategy()) {
        let ring = tau.ring();
        let index = FactorIndex::for_tau(&tau);
        let flags = classify_all(&index);
        for f in &flags {
            // strongly associate is not assumed, so that arrow is skipped
            prop_assert!(f.diagram_violations(false).is_empty(), "{:?}", f);
        }
        for flavor in Flavor::ALL {
            prop_assert!(check_strong_associate_closure(&flags, ring, flavor).is_empty());
        }
    }

    #[test]
    fn witnesses_certify(tau in tau_strategy()) {
        let e = Evaluator::new(&tau);
        for alpha in AlphaKind::ALL {
            match e.hfr(alpha).witness {
                Some(PropWitness::Lengths { first, second }) => {
                    prop_assert!(first.certify(&tau) && second.certify(&tau));
                    prop_assert_ne!(first.len(), second.len());
                }
                Some(PropWitness::NotAtomic { elem }) => {
                    prop_assert!(e.atomic(alpha).verdict.is_no());
                    prop_assert!(!tau.ring().is_unit(elem));
                }
                _ => {}
            }
        }
        if let Some(PropWitness::Pumping { target, factor, exponents }) = e.bfr().witness {
            let ring = tau.ring();
            prop_assert!(tau.relates(factor, factor));
            for m in exponents {
                prop_assert_eq!(ring.pow(factor, m as u64), target);
            }
        }
    }

    #[test]
    fn bfr_iff_irreflexive(tau in tau_strategy()) {
        let e = Evaluator::new(&tau);
        prop_assert_eq!(e.bfr().verdict.is_yes(), tau.reflexive_point().is_none());
    }
}
