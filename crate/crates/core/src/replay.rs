//! Replays the worked examples of τ-factorization theory as pass/fail facts.
//!
//! The `τ_z` builder is a parameter so that a deliberately broken one can be
//! swapped in to see which facts notice.

use std::sync::Arc;

use serde::Serialize;

use crate::associates::{ring_class, AssocData, AssocKind};
use crate::corpus::CONFIGURED_PRODUCTS;
use crate::factor::{self, Factorization};
use crate::props::{AlphaKind, Counting, Evaluator};
use crate::ring::{Elem, Ring};
use crate::taurel::{TauProperty, TauRelation, TauWitness};
use crate::zdgraph::{GraphMode, ZdGraph};

pub type Builder = fn(Arc<Ring>) -> TauRelation;

#[derive(Debug, Clone, Serialize)]
pub struct Fact {
    pub group: &'static str,
    pub name: String,
    pub pass: bool,
    #[serde(skip_serializing_if = "String::is_empty")]
    pub detail: String,
}

struct Facts {
    group: &'static str,
    out: Vec<Fact>,
}

impl Facts {
    fn check(&mut self, name: impl Into<String>, pass: bool) {
        self.check_with(name, pass, String::new());
    }

    fn check_with(&mut self, name: impl Into<String>, pass: bool, detail: String) {
        self.out.push(Fact {
            group: self.group,
            name: name.into(),
            pass,
            detail,
        });
    }
}

fn ring(spec: &str) -> Arc<Ring> {
    Arc::new(Ring::parse(spec).expect("replay ring specs are valid"))
}

fn elem(ring: &Ring, text: &str) -> Elem {
    ring.parse_elem(text).expect("replay elements are valid")
}

fn fz(target: Elem, factors: &[Elem]) -> Factorization {
    Factorization {
        target,
        lambda: 1,
        factors: factors.to_vec(),
    }
}

/// Rings on which the `τ_z` atom facts are replayed.
const ATOM_RINGS: [&str; 8] = ["Z/4", "Z/6", "Z/8", "Z/9", "Z/12", "Z/30", "Z/36", "Z/60"];

/// Every fact, with `tau_z` as the `τ_z` builder.
pub fn replay_all(tau_z: Builder) -> Vec<Fact> {
    let mut facts = Facts {
        group: "",
        out: Vec::new(),
    };
    parsing(&mut facts);
    associates(&mut facts);
    relations(&mut facts, tau_z);
    factorizations(&mut facts, tau_z);
    atoms(&mut facts, tau_z);
    finiteness(&mut facts, tau_z);
    half_and_unique(&mut facts, tau_z);
    graphs(&mut facts);
    facts.out
}

fn parsing(f: &mut Facts) {
    f.group = "parsing";
    f.check("Z/30 has order 30", ring("Z/30").order() == 30);
    let r = ring("GF(2) x Z/4");
    f.check("GF(2) x Z/4 has order 8", r.order() == 8);
    f.check("(1,2) round-trips in GF(2) x Z/4", r.format_elem(elem(&r, "(1,2)")) == "(1,2)");
}

fn associates(f: &mut Facts) {
    f.group = "associates";
    let r = ring("Z/12");
    f.check("3 divides 6 in Z/12", r.divides(3, 6));
    let r = ring("Z/9");
    let data = AssocData::get(&r);
    for kind in AssocKind::ALL {
        f.check(format!("3 and 6 are {kind} in Z/9"), data.is_related(kind, 3, 6));
    }
    f.check("Z/4 is presimplifiable", ring_class(&ring("Z/4")).presimplifiable);
    f.check("Z/6 is not presimplifiable", !ring_class(&ring("Z/6")).presimplifiable);
}

fn relations(f: &mut Facts, tau_z: Builder) {
    f.group = "relations";
    let r = ring("Z/4");
    f.check("tau_z on Z/4 is {(2,2)}", tau_z(r.clone()).pairs() == [(2, 2)]);
    f.check("tau_z_delta on Z/4 is empty", TauRelation::tau_z_delta(r).pairs().is_empty());

    let t = tau_z(ring("Z/30"));
    let r = t.ring();
    let c = t.check_property(TauProperty::Combinable);
    f.check_with(
        "tau_z on Z/30 is not combinable",
        c.verdict.is_no(),
        c.witness.map(|w| w.describe(r)).unwrap_or_default(),
    );
    let whole = fz(0, &[6, 10, 15]);
    let merged = factor::combine(r, &whole, 1).expect("position in range");
    f.check("6·(10·15) = 6·0 in Z/30", merged.factors == [6, 0]);
    f.check("6·0 is not a tau_z-factorization", !merged.certify(&t));

    let t = tau_z(ring("Z/12"));
    f.check("2 tau_z 6 in Z/12", t.relates(2, 6));
    f.check("not 2 tau_z 3 in Z/12", !t.relates(2, 3));
    f.check("tau_z on Z/12 is not divisive", t.check_property(TauProperty::Divisive).verdict.is_no());

    let t = TauRelation::tau_z_delta(ring("Z/9"));
    let c = t.check_property(TauProperty::AssociatePreserving(AssocKind::Associate));
    f.check_with(
        "tau_z_delta on Z/9 is not associate preserving via (3, 6, 3)",
        c.verdict.is_no() && c.witness == Some(TauWitness::Triple { a: 3, b: 6, c: 3 }),
        c.witness.map(|w| w.describe(t.ring())).unwrap_or_default(),
    );

    for spec in ["Z/12", "Z/30", "GF(2) x Z/4"] {
        let t = tau_z(ring(spec));
        f.check(
            format!("tau_z on {spec} is refinable"),
            t.check_property(TauProperty::Refinable).verdict.is_yes(),
        );
        let e = TauRelation::empty(ring(spec));
        f.check(
            format!("empty relation on {spec} is multiplicative and divisive"),
            e.check_property(TauProperty::Multiplicative).verdict.is_yes()
                && e.check_property(TauProperty::Divisive).verdict.is_yes(),
        );
    }
}

fn factorizations(f: &mut Facts, tau_z: Builder) {
    f.group = "factorizations";
    let t = tau_z(ring("Z/30"));
    f.check("0 = 6·10·15 is a tau_z-factorization in Z/30", factor::certify(&t, 0, 1, &[6, 10, 15]));
    f.check("0 is not allowed as a factor", !factor::certify(&t, 0, 1, &[6, 0]));
    f.check("6 divides 0 non-trivially for tau_z in Z/30", factor::tau_divides(&t, 6, 0, true));
    let e = factor::enumerate(&t, 0, 3);
    f.check("factorizations of 0 in Z/30 include 6·10·15", e.multisets.iter().any(|m| m == &[6, 10, 15]));

    let t = tau_z(ring("Z/4"));
    let e = factor::enumerate(&t, 0, 5);
    let expected: Vec<Vec<Elem>> = (2..=5).map(|i| vec![2; i]).collect();
    f.check(
        "0 = 2^i in Z/4 for i up to 5, with longer ones remaining",
        e.multisets == expected && !e.complete,
    );

    let t = TauRelation::empty(ring("Z/12"));
    f.check(
        "the empty relation admits only trivial factorizations",
        t.ring().nonunits().iter().all(|&a| factor::enumerate(&t, a, 4).multisets.is_empty()),
    );
}

fn atoms(f: &mut Facts, tau_z: Builder) {
    f.group = "tau_z atoms";
    for spec in ATOM_RINGS.iter().copied().chain(CONFIGURED_PRODUCTS) {
        let r = ring(spec);
        for (label, t) in [("tau_z", tau_z(r.clone())), ("tau_z_delta", TauRelation::tau_z_delta(r.clone()))] {
            let e = Evaluator::new(&t);
            let lonely: Vec<String> = r
                .nonzero_nonunits()
                .iter()
                .filter(|&&a| e.longest_nontrivial(a) > 0)
                .map(|&a| r.format_elem(a))
                .collect();
            f.check_with(
                format!("{label} on {spec}: no non-zero element factors non-trivially"),
                lonely.is_empty(),
                lonely.join(", "),
            );
            let non_atoms: Vec<String> = e
                .flags()
                .iter()
                .filter(|fl| fl.elem != 0 && !(fl.irr && fl.strong && fl.m && fl.vs == fl.vs_defined))
                .map(|fl| r.format_elem(fl.elem))
                .collect();
            f.check_with(
                format!("{label} on {spec}: every element of R# is an atom"),
                non_atoms.is_empty(),
                non_atoms.join(", "),
            );
            f.check(
                format!("{label} on {spec} is atomic"),
                e.atomic(AlphaKind::Atomic).verdict.is_yes(),
            );
            let (chain, _) = e.longest_tau_chain();
            let expect_one = label == "tau_z" || {
                let g = ZdGraph::build(&r, GraphMode::Plain).expect("small graph");
                g.clique_number() >= 2
            };
            f.check_with(
                format!("{label} on {spec}: longest tau chain is 1"),
                (chain == 1) == expect_one,
                format!("chain {chain}"),
            );
            if label == "tau_z" {
                for kind in AssocKind::ALL {
                    f.check(
                        format!("tau_z on {spec} is {kind} preserving"),
                        t.check_property(TauProperty::AssociatePreserving(kind)).verdict.is_yes(),
                    );
                }
            }
        }
    }
    let r = ring("Z/4");
    let t = TauRelation::tau_z_delta(r.clone());
    let flags = crate::irr::classify(&crate::factor::index::FactorIndex::for_tau(&t), 0, false).expect("0 is a non-unit");
    f.check("0 is a tau_z_delta-atom in Z/4", flags.irr);
    let t = tau_z(r);
    let e = Evaluator::new(&t);
    f.check(
        "0 = 2·2 is a tau_z-atomic factorization in Z/4",
        factor::certify(&t, 0, 1, &[2, 2]) && e.is_alpha(AlphaKind::Atomic, 2),
    );
}

fn finiteness(f: &mut Facts, tau_z: Builder) {
    f.group = "finite factorization";
    let r = ring("Z/4");
    let t = tau_z(r.clone());
    let d = TauRelation::tau_z_delta(r);
    f.check(
        "Z/4 is a strong tau_z_delta-FFR",
        Evaluator::new(&d).ffr(Counting::Raw).verdict.is_yes(),
    );
    f.check("Z/4 is not a strong tau_z-FFR", Evaluator::new(&t).ffr(Counting::Raw).verdict.is_no());
    for spec in ["Z/6", "Z/30", "GF(2) x GF(3) x GF(5)"] {
        let t = tau_z(ring(spec));
        f.check(
            format!("reduced {spec} is a strong tau_z-FFR"),
            Evaluator::new(&t).ffr(Counting::Raw).verdict.is_yes(),
        );
    }
    let r = ring("GF(2) x GF(3) x GF(5)");
    let t = tau_z(r.clone());
    let basis: Vec<Elem> = ["(1,0,0)", "(0,1,0)", "(0,0,1)"].iter().map(|s| elem(&r, s)).collect();
    f.check(
        "the standard basis factors 0 in GF(2) x GF(3) x GF(5)",
        factor::certify(&t, 0, r.one(), &basis),
    );
    f.check(
        "the longest factorization of 0 there has length 3",
        Evaluator::new(&t).longest_nontrivial(0) == 3,
    );
    let t = tau_z(ring("Z/12"));
    let v = Evaluator::new(&t).bfr();
    f.check_with(
        "Z/12 is not a tau_z-BFR",
        v.verdict.is_no(),
        v.witness.map(|w| w.describe(t.ring())).unwrap_or_default(),
    );
}

fn half_and_unique(f: &mut Facts, tau_z: Builder) {
    f.group = "half and unique factorization";
    let t = tau_z(ring("Z/30"));
    let r = t.ring();
    let v = Evaluator::new(&t).hfr(AlphaKind::Atomic);
    f.check_with(
        "Z/30 is not a tau_z-atomic-HFR",
        v.verdict.is_no(),
        v.witness.map(|w| w.describe(r)).unwrap_or_default(),
    );
    f.check("0 = 6·5 and 0 = 6·10·15 both certify in Z/30", {
        factor::certify(&t, 0, 1, &[6, 5]) && factor::certify(&t, 0, 1, &[6, 10, 15])
    });

    let r = ring("GF(2) x Z/4");
    let d = TauRelation::tau_z_delta(r.clone());
    let e = Evaluator::new(&d);
    f.check(
        "GF(2) x Z/4 is a tau_z_delta-atomic-HFR",
        e.hfr(AlphaKind::Atomic).verdict.is_yes(),
    );
    let v = e.ufr(AlphaKind::Atomic, AssocKind::Associate);
    f.check_with(
        "GF(2) x Z/4 is not a tau_z_delta-atomic-UFR",
        v.verdict.is_no(),
        v.witness.map(|w| w.describe(&r)).unwrap_or_default(),
    );
    let x = |s| elem(&r, s);
    let zero = x("(0,0)");
    let first = [x("(1,0)"), x("(0,1)")];
    let second = [x("(1,2)"), x("(0,2)")];
    f.check(
        "(0,0) = (1,0)(0,1) = (1,2)(0,2) are both tau_z_delta-factorizations",
        factor::certify(&d, zero, r.one(), &first) && factor::certify(&d, zero, r.one(), &second),
    );
    f.check(
        "all four factors are tau_z_delta-atoms",
        first.iter().chain(&second).all(|&a| e.is_alpha(AlphaKind::Atomic, a)),
    );
    let data = AssocData::get(&r);
    f.check(
        "(0,2) is associate to neither (1,0) nor (0,1)",
        first.iter().all(|&a| !data.is_related(AssocKind::Associate, x("(0,2)"), a)),
    );
    f.check(
        "clique number of GF(2) x Z/4 is 2",
        ZdGraph::build(&r, GraphMode::Plain).map(|g| g.clique_number()) == Ok(2),
    );

    for (spec, expected) in [("Z/6", true), ("Z/30", false), ("Z/4", false)] {
        let t = tau_z(ring(spec));
        let e = Evaluator::new(&t);
        let ufr = e.ufr(AlphaKind::Atomic, AssocKind::Associate).verdict.holds();
        let structural = t.ring().is_domain() || t.ring().two_field_decomposition().is_some();
        f.check_with(
            format!("{spec} is {}a tau_z-atomic-associate-UFR", if expected { "" } else { "not " }),
            ufr == expected && structural == expected,
            format!("definitional {ufr}, two fields or domain {structural}"),
        );
    }
}

fn graphs(f: &mut Facts) {
    f.group = "zero-divisor graphs";
    let g = ZdGraph::build(&ring("Z/12"), GraphMode::Plain).expect("small graph");
    f.check(
        "Z/12 has the eight listed edges",
        g.edge_elems() == [(2, 6), (3, 4), (3, 8), (4, 6), (4, 9), (6, 8), (6, 10), (8, 9)],
    );
    f.check("Z/12 graph has clique number 2", g.clique_number() == 2);
    f.check(
        "Z/12 graph is connected with diameter at most 3",
        g.is_connected() && g.diameter().is_some_and(|d| d <= 3),
    );
    for (spec, n) in [("GF(2) x GF(3)", 2), ("GF(2) x GF(3) x GF(5)", 3), ("GF(2) x GF(3) x GF(5) x GF(2)", 4)] {
        let g = ZdGraph::build(&ring(spec), GraphMode::Plain).expect("small graph");
        f.check(format!("{spec} graph has clique number {n}"), g.clique_number() == n);
    }
}
