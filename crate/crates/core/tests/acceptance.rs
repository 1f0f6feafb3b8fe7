//! One PASS/FAIL line per acceptance criterion.
//!
//! Run with `cargo test --test acceptance -- --nocapture` to see the lines.

use std::process::Command;
use std::sync::Arc;

use taufact::associates::{related, ring_class, AssocData, AssocKind};
use taufact::corpus::{self, CorpusTau, Options};
use taufact::factor;
use taufact::irr::{check_strong_associate_closure, Flavor};
use taufact::props::{AlphaKind, Evaluator, Violation};
use taufact::replay::replay_all;
use taufact::taurel::{TauProperty, TauRelation};
use taufact::zdgraph::{GraphMode, ZdGraph};
use taufact::{Ring, RingSpec};

const DIAGRAM: &str = "implication diagram has no violated arrows";

struct Outcome {
    name: &'static str,
    failures: Vec<String>,
}

fn corpus_specs() -> Vec<RingSpec> {
    corpus::parse_range("Z/2..Z/60;configured").unwrap()
}

fn ring(spec: &RingSpec) -> Arc<Ring> {
    Arc::new(Ring::new(spec))
}

fn squarefree(n: u32) -> bool {
    (2..=n).all(|p| !n.is_multiple_of(p * p))
}

fn replayed_facts() -> Vec<String> {
    let mut out: Vec<String> = replay_all(TauRelation::tau_z)
        .into_iter()
        .filter(|f| !f.pass)
        .map(|f| format!("{} [{}]", f.name, f.group))
        .collect();
    let status = Command::new(env!("CARGO_BIN_EXE_taufact"))
        .arg("verify-paper")
        .output()
        .expect("binary runs");
    if !status.status.success() {
        out.push(format!("verify-paper exited with {:?}", status.status.code()));
    }
    out
}

fn tau_z_atoms() -> Vec<String> {
    let mut out = Vec::new();
    for spec in corpus_specs() {
        let r = ring(&spec);
        let t = TauRelation::tau_z(r.clone());
        let e = Evaluator::new(&t);
        for &a in r.nonzero_nonunits() {
            if a != 0 && e.longest_nontrivial(a) > 0 {
                out.push(format!("{spec}: {} factors non-trivially", r.format_elem(a)));
            }
        }
        let (chain, _) = e.longest_tau_chain();
        // domains have no tau_z pairs at all and so no chain
        if !r.is_domain() && chain != 1 {
            out.push(format!("{spec}: longest chain {chain}"));
        }
        if !e.atomic(AlphaKind::Atomic).verdict.is_yes() {
            out.push(format!("{spec}: not atomic"));
        }
        for kind in AssocKind::ALL {
            if !t.check_property(TauProperty::AssociatePreserving(kind)).verdict.is_yes() {
                out.push(format!("{spec}: not {kind} preserving"));
            }
        }
    }
    out
}

fn bfr_and_reducedness() -> Vec<String> {
    let mut out = Vec::new();
    for n in 2..=60u32 {
        let r = Arc::new(Ring::parse(&format!("Z/{n}")).unwrap());
        let t = TauRelation::tau_z(r.clone());
        // a factorization of length 11 anywhere means lengths are unbounded
        // in a ring this small; none means every length is at most 10
        let search_bfr = factor::enumerate(&t, 0, 10).complete;
        let e = Evaluator::new(&t);
        let exact_bfr = e.bfr().verdict.is_yes();
        if search_bfr != squarefree(n) || exact_bfr != squarefree(n) {
            out.push(format!("Z/{n}: search {search_bfr}, exact {exact_bfr}"));
        }
    }
    for spec in corpus_specs() {
        let r = ring(&spec);
        if !r.is_reduced() {
            continue;
        }
        let t = TauRelation::tau_z(r.clone());
        let omega = ZdGraph::build(&r, GraphMode::Plain).unwrap().clique_number();
        let n0 = Evaluator::new(&t).longest_nontrivial(0);
        // fields have an empty graph and 0 has no non-trivial factorization
        if n0 != omega {
            out.push(format!("{spec}: N(0) = {n0}, clique number {omega}"));
        }
    }
    out
}

fn half_and_unique() -> Vec<String> {
    let mut out = Vec::new();
    for spec in corpus_specs() {
        let r = ring(&spec);
        let t = TauRelation::tau_z(r.clone());
        let e = Evaluator::new(&t);
        let omega = ZdGraph::build(&r, GraphMode::Plain).unwrap().clique_number();
        let hfr = e.hfr(AlphaKind::Atomic).verdict.is_yes();
        if hfr != (r.is_reduced() && omega <= 2) {
            out.push(format!("{spec}: hfr {hfr}, reduced {}, clique number {omega}", r.is_reduced()));
        }
        let ufr = e.ufr(AlphaKind::Atomic, AssocKind::Associate).verdict.is_yes();
        if r.is_reduced() && hfr != ufr {
            out.push(format!("{spec}: reduced with hfr {hfr} but ufr {ufr}"));
        }
    }
    for (spec, expected) in [("Z/6", true), ("Z/30", false), ("Z/4", false)] {
        let r = Arc::new(Ring::parse(spec).unwrap());
        let t = TauRelation::tau_z(r.clone());
        let ufr = Evaluator::new(&t).ufr(AlphaKind::Atomic, AssocKind::Associate).verdict.is_yes();
        let structural = r.is_domain() || r.two_field_decomposition().is_some();
        if ufr != expected || structural != expected {
            out.push(format!("{spec}: ufr {ufr}, structural {structural}"));
        }
    }
    out
}

fn graphs() -> Vec<String> {
    let mut out = Vec::new();
    for spec in corpus_specs() {
        let g = ZdGraph::build(&ring(&spec), GraphMode::Plain).unwrap();
        if g.vertex_count() >= 2 && !(g.is_connected() && g.diameter().is_some_and(|d| d <= 3)) {
            out.push(format!("{spec}: diameter {:?}", g.diameter()));
        }
    }
    for spec in corpus::field_products(4) {
        let g = ZdGraph::build(&ring(&spec), GraphMode::Plain).unwrap();
        if g.clique_number() != spec.atoms().len() {
            out.push(format!("{spec}: clique number {}", g.clique_number()));
        }
    }
    let g = ZdGraph::build(&Ring::parse("Z/12").unwrap(), GraphMode::Plain).unwrap();
    if g.edge_elems() != [(2, 6), (3, 4), (3, 8), (4, 6), (4, 9), (6, 8), (6, 10), (8, 9)] || g.clique_number() != 2 {
        out.push(format!("Z/12: edges {:?}", g.edge_elems()));
    }
    out
}

fn irreducibility_suite() -> Vec<String> {
    let mut out = Vec::new();
    for spec in corpus_specs() {
        let r = ring(&spec);
        let class = ring_class(&r);
        for t in CorpusTau::DEFAULT {
            let tau = t.build(r.clone());
            let e = Evaluator::with_fallback(&tau, 6);
            for f in e.flags() {
                for arrow in f.diagram_violations(class.strongly_associate) {
                    out.push(format!("{spec}, {}: {arrow} at {}", tau.name(), r.format_elem(f.elem)));
                }
                if class.presimplifiable && !Flavor::ALL.iter().all(|&fl| f.get(fl) == f.irr) {
                    out.push(format!("{spec}, {}: flags differ at {}", tau.name(), r.format_elem(f.elem)));
                }
            }
            for flavor in Flavor::ALL {
                if !check_strong_associate_closure(e.flags(), &r, flavor).is_empty() {
                    out.push(format!("{spec}, {}: {} not closed", tau.name(), flavor.name()));
                }
            }
        }
    }
    for spec in ["Z/4", "Z/8", "Z/9", "GF(2)", "GF(4)", "GF(5)"] {
        if !ring_class(&Ring::parse(spec).unwrap()).presimplifiable {
            out.push(format!("{spec} is not presimplifiable"));
        }
    }
    out
}

fn diagram_violations() -> Vec<(String, Violation)> {
    let mut out = Vec::new();
    for spec in corpus_specs() {
        let r = ring(&spec);
        for t in CorpusTau::DEFAULT {
            let tau = t.build(r.clone());
            let e = Evaluator::with_fallback(&tau, Options::default().max_len);
            for v in e.diagram_all() {
                let at = format!("{spec} with {}: {} for {} / {}", tau.name(), v.arrow, v.alpha, v.beta);
                out.push((at, v));
            }
        }
    }
    out
}

/// The ⋆-gated arrows into α-atomic fail for these α even with τ
/// refinable and associate preserving: a non-α factor can be `∼` to the
/// element it divides, so the ascending chain the argument builds need not
/// be strict. Z/6 with τ_z (very strongly atomic) and Z/18 with τ the even
/// elements squared (m-atomic) are the smallest cases.
fn known_gap(v: &Violation) -> bool {
    matches!(v.alpha, AlphaKind::VeryStronglyAtomic | AlphaKind::MAtomic)
        && matches!(v.arrow, "tau_accp => atomic" | "wffr => atomic and df")
}

fn associate_suite() -> Vec<String> {
    let mut out = Vec::new();
    for spec in corpus_specs() {
        let r = ring(&spec);
        let data = AssocData::get(&r);
        let class = ring_class(&r);
        if !class.is_consistent() {
            out.push(format!("{spec}: {class:?}"));
        }
        let jac = r.jacobson();
        for a in r.elements() {
            if a != 0 {
                let ann_in_j = r.annihilator(a).iter().all(|b| jac.contains(b));
                if data.self_cong(a) != ann_in_j {
                    out.push(format!("{spec}: {} self very strong {}", r.format_elem(a), data.self_cong(a)));
                }
            }
            if r.order() <= 64 {
                for b in r.elements() {
                    let cong = related(&r, AssocKind::VeryStrong, a, b);
                    let approx = related(&r, AssocKind::Strong, a, b);
                    let sim = related(&r, AssocKind::Associate, a, b);
                    if (cong && !approx) || (approx && !sim) {
                        out.push(format!("{spec}: chain breaks at {a}, {b}"));
                    }
                }
            } else {
                for b in r.elements() {
                    let cong = data.is_related(AssocKind::VeryStrong, a, b);
                    let approx = data.is_related(AssocKind::Strong, a, b);
                    let sim = data.is_related(AssocKind::Associate, a, b);
                    if (cong && !approx) || (approx && !sim) {
                        out.push(format!("{spec}: chain breaks at {a}, {b}"));
                    }
                }
            }
        }
    }
    out
}

fn report(outcomes: &[Outcome]) {
    for o in outcomes {
        if o.failures.is_empty() {
            println!("PASS {}", o.name);
        } else {
            let shown: Vec<&str> = o.failures.iter().take(3).map(String::as_str).collect();
            println!("FAIL {}: {} failures, e.g. {}", o.name, o.failures.len(), shown.join("; "));
        }
    }
}

fn main() {
    let diagram = diagram_violations();
    let unexplained: Vec<String> = diagram
        .iter()
        .filter(|(_, v)| !known_gap(v))
        .map(|(at, _)| at.clone())
        .collect();
    let outcomes = vec![
        Outcome {
            name: "replayed worked examples",
            failures: replayed_facts(),
        },
        Outcome {
            name: "tau_z atoms, chain, atomicity and associate preservation on the corpus",
            failures: tau_z_atoms(),
        },
        Outcome {
            name: "tau_z bounded factorization iff squarefree, and N(0) equals clique number",
            failures: bfr_and_reducedness(),
        },
        Outcome {
            name: "tau_z half and unique factorization criteria",
            failures: half_and_unique(),
        },
        Outcome {
            name: "zero-divisor graph diameter, clique numbers and Z/12 edges",
            failures: graphs(),
        },
        Outcome {
            name: "irreducibility diagram, presimplifiable collapse and closure",
            failures: irreducibility_suite(),
        },
        Outcome {
            name: DIAGRAM,
            failures: diagram.iter().map(|(at, _)| at.clone()).collect(),
        },
        Outcome {
            name: "associate chain, self very strong associates and presimplifiable equivalences",
            failures: associate_suite(),
        },
    ];
    report(&outcomes);

    // The diagram criterion fails only through the gap described at
    // `known_gap`; everything else must pass.
    if !unexplained.is_empty() {
        eprintln!("unexpected diagram violations: {unexplained:?}");
        std::process::exit(1);
    }
    if outcomes.iter().any(|o| o.name != DIAGRAM && !o.failures.is_empty()) {
        std::process::exit(1);
    }
}
