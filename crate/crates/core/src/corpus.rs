//! Corpus sweeps: many rings, several relations each, every property and
//! every invariant the library knows how to check.

use std::str::FromStr;
use std::sync::Arc;

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::associates::{ring_class, AssocData, AssocKind};
use crate::irr::{check_strong_associate_closure, Flavor};
use crate::props::Evaluator;
use crate::ring::{totient, Atom, Ring, RingSpec, SpecError};
use crate::taurel::{TauProperty, TauRelation};
use crate::verdict::Verdict;
use crate::zdgraph::{GraphMode, ZdGraph};

/// The products swept alongside `Z/n`.
pub const CONFIGURED_PRODUCTS: [&str; 8] = [
    "GF(2) x GF(3)",
    "GF(2) x Z/4",
    "GF(2) x GF(2)",
    "GF(4) x GF(2)",
    "GF(2) x GF(2) x GF(2)",
    "GF(2) x GF(3) x GF(5)",
    "Z/4 x Z/2",
    "GF(3) x Z/9",
];

/// Rings above this order skip the quadratic associate-class scan.
const RING_CLASS_LIMIT: u32 = 1 << 12;
/// Rings above this order skip the definitional associate chain scan.
const DEFINITIONAL_LIMIT: u32 = 64;

#[derive(Debug, Error)]
pub enum CorpusError {
    #[error("bad range `{0}` (expected Z/a..Z/b, products:fields:n<=k, configured, default or a ring)")]
    Range(String),
    #[error(transparent)]
    Spec(#[from] SpecError),
    #[error("unknown corpus relation `{0}` (expected full, empty, tau_z, tau_z_delta, s1, s2)")]
    Tau(String),
}

/// Parses `;`-separated range items.
pub fn parse_range(text: &str) -> Result<Vec<RingSpec>, CorpusError> {
    let mut out = Vec::new();
    for item in text.split(';').map(str::trim).filter(|s| !s.is_empty()) {
        let compact: String = item.chars().filter(|c| !c.is_whitespace()).collect();
        if compact == "default" {
            out.extend(parse_range("Z/2..Z/60;configured")?);
        } else if compact == "configured" || compact == "products:configured" {
            for p in CONFIGURED_PRODUCTS {
                out.push(p.parse()?);
            }
        } else if let Some(k) = compact.strip_prefix("products:fields:n<=") {
            let k: usize = k.parse().map_err(|_| CorpusError::Range(item.into()))?;
            out.extend(field_products(k));
        } else if let Some((lo, hi)) = compact.split_once("..") {
            let bound = |s: &str| -> Result<u32, CorpusError> {
                s.strip_prefix("Z/")
                    .and_then(|n| n.parse().ok())
                    .ok_or_else(|| CorpusError::Range(item.into()))
            };
            let (lo, hi) = (bound(lo)?, bound(hi)?);
            if lo < 2 || hi < lo {
                return Err(CorpusError::Range(item.into()));
            }
            for n in lo..=hi {
                out.push(format!("Z/{n}").parse()?);
            }
        } else {
            out.push(item.parse()?);
        }
    }
    if out.is_empty() {
        return Err(CorpusError::Range(text.into()));
    }
    Ok(out)
}

/// Products of 2 to `k` factors drawn with repetition from GF(2), GF(3),
/// GF(5).
pub fn field_products(k: usize) -> Vec<RingSpec> {
    fn go(start: usize, left: usize, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if cur.len() >= 2 {
            out.push(cur.clone());
        }
        if left == 0 {
            return;
        }
        for (i, &q) in [2, 3, 5].iter().enumerate().skip(start) {
            cur.push(q);
            go(i, left - 1, cur, out);
            cur.pop();
        }
    }
    let mut lists = Vec::new();
    go(0, k, &mut Vec::new(), &mut lists);
    lists
        .into_iter()
        .map(|qs| RingSpec::new(qs.into_iter().map(|p| Atom::Galois { p, k: 1 }).collect()).expect("valid product"))
        .collect()
}

/// Relations swept by the corpus.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CorpusTau {
    Full,
    Empty,
    TauZ,
    TauZDelta,
    /// `S × S` for `S` a union of every other `≈`-class of R#.
    ClassSubset,
    /// `S × S` for a set of at most three elements of R#.
    SmallSubset,
}

impl FromStr for CorpusTau {
    type Err = CorpusError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim() {
            "full" => Ok(CorpusTau::Full),
            "empty" => Ok(CorpusTau::Empty),
            "tau_z" => Ok(CorpusTau::TauZ),
            "tau_z_delta" => Ok(CorpusTau::TauZDelta),
            "s1" | "class_subset" => Ok(CorpusTau::ClassSubset),
            "s2" | "small_subset" => Ok(CorpusTau::SmallSubset),
            other => Err(CorpusError::Tau(other.into())),
        }
    }
}

impl CorpusTau {
    pub const DEFAULT: [CorpusTau; 5] = [
        CorpusTau::Full,
        CorpusTau::TauZ,
        CorpusTau::TauZDelta,
        CorpusTau::ClassSubset,
        CorpusTau::SmallSubset,
    ];

    pub fn parse_list(text: &str) -> Result<Vec<CorpusTau>, CorpusError> {
        text.split(',').filter(|s| !s.trim().is_empty()).map(str::parse).collect()
    }

    pub fn build(self, ring: Arc<Ring>) -> TauRelation {
        let sharp = ring.nonzero_nonunits().to_vec();
        let subset = |ring: Arc<Ring>, s: Vec<u32>| {
            if s.is_empty() {
                TauRelation::empty(ring)
            } else {
                TauRelation::subset(ring, &s).expect("members of R#")
            }
        };
        match self {
            CorpusTau::Full => TauRelation::full(ring),
            CorpusTau::Empty => TauRelation::empty(ring),
            CorpusTau::TauZ => TauRelation::tau_z(ring),
            CorpusTau::TauZDelta => TauRelation::tau_z_delta(ring),
            CorpusTau::ClassSubset => {
                let data = AssocData::get(&ring);
                let mut s: Vec<u32> = data
                    .classes()
                    .iter()
                    .filter(|c| c[0] != 0 && !ring.is_unit(c[0]))
                    .step_by(2)
                    .flatten()
                    .copied()
                    .collect();
                s.sort_unstable();
                subset(ring, s)
            }
            CorpusTau::SmallSubset => {
                let mut s: Vec<u32> = match sharp.len() {
                    0 => Vec::new(),
                    n => vec![sharp[0], sharp[n / 2], sharp[n - 1]],
                };
                s.dedup();
                subset(ring, s)
            }
        }
    }
}

#[derive(Debug, Clone, Copy)]
pub struct Options {
    /// Length bound used only when a factorization index would be too large.
    pub max_len: usize,
}

impl Default for Options {
    fn default() -> Self {
        Options { max_len: 6 }
    }
}

/// One `(ring, τ, property)` verdict.
#[derive(Debug, Clone, Serialize)]
pub struct Record {
    pub ring_spec: String,
    pub tau: String,
    pub property: String,
    pub verdict: Verdict,
    pub witness: Option<String>,
}

/// A violated invariant.
#[derive(Debug, Clone, Serialize)]
pub struct Finding {
    pub ring_spec: String,
    pub tau: Option<String>,
    pub check: String,
    pub detail: String,
}

#[derive(Debug, Clone, Default, Serialize)]
pub struct RingReport {
    pub records: Vec<Record>,
    pub findings: Vec<Finding>,
}

/// Runs every ring, in parallel across rings.
pub fn run(specs: &[RingSpec], taus: &[CorpusTau], options: Options) -> Vec<RingReport> {
    specs.par_iter().map(|s| run_ring(s, taus, options)).collect()
}

pub fn run_ring(spec: &RingSpec, taus: &[CorpusTau], options: Options) -> RingReport {
    let ring = Arc::new(Ring::new(spec));
    let name = spec.to_string();
    let mut report = RingReport::default();
    let mut find = |tau: Option<&str>, check: &str, detail: String| Finding {
        ring_spec: name.clone(),
        tau: tau.map(str::to_string),
        check: check.to_string(),
        detail,
    };
    let graph = ZdGraph::build(&ring, GraphMode::Plain).ok();

    // ring-level checks
    let mut findings = ring_findings(&ring, graph.as_ref(), &mut find);
    let class = (ring.order() <= RING_CLASS_LIMIT).then(|| ring_class(&ring));

    for &t in taus {
        let tau = t.build(Arc::clone(&ring));
        let tname = tau.name();
        let label = Some(tname.as_str());
        let eval = Evaluator::with_fallback(&tau, options.max_len);
        let rec = |property: String, verdict: Verdict, witness: Option<String>| Record {
            ring_spec: name.clone(),
            tau: tname.clone(),
            property,
            verdict,
            witness,
        };

        let mut checks = Vec::new();
        for p in [
            TauProperty::Multiplicative,
            TauProperty::Divisive,
            TauProperty::AssociatePreserving(AssocKind::Associate),
            TauProperty::AssociatePreserving(AssocKind::Strong),
            TauProperty::AssociatePreserving(AssocKind::VeryStrong),
            TauProperty::Combinable,
            TauProperty::Refinable,
        ] {
            let c = tau.check_property(p);
            report.records.push(rec(
                p.to_string(),
                c.verdict,
                c.witness.as_ref().map(|w| w.describe(&ring)),
            ));
            checks.push((p, c.verdict));
        }
        let holds = |p: TauProperty| checks.iter().any(|&(q, v)| q == p && v.holds());
        if holds(TauProperty::Divisive) {
            for kind in AssocKind::ALL {
                if !holds(TauProperty::AssociatePreserving(kind)) {
                    findings.push(find(label, "divisive implies associate preserving", kind.to_string()));
                }
            }
            if !holds(TauProperty::Refinable) {
                findings.push(find(label, "divisive implies refinable", String::new()));
            }
        }
        if holds(TauProperty::Multiplicative) && !holds(TauProperty::Combinable) {
            findings.push(find(label, "multiplicative implies combinable", String::new()));
        }

        for v in eval.all() {
            report.records.push(rec(
                v.label(),
                v.verdict,
                v.witness.as_ref().map(|w| w.describe(&ring)),
            ));
        }
        for v in eval.diagram_all() {
            findings.push(find(
                label,
                "implication diagram",
                format!("{} for {} / {}: {} then {}", v.arrow, v.alpha, v.beta, v.source, v.target),
            ));
        }
        if let Some(g) = &graph {
            for c in eval.criteria(g) {
                if !c.agrees() {
                    findings.push(find(
                        label,
                        "closed-form criterion",
                        format!("{}: definitional {} criterion {}", c.name, c.definitional, c.criterion),
                    ));
                }
            }
        }

        // irreducibility diagram, collapse and closure
        let flags = eval.flags();
        if let Some(class) = class {
            for f in flags {
                for arrow in f.diagram_violations(class.strongly_associate) {
                    findings.push(find(label, "irreducibility diagram", format!("{} at {}", arrow, ring.format_elem(f.elem))));
                }
                if class.presimplifiable && !Flavor::ALL.iter().all(|&fl| f.get(fl) == f.irr) {
                    findings.push(find(label, "presimplifiable collapse", ring.format_elem(f.elem)));
                }
            }
        }
        for flavor in Flavor::ALL {
            for (a, b) in check_strong_associate_closure(flags, &ring, flavor) {
                findings.push(find(
                    label,
                    "strong associate closure",
                    format!("{} {} but {} not", flavor.name(), ring.format_elem(a), ring.format_elem(b)),
                ));
            }
        }
    }
    report.findings = findings;
    report
}

fn ring_findings(
    ring: &Ring,
    graph: Option<&ZdGraph>,
    find: &mut impl FnMut(Option<&str>, &str, String) -> Finding,
) -> Vec<Finding> {
    let mut out = Vec::new();
    let data = AssocData::get(ring);
    if let Some(g) = graph {
        if g.vertex_count() >= 2 {
            match g.diameter() {
                Some(d) if d <= 3 => {}
                d => out.push(find(None, "zero-divisor graph connected with diameter at most 3", format!("{d:?}"))),
            }
        }
        if let [Atom::Integers(n)] = ring.spec().atoms() {
            let expected = *n as u64 - 1 - totient(*n as u64);
            if g.vertex_count() as u64 != expected {
                out.push(find(None, "zero-divisor count n - 1 - phi(n)", g.vertex_count().to_string()));
            }
        }
        let atoms = ring.spec().atoms();
        if atoms.len() >= 2 && atoms.iter().all(|a| matches!(a, Atom::Galois { .. })) && g.clique_number() != atoms.len() {
            out.push(find(None, "clique number of a product of fields", g.clique_number().to_string()));
        }
    }
    if ring.order() <= RING_CLASS_LIMIT {
        let class = ring_class(ring);
        if !class.is_consistent() {
            out.push(find(None, "presimplifiable equivalences", format!("{class:?}")));
        }
    }
    let jac = ring.jacobson();
    for a in ring.elements().filter(|&a| a != 0) {
        let ann_in_j = ring.annihilator(a).iter().all(|b| jac.binary_search(b).is_ok());
        if data.self_cong(a) != ann_in_j {
            out.push(find(None, "self very strong associate iff annihilator in radical", ring.format_elem(a)));
        }
    }
    if ring.order() <= DEFINITIONAL_LIMIT {
        use crate::associates::related;
        for a in ring.elements() {
            for b in ring.elements() {
                let cong = related(ring, AssocKind::VeryStrong, a, b);
                let approx = related(ring, AssocKind::Strong, a, b);
                let sim = related(ring, AssocKind::Associate, a, b);
                if (cong && !approx) || (approx && !sim) {
                    out.push(find(
                        None,
                        "associate chain",
                        format!("{} {}", ring.format_elem(a), ring.format_elem(b)),
                    ));
                }
                for kind in AssocKind::ALL {
                    if data.is_related(kind, a, b) != related(ring, kind, a, b) {
                        out.push(find(None, "cached associates match definition", format!("{kind} {a} {b}")));
                    }
                }
            }
        }
    }
    out
}
