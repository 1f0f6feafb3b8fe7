use std::io::{self, BufWriter, Write};
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::{json, Value};

use taufact::associates::ring_class;
use taufact::corpus::{self, CorpusTau, Options};
use taufact::factor::{self, index::FactorIndex};
use taufact::irr::{classify, IrrFlags};
use taufact::query::{self, Query};
use taufact::replay;
use taufact::taurel::{TauError, TauName, TauRelation};
use taufact::zdgraph::{GraphMode, ZdGraph};
use taufact::{Elem, Ring, Verdict};

const EXIT_YES: u8 = 0;
const EXIT_NO: u8 = 1;
const EXIT_PARSE: u8 = 2;
const EXIT_ELEM: u8 = 3;
const EXIT_BOUNDED: u8 = 4;

#[derive(Parser)]
#[command(name = "taufact", version, about = "tau-factorization in finite commutative rings")]
struct Cli {
    /// Line-delimited JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Order, units, zero-divisors, radicals and associate behaviour.
    Info { ring: String },
    /// Irreducibility flags of one element, or of every non-unit.
    Classify {
        ring: String,
        tau: String,
        /// An element, or `all`.
        #[arg(default_value = "all")]
        elem: String,
    },
    /// Decide one property.
    Check(CheckArgs),
    /// The zero-divisor graph.
    Graph {
        ring: String,
        #[arg(long, default_value = "plain")]
        mode: String,
        /// Print DOT.
        #[arg(long)]
        dot: bool,
    },
    /// Non-trivial factorizations of an element up to a length.
    Factorizations {
        ring: String,
        tau: String,
        elem: String,
        #[arg(long, default_value_t = 6)]
        max_len: usize,
    },
    /// Replay the worked examples.
    VerifyPaper {
        /// Swap in a broken tau_z builder.
        #[arg(long, hide = true)]
        inject_fault: bool,
    },
    /// Sweep rings and relations, checking every invariant.
    Corpus {
        #[arg(default_value = "default")]
        range: String,
        /// Comma-separated: full, empty, tau_z, tau_z_delta, s1, s2.
        #[arg(default_value = "full,tau_z,tau_z_delta,s1,s2")]
        taus: String,
        #[arg(long, default_value_t = 6)]
        max_len: usize,
        #[arg(long)]
        jobs: Option<usize>,
    },
}

#[derive(Args)]
struct CheckArgs {
    ring: String,
    tau: String,
    /// multiplicative, divisive, associate_preserving, combinable,
    /// refinable, atomic, accp, tau_accp, bfr, ffr, wffr, df, hfr, ufr
    property: String,
    #[arg(long, default_value = "atomic")]
    alpha: String,
    /// Associate kind for ufr and associate_preserving.
    #[arg(long, default_value = "associate")]
    beta: String,
    /// Counting for ffr, wffr and df: raw (the strong variants) or an
    /// associate kind.
    #[arg(long, default_value = "raw")]
    counting: String,
}

/// A failure that ends the command with a specific exit code.
struct Fail(u8, String);

impl From<TauError> for Fail {
    fn from(e: TauError) -> Fail {
        let code = match e {
            TauError::Element(_) | TauError::NotInRSharp(_) => EXIT_ELEM,
            _ => EXIT_PARSE,
        };
        Fail(code, e.to_string())
    }
}

struct Out {
    json: bool,
    command: &'static str,
    w: BufWriter<io::Stdout>,
}

impl Out {
    fn record(&mut self, kind: &str, data: impl Serialize) {
        let mut v = json!({ "command": self.command, "kind": kind });
        if let Value::Object(fields) = serde_json::to_value(data).expect("records serialize") {
            v.as_object_mut().unwrap().extend(fields);
        }
        writeln!(self.w, "{v}").ok();
    }

    fn record_if_json(&mut self, kind: &str, data: impl Serialize) {
        if self.json {
            self.record(kind, data);
        }
    }

    fn text(&mut self, line: impl AsRef<str>) {
        if !self.json {
            writeln!(self.w, "{}", line.as_ref()).ok();
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let command = match &cli.command {
        Command::Info { .. } => "info",
        Command::Classify { .. } => "classify",
        Command::Check(_) => "check",
        Command::Graph { .. } => "graph",
        Command::Factorizations { .. } => "factorizations",
        Command::VerifyPaper { .. } => "verify-paper",
        Command::Corpus { .. } => "corpus",
    };
    let mut out = Out {
        json: cli.json,
        command,
        w: BufWriter::new(io::stdout()),
    };
    let code = match run(cli.command, &mut out) {
        Ok(code) => code,
        Err(Fail(code, msg)) => {
            out.w.flush().ok();
            eprintln!("error: {msg}");
            code
        }
    };
    if out.json {
        out.record("exit", json!({ "exit": code }));
    }
    out.w.flush().ok();
    ExitCode::from(code)
}

fn parse_ring(spec: &str) -> Result<Arc<Ring>, Fail> {
    Ring::parse(spec).map(Arc::new).map_err(|e| Fail(EXIT_PARSE, e.to_string()))
}

fn parse_tau(ring: &Arc<Ring>, name: &str) -> Result<TauRelation, Fail> {
    let name: TauName = name.parse()?;
    Ok(TauRelation::from_name(Arc::clone(ring), &name)?)
}

fn parse_elem(ring: &Ring, text: &str) -> Result<Elem, Fail> {
    ring.parse_elem(text).map_err(|e| Fail(EXIT_ELEM, e.to_string()))
}

fn verdict_code(v: Verdict) -> u8 {
    v.exit_code() as u8
}

fn run(command: Command, out: &mut Out) -> Result<u8, Fail> {
    match command {
        Command::Info { ring } => info(&ring, out),
        Command::Classify { ring, tau, elem } => classify_cmd(&ring, &tau, &elem, out),
        Command::Check(args) => check(&args, out),
        Command::Graph { ring, mode, dot } => graph(&ring, &mode, dot, out),
        Command::Factorizations {
            ring,
            tau,
            elem,
            max_len,
        } => factorizations(&ring, &tau, &elem, max_len, out),
        Command::VerifyPaper { inject_fault } => verify(inject_fault, out),
        Command::Corpus {
            range,
            taus,
            max_len,
            jobs,
        } => corpus_cmd(&range, &taus, max_len, jobs, out),
    }
}

fn info(spec: &str, out: &mut Out) -> Result<u8, Fail> {
    let ring = parse_ring(spec)?;
    let summary = ring.summary();
    let class = (ring.order() <= 1 << 12).then(|| ring_class(&ring));
    let report = json!({
        "ring": summary,
        "jacobson": ring.format_elems(ring.jacobson()),
        "field": ring.is_field(),
        "domain": ring.is_domain(),
        "reduced": ring.is_reduced(),
        "presimplifiable": class.map(|c| c.presimplifiable),
        "strongly_associate": class.map(|c| c.strongly_associate),
    });
    if out.json {
        out.record("info", &report);
        return Ok(EXIT_YES);
    }
    let list = |v: &[String]| v.join(", ");
    out.text(format!("ring: {}", summary.spec));
    out.text(format!("order: {}", summary.order));
    out.text(format!("units: {}", list(&summary.units)));
    out.text(format!("zero divisors: {}", list(&summary.zero_divisors)));
    out.text(format!("nilradical: {}", list(&summary.nilpotents)));
    out.text(format!("jacobson radical: {}", list(&ring.format_elems(ring.jacobson()))));
    for m in &summary.moduli {
        out.text(format!("modulus {m}"));
    }
    out.text(format!("field: {}", ring.is_field()));
    out.text(format!("domain: {}", ring.is_domain()));
    out.text(format!("reduced: {}", ring.is_reduced()));
    match class {
        Some(c) => {
            out.text(format!("presimplifiable: {}", c.presimplifiable));
            out.text(format!("strongly associate: {}", c.strongly_associate));
        }
        None => out.text("presimplifiable: not computed (order above 4096)"),
    }
    Ok(EXIT_YES)
}

fn flags_line(ring: &Ring, f: &IrrFlags) -> String {
    let mark = |b: bool| if b { "yes" } else { "no" };
    let vs = if f.vs_defined { mark(f.vs) } else { "no (not self very strongly associate)" };
    let mut s = format!(
        "{}: irreducible {}, strongly {}, m {}, very strongly {}",
        ring.format_elem(f.elem),
        mark(f.irr),
        mark(f.strong),
        mark(f.m),
        vs
    );
    if let Some(l) = f.verified_up_to {
        s.push_str(&format!(" (verified up to length {l})"));
    }
    s
}

fn classify_cmd(spec: &str, tau: &str, elem: &str, out: &mut Out) -> Result<u8, Fail> {
    let ring = parse_ring(spec)?;
    let tau = parse_tau(&ring, tau)?;
    let index = FactorIndex::for_tau(&tau);
    let elems: Vec<Elem> = if elem == "all" {
        ring.nonunits().to_vec()
    } else {
        vec![parse_elem(&ring, elem)?]
    };
    let single = elems.len() == 1;
    for a in elems {
        let f = classify(&index, a, single).map_err(|e| Fail(EXIT_ELEM, e.to_string()))?;
        out.text(flags_line(&ring, &f));
        if let Some(w) = &f.witnesses {
            for (label, fz) in [("not irreducible", &w.irr), ("not strongly", &w.strong), ("not m", &w.m)] {
                if let Some(fz) = fz {
                    out.text(format!("  {label}: {}", fz.describe(&ring)));
                }
            }
        }
        if out.json {
            let mut v = serde_json::to_value(&f).expect("flags serialize");
            v["elem"] = json!(ring.format_elem(a));
            out.record("flags", v);
        }
    }
    Ok(if index.bound().is_some() { EXIT_BOUNDED } else { EXIT_YES })
}

fn check(args: &CheckArgs, out: &mut Out) -> Result<u8, Fail> {
    let ring = parse_ring(&args.ring)?;
    let tau = parse_tau(&ring, &args.tau)?;
    let q = Query::new(&args.property)
        .with_text(Some(&args.alpha), Some(&args.beta), Some(&args.counting))
        .map_err(|e| Fail(EXIT_PARSE, e.to_string()))?;
    let a = query::answer(&tau, &q).map_err(|e| Fail(EXIT_PARSE, e.to_string()))?;
    out.text(format!("{}: {}", a.property, a.verdict));
    if let Some(w) = &a.witness {
        out.text(format!("witness: {w}"));
    }
    out.record_if_json(
        "verdict",
        json!({
            "ring": ring.spec().to_string(),
            "tau": tau.name(),
            "property": a.property,
            "verdict": a.verdict,
            "witness": a.witness,
        }),
    );
    Ok(verdict_code(a.verdict))
}

fn graph(spec: &str, mode: &str, dot: bool, out: &mut Out) -> Result<u8, Fail> {
    let ring = parse_ring(spec)?;
    let mode: GraphMode = mode.parse().map_err(|e: taufact::zdgraph::GraphError| Fail(EXIT_PARSE, e.to_string()))?;
    let g = ZdGraph::build(&ring, mode).map_err(|e| Fail(EXIT_PARSE, e.to_string()))?;
    let omega = g.clique_number();
    let diameter = g.diameter();
    if out.json {
        let mut v = g.to_json();
        v["ring"] = json!(ring.spec().to_string());
        v["clique_number"] = json!(omega);
        v["connected"] = json!(g.is_connected());
        v["diameter"] = json!(diameter);
        out.record("graph", v);
        return Ok(EXIT_YES);
    }
    if dot {
        out.text(format!("// clique number {omega}"));
        out.text(g.to_dot().trim_end());
    } else {
        out.text(format!("vertices: {}", g.labels().join(", ")));
        let edges: Vec<String> = g
            .edges()
            .into_iter()
            .map(|(i, j)| format!("{}-{}", g.labels()[i], g.labels()[j]))
            .collect();
        out.text(format!("edges: {}", edges.join(", ")));
        out.text(format!("clique number: {omega}"));
        out.text(match diameter {
            Some(d) => format!("diameter: {d}"),
            None => "diameter: disconnected".to_string(),
        });
    }
    Ok(EXIT_YES)
}

fn factorizations(spec: &str, tau: &str, elem: &str, max_len: usize, out: &mut Out) -> Result<u8, Fail> {
    let ring = parse_ring(spec)?;
    let tau = parse_tau(&ring, tau)?;
    let a = parse_elem(&ring, elem)?;
    if ring.is_unit(a) {
        return Err(Fail(EXIT_ELEM, format!("{elem} is a unit")));
    }
    let e = factor::enumerate(&tau, a, max_len);
    for f in e.factorizations(&ring) {
        out.text(f.describe(&ring));
        if out.json {
            out.record(
                "factorization",
                json!({
                    "target": ring.format_elem(f.target),
                    "lambda": ring.format_elem(f.lambda),
                    "factors": ring.format_elems(&f.factors),
                }),
            );
        }
    }
    out.text(format!(
        "{} non-trivial factorizations up to length {max_len}{}",
        e.multisets.len(),
        if e.complete { "" } else { "; longer ones exist" }
    ));
    out.record_if_json("summary", json!({ "count": e.multisets.len(), "complete": e.complete }));
    Ok(EXIT_YES)
}

fn verify(fault: bool, out: &mut Out) -> Result<u8, Fail> {
    let builder: replay::Builder = if fault { TauRelation::tau_z_faulty } else { TauRelation::tau_z };
    let facts = replay::replay_all(builder);
    let failed = facts.iter().filter(|f| !f.pass).count();
    for f in &facts {
        let mut line = format!("{} [{}] {}", if f.pass { "PASS" } else { "FAIL" }, f.group, f.name);
        if !f.pass && !f.detail.is_empty() {
            line.push_str(&format!(": {}", f.detail));
        }
        out.text(line);
        out.record_if_json("fact", f);
    }
    out.text(format!("{} facts, {failed} failed", facts.len()));
    Ok(if failed == 0 { EXIT_YES } else { EXIT_NO })
}

fn corpus_cmd(range: &str, taus: &str, max_len: usize, jobs: Option<usize>, out: &mut Out) -> Result<u8, Fail> {
    let specs = corpus::parse_range(range).map_err(|e| Fail(EXIT_PARSE, e.to_string()))?;
    let taus = CorpusTau::parse_list(taus).map_err(|e| Fail(EXIT_PARSE, e.to_string()))?;
    let options = Options { max_len };
    let mut pool = rayon::ThreadPoolBuilder::new();
    if let Some(j) = jobs {
        pool = pool.num_threads(j.max(1));
    }
    let pool = pool.build().map_err(|e| Fail(EXIT_PARSE, e.to_string()))?;
    let reports = pool.install(|| corpus::run(&specs, &taus, options));
    let mut findings = 0;
    let mut bounded = false;
    for r in &reports {
        for rec in &r.records {
            bounded |= matches!(rec.verdict, Verdict::VerifiedUpTo(_));
            out.record_if_json("record", rec);
        }
        for f in &r.findings {
            findings += 1;
            out.text(format!(
                "violation [{}{}] {}: {}",
                f.ring_spec,
                f.tau.as_deref().map(|t| format!(", {t}")).unwrap_or_default(),
                f.check,
                f.detail
            ));
            out.record_if_json("violation", f);
        }
    }
    let records: usize = reports.iter().map(|r| r.records.len()).sum();
    out.text(format!(
        "{} rings, {records} records, {findings} invariant violations",
        reports.len()
    ));
    out.record_if_json("summary", json!({ "rings": reports.len(), "records": records, "violations": findings }));
    Ok(if findings > 0 {
        EXIT_NO
    } else if bounded {
        EXIT_BOUNDED
    } else {
        EXIT_YES
    })
}
