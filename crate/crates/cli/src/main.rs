use std::fmt::Write as _;
use std::fs;
use std::io::{self, Write as _};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use legkit::catalog;
use legkit::detect::{find_zigzags, has_fig1_config, Fig1Template, PatternWitness};
use legkit::front::{parse_front, FrontFile};
use legkit::hfmod::{self, GradedModule, TriangleRanks};
use legkit::seifert;
use legkit::surgery::{self, parse_diagram, ContactSurgeryDiagram, CosetVector, Hopf};
use legkit::verdict::{self, FactStore, RULES};
use num_bigint::BigInt;
use serde_json::{json, Value};

#[derive(Parser)]
#[command(name = "legendrian-kit", version, about = "Legendrian front and contact surgery calculator")]
struct Cli {
    /// machine-readable output
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// tb, rot and linking numbers of a front
    Invariants { front: String },
    /// zig-zags and marked strand-pair configurations in a front
    Detect {
        front: String,
        /// template override, e.g. "X0 | U 0 upper | U' 0 lower"
        #[arg(long)]
        template: Option<String>,
    },
    /// characteristic numbers of a contact surgery diagram
    Surgery { diagram: PathBuf },
    /// Seifert algebra of a twist knot
    Seifert {
        #[arg(long)]
        twist: i64,
    },
    /// graded module bookkeeping
    Hf {
        #[command(subcommand)]
        op: HfCmd,
    },
    /// tightness verdict for a diagram and declared facts
    Verdict {
        diagram: PathBuf,
        #[arg(long)]
        facts: Option<PathBuf>,
        #[arg(long)]
        template: Option<String>,
    },
    /// the rule table
    Rules,
}

#[derive(Subcommand)]
enum HfCmd {
    /// orientation-reversed module
    Dual { module: String },
    /// image ranks in an exact triangle with corner ranks a, b, c
    Triangle { a: u64, b: u64, c: u64 },
    /// rank of V(k) by the triangle recursion
    Vrank { k: u64 },
}

enum Failure {
    Io(String),
    Invalid(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Io(_) => 1,
            Failure::Invalid(_) => 2,
        }
    }
}

fn invalid(e: impl std::fmt::Display) -> Failure {
    Failure::Invalid(e.to_string())
}

struct Report {
    text: String,
    json: Value,
    contradiction: bool,
}

impl Report {
    fn new(text: String, json: Value) -> Self {
        Report { text, json, contradiction: false }
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))
}

/// A path, or `builtin:<name>` for a catalog front.
fn load_front(arg: &str) -> Result<FrontFile, Failure> {
    if let Some(name) = arg.strip_prefix("builtin:") {
        let word = catalog::by_name(name).ok_or_else(|| invalid(format!("no builtin front `{name}`")))?;
        return Ok(FrontFile { name: name.to_string(), word, seeds: Default::default() });
    }
    parse_front(&read(Path::new(arg))?).map_err(invalid)
}

fn load_diagram(path: &Path) -> Result<ContactSurgeryDiagram, Failure> {
    parse_diagram(&read(path)?).map_err(invalid)?.build().map_err(invalid)
}

fn template(t: &Option<String>) -> Result<Fig1Template, Failure> {
    match t {
        Some(s) => s.parse().map_err(|e: String| invalid(format!("template: {e}"))),
        None => Ok(Fig1Template::default()),
    }
}

fn int(b: &BigInt) -> Value {
    i64::try_from(b).map_or_else(|_| Value::String(b.to_string()), Value::from)
}

fn hopf_json(h: &Hopf) -> Value {
    match h {
        Hopf::Value(v) => Value::String(v.to_string()),
        Hopf::NonTorsion => Value::Null,
    }
}

fn coset_json(c: &CosetVector) -> Value {
    json!({
        "moduli": c.moduli.iter().map(int).collect::<Vec<_>>(),
        "coords": c.coords.iter().map(int).collect::<Vec<_>>(),
    })
}

fn witness_json(w: &PatternWitness, rule_id: &str) -> Value {
    json!({
        "kind": w.kind.to_string(),
        "component": w.component,
        "events": w.event_indices,
        "parity": w.parity_data,
        "rule": rule_id,
        "citation": verdict::rule(rule_id).citation,
    })
}

fn invariants(arg: &str) -> Result<Report, Failure> {
    let file = load_front(arg)?;
    let f = file.oriented().map_err(invalid)?;
    let m = f.component_count();
    let mut text = format!("front {}: {} component(s)\n", file.name, m);
    let mut comps = Vec::new();
    for c in 0..m {
        let (up, down) = f.cusp_counts(c).map_err(invalid)?;
        let (tb, rot) = (f.tb(c), f.rot(c));
        let writhe = f.writhe(Some((c, c)));
        writeln!(text, "  component {c}: tb {tb}, rot {rot}, writhe {writhe}, cusps up {up} down {down}").unwrap();
        comps.push(json!({"index": c, "tb": tb, "rot": rot, "writhe": writhe, "cusps_up": up, "cusps_down": down}));
    }
    let linking: Vec<Vec<i64>> = (0..m).map(|a| (0..m).map(|b| if a == b { 0 } else { f.linking(a, b) }).collect()).collect();
    if m > 1 {
        writeln!(text, "  linking {linking:?}").unwrap();
    }
    Ok(Report::new(text, json!({"front": file.name, "word": file.word.to_string(), "components": comps, "linking": linking})))
}

fn detect(arg: &str, t: &Option<String>) -> Result<Report, Failure> {
    let file = load_front(arg)?;
    let t = template(t)?;
    let f = file.oriented().map_err(invalid)?;
    let zig_rule = if f.component_count() == 1 { "ot.zigzag-knot" } else { "ot.zigzag-link" };
    let mut text = format!("front {}\n", file.name);
    let mut out = Vec::new();
    for z in find_zigzags(&file.word).map_err(invalid)? {
        writeln!(text, "  zigzag on component {} at events {:?} [{zig_rule}]", z.component, z.event_indices).unwrap();
        out.push(witness_json(&z, zig_rule));
    }
    for c in 0..f.component_count() {
        if let Some(w) = has_fig1_config(&f, c, &t) {
            writeln!(
                text,
                "  fig1 configuration on component {c} at events {:?}, {} cusps between U and U' [ot.fig1]",
                w.event_indices,
                w.parity_data.unwrap_or(0)
            )
            .unwrap();
            out.push(witness_json(&w, "ot.fig1"));
        }
    }
    if out.is_empty() {
        text.push_str("  no patterns\n");
    }
    Ok(Report::new(text, json!({"front": file.name, "template": t.to_string(), "witnesses": out})))
}

fn surgery_cmd(path: &Path) -> Result<Report, Failure> {
    let d = load_diagram(path)?;
    let m = surgery::linking_matrix(&d);
    let h1 = surgery::homology(&m);
    let smooth: Vec<i64> = (0..d.size()).map(|c| d.smooth_coefficient(c)).collect();
    let sigma = m.signature();
    let chi = 1 + d.size();
    let c2 = surgery::c_squared(&d);
    let h = surgery::hopf_invariant(&d);
    let chat = surgery::expected_chat_degree(&d);
    let c1 = surgery::c1_class(&d);
    let spinc = surgery::spinc_class(&d);
    let c2s = c2.as_ref().map_or("undefined".to_string(), |v| v.to_string());
    let mut text = format!("diagram {}\n", d.name);
    for (c, k) in d.coefficients.iter().enumerate() {
        writeln!(text, "  {} ({c}): contact {k}, tb {}, rot {}, smooth {}", d.labels[c], d.front.tb(c), d.front.rot(c), smooth[c]).unwrap();
    }
    writeln!(text, "  linking matrix {m}").unwrap();
    writeln!(text, "  H1 {h1}").unwrap();
    writeln!(text, "  sigma {sigma}, chi {chi}, q {}", d.q()).unwrap();
    writeln!(text, "  c^2 {c2s}").unwrap();
    writeln!(text, "  h {h}").unwrap();
    writeln!(text, "  expected chat degree {chat}").unwrap();
    writeln!(text, "  c1 class {c1}").unwrap();
    writeln!(text, "  spin^c class {spinc}").unwrap();
    let json = json!({
        "diagram": d.name,
        "components": (0..d.size()).map(|c| json!({
            "index": c,
            "label": d.labels[c],
            "contact": d.coefficients[c].value(),
            "tb": d.front.tb(c),
            "rot": d.front.rot(c),
            "smooth": smooth[c],
        })).collect::<Vec<_>>(),
        "linking_matrix": m.rows,
        "h1": {"free_rank": h1.free_rank, "torsion": h1.torsion.iter().map(int).collect::<Vec<_>>(), "text": h1.to_string()},
        "signature": sigma,
        "euler_characteristic": chi,
        "q": d.q(),
        "c_squared": c2.map(|v| v.to_string()),
        "hopf": hopf_json(&h),
        "chat_degree": hopf_json(&chat),
        "c1_class": coset_json(&c1),
        "spinc_class": coset_json(&spinc),
    });
    Ok(Report::new(text, json))
}

fn seifert_cmd(k: i64) -> Result<Report, Failure> {
    let v = seifert::twist_knot_seifert(k).map_err(invalid)?;
    let delta = seifert::alexander(&v).map_err(invalid)?;
    let sig = seifert::signature(&v);
    let ev = seifert::integer_eigenvalues(&v.symmetrized());
    let det = seifert::knot_determinant(&delta);
    let (pos, neg) = hfmod::twist_zero_surgery_hf(2 * k as u64).map_err(invalid)?;
    let mut text = format!("twist knot k = {k}\n");
    writeln!(text, "  V {v}").unwrap();
    writeln!(text, "  alexander {delta}").unwrap();
    writeln!(text, "  determinant {det}").unwrap();
    writeln!(text, "  signature {}", sig.signature).unwrap();
    match &ev {
        Some(e) => writeln!(text, "  eigenvalues of V + V^T {e:?}").unwrap(),
        None => text.push_str("  eigenvalues of V + V^T not integral\n"),
    }
    writeln!(text, "  HF+ of 0-surgery {pos}").unwrap();
    writeln!(text, "  HF+ of its reverse {neg}").unwrap();
    let json = json!({
        "k": k,
        "seifert_matrix": v.rows(),
        "alexander": delta.to_string(),
        "alexander_coeffs": delta.coeffs().iter().map(|(d, c)| json!([d, int(c)])).collect::<Vec<_>>(),
        "determinant": int(&det),
        "signature": sig.signature,
        "eigenvalues": ev,
        "hf_zero_surgery": pos.to_string(),
        "hf_reversed": neg.to_string(),
    });
    Ok(Report::new(text, json))
}

fn hf_cmd(op: &HfCmd) -> Result<Report, Failure> {
    match op {
        HfCmd::Dual { module } => {
            let m: GradedModule = module.parse().map_err(invalid)?;
            let d = hfmod::dual(&m);
            Ok(Report::new(format!("{d}\n"), json!({"input": m.to_string(), "dual": d.to_string()})))
        }
        HfCmd::Triangle { a, b, c } => {
            let im = hfmod::image_ranks(TriangleRanks::new(*a, *b, *c).map_err(invalid)?).map_err(invalid)?;
            let flags = |r: hfmod::MapRank| json!({"image": r.image, "domain": r.domain, "zero": r.forced_zero(), "injective": r.forced_injective()});
            let text = format!(
                "A->B {}, B->C {}, C->A {}{}\n",
                im.ab.image,
                im.bc.image,
                im.ca.image,
                if im.ab.forced_zero() || im.bc.forced_zero() || im.ca.forced_zero() { " (forced zero map present)" } else { "" }
            );
            Ok(Report::new(text, json!({"ranks": [a, b, c], "ab": flags(im.ab), "bc": flags(im.bc), "ca": flags(im.ca)})))
        }
        HfCmd::Vrank { k } => {
            let (rank, steps) = hfmod::v_rank_trace(*k).map_err(invalid)?;
            let split = hfmod::v_rank_split(*k).map_err(invalid)?;
            let mut text = String::new();
            for s in &steps {
                let t = s.triangle;
                writeln!(text, "  step {}: ranks ({}, {}, {}) images {:?}", s.k, t.a, t.b, t.c, s.images.tuple()).unwrap();
            }
            writeln!(text, "rank V({k}) = {rank}, per torsion class {split:?}").unwrap();
            let json = json!({
                "k": k,
                "rank": rank,
                "per_class": split,
                "steps": steps.iter().map(|s| json!({"k": s.k, "ranks": [s.triangle.a, s.triangle.b, s.triangle.c], "images": [s.images.ab.image, s.images.bc.image, s.images.ca.image]})).collect::<Vec<_>>(),
            });
            Ok(Report::new(text, json))
        }
    }
}

fn verdict_cmd(path: &Path, facts: &Option<PathBuf>, t: &Option<String>) -> Result<Report, Failure> {
    let d = load_diagram(path)?;
    let store = match facts {
        Some(p) => verdict::parse_facts(&read(p)?, &d).map_err(invalid)?,
        None => FactStore::default(),
    };
    let r = verdict::evaluate_with(&d, &store, &template(t)?);
    let mut text = format!("{}\nverdict {}\n", r.diagram, r.verdict);
    for x in &r.reasons {
        let at = x.component.map_or(String::new(), |c| format!(" on {}", d.labels[c]));
        writeln!(text, "  [{}]{at}: {}\n    {}", x.rule_id, x.witness, x.citation).unwrap();
    }
    if r.contradiction {
        text.push_str("contradiction: tight and non-tight rules both fired\n");
    }
    let json = json!({
        "diagram": r.diagram,
        "verdict": r.verdict.to_string(),
        "contradiction": r.contradiction,
        "reasons": r.reasons.iter().map(|x| json!({
            "rule": x.rule_id,
            "citation": x.citation,
            "component": x.component,
            "witness": x.witness,
        })).collect::<Vec<_>>(),
        "tb_trace": r.tb_trace.as_ref().map(|t| json!({
            "h1_orders": [t.h1_orders.0, t.h1_orders.1],
            "ranks": [t.triangle.a, t.triangle.b, t.triangle.c],
            "images": [t.images.ab.image, t.images.bc.image, t.images.ca.image],
        })),
    });
    Ok(Report { text, json, contradiction: r.contradiction })
}

fn rules() -> Report {
    let mut text = String::new();
    for r in RULES {
        writeln!(text, "{:<26} {:<18} {}", r.id, r.verdict.to_string(), r.citation).unwrap();
    }
    let json = Value::Array(RULES.iter().map(|r| json!({"id": r.id, "verdict": r.verdict.to_string(), "citation": r.citation})).collect());
    Report::new(text, json)
}

fn run(cli: &Cli) -> Result<Report, Failure> {
    match &cli.cmd {
        Cmd::Invariants { front } => invariants(front),
        Cmd::Detect { front, template } => detect(front, template),
        Cmd::Surgery { diagram } => surgery_cmd(diagram),
        Cmd::Seifert { twist } => seifert_cmd(*twist),
        Cmd::Hf { op } => hf_cmd(op),
        Cmd::Verdict { diagram, facts, template } => verdict_cmd(diagram, facts, template),
        Cmd::Rules => Ok(rules()),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(r) => {
            let body = if cli.json { serde_json::to_string_pretty(&r.json).expect("json") + "\n" } else { r.text };
            // a closed pipe is not an error for a report
            let _ = io::stdout().lock().write_all(body.as_bytes());
            ExitCode::from(if r.contradiction { 3 } else { 0 })
        }
        Err(e) => {
            let (kind, msg) = match &e {
                Failure::Io(m) => ("io", m),
                Failure::Invalid(m) => ("validation", m),
            };
            if cli.json {
                println!("{}", json!({"error": kind, "message": msg}));
            } else {
                eprintln!("error: {msg}");
            }
            ExitCode::from(e.code())
        }
    }
}
