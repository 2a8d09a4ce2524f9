//! Command-line front end.
//!
//! Exit codes: 0 success, 1 definite negative answer to a decision command,
//! 2 usage or input error, 3 violated theorem contract.

mod instance;

use std::ffi::OsString;
use std::fmt::Write as _;
use std::ops::ControlFlow;

use clap::{Args, Parser, Subcommand};
use num_bigint::BigInt;
use serde_json::{json, Value};

use crate::colored::{
    build_cteg_family, caratheodory_exceptions, classify, find_k_chromatic, verify_unique_expressions,
};
use crate::diophantine::{hilbert_basis_homogeneous, SolutionVector};
use crate::error::Error;
use crate::helly::{
    build_mthelly_example, cover_heuristic, helly_audit, tverberg_partition, AuditOptions, CaseAssertion, CoverHint,
    SemigroupFamily, SharpnessCase,
};
use crate::numerical::{
    chromatic_frobenius, count_k_chromatic, fit_quasipolynomial, frobenius, gaps, reduction_construct, BChoice,
    ReductionMode,
};
use crate::semigroup::intersect_family;
use crate::vector::IntVector;

pub use instance::{parse_instance, parse_instance_str, parse_vector, Color, InstanceDocument, InstanceError};

pub const EXIT_OK: i32 = 0;
pub const EXIT_NEGATIVE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_ANOMALY: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "colorsg", version, about = "Exact computations on colored affine and numerical semigroups")]
pub struct Cli {
    /// Emit a JSON report instead of text.
    #[arg(long, global = true)]
    pub json: bool,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct InstanceArg {
    /// Instance document (JSON); `-` reads stdin.
    pub instance: String,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Enumerate all solutions of `Ax = b` over the pooled generators.
    Solve {
        #[command(flatten)]
        input: InstanceArg,
        /// Target vector, e.g. `3,95,98`; defaults to the document targets.
        #[arg(long, value_parser = parse_vector)]
        target: Vec<IntVector>,
        /// Maximum number of solutions listed per target.
        #[arg(long, default_value_t = 10_000)]
        limit: usize,
    },
    /// Classify a solution vector by the colors it uses.
    Classify {
        #[command(flatten)]
        input: InstanceArg,
        /// Multiplicities, one per generator in document order.
        #[arg(long, value_parser = parse_vector)]
        solution: IntVector,
    },
    /// Decide membership, or k-chromatic membership with `--k`.
    Member {
        #[command(flatten)]
        input: InstanceArg,
        #[arg(long, value_parser = parse_vector)]
        target: Vec<IntVector>,
        #[arg(long)]
        k: Option<usize>,
    },
    /// Minimal generators of the intersection of the color semigroups.
    Intersect {
        #[command(flatten)]
        input: InstanceArg,
    },
    /// Hilbert basis of `{x >= 0 : Ax = 0}`, columns taken in document order.
    Hilbert {
        #[command(flatten)]
        input: InstanceArg,
    },
    /// Audit the Helly contract for the color semigroups, or for a sharpness example.
    HellyAudit {
        /// Instance whose colors are the family members; omit with `--example`.
        instance: Option<String>,
        /// pointed-noncover, pointed-cover or general.
        #[arg(long, default_value = "general")]
        case: String,
        /// Build the sharpness family a, b or c instead of reading an instance.
        #[arg(long)]
        example: Option<String>,
        /// Dimension of the sharpness family.
        #[arg(long, default_value_t = 2)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 2000)]
        max_subsets: u64,
    },
    /// Split the pooled generators into `r` classes sharing a nonzero element.
    Tverberg {
        #[command(flatten)]
        input: InstanceArg,
        #[arg(long)]
        r: usize,
    },
    /// Elements with a monochromatic solution of every color but no chromatic one.
    Caratheodory {
        #[command(flatten)]
        input: InstanceArg,
    },
    /// Frobenius number of the pooled generators (dimension 1).
    Frobenius {
        #[command(flatten)]
        input: InstanceArg,
    },
    /// Largest integer with no k-chromatic representation (dimension 1).
    ChromaticFrobenius {
        #[command(flatten)]
        input: InstanceArg,
        #[arg(long)]
        k: usize,
    },
    /// Gap set, or chromatic gap set with `--k` (dimension 1).
    Gaps {
        #[command(flatten)]
        input: InstanceArg,
        #[arg(long)]
        k: Option<usize>,
    },
    /// Number of k-chromatic representations of each target (dimension 1).
    Count {
        #[command(flatten)]
        input: InstanceArg,
        #[arg(long)]
        k: usize,
        #[arg(long, value_parser = parse_vector)]
        target: Vec<IntVector>,
    },
    /// Fit the k-chromatic counting function by a quasipolynomial (dimension 1).
    Quasipoly {
        #[command(flatten)]
        input: InstanceArg,
        #[arg(long)]
        k: usize,
        /// Number of held-out values checked after the fitting window.
        #[arg(long, default_value_t = 30)]
        window: u64,
        /// First value of the fitting window.
        #[arg(long, default_value_t = 1)]
        start: u64,
    },
    /// The unique-expression family of size n.
    Cteg {
        #[arg(long)]
        n: usize,
        /// Enumerate every representation of p.
        #[arg(long)]
        verify: bool,
    },
    /// Build the instance whose CF_{k+1} is fixed by CF_k, and check it (dimension 1).
    Reduce {
        #[command(flatten)]
        input: InstanceArg,
        #[arg(long)]
        k: usize,
        /// a (doubling) or b (appending).
        #[arg(long)]
        mode: String,
        /// minimal or explicit.
        #[arg(long, default_value = "minimal")]
        b_choice: String,
    },
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Solve { .. } => "solve",
            Command::Classify { .. } => "classify",
            Command::Member { .. } => "member",
            Command::Intersect { .. } => "intersect",
            Command::Hilbert { .. } => "hilbert",
            Command::HellyAudit { .. } => "helly-audit",
            Command::Tverberg { .. } => "tverberg",
            Command::Caratheodory { .. } => "caratheodory",
            Command::Frobenius { .. } => "frobenius",
            Command::ChromaticFrobenius { .. } => "chromatic-frobenius",
            Command::Gaps { .. } => "gaps",
            Command::Count { .. } => "count",
            Command::Quasipoly { .. } => "quasipoly",
            Command::Cteg { .. } => "cteg",
            Command::Reduce { .. } => "reduce",
        }
    }
}

/// What a run prints and returns.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Output {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// A finished report: JSON body, text rendering and exit code.
struct Report {
    json: Value,
    text: String,
    code: i32,
}

impl Report {
    fn ok(json: Value, text: String) -> Self {
        Report { json, text, code: EXIT_OK }
    }
}

#[derive(Debug)]
enum Failure {
    Instance(InstanceError),
    Library(Error),
    Usage(String),
}

impl Failure {
    fn code(&self) -> i32 {
        match self {
            Failure::Library(Error::Anomaly(_) | Error::ValidationFailed { .. }) => EXIT_ANOMALY,
            Failure::Library(Error::HypothesisUnmet { .. }) => EXIT_NEGATIVE,
            _ => EXIT_USAGE,
        }
    }
}

impl std::fmt::Display for Failure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Failure::Instance(e) => e.fmt(f),
            Failure::Library(e) => e.fmt(f),
            Failure::Usage(s) => f.write_str(s),
        }
    }
}

impl From<InstanceError> for Failure {
    fn from(e: InstanceError) -> Self {
        Failure::Instance(e)
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Library(e)
    }
}

type Outcome = std::result::Result<Report, Failure>;

/// Parses arguments and runs the selected command.
pub fn run<I, T>(args: I) -> Output
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let rendered = e.render().to_string();
            return if e.use_stderr() {
                Output { code: EXIT_USAGE, stdout: String::new(), stderr: rendered }
            } else {
                Output { code: EXIT_OK, stdout: rendered, stderr: String::new() }
            };
        }
    };
    let name = cli.command.name();
    match dispatch(&cli.command) {
        Ok(report) => {
            let stdout = if cli.json {
                let mut body = json!({ "command": name });
                if let (Value::Object(b), Value::Object(extra)) = (&mut body, report.json) {
                    b.extend(extra);
                }
                render_json(&body)
            } else {
                report.text
            };
            Output { code: report.code, stdout, stderr: String::new() }
        }
        Err(failure) => {
            let code = failure.code();
            let stdout = if cli.json {
                render_json(&json!({ "command": name, "error": failure.to_string(), "exit_code": code }))
            } else {
                String::new()
            };
            Output { code, stdout, stderr: format!("error: {failure}\n") }
        }
    }
}

fn render_json(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

fn dispatch(command: &Command) -> Outcome {
    match command {
        Command::Solve { input, target, limit } => solve(&load(input)?, target, *limit),
        Command::Classify { input, solution } => classify_cmd(&load(input)?, solution),
        Command::Member { input, target, k } => member(&load(input)?, target, *k),
        Command::Intersect { input } => intersect(&load(input)?),
        Command::Hilbert { input } => hilbert(&load(input)?),
        Command::HellyAudit { instance, case, example, n, seed, max_subsets } => helly(
            instance.as_deref(),
            case,
            example.as_deref(),
            *n,
            AuditOptions { seed: *seed, max_subsets: *max_subsets },
        ),
        Command::Tverberg { input, r } => tverberg(&load(input)?, *r),
        Command::Caratheodory { input } => caratheodory(&load(input)?),
        Command::Frobenius { input } => frobenius_cmd(&load(input)?),
        Command::ChromaticFrobenius { input, k } => chromatic_frobenius_cmd(&load(input)?, *k),
        Command::Gaps { input, k } => gaps_cmd(&load(input)?, *k),
        Command::Count { input, k, target } => count(&load(input)?, *k, target),
        Command::Quasipoly { input, k, window, start } => quasipoly(&load(input)?, *k, *window, *start),
        Command::Cteg { n, verify } => cteg(*n, *verify),
        Command::Reduce { input, k, mode, b_choice } => reduce(&load(input)?, *k, mode, b_choice),
    }
}

fn load(input: &InstanceArg) -> std::result::Result<InstanceDocument, Failure> {
    Ok(parse_instance(&input.instance)?)
}

fn targets_or_document(doc: &InstanceDocument, flags: &[IntVector]) -> std::result::Result<Vec<IntVector>, Failure> {
    let targets = if flags.is_empty() { doc.targets.clone() } else { flags.to_vec() };
    if targets.is_empty() {
        return Err(Failure::Usage("no target given (use --target or a \"targets\" field)".into()));
    }
    if let Some(t) = targets.iter().find(|t| t.dim() != doc.dimension) {
        return Err(Error::DimensionMismatch { expected: doc.dimension, found: t.dim() }.into());
    }
    Ok(targets)
}

fn vectors(vs: &[IntVector]) -> String {
    vs.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ")
}

fn solve(doc: &InstanceDocument, flags: &[IntVector], limit: usize) -> Outcome {
    let colored = doc.colored()?;
    let space = colored.solution_space()?;
    let mut out = Vec::new();
    let mut text = String::new();
    for b in targets_or_document(doc, flags)? {
        let mut sols: Vec<SolutionVector> = Vec::new();
        let mut truncated = false;
        space.for_each_solution(&b, |x| {
            if sols.len() == limit {
                truncated = true;
                return ControlFlow::Break(());
            }
            sols.push(SolutionVector::new(IntVector::new(x.to_vec())).expect("nonnegative"));
            ControlFlow::Continue(())
        });
        let mut rows = Vec::with_capacity(sols.len());
        writeln!(text, "b = {b}: {} solution(s){}", sols.len(), if truncated { " (truncated)" } else { "" }).unwrap();
        for x in &sols {
            let label = classify(&colored, x)?.label();
            writeln!(text, "  {x}  {label}").unwrap();
            rows.push(json!({ "x": x, "label": label }));
        }
        out.push(json!({ "target": b, "count": sols.len(), "truncated": truncated, "solutions": rows }));
    }
    Ok(Report::ok(json!({ "targets": out }), text))
}

fn classify_cmd(doc: &InstanceDocument, solution: &IntVector) -> Outcome {
    let colored = doc.colored()?;
    let x = SolutionVector::new(solution.clone())?;
    let c = classify(&colored, &x)?;
    let b = x.evaluate(colored.generators(), doc.dimension);
    let names: Vec<&str> = c.colors_used.iter().map(|&i| doc.colors[i].name.as_str()).collect();
    let label = c.label();
    let text = format!(
        "x = {x}\nb = {b}\ncolors used: {} of {} [{}]\n{label}\n",
        c.chromatic_level,
        colored.num_colors(),
        names.join(", ")
    );
    Ok(Report::ok(
        json!({
            "solution": x,
            "b": b,
            "colors_used": names,
            "chromatic_level": c.chromatic_level,
            "monochromatic": c.is_monochromatic,
            "chromatic": c.is_chromatic,
            "colorful": c.is_colorful,
            "label": label,
        }),
        text,
    ))
}

fn member(doc: &InstanceDocument, flags: &[IntVector], k: Option<usize>) -> Outcome {
    let targets = targets_or_document(doc, flags)?;
    let mut rows = Vec::new();
    let mut text = String::new();
    let mut all = true;
    for b in targets {
        let witness = match k {
            Some(k) => find_k_chromatic(&doc.colored()?, &b, k)?,
            None => doc.pooled()?.representation(&b)?,
        };
        let is_member = witness.is_some();
        all &= is_member;
        match &witness {
            Some(x) => writeln!(text, "{b}: member, x = {x}").unwrap(),
            None => writeln!(text, "{b}: not a member").unwrap(),
        }
        rows.push(json!({ "target": b, "member": is_member, "solution": witness }));
    }
    let mut report = Report::ok(json!({ "k": k, "results": rows }), text);
    if !all {
        report.code = EXIT_NEGATIVE;
    }
    Ok(report)
}

fn intersect(doc: &InstanceDocument) -> Outcome {
    let members = doc.members()?;
    let meet = intersect_family(&members)?;
    let gens = meet.generators();
    let text = if gens.is_empty() {
        "intersection is trivial\n".to_string()
    } else {
        format!("{} minimal generator(s): {}\n", gens.len(), vectors(gens))
    };
    Ok(Report::ok(json!({ "trivial": gens.is_empty(), "generators": gens }), text))
}

fn hilbert(doc: &InstanceDocument) -> Outcome {
    let columns: Vec<IntVector> = doc.colors.iter().flat_map(|c| c.generators.clone()).collect();
    let rows: Vec<IntVector> =
        (0..doc.dimension).map(|r| IntVector::new(columns.iter().map(|c| c[r].clone()).collect())).collect();
    let basis = hilbert_basis_homogeneous(&rows, columns.len());
    let text =
        format!("{} basis element(s)\n{}", basis.len(), basis.iter().map(|v| format!("  {v}\n")).collect::<String>());
    Ok(Report::ok(json!({ "basis": basis }), text))
}

fn helly(instance: Option<&str>, case: &str, example: Option<&str>, n: usize, options: AuditOptions) -> Outcome {
    let family = match (instance, example) {
        (Some(_), Some(_)) => return Err(Failure::Usage("give either an instance or --example, not both".into())),
        (None, None) => return Err(Failure::Usage("an instance or --example is required".into())),
        (None, Some(ex)) => build_mthelly_example(ex.parse::<SharpnessCase>()?, n)?,
        (Some(path), None) => {
            let doc = parse_instance(path)?;
            SemigroupFamily::new(doc.members()?, case.parse::<CaseAssertion>()?)?
        }
    };
    let report = helly_audit(&family, options)?;
    let cover = cover_heuristic(&family, 200, options.seed);
    let cover_text = match &cover {
        CoverHint::NotCovered { direction } => format!("not covered (direction {direction})"),
        CoverHint::Likely { samples } => format!("likely ({samples} samples)"),
    };
    let mut text = String::new();
    writeln!(
        text,
        "case {}, dimension {}, {} member(s), N = {}",
        report.case.name(),
        report.dim,
        report.members,
        report.n_used
    )
    .unwrap();
    for p in [&report.premise, &report.premise_below] {
        write!(
            text,
            "premise at {}: {} ({} subset(s) checked",
            p.size,
            if p.holds { "holds" } else { "fails" },
            p.subsets_checked
        )
        .unwrap();
        if let Some(c) = &p.counterexample {
            write!(text, ", counterexample {c:?}").unwrap();
        }
        writeln!(text, ")").unwrap();
    }
    writeln!(text, "full intersection: {}", if report.conclusion_holds { "nontrivial" } else { "trivial" }).unwrap();
    if let Some(w) = &report.witness {
        writeln!(text, "witness: {w}").unwrap();
    }
    writeln!(text, "cover: {cover_text}").unwrap();
    writeln!(text, "seed: {}", options.seed).unwrap();
    if let Some(note) = &report.note {
        writeln!(text, "note: {note}").unwrap();
    }
    if report.anomaly {
        writeln!(text, "ANOMALY: premise holds but the full intersection is trivial").unwrap();
    }
    let mut json = serde_json::to_value(&report).expect("serializable");
    json["cover"] = serde_json::to_value(&cover).expect("serializable");
    json["seed"] = json!(options.seed);
    let code = if report.anomaly { EXIT_ANOMALY } else { EXIT_OK };
    Ok(Report { json, text, code })
}

fn tverberg(doc: &InstanceDocument, r: usize) -> Outcome {
    let s = doc.pooled()?;
    let t = tverberg_partition(&s, r)?;
    let gens = s.generators();
    let classes: Vec<Vec<IntVector>> = t.classes.iter().map(|c| c.iter().map(|&i| gens[i].clone()).collect()).collect();
    let mut text = format!("p = {}\n", t.point);
    for (i, (c, x)) in classes.iter().zip(&t.representations).enumerate() {
        writeln!(text, "class {}: {}  x = {x}", i + 1, vectors(c)).unwrap();
    }
    if !t.hypothesis_met {
        writeln!(text, "note: hypothesis k >= d(r-1)+1 unmet; partition found anyway").unwrap();
    }
    Ok(Report::ok(
        json!({
            "point": t.point,
            "classes": classes,
            "representations": t.representations,
            "hypothesis_met": t.hypothesis_met,
            "partitions_checked": t.partitions_checked,
        }),
        text,
    ))
}

fn caratheodory(doc: &InstanceDocument) -> Outcome {
    let report = caratheodory_exceptions(&doc.colored()?)?;
    let mut text = format!(
        "intersection generators: {}\ncandidates checked: {}\n{} exception(s)\n",
        vectors(&report.intersection_generators),
        report.candidates_checked,
        report.exceptions.len()
    );
    for e in &report.exceptions {
        writeln!(
            text,
            "  {}  monochromatic: {}",
            e.b,
            e.monochromatic.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ")
        )
        .unwrap();
    }
    Ok(Report::ok(serde_json::to_value(&report).expect("serializable"), text))
}

fn frobenius_cmd(doc: &InstanceDocument) -> Outcome {
    let a = doc.numerical()?.generators();
    let f = frobenius(&a)?;
    Ok(Report::ok(json!({ "generators": a, "frobenius": f }), format!("F = {f}\n")))
}

fn chromatic_frobenius_cmd(doc: &InstanceDocument, k: usize) -> Outcome {
    let r = chromatic_frobenius(&doc.numerical()?, k)?;
    let mut text = format!(
        "CF_{k} = {}\nbounds: [{}, {}]\nF = {}\nm(A,k) = {:?}\ngaps: {:?}\n",
        r.value, r.lower, r.upper, r.frobenius, r.offsets, r.gaps
    );
    if let Some(note) = &r.note {
        writeln!(text, "note: {note}").unwrap();
    }
    let code = if r.bounds_hold { EXIT_OK } else { EXIT_ANOMALY };
    Ok(Report { json: serde_json::to_value(&r).expect("serializable"), text, code })
}

fn gaps_cmd(doc: &InstanceDocument, k: Option<usize>) -> Outcome {
    let s = doc.numerical()?;
    let g = match k {
        Some(k) => chromatic_frobenius(&s, k)?.gaps,
        None => gaps(&s.generators())?,
    };
    let text = format!("{} gap(s): {:?}\n", g.len(), g);
    Ok(Report::ok(json!({ "k": k, "gaps": g }), text))
}

fn count(doc: &InstanceDocument, k: usize, flags: &[IntVector]) -> Outcome {
    let s = doc.numerical()?;
    let mut rows = Vec::new();
    let mut text = String::new();
    for b in targets_or_document(doc, flags)? {
        let v = u64::try_from(&b[0])
            .map_err(|_| Failure::Usage(format!("target {b} must be a nonnegative 64-bit integer")))?;
        let n = count_k_chromatic(&s, v, k)?;
        writeln!(text, "f_{k}({v}) = {n}").unwrap();
        rows.push(json!({ "b": v, "count": crate::vector::json_int(&BigInt::from(n)) }));
    }
    Ok(Report::ok(json!({ "k": k, "counts": rows }), text))
}

fn quasipoly(doc: &InstanceDocument, k: usize, window: u64, start: u64) -> Outcome {
    let qp = fit_quasipolynomial(&doc.numerical()?, k, start, window)?;
    let mut text =
        format!("period {}, valid from b = {}, validated on {window} held-out value(s)\n", qp.period, qp.threshold);
    for (r, c) in qp.constituents.iter().enumerate() {
        let terms: Vec<String> = c.iter().enumerate().map(|(p, x)| format!("({x})*b^{p}")).collect();
        writeln!(text, "  b = {r} mod {}: {}", qp.period, terms.join(" + ")).unwrap();
    }
    let mut json = serde_json::to_value(&qp).expect("serializable");
    json["k"] = json!(k);
    json["validated"] = json!(window);
    Ok(Report::ok(json, text))
}

fn cteg(n: usize, verify: bool) -> Outcome {
    let family = build_cteg_family(n)?;
    let mut text = format!("p = {}\n", family.p);
    for (i, row) in family.rows.iter().enumerate() {
        writeln!(text, "S_{}: g = {}  g' = {}  g'' = {}", i + 1, row.g, row.g1, row.g2).unwrap();
    }
    let mut json = serde_json::to_value(&family).expect("serializable");
    let mut code = EXIT_OK;
    if verify {
        let v = verify_unique_expressions(n)?;
        let ok = v.unique_expressions && v.all_monochromatic;
        writeln!(
            text,
            "{} representations, {}",
            v.representations.len(),
            if v.all_monochromatic { "all monochromatic" } else { "NOT all monochromatic" }
        )
        .unwrap();
        if !ok {
            writeln!(text, "ANOMALY: representations are not exactly g_i + g'_i + g''_i").unwrap();
            code = EXIT_ANOMALY;
        }
        json["verification"] = serde_json::to_value(&v).expect("serializable");
    }
    Ok(Report { json, text, code })
}

fn reduce(doc: &InstanceDocument, k: usize, mode: &str, b_choice: &str) -> Outcome {
    let mode = match mode {
        "a" | "doubling" => ReductionMode::Doubling,
        "b" | "append" => ReductionMode::Append,
        other => return Err(Failure::Usage(format!("unknown mode '{other}' (expected a or b)"))),
    };
    let choice = match b_choice {
        "minimal" => BChoice::Minimal,
        "explicit" => BChoice::Explicit,
        other => return Err(Failure::Usage(format!("unknown b choice '{other}'"))),
    };
    let r = reduction_construct(&doc.numerical()?, k, mode, choice)?;
    let (predicted, computed) = r.check()?;
    let text = format!(
        "b = {}\ninstance: {:?}\nCF_{} predicted {predicted}, computed {computed}: {}\n",
        r.b,
        r.instance.classes(),
        k + 1,
        if predicted == computed { "match" } else { "MISMATCH" }
    );
    let mut json = serde_json::to_value(&r).expect("serializable");
    json["computed"] = json!(computed);
    json["matches"] = json!(predicted == computed);
    let code = if predicted == computed { EXIT_OK } else { EXIT_ANOMALY };
    Ok(Report { json, text, code })
}
