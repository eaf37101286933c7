//! Command dispatch and the JSON result document.

use std::collections::BTreeMap;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::{json, Value};

use crate::ce_cohomology::{
    cohomology, five_term_check, truncated_cohomology, CochainComplex, CohomologySummary,
};
use crate::cli::session::{parse_field, CocycleLiteral, Lit, Overrides, Session};
use crate::error::{Error, Result};
use crate::exact_algebra::{BaseRing, ExactMatrix, Field, Poly};
use crate::extensions::{
    classify, enumerate_extensions, equivalent, extend_from_cocycle, obstruction, star_sum,
    CentralPart, Equivalence, ExtensionTriple,
};
use crate::free_lie::{
    bracketing, free_cohomology_vanishing_check, present_as_quotient, witt_count, FreeLieAlgebra,
    SkewAlgebra,
};
use crate::lie_rinehart::{
    center, derivation_spaces, GradedBracketStructure, LieRinehartAlgebra, PolyMatrix,
    ValidationReport,
};

#[derive(Parser, Debug)]
#[command(
    name = "lrcalc",
    version,
    about = "Exact computations with Lie-Rinehart algebras"
)]
struct Cli {
    /// Session file (JSON).
    #[arg(long, global = true)]
    session: Option<String>,
    /// Weight cutoff; overrides the session value.
    #[arg(long, global = true)]
    cutoff: Option<usize>,
    /// Ground field, "Q" or "F<p>"; overrides the session value.
    #[arg(long, global = true)]
    field: Option<String>,
    /// Spaces per indentation level; 0 prints compact JSON.
    #[arg(long, global = true, default_value_t = 2)]
    json_indent: usize,
    /// Include representative cocycles and witnesses.
    #[arg(long, global = true)]
    witness: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Serialize)]
struct AlgebroidArg {
    #[arg(long)]
    algebroid: String,
}

#[derive(Args, Debug, Serialize)]
struct ModuleArgs {
    #[arg(long)]
    algebroid: String,
    /// A session representation, or `trivial` / `adjoint`.
    #[arg(long, default_value = "trivial")]
    rep: String,
}

#[derive(Args, Debug, Serialize)]
struct FiveTermArgs {
    #[arg(long)]
    algebroid: String,
    /// Frame elements spanning the ideal, comma separated.
    #[arg(long, value_delimiter = ',', required = true)]
    ideal: Vec<String>,
    #[arg(long, default_value = "trivial")]
    rep: String,
}

#[derive(Args, Debug, Serialize)]
struct WordArgs {
    #[arg(long, value_delimiter = ',', required = true)]
    generators: Vec<String>,
    /// Longest bracket kept; the cutoff when omitted.
    #[arg(long)]
    length: Option<usize>,
}

#[derive(Args, Debug, Serialize)]
struct LieNfArgs {
    #[arg(long, value_delimiter = ',', required = true)]
    generators: Vec<String>,
    #[arg(long)]
    length: Option<usize>,
    /// E.g. `[a,[a,b]] - 2*[b,a]`.
    #[arg(long)]
    expr: String,
}

#[derive(Subcommand, Debug)]
enum FreeLieCommand {
    /// Lyndon basis by bracket length, with the Witt counts.
    Basis(WordArgs),
    /// Normal form of a bracket expression in the Lyndon basis.
    Nf(LieNfArgs),
}

#[derive(Args, Debug, Serialize)]
struct SkewNfArgs {
    /// A free algebroid of the session.
    #[arg(long)]
    algebroid: String,
    /// E.g. `s*x - x*s`.
    #[arg(long)]
    expr: String,
}

#[derive(Subcommand, Debug)]
enum SkewCommand {
    /// Normal form in the skew enveloping algebra of a free algebroid.
    Nf(SkewNfArgs),
}

#[derive(Args, Debug, Serialize)]
struct PresentArgs {
    #[arg(long)]
    algebroid: String,
    #[arg(long)]
    length: Option<usize>,
}

#[derive(Args, Debug, Serialize)]
struct ObstructArgs {
    /// An `outer_actions` entry of the session.
    #[arg(long)]
    action: String,
}

#[derive(Args, Debug, Serialize)]
struct ExtensionArg {
    #[arg(long)]
    extension: String,
}

#[derive(Args, Debug, Serialize)]
struct PairArgs {
    #[arg(long)]
    e1: String,
    #[arg(long)]
    e2: String,
}

#[derive(Args, Debug, Serialize)]
struct BaerArgs {
    #[arg(long)]
    e1: String,
    #[arg(long)]
    e2: String,
    /// Matrix between the centers as JSON rows, e.g. `[[1,0],[0,1]]`.
    #[arg(long)]
    center_map: Option<String>,
}

#[derive(Args, Debug, Serialize)]
struct ClassifyArgs {
    #[arg(long)]
    extension: String,
    /// A central 2-cochain literal, `{"deg": 2, "values": [...]}`.
    #[arg(
        long,
        conflicts_with = "enumerate",
        required_unless_present = "enumerate"
    )]
    cocycle: Option<String>,
    /// Enumerate all classes (finite field, ground-field base).
    #[arg(long)]
    enumerate: bool,
    #[arg(long, default_value_t = 10_000)]
    limit: usize,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check every entry of the session; exit 1 when one fails.
    Validate,
    /// Chevalley-Eilenberg cohomology table.
    Cohomology(ModuleArgs),
    /// Cohomology of the sharp truncation, with its relation to the ordinary groups.
    Truncated(ModuleArgs),
    /// The low-degree exact sequence of an ideal.
    FiveTerm(FiveTermArgs),
    /// Center of a zero-anchor algebra.
    Center(AlgebroidArg),
    /// Derivations, inner derivations and an outer complement.
    Derivations(AlgebroidArg),
    /// Axioms of the graded bracket on functions plus sections.
    GradedBracket(AlgebroidArg),
    /// Free Lie algebras.
    #[command(subcommand)]
    Freelie(FreeLieCommand),
    /// Skew enveloping algebras of free algebroids.
    #[command(subcommand)]
    Skew(SkewCommand),
    /// Presentation as a quotient of a free algebroid.
    Present(PresentArgs),
    /// Vanishing of H^2 and H^3 for a free algebroid.
    FreeVanishing(ModuleArgs),
    /// Obstruction class of an outer action; exit 1 when it is nonzero.
    Obstruct(ObstructArgs),
    /// Total algebra of an extension triple.
    Extend(ExtensionArg),
    /// Star (Baer) sum of two extensions.
    Baer(BaerArgs),
    /// Equivalence of two extensions; exit 1 when inequivalent.
    Equiv(PairArgs),
    /// Act on an extension by a central cocycle, or enumerate all classes.
    Classify(ClassifyArgs),
}

impl Command {
    fn describe(&self) -> (String, Value) {
        fn v<T: Serialize>(t: &T) -> Value {
            serde_json::to_value(t).expect("arguments serialize")
        }
        let (name, args) = match self {
            Command::Validate => ("validate", json!({})),
            Command::Cohomology(a) => ("cohomology", v(a)),
            Command::Truncated(a) => ("truncated", v(a)),
            Command::FiveTerm(a) => ("five-term", v(a)),
            Command::Center(a) => ("center", v(a)),
            Command::Derivations(a) => ("derivations", v(a)),
            Command::GradedBracket(a) => ("graded-bracket", v(a)),
            Command::Freelie(FreeLieCommand::Basis(a)) => ("freelie basis", v(a)),
            Command::Freelie(FreeLieCommand::Nf(a)) => ("freelie nf", v(a)),
            Command::Skew(SkewCommand::Nf(a)) => ("skew nf", v(a)),
            Command::Present(a) => ("present", v(a)),
            Command::FreeVanishing(a) => ("free-vanishing", v(a)),
            Command::Obstruct(a) => ("obstruct", v(a)),
            Command::Extend(a) => ("extend", v(a)),
            Command::Baer(a) => ("baer", v(a)),
            Command::Equiv(a) => ("equiv", v(a)),
            Command::Classify(a) => ("classify", v(a)),
        };
        (name.to_string(), args)
    }

    /// Free Lie computations only need a field.
    fn needs_session(&self) -> bool {
        !matches!(self, Command::Freelie(_))
    }
}

/// Exit code and the two output streams of one invocation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

struct Reply {
    result: Value,
    /// A mathematical negative answer (exit 1).
    negative: bool,
    warnings: Vec<String>,
}

impl Reply {
    fn ok(result: Value) -> Self {
        Reply {
            result,
            negative: false,
            warnings: Vec::new(),
        }
    }

    fn answer(result: Value, positive: bool) -> Self {
        Reply {
            result,
            negative: !positive,
            warnings: Vec::new(),
        }
    }

    fn scoped(mut self, exhaustive: bool, cutoff: usize) -> Self {
        if !exhaustive {
            self.warnings
                .push(format!("graded dims up to cutoff {cutoff}"));
        }
        self
    }
}

struct Context {
    field: Field,
    cutoff: usize,
    witness: bool,
    session: Option<Session>,
}

impl Context {
    fn session(&self) -> &Session {
        self.session
            .as_ref()
            .expect("session loaded for this command")
    }
}

fn render(v: &Value, indent: usize) -> String {
    if indent == 0 {
        return serde_json::to_string(v).expect("json renders");
    }
    let pad = vec![b' '; indent];
    let mut buf = Vec::new();
    let fmt = serde_json::ser::PrettyFormatter::with_indent(&pad);
    let mut ser = serde_json::Serializer::with_formatter(&mut buf, fmt);
    v.serialize(&mut ser).expect("json renders");
    String::from_utf8(buf).expect("json is utf-8")
}

fn failure(code: i32, message: String) -> Outcome {
    Outcome {
        code,
        stdout: String::new(),
        stderr: format!("lrcalc: {message}\n"),
    }
}

/// Runs one command line (`args[0]` is the program name).
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome {
                    code: 2,
                    stdout: String::new(),
                    stderr: text,
                }
            } else {
                Outcome {
                    code: 0,
                    stdout: text,
                    stderr: String::new(),
                }
            };
        }
    };
    let (name, arguments) = cli.command.describe();
    let ctx = match context(&cli) {
        Ok(c) => c,
        Err(e) => return failure(2, e.to_string()),
    };
    let reply = match execute(&cli.command, &ctx) {
        Ok(r) => r,
        Err(e) => return failure(2, e.to_string()),
    };
    let doc = json!({
        "command": name,
        "arguments": arguments,
        "input_sha256": ctx.session.as_ref().map(|s| s.digest.clone()),
        "field": ctx.field.to_string(),
        "cutoff": ctx.cutoff,
        "result": reply.result,
        "warnings": reply.warnings,
    });
    let mut stdout = render(&doc, cli.json_indent);
    stdout.push('\n');
    let stderr = if reply.negative {
        format!("lrcalc: {name}: negative answer\n")
    } else {
        String::new()
    };
    Outcome {
        code: if reply.negative { 1 } else { 0 },
        stdout,
        stderr,
    }
}

fn context(cli: &Cli) -> Result<Context> {
    let overrides = Overrides {
        field: cli.field.as_deref().map(parse_field).transpose()?,
        cutoff: cli.cutoff,
    };
    let session = match &cli.session {
        Some(path) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| Error::input(format!("cannot read '{path}': {e}")))?;
            let strict = !matches!(cli.command, Command::Validate);
            Some(Session::from_json(&text, &overrides, strict)?)
        }
        None if cli.command.needs_session() => {
            return Err(Error::input("this command needs --session"))
        }
        None => None,
    };
    let field = session
        .as_ref()
        .map(|s| s.field)
        .or(overrides.field)
        .unwrap_or(Field::Rational);
    let cutoff = session
        .as_ref()
        .map(|s| s.cutoff)
        .or(overrides.cutoff)
        .unwrap_or(crate::cli::session::DEFAULT_CUTOFF);
    Ok(Context {
        field,
        cutoff,
        witness: cli.witness,
        session,
    })
}

fn execute(cmd: &Command, ctx: &Context) -> Result<Reply> {
    match cmd {
        Command::Validate => validate(ctx.session()),
        Command::Cohomology(a) => cohomology_cmd(ctx, a),
        Command::Truncated(a) => truncated_cmd(ctx, a),
        Command::FiveTerm(a) => five_term_cmd(ctx, a),
        Command::Center(a) => center_cmd(ctx, a),
        Command::Derivations(a) => derivations_cmd(ctx, a),
        Command::GradedBracket(a) => {
            let alg = ctx.session().algebroid(&a.algebroid)?;
            let report = GradedBracketStructure::new(alg).validate();
            Ok(Reply::answer(report_json(&report), report.passed()))
        }
        Command::Freelie(FreeLieCommand::Basis(a)) => freelie_basis(ctx, a),
        Command::Freelie(FreeLieCommand::Nf(a)) => freelie_nf(ctx, a),
        Command::Skew(SkewCommand::Nf(a)) => skew_nf(ctx, a),
        Command::Present(a) => present_cmd(ctx, a),
        Command::FreeVanishing(a) => {
            let s = ctx.session();
            let free = s.free_algebroid(&a.algebroid)?;
            let rep = s.module_for(&a.algebroid, Some(&a.rep))?;
            let report = free_cohomology_vanishing_check(free, &rep)?;
            let ok = report.all_vanish && report.generators_free;
            Ok(Reply::answer(
                serde_json::to_value(&report).expect("report serializes"),
                ok,
            ))
        }
        Command::Obstruct(a) => obstruct_cmd(ctx, a),
        Command::Extend(a) => extend_cmd(ctx, a),
        Command::Baer(a) => baer_cmd(ctx, a),
        Command::Equiv(a) => equiv_cmd(ctx, a),
        Command::Classify(a) => classify_cmd(ctx, a),
    }
}

// ---- rendering helpers

fn poly(ring: &BaseRing, p: &Poly) -> Value {
    Value::String(p.display_with(ring.vars()))
}

fn polys(ring: &BaseRing, v: &[Poly]) -> Value {
    Value::Array(v.iter().map(|p| poly(ring, p)).collect())
}

fn matrix(ring: &BaseRing, m: &PolyMatrix) -> Value {
    Value::Array(m.iter().map(|row| polys(ring, row)).collect())
}

fn report_json(r: &ValidationReport) -> Value {
    json!({ "passed": r.passed(), "checks": r.checks })
}

fn algebra_json(alg: &LieRinehartAlgebra) -> Value {
    let ring = alg.ring();
    let brackets: BTreeMap<String, String> = alg
        .structure_constants()
        .filter(|(_, v)| v.iter().any(|p| !p.is_zero()))
        .map(|((i, j), v)| {
            (
                format!("{},{}", alg.name(*i), alg.name(*j)),
                alg.display_element(v),
            )
        })
        .collect();
    let anchors: BTreeMap<String, String> = (0..alg.rank())
        .filter(|&i| !alg.anchor(i).is_zero())
        .map(|i| {
            (
                alg.name(i).to_string(),
                alg.anchor(i).display_with(ring.vars()),
            )
        })
        .collect();
    json!({
        "frame": alg.names(),
        "brackets": brackets,
        "anchors": anchors,
        "weights": alg.explicit_weights(),
    })
}

/// The triple in the session's extension format, so it can be pasted back.
fn triple_json(t: &ExtensionTriple) -> Value {
    let ring = t.kernel.ring();
    let lift: BTreeMap<String, Value> = (0..t.quotient_rank())
        .map(|i| (t.quotient.name(i).to_string(), matrix(ring, &t.lift[i])))
        .collect();
    let values: Vec<Value> = t
        .rho
        .iter()
        .filter(|(_, v)| v.iter().any(|p| !p.is_zero()))
        .map(|((i, j), v)| json!({ "pair": [i, j], "coeffs": polys(ring, v) }))
        .collect();
    json!({
        "quotient": t.quotient.names(),
        "kernel": t.kernel.names(),
        "lift": lift,
        "cocycle": { "deg": 2, "values": values },
    })
}

fn cohomology_rows(s: &CohomologySummary) -> Value {
    Value::Array(
        s.rows
            .iter()
            .map(|r| {
                json!({
                    "p": r.p,
                    "degree": r.degree,
                    "dim_cochains": r.dim_cochains,
                    "dim_kernel": r.dim_kernel,
                    "dim_image": r.dim_image,
                    "dim_H": r.dim_h,
                })
            })
            .collect(),
    )
}

/// Representative cocycles as lists of `{args, module, coeff}` entries.
fn representatives(c: &CochainComplex, rep_names: &[String], s: &CohomologySummary) -> Value {
    let alg = c.algebra();
    let ring = alg.ring();
    let mut out = Vec::new();
    for ((p, d), cocycles) in &s.representatives {
        let space = c.space(*p);
        let rendered: Vec<Value> = cocycles
            .iter()
            .map(|xi| {
                Value::Array(
                    xi.iter()
                        .enumerate()
                        .filter(|(_, f)| !f.is_zero())
                        .map(|(g, f)| {
                            let (u, set) = &space.gens[g];
                            json!({
                                "args": set.iter().map(|&i| alg.name(i)).collect::<Vec<_>>(),
                                "module": rep_names[*u],
                                "coeff": poly(ring, f),
                            })
                        })
                        .collect(),
                )
            })
            .collect();
        out.push(json!({ "p": p, "degree": d, "cocycles": rendered }));
    }
    Value::Array(out)
}

// ---- commands

fn validate(s: &Session) -> Result<Reply> {
    let mut entries = Vec::new();
    let mut ok = true;
    for (kind, name, report) in &s.reports {
        ok &= report.passed();
        let mut entry = report_json(report);
        entry["kind"] = json!(kind);
        entry["name"] = json!(name);
        entries.push(entry);
    }
    Ok(Reply::answer(
        json!({ "passed": ok, "entries": entries }),
        ok,
    ))
}

fn cohomology_cmd(ctx: &Context, a: &ModuleArgs) -> Result<Reply> {
    let s = ctx.session();
    let alg = s.algebroid(&a.algebroid)?;
    let rep = s.module_for(&a.algebroid, Some(&a.rep))?;
    let c = CochainComplex::new(alg, &rep)?;
    let sum = cohomology(&c, ctx.cutoff as i64, ctx.witness)?;
    let mut result = json!({
        "dims": sum.dims(),
        "scope": sum.scope(),
        "exhaustive": sum.exhaustive,
        "table": cohomology_rows(&sum),
    });
    if ctx.witness {
        result["representatives"] = representatives(&c, rep.names(), &sum);
    }
    Ok(Reply::ok(result).scoped(sum.exhaustive, ctx.cutoff))
}

fn truncated_cmd(ctx: &Context, a: &ModuleArgs) -> Result<Reply> {
    let s = ctx.session();
    let alg = s.algebroid(&a.algebroid)?;
    let rep = s.module_for(&a.algebroid, Some(&a.rep))?;
    let c = CochainComplex::new(alg, &rep)?;
    let t = truncated_cohomology(&c, ctx.cutoff as i64, ctx.witness)?;
    let h0_vanishes = t
        .truncated
        .rows
        .iter()
        .filter(|r| r.p == 0)
        .all(|r| r.dim_h == 0);
    let mut result = json!({
        "dims": t.dims(),
        "ordinary_dims": t.ordinary.dims(),
        "scope": t.truncated.scope(),
        "table": cohomology_rows(&t.truncated),
        "h0_vanishes": h0_vanishes,
        "split_formula_holds": t.split_formula_holds,
        "agrees_above_one": t.agrees_above_one,
    });
    if ctx.witness {
        result["representatives"] = representatives(&c, rep.names(), &t.truncated);
    }
    let ok = h0_vanishes && t.split_formula_holds && t.agrees_above_one;
    Ok(Reply::answer(result, ok).scoped(t.truncated.exhaustive, ctx.cutoff))
}

fn five_term_cmd(ctx: &Context, a: &FiveTermArgs) -> Result<Reply> {
    let s = ctx.session();
    let e = s.algebroid(&a.algebroid)?;
    let idx = a
        .ideal
        .iter()
        .map(|n| {
            e.index_of(n).ok_or_else(|| {
                Error::input(format!("'{n}' is not a frame element of '{}'", a.algebroid))
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let rep = s.module_for(&a.algebroid, Some(&a.rep))?;
    let report = five_term_check(e, &idx, &rep)?;
    let mut result = serde_json::to_value(&report).expect("report serializes");
    result["passed"] = json!(report.passed());
    Ok(Reply::answer(result, report.passed()))
}

fn center_cmd(ctx: &Context, a: &AlgebroidArg) -> Result<Reply> {
    let alg = ctx.session().algebroid(&a.algebroid)?;
    let z = center(alg, ctx.cutoff as i64)?;
    let pieces: Vec<Value> = z
        .pieces
        .iter()
        .map(|p| {
            json!({
                "degree": p.degree,
                "dim": p.basis.len(),
                "basis": p.basis.iter().map(|v| alg.display_element(v)).collect::<Vec<_>>(),
            })
        })
        .collect();
    let total: usize = z.pieces.iter().map(|p| p.basis.len()).sum();
    Ok(
        Reply::ok(json!({ "exhaustive": z.exhaustive, "dim": total, "slices": pieces }))
            .scoped(z.exhaustive, ctx.cutoff),
    )
}

fn derivations_cmd(ctx: &Context, a: &AlgebroidArg) -> Result<Reply> {
    let alg = ctx.session().algebroid(&a.algebroid)?;
    let ring = alg.ring();
    let d = derivation_spaces(alg, ctx.cutoff as i64)?;
    let mut result = json!({
        "exhaustive": d.exhaustive,
        "slices": d.dims(),
        "total": d.total(),
    });
    if ctx.witness {
        let outer: Vec<Value> = d
            .slices
            .iter()
            .flat_map(|s| {
                s.outer
                    .iter()
                    .map(move |m| json!({ "degree": s.degree, "matrix": matrix(ring, m) }))
            })
            .collect();
        result["outer"] = Value::Array(outer);
    }
    Ok(Reply::ok(result).scoped(d.exhaustive, ctx.cutoff))
}

fn freelie_basis(ctx: &Context, a: &WordArgs) -> Result<Reply> {
    let n = a.length.unwrap_or(ctx.cutoff);
    let free = FreeLieAlgebra::new(ctx.field, a.generators.clone(), n)?;
    let q = a.generators.len();
    let mut by_length: Vec<Vec<String>> = vec![Vec::new(); n];
    for w in free.basis() {
        by_length[w.len() - 1].push(bracketing(&w, &a.generators));
    }
    let rows: Vec<Value> = by_length
        .into_iter()
        .enumerate()
        .map(|(k, words)| {
            json!({
                "length": k + 1,
                "count": words.len(),
                "witt": witt_count(q, k + 1).to_string(),
                "words": words,
            })
        })
        .collect();
    Ok(Reply::ok(
        json!({ "generators": a.generators, "length": n, "levels": rows }),
    ))
}

fn freelie_nf(ctx: &Context, a: &LieNfArgs) -> Result<Reply> {
    let n = a.length.unwrap_or(ctx.cutoff);
    let free = FreeLieAlgebra::new(ctx.field, a.generators.clone(), n)?;
    let x = free.evaluate(&free.parse(&a.expr)?)?;
    let coefficients: BTreeMap<String, String> = x
        .iter()
        .map(|(w, c)| (bracketing(w, &a.generators), c.to_string()))
        .collect();
    Ok(Reply::ok(
        json!({ "normal_form": free.display(&x), "coefficients": coefficients }),
    ))
}

fn skew_nf(ctx: &Context, a: &SkewNfArgs) -> Result<Reply> {
    let s = ctx.session();
    let free = s.free_algebroid(&a.algebroid)?;
    let skew = SkewAlgebra::new(
        &s.ring,
        free.free().names().to_vec(),
        free.generator_anchors().to_vec(),
    )?;
    let u = skew.parse(&a.expr)?;
    Ok(Reply::ok(json!({
        "normal_form": skew.display(&u),
        "augmentation": poly(&s.ring, &skew.augmentation(&u)),
        "in_augmentation_ideal": skew.in_augmentation_ideal(&u),
    })))
}

fn present_cmd(ctx: &Context, a: &PresentArgs) -> Result<Reply> {
    let s = ctx.session();
    let alg = s.algebroid(&a.algebroid)?;
    let p = present_as_quotient(alg, a.length.unwrap_or(ctx.cutoff))?;
    let relations: BTreeMap<String, Vec<String>> = p
        .relations
        .iter()
        .map(|(len, rs)| {
            (
                len.to_string(),
                rs.iter().map(|x| p.display(&s.ring, x)).collect(),
            )
        })
        .collect();
    let result = json!({
        "generators": p.generators,
        "exhaustive": p.exhaustive,
        "surjective": p.surjective,
        "levels": p.levels,
        "homogeneous_kernel_dims": p.homogeneous_kernel_dims(),
        "filtered_kernel_dims": p.filtered_kernel_dims(),
        "relations": relations,
    });
    Ok(Reply::ok(result).scoped(p.exhaustive, ctx.cutoff))
}

fn obstruct_cmd(ctx: &Context, a: &ObstructArgs) -> Result<Reply> {
    let s = ctx.session();
    let act = s.outer_action(&a.action)?;
    let o = obstruction(&act.quotient, &act.kernel, act.lift.clone())?;
    let ring = &s.ring;
    let q = &act.quotient;
    let cocycle: Vec<Value> = o
        .values()
        .iter()
        .map(|(set, coeffs)| {
            json!({ "args": set.iter().map(|&i| q.name(i)).collect::<Vec<_>>(), "coeffs": polys(ring, coeffs) })
        })
        .collect();
    let center_basis: Vec<String> = o
        .central
        .basis
        .iter()
        .map(|z| {
            act.kernel.display_element(
                &z.iter()
                    .map(|c| ring.constant(c.clone()))
                    .collect::<Vec<_>>(),
            )
        })
        .collect();
    let mut result = json!({
        "center_basis": center_basis,
        "cocycle": cocycle,
        "zero": o.is_zero(),
        "closed": o.closed,
        "exact": o.is_exact(),
        "obstructed": !o.is_exact(),
    });
    if o.is_exact() {
        result["completion"] = triple_json(&o.complete()?);
    }
    Ok(Reply::answer(result, o.is_exact()))
}

fn extend_cmd(ctx: &Context, a: &ExtensionArg) -> Result<Reply> {
    let t = ctx.session().extension(&a.extension)?;
    let report = t.validate();
    if !report.passed() {
        return Ok(Reply::answer(
            json!({ "validation": report_json(&report) }),
            false,
        ));
    }
    let total = extend_from_cocycle(t)?;
    let total_report = total.validate();
    let ok = total_report.passed();
    Ok(Reply::answer(
        json!({ "validation": report_json(&report), "total": algebra_json(&total), "total_validation": report_json(&total_report) }),
        ok,
    ))
}

fn center_map(text: &str, field: Field, ring: &BaseRing) -> Result<ExactMatrix> {
    let rows: Vec<Vec<Lit>> = serde_json::from_str(text)
        .map_err(|e| Error::input(format!("--center-map is not a JSON matrix: {e}")))?;
    let cols = rows.first().map_or(0, Vec::len);
    if rows.iter().any(|r| r.len() != cols) {
        return Err(Error::input("--center-map rows have different lengths"));
    }
    let mut m = ExactMatrix::zeros(field, rows.len(), cols);
    for (i, row) in rows.iter().enumerate() {
        for (j, lit) in row.iter().enumerate() {
            let c = lit
                .to_poly(ring)?
                .as_constant()
                .ok_or_else(|| Error::input("--center-map entries must be constants"))?;
            m.set(i, j, c);
        }
    }
    Ok(m)
}

fn baer_cmd(ctx: &Context, a: &BaerArgs) -> Result<Reply> {
    let s = ctx.session();
    let (e1, e2) = (s.extension(&a.e1)?, s.extension(&a.e2)?);
    let theta = a
        .center_map
        .as_deref()
        .map(|t| center_map(t, s.field, &s.ring))
        .transpose()?;
    let sum = star_sum(e1, e2, theta.as_ref())?;
    let report = sum.validate();
    Ok(Reply::answer(
        json!({ "sum": triple_json(&sum), "validation": report_json(&report) }),
        report.passed(),
    ))
}

fn equiv_cmd(ctx: &Context, a: &PairArgs) -> Result<Reply> {
    let s = ctx.session();
    let (e1, e2) = (s.extension(&a.e1)?, s.extension(&a.e2)?);
    match equivalent(e1, e2)? {
        Equivalence::Inequivalent { reason } => Ok(Reply::answer(
            json!({ "equivalent": false, "reason": reason }),
            false,
        )),
        Equivalence::Equivalent(w) => {
            let mut result = json!({ "equivalent": true });
            if ctx.witness {
                let psi: BTreeMap<&str, String> = (0..e1.quotient_rank())
                    .map(|i| (e1.quotient.name(i), e1.kernel.display_element(&w.psi[i])))
                    .collect();
                let (t1, t2) = (e1.total()?, e2.total()?);
                let images: BTreeMap<&str, String> = (0..t1.rank())
                    .map(|k| (t1.name(k), t2.display_element(&w.images[k])))
                    .collect();
                result["witness"] =
                    json!({ "psi": psi, "images": images, "morphism": report_json(&w.report) });
            }
            Ok(Reply::answer(result, true))
        }
    }
}

fn classify_cmd(ctx: &Context, a: &ClassifyArgs) -> Result<Reply> {
    let s = ctx.session();
    let e0 = s.extension(&a.extension)?;
    let central = CentralPart::of(e0)?;
    let ring = &s.ring;
    if a.enumerate {
        let en = enumerate_extensions(e0, a.limit)?;
        let classes: Vec<Value> = en
            .classes
            .iter()
            .map(|members| {
                let rep: Vec<Value> = central
                    .values(2, &en.cocycles[members[0]])
                    .iter()
                    .map(|(set, v)| json!({ "pair": set, "coeffs": polys(ring, v) }))
                    .collect();
                json!({ "size": members.len(), "representative": { "deg": 2, "values": rep } })
            })
            .collect();
        let consistent = en.classes.len() == en.field_order.pow(en.h2_dim as u32) as usize;
        return Ok(Reply::ok(json!({
            "field_order": en.field_order,
            "cocycle_dim": en.cocycle_dim,
            "h2_dim": en.h2_dim,
            "cocycles": en.cocycles.len(),
            "class_count": en.classes.len(),
            "matches_h2": consistent,
            "classes": classes,
        })));
    }
    let text = a
        .cocycle
        .as_deref()
        .expect("clap requires --cocycle without --enumerate");
    let lit: CocycleLiteral = serde_json::from_str(text)
        .map_err(|e| Error::input(format!("--cocycle is not a cocycle literal: {e}")))?;
    let pairs = lit.pairs(ring, e0.quotient_rank(), central.dim())?;
    let values = pairs
        .into_iter()
        .map(|((i, j), v)| (vec![i, j], v))
        .collect();
    let c = central.cochain(2, &values);
    let e = classify(e0, &c)?;
    let same = equivalent(e0, &e)?.holds();
    Ok(Reply::ok(
        json!({ "extension": triple_json(&e), "equivalent_to_input": same }),
    ))
}
