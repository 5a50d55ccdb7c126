//! Command-line front end.
//!
//! Exit codes: 0 ok, 1 a check failed, 2 usage or I/O, 3 parse, 4 semantic,
//! 5 criteria mismatch.

use crate::endo::{
    c_battery, endomorphism_algebra, gl_dim_inequality_check, i1_eq_iinf, ideal_projectivity_report,
    pd_transfer_check, recollement_check,
};
use crate::error::Error;
use crate::funmod::ProjBundle;
use crate::homology::{
    battery_seed, ext, ext_via_injectives, global_dimension, idempotency_level, projective_resolution,
    GlobalDimension, TraceContext,
};
use crate::ideals::{property_a_witness, Ideal};
use crate::instance::{fixture, load_instance, Instance, InstanceError, FIXTURES};
use crate::pathcat::PathCategory;
use clap::{Parser, Subcommand};
use serde::Serialize;
use serde_json::{json, Map, Value};
use std::fmt::Write as _;
use std::sync::Arc;
use std::time::Instant;

pub const EXIT_OK: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_PARSE: i32 = 3;
pub const EXIT_SEMANTIC: i32 = 4;
pub const EXIT_MISMATCH: i32 = 5;

#[derive(Parser, Debug)]
#[command(name = "functcat", version, about = "Idempotent ideals and recollements of finite path categories")]
pub struct Cli {
    /// Emit a JSON report.
    #[arg(long, global = true)]
    pub json: bool,
    /// Record wall-clock timings in the report.
    #[arg(long, global = true)]
    pub timings: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Hom dimensions and global dimension.
    Describe { instance: String },
    /// The trace ideal of a bundle.
    TraceIdeal {
        instance: String,
        #[arg(long)]
        bundle: String,
    },
    /// Idempotency level of the trace ideal of a bundle.
    Idempotency {
        instance: String,
        #[arg(long)]
        bundle: String,
        #[arg(long, default_value_t = 6)]
        max_k: usize,
    },
    /// Minimal projective resolution of a module.
    Resolve {
        instance: String,
        #[arg(long)]
        module: String,
        #[arg(long, default_value_t = 6)]
        length: usize,
    },
    /// Dimensions of Ext^i(A, B).
    Ext {
        instance: String,
        #[arg(long)]
        from: String,
        #[arg(long)]
        to: String,
        #[arg(long, default_value_t = 3)]
        max_i: usize,
    },
    /// Recollement axioms on module batteries.
    RecollementCheck {
        instance: String,
        #[arg(long)]
        bundle: String,
    },
    /// The endomorphism algebra of a bundle and its homological transfers.
    EndoReport {
        instance: String,
        #[arg(long)]
        bundle: String,
    },
    /// All shipped fixtures with their expected values.
    Examples,
}

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Io(String),
    Instance(InstanceError),
    Library(Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) | CliError::Io(_) => EXIT_USAGE,
            CliError::Instance(InstanceError::Parse(_)) => EXIT_PARSE,
            CliError::Instance(InstanceError::Semantic { .. }) => EXIT_SEMANTIC,
            CliError::Library(Error::CriteriaMismatch(_)) => EXIT_MISMATCH,
            CliError::Library(_) => EXIT_SEMANTIC,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "usage: {m}"),
            CliError::Io(m) => write!(f, "io: {m}"),
            CliError::Instance(e) => write!(f, "{e}"),
            CliError::Library(e) => write!(f, "{e}"),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Library(e)
    }
}

impl From<InstanceError> for CliError {
    fn from(e: InstanceError) -> Self {
        CliError::Instance(e)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Verdict {
    pub check: String,
    pub passed: bool,
    pub detail: Value,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub instance: String,
    pub command: String,
    pub params: Map<String, Value>,
    pub verdicts: Vec<Verdict>,
    pub timings: Map<String, Value>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.verdicts.iter().all(|v| v.passed)
    }
}

/// Result of one invocation.
#[derive(Clone, Debug)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

struct Ctx {
    report: Report,
    text: String,
    timed: bool,
    clock: Instant,
}

impl Ctx {
    fn new(instance: &str, command: &str, timed: bool) -> Self {
        Ctx {
            report: Report {
                instance: instance.to_string(),
                command: command.to_string(),
                params: Map::new(),
                verdicts: Vec::new(),
                timings: Map::new(),
            },
            text: String::new(),
            timed,
            clock: Instant::now(),
        }
    }

    fn param(&mut self, k: &str, v: impl Serialize) {
        self.report.params.insert(k.into(), to_value(v));
    }

    fn line(&mut self, s: impl AsRef<str>) {
        self.text.push_str(s.as_ref());
        self.text.push('\n');
    }

    fn verdict(&mut self, check: impl Into<String>, passed: bool, detail: impl Serialize) {
        self.report.verdicts.push(Verdict { check: check.into(), passed, detail: to_value(detail) });
    }

    fn lap(&mut self, name: &str) {
        if self.timed {
            let ms = self.clock.elapsed().as_secs_f64() * 1e3;
            self.report.timings.insert(format!("{name}_ms"), json!((ms * 1e3).round() / 1e3));
            self.clock = Instant::now();
        }
    }
}

fn to_value(v: impl Serialize) -> Value {
    serde_json::to_value(v).expect("serializable")
}

/// Loads a path, falling back to a shipped fixture of the same name.
pub fn read_instance(arg: &str) -> Result<Instance, CliError> {
    let text = match std::fs::read_to_string(arg) {
        Ok(t) => t,
        Err(e) => match fixture(std::path::Path::new(arg).file_name().and_then(|s| s.to_str()).unwrap_or(arg)) {
            Some(t) => t.to_string(),
            None => return Err(CliError::Io(format!("{arg}: {e}"))),
        },
    };
    Ok(load_instance(&text)?)
}

fn names(cat: &PathCategory, vs: &[usize]) -> Vec<String> {
    vs.iter().map(|&v| cat.vertices()[v].clone()).collect()
}

fn bound_for(cat: &PathCategory) -> usize {
    cat.vertex_count().max(5) + 1
}

fn describe(inst: &Instance, c: &mut Ctx) {
    let cat = &inst.category;
    let n = cat.vertex_count();
    c.line(format!("field {}", cat.field()));
    c.line(format!("vertices {}  arrows {}  relations {}  maxlen {}", n, cat.arrows().len(), cat.relations().len(), cat.max_len()));
    c.line("dim Hom(x, y), rows x, columns y:");
    let width = cat.vertices().iter().map(String::len).max().unwrap_or(1).max(2);
    let mut head = format!("{:>width$}", "");
    for v in cat.vertices() {
        let _ = write!(head, " {v:>width$}");
    }
    c.line(head);
    let mut table = Vec::new();
    for x in 0..n {
        let mut row = format!("{:>width$}", cat.vertices()[x]);
        let dims: Vec<usize> = (0..n).map(|y| cat.hom_dim(x, y)).collect();
        for d in &dims {
            let _ = write!(row, " {d:>width$}");
        }
        c.line(row);
        table.push(dims);
    }
    let bound = bound_for(cat);
    let gl = global_dimension(cat, bound);
    c.line(format!("gl.dim = {gl}"));
    c.param("bound", bound);
    c.verdict("associativity", cat.check_associativity(), json!({ "hom_dims": table }));
    c.verdict("global_dimension", true, json!({ "value": gl.to_string() }));
    c.lap("describe");
}

fn trace_ideal(inst: &Instance, bundle: &ProjBundle, c: &mut Ctx) {
    let cat = &inst.category;
    let ideal = Ideal::trace_ideal(cat, bundle);
    let n = cat.vertex_count();
    let dims: Vec<Vec<usize>> = (0..n).map(|x| (0..n).map(|y| ideal.dim(x, y)).collect()).collect();
    c.line(format!("trace ideal of P = {}", names(cat, &bundle.vertices).join(",")));
    c.line("dim I(x, y), rows x, columns y:");
    for (x, row) in dims.iter().enumerate() {
        c.line(format!("{}: {:?}", cat.vertices()[x], row));
    }
    let idem = ideal.is_idempotent();
    let closed = ideal.is_closed();
    let witness = property_a_witness(&ideal).verified();
    c.line(format!("closed = {closed}  I^2 = I: {idem}  property (A): {witness}"));
    c.verdict("ideal_closed", closed, json!({ "dims": dims }));
    c.verdict("squares_to_itself", idem, Value::Null);
    c.verdict("property_a", witness, Value::Null);
    c.lap("trace_ideal");
}

fn idempotency(inst: &Instance, bundle: &ProjBundle, max_k: usize, c: &mut Ctx) -> Result<usize, CliError> {
    let cat = &inst.category;
    let ctx = TraceContext::new(cat, bundle);
    let rep = idempotency_level(&ctx.quotient, max_k, Some(&ctx), battery_seed())?;
    c.line(format!("bundle {}", names(cat, &bundle.vertices).join(",")));
    c.line(format!("level = {}", rep.level));
    c.line(format!("gl.dim = {}", rep.global_dimension));
    if rep.strongly_idempotent {
        c.line("strongly idempotent");
    }
    for v in &rep.verdicts {
        c.line(format!(
            "k={} injectives={} battery={} tor={} trace={}",
            v.k,
            v.injectives,
            v.battery,
            v.tor,
            v.trace.map_or("-".to_string(), |t| t.to_string())
        ));
    }
    c.verdict("criteria_concordance", rep.verdicts.iter().all(|v| v.concordant()), &rep);
    c.lap("idempotency");
    Ok(rep.level)
}

fn resolve(inst: &Instance, module: &str, length: usize, c: &mut Ctx) -> Result<(), CliError> {
    let cat = &inst.category;
    let m = inst.module(module)?;
    let res = projective_resolution(&m, length);
    c.line(format!("minimal projective resolution of {module}"));
    let mut terms = Vec::new();
    for i in 0..res.terms.len() {
        let t = names(cat, res.term_vertices(i));
        c.line(format!("P{i} = {}", if t.is_empty() { "0".to_string() } else { t.iter().map(|v| format!("P{v}")).collect::<Vec<_>>().join(" + ") }));
        terms.push(t);
    }
    match res.length() {
        Some(l) => c.line(format!("pd = {l}")),
        None => c.line(format!("pd > {length}")),
    }
    c.verdict("exact", res.is_exact(), json!({ "terms": terms, "pd": res.length() }));
    c.lap("resolve");
    Ok(())
}

fn ext_cmd(inst: &Instance, from: &str, to: &str, max_i: usize, c: &mut Ctx) -> Result<Vec<usize>, CliError> {
    let a = inst.module(from)?;
    let b = inst.module(to)?;
    let via_proj = ext(&a, &b, max_i)?;
    let via_inj = ext_via_injectives(&a, &b, max_i)?;
    c.line(format!("dim Ext^i({from}, {to}), i = 0..{max_i}: {:?}", via_proj.dims));
    c.verdict("injective_oracle", via_proj == via_inj, json!({ "dims": via_proj.dims, "oracle": via_inj.dims }));
    c.lap("ext");
    Ok(via_proj.dims)
}

fn recollement(inst: &Instance, bundle: &ProjBundle, c: &mut Ctx) -> Result<bool, CliError> {
    let cat = &inst.category;
    let ctx = TraceContext::new(cat, bundle);
    let alg = endomorphism_algebra(cat, bundle)?;
    let seed = battery_seed();
    let cb = c_battery(cat, seed, 10);
    let qb = c_battery(ctx.quotient.quotient(), seed, 10);
    let rep = recollement_check(&ctx, &alg, &cb, &qb)?;
    c.line(format!(
        "batteries: C {}  C/I {}  R_P {}",
        rep.battery_c, rep.battery_quotient, rep.battery_algebra
    ));
    for ax in &rep.axioms {
        c.line(format!("{} {} ({} cases)", if ax.passed { "PASS" } else { "FAIL" }, ax.axiom, ax.cases));
        c.verdict(ax.axiom.clone(), ax.passed, json!({ "cases": ax.cases, "failures": ax.failures }));
    }
    c.lap("recollement");
    Ok(rep.passed())
}

#[derive(Serialize)]
struct EndoSummary {
    dim: usize,
    level: usize,
    all_projective: bool,
    i1_eq_iinf: bool,
    gl_dim_algebra: GlobalDimension,
    quasi_hereditary: bool,
}

fn endo_report(inst: &Instance, bundle: &ProjBundle, c: &mut Ctx) -> Result<EndoSummary, CliError> {
    let cat: &Arc<PathCategory> = &inst.category;
    let ctx = TraceContext::new(cat, bundle);
    let alg = endomorphism_algebra(cat, bundle)?;
    let bound = bound_for(cat);
    let seed = battery_seed();
    let level = idempotency_level(&ctx.quotient, 6, Some(&ctx), seed)?;
    let proj = ideal_projectivity_report(&ctx, &alg, &level, bound)?;
    let i1 = i1_eq_iinf(&alg)?;
    let gl = gl_dim_inequality_check(&alg, bound)?;
    let mut battery = c_battery(cat, seed, 10);
    battery.extend(inst.modules.iter().map(|(n, m)| crate::homology::BatteryModule { name: n.clone(), module: m.clone() }));
    let transfers = pd_transfer_check(&ctx, &alg, &battery, bound)?;

    c.line(format!("R_P = End(P), P = {}", names(cat, &bundle.vertices).join(",")));
    c.line(format!("dim R_P = {}", alg.dim()));
    c.line(format!("basis: {}", alg.labels().join(" ")));
    for (v, p) in &proj.ideal_projective {
        c.line(format!("I({v}, -) projective: {p}"));
    }
    c.line(format!("idempotency level = {} ({})", proj.level, proj.strong_idempotency));
    c.line(format!("I_1 = I_inf: {}", proj.i1_eq_iinf));
    c.line(format!("biconditional: {}", proj.biconditional));
    c.line(format!("gl.dim R_P = {}  gl.dim C = {}", gl.gl_dim_algebra, gl.gl_dim_category));
    c.line(format!("quasi-hereditary: {}", proj.quasi_hereditary));
    for t in &transfers {
        c.line(format!(
            "pd {} = {}  pd_R hom_P = {}",
            t.module,
            t.pd,
            t.pd_algebra.map_or("-".to_string(), |d| d.to_string())
        ));
    }
    c.verdict("algebra_axioms", alg.check_axioms(), json!({ "dim": alg.dim(), "basis": alg.labels() }));
    c.verdict("projectivity_biconditional", proj.biconditional, &proj);
    c.verdict("i1_evidence", true, &i1);
    c.verdict("gl_dim_inequality", gl.inequality != Some(false), &gl);
    c.verdict("pd_transfer", transfers.iter().all(|t| t.equal), &transfers);
    c.lap("endo_report");
    Ok(EndoSummary {
        dim: alg.dim(),
        level: proj.level,
        all_projective: proj.all_projective,
        i1_eq_iinf: proj.i1_eq_iinf,
        gl_dim_algebra: proj.gl_dim_algebra,
        quasi_hereditary: proj.quasi_hereditary,
    })
}

/// Expected values for the shipped fixtures.
fn expected_gl_dim(name: &str) -> Option<usize> {
    match name {
        "a2" => Some(1),
        "a3h" => Some(1),
        "z6" => Some(5),
        "aus_a2" => Some(2),
        _ => None,
    }
}

fn expected_level(fixture: &str, bundle: &str) -> Option<usize> {
    match (fixture, bundle) {
        ("z6", "P23") => Some(2),
        ("z6", "P123") => Some(6),
        _ => None,
    }
}

fn examples(c: &mut Ctx) -> Result<(), CliError> {
    let mut rows: Vec<(String, String, bool)> = Vec::new();
    for (name, text) in FIXTURES {
        let inst = load_instance(text)?;
        let cat = &inst.category;
        let mut sub = Ctx::new(name, "examples", false);
        let gl = global_dimension(cat, bound_for(cat));
        let ok = expected_gl_dim(name).is_none_or(|g| gl == GlobalDimension::Exact(g));
        rows.push((name.to_string(), format!("gl.dim = {gl}"), ok));
        c.verdict(format!("{name}: gl.dim"), ok, json!({ "value": gl.to_string(), "expected": expected_gl_dim(name) }));
        for (bname, bundle) in &inst.bundles {
            let level = match idempotency(&inst, bundle, 6, &mut sub) {
                Ok(l) => l,
                Err(CliError::Library(Error::CriteriaMismatch(m))) => {
                    rows.push((name.to_string(), format!("{bname}: concordance"), false));
                    c.verdict(format!("{name}/{bname}: concordance"), false, json!({ "mismatch": m }));
                    continue;
                }
                Err(e) => return Err(e),
            };
            let concordant = sub.report.verdicts.last().is_some_and(|v| v.passed);
            let level_ok = expected_level(name, bname).is_none_or(|l| l == level);
            rows.push((name.to_string(), format!("{bname}: level = {level}"), level_ok && concordant));
            c.verdict(
                format!("{name}/{bname}: idempotency"),
                level_ok && concordant,
                json!({ "level": level, "expected": expected_level(name, bname), "concordant": concordant }),
            );
            let rec = recollement(&inst, bundle, &mut sub)?;
            rows.push((name.to_string(), format!("{bname}: recollement"), rec));
            c.verdict(format!("{name}/{bname}: recollement"), rec, Value::Null);
            let before = sub.report.verdicts.len();
            let summary = endo_report(&inst, bundle, &mut sub)?;
            let endo_ok = sub.report.verdicts[before..].iter().all(|v| v.passed);
            let heredity_ok = !(name == "a3h" && bname == "P2")
                || (summary.all_projective && summary.i1_eq_iinf && summary.level >= 2 && summary.quasi_hereditary);
            rows.push((name.to_string(), format!("{bname}: endo-report"), endo_ok && heredity_ok));
            c.verdict(format!("{name}/{bname}: endo-report"), endo_ok && heredity_ok, &summary);
        }
        if name == "z6" {
            let dims = ext_cmd(&inst, "S1", "S4", 3, &mut sub)?;
            let ok = dims == [0, 0, 0, 1] && sub.report.verdicts.last().is_some_and(|v| v.passed);
            rows.push((name.to_string(), format!("Ext(S1, S4) = {dims:?}"), ok));
            c.verdict("z6: Ext(S1, S4)", ok, json!({ "dims": dims }));
        }
        c.lap(name);
    }
    let w = rows.iter().map(|r| r.1.len()).max().unwrap_or(0);
    for (f, check, ok) in &rows {
        c.line(format!("{f:<7} {check:<w$}  {}", if *ok { "PASS" } else { "FAIL" }));
    }
    let failed = rows.iter().filter(|r| !r.2).count();
    c.line(format!("{} checks, {} failed", rows.len(), failed));
    Ok(())
}

fn dispatch(cli: &Cli) -> Result<Ctx, CliError> {
    let timed = cli.timings;
    let bundle_of = |inst: &Instance, name: &str| inst.bundle(name).map_err(CliError::from);
    let c = match &cli.command {
        Command::Describe { instance } => {
            let inst = read_instance(instance)?;
            let mut c = Ctx::new(instance, "describe", timed);
            describe(&inst, &mut c);
            c
        }
        Command::TraceIdeal { instance, bundle } => {
            let inst = read_instance(instance)?;
            let mut c = Ctx::new(instance, "trace-ideal", timed);
            c.param("bundle", bundle);
            let b = bundle_of(&inst, bundle)?;
            trace_ideal(&inst, &b, &mut c);
            c
        }
        Command::Idempotency { instance, bundle, max_k } => {
            let inst = read_instance(instance)?;
            let mut c = Ctx::new(instance, "idempotency", timed);
            c.param("bundle", bundle);
            c.param("max_k", max_k);
            c.param("seed", battery_seed());
            let b = bundle_of(&inst, bundle)?;
            let level = idempotency(&inst, &b, *max_k, &mut c)?;
            c.report.params.insert("level".into(), json!(level));
            c
        }
        Command::Resolve { instance, module, length } => {
            let inst = read_instance(instance)?;
            let mut c = Ctx::new(instance, "resolve", timed);
            c.param("module", module);
            c.param("length", length);
            resolve(&inst, module, *length, &mut c)?;
            c
        }
        Command::Ext { instance, from, to, max_i } => {
            let inst = read_instance(instance)?;
            let mut c = Ctx::new(instance, "ext", timed);
            c.param("from", from);
            c.param("to", to);
            c.param("max_i", max_i);
            ext_cmd(&inst, from, to, *max_i, &mut c)?;
            c
        }
        Command::RecollementCheck { instance, bundle } => {
            let inst = read_instance(instance)?;
            let mut c = Ctx::new(instance, "recollement-check", timed);
            c.param("bundle", bundle);
            c.param("seed", battery_seed());
            let b = bundle_of(&inst, bundle)?;
            recollement(&inst, &b, &mut c)?;
            c
        }
        Command::EndoReport { instance, bundle } => {
            let inst = read_instance(instance)?;
            let mut c = Ctx::new(instance, "endo-report", timed);
            c.param("bundle", bundle);
            c.param("seed", battery_seed());
            let b = bundle_of(&inst, bundle)?;
            endo_report(&inst, &b, &mut c)?;
            c
        }
        Command::Examples => {
            let mut c = Ctx::new("fixtures", "examples", timed);
            c.param("fixtures", FIXTURES.iter().map(|(n, _)| *n).collect::<Vec<_>>());
            c.param("seed", battery_seed());
            examples(&mut c)?;
            c
        }
    };
    Ok(c)
}

/// Runs one command line (including the program name).
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            return if code == EXIT_OK {
                Outcome { code, stdout: text, stderr: String::new() }
            } else {
                Outcome { code, stdout: String::new(), stderr: text }
            };
        }
    };
    match dispatch(&cli) {
        Ok(c) => {
            let code = if c.report.passed() { EXIT_OK } else { EXIT_CHECK_FAILED };
            let stdout = if cli.json {
                let mut s = serde_json::to_string_pretty(&c.report).expect("serializable");
                s.push('\n');
                s
            } else {
                let mut s = c.text;
                for v in c.report.verdicts.iter().filter(|v| !v.passed) {
                    let _ = writeln!(s, "FAILED: {}", v.check);
                }
                s
            };
            Outcome { code, stdout, stderr: String::new() }
        }
        Err(e) => {
            let code = e.exit_code();
            let stdout = if cli.json {
                let body = json!({ "error": e.to_string(), "exit_code": code });
                format!("{}\n", serde_json::to_string_pretty(&body).expect("serializable"))
            } else {
                String::new()
            };
            Outcome { code, stdout, stderr: format!("error: {e}\n") }
        }
    }
}

pub fn main() -> i32 {
    let out = run(std::env::args_os());
    print!("{}", out.stdout);
    eprint!("{}", out.stderr);
    out.code
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str]) -> Outcome {
        run(std::iter::once("functcat").chain(args.iter().copied()))
    }

    #[test]
    fn level_line() {
        let out = call(&["idempotency", "z6.cat", "--bundle", "P23", "--max-k", "6"]);
        assert_eq!(out.code, 0, "{}", out.stderr);
        assert!(out.stdout.contains("level = 2"));
    }

    #[test]
    fn ext_dims() {
        let out = call(&["ext", "z6.cat", "--from", "S1", "--to", "S4", "--max-i", "3"]);
        assert_eq!(out.code, 0);
        assert!(out.stdout.contains("[0, 0, 0, 1]"));
    }

    #[test]
    fn error_classes() {
        assert_eq!(call(&["describe", "/nonexistent/none.cat"]).code, EXIT_USAGE);
        assert_eq!(call(&["frobnicate"]).code, EXIT_USAGE);
        assert_eq!(call(&["ext", "z6", "--from", "S9", "--to", "S1"]).code, EXIT_SEMANTIC);
        let dir = std::env::temp_dir().join(format!("functcat-cli-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        let bad = dir.join("bad.cat");
        std::fs::write(&bad, "vertex 1\narrow a 1 -> 1\n").unwrap();
        assert_eq!(call(&["describe", bad.to_str().unwrap()]).code, EXIT_PARSE);
        std::fs::write(&bad, "vertex 1\narrow a: 1 -> 9\n").unwrap();
        let out = call(&["describe", bad.to_str().unwrap()]);
        assert_eq!(out.code, EXIT_SEMANTIC);
        assert!(out.stderr.contains("line 2"));
        std::fs::remove_dir_all(&dir).unwrap();
    }

    #[test]
    fn json_schema_order() {
        let out = call(&["--json", "describe", "a2"]);
        let keys: Vec<String> = serde_json::from_str::<Map<String, Value>>(&out.stdout).unwrap().keys().cloned().collect();
        assert_eq!(keys, ["instance", "command", "params", "verdicts", "timings"]);
    }
}
