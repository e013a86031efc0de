//! The `umconv` command line.

use std::io::{Read, Write};
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::constructions::{admissible_parameters, build, Expected, Family, FamilySpec, FieldSetup};
use crate::convcode::{classify, ClassifyOptions, ConvCodeDesc, ConvReport, Engine, PolyMatrix, SearchConfig, Verdict};
use crate::error::{Error, Result};
use crate::fixtures::{self, REFERENCE_CODES};
use crate::galois::{Field, FiniteField};

pub const EXIT_OK: i32 = 0;
pub const EXIT_REFUTED: i32 = 1;
pub const EXIT_INVALID: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Parser, Debug)]
#[command(name = "umconv", version, about = "Unit-memory MDS convolutional codes: construct and verify")]
struct Cli {
    #[arg(long, global = true, value_enum, default_value = "text")]
    format: Format,
    /// Seed for randomized checks; every command here is deterministic.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Worker threads (0 = one per core).
    #[arg(long, global = true, default_value_t = 0)]
    jobs: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Describe a finite field.
    Field(FieldArgs),
    /// Build a code from one of the families.
    Construct(ConstructArgs),
    /// Classify a code given as a bundle or by family parameters.
    Verify(VerifyArgs),
    /// Rebuild and check the reference codes.
    Examples(ExamplesArgs),
    /// Classify every parameter set in the guaranteed ranges.
    Sweep(SweepArgs),
}

#[derive(Args, Debug)]
struct FieldArgs {
    #[arg(long)]
    p: u32,
    #[arg(long, default_value_t = 1)]
    m: u32,
    /// Ascending coefficients of the modulus, e.g. 1,1,0,1.
    #[arg(long, value_delimiter = ',')]
    modulus: Option<Vec<u32>>,
    /// Print addition and multiplication tables.
    #[arg(long)]
    tables: bool,
}

#[derive(Args, Debug, Clone)]
struct FamilyArgs {
    #[arg(long)]
    family: Option<String>,
    #[arg(long)]
    q: Option<u32>,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    k: Option<usize>,
    #[arg(long)]
    delta: Option<usize>,
    #[arg(long)]
    tau: Option<usize>,
    /// Extension modulus t^2 + c1 t + c0 given as c0,c1.
    #[arg(long, value_delimiter = ',', num_args = 2)]
    ext_modulus: Option<Vec<u32>>,
    /// Primitive element of the extension (integer encoding).
    #[arg(long)]
    theta_ext: Option<u32>,
}

#[derive(Args, Debug)]
struct ConstructArgs {
    #[command(flatten)]
    family: FamilyArgs,
}

#[derive(Args, Debug, Clone, Copy)]
struct SearchArgs {
    #[arg(long, default_value_t = 4)]
    jmax: usize,
    /// Leaf budget of each column-distance search.
    #[arg(long, default_value_t = 10_000_000)]
    budget: u64,
    /// support, support-unpruned or information-set.
    #[arg(long, default_value = "support")]
    engine: Engine,
}

impl SearchArgs {
    fn options(&self) -> ClassifyOptions {
        ClassifyOptions {
            jmax: self.jmax,
            search: SearchConfig { engine: self.engine, budget: self.budget },
            ..ClassifyOptions::default()
        }
    }
}

#[derive(Args, Debug)]
struct VerifyArgs {
    /// Bundle JSON file, or - for stdin.
    #[arg(long)]
    input: Option<String>,
    #[command(flatten)]
    family: FamilyArgs,
    #[command(flatten)]
    search: SearchArgs,
}

#[derive(Args, Debug)]
struct ExamplesArgs {
    /// Reference code ids (1 to 11); all when omitted.
    #[arg(long, value_delimiter = ',')]
    id: Vec<u8>,
    /// Exit with 1 on any mismatch.
    #[arg(long)]
    check: bool,
    #[command(flatten)]
    search: SearchArgs,
}

#[derive(Args, Debug)]
struct SweepArgs {
    #[arg(long, value_delimiter = ',', required = true)]
    q: Vec<u32>,
    #[arg(long, default_value = "rs,grs,cyclic,cyclic-parity,constacyclic")]
    families: String,
    /// Write the table here instead of stdout.
    #[arg(long)]
    output: Option<String>,
    /// Report 0 for elapsed time so output is reproducible.
    #[arg(long)]
    no_timing: bool,
    #[command(flatten)]
    search: SearchArgs,
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::BudgetExceeded { .. } | Error::SearchBudgetExceeded { .. } => EXIT_BUDGET,
        Error::PropertyViolation(_) => EXIT_REFUTED,
        _ => EXIT_INVALID,
    }
}

/// Runs the command line and returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INVALID } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() { err.write_all(text.as_bytes()) } else { out.write_all(text.as_bytes()) };
            return code;
        }
    };
    let pool = match rayon::ThreadPoolBuilder::new().num_threads(cli.jobs).build() {
        Ok(p) => p,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            return EXIT_INVALID;
        }
    };
    let result = pool.install(|| match &cli.command {
        Command::Field(a) => cmd_field(a, cli.format),
        Command::Construct(a) => cmd_construct(a, cli.format),
        Command::Verify(a) => cmd_verify(a, cli.format),
        Command::Examples(a) => cmd_examples(a, cli.format),
        Command::Sweep(a) => cmd_sweep(a, cli.format),
    });
    match result {
        Ok(o) => {
            if let Some(path) = &o.file {
                if let Err(e) = std::fs::write(path, &o.text) {
                    let _ = writeln!(err, "error: cannot write {path}: {e}");
                    return EXIT_INVALID;
                }
            } else {
                let _ = out.write_all(o.text.as_bytes());
            }
            for line in &o.notes {
                let _ = writeln!(err, "{line}");
            }
            o.code
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            exit_code(&e)
        }
    }
}

struct Output {
    text: String,
    file: Option<String>,
    notes: Vec<String>,
    code: i32,
}

impl Output {
    fn new(text: String, code: i32) -> Output {
        Output { text, file: None, notes: Vec::new(), code }
    }
}

fn json_text(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("serializable") + "\n"
}

fn modulus_text(m: &[u32]) -> String {
    let terms: Vec<String> = m
        .iter()
        .enumerate()
        .filter(|(_, &c)| c != 0)
        .map(|(i, &c)| match (i, c) {
            (0, c) => c.to_string(),
            (1, 1) => "x".into(),
            (1, c) => format!("{c}x"),
            (i, 1) => format!("x^{i}"),
            (i, c) => format!("{c}x^{i}"),
        })
        .collect();
    terms.join("+")
}

fn cmd_field(a: &FieldArgs, format: Format) -> Result<Output> {
    let f = Field::new(a.p, a.m, a.modulus.as_deref())?;
    let q = f.q();
    let powers: Vec<u32> = (0..q as u64 - 1).map(|i| f.exp(i)).collect();
    let table = |op: fn(&Field, u32, u32) -> u32| -> Vec<Vec<u32>> {
        (0..q).map(|x| (0..q).map(|y| op(&f, x, y)).collect()).collect()
    };
    let (add, mul) = if a.tables {
        (Some(table(|f, x, y| f.add(x, y))), Some(table(|f, x, y| f.mul(x, y))))
    } else {
        (None, None)
    };
    let text = match format {
        Format::Json => json_text(&json!({
            "p": f.p(),
            "m": f.m(),
            "q": q,
            "modulus": f.modulus(),
            "modulus_encoding": f.modulus_encoding(),
            "theta": f.theta(),
            "powers": powers,
            "add": add,
            "mul": mul,
        })),
        Format::Text => {
            let mut s = format!(
                "GF({q}), p = {}, m = {}\nmodulus: {} (encoding {})\ntheta: {} ({})\n",
                f.p(),
                f.m(),
                modulus_text(f.modulus()),
                f.modulus_encoding(),
                f.render(f.theta()),
                f.theta()
            );
            s += "powers of theta:\n";
            for (i, x) in powers.iter().enumerate() {
                s += &format!("  theta^{i} = {} ({x})\n", f.render(*x));
            }
            for (name, t) in [("addition", &add), ("multiplication", &mul)] {
                if let Some(t) = t {
                    s += &format!("{name}:\n");
                    for row in t {
                        s += &row.iter().map(|x| format!("{x:>3}")).collect::<String>();
                        s += "\n";
                    }
                }
            }
            s
        }
    };
    Ok(Output::new(text, EXIT_OK))
}

fn parse_spec(a: &FamilyArgs) -> Result<FamilySpec> {
    let need = |v: Option<usize>, name: &str| v.ok_or_else(|| Error::InvalidParams(format!("--{name} is required")));
    let family: Family = a.family.as_deref().ok_or_else(|| Error::InvalidParams("--family is required".into()))?.parse()?;
    let q = a.q.ok_or_else(|| Error::InvalidParams("--q is required".into()))?;
    let spec = match family {
        Family::Rs => FamilySpec::rs(q, need(a.n, "n")?, need(a.k, "k")?, need(a.delta, "delta")?),
        Family::Grs => FamilySpec::grs(q, need(a.k, "k")?, need(a.delta, "delta")?),
        Family::Cyclic => FamilySpec::cyclic(q, need(a.k, "k")?, need(a.delta, "delta")?),
        Family::CyclicParity => FamilySpec::cyclic_parity(q, need(a.tau, "tau")?),
        Family::Constacyclic => FamilySpec::constacyclic(q, need(a.k, "k")?, need(a.delta, "delta")?),
    };
    if let Some(n) = a.n {
        if n != spec.n {
            return Err(Error::InvalidParams(format!("--n {n} does not match the family length {}", spec.n)));
        }
    }
    spec.validate()?;
    Ok(spec)
}

fn parse_setup(a: &FamilyArgs, q: u32) -> Result<FieldSetup> {
    let m = a.ext_modulus.as_ref().map(|v| (v[0], v[1]));
    FieldSetup::with_ext(Field::of_order(q)?, m, a.theta_ext)
}

fn cmd_construct(a: &ConstructArgs, format: Format) -> Result<Output> {
    let spec = parse_spec(&a.family)?;
    let bundle = build(spec, &parse_setup(&a.family, spec.q)?)?;
    let text = match format {
        Format::Json => json_text(&bundle.to_json()),
        Format::Text => bundle.render() + "\n",
    };
    Ok(Output::new(text, EXIT_OK))
}

fn read_input(path: &str) -> Result<String> {
    let mut s = String::new();
    if path == "-" {
        std::io::stdin().read_to_string(&mut s).map_err(|e| Error::Parse(format!("stdin: {e}")))?;
    } else {
        s = std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("{path}: {e}")))?;
    }
    Ok(s)
}

/// Parity matrix and guaranteed verdicts from a bundle as written by `construct`.
pub fn desc_from_bundle(v: &Value) -> Result<(ConvCodeDesc, Option<Expected>)> {
    let bad = |what: &str| Error::Parse(format!("bundle: {what}"));
    let fv = &v["field"];
    let p = fv["p"].as_u64().ok_or_else(|| bad("missing field.p"))? as u32;
    let m = fv["m"].as_u64().ok_or_else(|| bad("missing field.m"))? as u32;
    let modulus: Vec<u32> = match fv["modulus"].as_array() {
        Some(a) => a.iter().map(|x| x.as_u64().map(|x| x as u32).ok_or_else(|| bad("modulus entry"))).collect::<Result<_>>()?,
        None => return Err(bad("missing field.modulus")),
    };
    let field = Field::new(p, m, Some(&modulus))?;
    let parity = PolyMatrix::from_json(&field, &v["parity"])?;
    let expected = match &v["expected"] {
        Value::Object(o) => {
            let flag = |k: &str| o.get(k).and_then(Value::as_bool).unwrap_or(false);
            Some(Expected { mds: flag("mds"), smds: flag("smds"), mdp: flag("mdp") })
        }
        _ => None,
    };
    Ok((ConvCodeDesc::from_parity(parity)?, expected))
}

/// Exit code for a report judged against guaranteed verdicts.
pub fn verdict_code(report: &ConvReport, expected: Option<Expected>) -> i32 {
    let e = expected.unwrap_or_default();
    let judged = [(e.mds, report.mds), (e.smds, report.smds), (e.mdp, report.mdp)];
    if judged.iter().any(|&(want, got)| want && got == Verdict::Refuted) {
        EXIT_REFUTED
    } else if [report.mds, report.smds, report.mdp].contains(&Verdict::Inconclusive) {
        EXIT_BUDGET
    } else {
        EXIT_OK
    }
}

fn report_json(report: &ConvReport, expected: Option<Expected>) -> Value {
    let mut v = report.to_json();
    v["expected"] = json!(expected);
    v
}

fn cmd_verify(a: &VerifyArgs, format: Format) -> Result<Output> {
    let (desc, expected) = match &a.input {
        Some(path) => {
            let text = read_input(path)?;
            let v: Value = serde_json::from_str(&text).map_err(|e| Error::Parse(e.to_string()))?;
            desc_from_bundle(&v)?
        }
        None => {
            let spec = parse_spec(&a.family)?;
            let b = build(spec, &parse_setup(&a.family, spec.q)?)?;
            (b.desc, Some(b.expected))
        }
    };
    let report = classify(&desc, &a.search.options())?;
    let code = verdict_code(&report, expected);
    let text = match format {
        Format::Json => json_text(&report_json(&report, expected)),
        Format::Text => {
            let mut s = report.render() + "\n";
            if let Some(e) = expected {
                s += &format!("guaranteed: MDS {}, strongly MDS {}, MDP {}\n", e.mds, e.smds, e.mdp);
            }
            s
        }
    };
    Ok(Output::new(text, code))
}

fn cmd_examples(a: &ExamplesArgs, format: Format) -> Result<Output> {
    let codes: Vec<_> = if a.id.is_empty() {
        REFERENCE_CODES.iter().collect()
    } else {
        a.id.iter()
            .map(|&i| fixtures::reference_code(i).ok_or_else(|| Error::InvalidParams(format!("no reference code {i}"))))
            .collect::<Result<_>>()?
    };
    let opts = a.search.options();
    let checks = codes.par_iter().map(|c| fixtures::check(c, &opts)).collect::<Result<Vec<_>>>()?;
    let all_ok = checks.iter().all(|c| c.ok());
    let text = match format {
        Format::Json => json_text(&json!(checks.iter().map(|c| c.to_json()).collect::<Vec<_>>())),
        Format::Text => {
            let mut s = String::new();
            for c in &checks {
                let r = &c.report;
                s += &format!(
                    "code {:>2}  {:<13} ({}, {}, {})  dfree {}  MDS {}  SMDS {}  MDP {}  {}\n",
                    c.id,
                    c.bundle.spec.family.name(),
                    r.n,
                    r.k,
                    r.delta,
                    r.dfree_exact().map_or_else(|| format!("{}..{}", r.dfree.0, r.dfree.1), |d| d.to_string()),
                    r.mds.as_str(),
                    r.smds.as_str(),
                    r.mdp.as_str(),
                    if c.ok() { "ok" } else { "MISMATCH" }
                );
                for m in &c.mismatches {
                    s += &format!("    {m}\n");
                }
            }
            s
        }
    };
    Ok(Output::new(text, if a.check && !all_ok { EXIT_REFUTED } else { EXIT_OK }))
}

/// One classified parameter set from a sweep.
#[derive(Clone, Debug)]
pub struct SweepRow {
    pub spec: FamilySpec,
    pub report: ConvReport,
    pub ms: u128,
}

impl SweepRow {
    fn code(&self) -> i32 {
        verdict_code(&self.report, Some(self.spec.expected()))
    }

    fn csv(&self, jmax: usize) -> String {
        let r = &self.report;
        let mut cells = vec![self.spec.family.name().to_string(), self.spec.q.to_string()];
        cells.extend([r.n, r.k, r.delta].map(|x| x.to_string()));
        cells.extend((0..=jmax).map(|j| r.column(j).map_or(String::new(), |c| c.value.to_string())));
        cells.extend([r.dfree.0.to_string(), r.dfree.1.to_string()]);
        cells.extend([r.mds, r.smds, r.mdp].map(|v| v.as_str().to_string()));
        cells.push(self.ms.to_string());
        cells.join(",")
    }

    fn json(&self) -> Value {
        json!({
            "family": self.spec.family.name(),
            "q": self.spec.q,
            "params": {"n": self.spec.n, "k": self.spec.k, "delta": self.spec.delta},
            "expected": self.spec.expected(),
            "report": self.report.to_json(),
            "ms_elapsed": self.ms,
        })
    }
}

fn parse_families(s: &str) -> Result<Vec<Family>> {
    let fams = s.split(',').map(str::trim).filter(|x| !x.is_empty()).map(str::parse).collect::<Result<Vec<Family>>>()?;
    if fams.is_empty() {
        return Err(Error::InvalidParams("no families given".into()));
    }
    Ok(fams)
}

/// Builds and classifies every admissible parameter set for the given fields
/// and families, in sorted order.
pub fn sweep(qs: &[u32], families: &[Family], opts: &ClassifyOptions, timing: bool) -> Result<Vec<SweepRow>> {
    let mut specs = Vec::new();
    for &q in qs {
        Field::of_order(q)?;
        specs.extend(admissible_parameters(q, families));
    }
    specs
        .par_iter()
        .map(|&spec| {
            let start = Instant::now();
            let bundle = build(spec, &FieldSetup::new(spec.q)?)?;
            let report = classify(&bundle.desc, opts)?;
            let ms = if timing { start.elapsed().as_millis() } else { 0 };
            Ok(SweepRow { spec, report, ms })
        })
        .collect()
}

fn cmd_sweep(a: &SweepArgs, format: Format) -> Result<Output> {
    let families = parse_families(&a.families)?;
    let opts = a.search.options();
    let rows = sweep(&a.q, &families, &opts, !a.no_timing)?;
    let code = rows.iter().map(SweepRow::code).max().unwrap_or(EXIT_OK);
    let jmax = rows.iter().map(|r| r.report.column_distances.len()).max().unwrap_or(1).max(opts.jmax + 1) - 1;
    let text = match format {
        Format::Json => json_text(&json!(rows.iter().map(SweepRow::json).collect::<Vec<_>>())),
        Format::Text => {
            let mut head = vec!["family", "q", "n", "k", "delta"].into_iter().map(String::from).collect::<Vec<_>>();
            head.extend((0..=jmax).map(|j| format!("d{j}c")));
            head.extend(["dfree_lo", "dfree_hi", "mds", "smds", "mdp", "ms_elapsed"].map(String::from));
            let mut s = head.join(",") + "\n";
            for r in &rows {
                s += &r.csv(jmax);
                s += "\n";
            }
            s
        }
    };
    let mut o = Output::new(text, code);
    o.file = a.output.clone();
    let refuted = rows.iter().filter(|r| r.code() == EXIT_REFUTED).count();
    let open = rows.iter().filter(|r| r.code() == EXIT_BUDGET).count();
    o.notes.push(format!("{} codes, {refuted} with a refuted guarantee, {open} inconclusive", rows.len()));
    Ok(o)
}
