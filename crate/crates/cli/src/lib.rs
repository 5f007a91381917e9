//! Command-line front end for `wobetti`.
//!
//! Exit codes: 0 success or agreement, 1 usage or invalid input,
//! 2 formula/oracle or certificate mismatch, 3 weight hypothesis violated or
//! no closed form for the family.

use std::fmt::Write as _;
use std::io::Read;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use wobetti::families::{cycles, forests, stars, StarKind};
use wobetti::{
    betti_table, classify, evaluate_formula, family_certificate, invariants_from_table,
    normalize_source_weights, oracle_report, parse_graph, polarize, split_eval, Error, Field,
    InvariantReport, Monomial, MonomialIdeal, OracleConfig, SplitOptions, VarSet,
    WeightedOrientedGraph,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_MISMATCH: i32 = 2;
pub const EXIT_HYPOTHESIS: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "wobetti", version, about = "Betti numbers, projective dimension and regularity of edge ideals of vertex-weighted oriented graphs")]
pub struct Cli {
    #[command(flatten)]
    pub global: Global,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct Global {
    /// How invariants are obtained.
    #[arg(long, value_enum, default_value_t = Method::Both, global = true)]
    pub method: Method,
    /// Coefficient field characteristic: 0 or a prime.
    #[arg(long = "char", default_value_t = 0, global = true)]
    pub characteristic: u64,
    /// Handling of sources with a declared weight above 1.
    #[arg(long, value_enum, default_value_t = Normalize::On, global = true)]
    pub normalize_sources: Normalize,
    #[arg(long, value_enum, default_value_t = Output::Text, global = true)]
    pub output: Output,
    /// Largest generator count accepted by the Betti oracle.
    #[arg(long, default_value_t = wobetti::betti::DEFAULT_GENERATOR_CAP, global = true)]
    pub cap_generators: usize,
    #[arg(long, default_value_t = wobetti::splitting::DEFAULT_NODE_BUDGET, global = true)]
    pub node_budget: usize,
    #[arg(long, default_value_t = 0, global = true)]
    pub seed: u64,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    Formula,
    Oracle,
    Both,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Normalize {
    On,
    Off,
    Error,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Output {
    Text,
    Json,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    Forest,
    Cycle,
    Star,
    Polarization,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// pd, reg and depth of a graph's edge ideal.
    Invariants {
        /// Graph file (JSON or edge list); stdin when absent or `-`.
        input: Option<PathBuf>,
    },
    /// Graded Betti table of an ideal or of a graph's edge ideal.
    Betti { input: Option<PathBuf> },
    /// Polarization of an ideal or of a graph's edge ideal.
    Polarize { input: Option<PathBuf> },
    /// Splitting certificate for a graph family member or an ideal.
    Certificate {
        input: Option<PathBuf>,
        /// Re-check every node against the Betti oracle.
        #[arg(long)]
        verify: bool,
    },
    /// Closed form versus oracle over a whole family.
    Sweep(SweepArgs),
}

#[derive(Args, Debug, Clone)]
pub struct SweepArgs {
    #[arg(long, value_enum)]
    pub family: Family,
    /// Smallest size: vertices for stars and cycles, edges for forests.
    #[arg(long, default_value_t = 3)]
    pub min: usize,
    #[arg(long, default_value_t = 5)]
    pub max: usize,
    /// Comma-separated weights for non-source vertices.
    #[arg(long, value_delimiter = ',', default_value = "2,3")]
    pub weights: Vec<u32>,
    /// Instances outside the weight hypothesis count as expected mismatches.
    #[arg(long)]
    pub allow_hypothesis_fail: bool,
    /// Number of random ideals for the polarization family.
    #[arg(long, default_value_t = 200)]
    pub count: usize,
}

/// Result of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome {
            code: EXIT_OK,
            stdout,
            stderr: String::new(),
        }
    }

    fn fail(code: i32, stderr: String) -> Self {
        Outcome {
            code,
            stdout: String::new(),
            stderr,
        }
    }
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::HypothesisViolated(_) | Error::NoFormula(_) => EXIT_HYPOTHESIS,
        Error::CertificateMismatch(_) => EXIT_MISMATCH,
        _ => EXIT_USAGE,
    }
}

impl From<Error> for Outcome {
    fn from(e: Error) -> Self {
        let mut msg = format!("error: {e}\n");
        if matches!(e, Error::HypothesisViolated(_)) {
            msg.push_str("the closed forms require every non-source weight to be at least 2\n");
        }
        Outcome::fail(exit_code(&e), msg)
    }
}

/// Parses `args` (program name first) and runs the command. `stdin` is used
/// when no input path is given.
pub fn run_with<I, S>(args: I, stdin: &mut dyn Read) -> Outcome
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome::fail(EXIT_USAGE, text)
            } else {
                Outcome::ok(text)
            };
        }
    };
    run(&cli, stdin)
}

pub fn run(cli: &Cli, stdin: &mut dyn Read) -> Outcome {
    let g = &cli.global;
    let oracle = match Field::from_characteristic(g.characteristic) {
        Ok(field) => OracleConfig {
            field,
            generator_cap: g.cap_generators,
        },
        Err(e) => return e.into(),
    };
    let result = match &cli.command {
        Command::Invariants { input } => {
            read_input(input, stdin).and_then(|t| invariants(g, &oracle, &t))
        }
        Command::Betti { input } => read_input(input, stdin).and_then(|t| betti(g, &oracle, &t)),
        Command::Polarize { input } => read_input(input, stdin).and_then(|t| polarize_cmd(g, &t)),
        Command::Certificate { input, verify } => read_input(input, stdin)
            .and_then(|t| certificate(g, &oracle, &t, *verify)),
        Command::Sweep(args) => Ok(sweep(g, &oracle, args)),
    };
    result.unwrap_or_else(Outcome::from)
}

fn read_input(path: &Option<PathBuf>, stdin: &mut dyn Read) -> wobetti::Result<String> {
    let io_err = |e: std::io::Error| Error::Parse {
        offset: 0,
        message: e.to_string(),
    };
    match path {
        Some(p) if p.as_os_str() != "-" => std::fs::read_to_string(p).map_err(io_err),
        _ => {
            let mut s = String::new();
            stdin.read_to_string(&mut s).map_err(io_err)?;
            Ok(s)
        }
    }
}

enum Input {
    Ideal(MonomialIdeal),
    Graph(WeightedOrientedGraph, Vec<String>),
}

fn looks_like_ideal(text: &str) -> bool {
    text.trim_start().starts_with('(')
}

fn load_graph(g: &Global, text: &str) -> wobetti::Result<(WeightedOrientedGraph, Vec<String>)> {
    let d = parse_graph(text)?;
    let (_, warnings) = normalize_source_weights(&d);
    match g.normalize_sources {
        Normalize::Error if !d.weighted_sources().is_empty() => Err(Error::Parse {
            offset: 0,
            message: format!(
                "sources with weight above 1: {}",
                d.weighted_sources().join(", ")
            ),
        }),
        Normalize::On => Ok((d, warnings.iter().map(|w| format!("warning: {w}")).collect())),
        _ => Ok((d, Vec::new())),
    }
}

fn load(g: &Global, text: &str) -> wobetti::Result<Input> {
    if looks_like_ideal(text) {
        Ok(Input::Ideal(MonomialIdeal::parse(text.trim())?))
    } else {
        let (d, w) = load_graph(g, text)?;
        Ok(Input::Graph(d, w))
    }
}

fn with_warnings(mut out: Outcome, warnings: &[String]) -> Outcome {
    for w in warnings {
        out.stderr.push_str(w);
        out.stderr.push('\n');
    }
    out
}

fn report_json(r: &InvariantReport) -> Value {
    serde_json::to_value(r).expect("report serializes")
}

fn report_text(out: &mut String, label: &str, r: &InvariantReport) {
    let _ = writeln!(out, "{label}: pd={} reg={} depth={}", r.pd, r.reg, r.depth);
    for line in &r.formula_refs {
        let _ = writeln!(out, "  {line}");
    }
}

fn invariants(g: &Global, oracle: &OracleConfig, text: &str) -> wobetti::Result<Outcome> {
    let (d, warnings) = load_graph(g, text)?;
    let family = classify(&d)?.tag;
    let formula = match g.method {
        Method::Oracle => None,
        _ => Some(evaluate_formula(&d)),
    };
    let oracle_r = match g.method {
        Method::Formula => None,
        _ => Some(oracle_report(&d, oracle)?),
    };
    let mut code = EXIT_OK;
    let mut text_out = String::new();
    let mut json_out = json!({ "family": family.label(), "nvars": d.num_vertices() });
    let obj = json_out.as_object_mut().unwrap();
    let _ = writeln!(text_out, "family: {family}");
    let mut err = String::new();

    match &formula {
        Some(Ok(f)) => {
            report_text(&mut text_out, "formula", f);
            obj.insert("formula".into(), report_json(f));
        }
        Some(Err(e)) => {
            code = exit_code(e);
            let _ = writeln!(err, "{}", Outcome::from(e.clone()).stderr.trim_end());
            obj.insert("formula_error".into(), json!(e.to_string()));
        }
        None => {}
    }
    if let Some(o) = &oracle_r {
        let label = if matches!(formula, Some(Err(_))) {
            "oracle (closed form not applicable)"
        } else {
            "oracle"
        };
        report_text(&mut text_out, label, o);
        obj.insert("oracle".into(), report_json(o));
    }
    if let (Some(Ok(f)), Some(o)) = (&formula, &oracle_r) {
        let agree = f.same_invariants(o);
        let _ = writeln!(text_out, "{}", if agree { "MATCH" } else { "MISMATCH" });
        obj.insert("verdict".into(), json!(if agree { "match" } else { "mismatch" }));
        if !agree {
            code = EXIT_MISMATCH;
        }
    }
    let stdout = match g.output {
        Output::Text => text_out,
        Output::Json => format!("{}\n", serde_json::to_string_pretty(&json_out).unwrap()),
    };
    if formula.as_ref().is_some_and(|f| f.is_err()) && oracle_r.is_none() {
        return Ok(with_warnings(Outcome::fail(code, err), &warnings));
    }
    let mut out = Outcome::ok(stdout);
    out.code = code;
    out.stderr = err;
    Ok(with_warnings(out, &warnings))
}

fn input_ideal(g: &Global, text: &str) -> wobetti::Result<(MonomialIdeal, Vec<String>)> {
    match load(g, text)? {
        Input::Ideal(i) => Ok((i, Vec::new())),
        Input::Graph(d, w) => Ok((wobetti::edge_ideal(&d)?, w)),
    }
}

fn betti(g: &Global, oracle: &OracleConfig, text: &str) -> wobetti::Result<Outcome> {
    let (ideal, warnings) = input_ideal(g, text)?;
    let table = betti_table(&ideal, oracle)?;
    let inv = invariants_from_table(&table)?;
    let stdout = match g.output {
        Output::Text => format!(
            "{}pd={} reg={} depth={} char={}\n",
            table.render_grid(),
            inv.pd,
            inv.reg,
            inv.depth,
            oracle.field.characteristic()
        ),
        Output::Json => format!("{}\n", serde_json::to_string(&table.to_json()).unwrap()),
    };
    Ok(with_warnings(Outcome::ok(stdout), &warnings))
}

fn polarize_cmd(g: &Global, text: &str) -> wobetti::Result<Outcome> {
    let (ideal, warnings) = input_ideal(g, text)?;
    let p = polarize(&ideal)?;
    let stdout = match g.output {
        Output::Text => {
            let mut s = format!("{}\n", p.ideal());
            for v in p.var_map() {
                let _ = writeln!(s, "{} = {} slot {}", v.name, v.original, v.slot);
            }
            s
        }
        Output::Json => format!(
            "{}\n",
            serde_json::to_string(&json!({
                "ideal": p.ideal().to_string(),
                "var_map": p.var_map(),
            }))
            .unwrap()
        ),
    };
    Ok(with_warnings(Outcome::ok(stdout), &warnings))
}

fn certificate(
    g: &Global,
    oracle: &OracleConfig,
    text: &str,
    verify: bool,
) -> wobetti::Result<Outcome> {
    let opts = SplitOptions {
        oracle: *oracle,
        node_budget: g.node_budget,
        verify,
    };
    let (header, cert, warnings) = match load(g, text)? {
        Input::Ideal(i) => (json!({ "ideal": i.to_string() }), split_eval(&i, &opts)?, vec![]),
        Input::Graph(d, w) => {
            let fc = family_certificate(&d, &opts)?;
            let header = json!({
                "family": fc.classification.tag.label(),
                "closed_form": { "pd": fc.formula.pd, "reg": fc.formula.reg, "depth": fc.formula.depth },
                "polarized": fc.polarized.ideal().to_string(),
            });
            (header, fc.certificate, w)
        }
    };
    let stdout = match g.output {
        Output::Text => {
            let mut s = String::new();
            if let Some(f) = header.get("family") {
                let cf = &header["closed_form"];
                let _ = writeln!(
                    s,
                    "family: {} closed form pd={} reg={} depth={}",
                    f.as_str().unwrap(),
                    cf["pd"],
                    cf["reg"],
                    cf["depth"]
                );
                let _ = writeln!(s, "polarized: {}", header["polarized"].as_str().unwrap());
            }
            s.push_str(&cert.render_text());
            s
        }
        Output::Json => {
            let mut v = cert.to_json();
            for (k, val) in header.as_object().unwrap() {
                v.as_object_mut().unwrap().insert(k.clone(), val.clone());
            }
            format!("{}\n", serde_json::to_string_pretty(&v).unwrap())
        }
    };
    let mut out = Outcome::ok(stdout);
    if verify && !cert.verified() {
        out.code = EXIT_MISMATCH;
    }
    Ok(with_warnings(out, &warnings))
}

/// A random nonzero ideal with at most `max_vars` variables, `max_gens`
/// generators and exponents at most `max_exp`.
pub fn random_ideal(
    rng: &mut impl Rng,
    max_vars: usize,
    max_gens: usize,
    max_exp: u32,
) -> MonomialIdeal {
    let n = rng.gen_range(1..=max_vars);
    let vars = VarSet::numbered(n).expect("n >= 1");
    let count = rng.gen_range(1..=max_gens);
    let mut gens = Vec::with_capacity(count);
    while gens.len() < count {
        let e: Vec<u32> = (0..n).map(|_| rng.gen_range(0..=max_exp)).collect();
        if e.iter().any(|&x| x > 0) {
            gens.push(Monomial::new(&vars, e).expect("matching length"));
        }
    }
    MonomialIdeal::new(&vars, gens).expect("nonconstant generators")
}

#[derive(Debug, Default, Clone, PartialEq, Eq)]
pub struct SweepSummary {
    pub instances: usize,
    pub mismatches: usize,
    pub expected: usize,
    pub hypothesis_failures: usize,
    pub lines: Vec<String>,
}

fn sweep_graphs(args: &SweepArgs) -> wobetti::Result<Vec<(String, Vec<WeightedOrientedGraph>)>> {
    let mut groups = Vec::new();
    for size in args.min..=args.max {
        match args.family {
            Family::Cycle => groups.push((format!("cycle n={size}"), cycles(size, &args.weights)?)),
            Family::Forest => {
                groups.push((format!("forest edges={size}"), forests(size, &args.weights)?))
            }
            Family::Star => {
                for kind in StarKind::ALL {
                    let label = match kind {
                        StarKind::Out => "star-out",
                        StarKind::In => "star-in",
                        StarKind::InOut => "star-in-out",
                    };
                    groups.push((format!("{label} n={size}"), stars(kind, size, &args.weights)?));
                }
            }
            Family::Polarization => unreachable!(),
        }
    }
    Ok(groups)
}

fn sweep_family(oracle: &OracleConfig, args: &SweepArgs) -> wobetti::Result<SweepSummary> {
    let mut s = SweepSummary::default();
    for (label, graphs) in sweep_graphs(args)? {
        let (mut bad, mut expected, mut hyp) = (0, 0, 0);
        for d in &graphs {
            let o = oracle_report(d, oracle)?;
            let f = match evaluate_formula(d) {
                Ok(f) => f,
                Err(Error::HypothesisViolated(_)) => {
                    hyp += 1;
                    if !args.allow_hypothesis_fail {
                        continue;
                    }
                    wobetti::formula::evaluate_formula_unchecked(d)?
                }
                Err(e) => return Err(e),
            };
            if !f.same_invariants(&o) {
                if f.hypothesis_ok {
                    bad += 1;
                    s.lines.push(format!(
                        "  counterexample: {} formula pd={} reg={} oracle pd={} reg={}",
                        d.to_edge_list().trim_end().replace('\n', "; "),
                        f.pd,
                        f.reg,
                        o.pd,
                        o.reg
                    ));
                } else {
                    expected += 1;
                }
            }
        }
        s.lines.insert(
            s.lines.len() - bad,
            format!(
                "{label}: {} instances, {bad} mismatches, {expected} expected mismatches, {hyp} outside hypothesis",
                graphs.len()
            ),
        );
        s.instances += graphs.len();
        s.mismatches += bad;
        s.expected += expected;
        s.hypothesis_failures += hyp;
    }
    Ok(s)
}

fn sweep_polarization(oracle: &OracleConfig, args: &SweepArgs, seed: u64) -> wobetti::Result<SweepSummary> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut s = SweepSummary::default();
    for _ in 0..args.count {
        let i = random_ideal(&mut rng, 4, 6, 3);
        let p = polarize(&i)?;
        let (a, b) = (betti_table(&i, oracle)?, betti_table(p.ideal(), oracle)?);
        s.instances += 1;
        if a.entries() != b.entries() {
            s.mismatches += 1;
            s.lines.push(format!("  counterexample: {i}"));
        }
    }
    s.lines.insert(
        0,
        format!(
            "polarization seed={seed}: {} ideals, {} mismatches",
            s.instances, s.mismatches
        ),
    );
    Ok(s)
}

pub fn run_sweep(g: &Global, oracle: &OracleConfig, args: &SweepArgs) -> wobetti::Result<SweepSummary> {
    if args.family == Family::Polarization {
        sweep_polarization(oracle, args, g.seed)
    } else {
        if args.weights.is_empty() || args.weights.contains(&0) {
            return Err(Error::NonPositiveWeight {
                vertex: "sweep".into(),
                weight: 0,
            });
        }
        sweep_family(oracle, args)
    }
}

fn sweep(g: &Global, oracle: &OracleConfig, args: &SweepArgs) -> Outcome {
    let s = match run_sweep(g, oracle, args) {
        Ok(s) => s,
        Err(e) => return e.into(),
    };
    let code = if s.mismatches > 0 {
        EXIT_MISMATCH
    } else if s.hypothesis_failures > 0 && !args.allow_hypothesis_fail {
        EXIT_HYPOTHESIS
    } else {
        EXIT_OK
    };
    let stdout = match g.output {
        Output::Text => {
            let mut out = s.lines.join("\n");
            let _ = write!(
                out,
                "\ntotal: {} instances, {} mismatches, {} expected mismatches, {} outside hypothesis\n",
                s.instances, s.mismatches, s.expected, s.hypothesis_failures
            );
            out
        }
        Output::Json => format!(
            "{}\n",
            json!({
                "instances": s.instances,
                "mismatches": s.mismatches,
                "expected_mismatches": s.expected,
                "outside_hypothesis": s.hypothesis_failures,
                "lines": s.lines,
            })
        ),
    };
    Outcome {
        code,
        stdout,
        stderr: String::new(),
    }
}
