//! Command-line front end. Every command produces an [`Outcome`]: an exit
//! code, a JSON payload and a human-readable rendering.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

use relsmooth_core::conditions::{
    check_relative, membership_from_report, BalanceWitness, CheckError, FiberWitness, PointReport, Status, TangencyData,
};
use relsmooth_core::graph::EdgeId;
use relsmooth_core::hurwitz::{
    complete_profiles, realizable, vertex_realizable, HurwitzError, PrescribedProfile, RamificationProblem,
    Realizability, DEFAULT_MAX_DEGREE, HARD_MAX_DEGREE,
};
use relsmooth_core::smoothing::{
    recipe, recipe_unchecked, simple_extension, verify_degree_zero, verify_intersections, Multipliers,
    RecipeError,
};
use relsmooth_core::strata::{smooth_dimension, EnumerateOptions, StrataError};
use relsmooth_core::twisted::{coprime_reduce, elliptic_verdict, elliptic_to_gamma, EllipticConfig, TwistedError};
use relsmooth_core::{reduce_contracted, DualMapGraph, Exact, StackyTarget, TargetPointId};

use crate::generate::{random_graph, star_config, GraphOptions, StarOptions};
use crate::inline::{format_gamma, parse_edge_map, parse_gamma, parse_profile, parse_weights, InlineError};
use crate::io::{read_graph, read_json, FormatError};

pub const EXIT_AFFIRMATIVE: u8 = 0;
pub const EXIT_NEGATIVE: u8 = 1;
pub const EXIT_INPUT: u8 = 2;
pub const EXIT_CAPACITY: u8 = 3;

#[derive(Debug, Parser)]
#[command(name = "relsmooth", version, about = "Smoothability of genus-zero relative and twisted stable maps")]
pub struct Cli {
    /// Print machine-readable JSON instead of tables.
    #[arg(long, global = true)]
    pub json: bool,
    /// Seed for commands that draw random instances.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Worker threads for enumeration (0 = one per CPU).
    #[arg(long, global = true, default_value_t = 0)]
    pub jobs: usize,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// List every violated structural invariant of a graph.
    Validate {
        /// Graph JSON, or "-" for stdin.
        graph: PathBuf,
    },
    /// Check the relative conditions at every relative point.
    Check {
        graph: PathBuf,
        /// Tangency data JSON.
        #[arg(required_unless_present = "gamma_inline")]
        gamma: Option<PathBuf>,
        /// Tangency data inline, e.g. "(1,1)@inf".
        #[arg(long = "gamma", conflicts_with = "gamma")]
        gamma_inline: Option<String>,
    },
    /// Merge every connected subtree of components contracted to one point.
    Reduce { graph: PathBuf },
    /// Smoothing recipe and its intersection certificate at one relative point.
    Recipe(RecipeArgs),
    /// Existence and number of covers with prescribed branch profiles.
    Hurwitz(HurwitzArgs),
    /// Boundary strata for given tangency data and degree.
    Enumerate(EnumerateArgs),
    /// Translate marked elliptic fibrations and decide smoothability.
    Elliptic { config: PathBuf },
    /// Print a target curve.
    Target(TargetArgs),
    /// Graphviz rendering of a graph.
    Dot { graph: PathBuf },
    /// Random instances from the property-test generators.
    Sample(SampleArgs),
}

#[derive(Debug, Args)]
pub struct RecipeArgs {
    pub graph: PathBuf,
    #[arg(long)]
    pub point: String,
    /// Divisibility targets for the singularity orders, "edge:n,...".
    #[arg(long, conflicts_with = "scale")]
    pub multiples: Option<String>,
    /// Literal multipliers replacing e by r e, "edge:r,...".
    #[arg(long)]
    pub scale: Option<String>,
    /// Skip the relative-condition check.
    #[arg(long)]
    pub unchecked: bool,
}

#[derive(Debug, Args)]
pub struct HurwitzArgs {
    #[arg(long)]
    pub degree: u32,
    /// Full profile "point:parts", repeatable.
    #[arg(long = "profile")]
    pub profiles: Vec<String>,
    /// Partial profile "point:parts", repeatable.
    #[arg(long = "partial")]
    pub partials: Vec<String>,
    #[arg(long, default_value_t = DEFAULT_MAX_DEGREE)]
    pub max_degree: u32,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Table,
    DotBundle,
}

#[derive(Debug, Args)]
pub struct EnumerateArgs {
    /// Tangency data inline, e.g. "(1,1)@inf".
    #[arg(long, required_unless_present = "gamma_file")]
    pub gamma: Option<String>,
    /// Tangency data JSON.
    #[arg(long, conflicts_with = "gamma")]
    pub gamma_file: Option<PathBuf>,
    #[arg(long)]
    pub degree: u32,
    /// Weighted projective target "a,b"; the projective line otherwise.
    #[arg(long)]
    pub wps: Option<String>,
    #[arg(long, value_enum, default_value_t = Format::Table)]
    pub format: Format,
    #[arg(long, default_value_t = EnumerateOptions::default().max_degree)]
    pub max_degree: u32,
    #[arg(long, default_value_t = EnumerateOptions::default().max_marks)]
    pub max_marks: usize,
    #[arg(long, default_value_t = EnumerateOptions::default().max_contracted_per_fiber)]
    pub max_contracted: usize,
    #[arg(long, default_value_t = DEFAULT_MAX_DEGREE)]
    pub hurwitz_max_degree: u32,
}

#[derive(Debug, Args)]
pub struct TargetArgs {
    /// Weights "a,b".
    #[arg(long)]
    pub wps: Option<String>,
    /// Relative point label, repeatable.
    #[arg(long = "relative")]
    pub relative: Vec<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SampleKind {
    Star,
    Graph,
}

#[derive(Debug, Args)]
pub struct SampleArgs {
    #[arg(long, value_enum, default_value_t = SampleKind::Graph)]
    pub kind: SampleKind,
    #[arg(long, default_value_t = 1)]
    pub count: usize,
    /// Share of unbalanced contracted components in star samples.
    #[arg(long, default_value_t = 0.0)]
    pub unbalanced: f64,
}

/// Result of one command.
#[derive(Debug, Clone)]
pub struct Outcome {
    pub code: u8,
    pub json: Value,
    pub text: String,
    pub warnings: Vec<String>,
}

impl Outcome {
    fn new(code: u8, payload: &impl Serialize, text: String) -> Self {
        let json = serde_json::to_value(payload).expect("payload serializes");
        Outcome { code, json, text, warnings: Vec::new() }
    }

    fn verdict(ok: bool, payload: &impl Serialize, text: String) -> Self {
        Outcome::new(if ok { EXIT_AFFIRMATIVE } else { EXIT_NEGATIVE }, payload, text)
    }

    fn failure(err: CliError) -> Self {
        let json = json!({ "error": { "code": err.code, "message": err.message } });
        Outcome { code: err.code, text: format!("error: {}\n", err.message), json, warnings: Vec::new() }
    }

    /// What to print on stdout.
    pub fn render(&self, as_json: bool) -> String {
        if as_json {
            let mut s = serde_json::to_string_pretty(&self.json).expect("value serializes");
            s.push('\n');
            s
        } else {
            self.text.clone()
        }
    }
}

#[derive(Debug, Clone)]
pub struct CliError {
    pub code: u8,
    pub message: String,
}

impl CliError {
    fn input(message: impl ToString) -> Self {
        CliError { code: EXIT_INPUT, message: message.to_string() }
    }
}

impl From<FormatError> for CliError {
    fn from(e: FormatError) -> Self {
        CliError::input(e)
    }
}

impl From<InlineError> for CliError {
    fn from(e: InlineError) -> Self {
        CliError::input(e)
    }
}

impl From<CheckError> for CliError {
    fn from(e: CheckError) -> Self {
        CliError::input(e)
    }
}

impl From<TwistedError> for CliError {
    fn from(e: TwistedError) -> Self {
        CliError::input(e)
    }
}

impl From<HurwitzError> for CliError {
    fn from(e: HurwitzError) -> Self {
        let code = if matches!(e, HurwitzError::Capacity { .. }) { EXIT_CAPACITY } else { EXIT_INPUT };
        CliError { code, message: e.to_string() }
    }
}

impl From<StrataError> for CliError {
    fn from(e: StrataError) -> Self {
        match e {
            StrataError::DegreeCapacity { .. } | StrataError::MarkCapacity { .. } => {
                CliError { code: EXIT_CAPACITY, message: e.to_string() }
            }
            StrataError::Hurwitz(h) => h.into(),
            other => CliError::input(other),
        }
    }
}

type CmdResult = Result<Outcome, CliError>;

pub fn run(cli: &Cli) -> Outcome {
    let result = match &cli.command {
        Command::Validate { graph } => validate(graph),
        Command::Check { graph, gamma, gamma_inline } => check(graph, gamma.as_deref(), gamma_inline.as_deref()),
        Command::Reduce { graph } => reduce(graph),
        Command::Recipe(args) => recipe_cmd(args),
        Command::Hurwitz(args) => hurwitz(args),
        Command::Enumerate(args) => enumerate(args, cli.jobs, cli.json),
        Command::Elliptic { config } => elliptic(config),
        Command::Target(args) => target(args),
        Command::Dot { graph } => dot(graph),
        Command::Sample(args) => sample(args, cli.seed),
    };
    result.unwrap_or_else(Outcome::failure)
}

fn validate(path: &Path) -> CmdResult {
    let g = read_graph(path)?;
    let report = g.validate();
    let mut text = String::new();
    if report.is_valid() {
        text.push_str("valid\n");
    } else {
        for issue in &report.issues {
            let _ = writeln!(text, "invalid: {issue}");
        }
    }
    Ok(Outcome::verdict(report.is_valid(), &json!({ "valid": report.is_valid(), "issues": report.issues }), text))
}

fn load_gamma(path: Option<&Path>, inline: Option<&str>) -> Result<TangencyData, CliError> {
    match (path, inline) {
        (_, Some(s)) => Ok(parse_gamma(s)?),
        (Some(p), None) => Ok(read_json(p)?),
        (None, None) => Err(CliError::input("no tangency data given")),
    }
}

fn status_mark(s: Status) -> &'static str {
    match s {
        Status::Pass => "pass",
        Status::Fail => "FAIL",
    }
}

fn describe_point(out: &mut String, p: &PointReport) {
    let _ = writeln!(
        out,
        "{:<10} (1) {:<5} (2) {:<5} (3) {:<5}",
        p.point.as_str(),
        status_mark(p.status.evaluation),
        status_mark(p.status.fiber),
        status_mark(p.status.balance)
    );
    for w in &p.evaluation {
        let found = w.found.as_ref().map_or("nothing".to_string(), ToString::to_string);
        let _ = writeln!(out, "  (1) mark {} on {} maps to {}", w.mark, w.vertex, found);
    }
    for w in &p.fiber {
        let _ = match w {
            FiberWitness::Deficit { vertex, accounted, degree } => {
                writeln!(out, "  (2) vertex {vertex}: fiber accounts for {accounted} of degree {degree}")
            }
            FiberWitness::UnmarkedNode { edge } => {
                writeln!(out, "  (2) node {edge} in the fiber is neither marked nor contracted")
            }
            FiberWitness::FiberTotal { tangency_sum, degree } => {
                writeln!(out, "  (2) tangencies sum to {tangency_sum}, degree is {degree}")
            }
        };
    }
    for w in &p.balance {
        let _ = match w {
            BalanceWitness::Subtree { vertices, tangency_sum, ramification_sum } => {
                let names: Vec<String> = vertices.iter().map(ToString::to_string).collect();
                writeln!(
                    out,
                    "  (3) contracted {{{}}}: tangencies {tangency_sum} vs ramification {ramification_sum}",
                    names.join(",")
                )
            }
            BalanceWitness::Mark { mark, vertex, tangency, ramification } => writeln!(
                out,
                "  (3) mark {mark} on {vertex}: tangency {tangency} vs ramification {ramification}"
            ),
        };
    }
}

fn check(path: &Path, gamma: Option<&Path>, inline: Option<&str>) -> CmdResult {
    let g = read_graph(path)?;
    let gamma = load_gamma(gamma, inline)?;
    let report = check_relative(&g, &gamma)?;
    let flags = membership_from_report(&g, &gamma, &report);
    let mut warnings = Vec::new();
    for v in g.vertices.iter().filter(|v| v.is_active()) {
        match vertex_realizable(&g, v.id, DEFAULT_MAX_DEGREE) {
            Ok(true) => {}
            Ok(false) => warnings.push(format!("vertex {}: no cover realizes its ramification profile", v.id)),
            Err(e) => warnings.push(format!("vertex {}: realizability not checked: {e}", v.id)),
        }
    }
    let mut text = String::new();
    for p in &report.points {
        describe_point(&mut text, p);
    }
    let _ = writeln!(
        text,
        "K: {}  N: {}  M: {}",
        flags.is_k, flags.is_n, flags.is_m
    );
    let payload = json!({ "membership": flags, "report": report, "warnings": warnings });
    let mut out = Outcome::verdict(flags.is_k, &payload, text);
    out.warnings = warnings;
    Ok(out)
}

fn reduce(path: &Path) -> CmdResult {
    let g = read_graph(path)?;
    let r = reduce_contracted(&g).map_err(CliError::input)?;
    let text = String::from_utf8(crate::io::to_json(&r)).expect("utf-8");
    Ok(Outcome::new(EXIT_AFFIRMATIVE, &r, text))
}

fn edge_map(input: &str) -> Result<std::collections::BTreeMap<EdgeId, u32>, CliError> {
    Ok(parse_edge_map(input)?.into_iter().map(|(e, v)| (EdgeId(e), v)).collect())
}

fn recipe_cmd(args: &RecipeArgs) -> CmdResult {
    let g = read_graph(&args.graph)?;
    let x = TargetPointId::from(args.point.as_str());
    let multipliers = match (&args.multiples, &args.scale) {
        (Some(m), _) => Multipliers::DivisibleBy(edge_map(m)?),
        (None, Some(s)) => Multipliers::Scaled(edge_map(s)?),
        (None, None) => Multipliers::Unit,
    };
    let computed = if args.unchecked { recipe_unchecked(&g, &x, &multipliers) } else { recipe(&g, &x, &multipliers) };
    let rec = match computed {
        Ok(rec) => rec,
        Err(RecipeError::ConditionsFail(report)) => {
            let mut text = String::from("the relative conditions fail; no recipe\n");
            describe_point(&mut text, &report);
            return Ok(Outcome::new(EXIT_NEGATIVE, &json!({ "conditions": report }), text));
        }
        Err(e) => return Err(CliError::input(e)),
    };
    let intersections = verify_intersections(&g, &rec);
    let degrees = verify_degree_zero(&g, &rec);
    let extension = simple_extension(&rec);

    let mut text = String::new();
    for c in &rec.components {
        let _ = writeln!(text, "{}: a = {}, marks {}", c.vertex, c.coefficient, c.mark_weight);
        for n in &c.nodes {
            let _ = writeln!(
                text,
                "  {} to {}: e = {}, m = {}, {}, stabilizer μ{}, xy = t^{}",
                n.edge, n.active, n.ramification, n.order, n.singularity, n.stabilizer_order, n.smoothing_exponent
            );
        }
    }
    for c in &intersections.components {
        let _ = writeln!(
            text,
            "{}: E² = {}, D·E = {}, (D + ΣaE)·E = {}{}",
            c.vertex,
            c.self_intersection,
            c.mark_degree,
            c.total,
            if c.balanced { "" } else { "  UNBALANCED" }
        );
    }
    let nonzero = degrees.nonzero();
    let _ = writeln!(
        text,
        "node identities: {}, balance: {}, degree zero: {}",
        intersections.node_identities_hold,
        intersections.balance_identity_holds,
        if nonzero.is_empty() { "yes".to_string() } else { format!("fails on {nonzero:?}") }
    );
    let ok = intersections.all_hold() && degrees.all_zero;
    let payload = json!({
        "recipe": rec,
        "intersections": intersections,
        "degrees": degrees,
        "extension": extension,
    });
    Ok(Outcome::verdict(ok, &payload, text))
}

fn profiles(full: &[String], partial: &[String]) -> Result<Vec<PrescribedProfile>, CliError> {
    let mut out = Vec::new();
    for s in full {
        let (p, parts) = parse_profile(s)?;
        out.push(PrescribedProfile::full(p, &parts));
    }
    for s in partial {
        let (p, parts) = parse_profile(s)?;
        out.push(PrescribedProfile::partial(p, &parts));
    }
    Ok(out)
}

#[derive(Serialize)]
struct Completion {
    problem: RamificationProblem,
    result: Realizability,
}

#[derive(Serialize)]
struct HurwitzOutput {
    problem: RamificationProblem,
    exists: bool,
    /// Forced extra simple branch points; absent when profiles are partial.
    rh_extra_branch_points: Option<i64>,
    tuples: u128,
    count: Exact,
    covers: Option<u64>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    completions: Vec<Completion>,
}

fn hurwitz(args: &HurwitzArgs) -> CmdResult {
    let problem = RamificationProblem::new(args.degree, profiles(&args.profiles, &args.partials)?);
    let mut warnings = Vec::new();
    if args.max_degree > DEFAULT_MAX_DEGREE {
        warnings.push(format!(
            "degree limit raised to {} (default {DEFAULT_MAX_DEGREE}, hard limit {HARD_MAX_DEGREE}); the search may be slow",
            args.max_degree
        ));
    }
    problem.check(args.max_degree)?;
    let output = if problem.is_full() {
        let r = realizable(&problem, args.max_degree)?;
        HurwitzOutput {
            problem,
            exists: r.exists,
            rh_extra_branch_points: Some(r.rh_extra_branch_points),
            tuples: r.tuples,
            count: r.count,
            covers: r.covers,
            completions: Vec::new(),
        }
    } else {
        let mut completions = Vec::new();
        for q in complete_profiles(&problem)? {
            let result = realizable(&q, args.max_degree)?;
            completions.push(Completion { problem: q, result });
        }
        let tuples = completions.iter().map(|c| c.result.tuples).sum();
        let count = completions.iter().fold(Exact::integer(0), |acc, c| Exact(acc.0 + c.result.count.0));
        let covers = completions.iter().map(|c| c.result.covers).sum();
        HurwitzOutput {
            exists: completions.iter().any(|c| c.result.exists),
            problem,
            rh_extra_branch_points: None,
            tuples,
            count,
            covers,
            completions,
        }
    };
    let mut text = format!(
        "exists: {}\ncount: {}\ncovers: {}\n",
        output.exists,
        output.count,
        output.covers.map_or("not counted".to_string(), |c| c.to_string())
    );
    if let Some(b) = output.rh_extra_branch_points {
        let _ = writeln!(text, "extra branch points: {b}");
    }
    for c in &output.completions {
        let parts: Vec<String> = c.problem.prescribed.iter().map(|p| format!("{}:{:?}", p.point, p.parts)).collect();
        let _ = writeln!(text, "  {}: exists {}, count {}", parts.join(" "), c.result.exists, c.result.count);
    }
    let mut out = Outcome::verdict(output.exists, &output, text);
    out.warnings = warnings;
    Ok(out)
}

fn target_for(gamma: &TangencyData, wps: Option<&str>) -> Result<StackyTarget, CliError> {
    let mut t = match wps {
        Some(s) => {
            let (a, b) = parse_weights(s)?;
            StackyTarget::weighted_projective(a, b)?
        }
        None => StackyTarget::projective_line(),
    };
    for p in gamma.points() {
        if !t.relative_points.contains(p) {
            t = t.with_relative_point(p.clone());
        }
    }
    let issues = t.check();
    if let Some(issue) = issues.first() {
        return Err(CliError::input(format!("invalid target: {issue}")));
    }
    Ok(t)
}

fn enumerate(args: &EnumerateArgs, jobs: usize, as_json: bool) -> CmdResult {
    let gamma = load_gamma(args.gamma_file.as_deref(), args.gamma.as_deref())?;
    let target = target_for(&gamma, args.wps.as_deref())?;
    let opts = EnumerateOptions {
        max_degree: args.max_degree,
        max_marks: args.max_marks,
        max_contracted_per_fiber: args.max_contracted,
        hurwitz_max_degree: args.hurwitz_max_degree,
    };
    let strata = crate::parallel::enumerate(&gamma, &target, args.degree, &opts, jobs)?;
    let payload = json!({
        "gamma": gamma,
        "degree": args.degree,
        "target": target,
        "smooth_dimension": smooth_dimension(&gamma, args.degree),
        "strata": strata,
    });
    let format = if as_json { Format::Json } else { args.format };
    let text = match format {
        Format::Json => serde_json::to_string_pretty(&payload).expect("serializes") + "\n",
        Format::Table => {
            let mut t = format!(
                "{} strata for {} in degree {}\n{:>4} {:>4} {:>5}  {:<5} key\n",
                strata.len(),
                format_gamma(&gamma),
                args.degree,
                "dim",
                "codim",
                "",
                "M N K"
            );
            for s in &strata {
                let f = |b: bool| if b { 'y' } else { '.' };
                let _ = writeln!(
                    t,
                    "{:>4} {:>4}        {} {} {} {}",
                    s.dimension,
                    s.codimension,
                    f(s.flags.is_m),
                    f(s.flags.is_n),
                    f(s.flags.is_k),
                    s.key.0
                );
            }
            t
        }
        Format::DotBundle => {
            let mut t = String::new();
            for (i, s) in strata.iter().enumerate() {
                let _ = writeln!(t, "// stratum {i}: dimension {} key {}", s.dimension, s.key.0);
                t.push_str(&crate::dot::to_dot(&s.graph));
            }
            t
        }
    };
    Ok(Outcome::new(EXIT_AFFIRMATIVE, &payload, text))
}

fn elliptic(path: &Path) -> CmdResult {
    let cfg: EllipticConfig = read_json(path)?;
    let (graph, gamma) = elliptic_to_gamma(&cfg).map_err(CliError::input)?;
    let (smoothable, report) = elliptic_verdict(&cfg).map_err(CliError::input)?;
    let mut text = format!("{}\n", if smoothable { "smoothable" } else { "not smoothable" });
    for p in &report.points {
        describe_point(&mut text, p);
    }
    let payload = json!({
        "smoothable": smoothable,
        "graph": graph,
        "gamma": gamma,
        "report": report,
    });
    Ok(Outcome::verdict(smoothable, &payload, text))
}

fn target(args: &TargetArgs) -> CmdResult {
    let (mut t, reduced) = match &args.wps {
        Some(s) => {
            let (a, b) = parse_weights(s)?;
            let (a1, b1, k) = coprime_reduce(a, b)?;
            (StackyTarget::weighted_projective(a, b)?, Some(json!({ "a": a1, "b": b1, "k": k })))
        }
        None => (StackyTarget::projective_line(), None),
    };
    for r in &args.relative {
        t = t.with_relative_point(r.as_str());
    }
    if let Some(issue) = t.check().first() {
        return Err(CliError::input(format!("invalid target: {issue}")));
    }
    let mut text = format!("generic stabilizer order {}\n", t.generic_order);
    for s in &t.special_points {
        let _ = writeln!(text, "special point {} of order {}", s.label, s.order);
    }
    for p in &t.relative_points {
        let _ = writeln!(text, "relative point {p}");
    }
    if let Some(r) = &reduced {
        let _ = writeln!(text, "coprime reduction: P({},{}) with k = {}", r["a"], r["b"], r["k"]);
    }
    Ok(Outcome::new(EXIT_AFFIRMATIVE, &json!({ "target": t, "coprime": reduced }), text))
}

fn dot(path: &Path) -> CmdResult {
    let g: DualMapGraph = read_graph(path)?;
    let text = crate::dot::to_dot(&g);
    Ok(Outcome::new(EXIT_AFFIRMATIVE, &json!({ "dot": text }), text))
}

fn sample(args: &SampleArgs, seed: Option<u64>) -> CmdResult {
    if !(0.0..=1.0).contains(&args.unbalanced) {
        return Err(CliError::input("--unbalanced must lie in [0, 1]"));
    }
    let seed = seed.unwrap_or_else(|| rand::thread_rng().gen());
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut samples = Vec::new();
    for _ in 0..args.count {
        samples.push(match args.kind {
            SampleKind::Star => {
                let s = star_config(&mut rng, &StarOptions::default(), args.unbalanced);
                json!({ "graph": s.graph, "unbalanced": s.unbalanced })
            }
            SampleKind::Graph => {
                let (g, gamma) = random_graph(&mut rng, &GraphOptions::default());
                json!({ "graph": g, "gamma": gamma })
            }
        });
    }
    let payload = json!({ "seed": seed, "samples": samples });
    let text = serde_json::to_string_pretty(&payload).expect("serializes") + "\n";
    let mut out = Outcome::new(EXIT_AFFIRMATIVE, &payload, text);
    out.warnings.push(format!("seed {seed}"));
    Ok(out)
}
