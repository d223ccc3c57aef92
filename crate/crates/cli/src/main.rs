//! `polyweight`: classification, decomposition and orbit queries for the
//! group data of the `polyweight` library.
//!
//! Exit codes: 0 success, 2 malformed request, 3 domain error (unsupported or
//! invalid datum), 4 precondition violation.

use std::io::Write;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use polyweight::arith::is_prime;
use polyweight::phi::default_box_radius;
use polyweight::{
    check_assumption, check_shift_bijection, go8, orbit_in_box, shift_bound_a, validate_datum,
    AmbientWeight, ClassificationContext, Error, GroupDatum, GroupSpec, Outcome,
};
use serde::Serialize;

const SCHEMA_VERSION: u32 = 1;

#[derive(Parser, Debug)]
#[command(name = "polyweight", version, about = "Polynomial weight classification queries")]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, env = "POLYWEIGHT_FORMAT", default_value = "json")]
    format: Format,

    /// Worker threads for box sweeps (defaults to all cores).
    #[arg(long, global = true)]
    jobs: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Format {
    Json,
    Tsv,
}

#[derive(Args, Debug, Clone)]
struct GroupArgs {
    /// gl:N, gsp:N, go:N or levi:N1,N2,...
    #[arg(long)]
    group: GroupSpec,

    #[arg(long, value_parser = parse_prime)]
    p: u64,

    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u32).range(1..))]
    r: u32,
}

#[derive(Args, Debug, Clone)]
struct WeightArg {
    /// Comma-separated ambient coordinates, e.g. 3,-1,0.
    #[arg(long, allow_hyphen_values = true, value_parser = parse_weight)]
    weight: AmbientWeight,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Polynomiality, restrictedness and the p^r-decomposition of one weight.
    Classify {
        #[command(flatten)]
        group: GroupArgs,
        #[command(flatten)]
        weight: WeightArg,
    },
    /// The decomposition λ = λ0 + p^r λ̃ with λ0 in P_r(D).
    Decompose {
        #[command(flatten)]
        group: GroupArgs,
        #[command(flatten)]
        weight: WeightArg,
    },
    /// Every element of P_r(D), sorted.
    EnumeratePr {
        #[command(flatten)]
        group: GroupArgs,
    },
    /// Hypothesis report for a group datum.
    Validate {
        #[arg(long)]
        group: GroupSpec,
    },
    /// Box certification of the four φ properties.
    AssumptionCheck {
        #[command(flatten)]
        group: GroupArgs,
        #[arg(long)]
        box_radius: Option<i64>,
    },
    /// The go:8 scenario at a prime power q with 4 | q - 1.
    Counterexample {
        #[arg(long)]
        prpower: i64,
    },
    /// Dot-orbit slice of a weight and, with --shift-i, the shift comparison.
    OrbitShift {
        #[command(flatten)]
        group: GroupArgs,
        #[command(flatten)]
        weight: WeightArg,
        #[arg(long, allow_hyphen_values = true)]
        shift_i: Option<i64>,
        #[arg(long, default_value_t = 6)]
        box_radius: i64,
    },
}

fn parse_prime(s: &str) -> Result<u64, String> {
    let p: u64 = s.parse().map_err(|_| format!("{s:?} is not an integer"))?;
    if is_prime(p) {
        Ok(p)
    } else {
        Err(format!("{p} is not prime"))
    }
}

fn parse_weight(s: &str) -> Result<AmbientWeight, String> {
    AmbientWeight::parse(s).map_err(|e| e.to_string())
}

enum Failure {
    Request(String),
    Library(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Library(e)
    }
}

impl Failure {
    fn exit_code(&self) -> u8 {
        match self {
            Failure::Request(_) | Failure::Library(Error::DimensionMismatch { .. }) => 2,
            Failure::Library(Error::Precondition(_)) => 4,
            Failure::Library(_) => 3,
        }
    }

    fn message(&self) -> String {
        match self {
            Failure::Request(m) => m.clone(),
            Failure::Library(e) => e.to_string(),
        }
    }
}

type CliResult<T> = Result<T, Failure>;

#[derive(Serialize, Default)]
struct RequestEcho {
    #[serde(skip_serializing_if = "Option::is_none")]
    group: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    p: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    r: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    weight: Option<Vec<i64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    box_radius: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    shift_i: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    prpower: Option<i64>,
}

/// Weights in results are canonical representatives of classes modulo
/// `kernel`.
#[derive(Serialize)]
struct LatticeMeta {
    ambient_dim: usize,
    kernel: Vec<Vec<i64>>,
    representatives: &'static str,
}

impl LatticeMeta {
    fn of(g: &GroupDatum) -> Self {
        LatticeMeta {
            ambient_dim: g.ambient_dim(),
            kernel: g.lattice().kernel_basis().iter().map(coords).collect(),
            representatives: "canonical",
        }
    }
}

#[derive(Serialize)]
struct Envelope<T> {
    version: u32,
    command: &'static str,
    request: RequestEcho,
    #[serde(skip_serializing_if = "Option::is_none")]
    lattice: Option<LatticeMeta>,
    result: T,
}

/// Tab-separated rendering of a result payload.
trait Tsv {
    fn tsv(&self, out: &mut String);
}

fn coords(w: &AmbientWeight) -> Vec<i64> {
    w.coords().to_vec()
}

fn join_tabs(xs: &[i64]) -> String {
    xs.iter().map(|x| x.to_string()).collect::<Vec<_>>().join("\t")
}

fn kv(out: &mut String, key: &str, value: impl std::fmt::Display) {
    out.push_str(key);
    out.push('\t');
    out.push_str(&value.to_string());
    out.push('\n');
}

fn kv_vec(out: &mut String, key: &str, value: Option<&[i64]>) {
    match value {
        Some(v) => kv(out, key, join_tabs(v)),
        None => kv(out, key, "none"),
    }
}

fn line(out: &mut String, v: &[i64]) {
    out.push_str(&join_tabs(v));
    out.push('\n');
}

fn render<T: Serialize + Tsv>(format: Format, env: &Envelope<T>) -> String {
    match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(env).expect("serializable payload");
            s.push('\n');
            s
        }
        Format::Tsv => {
            let mut s = String::new();
            env.result.tsv(&mut s);
            s
        }
    }
}

fn build(spec: &GroupSpec) -> CliResult<GroupDatum> {
    Ok(spec.build()?)
}

fn context(args: &GroupArgs) -> CliResult<ClassificationContext> {
    Ok(ClassificationContext::new(build(&args.group)?, args.p, args.r)?)
}

fn check_weight(g: &GroupDatum, w: &AmbientWeight) -> CliResult<()> {
    if w.dim() == g.ambient_dim() {
        Ok(())
    } else {
        Err(Failure::Request(format!(
            "weight has {} coordinates but {} has ambient dimension {}",
            w.dim(),
            g.label(),
            g.ambient_dim()
        )))
    }
}

fn echo(args: &GroupArgs) -> RequestEcho {
    RequestEcho {
        group: Some(args.group.to_string()),
        p: Some(args.p),
        r: Some(args.r),
        ..RequestEcho::default()
    }
}

#[derive(Serialize)]
struct ClassifyResult {
    class_rep: Vec<i64>,
    is_polynomial: bool,
    is_restricted: bool,
    #[serde(rename = "in_Pr")]
    in_pr: bool,
    /// `null` when no decomposition with a restricted digit exists.
    is_simple_polynomial: Option<bool>,
    lambda0: Option<Vec<i64>>,
    lambda_tilde: Option<Vec<i64>>,
    phi: Vec<i64>,
}

impl Tsv for ClassifyResult {
    fn tsv(&self, out: &mut String) {
        kv_vec(out, "class_rep", Some(&self.class_rep));
        kv(out, "is_polynomial", self.is_polynomial);
        kv(out, "is_restricted", self.is_restricted);
        kv(out, "in_Pr", self.in_pr);
        match self.is_simple_polynomial {
            Some(b) => kv(out, "is_simple_polynomial", b),
            None => kv(out, "is_simple_polynomial", "none"),
        }
        kv_vec(out, "lambda0", self.lambda0.as_deref());
        kv_vec(out, "lambda_tilde", self.lambda_tilde.as_deref());
        kv_vec(out, "phi", Some(&self.phi));
    }
}

fn classify(format: Format, group: &GroupArgs, weight: &AmbientWeight) -> CliResult<String> {
    let ctx = context(group)?;
    let g = ctx.datum();
    check_weight(g, weight)?;
    let dec = match ctx.decompose(weight) {
        Ok(d) => Some(d),
        Err(e) if e.is_precondition() => None,
        Err(e) => return Err(e.into()),
    };
    let is_simple_polynomial = match &dec {
        Some(d) => Some(ctx.is_polynomial(&d.lambda_tilde)?),
        None => None,
    };
    let result = ClassifyResult {
        class_rep: coords(&g.lattice().canonical_rep(weight)?),
        is_polynomial: ctx.is_polynomial(weight)?,
        is_restricted: ctx.is_restricted(weight)?,
        in_pr: ctx.in_pr(weight)?,
        is_simple_polynomial,
        lambda0: dec.as_ref().map(|d| coords(&d.lambda0)),
        lambda_tilde: dec.as_ref().map(|d| coords(&d.lambda_tilde)),
        phi: ctx.phi(weight)?,
    };
    let env = Envelope {
        version: SCHEMA_VERSION,
        command: "classify",
        request: RequestEcho {
            weight: Some(coords(weight)),
            ..echo(group)
        },
        lattice: Some(LatticeMeta::of(g)),
        result,
    };
    Ok(render(format, &env))
}

#[derive(Serialize)]
struct DecomposeResult {
    prpower: i64,
    lambda0: Vec<i64>,
    lambda_tilde: Vec<i64>,
}

impl Tsv for DecomposeResult {
    fn tsv(&self, out: &mut String) {
        kv(out, "prpower", self.prpower);
        kv_vec(out, "lambda0", Some(&self.lambda0));
        kv_vec(out, "lambda_tilde", Some(&self.lambda_tilde));
    }
}

fn decompose(format: Format, group: &GroupArgs, weight: &AmbientWeight) -> CliResult<String> {
    let ctx = context(group)?;
    check_weight(ctx.datum(), weight)?;
    let dec = ctx.decompose(weight)?;
    let env = Envelope {
        version: SCHEMA_VERSION,
        command: "decompose",
        request: RequestEcho {
            weight: Some(coords(weight)),
            ..echo(group)
        },
        lattice: Some(LatticeMeta::of(ctx.datum())),
        result: DecomposeResult {
            prpower: ctx.prpower(),
            lambda0: coords(&dec.lambda0),
            lambda_tilde: coords(&dec.lambda_tilde),
        },
    };
    Ok(render(format, &env))
}

#[derive(Serialize)]
struct WeightSet {
    prpower: i64,
    count: usize,
    weights: Vec<Vec<i64>>,
}

impl Tsv for WeightSet {
    fn tsv(&self, out: &mut String) {
        for w in &self.weights {
            line(out, w);
        }
    }
}

fn enumerate_pr(format: Format, group: &GroupArgs) -> CliResult<String> {
    let ctx = context(group)?;
    let weights: Vec<Vec<i64>> = ctx.enumerate_pr()?.iter().map(coords).collect();
    let env = Envelope {
        version: SCHEMA_VERSION,
        command: "enumerate-pr",
        request: echo(group),
        lattice: Some(LatticeMeta::of(ctx.datum())),
        result: WeightSet {
            prpower: ctx.prpower(),
            count: weights.len(),
            weights,
        },
    };
    Ok(render(format, &env))
}

#[derive(Serialize)]
struct Hypotheses {
    a: bool,
    b: bool,
    c_lower: bool,
    c_upper: bool,
    d: bool,
    equivariance: bool,
}

#[derive(Serialize)]
struct ValidateResult {
    label: String,
    family: String,
    x0_rank: usize,
    weyl_order: u64,
    all_hold: bool,
    hypotheses: Hypotheses,
    violations: Vec<String>,
}

impl Tsv for ValidateResult {
    fn tsv(&self, out: &mut String) {
        kv(out, "label", &self.label);
        kv(out, "family", &self.family);
        kv(out, "x0_rank", self.x0_rank);
        kv(out, "weyl_order", self.weyl_order);
        kv(out, "all_hold", self.all_hold);
        let h = &self.hypotheses;
        kv(out, "a", h.a);
        kv(out, "b", h.b);
        kv(out, "c_lower", h.c_lower);
        kv(out, "c_upper", h.c_upper);
        kv(out, "d", h.d);
        kv(out, "equivariance", h.equivariance);
        for v in &self.violations {
            kv(out, "violation", v);
        }
    }
}

fn validate(format: Format, spec: &GroupSpec) -> CliResult<String> {
    let g = build(spec)?;
    let rep = validate_datum(&g);
    let result = ValidateResult {
        label: g.label().to_string(),
        family: g.family().to_string(),
        x0_rank: g.x0_rank(),
        weyl_order: u64::try_from(g.weyl_order()).unwrap_or(u64::MAX),
        all_hold: rep.all_hold(),
        hypotheses: Hypotheses {
            a: rep.a,
            b: rep.b,
            c_lower: rep.c_lower,
            c_upper: rep.c_upper,
            d: rep.d,
            equivariance: rep.equivariance,
        },
        violations: rep.violations.iter().map(|v| v.to_string()).collect(),
    };
    let env = Envelope {
        version: SCHEMA_VERSION,
        command: "validate",
        request: RequestEcho {
            group: Some(spec.to_string()),
            ..RequestEcho::default()
        },
        lattice: Some(LatticeMeta::of(&g)),
        result,
    };
    Ok(render(format, &env))
}

#[derive(Serialize)]
struct PropertyVerdict {
    property: &'static str,
    status: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    cases: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    witness: Option<Vec<Vec<i64>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    detail: Option<String>,
}

#[derive(Serialize)]
struct AssumptionResult {
    box_radius: i64,
    all_pass: bool,
    properties: Vec<PropertyVerdict>,
}

impl Tsv for AssumptionResult {
    fn tsv(&self, out: &mut String) {
        kv(out, "box_radius", self.box_radius);
        kv(out, "all_pass", self.all_pass);
        for p in &self.properties {
            let mut row = format!("{}\t{}", p.property, p.status);
            if let Some(c) = p.cases {
                row.push_str(&format!("\t{c}"));
            }
            if let Some(d) = &p.detail {
                row.push_str(&format!("\t{d}"));
            }
            out.push_str(&row);
            out.push('\n');
        }
    }
}

fn verdict(property: &'static str, o: &Outcome) -> PropertyVerdict {
    let mut v = PropertyVerdict {
        property,
        status: "pass",
        cases: None,
        witness: None,
        detail: None,
    };
    match o {
        Outcome::Pass { cases } => v.cases = Some(*cases),
        Outcome::Fail { witness, detail } => {
            v.status = "fail";
            v.witness = Some(witness.iter().map(coords).collect());
            v.detail = Some(detail.clone());
        }
        Outcome::Skipped { reason } => {
            v.status = "skipped";
            v.detail = Some(reason.clone());
        }
    }
    v
}

fn assumption_check(format: Format, group: &GroupArgs, radius: Option<i64>) -> CliResult<String> {
    let g = build(&group.group)?;
    let radius = radius.unwrap_or_else(|| default_box_radius(g.ambient_dim()));
    let rep = check_assumption(&g, group.p, group.r, radius)?;
    let result = AssumptionResult {
        box_radius: radius,
        all_pass: rep.all_pass(),
        properties: rep.properties().iter().map(|(name, o)| verdict(name, o)).collect(),
    };
    let env = Envelope {
        version: SCHEMA_VERSION,
        command: "assumption-check",
        request: RequestEcho {
            box_radius: Some(radius),
            ..echo(group)
        },
        lattice: Some(LatticeMeta::of(&g)),
        result,
    };
    Ok(render(format, &env))
}

#[derive(Serialize)]
struct CounterexampleResult {
    prpower: i64,
    lambda0: Vec<i64>,
    lambda_tilde: Vec<i64>,
    phi_lambda0: i64,
    phi_lambda0_minus_qd: i64,
    phi_lambda_tilde: i64,
    weyl_order: u64,
    /// Cycle notation of a `w` making `w.λ0 + q λ̃` non-polynomial.
    witness: Option<String>,
}

impl Tsv for CounterexampleResult {
    fn tsv(&self, out: &mut String) {
        kv(out, "prpower", self.prpower);
        kv_vec(out, "lambda0", Some(&self.lambda0));
        kv_vec(out, "lambda_tilde", Some(&self.lambda_tilde));
        kv(out, "phi_lambda0", self.phi_lambda0);
        kv(out, "phi_lambda0_minus_qd", self.phi_lambda0_minus_qd);
        kv(out, "phi_lambda_tilde", self.phi_lambda_tilde);
        kv(out, "weyl_order", self.weyl_order);
        kv(out, "witness", self.witness.as_deref().unwrap_or("none"));
    }
}

fn counterexample(format: Format, q: i64) -> CliResult<String> {
    let rep = go8(q)?;
    let env = Envelope {
        version: SCHEMA_VERSION,
        command: "counterexample",
        request: RequestEcho {
            prpower: Some(q),
            ..RequestEcho::default()
        },
        lattice: None,
        result: CounterexampleResult {
            prpower: rep.prpower,
            lambda0: coords(&rep.lambda0),
            lambda_tilde: coords(&rep.lambda_tilde),
            phi_lambda0: rep.phi_lambda0,
            phi_lambda0_minus_qd: rep.phi_lambda0_minus_qd,
            phi_lambda_tilde: rep.phi_lambda_tilde,
            weyl_order: u64::try_from(rep.weyl_order).unwrap_or(u64::MAX),
            witness: rep.witness.map(|w| w.to_string()),
        },
    };
    Ok(render(format, &env))
}

#[derive(Serialize)]
struct ShiftResult {
    i: i64,
    holds: bool,
    checked: usize,
    counterexample: Option<Vec<i64>>,
}

#[derive(Serialize)]
struct OrbitShiftResult {
    a: i64,
    count: usize,
    elements: Vec<Vec<i64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    shift: Option<ShiftResult>,
}

impl Tsv for OrbitShiftResult {
    fn tsv(&self, out: &mut String) {
        out.push_str(&format!("# a\t{}\n", self.a));
        if let Some(s) = &self.shift {
            out.push_str(&format!("# shift_i\t{}\n# holds\t{}\n", s.i, s.holds));
            if let Some(c) = &s.counterexample {
                out.push_str(&format!("# counterexample\t{}\n", join_tabs(c)));
            }
        }
        for w in &self.elements {
            line(out, w);
        }
    }
}

fn orbit_shift(
    format: Format,
    group: &GroupArgs,
    weight: &AmbientWeight,
    shift_i: Option<i64>,
    radius: i64,
) -> CliResult<String> {
    let ctx = context(group)?;
    let g = ctx.datum();
    check_weight(g, weight)?;
    let a = shift_bound_a(weight, &ctx)?;
    let slice = orbit_in_box(weight, group.p as i64, radius, g)?;
    let shift = match shift_i {
        Some(i) => {
            let s = check_shift_bijection(weight, i, &ctx, radius)?;
            Some(ShiftResult {
                i,
                holds: s.holds,
                checked: s.checked,
                counterexample: s.counterexample.as_ref().map(coords),
            })
        }
        None => None,
    };
    let env = Envelope {
        version: SCHEMA_VERSION,
        command: "orbit-shift",
        request: RequestEcho {
            weight: Some(coords(weight)),
            box_radius: Some(radius),
            shift_i,
            ..echo(group)
        },
        lattice: Some(LatticeMeta::of(g)),
        result: OrbitShiftResult {
            a,
            count: slice.elements.len(),
            elements: slice.elements.iter().map(coords).collect(),
            shift,
        },
    };
    Ok(render(format, &env))
}

fn dispatch(cli: &Cli) -> CliResult<String> {
    let f = cli.format;
    match &cli.command {
        Command::Classify { group, weight } => classify(f, group, &weight.weight),
        Command::Decompose { group, weight } => decompose(f, group, &weight.weight),
        Command::EnumeratePr { group } => enumerate_pr(f, group),
        Command::Validate { group } => validate(f, group),
        Command::AssumptionCheck { group, box_radius } => assumption_check(f, group, *box_radius),
        Command::Counterexample { prpower } => counterexample(f, *prpower),
        Command::OrbitShift {
            group,
            weight,
            shift_i,
            box_radius,
        } => orbit_shift(f, group, &weight.weight, *shift_i, *box_radius),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(jobs) = cli.jobs {
        let pool = rayon::ThreadPoolBuilder::new().num_threads(jobs.max(1)).build_global();
        if let Err(e) = pool {
            eprintln!("error: cannot start {jobs} worker threads: {e}");
            return ExitCode::from(2);
        }
    }
    match dispatch(&cli) {
        Ok(out) => {
            let mut stdout = std::io::stdout().lock();
            if stdout.write_all(out.as_bytes()).and_then(|_| stdout.flush()).is_err() {
                return ExitCode::from(1);
            }
            ExitCode::SUCCESS
        }
        Err(f) => {
            eprintln!("error: {}", f.message());
            ExitCode::from(f.exit_code())
        }
    }
}
