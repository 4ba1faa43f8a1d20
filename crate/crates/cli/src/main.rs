//! `crsing`: command-line front end for the crsing library.
//!
//! Exit codes: 0 when the answer was computed, 1 for a negative
//! mathematical answer (no extension, not CR, not applicable, failed
//! suite), 2 for bad input, 3 when an internal certificate check fails.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};

use crsing::classify::{
    check_first_integral, classify_cr_image, classify_quadric, flatten_from_first_integral, normalize_rank1,
    CRImageForm, ClassLabel, QuadraticMatch,
};
use crsing::extend::{build_xd, counterexample_linear, cr_homogeneous_basis, extend_polynomial};
use crsing::formal::formal_extend;
use crsing::odecrit::{brute_force_ode, decide, OdeCase, OdeParams, Verdict};
use crsing::verify::{run_suite, Suite, SuiteConfig};
use crsing::{format_poly, format_vector, load_manifold, parse_poly, Error, GaussRational, Manifold, Matrix};

#[derive(Parser)]
#[command(name = "crsing", version, about = "Exact CR function extension on codimension-two CR singular manifolds")]
struct Cli {
    /// Print a JSON object with "command", "result" and "certificate".
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct ManifoldArg {
    /// Manifold description (JSON with n, A, B, C, E).
    #[arg(long)]
    manifold: PathBuf,
}

#[derive(Subcommand)]
enum Command {
    /// Rank of [A*; B].
    Rank(ManifoldArg),
    /// Normal form of the quadric when the rank condition fails.
    Classify(ManifoldArg),
    /// Basis of the homogeneous CR polynomials of one degree on the quadric.
    CrBasis {
        #[command(flatten)]
        manifold: ManifoldArg,
        #[arg(long)]
        degree: u32,
        /// Write the matrix X_d as CSV.
        #[arg(long)]
        dump_matrix: Option<PathBuf>,
    },
    /// Whether f is annihilated by every CR field of the manifold.
    CheckCr {
        #[command(flatten)]
        manifold: ManifoldArg,
        #[arg(long)]
        f: String,
    },
    /// Holomorphic F with F(z, Q) = f on the quadric.
    Extend {
        #[command(flatten)]
        manifold: ManifoldArg,
        #[arg(long)]
        f: String,
    },
    /// Truncated F with f - F(z, rho) = O(|z|^(N+1)).
    FormalExtend {
        #[command(flatten)]
        manifold: ManifoldArg,
        #[arg(long)]
        f: String,
        #[arg(long, default_value_t = 8)]
        order: u32,
    },
    /// Linear CR function without extension, for rank-one quadrics.
    Counterexample(ManifoldArg),
    /// Quadratic form of a manifold that may be a CR image.
    CrImage(ManifoldArg),
    /// Check a candidate first integral g and extend it.
    FlattenCheck {
        #[command(flatten)]
        manifold: ManifoldArg,
        #[arg(long, alias = "f")]
        g: String,
        #[arg(long, default_value_t = 8)]
        order: u32,
    },
    /// Polynomial solutions of (p + q eta) zeta = R(eta) zeta'.
    Ode {
        #[arg(long, value_enum)]
        case: CaseArg,
        #[arg(long, value_parser = gauss, allow_hyphen_values = true)]
        p: Option<GaussRational>,
        #[arg(long, value_parser = gauss, allow_hyphen_values = true)]
        q: Option<GaussRational>,
        #[arg(long, value_parser = gauss, allow_hyphen_values = true)]
        r: Option<GaussRational>,
        #[arg(long, value_parser = gauss, allow_hyphen_values = true)]
        s: Option<GaussRational>,
        #[arg(long, value_parser = gauss, allow_hyphen_values = true)]
        t: Option<GaussRational>,
        #[arg(long, value_parser = gauss, allow_hyphen_values = true)]
        xi: Option<GaussRational>,
        /// Degree bound for the brute-force comparison.
        #[arg(long, default_value_t = 12)]
        max_degree: u32,
    },
    /// Run verification suites.
    Verify {
        /// rank-formula, block-ranks, extension-sweep, uniqueness, examples,
        /// classification, ode, restriction, levi-flat, or all.
        #[arg(long, default_value = "all", value_parser = suite_names)]
        suite: String,
        /// Degree bound; each suite has its own default.
        #[arg(long)]
        dmax: Option<u32>,
        #[arg(long)]
        samples: Option<usize>,
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum CaseArg {
    A,
    B,
    C,
}

fn gauss(s: &str) -> Result<GaussRational, String> {
    s.parse::<GaussRational>().map_err(|e| e.to_string())
}

fn suite_names(s: &str) -> Result<String, String> {
    if s == "all" || Suite::from_name(s).is_some() {
        Ok(s.to_string())
    } else {
        let names: Vec<&str> = Suite::ALL.iter().map(|s| s.name()).collect();
        Err(format!("unknown suite; expected all, {}", names.join(", ")))
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Status {
    Computed,
    Negative,
    InputError,
    Internal,
}

impl Status {
    fn code(self) -> u8 {
        match self {
            Status::Computed => 0,
            Status::Negative => 1,
            Status::InputError => 2,
            Status::Internal => 3,
        }
    }

    fn name(self) -> &'static str {
        match self {
            Status::Computed => "ok",
            Status::Negative => "negative",
            Status::InputError => "input-error",
            Status::Internal => "internal-error",
        }
    }
}

struct Output {
    status: Status,
    lines: Vec<String>,
    result: Map<String, Value>,
    certificate: Map<String, Value>,
}

impl Output {
    fn new() -> Self {
        Output {
            status: Status::Computed,
            lines: Vec::new(),
            result: Map::new(),
            certificate: Map::new(),
        }
    }

    fn line(&mut self, s: impl Into<String>) {
        self.lines.push(s.into());
    }

    fn result(&mut self, key: &str, v: impl Into<Value>) {
        self.result.insert(key.into(), v.into());
    }

    fn cert(&mut self, key: &str, v: impl Into<Value>) {
        self.certificate.insert(key.into(), v.into());
    }

    fn negative(&mut self, reason: &str, message: String) {
        self.status = Status::Negative;
        self.result("reason", reason);
        self.line(message);
    }

    fn from_error(e: &Error) -> Self {
        let mut out = Output::new();
        out.status = if e.is_mathematical() {
            Status::Negative
        } else if matches!(e, Error::Certificate(_)) {
            Status::Internal
        } else {
            Status::InputError
        };
        out.result("reason", reason(e));
        out.result("message", e.to_string());
        out.line(e.to_string());
        out
    }
}

/// Variant name of an error, e.g. `NoExtension`.
fn reason(e: &Error) -> String {
    let debug = format!("{e:?}");
    debug
        .split(|c: char| !c.is_alphanumeric())
        .next()
        .unwrap_or_default()
        .to_string()
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Rank(_) => "rank",
        Command::Classify(_) => "classify",
        Command::CrBasis { .. } => "cr-basis",
        Command::CheckCr { .. } => "check-cr",
        Command::Extend { .. } => "extend",
        Command::FormalExtend { .. } => "formal-extend",
        Command::Counterexample(_) => "counterexample",
        Command::CrImage(_) => "cr-image",
        Command::FlattenCheck { .. } => "flatten-check",
        Command::Ode { .. } => "ode",
        Command::Verify { .. } => "verify",
    }
}

fn load(path: &Path) -> Result<Manifold, Error> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::MalformedDocument(format!("cannot read {}: {e}", path.display())))?;
    load_manifold(&text)
}

fn matrix_json(m: &Matrix) -> Value {
    (0..m.rows())
        .map(|i| m.row(i).iter().map(|c| Value::String(c.to_string())).collect::<Value>())
        .collect()
}

fn vector_json(v: &[GaussRational]) -> Value {
    v.iter().map(|c| Value::String(c.to_string())).collect()
}

fn run(command: &Command) -> Result<Output, Error> {
    let mut out = Output::new();
    match command {
        Command::Rank(a) => {
            let m = load(&a.manifold)?;
            let q = m.quadric();
            let rank = m.rank_condition();
            out.line(format!("rank: {rank}"));
            out.result("rank", rank);
            out.result("rank_condition", rank >= 2);
            out.cert("stacked_matrix", matrix_json(&q.a().adjoint().stack(q.b())));
        }
        Command::Classify(a) => {
            let m = load(&a.manifold)?;
            let label = classify_quadric(m.quadric())?;
            out.line(format!("class: {label}"));
            out.line(format!("normal form: {}", label.normal_form()));
            out.result("label", label.to_string());
            out.result("case", label.case_number());
            out.result("normal_form", label.normal_form());
            if let ClassLabel::Case3 { a_squared } = &label {
                out.result("a_squared", a_squared.to_string());
                out.result("a", label.a_exact().map(|a| a.to_string()));
                out.result("a_decimal", label.a_decimal());
            }
            if m.rank_condition() == 1 {
                let (t, normalized) = normalize_rank1(m.quadric())?;
                out.cert("transform", matrix_json(&t));
                out.cert("normalized_quadric", format_poly(&normalized.to_poly()));
            }
        }
        Command::CrBasis {
            manifold,
            degree,
            dump_matrix,
        } => {
            let m = load(&manifold.manifold)?;
            if m.n() < 2 {
                return Err(Error::RequiresNGe2);
            }
            let space = cr_homogeneous_basis(m.quadric(), *degree);
            out.line(format!("dim CR^{degree}: {}", space.dim()));
            out.line(format!("monomials: {}", space.monomials));
            out.line(format!("rank X_{degree}: {}", space.rank));
            let basis: Vec<String> = space.basis.iter().map(format_poly).collect();
            for b in &basis {
                out.line(format!("  {b}"));
            }
            out.result("degree", *degree);
            out.result("dim", space.dim());
            out.result("monomials", space.monomials);
            out.result("rank", space.rank);
            out.result("basis", basis);
            if let Some(path) = dump_matrix {
                let csv = build_xd(m.quadric(), *degree).to_csv();
                std::fs::write(path, csv)
                    .map_err(|e| Error::MalformedDocument(format!("cannot write {}: {e}", path.display())))?;
                out.cert("matrix_csv", path.display().to_string());
            }
        }
        Command::CheckCr { manifold, f } => {
            let m = load(&manifold.manifold)?;
            let f = parse_poly(f, m.n())?;
            let check = m.is_cr(&f)?;
            out.result("cr", check.holds);
            out.result("vacuous", check.vacuous);
            if check.holds {
                out.line(if check.vacuous {
                    "cr: true (vacuous: there are no nonzero CR fields)"
                } else {
                    "cr: true"
                });
            } else {
                out.negative("NotCR", "cr: false".into());
                let mut defects = Map::new();
                for field in m.cr_fields()? {
                    let image = field.apply(&f)?;
                    if !image.is_zero() {
                        let key = format!("L({},{})", field.k, field.l);
                        out.line(format!("  {key} f = {image}"));
                        defects.insert(key, Value::String(format_poly(&image)));
                    }
                }
                out.cert("defects", Value::Object(defects));
            }
        }
        Command::Extend { manifold, f } => {
            let m = load(&manifold.manifold)?;
            let f = parse_poly(f, m.n())?;
            let q = m.quadric();
            if !m.e().is_zero() {
                out.line("note: extending on the quadric w = Q; use formal-extend for w = Q + E");
            }
            match extend_polynomial(q, &f, false) {
                Ok(r) => {
                    out.line(format!("F = {}", r.f));
                    out.line(format!("residual: {}", r.residual));
                    out.line(format!("unique: {}", r.unique));
                    out.result("F", format_poly(&r.f));
                    out.result("unique", r.unique);
                    out.cert("residual", format_poly(&r.residual));
                }
                Err(e @ Error::NoExtension { .. }) => {
                    out.negative("NoExtension", format!("no extension: {e}"));
                    if q.rank_condition() == 1 {
                        if let Some(c) = counterexample_linear(q)? {
                            out.line(format!("certificate: v = {} (h = {})", format_vector(&c.v), c.h));
                            out.cert("v", vector_json(&c.v));
                            out.cert("h", format_poly(&c.h));
                        }
                    }
                }
                Err(e) => return Err(e),
            }
        }
        Command::FormalExtend { manifold, f, order } => {
            let m = load(&manifold.manifold)?;
            let f = parse_poly(f, m.n())?;
            let r = formal_extend(&m, &f, *order)?;
            let res_order = r.residual_order.map_or("none (residual is 0)".to_string(), |k| k.to_string());
            out.line(format!("F = {}", r.f));
            out.line(format!("order: {order}"));
            out.line(format!("residual order: {res_order}"));
            out.line(format!("certified: {}", r.certified()));
            out.line(format!("unique: {}", r.unique));
            out.result("F", format_poly(&r.f));
            out.result("order", *order);
            out.result("certified", r.certified());
            out.result("unique", r.unique);
            out.result("stages", r.stages.clone());
            out.cert("residual_order", r.residual_order);
            out.cert("residual", format_poly(&r.residual));
        }
        Command::Counterexample(a) => {
            let m = load(&a.manifold)?;
            match counterexample_linear(m.quadric())? {
                Some(c) => {
                    out.line(format!("v = {}", format_vector(&c.v)));
                    out.line(format!("h = {}", c.h));
                    out.result("v", vector_json(&c.v));
                    out.result("h", format_poly(&c.h));
                    out.cert("h_is_cr", true);
                    out.cert("h_extends", false);
                }
                None => out.negative(
                    "RankConditionHolds",
                    format!("rank condition holds (rank {}): no linear counterexample", m.rank_condition()),
                ),
            }
        }
        Command::CrImage(a) => {
            let m = load(&a.manifold)?;
            let form = classify_cr_image(&m)?;
            let (num, text) = match form {
                CRImageForm::Form1 => (1, "w = zb1*z2 + zb1^2 + O(3)"),
                CRImageForm::Form2 => (2, "w = zb1*z2 + O(3)"),
                CRImageForm::Form3 => (3, "w = |z1|^2 + a*zb1^2 + O(3)"),
                CRImageForm::Form4 => (4, "w = zb1^2 + O(3)"),
                CRImageForm::Form5 => (5, "w = O(3)"),
                CRImageForm::NotApplicable => (0, ""),
            };
            if num == 0 {
                out.negative(
                    "NotApplicable",
                    "not applicable: the rank condition holds, so M is not a CR image".into(),
                );
            } else {
                out.line(format!("form: {num} ({text})"));
                out.result("form", num);
                out.result("normal_form", text);
            }
        }
        Command::FlattenCheck { manifold, g, order } => {
            let m = load(&manifold.manifold)?;
            let g = parse_poly(g, m.n())?;
            let report = check_first_integral(&m, &g, *order)?;
            let quadratic = match &report.quadratic {
                QuadraticMatch::Proportional(a) => format!("g_2 = {a} * Q"),
                QuadraticMatch::NotProportional => "g_2 is not a real multiple of Q".into(),
                QuadraticMatch::NormalizationRequired => "Q is not real-valued; normalize first".into(),
            };
            out.line(format!("real-valued: {}", report.real_valued));
            out.line(format!("CR through order {order}: {}", report.cr_through_order));
            out.line(format!("quadratic part: {quadratic}"));
            out.result("real_valued", report.real_valued);
            out.result("cr_through_order", report.cr_through_order);
            out.result("quadratic", quadratic);
            match flatten_from_first_integral(&m, &g, *order) {
                Ok(ext) => {
                    out.line(format!("F = {}", ext.f));
                    out.result("F", format_poly(&ext.f));
                    out.cert("residual_order", ext.residual_order);
                }
                Err(e) if e.is_mathematical() => out.negative(&reason(&e), e.to_string()),
                Err(e) => return Err(e),
            }
        }
        Command::Ode {
            case,
            p,
            q,
            r,
            s,
            t,
            xi,
            max_degree,
        } => {
            let case = match case {
                CaseArg::A => OdeCase::A,
                CaseArg::B => OdeCase::B,
                CaseArg::C => OdeCase::C,
            };
            let pick = |v: &Option<GaussRational>| v.clone().unwrap_or_default();
            let params = OdeParams {
                p: pick(p),
                q: pick(q),
                r: pick(r),
                s: pick(s),
                t: pick(t),
                xi: pick(xi),
            };
            let decision = decide(&params, case)?;
            let oracle = brute_force_ode(&params, case, *max_degree);
            let verdict = |v: Verdict| match v {
                Verdict::NoNonzero => "no nonzero polynomial solution",
                Verdict::ConstantOnly => "constant solutions only",
                Verdict::NonconstantPoly => "nonconstant polynomial solution",
            };
            out.line(format!(
                "equation: ({}) zeta = ({}) zeta'",
                params.lhs_coefficient(),
                params.rhs_coefficient(case)
            ));
            out.line(format!("verdict: {}", verdict(decision.verdict)));
            out.result("case", case.label());
            out.result("verdict", verdict(decision.verdict));
            if let Some(w) = &decision.witness {
                out.line(format!("witness: {w}"));
                out.result("witness", w.to_string());
                out.cert("witness_satisfies", params.satisfied_by(case, w));
            }
            let agrees = oracle.verdict == decision.verdict;
            out.line(format!("brute force (degree <= {max_degree}): {}", verdict(oracle.verdict)));
            out.cert("brute_force_verdict", verdict(oracle.verdict));
            out.cert("brute_force_agrees", agrees);
        }
        Command::Verify {
            suite,
            dmax,
            samples,
            seed,
        } => {
            let suites: Vec<Suite> = match Suite::from_name(suite) {
                Some(s) => vec![s],
                None => Suite::ALL.to_vec(),
            };
            let cfg = SuiteConfig {
                dmax: *dmax,
                samples: *samples,
                seed: *seed,
            };
            let mut reports = Vec::new();
            let mut all = true;
            for s in suites {
                let rep = run_suite(s, &cfg);
                all &= rep.passed;
                out.lines.extend(rep.to_string().lines().map(str::to_string));
                reports.push(json!({"suite": s.name(), "passed": rep.passed, "lines": rep.lines}));
            }
            out.result("passed", all);
            out.result("suites", reports);
            out.cert("seed", *seed);
            if !all {
                out.status = Status::Negative;
                out.result("reason", "SuiteFailed");
            }
        }
    }
    Ok(out)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let name = command_name(&cli.command);
    let out = run(&cli.command).unwrap_or_else(|e| Output::from_error(&e));
    if cli.json {
        let mut result = out.result;
        result.insert("status".into(), out.status.name().into());
        let doc = json!({
            "command": name,
            "result": result,
            "certificate": out.certificate,
        });
        println!("{}", serde_json::to_string_pretty(&doc).expect("serializable"));
    } else if out.status == Status::InputError || out.status == Status::Internal {
        for l in &out.lines {
            eprintln!("error: {l}");
        }
    } else {
        for l in &out.lines {
            println!("{l}");
        }
    }
    ExitCode::from(out.status.code())
}
