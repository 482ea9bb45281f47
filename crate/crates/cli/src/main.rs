use std::io::{self, IsTerminal, Write};
use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Parser, Subcommand, ValueEnum};
use starprod::algebra::{Metric, Multivector, PhasePoly, Rational};
use starprod::calculus::{projector_split, star_eigencheck, star_exp_truncated};
use starprod::dirac::{combined_projectors, dirac_hamiltonian, energy_projectors, spin_operator, DiracSystem, SpinAxis};
use starprod::lorentz::{
    active_algebra_check, active_transform, boost_parameters, lorentz_matrix, passive_algebra_check,
    poincare_check,
};
use starprod::mechanics::{classical_limit_check, hamilton_rhs, integrate, poisson_bracket, CovariantHamiltonian};
use starprod::report::{Check, Report};
use starprod::star::{ProductKind, StarKind};
use starprod_cli::eval::{eval, EvalError};
use starprod_cli::json::to_json_value;
use starprod_cli::parse::parse;
use starprod_cli::repl::Session;
use starprod_cli::suites::{reports_json, run_suite, Suite};
use starprod_cli::{Format, SessionConfig};

#[derive(Parser)]
#[command(name = "starprod", version, about = "Exact star products, Wigner functions and proper-time mechanics")]
struct Cli {
    #[arg(long, global = true, value_enum, default_value = "text")]
    format: Format,
    /// standard (+,-,-,-) or nonstandard (-,+,+,+)
    #[arg(long, global = true, value_parser = parse_metric)]
    metric: Option<Metric>,
    /// Truncation order of star exponentials
    #[arg(long, global = true, default_value_t = 8)]
    order: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate an expression, or every line of a script
    Eval {
        #[arg(allow_hyphen_values = true)]
        expr: Option<String>,
        #[arg(long, conflicts_with = "expr")]
        file: Option<PathBuf>,
        /// Default product for comm/acomm/exp/split/eigencheck
        #[arg(long, value_parser = parse_kind)]
        product: Option<StarKind>,
    },
    /// Interactive session
    Repl,
    /// Run a verification battery
    Verify {
        #[arg(value_enum)]
        suite: Suite,
    },
    /// Coefficients of the truncated star exponential Exp(Ks)
    Exp {
        #[arg(allow_hyphen_values = true)]
        expr: String,
        #[arg(long, value_parser = parse_kind, default_value = "M4")]
        kind: StarKind,
    },
    /// Projector split of an element with constant scalar star square
    Split {
        #[arg(allow_hyphen_values = true)]
        expr: String,
        #[arg(long, value_parser = parse_kind, default_value = "M4")]
        kind: StarKind,
    },
    /// Check H * W = lambda W; exit status 1 when it fails
    Eigencheck {
        #[arg(allow_hyphen_values = true)]
        h: String,
        #[arg(allow_hyphen_values = true)]
        w: String,
        #[arg(allow_hyphen_values = true)]
        lambda: String,
        #[arg(long, value_parser = parse_kind, default_value = "M4")]
        kind: StarKind,
    },
    /// Dirac Hamiltonian and its Wigner functions at a rational point
    Dirac {
        #[arg(value_enum, default_value = "show")]
        action: DiracAction,
        #[arg(long, value_parser = parse_rational, default_value = "3")]
        mass: Rational,
        /// Contravariant momentum p1,p2,p3
        #[arg(long, default_value = "0,0,4")]
        momentum: String,
        /// Unit spin axis orthogonal to the momentum
        #[arg(long, default_value = "1,0,0")]
        axis: String,
    },
    /// Lorentz algebra checks and finite transformations
    Lorentz {
        #[command(subcommand)]
        action: LorentzAction,
    },
    /// Proper-time mechanics
    Mech {
        #[command(subcommand)]
        action: MechAction,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum DiracAction {
    Show,
    Verify,
}

#[derive(Subcommand)]
enum LorentzAction {
    PassiveCheck,
    ActiveCheck,
    PoincareCheck,
    /// Apply a boost of the given rapidity to a coefficient vector
    Boost {
        #[arg(long, allow_hyphen_values = true)]
        rapidity: f64,
        #[arg(long, default_value_t = 1)]
        axis: usize,
        #[arg(long, default_value = "1,0,0,0", allow_hyphen_values = true)]
        vector: String,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Field {
    Free,
    HomogeneousB,
}

#[derive(clap::Args)]
struct FieldArgs {
    #[arg(long, value_enum, default_value = "free")]
    field: Field,
    #[arg(long, value_parser = parse_rational, default_value = "1", allow_hyphen_values = true)]
    b3: Rational,
    #[arg(long, value_parser = parse_rational, default_value = "1", allow_hyphen_values = true)]
    e: Rational,
    #[arg(long, value_parser = parse_rational, default_value = "1")]
    m: Rational,
}

#[derive(Subcommand)]
enum MechAction {
    /// Four-space Poisson bracket {f, g}
    Bracket {
        #[arg(allow_hyphen_values = true)]
        f: String,
        #[arg(allow_hyphen_values = true)]
        g: String,
    },
    /// Hamilton equations of the covariant Hamiltonian
    Hamilton {
        #[command(flatten)]
        field: FieldArgs,
    },
    /// (1/ih)[f, g]*M at hb = 0 against {f, g}
    LimitCheck {
        #[arg(allow_hyphen_values = true)]
        f: String,
        #[arg(allow_hyphen_values = true)]
        g: String,
    },
    /// RK4 trajectory as CSV
    Simulate {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long, default_value_t = 1e-3)]
        step: f64,
        #[arg(long, default_value_t = 10.0)]
        smax: f64,
        #[arg(long, default_value = "0,0,0,0", allow_hyphen_values = true)]
        q0: String,
        /// Canonical momenta p_0..p_3
        #[arg(long, default_value = "-1.25,0.75,0,0", allow_hyphen_values = true)]
        p0: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn parse_metric(s: &str) -> Result<Metric, String> {
    Metric::from_str(s).map_err(|e| e.to_string())
}

fn parse_kind(s: &str) -> Result<StarKind, String> {
    StarKind::from_str(s).map_err(|e| e.to_string())
}

fn parse_rational(s: &str) -> Result<Rational, String> {
    Rational::from_str(s.trim()).map_err(|_| format!("'{s}' is not a rational number"))
}

/// A failure with its exit code.
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Self { code: 2, message: message.into() }
    }

    fn eval(message: impl Into<String>) -> Self {
        Self { code: 3, message: message.into() }
    }
}

impl From<starprod::error::Error> for Failure {
    fn from(e: starprod::error::Error) -> Self {
        Failure::eval(e.to_string())
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::eval(e.to_string())
    }
}

fn rationals<const N: usize>(s: &str) -> Result<[Rational; N], Failure> {
    let parts: Vec<_> = s.split(',').map(parse_rational).collect::<Result<_, _>>().map_err(Failure::usage)?;
    parts
        .try_into()
        .map_err(|_| Failure::usage(format!("expected {N} comma-separated numbers, got '{s}'")))
}

fn floats<const N: usize>(s: &str) -> Result<[f64; N], Failure> {
    let parts: Vec<f64> = s
        .split(',')
        .map(|x| x.trim().parse::<f64>())
        .collect::<Result<_, _>>()
        .map_err(|_| Failure::usage(format!("'{s}' is not a list of numbers")))?;
    parts
        .try_into()
        .map_err(|_| Failure::usage(format!("expected {N} comma-separated numbers, got '{s}'")))
}

fn multivector(src: &str, cfg: &SessionConfig) -> Result<Multivector, Failure> {
    let e = parse(src).map_err(|e| Failure::usage(e.to_string()))?;
    match eval(&e, cfg) {
        Ok(v) => v
            .into_multivector()
            .ok_or_else(|| Failure::eval(format!("'{src}' does not evaluate to a multivector"))),
        Err(EvalError { pos, message }) => Err(Failure::eval(format!("evaluation error at {pos}: {message}"))),
    }
}

fn scalar_poly(src: &str, cfg: &SessionConfig) -> Result<PhasePoly, Failure> {
    let m = multivector(src, cfg)?;
    if !m.is_zero() && !m.is_grade(0) {
        return Err(Failure::eval(format!("'{src}' must be grade 0")));
    }
    Ok(m.scalar_part())
}

fn emit(format: Format, text: String, json: serde_json::Value) {
    match format {
        Format::Text => println!("{text}"),
        Format::Json => println!("{json}"),
    }
}

fn emit_reports(format: Format, reports: &[Report]) -> u8 {
    match format {
        Format::Text => {
            let (mut total, mut failed) = (0, 0);
            for r in reports {
                println!("{r}");
                total += r.len();
                failed += r.failures().count();
            }
            println!("TOTAL {total} checks, {failed} failed");
        }
        Format::Json => println!("{}", reports_json(reports)),
    }
    if reports.iter().all(Report::passed) {
        0
    } else {
        1
    }
}

fn hamiltonian(args: &FieldArgs, metric: Metric) -> Result<CovariantHamiltonian, Failure> {
    Ok(match args.field {
        Field::Free => CovariantHamiltonian::free(args.m.clone(), metric)?,
        Field::HomogeneousB => CovariantHamiltonian::homogeneous_b(args.b3.clone(), args.e.clone(), args.m.clone(), metric)?,
    })
}

fn run(cli: Cli) -> Result<u8, Failure> {
    let metric = cli.metric.unwrap_or_default();
    let cfg = SessionConfig { metric, order: cli.order, format: cli.format, ..Default::default() };
    let format = cli.format;
    match cli.command {
        Command::Eval { expr, file, product } => {
            let cfg = SessionConfig { product: product.unwrap_or(cfg.product), ..cfg };
            let mut session = Session::new(cfg);
            let text = match (expr, file) {
                (Some(e), None) => e,
                (None, Some(path)) => std::fs::read_to_string(&path)
                    .map_err(|e| Failure::usage(format!("{}: {e}", path.display())))?,
                _ => return Err(Failure::usage("give an expression or --file")),
            };
            let mut out = io::stdout().lock();
            session.run_script(&text, &mut out).map_err(|e| Failure { code: e.exit_code() as u8, message: e.to_string() })?;
            Ok(0)
        }
        Command::Repl => {
            let mut session = Session::new(cfg);
            let stdin = io::stdin();
            let prompt = stdin.is_terminal();
            session.repl(stdin.lock(), &mut io::stdout().lock(), &mut io::stderr().lock(), prompt)?;
            Ok(0)
        }
        Command::Verify { suite } => Ok(emit_reports(format, &run_suite(suite))),
        Command::Exp { expr, kind } => {
            let k = multivector(&expr, &cfg)?;
            let exp = star_exp_truncated(&k, cfg.order, ProductKind::new(kind, metric));
            let text = exp
                .coefficients
                .iter()
                .enumerate()
                .map(|(n, c)| format!("s^{n}: {c}"))
                .collect::<Vec<_>>()
                .join("\n");
            let json = serde_json::json!({
                "order": cfg.order,
                "coefficients": exp.coefficients.iter().map(to_json_value).collect::<Vec<_>>(),
            });
            emit(format, text, json);
            Ok(0)
        }
        Command::Split { expr, kind } => {
            let a = multivector(&expr, &cfg)?;
            let split = projector_split(&a, ProductKind::new(kind, metric))?;
            let v = starprod_cli::Value::Split(split);
            emit(format, v.to_string(), v.to_json());
            Ok(0)
        }
        Command::Eigencheck { h, w, lambda, kind } => {
            let (h, w) = (multivector(&h, &cfg)?, multivector(&w, &cfg)?);
            let l = multivector(&lambda, &cfg)?
                .as_scalar_constant()
                .ok_or_else(|| Failure::eval("lambda must be a constant scalar"))?;
            let ok = star_eigencheck(&h, &w, &l, ProductKind::new(kind, metric));
            emit(format, ok.to_string(), serde_json::json!({ "holds": ok }));
            Ok(if ok { 0 } else { 1 })
        }
        Command::Dirac { action, mass, momentum, axis } => {
            let metric = cli.metric.unwrap_or(Metric::Standard);
            let sys = DiracSystem::new(mass, rationals::<3>(&momentum)?, metric)?;
            let axis = SpinAxis::for_system(rationals::<3>(&axis)?, &sys)?;
            let combined = combined_projectors(&sys, &axis)?;
            match action {
                DiracAction::Show => {
                    let h = dirac_hamiltonian(&sys);
                    let s = spin_operator(&axis, metric);
                    let energy = energy_projectors(&sys)?;
                    let mut lines = vec![
                        format!("H_D = {h}"),
                        format!("E = {}", sys.energy),
                        format!("S_u = {s}"),
                        format!("pi_+E = {}", energy.pi_plus),
                        format!("pi_-E = {}", energy.pi_minus),
                    ];
                    let mut entries = Vec::new();
                    for (es, ss, p) in &combined.entries {
                        let name = format!("pi_({}E,{}1/2)", sign(*es), sign(*ss));
                        lines.push(format!("{name} = {p}"));
                        entries.push(serde_json::json!({ "energy_sign": es, "spin_sign": ss, "projector": to_json_value(p) }));
                    }
                    let json = serde_json::json!({
                        "hamiltonian": to_json_value(&h),
                        "energy": sys.energy.to_string(),
                        "spin": to_json_value(&s),
                        "projectors": entries,
                    });
                    emit(format, lines.join("\n"), json);
                    Ok(0)
                }
                DiracAction::Verify => {
                    let mut r = Report::new(format!("Dirac point m={} E={}", sys.mass, sys.energy));
                    r.push(Check::exact("sum pi_(+-E,+-1/2) = 1", "", combined.completeness_residual()));
                    for res in combined.product_residuals() {
                        r.push(Check::exact("pi_a *MC pi_b = delta_ab pi_a", "", res));
                    }
                    for res in combined.eigen_residuals() {
                        r.push(Check::exact("H_D, S_u eigenvalue equations", "", res));
                    }
                    Ok(emit_reports(format, &[r]))
                }
            }
        }
        Command::Lorentz { action } => match action {
            LorentzAction::PassiveCheck => Ok(emit_reports(format, &metrics(cli.metric).map(passive_algebra_check))),
            LorentzAction::ActiveCheck => Ok(emit_reports(format, &metrics(cli.metric).map(active_algebra_check))),
            LorentzAction::PoincareCheck => Ok(emit_reports(format, &metrics(cli.metric).map(poincare_check))),
            LorentzAction::Boost { rapidity, axis, vector } => {
                if !(1..=3).contains(&axis) {
                    return Err(Failure::usage(format!("axis must be 1, 2 or 3, got {axis}")));
                }
                let x = floats::<4>(&vector)?;
                let alpha = boost_parameters(axis, rapidity, metric);
                let out = active_transform(x, &alpha, metric)?;
                let l = lorentz_matrix(&alpha, metric)?;
                let rows: Vec<Vec<f64>> = (0..4).map(|i| (0..4).map(|j| l[(i, j)]).collect()).collect();
                let text = format!(
                    "x' = [{}]\nLambda = {}",
                    out.iter().map(|v| format!("{v:.15}")).collect::<Vec<_>>().join(", "),
                    rows.iter()
                        .map(|r| format!("[{}]", r.iter().map(|v| format!("{v:.15}")).collect::<Vec<_>>().join(", ")))
                        .collect::<Vec<_>>()
                        .join(" ")
                );
                emit(format, text, serde_json::json!({ "x": out, "lambda": rows }));
                Ok(0)
            }
        },
        Command::Mech { action } => match action {
            MechAction::Bracket { f, g } => {
                let b = poisson_bracket(&scalar_poly(&f, &cfg)?, &scalar_poly(&g, &cfg)?);
                let m = Multivector::from_poly(b);
                emit(format, m.to_string(), to_json_value(&m));
                Ok(0)
            }
            MechAction::Hamilton { field } => {
                let h = hamiltonian(&field, metric)?;
                let rhs = hamilton_rhs(&h)?;
                let names: Vec<String> = (0..4)
                    .map(|mu| format!("dq{mu}/ds"))
                    .chain((0..4).map(|mu| format!("dp{mu}/ds")))
                    .collect();
                let text = std::iter::once(format!("K = {}", h.k))
                    .chain(names.iter().zip(&rhs).map(|(n, r)| format!("{n} = {r}")))
                    .collect::<Vec<_>>()
                    .join("\n");
                let json = serde_json::json!({
                    "K": to_json_value(&h.k),
                    "rhs": rhs.iter().map(|r| to_json_value(&Multivector::from_poly(r.clone()))).collect::<Vec<_>>(),
                });
                emit(format, text, json);
                Ok(0)
            }
            MechAction::LimitCheck { f, g } => {
                let ok = classical_limit_check(&scalar_poly(&f, &cfg)?, &scalar_poly(&g, &cfg)?)?;
                emit(format, ok.to_string(), serde_json::json!({ "holds": ok }));
                Ok(if ok { 0 } else { 1 })
            }
            MechAction::Simulate { field, step, smax, q0, p0, out } => {
                let h = hamiltonian(&field, metric)?;
                let t = integrate(&h, floats::<4>(&q0)?, floats::<4>(&p0)?, smax, step)?;
                match out {
                    Some(path) => {
                        let file = std::fs::File::create(&path)?;
                        t.write_csv(io::BufWriter::new(file))?;
                        let summary = format!(
                            "wrote {} samples to {}; max |pi2 drift| = {:.3e}",
                            t.samples.len(),
                            path.display(),
                            t.max_abs_drift()
                        );
                        emit(
                            format,
                            summary,
                            serde_json::json!({ "samples": t.samples.len(), "max_abs_drift": t.max_abs_drift() }),
                        );
                    }
                    None => t.write_csv(io::stdout().lock())?,
                }
                Ok(0)
            }
        },
    }
}

fn sign(s: i8) -> char {
    if s > 0 {
        '+'
    } else {
        '-'
    }
}

fn metrics(choice: Option<Metric>) -> Vec<Metric> {
    match choice {
        Some(m) => vec![m],
        None => vec![Metric::Nonstandard, Metric::Standard],
    }
}

trait MapReports {
    fn map(self, f: fn(Metric) -> Report) -> Vec<Report>;
}

impl MapReports for Vec<Metric> {
    fn map(self, f: fn(Metric) -> Report) -> Vec<Report> {
        self.into_iter().map(f).collect()
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(Failure { code, message }) => {
            let _ = writeln!(io::stderr(), "error: {message}");
            ExitCode::from(code)
        }
    }
}
