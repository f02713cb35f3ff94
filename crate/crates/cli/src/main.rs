use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use nokcert::bounds::{
    adjunction_eps_cap, debarre_min_mult, remark_ts_cap, seshadri_width_cap,
};
use nokcert::certificates::{
    builtin_scenario, parse_param_expr, print_expr, run_builtin_suite, run_scenarios, Scenario,
    SuiteOptions, VerificationReport, DEFAULT_SEED,
};
use nokcert::slice_model::{surface_collapse_area, vcurve_profile, SurfaceEntry};
use nokcert::{Polynomial, Rational};

/// Exact certificates for slice-volume bounds of infinitesimal
/// Newton-Okounkov bodies.
#[derive(Parser)]
#[command(name = "nokcert", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Verify certificates and write a JSON report.
    Verify(VerifyArgs),
    /// Sample a scenario's slice-area profile to CSV.
    Profile(ProfileArgs),
    /// Evaluate the bound calculators.
    #[command(subcommand)]
    Bounds(BoundsCommand),
}

fn rational(s: &str) -> Result<Rational, String> {
    s.trim().parse::<Rational>().map_err(|e| format!("{e} (rationals are written p/q)"))
}

#[derive(Args)]
#[command(group(clap::ArgGroup::new("source").required(true).args(["all_builtin", "scenario"])))]
struct VerifyArgs {
    /// Run the built-in certificate suite.
    #[arg(long)]
    all_builtin: bool,
    /// Verify a scenario document.
    #[arg(long, value_name = "FILE")]
    scenario: Option<PathBuf>,
    /// Write the report here instead of standard output.
    #[arg(long, value_name = "PATH")]
    report: Option<PathBuf>,
    /// Width of the sup enclosure, which bounds how far the reported margin
    /// can sit below the true margin.
    #[arg(long, value_name = "RATIONAL", value_parser = rational)]
    margin_tol: Option<Rational>,
    /// Include the optional stretch certificate in the built-in suite.
    #[arg(long, requires = "all_builtin")]
    with_stretch: bool,
}

#[derive(Args)]
struct ProfileArgs {
    #[arg(long, value_name = "FILE", conflicts_with = "builtin", required_unless_present = "builtin")]
    scenario: Option<PathBuf>,
    /// Use a built-in scenario by name.
    #[arg(long, value_name = "NAME")]
    builtin: Option<String>,
    #[arg(long, value_name = "RATIONAL", value_parser = rational)]
    param_value: Rational,
    #[arg(long, default_value_t = 300)]
    samples: usize,
    /// CSV destination; standard output when absent.
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum BoundsCommand {
    /// Smallest curve multiplicity allowed by Debarre's degree bound.
    Debarre {
        #[arg(long, value_parser = rational)]
        b3: Rational,
        #[arg(long, value_parser = rational)]
        eps: Rational,
    },
    /// Seshadri cap t(1 - d) + 3d from a curve-degree floor d.
    AdjunctionCap {
        #[arg(long, value_parser = rational)]
        t: Rational,
        #[arg(long, value_parser = rational)]
        deg: Rational,
    },
    /// Width cap from the collapse of singular surfaces.
    MuCap {
        /// Surfaces as "m:t1:m0;..." with t1, m0 expressions in eps.
        #[arg(long)]
        surfaces: String,
        #[arg(long, value_parser = rational)]
        eps: Rational,
    },
    /// Breakpoint and pieces of the V_C profile of a multiplicity-q curve.
    VcProfile {
        #[arg(long)]
        q: u32,
        #[arg(long, value_parser = rational)]
        tc: Rational,
    },
    /// Width cap q eps/(q - 1) and the abelian-surface entry cap.
    SeshadriWidth {
        #[arg(long)]
        q: u32,
        #[arg(long, value_parser = rational)]
        eps: Rational,
    },
}

/// Invalid input; exit code 2.
struct Usage(String);

impl<E: std::fmt::Display> From<E> for Usage {
    fn from(e: E) -> Self {
        Usage(e.to_string())
    }
}

fn seed() -> Result<u64, Usage> {
    match std::env::var("NOK_SEED") {
        Ok(s) => s.trim().parse().map_err(|_| Usage(format!("NOK_SEED must be an unsigned integer, got '{s}'"))),
        Err(_) => Ok(DEFAULT_SEED),
    }
}

fn timestamp() -> Option<String> {
    std::env::var("SOURCE_DATE_EPOCH").ok().filter(|s| !s.is_empty())
}

fn load(path: &Path) -> Result<Scenario, Usage> {
    let text = fs::read_to_string(path).map_err(|e| Usage(format!("{}: {e}", path.display())))?;
    Scenario::from_json(&text).map_err(|e| Usage(format!("{}: {e}", path.display())))
}

fn write_out(path: Option<&Path>, text: &str) -> Result<(), Usage> {
    match path {
        Some(p) => fs::write(p, text).map_err(|e| Usage(format!("{}: {e}", p.display()))),
        None => std::io::stdout().write_all(text.as_bytes()).map_err(Usage::from),
    }
}

fn cmd_verify(args: VerifyArgs) -> Result<ExitCode, Usage> {
    let mut opts = SuiteOptions { seed: seed()?, timestamp: timestamp(), ..Default::default() };
    if let Some(tol) = args.margin_tol {
        if !tol.is_positive() {
            return Err(Usage("--margin-tol must be positive".into()));
        }
        opts.width_tol = tol;
    }
    let report: VerificationReport = match &args.scenario {
        Some(path) => run_scenarios(&[load(path)?], &opts),
        None => run_builtin_suite(&opts, args.with_stretch),
    };
    match &args.report {
        Some(path) => {
            write_out(Some(path), &report.to_json())?;
            for r in &report.results {
                let mark = if r.holds { "PASS" } else { "FAIL" };
                println!("{mark} {} margin >= {} ({})", r.name, r.margin_lower_bound, r.margin_decimal);
            }
            for s in &report.structural {
                let mark = if s.passed { "PASS" } else { "FAIL" };
                println!("{mark} {} ({} cases)", s.name, s.cases);
            }
            println!("status: {}", report.status);
        }
        None => write_out(None, &report.to_json())?,
    }
    Ok(if report.passed() { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

fn cmd_profile(args: ProfileArgs) -> Result<ExitCode, Usage> {
    let scenario = match (&args.scenario, &args.builtin) {
        (Some(path), _) => load(path)?,
        (None, Some(name)) => builtin_scenario(name)?,
        (None, None) => unreachable!("clap requires a source"),
    };
    let s = &args.param_value;
    let inside = scenario.params.contains(s)
        && !(scenario.ends.open_lo && s == scenario.params.lo())
        && !(scenario.ends.open_hi && s == scenario.params.hi());
    if !inside {
        return Err(Usage(format!(
            "{} = {s} is outside {}",
            scenario.param_name,
            scenario.ends.render(&scenario.params)
        )));
    }
    if args.samples == 0 {
        return Err(Usage("--samples must be at least 1".into()));
    }
    let branch = scenario
        .branches
        .iter()
        .find(|b| b.params().contains(s))
        .expect("branches partition the range");
    let mu = branch.profile.mu_cap().eval(s);
    let mut csv = String::from("t,area\n");
    for i in 0..=args.samples {
        let t = &mu * &Rational::frac(i as i64, args.samples as i64);
        let area = branch.profile.area_at(s, &t).unwrap_or_else(Rational::zero);
        csv.push_str(&format!("{},{}\n", t.to_decimal(12), area.to_decimal(12)));
    }
    write_out(args.out.as_deref(), &csv)?;
    Ok(ExitCode::SUCCESS)
}

fn show(label: &str, value: &Rational) {
    println!("{label} = {value} ({})", value.to_decimal(12));
}

fn parse_surfaces(spec: &str) -> Result<Vec<SurfaceEntry>, Usage> {
    spec.split(';')
        .filter(|part| !part.trim().is_empty())
        .map(|part| {
            let fields: Vec<&str> = part.split(':').collect();
            let [m, t1, m0] = fields[..] else {
                return Err(Usage(format!("surface '{part}' is not of the form m:t1:m0")));
            };
            let m = m.trim().parse().map_err(|_| Usage(format!("multiplicity '{m}' is not a positive integer")))?;
            Ok(SurfaceEntry { m, t1: parse_param_expr(t1, "eps")?, m0: parse_param_expr(m0, "eps")? })
        })
        .collect()
}

fn cmd_bounds(cmd: BoundsCommand) -> Result<ExitCode, Usage> {
    match cmd {
        BoundsCommand::Debarre { b3, eps } => {
            let q = debarre_min_mult(&b3, &eps)?;
            println!("q = {q}");
        }
        BoundsCommand::AdjunctionCap { t, deg } => {
            let cap = adjunction_eps_cap(&Polynomial::x(), &deg)?;
            println!("eps < {}", cap.display_in("t"));
            show("eps cap", &cap.eval(&t));
        }
        BoundsCommand::MuCap { surfaces, eps } => {
            let surfaces = parse_surfaces(&surfaces)?;
            let collapse = surface_collapse_area(&surfaces)?;
            let time = collapse.collapse_time()?;
            println!("mu <= {}", time.display_in("eps"));
            show("mu cap", &time.eval(&eps));
        }
        BoundsCommand::VcProfile { q, tc } => {
            let pieces = vcurve_profile(&Polynomial::constant(tc), q)?;
            let s = Rational::zero();
            show("breakpoint", &pieces.breakpoint.eval(&s));
            println!("rising area = {}", print_expr(&pieces.rising, "eps"));
            show("plateau area", &pieces.plateau.eval(&s, &s));
        }
        BoundsCommand::SeshadriWidth { q, eps } => {
            show("mu cap", &seshadri_width_cap(q, &eps)?);
            show("abelian surface entry cap", &remark_ts_cap(q, &eps)?);
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Verify(args) => cmd_verify(args),
        Command::Profile(args) => cmd_profile(args),
        Command::Bounds(cmd) => cmd_bounds(cmd),
    };
    outcome.unwrap_or_else(|Usage(msg)| {
        eprintln!("error: {msg}");
        ExitCode::from(2)
    })
}
