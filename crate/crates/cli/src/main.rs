//! `spfide solve` and `spfide study`.
//!
//! Exit status: 0 on success, 1 when a solve or study cell fails, 2 on bad
//! flags or configuration.

mod config;
mod report;
mod values;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use spfide::mesh::TransitionBranch;
use spfide::problems::{builtin, validate_lambda_bound, ProblemSpec, BUILTIN_NAMES};
use spfide::{run_study, solve_with_tol, ExactSolution, SolverChoice, StudyOptions, DEFAULT_TOL};

use config::{Format, StudyConfig};
use values::{epsilon_label, parse_epsilon, parse_n, parse_solver, parse_tol};

#[derive(Parser)]
#[command(name = "spfide", version, about = "Fitted Shishkin-mesh solver for singularly perturbed Fredholm problems")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve one problem at one (epsilon, N) and write the nodal solution.
    Solve(SolveArgs),
    /// Run a convergence study over an epsilon x N grid.
    Study(StudyArgs),
}

#[derive(Args)]
struct SolveArgs {
    #[arg(long, default_value = "example1")]
    problem: String,
    /// Perturbation parameter, decimal or 2^-k.
    #[arg(long, value_parser = parse_epsilon)]
    epsilon: f64,
    /// Number of mesh cells (even, >= 4).
    #[arg(long, value_parser = parse_n)]
    n: usize,
    /// lu, fixed-point or both.
    #[arg(long, default_value = "lu", value_parser = parse_solver)]
    solver: SolverChoice,
    /// Fixed-point stopping tolerance.
    #[arg(long, default_value_t = DEFAULT_TOL, value_parser = parse_tol)]
    tol: f64,
    /// Solution CSV path.
    #[arg(long, default_value = "solution.csv")]
    out: PathBuf,
    /// Replace the problem's coupling constant.
    #[arg(long, allow_hyphen_values = true)]
    lambda: Option<f64>,
}

#[derive(Args)]
struct StudyArgs {
    /// Flat key=value file; flags given alongside it take precedence.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    problem: Option<String>,
    /// Comma-separated epsilon values, decimal or 2^-k.
    #[arg(long)]
    epsilon_list: Option<String>,
    /// Comma-separated ascending even N values.
    #[arg(long)]
    n_list: Option<String>,
    #[arg(long)]
    solver: Option<String>,
    #[arg(long)]
    tol: Option<String>,
    #[arg(long)]
    output_dir: Option<PathBuf>,
    /// Comma-separated subset of csv, markdown.
    #[arg(long)]
    formats: Option<String>,
    /// Replace the problem's coupling constant.
    #[arg(long, allow_hyphen_values = true)]
    lambda: Option<f64>,
}

#[derive(Debug, thiserror::Error)]
enum Failure {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Run(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Usage(_) => 2,
            Failure::Run(_) => 1,
        }
    }
}

/// Built-in problem by name. Its exact solution is dropped when `lambda`
/// overrides the coupling, since it no longer applies.
fn lookup(name: &str, lambda: Option<f64>) -> Result<(ProblemSpec, Option<ExactSolution>), Failure> {
    let (problem, exact) = builtin(name).ok_or_else(|| {
        Failure::Usage(format!("unknown problem {name:?}; available: {}", BUILTIN_NAMES.join(", ")))
    })?;
    match lambda {
        Some(l) if !l.is_finite() => Err(Failure::Usage(format!("--lambda must be finite, got {l}"))),
        Some(l) if l != problem.lambda() => Ok((problem.with_lambda(l), None)),
        _ => Ok((problem, Some(exact))),
    }
}

fn warn_lambda(problem: &ProblemSpec) {
    match validate_lambda_bound(problem, 1000) {
        Ok(r) if !r.ok => eprintln!(
            "warning: |lambda| = {} exceeds the contraction bound {:.6} (K = {:.6}); fixed-point may diverge",
            problem.lambda().abs(),
            r.bound,
            r.k_bar
        ),
        Ok(_) => {}
        Err(e) => eprintln!("warning: could not check the lambda bound: {e}"),
    }
}

fn write_file(path: &Path, contents: &str) -> Result<(), Failure> {
    std::fs::write(path, contents).map_err(|e| Failure::Run(format!("cannot write {}: {e}", path.display())))
}

fn branch_name(b: TransitionBranch) -> &'static str {
    match b {
        TransitionBranch::Half => "T/2 (uniform mesh)",
        TransitionBranch::Layer => "eps ln N / a_bar",
    }
}

fn cmd_solve(args: SolveArgs) -> Result<(), Failure> {
    let (problem, exact) = lookup(&args.problem, args.lambda)?;
    warn_lambda(&problem);
    let run = solve_with_tol(&problem, args.epsilon, args.n, args.solver, args.tol)
        .map_err(|e| Failure::Run(format!("solve failed: {e}")))?;

    println!("problem      {}", args.problem);
    println!("epsilon      {} ({:e})", epsilon_label(args.epsilon), args.epsilon);
    println!("N            {}", args.n);
    println!("rho          {:e} [{}]", run.mesh.rho(), branch_name(run.mesh.branch()));
    if let Some(exact) = &exact {
        let max_error = run
            .mesh
            .nodes()
            .iter()
            .zip(&run.solution.values)
            .map(|(&x, y)| (y - exact.eval(x, args.epsilon)).abs())
            .fold(0.0f64, f64::max);
        println!("max error    {max_error:.4e}");
    } else {
        println!("max error    n/a (no exact solution)");
    }
    println!("solver       {}", run.solution.solver);
    if let Some(lu) = &run.solution.lu {
        println!(
            "lu           reciprocal pivot growth {:.3e}, relative residual {:.3e}{}",
            lu.reciprocal_pivot_growth,
            lu.relative_residual,
            if lu.ill_conditioned { " (above 1e-10: ill-conditioning warning)" } else { "" }
        );
    }
    let fp = run.cross_check.as_ref().or(Some(&run.solution).filter(|s| s.lu.is_none()));
    if let Some(fp) = fp {
        println!("fixed point  {} iterations", fp.iterations);
    }
    if let Some(gap) = run.cross_check_gap() {
        println!("cross-check  max |y_lu - y_fp| = {gap:.3e}");
    }
    let bad = run.coeffs.nonpositive_theta();
    if bad.is_empty() {
        println!("theta        positive at all interior nodes");
    } else {
        println!("theta        non-positive at nodes {bad:?}");
    }

    write_file(&args.out, &report::solution_csv(&run, exact.as_ref(), args.epsilon))?;
    println!("wrote        {} ({} rows)", args.out.display(), args.n + 1);
    Ok(())
}

fn study_config(args: StudyArgs) -> Result<StudyConfig, Failure> {
    let mut cfg = match &args.config {
        Some(path) => StudyConfig::from_file(path).map_err(Failure::Usage)?,
        None => StudyConfig::default(),
    };
    let overrides = [
        ("problem", args.problem),
        ("epsilon_list", args.epsilon_list),
        ("n_list", args.n_list),
        ("solver", args.solver),
        ("tol", args.tol),
        ("formats", args.formats),
    ];
    for (key, value) in overrides {
        if let Some(v) = value {
            cfg.set(key, &v).map_err(|e| Failure::Usage(format!("--{}: {e}", key.replace('_', "-"))))?;
        }
    }
    if let Some(dir) = args.output_dir {
        cfg.output_dir = dir;
    }
    cfg.validate().map_err(Failure::Usage)?;
    Ok(cfg)
}

fn cmd_study(args: StudyArgs) -> Result<(), Failure> {
    let lambda = args.lambda;
    let cfg = study_config(args)?;
    let (problem, exact) = lookup(&cfg.problem, lambda)?;
    warn_lambda(&problem);
    let opts = StudyOptions { solver: cfg.solver, tol: cfg.tol };
    let report = run_study(&problem, exact.as_ref(), &cfg.epsilon_list, &cfg.n_list, opts)
        .map_err(|e| Failure::Run(e.to_string()))?;

    std::fs::create_dir_all(&cfg.output_dir)
        .map_err(|e| Failure::Run(format!("cannot create {}: {e}", cfg.output_dir.display())))?;
    let markdown = report::study_markdown(&report);
    let mut written = Vec::new();
    if cfg.wants(Format::Csv) {
        for (name, body) in [("study.csv", report::study_csv(&report)), ("loglog.csv", report::loglog_csv(&report))] {
            let path = cfg.output_dir.join(name);
            write_file(&path, &body)?;
            written.push(path);
        }
    }
    if cfg.wants(Format::Markdown) {
        let path = cfg.output_dir.join("study.md");
        write_file(&path, &markdown)?;
        written.push(path);
    }

    print!("{markdown}");
    if let Some(gap) = report.max_cross_check_gap() {
        println!("max cross-check gap {gap:.3e}");
    }
    let rows = report.non_monotone_rows();
    if !rows.is_empty() {
        let labels: Vec<String> = rows.iter().map(|&e| epsilon_label(e)).collect();
        println!("note: error not monotone in N for epsilon = {}", labels.join(", "));
    }
    let rows = report.branch_switch_rows();
    if !rows.is_empty() {
        let labels: Vec<String> = rows.iter().map(|&e| epsilon_label(e)).collect();
        println!("note: transition point changes branch across N for epsilon = {}", labels.join(", "));
    }
    for (r, row) in report.cells.iter().enumerate() {
        for (c, cell) in row.iter().enumerate() {
            if !cell.nonpositive_theta.is_empty() {
                println!(
                    "note: theta <= 0 at {} nodes for epsilon = {}, N = {}",
                    cell.nonpositive_theta.len(),
                    epsilon_label(report.epsilons[r]),
                    report.ns[c]
                );
            }
        }
    }
    for path in written {
        println!("wrote {}", path.display());
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Solve(args) => cmd_solve(args),
        Command::Study(args) => cmd_study(args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.code())
        }
    }
}
