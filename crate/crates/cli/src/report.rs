//! Text renderings of solve and study results.
//!
//! CSV numbers use Rust's shortest round-trip exponent form (`{:e}`); the
//! markdown table uses five significant digits for errors and two decimals for
//! rates.

use std::fmt::Write;

use spfide::{ConvergenceReport, ExactSolution, SolveRun};

use crate::values::epsilon_label;

fn opt(v: Option<f64>) -> String {
    v.map(|x| format!("{x:e}")).unwrap_or_default()
}

/// `i,xi,y,exact,abs_error`; the last two columns are blank without an exact
/// solution.
pub fn solution_csv(run: &SolveRun, exact: Option<&ExactSolution>, epsilon: f64) -> String {
    let mut out = String::from("i,xi,y,exact,abs_error\n");
    for (i, (&x, &y)) in run.mesh.nodes().iter().zip(&run.solution.values).enumerate() {
        let v = exact.map(|e| e.eval(x, epsilon));
        let err = v.map(|v| (y - v).abs());
        writeln!(out, "{i},{x:e},{y:e},{},{}", opt(v), opt(err)).unwrap();
    }
    out
}

/// `epsilon,n,max_error,rate`, plus `cross_check_gap` when both solvers ran.
pub fn study_csv(report: &ConvergenceReport) -> String {
    let with_gap = report.max_cross_check_gap().is_some();
    let mut out = String::from("epsilon,n,max_error,rate");
    if with_gap {
        out.push_str(",cross_check_gap");
    }
    out.push('\n');
    for (r, &eps) in report.epsilons.iter().enumerate() {
        for (c, &n) in report.ns.iter().enumerate() {
            write!(out, "{eps:e},{n},{:e},{}", report.errors[r][c], opt(report.rates[r][c])).unwrap();
            if with_gap {
                write!(out, ",{}", opt(report.cells[r][c].cross_check_gap)).unwrap();
            }
            out.push('\n');
        }
    }
    out
}

/// `n,log10_n,epsilon,log10_error`, one line per cell.
pub fn loglog_csv(report: &ConvergenceReport) -> String {
    let mut out = String::from("n,log10_n,epsilon,log10_error\n");
    for (r, &eps) in report.epsilons.iter().enumerate() {
        for (c, &n) in report.ns.iter().enumerate() {
            let e = report.errors[r][c];
            writeln!(out, "{n},{:e},{eps:e},{:e}", (n as f64).log10(), e.log10()).unwrap();
        }
    }
    out
}

fn rate_cells(rates: &[Option<f64>]) -> String {
    rates.iter().map(|p| p.map(|p| format!(" {p:.2} |")).unwrap_or_else(|| "  |".into())).collect()
}

/// Error row above rate row for each ε, then the ε-uniform `e^N` / `p^N` rows.
pub fn study_markdown(report: &ConvergenceReport) -> String {
    let mut out = String::new();
    writeln!(out, "Maximum pointwise errors and convergence rates ({}).\n", report.method).unwrap();
    out.push_str("| ε |");
    for n in &report.ns {
        write!(out, " N = {n} |").unwrap();
    }
    out.push_str("\n|---|");
    out.push_str(&"---|".repeat(report.ns.len()));
    out.push('\n');
    for (r, &eps) in report.epsilons.iter().enumerate() {
        write!(out, "| {} |", epsilon_label(eps)).unwrap();
        for e in &report.errors[r] {
            write!(out, " {e:.4e} |").unwrap();
        }
        writeln!(out, "\n| |{}", rate_cells(&report.rates[r])).unwrap();
    }
    out.push_str("| e^N |");
    for e in &report.uniform_errors {
        write!(out, " {e:.4e} |").unwrap();
    }
    writeln!(out, "\n| p^N |{}", rate_cells(&report.uniform_rates)).unwrap();
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use spfide::analysis::{run_study, StudyOptions};
    use spfide::problems::example1;
    use spfide::{solve, SolverChoice};

    fn small_report(solver: SolverChoice) -> ConvergenceReport {
        let (p, exact) = example1();
        let opts = StudyOptions { solver, ..StudyOptions::default() };
        run_study(&p, Some(&exact), &[1.0, 2f64.powi(-10)], &[8, 16], opts).unwrap()
    }

    #[test]
    fn solution_csv_shape() {
        let (p, exact) = example1();
        let run = solve(&p, 0.5, 8, SolverChoice::Lu).unwrap();
        let csv = solution_csv(&run, Some(&exact), 0.5);
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines[0], "i,xi,y,exact,abs_error");
        assert_eq!(lines.len(), 10);
        assert!(lines[1].starts_with("0,0e0,0e0,"));
        let blank = solution_csv(&run, None, 0.5);
        assert!(blank.lines().nth(3).unwrap().ends_with(",,"));
    }

    #[test]
    fn study_csv_round_trips_numbers() {
        let report = small_report(SolverChoice::Lu);
        let csv = study_csv(&report);
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines[0], "epsilon,n,max_error,rate");
        assert_eq!(lines.len(), 5);
        let fields: Vec<&str> = lines[1].split(',').collect();
        assert_eq!(fields[0].parse::<f64>().unwrap(), 1.0);
        assert_eq!(fields[2].parse::<f64>().unwrap(), report.errors[0][0]);
        assert_eq!(fields[3].parse::<f64>().unwrap(), report.rates[0][0].unwrap());
        assert!(lines[2].ends_with(','));
    }

    #[test]
    fn study_csv_gap_column() {
        let csv = study_csv(&small_report(SolverChoice::Both));
        assert!(csv.starts_with("epsilon,n,max_error,rate,cross_check_gap\n"));
        for line in csv.lines().skip(1) {
            let gap: f64 = line.rsplit(',').next().unwrap().parse().unwrap();
            assert!(gap <= 1e-9);
        }
    }

    #[test]
    fn markdown_layout() {
        let md = study_markdown(&small_report(SolverChoice::Lu));
        let rows: Vec<&str> = md.lines().filter(|l| l.starts_with('|')).collect();
        assert_eq!(rows[0], "| ε | N = 8 | N = 16 |");
        assert!(rows[2].starts_with("| 2^0 |"));
        assert!(rows[3].starts_with("| |") && rows[3].ends_with("|  |"));
        assert!(rows[6].starts_with("| e^N |"));
        assert!(rows[7].starts_with("| p^N |"));
    }

    #[test]
    fn loglog_lines() {
        let report = small_report(SolverChoice::Lu);
        let csv = loglog_csv(&report);
        let second: Vec<f64> = csv.lines().nth(2).unwrap().split(',').map(|f| f.parse().unwrap()).collect();
        assert_eq!(second[0], 16.0);
        assert_eq!(second[1], 16f64.log10());
        assert_eq!(second[3], report.errors[0][1].log10());
    }
}
