//! Parsing of flag and config values.

use spfide::SolverChoice;

/// Parses `ε` as a decimal or as `2^k` / `2^-k`. Powers of two are built with
/// `powi`, so they are exact.
pub fn parse_epsilon(s: &str) -> Result<f64, String> {
    let s = s.trim();
    let value = if let Some(exp) = s.strip_prefix("2^") {
        let k: i32 = exp
            .trim_start_matches('(')
            .trim_end_matches(')')
            .parse()
            .map_err(|_| format!("bad exponent in {s:?}"))?;
        2f64.powi(k)
    } else {
        s.parse::<f64>().map_err(|_| format!("expected a number or 2^-k, got {s:?}"))?
    };
    if value > 0.0 && value <= 1.0 {
        Ok(value)
    } else {
        Err(format!("epsilon must lie in (0, 1], got {s}"))
    }
}

pub fn parse_n(s: &str) -> Result<usize, String> {
    let n: usize = s.trim().parse().map_err(|_| format!("expected a positive integer, got {s:?}"))?;
    if n >= 4 && n % 2 == 0 {
        Ok(n)
    } else {
        Err(format!("N must be an even integer >= 4, got {n}"))
    }
}

pub fn parse_solver(s: &str) -> Result<SolverChoice, String> {
    s.trim().parse().map_err(|e: spfide::Error| e.to_string())
}

pub fn parse_tol(s: &str) -> Result<f64, String> {
    match s.trim().parse::<f64>() {
        Ok(t) if t > 0.0 && t.is_finite() => Ok(t),
        _ => Err(format!("tol must be a positive number, got {s:?}")),
    }
}

/// Splits a comma-separated list; an empty or blank string gives an empty list.
pub fn parse_list<T>(s: &str, item: impl Fn(&str) -> Result<T, String>) -> Result<Vec<T>, String> {
    s.split(',').map(str::trim).filter(|t| !t.is_empty()).map(item).collect()
}

/// `2^-k` when `eps` is a power of two, shortest round-trip otherwise.
pub fn epsilon_label(eps: f64) -> String {
    let k = eps.log2().round() as i32;
    if 2f64.powi(k) == eps {
        format!("2^{k}")
    } else {
        format!("{eps:e}")
    }
}
