//! Grid arguments: `start:stop:step`, `start:stop` (ranges only) or an
//! explicit comma-separated list.

use xi_spectral::Grid;

use crate::CliError;

fn number(s: &str) -> Result<f64, CliError> {
    let v: f64 = s.trim().parse().map_err(|_| CliError::Usage(format!("`{s}` is not a number")))?;
    if !v.is_finite() {
        return Err(CliError::Usage(format!("`{s}` is not finite")));
    }
    Ok(v)
}

/// Evaluation grid from `start:stop:step` or `a,b,c`.
pub fn parse_grid(spec: &str) -> Result<Grid, CliError> {
    let parts: Vec<&str> = spec.split(':').collect();
    let grid = match parts.as_slice() {
        [a, b, s] => Grid::range(number(a)?, number(b)?, number(s)?),
        [_] => Grid::from_points(spec.split(',').map(number).collect::<Result<_, _>>()?),
        _ => return Err(CliError::Usage(format!("grid `{spec}` is neither start:stop:step nor a list"))),
    };
    grid.map_err(|e| CliError::Usage(format!("grid `{spec}`: {e}")))
}

/// Search interval from `lo:hi` or `lo:hi:step`; the step defaults to `default_step`.
pub fn parse_range(spec: &str, default_step: f64) -> Result<(f64, f64, f64), CliError> {
    let parts: Vec<&str> = spec.split(':').collect();
    let (lo, hi, step) = match parts.as_slice() {
        [a, b] => (number(a)?, number(b)?, default_step),
        [a, b, s] => (number(a)?, number(b)?, number(s)?),
        _ => return Err(CliError::Usage(format!("range `{spec}` is not lo:hi or lo:hi:step"))),
    };
    if hi < lo || step <= 0.0 {
        return Err(CliError::Usage(format!("range `{spec}` needs lo ≤ hi and step > 0")));
    }
    Ok((lo, hi, step))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ranges_and_lists() {
        assert_eq!(parse_grid("0:100:0.05").unwrap().len(), 2001);
        assert_eq!(parse_grid("0:0:1").unwrap().points(), &[0.0]);
        assert_eq!(parse_grid("1,2.5,4").unwrap().points(), &[1.0, 2.5, 4.0]);
        assert_eq!(parse_range("0:100", 0.05).unwrap(), (0.0, 100.0, 0.05));
        assert_eq!(parse_range("3:3", 0.05).unwrap(), (3.0, 3.0, 0.05));
    }

    #[test]
    fn malformed_specs_are_usage_errors() {
        for s in ["", "a:b:c", "1:2:3:4", "0:1:0", "nan", "1,x"] {
            assert!(matches!(parse_grid(s), Err(CliError::Usage(_))), "{s}");
        }
        for s in ["1", "2:1", "0:1:-1"] {
            assert!(matches!(parse_range(s, 0.1), Err(CliError::Usage(_))), "{s}");
        }
    }
}
