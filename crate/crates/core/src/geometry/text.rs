//! Plain-text grid records for golden files.
//!
//! ```text
//! # torus N1 N2 L1 L2 MODE SPIN1 SPIN2
//! # columns i j x1 x2 NAME...
//! i j x1 x2 VALUE...
//! ```
//!
//! Every `VALUE` is a `;`-separated list of `coefficient@mask` terms, where
//! `mask` is the generator bitmask of the monomial (0 for the body). A zero
//! value is written as `0@0`. Floats use the shortest round-tripping form.

use std::fmt::Write as _;

use super::grid::{DerivativeMode, SpinPhase, TorusGrid};
use super::GeometryError;
use crate::grassmann::RealLinear;

fn spin_name(p: SpinPhase) -> &'static str {
    match p {
        SpinPhase::Periodic => "periodic",
        SpinPhase::Antiperiodic => "antiperiodic",
    }
}

fn parse_spin(s: &str) -> Result<SpinPhase, GeometryError> {
    match s {
        "periodic" => Ok(SpinPhase::Periodic),
        "antiperiodic" => Ok(SpinPhase::Antiperiodic),
        other => Err(GeometryError::Parse(format!(
            "unknown spin phase `{other}`"
        ))),
    }
}

fn value_token<R: RealLinear>(v: &R) -> String {
    let mut parts = Vec::new();
    v.for_each_coeff(|k, c| parts.push(format!("{c:?}@{k}")));
    if parts.is_empty() {
        "0@0".to_string()
    } else {
        parts.join(";")
    }
}

/// Serialize named columns, one line per grid point.
pub fn write_grid<R: RealLinear>(
    grid: &TorusGrid,
    columns: &[(&str, &[R])],
) -> Result<String, GeometryError> {
    for (_, c) in columns {
        grid.check_len(c)?;
    }
    let [n1, n2] = grid.sizes();
    let [l1, l2] = grid.periods();
    let [s1, s2] = grid.spin();
    let mut out = String::new();
    let _ = writeln!(
        out,
        "# torus {n1} {n2} {l1:?} {l2:?} {} {} {}",
        grid.mode().name(),
        spin_name(s1),
        spin_name(s2)
    );
    let names: Vec<&str> = columns.iter().map(|(n, _)| *n).collect();
    let _ = writeln!(out, "# columns i j x1 x2 {}", names.join(" "));
    for idx in 0..grid.len() {
        let [x1, x2] = grid.point(idx);
        let (i, j) = (idx / n2, idx % n2);
        let _ = write!(out, "{i} {j} {x1:?} {x2:?}");
        for (_, c) in columns {
            let _ = write!(out, " {}", value_token(&c[idx]));
        }
        out.push('\n');
    }
    Ok(out)
}

/// Columns read back from [`write_grid`] output.
#[derive(Debug, Clone)]
pub struct GridRecords<R> {
    pub grid: TorusGrid,
    pub names: Vec<String>,
    pub columns: Vec<Vec<R>>,
}

/// Parse [`write_grid`] output. `template` fixes the ring (e.g. the
/// generator count) of the returned values.
pub fn read_grid<R: RealLinear>(text: &str, template: &R) -> Result<GridRecords<R>, GeometryError> {
    let bad = |msg: String| GeometryError::Parse(msg);
    let mut lines = text.lines().filter(|l| !l.trim().is_empty());
    let header: Vec<&str> = lines
        .next()
        .ok_or_else(|| bad("empty input".into()))?
        .split_whitespace()
        .collect();
    if header.len() != 9 || header[0] != "#" || header[1] != "torus" {
        return Err(bad("missing torus header".into()));
    }
    let num = |s: &str| s.parse::<f64>().map_err(|e| bad(format!("{s}: {e}")));
    let int = |s: &str| s.parse::<usize>().map_err(|e| bad(format!("{s}: {e}")));
    let mode: DerivativeMode = header[6].parse()?;
    let grid = TorusGrid::new(
        [int(header[2])?, int(header[3])?],
        [num(header[4])?, num(header[5])?],
        mode,
    )?
    .with_spin([parse_spin(header[7])?, parse_spin(header[8])?]);
    let cols: Vec<&str> = lines
        .next()
        .ok_or_else(|| bad("missing column header".into()))?
        .split_whitespace()
        .collect();
    if cols.len() < 6 || cols[..6] != ["#", "columns", "i", "j", "x1", "x2"] {
        return Err(bad("malformed column header".into()));
    }
    let names: Vec<String> = cols[6..].iter().map(|s| s.to_string()).collect();
    let mut columns: Vec<Vec<Option<R>>> = vec![vec![None; grid.len()]; names.len()];
    for line in lines {
        let fields: Vec<&str> = line.split_whitespace().collect();
        if fields.len() != 4 + names.len() {
            return Err(bad(format!(
                "expected {} fields: `{line}`",
                4 + names.len()
            )));
        }
        let (i, j) = (int(fields[0])?, int(fields[1])?);
        if i >= grid.sizes()[0] || j >= grid.sizes()[1] {
            return Err(bad(format!("point ({i}, {j}) outside the grid")));
        }
        let idx = grid.index(i, j);
        for (c, tok) in fields[4..].iter().enumerate() {
            let mut coeffs = Vec::new();
            for term in tok.split(';') {
                let (coef, mask) = term
                    .split_once('@')
                    .ok_or_else(|| bad(format!("bad term `{term}`")))?;
                let mask = mask
                    .parse::<u32>()
                    .map_err(|e| bad(format!("{mask}: {e}")))?;
                coeffs.push((mask, num(coef)?));
            }
            columns[c][idx] = Some(R::from_coeffs(template, &coeffs));
        }
    }
    let columns = columns
        .into_iter()
        .map(|c| c.into_iter().collect::<Option<Vec<R>>>())
        .collect::<Option<Vec<_>>>()
        .ok_or_else(|| bad("some grid points are missing".into()))?;
    Ok(GridRecords {
        grid,
        names,
        columns,
    })
}
