//! Subcommands. Each has clap `Args`, a serializable `Config` with defaults,
//! `configure` (flags onto defaults) and `run`.

pub mod burgers;
pub mod classify;
pub mod generate;
pub mod kinetic;
pub mod production;
pub mod seminorm;

use anyhow::{bail, Context, Result};
use eiko_core::fields::io::read_field;
use eiko_core::{GridField2, TestBump, Tolerances, Vec2, Window};
use std::path::{Path, PathBuf};

/// A diagnostic contract was breached by otherwise valid input (exit code 3).
#[derive(Debug)]
pub struct ContractViolation(pub String);

impl std::fmt::Display for ContractViolation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "contract violation: {}", self.0)
    }
}

impl std::error::Error for ContractViolation {}

pub fn vec2(v: &[f64], what: &str) -> Result<Vec2> {
    match v {
        [x, y] => Ok(Vec2::new(*x, *y)),
        _ => bail!("{what} needs two comma-separated numbers, got {}", v.len()),
    }
}

/// `cx,cy,r` as a unit-amplitude bump.
pub fn bump(v: &[f64]) -> Result<TestBump> {
    match v {
        [x, y, r] if *r > 0.0 => Ok(TestBump::new(Vec2::new(*x, *y), *r)),
        _ => bail!("--zeta needs cx,cy,r with r > 0"),
    }
}

/// `x_lo,y_lo,x_hi,y_hi`.
pub fn rect(v: &[f64]) -> Result<Window> {
    match v {
        [a, b, c, d] if a < c && b < d => Ok(Window::rect(*a, *b, *c, *d)),
        _ => bail!("--window needs x_lo,y_lo,x_hi,y_hi with lo < hi"),
    }
}

/// `cx,cy,r_in,r_out`.
pub fn annulus(v: &[f64]) -> Result<Window> {
    match v {
        [x, y, a, b] if 0.0 <= *a && a < b => Ok(Window::annulus(Vec2::new(*x, *y), *a, *b)),
        _ => bail!("--annulus needs cx,cy,r_in,r_out with 0 <= r_in < r_out"),
    }
}

pub fn require_path(p: &Option<PathBuf>, what: &str) -> Result<PathBuf> {
    match p {
        Some(p) => Ok(p.clone()),
        None => bail!("missing {what}; pass it as a flag or in --config"),
    }
}

/// Reads a field file and, if asked, enforces unit length at `tol.unit_tol`.
pub fn load_field(path: &Path, tol: &Tolerances, unit: bool) -> Result<GridField2> {
    let u = read_field(path).with_context(|| format!("reading field {}", path.display()))?;
    if unit {
        if let Err(e) = u.check_unit(tol.unit_tol) {
            return Err(ContractViolation(format!("{}: {e}", path.display())).into());
        }
    }
    Ok(u)
}
