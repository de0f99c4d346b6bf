use super::{bump, load_field, require_path};
use crate::report::Reporter;
use anyhow::Result;
use clap::Args;
use eiko_core::kinetic::{fan_residuals, reconstruction_error, DirectionFan};
use eiko_core::{TestBump, Tolerances, Vec2};
use serde::{Deserialize, Serialize};
use std::path::PathBuf;

#[derive(Args, Debug)]
pub struct KineticArgs {
    #[arg(long)]
    field: Option<PathBuf>,
    /// Number of fan directions.
    #[arg(long)]
    fan: Option<usize>,
    /// Test bump `cx,cy,r`.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    zeta: Option<Vec<f64>>,
    /// Fan sizes for the averaging reconstruction ladder.
    #[arg(long, value_delimiter = ',')]
    reconstruct: Option<Vec<usize>>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct Config {
    pub field: Option<PathBuf>,
    pub fan: usize,
    pub zeta: TestBump,
    pub reconstruct: Vec<usize>,
    pub tolerances: Tolerances,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            field: None,
            fan: 64,
            zeta: TestBump::new(Vec2::new(0.5, 0.3), 0.25),
            reconstruct: Vec::new(),
            tolerances: Tolerances::default(),
        }
    }
}

pub fn configure(a: &KineticArgs) -> Result<Config> {
    let mut c = Config {
        field: a.field.clone(),
        ..Config::default()
    };
    if let Some(n) = a.fan {
        c.fan = n;
    }
    if let Some(z) = &a.zeta {
        c.zeta = bump(z)?;
    }
    if let Some(r) = &a.reconstruct {
        c.reconstruct = r.clone();
    }
    Ok(c)
}

pub fn run(c: &Config, rep: &mut Reporter) -> Result<()> {
    let u = load_field(&require_path(&c.field, "--field")?, &c.tolerances, true)?;
    let fan = DirectionFan::new(c.fan)?;
    for r in fan_residuals(&u, &fan, &c.zeta, &c.tolerances)? {
        rep.emit("kinetic", &r)?;
    }
    for &n in &c.reconstruct {
        rep.emit(
            "reconstruction",
            &reconstruction_error(&u, &DirectionFan::new(n)?),
        )?;
    }
    Ok(())
}
