use super::{annulus, load_field, rect, require_path};
use crate::report::Reporter;
use anyhow::Result;
use clap::Args;
use eiko_core::regularity::{cet_bound, gagliardo_seminorm, SeminormOptions, Subsample};
use eiko_core::{Tolerances, Window};
use serde::{Deserialize, Serialize};
use std::path::PathBuf;

#[derive(Args, Debug)]
pub struct SeminormArgs {
    #[arg(long)]
    field: Option<PathBuf>,
    #[arg(long)]
    s: Option<f64>,
    #[arg(long)]
    p: Option<f64>,
    /// Rectangle `x_lo,y_lo,x_hi,y_hi`.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    window: Option<Vec<f64>>,
    /// Annulus `cx,cy,r_in,r_out`; replaces `--window`.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    annulus: Option<Vec<f64>>,
    /// Random partners per node instead of the exhaustive sum.
    #[arg(long)]
    subsample: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
    /// Commutator radii in units of `h`.
    #[arg(long, value_delimiter = ',')]
    eps_ladder: Option<Vec<f64>>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct Config {
    pub field: Option<PathBuf>,
    pub s: f64,
    pub p: f64,
    pub window: Window,
    pub subsample: Option<Subsample>,
    pub eps_ladder: Vec<f64>,
    pub tolerances: Tolerances,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            field: None,
            s: 1.0 / 3.0,
            p: 3.0,
            window: Window::rect(-0.5, -0.5, 0.5, 0.5),
            subsample: None,
            eps_ladder: vec![8.0, 4.0, 2.0],
            tolerances: Tolerances::default(),
        }
    }
}

pub fn configure(a: &SeminormArgs) -> Result<Config> {
    let mut c = Config {
        field: a.field.clone(),
        ..Config::default()
    };
    if let Some(s) = a.s {
        c.s = s;
    }
    if let Some(p) = a.p {
        c.p = p;
    }
    if let Some(w) = &a.window {
        c.window = rect(w)?;
    }
    if let Some(w) = &a.annulus {
        c.window = annulus(w)?;
    }
    if let Some(per_node) = a.subsample {
        c.subsample = Some(Subsample {
            per_node,
            seed: a.seed.unwrap_or(0),
        });
    }
    if let Some(l) = &a.eps_ladder {
        c.eps_ladder = l.clone();
    }
    Ok(c)
}

pub fn run(c: &Config, rep: &mut Reporter) -> Result<()> {
    let u = load_field(&require_path(&c.field, "--field")?, &c.tolerances, false)?;
    let opts = SeminormOptions {
        near_diagonal_cut: c.tolerances.near_diagonal_cut,
        subsample: c.subsample,
    };
    rep.emit(
        "seminorm",
        &gagliardo_seminorm(&u, c.s, c.p, &c.window, &opts)?,
    )?;
    for &m in &c.eps_ladder {
        rep.emit("cet", &cet_bound(&u, m * u.spec.h, &c.window)?)?;
    }
    Ok(())
}
