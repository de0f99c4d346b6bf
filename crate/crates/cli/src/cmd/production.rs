use super::{bump, load_field, require_path};
use crate::report::Reporter;
use anyhow::{bail, Context, Result};
use clap::Args;
use eiko_core::entropy::{
    entropy_production, production_decomposition, AnyEntropy, EntropyDescription, FourierCoeffs,
    ProductionDecomposition,
};
use eiko_core::{ExtendedEntropy, TestBump, Tolerances, Vec2};
use serde::{Deserialize, Serialize};
use std::path::PathBuf;

#[derive(Args, Debug)]
pub struct ProductionArgs {
    #[arg(long)]
    field: Option<PathBuf>,
    /// Entropy description JSON file.
    #[arg(long)]
    entropy: Option<PathBuf>,
    /// Test bump `cx,cy,r`.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    zeta: Option<Vec<f64>>,
    /// Mollification radii in units of `h`; needs a smooth entropy.
    #[arg(long, value_delimiter = ',')]
    eps_ladder: Option<Vec<f64>>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct Config {
    pub field: Option<PathBuf>,
    pub entropy: EntropyDescription,
    pub zeta: TestBump,
    pub eps_ladder: Vec<f64>,
    pub tolerances: Tolerances,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            field: None,
            entropy: EntropyDescription::Fourier {
                coeffs: FourierCoeffs {
                    cos: vec![0.0, 0.0, 1.0],
                    sin: vec![],
                },
            },
            zeta: TestBump::new(Vec2::new(0.5, 0.3), 0.25),
            eps_ladder: Vec::new(),
            tolerances: Tolerances::default(),
        }
    }
}

pub fn configure(a: &ProductionArgs) -> Result<Config> {
    let mut c = Config {
        field: a.field.clone(),
        ..Config::default()
    };
    if let Some(p) = &a.entropy {
        let text =
            std::fs::read_to_string(p).with_context(|| format!("reading {}", p.display()))?;
        c.entropy = serde_json::from_str(&text)
            .with_context(|| format!("parsing entropy {}", p.display()))?;
    }
    if let Some(z) = &a.zeta {
        c.zeta = bump(z)?;
    }
    if let Some(l) = &a.eps_ladder {
        c.eps_ladder = l.clone();
    }
    Ok(c)
}

#[derive(Serialize)]
struct Raw<'a> {
    entropy: &'a EntropyDescription,
    zeta: &'a TestBump,
    h: f64,
    total: f64,
}

#[derive(Serialize)]
struct Regularized<'a> {
    entropy: &'a EntropyDescription,
    zeta: &'a TestBump,
    #[serde(flatten)]
    decomposition: ProductionDecomposition,
    residual: f64,
}

pub fn run(c: &Config, rep: &mut Reporter) -> Result<()> {
    let u = load_field(&require_path(&c.field, "--field")?, &c.tolerances, true)?;
    let phi = c.entropy.build();
    let total = entropy_production(&phi, &u, &c.zeta, &c.tolerances)?;
    rep.emit(
        "production",
        &Raw {
            entropy: &c.entropy,
            zeta: &c.zeta,
            h: u.spec.h,
            total,
        },
    )?;
    if c.eps_ladder.is_empty() {
        return Ok(());
    }
    let AnyEntropy::Smooth(base) = phi else {
        bail!("the eps ladder needs a smooth entropy; elementary entropies have no plane extension")
    };
    let ext = ExtendedEntropy::new(base);
    for &m in &c.eps_ladder {
        let d = production_decomposition(&ext, &u, m * u.spec.h, &c.zeta, &c.tolerances)?;
        let residual = d.residual();
        rep.emit(
            "decomposition",
            &Regularized {
                entropy: &c.entropy,
                zeta: &c.zeta,
                decomposition: d,
                residual,
            },
        )?;
    }
    Ok(())
}
