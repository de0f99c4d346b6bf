use crate::report::Reporter;
use anyhow::{bail, Context, Result};
use clap::{Args, ValueEnum};
use eiko_core::burgers::{
    balance_residual, classify_burgers, read_spacetime, shock_weighted_length, write_spacetime,
    BurgersGenerator, SpaceTimeField,
};
use eiko_core::{EntropyPair, SpaceTimeBump, Tolerances};
use serde::{Deserialize, Serialize};
use std::path::PathBuf;

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum Kind {
    Constant,
    Shock,
    NonentropicShock,
    Rarefaction,
    Smooth,
}

#[derive(Args, Debug)]
pub struct BurgersArgs {
    #[arg(long, value_enum)]
    kind: Option<Kind>,
    #[arg(long, allow_hyphen_values = true)]
    vl: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    vr: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    s_star: Option<f64>,
    /// Constant state, or smooth-profile offset `b` in `b + a sin(k s)`.
    #[arg(long, allow_hyphen_values = true)]
    c: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    a: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    k: Option<f64>,
    /// Nodes per direction on `[0.5, 1.5] × [-0.5, 1.5]`.
    #[arg(long)]
    n: Option<usize>,
    /// Space-time field file; replaces the generator.
    #[arg(long)]
    input: Option<PathBuf>,
    /// Plateau window `t_lo,t_hi,s_lo,s_hi,ramp`.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    window: Option<Vec<f64>>,
    /// Commutator radii in units of `ds`.
    #[arg(long, value_delimiter = ',')]
    eps_ladder: Option<Vec<f64>>,
    /// Report only the energy balance.
    #[arg(long)]
    energy: bool,
    /// Also write the sampled field to this file.
    #[arg(long)]
    pub write_field: Option<PathBuf>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct Config {
    pub generator: BurgersGenerator,
    pub n: usize,
    pub input: Option<PathBuf>,
    pub windows: Vec<SpaceTimeBump>,
    pub eps_ladder: Vec<f64>,
    pub energy_only: bool,
    pub tolerances: Tolerances,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            generator: BurgersGenerator::Shock {
                vl: 1.0,
                vr: 0.0,
                s_star: 0.0,
            },
            n: 512,
            input: None,
            windows: vec![SpaceTimeBump::Plateau {
                t_lo: 0.6,
                t_hi: 1.4,
                s_lo: 0.0,
                s_hi: 1.0,
                ramp: 0.1,
            }],
            eps_ladder: vec![8.0, 4.0, 2.0],
            energy_only: false,
            tolerances: Tolerances::default(),
        }
    }
}

pub fn configure(x: &BurgersArgs) -> Result<Config> {
    let mut c = Config {
        input: x.input.clone(),
        energy_only: x.energy,
        ..Config::default()
    };
    if let Some(kind) = x.kind {
        let (vl, vr, s_star) = (
            x.vl.unwrap_or(1.0),
            x.vr.unwrap_or(0.0),
            x.s_star.unwrap_or(0.0),
        );
        c.generator = match kind {
            Kind::Constant => BurgersGenerator::Constant {
                c: x.c.unwrap_or(0.0),
            },
            Kind::Shock => BurgersGenerator::Shock { vl, vr, s_star },
            Kind::NonentropicShock => BurgersGenerator::NonentropicShock {
                vl: x.vl.unwrap_or(0.0),
                vr: x.vr.unwrap_or(1.0),
                s_star,
            },
            Kind::Rarefaction => BurgersGenerator::Rarefaction {
                vl: x.vl.unwrap_or(0.0),
                vr: x.vr.unwrap_or(1.0),
                s_star,
            },
            Kind::Smooth => BurgersGenerator::Smooth {
                a: x.a.unwrap_or(0.3),
                k: x.k.unwrap_or(1.0),
                b: x.c.unwrap_or(0.0),
            },
        };
    }
    if let Some(n) = x.n {
        c.n = n;
    }
    if let Some(w) = &x.window {
        match w.as_slice() {
            &[t_lo, t_hi, s_lo, s_hi, ramp] if t_lo < t_hi && s_lo < s_hi && ramp > 0.0 => {
                c.windows = vec![SpaceTimeBump::Plateau {
                    t_lo,
                    t_hi,
                    s_lo,
                    s_hi,
                    ramp,
                }];
            }
            _ => bail!("--window needs t_lo,t_hi,s_lo,s_hi,ramp with lo < hi and ramp > 0"),
        }
    }
    if let Some(l) = &x.eps_ladder {
        c.eps_ladder = l.clone();
    }
    Ok(c)
}

#[derive(Serialize)]
struct EnergyRecord<'a> {
    generator: &'a str,
    window: &'a SpaceTimeBump,
    h: (f64, f64),
    energy: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    shock_weighted_length: Option<f64>,
    /// `([q] - σ[η])` times the weighted shock length.
    #[serde(skip_serializing_if = "Option::is_none")]
    oracle: Option<f64>,
}

#[derive(Serialize)]
struct FullRecord<'a> {
    generator: &'a str,
    #[serde(flatten)]
    report: eiko_core::burgers::BurgersReport,
}

fn field(c: &Config) -> Result<(SpaceTimeField, String, bool)> {
    match &c.input {
        Some(p) => Ok((
            read_spacetime(p).with_context(|| format!("reading {}", p.display()))?,
            "file".into(),
            false,
        )),
        None => Ok((
            c.generator.sample_default(c.n)?,
            c.generator.name().into(),
            true,
        )),
    }
}

pub fn run(c: &Config, write: Option<&PathBuf>, rep: &mut Reporter) -> Result<()> {
    let (v, name, analytic) = field(c)?;
    if let Some(p) = write {
        write_spacetime(&v, p).with_context(|| format!("writing {}", p.display()))?;
    }
    if c.energy_only {
        for w in &c.windows {
            let energy = balance_residual(&v, &EntropyPair::Energy, w)?;
            let len = if analytic {
                shock_weighted_length(&c.generator, w)
            } else {
                None
            };
            let oracle = match (&c.generator, len) {
                (
                    BurgersGenerator::Shock { vl, vr, .. }
                    | BurgersGenerator::NonentropicShock { vl, vr, .. },
                    Some(l),
                ) => {
                    let p = EntropyPair::Energy;
                    let sigma = 0.5 * (vl + vr);
                    Some(((p.q(*vr) - p.q(*vl)) - sigma * (p.eta(*vr) - p.eta(*vl))) * l)
                }
                _ => None,
            };
            rep.emit(
                "energy",
                &EnergyRecord {
                    generator: &name,
                    window: w,
                    h: (v.dt, v.ds),
                    energy,
                    shock_weighted_length: len,
                    oracle,
                },
            )?;
        }
        return Ok(());
    }
    let report = classify_burgers(&v, &c.windows, &c.eps_ladder, &c.tolerances)?;
    rep.emit(
        "burgers",
        &FullRecord {
            generator: &name,
            report,
        },
    )?;
    Ok(())
}
