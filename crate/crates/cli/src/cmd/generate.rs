use super::{vec2, ContractViolation};
use crate::report::Reporter;
use anyhow::{bail, Context, Result};
use clap::{Args, ValueEnum};
use eiko_core::fields::io::write_field;
use eiko_core::fields::{generate_avoiding_singular, Generator};
use eiko_core::{GridSpec, Tolerances, Vec2};
use serde::{Deserialize, Serialize};
use std::path::PathBuf;

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum Kind {
    Vortex,
    Distance,
    Jump,
    Constant,
    Loglog,
}

#[derive(Args, Debug)]
pub struct GenerateArgs {
    #[arg(long, value_enum)]
    kind: Option<Kind>,
    #[arg(long)]
    nx: Option<usize>,
    #[arg(long)]
    ny: Option<usize>,
    #[arg(long)]
    h: Option<f64>,
    /// Grid centre `x,y`.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    grid_center: Option<Vec<f64>>,
    /// Vortex centre, jump point or distance point `x,y`.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    center: Option<Vec<f64>>,
    /// Distance to the boundary of the rectangle `x_lo,y_lo,x_hi,y_hi`.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    rect: Option<Vec<f64>>,
    /// Vortex orientation, `1` or `-1`.
    #[arg(long, allow_hyphen_values = true)]
    alpha: Option<f64>,
    /// Jump tangent angle or constant-field angle, radians.
    #[arg(long, allow_hyphen_values = true)]
    angle: Option<f64>,
    /// Field file to write.
    #[arg(short = 'o', long)]
    pub output: Option<PathBuf>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct GridConfig {
    pub nx: usize,
    pub ny: usize,
    pub h: f64,
    pub center: Vec2,
}

impl Default for GridConfig {
    fn default() -> Self {
        GridConfig {
            nx: 257,
            ny: 257,
            h: 1.0 / 128.0,
            center: Vec2::ZERO,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct Config {
    pub generator: Generator,
    pub grid: GridConfig,
    pub tolerances: Tolerances,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            generator: Generator::vortex(Vec2::ZERO, 1.0),
            grid: GridConfig::default(),
            tolerances: Tolerances::default(),
        }
    }
}

pub fn configure(a: &GenerateArgs) -> Result<Config> {
    let mut c = Config::default();
    if let Some(n) = a.nx {
        c.grid.nx = n;
    }
    if let Some(n) = a.ny {
        c.grid.ny = n;
    }
    if let Some(h) = a.h {
        c.grid.h = h;
    }
    if let Some(p) = &a.grid_center {
        c.grid.center = vec2(p, "--grid-center")?;
    }
    let center = a
        .center
        .as_deref()
        .map(|p| vec2(p, "--center"))
        .transpose()?
        .unwrap_or(Vec2::ZERO);
    if let Some(kind) = a.kind {
        c.generator = match kind {
            Kind::Vortex => Generator::vortex(center, a.alpha.unwrap_or(1.0)),
            Kind::Distance => match &a.rect {
                Some(r) if r.len() == 4 => {
                    Generator::distance_to_rectangle(Vec2::new(r[0], r[1]), Vec2::new(r[2], r[3]))
                }
                Some(_) => bail!("--rect needs x_lo,y_lo,x_hi,y_hi"),
                None => Generator::distance_to_point(center),
            },
            Kind::Jump => Generator::Jump {
                point: center,
                angle: a.angle.unwrap_or(0.0),
            },
            Kind::Constant => Generator::constant(Vec2::from_angle(a.angle.unwrap_or(0.0))),
            Kind::Loglog => Generator::Loglog,
        };
    }
    Ok(c)
}

#[derive(Serialize)]
struct Record<'a> {
    generator: &'a Generator,
    name: &'a str,
    grid: GridSpec,
    max_unit_deviation: f64,
}

pub fn run(c: &Config, output: Option<&PathBuf>, rep: &mut Reporter) -> Result<()> {
    let Some(output) = output else {
        bail!("generate needs -o <field file>")
    };
    let g = &c.grid;
    let spec = GridSpec::centered(g.nx, g.ny, g.h, g.center)?;
    let u = generate_avoiding_singular(&c.generator, spec)?;
    let dev = u.max_unit_deviation();
    write_field(&u, output).with_context(|| format!("writing {}", output.display()))?;
    rep.emit(
        "field",
        &Record {
            generator: &c.generator,
            name: c.generator.name(),
            grid: u.spec,
            max_unit_deviation: dev,
        },
    )?;
    if dev > c.tolerances.unit_tol {
        return Err(ContractViolation(format!(
            "generated field deviates from unit length by {dev:e}"
        ))
        .into());
    }
    Ok(())
}
