use super::{annulus, load_field, rect, require_path, vec2};
use crate::report::Reporter;
use anyhow::{Context, Result};
use clap::Args;
use eiko_core::characteristics::{
    classify, ordering_check, random_pairs, trace_bidirectional, winding_number, Loop, TraceStatus,
};
use eiko_core::{Tolerances, Vec2, Window};
use serde::{Deserialize, Serialize};
use std::fs::File;
use std::io::BufWriter;
use std::path::PathBuf;

#[derive(Args, Debug)]
pub struct ClassifyArgs {
    #[arg(long)]
    field: Option<PathBuf>,
    /// Rectangle `x_lo,y_lo,x_hi,y_hi`.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    window: Option<Vec<f64>>,
    /// Annulus `cx,cy,r_in,r_out`; replaces `--window`.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    annulus: Option<Vec<f64>>,
    /// Distance scale of the Lipschitz alternative.
    #[arg(long)]
    d: Option<f64>,
    /// Winding loop: circle `cx,cy,r`.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    winding: Option<Vec<f64>>,
    /// Random window pairs for the ordering check.
    #[arg(long)]
    ordering_pairs: Option<usize>,
    /// Seed `x,y` of a characteristic to trace and export; repeatable.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    trace: Vec<f64>,
    /// Directory for characteristic CSV files.
    #[arg(long)]
    pub csv_dir: Option<PathBuf>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct OrderingConfig {
    pub pairs: usize,
    pub seed: u64,
    /// Exclusion band in units of `h`.
    pub band: f64,
}

impl Default for OrderingConfig {
    fn default() -> Self {
        OrderingConfig {
            pairs: 20_000,
            seed: 0,
            band: 2.0,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct Config {
    pub field: Option<PathBuf>,
    pub window: Window,
    pub d: f64,
    pub winding: Option<Loop>,
    pub ordering: Option<OrderingConfig>,
    pub traces: Vec<Vec2>,
    /// Step in units of `h`.
    pub trace_step: f64,
    pub trace_max_steps: usize,
    pub tolerances: Tolerances,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            field: None,
            window: Window::annulus(Vec2::ZERO, 0.3, 0.6),
            d: 0.3,
            winding: None,
            ordering: None,
            traces: Vec::new(),
            trace_step: 0.5,
            trace_max_steps: 100_000,
            tolerances: Tolerances::default(),
        }
    }
}

pub fn configure(a: &ClassifyArgs) -> Result<Config> {
    let mut c = Config {
        field: a.field.clone(),
        ..Config::default()
    };
    if let Some(w) = &a.window {
        c.window = rect(w)?;
    }
    if let Some(w) = &a.annulus {
        c.window = annulus(w)?;
    }
    if let Some(d) = a.d {
        c.d = d;
    }
    if let Some(w) = &a.winding {
        let (center, radius) = match w.as_slice() {
            [x, y, r] => (Vec2::new(*x, *y), *r),
            _ => anyhow::bail!("--winding needs cx,cy,r"),
        };
        c.winding = Some(Loop::Circle {
            center,
            radius,
            samples: 512,
        });
    }
    if let Some(n) = a.ordering_pairs {
        c.ordering = Some(OrderingConfig {
            pairs: n,
            ..OrderingConfig::default()
        });
    }
    for p in a.trace.chunks(2) {
        c.traces.push(vec2(p, "--trace")?);
    }
    Ok(c)
}

#[derive(Serialize)]
struct TraceRecord {
    seed: Vec2,
    status: TraceStatus,
    points: usize,
    length: f64,
    straightness_defect: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    csv: Option<String>,
}

pub fn run(c: &Config, csv_dir: Option<&PathBuf>, rep: &mut Reporter) -> Result<()> {
    let u = load_field(&require_path(&c.field, "--field")?, &c.tolerances, true)?;
    rep.emit(
        "classification",
        &classify(&u, &c.window, c.d, &c.tolerances)?,
    )?;
    if let Some(lp) = &c.winding {
        rep.emit("winding", &winding_number(&u, lp, &c.tolerances)?)?;
    }
    if let Some(o) = &c.ordering {
        let idx = c.window.node_indices(&u.spec);
        rep.emit(
            "ordering",
            &ordering_check(&u, &random_pairs(&idx, o.pairs, o.seed), o.band * u.spec.h),
        )?;
    }
    if let Some(dir) = csv_dir {
        std::fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
    }
    for (k, &seed) in c.traces.iter().enumerate() {
        let ch = trace_bidirectional(&u, seed, c.trace_step * u.spec.h, c.trace_max_steps)?;
        let csv = match csv_dir {
            Some(dir) => {
                let name = format!("characteristic_{k:03}.csv");
                let path = dir.join(&name);
                let f =
                    File::create(&path).with_context(|| format!("creating {}", path.display()))?;
                ch.write_csv(BufWriter::new(f))?;
                Some(name)
            }
            None => None,
        };
        rep.emit(
            "characteristic",
            &TraceRecord {
                seed,
                status: ch.status,
                points: ch.points.len(),
                length: ch.length(),
                straightness_defect: ch.straightness_defect(),
                csv,
            },
        )?;
    }
    Ok(())
}
