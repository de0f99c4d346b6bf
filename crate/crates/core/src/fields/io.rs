//! Text field files.
//!
//! ```text
//! EIKO1 <nx> <ny> <x0> <y0> <h>
//! <u1> <u2>            (nx·ny lines, y outer, x inner)
//! ```
//!
//! Scalar files use the tag `EIKS1` and one value per line. Values are printed
//! with 17 significant digits, which round-trips every `f64`.

use super::{GridField2, GridScalar, GridSpec};
use crate::error::{Error, Result};
use crate::geometry::Vec2;
use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::Path;

pub const FIELD_TAG: &str = "EIKO1";
pub const SCALAR_TAG: &str = "EIKS1";

pub fn fmt17(v: f64) -> String {
    format!("{v:.16e}")
}

fn write_header(w: &mut impl Write, tag: &str, s: &GridSpec) -> Result<()> {
    writeln!(
        w,
        "{tag} {} {} {} {} {}",
        s.nx,
        s.ny,
        fmt17(s.x0),
        fmt17(s.y0),
        fmt17(s.h)
    )?;
    Ok(())
}

fn parse_header(line: &str, tag: &str) -> Result<GridSpec> {
    let parts: Vec<&str> = line.split_whitespace().collect();
    if parts.len() != 6 || parts[0] != tag {
        return Err(Error::MalformedHeader(format!(
            "expected `{tag} nx ny x0 y0 h`, got `{line}`"
        )));
    }
    let int = |s: &str| {
        s.parse::<usize>()
            .map_err(|e| Error::MalformedHeader(format!("{s}: {e}")))
    };
    let real = |s: &str| {
        s.parse::<f64>()
            .map_err(|e| Error::MalformedHeader(format!("{s}: {e}")))
    };
    GridSpec::new(
        int(parts[1])?,
        int(parts[2])?,
        real(parts[3])?,
        real(parts[4])?,
        real(parts[5])?,
    )
    .map_err(|e| Error::MalformedHeader(e.to_string()))
}

pub fn write_field_to(u: &GridField2, mut w: impl Write) -> Result<()> {
    write_header(&mut w, FIELD_TAG, &u.spec)?;
    for v in &u.values {
        writeln!(w, "{} {}", fmt17(v.x), fmt17(v.y))?;
    }
    w.flush()?;
    Ok(())
}

pub fn read_field_from(r: impl BufRead) -> Result<GridField2> {
    let mut lines = r.lines();
    let header = lines
        .next()
        .ok_or_else(|| Error::MalformedHeader("empty file".into()))??;
    let spec = parse_header(header.trim(), FIELD_TAG)?;
    let mut values = Vec::with_capacity(spec.len());
    for (n, line) in lines.enumerate() {
        let line = line?;
        let t = line.trim();
        if t.is_empty() {
            continue;
        }
        let mut it = t.split_whitespace();
        let mut next = || -> Result<f64> {
            let s = it.next().ok_or_else(|| Error::Parse {
                line: n + 2,
                msg: "missing component".into(),
            })?;
            s.parse().map_err(|e| Error::Parse {
                line: n + 2,
                msg: format!("{s}: {e}"),
            })
        };
        let v = Vec2::new(next()?, next()?);
        if it.next().is_some() {
            return Err(Error::Parse {
                line: n + 2,
                msg: "expected two components".into(),
            });
        }
        values.push(v);
    }
    if values.len() != spec.len() {
        return Err(Error::ValueCountMismatch {
            expected: spec.len(),
            found: values.len(),
        });
    }
    GridField2::new(spec, values)
}

pub fn write_scalar_to(f: &GridScalar, mut w: impl Write) -> Result<()> {
    write_header(&mut w, SCALAR_TAG, &f.spec)?;
    for v in &f.values {
        writeln!(w, "{}", fmt17(*v))?;
    }
    w.flush()?;
    Ok(())
}

pub fn read_scalar_from(r: impl BufRead) -> Result<GridScalar> {
    let mut lines = r.lines();
    let header = lines
        .next()
        .ok_or_else(|| Error::MalformedHeader("empty file".into()))??;
    let spec = parse_header(header.trim(), SCALAR_TAG)?;
    let mut values = Vec::with_capacity(spec.len());
    for (n, line) in lines.enumerate() {
        let line = line?;
        let t = line.trim();
        if t.is_empty() {
            continue;
        }
        values.push(t.parse().map_err(|e| Error::Parse {
            line: n + 2,
            msg: format!("{t}: {e}"),
        })?);
    }
    if values.len() != spec.len() {
        return Err(Error::ValueCountMismatch {
            expected: spec.len(),
            found: values.len(),
        });
    }
    GridScalar::new(spec, values)
}

pub fn write_field(u: &GridField2, path: impl AsRef<Path>) -> Result<()> {
    write_field_to(u, BufWriter::new(File::create(path)?))
}

pub fn read_field(path: impl AsRef<Path>) -> Result<GridField2> {
    read_field_from(BufReader::new(File::open(path)?))
}

pub fn write_scalar(f: &GridScalar, path: impl AsRef<Path>) -> Result<()> {
    write_scalar_to(f, BufWriter::new(File::create(path)?))
}

pub fn read_scalar(path: impl AsRef<Path>) -> Result<GridScalar> {
    read_scalar_from(BufReader::new(File::open(path)?))
}
