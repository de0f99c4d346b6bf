//! `BURG1 <nt> <ns> <t0> <s0> <dt> <ds>` followed by `nt·ns` values, one per
//! line, `t` outer and `s` inner.

use super::SpaceTimeField;
use crate::error::{Error, Result};
use crate::fields::io::fmt17;
use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::Path;

pub const SPACETIME_TAG: &str = "BURG1";

pub fn write_spacetime_to(v: &SpaceTimeField, mut w: impl Write) -> Result<()> {
    writeln!(
        w,
        "{SPACETIME_TAG} {} {} {} {} {} {}",
        v.nt,
        v.ns,
        fmt17(v.t0),
        fmt17(v.s0),
        fmt17(v.dt),
        fmt17(v.ds)
    )?;
    for x in &v.values {
        writeln!(w, "{}", fmt17(*x))?;
    }
    w.flush()?;
    Ok(())
}

pub fn read_spacetime_from(r: impl BufRead) -> Result<SpaceTimeField> {
    let mut lines = r.lines();
    let header = lines
        .next()
        .ok_or_else(|| Error::MalformedHeader("empty file".into()))??;
    let parts: Vec<&str> = header.split_whitespace().collect();
    if parts.len() != 7 || parts[0] != SPACETIME_TAG {
        return Err(Error::MalformedHeader(format!(
            "expected `{SPACETIME_TAG} nt ns t0 s0 dt ds`, got `{header}`"
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
    let (nt, ns) = (int(parts[1])?, int(parts[2])?);
    let mut values = Vec::with_capacity(nt.saturating_mul(ns).min(1 << 24));
    for (n, line) in lines.enumerate() {
        let line = line?;
        let t = line.trim();
        if t.is_empty() {
            continue;
        }
        values.push(t.parse::<f64>().map_err(|e| Error::Parse {
            line: n + 2,
            msg: e.to_string(),
        })?);
    }
    SpaceTimeField::new(
        nt,
        ns,
        real(parts[3])?,
        real(parts[4])?,
        real(parts[5])?,
        real(parts[6])?,
        values,
    )
}

pub fn write_spacetime(v: &SpaceTimeField, path: impl AsRef<Path>) -> Result<()> {
    write_spacetime_to(v, BufWriter::new(File::create(path)?))
}

pub fn read_spacetime(path: impl AsRef<Path>) -> Result<SpaceTimeField> {
    read_spacetime_from(BufReader::new(File::open(path)?))
}
