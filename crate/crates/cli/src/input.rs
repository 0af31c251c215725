//! Parsers for the file formats the commands accept: flats files,
//! graph edge lists, arrangement matrices, symmetric matrices, and the
//! `uniform:r,n` shorthand.

use std::fs;
use std::path::Path;

use anyhow::{bail, Context, Result};
use matlor::charpoly::Arrangement;
use matlor::graphs::{graphic_matroid, Graph};
use matlor::matroid::{uniform, validate_flats, FlatId, FlatSet, Matroid};
use matlor::symmat::SymMatrix;
use matlor::Rational;
use serde::Deserialize;

use crate::Format;

#[derive(Deserialize)]
struct FlatsFile {
    ground: usize,
    flats: Vec<Vec<usize>>,
}

pub fn load_flats(path: &str) -> Result<Matroid> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {path}"))?;
    let file: FlatsFile =
        serde_json::from_str(&text).with_context(|| format!("parsing flats file {path}"))?;
    let mut masks: Vec<FlatSet> = Vec::with_capacity(file.flats.len());
    for flat in &file.flats {
        let mut mask: FlatSet = 0;
        for &e in flat {
            if e >= file.ground {
                bail!(
                    "flat member {e} is outside the ground set 0..{}",
                    file.ground
                );
            }
            mask |= 1 << e;
        }
        masks.push(mask);
    }
    Ok(validate_flats(file.ground, &masks)?)
}

pub fn load_graph(path: &str) -> Result<Graph> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {path}"))?;
    let mut lines = text.lines().filter(|l| !l.trim().is_empty());
    let header = lines.next().context("edge list is empty")?;
    let mut head = header.split_whitespace();
    let v: usize = head
        .next()
        .context("missing vertex count")?
        .parse()
        .context("vertex count")?;
    let e: usize = head
        .next()
        .context("missing edge count")?
        .parse()
        .context("edge count")?;
    let mut edges = Vec::with_capacity(e);
    for line in lines.take(e) {
        let mut parts = line.split_whitespace();
        let a: usize = parts
            .next()
            .context("missing edge tail")?
            .parse()
            .context("edge tail")?;
        let b: usize = parts
            .next()
            .context("missing edge head")?
            .parse()
            .context("edge head")?;
        if a >= v || b >= v {
            bail!("edge {a} {b} references a vertex outside 0..{v}");
        }
        edges.push((a, b));
    }
    if edges.len() != e {
        bail!("expected {e} edges, found {}", edges.len());
    }
    Ok(Graph::new(v, edges))
}

pub fn load_arrangement(path: &str) -> Result<Arrangement> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {path}"))?;
    let mut lines = text.lines().filter(|l| !l.trim().is_empty());
    let header = lines.next().context("arrangement file is empty")?;
    let mut head = header.split_whitespace();
    let p: u64 = head
        .next()
        .context("missing prime")?
        .parse()
        .context("prime")?;
    let dims: usize = head
        .next()
        .context("missing dimension")?
        .parse()
        .context("dimension")?;
    let count: usize = head
        .next()
        .context("missing form count")?
        .parse()
        .context("form count")?;
    let mut forms = Vec::with_capacity(count);
    for line in lines.take(count) {
        let row: Vec<u64> = line
            .split_whitespace()
            .map(|t| t.parse().context("form coefficient"))
            .collect::<Result<_>>()?;
        if row.len() != dims {
            bail!("form row has {} coefficients, expected {dims}", row.len());
        }
        forms.push(row);
    }
    if forms.len() != count {
        bail!("expected {count} forms, found {}", forms.len());
    }
    Ok(Arrangement::new(p, forms)?)
}

pub fn load_matrix(path: &str) -> Result<SymMatrix> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {path}"))?;
    let mut lines = text.lines().filter(|l| !l.trim().is_empty());
    let n: usize = lines
        .next()
        .context("matrix file is empty")?
        .trim()
        .parse()
        .context("matrix dimension")?;
    let mut rows = Vec::with_capacity(n);
    for line in lines.take(n) {
        let row: Vec<Rational> = line
            .split_whitespace()
            .map(parse_rational)
            .collect::<Result<_>>()?;
        if row.len() != n {
            bail!("matrix row has {} entries, expected {n}", row.len());
        }
        rows.push(row);
    }
    if rows.len() != n {
        bail!("expected {n} rows, found {}", rows.len());
    }
    Ok(SymMatrix::from_rows(rows)?)
}

pub fn parse_rational(s: &str) -> Result<Rational> {
    s.trim()
        .parse::<Rational>()
        .map_err(|e| anyhow::anyhow!("invalid rational {s:?}: {e}"))
}

pub fn parse_chain(s: &str) -> Result<Vec<FlatId>> {
    s.split(',')
        .map(|t| {
            t.trim()
                .parse::<FlatId>()
                .with_context(|| format!("invalid flat id {t:?}"))
        })
        .collect()
}

/// Resolves a matroid argument: the `uniform:r,n` shorthand, or a file in
/// the requested format. Arrangement files contribute their intersection
/// lattice; graph files their cycle matroid.
pub fn load_matroid(input: &str, format: Format, max_flats: usize) -> Result<Matroid> {
    let m = if let Some(spec) = input.strip_prefix("uniform:") {
        let (r, n) = spec
            .split_once(',')
            .with_context(|| format!("expected uniform:r,n, got {input:?}"))?;
        uniform(
            r.trim().parse().context("uniform rank")?,
            n.trim().parse().context("uniform ground size")?,
        )?
    } else {
        if !Path::new(input).exists() {
            bail!("no such file: {input}");
        }
        match format {
            Format::Flats => load_flats(input)?,
            Format::Graph => graphic_matroid(&load_graph(input)?)?,
            Format::Ffmatrix => load_arrangement(input)?.matroid()?,
        }
    };
    if m.num_flats() > max_flats {
        bail!(
            "matroid has {} flats, above the cap of {max_flats} (raise --max-flats)",
            m.num_flats()
        );
    }
    Ok(m)
}
