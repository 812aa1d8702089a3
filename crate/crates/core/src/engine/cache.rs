//! On-disk cache of generator matrices (and optionally the product table),
//! one file per (r, s, field).

use super::algebra::{Algebra, SparseMat, SparseRow};
use super::basis::CellularBasis;
use crate::error::{Result, WbqError};
use crate::scalars::{parse_scalar, FieldSpec};
use crate::words::Gen;
use serde_json::json;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::sync::Arc;

pub const FORMAT_VERSION: u64 = 1;

pub fn cache_file(dir: &Path, r: usize, s: usize, spec: &FieldSpec) -> PathBuf {
    let tag: String = spec.to_string().chars().map(|c| if c.is_ascii_alphanumeric() { c } else { '_' }).collect();
    dir.join(format!("wbq_r{r}_s{s}_{tag}.cache"))
}

fn header(a: &Algebra) -> String {
    json!({
        "format_version": FORMAT_VERSION,
        "r": a.basis.r,
        "s": a.basis.s,
        "mode": a.spec.to_string(),
        "seed": a.seed,
        "D": a.d,
    })
    .to_string()
}

fn write_rows(out: &mut String, rows: &[SparseRow], prefix: &str) {
    for (i, row) in rows.iter().enumerate() {
        if row.is_empty() {
            continue;
        }
        let cells: Vec<String> = row.iter().map(|(k, x)| format!("{k}={}", x.to_text())).collect();
        let _ = writeln!(out, "{prefix}{i}: {}", cells.join("; "));
    }
}

/// Serialized cache text: header, then `gen <name>` blocks and an optional `products` block.
pub fn serialize(a: &Algebra, products: Option<&[Vec<SparseRow>]>) -> String {
    let mut out = header(a);
    out.push('\n');
    for (g, m) in &a.gens {
        let _ = writeln!(out, "gen {g}");
        write_rows(&mut out, m, "");
    }
    if let Some(p) = products {
        out.push_str("products\n");
        for (x, rows) in p.iter().enumerate() {
            write_rows(&mut out, rows, &format!("{x} "));
        }
    }
    out
}

fn bad(msg: impl Into<String>) -> WbqError {
    WbqError::Cache(msg.into())
}

fn parse_row(line: &str, spec: &FieldSpec) -> Result<(usize, SparseRow)> {
    let (i, rest) = line.split_once(':').ok_or_else(|| bad(format!("malformed row: {line}")))?;
    let i: usize = i.trim().parse().map_err(|_| bad("row index"))?;
    let mut row = vec![];
    for cell in rest.split(';') {
        let (k, v) = cell.split_once('=').ok_or_else(|| bad("malformed cell"))?;
        row.push((k.trim().parse().map_err(|_| bad("column index"))?, parse_scalar(v.trim(), spec)?));
    }
    Ok((i, row))
}

pub struct Loaded {
    pub algebra: Algebra,
    pub products: Option<Vec<Vec<SparseRow>>>,
}

pub fn deserialize(text: &str, basis: Arc<CellularBasis>, spec: FieldSpec, seed: u64) -> Result<Loaded> {
    let mut lines = text.lines();
    let h: serde_json::Value = serde_json::from_str(lines.next().ok_or_else(|| bad("empty cache"))?).map_err(|e| bad(e.to_string()))?;
    let get = |k: &str| h.get(k).cloned().unwrap_or(serde_json::Value::Null);
    if get("format_version") != json!(FORMAT_VERSION) {
        return Err(bad("format version mismatch"));
    }
    if get("r") != json!(basis.r) || get("s") != json!(basis.s) || get("mode") != json!(spec.to_string()) || get("seed") != json!(seed) {
        return Err(bad("header does not match the request"));
    }
    let d = get("D").as_u64().ok_or_else(|| bad("missing D"))? as usize;
    let n = basis.len();
    let mut gens: Vec<(Gen, SparseMat)> = vec![];
    let mut products: Option<Vec<Vec<SparseRow>>> = None;
    let names: Vec<(String, Gen)> = basis.generators().into_iter().map(|g| (g.to_string(), g)).collect();
    for line in lines {
        if let Some(name) = line.strip_prefix("gen ") {
            let g = names.iter().find(|x| x.0 == name).ok_or_else(|| bad(format!("unknown generator {name}")))?.1;
            gens.push((g, vec![vec![]; n]));
        } else if line == "products" {
            products = Some(vec![vec![vec![]; n]; n]);
        } else if let Some(p) = products.as_mut() {
            let (x, rest) = line.split_once(' ').ok_or_else(|| bad("malformed product row"))?;
            let x: usize = x.parse().map_err(|_| bad("product index"))?;
            let (y, row) = parse_row(rest, &spec)?;
            *p.get_mut(x).and_then(|r| r.get_mut(y)).ok_or_else(|| bad("product index out of range"))? = row;
        } else {
            let (i, row) = parse_row(line, &spec)?;
            let m = &mut gens.last_mut().ok_or_else(|| bad("row before generator"))?.1;
            *m.get_mut(i).ok_or_else(|| bad("row out of range"))? = row;
        }
    }
    if gens.len() != names.len() {
        return Err(bad("generator blocks missing"));
    }
    Ok(Loaded { algebra: Algebra::from_gens(spec, basis, gens, seed, d), products })
}

pub fn list(dir: &Path) -> Result<Vec<PathBuf>> {
    if !dir.exists() {
        return Ok(vec![]);
    }
    let mut v: Vec<PathBuf> = std::fs::read_dir(dir)
        .map_err(|e| bad(e.to_string()))?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "cache") && p.file_name().is_some_and(|n| n.to_string_lossy().starts_with("wbq_")))
        .collect();
    v.sort();
    Ok(v)
}

pub fn clear(dir: &Path) -> Result<usize> {
    let files = list(dir)?;
    for f in &files {
        std::fs::remove_file(f).map_err(|e| bad(e.to_string()))?;
    }
    Ok(files.len())
}

/// Loads from the cache or computes (Generic by interpolation, other fields by
/// specializing Generic), writing every computed file back.
pub fn load_or_build(r: usize, s: usize, spec: FieldSpec, seed: u64, dir: Option<&Path>, progress: &(dyn Fn(&str) + Sync)) -> Result<Algebra> {
    spec.validate()?;
    let basis = Arc::new(CellularBasis::new(r, s));
    load_or_build_with(basis, spec, seed, dir, progress)
}

pub fn load_or_build_with(basis: Arc<CellularBasis>, spec: FieldSpec, seed: u64, dir: Option<&Path>, progress: &(dyn Fn(&str) + Sync)) -> Result<Algebra> {
    let (r, s) = (basis.r, basis.s);
    if let Some(d) = dir {
        let f = cache_file(d, r, s, &spec);
        if let Ok(text) = std::fs::read_to_string(&f) {
            match deserialize(&text, basis.clone(), spec, seed) {
                Ok(l) => return Ok(l.algebra),
                Err(e) => progress(&format!("ignoring cache {}: {e}", f.display())),
            }
        }
    }
    let a = if spec == FieldSpec::Generic {
        progress(&format!("interpolating generic constants for B_{{{r},{s}}}"));
        Algebra::generic(basis, seed, progress)?
    } else {
        load_or_build_with(basis, FieldSpec::Generic, seed, dir, progress)?.specialize(spec)?
    };
    if let Some(d) = dir {
        store(d, &a, None)?;
    }
    Ok(a)
}

pub fn store(dir: &Path, a: &Algebra, products: Option<&[Vec<SparseRow>]>) -> Result<PathBuf> {
    std::fs::create_dir_all(dir).map_err(|e| bad(e.to_string()))?;
    let f = cache_file(dir, a.basis.r, a.basis.s, &a.spec);
    let tmp = f.with_extension("tmp");
    std::fs::write(&tmp, serialize(a, products)).map_err(|e| bad(e.to_string()))?;
    std::fs::rename(&tmp, &f).map_err(|e| bad(e.to_string()))?;
    Ok(f)
}

/// Reads the product table of a cached file, if one was stored.
pub fn load_products(dir: &Path, basis: Arc<CellularBasis>, spec: FieldSpec, seed: u64) -> Option<Vec<Vec<SparseRow>>> {
    let text = std::fs::read_to_string(cache_file(dir, basis.r, basis.s, &spec)).ok()?;
    deserialize(&text, basis, spec, seed).ok()?.products
}
