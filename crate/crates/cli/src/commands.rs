use crate::output;
use crate::{CacheCmd, Cli, Cmd, Config, Failure, Format};
use rayon::prelude::*;
use serde_json::{json, Value};
use std::path::PathBuf;
use std::sync::Arc;
use wbq_core::combinatorics::{enumerate_labels, CellLabel, Partition};
use wbq_core::engine::cache;
use wbq_core::repthy::decomp::decompose;
use wbq_core::repthy::oracles::{blocks1_check, singular_report};
use wbq_core::repthy::{analyze, blocks, cyclotomic_for_e, decomposition_matrix, gram_matrix, cell_module, predicted_semisimple, schur_weyl_rank, Family};
use wbq_core::scalars::{rat, Cyc, Field, FieldSpec, RatFn, RhoSpec, Scalar};
use wbq_core::suite::{self, Check};
use wbq_core::tensor::{singular_vectors, TensorParams, TensorVector};

/// Text for stdout, plus the reason for exit code 2 when an oracle disagreed.
pub struct Report {
    pub text: String,
    pub failed: Option<String>,
}

impl Report {
    fn ok(text: String) -> Self {
        Report { text, failed: None }
    }
}

/// Quantum characteristics used for the large-e comparison.
const LARGE_E: [u32; 2] = [7, 11];

pub fn run(cli: &Cli) -> Result<Report, Failure> {
    let cfg = &cli.cfg;
    let spec: FieldSpec = cfg.field.parse()?;
    spec.validate()?;
    match &cli.cmd {
        Cmd::Decomp => decomp(cfg, spec),
        Cmd::Verify => verify(cfg),
        Cmd::Gram => gram(cfg, spec),
        Cmd::Blocks => blocks_cmd(cfg, spec),
        Cmd::Semisimple => semisimple(cfg, spec),
        Cmd::Singular => singular(cfg, spec),
        Cmd::SchurWeyl => schur_weyl(cfg),
        Cmd::Cache { action } => cache_cmd(cfg, spec, action),
    }
}

fn shape(cfg: &Config) -> Result<(usize, usize), Failure> {
    match (cfg.r, cfg.s) {
        (Some(r), Some(s)) if r >= 1 && s >= 1 => Ok((r, s)),
        (Some(_), Some(_)) => Err(Failure::Usage("--r and --s must be positive".into())),
        _ => Err(Failure::Usage("--r and --s are required".into())),
    }
}

fn cache_dir(cfg: &Config) -> Option<PathBuf> {
    cfg.cache_dir.clone().or_else(|| std::env::var_os("WBQ_CACHE_DIR").filter(|v| !v.is_empty()).map(PathBuf::from))
}

fn family(cfg: &Config) -> Family {
    Family::new(cfg.seed, cache_dir(cfg), Arc::new(|m: &str| eprintln!("{m}")))
}

fn header(r: usize, s: usize, spec: FieldSpec) -> serde_json::Map<String, Value> {
    let mut m = serde_json::Map::new();
    m.insert("r".into(), json!(r));
    m.insert("s".into(), json!(s));
    m.insert("field".into(), spec.to_json());
    m
}

fn labels_json(ls: &[CellLabel]) -> Value {
    Value::Array(ls.iter().map(|l| l.to_json()).collect())
}

fn decomp(cfg: &Config, spec: FieldSpec) -> Result<Report, Failure> {
    let (r, s) = shape(cfg)?;
    let fam = family(cfg);
    let alg = fam.algebra(r, s, spec)?;
    let data = analyze(&alg)?;
    let labels = alg.basis.labels.clone();
    let d = decompose(&data, &labels, &spec.zero())?;
    let square: Vec<Vec<i64>> = (0..labels.len()).map(|i| (0..labels.len()).map(|j| d.get(i, j)).collect()).collect();
    let bl = blocks(&d);
    let computed = data.iter().all(|c| c.gram.is_nondegenerate());
    let predicted = predicted_semisimple(r, s, &spec);
    let blocks1 = match spec {
        FieldSpec::Cyclotomic { rho: RhoSpec::Free, .. } => Some(blocks1_check(&fam, r, s, spec)?.ok()),
        _ => None,
    };
    // compare with the e = ∞ specialization at the same ρ = q^a
    let einfty = match spec {
        FieldSpec::QPower(a) => Some(LARGE_E.iter().map(|&e| Ok(decomposition_matrix(&fam.algebra(r, s, cyclotomic_for_e(e, RhoSpec::Power(a)))?)? == d)).collect::<Result<Vec<bool>, Failure>>()?.into_iter().all(|x| x)),
        FieldSpec::Cyclotomic { rho: RhoSpec::Power(a), .. } if spec.quantum_characteristic().exceeds(6) => Some(decomposition_matrix(&fam.algebra(r, s, FieldSpec::QPower(a))?)? == d),
        _ => None,
    };
    let mut failed = vec![];
    if computed != predicted {
        failed.push(format!("OracleMismatch: semisimplicity computed {computed}, predicted {predicted}"));
    }
    if blocks1 == Some(false) {
        failed.push("OracleMismatch: layer identity of decomposition numbers".to_string());
    }
    if einfty == Some(false) {
        failed.push("OracleMismatch: large-e decomposition differs from e = infinity".to_string());
    }
    let text = match cfg.output {
        Format::Json => {
            let mut m = header(r, s, spec);
            m.insert("labels".into(), labels_json(&labels));
            m.insert("cell_dims".into(), json!(data.iter().map(|c| c.module.dim()).collect::<Vec<_>>()));
            m.insert("gram_ranks".into(), json!(data.iter().map(|c| c.gram.rank).collect::<Vec<_>>()));
            m.insert("decomposition".into(), json!(square));
            m.insert("simple_columns".into(), json!(d.columns));
            m.insert("blocks".into(), json!(bl));
            m.insert("oracles".into(), json!({"semisimple": {"computed": computed, "predicted": predicted}, "blocks1": blocks1, "einfty": einfty}));
            output::json(&Value::Object(m))
        }
        Format::Latex => output::latex_table(&labels, &square),
        Format::Csv => output::csv_table(&labels, &square),
    };
    Ok(Report { text, failed: (!failed.is_empty()).then(|| failed.join("; ")) })
}

fn gram(cfg: &Config, spec: FieldSpec) -> Result<Report, Failure> {
    let (r, s) = shape(cfg)?;
    let alg = family(cfg).algebra(r, s, spec)?;
    let grams = (0..alg.basis.labels.len())
        .into_par_iter()
        .map(|l| cell_module(&alg, l).map(|m| gram_matrix(&alg.basis, &m)))
        .collect::<Result<Vec<_>, _>>()?;
    let text_of = |m: &[Vec<Scalar>]| -> Vec<Vec<String>> { m.iter().map(|row| row.iter().map(|x| x.to_text()).collect()).collect() };
    let text = match cfg.output {
        Format::Json => {
            let mut m = header(r, s, spec);
            let gs: Vec<Value> = grams.iter().map(|g| json!({"label": g.label.to_json(), "dim": g.matrix.len(), "rank": g.rank, "matrix": text_of(&g.matrix)})).collect();
            m.insert("grams".into(), Value::Array(gs));
            output::json(&Value::Object(m))
        }
        Format::Latex | Format::Csv => {
            let header = ["label", "dim", "rank", "matrix"].map(String::from).to_vec();
            let rows: Vec<Vec<String>> = grams
                .iter()
                .map(|g| {
                    let mat = text_of(&g.matrix).iter().map(|r| format!("[{}]", r.join(", "))).collect::<Vec<_>>().join(" ");
                    vec![g.label.to_string(), g.matrix.len().to_string(), g.rank.to_string(), mat]
                })
                .collect();
            if cfg.output == Format::Csv { output::csv(&header, &rows) } else { output::latex_rows(&header, &rows) }
        }
    };
    Ok(Report::ok(text))
}

fn blocks_cmd(cfg: &Config, spec: FieldSpec) -> Result<Report, Failure> {
    let (r, s) = shape(cfg)?;
    let d = decomposition_matrix(&family(cfg).algebra(r, s, spec)?)?;
    let bl = blocks(&d);
    let text = match cfg.output {
        Format::Json => {
            let mut m = header(r, s, spec);
            m.insert("labels".into(), labels_json(&d.labels));
            m.insert("blocks".into(), json!(bl));
            output::json(&Value::Object(m))
        }
        _ => {
            let header = ["block", "label"].map(String::from).to_vec();
            let rows: Vec<Vec<String>> = bl.iter().enumerate().flat_map(|(b, ls)| ls.iter().map(move |&l| (b, l))).map(|(b, l)| vec![b.to_string(), d.labels[l].to_string()]).collect();
            if cfg.output == Format::Csv { output::csv(&header, &rows) } else { output::latex_rows(&header, &rows) }
        }
    };
    Ok(Report::ok(text))
}

fn semisimple(cfg: &Config, spec: FieldSpec) -> Result<Report, Failure> {
    let (r, s) = shape(cfg)?;
    let alg = family(cfg).algebra(r, s, spec)?;
    let (computed, predicted) = wbq_core::repthy::semisimplicity(&alg)?;
    let text = match cfg.output {
        Format::Json => {
            let mut m = header(r, s, spec);
            m.insert("computed".into(), json!(computed));
            m.insert("predicted".into(), json!(predicted));
            output::json(&Value::Object(m))
        }
        _ => {
            let header = ["r", "s", "field", "computed", "predicted"].map(String::from).to_vec();
            let rows = vec![vec![r.to_string(), s.to_string(), spec.to_string(), computed.to_string(), predicted.to_string()]];
            if cfg.output == Format::Csv { output::csv(&header, &rows) } else { output::latex_rows(&header, &rows) }
        }
    };
    let failed = (computed != predicted).then(|| format!("OracleMismatch: semisimplicity computed {computed}, predicted {predicted}"));
    Ok(Report { text, failed })
}

fn parse_partition(s: Option<&String>) -> Result<Partition, Failure> {
    let s = s.map(|x| x.trim()).unwrap_or("");
    let parts = s
        .split(',')
        .map(str::trim)
        .filter(|x| !x.is_empty())
        .map(|x| x.parse::<usize>().map_err(|_| Failure::Usage(format!("bad partition part '{x}'"))))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Partition::new(parts)?)
}

fn singular(cfg: &Config, spec: FieldSpec) -> Result<Report, Failure> {
    let (r, s) = shape(cfg)?;
    let f = cfg.f.ok_or_else(|| Failure::Usage("--f is required".into()))?;
    let label = CellLabel::new(f, parse_partition(cfg.lambda1.as_ref())?, parse_partition(cfg.lambda2.as_ref())?);
    if !enumerate_labels(r, s)?.contains(&label) {
        return Err(Failure::Usage(format!("{label} is not a label of B_{{{r},{s}}}")));
    }
    let n = cfg.n.unwrap_or(r + s);
    match spec {
        FieldSpec::Cyclotomic { m, .. } => singular_out(cfg, spec, &label, &TensorParams::new(n, Cyc::zeta_pow(m, -1)), Scalar::Cy),
        _ => singular_out(cfg, spec, &label, &TensorParams::new(n, RatFn::var_pow(&rat(0), -1)), Scalar::Q),
    }
}

fn singular_out<K: Field>(cfg: &Config, spec: FieldSpec, label: &CellLabel, p: &TensorParams<K>, wrap: fn(K) -> Scalar) -> Result<Report, Failure> {
    let rep = singular_report(label, p)?;
    let vs: Vec<TensorVector<K>> = singular_vectors(label, p)?;
    let terms = |v: &TensorVector<K>| -> Vec<(Vec<usize>, Vec<usize>, String)> { v.entries().map(|(ix, c)| (ix.i, ix.j, wrap(c.clone()).to_text())).collect() };
    let text = match cfg.output {
        Format::Json => {
            let mut m = header(label.r(), label.s(), spec);
            m.insert("n".into(), json!(p.n));
            m.insert("label".into(), label.to_json());
            m.insert("expected_dim".into(), json!(rep.expected));
            m.insert("singular_dim".into(), json!(rep.singular_dim));
            let basis: Vec<Value> = vs.iter().map(|v| Value::Array(terms(v).into_iter().map(|(i, j, c)| json!({"i": i, "j": j, "coeff": c})).collect())).collect();
            m.insert("basis".into(), Value::Array(basis));
            output::json(&Value::Object(m))
        }
        _ => {
            let header = ["vector", "i", "j", "coeff"].map(String::from).to_vec();
            let fmt = |x: &[usize]| x.iter().map(|d| d.to_string()).collect::<Vec<_>>().join(" ");
            let rows: Vec<Vec<String>> = vs.iter().enumerate().flat_map(|(k, v)| terms(v).into_iter().map(move |(i, j, c)| vec![k.to_string(), fmt(&i), fmt(&j), c])).collect();
            if cfg.output == Format::Csv { output::csv(&header, &rows) } else { output::latex_rows(&header, &rows) }
        }
    };
    let failed = (!rep.ok()).then(|| format!("OracleMismatch: singular vectors {rep:?}"));
    Ok(Report { text, failed })
}

fn schur_weyl(cfg: &Config) -> Result<Report, Failure> {
    let (r, s) = shape(cfg)?;
    let n = cfg.n.unwrap_or(r + s);
    let x = schur_weyl_rank(n, r, s, cfg.seed)?;
    let expected = n >= r + s;
    let text = match cfg.output {
        Format::Json => output::json(&json!({"n": n, "r": r, "s": s, "rank": x.rank, "factorial": x.full, "equal": x.faithful(), "expected_equal": expected})),
        _ => {
            let header = ["n", "r", "s", "rank", "factorial", "equal"].map(String::from).to_vec();
            let rows = vec![[n, r, s, x.rank, x.full].iter().map(|v| v.to_string()).chain([x.faithful().to_string()]).collect()];
            if cfg.output == Format::Csv { output::csv(&header, &rows) } else { output::latex_rows(&header, &rows) }
        }
    };
    let failed = (x.faithful() != expected).then(|| format!("OracleMismatch: rank {} of {} at n={n}", x.rank, x.full));
    Ok(Report { text, failed })
}

fn cache_cmd(cfg: &Config, spec: FieldSpec, action: &CacheCmd) -> Result<Report, Failure> {
    let dir = cache_dir(cfg).ok_or_else(|| Failure::Usage("no cache directory: pass --cache-dir or set WBQ_CACHE_DIR".into()))?;
    let v = match action {
        CacheCmd::List => json!({"cache_dir": dir, "files": cache::list(&dir)?.iter().filter_map(|p| p.file_name()).map(|n| n.to_string_lossy().into_owned()).collect::<Vec<_>>()}),
        CacheCmd::Clear => json!({"cache_dir": dir, "removed": cache::clear(&dir)?}),
        CacheCmd::Build => {
            let (r, s) = shape(cfg)?;
            let file = cache::cache_file(&dir, r, s, &spec);
            let existed = file.exists();
            cache::load_or_build(r, s, spec, cfg.seed, Some(&dir), &|m: &str| eprintln!("{m}"))?;
            json!({"cache_dir": dir, "file": file.file_name().map(|n| n.to_string_lossy().into_owned()), "built": !existed})
        }
    };
    Ok(Report::ok(output::json(&v)))
}

const FAMILIES: [&str; 9] = ["relations", "rank", "singular", "semisimple", "blocks1", "einfty", "routes", "classcell", "schur-weyl"];

type Job<'a> = Box<dyn Fn() -> Vec<Check> + Send + Sync + 'a>;

fn verify(cfg: &Config) -> Result<Report, Failure> {
    let only: Vec<&str> = match &cfg.only {
        Some(x) => x.split(',').map(str::trim).filter(|x| !x.is_empty()).collect(),
        None => FAMILIES.to_vec(),
    };
    if let Some(bad) = only.iter().find(|x| !FAMILIES.contains(x)) {
        return Err(Failure::Usage(format!("unknown check family '{bad}' (expected one of {})", FAMILIES.join(", "))));
    }
    let shapes = match (cfg.r, cfg.s) {
        (None, None) => suite::grid_shapes(3),
        _ => vec![shape(cfg)?],
    };
    let seed = cfg.seed;
    let fam = family(cfg);
    let fam = &fam;
    let mut jobs: Vec<Job> = vec![];
    for &fam_name in &only {
        for &(r, s) in &shapes {
            match fam_name {
                "relations" => jobs.push(Box::new(move || vec![suite::check_relations(r, s, seed)])),
                "rank" => jobs.push(Box::new(move || vec![suite::check_rank(r, s, seed)])),
                "singular" => jobs.push(Box::new(move || [None, Some(2), Some(3)].into_iter().map(|e| suite::check_singular(r, s, e)).collect())),
                "semisimple" => jobs.push(Box::new(move || suite::grid_specs().into_iter().map(|sp| suite::check_semisimple(fam, r, s, sp).0).collect())),
                "blocks1" => jobs.push(Box::new(move || [2, 3].into_iter().map(|e| suite::check_blocks1(fam, r, s, e)).collect())),
                "einfty" => jobs.push(Box::new(move || [0, 1].into_iter().map(|a| suite::check_einfty(fam, r, s, a, &LARGE_E)).collect())),
                "routes" => jobs.push(Box::new(move || vec![suite::check_routes(fam, r, s)])),
                "classcell" => jobs.push(Box::new(move || vec![suite::check_classcell(fam, r, s, FieldSpec::Generic)])),
                "schur-weyl" => jobs.push(Box::new(move || (r + s - 1..=r + s).map(|n| suite::check_schur_weyl(n, r, s, seed)).collect())),
                _ => unreachable!(),
            }
        }
    }
    let checks: Vec<Check> = jobs.par_iter().map(|j| j()).collect::<Vec<_>>().into_iter().flatten().collect();
    let failing: Vec<&str> = checks.iter().filter(|c| !c.passed).map(|c| c.id.as_str()).collect();
    let text = match cfg.output {
        Format::Json => output::json(&json!({
            "grid_version": suite::GRID_VERSION,
            "passed": failing.is_empty(),
            "checks": checks.iter().map(|c| json!({"id": c.id, "passed": c.passed, "detail": c.detail})).collect::<Vec<_>>(),
        })),
        _ => {
            let header = ["check", "result", "detail"].map(String::from).to_vec();
            let rows: Vec<Vec<String>> = checks.iter().map(|c| vec![c.id.clone(), if c.passed { "pass" } else { "FAIL" }.to_string(), c.detail.clone()]).collect();
            if cfg.output == Format::Csv { output::csv(&header, &rows) } else { output::latex_rows(&header, &rows) }
        }
    };
    let failed = (!failing.is_empty()).then(|| format!("failing: {}", failing.join(", ")));
    Ok(Report { text, failed })
}
