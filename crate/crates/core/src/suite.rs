//! Named invariant checks over a fixed, versioned parameter grid. Shared by
//! the acceptance target and `wbq verify`.

use crate::combinatorics::enumerate_labels;
use crate::engine::{CellularBasis, CoordSystem};
use crate::error::Result;
use crate::repthy::oracles::{alt_cell_realization, blocks1_check, einfty_check, einfty_stable_from, singular_report, tensor_relation_failures, trace_table};
use crate::repthy::{cell_module, cell_module_singular, cyclotomic_for_e, gram_matrix, semisimplicity, Family, GramMatrix};
use crate::scalars::{rat, Cyc, FieldSpec, Fp, RatFn, RhoSpec, Ring, P1};
use crate::tensor::TensorParams;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeSet;

/// Bumped whenever the grid below changes.
pub const GRID_VERSION: u32 = 1;
/// Quantum characteristics on the grid; `None` is e = ∞.
pub const GRID_E: [Option<u32>; 3] = [Some(2), Some(3), None];
/// ρ = q^a for these a, plus ρ free.
pub const GRID_RHO_POWERS: [i64; 7] = [-2, -1, 0, 1, 2, 3, 4];
/// Random vectors for the relation suite when r+s = 5.
pub const RELATION_SAMPLES: usize = 50;

#[derive(Clone, Debug)]
pub struct Check {
    pub id: String,
    pub passed: bool,
    pub detail: String,
}

impl Check {
    fn new(id: impl Into<String>, passed: bool, detail: impl Into<String>) -> Self {
        Check { id: id.into(), passed, detail: detail.into() }
    }
    fn from_result(id: impl Into<String>, r: Result<(bool, String)>) -> Self {
        match r {
            Ok((p, d)) => Check::new(id, p, d),
            Err(e) => Check::new(id, false, format!("error {}: {e}", e.name())),
        }
    }
}

/// Field for quantum characteristic e (None = ∞) and ρ = q^a (None = free).
pub fn grid_spec(e: Option<u32>, a: Option<i64>) -> FieldSpec {
    match (e, a) {
        (None, None) => FieldSpec::Generic,
        (None, Some(a)) => FieldSpec::QPower(a),
        (Some(e), None) => cyclotomic_for_e(e, RhoSpec::Free),
        (Some(e), Some(a)) => cyclotomic_for_e(e, RhoSpec::Power(a)),
    }
}

pub fn grid_specs() -> Vec<FieldSpec> {
    let mut out = vec![];
    for e in GRID_E {
        for a in GRID_RHO_POWERS.iter().map(|&a| Some(a)).chain([None]) {
            out.push(grid_spec(e, a));
        }
    }
    out
}

/// (r,s) with r,s ≥ 1 and r+s ≤ max_total.
pub fn grid_shapes(max_total: usize) -> Vec<(usize, usize)> {
    let mut out = vec![];
    for t in 2..=max_total {
        for r in (1..t).rev() {
            out.push((r, t - r));
        }
    }
    out
}

/// The cellular basis images in V^{r,s} (n = r+s) have rank (r+s)!. Checked at
/// a random point of F_p, which bounds the rank over Q(q) from below.
pub fn check_rank(r: usize, s: usize, seed: u64) -> Check {
    let id = format!("rank ({r},{s})");
    let b = CellularBasis::new(r, s);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let q0 = Fp::<P1>::new(rng.gen_range(2..P1 - 1));
    let res = CoordSystem::build(&b, TensorParams::new(r + s, q0), seed).map(|c| (c.rank() == b.len(), format!("rank {} of {} with {} seeds", c.rank(), b.len(), c.seeds.len())));
    Check::from_result(id, res)
}

/// Defining relations as operators on V^{r,s}, n = r+s: exhaustive for
/// r+s ≤ 4, random vectors beyond.
pub fn check_relations(r: usize, s: usize, seed: u64) -> Check {
    let sample = (r + s > 4).then_some((RELATION_SAMPLES, seed));
    let res = tensor_relation_failures(r, s, r + s, sample).map(|f| {
        let how = if sample.is_some() { format!("{RELATION_SAMPLES} random vectors") } else { "all basis vectors".into() };
        (f.is_empty(), if f.is_empty() { how } else { format!("failing: {}", f.join(", ")) })
    });
    Check::from_result(format!("relations ({r},{s})"), res)
}

/// Constructed singular vectors are singular, independent and span the
/// singular space, for every label; `e = None` means q generic.
pub fn check_singular(r: usize, s: usize, e: Option<u32>) -> Check {
    let id = format!("singular ({r},{s}) e={}", e.map_or("inf".to_string(), |x| x.to_string()));
    let n = r + s;
    let res = (|| -> Result<(bool, String)> {
        let mut bad = vec![];
        let mut count = 0;
        for l in enumerate_labels(r, s)? {
            let rep = match e {
                None => singular_report(&l, &TensorParams::new(n, RatFn::var_pow(&rat(0), -1)))?,
                Some(e) => {
                    let FieldSpec::Cyclotomic { m, .. } = cyclotomic_for_e(e, RhoSpec::Free) else { unreachable!() };
                    singular_report(&l, &TensorParams::new(n, Cyc::zeta_pow(m, -1)))?
                }
            };
            count += 1;
            if !rep.ok() {
                bad.push(format!("{l}: {rep:?}"));
            }
        }
        Ok((bad.is_empty(), if bad.is_empty() { format!("{count} labels") } else { bad.join("; ") }))
    })();
    Check::from_result(id, res)
}

/// Computed semisimplicity agrees with the closed form.
pub fn check_semisimple(fam: &Family, r: usize, s: usize, spec: FieldSpec) -> (Check, Option<bool>) {
    let id = format!("semisimple ({r},{s}) {spec}");
    match fam.algebra(r, s, spec).and_then(|a| semisimplicity(&a)) {
        Ok((c, p)) => (Check::new(id, c == p, format!("computed {c}, predicted {p}")), Some(c)),
        Err(e) => (Check::new(id, false, format!("error {}: {e}", e.name())), None),
    }
}

/// Semisimplicity over the whole grid for every (r,s) with r+s ≤ max_total,
/// plus the exact list of (r,s) that are semisimple with δ = 0.
pub fn check_semisimple_grid(fam: &Family, max_total: usize) -> Vec<Check> {
    let mut out = vec![];
    let mut delta0 = BTreeSet::new();
    for (r, s) in grid_shapes(max_total) {
        for spec in grid_specs() {
            let (c, semi) = check_semisimple(fam, r, s, spec);
            if semi == Some(true) && spec.delta().is_zero() {
                delta0.insert((r, s));
            }
            out.push(c);
        }
    }
    let want: BTreeSet<(usize, usize)> = [(1, 2), (2, 1), (1, 3), (3, 1)].into_iter().filter(|&(r, s)| r + s <= max_total).collect();
    out.push(Check::new("semisimple with delta = 0", delta0 == want, format!("{delta0:?}")));
    out
}

pub fn check_blocks1(fam: &Family, r: usize, s: usize, e: u32) -> Check {
    let spec = cyclotomic_for_e(e, RhoSpec::Free);
    let res = blocks1_check(fam, r, s, spec).map(|rep| {
        let d = if rep.ok() { "entrywise identity and single-layer blocks".to_string() } else { format!("{:?} single-layer blocks: {}", rep.mismatches, rep.blocks_single_layer) };
        (rep.ok(), d)
    });
    Check::from_result(format!("layer identity ({r},{s}) {spec}"), res)
}

pub fn check_einfty(fam: &Family, r: usize, s: usize, a: i64, es: &[u32]) -> Check {
    let emax = es.iter().copied().max().unwrap_or(2);
    let res = einfty_check(fam, r, s, a, es).and_then(|rep| {
        let from = einfty_stable_from(fam, r, s, a, emax)?;
        let from = from.map_or("not observed".to_string(), |e| format!("from e={e}"));
        Ok((rep.ok(), format!("{:?}, stable {from}", rep.per_e)))
    });
    Check::from_result(format!("large e ({r},{s}) rho=q^{a}"), res)
}

/// Structure-constant and singular-vector cell modules at ρ = q^{r+s}: equal
/// form ranks and equal traces of every basis element.
pub fn check_routes(fam: &Family, r: usize, s: usize) -> Check {
    let spec = FieldSpec::QPower((r + s) as i64);
    let res = (|| -> Result<(bool, String)> {
        let a = fam.algebra(r, s, spec)?;
        let mut bad = vec![];
        for l in 0..a.basis.labels.len() {
            let sc = cell_module(&a, l)?;
            let sv = cell_module_singular(&a.basis.labels[l], spec)?;
            let rk_sc = gram_matrix(&a.basis, &sc).rank;
            let rk_sv = GramMatrix::from_matrix(sv.label.clone(), sv.form.clone().unwrap_or_default()).rank;
            if rk_sc != rk_sv || trace_table(&a.basis, &sc.rep) != trace_table(&a.basis, &sv.rep) {
                bad.push(a.basis.labels[l].to_string());
            }
        }
        Ok((bad.is_empty(), if bad.is_empty() { format!("{} labels", a.basis.labels.len()) } else { format!("disagree at {}", bad.join(", ")) }))
    })();
    Check::from_result(format!("routes ({r},{s}) {spec}"), res)
}

pub fn check_classcell(fam: &Family, r: usize, s: usize, spec: FieldSpec) -> Check {
    let res = (|| -> Result<(bool, String)> {
        let a = fam.algebra(r, s, spec)?;
        let mut bad = vec![];
        for l in 0..a.basis.labels.len() {
            let m = cell_module(&a, l)?;
            let rep = alt_cell_realization(&a, l, &m)?;
            if !rep.ok() {
                bad.push(format!("{}: dim {} vs {}", rep.label, rep.dim, rep.cell_dim));
            }
        }
        Ok((bad.is_empty(), if bad.is_empty() { format!("{} labels", a.basis.labels.len()) } else { bad.join("; ") }))
    })();
    Check::from_result(format!("alternative cell realization ({r},{s}) {spec}"), res)
}

pub fn check_schur_weyl(n: usize, r: usize, s: usize, seed: u64) -> Check {
    let res = crate::repthy::schur_weyl_rank(n, r, s, seed).map(|x| {
        let expect_full = n >= r + s;
        (x.faithful() == expect_full, format!("rank {} of {}", x.rank, x.full))
    });
    Check::from_result(format!("schur-weyl n={n} ({r},{s})"), res)
}
