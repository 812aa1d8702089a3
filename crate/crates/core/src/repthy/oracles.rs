//! Structural checks: the alternative cell realization, the Schur–Weyl rank,
//! singular-vector classification, relations on tensor space, and the
//! decomposition-number identities across layers and across e.

use super::cell::CellModule;
use super::decomp::{blocks, decomposition_matrix, trace_vector, DecompositionMatrix};
use super::rep::Rep;
use crate::combinatorics::{coset_reps, initial_tableaux, phi_map, standard_tableaux, CellLabel};
use crate::engine::basis::dt_word;
use crate::engine::{cache, Algebra, CellularBasis};
use crate::error::{Result, WbqError};
use crate::linalg::{kernel, rank, transpose, Mat, RowSolver};
use crate::relations::defining_relations;
use crate::scalars::{rat, Field, FieldSpec, Fp, RatFn, RhoSpec, Ring, Scalar, P1};
use crate::tensor::{act_divided_power, act_plain_word, singular_space, singular_vectors, DenseRep, Shape, Space, TensorParams, TensorVector};
use crate::words::{e_word, young_symmetrizer_word, Elem, Symmetrizer};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::HashMap;
use std::path::PathBuf;
use std::sync::{Arc, Mutex};

pub type Progress = Arc<dyn Fn(&str) + Send + Sync>;

/// Algebras B_{r,s} over any field, specialized from one Generic build per
/// (r,s). With a cache directory every build goes through the cache.
pub struct Family {
    pub seed: u64,
    pub cache_dir: Option<PathBuf>,
    progress: Progress,
    generic: Mutex<HashMap<(usize, usize), Arc<Algebra>>>,
}

impl Family {
    pub fn new(seed: u64, cache_dir: Option<PathBuf>, progress: Progress) -> Self {
        Family { seed, cache_dir, progress, generic: Mutex::new(HashMap::new()) }
    }
    pub fn quiet(seed: u64) -> Self {
        Family::new(seed, None, Arc::new(|_| {}))
    }

    pub fn generic(&self, r: usize, s: usize) -> Result<Arc<Algebra>> {
        if let Some(a) = self.generic.lock().unwrap().get(&(r, s)) {
            return Ok(a.clone());
        }
        let p = self.progress.clone();
        let a = Arc::new(cache::load_or_build(r, s, FieldSpec::Generic, self.seed, self.cache_dir.as_deref(), &move |m| p(m))?);
        self.generic.lock().unwrap().insert((r, s), a.clone());
        Ok(a)
    }

    pub fn algebra(&self, r: usize, s: usize, spec: FieldSpec) -> Result<Algebra> {
        spec.validate()?;
        if spec == FieldSpec::Generic {
            return Ok((*self.generic(r, s)?).clone());
        }
        if self.cache_dir.is_some() {
            let p = self.progress.clone();
            return cache::load_or_build(r, s, spec, self.seed, self.cache_dir.as_deref(), &move |m| p(m));
        }
        self.generic(r, s)?.specialize(spec)
    }
}

/// The cyclotomic field in which q² has multiplicative order e.
pub fn cyclotomic_for_e(e: u32, rho: RhoSpec) -> FieldSpec {
    let m = if e % 2 == 1 { e } else { 2 * e };
    FieldSpec::Cyclotomic { m, rho }
}

// ---------------------------------------------------------------------------

#[derive(Clone, Debug)]
pub struct AltCellReport {
    pub label: CellLabel,
    pub dim: usize,
    pub cell_dim: usize,
    pub traces_match: bool,
}

impl AltCellReport {
    pub fn ok(&self) -> bool {
        self.dim == self.cell_dim && self.traces_match
    }
}

/// e^f·m_{λ′}·g_{d(t_{λ′})}·n_λ
pub fn alt_cell_generator(label: &CellLabel) -> Elem {
    let c = label.conjugate();
    let (_, t_col) = initial_tableaux(&c.l1, &c.l2, label.f);
    Elem::word(e_word(label.f))
        .mul(&young_symmetrizer_word(&c.l1, &c.l2, label.f, Symmetrizer::M))
        .mul(&Elem::word(dt_word(&t_col)))
        .mul(&young_symmetrizer_word(&label.l1, &label.l2, label.f, Symmetrizer::N))
}

/// Echelon rows with distinct pivots, each reduced against the earlier ones.
struct Echelon {
    rows: Vec<(usize, Vec<Scalar>)>,
}

impl Echelon {
    fn reduce(&self, v: &[Scalar]) -> Vec<Scalar> {
        let mut v = v.to_vec();
        for (p, row) in &self.rows {
            let f = v[*p].clone();
            if !f.is_zero() {
                for (x, y) in v.iter_mut().zip(row) {
                    if !y.is_zero() {
                        *x = x.sub(&f.mul(y));
                    }
                }
            }
        }
        v
    }
    /// Adds v if it is new; returns whether it was.
    fn insert(&mut self, v: &[Scalar]) -> bool {
        let w = self.reduce(v);
        let Some(p) = w.iter().position(|x| !x.is_zero()) else { return false };
        let inv = w[p].inv().unwrap();
        self.rows.push((p, w.iter().map(|x| x.mul(&inv)).collect()));
        true
    }
}

/// The right module generated by the image of `alt_cell_generator` in
/// B_{r,s}/B^{f+1}, where B^{f+1} is spanned by the basis elements of layer > f;
/// compared with C(f,λ) by dimension and by traces of all basis elements.
pub fn alt_cell_realization(alg: &Algebra, label: usize, cell: &CellModule) -> Result<AltCellReport> {
    let b = &alg.basis;
    let lab = &b.labels[label];
    let high: Vec<bool> = b.elems.iter().map(|e| b.labels[e.label].f > lab.f).collect();
    let modi = |mut v: Vec<Scalar>| {
        for (x, h) in v.iter_mut().zip(&high) {
            if *h {
                *x = x.zero_like();
            }
        }
        v
    };
    let start = modi(alg.coords(&alt_cell_generator(lab)));
    let mut ech = Echelon { rows: vec![] };
    let mut span: Vec<Vec<Scalar>> = vec![];
    let mut queue = vec![start];
    while let Some(v) = queue.pop() {
        if !ech.insert(&v) {
            continue;
        }
        for g in b.generators() {
            queue.push(modi(alg.act_gen(&v, g)));
        }
        span.push(v);
    }
    let z = alg.zero();
    let solver = RowSolver::new(&span, &z);
    let mut gens = vec![];
    for g in b.generators() {
        let m = span
            .iter()
            .map(|v| solver.express(&modi(alg.act_gen(v, g))).ok_or_else(|| WbqError::NotInSpan("generated module is not closed".into())))
            .collect::<Result<Mat<Scalar>>>()?;
        gens.push((g, m));
    }
    let rep = Rep::new(alg.spec, span.len(), gens);
    let traces_match = span.len() == cell.dim() && trace_vector(b, &rep) == trace_vector(b, &cell.rep);
    Ok(AltCellReport { label: lab.clone(), dim: span.len(), cell_dim: cell.dim(), traces_match })
}

pub fn alt_cell_realization_check(alg: &Algebra, label: usize) -> Result<bool> {
    let cell = super::cell::cell_module(alg, label)?;
    Ok(alt_cell_realization(alg, label, &cell)?.ok())
}

/// Span of the layer > f basis elements is closed under right multiplication
/// by every generator.
pub fn layer_ideal_is_closed(alg: &Algebra, f: usize) -> bool {
    let b = &alg.basis;
    let high = |i: usize| b.labels[b.elems[i].label].f > f;
    b.generators().into_iter().all(|g| {
        let m = alg.matrix(g);
        (0..b.len()).filter(|&i| high(i)).all(|i| m[i].iter().all(|(k, _)| high(*k)))
    })
}

// ---------------------------------------------------------------------------

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SchurWeylRank {
    pub n: usize,
    pub r: usize,
    pub s: usize,
    pub rank: usize,
    /// (r+s)!
    pub full: usize,
}

impl SchurWeylRank {
    pub fn faithful(&self) -> bool {
        self.rank == self.full
    }
}

fn presentation_params(n: usize) -> TensorParams<RatFn> {
    TensorParams::new(n, RatFn::var_pow(&rat(0), -1))
}

/// Dimension of the span of the operators of all cellular basis elements on
/// V^{r,s} (ρ = q^n). A rank at a random point of F_p bounds it from below;
/// when that falls short of (r+s)!, the missing kernel is computed over Q(q)
/// and verified to act as zero on every basis vector.
pub fn schur_weyl_rank(n: usize, r: usize, s: usize, seed: u64) -> Result<SchurWeylRank> {
    if n == 0 {
        return Err(WbqError::InvalidInput("n must be positive".into()));
    }
    let basis = CellularBasis::new(r, s);
    let full = basis.len();
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5357);
    let q0 = Fp::<P1>::new(rng.gen_range(2..P1 - 1));
    // operator images seed by seed, in batches of doubling size, until the
    // rank is full or every basis vector of V^{r,s} has been used
    let fp = DenseRep::new(Space::full(Shape::new(n, r, s)), TensorParams::new(n, q0.inv().unwrap()));
    let fz = fp.zero();
    let dim = fp.space.dim();
    let mut images: Mat<Fp<P1>> = vec![vec![]; full];
    let (mut next, mut batch, mut low) = (0, 1, 0);
    while next < dim && low < full {
        for i in next..(next + batch).min(dim) {
            let mut v = vec![fz.clone(); dim];
            v[i] = fz.one_like();
            for (row, e) in images.iter_mut().zip(&basis.elems) {
                row.extend(fp.apply_elem(&v, &e.word));
            }
        }
        next = (next + batch).min(dim);
        batch *= 2;
        low = RowSolver::new(&images, &fz).rank();
    }
    let out = SchurWeylRank { n, r, s, rank: low, full };
    if low == full {
        return Ok(out);
    }
    let pivots = RowSolver::new(&images, &fz).pivots().to_vec();
    // exact operator images, one seed (basis vector of V^{r,s}) at a time
    let p = presentation_params(n);
    let z = p.zero();
    let rep = DenseRep::new(Space::full(Shape::new(n, r, s)), p);
    let seed_images = |i: usize| -> Mat<RatFn> {
        let mut v = vec![z.clone(); dim];
        v[i] = z.one_like();
        basis.elems.iter().map(|e| rep.apply_elem(&v, &e.word)).collect()
    };
    let mut cache: HashMap<usize, Mat<RatFn>> = HashMap::new();
    let mut cols: Mat<RatFn> = vec![vec![]; full];
    for &c in &pivots {
        let img = cache.entry(c / dim).or_insert_with(|| seed_images(c / dim));
        for (row, im) in cols.iter_mut().zip(img.iter()) {
            row.push(im[c % dim].clone());
        }
    }
    let ker = kernel(&transpose(&cols), full, &z);
    if ker.len() != full - low {
        return Err(WbqError::OracleMismatch(format!("exact kernel has dimension {} where {} was expected", ker.len(), full - low)));
    }
    for i in 0..dim {
        let img = match cache.remove(&i) {
            Some(m) => m,
            None => seed_images(i),
        };
        for k in &ker {
            let mut acc = vec![z.clone(); dim];
            for (c, row) in k.iter().zip(&img) {
                if c.is_zero() {
                    continue;
                }
                for (a, x) in acc.iter_mut().zip(row) {
                    if !x.is_zero() {
                        *a = a.add(&c.mul(x));
                    }
                }
            }
            if acc.iter().any(|x| !x.is_zero()) {
                return Err(WbqError::OracleMismatch("kernel element found at a random point does not vanish exactly".into()));
            }
        }
    }
    Ok(out)
}

// ---------------------------------------------------------------------------

#[derive(Clone, Debug)]
pub struct SingularReport {
    pub label: CellLabel,
    /// |Std(λ′)|·|D^f|
    pub expected: usize,
    pub constructed: usize,
    /// every constructed vector has weight φ(f,λ) and is killed by all E_i^{(l)}
    pub annihilated: bool,
    pub independent: bool,
    /// dimension of the full singular space of weight φ(f,λ)
    pub singular_dim: usize,
}

impl SingularReport {
    /// The constructed vectors form a basis of the singular space.
    pub fn ok(&self) -> bool {
        self.annihilated && self.independent && self.constructed == self.expected && self.singular_dim == self.expected
    }
}

pub fn singular_report<K: Field>(label: &CellLabel, p: &TensorParams<K>) -> Result<SingularReport> {
    let (r, s) = (label.r(), label.s());
    let sh = Shape::new(p.n, r, s);
    let w = phi_map(label, p.n)?;
    let c = label.conjugate();
    let expected = standard_tableaux(&c.l1, &c.l2, label.f).len() * coset_reps(r, s, label.f).len();
    let vs = singular_vectors(label, p)?;
    let lmax = r + s;
    let mut annihilated = true;
    for v in &vs {
        annihilated &= !v.is_zero() && v.map.keys().all(|code| sh.weight(*code) == w);
        for i in 1..p.n {
            for l in 1..=lmax {
                annihilated &= act_divided_power(v, i, l, p)?.is_zero();
            }
        }
    }
    let z = p.zero();
    let mut codes: Vec<u64> = vs.iter().flat_map(|v| v.map.keys().copied()).collect();
    codes.sort_unstable();
    codes.dedup();
    let m: Mat<K> = vs.iter().map(|v| codes.iter().map(|c| v.map.get(c).cloned().unwrap_or_else(|| z.clone())).collect()).collect();
    let independent = rank(&m) == vs.len();
    let singular_dim = singular_space(&w, &sh, p, lmax)?.len();
    Ok(SingularReport { label: label.clone(), expected, constructed: vs.len(), annihilated, independent, singular_dim })
}

// ---------------------------------------------------------------------------

/// Random sparse test vectors: `terms` basis vectors with coefficients in ±1..9.
pub fn random_tensor_vectors<K: Field>(sh: Shape, count: usize, terms: usize, seed: u64, z: &K) -> Vec<TensorVector<K>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let mut v = TensorVector::zero(sh, z);
            for _ in 0..terms {
                let c = rng.gen_range(1..=9) * if rng.gen_bool(0.5) { 1 } else { -1 };
                v.add_term(rng.gen_range(0..sh.dim()), &z.from_int_like(c));
            }
            v
        })
        .collect()
}

/// Names of defining relations that fail as operators on V^{r,s} over Q(q)
/// with ρ = q^n: on every basis vector, or on `sample = (count, seed)` random
/// sparse vectors.
pub fn tensor_relation_failures(r: usize, s: usize, n: usize, sample: Option<(usize, u64)>) -> Result<Vec<String>> {
    let p = presentation_params(n);
    let sh = Shape::new(n, r, s);
    let z = p.zero();
    let q = p.qti.clone();
    let rho = q.pow_i(n as i64);
    let delta = rho.sub(&rho.inv().unwrap()).div(&q.sub(&p.qt)).unwrap();
    let vectors = match sample {
        None => (0..sh.dim()).map(|c| TensorVector::from_code(sh, c, &z)).collect(),
        Some((count, seed)) => random_tensor_vectors(sh, count, 8, seed, &z),
    };
    let mut failed = vec![];
    for rel in defining_relations(r, s) {
        for v in &vectors {
            let mut acc = TensorVector::zero(sh, &z);
            for (c, w) in &rel.terms {
                acc = acc.add(&act_plain_word(v, w, &p)?.scale(&c.eval(&q, &rho, &delta)));
            }
            if !acc.is_zero() {
                failed.push(rel.name.clone());
                break;
            }
        }
    }
    Ok(failed)
}

// ---------------------------------------------------------------------------

#[derive(Clone, Debug)]
pub struct Blocks1Report {
    /// d_{(f,λ),(ℓ,μ)} = δ_{f,ℓ}·[C(0,λ):D^{0,μ}] computed in B_{r−f,s−f}
    pub entries_match: bool,
    /// every block has a single layer index f
    pub blocks_single_layer: bool,
    pub mismatches: Vec<String>,
}

impl Blocks1Report {
    pub fn ok(&self) -> bool {
        self.entries_match && self.blocks_single_layer
    }
}

pub fn blocks1_check(fam: &Family, r: usize, s: usize, spec: FieldSpec) -> Result<Blocks1Report> {
    let d = decomposition_matrix(&fam.algebra(r, s, spec)?)?;
    let mut lower: HashMap<usize, DecompositionMatrix> = HashMap::new();
    for f in 0..=r.min(s) {
        lower.insert(f, if f == 0 { d.clone() } else { decomposition_matrix(&fam.algebra(r - f, s - f, spec)?)? });
    }
    let mut mismatches = vec![];
    for (i, row) in d.labels.iter().enumerate() {
        for &col in &d.columns {
            let cl = &d.labels[col];
            let expected = if row.f == cl.f {
                let low = &lower[&row.f];
                let i0 = low.row_of(&CellLabel::new(0, row.l1.clone(), row.l2.clone())).expect("label of the smaller algebra");
                let j0 = low.row_of(&CellLabel::new(0, cl.l1.clone(), cl.l2.clone())).expect("label of the smaller algebra");
                low.get(i0, j0)
            } else {
                0
            };
            let got = d.get(i, col);
            if got != expected {
                mismatches.push(format!("[C{row}:D{cl}] = {got}, expected {expected}"));
            }
        }
    }
    let blocks_single_layer = blocks(&d).iter().all(|b| b.iter().all(|&i| d.labels[i].f == d.labels[b[0]].f));
    Ok(Blocks1Report { entries_match: mismatches.is_empty(), blocks_single_layer, mismatches })
}

// ---------------------------------------------------------------------------

#[derive(Clone, Debug)]
pub struct EinftyReport {
    /// (e, matrix at Cyclotomic(e, ρ = q^a) equals the one at QPower(a))
    pub per_e: Vec<(u32, bool)>,
}

impl EinftyReport {
    pub fn ok(&self) -> bool {
        self.per_e.iter().all(|x| x.1)
    }
}

pub fn einfty_check(fam: &Family, r: usize, s: usize, a: i64, es: &[u32]) -> Result<EinftyReport> {
    let inf = decomposition_matrix(&fam.algebra(r, s, FieldSpec::QPower(a))?)?;
    let per_e = es
        .iter()
        .map(|&e| Ok((e, decomposition_matrix(&fam.algebra(r, s, cyclotomic_for_e(e, RhoSpec::Power(a)))?)? == inf)))
        .collect::<Result<Vec<_>>>()?;
    Ok(EinftyReport { per_e })
}

/// Smallest e ≤ emax from which every e′ in e..=emax reproduces the e = ∞
/// decomposition matrix.
pub fn einfty_stable_from(fam: &Family, r: usize, s: usize, a: i64, emax: u32) -> Result<Option<u32>> {
    let es: Vec<u32> = (2..=emax).collect();
    let rep = einfty_check(fam, r, s, a, &es)?;
    let mut from = None;
    for (e, ok) in rep.per_e.iter().rev() {
        if !ok {
            break;
        }
        from = Some(*e);
    }
    Ok(from)
}

/// The trace table of a module on all cellular basis elements of `basis`.
pub fn trace_table(basis: &CellularBasis, rep: &Rep) -> Vec<Scalar> {
    trace_vector(basis, rep)
}
