//! The mixed tensor space V^{⊗r} ⊗ W^{⊗s} with dim V = n.
//!
//! Basis indices are packed as base-n digits: digit k (0-based) holds i_{k+1}
//! for k < r and j_{k−r+1} for k ≥ r, each stored 0-based. The tensor slot
//! order left to right is i_r … i_1 j_1 … j_s.
//!
//! Generator actions follow the tensor-side presentation with parameter qt.
//! Words written in the algebra's own presentation act with q ↦ qt⁻¹ (and
//! therefore ρ = qt⁻ⁿ); see [`Convention`].

use crate::combinatorics::{coset_reps, d_of, phi_map, standard_tableaux, CellLabel, CosetRep, TableauPair, Weight};
use crate::error::{Result, WbqError};
use crate::linalg::{kernel, rref, Mat};
use crate::scalars::{Field, Lz, RatFn, Ring};
use crate::words::{coset_word, young_symmetrizer_word, Elem, Gen, Symmetrizer, Word};
use std::collections::{BTreeMap, HashMap};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Shape {
    pub n: usize,
    pub r: usize,
    pub s: usize,
}

/// 1-based multi-indices (i₁…i_r | j₁…j_s).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MixedIndex {
    pub i: Vec<usize>,
    pub j: Vec<usize>,
}

impl Shape {
    pub fn new(n: usize, r: usize, s: usize) -> Self {
        Shape { n, r, s }
    }
    pub fn slots(&self) -> usize {
        self.r + self.s
    }
    pub fn dim(&self) -> u64 {
        (self.n as u64).pow(self.slots() as u32)
    }
    #[inline]
    pub fn digit(&self, code: u64, k: usize) -> usize {
        ((code / (self.n as u64).pow(k as u32)) % self.n as u64) as usize
    }
    #[inline]
    pub fn set_digit(&self, code: u64, k: usize, v: usize) -> u64 {
        let p = (self.n as u64).pow(k as u32);
        let old = self.digit(code, k) as u64;
        code - old * p + v as u64 * p
    }
    pub fn digits(&self, code: u64) -> Vec<usize> {
        (0..self.slots()).map(|k| self.digit(code, k)).collect()
    }
    pub fn encode_digits(&self, d: &[usize]) -> u64 {
        d.iter().rev().fold(0u64, |acc, &x| acc * self.n as u64 + x as u64)
    }
    pub fn encode(&self, idx: &MixedIndex) -> Result<u64> {
        if idx.i.len() != self.r || idx.j.len() != self.s || idx.i.iter().chain(&idx.j).any(|&x| x == 0 || x > self.n) {
            return Err(WbqError::IndexOutOfRange(format!("{idx:?} for n={}, r={}, s={}", self.n, self.r, self.s)));
        }
        let d: Vec<usize> = idx.i.iter().chain(&idx.j).map(|x| x - 1).collect();
        Ok(self.encode_digits(&d))
    }
    pub fn decode(&self, code: u64) -> MixedIndex {
        let d = self.digits(code);
        MixedIndex { i: d[..self.r].iter().map(|x| x + 1).collect(), j: d[self.r..].iter().map(|x| x + 1).collect() }
    }
    pub fn weight(&self, code: u64) -> Weight {
        let mut w = vec![0i64; self.n];
        for k in 0..self.slots() {
            let v = self.digit(code, k);
            w[v] += if k < self.r { 1 } else { -1 };
        }
        w
    }
    /// Digit holding the tensor slot at position p (0-based, left to right).
    pub fn slot_digit(&self, p: usize) -> usize {
        if p < self.r {
            self.r - 1 - p
        } else {
            p
        }
    }
}

/// Parameter values for the tensor-side action.
#[derive(Clone, Debug)]
pub struct TensorParams<K: Field> {
    pub n: usize,
    pub qt: K,
    pub qti: K,
    /// qt⁻¹ − qt
    pub diff: K,
    /// e_coef[k] = qt^{−n−1+2(k+1)}
    pub ecoef: Vec<K>,
}

impl<K: Field> TensorParams<K> {
    pub fn new(n: usize, qt: K) -> Self {
        let qti = qt.inv().expect("qt must be invertible");
        let diff = qti.sub(&qt);
        let ecoef = (1..=n as i64).map(|k| qt.pow_i(-(n as i64) - 1 + 2 * k)).collect();
        TensorParams { n, qt, qti, diff, ecoef }
    }
    pub fn zero(&self) -> K {
        self.qt.zero_like()
    }
    /// Value of a presentation-side Laurent coefficient.
    pub fn pres(&self, c: &Lz) -> K {
        c.eval(&self.qti)
    }
}

/// Which presentation a word's coefficients are written in.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Convention {
    /// The algebra's defining presentation (q, ρ); acts via q ↦ qt⁻¹.
    Presentation,
    /// The tensor-side presentation; coefficients use qt directly.
    Dds,
}

fn hecke_image<K: Field>(sh: &Shape, p: &TensorParams<K>, code: u64, a: usize, b: usize, inverse: bool) -> Vec<(u64, K)> {
    let (x, y) = (sh.digit(code, a), sh.digit(code, b));
    let one = p.qt.one_like();
    if x == y {
        return vec![(code, if inverse { p.qt.clone() } else { p.qti.clone() })];
    }
    let sw = sh.set_digit(sh.set_digit(code, a, y), b, x);
    match (x > y, inverse) {
        (true, false) | (false, true) => vec![(sw, one)],
        (false, false) => vec![(sw, one), (code, p.diff.clone())],
        (true, true) => vec![(sw, one), (code, p.diff.neg())],
    }
}

/// Image of one basis vector under a generator (tensor-side rules).
pub fn gen_image<K: Field>(sh: &Shape, p: &TensorParams<K>, g: Gen, code: u64) -> Vec<(u64, K)> {
    match g {
        Gen::E => {
            let (a, b) = (sh.digit(code, 0), sh.digit(code, sh.r));
            if a != b {
                return vec![];
            }
            let c = p.ecoef[a].clone();
            (0..sh.n).map(|k| (sh.set_digit(sh.set_digit(code, 0, k), sh.r, k), c.clone())).collect()
        }
        Gen::G(k) => hecke_image(sh, p, code, k - 1, k, false),
        Gen::Gi(k) => hecke_image(sh, p, code, k - 1, k, true),
        Gen::H(k) => hecke_image(sh, p, code, sh.r + k - 1, sh.r + k, false),
        Gen::Hi(k) => hecke_image(sh, p, code, sh.r + k - 1, sh.r + k, true),
    }
}

/// Sparse exact vector in V^{r,s}.
#[derive(Clone, Debug, PartialEq)]
pub struct TensorVector<K: Field> {
    pub shape: Shape,
    pub map: BTreeMap<u64, K>,
    z: K,
}

impl<K: Field> TensorVector<K> {
    pub fn zero(shape: Shape, z: &K) -> Self {
        TensorVector { shape, map: BTreeMap::new(), z: z.zero_like() }
    }
    pub fn basis(shape: Shape, idx: &MixedIndex, z: &K) -> Result<Self> {
        let mut v = Self::zero(shape, z);
        v.map.insert(shape.encode(idx)?, z.one_like());
        Ok(v)
    }
    pub fn from_code(shape: Shape, code: u64, z: &K) -> Self {
        let mut v = Self::zero(shape, z);
        v.map.insert(code, z.one_like());
        v
    }
    pub fn add_term(&mut self, code: u64, c: &K) {
        if c.is_zero() {
            return;
        }
        let e = self.map.entry(code).or_insert_with(|| c.zero_like());
        *e = e.add(c);
        if e.is_zero() {
            self.map.remove(&code);
        }
    }
    pub fn coeff(&self, idx: &MixedIndex) -> K {
        self.shape.encode(idx).ok().and_then(|c| self.map.get(&c).cloned()).unwrap_or_else(|| self.z.clone())
    }
    pub fn is_zero(&self) -> bool {
        self.map.is_empty()
    }
    pub fn scale(&self, c: &K) -> Self {
        let mut out = Self::zero(self.shape, &self.z);
        for (k, v) in &self.map {
            out.add_term(*k, &v.mul(c));
        }
        out
    }
    pub fn add(&self, o: &Self) -> Self {
        let mut out = self.clone();
        for (k, v) in &o.map {
            out.add_term(*k, v);
        }
        out
    }
    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.scale(&self.z.from_int_like(-1)))
    }
    pub fn entries(&self) -> impl Iterator<Item = (MixedIndex, &K)> {
        self.map.iter().map(|(c, v)| (self.shape.decode(*c), v))
    }
    /// `index ↦ scalar` lines, for debugging.
    pub fn dump(&self) -> String
    where
        K: std::fmt::Display,
    {
        self.entries().map(|(i, v)| format!("{:?}|{:?} -> {}", i.i, i.j, v)).collect::<Vec<_>>().join("\n")
    }
}

fn check_gen(sh: &Shape, g: Gen) -> Result<()> {
    g.check(sh.r, sh.s)
}

pub fn act_generator<K: Field>(v: &TensorVector<K>, g: Gen, p: &TensorParams<K>) -> Result<TensorVector<K>> {
    check_gen(&v.shape, g)?;
    if p.n != v.shape.n {
        return Err(WbqError::InvalidInput("parameter rank differs from the vector's".into()));
    }
    let mut out = TensorVector::zero(v.shape, &p.zero());
    for (code, c) in &v.map {
        for (t, k) in gen_image(&v.shape, p, g, *code) {
            out.add_term(t, &c.mul(&k));
        }
    }
    Ok(out)
}

pub fn act_plain_word<K: Field>(v: &TensorVector<K>, w: &[Gen], p: &TensorParams<K>) -> Result<TensorVector<K>> {
    let mut cur = v.clone();
    for &g in w {
        cur = act_generator(&cur, g, p)?;
    }
    Ok(cur)
}

/// Right action of a formal element.
pub fn act_word<K: Field>(v: &TensorVector<K>, x: &Elem, p: &TensorParams<K>, conv: Convention) -> Result<TensorVector<K>> {
    let mut cur = v.clone();
    for factor in &x.0 {
        let mut acc = TensorVector::zero(v.shape, &p.zero());
        for (c, w) in &factor.0 {
            let cv = match conv {
                Convention::Presentation => p.pres(c),
                Convention::Dds => c.eval(&p.qt),
            };
            let img = act_plain_word(&cur, w, p)?;
            acc = acc.add(&img.scale(&cv));
        }
        cur = acc;
    }
    Ok(cur)
}

// ---------------------------------------------------------------------------
// Quantum group side.

fn check_root(sh: &Shape, i: usize) -> Result<()> {
    if i == 0 || i >= sh.n {
        return Err(WbqError::IndexOutOfRange(format!("simple root {i} for n = {}", sh.n)));
    }
    Ok(())
}

/// Exponent of qt by which K_i acts on one slot value (0-based v) on the V or W side.
fn k_exp(i: usize, v: usize, dual: bool) -> i64 {
    let e = (v + 1 == i) as i64 - (v + 1 == i + 1) as i64;
    if dual {
        -e
    } else {
        e
    }
}

/// K_i^{±1} exponent on a whole basis vector.
pub fn k_exponent(sh: &Shape, code: u64, i: usize) -> i64 {
    (0..sh.slots()).map(|d| k_exp(i, sh.digit(code, d), d >= sh.r)).sum()
}

/// E_i (raise = true) or F_i on one basis vector; exponents of qt with integer coefficients.
pub fn ef_image_lz(sh: &Shape, code: u64, i: usize, raise: bool) -> Vec<(u64, Lz)> {
    let mut out = vec![];
    for pos in 0..sh.slots() {
        let d = sh.slot_digit(pos);
        let v = sh.digit(code, d);
        let dual = d >= sh.r;
        // (new value, sign, qt exponent) of the slot action
        let act: Option<(usize, i64, i64)> = match (raise, dual) {
            (true, false) => (v + 1 == i + 1).then_some((i - 1, 1, 0)),
            (true, true) => (v + 1 == i).then_some((i, -1, -1)),
            (false, false) => (v + 1 == i).then_some((i, 1, 0)),
            (false, true) => (v + 1 == i + 1).then_some((i - 1, -1, 1)),
        };
        let Some((nv, sign, e0)) = act else { continue };
        // E: K⁻¹ on every slot to the right; F: K on every slot to the left.
        let mut e = e0;
        for other in 0..sh.slots() {
            let od = sh.slot_digit(other);
            let ke = k_exp(i, sh.digit(code, od), od >= sh.r);
            if raise && other > pos {
                e -= ke;
            }
            if !raise && other < pos {
                e += ke;
            }
        }
        out.push((sh.set_digit(code, d, nv), Lz::mono(sign, e)));
    }
    out
}

fn act_lz_map<K: Field>(v: &TensorVector<K>, p: &TensorParams<K>, f: impl Fn(u64) -> Vec<(u64, Lz)>) -> TensorVector<K> {
    let mut out = TensorVector::zero(v.shape, &p.zero());
    for (code, c) in &v.map {
        for (t, l) in f(*code) {
            out.add_term(t, &c.mul(&l.eval(&p.qt)));
        }
    }
    out
}

pub fn act_e<K: Field>(v: &TensorVector<K>, i: usize, p: &TensorParams<K>) -> Result<TensorVector<K>> {
    check_root(&v.shape, i)?;
    Ok(act_lz_map(v, p, |c| ef_image_lz(&v.shape, c, i, true)))
}

pub fn act_f<K: Field>(v: &TensorVector<K>, i: usize, p: &TensorParams<K>) -> Result<TensorVector<K>> {
    check_root(&v.shape, i)?;
    Ok(act_lz_map(v, p, |c| ef_image_lz(&v.shape, c, i, false)))
}

/// K_i^power.
pub fn act_k<K: Field>(v: &TensorVector<K>, i: usize, power: i64, p: &TensorParams<K>) -> Result<TensorVector<K>> {
    check_root(&v.shape, i)?;
    Ok(act_lz_map(v, p, |c| vec![(c, Lz::mono(1, power * k_exponent(&v.shape, c, i)))]))
}

/// q^{h_k} acting by qt^{wt_k}, 1 ≤ k ≤ n.
pub fn act_h<K: Field>(v: &TensorVector<K>, k: usize, p: &TensorParams<K>) -> Result<TensorVector<K>> {
    if k == 0 || k > v.shape.n {
        return Err(WbqError::IndexOutOfRange(format!("h_{k}")));
    }
    Ok(act_lz_map(v, p, |c| vec![(c, Lz::mono(1, v.shape.weight(c)[k - 1]))]))
}

/// All basis codes of a weight (sorted); empty if the weight does not occur.
pub fn weight_space_codes(sh: &Shape, w: &Weight) -> Vec<u64> {
    if w.len() != sh.n {
        return vec![];
    }
    let mut out = vec![];
    let n = sh.n;
    let mut i = vec![0usize; sh.r];
    loop {
        // j must realize counts(i) − w
        let mut need = vec![0i64; n];
        for &x in &i {
            need[x] += 1;
        }
        for k in 0..n {
            need[k] -= w[k];
        }
        if need.iter().all(|&x| x >= 0) && need.iter().sum::<i64>() == sh.s as i64 {
            let mut cnt: Vec<usize> = need.iter().map(|&x| x as usize).collect();
            let mut j = vec![];
            multiset_perms(&mut cnt, &mut j, sh.s, &mut |j| {
                let mut d = i.clone();
                d.extend_from_slice(j);
                out.push(sh.encode_digits(&d));
            });
        }
        // next i
        let mut k = 0;
        loop {
            if k == sh.r {
                out.sort_unstable();
                return out;
            }
            i[k] += 1;
            if i[k] < n {
                break;
            }
            i[k] = 0;
            k += 1;
        }
    }
}

fn multiset_perms(cnt: &mut Vec<usize>, cur: &mut Vec<usize>, len: usize, f: &mut impl FnMut(&[usize])) {
    if cur.len() == len {
        f(cur);
        return;
    }
    for v in 0..cnt.len() {
        if cnt[v] > 0 {
            cnt[v] -= 1;
            cur.push(v);
            multiset_perms(cnt, cur, len, f);
            cur.pop();
            cnt[v] += 1;
        }
    }
}

pub fn weight_space(w: &Weight, sh: &Shape) -> Vec<MixedIndex> {
    weight_space_codes(sh, w).into_iter().map(|c| sh.decode(c)).collect()
}

/// E_i^{(ℓ)} on the given domain codes, as integral Laurent matrices in qt.
pub fn divided_power_lz(sh: &Shape, i: usize, l: usize, domain: &[u64]) -> Result<Vec<BTreeMap<u64, Lz>>> {
    check_root(sh, i)?;
    let z = crate::scalars::rat(0);
    let qv = RatFn::var(&z);
    let mut fact = RatFn::constant(crate::scalars::rat(1));
    for k in 1..=l as i64 {
        let mut qk = RatFn::constant(crate::scalars::rat(0));
        for t in 0..k {
            qk = qk.add(&qv.pow_i(k - 1 - 2 * t));
        }
        fact = fact.mul(&qk);
    }
    let fact_inv = fact.inv().unwrap();
    let mut out = vec![];
    for &c in domain {
        let mut cur: BTreeMap<u64, Lz> = [(c, Lz::int(1))].into_iter().collect();
        for _ in 0..l {
            let mut next: BTreeMap<u64, Lz> = BTreeMap::new();
            for (code, coef) in &cur {
                for (t, e) in ef_image_lz(sh, *code, i, true) {
                    let ent = next.entry(t).or_default();
                    *ent = ent.add(&coef.mul(&e));
                }
            }
            next.retain(|_, v| !v.is_zero());
            cur = next;
        }
        let mut img = BTreeMap::new();
        for (t, v) in cur {
            let x = v.to_ratfn().mul(&fact_inv);
            if !x.is_laurent() {
                return Err(WbqError::IntegralityViolation(format!("E_{i}^({l}) on code {c}")));
            }
            let shift = x.den().deg().unwrap() as i64;
            let terms = x.num().coeffs().iter().enumerate().filter(|(_, a)| !Ring::is_zero(*a)).map(|(k, a)| {
                if !a.is_integer() {
                    Err(WbqError::IntegralityViolation(format!("non-integral coefficient in E_{i}^({l})")))
                } else {
                    Ok((k as i64 - shift, a.to_integer()))
                }
            });
            let terms = terms.collect::<Result<Vec<_>>>()?;
            img.insert(t, Lz::from_terms(terms));
        }
        out.push(img);
    }
    Ok(out)
}

pub fn act_divided_power<K: Field>(v: &TensorVector<K>, i: usize, l: usize, p: &TensorParams<K>) -> Result<TensorVector<K>> {
    let dom: Vec<u64> = v.map.keys().copied().collect();
    let imgs = divided_power_lz(&v.shape, i, l, &dom)?;
    let mut out = TensorVector::zero(v.shape, &p.zero());
    for ((_, c), img) in v.map.iter().zip(imgs) {
        for (t, e) in img {
            out.add_term(t, &c.mul(&e.eval(&p.qt)));
        }
    }
    Ok(out)
}

/// Basis (reduced echelon) of the singular vectors of weight w.
pub fn singular_space<K: Field>(w: &Weight, sh: &Shape, p: &TensorParams<K>, lmax: usize) -> Result<Vec<TensorVector<K>>> {
    let dom = weight_space_codes(sh, w);
    let z = p.zero();
    if dom.is_empty() {
        return Ok(vec![]);
    }
    let pos: HashMap<u64, usize> = dom.iter().enumerate().map(|(k, c)| (*c, k)).collect();
    let _ = &pos;
    let mut rows: Mat<K> = vec![];
    for i in 1..sh.n {
        for l in 1..=lmax {
            let imgs = divided_power_lz(sh, i, l, &dom)?;
            let mut targets: BTreeMap<u64, Vec<K>> = BTreeMap::new();
            for (col, img) in imgs.iter().enumerate() {
                for (t, e) in img {
                    let row = targets.entry(*t).or_insert_with(|| vec![z.clone(); dom.len()]);
                    row[col] = row[col].add(&e.eval(&p.qt));
                }
            }
            rows.extend(targets.into_values());
        }
    }
    let ker = kernel(&rows, dom.len(), &z);
    let mut ker = ker;
    rref(&mut ker);
    Ok(ker
        .into_iter()
        .map(|v| {
            let mut t = TensorVector::zero(*sh, &z);
            for (c, x) in dom.iter().zip(v) {
                t.add_term(*c, &x);
            }
            t
        })
        .collect())
}

/// v_{f,λ} before the symmetrizer: i_λ, j_λ from λ′ and the nested v^f.
pub fn highest_vector<K: Field>(label: &CellLabel, sh: &Shape, z: &K) -> Result<TensorVector<K>> {
    let n = sh.n;
    phi_map(label, n)?;
    if label.r() != sh.r || label.s() != sh.s {
        return Err(WbqError::InvalidInput(format!("label {label} not in B_{{{},{}}}", sh.r, sh.s)));
    }
    let f = label.f;
    let conj = label.conjugate();
    // slots i_r … i_{f+1}, left to right
    let mut left: Vec<usize> = vec![];
    for &a in conj.l1.parts().iter().rev() {
        left.extend((1..=a).rev());
    }
    let mut jpart: Vec<usize> = vec![];
    for &b in conj.l2.parts() {
        jpart.extend((n - b + 1..=n).rev());
    }
    let mut digits = vec![0usize; sh.slots()];
    for (m, &v) in left.iter().rev().enumerate() {
        digits[f + m] = v - 1;
    }
    for (m, &v) in jpart.iter().enumerate() {
        digits[sh.r + f + m] = v - 1;
    }
    let mut out = TensorVector::zero(*sh, z);
    let mut ks = vec![0usize; f];
    loop {
        let mut d = digits.clone();
        for (m, &k) in ks.iter().enumerate() {
            d[m] = k;
            d[sh.r + m] = k;
        }
        out.add_term(sh.encode_digits(&d), &z.one_like());
        let mut m = 0;
        loop {
            if m == f {
                return Ok(out);
            }
            ks[m] += 1;
            if ks[m] < n {
                break;
            }
            ks[m] = 0;
            m += 1;
        }
    }
}

/// The word n_{λ′} g_{d(t)} g_d (presentation convention).
pub fn singular_word(label: &CellLabel, t: &TableauPair, d: &CosetRep) -> Elem {
    let c = label.conjugate();
    let (w1, w2) = d_of(t);
    let mut dt: Word = w1.into_iter().map(Gen::G).collect();
    dt.extend(w2.into_iter().map(Gen::H));
    young_symmetrizer_word(&c.l1, &c.l2, label.f, Symmetrizer::N).mul(&Elem::word(dt)).mul(&Elem::word(coset_word(d)))
}

/// v_{λ,t,d} = v_{f,λ} · n_{λ′} g_{d(t)} g_d with t ∈ Std(λ′).
pub fn singular_vector<K: Field>(label: &CellLabel, t: &TableauPair, d: &CosetRep, p: &TensorParams<K>) -> Result<TensorVector<K>> {
    let sh = Shape::new(p.n, label.r(), label.s());
    let v = highest_vector(label, &sh, &p.zero())?;
    act_word(&v, &singular_word(label, t, d), p, Convention::Presentation)
}

/// All v_{λ,t,d} for a label, ordered by (t, d).
pub fn singular_vectors<K: Field>(label: &CellLabel, p: &TensorParams<K>) -> Result<Vec<TensorVector<K>>> {
    let c = label.conjugate();
    let mut out = vec![];
    for t in standard_tableaux(&c.l1, &c.l2, label.f) {
        for d in coset_reps(label.r(), label.s(), label.f) {
            out.push(singular_vector(label, &t, &d, p)?);
        }
    }
    Ok(out)
}

/// Exponent of qt on the diagonal of the contravariant form at a basis index.
pub fn form_exponent(sh: &Shape, code: u64) -> i64 {
    let d = sh.digits(code);
    let mut seq: Vec<usize> = d[..sh.r].to_vec();
    let mut jsum = 0i64;
    for &j in &d[sh.r..] {
        jsum += j as i64 + 1;
        seq.extend((0..sh.n).filter(|&k| k != j));
    }
    let mut beta = 0i64;
    for a in 0..seq.len() {
        for b in a + 1..seq.len() {
            if seq[a] != seq[b] {
                beta += 1;
            }
        }
    }
    2 * jsum + beta
}

pub fn contravariant_form<K: Field>(x: &TensorVector<K>, y: &TensorVector<K>, p: &TensorParams<K>) -> K {
    let mut acc = p.zero();
    for (c, a) in &x.map {
        if let Some(b) = y.map.get(c) {
            acc = acc.add(&a.mul(b).mul(&p.qt.pow_i(form_exponent(&x.shape, *c))));
        }
    }
    acc
}

// ---------------------------------------------------------------------------
// Dense representation on a B-stable set of basis indices.

/// A union of weight spaces, closed under every generator.
#[derive(Clone, Debug)]
pub struct Space {
    pub shape: Shape,
    pub codes: Vec<u64>,
    pub pos: HashMap<u64, usize>,
}

impl Space {
    pub fn from_codes(shape: Shape, mut codes: Vec<u64>) -> Self {
        codes.sort_unstable();
        codes.dedup();
        let pos = codes.iter().enumerate().map(|(k, c)| (*c, k)).collect();
        Space { shape, codes, pos }
    }
    pub fn from_weights(shape: Shape, ws: &[Weight]) -> Self {
        let codes = ws.iter().flat_map(|w| weight_space_codes(&shape, w)).collect();
        Space::from_codes(shape, codes)
    }
    pub fn full(shape: Shape) -> Self {
        Space::from_codes(shape, (0..shape.dim()).collect())
    }
    pub fn dim(&self) -> usize {
        self.codes.len()
    }
}

/// Sparse row operator: row k lists (target position, coefficient).
pub type SparseOp<K> = Vec<Vec<(usize, K)>>;

pub fn build_op<K: Field>(sp: &Space, p: &TensorParams<K>, g: Gen) -> SparseOp<K> {
    sp.codes
        .iter()
        .map(|&c| {
            gen_image(&sp.shape, p, g, c)
                .into_iter()
                .filter(|(_, k)| !k.is_zero())
                .map(|(t, k)| (*sp.pos.get(&t).expect("space not closed under the algebra"), k))
                .collect()
        })
        .collect()
}

pub fn apply_op<K: Field>(v: &[K], op: &SparseOp<K>, z: &K) -> Vec<K> {
    let mut out = vec![z.clone(); v.len()];
    for (x, row) in v.iter().zip(op) {
        if x.is_zero() {
            continue;
        }
        for (t, c) in row {
            out[*t] = out[*t].add(&x.mul(c));
        }
    }
    out
}

/// All generator and inverse operators on a space.
#[derive(Clone, Debug)]
pub struct DenseRep<K: Field> {
    pub space: Space,
    pub ops: HashMap<Gen, SparseOp<K>>,
    pub params: TensorParams<K>,
}

impl<K: Field> DenseRep<K> {
    pub fn new(space: Space, params: TensorParams<K>) -> Self {
        let (r, s) = (space.shape.r, space.shape.s);
        let mut ops = HashMap::new();
        for g in Gen::generators(r, s) {
            ops.insert(g, build_op(&space, &params, g));
            if let Some(gi) = g.inverse() {
                ops.insert(gi, build_op(&space, &params, gi));
            }
        }
        DenseRep { space, ops, params }
    }
    pub fn zero(&self) -> K {
        self.params.zero()
    }
    pub fn apply_word(&self, v: &[K], w: &[Gen]) -> Vec<K> {
        let z = self.zero();
        let mut cur = v.to_vec();
        for g in w {
            cur = apply_op(&cur, &self.ops[g], &z);
        }
        cur
    }
    /// Presentation-convention element acting on the right.
    pub fn apply_elem(&self, v: &[K], x: &Elem) -> Vec<K> {
        let z = self.zero();
        let mut cur = v.to_vec();
        for f in &x.0 {
            let mut acc = vec![z.clone(); cur.len()];
            for (c, w) in &f.0 {
                let cv = self.params.pres(c);
                let img = self.apply_word(&cur, w);
                for (a, b) in acc.iter_mut().zip(img) {
                    if !b.is_zero() {
                        *a = a.add(&b.mul(&cv));
                    }
                }
            }
            cur = acc;
        }
        cur
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::FieldSpec;

    fn qparams(n: usize) -> (FieldSpec, TensorParams<crate::scalars::Scalar>) {
        let s = FieldSpec::QPower(n as i64);
        let qt = s.q().inv().unwrap();
        (s, TensorParams::new(n, qt))
    }

    #[test]
    fn generator_examples() {
        let (_, p) = qparams(2);
        let sh = Shape::new(2, 1, 1);
        let z = p.zero();
        let v = TensorVector::basis(sh, &MixedIndex { i: vec![1], j: vec![1] }, &z).unwrap();
        let w = act_generator(&v, Gen::E, &p).unwrap();
        let v22 = TensorVector::basis(sh, &MixedIndex { i: vec![2], j: vec![2] }, &z).unwrap();
        assert_eq!(w, v.add(&v22).scale(&p.qti));
        let sh2 = Shape::new(2, 2, 1);
        let a = TensorVector::basis(sh2, &MixedIndex { i: vec![1, 1], j: vec![2] }, &z).unwrap();
        assert_eq!(act_generator(&a, Gen::G(1), &p).unwrap(), a.scale(&p.qti));
        let b = TensorVector::basis(sh2, &MixedIndex { i: vec![2, 1], j: vec![2] }, &z).unwrap();
        let b_sw = TensorVector::basis(sh2, &MixedIndex { i: vec![1, 2], j: vec![2] }, &z).unwrap();
        assert_eq!(act_generator(&b, Gen::G(1), &p).unwrap(), b_sw);
        assert!(act_generator(&b, Gen::G(2), &p).is_err());
    }

    #[test]
    fn quantum_examples() {
        let (_, p) = qparams(2);
        let sh = Shape::new(2, 1, 1);
        let z = p.zero();
        let b = |i: usize, j: usize| TensorVector::basis(sh, &MixedIndex { i: vec![i], j: vec![j] }, &z).unwrap();
        let e11 = act_e(&b(1, 1), 1, &p).unwrap();
        assert_eq!(e11, b(1, 2).scale(&p.qti.neg()));
        assert!(act_e(&b(1, 1).add(&b(2, 2)), 1, &p).unwrap().is_zero());
        let sh1 = Shape::new(2, 1, 0);
        let v2 = TensorVector::basis(sh1, &MixedIndex { i: vec![2], j: vec![] }, &z).unwrap();
        let v1 = TensorVector::basis(sh1, &MixedIndex { i: vec![1], j: vec![] }, &z).unwrap();
        assert_eq!(act_e(&v2, 1, &p).unwrap(), v1);
        assert!(act_e(&v2, 2, &p).is_err());
    }

    #[test]
    fn weight_space_examples() {
        let sh = Shape::new(2, 1, 1);
        let w0 = weight_space(&vec![0, 0], &sh);
        assert_eq!(w0, vec![MixedIndex { i: vec![1], j: vec![1] }, MixedIndex { i: vec![2], j: vec![2] }]);
        assert_eq!(weight_space(&vec![1, -1], &sh), vec![MixedIndex { i: vec![1], j: vec![2] }]);
        assert!(weight_space(&vec![2, 0], &sh).is_empty());
        // brute-force agreement
        for (n, r, s) in [(3, 2, 1), (2, 2, 2), (3, 1, 2)] {
            let sh = Shape::new(n, r, s);
            let mut by: BTreeMap<Weight, Vec<u64>> = BTreeMap::new();
            for c in 0..sh.dim() {
                by.entry(sh.weight(c)).or_default().push(c);
            }
            for (w, codes) in by {
                assert_eq!(weight_space_codes(&sh, &w), codes);
            }
        }
    }

    #[test]
    fn form_example() {
        let sh = Shape::new(2, 1, 1);
        let c = sh.encode(&MixedIndex { i: vec![1], j: vec![2] }).unwrap();
        assert_eq!(form_exponent(&sh, c), 4);
    }

    type RF = crate::scalars::RatFn;

    fn rparams(n: usize) -> TensorParams<RF> {
        let z = crate::scalars::rat(0);
        TensorParams::new(n, RF::var(&z).inv().unwrap())
    }

    /// Presentation-side relations with q = Q, ρ = Q^n, δ = [n].
    fn check_relations(n: usize, r: usize, s: usize) {
        use Gen::*;
        let p = rparams(n);
        let sh = Shape::new(n, r, s);
        let q = p.qti.clone();
        let rho = q.pow_i(n as i64);
        let qi = p.qt.clone();
        let delta = rho.sub(&rho.inv().unwrap()).div(&q.sub(&qi)).unwrap();
        let one = q.one_like();
        let w = |v: &TensorVector<RF>, g: &[Gen]| act_plain_word(v, g, &p).unwrap();
        for code in 0..sh.dim() {
            let v = TensorVector::from_code(sh, code, &p.zero());
            for k in 1..r {
                let a = w(&v, &[G(k), G(k)]);
                let b = w(&v, &[G(k)]).scale(&q.sub(&qi)).add(&v);
                assert_eq!(a, b, "hecke g{k}");
                assert_eq!(w(&v, &[G(k), Gi(k)]), v);
                if k + 1 < r {
                    assert_eq!(w(&v, &[G(k), G(k + 1), G(k)]), w(&v, &[G(k + 1), G(k), G(k + 1)]));
                }
                for l in k + 2..r {
                    assert_eq!(w(&v, &[G(k), G(l)]), w(&v, &[G(l), G(k)]));
                }
                for j in 1..s {
                    assert_eq!(w(&v, &[G(k), H(j)]), w(&v, &[H(j), G(k)]));
                }
                if k > 1 && s >= 1 {
                    assert_eq!(w(&v, &[G(k), E]), w(&v, &[E, G(k)]));
                }
            }
            for k in 1..s {
                let a = w(&v, &[H(k), H(k)]);
                let b = w(&v, &[H(k)]).scale(&q.sub(&qi)).add(&v);
                assert_eq!(a, b, "hecke g*{k}");
                if k + 1 < s {
                    assert_eq!(w(&v, &[H(k), H(k + 1), H(k)]), w(&v, &[H(k + 1), H(k), H(k + 1)]));
                }
                if k > 1 && r >= 1 {
                    assert_eq!(w(&v, &[H(k), E]), w(&v, &[E, H(k)]));
                }
            }
            if r >= 1 && s >= 1 {
                assert_eq!(w(&v, &[E, E]), w(&v, &[E]).scale(&delta));
                if r >= 2 {
                    assert_eq!(w(&v, &[E, G(1), E]), w(&v, &[E]).scale(&rho));
                }
                if s >= 2 {
                    assert_eq!(w(&v, &[E, H(1), E]), w(&v, &[E]).scale(&rho));
                }
                if r >= 2 && s >= 2 {
                    assert_eq!(w(&v, &[E, Gi(1), H(1), E, G(1)]), w(&v, &[E, Gi(1), H(1), E, H(1)]));
                    assert_eq!(w(&v, &[G(1), E, Gi(1), H(1), E]), w(&v, &[H(1), E, Gi(1), H(1), E]));
                }
            }
            let _ = &one;
        }
    }

    #[test]
    fn relations_small() {
        for (n, r, s) in [(2, 1, 1), (2, 2, 1), (2, 1, 2), (2, 2, 2), (3, 2, 2), (3, 3, 1), (2, 3, 2), (1, 2, 2)] {
            check_relations(n, r, s);
        }
    }

    #[test]
    fn quantum_group_commutes_with_algebra() {
        let p = rparams(3);
        for (r, s) in [(2, 1), (2, 2), (1, 2)] {
            let sh = Shape::new(3, r, s);
            for code in 0..sh.dim() {
                let v = TensorVector::from_code(sh, code, &p.zero());
                for g in Gen::generators(r, s) {
                    for i in 1..3 {
                        let a = act_generator(&act_e(&v, i, &p).unwrap(), g, &p).unwrap();
                        let b = act_e(&act_generator(&v, g, &p).unwrap(), i, &p).unwrap();
                        assert_eq!(a, b, "E{i} vs {g}");
                        let a = act_generator(&act_f(&v, i, &p).unwrap(), g, &p).unwrap();
                        let b = act_f(&act_generator(&v, g, &p).unwrap(), i, &p).unwrap();
                        assert_eq!(a, b, "F{i} vs {g}");
                        let a = act_generator(&act_k(&v, i, 1, &p).unwrap(), g, &p).unwrap();
                        let b = act_k(&act_generator(&v, g, &p).unwrap(), i, 1, &p).unwrap();
                        assert_eq!(a, b);
                    }
                }
            }
        }
    }

    #[test]
    fn quantum_group_relations() {
        let p = rparams(3);
        let sh = Shape::new(3, 2, 1);
        let (qt, qti) = (p.qt.clone(), p.qti.clone());
        for code in 0..sh.dim() {
            let v = TensorVector::from_code(sh, code, &p.zero());
            for i in 1..3 {
                // [E_i, F_i] = (K_i − K_i⁻¹)/(q − q⁻¹)
                let ef = act_f(&act_e(&v, i, &p).unwrap(), i, &p).unwrap();
                let fe = act_e(&act_f(&v, i, &p).unwrap(), i, &p).unwrap();
                let kk = act_k(&v, i, 1, &p).unwrap().sub(&act_k(&v, i, -1, &p).unwrap());
                let rhs = kk.scale(&qt.sub(&qti).inv().unwrap());
                assert_eq!(fe.sub(&ef), rhs, "i={i}");
                // K_i E_i K_i⁻¹ = q² E_i
                let a = act_k(&act_e(&act_k(&v, i, -1, &p).unwrap(), i, &p).unwrap(), i, 1, &p).unwrap();
                assert_eq!(a, act_e(&v, i, &p).unwrap().scale(&qt.pow_i(2)));
            }
            // E_1 and F_2 commute
            let a = act_f(&act_e(&v, 1, &p).unwrap(), 2, &p).unwrap();
            let b = act_e(&act_f(&v, 2, &p).unwrap(), 1, &p).unwrap();
            assert_eq!(a, b);
        }
    }

    #[test]
    fn divided_powers_integral() {
        let sh = Shape::new(3, 3, 1);
        let dom: Vec<u64> = (0..sh.dim()).collect();
        for l in 1..=3 {
            divided_power_lz(&sh, 1, l, &dom).unwrap();
        }
    }

    #[test]
    fn singular_space_examples() {
        let p = rparams(2);
        let sh = Shape::new(2, 1, 1);
        assert_eq!(singular_space(&vec![0, 0], &sh, &p, 2).unwrap().len(), 1);
        assert_eq!(singular_space(&vec![1, -1], &sh, &p, 2).unwrap().len(), 1);
        let sh = Shape::new(3, 2, 1);
        let dims: usize = crate::combinatorics::mixed_weights(2, 1, 3)
            .iter()
            .filter(|w| crate::combinatorics::is_dominant(w))
            .map(|w| singular_space(w, &sh, &p3(), 3).unwrap().len())
            .sum();
        // one highest weight vector per irreducible summand of V^{⊗2} ⊗ W
        assert_eq!(dims, 4);
    }

    fn p3() -> TensorParams<RF> {
        rparams(3)
    }

    #[test]
    fn singular_vectors_are_singular() {
        let p = rparams(4);
        for l in crate::combinatorics::enumerate_labels(2, 2).unwrap() {
            let vs = singular_vectors(&l, &p).unwrap();
            for v in &vs {
                assert!(!v.is_zero(), "{l}");
                for i in 1..4 {
                    assert!(act_e(v, i, &p).unwrap().is_zero(), "{l}");
                }
            }
        }
    }

    #[test]
    fn form_is_contravariant() {
        let p = rparams(2);
        let sh = Shape::new(2, 2, 1);
        let b = |c| TensorVector::from_code(sh, c, &p.zero());
        for x in 0..sh.dim() {
            for y in 0..sh.dim() {
                let (u, v) = (b(x), b(y));
                for g in Gen::generators(2, 1) {
                    let a = contravariant_form(&act_generator(&u, g, &p).unwrap(), &v, &p);
                    let c = contravariant_form(&u, &act_generator(&v, g, &p).unwrap(), &p);
                    assert_eq!(a, c, "{g} {x} {y}");
                }
            }
        }
    }

    #[test]
    fn singular_vectors_span_singular_space() {
        let p = rparams(4);
        for (r, s) in [(2, 2), (3, 1), (1, 2)] {
            let sh = Shape::new(4, r, s);
            for l in crate::combinatorics::enumerate_labels(r, s).unwrap() {
                let w = phi_map(&l, 4).unwrap();
                let vs = singular_vectors(&l, &p).unwrap();
                let codes = weight_space_codes(&sh, &w);
                let mat: Mat<RF> = vs.iter().map(|v| codes.iter().map(|c| v.map.get(c).cloned().unwrap_or_else(|| p.zero())).collect()).collect();
                for v in &vs {
                    assert!(v.map.keys().all(|c| sh.weight(*c) == w));
                }
                assert_eq!(crate::linalg::rank(&mat), vs.len(), "{l}");
                assert_eq!(singular_space(&w, &sh, &p, r + s).unwrap().len(), vs.len(), "{l}");
            }
        }
    }
}
