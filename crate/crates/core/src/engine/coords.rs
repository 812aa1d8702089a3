//! Faithful coordinates: an element x ↦ (v₀⁽¹⁾·x, …, v₀⁽ᵏ⁾·x) on seed vectors
//! in V^{r,s}, with the cellular basis images certified to have full rank.

use super::basis::CellularBasis;
use crate::combinatorics::phi_map;
use crate::error::{Result, WbqError};
use crate::linalg::{Mat, RowSolver};
use crate::scalars::Field;
use crate::tensor::{DenseRep, Shape, Space, TensorParams};
use crate::words::{Elem, Gen};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const MAX_SEEDS: usize = 4;

/// Union of the dominant weight spaces φ(f,λ), one per label.
pub fn seed_space(basis: &CellularBasis, n: usize) -> Result<Space> {
    let sh = Shape::new(n, basis.r, basis.s);
    let ws = basis.labels.iter().map(|l| phi_map(l, n)).collect::<Result<Vec<_>>>()?;
    Ok(Space::from_weights(sh, &ws))
}

/// Dense small-integer seed vectors, deterministic in (seed, index).
pub fn seed_vectors(dim: usize, seed: u64, k: usize) -> Vec<Vec<i64>> {
    (0..k)
        .map(|i| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_mul(0x9E37_79B9_7F4A_7C15).wrapping_add(i as u64));
            (0..dim).map(|_| rng.gen_range(-9..=9)).collect()
        })
        .collect()
}

#[derive(Clone, Debug)]
pub struct CoordSystem<K: Field> {
    pub rep: DenseRep<K>,
    pub seeds: Vec<Vec<K>>,
    /// Row a = coordinates of basis element a.
    pub images: Mat<K>,
    solver: RowSolver<K>,
}

impl<K: Field> CoordSystem<K> {
    /// Seeds from `seed_vectors`, adjoining seeds until the basis images have
    /// rank (r+s)!. Seeds first live on the dominant weight spaces; if four of
    /// them do not certify, the whole tensor space is used.
    pub fn build(basis: &CellularBasis, params: TensorParams<K>, seed: u64) -> Result<Self> {
        let small = seed_space(basis, params.n)?;
        match Self::build_on(basis, small, params.clone(), seed) {
            Err(WbqError::RankCertificationFailed { .. }) => {
                let sh = Shape::new(params.n, basis.r, basis.s);
                Self::build_on(basis, Space::full(sh), params, seed)
            }
            x => x,
        }
    }

    pub fn build_on(basis: &CellularBasis, space: Space, params: TensorParams<K>, seed: u64) -> Result<Self> {
        let rep = DenseRep::new(space, params);
        let z = rep.zero();
        let raw = seed_vectors(rep.space.dim(), seed, MAX_SEEDS);
        let mut seeds: Vec<Vec<K>> = vec![];
        let mut per_seed: Vec<Mat<K>> = vec![];
        let mut got = 0;
        for sv in raw {
            let v: Vec<K> = sv.iter().map(|&x| z.from_int_like(x)).collect();
            per_seed.push(basis.elems.iter().map(|e| rep.apply_elem(&v, &e.word)).collect());
            seeds.push(v);
            let images = concat_rows(&per_seed);
            let solver = RowSolver::new(&images, &z);
            got = solver.rank();
            if got == basis.len() {
                return Ok(CoordSystem { rep, seeds, images, solver });
            }
        }
        Err(WbqError::RankCertificationFailed { got, want: basis.len(), seeds: MAX_SEEDS })
    }

    /// Every basis vector of V^{r,s} as a seed: coordinates are operator images.
    pub fn operator_images(basis: &CellularBasis, params: TensorParams<K>) -> (Self, usize) {
        let sh = Shape::new(params.n, basis.r, basis.s);
        let rep = DenseRep::new(Space::full(sh), params);
        let z = rep.zero();
        let dim = rep.space.dim();
        let seeds: Vec<Vec<K>> = (0..dim).map(|i| (0..dim).map(|j| if i == j { z.one_like() } else { z.clone() }).collect()).collect();
        let per_seed: Vec<Mat<K>> = seeds.iter().map(|v| basis.elems.iter().map(|e| rep.apply_elem(v, &e.word)).collect()).collect();
        let images = concat_rows(&per_seed);
        let solver = RowSolver::new(&images, &z);
        let rk = solver.rank();
        (CoordSystem { rep, seeds, images, solver }, rk)
    }

    pub fn rank(&self) -> usize {
        self.solver.rank()
    }
    pub fn zero(&self) -> K {
        self.rep.zero()
    }

    /// Coordinates of the seeds acted on by x.
    pub fn image(&self, x: &Elem) -> Vec<K> {
        self.seeds.iter().flat_map(|v| self.rep.apply_elem(v, x)).collect()
    }

    /// Coordinates y acted on by a further element.
    pub fn act(&self, y: &[K], x: &Elem) -> Vec<K> {
        let d = self.rep.space.dim();
        y.chunks(d).flat_map(|c| self.rep.apply_elem(c, x)).collect()
    }

    /// Cellular-basis coefficients of a coordinate vector.
    pub fn expand(&self, y: &[K]) -> Result<Vec<K>> {
        self.solver.express(y).ok_or_else(|| WbqError::NotInSpan("nonzero residual against the cellular basis images".into()))
    }

    /// Right regular representation of a generator: row a = expansion of C_a·g.
    pub fn regular_matrix(&self, g: Gen) -> Result<Mat<K>> {
        let x = Elem::gen(g);
        self.images.iter().map(|row| self.expand(&self.act(row, &x))).collect()
    }

    /// Expansion of C_a·C_b.
    pub fn product(&self, basis: &CellularBasis, a: usize, b: usize) -> Result<Vec<K>> {
        self.expand(&self.act(&self.images[a], &basis.elems[b].word))
    }
}

fn concat_rows<K: Clone>(per_seed: &[Mat<K>]) -> Mat<K> {
    let n = per_seed[0].len();
    (0..n).map(|a| per_seed.iter().flat_map(|m| m[a].iter().cloned()).collect()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::{Fp, Ring, P1};

    type F = Fp<P1>;

    fn fparams(n: usize, q0: u64) -> TensorParams<F> {
        TensorParams::new(n, F::new(q0).inv().unwrap())
    }

    #[test]
    fn certifies_small_cases() {
        for (r, s) in [(1, 1), (2, 1), (1, 2), (2, 2), (3, 1), (2, 0), (0, 0)] {
            let b = CellularBasis::new(r, s);
            let c = CoordSystem::build(&b, fparams((r + s).max(1), 12345), 1).unwrap();
            assert_eq!(c.rank(), b.len(), "({r},{s})");
        }
    }

    #[test]
    fn expand_basis_images_is_indicator() {
        let b = CellularBasis::new(2, 1);
        let c = CoordSystem::build(&b, fparams(3, 777), 3).unwrap();
        for a in 0..b.len() {
            let e = c.expand(&c.images[a]).unwrap();
            for (i, x) in e.iter().enumerate() {
                assert_eq!(x.is_one(), i == a);
                assert!(i == a || x.is_zero());
            }
        }
    }

    #[test]
    fn adversarial_seed_is_extended() {
        // a pure basis vector cannot generate the whole algebra; build() must not rely on one seed
        let b = CellularBasis::new(2, 1);
        let p = fparams(3, 99);
        let rep = DenseRep::new(seed_space(&b, 3).unwrap(), p);
        let z = rep.zero();
        let mut v = vec![z.clone(); rep.space.dim()];
        v[0] = z.one_like();
        let rows: Mat<F> = b.elems.iter().map(|e| rep.apply_elem(&v, &e.word)).collect();
        assert!(crate::linalg::rank(&rows) < b.len());
    }
}
