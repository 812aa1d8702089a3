use super::{rat, Field, Poly, Ring};
use num_rational::BigRational;
use num_traits::Zero;
use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

/// The m-th cyclotomic polynomial over the rationals.
pub fn cyclotomic_poly(m: u32) -> Poly<BigRational> {
    let mut p = Poly::monomial(rat(1), m as usize).sub(&Poly::constant(rat(1)));
    for d in 1..m {
        if m % d == 0 {
            p = p.divrem(&cyclotomic_poly(d)).0;
        }
    }
    p
}

#[derive(Debug)]
pub struct CycCtx {
    pub m: u32,
    pub phi: Poly<BigRational>,
}

fn ctx(m: u32) -> Arc<CycCtx> {
    static CACHE: OnceLock<Mutex<HashMap<u32, Arc<CycCtx>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    let mut g = cache.lock().unwrap();
    g.entry(m).or_insert_with(|| Arc::new(CycCtx { m, phi: cyclotomic_poly(m) })).clone()
}

/// Element of Q(ζ_m), stored as its reduced residue modulo Φ_m.
#[derive(Clone, Debug)]
pub struct Cyc {
    ctx: Arc<CycCtx>,
    p: Poly<BigRational>,
}

impl PartialEq for Cyc {
    fn eq(&self, o: &Self) -> bool {
        self.ctx.m == o.ctx.m && self.p == o.p
    }
}

impl Cyc {
    pub fn zero(m: u32) -> Self {
        Cyc { ctx: ctx(m), p: Poly::zero(&rat(0)) }
    }
    pub fn from_poly(m: u32, p: Poly<BigRational>) -> Self {
        let c = ctx(m);
        let p = p.rem(&c.phi);
        Cyc { ctx: c, p }
    }
    /// ζ^e for any integer e.
    pub fn zeta_pow(m: u32, e: i64) -> Self {
        let k = e.rem_euclid(m as i64) as usize;
        Cyc::from_poly(m, Poly::monomial(rat(1), k))
    }
    pub fn order(&self) -> u32 {
        self.ctx.m
    }
    pub fn degree(&self) -> usize {
        self.ctx.phi.deg().unwrap()
    }
    pub fn poly(&self) -> &Poly<BigRational> {
        &self.p
    }
    fn wrap(&self, p: Poly<BigRational>) -> Self {
        Cyc { ctx: self.ctx.clone(), p }
    }
}

impl Ring for Cyc {
    fn zero_like(&self) -> Self {
        self.wrap(Poly::zero(&rat(0)))
    }
    fn one_like(&self) -> Self {
        self.wrap(Poly::constant(rat(1)))
    }
    fn from_int_like(&self, n: i64) -> Self {
        self.wrap(Poly::constant(rat(n)))
    }
    fn is_zero(&self) -> bool {
        self.p.is_zero()
    }
    fn add(&self, o: &Self) -> Self {
        self.wrap(self.p.add(&o.p))
    }
    fn sub(&self, o: &Self) -> Self {
        self.wrap(self.p.sub(&o.p))
    }
    fn mul(&self, o: &Self) -> Self {
        if self.p.is_zero() || o.p.is_zero() {
            return self.zero_like();
        }
        self.wrap(self.p.mul(&o.p).rem(&self.ctx.phi))
    }
    fn neg(&self) -> Self {
        self.wrap(self.p.neg())
    }
    fn is_one(&self) -> bool {
        self.p.deg() == Some(0) && self.p.lead() == rat(1)
    }
}

impl Field for Cyc {
    fn inv(&self) -> Option<Self> {
        if self.p.is_zero() {
            return None;
        }
        let (g, s) = Poly::half_ext_gcd(&self.p, &self.ctx.phi);
        debug_assert_eq!(g.deg(), Some(0));
        Some(self.wrap(s.rem(&self.ctx.phi)))
    }
    fn from_rat_like(&self, r: &BigRational) -> Self {
        if Zero::is_zero(r) {
            return self.zero_like();
        }
        self.wrap(Poly::constant(r.clone()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclotomic_polynomials() {
        assert_eq!(cyclotomic_poly(4).coeffs(), &[rat(1), rat(0), rat(1)]);
        assert_eq!(cyclotomic_poly(6).coeffs(), &[rat(1), rat(-1), rat(1)]);
        assert_eq!(cyclotomic_poly(12).deg(), Some(4));
        assert_eq!(cyclotomic_poly(11).deg(), Some(10));
    }

    #[test]
    fn roots_of_unity() {
        let z = Cyc::zeta_pow(6, 1);
        assert!(z.pow_u(6).is_one());
        assert!(!z.pow_u(3).is_one());
        let w = z.add(&z.one_like());
        assert!(w.mul(&w.inv().unwrap()).is_one());
        assert_eq!(Cyc::zeta_pow(5, -1), Cyc::zeta_pow(5, 1).inv().unwrap());
    }
}
