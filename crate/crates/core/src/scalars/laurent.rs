use super::{Field, Poly, RatFn, Ring};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// Laurent polynomial in one variable with integer coefficients.
/// Stored as `c[k]` = coefficient of t^(lo+k), trimmed at both ends.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Lz {
    lo: i64,
    c: Vec<BigInt>,
}

impl Lz {
    fn trim(mut self) -> Self {
        while self.c.last().is_some_and(|x| x.is_zero()) {
            self.c.pop();
        }
        let k = self.c.iter().take_while(|x| x.is_zero()).count();
        if k == self.c.len() {
            return Lz::default();
        }
        self.c.drain(..k);
        self.lo += k as i64;
        self
    }
    pub fn zero() -> Self {
        Lz::default()
    }
    pub fn int(n: i64) -> Self {
        Lz { lo: 0, c: vec![BigInt::from(n)] }.trim()
    }
    /// c·t^e
    pub fn mono(c: i64, e: i64) -> Self {
        Lz { lo: e, c: vec![BigInt::from(c)] }.trim()
    }
    pub fn from_terms(terms: impl IntoIterator<Item = (i64, BigInt)>) -> Self {
        let mut acc = Lz::zero();
        for (e, c) in terms {
            acc = acc.add(&Lz { lo: e, c: vec![c] }.trim());
        }
        acc
    }
    pub fn terms(&self) -> impl Iterator<Item = (i64, &BigInt)> {
        self.c.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(move |(k, c)| (self.lo + k as i64, c))
    }
    pub fn low(&self) -> i64 {
        self.lo
    }
    pub fn high(&self) -> i64 {
        self.lo + self.c.len() as i64 - 1
    }
    /// Substitute t -> t^-1.
    pub fn flip(&self) -> Self {
        if self.c.is_empty() {
            return self.clone();
        }
        let mut c = self.c.clone();
        c.reverse();
        Lz { lo: -self.high(), c }
    }
    pub fn eval<K: Field>(&self, x: &K) -> K {
        if self.c.is_empty() {
            return x.zero_like();
        }
        let mut acc = x.zero_like();
        for a in self.c.iter().rev() {
            acc = acc.mul(x).add(&x.from_rat_like(&BigRational::from_integer(a.clone())));
        }
        acc.mul(&x.pow_i(self.lo))
    }
    pub fn to_ratfn(&self) -> RatFn {
        let z = BigRational::zero();
        let p = Poly::new(self.c.iter().map(|a| BigRational::from_integer(a.clone())).collect(), z.clone());
        RatFn::from_poly(p).mul(&RatFn::var_pow(&z, self.lo))
    }
}

impl Ring for Lz {
    fn zero_like(&self) -> Self {
        Lz::zero()
    }
    fn one_like(&self) -> Self {
        Lz::int(1)
    }
    fn from_int_like(&self, n: i64) -> Self {
        Lz::int(n)
    }
    fn is_zero(&self) -> bool {
        self.c.is_empty()
    }
    fn add(&self, o: &Self) -> Self {
        if self.c.is_empty() {
            return o.clone();
        }
        if o.c.is_empty() {
            return self.clone();
        }
        let lo = self.lo.min(o.lo);
        let hi = self.high().max(o.high());
        let mut c = vec![BigInt::zero(); (hi - lo + 1) as usize];
        for (k, a) in self.c.iter().enumerate() {
            c[(self.lo - lo) as usize + k] += a;
        }
        for (k, a) in o.c.iter().enumerate() {
            c[(o.lo - lo) as usize + k] += a;
        }
        Lz { lo, c }.trim()
    }
    fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }
    fn mul(&self, o: &Self) -> Self {
        if self.c.is_empty() || o.c.is_empty() {
            return Lz::zero();
        }
        let mut c = vec![BigInt::zero(); self.c.len() + o.c.len() - 1];
        for (i, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.c.iter().enumerate() {
                c[i + j] += a * b;
            }
        }
        Lz { lo: self.lo + o.lo, c }.trim()
    }
    fn neg(&self) -> Self {
        Lz { lo: self.lo, c: self.c.iter().map(|a| -a).collect() }
    }
    fn is_one(&self) -> bool {
        self.lo == 0 && self.c.len() == 1 && self.c[0].is_one()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::rat;

    #[test]
    fn arithmetic_and_eval() {
        let a = Lz::mono(1, 1).add(&Lz::mono(1, -1)); // q + q^-1
        let b = a.mul(&a); // q^2 + 2 + q^-2
        assert_eq!(b.low(), -2);
        assert_eq!(b.high(), 2);
        assert_eq!(b.eval(&rat(2)), BigRational::new(25.into(), 4.into()));
        assert_eq!(b.flip(), b);
        assert!(a.sub(&a).is_zero());
        assert_eq!(a.to_ratfn().eval(&rat(2)), Some(BigRational::new(5.into(), 2.into())));
    }
}
