use super::{Field, Ring};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::ToPrimitive;

/// Two 62-bit primes used for modular evaluation and cross-checking.
pub const P1: u64 = 4_611_686_018_427_387_847;
pub const P2: u64 = 4_611_686_018_427_387_817;

/// Element of the prime field F_P.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Default)]
pub struct Fp<const P: u64>(pub u64);

impl<const P: u64> Fp<P> {
    pub fn new(x: u64) -> Self {
        Fp(x % P)
    }
    pub fn from_i64(x: i64) -> Self {
        let m = x.rem_euclid(P as i64) as u64;
        Fp(m)
    }
    pub fn from_bigint(x: &BigInt) -> Self {
        let m = x.mod_floor(&BigInt::from(P));
        Fp(m.to_u64().unwrap())
    }
    #[inline]
    pub fn mulm(a: u64, b: u64) -> u64 {
        ((a as u128 * b as u128) % P as u128) as u64
    }
    pub fn powm(mut a: u64, mut e: u64) -> u64 {
        let mut r = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                r = Self::mulm(r, a);
            }
            a = Self::mulm(a, a);
            e >>= 1;
        }
        r
    }
    pub const fn modulus() -> u64 {
        P
    }
}

impl<const P: u64> Ring for Fp<P> {
    fn zero_like(&self) -> Self {
        Fp(0)
    }
    fn one_like(&self) -> Self {
        Fp(1)
    }
    fn from_int_like(&self, n: i64) -> Self {
        Fp::from_i64(n)
    }
    #[inline]
    fn is_zero(&self) -> bool {
        self.0 == 0
    }
    #[inline]
    fn add(&self, o: &Self) -> Self {
        let s = self.0 + o.0;
        Fp(if s >= P { s - P } else { s })
    }
    #[inline]
    fn sub(&self, o: &Self) -> Self {
        Fp(if self.0 >= o.0 { self.0 - o.0 } else { self.0 + P - o.0 })
    }
    #[inline]
    fn mul(&self, o: &Self) -> Self {
        Fp(Self::mulm(self.0, o.0))
    }
    #[inline]
    fn neg(&self) -> Self {
        Fp(if self.0 == 0 { 0 } else { P - self.0 })
    }
    fn is_one(&self) -> bool {
        self.0 == 1
    }
}

impl<const P: u64> Field for Fp<P> {
    fn inv(&self) -> Option<Self> {
        if self.0 == 0 {
            None
        } else {
            Some(Fp(Self::powm(self.0, P - 2)))
        }
    }
    fn from_rat_like(&self, r: &BigRational) -> Self {
        let n = Fp::<P>::from_bigint(r.numer());
        let d = Fp::<P>::from_bigint(r.denom());
        n.mul(&d.inv().expect("denominator divisible by the modulus"))
    }
}

/// Rational reconstruction of `a` mod P: finds n/d with |n|,|d| < sqrt(P/2).
pub fn rational_reconstruct<const P: u64>(a: Fp<P>) -> Option<BigRational> {
    let bound = ((P / 2) as f64).sqrt() as i128;
    let (mut r0, mut r1) = (P as i128, a.0 as i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 > bound {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    if t1 == 0 || t1.abs() > bound {
        return None;
    }
    let (n, d) = if t1 < 0 { (-r1, -t1) } else { (r1, t1) };
    Some(BigRational::new(BigInt::from(n), BigInt::from(d)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::rat;

    #[test]
    fn inverse_and_reconstruction() {
        let x = Fp::<P1>::from_i64(-7);
        assert!(x.mul(&x.inv().unwrap()).is_one());
        let third = Fp::<P1>(0).from_rat_like(&BigRational::new(5.into(), (-3).into()));
        assert_eq!(rational_reconstruct(third), Some(BigRational::new((-5).into(), 3.into())));
        assert_eq!(rational_reconstruct(Fp::<P2>::from_i64(-12)), Some(rat(-12)));
    }
}
