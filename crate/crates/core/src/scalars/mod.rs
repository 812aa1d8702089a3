//! Exact coefficient arithmetic.
//!
//! Everything downstream is written against the [`Ring`] / [`Field`] traits so the
//! same code runs over exact fields and over word-size prime fields.

mod cyclo;
mod fp;
mod laurent;
mod poly;
mod spec;
mod text;

pub use cyclo::{cyclotomic_poly, Cyc, CycCtx};
pub use fp::{rational_reconstruct, Fp, P1, P2};
pub use laurent::Lz;
pub use poly::{Frac, Poly, RatFn};
pub use spec::{FieldSpec, QChar, RhoSpec, Scalar};
pub use text::{parse_scalar, MPoly};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use std::fmt::Debug;

/// Commutative ring element that can manufacture constants of its own kind.
pub trait Ring: Clone + PartialEq + Debug + Send + Sync + 'static {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn from_int_like(&self, n: i64) -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn neg(&self) -> Self;

    fn is_one(&self) -> bool {
        self.sub(&self.one_like()).is_zero()
    }
    fn pow_u(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = self.one_like();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }
}

pub trait Field: Ring {
    fn inv(&self) -> Option<Self>;
    fn from_rat_like(&self, r: &BigRational) -> Self;

    fn div(&self, o: &Self) -> Option<Self> {
        o.inv().map(|i| self.mul(&i))
    }
    /// Integer power; panics on a negative power of zero.
    fn pow_i(&self, e: i64) -> Self {
        if e >= 0 {
            self.pow_u(e as u64)
        } else {
            self.inv().expect("negative power of zero").pow_u(e.unsigned_abs())
        }
    }
}

impl Ring for BigRational {
    fn zero_like(&self) -> Self {
        BigRational::zero()
    }
    fn one_like(&self) -> Self {
        BigRational::one()
    }
    fn from_int_like(&self, n: i64) -> Self {
        BigRational::from_integer(BigInt::from(n))
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn neg(&self) -> Self {
        -self
    }
    fn is_one(&self) -> bool {
        One::is_one(self)
    }
}

impl Field for BigRational {
    fn inv(&self) -> Option<Self> {
        if Zero::is_zero(self) {
            None
        } else {
            Some(self.recip())
        }
    }
    fn from_rat_like(&self, r: &BigRational) -> Self {
        r.clone()
    }
}

pub fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}
