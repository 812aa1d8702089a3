use super::{Field, Ring};
use num_rational::BigRational;

/// Dense univariate polynomial over a field, lowest degree first, trimmed.
/// `z` is a zero of the coefficient field, kept so that empty polynomials
/// still know their context.
#[derive(Clone, Debug)]
pub struct Poly<K: Field> {
    c: Vec<K>,
    z: K,
}

impl<K: Field> PartialEq for Poly<K> {
    fn eq(&self, o: &Self) -> bool {
        self.c == o.c
    }
}

impl<K: Field> Poly<K> {
    pub fn new(mut c: Vec<K>, z: K) -> Self {
        while c.last().is_some_and(|x| x.is_zero()) {
            c.pop();
        }
        Poly { c, z }
    }
    pub fn zero(z: &K) -> Self {
        Poly { c: vec![], z: z.zero_like() }
    }
    pub fn constant(k: K) -> Self {
        let z = k.zero_like();
        Poly::new(vec![k], z)
    }
    pub fn monomial(k: K, e: usize) -> Self {
        let z = k.zero_like();
        let mut c = vec![z.clone(); e];
        c.push(k);
        Poly::new(c, z)
    }
    /// The variable x.
    pub fn x(z: &K) -> Self {
        Poly::monomial(z.one_like(), 1)
    }
    pub fn coeffs(&self) -> &[K] {
        &self.c
    }
    pub fn coeff(&self, i: usize) -> K {
        self.c.get(i).cloned().unwrap_or_else(|| self.z.clone())
    }
    pub fn zero_coef(&self) -> &K {
        &self.z
    }
    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }
    pub fn deg(&self) -> Option<usize> {
        self.c.len().checked_sub(1)
    }
    pub fn lead(&self) -> K {
        self.c.last().cloned().unwrap_or_else(|| self.z.clone())
    }
    /// Lowest exponent with a nonzero coefficient.
    pub fn low(&self) -> Option<usize> {
        self.c.iter().position(|x| !x.is_zero())
    }
    pub fn is_monomial(&self) -> bool {
        match self.low() {
            Some(l) => l + 1 == self.c.len(),
            None => false,
        }
    }
    pub fn shift_down(&self, k: usize) -> Self {
        Poly::new(self.c[k.min(self.c.len())..].to_vec(), self.z.clone())
    }
    pub fn shift_up(&self, k: usize) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut c = vec![self.z.clone(); k];
        c.extend(self.c.iter().cloned());
        Poly::new(c, self.z.clone())
    }
    pub fn add(&self, o: &Self) -> Self {
        let n = self.c.len().max(o.c.len());
        let c = (0..n)
            .map(|i| match (self.c.get(i), o.c.get(i)) {
                (Some(a), Some(b)) => a.add(b),
                (Some(a), None) => a.clone(),
                (None, Some(b)) => b.clone(),
                _ => unreachable!(),
            })
            .collect();
        Poly::new(c, self.z.clone())
    }
    pub fn neg(&self) -> Self {
        Poly::new(self.c.iter().map(|a| a.neg()).collect(), self.z.clone())
    }
    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }
    pub fn scale(&self, k: &K) -> Self {
        if k.is_zero() {
            return Poly::zero(&self.z);
        }
        Poly::new(self.c.iter().map(|a| a.mul(k)).collect(), self.z.clone())
    }
    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Poly::zero(&self.z);
        }
        let mut c = vec![self.z.clone(); self.c.len() + o.c.len() - 1];
        for (i, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.c.iter().enumerate() {
                if !b.is_zero() {
                    c[i + j] = c[i + j].add(&a.mul(b));
                }
            }
        }
        Poly::new(c, self.z.clone())
    }
    pub fn pow(&self, e: usize) -> Self {
        let mut acc = Poly::constant(self.z.one_like());
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }
    pub fn divrem(&self, d: &Self) -> (Self, Self) {
        let dd = d.deg().expect("division by zero polynomial");
        let inv = d.lead().inv().unwrap();
        let mut r = self.c.clone();
        if r.len() <= dd {
            return (Poly::zero(&self.z), self.clone());
        }
        let mut q = vec![self.z.clone(); r.len() - dd];
        for k in (0..q.len()).rev() {
            let co = r[k + dd].mul(&inv);
            if co.is_zero() {
                continue;
            }
            for (j, b) in d.c.iter().enumerate() {
                if !b.is_zero() {
                    r[k + j] = r[k + j].sub(&co.mul(b));
                }
            }
            q[k] = co;
        }
        r.truncate(dd);
        (Poly::new(q, self.z.clone()), Poly::new(r, self.z.clone()))
    }
    pub fn rem(&self, d: &Self) -> Self {
        self.divrem(d).1
    }
    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let l = self.lead();
        if l.is_one() {
            return self.clone();
        }
        self.scale(&l.inv().unwrap())
    }
    pub fn gcd(a: &Self, b: &Self) -> Self {
        let (mut x, mut y) = (a.monic(), b.monic());
        while !y.is_zero() {
            let r = x.rem(&y).monic();
            x = y;
            y = r;
        }
        x
    }
    /// Returns (g, s) with s·a ≡ g (mod b), g = gcd monic.
    pub fn half_ext_gcd(a: &Self, b: &Self) -> (Self, Self) {
        let (mut r0, mut r1) = (a.clone(), b.clone());
        let (mut s0, mut s1) = (Poly::constant(a.z.one_like()), Poly::zero(&a.z));
        while !r1.is_zero() {
            let (q, r) = r0.divrem(&r1);
            let s = s0.sub(&q.mul(&s1));
            r0 = r1;
            r1 = r;
            s0 = s1;
            s1 = s;
        }
        let l = r0.lead().inv().unwrap();
        (r0.scale(&l), s0.scale(&l))
    }
    pub fn eval(&self, x: &K) -> K {
        let mut acc = self.z.clone();
        for a in self.c.iter().rev() {
            acc = acc.mul(x).add(a);
        }
        acc
    }
    /// Evaluates with coefficients mapped into another ring first.
    pub fn eval_map<T: Ring>(&self, x: &T, f: impl Fn(&K) -> T) -> T {
        let mut acc = x.zero_like();
        for a in self.c.iter().rev() {
            acc = acc.mul(x).add(&f(a));
        }
        acc
    }
    pub fn map<L: Field>(&self, zl: &L, f: impl Fn(&K) -> L) -> Poly<L> {
        Poly::new(self.c.iter().map(f).collect(), zl.zero_like())
    }
}

/// Reduced fraction of polynomials with monic denominator; a canonical form.
#[derive(Clone, Debug, PartialEq)]
pub struct Frac<K: Field> {
    n: Poly<K>,
    d: Poly<K>,
}

/// Rational functions in one variable over the rationals.
pub type RatFn = Frac<BigRational>;

impl<K: Field> Frac<K> {
    pub fn from_parts(n: Poly<K>, d: Poly<K>) -> Option<Self> {
        if d.is_zero() {
            return None;
        }
        Some(Self::normalize(n, d))
    }
    fn normalize(n: Poly<K>, d: Poly<K>) -> Self {
        if n.is_zero() {
            let one = Poly::constant(d.z.one_like());
            return Frac { n, d: one };
        }
        if d.is_monomial() {
            let k = d.low().unwrap();
            let l = d.lead().inv().unwrap();
            let m = k.min(n.low().unwrap());
            let n = n.scale(&l).shift_down(m);
            let d = Poly::monomial(d.z.one_like(), k - m);
            return Frac { n, d };
        }
        let g = Poly::gcd(&n, &d);
        let (mut n, mut d) = if g.deg() == Some(0) { (n, d) } else { (n.divrem(&g).0, d.divrem(&g).0) };
        let l = d.lead();
        if !l.is_one() {
            let li = l.inv().unwrap();
            n = n.scale(&li);
            d = d.scale(&li);
        }
        Frac { n, d }
    }
    pub fn from_poly(p: Poly<K>) -> Self {
        let d = Poly::constant(p.z.one_like());
        Frac { n: p, d }
    }
    pub fn constant(k: K) -> Self {
        Self::from_poly(Poly::constant(k))
    }
    /// The variable t.
    pub fn var(z: &K) -> Self {
        Self::from_poly(Poly::x(z))
    }
    /// t^e for any integer e.
    pub fn var_pow(z: &K, e: i64) -> Self {
        let one = z.one_like();
        if e >= 0 {
            Self::from_poly(Poly::monomial(one, e as usize))
        } else {
            Frac { n: Poly::constant(one.clone()), d: Poly::monomial(one, (-e) as usize) }
        }
    }
    pub fn num(&self) -> &Poly<K> {
        &self.n
    }
    pub fn den(&self) -> &Poly<K> {
        &self.d
    }
    pub fn base_zero(&self) -> &K {
        &self.n.z
    }
    pub fn is_poly(&self) -> bool {
        self.d.deg() == Some(0)
    }
    /// True when the denominator is a power of the variable.
    pub fn is_laurent(&self) -> bool {
        self.d.is_monomial()
    }
    pub fn eval(&self, x: &K) -> Option<K> {
        let d = self.d.eval(x);
        d.inv().map(|i| self.n.eval(x).mul(&i))
    }
}

impl<K: Field> Ring for Frac<K> {
    fn zero_like(&self) -> Self {
        Frac { n: Poly::zero(&self.n.z), d: Poly::constant(self.n.z.one_like()) }
    }
    fn one_like(&self) -> Self {
        Frac::constant(self.n.z.one_like())
    }
    fn from_int_like(&self, n: i64) -> Self {
        Frac::constant(self.n.z.from_int_like(n))
    }
    fn is_zero(&self) -> bool {
        self.n.is_zero()
    }
    fn add(&self, o: &Self) -> Self {
        if self.is_zero() {
            return o.clone();
        }
        if o.is_zero() {
            return self.clone();
        }
        if self.d == o.d {
            return Frac::normalize(self.n.add(&o.n), self.d.clone());
        }
        if self.d.is_monomial() && o.d.is_monomial() {
            let (a, b) = (self.d.deg().unwrap(), o.d.deg().unwrap());
            let m = a.max(b);
            let n = self.n.shift_up(m - a).add(&o.n.shift_up(m - b));
            return Frac::normalize(n, Poly::monomial(self.n.z.one_like(), m));
        }
        let g = Poly::gcd(&self.d, &o.d);
        if g.deg() == Some(0) {
            return Frac::normalize(self.n.mul(&o.d).add(&o.n.mul(&self.d)), self.d.mul(&o.d));
        }
        let (a, b) = (self.d.divrem(&g).0, o.d.divrem(&g).0);
        Frac::normalize(self.n.mul(&b).add(&o.n.mul(&a)), a.mul(&o.d))
    }
    fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }
    fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return self.zero_like();
        }
        if self.is_poly() && o.is_poly() {
            return Frac { n: self.n.mul(&o.n), d: self.d.clone() };
        }
        if self.d.is_monomial() && o.d.is_monomial() {
            return Frac::normalize(self.n.mul(&o.n), self.d.mul(&o.d));
        }
        // cross-cancel before multiplying
        let g1 = Poly::gcd(&self.n, &o.d);
        let g2 = Poly::gcd(&o.n, &self.d);
        let div = |p: &Poly<K>, g: &Poly<K>| if g.deg() == Some(0) { p.clone() } else { p.divrem(g).0 };
        let n = div(&self.n, &g1).mul(&div(&o.n, &g2));
        let d = div(&self.d, &g2).mul(&div(&o.d, &g1));
        let l = d.lead().inv().unwrap();
        Frac { n: n.scale(&l), d: d.scale(&l) }
    }
    fn neg(&self) -> Self {
        Frac { n: self.n.neg(), d: self.d.clone() }
    }
    fn is_one(&self) -> bool {
        self.is_poly() && self.n.deg() == Some(0) && self.n.lead().is_one()
    }
}

impl<K: Field> Field for Frac<K> {
    fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(Frac::normalize(self.d.clone(), self.n.clone()))
        }
    }
    fn from_rat_like(&self, r: &BigRational) -> Self {
        Frac::constant(self.n.z.from_rat_like(r))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::rat;

    fn q() -> RatFn {
        RatFn::var(&rat(0))
    }

    #[test]
    fn laurent_normal_form() {
        let q = q();
        let qi = q.inv().unwrap();
        let x = q.add(&qi);
        // (q^2+1)/q
        assert_eq!(x.den().deg(), Some(1));
        assert_eq!(x.num().deg(), Some(2));
        assert!(x.sub(&qi).sub(&q).is_zero());
    }

    #[test]
    fn cancellation() {
        let q = q();
        let one = q.one_like();
        let a = q.mul(&q).sub(&one); // q^2-1
        let b = q.sub(&one);
        let c = a.div(&b).unwrap();
        assert_eq!(c, q.add(&one));
        assert!(c.is_poly());
    }

    #[test]
    fn gcd_and_inverse_mod() {
        let z = rat(0);
        let x = Poly::x(&z);
        let one = Poly::constant(rat(1));
        let f = x.mul(&x).add(&one); // x^2+1
        let (g, s) = Poly::half_ext_gcd(&x.add(&one), &f);
        assert_eq!(g, one);
        assert_eq!(s.mul(&x.add(&one)).rem(&f), one);
    }
}
