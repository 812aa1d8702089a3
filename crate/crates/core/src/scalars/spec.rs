use super::{rat, Cyc, Field, Frac, Lz, Poly, RatFn, Ring};
use crate::error::{Result, WbqError};
use num_rational::BigRational;
use std::fmt;
use std::str::FromStr;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum RhoSpec {
    /// ρ = ζ^a
    Power(i64),
    /// ρ transcendental over Q(ζ)
    Free,
}

/// Which field the parameters (q, ρ) live in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FieldSpec {
    Generic,
    /// ρ = q^a inside Q(q)
    QPower(i64),
    /// q = ζ_m
    Cyclotomic { m: u32, rho: RhoSpec },
}

/// Quantum characteristic.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum QChar {
    Finite(u32),
    Infinite,
}

impl QChar {
    pub fn exceeds(&self, k: usize) -> bool {
        match self {
            QChar::Infinite => true,
            QChar::Finite(e) => (*e as usize) > k,
        }
    }
}

impl fmt::Display for QChar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            QChar::Infinite => write!(f, "inf"),
            QChar::Finite(e) => write!(f, "{e}"),
        }
    }
}

/// An exact field element tagged by the kind of field it lives in.
#[derive(Clone, Debug, PartialEq)]
pub enum Scalar {
    /// Q(q)
    Q(RatFn),
    /// Q(ζ)
    Cy(Cyc),
    /// Q(ζ)(ρ)
    CyR(Frac<Cyc>),
    /// Q(q)(ρ)
    Gen(Frac<RatFn>),
}

macro_rules! binop {
    ($a:expr, $b:expr, $m:ident) => {
        match ($a, $b) {
            (Scalar::Q(x), Scalar::Q(y)) => Scalar::Q(x.$m(y)),
            (Scalar::Cy(x), Scalar::Cy(y)) => Scalar::Cy(x.$m(y)),
            (Scalar::CyR(x), Scalar::CyR(y)) => Scalar::CyR(x.$m(y)),
            (Scalar::Gen(x), Scalar::Gen(y)) => Scalar::Gen(x.$m(y)),
            (x, y) => panic!("mixed scalar fields: {:?} vs {:?}", x, y),
        }
    };
}

macro_rules! unop {
    ($a:expr, $x:ident => $e:expr) => {
        match $a {
            Scalar::Q($x) => Scalar::Q($e),
            Scalar::Cy($x) => Scalar::Cy($e),
            Scalar::CyR($x) => Scalar::CyR($e),
            Scalar::Gen($x) => Scalar::Gen($e),
        }
    };
}

impl Ring for Scalar {
    fn zero_like(&self) -> Self {
        unop!(self, x => x.zero_like())
    }
    fn one_like(&self) -> Self {
        unop!(self, x => x.one_like())
    }
    fn from_int_like(&self, n: i64) -> Self {
        unop!(self, x => x.from_int_like(n))
    }
    fn is_zero(&self) -> bool {
        match self {
            Scalar::Q(x) => x.is_zero(),
            Scalar::Cy(x) => x.is_zero(),
            Scalar::CyR(x) => x.is_zero(),
            Scalar::Gen(x) => x.is_zero(),
        }
    }
    fn add(&self, o: &Self) -> Self {
        binop!(self, o, add)
    }
    fn sub(&self, o: &Self) -> Self {
        binop!(self, o, sub)
    }
    fn mul(&self, o: &Self) -> Self {
        binop!(self, o, mul)
    }
    fn neg(&self) -> Self {
        unop!(self, x => x.neg())
    }
    fn is_one(&self) -> bool {
        match self {
            Scalar::Q(x) => x.is_one(),
            Scalar::Cy(x) => x.is_one(),
            Scalar::CyR(x) => x.is_one(),
            Scalar::Gen(x) => x.is_one(),
        }
    }
}

impl Field for Scalar {
    fn inv(&self) -> Option<Self> {
        Some(match self {
            Scalar::Q(x) => Scalar::Q(x.inv()?),
            Scalar::Cy(x) => Scalar::Cy(x.inv()?),
            Scalar::CyR(x) => Scalar::CyR(x.inv()?),
            Scalar::Gen(x) => Scalar::Gen(x.inv()?),
        })
    }
    fn from_rat_like(&self, r: &BigRational) -> Self {
        unop!(self, x => x.from_rat_like(r))
    }
}

fn ratfn_zero() -> RatFn {
    RatFn::constant(rat(0))
}

/// Maps a rational function of q to Q(ζ_m) via q ↦ ζ.
pub(crate) fn ratfn_to_cyc(m: u32, x: &RatFn) -> Result<Cyc> {
    let z = Cyc::zeta_pow(m, 1);
    let lift = |c: &BigRational| z.from_rat_like(c);
    let n = x.num().eval_map(&z, lift);
    let d = x.den().eval_map(&z, lift);
    let di = d.inv().ok_or_else(|| WbqError::DenominatorVanishes(format!("q-denominator vanishes at q = zeta_{m}")))?;
    Ok(n.mul(&di))
}

impl FieldSpec {
    pub fn validate(&self) -> Result<()> {
        if let FieldSpec::Cyclotomic { m, .. } = self {
            if *m <= 2 {
                return Err(WbqError::InvalidInput(format!("cyclotomic order m = {m} forces q^2 = 1")));
            }
        }
        Ok(())
    }

    /// Zero of the ambient field.
    pub fn zero(&self) -> Scalar {
        match *self {
            FieldSpec::Generic => Scalar::Gen(Frac::constant(ratfn_zero())),
            FieldSpec::QPower(_) => Scalar::Q(ratfn_zero()),
            FieldSpec::Cyclotomic { m, rho: RhoSpec::Power(_) } => Scalar::Cy(Cyc::zero(m)),
            FieldSpec::Cyclotomic { m, rho: RhoSpec::Free } => Scalar::CyR(Frac::constant(Cyc::zero(m))),
        }
    }
    pub fn one(&self) -> Scalar {
        self.zero().one_like()
    }
    pub fn int(&self, n: i64) -> Scalar {
        self.zero().from_int_like(n)
    }

    pub fn q(&self) -> Scalar {
        match *self {
            FieldSpec::Generic => Scalar::Gen(Frac::constant(RatFn::var(&rat(0)))),
            FieldSpec::QPower(_) => Scalar::Q(RatFn::var(&rat(0))),
            FieldSpec::Cyclotomic { m, rho: RhoSpec::Power(_) } => Scalar::Cy(Cyc::zeta_pow(m, 1)),
            FieldSpec::Cyclotomic { m, rho: RhoSpec::Free } => Scalar::CyR(Frac::constant(Cyc::zeta_pow(m, 1))),
        }
    }

    pub fn rho(&self) -> Scalar {
        match *self {
            FieldSpec::Generic => Scalar::Gen(Frac::var(&ratfn_zero())),
            FieldSpec::QPower(a) => self.q().pow_i(a),
            FieldSpec::Cyclotomic { m, rho: RhoSpec::Power(a) } => Scalar::Cy(Cyc::zeta_pow(m, a)),
            FieldSpec::Cyclotomic { m, rho: RhoSpec::Free } => Scalar::CyR(Frac::var(&Cyc::zero(m))),
        }
    }

    /// δ = (ρ − ρ⁻¹)/(q − q⁻¹)
    pub fn delta(&self) -> Scalar {
        let q = self.q();
        let r = self.rho();
        let num = r.sub(&r.inv().unwrap());
        let den = q.sub(&q.inv().unwrap());
        num.div(&den).expect("q^2 = 1 excluded by validation")
    }

    /// [ℓ] = q^{ℓ-1} + q^{ℓ-3} + ... + q^{1-ℓ}
    pub fn quantum_integer(&self, l: u64) -> Scalar {
        let q = self.q();
        let mut acc = self.zero();
        let l = l as i64;
        for k in 0..l {
            acc = acc.add(&q.pow_i(l - 1 - 2 * k));
        }
        acc
    }

    pub fn quantum_factorial(&self, l: u64) -> Scalar {
        (1..=l).fold(self.one(), |acc, k| acc.mul(&self.quantum_integer(k)))
    }

    /// Multiplicative order of q², or ∞.
    pub fn quantum_characteristic(&self) -> QChar {
        match *self {
            FieldSpec::Cyclotomic { m, .. } => QChar::Finite(if m % 2 == 0 { m / 2 } else { m }),
            _ => QChar::Infinite,
        }
    }

    /// Evaluates a Laurent polynomial at q.
    pub fn eval_lz(&self, l: &Lz) -> Scalar {
        l.eval(&self.q())
    }

    /// Whether ρ is an explicit power q^a (a ∈ Z), and which.
    pub fn rho_exponent(&self) -> Option<i64> {
        match *self {
            FieldSpec::QPower(a) => Some(a),
            FieldSpec::Cyclotomic { rho: RhoSpec::Power(a), .. } => Some(a),
            _ => None,
        }
    }

    /// Base change of a Generic-mode scalar into this field.
    pub fn specialize(&self, x: &Scalar) -> Result<Scalar> {
        let g = match x {
            Scalar::Gen(g) => g,
            other => {
                if self.zero().same_kind(other) {
                    return Ok(other.clone());
                }
                return Err(WbqError::InvalidInput("specialize expects a Generic-mode scalar".into()));
            }
        };
        let vanish = || WbqError::DenominatorVanishes(format!("denominator vanishes under {self}"));
        match *self {
            FieldSpec::Generic => Ok(x.clone()),
            FieldSpec::QPower(a) => {
                let r = RatFn::var_pow(&rat(0), a);
                let n = g.num().eval(&r);
                let d = g.den().eval(&r);
                Ok(Scalar::Q(n.div(&d).ok_or_else(vanish)?))
            }
            FieldSpec::Cyclotomic { m, rho } => {
                let map = |p: &Poly<RatFn>| -> Result<Poly<Cyc>> {
                    let c = p.coeffs().iter().map(|c| ratfn_to_cyc(m, c)).collect::<Result<Vec<_>>>()?;
                    Ok(Poly::new(c, Cyc::zero(m)))
                };
                let n = map(g.num())?;
                let d = map(g.den())?;
                match rho {
                    RhoSpec::Power(a) => {
                        let r = Cyc::zeta_pow(m, a);
                        let dv = d.eval(&r);
                        Ok(Scalar::Cy(n.eval(&r).div(&dv).ok_or_else(vanish)?))
                    }
                    RhoSpec::Free => Ok(Scalar::CyR(Frac::from_parts(n, d).ok_or_else(vanish)?)),
                }
            }
        }
    }

    /// A rational function of q, read in this field.
    pub fn from_ratfn(&self, x: &RatFn) -> Result<Scalar> {
        match *self {
            FieldSpec::Generic => Ok(Scalar::Gen(Frac::constant(x.clone()))),
            FieldSpec::QPower(_) => Ok(Scalar::Q(x.clone())),
            FieldSpec::Cyclotomic { m, rho: RhoSpec::Power(_) } => Ok(Scalar::Cy(ratfn_to_cyc(m, x)?)),
            FieldSpec::Cyclotomic { m, rho: RhoSpec::Free } => Ok(Scalar::CyR(Frac::constant(ratfn_to_cyc(m, x)?))),
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        use serde_json::json;
        match *self {
            FieldSpec::Generic => json!({"mode": "generic", "expr": self.to_string()}),
            FieldSpec::QPower(a) => json!({"mode": "qpow", "a": a, "expr": self.to_string()}),
            FieldSpec::Cyclotomic { m, rho } => {
                let r = match rho {
                    RhoSpec::Power(a) => json!({"power": a}),
                    RhoSpec::Free => json!("free"),
                };
                json!({"mode": "cyclo", "m": m, "rho": r, "e": self.quantum_characteristic().to_string(), "expr": self.to_string()})
            }
        }
    }
}

impl Scalar {
    pub fn same_kind(&self, o: &Scalar) -> bool {
        match (self, o) {
            (Scalar::Q(_), Scalar::Q(_)) | (Scalar::Gen(_), Scalar::Gen(_)) => true,
            (Scalar::Cy(a), Scalar::Cy(b)) => a.order() == b.order(),
            (Scalar::CyR(a), Scalar::CyR(b)) => a.base_zero().order() == b.base_zero().order(),
            _ => false,
        }
    }

    /// The value as a rational number, if it is a constant.
    pub fn to_rational(&self) -> Option<BigRational> {
        fn frac_const<K: Field>(x: &Frac<K>) -> Option<(K, K)> {
            (x.num().deg().unwrap_or(0) == 0 && x.den().deg() == Some(0)).then(|| (x.num().coeff(0), x.den().coeff(0)))
        }
        fn cyc_const(c: &Cyc) -> Option<BigRational> {
            (c.poly().deg().unwrap_or(0) == 0).then(|| c.poly().coeff(0))
        }
        match self {
            Scalar::Q(x) => frac_const(x).map(|(n, d)| n / d),
            Scalar::Cy(c) => cyc_const(c),
            Scalar::CyR(x) => {
                let (n, d) = frac_const(x)?;
                Some(cyc_const(&n)? / cyc_const(&d)?)
            }
            Scalar::Gen(x) => {
                let (n, d) = frac_const(x)?;
                Some(Scalar::Q(n).to_rational()? / Scalar::Q(d).to_rational()?)
            }
        }
    }

    /// The value as an integer, if it is an integer constant.
    pub fn to_integer(&self) -> Option<i64> {
        use num_traits::ToPrimitive;
        let r = self.to_rational()?;
        r.is_integer().then(|| r.to_integer().to_i64()).flatten()
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Generic => write!(f, "generic"),
            FieldSpec::QPower(a) => write!(f, "qpow:{a}"),
            FieldSpec::Cyclotomic { m, rho: RhoSpec::Power(a) } => write!(f, "cyclo:{m},rho=zeta^{a}"),
            FieldSpec::Cyclotomic { m, rho: RhoSpec::Free } => write!(f, "cyclo:{m},rho=free"),
        }
    }
}

impl FromStr for FieldSpec {
    type Err = WbqError;
    fn from_str(s: &str) -> Result<Self> {
        let bad = || WbqError::Parse(format!("malformed field expression '{s}' (expected generic | qpow:<a> | cyclo:<m>[,rho=zeta^<a>|rho=free])"));
        let s = s.trim();
        let spec = if s == "generic" {
            FieldSpec::Generic
        } else if let Some(a) = s.strip_prefix("qpow:") {
            FieldSpec::QPower(a.trim().parse().map_err(|_| bad())?)
        } else if let Some(rest) = s.strip_prefix("cyclo:") {
            let mut parts = rest.splitn(2, ',');
            let m: u32 = parts.next().unwrap().trim().parse().map_err(|_| bad())?;
            let rho = match parts.next().map(str::trim) {
                None | Some("rho=free") => RhoSpec::Free,
                Some(r) => {
                    let a = r.strip_prefix("rho=zeta^").ok_or_else(bad)?;
                    RhoSpec::Power(a.trim().parse().map_err(|_| bad())?)
                }
            };
            FieldSpec::Cyclotomic { m, rho }
        } else {
            return Err(bad());
        };
        spec.validate()?;
        Ok(spec)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn all_specs() -> Vec<FieldSpec> {
        let mut v = vec![FieldSpec::Generic, FieldSpec::QPower(0), FieldSpec::QPower(3), FieldSpec::QPower(-2)];
        for m in [3, 4, 5, 6, 7] {
            v.push(FieldSpec::Cyclotomic { m, rho: RhoSpec::Free });
            v.push(FieldSpec::Cyclotomic { m, rho: RhoSpec::Power(1) });
        }
        v
    }

    #[test]
    fn quantum_integer_examples() {
        let g = FieldSpec::Generic;
        assert!(g.quantum_integer(1).is_one());
        let q = g.q();
        assert_eq!(g.quantum_integer(2), q.add(&q.inv().unwrap()));
        for m in [3u32, 4, 5, 6, 8, 10] {
            let c = FieldSpec::Cyclotomic { m, rho: RhoSpec::Free };
            let QChar::Finite(e) = c.quantum_characteristic() else { panic!() };
            assert!(c.quantum_integer(e as u64).is_zero(), "m={m}");
        }
    }

    #[test]
    fn delta_examples() {
        for m in [3u32, 4, 6] {
            assert!(FieldSpec::Cyclotomic { m, rho: RhoSpec::Power(0) }.delta().is_zero());
        }
        // δ in QPower(a) against the quantum integer by independent expansion
        for a in 1..=6 {
            let s = FieldSpec::QPower(a);
            let q = s.q();
            let lhs = q.pow_i(a).sub(&q.pow_i(-a)).div(&q.sub(&q.inv().unwrap())).unwrap();
            assert_eq!(s.delta(), lhs);
            assert_eq!(s.delta(), s.quantum_integer(a as u64));
        }
        let g = FieldSpec::Generic;
        let (q, r) = (g.q(), g.rho());
        let d = r.sub(&r.inv().unwrap()).div(&q.sub(&q.inv().unwrap())).unwrap();
        assert_eq!(g.delta(), d);
    }

    #[test]
    fn quantum_characteristic_examples() {
        assert_eq!(FieldSpec::Generic.quantum_characteristic(), QChar::Infinite);
        let c6 = FieldSpec::Cyclotomic { m: 6, rho: RhoSpec::Free };
        assert_eq!(c6.quantum_characteristic(), QChar::Finite(3));
        let q2 = c6.q().mul(&c6.q());
        assert!(c6.one().add(&q2).add(&q2.mul(&q2)).is_zero());
        let c5 = FieldSpec::Cyclotomic { m: 5, rho: RhoSpec::Free };
        assert_eq!(c5.quantum_characteristic(), QChar::Finite(5));
        // order of q^2 by brute force
        for m in 3u32..=12 {
            let c = FieldSpec::Cyclotomic { m, rho: RhoSpec::Free };
            let q2 = c.q().mul(&c.q());
            let e = (1..=m).find(|&k| q2.pow_u(k as u64).is_one()).unwrap();
            assert_eq!(c.quantum_characteristic(), QChar::Finite(e));
        }
    }

    #[test]
    fn specialization() {
        let g = FieldSpec::Generic;
        let s3 = FieldSpec::QPower(3);
        let q = s3.q();
        let want = q.mul(&q).add(&s3.one()).add(&q.pow_i(-2));
        assert_eq!(s3.specialize(&g.delta()).unwrap(), want);
        for t in all_specs() {
            assert!(t.specialize(&g.one()).unwrap().is_one());
            for l in 0..=10 {
                assert_eq!(t.specialize(&g.quantum_integer(l)).unwrap(), t.quantum_integer(l), "{t} l={l}");
            }
            assert_eq!(t.specialize(&g.delta()).unwrap(), t.delta());
        }
        let bad = g.one().div(&g.rho().sub(&g.q())).unwrap();
        assert!(matches!(FieldSpec::QPower(1).specialize(&bad), Err(WbqError::DenominatorVanishes(_))));
        assert!(matches!(
            FieldSpec::Cyclotomic { m: 5, rho: RhoSpec::Power(1) }.specialize(&bad),
            Err(WbqError::DenominatorVanishes(_))
        ));
    }

    #[test]
    fn factorial_vanishing() {
        for t in all_specs() {
            let e = t.quantum_characteristic();
            for l in 0..=10u64 {
                let nz = !t.quantum_factorial(l).is_zero();
                assert_eq!(nz, e.exceeds(l as usize) || l <= 1, "{t} l={l}");
            }
        }
    }

    #[test]
    fn grammar() {
        for s in ["generic", "qpow:-2", "cyclo:4,rho=zeta^0", "cyclo:7,rho=free"] {
            assert_eq!(s.parse::<FieldSpec>().unwrap().to_string(), s);
        }
        assert_eq!("cyclo:5".parse::<FieldSpec>().unwrap(), FieldSpec::Cyclotomic { m: 5, rho: RhoSpec::Free });
        for s in ["cyclo:2", "cyclo:1,rho=free", "qpow:x", "gen", "cyclo:4,rho=q"] {
            assert!(s.parse::<FieldSpec>().is_err(), "{s}");
        }
    }
}
