//! Canonical text form: `N` or `(N)/(D)` with N, D integer-coefficient sums of
//! Laurent monomials in `q`, `rho` and `z` (z = ζ in cyclotomic modes).

use super::{Cyc, Field, FieldSpec, Poly, RatFn, Ring, Scalar};
use crate::error::{Result, WbqError};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::collections::BTreeMap;

/// Exponent triple (q, rho, z) -> integer coefficient.
pub type MPoly = BTreeMap<(i64, i64, i64), BigInt>;

fn add_term(p: &mut MPoly, e: (i64, i64, i64), c: BigInt) {
    if c.is_zero() {
        return;
    }
    let ent = p.entry(e).or_insert_with(BigInt::zero);
    *ent += c;
    if ent.is_zero() {
        p.remove(&e);
    }
}

/// Rational-coefficient multivariate polynomial, converted to integers at the end.
type QPoly = BTreeMap<(i64, i64, i64), BigRational>;

fn rat_poly_terms(p: &Poly<BigRational>, place: impl Fn(i64) -> (i64, i64, i64), out: &mut QPoly) {
    for (k, c) in p.coeffs().iter().enumerate() {
        if !Zero::is_zero(c) {
            let e = place(k as i64);
            let ent = out.entry(e).or_insert_with(BigRational::zero);
            *ent += c;
        }
    }
}

fn shift(e: (i64, i64, i64), d: (i64, i64, i64)) -> (i64, i64, i64) {
    (e.0 + d.0, e.1 + d.1, e.2 + d.2)
}

fn cyc_terms(c: &Cyc, rho_exp: i64, out: &mut QPoly) {
    rat_poly_terms(c.poly(), |k| (0, rho_exp, k), out);
}

/// Scales a pair of rational polynomials to coprime-content integer polynomials.
fn integerize(n: QPoly, d: QPoly) -> (MPoly, MPoly) {
    let mut l = BigInt::one();
    for c in n.values().chain(d.values()) {
        l = l.lcm(c.denom());
    }
    let conv = |p: &QPoly| -> MPoly {
        p.iter()
            .filter(|(_, c)| !Zero::is_zero(*c))
            .map(|(e, c)| (*e, (c * BigRational::from_integer(l.clone())).to_integer()))
            .collect()
    };
    let (mut n, mut d) = (conv(&n), conv(&d));
    let mut g = BigInt::zero();
    for c in n.values().chain(d.values()) {
        g = g.gcd(c);
    }
    if !g.is_zero() && !g.is_one() {
        for c in n.values_mut().chain(d.values_mut()) {
            *c /= &g;
        }
    }
    (n, d)
}

fn to_pair(x: &Scalar) -> (MPoly, MPoly) {
    let mut n = QPoly::new();
    let mut d = QPoly::new();
    match x {
        Scalar::Q(f) => {
            rat_poly_terms(f.num(), |k| (k, 0, 0), &mut n);
            rat_poly_terms(f.den(), |k| (k, 0, 0), &mut d);
        }
        Scalar::Cy(c) => {
            cyc_terms(c, 0, &mut n);
            d.insert((0, 0, 0), BigRational::one());
        }
        Scalar::CyR(f) => {
            for (k, c) in f.num().coeffs().iter().enumerate() {
                cyc_terms(c, k as i64, &mut n);
            }
            for (k, c) in f.den().coeffs().iter().enumerate() {
                cyc_terms(c, k as i64, &mut d);
            }
        }
        Scalar::Gen(f) => {
            // common q-denominator of all coefficients
            let mut lq = Poly::constant(BigRational::one());
            for c in f.num().coeffs().iter().chain(f.den().coeffs()) {
                let g = Poly::gcd(&lq, c.den());
                lq = lq.mul(c.den()).divrem(&g).0;
            }
            let lqf = RatFn::from_poly(lq);
            let put = |p: &Poly<RatFn>, out: &mut QPoly| {
                for (k, c) in p.coeffs().iter().enumerate() {
                    let c = c.mul(&lqf);
                    debug_assert!(c.is_poly());
                    let s = c.den().lead();
                    let num = c.num().scale(&s.inv().unwrap());
                    rat_poly_terms(&num, |j| (j, k as i64, 0), out);
                }
            };
            put(f.num(), &mut n);
            put(f.den(), &mut d);
        }
    }
    let (mut n, mut d) = integerize(n, d);
    // Laurent form when the denominator is a single term.
    if d.len() == 1 {
        let (&e, c) = d.iter().next().unwrap();
        let c = c.clone();
        n = n.into_iter().map(|(k, v)| (shift(k, (-e.0, -e.1, -e.2)), v)).collect();
        d = MPoly::new();
        d.insert((0, 0, 0), c);
    }
    (n, d)
}

fn fmt_poly(p: &MPoly) -> String {
    if p.is_empty() {
        return "0".into();
    }
    let mut out = String::new();
    // descending by (rho, q, z)
    let mut terms: Vec<_> = p.iter().collect();
    terms.sort_by(|a, b| (b.0 .1, b.0 .0, b.0 .2).cmp(&(a.0 .1, a.0 .0, a.0 .2)));
    for (i, (e, c)) in terms.into_iter().enumerate() {
        let neg = c.is_negative();
        if i == 0 {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        let a = c.abs();
        let mut factors = vec![];
        for (name, k) in [("q", e.0), ("rho", e.1), ("z", e.2)] {
            match k {
                0 => {}
                1 => factors.push(name.to_string()),
                k => factors.push(format!("{name}^{k}")),
            }
        }
        if factors.is_empty() {
            out.push_str(&a.to_string());
        } else {
            if !a.is_one() {
                out.push_str(&a.to_string());
                out.push('*');
            }
            out.push_str(&factors.join("*"));
        }
    }
    out
}

impl Scalar {
    /// Canonical text; a function of the normal form only.
    pub fn to_text(&self) -> String {
        let (n, d) = to_pair(self);
        let unit = d.len() == 1 && d.get(&(0, 0, 0)).is_some_and(|c| c.is_one());
        if unit {
            fmt_poly(&n)
        } else {
            format!("({})/({})", fmt_poly(&n), fmt_poly(&d))
        }
    }
}

impl std::fmt::Display for Scalar {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.to_text())
    }
}

struct Lexer<'a> {
    s: &'a [u8],
    i: usize,
}

impl<'a> Lexer<'a> {
    fn ws(&mut self) {
        while self.i < self.s.len() && self.s[self.i].is_ascii_whitespace() {
            self.i += 1;
        }
    }
    fn peek(&mut self) -> Option<u8> {
        self.ws();
        self.s.get(self.i).copied()
    }
    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.i += 1;
            true
        } else {
            false
        }
    }
    fn err(&self, what: &str) -> WbqError {
        WbqError::Parse(format!("{what} at byte {}", self.i))
    }
    fn int(&mut self) -> Result<BigInt> {
        self.ws();
        let st = self.i;
        if self.i < self.s.len() && self.s[self.i] == b'-' {
            self.i += 1;
        }
        while self.i < self.s.len() && self.s[self.i].is_ascii_digit() {
            self.i += 1;
        }
        std::str::from_utf8(&self.s[st..self.i])
            .ok()
            .and_then(|t| t.parse().ok())
            .ok_or_else(|| self.err("expected integer"))
    }
    fn ident(&mut self) -> Option<&'a str> {
        self.ws();
        let st = self.i;
        while self.i < self.s.len() && self.s[self.i].is_ascii_alphabetic() {
            self.i += 1;
        }
        (self.i > st).then(|| std::str::from_utf8(&self.s[st..self.i]).unwrap())
    }
    fn term(&mut self) -> Result<((i64, i64, i64), BigInt)> {
        let mut c = BigInt::one();
        let mut e = (0, 0, 0);
        let mut first = true;
        loop {
            if !first && !self.eat(b'*') {
                break;
            }
            first = false;
            if self.peek().is_some_and(|b| b.is_ascii_digit()) {
                c *= self.int()?;
                continue;
            }
            let v = self.ident().ok_or_else(|| self.err("expected factor"))?;
            let k = if self.eat(b'^') {
                let k = self.int()?;
                i64::try_from(k).map_err(|_| self.err("exponent too large"))?
            } else {
                1
            };
            match v {
                "q" => e.0 += k,
                "rho" => e.1 += k,
                "z" => e.2 += k,
                _ => return Err(self.err("unknown variable")),
            }
        }
        Ok((e, c))
    }
    fn sum(&mut self) -> Result<MPoly> {
        let mut p = MPoly::new();
        let mut sign = if self.eat(b'-') { -1 } else { 1 };
        loop {
            let (e, c) = self.term()?;
            add_term(&mut p, e, c * sign);
            if self.eat(b'+') {
                sign = 1;
            } else if self.eat(b'-') {
                sign = -1;
            } else {
                break;
            }
        }
        Ok(p)
    }
}

fn eval_mpoly(p: &MPoly, spec: &FieldSpec) -> Scalar {
    let q = spec.q();
    let r = spec.rho();
    let mut acc = spec.zero();
    for (&(a, b, c), k) in p {
        let t = spec.zero().from_rat_like(&BigRational::from_integer(k.clone()));
        let t = t.mul(&q.pow_i(a + c)).mul(&r.pow_i(b));
        acc = acc.add(&t);
    }
    acc
}

/// Parses canonical (or any well-formed) scalar text into the given field.
pub fn parse_scalar(s: &str, spec: &FieldSpec) -> Result<Scalar> {
    let mut lx = Lexer { s: s.as_bytes(), i: 0 };
    let (n, d) = if lx.peek() == Some(b'(') {
        lx.eat(b'(');
        let n = lx.sum()?;
        if !lx.eat(b')') {
            return Err(lx.err("expected ')'"));
        }
        if lx.eat(b'/') {
            if !lx.eat(b'(') {
                return Err(lx.err("expected '('"));
            }
            let d = lx.sum()?;
            if !lx.eat(b')') {
                return Err(lx.err("expected ')'"));
            }
            (n, d)
        } else {
            (n, [((0, 0, 0), BigInt::one())].into_iter().collect())
        }
    } else {
        (lx.sum()?, [((0, 0, 0), BigInt::one())].into_iter().collect())
    };
    if lx.peek().is_some() {
        return Err(lx.err("trailing input"));
    }
    let nv = eval_mpoly(&n, spec);
    let dv = eval_mpoly(&d, spec);
    nv.div(&dv).ok_or_else(|| WbqError::Parse("zero denominator".into()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::RhoSpec;

    #[test]
    fn canonical_examples() {
        let s3 = FieldSpec::QPower(3);
        assert_eq!(s3.delta().to_text(), "q^2 + 1 + q^-2");
        let g = FieldSpec::Generic;
        let t = g.delta().to_text();
        assert_eq!(parse_scalar(&t, &g).unwrap(), g.delta());
        assert_eq!(g.zero().to_text(), "0");
        let c = FieldSpec::Cyclotomic { m: 5, rho: RhoSpec::Free };
        let x = c.delta();
        assert_eq!(parse_scalar(&x.to_text(), &c).unwrap(), x);
    }

    #[test]
    fn parse_errors() {
        let g = FieldSpec::Generic;
        for bad in ["", "q^", "(q", "x", "q + ", "(1)/(0)", "q q"] {
            assert!(parse_scalar(bad, &g).is_err(), "{bad}");
        }
    }
}
