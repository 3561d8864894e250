//! Sparse univariate polynomials over the rationals.
//!
//! Coefficients are kept in a map from exponent to nonzero rational; the
//! zero polynomial is the empty map and its degree is `None`. Exact
//! division and a fraction-free gcd are the workhorses: gcd runs over the
//! integers with primitive-part reduction at every pseudo-division step,
//! which keeps coefficient growth linear instead of exponential.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::rat::{rat, Rat};

/// Univariate polynomial over `Rat` in the variable `t`.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct Poly {
    coeffs: BTreeMap<u64, Rat>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly::default()
    }

    pub fn one() -> Self {
        Poly::constant(rat(1))
    }

    pub fn constant(c: Rat) -> Self {
        Poly::monomial(0, c)
    }

    /// The variable t.
    pub fn t() -> Self {
        Poly::monomial(1, rat(1))
    }

    pub fn monomial(exp: u64, c: Rat) -> Self {
        let mut coeffs = BTreeMap::new();
        if !c.is_zero() {
            coeffs.insert(exp, c);
        }
        Poly { coeffs }
    }

    /// From integer coefficients, lowest degree first.
    pub fn from_int_coeffs(cs: &[i64]) -> Self {
        let mut coeffs = BTreeMap::new();
        for (e, &c) in cs.iter().enumerate() {
            if c != 0 {
                coeffs.insert(e as u64, rat(c));
            }
        }
        Poly { coeffs }
    }

    /// From rational coefficients, lowest degree first.
    pub fn from_coeffs(cs: &[Rat]) -> Self {
        let mut coeffs = BTreeMap::new();
        for (e, c) in cs.iter().enumerate() {
            if !c.is_zero() {
                coeffs.insert(e as u64, c.clone());
            }
        }
        Poly { coeffs }
    }

    /// t^n - 1.
    pub fn tn_minus_one(n: u64) -> Self {
        assert!(n >= 1);
        let mut p = Poly::monomial(n, rat(1));
        p.coeffs.insert(0, rat(-1));
        p
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeff(0).is_one()
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u64> {
        self.coeffs.keys().next_back().copied()
    }

    pub fn coeff(&self, exp: u64) -> Rat {
        self.coeffs.get(&exp).cloned().unwrap_or_else(|| rat(0))
    }

    pub fn leading_coeff(&self) -> Rat {
        match self.degree() {
            Some(d) => self.coeff(d),
            None => rat(0),
        }
    }

    /// Iterate (exponent, coefficient) pairs in ascending exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (u64, &Rat)> {
        self.coeffs.iter().map(|(e, c)| (*e, c))
    }

    /// Dense coefficient list 0..=deg (empty for the zero polynomial).
    pub fn dense_coeffs(&self) -> Vec<Rat> {
        match self.degree() {
            None => Vec::new(),
            Some(d) => (0..=d).map(|e| self.coeff(e)).collect(),
        }
    }

    fn set_coeff(&mut self, exp: u64, c: Rat) {
        if c.is_zero() {
            self.coeffs.remove(&exp);
        } else {
            self.coeffs.insert(exp, c);
        }
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let mut out = self.clone();
        for (e, c) in &other.coeffs {
            let v = out.coeff(*e) + c;
            out.set_coeff(*e, v);
        }
        out
    }

    pub fn neg(&self) -> Poly {
        let coeffs = self.coeffs.iter().map(|(e, c)| (*e, -c.clone())).collect();
        Poly { coeffs }
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.add(&other.neg())
    }

    pub fn scale(&self, k: &Rat) -> Poly {
        if k.is_zero() {
            return Poly::zero();
        }
        let coeffs = self.coeffs.iter().map(|(e, c)| (*e, c * k)).collect();
        Poly { coeffs }
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        let mut out = Poly::zero();
        for (e1, c1) in &self.coeffs {
            for (e2, c2) in &other.coeffs {
                let e = e1 + e2;
                let v = out.coeff(e) + c1 * c2;
                out.set_coeff(e, v);
            }
        }
        out
    }

    pub fn pow(&self, mut n: u64) -> Poly {
        let mut base = self.clone();
        let mut out = Poly::one();
        while n > 0 {
            if n & 1 == 1 {
                out = out.mul(&base);
            }
            n >>= 1;
            if n > 0 {
                base = base.mul(&base);
            }
        }
        out
    }

    pub fn eval(&self, x: &Rat) -> Rat {
        // Horner over the sparse support.
        let mut acc = rat(0);
        let mut prev_exp: Option<u64> = None;
        for (e, c) in self.coeffs.iter().rev() {
            match prev_exp {
                None => acc = c.clone(),
                Some(pe) => {
                    let gap = pe - e;
                    for _ in 0..gap {
                        acc *= x;
                    }
                    acc += c;
                }
            }
            prev_exp = Some(*e);
        }
        if let Some(e) = prev_exp {
            for _ in 0..e {
                acc *= x;
            }
        }
        acc
    }

    pub fn derivative(&self) -> Poly {
        let coeffs = self
            .coeffs
            .iter()
            .filter(|(e, _)| **e > 0)
            .map(|(e, c)| (e - 1, c * rat(*e as i64)))
            .collect();
        Poly { coeffs }
    }

    /// Substitute t -> t^k.
    pub fn substitute_power(&self, k: u64) -> Poly {
        assert!(k >= 1);
        let coeffs = self.coeffs.iter().map(|(e, c)| (e * k, c.clone())).collect();
        Poly { coeffs }
    }

    /// Quotient and remainder over the rationals.
    pub fn div_rem(&self, divisor: &Poly) -> (Poly, Poly) {
        assert!(!divisor.is_zero(), "div_rem: division by zero polynomial");
        let dd = divisor.degree().unwrap();
        let dlc = divisor.leading_coeff();
        let mut rem = self.clone();
        let mut quot = Poly::zero();
        while let Some(rd) = rem.degree() {
            if rd < dd {
                break;
            }
            let q = rem.leading_coeff() / &dlc;
            let shift = rd - dd;
            quot.set_coeff(shift, quot.coeff(shift) + &q);
            // rem -= q * t^shift * divisor
            for (e, c) in &divisor.coeffs {
                let te = e + shift;
                let v = rem.coeff(te) - c * &q;
                rem.set_coeff(te, v);
            }
        }
        (quot, rem)
    }

    /// Exact quotient, or `None` if the division leaves a remainder.
    pub fn exact_div(&self, divisor: &Poly) -> Option<Poly> {
        let (q, r) = self.div_rem(divisor);
        if r.is_zero() {
            Some(q)
        } else {
            None
        }
    }

    pub fn monic(&self) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        let lc = self.leading_coeff();
        self.scale(&lc.recip())
    }

    /// Integer coefficient vector after clearing denominators and dividing
    /// by the content; sign normalized to positive leading coefficient.
    fn primitive_int_coeffs(&self) -> Vec<BigInt> {
        assert!(!self.is_zero());
        let deg = self.degree().unwrap() as usize;
        let mut lcm = BigInt::one();
        for c in self.coeffs.values() {
            lcm = lcm.lcm(c.denom());
        }
        let mut ints: Vec<BigInt> = vec![BigInt::zero(); deg + 1];
        for (e, c) in &self.coeffs {
            ints[*e as usize] = c.numer() * (&lcm / c.denom());
        }
        let mut content = BigInt::zero();
        for v in &ints {
            content = content.gcd(v);
        }
        if ints[deg].is_negative() {
            content = -content;
        }
        for v in &mut ints {
            *v /= &content;
        }
        ints
    }

    /// Monic gcd over the rationals.
    ///
    /// Runs a primitive-part pseudo-remainder sequence over the integers so
    /// intermediate coefficients stay small, and normalizes the result to be
    /// monic. `gcd(p, 0) = p/lc(p)`; both arguments zero is a contract
    /// violation.
    pub fn gcd(&self, other: &Poly) -> Poly {
        assert!(
            !(self.is_zero() && other.is_zero()),
            "poly_gcd: both arguments are zero"
        );
        if self.is_zero() {
            return other.monic();
        }
        if other.is_zero() {
            return self.monic();
        }
        let mut a = self.primitive_int_coeffs();
        let mut b = other.primitive_int_coeffs();
        if a.len() < b.len() {
            std::mem::swap(&mut a, &mut b);
        }
        loop {
            let r = pseudo_rem(&a, &b);
            if r.is_empty() {
                let poly = Poly::from_coeffs(
                    &b.iter().map(|v| Rat::from_integer(v.clone())).collect::<Vec<_>>(),
                );
                return poly.monic();
            }
            a = b;
            b = primitive_part(r);
        }
    }

    /// Largest monic divisor all of whose roots are d-th roots of unity,
    /// i.e. gcd(self, (t^d - 1)^deg).
    pub fn root_of_unity_part(&self, d: u64) -> Poly {
        assert!(!self.is_zero());
        let cyc = Poly::tn_minus_one(d);
        let mut rest = self.clone();
        let mut acc = Poly::one();
        loop {
            let g = rest.gcd(&cyc);
            if g.degree() == Some(0) || g.is_zero() {
                return acc;
            }
            acc = acc.mul(&g);
            rest = rest.exact_div(&g).expect("gcd must divide");
        }
    }
}

/// Primitive part of an integer coefficient vector (positive leading sign).
fn primitive_part(mut v: Vec<BigInt>) -> Vec<BigInt> {
    while v.last().map(|c| c.is_zero()).unwrap_or(false) {
        v.pop();
    }
    if v.is_empty() {
        return v;
    }
    let mut content = BigInt::zero();
    for c in &v {
        content = content.gcd(c);
    }
    if v.last().unwrap().is_negative() {
        content = -content;
    }
    for c in &mut v {
        *c /= &content;
    }
    v
}

/// Pseudo-remainder of integer polynomials: lc(b)^(da-db+1) * a mod b.
/// Returns the trimmed remainder (empty = zero).
fn pseudo_rem(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let db = b.len() - 1;
    let lc_b = b[db].clone();
    let mut r: Vec<BigInt> = a.to_vec();
    while r.len() > db {
        let lead = r.pop().unwrap();
        if lead.is_zero() {
            continue;
        }
        let shift = r.len() - db;
        for c in r.iter_mut() {
            *c *= &lc_b;
        }
        for (i, bc) in b[..db].iter().enumerate() {
            r[shift + i] -= &lead * bc;
        }
    }
    while r.last().map(|c| c.is_zero()).unwrap_or(false) {
        r.pop();
    }
    r
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.coeffs.iter().rev() {
            let (sign, mag) = if c.is_negative() {
                ("-", -c.clone())
            } else {
                ("+", c.clone())
            };
            if first {
                if sign == "-" {
                    write!(f, "-")?;
                }
                first = false;
            } else {
                write!(f, " {} ", sign)?;
            }
            let show_coeff = !mag.is_one() || *e == 0;
            if show_coeff {
                write!(f, "{}", mag)?;
            }
            if *e > 0 {
                if show_coeff {
                    write!(f, "*")?;
                }
                if *e == 1 {
                    write!(f, "t")?;
                } else {
                    write!(f, "t^{}", e)?;
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({})", self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat::ratio;

    #[test]
    fn arithmetic_basics() {
        let p = Poly::from_int_coeffs(&[1, -1, 1]); // t^2 - t + 1
        let q = Poly::from_int_coeffs(&[1, 1]); // t + 1
        assert_eq!(p.mul(&q), Poly::from_int_coeffs(&[1, 0, 0, 1])); // t^3 + 1
        assert_eq!(p.eval(&rat(2)), rat(3));
        assert_eq!(p.degree(), Some(2));
        assert_eq!(Poly::zero().degree(), None);
    }

    #[test]
    fn division() {
        let num = Poly::tn_minus_one(6);
        let den = Poly::tn_minus_one(2);
        let q = num.exact_div(&den).unwrap();
        assert_eq!(q, Poly::from_int_coeffs(&[1, 0, 1, 0, 1]));
        assert!(num.exact_div(&Poly::from_int_coeffs(&[1, 0, 2])).is_none());
    }

    #[test]
    fn gcd_examples() {
        // gcd(t^2-1, t^3-1) = t - 1
        let g = Poly::tn_minus_one(2).gcd(&Poly::tn_minus_one(3));
        assert_eq!(g, Poly::from_int_coeffs(&[-1, 1]));
        // gcd with zero normalizes monic
        let p = Poly::from_int_coeffs(&[2, 4]);
        assert_eq!(p.gcd(&Poly::zero()), Poly::from_coeffs(&[ratio(1, 2), rat(1)]).monic());
        assert_eq!(Poly::zero().gcd(&p), p.monic());
    }

    #[test]
    fn gcd_divides_exactly() {
        let a = Poly::tn_minus_one(12).mul(&Poly::from_int_coeffs(&[3, 1]));
        let b = Poly::tn_minus_one(18);
        let g = a.gcd(&b);
        assert!(a.exact_div(&g).is_some());
        assert!(b.exact_div(&g).is_some());
        assert_eq!(g, Poly::tn_minus_one(6).monic());
    }

    #[test]
    fn derivative_and_substitution() {
        let p = Poly::from_int_coeffs(&[1, 2, 3]);
        assert_eq!(p.derivative(), Poly::from_int_coeffs(&[2, 6]));
        assert_eq!(
            Poly::tn_minus_one(2).substitute_power(3),
            Poly::tn_minus_one(6)
        );
    }

    #[test]
    fn root_of_unity_part_extraction() {
        // (t^2-t+1)(t-1)^2 has 6th-roots-of-unity part (t^2-t+1)(t-1)^2
        let p = Poly::from_int_coeffs(&[1, -1, 1]).mul(&Poly::from_int_coeffs(&[-1, 1]).pow(2));
        let part = p.root_of_unity_part(6);
        assert_eq!(part, p.monic());
        // and 2nd-roots part is (t-1)^2
        let part2 = p.root_of_unity_part(2);
        assert_eq!(part2, Poly::from_int_coeffs(&[-1, 1]).pow(2));
        // something coprime
        let q = Poly::from_int_coeffs(&[2, 0, 1]);
        assert!(q.root_of_unity_part(4).is_one());
    }

    #[test]
    fn display_form() {
        let p = Poly::from_int_coeffs(&[1, -1, 1]);
        assert_eq!(p.to_string(), "t^2 - t + 1");
        let q = Poly::from_coeffs(&[ratio(-1, 2), rat(0), rat(2)]);
        assert_eq!(q.to_string(), "2*t^2 - 1/2");
    }
}
