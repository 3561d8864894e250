//! Formal products of the binomials (t^n - 1).
//!
//! All characteristic polynomials of monodromy handled here are products of
//! cyclotomic polynomials, and the formulas that combine them are stated as
//! products of factors (t^n - 1) with integer (possibly negative) exponents.
//! `CycloProduct` keeps exactly that exponent map, so multiplication, gcd
//! against (t^d - 1)^N, the substitution t -> t^k, and degree bookkeeping
//! are all O(#keys). Expansion into coefficient form happens only at the
//! edges, through [`CycloProduct::to_poly`].
//!
//! The translation between the (t^n - 1) basis and the cyclotomic basis is
//! the divisor-sum relation: the exponent of Phi_m in the product equals
//! sum of a_n over the multiples n of m, and conversely the a_n are
//! recovered by Mobius inversion.

use std::cell::RefCell;
use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_traits::One;

use super::arith::{divisors, euler_phi, mobius, prime_power_base};
use super::poly::Poly;
use super::rat::{rat, Rat};
use crate::error::{Error, Result};

/// The n-th cyclotomic polynomial Phi_n, by exact division of t^n - 1 by
/// all Phi_m with m | n, m < n. Results are memoized per thread.
pub fn cyclotomic(n: u64) -> Poly {
    assert!(n >= 1, "cyclotomic: n must be positive");
    thread_local! {
        static CACHE: RefCell<HashMap<u64, Poly>> = RefCell::new(HashMap::new());
    }
    if let Some(p) = CACHE.with(|c| c.borrow().get(&n).cloned()) {
        return p;
    }
    let mut p = Poly::tn_minus_one(n);
    for m in divisors(n) {
        if m < n {
            let phi = cyclotomic(m);
            p = p.exact_div(&phi).expect("Phi_m divides t^n - 1");
        }
    }
    CACHE.with(|c| c.borrow_mut().insert(n, p.clone()));
    p
}

/// Phi_n(1): 0 for n = 1, p for n a prime power p^k, 1 otherwise.
pub fn cyclotomic_at_one(n: u64) -> Rat {
    if n == 1 {
        rat(0)
    } else {
        match prime_power_base(n) {
            Some(p) => rat(p as i64),
            None => rat(1),
        }
    }
}

/// Formal product over n of (t^n - 1)^(a_n), a_n in Z. Only nonzero a_n
/// are stored; the empty product is 1.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct CycloProduct {
    exponents: BTreeMap<u64, i64>,
}

impl CycloProduct {
    pub fn one() -> Self {
        CycloProduct::default()
    }

    pub fn from_pairs(pairs: &[(u64, i64)]) -> Self {
        let mut out = CycloProduct::one();
        for &(n, a) in pairs {
            out.mul_factor(n, a);
        }
        out
    }

    /// Multiply by (t^n - 1)^a.
    pub fn mul_factor(&mut self, n: u64, a: i64) {
        assert!(n >= 1);
        let e = self.exponents.entry(n).or_insert(0);
        *e += a;
        if *e == 0 {
            self.exponents.remove(&n);
        }
    }

    pub fn mul(&self, other: &CycloProduct) -> CycloProduct {
        let mut out = self.clone();
        for (&n, &a) in &other.exponents {
            out.mul_factor(n, a);
        }
        out
    }

    pub fn inverse(&self) -> CycloProduct {
        let exponents = self.exponents.iter().map(|(&n, &a)| (n, -a)).collect();
        CycloProduct { exponents }
    }

    pub fn pow(&self, k: i64) -> CycloProduct {
        let exponents = self
            .exponents
            .iter()
            .filter(|(_, &a)| a * k != 0)
            .map(|(&n, &a)| (n, a * k))
            .collect();
        CycloProduct { exponents }
    }

    pub fn is_one(&self) -> bool {
        self.exponents.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (u64, i64)> + '_ {
        self.exponents.iter().map(|(&n, &a)| (n, a))
    }

    /// Realizes t -> t^k on the product: (t^n - 1) becomes (t^(nk) - 1).
    pub fn substitute_power(&self, k: u64) -> CycloProduct {
        assert!(k >= 1);
        let exponents = self.exponents.iter().map(|(&n, &a)| (n * k, a)).collect();
        CycloProduct { exponents }
    }

    /// Formal degree sum of n * a_n (negative for genuine denominators).
    pub fn formal_degree(&self) -> i64 {
        self.exponents.iter().map(|(&n, &a)| n as i64 * a).sum()
    }

    /// Exponent of Phi_m in the product: sum of a_n over multiples n of m.
    pub fn phi_exponent(&self, m: u64) -> i64 {
        self.exponents
            .iter()
            .filter(|(&n, _)| n % m == 0)
            .map(|(_, &a)| a)
            .sum()
    }

    /// All nonzero Phi-exponents, keyed by m.
    pub fn phi_exponents(&self) -> BTreeMap<u64, i64> {
        let mut out = BTreeMap::new();
        for &n in self.exponents.keys() {
            for m in divisors(n) {
                out.entry(m).or_insert(0);
            }
        }
        out.iter_mut().for_each(|(m, e)| *e = self.phi_exponent(*m));
        out.retain(|_, e| *e != 0);
        out
    }

    /// Rebuild the (t^n - 1)-exponent map from Phi-exponents by Mobius
    /// inversion from above: a_n = sum over multiples k of n of
    /// mu(k/n) e_k.
    pub fn from_phi_exponents(phi: &BTreeMap<u64, i64>) -> CycloProduct {
        let mut support: Vec<u64> = Vec::new();
        for &m in phi.keys() {
            for d in divisors(m) {
                if !support.contains(&d) {
                    support.push(d);
                }
            }
        }
        support.sort_unstable();
        let mut out = CycloProduct::one();
        for &n in &support {
            let mut a = 0i64;
            for (&k, &e) in phi {
                if k % n == 0 {
                    a += mobius(k / n) * e;
                }
            }
            out.mul_factor(n, a);
        }
        out
    }

    /// gcd with (t^d - 1)^N for N at least the relevant multiplicities:
    /// keeps exactly the Phi_m-factors with m | d. The product must be a
    /// genuine polynomial (all Phi-exponents nonnegative).
    pub fn root_of_unity_part(&self, d: u64) -> CycloProduct {
        let mut phi = BTreeMap::new();
        for m in divisors(d) {
            let e = self.phi_exponent(m);
            debug_assert!(e >= 0, "root_of_unity_part on a non-polynomial product");
            if e != 0 {
                phi.insert(m, e);
            }
        }
        CycloProduct::from_phi_exponents(&phi)
    }

    /// Expand to a polynomial. Fails with `NotAPolynomial` if some
    /// Phi_m-exponent is negative.
    pub fn to_poly(&self) -> Result<Poly> {
        let mut out = Poly::one();
        for (m, e) in self.phi_exponents() {
            if e < 0 {
                return Err(Error::NotAPolynomial(m, e));
            }
            out = out.mul(&cyclotomic(m).pow(e as u64));
        }
        Ok(out)
    }

    /// Trial division by the cyclotomic polynomials Phi_m that can still
    /// fit, i.e. those with phi(m) at most the remaining degree (which
    /// caps m at twice the square of the degree). Fails loudly when a
    /// non-cyclotomic residue remains.
    pub fn from_poly(p: &Poly) -> Result<CycloProduct> {
        assert!(!p.is_zero(), "from_poly: zero polynomial");
        let mut rest = p.monic();
        let mut phi = BTreeMap::new();
        let deg = rest.degree().unwrap();
        let cap = 2 * deg * deg + 6;
        let mut m = 1u64;
        while rest.degree() != Some(0) && m <= cap {
            if euler_phi(m) <= rest.degree().unwrap() {
                let cm = cyclotomic(m);
                let mut e = 0i64;
                while let Some(q) = rest.exact_div(&cm) {
                    rest = q;
                    e += 1;
                }
                if e != 0 {
                    phi.insert(m, e);
                }
            }
            m += 1;
        }
        match rest.degree() {
            Some(0) => Ok(CycloProduct::from_phi_exponents(&phi)),
            Some(d) => Err(Error::NonCyclotomicResidue(d)),
            None => unreachable!("exact division keeps the polynomial nonzero"),
        }
    }

    /// Value at t = 1, reported as (k, v) where the product equals
    /// (t-1)^k * g(t) with g(1) = v != 0. Both computed from Phi_m(1).
    pub fn value_at_one(&self) -> (i64, Rat) {
        let mut order = 0i64;
        let mut value = rat(1);
        for (m, e) in self.phi_exponents() {
            if m == 1 {
                order = e;
            } else {
                let v = cyclotomic_at_one(m);
                if e >= 0 {
                    for _ in 0..e {
                        value *= &v;
                    }
                } else {
                    for _ in 0..(-e) {
                        value /= &v;
                    }
                }
            }
        }
        (order, value)
    }
}

impl fmt::Display for CycloProduct {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.exponents.is_empty() {
            return write!(f, "1");
        }
        let mut first = true;
        for (&n, &a) in self.exponents.iter().rev() {
            if !first {
                write!(f, " ")?;
            }
            first = false;
            if a == 1 {
                write!(f, "(t^{} - 1)", n)?;
            } else {
                write!(f, "(t^{} - 1)^{}", n, a)?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for CycloProduct {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CycloProduct({})", self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_cyclotomics() {
        assert_eq!(cyclotomic(1), Poly::from_int_coeffs(&[-1, 1]));
        assert_eq!(cyclotomic(2), Poly::from_int_coeffs(&[1, 1]));
        assert_eq!(cyclotomic(6), Poly::from_int_coeffs(&[1, -1, 1]));
        // Phi_26 = sum (-1)^k t^k for k = 0..12
        let phi26: Vec<i64> = (0..=12).map(|k| if k % 2 == 0 { 1 } else { -1 }).collect();
        assert_eq!(cyclotomic(26), Poly::from_int_coeffs(&phi26));
    }

    #[test]
    fn gcd_of_cyclotomics_is_trivial() {
        // Phi_26 shares no root with t^5 - 1
        let g = cyclotomic(26).gcd(&Poly::tn_minus_one(5));
        assert!(g.is_one());
    }

    #[test]
    fn materialize_products() {
        // (t^5-1)/(t-1) = 1 + t + t^2 + t^3 + t^4
        let c = CycloProduct::from_pairs(&[(5, 1), (1, -1)]);
        assert_eq!(c.to_poly().unwrap(), Poly::from_int_coeffs(&[1, 1, 1, 1, 1]));
        // the (2,13) cusp factorization expands to Phi_26
        let c = CycloProduct::from_pairs(&[(26, 1), (1, 1), (2, -1), (13, -1)]);
        assert_eq!(c.to_poly().unwrap(), cyclotomic(26));
        // (t^2-1)(t^3-1)/(t^6-1) has Phi_6-exponent -1
        let c = CycloProduct::from_pairs(&[(2, 1), (3, 1), (6, -1)]);
        assert_eq!(c.to_poly(), Err(Error::NotAPolynomial(6, -1)));
    }

    #[test]
    fn substitution_scales_keys() {
        let c = CycloProduct::from_pairs(&[(2, 1)]);
        assert_eq!(c.substitute_power(3), CycloProduct::from_pairs(&[(6, 1)]));
        let cusp = CycloProduct::from_pairs(&[(26, 1), (1, 1), (2, -1), (13, -1)]);
        assert_eq!(
            cusp.substitute_power(6),
            CycloProduct::from_pairs(&[(156, 1), (6, 1), (12, -1), (78, -1)])
        );
        assert_eq!(CycloProduct::one().substitute_power(7), CycloProduct::one());
    }

    #[test]
    fn round_trip_through_poly() {
        let c = CycloProduct::from_pairs(&[(26, 1), (1, 1), (2, -1), (13, -1)]);
        let p = c.to_poly().unwrap();
        assert_eq!(CycloProduct::from_poly(&p).unwrap(), c);
        // degree bookkeeping
        assert_eq!(c.formal_degree(), 12);
        assert_eq!(p.degree(), Some(12));
        // a non-cyclotomic polynomial is rejected
        let bad = Poly::from_int_coeffs(&[2, 0, 1]);
        assert!(matches!(
            CycloProduct::from_poly(&bad),
            Err(Error::NonCyclotomicResidue(_))
        ));
    }

    #[test]
    fn values_at_one() {
        // (t^5-1)/(t-1) evaluates to 5 at t=1
        let c = CycloProduct::from_pairs(&[(5, 1), (1, -1)]);
        assert_eq!(c.value_at_one(), (0, rat(5)));
        // Phi_26 at 1 is 1 (26 not a prime power)
        let c = CycloProduct::from_pairs(&[(26, 1), (1, 1), (2, -1), (13, -1)]);
        assert_eq!(c.value_at_one(), (0, rat(1)));
        // t^2 - 1 vanishes to order 1 with cofactor 2
        let c = CycloProduct::from_pairs(&[(2, 1)]);
        assert_eq!(c.value_at_one(), (1, rat(2)));
    }

    #[test]
    fn root_of_unity_parts() {
        // d-part of Phi_6 Phi_12 for d = 6 keeps Phi_6
        let p = cyclotomic(6).mul(&cyclotomic(12));
        let c = CycloProduct::from_poly(&p).unwrap();
        let part = c.root_of_unity_part(6);
        assert_eq!(part.to_poly().unwrap(), cyclotomic(6));
        // and for d = 5 keeps nothing
        assert!(c.root_of_unity_part(5).is_one());
    }
}
