//! One irreducible plane-curve germ, encoded by characteristic exponents.
//!
//! The characteristic exponents (b0; b1, ..., bg) are the single source of
//! truth: semigroup generators, the delta invariant, the Milnor number, the
//! local Alexander polynomial and the multiplicity sequence are all derived
//! from them and never taken as input.
//!
//! The local Alexander polynomial comes from the semigroup:
//!
//!   Delta(t) = (1 - t) * sum_{k in Gamma, k < c} t^k + t^c,
//!
//! and for a one-pair germ (p; q) it must agree with the product form
//! (t^pq - 1)(t - 1) / ((t^p - 1)(t^q - 1)); the two routes are compared on
//! every construction and a mismatch is treated as an internal bug.

use std::fmt;

use crate::algebra::arith::gcd_u64;
use crate::algebra::{rat, ratio, CycloProduct, Poly, SpectrumPoly};
use crate::error::{Error, Result};

/// An irreducible plane-curve germ given by characteristic exponents
/// (b0; b1, ..., bg). The smooth branch is encoded as (1).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BranchData {
    exponents: Vec<u64>,
}

impl BranchData {
    /// Validates the characteristic-exponent axioms: either the list is
    /// exactly (1), or b0 >= 2, the list strictly increases, and the gcd
    /// chain e_i = gcd(b0..bi) strictly decreases down to e_g = 1.
    pub fn new(exponents: &[u64]) -> Result<Self> {
        let fail = |msg: String| Err(Error::InvalidCurve(vec![msg]));
        if exponents.is_empty() {
            return fail("branch: empty exponent list".into());
        }
        if exponents == [1] {
            return Ok(BranchData {
                exponents: vec![1],
            });
        }
        if exponents[0] < 2 {
            return fail(format!(
                "branch {:?}: multiplicity must be >= 2 (or the branch is (1))",
                exponents
            ));
        }
        let mut e = exponents[0];
        for w in exponents.windows(2) {
            if w[0] >= w[1] {
                return fail(format!("branch {:?}: exponents must strictly increase", exponents));
            }
        }
        for &b in &exponents[1..] {
            let next = gcd_u64(e, b);
            if next >= e {
                return fail(format!(
                    "branch {:?}: gcd chain must strictly decrease",
                    exponents
                ));
            }
            e = next;
        }
        if e != 1 {
            return fail(format!("branch {:?}: gcd of all exponents must be 1", exponents));
        }
        Ok(BranchData {
            exponents: exponents.to_vec(),
        })
    }

    /// One-pair cusp (p; q), p < q coprime.
    pub fn cusp(p: u64, q: u64) -> Self {
        BranchData::new(&[p, q]).expect("invalid one-pair cusp")
    }

    pub fn smooth() -> Self {
        BranchData { exponents: vec![1] }
    }

    pub fn is_smooth(&self) -> bool {
        self.exponents == [1]
    }

    pub fn exponents(&self) -> &[u64] {
        &self.exponents
    }

    /// Number of characteristic pairs g.
    pub fn pairs(&self) -> usize {
        self.exponents.len() - 1
    }

    /// Multiplicity b0 of the germ.
    pub fn multiplicity(&self) -> u64 {
        self.exponents[0]
    }

    /// gcd chain e_0 > e_1 > ... > e_g = 1.
    pub fn gcd_chain(&self) -> Vec<u64> {
        let mut chain = Vec::with_capacity(self.exponents.len());
        let mut e = self.exponents[0];
        chain.push(e);
        for &b in &self.exponents[1..] {
            e = gcd_u64(e, b);
            chain.push(e);
        }
        chain
    }

    pub fn delta(&self) -> u64 {
        self.semigroup().delta()
    }

    /// Milnor number 2 * delta.
    pub fn mu(&self) -> u64 {
        2 * self.delta()
    }

    /// Semigroup of the branch via the classical generator recursion
    /// bb_{q+1} = (e_{q-1}/e_q) bb_q + b_{q+1} - b_q.
    pub fn semigroup(&self) -> Semigroup {
        if self.is_smooth() {
            return Semigroup::from_generators(vec![1]);
        }
        let b = &self.exponents;
        let e = self.gcd_chain();
        let mut gens = Vec::with_capacity(b.len());
        gens.push(b[0]);
        if b.len() > 1 {
            gens.push(b[1]);
            for i in 1..b.len() - 1 {
                let n_i = e[i - 1] / e[i];
                let next = n_i * gens[i] + b[i + 1] - b[i];
                gens.push(next);
            }
        }
        Semigroup::from_generators(gens)
    }

    /// Local Alexander polynomial as a cyclotomic product, of formal
    /// degree mu. The smooth branch yields the empty product.
    pub fn alexander(&self) -> CycloProduct {
        if self.is_smooth() {
            return CycloProduct::one();
        }
        let sg = self.semigroup();
        let c = sg.conductor();
        // (1 - t) * sum_{k in Gamma, k < c} t^k + t^c
        let mut sum = Poly::zero();
        for k in 0..c {
            if sg.contains(k) {
                sum = sum.add(&Poly::monomial(k, rat(1)));
            }
        }
        let delta_poly = Poly::from_int_coeffs(&[1, -1])
            .mul(&sum)
            .add(&Poly::monomial(c, rat(1)));
        let product = CycloProduct::from_poly(&delta_poly)
            .expect("local Alexander polynomials are cyclotomic products");
        if self.pairs() == 1 {
            // independent oracle: the (p,q) torus-knot product formula
            let (p, q) = (self.exponents[0], self.exponents[1]);
            let oracle = CycloProduct::from_pairs(&[(p * q, 1), (1, 1), (p, -1), (q, -1)]);
            assert_eq!(
                product, oracle,
                "semigroup and product formulas disagree for ({};{})",
                p, q
            );
        }
        debug_assert_eq!(product.formal_degree(), self.mu() as i64);
        product
    }

    /// Multiplicity sequence of the infinitely near points, trailing 1s
    /// stripped (the blow-ups they stand for are produced by the embedded
    /// resolution when normal crossings require them).
    pub fn multiplicity_sequence(&self) -> Vec<u64> {
        let mut seq = self.multiplicity_trace();
        while seq.last() == Some(&1) {
            seq.pop();
        }
        seq
    }

    /// Full multiplicity sequence including the trailing 1s needed to
    /// reach normal crossings: the subtractive Euclidean trace of
    /// (b0, b1), then of (e_{i-1}, b_i - b_{i-1}) for each further pair.
    pub(crate) fn multiplicity_trace(&self) -> Vec<u64> {
        if self.is_smooth() {
            return Vec::new();
        }
        let b = &self.exponents;
        let e = self.gcd_chain();
        let mut seq = Vec::new();
        for i in 1..b.len() {
            let (mut x, mut y) = if i == 1 {
                (b[0], b[1])
            } else {
                (e[i - 1], b[i] - b[i - 1])
            };
            while x > 0 && y > 0 {
                if x <= y {
                    seq.push(x);
                    y -= x;
                } else {
                    seq.push(y);
                    x -= y;
                }
            }
        }
        seq
    }
}

impl fmt::Display for BranchData {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_smooth() {
            return write!(f, "(1)");
        }
        write!(f, "({};", self.exponents[0])?;
        for (i, b) in self.exponents[1..].iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", b)?;
        }
        write!(f, ")")
    }
}

impl fmt::Debug for BranchData {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BranchData{}", self)
    }
}

/// Numerical semigroup of a branch: generators, conductor, delta, and a
/// membership sieve up to the conductor.
#[derive(Clone, PartialEq, Eq)]
pub struct Semigroup {
    generators: Vec<u64>,
    conductor: u64,
    delta: u64,
    members_below_c: Vec<bool>,
}

impl Semigroup {
    pub fn from_generators(generators: Vec<u64>) -> Semigroup {
        assert!(!generators.is_empty());
        let g = generators.iter().fold(0, |acc, &x| gcd_u64(acc, x));
        assert_eq!(g, 1, "semigroup generators must be coprime");
        // sieve far enough to see the conductor: Frobenius number of
        // <a, b> is bounded by a*b, and adding generators only shrinks it
        let bound = if generators.contains(&1) {
            1
        } else {
            let mut sorted = generators.clone();
            sorted.sort_unstable();
            (sorted[0] * sorted[1]) as usize + 1
        };
        let mut member = vec![false; bound + 1];
        member[0] = true;
        for k in 1..=bound {
            for &gen in &generators {
                if gen as usize <= k && member[k - gen as usize] {
                    member[k] = true;
                    break;
                }
            }
        }
        let mut conductor = 0usize;
        for k in (0..=bound).rev() {
            if !member[k] {
                conductor = k + 1;
                break;
            }
        }
        let delta = (0..conductor).filter(|&k| !member[k]).count() as u64;
        let members_below_c = member[..conductor].to_vec();
        Semigroup {
            generators,
            conductor: conductor as u64,
            delta,
            members_below_c,
        }
    }

    pub fn generators(&self) -> &[u64] {
        &self.generators
    }

    pub fn conductor(&self) -> u64 {
        self.conductor
    }

    pub fn delta(&self) -> u64 {
        self.delta
    }

    pub fn contains(&self, k: u64) -> bool {
        if k >= self.conductor {
            true
        } else {
            self.members_below_c[k as usize]
        }
    }

    /// The gaps (complement) below the conductor.
    pub fn gaps(&self) -> Vec<u64> {
        (0..self.conductor).filter(|&k| !self.contains(k)).collect()
    }

    /// Gorenstein symmetry k in Gamma <=> c-1-k not in Gamma.
    pub fn is_symmetric(&self) -> bool {
        (0..self.conductor).all(|k| self.contains(k) != self.contains(self.conductor - 1 - k))
    }
}

impl fmt::Debug for Semigroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Semigroup<{:?}> (c = {}, delta = {})",
            self.generators, self.conductor, self.delta
        )
    }
}

/// Bundle of local invariants of a germ, for consumption by the global
/// formulas. `jordan1` is 1 for every natively constructed branch: the
/// local monodromy of an irreducible plane germ has finite order.
#[derive(Clone, Debug)]
pub struct LocalInvariants {
    pub mu: u64,
    pub delta: u64,
    pub alexander: CycloProduct,
    pub jordan1: Poly,
    pub spectrum: Option<SpectrumPoly>,
}

impl LocalInvariants {
    pub fn of_branch(b: &BranchData) -> LocalInvariants {
        let delta = b.delta();
        let spectrum = if b.pairs() == 1 {
            Some(spectrum_quasihomogeneous(b.exponents()[0], b.exponents()[1]))
        } else if b.is_smooth() {
            Some(SpectrumPoly::zero())
        } else {
            None
        };
        LocalInvariants {
            mu: 2 * delta,
            delta,
            alexander: b.alexander(),
            jordan1: Poly::one(),
            spectrum,
        }
    }
}

/// Spectrum of the one-pair germ x^p + y^q: the multiset
/// { i/p + j/q : 1 <= i <= p-1, 1 <= j <= q-1 }, of cardinality
/// (p-1)(q-1) and symmetric about 1.
pub fn spectrum_quasihomogeneous(p: u64, q: u64) -> SpectrumPoly {
    assert!(p >= 2 && q >= 2, "spectrum_quasihomogeneous: p, q >= 2");
    assert_eq!(gcd_u64(p, q), 1, "spectrum_quasihomogeneous: gcd(p,q) = 1");
    let mut s = SpectrumPoly::zero();
    for i in 1..p {
        for j in 1..q {
            let alpha = ratio(i as i64, p as i64) + ratio(j as i64, q as i64);
            s.add_term(alpha, 1);
        }
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn branch_validation() {
        assert!(BranchData::new(&[2, 3]).is_ok());
        assert!(BranchData::new(&[1]).is_ok());
        assert!(BranchData::new(&[4, 6, 7]).is_ok());
        // gcd chain must strictly decrease
        assert!(BranchData::new(&[4, 6, 8]).is_err());
        // must strictly increase
        assert!(BranchData::new(&[3, 3]).is_err());
        // gcd must reach 1
        assert!(BranchData::new(&[2, 4]).is_err());
        assert!(BranchData::new(&[2]).is_err());
    }

    #[test]
    fn semigroups() {
        let s = BranchData::cusp(2, 3).semigroup();
        assert_eq!(s.generators(), &[2, 3]);
        assert_eq!((s.delta(), s.conductor()), (1, 2));
        assert_eq!(s.gaps(), vec![1]);

        let s = BranchData::cusp(2, 13).semigroup();
        assert_eq!((s.delta(), s.conductor()), (6, 12));
        assert_eq!(s.gaps(), vec![1, 3, 5, 7, 9, 11]);

        let s = BranchData::new(&[4, 6, 7]).unwrap().semigroup();
        assert_eq!(s.generators(), &[4, 6, 13]);
        assert_eq!((s.delta(), s.conductor()), (8, 16));
        assert!(s.is_symmetric());
    }

    #[test]
    fn alexander_polynomials() {
        let a = BranchData::cusp(2, 3).alexander();
        assert_eq!(a, CycloProduct::from_pairs(&[(6, 1), (1, 1), (2, -1), (3, -1)]));
        let a = BranchData::cusp(2, 13).alexander();
        assert_eq!(
            a,
            CycloProduct::from_pairs(&[(26, 1), (1, 1), (2, -1), (13, -1)])
        );
        assert!(BranchData::smooth().alexander().is_one());
        // multi-pair: degree and value at 1
        let b = BranchData::new(&[4, 6, 7]).unwrap();
        let a = b.alexander();
        assert_eq!(a.formal_degree(), 16);
        assert_eq!(a.value_at_one(), (0, rat(1)));
    }

    #[test]
    fn multiplicity_sequences() {
        assert_eq!(BranchData::cusp(2, 3).multiplicity_sequence(), vec![2]);
        assert_eq!(
            BranchData::cusp(2, 13).multiplicity_sequence(),
            vec![2, 2, 2, 2, 2, 2]
        );
        let b = BranchData::new(&[4, 6, 7]).unwrap();
        let seq = b.multiplicity_sequence();
        assert_eq!(seq, vec![4, 2, 2]);
        // delta consistency on the full trace
        let total: u64 = b
            .multiplicity_trace()
            .iter()
            .map(|m| m * (m - 1) / 2)
            .sum();
        assert_eq!(total, b.delta());
        // non-increasing
        assert!(seq.windows(2).all(|w| w[0] >= w[1]));
    }

    #[test]
    fn quasihomogeneous_spectra() {
        let s = spectrum_quasihomogeneous(2, 3);
        assert_eq!(s.multiplicity(&ratio(5, 6)), 1);
        assert_eq!(s.multiplicity(&ratio(7, 6)), 1);
        assert_eq!(s.total_multiplicity(), 2);

        let s = spectrum_quasihomogeneous(2, 5);
        let want = [(7, 10), (9, 10), (11, 10), (13, 10)];
        for (n, d) in want {
            assert_eq!(s.multiplicity(&ratio(n, d)), 1);
        }

        let s = spectrum_quasihomogeneous(2, 13);
        assert_eq!(s.total_multiplicity(), 12);
        assert!(s.is_symmetric_about(&rat(1)));
    }
}
