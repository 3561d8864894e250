//! Fractional Laurent polynomials with rational exponents.
//!
//! Spectra of singularities are multisets of rational numbers recorded as
//! sum of n_alpha t^alpha; only nonzero multiplicities are stored.

use std::collections::BTreeMap;
use std::fmt;

use super::rat::Rat;

/// Sum of n_alpha t^alpha over rational exponents alpha.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct SpectrumPoly {
    terms: BTreeMap<Rat, i64>,
}

impl SpectrumPoly {
    pub fn zero() -> Self {
        SpectrumPoly::default()
    }

    pub fn term(alpha: Rat, mult: i64) -> Self {
        let mut s = SpectrumPoly::zero();
        s.add_term(alpha, mult);
        s
    }

    pub fn add_term(&mut self, alpha: Rat, mult: i64) {
        if mult == 0 {
            return;
        }
        let e = self.terms.entry(alpha.clone()).or_insert(0);
        *e += mult;
        if *e == 0 {
            self.terms.remove(&alpha);
        }
    }

    pub fn add(&self, other: &SpectrumPoly) -> SpectrumPoly {
        let mut out = self.clone();
        for (a, m) in &other.terms {
            out.add_term(a.clone(), *m);
        }
        out
    }

    pub fn sub(&self, other: &SpectrumPoly) -> SpectrumPoly {
        let mut out = self.clone();
        for (a, m) in &other.terms {
            out.add_term(a.clone(), -m);
        }
        out
    }

    pub fn mul(&self, other: &SpectrumPoly) -> SpectrumPoly {
        let mut out = SpectrumPoly::zero();
        for (a, m) in &self.terms {
            for (b, n) in &other.terms {
                out.add_term(a + b, m * n);
            }
        }
        out
    }

    /// Multiply by t^shift.
    pub fn shift(&self, shift: &Rat) -> SpectrumPoly {
        let terms = self
            .terms
            .iter()
            .map(|(a, m)| (a + shift, *m))
            .collect();
        SpectrumPoly { terms }
    }

    pub fn pow(&self, n: u32) -> SpectrumPoly {
        let mut out = SpectrumPoly::term(Rat::from_integer(0.into()), 1);
        for _ in 0..n {
            out = out.mul(self);
        }
        out
    }

    /// Total multiplicity (sum of all n_alpha).
    pub fn total_multiplicity(&self) -> i64 {
        self.terms.values().sum()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Rat, i64)> {
        self.terms.iter().map(|(a, m)| (a, *m))
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn multiplicity(&self, alpha: &Rat) -> i64 {
        self.terms.get(alpha).copied().unwrap_or(0)
    }

    /// Is the multiset invariant under alpha -> center*2 - alpha... i.e.
    /// symmetric about `center`?
    pub fn is_symmetric_about(&self, center: &Rat) -> bool {
        self.terms.iter().all(|(a, m)| {
            let mirror = center + center - a;
            self.multiplicity(&mirror) == *m
        })
    }

    pub fn min_exponent(&self) -> Option<&Rat> {
        self.terms.keys().next()
    }

    pub fn max_exponent(&self) -> Option<&Rat> {
        self.terms.keys().next_back()
    }
}

impl fmt::Display for SpectrumPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (a, m) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            if *m == 1 {
                write!(f, "t^({})", a)?;
            } else {
                write!(f, "{}*t^({})", m, a)?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for SpectrumPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SpectrumPoly({})", self)
    }
}
