//! Truncated Maclaurin series with exact rational coefficients.

use std::fmt;

use num_traits::Zero;

use super::poly::Poly;
use super::rat::{rat, Rat};
use crate::error::{Error, Result};

/// Power series truncated at order D: exactly D+1 stored coefficients.
#[derive(Clone, PartialEq, Eq)]
pub struct Series {
    coeffs: Vec<Rat>,
}

impl Series {
    pub fn zero(order: u64) -> Self {
        Series {
            coeffs: vec![rat(0); order as usize + 1],
        }
    }

    pub fn truncation_order(&self) -> u64 {
        self.coeffs.len() as u64 - 1
    }

    pub fn coeff(&self, k: u64) -> Rat {
        self.coeffs
            .get(k as usize)
            .cloned()
            .unwrap_or_else(|| rat(0))
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn from_poly(p: &Poly, order: u64) -> Self {
        let mut s = Series::zero(order);
        for (e, c) in p.terms() {
            if e <= order {
                s.coeffs[e as usize] = c.clone();
            }
        }
        s
    }

    pub fn add(&self, other: &Series) -> Series {
        assert_eq!(self.coeffs.len(), other.coeffs.len());
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a + b)
            .collect();
        Series { coeffs }
    }

    pub fn sub(&self, other: &Series) -> Series {
        assert_eq!(self.coeffs.len(), other.coeffs.len());
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a - b)
            .collect();
        Series { coeffs }
    }

    pub fn mul(&self, other: &Series) -> Series {
        assert_eq!(self.coeffs.len(), other.coeffs.len());
        let n = self.coeffs.len();
        let mut coeffs = vec![rat(0); n];
        for i in 0..n {
            if self.coeffs[i].is_zero() {
                continue;
            }
            for j in 0..n - i {
                if !other.coeffs[j].is_zero() {
                    coeffs[i + j] += &self.coeffs[i] * &other.coeffs[j];
                }
            }
        }
        Series { coeffs }
    }

    /// Truncate away everything above `deg` and return the polynomial.
    pub fn to_poly(&self, deg: u64) -> Poly {
        let upto = (deg as usize + 1).min(self.coeffs.len());
        Poly::from_coeffs(&self.coeffs[..upto])
    }
}

/// Maclaurin expansion of num/den to order D; requires den(0) != 0.
pub fn series_of(num: &Poly, den: &Poly, order: u64) -> Result<Series> {
    let d0 = den.coeff(0);
    if d0.is_zero() {
        return Err(Error::DenominatorVanishesAtZero);
    }
    let n = order as usize + 1;
    let mut out = vec![rat(0); n];
    for k in 0..n {
        let mut acc = num.coeff(k as u64);
        for j in 1..=k {
            let dj = den.coeff(j as u64);
            if !dj.is_zero() {
                acc -= dj * &out[k - j];
            }
        }
        out[k] = acc / &d0;
    }
    Ok(Series { coeffs: out })
}

/// Keep only the coefficients at exponents divisible by d. This is the
/// exact effect of averaging x(t) over substitutions t -> xi t with xi
/// running through the d-th roots of unity.
pub fn multiples_filter(x: &Series, d: u64) -> Series {
    assert!(d >= 1);
    let coeffs = x
        .coeffs
        .iter()
        .enumerate()
        .map(|(k, c)| if k as u64 % d == 0 { c.clone() } else { rat(0) })
        .collect();
    Series { coeffs }
}

impl fmt::Debug for Series {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Series{:?}", self.coeffs.iter().map(|c| c.to_string()).collect::<Vec<_>>())
    }
}
