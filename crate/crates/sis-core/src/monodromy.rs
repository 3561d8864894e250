//! Monodromy invariants of the 3-fold germ: Milnor number, characteristic
//! and Jordan polynomials, monodromy zeta functions, spectra.
//!
//! With C of degree d the tangent cone, the characteristic polynomial of
//! the monodromy on middle homology is
//!
//!   Delta_V(t) = (t^d - 1)^chi(P^2 \ C) / (t - 1) * prod_P Delta^P(t^(d+1)),
//!
//! of degree mu = (d-1)^3 + sum mu^P. The Jordan polynomials follow from
//! the d-parts Delta^P_(d) = gcd(Delta^P, (t^d - 1)^mu) and the analogous
//! parts of the local first Jordan polynomials; the second Jordan
//! polynomial is the product of the latter.
//!
//! Monodromy zeta functions are carried as products of (1 - t^n) with
//! integer exponents. The local convention is fixed by the degree oracle:
//! the zeta function of a plane germ has degree 1 - mu (the Euler
//! characteristic of its Milnor fiber), so zeta = (1 - t) / det(1 - t h)
//! with det(1 - t h) the degree-reversed Alexander polynomial. The
//! assembled zeta function of the 3-fold germ of f_d + f_{d+k} + ... then
//! has degree 1 + mu, which pins the global shape
//!
//!   zeta_f(t) = (1 - t^d)^chi(P^2 \ C) * prod_P rev(Delta^{P,k})(t^(d+k)),
//!
//! where Delta^{P,k} is the characteristic polynomial of the k-th power of
//! the local monodromy, obtained factorwise by
//! (t^n - 1)^a -> (t^(n/g) - 1)^(a g), g = gcd(n, k).

use std::collections::BTreeMap;
use std::fmt;


use crate::algebra::arith::gcd_u64;
use crate::algebra::rat::{floor_int, is_integer, rat, ratio, Rat};
use crate::algebra::{CycloProduct, Poly, SpectrumPoly};
use crate::curve::{CurveSpec, PointData};
use crate::error::{Error, Result};

/// Milnor number of the superisolated germ: (d-1)^3 + sum of the local
/// Milnor numbers.
pub fn milnor_sis(c: &CurveSpec) -> Result<u64> {
    c.ensure_valid()?;
    let d = c.degree;
    Ok((d - 1).pow(3) + c.mu_total())
}

/// Characteristic polynomial of the monodromy on middle homology, in
/// factored cyclotomic-product form.
pub fn char_poly_sis(c: &CurveSpec) -> Result<CycloProduct> {
    let data = point_data_with_alexander(c)?;
    let ec = c.euler_chars()?;
    let d = c.degree;
    let mut product = CycloProduct::from_pairs(&[(d, ec.chi_complement), (1, -1)]);
    for (_, a) in &data {
        product = product.mul(&a.substitute_power(d + 1));
    }
    // must be a genuine polynomial; a negative exponent signals
    // inconsistent input data
    for (m, e) in product.phi_exponents() {
        if e < 0 {
            return Err(Error::NotAPolynomial(m, e));
        }
    }
    Ok(product)
}

fn point_data_with_alexander(c: &CurveSpec) -> Result<Vec<(PointData, CycloProduct)>> {
    let data = c.point_data()?;
    data.into_iter()
        .enumerate()
        .map(|(pi, p)| {
            let a = p.alexander.clone().ok_or(Error::UnsupportedLocalData {
                point: pi,
                reason: "no Alexander polynomial available for this germ".to_string(),
            })?;
            Ok((p, a))
        })
        .collect()
}

/// The three polynomials that determine the Jordan form of the monodromy,
/// plus the Milnor number.
#[derive(Clone, Debug)]
pub struct JordanReport {
    pub char_poly: CycloProduct,
    pub jordan1: Poly,
    pub jordan2: Poly,
    pub mu: u64,
}

/// Jordan polynomials of the monodromy. Requires the global Alexander
/// polynomial of the curve whenever the curve has singular points or
/// several components (for a smooth irreducible curve it is forced to be
/// 1). The division in the first Jordan polynomial must come out exact;
/// a remainder signals an invalid supplied global Alexander polynomial.
pub fn jordan_polys(c: &CurveSpec) -> Result<JordanReport> {
    let data = point_data_with_alexander(c)?;
    let char_poly = char_poly_sis(c)?;
    let d = c.degree;
    let r = c.components.len() as u64;

    let alexander_global = match &c.alexander_global {
        Some(p) => p.clone(),
        None => {
            if c.points.is_empty() && r == 1 {
                Poly::one()
            } else {
                return Err(Error::MissingGlobalAlexander);
            }
        }
    };
    if alexander_global.is_zero() {
        return Err(Error::NonExactDivision(
            "global Alexander polynomial is zero".to_string(),
        ));
    }

    let mut numerator = Poly::one();
    let mut jordan2 = Poly::one();
    for (p, a) in &data {
        let j1 = p.jordan1.clone().expect("alexander implies jordan1");
        numerator = numerator.mul(&j1.substitute_power(d + 1));
        numerator = numerator.mul(&a.root_of_unity_part(d).to_poly()?);
        let j1_d = j1.root_of_unity_part(d);
        jordan2 = jordan2.mul(&j1_d);
    }
    let mut denominator = alexander_global.mul(&Poly::from_int_coeffs(&[-1, 1]).pow(r - 1));
    for (p, _) in &data {
        let j1 = p.jordan1.clone().expect("alexander implies jordan1");
        denominator = denominator.mul(&j1.root_of_unity_part(d).pow(3));
    }

    let jordan1 = numerator
        .exact_div(&denominator)
        .ok_or_else(|| {
            Error::NonExactDivision(format!(
                "({}) not divisible by ({})",
                numerator, denominator
            ))
        })?
        .monic();

    Ok(JordanReport {
        char_poly,
        jordan1,
        jordan2,
        mu: milnor_sis(c)?,
    })
}

/// Formal product of factors (1 - t^n) with integer exponents: the
/// carrier of monodromy zeta functions.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct MonodromyZeta {
    exponents: BTreeMap<u64, i64>,
}

impl MonodromyZeta {
    pub fn one() -> Self {
        MonodromyZeta::default()
    }

    pub fn mul_factor(&mut self, n: u64, e: i64) {
        assert!(n >= 1);
        let v = self.exponents.entry(n).or_insert(0);
        *v += e;
        if *v == 0 {
            self.exponents.remove(&n);
        }
    }

    pub fn mul(&self, other: &MonodromyZeta) -> MonodromyZeta {
        let mut out = self.clone();
        for (&n, &e) in &other.exponents {
            out.mul_factor(n, e);
        }
        out
    }

    pub fn inverse(&self) -> MonodromyZeta {
        let exponents = self.exponents.iter().map(|(&n, &e)| (n, -e)).collect();
        MonodromyZeta { exponents }
    }

    /// det(1 - t h) for a monodromy with characteristic polynomial given
    /// as a cyclotomic product: the same exponents, read in the
    /// (1 - t^n) basis.
    pub fn reversed_char_poly(char_poly: &CycloProduct) -> MonodromyZeta {
        let mut out = MonodromyZeta::one();
        for (n, a) in char_poly.iter() {
            out.mul_factor(n, a);
        }
        out
    }

    /// Local monodromy zeta of a plane germ from its characteristic
    /// polynomial: (1 - t) / det(1 - t h), of degree 1 - mu.
    pub fn local_from_char_poly(char_poly: &CycloProduct) -> MonodromyZeta {
        let mut out = MonodromyZeta::reversed_char_poly(char_poly).inverse();
        out.mul_factor(1, 1);
        out
    }

    /// t -> t^k on the factors.
    pub fn substitute_power(&self, k: u64) -> MonodromyZeta {
        assert!(k >= 1);
        let exponents = self.exponents.iter().map(|(&n, &e)| (n * k, e)).collect();
        MonodromyZeta { exponents }
    }

    /// Total degree (numerator minus denominator of the factored ratio).
    pub fn degree(&self) -> i64 {
        self.exponents.iter().map(|(&n, &e)| n as i64 * e).sum()
    }

    pub fn iter(&self) -> impl Iterator<Item = (u64, i64)> + '_ {
        self.exponents.iter().map(|(&n, &e)| (n, e))
    }

    pub fn is_one(&self) -> bool {
        self.exponents.is_empty()
    }
}

impl fmt::Display for MonodromyZeta {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.exponents.is_empty() {
            return write!(f, "1");
        }
        let mut first = true;
        for (&n, &e) in &self.exponents {
            if !first {
                write!(f, " ")?;
            }
            first = false;
            if e == 1 {
                write!(f, "(1 - t^{})", n)?;
            } else {
                write!(f, "(1 - t^{})^{}", n, e)?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for MonodromyZeta {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MonodromyZeta({})", self)
    }
}

/// Characteristic polynomial of the k-th power of a monodromy, on the
/// eigenvalue multiset: each factor (t^n - 1)^a turns into
/// (t^(n/g) - 1)^(a g) with g = gcd(n, k).
pub fn power_char_poly(char_poly: &CycloProduct, k: u64) -> CycloProduct {
    assert!(k >= 1);
    let mut out = CycloProduct::one();
    for (n, a) in char_poly.iter() {
        let g = gcd_u64(n, k);
        out.mul_factor(n / g, a * g as i64);
    }
    out
}

/// Monodromy zeta function of the germ of f_d + f_{d+k} + ... whose
/// degree-d part cuts out `c`, in factored form.
pub fn zeta_yomdin(c: &CurveSpec, k: u64) -> Result<MonodromyZeta> {
    assert!(k >= 1, "zeta_yomdin: k must be at least 1");
    let data = point_data_with_alexander(c)?;
    let ec = c.euler_chars()?;
    let d = c.degree;
    let mut z = MonodromyZeta::one();
    z.mul_factor(d, ec.chi_complement);
    for (_, a) in &data {
        let powered = power_char_poly(a, k);
        z = z.mul(&MonodromyZeta::reversed_char_poly(&powered).substitute_power(d + k));
    }
    Ok(z)
}

/// Spectrum of the germ of f_d + f_{d+k} + ..., from the local spectra.
///
/// Assembled from three finite sums: the spectrum of the cone part
/// (the cube of t^(1/d) + ... + t^((d-1)/d)), minus the local spectra
/// spread by (1 - t)/(1 - t^(1/d)) at exponents beta_i, plus the local
/// spectra spread by (1 - t)/(1 - t^(1/(d+k))) at exponents gamma_i, with
///
///   beta_i  = (floor(d(alpha_i - 1)) + d + 1) / d,
///   gamma_i = (k alpha_i + floor(d(alpha_i - 1)) + d + 1) / (d + k).
///
/// The result is normalized to be symmetric about 1, matching the
/// plane-curve convention of the local spectra (the standard 3-variable
/// normalization is this multiset shifted by +1/2; the d = 2 smooth case
/// yields exactly {1}).
pub fn spectrum_yomdin(c: &CurveSpec, k: u64) -> Result<SpectrumPoly> {
    assert!(k >= 1, "spectrum_yomdin: k must be at least 1");
    let data = c.point_data()?;
    let d = c.degree;

    let mut geom_open = SpectrumPoly::zero(); // t^(1/d) + ... + t^((d-1)/d)
    for j in 1..d {
        geom_open.add_term(ratio(j as i64, d as i64), 1);
    }
    let mut geom_d = SpectrumPoly::zero(); // 1 + t^(1/d) + ... + t^((d-1)/d)
    for j in 0..d {
        geom_d.add_term(ratio(j as i64, d as i64), 1);
    }
    let mut geom_dk = SpectrumPoly::zero();
    for j in 0..(d + k) {
        geom_dk.add_term(ratio(j as i64, (d + k) as i64), 1);
    }

    let mut beta_terms = SpectrumPoly::zero();
    let mut gamma_terms = SpectrumPoly::zero();
    for (pi, p) in data.iter().enumerate() {
        let spectrum = p.spectrum.as_ref().ok_or(Error::MissingSpectrum(pi))?;
        for (alpha, mult) in spectrum.iter() {
            let shifted = floor_int(&(rat(d as i64) * (alpha - rat(1))));
            let base = Rat::from_integer(shifted) + rat(d as i64 + 1);
            let beta = &base / rat(d as i64);
            let gamma = (rat(k as i64) * alpha + &base) / rat((d + k) as i64);
            beta_terms.add_term(beta, mult);
            gamma_terms.add_term(gamma, mult);
        }
    }

    let assembled = geom_open
        .pow(3)
        .sub(&geom_d.mul(&beta_terms))
        .add(&geom_dk.mul(&gamma_terms));
    Ok(assembled.shift(&ratio(-1, 2)))
}

/// Milnor number of a weighted-homogeneous perturbation: for weights
/// (p_x, p_y, p_z) with gcd 1,
/// (d/p_x - 1)(d/p_y - 1)(d/p_z - 1) + k * sum of local Milnor numbers.
/// The value is returned exactly; `is_integer` flags whether it is a
/// genuine integer.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightedMilnor {
    pub value: Rat,
    pub is_integer: bool,
}

pub fn mu_weighted_yomdin(
    weights: (u64, u64, u64),
    d: u64,
    k: u64,
    local_mus: &[u64],
) -> WeightedMilnor {
    let (px, py, pz) = weights;
    assert!(px >= 1 && py >= 1 && pz >= 1);
    assert_eq!(
        gcd_u64(gcd_u64(px, py), pz),
        1,
        "weights must have gcd 1"
    );
    let term = |p: u64| ratio(d as i64, p as i64) - rat(1);
    let local: u64 = local_mus.iter().sum();
    let value = term(px) * term(py) * term(pz) + rat((k * local) as i64);
    let is_integer = is_integer(&value);
    WeightedMilnor { value, is_integer }
}

/// Geometric-genus bound check: 6 p_g <= mu, with p_g = d(d-1)(d-2)/6
/// valid for rational cuspidal tangent cones.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DurfeeReport {
    pub pg: u64,
    pub mu: u64,
    pub holds: bool,
}

pub fn durfee_check(c: &CurveSpec) -> Result<DurfeeReport> {
    c.ensure_valid()?;
    if !c.is_rational_cuspidal() {
        return Err(Error::NotRationalCuspidal);
    }
    let pg = crate::plumbing::pg_rational_cuspidal(c.degree);
    let mu = milnor_sis(c)?;
    Ok(DurfeeReport {
        pg,
        mu,
        holds: 6 * pg <= mu,
    })
}
