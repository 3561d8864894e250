//! Local topological zeta functions and the monodromy conjecture checker.
//!
//! A zeta function is kept as a sum of terms c * prod 1/(a + b s): that is
//! the shape the stratum-sum definition produces, one term per stratum of
//! the exceptional set, and it is preserved through the assembly of the
//! global function so each piece stays recognizable. Normalization over a
//! common denominator with exact cancellation happens only for pole
//! extraction.
//!
//! For a germ of a plane curve with resolution data (N_j, nu_j) the
//! stratum sum specializes to
//!
//!   Z(s) = sum_j chi(E_j minus other divisors) / (nu_j + N_j s)
//!        + sum_edges 1/((nu_a + N_a s)(nu_b + N_b s))
//!        + sum_arrows 1/((nu_j + N_j s)(1 + s)),
//!
//! with chi(E_j ...) = 2 - valency (arrows included).
//!
//! The global function of the surface singularity with tangent cone C of
//! degree d is assembled from chi(P^2 \ C), chi(C \ sing C) and the local
//! zeta functions with the variable substitution tau = 3 + (d+1) s; the
//! factor t - s = 3 + d s contributes the candidate pole -3/d. For each
//! pole -a/b of the result (in lowest terms), exp(-2 pi i a/b) is an
//! eigenvalue of a monodromy exactly when Phi_b divides the corresponding
//! characteristic polynomial; integer poles are always witnessed by the
//! trivial eigenvalue 1 on degree-zero homology.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_traits::Zero;

use crate::algebra::rat::{rat, ratio, Rat};
use crate::algebra::{CycloProduct, Poly};
use crate::curve::{CurveSpec, PointData};
use crate::error::{Error, Result};
use crate::resolution::LocalResolution;

/// A linear factor 1/(a + b s); stored primitive with b > 0.
pub type LinFactor = (i64, i64);

/// Rational function in s held as a sum of terms c * prod 1/(a + b s).
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct ZetaFn {
    /// factor multiset (sorted) -> coefficient
    terms: BTreeMap<Vec<LinFactor>, Rat>,
    /// candidate pole set, attached by the global assembly
    candidates: Option<BTreeSet<Rat>>,
}

fn gcd_i64(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        let r = a % b;
        a = b;
        b = r;
    }
    a
}

/// Canonicalize a factor: positive b, primitive (a, b); returns the
/// scalar that must divide the coefficient.
fn canonical_factor(a: i64, b: i64) -> (LinFactor, i64) {
    assert!(b > 0, "zeta factor must have positive s-coefficient");
    let g = gcd_i64(a, b).max(1);
    ((a / g, b / g), g)
}

impl ZetaFn {
    pub fn zero() -> Self {
        ZetaFn::default()
    }

    /// Add c * prod 1/(a_i + b_i s).
    pub fn add_term(&mut self, coeff: Rat, factors: &[LinFactor]) {
        if coeff.is_zero() {
            return;
        }
        let mut c = coeff;
        let mut key: Vec<LinFactor> = Vec::with_capacity(factors.len());
        for &(a, b) in factors {
            let (f, g) = canonical_factor(a, b);
            c /= rat(g);
            key.push(f);
        }
        key.sort_unstable();
        match self.terms.entry(key) {
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
        }
    }

    pub fn from_terms(terms: Vec<(Rat, Vec<LinFactor>)>) -> Self {
        let mut z = ZetaFn::zero();
        for (c, fs) in terms {
            z.add_term(c, &fs);
        }
        z
    }

    /// The local zeta function of an ordinary node: 1/(1+s)^2.
    pub fn node_local() -> Self {
        ZetaFn::from_terms(vec![(rat(1), vec![(1, 1), (1, 1)])])
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<LinFactor>, &Rat)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &ZetaFn) -> ZetaFn {
        let mut out = self.clone();
        for (fs, c) in &other.terms {
            out.add_term(c.clone(), fs);
        }
        out
    }

    pub fn scale(&self, k: &Rat) -> ZetaFn {
        let mut out = ZetaFn::zero();
        for (fs, c) in &self.terms {
            out.add_term(c * k, fs);
        }
        out
    }

    /// Multiply every term by the extra factors (no cancellation).
    pub fn mul_term(&self, coeff: &Rat, factors: &[LinFactor]) -> ZetaFn {
        let mut out = ZetaFn::zero();
        for (fs, c) in &self.terms {
            let mut all = fs.clone();
            all.extend_from_slice(factors);
            out.add_term(c * coeff, &all);
        }
        out
    }

    /// Substitute s -> (q + p s), i.e. each factor a + b s becomes
    /// (a + b q) + b p s. Drops any attached candidate set.
    pub fn substitute_affine(&self, q: i64, p: i64) -> ZetaFn {
        let mut out = ZetaFn::zero();
        for (fs, c) in &self.terms {
            let subs: Vec<LinFactor> = fs.iter().map(|&(a, b)| (a + b * q, b * p)).collect();
            out.add_term(c.clone(), &subs);
        }
        out
    }

    /// Exact value at s = s0, through the cancelled form (a factor may
    /// vanish term-by-term at a regular point of the sum); `None` exactly
    /// at the genuine poles.
    pub fn eval(&self, s0: &Rat) -> Option<Rat> {
        let (num, den) = self.normalized();
        let mut v = num.eval(s0);
        for &((a, b), m) in &den {
            let f = rat(a) + rat(b) * s0;
            if f.is_zero() {
                return None;
            }
            for _ in 0..m {
                v /= &f;
            }
        }
        Some(v)
    }

    /// Common-denominator form (numerator polynomial in s, denominator as
    /// factor powers), before cancellation.
    pub fn over_common_denominator(&self) -> (Poly, Vec<(LinFactor, u32)>) {
        let mut maxmult: BTreeMap<LinFactor, u32> = BTreeMap::new();
        for fs in self.terms.keys() {
            let mut counts: BTreeMap<LinFactor, u32> = BTreeMap::new();
            for &f in fs {
                *counts.entry(f).or_insert(0) += 1;
            }
            for (f, m) in counts {
                let e = maxmult.entry(f).or_insert(0);
                *e = (*e).max(m);
            }
        }
        let mut num = Poly::zero();
        for (fs, c) in &self.terms {
            let mut counts: BTreeMap<LinFactor, u32> = BTreeMap::new();
            for &f in fs {
                *counts.entry(f).or_insert(0) += 1;
            }
            let mut term = Poly::constant(c.clone());
            for (&f, &m) in &maxmult {
                let missing = m - counts.get(&f).copied().unwrap_or(0);
                if missing > 0 {
                    term = term.mul(&factor_poly(f).pow(missing as u64));
                }
            }
            num = num.add(&term);
        }
        (num, maxmult.into_iter().collect())
    }

    /// Fully cancelled numerator/denominator pair. The denominator is a
    /// product of distinct linear factors with multiplicities.
    pub fn normalized(&self) -> (Poly, Vec<(LinFactor, u32)>) {
        let (mut num, den) = self.over_common_denominator();
        if num.is_zero() {
            return (Poly::zero(), Vec::new());
        }
        let mut reduced = Vec::new();
        for (f, mult) in den {
            let s0 = ratio(-f.0, f.1);
            let mut left = mult;
            while left > 0 && num.eval(&s0).is_zero() {
                num = num
                    .exact_div(&factor_poly(f))
                    .expect("root of numerator divides");
                left -= 1;
            }
            if left > 0 {
                reduced.push((f, left));
            }
        }
        (num, reduced)
    }

    /// Exact poles with multiplicities after full cancellation. When a
    /// candidate set is attached (the global assembly does so), every pole
    /// must lie inside it; a violation signals an internal inconsistency.
    pub fn poles(&self) -> Result<PoleReport> {
        let (num, den) = self.normalized();
        let mut poles = Vec::new();
        for &(f, mult) in &den {
            let s0 = ratio(-f.0, f.1);
            // leading Laurent coefficient: evaluate num / (den without f)
            let mut lead = num.eval(&s0);
            for &(g, gm) in &den {
                if g == f {
                    // the b^mult from (a + bs)^mult = b^mult (s - s0)^mult
                    for _ in 0..gm {
                        lead /= rat(f.1);
                    }
                } else {
                    let gv = rat(g.0) + rat(g.1) * &s0;
                    for _ in 0..gm {
                        lead /= &gv;
                    }
                }
            }
            poles.push(Pole {
                s0,
                multiplicity: mult,
                leading_coeff: lead,
            });
        }
        poles.sort_by(|p, q| p.s0.cmp(&q.s0));
        if let Some(cands) = &self.candidates {
            for p in &poles {
                if !cands.contains(&p.s0) {
                    return Err(Error::CandidateSetViolation(p.s0.to_string()));
                }
            }
        }
        Ok(PoleReport { poles })
    }

    /// Pole positions only.
    pub fn pole_set(&self) -> Vec<Rat> {
        self.poles()
            .map(|r| r.poles.into_iter().map(|p| p.s0).collect())
            .unwrap_or_default()
    }

    pub fn candidates(&self) -> Option<&BTreeSet<Rat>> {
        self.candidates.as_ref()
    }
}

fn factor_poly(f: LinFactor) -> Poly {
    Poly::from_int_coeffs(&[f.0, f.1])
}

/// One exact pole.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Pole {
    pub s0: Rat,
    pub multiplicity: u32,
    /// Residue for a simple pole; the leading Laurent coefficient for a
    /// multiple pole.
    pub leading_coeff: Rat,
}

/// All poles, distinct, sorted by position.
#[derive(Clone, Debug, Default)]
pub struct PoleReport {
    pub poles: Vec<Pole>,
}

impl PoleReport {
    pub fn positions(&self) -> Vec<Rat> {
        self.poles.iter().map(|p| p.s0.clone()).collect()
    }

    pub fn find(&self, s0: &Rat) -> Option<&Pole> {
        self.poles.iter().find(|p| &p.s0 == s0)
    }
}

/// Stratum sum of the zeta function of one resolved branch, in the local
/// variable.
pub fn local_zeta(r: &LocalResolution) -> ZetaFn {
    let mut z = ZetaFn::zero();
    let f = |i: usize| -> LinFactor { (r.vertices[i].nu as i64, r.vertices[i].n as i64) };
    for v in 0..r.vertices.len() {
        let chi = 2i64 - r.valency_with_arrow(v) as i64;
        z.add_term(rat(chi), &[f(v)]);
    }
    for &(a, b) in &r.edges {
        z.add_term(rat(1), &[f(a), f(b)]);
    }
    z.add_term(rat(1), &[f(r.arrow), (1, 1)]);
    z
}

/// The local topological zeta function of the surface singularity with
/// tangent cone `c`, assembled from the Euler characteristics and the
/// local zeta functions with tau = 3 + (d+1) s substituted; the pieces
/// multiplied into each local function are rewritten as
/// (tau+1)(1/((tau-s)(s+1)) - 1/tau) = 1/(s+1) + 1/(tau-s) - 1 - 1/tau
/// so everything stays a sum of reciprocal products.
pub fn zeta_sis(c: &CurveSpec) -> Result<ZetaFn> {
    let data = c.point_data()?;
    let ec = c.euler_chars()?;
    let d = c.degree as i64;

    let t_minus_s: LinFactor = (3, d); // 3 + d s
    let t_factor: LinFactor = (3, d + 1); // tau = 3 + (d+1) s
    let s_plus_1: LinFactor = (1, 1);

    let mut z = ZetaFn::zero();
    z.add_term(rat(ec.chi_complement), &[t_minus_s]);
    z.add_term(rat(ec.chi_c_smooth), &[t_minus_s, s_plus_1]);

    let mut candidates: BTreeSet<Rat> = BTreeSet::new();
    candidates.insert(rat(-1));
    candidates.insert(ratio(-3, d));

    for (pi, p) in data.iter().enumerate() {
        let local = p.zeta_local.as_ref().ok_or(Error::UnsupportedLocalData {
            point: pi,
            reason: "no local zeta function available".to_string(),
        })?;
        // candidate poles -(3 + nu/N)/(d+1) from the actual local poles
        for pole in local.pole_set() {
            candidates.insert((pole - rat(3)) / rat(d + 1));
        }
        let shifted = local.substitute_affine(3, d + 1);
        z.add_term(rat(1), &[t_factor]);
        z = z.add(&shifted.mul_term(&rat(1), &[s_plus_1]));
        z = z.add(&shifted.mul_term(&rat(1), &[t_minus_s]));
        z = z.add(&shifted.scale(&rat(-1)));
        z = z.add(&shifted.mul_term(&rat(-1), &[t_factor]));
    }

    z.candidates = Some(candidates);
    Ok(z)
}

/// rho(C) = chi(P^2 \ C) + chi(C \ sing C) d/(d-3) + sum of the local
/// zeta values at -3/d. Undefined for d = 3, and requires -3/d to be a
/// regular point of every local zeta function.
pub fn rho(c: &CurveSpec) -> Result<Rat> {
    if c.degree == 3 {
        return Err(Error::DegreeThree);
    }
    let data = c.point_data()?;
    let ec = c.euler_chars()?;
    let d = c.degree as i64;
    let at = ratio(-3, d);
    let mut total = rat(ec.chi_complement) + rat(ec.chi_c_smooth) * ratio(d, d - 3);
    for (pi, p) in data.iter().enumerate() {
        let local = p.zeta_local.as_ref().ok_or(Error::UnsupportedLocalData {
            point: pi,
            reason: "no local zeta function available".to_string(),
        })?;
        let v = local
            .eval(&at)
            .ok_or(Error::LocalPoleAtMinus3OverD(pi))?;
        total += v;
    }
    Ok(total)
}

/// How a pole is certified as a monodromy eigenvalue.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Witness {
    /// Integer pole: exp(2 pi i s0) = 1 is the eigenvalue on degree-zero
    /// homology at any point of the hypersurface.
    IntegerPole,
    /// Phi_b divides the characteristic polynomial of the 3-fold germ.
    CharPoly { order: u64 },
    /// Phi_b divides some local Alexander polynomial.
    LocalAlexander { point: usize, order: u64 },
    /// Phi_b divides some local Alexander polynomial evaluated at
    /// t^(d+1).
    LocalShifted { point: usize, order: u64 },
    /// No witness found: the conjecture fails at this pole.
    Missing,
}

/// Verdict for one pole of the global zeta function.
#[derive(Clone, Debug)]
pub struct PoleVerdict {
    pub s0: Rat,
    pub multiplicity: u32,
    pub witness: Witness,
}

/// Full output of the monodromy conjecture checker.
#[derive(Clone, Debug)]
pub struct ConjectureReport {
    pub holds: bool,
    pub poles: Vec<PoleVerdict>,
    pub chi_complement: i64,
    /// Degree-d divisor with chi(P^2 \ C) <= 0 whose local zeta functions
    /// have no pole at -3/d.
    pub bad_divisor: bool,
    /// rho(C) when it is defined (d != 3 and -3/d locally regular).
    pub rho: Option<Rat>,
}

/// Checks the local monodromy conjecture on the assembled zeta function:
/// each pole -a/b must make exp(-2 pi i a/b) an eigenvalue of the
/// monodromy, tested through cyclotomic divisibility of the
/// characteristic polynomial, the local Alexander polynomials, or their
/// t^(d+1)-substitutes; integer poles are witnessed trivially.
pub fn check_monodromy_conjecture(c: &CurveSpec) -> Result<ConjectureReport> {
    let data = c.point_data()?;
    let ec = c.euler_chars()?;
    let z = zeta_sis(c)?;
    let report = z.poles()?;
    let char_poly = crate::monodromy::char_poly_sis(c)?;
    let d = c.degree;

    let mut verdicts = Vec::new();
    for pole in &report.poles {
        let witness = find_witness(&pole.s0, &char_poly, &data, d);
        verdicts.push(PoleVerdict {
            s0: pole.s0.clone(),
            multiplicity: pole.multiplicity,
            witness,
        });
    }
    let holds = verdicts.iter().all(|v| v.witness != Witness::Missing);

    let minus_3_d = ratio(-3, d as i64);
    let local_pole_at_3_d = data.iter().any(|p| {
        p.zeta_local
            .as_ref()
            .map(|z| z.pole_set().contains(&minus_3_d))
            .unwrap_or(false)
    });
    let bad_divisor = ec.chi_complement <= 0 && !local_pole_at_3_d;

    Ok(ConjectureReport {
        holds,
        poles: verdicts,
        chi_complement: ec.chi_complement,
        bad_divisor,
        rho: rho(c).ok(),
    })
}

fn find_witness(s0: &Rat, char_poly: &CycloProduct, data: &[PointData], d: u64) -> Witness {
    let b = s0.denom().clone();
    let b: u64 = match u64::try_from(&b) {
        Ok(v) => v,
        Err(_) => return Witness::Missing,
    };
    if b == 1 {
        return Witness::IntegerPole;
    }
    if char_poly.phi_exponent(b) > 0 {
        return Witness::CharPoly { order: b };
    }
    for (pi, p) in data.iter().enumerate() {
        if let Some(a) = &p.alexander {
            if a.phi_exponent(b) > 0 {
                return Witness::LocalAlexander { point: pi, order: b };
            }
            if a.substitute_power(d + 1).phi_exponent(b) > 0 {
                return Witness::LocalShifted { point: pi, order: b };
            }
        }
    }
    Witness::Missing
}

impl fmt::Display for ZetaFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (num, den) = self.normalized();
        write!(f, "({})", num)?;
        if !den.is_empty() {
            write!(f, " / (")?;
            for (i, ((a, b), m)) in den.iter().enumerate() {
                if i > 0 {
                    write!(f, " ")?;
                }
                let lin = factor_poly((*a, *b));
                if *m == 1 {
                    write!(f, "({})", lin)?;
                } else {
                    write!(f, "({})^{}", lin, m)?;
                }
            }
            write!(f, ")")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::branch::BranchData;
    use crate::curve::SingularPoint;
    use crate::resolution::embedded_resolution;

    #[test]
    fn cusp_local_zeta() {
        let z = local_zeta(&embedded_resolution(&BranchData::cusp(2, 3)));
        // known closed form (4s+5)/((s+1)(6s+5))
        assert_eq!(z.pole_set(), vec![ratio(-1, 1), ratio(-5, 6)]);
        let (num, den) = z.normalized();
        assert_eq!(num, Poly::from_int_coeffs(&[5, 4]));
        assert_eq!(den, vec![((1, 1), 1), ((5, 6), 1)]);
        // value at 0 is 1 for every local zeta function
        assert_eq!(z.eval(&rat(0)).unwrap(), rat(1));
    }

    #[test]
    fn a12_local_zeta_poles() {
        let z = local_zeta(&embedded_resolution(&BranchData::cusp(2, 13)));
        assert_eq!(z.pole_set(), vec![ratio(-1, 1), ratio(-15, 26)]);
        assert_eq!(z.eval(&rat(0)).unwrap(), rat(1));
    }

    #[test]
    fn conic_zeta() {
        let conic = CurveSpec::new(2, vec![2]);
        let z = zeta_sis(&conic).unwrap();
        let report = z.poles().unwrap();
        assert_eq!(report.positions(), vec![ratio(-3, 2), rat(-1)]);
        // both simple
        assert!(report.poles.iter().all(|p| p.multiplicity == 1));
    }

    #[test]
    fn line_zeta_is_smooth_germ_zeta() {
        // degree 1: assembled value must equal 1/(1+s)
        let line = CurveSpec::new(1, vec![1]);
        let z = zeta_sis(&line).unwrap();
        let (num, den) = z.normalized();
        assert_eq!(num, Poly::one());
        assert_eq!(den, vec![((1, 1), 1)]);
    }

    #[test]
    fn two_lines_zeta_matches_independent_resolution() {
        // For d=2 with one ordinary node the germ is x y + z^3 up to
        // coordinates; a direct embedded resolution of that 3-fold germ
        // (three blow-ups: point, point, then the leftover intersection
        // curve) gives Z = (s+4)/((4+3s)(1+s)). The assembled formula must
        // reproduce it exactly.
        let mut c = CurveSpec::new(2, vec![1, 1]);
        c.add_point(SingularPoint::node(0, 1));
        let z = zeta_sis(&c).unwrap();
        let (num, den) = z.normalized();
        assert_eq!(num, Poly::from_int_coeffs(&[4, 1]));
        assert_eq!(den, vec![((1, 1), 1), ((4, 3), 1)]);
        assert_eq!(z.pole_set(), vec![ratio(-4, 3), rat(-1)]);
    }

    #[test]
    fn quintic_pole_set() {
        let c = crate::curve::tests::quintic_a12();
        let z = zeta_sis(&c).unwrap();
        let poles = z.poles().unwrap();
        assert_eq!(
            poles.positions(),
            vec![rat(-1), ratio(-3, 5), ratio(-31, 52)]
        );
        // the pole carried over from the local pole at -1 cancels: the
        // prefactor tau + 1 vanishes there
        assert!(!z.pole_set().contains(&ratio(-2, 3)));
    }

    #[test]
    fn residue_identity_for_rho() {
        // Res_{s = -3/d} Z = rho(C)/d whenever -3/d is locally regular
        for c in [
            CurveSpec::new(2, vec![2]),
            crate::curve::tests::quintic_a12(),
            crate::curve::tests::tricuspidal_quartic(),
        ] {
            let d = c.degree as i64;
            let z = zeta_sis(&c).unwrap();
            let report = z.poles().unwrap();
            let at = ratio(-3, d);
            let r = rho(&c).unwrap();
            match report.find(&at) {
                Some(p) => {
                    assert_eq!(p.multiplicity, 1);
                    assert_eq!(p.leading_coeff, &r / rat(d), "degree {}", d);
                }
                None => assert!(r.is_zero()),
            }
        }
    }

    #[test]
    fn rho_errors() {
        let cubic = CurveSpec::with_cusps(3, &[BranchData::cusp(2, 3)]);
        assert_eq!(rho(&cubic), Err(Error::DegreeThree));
        // smooth quartic: plug-in value
        let quartic = CurveSpec::new(4, vec![4]);
        // chi(C) = 2 - 2*3 = -4, chi(compl) = 7, chi(smooth) = -4
        let want = rat(7) + rat(-4) * ratio(4, 1);
        assert_eq!(rho(&quartic).unwrap(), want);
    }

    #[test]
    fn monodromy_conjecture_on_conic() {
        let report = check_monodromy_conjecture(&CurveSpec::new(2, vec![2])).unwrap();
        assert!(report.holds);
        assert!(!report.bad_divisor);
        let w: Vec<_> = report.poles.iter().map(|p| (&p.s0, &p.witness)).collect();
        assert_eq!(*w[0].0, ratio(-3, 2));
        assert_eq!(*w[0].1, Witness::CharPoly { order: 2 });
        assert_eq!(*w[1].0, rat(-1));
        assert_eq!(*w[1].1, Witness::IntegerPole);
    }

    #[test]
    fn monodromy_conjecture_on_two_lines() {
        // chi(P^2 \ C) = 0 and the node zeta has a pole at -1 != -3/2:
        // bad-divisor flag on, conjecture still holds (pole -4/3 is
        // witnessed by Phi_3 | Delta_V)
        let mut c = CurveSpec::new(2, vec![1, 1]);
        c.add_point(SingularPoint::node(0, 1));
        let report = check_monodromy_conjecture(&c).unwrap();
        assert!(report.holds);
        assert_eq!(report.chi_complement, 0);
        assert!(report.bad_divisor);
        let pole = report.poles.iter().find(|p| p.s0 == ratio(-4, 3)).unwrap();
        assert_eq!(pole.witness, Witness::CharPoly { order: 3 });
    }
}
