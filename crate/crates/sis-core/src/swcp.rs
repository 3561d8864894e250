//! Seiberg-Witten invariant, R(t), coefficient bounds, and the semigroup
//! distribution identity for collections of cusps with 2 delta =
//! (d-1)(d-2).
//!
//! Write Delta(t) for the product of the local Alexander polynomials.
//! Then Delta(t) = 1 + (t-1) delta + (t-1)^2 Q(t), and with the
//! coefficients c_l of Q at the exponents (d-3-l) d,
//!
//!   R(t) = sum_l (c_l - (l+1)(l+2)/2) t^(d(d-3-l)).
//!
//! The same polynomial arises as a power series: the average of
//! Delta(xi t)/(1 - xi t)^2 over the d-th roots of unity xi keeps exactly
//! the exponents divisible by d, and subtracting
//! (1 - t^(d^2))/(1 - t^d)^3 must kill the whole tail above d(d-3). The
//! two routes are compared exactly; so are the two routes to the
//! Seiberg-Witten invariant:
//!
//!   route A:  sw = (1/d) sum_{xi^d = 1, xi != 1} Delta(xi)/(xi - 1)^2
//!                  + Delta''(1)/(2d) - delta(6 delta - 5)/(12 d),
//!   route B:  sw = R(1) + (Z_K^2 + s)/8 + p_g,
//!
//! where route A is evaluated through the Q-decomposition and the closed
//! forms sum 1/(xi - 1) = -(d-1)/2 and sum 1/(xi - 1)^2 = (d-1)(5-d)/12
//! (both validated against a brute-force complex-arithmetic oracle in the
//! tests), and route B uses the closed forms Z_K^2 + s =
//! -(d-1)(d^2-3d+1) and p_g = d(d-1)(d-2)/6. The bound check never
//! asserts realizability: it is a necessary-condition filter only.

use num_traits::Zero;

use crate::algebra::rat::{rat, ratio, to_i64, Rat};
use crate::algebra::{multiples_filter, series_of, Poly};
use crate::branch::BranchData;
use crate::error::{Error, Result};
use crate::plumbing::pg_rational_cuspidal;

/// A multiset of cusps constrained by 2 delta = (d-1)(d-2): the candidate
/// local data of a rational cuspidal curve of degree d.
#[derive(Clone, Debug)]
pub struct CuspCollection {
    d: u64,
    branches: Vec<BranchData>,
}

impl CuspCollection {
    /// Validates the degree constraint; branches must be singular germs.
    pub fn new(d: u64, branches: Vec<BranchData>) -> Result<Self> {
        if branches.iter().any(|b| b.is_smooth()) {
            return Err(Error::PreconditionViolated(
                "cusp collections consist of singular germs".to_string(),
            ));
        }
        let two_delta: u64 = branches.iter().map(|b| 2 * b.delta()).sum();
        let want = (d - 1) * (d - 2);
        if two_delta != want {
            return Err(Error::DegreeMismatch {
                expected: want as i64,
                actual: two_delta as i64,
            });
        }
        Ok(CuspCollection { d, branches })
    }

    pub fn degree(&self) -> u64 {
        self.d
    }

    pub fn branches(&self) -> &[BranchData] {
        &self.branches
    }

    pub fn delta(&self) -> u64 {
        self.branches.iter().map(|b| b.delta()).sum()
    }
}

/// Product of the local Alexander polynomials, expanded. Degree
/// (d-1)(d-2), value 1 at t = 1, derivative delta at t = 1.
pub fn total_alexander(cc: &CuspCollection) -> Poly {
    let mut out = Poly::one();
    for b in &cc.branches {
        out = out.mul(&b.alexander().to_poly().expect("local Alexander is a polynomial"));
    }
    out
}

/// Q(t) from Delta(t) = 1 + (t-1) delta + (t-1)^2 Q(t); the division must
/// be exact, otherwise the supplied delta does not match Delta'(1).
pub fn q_poly(delta_poly: &Poly, delta: u64) -> Result<Poly> {
    let linear = Poly::one().add(&Poly::from_int_coeffs(&[-1, 1]).scale(&rat(delta as i64)));
    let num = delta_poly.sub(&linear);
    let den = Poly::from_int_coeffs(&[-1, 1]).pow(2);
    num.exact_div(&den).ok_or_else(|| {
        Error::NonExactDivision(format!(
            "Delta - 1 - (t-1){} is not divisible by (t-1)^2",
            delta
        ))
    })
}

/// The coefficients c_l of Q at the exponents (d-3-l) d, l = 0..d-3.
pub fn cl_coefficients(q: &Poly, d: u64) -> Vec<i64> {
    if d < 3 {
        return Vec::new();
    }
    (0..=d - 3)
        .map(|l| to_i64(&q.coeff((d - 3 - l) * d)))
        .collect()
}

/// R(t) by the coefficient route: sum of (c_l - (l+1)(l+2)/2) t^(d(d-3-l)).
pub fn r_poly(cc: &CuspCollection) -> Result<Poly> {
    let delta = cc.delta();
    let q = q_poly(&total_alexander(cc), delta)?;
    let d = cc.d;
    let mut out = Poly::zero();
    for (l, &c) in cl_coefficients(&q, d).iter().enumerate() {
        let l = l as u64;
        let bound = ((l + 1) * (l + 2) / 2) as i64;
        out = out.add(&Poly::monomial(d * (d - 3 - l), rat(c - bound)));
    }
    Ok(out)
}

/// R(t) by the power-series route: the multiples-of-d filter of
/// Delta(t)/(1-t)^2 minus (1 - t^(d^2))/(1 - t^d)^3, expanded far enough
/// to watch the tail cancel. A surviving coefficient above d(d-3) means
/// the input violates the degree constraint.
pub fn r_poly_series(cc: &CuspCollection) -> Result<Poly> {
    let d = cc.d;
    let top = d * d.saturating_sub(3); // d(d-3), the expected degree bound
    let order = d * d + top;
    let delta_poly = total_alexander(cc);
    let den = Poly::from_int_coeffs(&[1, -1]).pow(2); // (1-t)^2
    let averaged = multiples_filter(&series_of(&delta_poly, &den, order)?, d);
    let num2 = Poly::one().sub(&Poly::monomial(d * d, rat(1)));
    let den2 = Poly::one().sub(&Poly::monomial(d, rat(1))).pow(3);
    let sub = series_of(&num2, &den2, order)?;
    let r = averaged.sub(&sub);
    for k in (top + 1)..=order {
        if !r.coeff(k).is_zero() {
            return Err(Error::TailNotCancelled(k));
        }
    }
    Ok(r.to_poly(top))
}

/// Bound report for the coefficients c_l against (l+1)(l+2)/2.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CPReport {
    pub c: Vec<i64>,
    pub bounds: Vec<i64>,
    pub passes: bool,
    pub equalities: Vec<bool>,
}

pub fn cp_check(cc: &CuspCollection) -> Result<CPReport> {
    let q = q_poly(&total_alexander(cc), cc.delta())?;
    let c = cl_coefficients(&q, cc.d);
    let bounds: Vec<i64> = (0..c.len() as i64).map(|l| (l + 1) * (l + 2) / 2).collect();
    let passes = c.iter().zip(&bounds).all(|(ci, bi)| ci <= bi);
    let equalities = c.iter().zip(&bounds).map(|(ci, bi)| ci == bi).collect();
    Ok(CPReport {
        c,
        bounds,
        passes,
        equalities,
    })
}

/// Seiberg-Witten invariant with both routes and the conjecture gap.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SWReport {
    pub sw: Rat,
    pub r_at_1: Rat,
    pub pg: u64,
    pub zk2_plus_s: Rat,
    /// sw - (Z_K^2 + s)/8 - p_g; equals R(1) identically.
    pub swc_gap: Rat,
    /// The conjectured bound p_g <= sw - (Z_K^2+s)/8 holds iff R(1) >= 0.
    pub swc_holds: bool,
}

/// Computes sw by the root-of-unity formula (route A) and by
/// R(1) + (Z_K^2+s)/8 + p_g (route B); exact disagreement is a bug trap.
pub fn sw_invariant(cc: &CuspCollection) -> Result<SWReport> {
    let d = cc.d as i64;
    let delta = cc.delta() as i64;
    let delta_poly = total_alexander(cc);
    let q = q_poly(&delta_poly, cc.delta())?;

    // sum over xi^d = 1, xi != 1 of 1/(xi-1) and 1/(xi-1)^2
    let sum1 = ratio(-(d - 1), 2);
    let sum2 = ratio((d - 1) * (5 - d), 12);
    // sum over xi != 1 of Q(xi) = d * (sum of q_k over d | k) - Q(1)
    let mut qsum_d = rat(0);
    for (e, c) in q.terms() {
        if e % cc.d == 0 {
            qsum_d += c;
        }
    }
    let q_at_1 = q.eval(&rat(1));
    let root_sum = sum2 + rat(delta) * sum1 + rat(d) * qsum_d - q_at_1;
    let second_derivative = delta_poly.derivative().derivative().eval(&rat(1));
    let route_a = root_sum / rat(d) + second_derivative / rat(2 * d)
        - ratio(delta * (6 * delta - 5), 12 * d);

    let r_at_1 = r_poly(cc)?.eval(&rat(1));
    let zk2_plus_s = rat(-(d - 1) * (d * d - 3 * d + 1));
    let pg = pg_rational_cuspidal(cc.d);
    let route_b = &r_at_1 + &zk2_plus_s / rat(8) + rat(pg as i64);

    if route_a != route_b {
        return Err(Error::RouteDisagreement(format!(
            "sw: root-of-unity route {} vs R(1) route {}",
            route_a, route_b
        )));
    }

    let swc_gap = &route_a - &zk2_plus_s / rat(8) - rat(pg as i64);
    debug_assert_eq!(swc_gap, r_at_1);
    Ok(SWReport {
        sw: route_a,
        r_at_1: r_at_1.clone(),
        pg,
        zk2_plus_s,
        swc_gap,
        swc_holds: r_at_1 >= rat(0),
    })
}

/// The distribution identity of the semigroup of a single cusp with
/// 2 delta = (d-1)(d-2): the number of semigroup elements k with
/// ceil(k/d) = j must be min(j+1, d), checked for all j up to
/// conductor/d + 2 (beyond which the count is stably d).
pub fn semigroup_distribution_check(b: &BranchData, d: u64) -> Result<bool> {
    if 2 * b.delta() != (d - 1) * (d - 2) {
        return Err(Error::PreconditionViolated(format!(
            "branch {} has 2 delta = {}, need (d-1)(d-2) = {}",
            b,
            2 * b.delta(),
            (d - 1) * (d - 2)
        )));
    }
    let sg = b.semigroup();
    let jmax = sg.conductor().div_ceil(d) + 2;
    for j in 0..=jmax {
        let count = if j == 0 {
            u64::from(sg.contains(0))
        } else {
            // k with ceil(k/d) = j, i.e. (j-1) d < k <= j d
            ((j - 1) * d + 1..=j * d).filter(|&k| sg.contains(k)).count() as u64
        };
        if count != (j + 1).min(d) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// One enumerated candidate with its reports.
#[derive(Clone, Debug)]
pub struct Candidate {
    pub cusps: Vec<(u64, u64)>,
    pub cp: CPReport,
    pub sw: SWReport,
}

/// Result of enumerating all multisets of one-pair cusps (p; q) with
/// pq bounded and total 2 delta = (d-1)(d-2).
#[derive(Clone, Debug)]
pub struct Enumeration {
    pub candidates: Vec<Candidate>,
    /// True when the pq bound may have excluded candidates.
    pub truncated: bool,
}

/// Enumerates in canonical order: cusps sorted lexicographically, each
/// multiset a non-decreasing sequence over that list, multisets emitted
/// in lexicographic order.
pub fn enumerate_candidates(d: u64, max_pq: u64) -> Result<Enumeration> {
    if d < 3 {
        return Err(Error::PreconditionViolated(
            "enumeration needs degree at least 3".to_string(),
        ));
    }
    let target = (d - 1) * (d - 2);
    let mut cusps: Vec<(u64, u64, u64)> = Vec::new(); // (p, q, mu)
    for p in 2..=d {
        for q in p + 1..=(max_pq / p).max(p) {
            if crate::algebra::arith::gcd_u64(p, q) != 1 || p * q > max_pq {
                continue;
            }
            let mu = (p - 1) * (q - 1);
            if mu <= target && mu > 0 {
                cusps.push((p, q, mu));
            }
        }
    }
    cusps.sort_unstable();
    // exhaustive iff every (2, q) with mu = target fits under the bound
    let truncated = max_pq < 2 * (target + 1);

    let mut candidates = Vec::new();
    let mut stack: Vec<usize> = Vec::new();
    enumerate_rec(d, target, &cusps, 0, &mut stack, &mut candidates)?;
    Ok(Enumeration {
        candidates,
        truncated,
    })
}

fn enumerate_rec(
    d: u64,
    remaining: u64,
    cusps: &[(u64, u64, u64)],
    start: usize,
    stack: &mut Vec<usize>,
    out: &mut Vec<Candidate>,
) -> Result<()> {
    if remaining == 0 {
        let branches: Vec<BranchData> = stack
            .iter()
            .map(|&i| BranchData::cusp(cusps[i].0, cusps[i].1))
            .collect();
        let cc = CuspCollection::new(d, branches)?;
        out.push(Candidate {
            cusps: stack.iter().map(|&i| (cusps[i].0, cusps[i].1)).collect(),
            cp: cp_check(&cc)?,
            sw: sw_invariant(&cc)?,
        });
        return Ok(());
    }
    for i in start..cusps.len() {
        if cusps[i].2 <= remaining {
            stack.push(i);
            enumerate_rec(d, remaining - cusps[i].2, cusps, i, stack, out)?;
            stack.pop();
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::cyclotomic;

    fn single(d: u64, p: u64, q: u64) -> CuspCollection {
        CuspCollection::new(d, vec![BranchData::cusp(p, q)]).unwrap()
    }

    #[test]
    fn collection_validation() {
        assert!(CuspCollection::new(5, vec![BranchData::cusp(2, 13)]).is_ok());
        assert!(matches!(
            CuspCollection::new(6, vec![BranchData::cusp(2, 13)]),
            Err(Error::DegreeMismatch { expected: 20, actual: 12 })
        ));
    }

    #[test]
    fn total_alexander_examples() {
        let cubic = single(3, 2, 3);
        assert_eq!(total_alexander(&cubic), cyclotomic(6));
        let quintic = single(5, 2, 13);
        assert_eq!(total_alexander(&quintic), cyclotomic(26));
        let quartic = CuspCollection::new(
            4,
            vec![
                BranchData::cusp(2, 3),
                BranchData::cusp(2, 3),
                BranchData::cusp(2, 3),
            ],
        )
        .unwrap();
        let phi6_cubed = Poly::from_int_coeffs(&[1, -3, 6, -7, 6, -3, 1]);
        assert_eq!(total_alexander(&quartic), phi6_cubed);
        // Delta(1) = 1 and Delta'(1) = delta
        for cc in [single(3, 2, 3), single(5, 2, 13)] {
            let p = total_alexander(&cc);
            assert_eq!(p.eval(&rat(1)), rat(1));
            assert_eq!(p.derivative().eval(&rat(1)), rat(cc.delta() as i64));
        }
    }

    #[test]
    fn q_polynomials() {
        assert_eq!(q_poly(&cyclotomic(6), 1).unwrap(), Poly::one());
        let phi6_cubed = Poly::from_int_coeffs(&[1, -3, 6, -7, 6, -3, 1]);
        let q = q_poly(&phi6_cubed, 3).unwrap();
        assert_eq!(q, Poly::from_int_coeffs(&[3, 0, 3, -1, 1]));
        // re-expansion identity
        let back = Poly::one()
            .add(&Poly::from_int_coeffs(&[-1, 1]).scale(&rat(3)))
            .add(&Poly::from_int_coeffs(&[-1, 1]).pow(2).mul(&q));
        assert_eq!(back, phi6_cubed);
        let q26 = q_poly(&cyclotomic(26), 6).unwrap();
        assert_eq!(
            q26,
            Poly::from_int_coeffs(&[6, 5, 5, 4, 4, 3, 3, 2, 2, 1, 1])
        );
        // wrong delta cannot divide out
        assert!(matches!(
            q_poly(&cyclotomic(6), 2),
            Err(Error::NonExactDivision(_))
        ));
    }

    #[test]
    fn cl_and_bounds() {
        let q = q_poly(&cyclotomic(6), 1).unwrap();
        assert_eq!(cl_coefficients(&q, 3), vec![1]);
        let phi6_cubed = Poly::from_int_coeffs(&[1, -3, 6, -7, 6, -3, 1]);
        let q = q_poly(&phi6_cubed, 3).unwrap();
        assert_eq!(cl_coefficients(&q, 4), vec![1, 3]);
        let q = q_poly(&cyclotomic(26), 6).unwrap();
        assert_eq!(cl_coefficients(&q, 5), vec![1, 3, 6]);
    }

    #[test]
    fn r_vanishes_on_the_anchors() {
        for cc in [
            single(3, 2, 3),
            single(5, 2, 13),
            CuspCollection::new(
                4,
                vec![
                    BranchData::cusp(2, 3),
                    BranchData::cusp(2, 3),
                    BranchData::cusp(2, 3),
                ],
            )
            .unwrap(),
        ] {
            assert!(r_poly(&cc).unwrap().is_zero());
            assert!(r_poly_series(&cc).unwrap().is_zero());
        }
    }

    #[test]
    fn two_routes_for_r_agree() {
        // a collection that is not realizable still has R = R_series
        let cc = CuspCollection::new(
            5,
            vec![
                BranchData::cusp(2, 3),
                BranchData::cusp(2, 3),
                BranchData::cusp(2, 3),
                BranchData::cusp(2, 3),
                BranchData::cusp(2, 3),
                BranchData::cusp(2, 3),
            ],
        )
        .unwrap();
        let a = r_poly(&cc).unwrap();
        let b = r_poly_series(&cc).unwrap();
        assert_eq!(a, b);
        assert!(!a.is_zero());
        // support in d Z, integer coefficients
        for (e, c) in a.terms() {
            assert_eq!(e % 5, 0);
            assert!(crate::algebra::rat::is_integer(c));
        }
    }

    #[test]
    fn sw_anchors() {
        let r = sw_invariant(&single(3, 2, 3)).unwrap();
        assert_eq!(r.sw, ratio(3, 4));
        assert_eq!(r.r_at_1, rat(0));
        assert_eq!(r.zk2_plus_s, rat(-2));
        assert_eq!(r.pg, 1);
        assert!(r.swc_holds);

        let quartic = CuspCollection::new(
            4,
            vec![
                BranchData::cusp(2, 3),
                BranchData::cusp(2, 3),
                BranchData::cusp(2, 3),
            ],
        )
        .unwrap();
        let r = sw_invariant(&quartic).unwrap();
        assert_eq!(r.sw, ratio(17, 8));

        let r = sw_invariant(&single(5, 2, 13)).unwrap();
        assert_eq!(r.sw, ratio(9, 2));
        assert_eq!(r.swc_gap, r.r_at_1);
    }

    #[test]
    fn root_of_unity_closed_forms_match_numeric_oracle() {
        // brute-force complex sums over the actual d-th roots of unity
        for d in 2..=12u32 {
            let mut s1 = (0.0f64, 0.0f64);
            let mut s2 = (0.0f64, 0.0f64);
            for j in 1..d {
                let theta = 2.0 * std::f64::consts::PI * j as f64 / d as f64;
                let (re, im) = (theta.cos() - 1.0, theta.sin());
                let norm = re * re + im * im;
                // 1/(xi-1)
                s1.0 += re / norm;
                s1.1 -= im / norm;
                // 1/(xi-1)^2
                let (r2, i2) = (re * re - im * im, 2.0 * re * im);
                let norm2 = norm * norm;
                s2.0 += r2 / norm2;
                s2.1 -= i2 / norm2;
            }
            let want1 = -(d as f64 - 1.0) / 2.0;
            let want2 = (d as f64 - 1.0) * (5.0 - d as f64) / 12.0;
            assert!((s1.0 - want1).abs() < 1e-9 && s1.1.abs() < 1e-9, "d = {}", d);
            assert!((s2.0 - want2).abs() < 1e-9 && s2.1.abs() < 1e-9, "d = {}", d);
        }
    }

    #[test]
    fn distribution_identity() {
        assert!(semigroup_distribution_check(&BranchData::cusp(2, 3), 3).unwrap());
        assert!(semigroup_distribution_check(&BranchData::cusp(2, 13), 5).unwrap());
        assert!(matches!(
            semigroup_distribution_check(&BranchData::cusp(2, 13), 6),
            Err(Error::PreconditionViolated(_))
        ));
    }

    #[test]
    fn enumeration_small_degrees() {
        let e = enumerate_candidates(3, 40).unwrap();
        assert_eq!(e.candidates.len(), 1);
        assert_eq!(e.candidates[0].cusps, vec![(2, 3)]);
        assert!(e.candidates[0].cp.passes);

        let e = enumerate_candidates(4, 40).unwrap();
        let sets: Vec<Vec<(u64, u64)>> =
            e.candidates.iter().map(|c| c.cusps.clone()).collect();
        assert!(sets.contains(&vec![(2, 3), (2, 3), (2, 3)]));
        assert!(sets.contains(&vec![(2, 7)]));
        assert!(sets.contains(&vec![(3, 4)]));
        assert!(sets.contains(&vec![(2, 3), (2, 5)]));
        assert_eq!(sets.len(), 4);

        let e = enumerate_candidates(5, 40).unwrap();
        assert!(e
            .candidates
            .iter()
            .any(|c| c.cusps == vec![(2, 13)]));

        // tight bound truncates
        let e = enumerate_candidates(4, 5).unwrap();
        assert!(e.truncated);
        assert!(e.candidates.is_empty());
    }

    #[test]
    fn enumeration_is_deterministic() {
        let a = enumerate_candidates(5, 30).unwrap();
        let b = enumerate_candidates(5, 30).unwrap();
        let la: Vec<_> = a.candidates.iter().map(|c| c.cusps.clone()).collect();
        let lb: Vec<_> = b.candidates.iter().map(|c| c.cusps.clone()).collect();
        assert_eq!(la, lb);
        // sorted multisets in lexicographic order
        let mut sorted = la.clone();
        sorted.sort();
        assert_eq!(la, sorted);
    }
}
