//! Global model of the reduced plane curve serving as tangent cone.
//!
//! A curve is its degree, the degrees of its irreducible components, and a
//! list of singular points. A singular point holds local germs — native
//! branches given by characteristic exponents, or explicit opaque local
//! data for germs the branch machinery does not construct — together with
//! the component owning each germ and the pairwise local intersection
//! multiplicities. Intersection multiplicities are input, validated
//! against Bezout; they are never computed from Puiseux data.

use std::collections::BTreeMap;
use std::fmt;

use crate::algebra::{CycloProduct, Poly, SpectrumPoly};
use crate::branch::{BranchData, LocalInvariants};
use crate::error::{Error, Result};
use crate::resolution::embedded_resolution;
use crate::zeta::{local_zeta, ZetaFn};

/// Opaque local data for a germ that is not a native branch: the user
/// supplies the invariants the formulas need. Required consistency:
/// mu = 2 delta - r + 1, and alexander(1) = 1 when the germ is
/// irreducible.
#[derive(Clone, Debug)]
pub struct ExplicitLocal {
    pub mu: u64,
    pub delta: u64,
    pub r_branches: u64,
    pub alexander: Poly,
    pub jordan1: Poly,
    pub zeta_local: Option<ZetaFn>,
    pub spectrum: Option<SpectrumPoly>,
}

/// A germ at a singular point.
#[derive(Clone, Debug)]
pub enum LocalGerm {
    Native(BranchData),
    Explicit(ExplicitLocal),
}

impl LocalGerm {
    pub fn delta(&self) -> u64 {
        match self {
            LocalGerm::Native(b) => b.delta(),
            LocalGerm::Explicit(e) => e.delta,
        }
    }

    pub fn branch_count(&self) -> u64 {
        match self {
            LocalGerm::Native(_) => 1,
            LocalGerm::Explicit(e) => e.r_branches,
        }
    }
}

/// A singular point: germs, owning components, pairwise local
/// intersection numbers between the germs (keys (a, b) with a < b
/// indexing into `germs`).
#[derive(Clone, Debug)]
pub struct SingularPoint {
    pub germs: Vec<LocalGerm>,
    pub owners: Vec<usize>,
    pub pairwise_im: BTreeMap<(usize, usize), u64>,
}

impl SingularPoint {
    pub fn cusp(b: BranchData, owner: usize) -> Self {
        SingularPoint {
            germs: vec![LocalGerm::Native(b)],
            owners: vec![owner],
            pairwise_im: BTreeMap::new(),
        }
    }

    /// Ordinary node: two smooth branches meeting transversally.
    pub fn node(owner_a: usize, owner_b: usize) -> Self {
        let mut pairwise_im = BTreeMap::new();
        pairwise_im.insert((0, 1), 1);
        SingularPoint {
            germs: vec![
                LocalGerm::Native(BranchData::smooth()),
                LocalGerm::Native(BranchData::smooth()),
            ],
            owners: vec![owner_a, owner_b],
            pairwise_im,
        }
    }

    pub fn explicit(e: ExplicitLocal, owner: usize) -> Self {
        SingularPoint {
            germs: vec![LocalGerm::Explicit(e)],
            owners: vec![owner],
            pairwise_im: BTreeMap::new(),
        }
    }

    /// Total delta of the point: germ deltas plus pairwise intersections.
    pub fn delta(&self) -> u64 {
        let own: u64 = self.germs.iter().map(|g| g.delta()).sum();
        let cross: u64 = self.pairwise_im.values().sum();
        own + cross
    }

    /// Total number of local branches.
    pub fn branch_count(&self) -> u64 {
        self.germs.iter().map(|g| g.branch_count()).sum()
    }

    /// Milnor number 2 delta - r + 1.
    pub fn mu(&self) -> u64 {
        2 * self.delta() + 1 - self.branch_count()
    }
}

/// The combinatorial model of the tangent-cone curve.
#[derive(Clone, Debug)]
pub struct CurveSpec {
    pub degree: u64,
    pub components: Vec<u64>,
    pub points: Vec<SingularPoint>,
    pub alexander_global: Option<Poly>,
}

/// Outcome of `validate`: structured failures, never a panic.
#[derive(Clone, Debug, Default)]
pub struct ValidationReport {
    pub failures: Vec<String>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.failures.is_empty()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_valid() {
            write!(f, "valid")
        } else {
            write!(f, "{}", self.failures.join("; "))
        }
    }
}

/// Euler characteristics entering the global formulas.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EulerChars {
    /// chi(C)
    pub chi_c: i64,
    /// chi of C minus its singular points
    pub chi_c_smooth: i64,
    /// chi of the complement of C in the plane
    pub chi_complement: i64,
}

/// What a singular point looks like to the global machinery.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PointKind {
    /// A single native irreducible branch.
    Cusp,
    /// Two smooth branches meeting transversally.
    OrdinaryNode { inter_component: bool },
    /// A single explicit germ.
    Explicit,
    /// Any other combination; only delta/r/mu bookkeeping is available.
    Other,
}

/// Fully derived local package of one singular point.
#[derive(Clone, Debug)]
pub struct PointData {
    pub kind: PointKind,
    pub delta: u64,
    pub r: u64,
    pub mu: u64,
    pub alexander: Option<CycloProduct>,
    pub jordan1: Option<Poly>,
    pub zeta_local: Option<ZetaFn>,
    pub spectrum: Option<SpectrumPoly>,
}

impl CurveSpec {
    pub fn new(degree: u64, components: Vec<u64>) -> Self {
        CurveSpec {
            degree,
            components,
            points: Vec::new(),
            alexander_global: None,
        }
    }

    /// Irreducible curve of degree d with the given cusps.
    pub fn with_cusps(degree: u64, cusps: &[BranchData]) -> Self {
        let mut c = CurveSpec::new(degree, vec![degree]);
        for b in cusps {
            c.points.push(SingularPoint::cusp(b.clone(), 0));
        }
        c
    }

    pub fn add_point(&mut self, p: SingularPoint) -> &mut Self {
        self.points.push(p);
        self
    }

    pub fn set_alexander_global(&mut self, p: Poly) -> &mut Self {
        self.alexander_global = Some(p);
        self
    }

    /// Checks all model invariants, reporting each failure with its
    /// location.
    pub fn validate(&self) -> ValidationReport {
        let mut failures = Vec::new();
        if self.degree < 1 {
            failures.push("degree must be at least 1".to_string());
        }
        if self.components.is_empty() {
            failures.push("no components".to_string());
        }
        if self.components.iter().any(|&d| d < 1) {
            failures.push("component degrees must be at least 1".to_string());
        }
        let total: u64 = self.components.iter().sum();
        if total != self.degree {
            failures.push(format!(
                "component degrees sum to {}, curve degree is {}",
                total, self.degree
            ));
        }

        for (pi, p) in self.points.iter().enumerate() {
            let loc = format!("point {}", pi);
            if p.germs.is_empty() {
                failures.push(format!("{}: no branches", loc));
                continue;
            }
            if p.owners.len() != p.germs.len() {
                failures.push(format!("{}: owner list length mismatch", loc));
                continue;
            }
            for (bi, &o) in p.owners.iter().enumerate() {
                if o >= self.components.len() {
                    failures.push(format!("{}: branch {} owned by missing component {}", loc, bi, o));
                }
            }
            for a in 0..p.germs.len() {
                for b in a + 1..p.germs.len() {
                    match p.pairwise_im.get(&(a, b)) {
                        None => failures.push(format!(
                            "{}: missing intersection multiplicity for branch pair ({}, {})",
                            loc, a, b
                        )),
                        Some(0) => failures.push(format!(
                            "{}: intersection multiplicity of pair ({}, {}) must be positive",
                            loc, a, b
                        )),
                        Some(_) => {}
                    }
                }
            }
            for (&(a, b), _) in &p.pairwise_im {
                if a >= b || b >= p.germs.len() {
                    failures.push(format!("{}: malformed intersection key ({}, {})", loc, a, b));
                }
            }
            if p.delta() == 0 && p.branch_count() <= 1 {
                failures.push(format!("{}: not a singular point", loc));
            }
            for (bi, g) in p.germs.iter().enumerate() {
                if let LocalGerm::Explicit(e) = g {
                    if e.r_branches < 1 {
                        failures.push(format!("{}: branch {}: r must be >= 1", loc, bi));
                    }
                    if e.mu as i64 != 2 * e.delta as i64 - e.r_branches as i64 + 1 {
                        failures.push(format!(
                            "{}: branch {}: mu = {} violates mu = 2*delta - r + 1",
                            loc, bi, e.mu
                        ));
                    }
                    if e.r_branches == 1 {
                        let at_one = e.alexander.eval(&crate::algebra::rat(1));
                        if at_one != crate::algebra::rat(1) {
                            failures.push(format!(
                                "{}: branch {}: alexander(1) = {} but an irreducible germ requires 1",
                                loc, bi, at_one
                            ));
                        }
                    }
                    if e.jordan1.is_zero() {
                        failures.push(format!("{}: branch {}: jordan1 must be nonzero", loc, bi));
                    }
                }
            }
        }

        // genus of each component must be non-negative
        if failures.is_empty() {
            for (i, g) in self.component_genera().iter().enumerate() {
                if *g < 0 {
                    failures.push(format!("component {}: negative genus {}", i, g));
                }
            }
            // Bezout between distinct components
            for i in 0..self.components.len() {
                for j in i + 1..self.components.len() {
                    let mut total = 0u64;
                    for p in &self.points {
                        for (&(a, b), &im) in &p.pairwise_im {
                            let (oa, ob) = (p.owners[a], p.owners[b]);
                            if (oa, ob) == (i, j) || (oa, ob) == (j, i) {
                                total += im;
                            }
                        }
                    }
                    let want = self.components[i] * self.components[j];
                    if total != want {
                        failures.push(format!(
                            "Bezout failure between components {} and {}: {} != {}",
                            i, j, total, want
                        ));
                    }
                }
            }
        }

        ValidationReport { failures }
    }

    pub fn ensure_valid(&self) -> Result<()> {
        let report = self.validate();
        if report.is_valid() {
            Ok(())
        } else {
            Err(Error::InvalidCurve(report.failures))
        }
    }

    /// Geometric genus of each component:
    /// (d_i - 1)(d_i - 2)/2 minus the delta content owned by it.
    pub fn component_genera(&self) -> Vec<i64> {
        let mut genera: Vec<i64> = self
            .components
            .iter()
            .map(|&d| ((d as i64 - 1) * (d as i64 - 2)) / 2)
            .collect();
        for p in &self.points {
            for (bi, g) in p.germs.iter().enumerate() {
                genera[p.owners[bi]] -= g.delta() as i64;
            }
            for (&(a, b), &im) in &p.pairwise_im {
                if p.owners[a] == p.owners[b] {
                    genera[p.owners[a]] -= im as i64;
                }
            }
        }
        genera
    }

    /// Sum of the point deltas.
    pub fn delta_total(&self) -> u64 {
        self.points.iter().map(|p| p.delta()).sum()
    }

    /// Sum of the point Milnor numbers.
    pub fn mu_total(&self) -> u64 {
        self.points.iter().map(|p| p.mu()).sum()
    }

    /// chi(C), chi(C \ sing C) and chi(P^2 \ C).
    pub fn euler_chars(&self) -> Result<EulerChars> {
        self.ensure_valid()?;
        let genus_part: i64 = self.component_genera().iter().map(|g| 2 - 2 * g).sum();
        let branch_part: i64 = self
            .points
            .iter()
            .map(|p| p.branch_count() as i64 - 1)
            .sum();
        let chi_c = genus_part - branch_part;
        Ok(EulerChars {
            chi_c,
            chi_c_smooth: chi_c - self.points.len() as i64,
            chi_complement: 3 - chi_c,
        })
    }

    /// One rational component, all points unibranch.
    pub fn is_rational_cuspidal(&self) -> bool {
        self.components.len() == 1
            && self.component_genera()[0] == 0
            && self.points.iter().all(|p| p.branch_count() == 1)
    }

    /// Derives the local package of every singular point. Points that are
    /// neither cusps, ordinary nodes nor explicit germs get only the
    /// delta/r/mu bookkeeping.
    pub fn point_data(&self) -> Result<Vec<PointData>> {
        self.ensure_valid()?;
        let mut out = Vec::with_capacity(self.points.len());
        for p in &self.points {
            let delta = p.delta();
            let r = p.branch_count();
            let mu = p.mu();
            let data = match &p.germs[..] {
                [LocalGerm::Native(b)] if !b.is_smooth() => {
                    let inv = LocalInvariants::of_branch(b);
                    let zeta = local_zeta(&embedded_resolution(b));
                    PointData {
                        kind: PointKind::Cusp,
                        delta,
                        r,
                        mu,
                        alexander: Some(inv.alexander),
                        jordan1: Some(inv.jordan1),
                        zeta_local: Some(zeta),
                        spectrum: inv.spectrum,
                    }
                }
                [LocalGerm::Explicit(e)] => PointData {
                    kind: PointKind::Explicit,
                    delta,
                    r,
                    mu,
                    alexander: None, // converted lazily; see below
                    jordan1: Some(e.jordan1.clone()),
                    zeta_local: e.zeta_local.clone(),
                    spectrum: e.spectrum.clone(),
                },
                [LocalGerm::Native(a), LocalGerm::Native(b)]
                    if a.is_smooth()
                        && b.is_smooth()
                        && p.pairwise_im.get(&(0, 1)) == Some(&1) =>
                {
                    PointData {
                        kind: PointKind::OrdinaryNode {
                            inter_component: p.owners[0] != p.owners[1],
                        },
                        delta,
                        r,
                        mu,
                        alexander: Some(CycloProduct::from_pairs(&[(1, 1)])),
                        jordan1: Some(Poly::one()),
                        zeta_local: Some(ZetaFn::node_local()),
                        spectrum: Some(SpectrumPoly::term(crate::algebra::rat(1), 1)),
                    }
                }
                _ => PointData {
                    kind: PointKind::Other,
                    delta,
                    r,
                    mu,
                    alexander: None,
                    jordan1: None,
                    zeta_local: None,
                    spectrum: None,
                },
            };
            out.push(data);
        }
        // Explicit alexander polynomials: convert to cyclotomic form.
        for (pi, (p, data)) in self.points.iter().zip(out.iter_mut()).enumerate() {
            if data.kind == PointKind::Explicit {
                if let [LocalGerm::Explicit(e)] = &p.germs[..] {
                    let cyclo = CycloProduct::from_poly(&e.alexander).map_err(|_| {
                        Error::UnsupportedLocalData {
                            point: pi,
                            reason: "explicit Alexander polynomial is not a product of cyclotomic polynomials"
                                .to_string(),
                        }
                    })?;
                    data.alexander = Some(cyclo);
                }
            }
        }
        Ok(out)
    }
}
