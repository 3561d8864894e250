//! Minimal embedded resolution of a branch by simulated point blow-ups.
//!
//! The infinitely near points of a branch are driven by the multiplicity
//! sequence, and which exceptional divisors pass through each point is
//! recovered by proximity bookkeeping: every point is proximate to the
//! divisor created just before it, and to at most one older divisor, the
//! unique one whose proximity capacity (its own multiplicity) is not yet
//! exhausted by later points.
//!
//! Numerical data along the way:
//!   N_new  = m + sum of N over divisors through the point,
//!   nu_new = 2 + sum of (nu - 1) over divisors through the point,
//! where m is the multiplicity of the strict transform at the point. Each
//! new divisor starts with self-intersection -1 and every divisor through
//! the blown-up point drops by 1. Blowing up a corner replaces the edge of
//! the two divisors by edges through the new one.
//!
//! The loop ends exactly when the strict transform is smooth and meets a
//! single divisor transversally at a free point, i.e. when the total
//! transform is a normal crossing divisor; the trace produced by
//! `BranchData::multiplicity_trace` encodes precisely that many blow-ups.

use crate::branch::BranchData;

/// One exceptional divisor of the local resolution, decorated with its
/// self-intersection, the multiplicity N of the pulled-back equation and
/// the discrepancy datum nu (the pulled-back 2-form has multiplicity
/// nu - 1).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResolutionVertex {
    pub self_int: i64,
    pub n: u64,
    pub nu: u64,
}

/// Dual tree of the minimal embedded resolution of one branch. The arrow
/// marks the divisor met by the strict transform (which itself carries
/// N = 1, nu = 1).
#[derive(Clone, Debug)]
pub struct LocalResolution {
    pub vertices: Vec<ResolutionVertex>,
    pub edges: Vec<(usize, usize)>,
    pub arrow: usize,
}

impl LocalResolution {
    /// Valency of vertex v counting the arrow.
    pub fn valency_with_arrow(&self, v: usize) -> usize {
        let deg = self
            .edges
            .iter()
            .filter(|&&(a, b)| a == v || b == v)
            .count();
        if v == self.arrow {
            deg + 1
        } else {
            deg
        }
    }

    /// Poles -nu/N of the attached zeta factors, one per divisor.
    pub fn candidate_ratios(&self) -> Vec<(u64, u64)> {
        self.vertices.iter().map(|v| (v.nu, v.n)).collect()
    }
}

/// Runs the blow-up simulation. The branch must be singular.
pub fn embedded_resolution(b: &BranchData) -> LocalResolution {
    assert!(!b.is_smooth(), "embedded_resolution: branch must be singular");
    let trace = b.multiplicity_trace();

    struct Div {
        self_int: i64,
        n: u64,
        a: u64, // nu - 1
        cap: u64,
    }

    let mut divisors: Vec<Div> = Vec::new();
    let mut edges: Vec<(usize, usize)> = Vec::new();
    let mut hosts: Vec<usize> = Vec::new();

    for &m in &trace {
        let n_new = m + hosts.iter().map(|&h| divisors[h].n).sum::<u64>();
        let a_new = 1 + hosts.iter().map(|&h| divisors[h].a).sum::<u64>();
        for &h in &hosts {
            divisors[h].self_int -= 1;
            assert!(divisors[h].cap >= m, "proximity capacity exceeded");
            divisors[h].cap -= m;
        }
        if let [a, b] = hosts[..] {
            let pos = edges
                .iter()
                .position(|&(x, y)| (x, y) == (a, b) || (x, y) == (b, a))
                .expect("corner blow-up separates an existing edge");
            edges.remove(pos);
        }
        let k = divisors.len();
        for &h in &hosts {
            edges.push((k, h));
        }
        divisors.push(Div {
            self_int: -1,
            n: n_new,
            a: a_new,
            cap: m,
        });
        let mut next: Vec<usize> = vec![k];
        next.extend(hosts.iter().copied().filter(|&h| divisors[h].cap > 0));
        assert!(
            next.len() <= 2,
            "branch resolution: a point can lie on at most two divisors"
        );
        hosts = next;
    }

    // Normal crossings: every divisor saturated except the last one, which
    // keeps the strict transform.
    let last = divisors.len() - 1;
    for (i, d) in divisors.iter().enumerate() {
        debug_assert!(i == last || d.cap == 0, "unsaturated interior divisor {}", i);
    }

    LocalResolution {
        vertices: divisors
            .into_iter()
            .map(|d| ResolutionVertex {
                self_int: d.self_int,
                n: d.n,
                nu: d.a + 1,
            })
            .collect(),
        edges,
        arrow: last,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn vertex(r: &LocalResolution, i: usize) -> (u64, u64, i64) {
        let v = &r.vertices[i];
        (v.n, v.nu, v.self_int)
    }

    #[test]
    fn ordinary_cusp() {
        // three blow-ups: chain E1(2,2) - E3(6,5) - E2(3,3), arrow on E3,
        // self-intersections (-3, -2, -1)
        let r = embedded_resolution(&BranchData::cusp(2, 3));
        assert_eq!(r.vertices.len(), 3);
        assert_eq!(vertex(&r, 0), (2, 2, -3));
        assert_eq!(vertex(&r, 1), (3, 3, -2));
        assert_eq!(vertex(&r, 2), (6, 5, -1));
        assert_eq!(r.arrow, 2);
        let mut edges = r.edges.clone();
        edges.sort_unstable();
        assert_eq!(edges, vec![(2, 0), (2, 1)]);
    }

    #[test]
    fn a12_cusp_matches_quintic_graph() {
        // 8 exceptional vertices; rupture vertex (N, nu) = (26, 15);
        // shape: chain of five -2s, a -3, then the -1 with a -2 branch
        let r = embedded_resolution(&BranchData::cusp(2, 13));
        assert_eq!(r.vertices.len(), 8);
        assert_eq!(vertex(&r, 7), (26, 15, -1));
        assert_eq!(r.arrow, 7);
        let self_ints: Vec<i64> = r.vertices.iter().map(|v| v.self_int).collect();
        assert_eq!(self_ints, vec![-2, -2, -2, -2, -2, -3, -2, -1]);
        let mut edges = r.edges.clone();
        edges.sort_unstable();
        assert_eq!(
            edges,
            vec![(1, 0), (2, 1), (3, 2), (4, 3), (5, 4), (7, 5), (7, 6)]
        );
    }

    #[test]
    fn rupture_data_is_pq_p_plus_q() {
        for (p, q) in [(2u64, 5u64), (3, 4), (3, 5), (4, 7), (5, 6)] {
            let r = embedded_resolution(&BranchData::cusp(p, q));
            let arrow = &r.vertices[r.arrow];
            assert_eq!((arrow.n, arrow.nu), (p * q, p + q), "cusp ({};{})", p, q);
        }
    }

    #[test]
    fn multi_pair_branch() {
        let b = BranchData::new(&[4, 6, 7]).unwrap();
        let r = embedded_resolution(&b);
        // last rupture carries N = 2 * 13 (second semigroup generator
        // times the final gcd step)
        let arrow = &r.vertices[r.arrow];
        assert_eq!((arrow.n, arrow.nu), (26, 11));
        // the tree has one vertex of valency 3 per characteristic pair
        let ruptures = (0..r.vertices.len())
            .filter(|&v| r.valency_with_arrow(v) >= 3)
            .count();
        assert_eq!(ruptures, 2);
    }

    #[test]
    fn tree_shape() {
        for b in [
            BranchData::cusp(2, 7),
            BranchData::cusp(5, 7),
            BranchData::new(&[4, 6, 7]).unwrap(),
            BranchData::new(&[6, 9, 10]).unwrap(),
        ] {
            let r = embedded_resolution(&b);
            assert_eq!(r.edges.len(), r.vertices.len() - 1, "tree on {}", b);
            assert!(r.vertices.iter().all(|v| v.n >= 1 && v.nu >= 1));
        }
    }
}
