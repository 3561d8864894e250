//! Resolution graphs of the surface singularity and their link invariants.
//!
//! The minimal resolution has one vertex per irreducible component of the
//! tangent cone, with self-intersection -d_i(d - d_i + 1) and the
//! geometric genus of the component. The minimal good graph attaches the
//! embedded resolution tree of every singular point at its arrow; each
//! blow-up at a point of multiplicity n on the curve drops the strict
//! transform's self-intersection by n^2. Ordinary double points whose
//! branches belong to different global components stay as plain edges and
//! are not blown up.
//!
//! Intersection matrices are negative definite; the check (leading
//! principal minors alternate in sign) runs on every emitted graph. The
//! canonical cycle solves the adjunction system Z_K . E_i = E_i^2 + 2 -
//! 2 g_i against the intersection matrix; Z_K^2 + s is independent of both
//! the sign convention (the square kills it) and the plumbing
//! representative (blow-up invariance).

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::algebra::rat::{rat, Rat};
use crate::curve::{CurveSpec, PointKind};
use crate::error::{Error, Result};
use crate::resolution::embedded_resolution;

/// Vertex of a plumbing graph: genus and self-intersection.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PlumbingVertex {
    pub genus: u64,
    pub self_int: i64,
}

/// Decorated dual graph of a resolution. Multi-edges are allowed.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct PlumbingGraph {
    pub vertices: Vec<PlumbingVertex>,
    pub edges: Vec<(usize, usize)>,
}

impl PlumbingGraph {
    pub fn intersection_matrix(&self) -> Vec<Vec<i64>> {
        let n = self.vertices.len();
        let mut m = vec![vec![0i64; n]; n];
        for (i, v) in self.vertices.iter().enumerate() {
            m[i][i] = v.self_int;
        }
        for &(a, b) in &self.edges {
            m[a][b] += 1;
            m[b][a] += 1;
        }
        m
    }

    pub fn is_connected(&self) -> bool {
        let n = self.vertices.len();
        if n == 0 {
            return false;
        }
        let mut seen = vec![false; n];
        let mut stack = vec![0usize];
        seen[0] = true;
        while let Some(v) = stack.pop() {
            for &(a, b) in &self.edges {
                let next = if a == v {
                    b
                } else if b == v {
                    a
                } else {
                    continue;
                };
                if !seen[next] {
                    seen[next] = true;
                    stack.push(next);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    pub fn is_tree(&self) -> bool {
        self.is_connected() && self.edges.len() + 1 == self.vertices.len()
    }

    /// Leading principal minors of the intersection matrix, by exact
    /// fraction-free elimination. Fails as soon as a minor vanishes.
    fn leading_minors(&self) -> Result<Vec<BigInt>> {
        let n = self.vertices.len();
        let mut m: Vec<Vec<BigInt>> = self
            .intersection_matrix()
            .into_iter()
            .map(|row| row.into_iter().map(BigInt::from).collect())
            .collect();
        let mut minors = Vec::with_capacity(n);
        let mut prev = BigInt::one();
        for k in 0..n {
            if m[k][k].is_zero() {
                return Err(Error::NotNegativeDefinite(k + 1));
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                    m[i][j] = num / &prev;
                }
            }
            minors.push(m[k][k].clone());
            prev = m[k][k].clone();
        }
        Ok(minors)
    }

    /// Negative definiteness: (-1)^k * minor_k > 0 for every k.
    pub fn check_negative_definite(&self) -> Result<()> {
        let minors = self.leading_minors()?;
        for (k, minor) in minors.iter().enumerate() {
            let ok = if k % 2 == 0 {
                minor.is_negative()
            } else {
                minor.is_positive()
            };
            if !ok {
                return Err(Error::NotNegativeDefinite(k + 1));
            }
        }
        Ok(())
    }

    /// |det| of the intersection matrix.
    pub fn det_abs(&self) -> Result<BigInt> {
        let minors = self.leading_minors()?;
        Ok(minors.last().expect("nonempty graph").abs())
    }

    /// Blow up an edge: a new (-1)-vertex in the middle, both endpoints
    /// dropped by 1. Leaves the link (and Z_K^2 + s) unchanged.
    pub fn blow_up_edge(&self, edge_index: usize) -> PlumbingGraph {
        let (a, b) = self.edges[edge_index];
        let mut out = self.clone();
        out.edges.remove(edge_index);
        out.vertices[a].self_int -= 1;
        out.vertices[b].self_int -= 1;
        let e = out.vertices.len();
        out.vertices.push(PlumbingVertex {
            genus: 0,
            self_int: -1,
        });
        out.edges.push((a, e));
        out.edges.push((e, b));
        out
    }
}

/// A rational cycle supported on the exceptional divisors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cycle {
    pub coefficients: Vec<Rat>,
}

/// Tree/QHS tests, matrix determinant and vertex count of a graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinkInvariants {
    pub is_tree: bool,
    pub is_qhs: bool,
    pub det: BigInt,
    pub s: usize,
}

/// Link invariants of a negative-definite plumbing graph.
pub fn link_invariants(g: &PlumbingGraph) -> Result<LinkInvariants> {
    g.check_negative_definite()?;
    let is_tree = g.is_tree();
    Ok(LinkInvariants {
        is_tree,
        is_qhs: is_tree && g.vertices.iter().all(|v| v.genus == 0),
        det: g.det_abs()?,
        s: g.vertices.len(),
    })
}

/// Canonical cycle and the invariant Z_K^2 + s.
#[derive(Clone, Debug)]
pub struct CanonicalCycle {
    pub z_k: Cycle,
    pub zk2_plus_s: Rat,
}

/// Solves the adjunction system I z = b with b_i = E_i^2 + 2 - 2 g_i.
/// Then Z_K^2 = z . b and the reported invariant is Z_K^2 + s.
pub fn canonical_cycle(g: &PlumbingGraph) -> Result<CanonicalCycle> {
    g.check_negative_definite()?;
    let n = g.vertices.len();
    let m = g.intersection_matrix();
    let b: Vec<Rat> = g
        .vertices
        .iter()
        .map(|v| rat(v.self_int + 2 - 2 * v.genus as i64))
        .collect();
    let z = solve_rational(&m, &b)?;
    let zk2: Rat = z.iter().zip(&b).map(|(zi, bi)| zi * bi).sum();
    Ok(CanonicalCycle {
        z_k: Cycle { coefficients: z },
        zk2_plus_s: zk2 + rat(n as i64),
    })
}

fn solve_rational(m: &[Vec<i64>], b: &[Rat]) -> Result<Vec<Rat>> {
    let n = b.len();
    let mut a: Vec<Vec<Rat>> = (0..n)
        .map(|i| {
            let mut row: Vec<Rat> = m[i].iter().map(|&v| rat(v)).collect();
            row.push(b[i].clone());
            row
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n)
            .find(|&r| !a[r][col].is_zero())
            .ok_or(Error::SingularMatrix)?;
        a.swap(col, pivot);
        let p = a[col][col].clone();
        for j in col..=n {
            a[col][j] = &a[col][j] / &p;
        }
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let f = a[r][col].clone();
                for j in col..=n {
                    let v = &a[r][j] - &f * &a[col][j];
                    a[r][j] = v;
                }
            }
        }
    }
    Ok((0..n).map(|i| a[i][n].clone()).collect())
}

/// p_g = d(d-1)(d-2)/6 for a rational cuspidal tangent cone.
pub fn pg_rational_cuspidal(d: u64) -> u64 {
    if d < 3 {
        return 0;
    }
    d * (d - 1) * (d - 2) / 6
}

/// The minimal-resolution graph: one vertex per component, plus markers
/// for the singular points that still need to be resolved to reach normal
/// crossings (everything except ordinary double points between distinct
/// components).
#[derive(Clone, Debug)]
pub struct MinimalGraph {
    pub graph: PlumbingGraph,
    /// Indices of singular points not yet in normal crossing position.
    pub markers: Vec<usize>,
}

/// One vertex per component with self-intersection -d_i(d - d_i + 1) and
/// the component's genus; ordinary double points between distinct
/// components become edges, every other singular point is recorded as a
/// marker. The intermediate object may violate normal crossings.
pub fn minimal_graph(c: &CurveSpec) -> Result<MinimalGraph> {
    c.ensure_valid()?;
    let d = c.degree as i64;
    let genera = c.component_genera();
    let vertices: Vec<PlumbingVertex> = c
        .components
        .iter()
        .zip(&genera)
        .map(|(&di, &g)| PlumbingVertex {
            genus: g as u64,
            self_int: -(di as i64) * (d - di as i64 + 1),
        })
        .collect();
    let mut graph = PlumbingGraph {
        vertices,
        edges: Vec::new(),
    };
    let mut markers = Vec::new();
    let data = c.point_data()?;
    for (pi, (p, pd)) in c.points.iter().zip(&data).enumerate() {
        match pd.kind {
            PointKind::OrdinaryNode {
                inter_component: true,
            } => {
                graph.edges.push((p.owners[0], p.owners[1]));
            }
            _ => markers.push(pi),
        }
    }
    Ok(MinimalGraph { graph, markers })
}

/// The minimal good resolution graph: the minimal graph with every marked
/// point replaced by its embedded resolution tree, attached at the arrow.
/// Only native irreducible germs (and inter-component nodes, which need
/// no work) are supported.
pub fn good_graph(c: &CurveSpec) -> Result<PlumbingGraph> {
    let minimal = minimal_graph(c)?;
    let mut graph = minimal.graph;
    let data = c.point_data()?;
    for &pi in &minimal.markers {
        let p = &c.points[pi];
        if data[pi].kind != PointKind::Cusp {
            return Err(Error::UnsupportedLocalData {
                point: pi,
                reason: "good resolution supports native irreducible germs and \
                         ordinary double points between distinct components"
                    .to_string(),
            });
        }
        let owner = p.owners[0];
        let branch = match &p.germs[0] {
            crate::curve::LocalGerm::Native(b) => b,
            _ => unreachable!("cusp points hold a native branch"),
        };
        let local = embedded_resolution(branch);
        let drop: i64 = branch
            .multiplicity_trace()
            .iter()
            .map(|&m| (m * m) as i64)
            .sum();
        graph.vertices[owner].self_int -= drop;
        let offset = graph.vertices.len();
        for v in &local.vertices {
            graph.vertices.push(PlumbingVertex {
                genus: 0,
                self_int: v.self_int,
            });
        }
        for &(a, b) in &local.edges {
            graph.edges.push((offset + a, offset + b));
        }
        graph.edges.push((offset + local.arrow, owner));
    }
    graph.check_negative_definite()?;
    Ok(graph)
}

/// Output format for graph serialization.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GraphFormat {
    Dot,
    Json,
}

impl std::str::FromStr for GraphFormat {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "dot" => Ok(GraphFormat::Dot),
            "json" => Ok(GraphFormat::Json),
            other => Err(Error::UnknownFormat(other.to_string())),
        }
    }
}

/// Deterministic serialization; vertex order is the construction order
/// (components first, then each point's resolution tree in blow-up
/// order), which is canonical for a given curve model.
pub fn export_graph(g: &PlumbingGraph, format: GraphFormat) -> String {
    match format {
        GraphFormat::Dot => {
            let mut out = String::from("graph plumbing {\n");
            for (i, v) in g.vertices.iter().enumerate() {
                out.push_str(&format!(
                    "  v{} [label=\"{},{}\"];\n",
                    i, v.genus, v.self_int
                ));
            }
            let mut edges = g.edges.clone();
            edges.iter_mut().for_each(|e| {
                if e.0 > e.1 {
                    *e = (e.1, e.0);
                }
            });
            edges.sort_unstable();
            for (a, b) in edges {
                out.push_str(&format!("  v{} -- v{};\n", a, b));
            }
            out.push_str("}\n");
            out
        }
        GraphFormat::Json => {
            let mut edges = g.edges.clone();
            edges.iter_mut().for_each(|e| {
                if e.0 > e.1 {
                    *e = (e.1, e.0);
                }
            });
            edges.sort_unstable();
            let value = serde_json::json!({
                "vertices": g
                    .vertices
                    .iter()
                    .map(|v| serde_json::json!({"genus": v.genus, "self_int": v.self_int}))
                    .collect::<Vec<_>>(),
                "edges": edges.iter().map(|&(a, b)| vec![a, b]).collect::<Vec<_>>(),
            });
            serde_json::to_string_pretty(&value).expect("serialization cannot fail")
        }
    }
}

/// Reads back the JSON emitted by `export_graph`.
pub fn graph_from_json(text: &str) -> Result<PlumbingGraph> {
    let value: serde_json::Value = serde_json::from_str(text)
        .map_err(|e| Error::UnknownFormat(format!("invalid graph JSON: {}", e)))?;
    let bad = || Error::UnknownFormat("invalid graph JSON shape".to_string());
    let vertices = value["vertices"]
        .as_array()
        .ok_or_else(bad)?
        .iter()
        .map(|v| {
            Ok(PlumbingVertex {
                genus: v["genus"].as_u64().ok_or_else(bad)?,
                self_int: v["self_int"].as_i64().ok_or_else(bad)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let edges = value["edges"]
        .as_array()
        .ok_or_else(bad)?
        .iter()
        .map(|e| {
            let pair = e.as_array().ok_or_else(bad)?;
            let a = pair.first().and_then(|x| x.as_u64()).ok_or_else(bad)? as usize;
            let b = pair.get(1).and_then(|x| x.as_u64()).ok_or_else(bad)? as usize;
            Ok((a, b))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(PlumbingGraph { vertices, edges })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::branch::BranchData;
    use crate::curve::tests::{quintic_a12, tricuspidal_quartic};
    use crate::curve::SingularPoint;

    #[test]
    fn minimal_graphs() {
        let m = minimal_graph(&quintic_a12()).unwrap();
        assert_eq!(m.graph.vertices.len(), 1);
        assert_eq!(m.graph.vertices[0].self_int, -5);
        assert_eq!(m.graph.vertices[0].genus, 0);
        assert_eq!(m.markers, vec![0]);

        let m = minimal_graph(&CurveSpec::new(2, vec![2])).unwrap();
        assert_eq!(m.graph.vertices[0].self_int, -2);

        let mut two_lines = CurveSpec::new(2, vec![1, 1]);
        two_lines.add_point(SingularPoint::node(0, 1));
        let m = minimal_graph(&two_lines).unwrap();
        assert_eq!(m.graph.vertices.len(), 2);
        assert!(m.graph.vertices.iter().all(|v| v.self_int == -2));
        assert_eq!(m.graph.edges, vec![(0, 1)]);
        assert!(m.markers.is_empty());
    }

    #[test]
    fn quintic_good_graph_matches_known_shape() {
        // component -31, five -2s, a -3, the -1 with a -2 branch
        let g = good_graph(&quintic_a12()).unwrap();
        assert_eq!(g.vertices.len(), 9);
        assert_eq!(g.vertices[0].self_int, -31);
        let self_ints: Vec<i64> = g.vertices.iter().map(|v| v.self_int).collect();
        assert_eq!(self_ints, vec![-31, -2, -2, -2, -2, -2, -3, -2, -1]);
        assert!(g.vertices.iter().all(|v| v.genus == 0));
        assert!(g.is_tree());
        // arrow vertex (-1) carries the component and the -2 branch
        let deg8 = g.edges.iter().filter(|&&(a, b)| a == 8 || b == 8).count();
        assert_eq!(deg8, 3);
        assert!(g.edges.contains(&(8, 0)));
    }

    #[test]
    fn determinants_equal_degree() {
        for (c, d) in [
            (quintic_a12(), 5u64),
            (tricuspidal_quartic(), 4),
            (CurveSpec::with_cusps(3, &[BranchData::cusp(2, 3)]), 3),
            (CurveSpec::new(2, vec![2]), 2),
        ] {
            let g = good_graph(&c).unwrap();
            let inv = link_invariants(&g).unwrap();
            assert_eq!(inv.det, BigInt::from(d));
            assert!(inv.is_qhs);
        }
    }

    #[test]
    fn two_lines_not_blown_up() {
        let mut two_lines = CurveSpec::new(2, vec![1, 1]);
        two_lines.add_point(SingularPoint::node(0, 1));
        let g = good_graph(&two_lines).unwrap();
        assert_eq!(g.vertices.len(), 2);
        assert_eq!(g.edges.len(), 1);
        let inv = link_invariants(&g).unwrap();
        assert_eq!(inv.det, BigInt::from(3));
        assert!(inv.is_qhs);
    }

    #[test]
    fn genus_one_vertex_breaks_qhs() {
        let g = good_graph(&CurveSpec::new(3, vec![3])).unwrap();
        // smooth cubic: single vertex of genus 1
        assert_eq!(g.vertices[0].genus, 1);
        let inv = link_invariants(&g).unwrap();
        assert!(!inv.is_qhs);
        assert!(inv.is_tree);
    }

    #[test]
    fn canonical_cycle_anchors() {
        // closed form -(d-1)(d^2-3d+1) for rational cuspidal inputs
        for (c, want) in [
            (quintic_a12(), -44i64),
            (tricuspidal_quartic(), -15),
            (CurveSpec::with_cusps(3, &[BranchData::cusp(2, 3)]), -2),
            (CurveSpec::new(2, vec![2]), 1),
        ] {
            let g = good_graph(&c).unwrap();
            let cc = canonical_cycle(&g).unwrap();
            assert_eq!(cc.zk2_plus_s, rat(want), "degree {}", c.degree);
            let d = c.degree as i64;
            assert_eq!(rat(-(d - 1) * (d * d - 3 * d + 1)), rat(want));
        }
    }

    #[test]
    fn blow_up_invariance() {
        let g = good_graph(&quintic_a12()).unwrap();
        let base = canonical_cycle(&g).unwrap().zk2_plus_s;
        for e in 0..g.edges.len() {
            let blown = g.blow_up_edge(e);
            blown.check_negative_definite().unwrap();
            let v = canonical_cycle(&blown).unwrap().zk2_plus_s;
            assert_eq!(v, base, "edge {}", e);
        }
    }

    #[test]
    fn pg_values() {
        assert_eq!(pg_rational_cuspidal(5), 10);
        assert_eq!(pg_rational_cuspidal(3), 1);
        assert_eq!(pg_rational_cuspidal(1), 0);
        assert_eq!(pg_rational_cuspidal(2), 0);
    }

    #[test]
    fn export_round_trip() {
        let g = good_graph(&quintic_a12()).unwrap();
        let json = export_graph(&g, GraphFormat::Json);
        let back = graph_from_json(&json).unwrap();
        assert_eq!(back, {
            let mut sorted = g.clone();
            sorted.edges.iter_mut().for_each(|e| {
                if e.0 > e.1 {
                    *e = (e.1, e.0);
                }
            });
            sorted.edges.sort_unstable();
            sorted
        });
        let dot = export_graph(&g, GraphFormat::Dot);
        assert!(dot.starts_with("graph plumbing {"));
        assert!(dot.contains("v0 [label=\"0,-31\"];"));
        // deterministic
        assert_eq!(dot, export_graph(&g, GraphFormat::Dot));
        assert!(matches!(
            "xml".parse::<GraphFormat>(),
            Err(Error::UnknownFormat(_))
        ));
    }
}
