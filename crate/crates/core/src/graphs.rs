//! Intersection graphs of orthogonal arrangements and the structural checks
//! run on them.

use std::collections::BTreeSet;
use std::f64::consts::{FRAC_1_SQRT_2, SQRT_2};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::arrangement::Arrangement;
use crate::geom::{Circle, Point, Tolerance};

/// Simple undirected graph on `0..n`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IntersectionGraph {
    adjacency: Vec<BTreeSet<usize>>,
}

impl IntersectionGraph {
    pub fn new(n: usize) -> Self {
        IntersectionGraph {
            adjacency: vec![BTreeSet::new(); n],
        }
    }

    /// Builds a graph from an edge list, ignoring loops and repeated edges.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Self {
        let mut g = Self::new(n);
        for &(a, b) in edges {
            g.add_edge(a, b);
        }
        g
    }

    pub fn add_edge(&mut self, a: usize, b: usize) {
        assert!(a < self.n() && b < self.n(), "edge ({a},{b}) out of range");
        if a != b {
            self.adjacency[a].insert(b);
            self.adjacency[b].insert(a);
        }
    }

    pub fn n(&self) -> usize {
        self.adjacency.len()
    }

    pub fn adjacent(&self, a: usize, b: usize) -> bool {
        self.adjacency[a].contains(&b)
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.adjacency[v].iter().copied()
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adjacency[v].len()
    }

    pub fn edge_count(&self) -> usize {
        self.adjacency.iter().map(BTreeSet::len).sum::<usize>() / 2
    }

    /// Edges `(a, b)` with `a < b` in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adjacency
            .iter()
            .enumerate()
            .flat_map(|(a, nb)| nb.range(a + 1..).map(move |&b| (a, b)))
    }

    fn common_neighbors(&self, a: usize, b: usize) -> Vec<usize> {
        self.adjacency[a].intersection(&self.adjacency[b]).copied().collect()
    }
}

pub fn intersection_graph(arr: &Arrangement) -> IntersectionGraph {
    IntersectionGraph::from_edges(arr.len(), arr.orthogonal_pairs())
}

/// A 4-clique, if any.
pub fn has_k4(g: &IntersectionGraph) -> Option<[usize; 4]> {
    for (a, b) in g.edges() {
        let common = g.common_neighbors(a, b);
        for (i, &c) in common.iter().enumerate() {
            if let Some(&d) = common[i + 1..].iter().find(|&&d| g.adjacent(c, d)) {
                return Some([a, b, c, d]);
            }
        }
    }
    None
}

/// A chordless 4-cycle `[a, c, b, d]`, if any.
///
/// Every induced C4 has two non-adjacent opposite corners sharing two
/// non-adjacent common neighbours, so only common neighbourhoods are scanned.
pub fn has_induced_c4(g: &IntersectionGraph) -> Option<[usize; 4]> {
    for a in 0..g.n() {
        let mut seen = BTreeSet::new();
        for c in g.neighbors(a) {
            seen.extend(g.neighbors(c).filter(|&b| b > a));
        }
        for b in seen {
            if g.adjacent(a, b) {
                continue;
            }
            let common = g.common_neighbors(a, b);
            for (i, &c) in common.iter().enumerate() {
                if let Some(&d) = common[i + 1..].iter().find(|&&d| !g.adjacent(c, d)) {
                    return Some([a, c, b, d]);
                }
            }
        }
    }
    None
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct DegreeStats {
    pub min_degree: usize,
    pub max_degree: usize,
    pub edges: usize,
}

pub fn degree_stats(g: &IntersectionGraph) -> DegreeStats {
    let degrees = (0..g.n()).map(|v| g.degree(v));
    DegreeStats {
        min_degree: degrees.clone().min().unwrap_or(0),
        max_degree: degrees.max().unwrap_or(0),
        edges: g.edge_count(),
    }
}

/// Branch-set assignment certifying a complete minor. `None` leaves a vertex
/// out of every branch set.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MinorWitness {
    pub partition: Vec<Option<usize>>,
    pub target: usize,
}

impl MinorWitness {
    pub fn branch_sets(&self) -> Vec<Vec<usize>> {
        let mut sets = vec![Vec::new(); self.target];
        for (v, b) in self.partition.iter().enumerate() {
            if let Some(b) = *b {
                if b < self.target {
                    sets[b].push(v);
                }
            }
        }
        sets
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MinorError {
    #[error("witness covers {got} vertices but the graph has {n}")]
    SizeMismatch { got: usize, n: usize },
    #[error("vertex {vertex} assigned to branch set {set}, but the target is {target}")]
    BranchOutOfRange { vertex: usize, set: usize, target: usize },
}

/// Whether contracting every branch set of `w` yields `K_target`.
pub fn verify_minor(g: &IntersectionGraph, w: &MinorWitness) -> Result<bool, MinorError> {
    if w.partition.len() != g.n() {
        return Err(MinorError::SizeMismatch {
            got: w.partition.len(),
            n: g.n(),
        });
    }
    for (vertex, b) in w.partition.iter().enumerate() {
        if let Some(set) = *b {
            if set >= w.target {
                return Err(MinorError::BranchOutOfRange {
                    vertex,
                    set,
                    target: w.target,
                });
            }
        }
    }
    let sets = w.branch_sets();
    if sets.iter().any(Vec::is_empty) {
        return Ok(false);
    }
    for (id, set) in sets.iter().enumerate() {
        let mut reached = vec![set[0]];
        let mut stack = vec![set[0]];
        while let Some(v) = stack.pop() {
            for u in g.neighbors(v) {
                if w.partition[u] == Some(id) && !reached.contains(&u) {
                    reached.push(u);
                    stack.push(u);
                }
            }
        }
        if reached.len() != set.len() {
            return Ok(false);
        }
    }
    let mut joined = vec![vec![false; w.target]; w.target];
    for (a, b) in g.edges() {
        if let (Some(x), Some(y)) = (w.partition[a], w.partition[b]) {
            joined[x][y] = true;
            joined[y][x] = true;
        }
    }
    Ok((0..w.target).all(|x| (x + 1..w.target).all(|y| joined[x][y])))
}

#[derive(Debug, Clone, Copy, PartialEq, Error)]
pub enum PennyError {
    #[error("circle {index} has radius {radius}, expected the common radius {expected}")]
    NonUniformRadius { index: usize, radius: f64, expected: f64 },
}

/// Penny packing obtained by shrinking every circle by `√2/2`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PennyPacking {
    pub pennies: Vec<Circle>,
    /// Largest `|d - 2r|` over originally orthogonal pairs.
    pub max_tangency_error: f64,
    /// Smallest `d - 2r` over the other pairs (infinite when there are none).
    pub min_clearance: f64,
}

impl PennyPacking {
    pub fn is_valid(&self, eps: f64) -> bool {
        self.max_tangency_error <= eps && self.min_clearance > eps
    }
}

pub fn to_penny(arr: &Arrangement) -> Result<PennyPacking, PennyError> {
    let circles = arr.circles();
    let r = circles[0].radius;
    let eps = arr.tolerance().eps_pred;
    for (index, c) in circles.iter().enumerate() {
        if (c.radius - r).abs() > eps * r {
            return Err(PennyError::NonUniformRadius {
                index,
                radius: c.radius,
                expected: r,
            });
        }
    }
    let pennies: Vec<Circle> = circles
        .iter()
        .map(|c| Circle {
            center: c.center,
            radius: c.radius * FRAC_1_SQRT_2,
        })
        .collect();
    let g = intersection_graph(arr);
    let mut max_tangency_error: f64 = 0.0;
    let mut min_clearance = f64::INFINITY;
    for i in 0..pennies.len() {
        for j in i + 1..pennies.len() {
            let gap = pennies[i].center.dist(pennies[j].center) - pennies[i].radius - pennies[j].radius;
            if g.adjacent(i, j) {
                max_tangency_error = max_tangency_error.max(gap.abs());
            } else {
                min_clearance = min_clearance.min(gap);
            }
        }
    }
    Ok(PennyPacking {
        pennies,
        max_tangency_error,
        min_clearance,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub enum RepresentationFault {
    /// An edge whose centers are not at distance `√2·r`.
    EdgeUnrealized { a: usize, b: usize, distance: f64 },
    /// A non-edge whose circles meet.
    NonEdgeIntersects { a: usize, b: usize, distance: f64 },
}

#[derive(Debug, Clone, PartialEq, Default, Serialize)]
pub struct RepresentationReport {
    pub faults: Vec<RepresentationFault>,
}

impl RepresentationReport {
    pub fn is_valid(&self) -> bool {
        self.faults.is_empty()
    }
}

/// Checks that circles of radius `r` at `centers` realize exactly the edges
/// of `g` as orthogonal crossings.
pub fn verify_unit_representation(
    g: &IntersectionGraph,
    centers: &[Point],
    r: f64,
    tol: &Tolerance,
) -> RepresentationReport {
    assert_eq!(centers.len(), g.n(), "one center per vertex");
    let target = SQRT_2 * r;
    let mut report = RepresentationReport::default();
    for a in 0..g.n() {
        for b in a + 1..g.n() {
            let distance = centers[a].dist(centers[b]);
            if g.adjacent(a, b) {
                if (distance - target).abs() > tol.eps_pred * target {
                    report
                        .faults
                        .push(RepresentationFault::EdgeUnrealized { a, b, distance });
                }
            } else if distance <= 2.0 * r * (1.0 + tol.eps_pred) {
                report
                    .faults
                    .push(RepresentationFault::NonEdgeIntersects { a, b, distance });
            }
        }
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arrangement::validate;

    fn k(n: usize) -> IntersectionGraph {
        let mut g = IntersectionGraph::new(n);
        for a in 0..n {
            for b in a + 1..n {
                g.add_edge(a, b);
            }
        }
        g
    }

    fn cycle(n: usize) -> IntersectionGraph {
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        IntersectionGraph::from_edges(n, &edges)
    }

    #[test]
    fn k4_detection() {
        assert_eq!(has_k4(&k(3)), None);
        let w = has_k4(&k(4)).unwrap();
        let mut sorted = w;
        sorted.sort_unstable();
        assert_eq!(sorted, [0, 1, 2, 3]);
        assert_eq!(has_k4(&cycle(5)), None);
    }

    #[test]
    fn induced_c4_detection() {
        let w = has_induced_c4(&cycle(4)).unwrap();
        let g = cycle(4);
        assert!(g.adjacent(w[0], w[1]) && g.adjacent(w[1], w[2]) && g.adjacent(w[2], w[3]) && g.adjacent(w[3], w[0]));
        assert_eq!(has_induced_c4(&k(4)), None);
        assert_eq!(has_induced_c4(&cycle(5)), None);
        // C4 plus one chord
        assert_eq!(
            has_induced_c4(&IntersectionGraph::from_edges(
                4,
                &[(0, 1), (1, 2), (2, 3), (3, 0), (0, 2)]
            )),
            None
        );
        // C6 with a long chord leaves two induced C4s
        let g = IntersectionGraph::from_edges(6, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 0), (0, 3)]);
        assert!(has_induced_c4(&g).is_some());
    }

    #[test]
    fn degree_statistics() {
        let s = degree_stats(&IntersectionGraph::from_edges(4, &[(0, 1), (0, 2), (0, 3)]));
        assert_eq!(
            s,
            DegreeStats {
                min_degree: 1,
                max_degree: 3,
                edges: 3
            }
        );
        assert_eq!(degree_stats(&IntersectionGraph::new(0)).edges, 0);
    }

    #[test]
    fn minor_examples() {
        let singletons = MinorWitness {
            partition: vec![Some(0), Some(1), Some(2)],
            target: 3,
        };
        assert_eq!(verify_minor(&k(3), &singletons), Ok(true));
        let path = IntersectionGraph::from_edges(4, &[(0, 1), (1, 2), (2, 3)]);
        let halves = MinorWitness {
            partition: vec![Some(0), Some(0), Some(1), Some(1)],
            target: 2,
        };
        assert_eq!(verify_minor(&path, &halves), Ok(true));
        let split = MinorWitness {
            partition: vec![Some(0), Some(1), Some(1), Some(0)],
            target: 2,
        };
        assert_eq!(verify_minor(&path, &split), Ok(false));
        let bad = MinorWitness {
            partition: vec![Some(0), Some(5), None, None],
            target: 2,
        };
        assert!(matches!(
            verify_minor(&path, &bad),
            Err(MinorError::BranchOutOfRange { .. })
        ));
        let short = MinorWitness {
            partition: vec![Some(0)],
            target: 1,
        };
        assert!(matches!(
            verify_minor(&path, &short),
            Err(MinorError::SizeMismatch { .. })
        ));
    }

    #[test]
    fn penny_of_orthogonal_pair() {
        let arr = validate(
            vec![Circle::at(0.0, 0.0, 1.0), Circle::at(SQRT_2, 0.0, 1.0)],
            Tolerance::default(),
        )
        .unwrap();
        let p = to_penny(&arr).unwrap();
        assert!((p.pennies[0].radius - FRAC_1_SQRT_2).abs() < 1e-15);
        assert!(p.max_tangency_error < 1e-12);
        assert!(p.is_valid(1e-9));
        let mixed = validate(
            vec![Circle::at(0.0, 0.0, 1.0), Circle::at(5.0, 0.0, 2.0)],
            Tolerance::default(),
        )
        .unwrap();
        assert!(matches!(
            to_penny(&mixed),
            Err(PennyError::NonUniformRadius { index: 1, .. })
        ));
    }

    #[test]
    fn unit_representation_examples() {
        let tol = Tolerance::default();
        let k2 = k(2);
        assert!(verify_unit_representation(&k2, &[Point::ORIGIN, Point::new(SQRT_2, 0.0)], 1.0, &tol).is_valid());
        let r = verify_unit_representation(&k2, &[Point::ORIGIN, Point::new(2.5, 0.0)], 1.0, &tol);
        assert!(matches!(
            r.faults[..],
            [RepresentationFault::EdgeUnrealized { a: 0, b: 1, .. }]
        ));
        // a unit square realizes the cycle edges but forces the diagonals to meet
        let s = SQRT_2;
        let square = [Point::ORIGIN, Point::new(s, 0.0), Point::new(s, s), Point::new(0.0, s)];
        let r = verify_unit_representation(&cycle(4), &square, 1.0, &tol);
        assert_eq!(r.faults.len(), 2);
        assert!(r
            .faults
            .iter()
            .all(|f| matches!(f, RepresentationFault::NonEdgeIntersects { .. })));
    }
}
