use std::collections::BTreeMap;
use std::f64::consts::{FRAC_PI_2, PI, TAU};

use serde::Serialize;

use super::planar::{Face, FaceId, Planarization};
use crate::geom::{classify_pair, limit_points, Circle, PairClass, Tolerance};

/// Bounded faces grouped by number of boundary arcs.
///
/// Vertexless disks sit in degree 1. Faces whose boundary has more than one
/// cycle are kept out of the degree buckets and only counted.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize)]
pub struct FaceHistogram {
    pub by_degree: BTreeMap<usize, usize>,
    pub with_holes: usize,
}

impl FaceHistogram {
    pub fn count(&self, degree: usize) -> usize {
        self.by_degree.get(&degree).copied().unwrap_or(0)
    }

    pub fn disks(&self) -> usize {
        self.count(1)
    }

    pub fn digons(&self) -> usize {
        self.count(2)
    }

    pub fn triangles(&self) -> usize {
        self.count(3)
    }

    pub fn quadrangles(&self) -> usize {
        self.count(4)
    }

    pub fn bounded(&self) -> usize {
        self.by_degree.values().sum::<usize>() + self.with_holes
    }
}

pub fn face_histogram(p: &Planarization) -> FaceHistogram {
    let mut h = FaceHistogram::default();
    for (_, face) in p.bounded_faces() {
        if face.is_simply_connected() {
            *h.by_degree.entry(face.degree()).or_default() += 1;
        } else {
            h.with_holes += 1;
        }
    }
    h
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EulerReport {
    pub vertices: usize,
    pub edges: usize,
    pub faces: usize,
    pub components: usize,
    /// `m - v + 1 + c`.
    pub expected_faces: i64,
    pub euler_holds: bool,
    /// `m = 2v`, i.e. every vertex has degree four.
    pub four_regular: bool,
    /// Every half-edge lies on exactly one face boundary.
    pub closed_traces: bool,
}

impl EulerReport {
    pub fn pass(&self) -> bool {
        self.euler_holds && self.four_regular && self.closed_traces
    }
}

pub fn euler_audit(p: &Planarization) -> EulerReport {
    let (v, m, c) = (p.vertices.len(), p.arcs.len(), p.components);
    let expected = m as i64 - v as i64 + 1 + c as i64;
    let mut uses = vec![0usize; p.half_edges.len()];
    for face in &p.faces {
        for arc in face.boundary() {
            if let Some(h) = arc.half_edge {
                uses[h] += 1;
            }
        }
    }
    EulerReport {
        vertices: v,
        edges: m,
        faces: p.faces.len(),
        components: c,
        expected_faces: expected,
        euler_holds: p.faces.len() as i64 == expected,
        four_regular: m == 2 * v,
        closed_traces: uses.iter().all(|&u| u == 1),
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GaussBonnetReport {
    pub faces_checked: usize,
    /// Largest `|Σθ + kπ/2 - 2π(1 - holes)|` over bounded faces.
    pub max_residual: f64,
    pub worst_face: Option<FaceId>,
    /// Largest deviation of a digon's total angle from π.
    pub digon_deviation: f64,
    /// Largest deviation of a triangle's total angle from π/2.
    pub triangle_deviation: f64,
    pub tolerance: f64,
}

impl GaussBonnetReport {
    pub fn pass(&self) -> bool {
        self.max_residual <= self.tolerance
            && self.digon_deviation <= self.tolerance
            && self.triangle_deviation <= self.tolerance
    }
}

pub fn face_residual(face: &Face) -> f64 {
    let turning: f64 = face.cycles().map(|c| c.total_turning()).sum();
    (turning - TAU * (1.0 - face.holes.len() as f64)).abs()
}

pub fn gauss_bonnet_audit(p: &Planarization, tol: &Tolerance) -> GaussBonnetReport {
    let mut report = GaussBonnetReport {
        faces_checked: 0,
        max_residual: 0.0,
        worst_face: None,
        digon_deviation: 0.0,
        triangle_deviation: 0.0,
        tolerance: tol.eps_audit,
    };
    for (id, face) in p.bounded_faces() {
        report.faces_checked += 1;
        let r = face_residual(face);
        if report.worst_face.is_none() || r > report.max_residual {
            report.max_residual = r;
            report.worst_face = Some(id);
        }
        if !face.is_simply_connected() {
            continue;
        }
        let total = face.outer.as_ref().map_or(0.0, |c| c.total_angle());
        match face.degree() {
            2 => report.digon_deviation = report.digon_deviation.max((total - PI).abs()),
            3 => report.triangle_deviation = report.triangle_deviation.max((total - FRAC_PI_2).abs()),
            _ => {}
        }
    }
    report
}

/// Per circle, the summed subtended angle of the simply connected bounded
/// faces of degree at most three that use its convex side. Never exceeds 2π.
pub fn convex_angle_budget(p: &Planarization) -> Vec<f64> {
    let mut budget = vec![0.0; p.circles.len()];
    for (_, face) in p.bounded_faces() {
        if !face.is_simply_connected() || face.degree() > 3 {
            continue;
        }
        for arc in face.boundary().filter(|a| a.convex) {
            budget[arc.circle] += arc.theta;
        }
    }
    budget
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ApollonianFailure {
    pub face: FaceId,
    pub circles: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize)]
pub struct ApollonianReport {
    pub triangles_checked: usize,
    pub quadrangles_checked: usize,
    pub failures: Vec<ApollonianFailure>,
}

impl ApollonianReport {
    pub fn pass(&self) -> bool {
        self.failures.is_empty()
    }
}

fn passes_through_limit_points(hub: &Circle, x: &Circle, y: &Circle, tol: &Tolerance) -> bool {
    match limit_points(x, y, tol) {
        Some(pts) => pts
            .iter()
            .all(|&l| (l.dist(hub.center) - hub.radius).abs() <= tol.eps_audit * hub.radius),
        None => false,
    }
}

/// `hub` is orthogonal to `x` and `y`; the pair must itself be orthogonal or
/// belong to the pencil whose limit points lie on `hub`.
fn hub_structure(hub: &Circle, x: &Circle, y: &Circle, tol: &Tolerance) -> bool {
    match classify_pair(x, y, tol) {
        PairClass::Orthogonal => true,
        PairClass::DisjointSeparate | PairClass::DisjointNested { .. } => passes_through_limit_points(hub, x, y, tol),
        _ => false,
    }
}

fn three_circle_rule(c: [&Circle; 3], tol: &Tolerance) -> bool {
    let ortho = |a: &Circle, b: &Circle| classify_pair(a, b, tol) == PairClass::Orthogonal;
    (0..3).any(|h| {
        let (x, y) = (c[(h + 1) % 3], c[(h + 2) % 3]);
        ortho(c[h], x) && ortho(c[h], y) && hub_structure(c[h], x, y, tol)
    })
}

fn four_circle_rule(c: [&Circle; 4], tol: &Tolerance) -> bool {
    let class = |a: usize, b: usize| classify_pair(c[a], c[b], tol);
    let cycle_orthogonal = (0..4).all(|i| class(i, (i + 1) % 4) == PairClass::Orthogonal);
    if !cycle_orthogonal {
        return false;
    }
    match (
        class(0, 2) == PairClass::Orthogonal,
        class(1, 3) == PairClass::Orthogonal,
    ) {
        (true, false) => {
            passes_through_limit_points(c[0], c[1], c[3], tol) && passes_through_limit_points(c[2], c[1], c[3], tol)
        }
        (false, true) => {
            passes_through_limit_points(c[1], c[0], c[2], tol) && passes_through_limit_points(c[3], c[0], c[2], tol)
        }
        _ => false,
    }
}

/// Checks that the circles around every triangular and quadrangular face
/// split into two mutually orthogonal pencils.
pub fn apollonian_check(p: &Planarization, tol: &Tolerance) -> ApollonianReport {
    let mut report = ApollonianReport::default();
    for (id, face) in p.bounded_faces() {
        let Some(outer) = face.outer.as_ref() else { continue };
        if !face.is_simply_connected() || !(3..=4).contains(&face.degree()) {
            continue;
        }
        let ring: Vec<usize> = outer.circles().collect();
        let mut distinct = ring.clone();
        distinct.sort_unstable();
        distinct.dedup();
        let circ = |i: usize| &p.circles[i];
        let ok = match (ring.len(), distinct.len()) {
            (4, 4) => four_circle_rule([circ(ring[0]), circ(ring[1]), circ(ring[2]), circ(ring[3])], tol),
            (_, 3) => three_circle_rule([circ(distinct[0]), circ(distinct[1]), circ(distinct[2])], tol),
            _ => false,
        };
        if ring.len() == 3 {
            report.triangles_checked += 1;
        } else {
            report.quadrangles_checked += 1;
        }
        if !ok {
            report.failures.push(ApollonianFailure {
                face: id,
                circles: ring,
            });
        }
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arrangement::{planarize, validate};
    use crate::geom::Circle;
    use std::f64::consts::SQRT_2;

    fn planar(circles: Vec<Circle>) -> Planarization {
        planarize(&validate(circles, Tolerance::default()).unwrap()).unwrap()
    }

    fn triple() -> Vec<Circle> {
        vec![
            Circle::at(0.0, 0.0, 1.0),
            Circle::at(SQRT_2, 0.0, 1.0),
            Circle::at(SQRT_2 / 2.0, SQRT_2 * 3f64.sqrt() / 2.0, 1.0),
        ]
    }

    #[test]
    fn histograms() {
        let pair = planar(vec![Circle::at(0.0, 0.0, 1.0), Circle::at(SQRT_2, 0.0, 1.0)]);
        assert_eq!(face_histogram(&pair).by_degree, BTreeMap::from([(2, 3)]));
        let one = planar(vec![Circle::at(0.0, 0.0, 1.0)]);
        assert_eq!(face_histogram(&one).by_degree, BTreeMap::from([(1, 1)]));
        let t = face_histogram(&planar(triple()));
        assert_eq!(t.bounded(), 7);
        assert_eq!((t.digons(), t.triangles()), (0, 7));
    }

    #[test]
    fn euler_examples() {
        let pair = euler_audit(&planar(vec![Circle::at(0.0, 0.0, 1.0), Circle::at(SQRT_2, 0.0, 1.0)]));
        assert_eq!((pair.vertices, pair.edges, pair.faces, pair.components), (2, 4, 4, 1));
        assert!(pair.pass());
        let one = euler_audit(&planar(vec![Circle::at(0.0, 0.0, 1.0)]));
        assert_eq!((one.faces, one.expected_faces), (2, 2));
        assert!(one.pass());
        let t = euler_audit(&planar(triple()));
        assert_eq!((t.vertices, t.edges, t.faces), (6, 12, 8));
        assert!(t.pass());
    }

    #[test]
    fn gauss_bonnet_on_triple() {
        let p = planar(triple());
        let r = gauss_bonnet_audit(&p, &Tolerance::default());
        assert_eq!(r.faces_checked, 7);
        assert!(r.max_residual < 1e-12, "{r:?}");
        assert!(r.pass());
        for budget in convex_angle_budget(&p) {
            assert!(budget <= TAU + 1e-9);
        }
    }

    #[test]
    fn holed_face_residual() {
        let p = planar(vec![Circle::at(0.0, 0.0, 3.0), Circle::at(0.5, 0.0, 1.0)]);
        let r = gauss_bonnet_audit(&p, &Tolerance::default());
        assert_eq!(r.faces_checked, 2);
        assert!(r.max_residual < 1e-12);
        assert_eq!(face_histogram(&p).with_holes, 1);
    }

    #[test]
    fn apollonian_on_triple() {
        let r = apollonian_check(&planar(triple()), &Tolerance::default());
        assert_eq!(r.triangles_checked, 7);
        assert!(r.pass());
    }

    #[test]
    fn four_circle_rule_rejects_oblique_shapes() {
        let tol = Tolerance::default();
        let a = Circle::at(0.0, 0.0, 1.0);
        let far = Circle::at(10.0, 0.0, 1.0);
        assert!(!four_circle_rule([&a, &far, &a, &far], &tol));
        assert!(!three_circle_rule([&a, &far, &Circle::at(-10.0, 0.0, 1.0)], &tol));
    }
}
