use std::f64::consts::{FRAC_PI_2, TAU};

use serde::Serialize;
use thiserror::Error;

use super::Arrangement;
use crate::geom::{intersection_points, normalize_angle, Circle, GeomError, Point};

pub type VertexId = usize;
pub type HalfEdgeId = usize;
pub type FaceId = usize;

/// Fixed direction for ray-parity containment tests. Chosen off every
/// axis so rays from construction points do not graze grid-aligned vertices.
const RAY_ANGLE: f64 = 0.618_033_988_749_894_9;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum PlanarizeError {
    #[error("circles {i} and {j} are tangent")]
    Tangency { i: usize, j: usize },
    #[error("circles {i} and {j} coincide")]
    Identical { i: usize, j: usize },
    #[error("circle {circle}: crossings {a} and {b} coincide (three circles through one point)")]
    TriplePoint { circle: usize, a: VertexId, b: VertexId },
    #[error("vertex {vertex} has {degree} outgoing half-edges, expected 4")]
    BadDegree { vertex: VertexId, degree: usize },
    #[error("component {component} has {count} outer boundaries, expected 1")]
    OuterBoundary { component: usize, count: usize },
}

/// Crossing point of two circles.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Vertex {
    pub point: Point,
    pub circles: [usize; 2],
}

/// Counter-clockwise arc of one circle between consecutive crossings.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Arc {
    pub circle: usize,
    pub from: VertexId,
    pub to: VertexId,
    /// Angle parameter of `from`, in `[0, 2π)`.
    pub start: f64,
    /// Positive angular length, in `(0, 2π)`.
    pub span: f64,
}

/// One direction of an arc. Half-edge `2a` runs along arc `a`
/// counter-clockwise, `2a + 1` runs back; twins differ in the lowest bit.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct HalfEdge {
    pub arc: usize,
    pub circle: usize,
    pub origin: VertexId,
    pub target: VertexId,
    pub forward: bool,
}

pub fn twin(h: HalfEdgeId) -> HalfEdgeId {
    h ^ 1
}

/// One side of a face boundary, oriented with the face on its left.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BoundaryArc {
    /// `None` for the full circle of an isolated circle.
    pub half_edge: Option<HalfEdgeId>,
    pub circle: usize,
    /// Start angle and positive length of the underlying ccw arc.
    pub start: f64,
    pub span: f64,
    /// Signed subtended angle: positive when the face is inside the circle.
    pub theta: f64,
    pub convex: bool,
}

impl BoundaryArc {
    fn sweep_endpoints(&self) -> (f64, f64) {
        if self.convex {
            (self.start, self.start + self.span)
        } else {
            (self.start + self.span, self.start)
        }
    }

    /// Contribution of this arc to the Green's-theorem area integral.
    fn area_term(&self, c: &Circle) -> f64 {
        let (t0, t1) = self.sweep_endpoints();
        let (cx, cy, r) = (c.center.x, c.center.y, c.radius);
        0.5 * (r * cx * (t1.sin() - t0.sin()) - r * cy * (t1.cos() - t0.cos()) + r * r * (t1 - t0))
    }

    /// A point in the interior of the arc.
    pub fn midpoint(&self, c: &Circle) -> Point {
        c.point_at(self.start + 0.5 * self.span)
    }

    /// Number of crossings of the ray from `p` with this arc.
    fn ray_crossings(&self, c: &Circle, p: Point, dir: Point) -> usize {
        let w = p - c.center;
        let b = dir.dot(w);
        let disc = b * b - (w.norm_sq() - c.radius * c.radius);
        if disc <= 0.0 {
            return 0;
        }
        let root = disc.sqrt();
        [-b - root, -b + root]
            .into_iter()
            .filter(|&s| s > 0.0)
            .filter(|&s| {
                if self.span >= TAU {
                    return true;
                }
                let t = c.angle_of(p + s * dir);
                normalize_angle(t - self.start) < self.span
            })
            .count()
    }
}

/// A closed boundary walk.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundaryCycle {
    pub arcs: Vec<BoundaryArc>,
    /// Number of crossing corners visited (zero for an isolated circle).
    pub corners: usize,
    pub component: usize,
}

impl BoundaryCycle {
    /// Sum of subtended angles plus a right-angle turn per corner:
    /// `2π` around a bounded region, `-2π` around a component's outside.
    pub fn total_turning(&self) -> f64 {
        self.total_angle() + self.corners as f64 * FRAC_PI_2
    }

    pub fn total_angle(&self) -> f64 {
        self.arcs.iter().map(|a| a.theta).sum()
    }

    pub fn signed_area(&self, circles: &[Circle]) -> f64 {
        self.arcs.iter().map(|a| a.area_term(&circles[a.circle])).sum()
    }

    /// Ray-parity test: whether `p` lies in the region this cycle bounds.
    pub fn encloses(&self, circles: &[Circle], p: Point) -> bool {
        let dir = Point::from_polar(1.0, RAY_ANGLE);
        let crossings: usize = self
            .arcs
            .iter()
            .map(|a| a.ray_crossings(&circles[a.circle], p, dir))
            .sum();
        crossings % 2 == 1
    }

    pub fn circles(&self) -> impl Iterator<Item = usize> + '_ {
        self.arcs.iter().map(|a| a.circle)
    }
}

/// A face of the arrangement: one outer boundary (absent for the
/// unbounded face) and any number of hole boundaries.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Face {
    pub outer: Option<BoundaryCycle>,
    pub holes: Vec<BoundaryCycle>,
}

impl Face {
    pub fn bounded(&self) -> bool {
        self.outer.is_some()
    }

    /// Number of arcs on the outer boundary.
    pub fn degree(&self) -> usize {
        self.outer.as_ref().map_or(0, |c| c.arcs.len())
    }

    pub fn is_simply_connected(&self) -> bool {
        self.holes.is_empty()
    }

    pub fn cycles(&self) -> impl Iterator<Item = &BoundaryCycle> {
        self.outer.iter().chain(self.holes.iter())
    }

    pub fn boundary(&self) -> impl Iterator<Item = &BoundaryArc> {
        self.cycles().flat_map(|c| c.arcs.iter())
    }

    pub fn corners(&self) -> usize {
        self.cycles().map(|c| c.corners).sum()
    }

    pub fn area(&self, circles: &[Circle]) -> Option<f64> {
        self.outer.as_ref()?;
        Some(self.cycles().map(|c| c.signed_area(circles)).sum())
    }
}

/// Plane graph of an arrangement: crossing vertices, arcs, rotation system
/// and faces.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Planarization {
    pub circles: Vec<Circle>,
    pub vertices: Vec<Vertex>,
    pub arcs: Vec<Arc>,
    pub half_edges: Vec<HalfEdge>,
    /// Outgoing half-edges at each vertex in counter-clockwise order.
    pub rotation: Vec<[HalfEdgeId; 4]>,
    /// Face 0 is the unbounded face.
    pub faces: Vec<Face>,
    pub face_of_half_edge: Vec<FaceId>,
    pub component_of_circle: Vec<usize>,
    pub components: usize,
    pub isolated_circles: Vec<usize>,
}

impl Planarization {
    pub fn bounded_faces(&self) -> impl Iterator<Item = (FaceId, &Face)> {
        self.faces.iter().enumerate().filter(|(_, f)| f.bounded())
    }

    pub fn unbounded_face(&self) -> &Face {
        &self.faces[0]
    }

    /// Half-edge following `h` on the boundary of the face to its left.
    pub fn next(&self, h: HalfEdgeId) -> HalfEdgeId {
        next_in_face(&self.half_edges, &self.rotation, &self.rotation_slot(), h)
    }

    fn rotation_slot(&self) -> Vec<usize> {
        rotation_slots(&self.rotation, self.half_edges.len())
    }
}

fn rotation_slots(rotation: &[[HalfEdgeId; 4]], half_edges: usize) -> Vec<usize> {
    let mut slot = vec![0; half_edges];
    for rot in rotation {
        for (k, &h) in rot.iter().enumerate() {
            slot[h] = k;
        }
    }
    slot
}

fn next_in_face(half_edges: &[HalfEdge], rotation: &[[HalfEdgeId; 4]], slot: &[usize], h: HalfEdgeId) -> HalfEdgeId {
    let v = half_edges[h].target;
    // the clockwise neighbour of the twin keeps the face on the left
    rotation[v][(slot[twin(h)] + 3) % 4]
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn find(&mut self, mut x: usize) -> usize {
        while self.0[x] != x {
            self.0[x] = self.0[self.0[x]];
            x = self.0[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.0[ra.max(rb)] = ra.min(rb);
        }
    }
}

/// Builds the planarization of a validated arrangement.
pub fn planarize(arr: &Arrangement) -> Result<Planarization, PlanarizeError> {
    let circles = arr.circles().to_vec();
    let tol = arr.tolerance();
    let n = circles.len();

    let mut vertices = Vec::new();
    let mut on_circle: Vec<Vec<(f64, VertexId)>> = vec![Vec::new(); n];
    for &(i, j) in arr.orthogonal_pairs() {
        let pts = match intersection_points(&circles[i], &circles[j], tol) {
            Ok(Some(pts)) => pts,
            Ok(None) => continue,
            Err(GeomError::IdenticalCircles) => return Err(PlanarizeError::Identical { i, j }),
            Err(_) => return Err(PlanarizeError::Tangency { i, j }),
        };
        for p in pts {
            let id = vertices.len();
            vertices.push(Vertex {
                point: p,
                circles: [i, j],
            });
            on_circle[i].push((circles[i].angle_of(p), id));
            on_circle[j].push((circles[j].angle_of(p), id));
        }
    }

    let mut arcs = Vec::new();
    for (ci, list) in on_circle.iter_mut().enumerate() {
        list.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)));
        let k = list.len();
        let r = circles[ci].radius;
        for m in 0..k {
            let (t0, a) = list[m];
            let (t1, b) = list[(m + 1) % k];
            if vertices[a].point.dist(vertices[b].point) <= tol.eps_pred * r {
                return Err(PlanarizeError::TriplePoint { circle: ci, a, b });
            }
            let span = if m + 1 < k { t1 - t0 } else { t1 + TAU - t0 };
            arcs.push(Arc {
                circle: ci,
                from: a,
                to: b,
                start: t0,
                span,
            });
        }
    }

    let mut half_edges = Vec::with_capacity(2 * arcs.len());
    for (ai, arc) in arcs.iter().enumerate() {
        half_edges.push(HalfEdge {
            arc: ai,
            circle: arc.circle,
            origin: arc.from,
            target: arc.to,
            forward: true,
        });
        half_edges.push(HalfEdge {
            arc: ai,
            circle: arc.circle,
            origin: arc.to,
            target: arc.from,
            forward: false,
        });
    }

    let mut outgoing: Vec<Vec<(f64, HalfEdgeId)>> = vec![Vec::new(); vertices.len()];
    for (h, he) in half_edges.iter().enumerate() {
        let arc = &arcs[he.arc];
        let c = &circles[arc.circle];
        let tangent = if he.forward {
            c.tangent_at(arc.start)
        } else {
            -1.0 * c.tangent_at(arc.start + arc.span)
        };
        outgoing[he.origin].push((tangent.angle(), h));
    }
    let mut rotation = Vec::with_capacity(vertices.len());
    for (v, mut out) in outgoing.into_iter().enumerate() {
        if out.len() != 4 {
            return Err(PlanarizeError::BadDegree {
                vertex: v,
                degree: out.len(),
            });
        }
        out.sort_by(|a, b| a.0.total_cmp(&b.0));
        rotation.push([out[0].1, out[1].1, out[2].1, out[3].1]);
    }
    let slot = rotation_slots(&rotation, half_edges.len());

    let mut uf = UnionFind((0..n).collect());
    for &(i, j) in arr.orthogonal_pairs() {
        uf.union(i, j);
    }
    let mut component_id = vec![usize::MAX; n];
    let mut component_of_circle = vec![0; n];
    let mut components = 0;
    for (ci, slot_c) in component_of_circle.iter_mut().enumerate() {
        let root = uf.find(ci);
        if component_id[root] == usize::MAX {
            component_id[root] = components;
            components += 1;
        }
        *slot_c = component_id[root];
    }

    // trace every boundary walk
    let mut cycles: Vec<(BoundaryCycle, Vec<HalfEdgeId>)> = Vec::new();
    let mut visited = vec![false; half_edges.len()];
    for h0 in 0..half_edges.len() {
        if visited[h0] {
            continue;
        }
        let mut walk = Vec::new();
        let mut h = h0;
        while !visited[h] {
            visited[h] = true;
            walk.push(h);
            h = next_in_face(&half_edges, &rotation, &slot, h);
        }
        let arcs_of_walk = walk
            .iter()
            .map(|&h| {
                let he = &half_edges[h];
                let arc = &arcs[he.arc];
                BoundaryArc {
                    half_edge: Some(h),
                    circle: arc.circle,
                    start: arc.start,
                    span: arc.span,
                    theta: if he.forward { arc.span } else { -arc.span },
                    convex: he.forward,
                }
            })
            .collect();
        let component = component_of_circle[half_edges[h0].circle];
        cycles.push((
            BoundaryCycle {
                arcs: arcs_of_walk,
                corners: walk.len(),
                component,
            },
            walk,
        ));
    }

    let isolated_circles: Vec<usize> = (0..n).filter(|&c| on_circle[c].is_empty()).collect();
    for &c in &isolated_circles {
        for convex in [true, false] {
            let arc = BoundaryArc {
                half_edge: None,
                circle: c,
                start: 0.0,
                span: TAU,
                theta: if convex { TAU } else { -TAU },
                convex,
            };
            cycles.push((
                BoundaryCycle {
                    arcs: vec![arc],
                    corners: 0,
                    component: component_of_circle[c],
                },
                Vec::new(),
            ));
        }
    }

    let mut outer_of_component: Vec<Vec<usize>> = vec![Vec::new(); components];
    let mut faces = vec![Face {
        outer: None,
        holes: Vec::new(),
    }];
    let mut face_of_half_edge = vec![0; half_edges.len()];
    let mut bounded_cycles = Vec::new();
    for (idx, (cycle, walk)) in cycles.iter().enumerate() {
        if cycle.total_turning() > 0.0 {
            let f = faces.len();
            for &h in walk {
                face_of_half_edge[h] = f;
            }
            faces.push(Face {
                outer: Some(cycle.clone()),
                holes: Vec::new(),
            });
            bounded_cycles.push((f, cycle.signed_area(&circles)));
        } else {
            outer_of_component[cycle.component].push(idx);
        }
    }
    for (component, outers) in outer_of_component.iter().enumerate() {
        if outers.len() != 1 {
            return Err(PlanarizeError::OuterBoundary {
                component,
                count: outers.len(),
            });
        }
    }

    // place each component's outside boundary into the smallest bounded
    // face of another component that encloses it
    for outers in &outer_of_component {
        let (cycle, walk) = &cycles[outers[0]];
        let first = &cycle.arcs[0];
        let probe = first.midpoint(&circles[first.circle]);
        let host = bounded_cycles
            .iter()
            .filter(|(f, _)| faces[*f].outer.as_ref().is_some_and(|o| o.component != cycle.component))
            .filter(|(f, _)| faces[*f].outer.as_ref().is_some_and(|o| o.encloses(&circles, probe)))
            .min_by(|a, b| a.1.total_cmp(&b.1))
            .map_or(0, |(f, _)| *f);
        for &h in walk {
            face_of_half_edge[h] = host;
        }
        faces[host].holes.push(cycle.clone());
    }

    Ok(Planarization {
        circles,
        vertices,
        arcs,
        half_edges,
        rotation,
        faces,
        face_of_half_edge,
        component_of_circle,
        components,
        isolated_circles,
    })
}
