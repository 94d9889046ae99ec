//! Geometric primitives: points, circles, generalized circles, and the
//! tolerance-controlled predicates used by every other module.

mod inversion;
mod pencil;

pub use inversion::{concentricize, invert_gcircle, invert_point, limit_points, Concentricized};
pub use pencil::{elliptic_pencil_member, hyperbolic_pencil_member};

use std::f64::consts::TAU;
use std::fmt;
use std::ops::{Add, Mul, Sub};

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GeomError {
    #[error("coordinate is not finite: ({0}, {1})")]
    NonFinitePoint(f64, f64),
    #[error("radius must be finite and strictly positive, got {0}")]
    BadRadius(f64),
    #[error("line normal must be non-zero and finite")]
    BadLine,
    #[error("tolerances must satisfy 0 < eps_pred < eps_audit < 1 (got {pred}, {audit})")]
    BadTolerance { pred: f64, audit: f64 },
    #[error("point coincides with the inversion center")]
    CenterInversion,
    #[error("circles are tangent near ({x}, {y})")]
    Tangency { x: f64, y: f64 },
    #[error("circles are identical")]
    IdenticalCircles,
    #[error("pencil foci coincide")]
    CoincidentFoci,
    #[error("hyperbolic pencil parameter {s} does not exceed the focal half-distance {half}")]
    NoRealCircle { s: f64, half: f64 },
    #[error("concentricize needs a disjoint pair, got {0}")]
    NotDisjoint(PairClass),
}

/// A point in the plane with finite coordinates.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

impl Point {
    pub const ORIGIN: Point = Point { x: 0.0, y: 0.0 };

    /// Unchecked constructor; use [`Point::try_new`] for external input.
    pub const fn new(x: f64, y: f64) -> Self {
        Point { x, y }
    }

    pub fn try_new(x: f64, y: f64) -> Result<Self, GeomError> {
        if x.is_finite() && y.is_finite() {
            Ok(Point { x, y })
        } else {
            Err(GeomError::NonFinitePoint(x, y))
        }
    }

    pub fn from_polar(radius: f64, angle: f64) -> Self {
        Point::new(radius * angle.cos(), radius * angle.sin())
    }

    pub fn dot(self, other: Point) -> f64 {
        self.x * other.x + self.y * other.y
    }

    pub fn cross(self, other: Point) -> f64 {
        self.x * other.y - self.y * other.x
    }

    pub fn norm(self) -> f64 {
        self.x.hypot(self.y)
    }

    pub fn norm_sq(self) -> f64 {
        self.dot(self)
    }

    pub fn dist(self, other: Point) -> f64 {
        (self - other).norm()
    }

    /// Counter-clockwise rotation by a right angle.
    pub fn perp(self) -> Point {
        Point::new(-self.y, self.x)
    }

    pub fn angle(self) -> f64 {
        self.y.atan2(self.x)
    }

    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }
}

impl Add for Point {
    type Output = Point;
    fn add(self, rhs: Point) -> Point {
        Point::new(self.x + rhs.x, self.y + rhs.y)
    }
}

impl Sub for Point {
    type Output = Point;
    fn sub(self, rhs: Point) -> Point {
        Point::new(self.x - rhs.x, self.y - rhs.y)
    }
}

impl Mul<Point> for f64 {
    type Output = Point;
    fn mul(self, rhs: Point) -> Point {
        Point::new(self * rhs.x, self * rhs.y)
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

/// Normalizes an angle into `[0, 2π)`.
pub fn normalize_angle(t: f64) -> f64 {
    let r = t.rem_euclid(TAU);
    if r >= TAU {
        0.0
    } else {
        r
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Circle {
    pub center: Point,
    pub radius: f64,
}

impl Circle {
    pub fn new(center: Point, radius: f64) -> Result<Self, GeomError> {
        if !center.is_finite() {
            return Err(GeomError::NonFinitePoint(center.x, center.y));
        }
        if !(radius.is_finite() && radius > 0.0) {
            return Err(GeomError::BadRadius(radius));
        }
        Ok(Circle { center, radius })
    }

    /// Shorthand for literal circles in generators and tests.
    ///
    /// Panics on an invalid radius or coordinate.
    pub fn at(x: f64, y: f64, radius: f64) -> Self {
        Circle::new(Point::new(x, y), radius).expect("invalid circle literal")
    }

    pub fn point_at(&self, t: f64) -> Point {
        self.center + Point::from_polar(self.radius, t)
    }

    /// Angle parameter of `p` as seen from the center, in `[0, 2π)`.
    pub fn angle_of(&self, p: Point) -> f64 {
        normalize_angle((p - self.center).angle())
    }

    /// Unit tangent of counter-clockwise travel at parameter `t`.
    pub fn tangent_at(&self, t: f64) -> Point {
        Point::new(-t.sin(), t.cos())
    }

    pub fn contains_point(&self, p: Point) -> bool {
        (p - self.center).norm_sq() < self.radius * self.radius
    }

    pub fn area(&self) -> f64 {
        std::f64::consts::PI * self.radius * self.radius
    }
}

/// Line `normal · x = offset` with a unit normal.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Line {
    pub normal: Point,
    pub offset: f64,
}

impl Line {
    /// Builds a line from any non-zero normal, rescaling it to unit length.
    pub fn new(normal: Point, offset: f64) -> Result<Self, GeomError> {
        let len = normal.norm();
        if !(len.is_finite() && len > 0.0 && offset.is_finite()) {
            return Err(GeomError::BadLine);
        }
        Ok(Line {
            normal: (1.0 / len) * normal,
            offset: offset / len,
        })
    }

    pub fn signed_distance(&self, p: Point) -> f64 {
        self.normal.dot(p) - self.offset
    }

    /// Foot of the perpendicular from `p`.
    pub fn project(&self, p: Point) -> Point {
        p - self.signed_distance(p) * self.normal
    }

    pub fn direction(&self) -> Point {
        self.normal.perp()
    }
}

/// A circle or a line; the family closed under inversion.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum GeneralizedCircle {
    Circle(Circle),
    Line(Line),
}

impl GeneralizedCircle {
    /// Distance-like residual of `p` from the curve; zero on the curve.
    pub fn residual(&self, p: Point) -> f64 {
        match self {
            GeneralizedCircle::Circle(c) => p.dist(c.center) - c.radius,
            GeneralizedCircle::Line(l) => l.signed_distance(p),
        }
    }

    /// Unit normal of the curve at a point lying on it.
    pub fn normal_at(&self, p: Point) -> Point {
        match self {
            GeneralizedCircle::Circle(c) => {
                let v = p - c.center;
                (1.0 / v.norm()) * v
            }
            GeneralizedCircle::Line(l) => l.normal,
        }
    }

    pub fn as_circle(&self) -> Option<&Circle> {
        match self {
            GeneralizedCircle::Circle(c) => Some(c),
            GeneralizedCircle::Line(_) => None,
        }
    }
}

impl From<Circle> for GeneralizedCircle {
    fn from(c: Circle) -> Self {
        GeneralizedCircle::Circle(c)
    }
}

impl From<Line> for GeneralizedCircle {
    fn from(l: Line) -> Self {
        GeneralizedCircle::Line(l)
    }
}

/// Relative tolerances: `eps_pred` for predicates, `eps_audit` for residual checks.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Tolerance {
    pub eps_pred: f64,
    pub eps_audit: f64,
}

impl Tolerance {
    pub fn new(eps_pred: f64, eps_audit: f64) -> Result<Self, GeomError> {
        if eps_pred > 0.0 && eps_pred < eps_audit && eps_audit < 1.0 {
            Ok(Tolerance { eps_pred, eps_audit })
        } else {
            Err(GeomError::BadTolerance {
                pred: eps_pred,
                audit: eps_audit,
            })
        }
    }

    /// Same audit tolerance, predicate tolerance multiplied by `factor`.
    pub fn widened(&self, factor: f64) -> Tolerance {
        Tolerance {
            eps_pred: self.eps_pred * factor,
            eps_audit: self.eps_audit.max(self.eps_pred * factor),
        }
    }
}

impl Default for Tolerance {
    fn default() -> Self {
        Tolerance {
            eps_pred: 1e-9,
            eps_audit: 1e-6,
        }
    }
}

/// Which argument of a pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Side {
    First,
    Second,
}

impl Side {
    pub fn other(self) -> Side {
        match self {
            Side::First => Side::Second,
            Side::Second => Side::First,
        }
    }
}

/// Relationship between two circles.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum PairClass {
    Orthogonal,
    DisjointSeparate,
    DisjointNested { outer: Side },
    Concentric,
    Tangent,
    ObliqueIntersecting,
    Identical,
}

impl PairClass {
    /// Classes permitted between two members of an orthogonal arrangement.
    pub fn is_admissible(self) -> bool {
        matches!(
            self,
            PairClass::Orthogonal
                | PairClass::DisjointSeparate
                | PairClass::DisjointNested { .. }
                | PairClass::Concentric
        )
    }

    pub fn is_disjoint(self) -> bool {
        matches!(
            self,
            PairClass::DisjointSeparate | PairClass::DisjointNested { .. } | PairClass::Concentric
        )
    }

    /// The class seen with the arguments exchanged.
    pub fn swapped(self) -> PairClass {
        match self {
            PairClass::DisjointNested { outer } => PairClass::DisjointNested { outer: outer.other() },
            other => other,
        }
    }
}

impl fmt::Display for PairClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PairClass::Orthogonal => f.write_str("Orthogonal"),
            PairClass::DisjointSeparate => f.write_str("DisjointSeparate"),
            PairClass::DisjointNested { outer: Side::First } => f.write_str("DisjointNested(outer=first)"),
            PairClass::DisjointNested { outer: Side::Second } => f.write_str("DisjointNested(outer=second)"),
            PairClass::Concentric => f.write_str("Concentric"),
            PairClass::Tangent => f.write_str("Tangent"),
            PairClass::ObliqueIntersecting => f.write_str("ObliqueIntersecting"),
            PairClass::Identical => f.write_str("Identical"),
        }
    }
}

/// Classifies an unordered pair of circles.
///
/// Degenerate classes are tested first, so a pair inside two tolerance
/// bands gets the more degenerate label
/// (Identical, Concentric, Tangent, Orthogonal, then the generic classes).
pub fn classify_pair(a: &Circle, b: &Circle, tol: &Tolerance) -> PairClass {
    let eps = tol.eps_pred;
    let d = a.center.dist(b.center);
    let (ra, rb) = (a.radius, b.radius);
    let rmax = ra.max(rb);
    let rmin = ra.min(rb);

    if d <= eps * rmax {
        return if (ra - rb).abs() <= eps * rmax {
            PairClass::Identical
        } else {
            PairClass::Concentric
        };
    }
    let outer_tangent = (d - (ra + rb)).abs() <= eps * (ra + rb);
    let inner_tangent = (d - (ra - rb).abs()).abs() <= eps * rmax;
    if outer_tangent || inner_tangent {
        return PairClass::Tangent;
    }
    let (ra2, rb2, d2) = (ra * ra, rb * rb, d * d);
    if (ra2 + rb2 - d2).abs() <= eps * ra2.max(rb2).max(d2) {
        return PairClass::Orthogonal;
    }
    if d > ra + rb {
        return PairClass::DisjointSeparate;
    }
    if d + rmin < rmax {
        let outer = if ra > rb { Side::First } else { Side::Second };
        return PairClass::DisjointNested { outer };
    }
    PairClass::ObliqueIntersecting
}

/// Crossing points of two circles.
///
/// Returns `Ok(None)` for disjoint or nested pairs and the two crossing
/// points, ordered with the first to the left of the directed center line
/// `a → b`, otherwise.
pub fn intersection_points(a: &Circle, b: &Circle, tol: &Tolerance) -> Result<Option<[Point; 2]>, GeomError> {
    match classify_pair(a, b, tol) {
        PairClass::Identical => Err(GeomError::IdenticalCircles),
        PairClass::Tangent => {
            let dir = b.center - a.center;
            let d = dir.norm();
            let u = (1.0 / d) * dir;
            // external tangency touches on the near side of a, internal on the far side
            let external = (d - (a.radius + b.radius)).abs() <= (d - (a.radius - b.radius).abs()).abs();
            let sign = if external || a.radius > b.radius { 1.0 } else { -1.0 };
            let p = a.center + (sign * a.radius) * u;
            Err(GeomError::Tangency { x: p.x, y: p.y })
        }
        PairClass::DisjointSeparate | PairClass::DisjointNested { .. } | PairClass::Concentric => Ok(None),
        PairClass::Orthogonal | PairClass::ObliqueIntersecting => {
            let dir = b.center - a.center;
            let d = dir.norm();
            let u = (1.0 / d) * dir;
            let along = (d * d + a.radius * a.radius - b.radius * b.radius) / (2.0 * d);
            let h = (a.radius * a.radius - along * along).max(0.0).sqrt();
            let foot = a.center + along * u;
            let off = h * u.perp();
            Ok(Some([foot + off, foot - off]))
        }
    }
}
