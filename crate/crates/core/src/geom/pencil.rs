use super::{Circle, GeomError, Point};

struct PencilFrame {
    mid: Point,
    along: Point,
    half: f64,
}

fn frame(focus_a: Point, focus_b: Point) -> Result<PencilFrame, GeomError> {
    let dir = focus_b - focus_a;
    let len = dir.norm();
    if len <= 0.0 {
        return Err(GeomError::CoincidentFoci);
    }
    Ok(PencilFrame {
        mid: 0.5 * (focus_a + focus_b),
        along: (1.0 / len) * dir,
        half: 0.5 * len,
    })
}

/// Member of the elliptic pencil through both foci, centered at signed
/// distance `t` from the foci midpoint along the perpendicular bisector.
pub fn elliptic_pencil_member(focus_a: Point, focus_b: Point, t: f64) -> Result<Circle, GeomError> {
    let f = frame(focus_a, focus_b)?;
    Circle::new(f.mid + t * f.along.perp(), f.half.hypot(t))
}

/// Member of the hyperbolic pencil of the foci, centered at signed
/// distance `s` from the midpoint along the focal line. Orthogonal to every
/// elliptic member of the same foci.
pub fn hyperbolic_pencil_member(focus_a: Point, focus_b: Point, s: f64) -> Result<Circle, GeomError> {
    let f = frame(focus_a, focus_b)?;
    let power = (s.abs() - f.half) * (s.abs() + f.half);
    if s.is_nan() || s.abs() <= f.half || power <= 0.0 {
        return Err(GeomError::NoRealCircle { s, half: f.half });
    }
    Circle::new(f.mid + s * f.along, power.sqrt())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::{classify_pair, PairClass, Tolerance};

    const A: Point = Point::new(-1.0, 0.0);
    const B: Point = Point::new(1.0, 0.0);

    #[test]
    fn elliptic_examples() {
        let c0 = elliptic_pencil_member(A, B, 0.0).unwrap();
        assert_eq!((c0.center, c0.radius), (Point::ORIGIN, 1.0));
        let c1 = elliptic_pencil_member(A, B, 1.0).unwrap();
        assert!(c1.center.dist(Point::new(0.0, 1.0)) < 1e-15);
        assert!((c1.radius - 2f64.sqrt()).abs() < 1e-15);
        let c2 = elliptic_pencil_member(A, B, -2.0).unwrap();
        assert!(c2.center.dist(Point::new(0.0, -2.0)) < 1e-15);
        assert!((c2.radius - 5f64.sqrt()).abs() < 1e-15);
        for c in [c0, c1, c2] {
            assert!((c.center.dist(A) - c.radius).abs() < 1e-14);
            assert!((c.center.dist(B) - c.radius).abs() < 1e-14);
        }
        assert_eq!(elliptic_pencil_member(A, A, 1.0), Err(GeomError::CoincidentFoci));
    }

    #[test]
    fn hyperbolic_examples() {
        let h2 = hyperbolic_pencil_member(A, B, 2.0).unwrap();
        assert!(h2.center.dist(Point::new(2.0, 0.0)) < 1e-15);
        assert!((h2.radius - 3f64.sqrt()).abs() < 1e-15);
        let hs = hyperbolic_pencil_member(A, B, 2f64.sqrt()).unwrap();
        assert!((hs.radius - 1.0).abs() < 1e-15);
        assert!(matches!(
            hyperbolic_pencil_member(A, B, 1.0),
            Err(GeomError::NoRealCircle { .. })
        ));
        assert!(matches!(
            hyperbolic_pencil_member(A, B, 0.5),
            Err(GeomError::NoRealCircle { .. })
        ));
        let t0 = elliptic_pencil_member(A, B, 0.0).unwrap();
        assert_eq!(classify_pair(&t0, &h2, &Tolerance::default()), PairClass::Orthogonal);
    }
}
