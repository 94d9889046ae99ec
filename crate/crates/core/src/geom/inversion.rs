use super::{classify_pair, Circle, GeneralizedCircle, GeomError, Line, PairClass, Point, Tolerance};

/// Image of `p` under inversion in `inv`: the point on the ray from the
/// center through `p` whose distance times `|p - center|` is `radius²`.
pub fn invert_point(p: Point, inv: &Circle) -> Result<Point, GeomError> {
    let v = p - inv.center;
    let d2 = v.norm_sq();
    if d2.sqrt() <= Tolerance::default().eps_pred * inv.radius {
        return Err(GeomError::CenterInversion);
    }
    Ok(inv.center + (inv.radius * inv.radius / d2) * v)
}

/// Image of a generalized circle under inversion in `inv`.
///
/// Circles through the inversion center become lines and vice versa; a
/// line through the center maps onto itself.
pub fn invert_gcircle(g: &GeneralizedCircle, inv: &Circle, tol: &Tolerance) -> GeneralizedCircle {
    let r2 = inv.radius * inv.radius;
    match *g {
        GeneralizedCircle::Circle(c) => {
            let v = c.center - inv.center;
            let dist = v.norm();
            if (dist - c.radius).abs() <= tol.eps_pred * c.radius.max(dist) {
                // the point diametrically opposite the inversion center lands closest
                let normal = (1.0 / dist) * v;
                let offset = normal.dot(inv.center) + r2 / (2.0 * c.radius);
                GeneralizedCircle::Line(Line { normal, offset })
            } else {
                let power = (dist - c.radius) * (dist + c.radius);
                let k = r2 / power;
                GeneralizedCircle::Circle(Circle {
                    center: inv.center + k * v,
                    radius: k.abs() * c.radius,
                })
            }
        }
        GeneralizedCircle::Line(l) => {
            let delta = l.offset - l.normal.dot(inv.center);
            if delta.abs() <= tol.eps_pred * inv.radius {
                GeneralizedCircle::Line(l)
            } else {
                let h = r2 / (2.0 * delta);
                GeneralizedCircle::Circle(Circle {
                    center: inv.center + h * l.normal,
                    radius: h.abs(),
                })
            }
        }
    }
}

/// The two limit points of the coaxal system spanned by a disjoint pair:
/// the zero-radius members of the pencil containing both circles.
///
/// Returns `None` unless the pair is disjoint and not concentric.
pub fn limit_points(a: &Circle, b: &Circle, tol: &Tolerance) -> Option<[Point; 2]> {
    match classify_pair(a, b, tol) {
        PairClass::DisjointSeparate | PairClass::DisjointNested { .. } => {}
        _ => return None,
    }
    let dir = b.center - a.center;
    let d = dir.norm();
    let u = (1.0 / d) * dir;
    // radical axis foot, measured from a's center along u
    let x0 = (d * d + a.radius * a.radius - b.radius * b.radius) / (2.0 * d);
    // roots of x² - 2·x0·x + ra² = 0, computed without cancellation
    let disc = (x0 - a.radius) * (x0 + a.radius);
    if disc <= 0.0 {
        return None;
    }
    let q = x0 + x0.signum() * disc.sqrt();
    let far = q;
    let near = a.radius * a.radius / q;
    Some([a.center + near * u, a.center + far * u])
}

/// Result of inverting a disjoint pair into concentric position.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Concentricized {
    /// Unit inversion circle; `None` when the pair was already concentric.
    pub inversion: Option<Circle>,
    pub a: Circle,
    pub b: Circle,
}

impl Concentricized {
    /// Distance between the image centers relative to their mean radius.
    pub fn relative_offset(&self) -> f64 {
        self.a.center.dist(self.b.center) / (0.5 * (self.a.radius + self.b.radius))
    }
}

/// Inverts two disjoint circles into concentric ones.
///
/// The inversion is centered at a limit point of the pair, preferring the
/// one outside both circles (which exists for nested pairs); for separated
/// pairs the limit point inside `a` is used.
pub fn concentricize(a: &Circle, b: &Circle, tol: &Tolerance) -> Result<Concentricized, GeomError> {
    let class = classify_pair(a, b, tol);
    match class {
        PairClass::Concentric => {
            return Ok(Concentricized {
                inversion: None,
                a: *a,
                b: *b,
            })
        }
        PairClass::DisjointSeparate | PairClass::DisjointNested { .. } => {}
        other => return Err(GeomError::NotDisjoint(other)),
    }
    let limits = limit_points(a, b, tol).ok_or(GeomError::NotDisjoint(class))?;
    let outside = |p: Point, c: &Circle| p.dist(c.center) > c.radius;
    let center = limits
        .iter()
        .copied()
        .find(|&p| outside(p, a) && outside(p, b))
        .or_else(|| limits.iter().copied().find(|&p| !outside(p, a)))
        .unwrap_or(limits[0]);
    let inv = Circle { center, radius: 1.0 };
    let image = |c: &Circle| match invert_gcircle(&GeneralizedCircle::Circle(*c), &inv, tol) {
        GeneralizedCircle::Circle(img) => Ok(img),
        // a limit point never lies on either circle of a disjoint pair
        GeneralizedCircle::Line(_) => Err(GeomError::NotDisjoint(class)),
    };
    Ok(Concentricized {
        inversion: Some(inv),
        a: image(a)?,
        b: image(b)?,
    })
}
