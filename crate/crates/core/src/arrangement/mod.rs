//! Orthogonal arrangements: validation against the orthogonal-or-disjoint
//! contract, planarization into arcs and faces, and the structural audits
//! run on the result.

mod analysis;
mod nesting;
mod planar;

pub use analysis::{
    apollonian_check, convex_angle_budget, euler_audit, face_histogram, face_residual, gauss_bonnet_audit,
    ApollonianReport, EulerReport, FaceHistogram, GaussBonnetReport,
};
pub use nesting::{nesting_forest, NestingForest};
pub use planar::{
    planarize, Arc, BoundaryArc, BoundaryCycle, Face, FaceId, HalfEdge, HalfEdgeId, Planarization, PlanarizeError,
    Vertex, VertexId,
};

use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::geom::{classify_pair, Circle, PairClass, Side, Tolerance};

/// An offending pair found by [`validate`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub i: usize,
    pub j: usize,
    pub class: PairClass,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "pair ({},{}): {}", self.i, self.j, self.class)
    }
}

/// Every pair that breaks the orthogonal-or-disjoint contract.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, v) in self.violations.iter().enumerate() {
            if k > 0 {
                writeln!(f)?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ArrangementError {
    #[error("an arrangement needs at least one circle")]
    Empty,
    #[error("{count} invalid pair(s):\n{report}", count = .0.violations.len(), report = .0)]
    Invalid(ValidationReport),
}

/// A validated list of circles in which every pair is orthogonal or disjoint.
#[derive(Debug, Clone, PartialEq)]
pub struct Arrangement {
    circles: Vec<Circle>,
    tol: Tolerance,
    orthogonal: Vec<(usize, usize)>,
    /// `(inner, outer)` pairs of nested circles.
    nested: Vec<(usize, usize)>,
}

/// Checks every unordered pair and either accepts the list as an
/// arrangement or reports all offending pairs.
pub fn validate(circles: Vec<Circle>, tol: Tolerance) -> Result<Arrangement, ArrangementError> {
    if circles.is_empty() {
        return Err(ArrangementError::Empty);
    }
    let mut report = ValidationReport::default();
    let mut orthogonal = Vec::new();
    let mut nested = Vec::new();
    for i in 0..circles.len() {
        for j in i + 1..circles.len() {
            let class = classify_pair(&circles[i], &circles[j], &tol);
            match class {
                PairClass::Orthogonal => orthogonal.push((i, j)),
                PairClass::DisjointSeparate => {}
                PairClass::DisjointNested { outer: Side::First } => nested.push((j, i)),
                PairClass::DisjointNested { outer: Side::Second } => nested.push((i, j)),
                PairClass::Concentric => {
                    if circles[i].radius > circles[j].radius {
                        nested.push((j, i));
                    } else {
                        nested.push((i, j));
                    }
                }
                PairClass::Tangent | PairClass::ObliqueIntersecting | PairClass::Identical => {
                    report.violations.push(Violation { i, j, class })
                }
            }
        }
    }
    if report.violations.is_empty() {
        Ok(Arrangement {
            circles,
            tol,
            orthogonal,
            nested,
        })
    } else {
        Err(ArrangementError::Invalid(report))
    }
}

impl Arrangement {
    pub fn new(circles: Vec<Circle>, tol: Tolerance) -> Result<Self, ArrangementError> {
        validate(circles, tol)
    }

    pub fn circles(&self) -> &[Circle] {
        &self.circles
    }

    pub fn len(&self) -> usize {
        self.circles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.circles.is_empty()
    }

    pub fn tolerance(&self) -> &Tolerance {
        &self.tol
    }

    /// Orthogonal pairs `(i, j)` with `i < j`, in lexicographic order.
    pub fn orthogonal_pairs(&self) -> &[(usize, usize)] {
        &self.orthogonal
    }

    /// Nested pairs as `(inner, outer)`.
    pub fn nested_pairs(&self) -> &[(usize, usize)] {
        &self.nested
    }

    pub fn into_circles(self) -> Vec<Circle> {
        self.circles
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::SQRT_2;

    #[test]
    fn validate_examples() {
        let tol = Tolerance::default();
        let ok = validate(vec![Circle::at(0.0, 0.0, 1.0), Circle::at(SQRT_2, 0.0, 1.0)], tol).unwrap();
        assert_eq!(ok.orthogonal_pairs(), &[(0, 1)]);

        match validate(vec![Circle::at(0.0, 0.0, 1.0), Circle::at(1.7, 0.0, 1.0)], tol) {
            Err(ArrangementError::Invalid(r)) => {
                assert_eq!(
                    r.violations,
                    vec![Violation {
                        i: 0,
                        j: 1,
                        class: PairClass::ObliqueIntersecting
                    }]
                );
                assert_eq!(r.to_string(), "pair (0,1): ObliqueIntersecting");
            }
            other => panic!("unexpected {other:?}"),
        }
        match validate(vec![Circle::at(0.0, 0.0, 1.0), Circle::at(2.0, 0.0, 1.0)], tol) {
            Err(ArrangementError::Invalid(r)) => assert_eq!(r.violations[0].class, PairClass::Tangent),
            other => panic!("unexpected {other:?}"),
        }
        assert_eq!(validate(vec![], tol), Err(ArrangementError::Empty));
    }

    #[test]
    fn report_lists_every_violation() {
        let tol = Tolerance::default();
        let circles = vec![
            Circle::at(0.0, 0.0, 1.0),
            Circle::at(1.7, 0.0, 1.0),
            Circle::at(0.0, 0.0, 1.0),
            Circle::at(-2.0, 0.0, 1.0),
        ];
        let Err(ArrangementError::Invalid(r)) = validate(circles, tol) else {
            panic!("expected invalid")
        };
        let pairs: Vec<_> = r.violations.iter().map(|v| (v.i, v.j, v.class)).collect();
        assert_eq!(
            pairs,
            vec![
                (0, 1, PairClass::ObliqueIntersecting),
                (0, 2, PairClass::Identical),
                (0, 3, PairClass::Tangent),
                (1, 2, PairClass::ObliqueIntersecting),
                (2, 3, PairClass::Tangent),
            ]
        );
    }

    #[test]
    fn nested_pairs_record_inner_first() {
        let arr = validate(
            vec![
                Circle::at(0.0, 0.0, 5.0),
                Circle::at(0.0, 0.5, 1.0),
                Circle::at(0.0, 0.0, 0.1),
            ],
            Tolerance::default(),
        )
        .unwrap();
        assert_eq!(arr.nested_pairs(), &[(1, 0), (2, 0), (2, 1)]);
    }
}
