//! JSON interchange format for arrangements.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::geom::{Circle, GeomError, Point};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CircleRecord {
    pub cx: f64,
    pub cy: f64,
    pub r: f64,
}

impl From<&Circle> for CircleRecord {
    fn from(c: &Circle) -> Self {
        CircleRecord {
            cx: c.center.x,
            cy: c.center.y,
            r: c.radius,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct Meta {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub family: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub generator_params: Option<serde_json::Value>,
}

/// `{ "circles": [{ "cx", "cy", "r" }], "meta": { ... } }`.
///
/// Numbers are written in the shortest form that parses back to the same
/// double, so a load/save cycle is lossless.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct ArrangementFile {
    pub circles: Vec<CircleRecord>,
    #[serde(default)]
    pub meta: Meta,
}

#[derive(Debug, Error)]
pub enum FileError {
    #[error("malformed arrangement file: {0}")]
    Json(#[from] serde_json::Error),
    #[error("circle {index}: {source}")]
    BadCircle { index: usize, source: GeomError },
}

impl ArrangementFile {
    pub fn from_circles(circles: &[Circle], meta: Meta) -> Self {
        ArrangementFile {
            circles: circles.iter().map(CircleRecord::from).collect(),
            meta,
        }
    }

    pub fn parse(text: &str) -> Result<Self, FileError> {
        let file: ArrangementFile = serde_json::from_str(text)?;
        file.to_circles()?;
        Ok(file)
    }

    pub fn to_circles(&self) -> Result<Vec<Circle>, FileError> {
        self.circles
            .iter()
            .enumerate()
            .map(|(index, c)| {
                Point::try_new(c.cx, c.cy)
                    .and_then(|p| Circle::new(p, c.r))
                    .map_err(|source| FileError::BadCircle { index, source })
            })
            .collect()
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("finite numbers always serialize");
        s.push('\n');
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_is_exact() {
        let circles = vec![Circle::at(0.1 + 0.2, -1e-300, 2f64.sqrt()), Circle::at(1e22, 3.0, 0.7)];
        let meta = Meta {
            family: Some("pairs".into()),
            seed: Some(3),
            generator_params: None,
        };
        let file = ArrangementFile::from_circles(&circles, meta);
        let text = file.to_json();
        let back = ArrangementFile::parse(&text).unwrap();
        assert_eq!(back, file);
        assert_eq!(back.to_circles().unwrap(), circles);
        assert_eq!(back.to_json(), text);
    }

    #[test]
    fn meta_is_optional() {
        let file = ArrangementFile::parse(r#"{"circles":[{"cx":0,"cy":0,"r":1}]}"#).unwrap();
        assert_eq!(file.meta, Meta::default());
        assert_eq!(file.circles.len(), 1);
    }

    #[test]
    fn rejects_bad_radius_and_schema() {
        let err = ArrangementFile::parse(r#"{"circles":[{"cx":0,"cy":0,"r":1},{"cx":0,"cy":0,"r":-2}]}"#).unwrap_err();
        assert!(matches!(err, FileError::BadCircle { index: 1, .. }));
        assert!(matches!(
            ArrangementFile::parse(r#"{"circles":[{"x":0}]}"#),
            Err(FileError::Json(_))
        ));
    }
}
