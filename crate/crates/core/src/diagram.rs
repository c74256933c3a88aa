//! Persistence diagrams and the planar geometry used for matching costs.
//!
//! A diagram is an ordered multiset of birth/death pairs strictly above the
//! diagonal. The inner distance between points is an l_q norm (q >= 1 or
//! infinity), and the cost of moving a point is that distance raised to the
//! outer exponent p.

use std::fmt;
use std::str::FromStr;

use crate::error::Error;

/// Inner norm exponent: a finite q >= 1 or the max norm.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Norm {
    Q(f64),
    Infinity,
}

impl Norm {
    /// Validates q >= 1; `f64::INFINITY` is normalized to `Norm::Infinity`.
    pub fn new(q: f64) -> Result<Self, Error> {
        if q.is_nan() || q < 1.0 {
            Err(Error::InvalidNorm { q })
        } else if q.is_infinite() {
            Ok(Norm::Infinity)
        } else {
            Ok(Norm::Q(q))
        }
    }
}

impl Default for Norm {
    fn default() -> Self {
        Norm::Q(2.0)
    }
}

impl fmt::Display for Norm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Norm::Q(q) => write!(f, "{q}"),
            Norm::Infinity => write!(f, "inf"),
        }
    }
}

impl FromStr for Norm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        let t = s.trim();
        if t.eq_ignore_ascii_case("inf") || t.eq_ignore_ascii_case("infinity") || t == "∞" {
            return Ok(Norm::Infinity);
        }
        let q: f64 = t.parse().map_err(|_| Error::InvalidNorm { q: f64::NAN })?;
        Norm::new(q)
    }
}

/// The l_q distance between two points of the plane.
pub fn point_distance(u: [f64; 2], v: [f64; 2], q: Norm) -> f64 {
    let dx = (u[0] - v[0]).abs();
    let dy = (u[1] - v[1]).abs();
    match q {
        Norm::Infinity => dx.max(dy),
        Norm::Q(q) => {
            if q == 1.0 {
                dx + dy
            } else if q == 2.0 {
                (dx * dx + dy * dy).sqrt()
            } else {
                (dx.powf(q) + dy.powf(q)).powf(1.0 / q)
            }
        }
    }
}

pub(crate) fn powp(base: f64, p: f64) -> f64 {
    if p == 1.0 {
        base
    } else if p == 2.0 {
        base * base
    } else {
        base.powf(p)
    }
}

/// Weight of the edge joining an interval `(birth, death)` to its diagonal
/// projection: `((death - birth) / 2^{1 - 1/q})^p`. With q infinite the
/// divisor is 2. Evaluated as `(death - birth)^p / 2^{(1 - 1/q) p}` so the
/// common p = q = 2 case stays exact.
pub(crate) fn diagonal_weight_raw(birth: f64, death: f64, p: f64, q: Norm) -> f64 {
    match q {
        Norm::Infinity => powp((death - birth) / 2.0, p),
        Norm::Q(q) => powp(death - birth, p) / 2f64.powf((1.0 - 1.0 / q) * p),
    }
}

/// A single birth/death pair strictly above the diagonal.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DiagramPoint {
    birth: f64,
    death: f64,
}

impl DiagramPoint {
    pub fn new(birth: f64, death: f64) -> Result<Self, Error> {
        if !birth.is_finite() || !death.is_finite() || death <= birth {
            return Err(Error::InvalidPoint { birth, death });
        }
        Ok(DiagramPoint { birth, death })
    }

    pub fn birth(&self) -> f64 {
        self.birth
    }

    pub fn death(&self) -> f64 {
        self.death
    }

    pub fn coords(&self) -> [f64; 2] {
        [self.birth, self.death]
    }

    /// Orthogonal projection onto the diagonal: `((b+d)/2, (b+d)/2)`.
    pub fn diagonal_projection(&self) -> [f64; 2] {
        let mid = (self.birth + self.death) / 2.0;
        [mid, mid]
    }

    /// Cost of pairing this point with its diagonal projection.
    pub fn diagonal_edge_weight(&self, p: f64, q: Norm) -> f64 {
        diagonal_weight_raw(self.birth, self.death, p, q)
    }
}

/// An ordered sequence of diagram points. Duplicates are permitted and the
/// index order is fixed at construction.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct PersistenceDiagram {
    points: Vec<DiagramPoint>,
}

impl PersistenceDiagram {
    pub fn new(points: Vec<DiagramPoint>) -> Self {
        PersistenceDiagram { points }
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[DiagramPoint] {
        &self.points
    }

    /// Parses the plain-text diagram format: one `birth death` pair per line,
    /// separated by whitespace or a single comma; `#` starts a comment and
    /// blank lines are skipped.
    pub fn parse(text: &str) -> Result<Self, Error> {
        let mut points = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let content = match raw.find('#') {
                Some(pos) => &raw[..pos],
                None => raw,
            };
            let content = content.trim();
            if content.is_empty() {
                continue;
            }
            let fields: Vec<&str> = if content.contains(',') {
                content.split(',').map(str::trim).collect()
            } else {
                content.split_whitespace().collect()
            };
            if fields.len() != 2 || fields.iter().any(|f| f.is_empty()) {
                return Err(Error::Parse {
                    line,
                    message: format!("expected two fields, got {}", fields.len()),
                });
            }
            let birth: f64 = fields[0].parse().map_err(|_| Error::Parse {
                line,
                message: format!("malformed number {:?}", fields[0]),
            })?;
            let death: f64 = fields[1].parse().map_err(|_| Error::Parse {
                line,
                message: format!("malformed number {:?}", fields[1]),
            })?;
            let point = DiagramPoint::new(birth, death).map_err(|_| Error::Validation {
                line,
                message: format!(
                    "({birth}, {death}) must have finite coordinates with death > birth"
                ),
            })?;
            points.push(point);
        }
        Ok(PersistenceDiagram::new(points))
    }

    /// Writes the diagram back in the same plain-text format. `parse` of the
    /// result reproduces the diagram exactly.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for pt in &self.points {
            out.push_str(&format!("{} {}\n", pt.birth, pt.death));
        }
        out
    }
}
