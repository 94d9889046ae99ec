//! Exact arrangement families and a seeded random sampler.

use std::collections::BTreeMap;
use std::f64::consts::{PI, SQRT_2, TAU};
use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use serde_json::json;
use thiserror::Error;

use crate::arrangement::{validate, Arrangement, ArrangementError};
use crate::geom::{classify_pair, intersection_points, Circle, PairClass, Point, Tolerance};
use crate::graphs::MinorWitness;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Family {
    PairRows,
    TriangularLattice,
    HyperbolicStack,
    Flower,
    ChainGridKn,
    Random,
}

impl Family {
    pub const ALL: [Family; 6] = [
        Family::PairRows,
        Family::TriangularLattice,
        Family::HyperbolicStack,
        Family::Flower,
        Family::ChainGridKn,
        Family::Random,
    ];

    /// Short name used on the command line and in file metadata.
    pub fn name(self) -> &'static str {
        match self {
            Family::PairRows => "pairs",
            Family::TriangularLattice => "lattice",
            Family::HyperbolicStack => "stack",
            Family::Flower => "flower",
            Family::ChainGridKn => "chain-grid",
            Family::Random => "random",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = GenError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Family::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| GenError::UnknownFamily(s.to_string()))
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GenError {
    #[error("unknown family `{0}`")]
    UnknownFamily(String),
    #[error("{family} needs an even n >= 2, got {got}")]
    OddPairCount { family: Family, got: usize },
    #[error("{family} needs a size of at least {min}, got {got}")]
    TooSmall { family: Family, min: usize, got: usize },
    #[error("flower has exactly 7 circles, got n = {0}")]
    FlowerSize(usize),
    #[error("generated arrangement failed validation: {0}")]
    Invalid(#[from] ArrangementError),
}

/// Which family to build, its size (`n` circles, or `k` chains for
/// [`Family::ChainGridKn`]) and the seed used by [`Family::Random`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilySpec {
    pub family: Family,
    pub size: usize,
    pub seed: u64,
}

impl FamilySpec {
    pub fn new(family: Family, size: usize) -> Self {
        FamilySpec { family, size, seed: 0 }
    }

    pub fn with_seed(self, seed: u64) -> Self {
        FamilySpec { seed, ..self }
    }

    pub fn check(&self) -> Result<(), GenError> {
        let (family, got) = (self.family, self.size);
        let min = match family {
            Family::PairRows if got < 2 || got % 2 == 1 => return Err(GenError::OddPairCount { family, got }),
            Family::Flower if got != 7 => return Err(GenError::FlowerSize(got)),
            Family::PairRows | Family::Flower => return Ok(()),
            Family::TriangularLattice => 3,
            Family::HyperbolicStack => 4,
            Family::ChainGridKn => 2,
            Family::Random => 1,
        };
        if got < min {
            return Err(GenError::TooSmall { family, min, got });
        }
        Ok(())
    }
}

/// A generated arrangement with its minor witness (chain grids only) and
/// the parameters worth recording alongside it.
#[derive(Debug, Clone)]
pub struct Generated {
    pub arrangement: Arrangement,
    pub witness: Option<MinorWitness>,
    pub params: serde_json::Value,
}

pub fn generate(spec: &FamilySpec, tol: Tolerance) -> Result<Generated, GenError> {
    spec.check()?;
    let n = spec.size;
    let plain = |arrangement: Arrangement| Generated {
        arrangement,
        witness: None,
        params: json!({ "n": n }),
    };
    Ok(match spec.family {
        Family::PairRows => plain(gen_pair_rows(n)?),
        Family::TriangularLattice => plain(gen_triangular_lattice(n)?),
        Family::HyperbolicStack => plain(gen_hyperbolic_stack(n)?),
        Family::Flower => plain(gen_flower()),
        Family::ChainGridKn => {
            let (arrangement, witness) = gen_chain_grid_kn(n)?;
            Generated {
                arrangement,
                witness: Some(witness),
                params: json!({ "k": n }),
            }
        }
        Family::Random => Generated {
            arrangement: gen_random(n, spec.seed, tol),
            witness: None,
            params: json!({ "n": n, "seed": spec.seed }),
        },
    })
}

fn exact(circles: Vec<Circle>) -> Result<Arrangement, GenError> {
    Ok(validate(circles, Tolerance::default())?)
}

/// `n / 2` orthogonal unit pairs, six units apart.
pub fn gen_pair_rows(n: usize) -> Result<Arrangement, GenError> {
    FamilySpec::new(Family::PairRows, n).check()?;
    let circles = (0..n / 2)
        .flat_map(|i| {
            let x = 6.0 * i as f64;
            [Circle::at(x, 0.0, 1.0), Circle::at(x + SQRT_2, 0.0, 1.0)]
        })
        .collect();
    exact(circles)
}

/// Axial coordinates of a hexagonal spiral: the origin, then rings of
/// increasing radius.
fn hex_spiral(n: usize) -> Vec<(i64, i64)> {
    const STEPS: [(i64, i64); 6] = [(-1, 1), (-1, 0), (0, -1), (1, -1), (1, 0), (0, 1)];
    let mut cells = vec![(0, 0)];
    let mut ring = 1;
    while cells.len() < n {
        let (mut q, mut r) = (ring, 0);
        for (dq, dr) in STEPS {
            for _ in 0..ring {
                cells.push((q, r));
                q += dq;
                r += dr;
            }
        }
        ring += 1;
    }
    cells.truncate(n);
    cells
}

/// Unit circles on a triangular lattice of spacing `√2`, filled in spiral
/// order from the origin.
pub fn gen_triangular_lattice(n: usize) -> Result<Arrangement, GenError> {
    FamilySpec::new(Family::TriangularLattice, n).check()?;
    let e1 = Point::new(SQRT_2, 0.0);
    let e2 = Point::new(SQRT_2 / 2.0, 6f64.sqrt() / 2.0);
    let circles = hex_spiral(n)
        .into_iter()
        .map(|(q, r)| Circle {
            center: q as f64 * e1 + r as f64 * e2,
            radius: 1.0,
        })
        .collect();
    exact(circles)
}

/// Two orthogonal circles through the foci `(±1, 0)` and a nested stack of
/// `n - 2` circles orthogonal to both.
pub fn gen_hyperbolic_stack(n: usize) -> Result<Arrangement, GenError> {
    FamilySpec::new(Family::HyperbolicStack, n).check()?;
    let m = n - 2;
    let step = (5.0 / m as f64).min(0.25);
    let mut circles = vec![Circle::at(0.0, 1.0, SQRT_2), Circle::at(0.0, -1.0, SQRT_2)];
    circles.extend((1..=m).map(|k| {
        let u = k as f64 * step;
        Circle::at(u.cosh(), 0.0, u.sinh())
    }));
    exact(circles)
}

/// A unit circle surrounded by six unit petals at distance `√2`.
pub fn gen_flower() -> Arrangement {
    let mut circles = vec![Circle::at(0.0, 0.0, 1.0)];
    circles.extend((0..6).map(|i| Circle {
        center: Point::from_polar(SQRT_2, PI / 3.0 * i as f64),
        radius: 1.0,
    }));
    exact(circles).expect("flower is orthogonal by construction")
}

/// Builder for the chain grid, in grid units of `√2`.
struct ChainGrid {
    /// `(x, y, squared radius) -> chain`.
    sites: BTreeMap<(i64, i64, u8), usize>,
}

impl ChainGrid {
    const BIG: u8 = 7;

    fn put(&mut self, x: i64, y: i64, radius_sq: u8, chain: usize) {
        let previous = self.sites.insert((x, y, radius_sq), chain);
        debug_assert!(previous.is_none(), "site ({x},{y}) used twice");
    }
}

/// `k` chains of circles along rectilinear grid paths, each pair of chains
/// crossing once, together with the partition by chain.
///
/// Chain `i` runs down column `4i` to its corner at row `-4i` and then right
/// along that row. Corners and crossings carry a circle of radius `√7`; a
/// crossing one belongs to the horizontal chain, and the vertical chain
/// passes through its interior, concentric at the middle, with its two
/// ports (two units away) orthogonal to it.
pub fn gen_chain_grid_kn(k: usize) -> Result<(Arrangement, MinorWitness), GenError> {
    FamilySpec::new(Family::ChainGridKn, k).check()?;
    let k = k as i64;
    let top = 2;
    let mut grid = ChainGrid { sites: BTreeMap::new() };
    for i in 0..k {
        let chain = i as usize;
        let row = -4 * i;
        for j in i..k {
            grid.put(4 * j, row, ChainGrid::BIG, chain);
            grid.put(4 * j + 2, row, 1, chain);
        }
        // vertical run down to the corner, skipping the site just above it
        for y in (row + 2..=top).rev() {
            grid.put(4 * i, y, 1, chain);
        }
    }
    let mut circles = Vec::with_capacity(grid.sites.len());
    let mut partition = Vec::with_capacity(grid.sites.len());
    for (&(gx, gy, r2), &chain) in &grid.sites {
        circles.push(Circle::at(SQRT_2 * gx as f64, SQRT_2 * gy as f64, f64::from(r2).sqrt()));
        partition.push(Some(chain));
    }
    let arr = exact(circles)?;
    Ok((
        arr,
        MinorWitness {
            partition,
            target: k as usize,
        },
    ))
}

#[derive(Debug, Clone, Copy)]
enum Placement {
    Orthogonal1,
    Orthogonal2,
    Orthogonal3,
    Free,
}

struct Sampler<'a> {
    rng: ChaCha8Rng,
    tol: &'a Tolerance,
    strict: Tolerance,
    circles: Vec<Circle>,
    vertices: Vec<Point>,
}

impl Sampler<'_> {
    const RETRIES: usize = 64;
    /// Relative clearance kept between a crossing and any third circle.
    const VERTEX_MARGIN: f64 = 1e-6;

    fn pick(&mut self) -> Circle {
        self.circles[self.rng.gen_range(0..self.circles.len())]
    }

    fn radius_like(&mut self, c: &Circle) -> f64 {
        c.radius * self.rng.gen_range(0.25..1.6)
    }

    /// Circle centered at `x` orthogonal to every circle with power `power` there.
    fn from_power(x: Point, power: f64) -> Option<Circle> {
        (power > 0.0).then(|| Circle::new(x, power.sqrt()).ok()).flatten()
    }

    fn propose(&mut self, mode: Placement) -> Option<Circle> {
        match mode {
            Placement::Orthogonal1 => {
                let a = self.pick();
                let r = self.radius_like(&a);
                let phi = self.rng.gen_range(0.0..TAU);
                Circle::new(a.center + Point::from_polar(a.radius.hypot(r), phi), r).ok()
            }
            Placement::Orthogonal2 => {
                let (a, b) = (self.pick(), self.pick());
                let dir = b.center - a.center;
                let d = dir.norm();
                if d == 0.0 {
                    return None;
                }
                let u = (1.0 / d) * dir;
                let foot = (d * d + a.radius * a.radius - b.radius * b.radius) / (2.0 * d);
                let spread = a.radius.max(b.radius) * 3.0;
                let x = a.center + foot * u + self.rng.gen_range(-spread..spread) * u.perp();
                Self::from_power(x, (x - a.center).norm_sq() - a.radius * a.radius)
            }
            Placement::Orthogonal3 => {
                let (a, b, c) = (self.pick(), self.pick(), self.pick());
                // radical center: equal power with respect to all three
                let (p, q) = (b.center - a.center, c.center - a.center);
                let det = 2.0 * p.cross(q);
                if det.abs() < 1e-9 * p.norm_sq().max(q.norm_sq()) {
                    return None;
                }
                let pa = a.center.norm_sq() - a.radius * a.radius;
                let rhs1 = b.center.norm_sq() - b.radius * b.radius - pa;
                let rhs2 = c.center.norm_sq() - c.radius * c.radius - pa;
                let x = Point::new((rhs1 * q.y - rhs2 * p.y) / det, (p.x * rhs2 - q.x * rhs1) / det);
                Self::from_power(x, (x - a.center).norm_sq() - a.radius * a.radius)
            }
            Placement::Free => {
                let a = self.pick();
                let r = self.radius_like(&a);
                let reach = 3.0 * (a.radius + r);
                let offset = Point::new(self.rng.gen_range(-reach..reach), self.rng.gen_range(-reach..reach));
                Circle::new(a.center + offset, r).ok()
            }
        }
    }

    /// Crossing points of `cand` with existing circles, if the candidate is
    /// admissible with margin.
    fn admit(&self, cand: &Circle) -> Option<Vec<Point>> {
        if !cand.center.is_finite() || !cand.radius.is_finite() {
            return None;
        }
        let mut fresh = Vec::new();
        let mut partners = Vec::new();
        for (idx, c) in self.circles.iter().enumerate() {
            let class = classify_pair(c, cand, self.tol);
            if !class.is_admissible() || class == PairClass::Concentric || class != classify_pair(c, cand, &self.strict)
            {
                return None;
            }
            if class == PairClass::Orthogonal {
                let pts = intersection_points(c, cand, self.tol).ok().flatten()?;
                fresh.extend(pts);
                partners.push(idx);
            }
        }
        let off = |p: Point, c: &Circle| (p.dist(c.center) - c.radius).abs() > Self::VERTEX_MARGIN * c.radius;
        if !self.vertices.iter().all(|&v| off(v, cand)) {
            return None;
        }
        for (k, pair) in fresh.chunks(2).enumerate() {
            for &p in pair {
                let clear = self
                    .circles
                    .iter()
                    .enumerate()
                    .all(|(idx, c)| idx == partners[k] || off(p, c));
                if !clear {
                    return None;
                }
            }
        }
        Some(fresh)
    }

    fn fallback(&self) -> Circle {
        let right = self
            .circles
            .iter()
            .map(|c| c.center.x + c.radius)
            .fold(f64::NEG_INFINITY, f64::max);
        Circle::at(right + 10.0, 0.0, 1.0)
    }

    fn grow(&mut self) {
        for _ in 0..Self::RETRIES {
            let mode = match self.rng.gen_range(0..10) {
                0..=3 => Placement::Orthogonal1,
                4..=6 => Placement::Orthogonal2,
                7 => Placement::Orthogonal3,
                _ => Placement::Free,
            };
            if let Some(cand) = self.propose(mode) {
                if let Some(points) = self.admit(&cand) {
                    self.circles.push(cand);
                    self.vertices.extend(points);
                    return;
                }
            }
        }
        let c = self.fallback();
        self.circles.push(c);
    }
}

/// Random valid arrangement of `n` circles, reproducible from `seed`.
///
/// Every pair classifies identically under `tol` and under a tenfold wider
/// predicate band, and no crossing lies near a third circle.
pub fn gen_random(n: usize, seed: u64, tol: Tolerance) -> Arrangement {
    let mut s = Sampler {
        rng: ChaCha8Rng::seed_from_u64(seed),
        tol: &tol,
        strict: tol.widened(10.0),
        circles: Vec::with_capacity(n),
        vertices: Vec::new(),
    };
    let r0 = s.rng.gen_range(0.5..2.0);
    s.circles.push(Circle::at(0.0, 0.0, r0));
    while s.circles.len() < n {
        s.grow();
    }
    validate(s.circles, tol).expect("sampler only admits valid circles")
}
