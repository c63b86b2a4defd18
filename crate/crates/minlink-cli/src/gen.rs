//! Deterministic random instance generation.
//!
//! A fixed seed yields a byte-identical instance document. Generated
//! instances are always valid: segments are parallel to set directions with
//! integer endpoints inside the coordinate box, consecutive segments are
//! disjoint (enforced by rejection), and the endpoints avoid every segment.

use std::fmt;

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use minlink_core::geom::{point_on_segment, segments_intersect, Point, SegmentGeom};
use minlink_core::instance::{Instance, OrientationSet};

#[derive(Clone, Debug)]
pub struct GenParams {
    pub n: usize,
    pub c_size: usize,
    pub bound: i64,
    pub seed: u64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GenError {
    OddDirectionCount(usize),
    TooFewDirections(usize),
    UnsupportedDirectionCount(usize),
    BoundTooSmall(i64),
    Exhausted,
}

impl fmt::Display for GenError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GenError::OddDirectionCount(c) => {
                write!(f, "direction count {c} is odd; sets are closed under negation")
            }
            GenError::TooFewDirections(c) => write!(f, "direction count {c} is below 4"),
            GenError::UnsupportedDirectionCount(c) => {
                write!(f, "direction count {c} exceeds the built-in table")
            }
            GenError::BoundTooSmall(b) => write!(f, "coordinate bound {b} is too small"),
            GenError::Exhausted => write!(f, "rejection sampling failed; loosen the parameters"),
        }
    }
}

/// Pairwise non-parallel primitive vectors; entry `k` and its negation give
/// the canonical direction set of size `2k + 2`.
const HALF_SET: [(i64, i64); 16] = [
    (1, 0),
    (0, 1),
    (1, 1),
    (1, -1),
    (2, 1),
    (1, 2),
    (2, -1),
    (1, -2),
    (3, 1),
    (1, 3),
    (3, -1),
    (1, -3),
    (3, 2),
    (2, 3),
    (3, -2),
    (2, -3),
];

/// The canonical direction set of even size `c_size >= 4`.
pub fn canonical_orientations(c_size: usize) -> Result<Vec<(i64, i64)>, GenError> {
    if c_size % 2 != 0 {
        return Err(GenError::OddDirectionCount(c_size));
    }
    if c_size < 4 {
        return Err(GenError::TooFewDirections(c_size));
    }
    let half = c_size / 2;
    if half > HALF_SET.len() {
        return Err(GenError::UnsupportedDirectionCount(c_size));
    }
    let mut out = Vec::with_capacity(c_size);
    for &(dx, dy) in &HALF_SET[..half] {
        out.push((dx, dy));
        out.push((-dx, -dy));
    }
    Ok(out)
}

/// Generate a valid instance and its document text.
pub fn generate_instance(params: &GenParams) -> Result<(Instance, String), GenError> {
    let raw = canonical_orientations(params.c_size)?;
    if params.bound < 4 {
        return Err(GenError::BoundTooSmall(params.bound));
    }
    let oset = OrientationSet::build(&raw).expect("canonical sets are valid");
    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
    let b = params.bound;

    let mut geoms: Vec<SegmentGeom> = Vec::with_capacity(params.n);
    let mut attempts = 0usize;
    while geoms.len() < params.n {
        attempts += 1;
        if attempts > 10_000 * (params.n + 1) {
            return Err(GenError::Exhausted);
        }
        let j = rng.gen_range(0..oset.len());
        let d = oset.dir(j);
        let reach = b / d.dx().abs().max(d.dy().abs()).max(1);
        if reach < 1 {
            continue;
        }
        let len = rng.gen_range(1..=reach.min(b / 2).max(1));
        let ax = rng.gen_range(-b..=b);
        let ay = rng.gen_range(-b..=b);
        let bx = ax + len * d.dx();
        let by = ay + len * d.dy();
        if bx.abs() > b || by.abs() > b {
            continue;
        }
        let geom = SegmentGeom::new(Point::from_ints(ax, ay), Point::from_ints(bx, by));
        if let Some(prev) = geoms.last() {
            if segments_intersect(prev, &geom) {
                continue;
            }
        }
        geoms.push(geom);
    }

    let pick_endpoint = |rng: &mut ChaCha8Rng| -> Result<Point, GenError> {
        for _ in 0..10_000 {
            let p = Point::from_ints(rng.gen_range(-b..=b), rng.gen_range(-b..=b));
            if geoms.iter().all(|g| !point_on_segment(&p, g)) {
                return Ok(p);
            }
        }
        Err(GenError::Exhausted)
    };
    let s = pick_endpoint(&mut rng)?;
    let t = pick_endpoint(&mut rng)?;

    let inst = Instance::new(oset, s, t, geoms).expect("construction is valid by sampling");
    let text = crate::format::instance_to_json(&inst);
    Ok((inst, text))
}
