//! Exact planar primitives: rational points, primitive integer directions,
//! closed half-planes, segments, and parameter ranges.
//!
//! Everything here is a value type over arbitrary-precision rationals. All
//! sets are closed: rays and half-planes include their boundary, segment
//! clips include their endpoints. Predicates return exact answers.

use core::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

mod region;

pub use region::{ConvexRegion, Degeneracy};
pub(crate) use region::Cone;

/// Exact scalar: arbitrary-precision rational, always reduced, positive denominator.
pub type Rational = num_rational::BigRational;

/// Rational from an integer.
pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Rational `n/d`.
pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum GeomError {
    /// A direction was constructed from the zero vector.
    ZeroDirection,
    /// A half-plane was constructed with a zero normal.
    ZeroNormal,
}

impl fmt::Display for GeomError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GeomError::ZeroDirection => write!(f, "direction must not be the zero vector"),
            GeomError::ZeroNormal => write!(f, "half-plane normal must not be zero"),
        }
    }
}

/// A point with exact rational coordinates.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Point {
    pub x: Rational,
    pub y: Rational,
}

impl Point {
    pub fn new(x: Rational, y: Rational) -> Self {
        Point { x, y }
    }

    pub fn from_ints(x: i64, y: i64) -> Self {
        Point::new(rat(x), rat(y))
    }

    pub fn vector_to(&self, other: &Point) -> Vector {
        Vector {
            x: &other.x - &self.x,
            y: &other.y - &self.y,
        }
    }

    pub fn translate(&self, v: &Vector) -> Point {
        Point::new(&self.x + &v.x, &self.y + &v.y)
    }

    pub fn squared_distance(&self, other: &Point) -> Rational {
        let dx = &other.x - &self.x;
        let dy = &other.y - &self.y;
        &dx * &dx + &dy * &dy
    }
}

/// A displacement with exact rational components.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Vector {
    pub x: Rational,
    pub y: Rational,
}

impl Vector {
    pub fn new(x: Rational, y: Rational) -> Self {
        Vector { x, y }
    }

    pub fn is_zero(&self) -> bool {
        self.x.is_zero() && self.y.is_zero()
    }

    pub fn cross(&self, other: &Vector) -> Rational {
        &self.x * &other.y - &self.y * &other.x
    }

    pub fn dot(&self, other: &Vector) -> Rational {
        &self.x * &other.x + &self.y * &other.y
    }
}

/// A directed orientation: a primitive integer vector. `(4,-2)` and `(2,-1)`
/// denote the same direction; `(2,-1)` and `(-2,1)` do not.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Direction {
    dx: i64,
    dy: i64,
}

impl Direction {
    /// Reduce `(dx, dy)` to the primitive vector with the same direction.
    pub fn new(dx: i64, dy: i64) -> Result<Self, GeomError> {
        if dx == 0 && dy == 0 {
            return Err(GeomError::ZeroDirection);
        }
        let g = dx.unsigned_abs().gcd(&dy.unsigned_abs()) as i64;
        Ok(Direction {
            dx: dx / g,
            dy: dy / g,
        })
    }

    pub fn dx(&self) -> i64 {
        self.dx
    }

    pub fn dy(&self) -> i64 {
        self.dy
    }

    pub fn opposite(&self) -> Direction {
        Direction {
            dx: -self.dx,
            dy: -self.dy,
        }
    }

    /// Perpendicular, rotated 90 degrees counterclockwise.
    pub fn perp_ccw(&self) -> Direction {
        Direction {
            dx: -self.dy,
            dy: self.dx,
        }
    }

    /// Perpendicular, rotated 90 degrees clockwise.
    pub fn perp_cw(&self) -> Direction {
        Direction {
            dx: self.dy,
            dy: -self.dx,
        }
    }

    pub fn cross(&self, other: &Direction) -> i128 {
        self.dx as i128 * other.dy as i128 - self.dy as i128 * other.dx as i128
    }

    pub fn dot(&self, other: &Direction) -> i128 {
        self.dx as i128 * other.dx as i128 + self.dy as i128 * other.dy as i128
    }

    pub fn cross_vector(&self, v: &Vector) -> Rational {
        rat(self.dx) * &v.y - rat(self.dy) * &v.x
    }

    pub fn dot_vector(&self, v: &Vector) -> Rational {
        rat(self.dx) * &v.x + rat(self.dy) * &v.y
    }

    /// Signed coordinate of `p` along this direction (used for picking the
    /// trailing endpoint of a collinear sweep).
    pub fn dot_point(&self, p: &Point) -> Rational {
        rat(self.dx) * &p.x + rat(self.dy) * &p.y
    }

    pub fn as_vector(&self) -> Vector {
        Vector::new(rat(self.dx), rat(self.dy))
    }

    /// True when `v` is a positive multiple of this direction.
    pub fn matches_vector(&self, v: &Vector) -> bool {
        self.cross_vector(v).is_zero() && self.dot_vector(v).is_positive()
    }
}

/// Which side of a travel direction a displacement falls on.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Side {
    Left,
    Right,
    Collinear,
}

/// Exact side classification of displacement `v` relative to travel direction
/// `d`: sign of `d.dx * v.y - d.dy * v.x`, positive meaning left.
pub fn side_of(d: &Direction, v: &Vector) -> Side {
    let c = d.cross_vector(v);
    if c.is_zero() {
        Side::Collinear
    } else if c.is_positive() {
        Side::Left
    } else {
        Side::Right
    }
}

/// Closed half-plane `{ (x, y) : a*x + b*y + c >= 0 }`.
///
/// Coefficients are kept as constructed; equality is up to a positive scale.
#[derive(Clone, Eq, Debug)]
pub struct HalfPlane {
    a: Rational,
    b: Rational,
    c: Rational,
}

impl HalfPlane {
    pub fn new(a: Rational, b: Rational, c: Rational) -> Result<Self, GeomError> {
        if a.is_zero() && b.is_zero() {
            return Err(GeomError::ZeroNormal);
        }
        Ok(HalfPlane { a, b, c })
    }

    /// Half-plane whose boundary passes through `p` with inward normal `n`.
    pub fn through(p: &Point, n: &Direction) -> HalfPlane {
        let c = -n.dot_point(p);
        HalfPlane::new(rat(n.dx()), rat(n.dy()), c).expect("direction normal is nonzero")
    }

    /// Same, with an inward normal given as a rational vector.
    pub fn through_with_normal(p: &Point, n: &Vector) -> HalfPlane {
        let c = -(&n.x * &p.x + &n.y * &p.y);
        HalfPlane::new(n.x.clone(), n.y.clone(), c).expect("normal is nonzero")
    }

    pub fn coefficients(&self) -> (&Rational, &Rational, &Rational) {
        (&self.a, &self.b, &self.c)
    }

    /// The unique positive-scale representative with coprime integer
    /// coefficients.
    pub fn canonical(&self) -> (Rational, Rational, Rational) {
        canonical_triple(self.a.clone(), self.b.clone(), self.c.clone())
    }

    pub fn eval(&self, p: &Point) -> Rational {
        &self.a * &p.x + &self.b * &p.y + &self.c
    }

    pub fn contains(&self, p: &Point) -> bool {
        !self.eval(p).is_negative()
    }

    /// Exact closed parameter sub-range of `seg` inside this half-plane.
    ///
    /// A degenerate (point) segment yields `[0, 0]` when the point is inside.
    pub fn clip_segment(&self, seg: &SegmentGeom) -> Option<ParamRange> {
        clip_range(self, seg, ParamRange::full())
    }
}

fn canonical_triple(a: Rational, b: Rational, c: Rational) -> (Rational, Rational, Rational) {
    let scale = a.denom().lcm(b.denom()).lcm(c.denom());
    let scale = Rational::from_integer(scale);
    let (a, b, c) = (a * &scale, b * &scale, c * &scale);
    let g = a.numer().gcd(b.numer()).gcd(c.numer());
    if g > BigInt::one() {
        let g = Rational::from_integer(g);
        (a / &g, b / &g, c / &g)
    } else {
        (a, b, c)
    }
}

impl PartialEq for HalfPlane {
    /// Equal as point sets: the coefficient triples agree up to a positive
    /// scalar.
    fn eq(&self, other: &Self) -> bool {
        let proportional = &self.a * &other.b == &other.a * &self.b
            && &self.a * &other.c == &other.a * &self.c
            && &self.b * &other.c == &other.b * &self.c;
        if !proportional {
            return false;
        }
        // Positive scale: the first nonzero normal component keeps its sign.
        if !self.a.is_zero() {
            self.a.is_positive() == other.a.is_positive()
        } else {
            self.b.is_positive() == other.b.is_positive()
        }
    }
}

/// Closed sub-range `[lo, hi]` of `[0, 1]` parameterizing a segment.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ParamRange {
    pub lo: Rational,
    pub hi: Rational,
}

impl ParamRange {
    pub fn new(lo: Rational, hi: Rational) -> Self {
        debug_assert!(!lo.is_negative() && lo <= hi && hi <= rat(1));
        ParamRange { lo, hi }
    }

    pub fn full() -> Self {
        ParamRange::new(rat(0), rat(1))
    }

    pub fn point(t: Rational) -> Self {
        ParamRange::new(t.clone(), t)
    }

    pub fn is_point(&self) -> bool {
        self.lo == self.hi
    }

    pub fn contains(&self, t: &Rational) -> bool {
        &self.lo <= t && t <= &self.hi
    }

    pub fn contains_range(&self, other: &ParamRange) -> bool {
        self.lo <= other.lo && other.hi <= self.hi
    }

    pub fn intersect(&self, other: &ParamRange) -> Option<ParamRange> {
        let lo = if self.lo >= other.lo { &self.lo } else { &other.lo };
        let hi = if self.hi <= other.hi { &self.hi } else { &other.hi };
        if lo <= hi {
            Some(ParamRange::new(lo.clone(), hi.clone()))
        } else {
            None
        }
    }

    /// True when the two closed ranges overlap or share an endpoint.
    pub fn touches(&self, other: &ParamRange) -> bool {
        self.lo <= other.hi && other.lo <= self.hi
    }

    /// Parameter in the range closest to `t`.
    pub fn clamp(&self, t: &Rational) -> Rational {
        if t < &self.lo {
            self.lo.clone()
        } else if t > &self.hi {
            self.hi.clone()
        } else {
            t.clone()
        }
    }
}

/// A segment between two rational points. Degenerate segments (`p == q`)
/// model the tour endpoints, which are treated as zero-length segments.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SegmentGeom {
    pub p: Point,
    pub q: Point,
}

impl SegmentGeom {
    pub fn new(p: Point, q: Point) -> Self {
        SegmentGeom { p, q }
    }

    pub fn point(p: Point) -> Self {
        SegmentGeom { q: p.clone(), p }
    }

    pub fn is_point(&self) -> bool {
        self.p == self.q
    }

    pub fn direction_vector(&self) -> Vector {
        self.p.vector_to(&self.q)
    }

    /// Point at parameter `t`, interpolating from `p` (t = 0) to `q` (t = 1).
    pub fn point_at(&self, t: &Rational) -> Point {
        Point::new(
            &self.p.x + t * (&self.q.x - &self.p.x),
            &self.p.y + t * (&self.q.y - &self.p.y),
        )
    }

    /// Parameter of `pt` on the carrier line, if `pt` lies on it. The value
    /// may fall outside `[0, 1]`. Degenerate segments yield `0` for their own
    /// point and `None` otherwise.
    pub fn param_on_carrier(&self, pt: &Point) -> Option<Rational> {
        if self.is_point() {
            return (pt == &self.p).then(|| rat(0));
        }
        let d = self.direction_vector();
        let v = self.p.vector_to(pt);
        if !d.cross(&v).is_zero() {
            return None;
        }
        // Project on the larger axis of travel for an exact division.
        if !d.x.is_zero() {
            Some(&v.x / &d.x)
        } else {
            Some(&v.y / &d.y)
        }
    }
}

/// Exact membership of `pt` in the closed segment `seg`.
pub fn point_on_segment(pt: &Point, seg: &SegmentGeom) -> bool {
    match seg.param_on_carrier(pt) {
        Some(t) => !t.is_negative() && t <= rat(1),
        None => false,
    }
}

/// Exact closed-set intersection test for two segments (degenerate allowed).
pub fn segments_intersect(a: &SegmentGeom, b: &SegmentGeom) -> bool {
    if a.is_point() {
        return point_on_segment(&a.p, b);
    }
    ConvexRegion::segment(a.p.clone(), a.q.clone())
        .clip_segment(b)
        .is_some()
}

/// Exact parameter range of `seg` covered by the closed ray from `origin` in
/// direction `d`. Collinear overlap yields the full overlap range.
pub fn ray_segment_intersection(
    origin: &Point,
    d: &Direction,
    seg: &SegmentGeom,
) -> Option<ParamRange> {
    ConvexRegion::ray(origin.clone(), *d).clip_segment(seg)
}

/// Clip helper shared by half-plane and region clipping: narrows `range` to
/// the part of `seg` satisfying `hp`.
pub(crate) fn clip_range(
    hp: &HalfPlane,
    seg: &SegmentGeom,
    range: ParamRange,
) -> Option<ParamRange> {
    let g0 = hp.eval(&seg.p);
    if seg.is_point() {
        return (!g0.is_negative()).then(|| ParamRange::point(rat(0)));
    }
    let g1 = hp.eval(&seg.q);
    let n0 = g0.is_negative();
    let n1 = g1.is_negative();
    match (n0, n1) {
        (false, false) => Some(range),
        (true, true) => None,
        _ => {
            // g is linear in t and changes sign exactly once.
            let t = &g0 / (&g0 - &g1);
            if n0 {
                range.intersect(&ParamRange::new(t, rat(1)))
            } else {
                range.intersect(&ParamRange::new(rat(0), t))
            }
        }
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}
