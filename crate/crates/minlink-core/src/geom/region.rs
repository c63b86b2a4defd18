//! Convex reachable regions: a base point or segment swept by a cone of
//! directions.
//!
//! Every region produced by the solver is of this form: an interval on a
//! segment (the base) Minkowski-summed with zero or more closed rays. The sum
//! of rays is a convex cone, and the whole region is always the intersection
//! of at most four closed half-planes. Sweeping (`minkowski_ray`) is exact
//! cone arithmetic on primitive integer directions; membership and clipping
//! go through the derived half-planes.

use alloc::vec::Vec;

use num_traits::{Signed, Zero};

use super::{HalfPlane, ParamRange, Point, Rational, SegmentGeom, clip_range, rat, Direction, Vector};

/// Convex cone of sweep directions accumulated by repeated ray sums.
///
/// `Wedge(u, v)` keeps `cross(u, v) > 0` and spans strictly less than a half
/// turn; wider spans are promoted to `Half` (inward normal stored) or `Full`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub(crate) enum Cone {
    Zero,
    Ray(Direction),
    Wedge(Direction, Direction),
    Line(Direction),
    Half(Direction),
    Full,
}

impl Cone {
    /// The cone swept additionally by the closed ray in direction `d`.
    pub(crate) fn sweep(self, d: Direction) -> Cone {
        match self {
            Cone::Zero => Cone::Ray(d),
            Cone::Ray(e) => {
                if d == e {
                    Cone::Ray(e)
                } else if d == e.opposite() {
                    Cone::Line(canonical_line(e))
                } else if e.cross(&d) > 0 {
                    Cone::Wedge(e, d)
                } else {
                    Cone::Wedge(d, e)
                }
            }
            Cone::Wedge(u, v) => {
                let cu = u.cross(&d);
                let cv = d.cross(&v);
                if cu >= 0 && cv >= 0 {
                    Cone::Wedge(u, v)
                } else if cu > 0 {
                    Cone::Wedge(u, d)
                } else if cu == 0 {
                    // d is opposite to u; the span reaches a half turn.
                    Cone::Half(perp_towards(&u, &v))
                } else if cv > 0 {
                    Cone::Wedge(d, v)
                } else if cv == 0 {
                    Cone::Half(perp_towards(&v, &u))
                } else {
                    // d points strictly into the reflex complement: the three
                    // generators no longer fit in any closed half-plane.
                    Cone::Full
                }
            }
            Cone::Line(e) => {
                if e.cross(&d) == 0 {
                    Cone::Line(e)
                } else {
                    Cone::Half(perp_towards(&e, &d))
                }
            }
            Cone::Half(n) => {
                if n.dot(&d) >= 0 {
                    Cone::Half(n)
                } else {
                    Cone::Full
                }
            }
            Cone::Full => Cone::Full,
        }
    }
}

/// Perpendicular of `base` pointing to the side where `towards` lies.
fn perp_towards(base: &Direction, towards: &Direction) -> Direction {
    let p = base.perp_ccw();
    if p.dot(towards) > 0 {
        p
    } else {
        base.perp_cw()
    }
}

/// Canonical representative for an undirected line direction.
fn canonical_line(e: Direction) -> Direction {
    if e.dy() > 0 || (e.dy() == 0 && e.dx() > 0) {
        e
    } else {
        e.opposite()
    }
}

/// Dimensionality class of a region.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Degeneracy {
    FullDim,
    LineLike,
    RayLike,
    PointLike,
}

/// A nonempty closed convex region: base segment (or point) plus sweep cone,
/// realized as the intersection of at most four closed half-planes.
#[derive(Clone, Debug)]
pub struct ConvexRegion {
    base_a: Point,
    base_b: Point,
    cone: Cone,
    halfplanes: Vec<HalfPlane>,
    degeneracy: Degeneracy,
}

impl ConvexRegion {
    /// The single point `p`.
    pub fn point(p: Point) -> Self {
        ConvexRegion::from_parts(p.clone(), p, Cone::Zero)
    }

    /// The closed segment from `a` to `b` (a point when `a == b`).
    pub fn segment(a: Point, b: Point) -> Self {
        ConvexRegion::from_parts(a, b, Cone::Zero)
    }

    /// The closed ray from `origin` in direction `d`.
    pub fn ray(origin: Point, d: Direction) -> Self {
        ConvexRegion::from_parts(origin.clone(), origin, Cone::Ray(d))
    }

    /// Base sub-segment of `seg` spanned by `range`, not yet swept.
    pub fn from_span(seg: &SegmentGeom, range: &ParamRange) -> Self {
        ConvexRegion::from_parts(seg.point_at(&range.lo), seg.point_at(&range.hi), Cone::Zero)
    }

    pub(crate) fn from_parts(base_a: Point, base_b: Point, cone: Cone) -> Self {
        let (halfplanes, degeneracy) = build_halfplanes(&base_a, &base_b, &cone);
        ConvexRegion {
            base_a,
            base_b,
            cone,
            halfplanes,
            degeneracy,
        }
    }

    /// Exact Minkowski sum with the closed ray in direction `d`.
    ///
    /// Sweeping a region along its own cone is idempotent; sweeping a
    /// semi-slab against its sweep direction widens it to the full slab.
    pub fn minkowski_ray(&self, d: &Direction) -> ConvexRegion {
        ConvexRegion::from_parts(self.base_a.clone(), self.base_b.clone(), self.cone.sweep(*d))
    }

    /// The bounding half-planes (at most four, canonical, deduplicated).
    pub fn halfplanes(&self) -> &[HalfPlane] {
        &self.halfplanes
    }

    pub fn degeneracy(&self) -> Degeneracy {
        self.degeneracy
    }

    pub fn contains(&self, p: &Point) -> bool {
        self.halfplanes.iter().all(|hp| hp.contains(p))
    }

    /// Exact closed parameter range of `seg` inside the region, if any.
    ///
    /// Degenerate (line-like, ray-like) regions are handled by the same
    /// half-plane arithmetic: their opposed boundary pair pins the carrier.
    /// A degenerate segment clips to `[0, 0]` when its point is inside.
    pub fn clip_segment(&self, seg: &SegmentGeom) -> Option<ParamRange> {
        let mut range = if seg.is_point() {
            ParamRange::point(rat(0))
        } else {
            ParamRange::full()
        };
        for hp in &self.halfplanes {
            range = clip_range(hp, seg, range)?;
        }
        Some(range)
    }

    /// Exact parameter interval of the closed ray `origin + t*d`, `t >= 0`,
    /// inside the region: `(lo, hi)` with `hi = None` when unbounded.
    pub fn clip_ray(
        &self,
        origin: &Point,
        d: &Direction,
    ) -> Option<(Rational, Option<Rational>)> {
        let mut lo = rat(0);
        let mut hi: Option<Rational> = None;
        for hp in &self.halfplanes {
            let g0 = hp.eval(origin);
            let slope = hp.eval(&origin.translate(&d.as_vector())) - &g0;
            if slope.is_zero() {
                if g0.is_negative() {
                    return None;
                }
            } else {
                let t = -(&g0 / &slope);
                if slope.is_positive() {
                    if t > lo {
                        lo = t;
                    }
                } else {
                    match &hi {
                        Some(h) if &t >= h => {}
                        _ => hi = Some(t),
                    }
                }
            }
        }
        match &hi {
            Some(h) if h < &lo => None,
            _ => Some((lo, hi)),
        }
    }

    /// The point of the region on the ray from `origin` in direction `d`
    /// closest to `origin`, if the ray meets the region.
    pub fn first_ray_point(&self, origin: &Point, d: &Direction) -> Option<Point> {
        let (lo, _) = self.clip_ray(origin, d)?;
        let v = d.as_vector();
        Some(origin.translate(&Vector::new(&v.x * &lo, &v.y * &lo)))
    }
}

impl PartialEq for ConvexRegion {
    /// Regions compare by their canonical half-plane set and degeneracy class.
    fn eq(&self, other: &Self) -> bool {
        if self.degeneracy != other.degeneracy {
            return false;
        }
        let mut a: Vec<_> = self.halfplanes.iter().map(HalfPlane::canonical).collect();
        let mut b: Vec<_> = other.halfplanes.iter().map(HalfPlane::canonical).collect();
        a.sort();
        b.sort();
        a == b
    }
}

impl Eq for ConvexRegion {}

/// Carve `base ⊕ cone` into half-planes and classify its dimensionality.
fn build_halfplanes(a: &Point, b: &Point, cone: &Cone) -> (Vec<HalfPlane>, Degeneracy) {
    let mut hps: Vec<HalfPlane> = Vec::with_capacity(4);
    let is_point = a == b;
    let base_dir = (!is_point).then(|| a.vector_to(b));
    let push = |hp: HalfPlane, hps: &mut Vec<HalfPlane>| {
        if !hps.contains(&hp) {
            hps.push(hp);
        }
    };

    let deg = match cone {
        Cone::Zero => {
            if let Some(v) = &base_dir {
                let n = Vector::new(-v.y.clone(), v.x.clone());
                push(HalfPlane::through_with_normal(a, &n), &mut hps);
                push(
                    HalfPlane::through_with_normal(a, &Vector::new(-n.x.clone(), -n.y.clone())),
                    &mut hps,
                );
                push(HalfPlane::through_with_normal(a, v), &mut hps);
                push(
                    HalfPlane::through_with_normal(b, &Vector::new(-v.x.clone(), -v.y.clone())),
                    &mut hps,
                );
                Degeneracy::LineLike
            } else {
                push(HalfPlane::through_with_normal(a, &Vector::new(rat(1), rat(0))), &mut hps);
                push(HalfPlane::through_with_normal(a, &Vector::new(rat(-1), rat(0))), &mut hps);
                push(HalfPlane::through_with_normal(a, &Vector::new(rat(0), rat(1))), &mut hps);
                push(HalfPlane::through_with_normal(a, &Vector::new(rat(0), rat(-1))), &mut hps);
                Degeneracy::PointLike
            }
        }
        Cone::Ray(d) => {
            let collinear = base_dir
                .as_ref()
                .map_or(true, |v| d.cross_vector(v).is_zero());
            if collinear {
                // Forward extension from the trailing endpoint.
                let start = if d.dot_point(a) <= d.dot_point(b) { a } else { b };
                let n = d.perp_ccw();
                push(HalfPlane::through(start, &n), &mut hps);
                push(HalfPlane::through(start, &n.opposite()), &mut hps);
                push(HalfPlane::through(start, d), &mut hps);
                Degeneracy::RayLike
            } else {
                let v = base_dir.as_ref().expect("non-collinear base is a segment");
                // Boundary rays through both interval endpoints.
                let p = d.perp_ccw();
                let n1 = if p.dot_vector(v).is_positive() {
                    p
                } else {
                    d.perp_cw()
                };
                push(HalfPlane::through(a, &n1), &mut hps);
                push(HalfPlane::through(b, &n1.opposite()), &mut hps);
                // Base side facing the sweep.
                let m = Vector::new(-v.y.clone(), v.x.clone());
                let m = if d.dot_vector(&m).is_positive() {
                    m
                } else {
                    Vector::new(v.y.clone(), -v.x.clone())
                };
                push(HalfPlane::through_with_normal(a, &m), &mut hps);
                Degeneracy::FullDim
            }
        }
        Cone::Wedge(u, v) => {
            let nu = perp_towards(u, v);
            let nv = perp_towards(v, u);
            push(HalfPlane::through(min_along(&nu, a, b), &nu), &mut hps);
            push(HalfPlane::through(min_along(&nv, a, b), &nv), &mut hps);
            if let Some(bd) = &base_dir {
                for m in [
                    Vector::new(-bd.y.clone(), bd.x.clone()),
                    Vector::new(bd.y.clone(), -bd.x.clone()),
                ] {
                    if !u.dot_vector(&m).is_negative() && !v.dot_vector(&m).is_negative() {
                        push(HalfPlane::through_with_normal(a, &m), &mut hps);
                        break;
                    }
                }
            }
            Degeneracy::FullDim
        }
        Cone::Line(e) => {
            let collinear = base_dir
                .as_ref()
                .map_or(true, |v| e.cross_vector(v).is_zero());
            if collinear {
                let n = e.perp_ccw();
                push(HalfPlane::through(a, &n), &mut hps);
                push(HalfPlane::through(a, &n.opposite()), &mut hps);
                Degeneracy::LineLike
            } else {
                let n = e.perp_ccw();
                push(HalfPlane::through(min_along(&n, a, b), &n), &mut hps);
                let n = n.opposite();
                push(HalfPlane::through(min_along(&n, a, b), &n), &mut hps);
                Degeneracy::FullDim
            }
        }
        Cone::Half(n) => {
            push(HalfPlane::through(min_along(n, a, b), n), &mut hps);
            Degeneracy::FullDim
        }
        Cone::Full => Degeneracy::FullDim,
    };
    (hps, deg)
}

/// Endpoint with the smaller coordinate along `n`.
fn min_along<'p>(n: &Direction, a: &'p Point, b: &'p Point) -> &'p Point {
    if n.dot_point(a) <= n.dot_point(b) {
        a
    } else {
        b
    }
}
