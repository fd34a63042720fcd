//! Planar domains, disc supports, similarity maps and the node/support
//! generators used to build unisolvent configurations.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::basis::basis_size;
use crate::error::{Error, Result};

/// Absolute slack allowed when checking that a disc lies inside its domain.
pub const CONTAINMENT_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct Point2 {
    pub x: f64,
    pub y: f64,
}

impl Point2 {
    pub const ORIGIN: Point2 = Point2 { x: 0.0, y: 0.0 };

    pub const fn new(x: f64, y: f64) -> Self {
        Self { x, y }
    }

    pub fn norm(self) -> f64 {
        self.x.hypot(self.y)
    }

    pub fn dist(self, other: Point2) -> f64 {
        (self.x - other.x).hypot(self.y - other.y)
    }

    pub fn scale(self, s: f64) -> Point2 {
        Point2::new(s * self.x, s * self.y)
    }

    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }
}

/// A closed disc `B(center, radius)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "DiscRecord", into = "DiscRecord")]
pub struct DiscSupport {
    center: Point2,
    radius: f64,
}

#[derive(Serialize, Deserialize)]
struct DiscRecord {
    cx: f64,
    cy: f64,
    r: f64,
}

impl TryFrom<DiscRecord> for DiscSupport {
    type Error = Error;

    fn try_from(rec: DiscRecord) -> Result<Self> {
        DiscSupport::new(Point2::new(rec.cx, rec.cy), rec.r)
    }
}

impl From<DiscSupport> for DiscRecord {
    fn from(d: DiscSupport) -> Self {
        DiscRecord { cx: d.center.x, cy: d.center.y, r: d.radius }
    }
}

impl DiscSupport {
    pub fn new(center: Point2, radius: f64) -> Result<Self> {
        if !center.is_finite() {
            return Err(Error::NonFinitePoint(center.x, center.y));
        }
        if !(radius.is_finite() && radius > 0.0) {
            return Err(Error::InvalidRadius(radius));
        }
        Ok(Self { center, radius })
    }

    pub fn center(&self) -> Point2 {
        self.center
    }

    pub fn radius(&self) -> f64 {
        self.radius
    }

    /// Lebesgue measure `πr²`.
    pub fn measure(&self) -> f64 {
        PI * self.radius * self.radius
    }

    pub fn is_disjoint_from(&self, other: &DiscSupport) -> bool {
        self.center.dist(other.center) > self.radius + other.radius
    }
}

/// The reference domain Ω. Similarity images of the unit disc stay discs.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum Domain {
    #[default]
    UnitDisc,
    Disc {
        cx: f64,
        cy: f64,
        r: f64,
    },
}

impl Domain {
    pub fn center(&self) -> Point2 {
        match *self {
            Domain::UnitDisc => Point2::ORIGIN,
            Domain::Disc { cx, cy, .. } => Point2::new(cx, cy),
        }
    }

    pub fn radius(&self) -> f64 {
        match *self {
            Domain::UnitDisc => 1.0,
            Domain::Disc { r, .. } => r,
        }
    }

    pub fn contains_point(&self, p: Point2) -> bool {
        p.dist(self.center()) <= self.radius() + CONTAINMENT_TOL
    }

    pub fn contains_disc(&self, disc: &DiscSupport) -> bool {
        disc.center.dist(self.center()) + disc.radius <= self.radius() + CONTAINMENT_TOL
    }
}

/// An ordered collection of disc supports inside a domain.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "SupportSetRecord", into = "SupportSetRecord")]
pub struct SupportSet {
    domain: Domain,
    supports: Vec<DiscSupport>,
}

#[derive(Serialize, Deserialize)]
struct SupportSetRecord {
    domain: Domain,
    supports: Vec<DiscSupport>,
}

impl TryFrom<SupportSetRecord> for SupportSet {
    type Error = Error;

    fn try_from(rec: SupportSetRecord) -> Result<Self> {
        SupportSet::new(rec.domain, rec.supports)
    }
}

impl From<SupportSet> for SupportSetRecord {
    fn from(s: SupportSet) -> Self {
        SupportSetRecord { domain: s.domain, supports: s.supports }
    }
}

impl SupportSet {
    /// Validates containment of every disc. An empty list is accepted so
    /// that generators can return "no supports" without an error.
    pub fn new(domain: Domain, supports: Vec<DiscSupport>) -> Result<Self> {
        if let Some(bad) = supports.iter().find(|d| !domain.contains_disc(d)) {
            return Err(Error::Containment { cx: bad.center.x, cy: bad.center.y, r: bad.radius });
        }
        Ok(Self { domain, supports })
    }

    pub fn unit_disc(supports: Vec<DiscSupport>) -> Result<Self> {
        Self::new(Domain::UnitDisc, supports)
    }

    pub fn domain(&self) -> Domain {
        self.domain
    }

    pub fn supports(&self) -> &[DiscSupport] {
        &self.supports
    }

    pub fn len(&self) -> usize {
        self.supports.len()
    }

    pub fn is_empty(&self) -> bool {
        self.supports.is_empty()
    }

    pub fn measures(&self) -> Vec<f64> {
        self.supports.iter().map(DiscSupport::measure).collect()
    }

    pub fn centers(&self) -> Vec<Point2> {
        self.supports.iter().map(DiscSupport::center).collect()
    }

    pub fn is_pairwise_disjoint(&self) -> bool {
        let s = &self.supports;
        (0..s.len()).all(|i| (i + 1..s.len()).all(|j| s[i].is_disjoint_from(&s[j])))
    }
}

/// `x ↦ A x + b` restricted, when applied to supports, to similarities.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AffineMap2 {
    linear: [[f64; 2]; 2],
    shift: [f64; 2],
}

impl AffineMap2 {
    pub fn new(linear: [[f64; 2]; 2], shift: [f64; 2]) -> Result<Self> {
        let det = linear[0][0] * linear[1][1] - linear[0][1] * linear[1][0];
        if !(det.abs() > 1e-14) {
            return Err(Error::DegenerateMap(det.abs()));
        }
        Ok(Self { linear, shift })
    }

    pub fn identity() -> Self {
        Self { linear: [[1.0, 0.0], [0.0, 1.0]], shift: [0.0, 0.0] }
    }

    pub fn rotation(angle: f64) -> Self {
        let (s, c) = angle.sin_cos();
        Self { linear: [[c, -s], [s, c]], shift: [0.0, 0.0] }
    }

    pub fn scaling(factor: f64) -> Result<Self> {
        Self::new([[factor, 0.0], [0.0, factor]], [0.0, 0.0])
    }

    pub fn then_shift(mut self, bx: f64, by: f64) -> Self {
        self.shift = [self.shift[0] + bx, self.shift[1] + by];
        self
    }

    pub fn det(&self) -> f64 {
        let a = &self.linear;
        a[0][0] * a[1][1] - a[0][1] * a[1][0]
    }

    pub fn apply(&self, p: Point2) -> Point2 {
        let a = &self.linear;
        Point2::new(a[0][0] * p.x + a[0][1] * p.y + self.shift[0], a[1][0] * p.x + a[1][1] * p.y + self.shift[1])
    }

    /// Scale factor `s` when `A = s·Q` with `Q` orthogonal.
    pub fn similarity_scale(&self) -> Option<f64> {
        let a = &self.linear;
        let c0 = a[0][0] * a[0][0] + a[1][0] * a[1][0];
        let c1 = a[0][1] * a[0][1] + a[1][1] * a[1][1];
        let cross = a[0][0] * a[0][1] + a[1][0] * a[1][1];
        let scale2 = 0.5 * (c0 + c1);
        let tol = 1e-12 * scale2;
        ((c0 - c1).abs() <= tol && cross.abs() <= tol && scale2 > 0.0).then(|| scale2.sqrt())
    }
}

/// Radii of the orbits `{|x| = r}` and of the balls placed on them.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OrbitSchedule {
    pub orbit_radii: Vec<f64>,
    pub ball_radii: Vec<f64>,
    pub center_ball_radius: Option<f64>,
    /// Per-orbit angular offset of the first center; zero when absent.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub angle_offsets: Option<Vec<f64>>,
}

impl OrbitSchedule {
    pub fn new(orbit_radii: Vec<f64>, ball_radii: Vec<f64>, center_ball_radius: Option<f64>) -> Result<Self> {
        let s = Self { orbit_radii, ball_radii, center_ball_radius, angle_offsets: None };
        s.validate()?;
        Ok(s)
    }

    pub fn with_offsets(mut self, offsets: Vec<f64>) -> Result<Self> {
        self.angle_offsets = Some(offsets);
        self.validate()?;
        Ok(self)
    }

    fn validate(&self) -> Result<()> {
        if self.orbit_radii.len() != self.ball_radii.len() {
            return Err(Error::Schedule(format!(
                "{} orbit radii but {} ball radii",
                self.orbit_radii.len(),
                self.ball_radii.len()
            )));
        }
        if let Some(off) = &self.angle_offsets {
            if off.len() != self.orbit_radii.len() {
                return Err(Error::Schedule(format!(
                    "{} angle offsets for {} orbits",
                    off.len(),
                    self.orbit_radii.len()
                )));
            }
        }
        for (i, &r) in self.orbit_radii.iter().enumerate() {
            if !(r > 0.0 && r < 1.0) {
                return Err(Error::Schedule(format!("orbit radius {r} outside (0, 1)")));
            }
            if self.orbit_radii[..i].contains(&r) {
                return Err(Error::DuplicateOrbitRadius(r));
            }
        }
        for &r in self.ball_radii.iter().chain(self.center_ball_radius.iter()) {
            if !(r.is_finite() && r > 0.0) {
                return Err(Error::InvalidRadius(r));
            }
        }
        Ok(())
    }

    /// Chebyshev-type orbits (the nonnegative Chebyshev–Lobatto abscissae
    /// used as radii) with one common ball radius equal to `ratio` times the
    /// minimal center separation, contracted so every ball fits in the disc.
    pub fn chebyshev(d: usize, ratio: f64) -> Result<Self> {
        let stages = d / 2 + 1;
        let circle_stages = d.div_ceil(2);
        let denom = if d.is_multiple_of(2) { 2 * (stages - 1) } else { 2 * stages };
        let unit_radii: Vec<f64> = (0..circle_stages).map(|j| (j as f64 * PI / denom as f64).cos()).collect();
        let mut nodes = Vec::with_capacity(basis_size(d));
        for (j, &r) in unit_radii.iter().enumerate() {
            let count = 2 * (d - 2 * j) + 1;
            nodes.extend(circle_points(r, count, 0.0));
        }
        if d.is_multiple_of(2) {
            nodes.push(Point2::ORIGIN);
        }
        let (scale, radius) = contraction_for(&nodes, ratio);
        Self::new(
            unit_radii.iter().map(|r| r * scale).collect(),
            vec![radius; circle_stages],
            (d.is_multiple_of(2)).then_some(radius),
        )
    }
}

fn circle_points(radius: f64, count: usize, offset: f64) -> impl Iterator<Item = Point2> {
    (0..count).map(move |k| {
        let t = 2.0 * PI * k as f64 / count as f64 + offset;
        Point2::new(radius * t.cos(), radius * t.sin())
    })
}

/// Radical inverse of `index` in `base`.
fn radical_inverse(mut index: u64, base: u64) -> f64 {
    let inv = 1.0 / base as f64;
    let mut f = inv;
    let mut acc = 0.0;
    while index > 0 {
        acc += f * (index % base) as f64;
        index /= base;
        f *= inv;
    }
    acc
}

/// First `count` points of the base-(2, 3) Halton sequence, starting at
/// index `skip + 1`, mapped to `[-1, 1]²` and kept only if strictly inside
/// the unit disc.
pub fn halton_points(count: usize, skip: u64) -> Vec<Point2> {
    let mut out = Vec::with_capacity(count);
    let mut index = skip;
    while out.len() < count {
        index += 1;
        let p = Point2::new(2.0 * radical_inverse(index, 2) - 1.0, 2.0 * radical_inverse(index, 3) - 1.0);
        if p.x * p.x + p.y * p.y < 1.0 {
            out.push(p);
        }
    }
    out
}

/// The Bojanov–Xu Chebyshev-type grid on concentric circles.
///
/// For `d = 2m` there are `m + 1` circles of radius `cos(kπ/(d+1))` carrying
/// `d + 1` points each; for `d = 2m - 1` there are `m` circles of radius
/// `cos(kπ/(d+1))` carrying `d + 2` points each. Alternate circles are
/// rotated by half an angular step. Outer points lie on the unit circle.
pub fn bojanov_xu_points(d: usize) -> Vec<Point2> {
    let (circles, per_circle) = if d.is_multiple_of(2) { (d / 2 + 1, d + 1) } else { (d.div_ceil(2), d + 2) };
    let step = PI / per_circle as f64;
    let mut out = Vec::with_capacity(basis_size(d));
    for k in 0..circles {
        let r = (k as f64 * PI / (d + 1) as f64).cos();
        let offset = if k % 2 == 1 { step } else { 0.0 };
        out.extend((0..per_circle).map(|mu| {
            let t = 2.0 * mu as f64 * step + offset;
            Point2::new(r * t.cos(), r * t.sin())
        }));
    }
    debug_assert_eq!(out.len(), basis_size(d));
    out
}

/// Smallest pairwise distance, or `None` with fewer than two points.
pub fn min_separation(points: &[Point2]) -> Option<f64> {
    let mut best: Option<f64> = None;
    for i in 0..points.len() {
        for j in i + 1..points.len() {
            let d = points[i].dist(points[j]);
            best = Some(best.map_or(d, |b: f64| b.min(d)));
        }
    }
    best
}

/// Contraction `s` and disc radius `ρ = ratio · s · δ` (δ the minimal
/// separation of `nodes`) such that discs of radius `ρ` at `s·nodes` fit in
/// the unit disc whenever `|node| ≤ 1`.
fn contraction_for(nodes: &[Point2], ratio: f64) -> (f64, f64) {
    let sep = min_separation(nodes).unwrap_or(1.0);
    let reach = nodes.iter().map(|p| p.norm()).fold(0.0, f64::max);
    let scale = 1.0 / (reach + ratio * sep).max(1.0);
    (scale, ratio * scale * sep)
}

/// Equal-radius discs at the given nodes, after a uniform contraction
/// toward the origin when needed for containment. The radius is `ratio`
/// times the minimal separation of the contracted nodes, so `ratio < 0.5`
/// gives pairwise disjoint discs. Returns the set and the radius used.
pub fn fitted_discs(nodes: &[Point2], ratio: f64) -> Result<(SupportSet, f64)> {
    let (scale, radius) = contraction_for(nodes, ratio);
    let centers: Vec<Point2> = nodes.iter().map(|p| p.scale(scale)).collect();
    Ok((translated_supports(&centers, radius)?, radius))
}

/// Discs with centers on orbits of decreasing residual degree.
///
/// Stage `j` handles residual degree `d_j = d - 2j`, placing `2 d_j + 1`
/// equal discs on the circle of radius `orbit_radii[j]`. When the residual
/// degree reaches zero one more disc is placed at the origin.
pub fn orbit_supports(d: usize, schedule: &OrbitSchedule) -> Result<SupportSet> {
    schedule.validate()?;
    let circle_stages = d.div_ceil(2);
    if schedule.orbit_radii.len() < circle_stages {
        return Err(Error::Schedule(format!(
            "degree {d} needs {circle_stages} orbits, schedule has {}",
            schedule.orbit_radii.len()
        )));
    }
    let mut discs = Vec::with_capacity(basis_size(d));
    for j in 0..circle_stages {
        let residual = d - 2 * j;
        let count = restricted_count(residual);
        let offset = schedule.angle_offsets.as_ref().map_or(0.0, |o| o[j]);
        for c in circle_points(schedule.orbit_radii[j], count, offset) {
            discs.push(DiscSupport::new(c, schedule.ball_radii[j])?);
        }
    }
    if d.is_multiple_of(2) {
        let r = schedule
            .center_ball_radius
            .ok_or_else(|| Error::Schedule("even degree requires a center ball radius".into()))?;
        discs.push(DiscSupport::new(Point2::ORIGIN, r)?);
    }
    SupportSet::unit_disc(discs)
}

fn restricted_count(residual: usize) -> usize {
    crate::basis::restricted_dim(residual, 2)
}

/// A disc of the given radius at every node.
pub fn translated_supports(nodes: &[Point2], radius: f64) -> Result<SupportSet> {
    let discs = nodes.iter().map(|&c| DiscSupport::new(c, radius)).collect::<Result<Vec<_>>>()?;
    SupportSet::unit_disc(discs)
}

/// Image of a support set under a similarity map; the domain is mapped too.
pub fn apply_affine(set: &SupportSet, map: &AffineMap2) -> Result<SupportSet> {
    let scale = map.similarity_scale().ok_or(Error::NotSimilarity)?;
    let domain_center = map.apply(set.domain().center());
    let domain = Domain::Disc { cx: domain_center.x, cy: domain_center.y, r: scale * set.domain().radius() };
    let discs = set
        .supports()
        .iter()
        .map(|d| DiscSupport::new(map.apply(d.center()), scale * d.radius()))
        .collect::<Result<Vec<_>>>()?;
    SupportSet::new(domain, discs)
}
