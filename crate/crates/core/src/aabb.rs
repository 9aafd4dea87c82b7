//! Minimal axis-aligned bounding boxes of disk intersections.

use std::fmt;
use std::ops::ControlFlow;

use serde::{Deserialize, Serialize};

use crate::enumerate::{for_each_candidate, Candidate};
use crate::error::{GeometryError, Result};
use crate::geometry::{
    boundary_poles, intersect_two_spheres, sphere_poles, Disk, DiskSystem, IntersectionKind, Point,
    Tolerance,
};

/// Closed interval `[lower, upper]`; `lower > upper` marks an inverted
/// interval, which certifies an empty intersection.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Interval {
    pub lower: f64,
    pub upper: f64,
}

impl Interval {
    pub fn new(lower: f64, upper: f64) -> Self {
        Self { lower, upper }
    }

    pub fn width(&self) -> f64 {
        self.upper - self.lower
    }

    pub fn is_inverted(&self) -> bool {
        self.lower > self.upper
    }
}

/// Product of per-axis intervals. Proper, degenerate and inverted boxes are
/// all representable.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundingBox {
    intervals: Vec<Interval>,
}

impl BoundingBox {
    pub fn new(intervals: Vec<Interval>) -> Self {
        Self { intervals }
    }

    pub fn from_bounds(lower: &[f64], upper: &[f64]) -> Self {
        assert_eq!(lower.len(), upper.len());
        Self::new(lower.iter().zip(upper).map(|(&a, &b)| Interval::new(a, b)).collect())
    }

    /// Box of a single ball.
    pub fn of_disk(disk: &Disk) -> Self {
        Self::new(
            disk.center()
                .iter()
                .map(|&c| Interval::new(c - disk.radius(), c + disk.radius()))
                .collect(),
        )
    }

    pub fn dim(&self) -> usize {
        self.intervals.len()
    }

    pub fn intervals(&self) -> &[Interval] {
        &self.intervals
    }

    pub fn interval(&self, axis: usize) -> Interval {
        self.intervals[axis]
    }

    pub fn is_inverted(&self) -> bool {
        self.intervals.iter().any(Interval::is_inverted)
    }

    pub fn is_proper(&self) -> bool {
        !self.is_inverted()
    }

    /// Proper with at least one zero-width side.
    pub fn is_degenerate(&self) -> bool {
        self.is_proper() && self.intervals.iter().any(|i| i.lower == i.upper)
    }

    pub fn inverted_axes(&self) -> Vec<usize> {
        (0..self.dim()).filter(|&q| self.intervals[q].is_inverted()).collect()
    }

    pub fn max_width(&self) -> f64 {
        self.intervals.iter().map(Interval::width).fold(f64::NEG_INFINITY, f64::max)
    }

    /// `p` lies in the box grown by `slack` on every side.
    pub fn contains(&self, p: &Point, slack: f64) -> bool {
        p.len() == self.dim()
            && self
                .intervals
                .iter()
                .zip(p.iter())
                .all(|(i, &x)| x >= i.lower - slack && x <= i.upper + slack)
    }

    pub fn is_within(&self, other: &BoundingBox, slack: f64) -> bool {
        self.dim() == other.dim()
            && self
                .intervals
                .iter()
                .zip(&other.intervals)
                .all(|(a, b)| a.lower >= b.lower - slack && a.upper <= b.upper + slack)
    }

    /// Largest per-bound difference to `other`.
    pub fn max_bound_difference(&self, other: &BoundingBox) -> f64 {
        self.intervals
            .iter()
            .zip(&other.intervals)
            .map(|(a, b)| (a.lower - b.lower).abs().max((a.upper - b.upper).abs()))
            .fold(0.0, f64::max)
    }
}

impl fmt::Display for BoundingBox {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (q, i) in self.intervals.iter().enumerate() {
            if q > 0 {
                write!(f, " x ")?;
            }
            match f.precision() {
                Some(p) => write!(f, "[{:.p$}, {:.p$}]", i.lower, i.upper)?,
                None => write!(f, "[{}, {}]", i.lower, i.upper)?,
            }
        }
        Ok(())
    }
}

/// Per-axis `[max lower, min upper]`. Inverted results are returned as data.
pub fn box_intersect(boxes: &[BoundingBox]) -> Result<BoundingBox> {
    let first = boxes.first().ok_or(GeometryError::EmptyBoxList)?;
    let mut out = first.clone();
    for b in &boxes[1..] {
        if b.dim() != out.dim() {
            return Err(GeometryError::DimensionMismatch { expected: out.dim(), found: b.dim() });
        }
        for (acc, i) in out.intervals.iter_mut().zip(&b.intervals) {
            acc.lower = acc.lower.max(i.lower);
            acc.upper = acc.upper.min(i.upper);
        }
    }
    Ok(out)
}

/// Box of `D1 ∩ D2` by the two-disk case analysis: a disk pole inside the
/// other disk bounds the axis, otherwise the pole of `∂D1 ∩ ∂D2` does.
/// `None` when the disks do not meet.
pub fn aabb_two_disks(d1: &Disk, d2: &Disk, tol: Tolerance) -> Result<Option<BoundingBox>> {
    if d1.dim() != d2.dim() {
        return Err(GeometryError::DimensionMismatch { expected: d1.dim(), found: d2.dim() });
    }
    let slack = tol.absolute(d1.scale().max(d2.scale()));
    if (d1.center() - d2.center()).norm() > d1.radius() + d2.radius() + slack {
        return Ok(None);
    }
    let mut lens: Option<IntersectionKind> = None;
    let mut intervals = Vec::with_capacity(d1.dim());
    for axis in 0..d1.dim() {
        let (s1, n1) = boundary_poles(d1, axis)?;
        let (s2, n2) = boundary_poles(d2, axis)?;
        let lower = if d2.contains_unchecked(&s1.point, slack) {
            Some(s1.point[axis])
        } else if d1.contains_unchecked(&s2.point, slack) {
            Some(s2.point[axis])
        } else {
            None
        };
        let upper = if d2.contains_unchecked(&n1.point, slack) {
            Some(n1.point[axis])
        } else if d1.contains_unchecked(&n2.point, slack) {
            Some(n2.point[axis])
        } else {
            None
        };
        let (lower, upper) = match (lower, upper) {
            (Some(a), Some(b)) => (a, b),
            _ => {
                if lens.is_none() {
                    lens = Some(intersect_two_spheres(d1, d2, tol)?);
                }
                let (a, b) = match lens.as_ref().expect("computed above") {
                    IntersectionKind::Empty => return Ok(None),
                    IntersectionKind::SinglePoint(p) => (p[axis], p[axis]),
                    IntersectionKind::Sphere(s) => {
                        let (south, north) = sphere_poles(s, axis, tol)?;
                        (south.point[axis], north.point[axis])
                    }
                };
                (lower.unwrap_or(a), upper.unwrap_or(b))
            }
        };
        intervals.push(Interval::new(lower, upper));
    }
    Ok(Some(BoundingBox::new(intervals)))
}

/// Result of [`aabb_minimal`].
#[derive(Debug, Clone, PartialEq)]
pub struct AabbReport {
    /// `None` when the disks have no common point.
    pub bbox: Option<BoundingBox>,
    /// Candidate points found inside every disk.
    pub retained: Vec<Candidate>,
    pub degenerate_subsets: usize,
}

/// Minimal box of `∩ D_j`: collect every pole (and tangency point) of every
/// boundary intersection that lies in all disks, then take the per-axis
/// envelope. The extremes of the intersection are always such poles.
pub fn aabb_minimal(system: &DiskSystem, tol: Tolerance) -> AabbReport {
    let mut retained = Vec::new();
    let stats = for_each_candidate(system, tol, |candidate| {
        if system.contains_all(&candidate.point, tol) {
            retained.push(candidate);
        }
        ControlFlow::Continue(())
    });
    let bbox = envelope(system.dim(), retained.iter().map(|c| &c.point));
    AabbReport { bbox, retained, degenerate_subsets: stats.degenerate_subsets }
}

fn envelope<'a>(dim: usize, points: impl Iterator<Item = &'a Point>) -> Option<BoundingBox> {
    let mut lower = vec![f64::INFINITY; dim];
    let mut upper = vec![f64::NEG_INFINITY; dim];
    let mut any = false;
    for p in points {
        any = true;
        for q in 0..dim {
            lower[q] = lower[q].min(p[q]);
            upper[q] = upper[q].max(p[q]);
        }
    }
    any.then(|| BoundingBox::from_bounds(&lower, &upper))
}
