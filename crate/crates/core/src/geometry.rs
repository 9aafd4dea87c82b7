//! Disks, boundary intersections (i-spheres) and their coordinate poles.
//!
//! Every routine works on `f64` and takes a [`Tolerance`] that is turned into
//! an absolute slack of `rel * (1 + scale)`, where `scale` is the magnitude of
//! the coordinates involved.

use nalgebra::DVector;

use crate::error::{GeometryError, Result};
use crate::linalg::{gram, project_out, GramSolver};

/// A point (or vector) of `R^d`.
pub type Point = DVector<f64>;

/// Builds a [`Point`] from a coordinate slice.
pub fn point(coords: &[f64]) -> Point {
    DVector::from_column_slice(coords)
}

/// Unit vector `e_axis` of `R^dim` (zero-based axis).
pub fn unit_axis(dim: usize, axis: usize) -> Point {
    let mut e = DVector::zeros(dim);
    e[axis] = 1.0;
    e
}

/// Relative tolerance shared by all membership and on-sphere tests.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerance {
    rel: f64,
}

impl Tolerance {
    pub const DEFAULT_REL: f64 = 1e-9;

    pub fn new(rel: f64) -> Result<Self> {
        if !rel.is_finite() || rel < 0.0 {
            return Err(GeometryError::InvalidTolerance(rel));
        }
        Ok(Self { rel })
    }

    pub fn relative(self) -> f64 {
        self.rel
    }

    /// Absolute slack for quantities of magnitude `scale`.
    pub fn absolute(self, scale: f64) -> f64 {
        self.rel * (1.0 + scale.abs())
    }
}

impl Default for Tolerance {
    fn default() -> Self {
        Self { rel: Self::DEFAULT_REL }
    }
}

/// Closed ball `D(c; r)` with `r > 0`.
#[derive(Debug, Clone, PartialEq)]
pub struct Disk {
    center: Point,
    radius: f64,
}

impl Disk {
    pub fn new(center: Vec<f64>, radius: f64) -> Result<Self> {
        Self::from_point(DVector::from_vec(center), radius)
    }

    pub fn from_point(center: Point, radius: f64) -> Result<Self> {
        if center.is_empty() {
            return Err(GeometryError::ZeroDimension);
        }
        if center.iter().any(|x| !x.is_finite()) {
            return Err(GeometryError::NonFiniteCoordinate);
        }
        if !(radius > 0.0) || !radius.is_finite() {
            return Err(GeometryError::NonPositiveRadius(radius));
        }
        Ok(Self { center, radius })
    }

    pub fn dim(&self) -> usize {
        self.center.len()
    }

    pub fn center(&self) -> &Point {
        &self.center
    }

    pub fn radius(&self) -> f64 {
        self.radius
    }

    /// Largest coordinate magnitude plus the radius.
    pub fn scale(&self) -> f64 {
        self.center.amax() + self.radius
    }

    /// `||p - c|| <= r + tol` with an absolute `tol`.
    pub fn contains(&self, p: &Point, tol: f64) -> Result<bool> {
        if p.len() != self.dim() {
            return Err(GeometryError::DimensionMismatch { expected: self.dim(), found: p.len() });
        }
        if !(tol >= 0.0) {
            return Err(GeometryError::InvalidTolerance(tol));
        }
        Ok(self.contains_unchecked(p, tol))
    }

    pub(crate) fn contains_unchecked(&self, p: &Point, tol: f64) -> bool {
        (p - &self.center).norm() <= self.radius + tol
    }

    /// `D_self ⊆ D_other` up to `tol`.
    pub fn is_inside(&self, other: &Disk, tol: f64) -> bool {
        (&self.center - &other.center).norm() + self.radius <= other.radius + tol
    }

    pub(crate) fn scaled(&self, factor: f64) -> Disk {
        Disk { center: self.center.clone(), radius: self.radius * factor }
    }
}

/// Finite ordered collection of disks of a common dimension.
#[derive(Debug, Clone, PartialEq)]
pub struct DiskSystem {
    disks: Vec<Disk>,
    dim: usize,
}

impl DiskSystem {
    pub fn new(disks: Vec<Disk>) -> Result<Self> {
        let dim = disks.first().ok_or(GeometryError::EmptySystem)?.dim();
        if let Some(bad) = disks.iter().find(|d| d.dim() != dim) {
            return Err(GeometryError::DimensionMismatch { expected: dim, found: bad.dim() });
        }
        Ok(Self { disks, dim })
    }

    pub fn len(&self) -> usize {
        self.disks.len()
    }

    /// Always false; kept for API symmetry with collections.
    pub fn is_empty(&self) -> bool {
        self.disks.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn disks(&self) -> &[Disk] {
        &self.disks
    }

    pub fn disk(&self, i: usize) -> &Disk {
        &self.disks[i]
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Disk> {
        self.disks.iter()
    }

    pub fn scale(&self) -> f64 {
        self.disks.iter().map(Disk::scale).fold(0.0, f64::max)
    }

    /// Same centers, radii multiplied by `factor`.
    pub fn rescaled(&self, factor: f64) -> Result<Self> {
        if !(factor > 0.0) || !factor.is_finite() {
            return Err(GeometryError::InvalidScale(factor));
        }
        Ok(Self { disks: self.disks.iter().map(|d| d.scaled(factor)).collect(), dim: self.dim })
    }

    /// Sub-system spanned by `indices` (in the given order).
    pub fn subsystem(&self, indices: &[usize]) -> Result<Self> {
        Self::new(indices.iter().map(|&i| self.disks[i].clone()).collect())
    }

    /// True when `p` lies in every disk, with the system-scaled tolerance.
    pub fn contains_all(&self, p: &Point, tol: Tolerance) -> bool {
        let slack = tol.absolute(self.scale());
        p.len() == self.dim && self.disks.iter().all(|d| d.contains_unchecked(p, slack))
    }

    /// Collapses identical disks. Returns the reduced system and, for every
    /// original index, the index of its representative in the reduced system.
    pub fn deduplicate(&self, tol: Tolerance) -> (Self, Vec<usize>) {
        let slack = tol.absolute(self.scale());
        let mut kept: Vec<Disk> = Vec::new();
        let mut map = Vec::with_capacity(self.len());
        for disk in &self.disks {
            let same = kept.iter().position(|k| {
                (k.center() - disk.center()).norm() <= slack && (k.radius - disk.radius).abs() <= slack
            });
            match same {
                Some(i) => map.push(i),
                None => {
                    map.push(kept.len());
                    kept.push(disk.clone());
                }
            }
        }
        (Self { disks: kept, dim: self.dim }, map)
    }

    /// Drops every disk that contains another disk of the system; identical
    /// disks keep their first occurrence. The intersection is unchanged.
    /// Returns the reduced system and the original indices of the kept disks.
    pub fn remove_dominated(&self, tol: Tolerance) -> (Self, Vec<usize>) {
        let slack = tol.absolute(self.scale());
        let mut kept_idx = Vec::new();
        for (j, dj) in self.disks.iter().enumerate() {
            let dominated = self.disks.iter().enumerate().any(|(i, di)| {
                i != j && di.is_inside(dj, slack) && (i < j || !dj.is_inside(di, slack))
            });
            if !dominated {
                kept_idx.push(j);
            }
        }
        let disks = kept_idx.iter().map(|&i| self.disks[i].clone()).collect();
        (Self { disks, dim: self.dim }, kept_idx)
    }
}

/// Intersection of a sphere with an affine subspace, stored as center,
/// radius and the (unnormalized) normals of the subspace.
#[derive(Debug, Clone, PartialEq)]
pub struct ISphere {
    pub center: Point,
    pub radius: f64,
    pub normals: Vec<Point>,
    /// Indices of the disks whose boundaries were intersected.
    pub generators: Vec<usize>,
}

impl ISphere {
    pub fn dim(&self) -> usize {
        self.center.len()
    }

    /// Dimension of the affine subspace holding the sphere.
    pub fn affine_dim(&self) -> usize {
        self.dim() - self.normals.len()
    }

    /// `(| ||p - c|| - r |, max_j |(p - c) . n_j| / ||n_j||)`.
    pub fn residuals(&self, p: &Point) -> (f64, f64) {
        let off = p - &self.center;
        let radial = (off.norm() - self.radius).abs();
        let ortho = self
            .normals
            .iter()
            .map(|n| off.dot(n).abs() / n.norm())
            .fold(0.0, f64::max);
        (radial, ortho)
    }
}

/// Result of intersecting several disk boundaries.
#[derive(Debug, Clone, PartialEq)]
pub enum IntersectionKind {
    Empty,
    SinglePoint(Point),
    Sphere(ISphere),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Orientation {
    South,
    North,
}

/// A point of an i-sphere with extremal coordinate along `axis` (zero-based).
#[derive(Debug, Clone, PartialEq)]
pub struct Pole {
    pub point: Point,
    pub axis: usize,
    pub orientation: Orientation,
    /// Set when the coordinate is constant on the sphere, so every point is
    /// extremal and `point` is an arbitrary representative.
    pub degenerate_axis: bool,
}

fn pole_pair(south: Point, north: Point, axis: usize, degenerate_axis: bool) -> (Pole, Pole) {
    (
        Pole { point: south, axis, orientation: Orientation::South, degenerate_axis },
        Pole { point: north, axis, orientation: Orientation::North, degenerate_axis },
    )
}

fn check_axis(axis: usize, dim: usize) -> Result<()> {
    if axis >= dim {
        return Err(GeometryError::AxisOutOfRange { axis, dim });
    }
    Ok(())
}

/// Classification threshold on a computed squared radius: the tolerance
/// squared plus the rounding noise of a difference of squares of size
/// `magnitude_sq`.
fn radius_sq_threshold(magnitude_sq: f64, tol_abs: f64) -> f64 {
    tol_abs * tol_abs + 16.0 * f64::EPSILON * magnitude_sq
}

fn classify(
    center: Point,
    rsq: f64,
    threshold: f64,
    normals: Vec<Point>,
    generators: Vec<usize>,
) -> IntersectionKind {
    let dim = center.len();
    if rsq < -threshold {
        IntersectionKind::Empty
    } else if rsq.abs() <= threshold {
        IntersectionKind::SinglePoint(center)
    } else if normals.len() >= dim {
        // The affine hull is a single point: a positive radius cannot fit.
        IntersectionKind::Empty
    } else {
        IntersectionKind::Sphere(ISphere { center, radius: rsq.sqrt(), normals, generators })
    }
}

/// `∂D1 ∩ ∂D2` via the two-sphere center formula and Heron's radius.
pub fn intersect_two_spheres(d1: &Disk, d2: &Disk, tol: Tolerance) -> Result<IntersectionKind> {
    two_sphere_intersection(d1, d2, vec![0, 1], tol)
}

pub(crate) fn two_sphere_intersection(
    d1: &Disk,
    d2: &Disk,
    generators: Vec<usize>,
    tol: Tolerance,
) -> Result<IntersectionKind> {
    if d1.dim() != d2.dim() {
        return Err(GeometryError::DimensionMismatch { expected: d1.dim(), found: d2.dim() });
    }
    let tol_abs = tol.absolute(d1.scale().max(d2.scale()));
    let (r1, r2) = (d1.radius, d2.radius);
    let normal = d2.center() - d1.center();
    let dist = normal.norm();
    if dist <= tol_abs {
        return if (r1 - r2).abs() <= tol_abs {
            Err(GeometryError::CoincidentBoundaries)
        } else {
            Ok(IntersectionKind::Empty)
        };
    }
    let dist_sq = dist * dist;
    let w1 = 0.5 * (1.0 + (r2 * r2 - r1 * r1) / dist_sq);
    let w2 = 0.5 * (1.0 + (r1 * r1 - r2 * r2) / dist_sq);
    let center = d1.center() * w1 + d2.center() * w2;
    // 16 s (s - a)(s - b)(s - c) expanded, so r^2 = that / (4 a^2).
    let heron = (dist + r1 + r2) * (-dist + r1 + r2) * (dist - r1 + r2) * (dist + r1 - r2);
    let rsq = heron / (4.0 * dist_sq);
    let threshold = radius_sq_threshold(r1 * r1 + r2 * r2, tol_abs);
    Ok(classify(center, rsq, threshold, vec![normal], generators))
}

/// Intersection of the boundaries of `2 <= m <= d + 1` disks, solving the
/// Gram system of the normals `n_j = c_j - c_m`.
pub fn reduce_sphere_system(disks: &[Disk], tol: Tolerance) -> Result<IntersectionKind> {
    let refs: Vec<&Disk> = disks.iter().collect();
    reduce_disks(&refs, (0..disks.len()).collect(), tol)
}

pub(crate) fn reduce_disks(
    disks: &[&Disk],
    generators: Vec<usize>,
    tol: Tolerance,
) -> Result<IntersectionKind> {
    let m = disks.len();
    let dim = disks.first().ok_or(GeometryError::EmptySystem)?.dim();
    if m < 2 || m > dim + 1 {
        return Err(GeometryError::InvalidSubsetSize { got: m, min: 2, max: dim + 1 });
    }
    if let Some(bad) = disks.iter().find(|d| d.dim() != dim) {
        return Err(GeometryError::DimensionMismatch { expected: dim, found: bad.dim() });
    }
    let base = disks[m - 1];
    let normals: Vec<Point> = disks[..m - 1].iter().map(|d| d.center() - base.center()).collect();
    let rhs = DVector::from_iterator(
        m - 1,
        disks[..m - 1].iter().zip(&normals).map(|(d, n)| {
            0.5 * (base.radius * base.radius + n.norm_squared() - d.radius * d.radius)
        }),
    );
    let solver = GramSolver::new(gram(&normals))?;
    let lambda = solver.solve(&rhs);
    let mut offset = DVector::zeros(dim);
    for (l, n) in lambda.iter().zip(&normals) {
        offset.axpy(*l, n, 1.0);
    }
    let rsq = base.radius * base.radius - offset.norm_squared();
    let center = base.center() + &offset;

    let scale = disks.iter().map(|d| d.scale()).fold(0.0, f64::max);
    let max_r = disks.iter().map(|d| d.radius).fold(0.0, f64::max);
    let threshold = radius_sq_threshold(max_r * max_r + offset.norm_squared(), tol.absolute(scale));
    Ok(classify(center, rsq, threshold, normals, generators))
}

/// Poles of the full boundary sphere: `c ∓ r e_q`.
pub fn boundary_poles(disk: &Disk, axis: usize) -> Result<(Pole, Pole)> {
    check_axis(axis, disk.dim())?;
    let step = unit_axis(disk.dim(), axis) * disk.radius;
    Ok(pole_pair(disk.center() - &step, disk.center() + &step, axis, false))
}

/// Some unit vector orthogonal to all `normals`, if one exists.
fn unit_tangent(normals: &[Point], dim: usize, solver: &GramSolver) -> Option<Point> {
    (0..dim)
        .map(|j| project_out(&unit_axis(dim, j), normals, solver))
        .max_by(|a, b| a.norm().total_cmp(&b.norm()))
        .filter(|t| t.norm() > 1e-12)
        .map(|t| t.normalize())
}

fn degenerate_poles(
    sphere: &ISphere,
    axis: usize,
    solver: &GramSolver,
) -> (Pole, Pole) {
    match unit_tangent(&sphere.normals, sphere.dim(), solver) {
        Some(t) => {
            let step = t * sphere.radius;
            pole_pair(&sphere.center - &step, &sphere.center + &step, axis, true)
        }
        None => pole_pair(sphere.center.clone(), sphere.center.clone(), axis, true),
    }
}

/// Poles of a sphere with a single normal `N`, by projecting `e_q` onto the
/// tangent hyperplane: `v = e_q - (N_q / |N|^2) N`.
pub fn poles_codim1(sphere: &ISphere, axis: usize, tol: Tolerance) -> Result<(Pole, Pole)> {
    if sphere.normals.len() != 1 {
        return Err(GeometryError::NormalCount { expected: 1, found: sphere.normals.len() });
    }
    let dim = sphere.dim();
    check_axis(axis, dim)?;
    if sphere.radius == 0.0 {
        return Ok(pole_pair(sphere.center.clone(), sphere.center.clone(), axis, false));
    }
    let n = &sphere.normals[0];
    let mut v = unit_axis(dim, axis);
    v.axpy(-n[axis] / n.norm_squared(), n, 1.0);
    let norm = v.norm();
    if norm <= tol.relative() {
        let solver = GramSolver::new(gram(&sphere.normals))?;
        return Ok(degenerate_poles(sphere, axis, &solver));
    }
    let step = v * (sphere.radius / norm);
    Ok(pole_pair(&sphere.center - &step, &sphere.center + &step, axis, false))
}

/// Poles of a sphere with `k` normals. With `A = (n_i . n_j)` and
/// `B = (-n_j[q])`, the pole direction is `w = sum_j (A^-1 B)_j n_j + e_q`,
/// whose squared norm is `sum_i Γ_i^2 + 2 Γ_q + 1`.
pub fn poles_general(sphere: &ISphere, axis: usize, tol: Tolerance) -> Result<(Pole, Pole)> {
    let dim = sphere.dim();
    check_axis(axis, dim)?;
    if sphere.normals.is_empty() {
        let step = unit_axis(dim, axis) * sphere.radius;
        return Ok(pole_pair(&sphere.center - &step, &sphere.center + &step, axis, false));
    }
    if sphere.radius == 0.0 {
        return Ok(pole_pair(sphere.center.clone(), sphere.center.clone(), axis, false));
    }
    let solver = GramSolver::new(gram(&sphere.normals))?;
    let b = DVector::from_iterator(sphere.normals.len(), sphere.normals.iter().map(|n| -n[axis]));
    let coeffs = solver.solve(&b);
    let mut w = unit_axis(dim, axis);
    for (x, n) in coeffs.iter().zip(&sphere.normals) {
        w.axpy(*x, n, 1.0);
    }
    // One refinement pass keeps w orthogonal to the normals after rounding.
    let w = project_out(&w, &sphere.normals, &solver);
    let norm = w.norm();
    if norm <= tol.relative() {
        return Ok(degenerate_poles(sphere, axis, &solver));
    }
    let step = w * (sphere.radius / norm);
    Ok(pole_pair(&sphere.center - &step, &sphere.center + &step, axis, false))
}

/// Poles of any i-sphere, dispatching on the number of normals.
pub fn sphere_poles(sphere: &ISphere, axis: usize, tol: Tolerance) -> Result<(Pole, Pole)> {
    match sphere.normals.len() {
        1 => poles_codim1(sphere, axis, tol),
        _ => poles_general(sphere, axis, tol),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn disk(c: &[f64], r: f64) -> Disk {
        Disk::new(c.to_vec(), r).unwrap()
    }

    fn sqrt2() -> f64 {
        2f64.sqrt()
    }

    fn assert_point(p: &Point, expected: &[f64], eps: f64) {
        assert_eq!(p.len(), expected.len());
        for (a, b) in p.iter().zip(expected) {
            assert_abs_diff_eq!(*a, *b, epsilon = eps);
        }
    }

    #[test]
    fn contains_examples() {
        let unit = disk(&[0.0, 0.0], 1.0);
        assert!(unit.contains(&point(&[0.0, 0.0]), 0.0).unwrap());
        assert!(unit.contains(&point(&[1.0, 0.0]), 0.0).unwrap());
        assert!(!unit.contains(&point(&[1.0, 0.1]), 0.0).unwrap());
        let d1 = disk(&[4.0, 1.0, 0.0], sqrt2());
        assert!(d1.contains(&point(&[3.0, 0.0, 0.0]), 1e-9).unwrap());
    }

    #[test]
    fn contains_rejects_dimension_mismatch() {
        let unit = disk(&[0.0, 0.0], 1.0);
        assert!(matches!(
            unit.contains(&point(&[0.0, 0.0, 0.0]), 0.0),
            Err(GeometryError::DimensionMismatch { expected: 2, found: 3 })
        ));
    }

    #[test]
    fn disk_validation() {
        assert_eq!(Disk::new(vec![0.0], 0.0), Err(GeometryError::NonPositiveRadius(0.0)));
        assert_eq!(Disk::new(vec![], 1.0), Err(GeometryError::ZeroDimension));
        assert!(DiskSystem::new(vec![]).is_err());
        assert!(DiskSystem::new(vec![disk(&[0.0], 1.0), disk(&[0.0, 1.0], 1.0)]).is_err());
    }

    #[test]
    fn two_spheres_tangent_is_single_point() {
        let k = intersect_two_spheres(&disk(&[0.0, 0.0], 1.0), &disk(&[2.0, 0.0], 1.0), Tolerance::default())
            .unwrap();
        match k {
            IntersectionKind::SinglePoint(p) => assert_point(&p, &[1.0, 0.0], 1e-12),
            other => panic!("expected single point, got {other:?}"),
        }
    }

    #[test]
    fn two_spheres_example_circle() {
        let d1 = disk(&[4.0, 1.0, 0.0], sqrt2());
        let d2 = disk(&[4.0, -1.0, 0.0], sqrt2());
        let IntersectionKind::Sphere(s) = intersect_two_spheres(&d1, &d2, Tolerance::default()).unwrap() else {
            panic!("expected a circle");
        };
        assert_point(&s.center, &[4.0, 0.0, 0.0], 1e-12);
        assert_abs_diff_eq!(s.radius, 1.0, epsilon = 1e-12);
        assert_point(&s.normals[0], &[0.0, -2.0, 0.0], 0.0);
        assert_eq!(s.affine_dim(), 2);
    }

    #[test]
    fn two_spheres_separated_and_nested_are_empty() {
        let tol = Tolerance::default();
        let far = intersect_two_spheres(&disk(&[0.0, 0.0], 1.0), &disk(&[5.0, 0.0], 1.0), tol).unwrap();
        assert_eq!(far, IntersectionKind::Empty);
        let nested = intersect_two_spheres(&disk(&[0.0, 0.0], 3.0), &disk(&[0.5, 0.0], 1.0), tol).unwrap();
        assert_eq!(nested, IntersectionKind::Empty);
    }

    #[test]
    fn internal_tangency_point() {
        let k = intersect_two_spheres(&disk(&[0.0, 0.0], 3.0), &disk(&[1.0, 0.0], 2.0), Tolerance::default())
            .unwrap();
        match k {
            IntersectionKind::SinglePoint(p) => assert_point(&p, &[3.0, 0.0], 1e-12),
            other => panic!("expected single point, got {other:?}"),
        }
    }

    #[test]
    fn concentric_disks() {
        let tol = Tolerance::default();
        let a = disk(&[1.0, 1.0], 1.0);
        assert_eq!(
            intersect_two_spheres(&a, &disk(&[1.0, 1.0], 2.0), tol).unwrap(),
            IntersectionKind::Empty
        );
        assert_eq!(intersect_two_spheres(&a, &a, tol), Err(GeometryError::CoincidentBoundaries));
    }

    #[test]
    fn one_dimensional_pair_is_never_a_sphere() {
        let tol = Tolerance::default();
        let k = intersect_two_spheres(&disk(&[0.0], 1.0), &disk(&[1.5], 1.0), tol).unwrap();
        assert_eq!(k, IntersectionKind::Empty);
    }

    #[test]
    fn codim1_poles_examples() {
        let tol = Tolerance::default();
        let s = ISphere {
            center: point(&[4.0, 0.0, 0.0]),
            radius: 1.0,
            normals: vec![point(&[0.0, 2.0, 0.0])],
            generators: vec![0, 1],
        };
        let (south, north) = poles_codim1(&s, 0, tol).unwrap();
        assert_point(&south.point, &[3.0, 0.0, 0.0], 1e-15);
        assert_point(&north.point, &[5.0, 0.0, 0.0], 1e-15);
        assert!(!south.degenerate_axis);

        let (south, north) = poles_codim1(&s, 1, tol).unwrap();
        assert!(south.degenerate_axis && north.degenerate_axis);
        assert_abs_diff_eq!(south.point[1], 0.0, epsilon = 1e-15);
        assert_abs_diff_eq!(north.point[1], 0.0, epsilon = 1e-15);
        assert!(s.residuals(&south.point).0 < 1e-12);

        let tilted = ISphere {
            center: point(&[0.0, 0.0]),
            radius: 2.0,
            normals: vec![point(&[1.0, 1.0])],
            generators: vec![0, 1],
        };
        let (south, north) = poles_codim1(&tilted, 0, tol).unwrap();
        assert_point(&south.point, &[-sqrt2(), sqrt2()], 1e-12);
        assert_point(&north.point, &[sqrt2(), -sqrt2()], 1e-12);
        assert_eq!(north.orientation, Orientation::North);
    }

    #[test]
    fn codim1_pole_magnitudes_match_closed_form() {
        // |π_i(pole - c)| matches the closed-form two-sphere magnitudes.
        let n = point(&[1.0, -2.0, 0.5]);
        let s = ISphere { center: point(&[0.3, 0.1, -0.2]), radius: 1.7, normals: vec![n.clone()], generators: vec![] };
        let q = 1;
        let (_, north) = poles_codim1(&s, q, Tolerance::default()).unwrap();
        let nn = n.norm();
        let perp = (nn * nn - n[q] * n[q]).sqrt();
        for i in 0..3 {
            let expected = if i == q {
                s.radius * perp / nn
            } else {
                s.radius * (n[i] * n[q]).abs() / (nn * perp)
            };
            assert_abs_diff_eq!((north.point[i] - s.center[i]).abs(), expected, epsilon = 1e-12);
        }
    }

    #[test]
    fn codim1_errors_and_zero_radius() {
        let tol = Tolerance::default();
        let s = ISphere { center: point(&[1.0, 2.0]), radius: 0.0, normals: vec![point(&[1.0, 0.0])], generators: vec![] };
        let (a, b) = poles_codim1(&s, 1, tol).unwrap();
        assert_eq!(a.point, s.center);
        assert_eq!(b.point, s.center);
        assert!(matches!(poles_codim1(&s, 2, tol), Err(GeometryError::AxisOutOfRange { .. })));
        let two = ISphere { normals: vec![point(&[1.0, 0.0]), point(&[0.0, 1.0])], ..s };
        assert!(matches!(poles_codim1(&two, 0, tol), Err(GeometryError::NormalCount { .. })));
    }

    #[test]
    fn reduce_tangent_triple_single_point() {
        let disks = vec![
            disk(&[4.0, 1.0, 0.0], sqrt2()),
            disk(&[4.0, -1.0, 0.0], sqrt2()),
            disk(&[0.0, 0.0, 0.0], 3.0),
        ];
        match reduce_sphere_system(&disks, Tolerance::default()).unwrap() {
            IntersectionKind::SinglePoint(p) => assert_point(&p, &[3.0, 0.0, 0.0], 1e-9),
            other => panic!("expected single point, got {other:?}"),
        }
    }

    #[test]
    fn reduce_two_disks_matches_pair_path() {
        let disks = vec![disk(&[0.0, 0.0], 1.0), disk(&[2.0, 0.0], 1.0)];
        match reduce_sphere_system(&disks, Tolerance::default()).unwrap() {
            IntersectionKind::SinglePoint(p) => assert_point(&p, &[1.0, 0.0], 1e-12),
            other => panic!("expected single point, got {other:?}"),
        }
    }

    #[test]
    fn reduce_three_disks_in_space() {
        let disks = vec![
            disk(&[0.0, 0.0, 0.0], 1.0),
            disk(&[1.0, 0.0, 0.0], 1.0),
            disk(&[0.5, 1.0, 0.0], 1.0),
        ];
        let IntersectionKind::Sphere(s) = reduce_sphere_system(&disks, Tolerance::default()).unwrap() else {
            panic!("expected a 1-sphere");
        };
        assert_point(&s.center, &[0.5, 0.375, 0.0], 1e-12);
        assert_abs_diff_eq!(s.radius * s.radius, 0.609375, epsilon = 1e-12);
        assert_point(&s.normals[0], &[-0.5, -1.0, 0.0], 0.0);
        assert_point(&s.normals[1], &[0.5, -1.0, 0.0], 0.0);

        let (south, north) = poles_general(&s, 2, Tolerance::default()).unwrap();
        let h = 0.609375f64.sqrt();
        assert_point(&south.point, &[0.5, 0.375, -h], 1e-12);
        assert_point(&north.point, &[0.5, 0.375, h], 1e-12);
    }

    #[test]
    fn reduce_rejects_collinear_centers() {
        let disks = vec![disk(&[0.0, 0.0], 1.0), disk(&[1.0, 0.0], 1.0), disk(&[2.0, 0.0], 1.0)];
        assert!(matches!(
            reduce_sphere_system(&disks, Tolerance::default()),
            Err(GeometryError::DegenerateConfiguration { rank: 1, size: 2 })
        ));
    }

    #[test]
    fn reduce_rejects_bad_sizes() {
        let disks = vec![disk(&[0.0, 0.0], 1.0)];
        assert!(matches!(
            reduce_sphere_system(&disks, Tolerance::default()),
            Err(GeometryError::InvalidSubsetSize { .. })
        ));
    }

    #[test]
    fn general_poles_agree_with_codim1_on_example_circle() {
        let s = ISphere {
            center: point(&[4.0, 0.0, 0.0]),
            radius: 1.0,
            normals: vec![point(&[0.0, 2.0, 0.0])],
            generators: vec![0, 1],
        };
        let (south, north) = poles_general(&s, 0, Tolerance::default()).unwrap();
        assert_point(&south.point, &[3.0, 0.0, 0.0], 1e-15);
        assert_point(&north.point, &[5.0, 0.0, 0.0], 1e-15);
    }

    #[test]
    fn boundary_poles_examples() {
        let (s, n) = boundary_poles(&disk(&[0.0, 0.0], 1.0), 0).unwrap();
        assert_point(&s.point, &[-1.0, 0.0], 0.0);
        assert_point(&n.point, &[1.0, 0.0], 0.0);
        let (s, n) = boundary_poles(&disk(&[4.0, 1.0, 0.0], sqrt2()), 1).unwrap();
        assert_point(&s.point, &[4.0, 1.0 - sqrt2(), 0.0], 1e-15);
        assert_point(&n.point, &[4.0, 1.0 + sqrt2(), 0.0], 1e-15);
        let (s, n) = boundary_poles(&disk(&[0.0, 0.0, 0.0], 3.0), 2).unwrap();
        assert_point(&s.point, &[0.0, 0.0, -3.0], 0.0);
        assert_point(&n.point, &[0.0, 0.0, 3.0], 0.0);
    }

    #[test]
    fn dedup_and_dominance() {
        let tol = Tolerance::default();
        let m = DiskSystem::new(vec![
            disk(&[0.0, 0.0], 2.0),
            disk(&[0.0, 0.0], 1.0),
            disk(&[0.0, 0.0], 1.0),
            disk(&[3.0, 0.0], 1.0),
        ])
        .unwrap();
        let (dedup, map) = m.deduplicate(tol);
        assert_eq!(dedup.len(), 3);
        assert_eq!(map, vec![0, 1, 1, 2]);
        let (pre, kept) = m.remove_dominated(tol);
        assert_eq!(kept, vec![1, 3]);
        assert_eq!(pre.len(), 2);
    }
}
