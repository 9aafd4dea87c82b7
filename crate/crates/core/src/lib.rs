//! Intersection properties of finite systems of closed disks in `R^d`.
//!
//! The common intersection of a disk system, when nonempty, is bounded on
//! every axis by coordinate poles of boundary intersections (i-spheres).
//! Enumerating those poles gives an exact decision procedure
//! ([`cech::is_cech_system`]), the Čech scale by bisection
//! ([`cech::cech_scale`]), the minimal axis-aligned bounding box
//! ([`aabb::aabb_minimal`]) and generalized Čech filtrations
//! ([`filtration::build_filtration`]). The [`oracle`] module provides an
//! independent grid-refinement ground truth for testing.

pub mod aabb;
pub mod cech;
pub mod cli;
pub mod enumerate;
pub mod error;
pub mod filtration;
pub mod geometry;
pub mod linalg;
pub mod oracle;

pub use aabb::{aabb_minimal, aabb_two_disks, box_intersect, AabbReport, BoundingBox, Interval};
pub use cech::{cech_scale, is_cech_system, rescale, rips_scale, CechDecision, ScaleReport};
pub use error::GeometryError;
pub use filtration::{build_filtration, Filtration, WeightedSimplex};
pub use geometry::{
    boundary_poles, intersect_two_spheres, point, poles_codim1, poles_general, reduce_sphere_system,
    Disk, DiskSystem, ISphere, IntersectionKind, Orientation, Point, Pole, Tolerance,
};
