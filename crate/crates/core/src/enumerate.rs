//! Canonical enumeration of candidate points: the coordinate poles of every
//! boundary intersection of `k <= min(m, d + 1)` disks, plus the isolated
//! points where boundaries meet tangentially.

use std::ops::ControlFlow;

use itertools::Itertools;

use crate::error::GeometryError;
use crate::geometry::{
    boundary_poles, reduce_disks, sphere_poles, two_sphere_intersection, Disk, DiskSystem,
    IntersectionKind, Orientation, Point, Tolerance,
};

/// How a candidate was produced.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CandidateSource {
    /// Coordinate pole of the boundary intersection.
    Pole { axis: usize, orientation: Orientation, degenerate_axis: bool },
    /// The boundaries meet in a single point.
    SinglePoint,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Candidate {
    pub point: Point,
    /// Indices (into the system) of the disks whose boundaries contain `point`.
    pub generators: Vec<usize>,
    pub source: CandidateSource,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct EnumerationStats {
    pub subsets: usize,
    /// Subsets skipped because their centers are affinely dependent or two
    /// boundaries coincide.
    pub degenerate_subsets: usize,
}

/// Walks every candidate in canonical order (subset size, then lexicographic
/// subset, then axis, south before north) until `visit` breaks.
pub fn for_each_candidate<F>(system: &DiskSystem, tol: Tolerance, mut visit: F) -> EnumerationStats
where
    F: FnMut(Candidate) -> ControlFlow<()>,
{
    let mut stats = EnumerationStats::default();
    let dim = system.dim();
    let max_k = system.len().min(dim + 1);
    for k in 1..=max_k {
        for subset in (0..system.len()).combinations(k) {
            stats.subsets += 1;
            let kind = match intersect_subset(system, &subset, tol) {
                Ok(kind) => kind,
                Err(GeometryError::DegenerateConfiguration { .. } | GeometryError::CoincidentBoundaries) => {
                    stats.degenerate_subsets += 1;
                    continue;
                }
                Err(e) => unreachable!("validated system produced {e}"),
            };
            let flow = match kind {
                IntersectionKind::Empty => ControlFlow::Continue(()),
                IntersectionKind::SinglePoint(point) => visit(Candidate {
                    point,
                    generators: subset.clone(),
                    source: CandidateSource::SinglePoint,
                }),
                IntersectionKind::Sphere(sphere) => {
                    let mut flow = ControlFlow::Continue(());
                    for axis in 0..dim {
                        let poles = if k == 1 {
                            boundary_poles(system.disk(subset[0]), axis)
                        } else {
                            sphere_poles(&sphere, axis, tol)
                        };
                        let (south, north) = match poles {
                            Ok(p) => p,
                            Err(GeometryError::DegenerateConfiguration { .. }) => {
                                stats.degenerate_subsets += 1;
                                break;
                            }
                            Err(e) => unreachable!("validated sphere produced {e}"),
                        };
                        for pole in [south, north] {
                            flow = visit(Candidate {
                                point: pole.point,
                                generators: subset.clone(),
                                source: CandidateSource::Pole {
                                    axis,
                                    orientation: pole.orientation,
                                    degenerate_axis: pole.degenerate_axis,
                                },
                            });
                            if flow.is_break() {
                                break;
                            }
                        }
                        if flow.is_break() {
                            break;
                        }
                    }
                    flow
                }
            };
            if flow.is_break() {
                return stats;
            }
        }
    }
    stats
}

fn intersect_subset(
    system: &DiskSystem,
    subset: &[usize],
    tol: Tolerance,
) -> Result<IntersectionKind, GeometryError> {
    match subset {
        [i] => {
            let d = system.disk(*i);
            // A full boundary sphere: no normals.
            Ok(IntersectionKind::Sphere(crate::geometry::ISphere {
                center: d.center().clone(),
                radius: d.radius(),
                normals: Vec::new(),
                generators: vec![*i],
            }))
        }
        [i, j] => two_sphere_intersection(system.disk(*i), system.disk(*j), vec![*i, *j], tol),
        _ => {
            let disks: Vec<&Disk> = subset.iter().map(|&i| system.disk(i)).collect();
            reduce_disks(&disks, subset.to_vec(), tol)
        }
    }
}
