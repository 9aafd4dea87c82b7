//! Vietoris-Rips and Čech scales of a disk system, and the pole-based
//! decision procedure for a nonempty common intersection.

use std::ops::ControlFlow;

use itertools::Itertools;

use crate::enumerate::for_each_candidate;
use crate::error::{GeometryError, Result};
use crate::geometry::{DiskSystem, Point, Tolerance};

/// Default bisection precision for [`cech_scale`].
pub const DEFAULT_ETA: f64 = 1e-6;

/// `sqrt(2d / (d + 1))`: every Rips system rescaled by this factor is Čech.
pub fn rips_to_cech_factor(dim: usize) -> f64 {
    let d = dim as f64;
    (2.0 * d / (d + 1.0)).sqrt()
}

/// Outcome of [`is_cech_system`].
#[derive(Debug, Clone, PartialEq)]
pub struct CechDecision {
    pub is_cech: bool,
    /// A candidate point contained in every disk.
    pub witness: Option<Point>,
    /// Disks whose boundary intersection produced the witness.
    pub generating_subset: Option<Vec<usize>>,
    /// Subsets skipped for affinely dependent centers or coincident boundaries.
    pub degenerate_subsets: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScaleReport {
    pub rips_scale: f64,
    pub cech_scale: f64,
    pub eta: f64,
    /// `(lower, upper)` with `upper == cech_scale`.
    pub bracket: (f64, f64),
    pub iterations: usize,
    /// True when the Rips scale was already Čech and no bisection ran.
    pub exact: bool,
    pub witness: Option<Point>,
    pub degenerate_subsets: usize,
}

/// `max_{i<j} ||c_i - c_j|| / (r_i + r_j)`, zero for a single disk.
pub fn rips_scale(system: &DiskSystem) -> f64 {
    system
        .disks()
        .iter()
        .tuple_combinations()
        .map(|(a, b)| (a.center() - b.center()).norm() / (a.radius() + b.radius()))
        .fold(0.0, f64::max)
}

/// Same centers, radii multiplied by `factor > 0`.
pub fn rescale(system: &DiskSystem, factor: f64) -> Result<DiskSystem> {
    system.rescaled(factor)
}

/// Decides whether all disks share a point by testing every coordinate pole
/// of every boundary intersection of up to `d + 1` disks for membership in
/// all disks. The first hit in canonical order is the witness.
pub fn is_cech_system(system: &DiskSystem, tol: Tolerance) -> CechDecision {
    let mut found = None;
    let stats = for_each_candidate(system, tol, |candidate| {
        if system.contains_all(&candidate.point, tol) {
            found = Some(candidate);
            ControlFlow::Break(())
        } else {
            ControlFlow::Continue(())
        }
    });
    match found {
        Some(c) => CechDecision {
            is_cech: true,
            witness: Some(c.point),
            generating_subset: Some(c.generators),
            degenerate_subsets: stats.degenerate_subsets,
        },
        None => CechDecision {
            is_cech: false,
            witness: None,
            generating_subset: None,
            degenerate_subsets: stats.degenerate_subsets,
        },
    }
}

/// Čech scale by bisection between the Rips scale `ν` and
/// `sqrt(2d/(d+1)) ν`. Returns the upper end of the final bracket, at which
/// the rescaled system is certified to intersect.
pub fn cech_scale(system: &DiskSystem, eta: f64, tol: Tolerance) -> Result<ScaleReport> {
    if !(eta > 0.0) || !eta.is_finite() {
        return Err(GeometryError::InvalidPrecision(eta));
    }
    let nu = rips_scale(system);
    let exact = |witness: Option<Point>, degenerate_subsets| ScaleReport {
        rips_scale: nu,
        cech_scale: nu,
        eta,
        bracket: (nu, nu),
        iterations: 0,
        exact: true,
        witness,
        degenerate_subsets,
    };
    if nu == 0.0 {
        // Every center coincides; the common center is the intersection of the
        // zero-radius system.
        return Ok(exact(Some(system.disk(0).center().clone()), 0));
    }

    let at_nu = is_cech_system(&system.rescaled(nu)?, tol);
    let mut degenerate = at_nu.degenerate_subsets;
    if at_nu.is_cech {
        return Ok(exact(at_nu.witness, degenerate));
    }

    let mut lower = nu;
    let mut upper = rips_to_cech_factor(system.dim()) * nu;
    let mut witness = None;
    let mut iterations = 0;
    while upper - lower > eta {
        let mid = 0.5 * (lower + upper);
        if mid <= lower || mid >= upper {
            break;
        }
        let decision = is_cech_system(&system.rescaled(mid)?, tol);
        degenerate = degenerate.max(decision.degenerate_subsets);
        iterations += 1;
        if decision.is_cech {
            upper = mid;
            witness = decision.witness;
        } else {
            lower = mid;
        }
    }
    if witness.is_none() {
        // The initial upper end is Čech by the Rips bound, so it is never
        // tested inside the loop.
        witness = is_cech_system(&system.rescaled(upper)?, tol).witness;
    }
    Ok(ScaleReport {
        rips_scale: nu,
        cech_scale: upper,
        eta,
        bracket: (lower, upper),
        iterations,
        exact: false,
        witness,
        degenerate_subsets: degenerate,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::Disk;
    use approx::assert_abs_diff_eq;

    fn system(rows: &[(&[f64], f64)]) -> DiskSystem {
        DiskSystem::new(rows.iter().map(|(c, r)| Disk::new(c.to_vec(), *r).unwrap()).collect()).unwrap()
    }

    fn tangent_triple() -> DiskSystem {
        let s2 = 2f64.sqrt();
        system(&[(&[4.0, 1.0, 0.0], s2), (&[4.0, -1.0, 0.0], s2), (&[0.0, 0.0, 0.0], 3.0)])
    }

    fn triangle() -> DiskSystem {
        let h = 3f64.sqrt() / 2.0;
        system(&[(&[0.0, 0.0], 1.0), (&[1.0, 0.0], 1.0), (&[0.5, h], 1.0)])
    }

    #[test]
    fn rips_scale_examples() {
        assert_eq!(rips_scale(&system(&[(&[0.0, 0.0], 1.0), (&[2.0, 0.0], 1.0)])), 1.0);
        assert_eq!(rips_scale(&system(&[(&[0.0, 0.0], 1.0)])), 0.0);
        let expected = 17f64.sqrt() / (2f64.sqrt() + 3.0);
        assert_abs_diff_eq!(rips_scale(&tangent_triple()), expected, epsilon = 1e-15);
        assert_abs_diff_eq!(expected, 0.93406, epsilon = 1e-5);
    }

    #[test]
    fn rescale_examples() {
        let m = tangent_triple();
        assert_eq!(rescale(&m, 1.0).unwrap(), m);
        let half = rescale(&system(&[(&[0.0, 0.0], 2.0)]), 0.5).unwrap();
        assert_eq!(half, system(&[(&[0.0, 0.0], 1.0)]));
        assert!(matches!(rescale(&m, 0.0), Err(GeometryError::InvalidScale(_))));
        assert!(matches!(rescale(&m, -1.0), Err(GeometryError::InvalidScale(_))));
    }

    #[test]
    fn decision_tangent_triple() {
        let d = is_cech_system(&tangent_triple(), Tolerance::default());
        assert!(d.is_cech);
        let w = d.witness.unwrap();
        assert_abs_diff_eq!(w[0], 3.0, epsilon = 1e-9);
        assert_abs_diff_eq!(w[1], 0.0, epsilon = 1e-9);
        assert_abs_diff_eq!(w[2], 0.0, epsilon = 1e-9);
    }

    #[test]
    fn decision_empty_quadruple() {
        let s2 = 2f64.sqrt();
        let n = system(&[
            (&[4.0, 1.0, 0.0], s2),
            (&[4.0, -1.0, 0.0], s2),
            (&[0.0, 1.0, 0.0], 10f64.sqrt()),
            (&[3.0, 0.0, 1.0], 0.9),
        ]);
        let d = is_cech_system(&n, Tolerance::default());
        assert!(!d.is_cech);
        assert!(d.witness.is_none());
    }

    #[test]
    fn decision_single_disk_witness_is_on_its_boundary() {
        let d = is_cech_system(&system(&[(&[1.0, 2.0], 3.0)]), Tolerance::default());
        assert!(d.is_cech);
        assert_eq!(d.generating_subset, Some(vec![0]));
    }

    #[test]
    fn scale_two_disks_is_exact() {
        let r = cech_scale(&system(&[(&[0.0, 0.0], 1.0), (&[3.0, 0.0], 2.0)]), DEFAULT_ETA, Tolerance::default())
            .unwrap();
        assert_eq!(r.cech_scale, 1.0);
        assert!(r.exact);
        assert_eq!(r.iterations, 0);
    }

    #[test]
    fn scale_equilateral_triangle_attains_bound() {
        let eta = 1e-7;
        let r = cech_scale(&triangle(), eta, Tolerance::default()).unwrap();
        assert_abs_diff_eq!(r.rips_scale, 0.5, epsilon = 1e-15);
        assert!(r.cech_scale >= 1.0 / 3f64.sqrt() - 1e-9);
        assert!(r.cech_scale <= 1.0 / 3f64.sqrt() + eta);
        assert!(r.bracket.1 - r.bracket.0 <= eta);
        assert!(!r.exact);
    }

    #[test]
    fn scale_tangent_triple_converges_to_one() {
        let eta = 1e-6;
        let r = cech_scale(&tangent_triple(), eta, Tolerance::default()).unwrap();
        assert!((r.cech_scale - 1.0).abs() <= eta + 1e-9, "{}", r.cech_scale);
    }

    #[test]
    fn scale_rejects_bad_eta() {
        let m = triangle();
        assert!(matches!(cech_scale(&m, 0.0, Tolerance::default()), Err(GeometryError::InvalidPrecision(_))));
        assert!(matches!(cech_scale(&m, f64::NAN, Tolerance::default()), Err(GeometryError::InvalidPrecision(_))));
    }

    #[test]
    fn scale_single_disk_is_zero() {
        let r = cech_scale(&system(&[(&[1.0, 1.0], 1.0)]), DEFAULT_ETA, Tolerance::default()).unwrap();
        assert_eq!(r.cech_scale, 0.0);
        assert_eq!(r.witness.unwrap().as_slice(), &[1.0, 1.0]);
    }
}
