#![allow(dead_code)]

use cech_kit::geometry::{boundary_poles, intersect_two_spheres, poles_codim1, poles_general, reduce_sphere_system};
use cech_kit::{Disk, DiskSystem, IntersectionKind, Point, Tolerance};
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rand::SeedableRng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn system(rows: &[(&[f64], f64)]) -> DiskSystem {
    DiskSystem::new(rows.iter().map(|(c, r)| Disk::new(c.to_vec(), *r).unwrap()).collect()).unwrap()
}

pub fn tangent_triple() -> DiskSystem {
    let s2 = 2f64.sqrt();
    system(&[(&[4.0, 1.0, 0.0], s2), (&[4.0, -1.0, 0.0], s2), (&[0.0, 0.0, 0.0], 3.0)])
}

pub fn empty_quadruple() -> DiskSystem {
    let s2 = 2f64.sqrt();
    system(&[
        (&[4.0, 1.0, 0.0], s2),
        (&[4.0, -1.0, 0.0], s2),
        (&[0.0, 1.0, 0.0], 10f64.sqrt()),
        (&[3.0, 0.0, 1.0], 0.9),
    ])
}

pub fn equilateral_triangle() -> DiskSystem {
    let h = 3f64.sqrt() / 2.0;
    system(&[(&[0.0, 0.0], 1.0), (&[1.0, 0.0], 1.0), (&[0.5, h], 1.0)])
}

/// Centers uniform in `[0,1]^d`, radii uniform in `[0.1, 1]`.
pub fn random_system(rng: &mut ChaCha8Rng, dim: usize, m: usize) -> DiskSystem {
    let disks = (0..m)
        .map(|_| {
            let c: Vec<f64> = (0..dim).map(|_| rng.gen_range(0.0..1.0)).collect();
            Disk::new(c, rng.gen_range(0.1..1.0)).unwrap()
        })
        .collect();
    DiskSystem::new(disks).unwrap()
}

pub fn unit_vector(rng: &mut ChaCha8Rng, dim: usize) -> Point {
    loop {
        let v = Point::from_iterator(dim, (0..dim).map(|_| rng.gen_range(-1.0..1.0)));
        let n = v.norm();
        if n > 1e-3 && n <= 1.0 {
            return v / n;
        }
    }
}

/// `d + 1` disks with pairwise intersecting members (a Rips system).
pub fn random_rips_system(rng: &mut ChaCha8Rng, dim: usize) -> DiskSystem {
    loop {
        let s = random_system(rng, dim, dim + 1);
        if cech_kit::rips_scale(&s) <= 1.0 {
            return s;
        }
    }
}

/// Rejection samples of the common intersection, drawn inside the box of
/// the smallest disk.
pub fn sample_intersection(rng: &mut ChaCha8Rng, system: &DiskSystem, count: usize, max_tries: usize) -> Vec<Point> {
    let smallest = system
        .iter()
        .min_by(|a, b| a.radius().total_cmp(&b.radius()))
        .unwrap();
    let mut out = Vec::with_capacity(count);
    for _ in 0..max_tries {
        if out.len() == count {
            break;
        }
        let p = Point::from_iterator(
            system.dim(),
            smallest.center().iter().map(|&c| c + rng.gen_range(-1.0..1.0) * smallest.radius()),
        );
        if system.iter().all(|d| (&p - d.center()).norm() <= d.radius()) {
            out.push(p);
        }
    }
    out
}

fn in_all(system: &DiskSystem, p: &Point) -> bool {
    system.contains_all(p, Tolerance::default())
}

/// How the pairwise case of the three-disk analysis reads its infima.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PairwiseInf {
    /// Lowest pole of the boundary intersection `∂D_j ∩ ∂D_k`.
    Boundary,
    /// Lowest point of the lens `D_j ∩ D_k`.
    Lens,
}

fn lowest_point(points: impl IntoIterator<Item = Point>, axis: usize) -> Option<Point> {
    points.into_iter().min_by(|a, b| a[axis].total_cmp(&b[axis]))
}

/// Three-disk case analysis for `inf π_axis(∩D)`: a disk pole inside the
/// intersection, else the largest pairwise infimum when attained inside,
/// else the south pole of the triple boundary intersection.
/// Returns `(case, value)`.
pub fn three_disk_lower_bound(system: &DiskSystem, axis: usize, pairwise: PairwiseInf) -> Option<(u8, f64)> {
    let tol = Tolerance::default();
    for d in system.iter() {
        let (south, _) = boundary_poles(d, axis).unwrap();
        if in_all(system, &south.point) {
            return Some((1, south.point[axis]));
        }
    }
    let mut best: Option<Point> = None;
    for (j, k) in [(0, 1), (0, 2), (1, 2)] {
        let sphere_pole = match intersect_two_spheres(system.disk(j), system.disk(k), tol).unwrap() {
            IntersectionKind::Empty => None,
            IntersectionKind::SinglePoint(p) => Some(p),
            IntersectionKind::Sphere(s) => Some(poles_codim1(&s, axis, tol).unwrap().0.point),
        };
        let inf = match pairwise {
            PairwiseInf::Boundary => sphere_pole,
            PairwiseInf::Lens => {
                let pair = system.subsystem(&[j, k]).unwrap();
                let disk_poles = [j, k].map(|i| boundary_poles(system.disk(i), axis).unwrap().0.point);
                lowest_point(disk_poles.into_iter().chain(sphere_pole).filter(|p| in_all(&pair, p)), axis)
            }
        };
        let Some(p) = inf else { continue };
        if best.as_ref().map_or(true, |b| p[axis] > b[axis]) {
            best = Some(p);
        }
    }
    if let Some(q) = best {
        if in_all(system, &q) {
            return Some((2, q[axis]));
        }
    }
    match reduce_sphere_system(system.disks(), tol).unwrap() {
        IntersectionKind::Empty => None,
        IntersectionKind::SinglePoint(p) => Some((3, p[axis])),
        IntersectionKind::Sphere(s) => Some((3, poles_general(&s, axis, tol).unwrap().0.point[axis])),
    }
}
