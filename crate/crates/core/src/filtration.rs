//! Filtered generalized Čech complex: each simplex enters at the Čech scale
//! of the disks it spans.

use itertools::Itertools;
use serde::Serialize;

use crate::cech::{cech_scale, rips_scale};
use crate::error::{GeometryError, Result};
use crate::geometry::{DiskSystem, Tolerance};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct WeightedSimplex {
    /// Sorted vertex indices into the deduplicated system.
    pub vertices: Vec<usize>,
    pub scale: f64,
}

impl WeightedSimplex {
    pub fn dimension(&self) -> usize {
        self.vertices.len() - 1
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Filtration {
    /// Sorted by scale, then dimension, then vertices.
    pub simplices: Vec<WeightedSimplex>,
    pub max_dimension: usize,
    /// `index_map[i]` is the vertex standing for disk `i` of the input.
    pub index_map: Vec<usize>,
    /// Largest count of skipped degenerate subsets seen in any scale computation.
    pub degenerate_subsets: usize,
}

impl Filtration {
    /// Simplices present at level `lambda`.
    pub fn level(&self, lambda: f64) -> impl Iterator<Item = &WeightedSimplex> {
        self.simplices.iter().filter(move |s| s.scale <= lambda)
    }

    pub fn find(&self, vertices: &[usize]) -> Option<&WeightedSimplex> {
        self.simplices.iter().find(|s| s.vertices == vertices)
    }
}

/// Builds the filtration up to `max_dim`. Identical disks are merged first;
/// vertices refer to the merged system through `index_map`.
pub fn build_filtration(
    system: &DiskSystem,
    max_dim: usize,
    eta: f64,
    tol: Tolerance,
) -> Result<Filtration> {
    if !(eta > 0.0) || !eta.is_finite() {
        return Err(GeometryError::InvalidPrecision(eta));
    }
    if max_dim + 1 > system.len() {
        return Err(GeometryError::MaxDimensionTooLarge { max_dim, limit: system.len() - 1 });
    }
    let (reduced, index_map) = system.deduplicate(tol);
    let top = max_dim.min(reduced.len() - 1);

    let mut simplices: Vec<WeightedSimplex> = Vec::new();
    let mut degenerate = 0;
    for size in 1..=top + 1 {
        let start = simplices.len();
        for vertices in (0..reduced.len()).combinations(size) {
            let scale = match size {
                1 => 0.0,
                2 => rips_scale(&reduced.subsystem(&vertices)?),
                _ => {
                    let report = cech_scale(&reduced.subsystem(&vertices)?, eta, tol)?;
                    degenerate = degenerate.max(report.degenerate_subsets);
                    report.cech_scale
                }
            };
            simplices.push(WeightedSimplex { vertices, scale });
        }
        if size > 2 {
            // Clamp to the facets so the complex is nested at every level.
            let (faces, current) = simplices.split_at_mut(start);
            let lower = &faces[faces.len() - binomial(reduced.len(), size - 1)..];
            for s in current.iter_mut() {
                for skip in 0..s.vertices.len() {
                    let facet: Vec<usize> =
                        s.vertices.iter().enumerate().filter(|&(i, _)| i != skip).map(|(_, &v)| v).collect();
                    let f = lower
                        .binary_search_by(|probe| probe.vertices.cmp(&facet))
                        .map(|i| lower[i].scale)
                        .expect("every facet was generated in the previous pass");
                    s.scale = s.scale.max(f);
                }
            }
        }
    }
    simplices.sort_by(|a, b| {
        a.scale
            .total_cmp(&b.scale)
            .then(a.vertices.len().cmp(&b.vertices.len()))
            .then_with(|| a.vertices.cmp(&b.vertices))
    });
    Ok(Filtration { simplices, max_dimension: top, index_map, degenerate_subsets: degenerate })
}

fn binomial(n: usize, k: usize) -> usize {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}
