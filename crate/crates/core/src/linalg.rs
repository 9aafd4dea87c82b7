//! Small dense helpers for the Gram systems that appear in sphere reduction
//! and pole computation.

use nalgebra::{DMatrix, DVector};

use crate::error::{GeometryError, Result};

/// Relative singular-value cutoff below which a Gram matrix is declared
/// rank deficient. Gram matrices square the condition number of the
/// underlying vectors, so this corresponds to a cutoff of ~1e-6 on them.
pub const GRAM_RANK_CUTOFF: f64 = 1e-12;

/// Gram matrix `A[i][j] = v_i . v_j`.
pub fn gram(vectors: &[DVector<f64>]) -> DMatrix<f64> {
    let k = vectors.len();
    DMatrix::from_fn(k, k, |i, j| vectors[i].dot(&vectors[j]))
}

/// Factored Gram matrix that can be reused for several right-hand sides.
pub struct GramSolver {
    svd: nalgebra::SVD<f64, nalgebra::Dyn, nalgebra::Dyn>,
    size: usize,
}

impl GramSolver {
    /// Factors `A` with an SVD and rejects it when numerically rank deficient.
    pub fn new(a: DMatrix<f64>) -> Result<Self> {
        let size = a.nrows();
        let svd = a.svd(true, true);
        let max = svd.singular_values.iter().cloned().fold(0.0_f64, f64::max);
        let rank = svd
            .singular_values
            .iter()
            .filter(|&&s| s > GRAM_RANK_CUTOFF * max && s > 0.0)
            .count();
        if rank < size {
            return Err(GeometryError::DegenerateConfiguration { rank, size });
        }
        Ok(Self { svd, size })
    }

    pub fn solve(&self, rhs: &DVector<f64>) -> DVector<f64> {
        debug_assert_eq!(rhs.len(), self.size);
        // Full rank is checked in `new`, so the pseudo-inverse is the inverse.
        self.svd
            .solve(rhs, 0.0)
            .expect("SVD was computed with both U and V")
    }
}

/// Removes from `v` its component in the span of `vectors`.
pub fn project_out(v: &DVector<f64>, vectors: &[DVector<f64>], solver: &GramSolver) -> DVector<f64> {
    if vectors.is_empty() {
        return v.clone();
    }
    let rhs = DVector::from_iterator(vectors.len(), vectors.iter().map(|n| n.dot(v)));
    let coeffs = solver.solve(&rhs);
    let mut out = v.clone();
    for (c, n) in coeffs.iter().zip(vectors) {
        out.axpy(-c, n, 1.0);
    }
    out
}
