//! Brute-force ground truth for small dimensions (d <= 3), by multi-round
//! grid refinement of the convex function `f(x) = max_i ||x - c_i|| / r_i`.
//!
//! `min f` is the Čech scale, and `{f <= 1}` is the common intersection.
//! The grid minimizer is polished and certified through the Lagrangian dual
//! of `min max_i ||x - c_i||^2 / r_i^2`, whose bound for any weights has a
//! closed form. Nothing in the pole-based algorithms calls into this module.

use serde::{Deserialize, Serialize};

use crate::aabb::{box_intersect, BoundingBox, Interval};
use nalgebra::{DMatrix, DVector};

use crate::geometry::{DiskSystem, Point};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OracleConfig {
    /// Grid points per axis in every round.
    pub initial_grid: usize,
    pub refinement_rounds: usize,
    /// Each round shrinks the search window by this factor.
    pub shrink_factor: f64,
}

impl Default for OracleConfig {
    fn default() -> Self {
        Self { initial_grid: 64, refinement_rounds: 6, shrink_factor: 4.0 }
    }
}

impl OracleConfig {
    fn validated(self) -> Self {
        assert!(self.initial_grid >= 2, "grid needs at least two points per axis");
        assert!(self.refinement_rounds >= 1, "at least one round");
        assert!(self.shrink_factor > 1.0, "shrink factor must exceed 1");
        self
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct MinimaxResult {
    pub value: f64,
    pub argmin: Point,
    /// Grid spacing of the last round (largest over axes).
    pub final_step: f64,
    /// Certified error bound: `value - slack` is a dual lower bound on `min f`.
    pub slack: f64,
    /// Best value after each round; non-increasing.
    pub history: Vec<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OracleDecision {
    pub intersects: bool,
    /// `|value - 1| <= slack`: the certified bracket contains 1.
    pub indeterminate: bool,
    pub value: f64,
    pub slack: f64,
}

/// `max_i ||x - c_i|| / r_i`.
pub fn minimax_objective(system: &DiskSystem, x: &[f64]) -> f64 {
    system
        .iter()
        .map(|d| {
            let sq: f64 = d.center().iter().zip(x).map(|(c, v)| (v - c) * (v - c)).sum();
            sq.sqrt() / d.radius()
        })
        .fold(0.0, f64::max)
}

fn union_window(system: &DiskSystem) -> (Vec<f64>, Vec<f64>) {
    let dim = system.dim();
    let mut lo = vec![f64::INFINITY; dim];
    let mut hi = vec![f64::NEG_INFINITY; dim];
    for d in system.iter() {
        for q in 0..dim {
            lo[q] = lo[q].min(d.center()[q] - d.radius());
            hi[q] = hi[q].max(d.center()[q] + d.radius());
        }
    }
    (lo, hi)
}

struct Refined {
    best: Vec<f64>,
    value: f64,
    history: Vec<f64>,
    final_step: f64,
}

/// Minimizes `f` over shrinking grids centred on the incumbent. Axes with
/// `lo == hi` stay fixed. When the incumbent sits near the window border the
/// window is re-centred without shrinking, up to a bounded number of extra
/// passes, so flat valleys cannot strand the search.
fn refine<F>(mut lo: Vec<f64>, mut hi: Vec<f64>, cfg: OracleConfig, f: F) -> Refined
where
    F: Fn(&[f64]) -> f64,
{
    let dim = lo.len();
    let counts: Vec<usize> =
        lo.iter().zip(&hi).map(|(a, b)| if b > a { cfg.initial_grid } else { 1 }).collect();
    let mut best: Vec<f64> = lo.iter().zip(&hi).map(|(a, b)| 0.5 * (a + b)).collect();
    let mut best_value = f(&best);
    let mut history = Vec::with_capacity(cfg.refinement_rounds);
    let mut final_step = 0.0;
    let mut x = vec![0.0; dim];
    let mut idx = vec![0usize; dim];
    let mut rounds = 0;
    let mut extra = 0;
    while rounds < cfg.refinement_rounds {
        let step: Vec<f64> = (0..dim)
            .map(|q| if counts[q] > 1 { (hi[q] - lo[q]) / (counts[q] - 1) as f64 } else { 0.0 })
            .collect();
        final_step = step.iter().cloned().fold(0.0, f64::max);
        idx.iter_mut().for_each(|i| *i = 0);
        'grid: loop {
            for q in 0..dim {
                x[q] = lo[q] + step[q] * idx[q] as f64;
            }
            let v = f(&x);
            if v < best_value {
                best_value = v;
                best.copy_from_slice(&x);
            }
            for q in 0..dim {
                idx[q] += 1;
                if idx[q] < counts[q] {
                    continue 'grid;
                }
                idx[q] = 0;
            }
            break;
        }
        let near_border = (0..dim)
            .any(|q| counts[q] > 1 && (best[q] - lo[q] < 2.0 * step[q] || hi[q] - best[q] < 2.0 * step[q]));
        let shrink = if near_border && extra < 4 * cfg.refinement_rounds {
            extra += 1;
            1.0
        } else {
            rounds += 1;
            history.push(best_value);
            cfg.shrink_factor
        };
        for q in 0..dim {
            let half = 0.5 * (hi[q] - lo[q]) / shrink;
            lo[q] = best[q] - half;
            hi[q] = best[q] + half;
        }
    }
    Refined { best, value: best_value, history, final_step }
}

/// Lagrangian bound: for weights `w` on the simplex,
/// `min f^2 >= min_x sum_i w_i ||x - c_i||^2 / r_i^2`, and the inner minimum
/// sits at the weighted mean of the centers. Coordinates in `fixed` are held
/// at their value. Returns the bound on `f^2` and the weighted mean.
fn dual_bound(system: &DiskSystem, fixed: &[Option<f64>], w: &[f64]) -> (f64, Vec<f64>) {
    let a: Vec<f64> = system.iter().zip(w).map(|(d, w)| w / (d.radius() * d.radius())).collect();
    let total: f64 = a.iter().sum();
    let mean: Vec<f64> = fixed
        .iter()
        .enumerate()
        .map(|(q, t)| t.unwrap_or_else(|| system.iter().zip(&a).map(|(d, a)| a * d.center()[q]).sum::<f64>() / total))
        .collect();
    let bound = system
        .iter()
        .zip(&a)
        .map(|(d, a)| a * d.center().iter().zip(&mean).map(|(c, x)| (x - c) * (x - c)).sum::<f64>())
        .sum();
    (bound, mean)
}

/// Candidate weights from a near-optimal point: for every subset of at most
/// `free + 1` disks, the minimum-norm convex combination of the gradients of
/// `||x - c_i||^2 / r_i^2` at `x`, when it has nonnegative weights.
fn candidate_weights(system: &DiskSystem, fixed: &[Option<f64>], x: &[f64]) -> Vec<Vec<f64>> {
    let free: Vec<usize> = (0..fixed.len()).filter(|&q| fixed[q].is_none()).collect();
    let grads: Vec<Vec<f64>> = system
        .iter()
        .map(|d| free.iter().map(|&q| (x[q] - d.center()[q]) / (d.radius() * d.radius())).collect())
        .collect();
    let m = system.len();
    let mut out = Vec::new();
    for mask in 1usize..(1 << m) {
        let subset: Vec<usize> = (0..m).filter(|i| mask >> i & 1 == 1).collect();
        let k = subset.len();
        if k > free.len() + 1 {
            continue;
        }
        // KKT system of min ||G l||^2 subject to sum l = 1.
        let mut kkt = DMatrix::zeros(k + 1, k + 1);
        for (r, &i) in subset.iter().enumerate() {
            for (c, &j) in subset.iter().enumerate() {
                kkt[(r, c)] = grads[i].iter().zip(&grads[j]).map(|(u, v)| u * v).sum();
            }
            kkt[(r, k)] = 1.0;
            kkt[(k, r)] = 1.0;
        }
        let mut rhs = DVector::zeros(k + 1);
        rhs[k] = 1.0;
        let Some(sol) = kkt.lu().solve(&rhs) else { continue };
        if (0..k).any(|r| !(sol[r] >= 0.0)) {
            continue;
        }
        let mut w = vec![0.0; m];
        for (r, &i) in subset.iter().enumerate() {
            w[i] = sol[r];
        }
        out.push(w);
    }
    out
}

struct Certified {
    value: f64,
    point: Vec<f64>,
    lower: f64,
}

/// Squared objective terms `||x - c_i||^2 / r_i^2`, the dual gradient.
fn squared_terms(system: &DiskSystem, x: &[f64]) -> Vec<f64> {
    system
        .iter()
        .map(|d| d.center().iter().zip(x).map(|(c, v)| (v - c) * (v - c)).sum::<f64>() / (d.radius() * d.radius()))
        .collect()
}

/// Maximizes the dual bound with away-step Frank-Wolfe, starting from the
/// best candidate weights at the grid minimizer. The duality gap at the
/// weighted mean is `f(mean)^2 - bound`, so the primal and dual sides close
/// together; the true minimum stays bracketed throughout.
fn certify(system: &DiskSystem, fixed: &[Option<f64>], start: Vec<f64>, start_value: f64) -> Certified {
    let m = system.len();
    let bound_of = |w: &[f64]| dual_bound(system, fixed, w).0;
    let mut w = candidate_weights(system, fixed, &start)
        .into_iter()
        .max_by(|u, v| bound_of(u).total_cmp(&bound_of(v)))
        .unwrap_or_else(|| vec![1.0 / m as f64; m]);
    let (mut point, mut value) = (start, start_value);
    let mut lower_sq = 0.0f64;
    for _ in 0..400 {
        let (bound, mean) = dual_bound(system, fixed, &w);
        lower_sq = lower_sq.max(bound);
        let g = squared_terms(system, &mean);
        let v = g.iter().cloned().fold(0.0, f64::max).sqrt();
        if v < value {
            value = v;
            point = mean;
        }
        if value * value - lower_sq <= 1e-15 * (1.0 + lower_sq) {
            break;
        }
        let toward = (0..m).max_by(|&i, &j| g[i].total_cmp(&g[j])).unwrap();
        let away = (0..m).filter(|&i| w[i] > 0.0).min_by(|&i, &j| g[i].total_cmp(&g[j])).unwrap();
        let (dir, max_step): (Vec<f64>, f64) = if g[toward] - bound >= bound - g[away] {
            ((0..m).map(|i| (i == toward) as u8 as f64 - w[i]).collect(), 1.0)
        } else {
            let wa = w[away];
            ((0..m).map(|i| w[i] - (i == away) as u8 as f64).collect(), wa / (1.0 - wa).max(f64::MIN_POSITIVE))
        };
        // The bound is concave along the segment: golden-section search.
        let at = |t: f64| -> Vec<f64> { w.iter().zip(&dir).map(|(w, d)| (w + t * d).max(0.0)).collect() };
        let ratio = 0.5 * (5f64.sqrt() - 1.0);
        let (mut lo, mut hi) = (0.0, max_step);
        for _ in 0..60 {
            let (x1, x2) = (hi - ratio * (hi - lo), lo + ratio * (hi - lo));
            if bound_of(&at(x1)) < bound_of(&at(x2)) {
                lo = x1;
            } else {
                hi = x2;
            }
        }
        let t = if bound_of(&at(max_step)) >= bound_of(&at(lo)) { max_step } else { lo };
        let next = at(t);
        let total: f64 = next.iter().sum();
        w = next.into_iter().map(|x| x / total).collect();
    }
    // Allowance for rounding in the two evaluations.
    let lower = (lower_sq.sqrt() - 1e-13 * (1.0 + value)).max(0.0);
    Certified { value, point, lower: lower.min(value) }
}

/// Approximates `min_x max_i ||x - c_i|| / r_i` and its minimizer.
pub fn oracle_minimax(system: &DiskSystem, cfg: OracleConfig) -> MinimaxResult {
    let cfg = cfg.validated();
    let (lo, hi) = union_window(system);
    let r = refine(lo, hi, cfg, |x| minimax_objective(system, x));
    let c = certify(system, &vec![None; system.dim()], r.best, r.value);
    let mut history = r.history;
    history.push(c.value);
    MinimaxResult {
        value: c.value,
        argmin: Point::from_vec(c.point),
        final_step: r.final_step,
        slack: c.value - c.lower,
        history,
    }
}

/// Intersection test `min f <= 1`, flagging the band where the certified
/// bracket straddles 1.
pub fn oracle_intersects(system: &DiskSystem, cfg: OracleConfig) -> OracleDecision {
    let m = oracle_minimax(system, cfg);
    OracleDecision {
        intersects: m.value <= 1.0,
        indeterminate: (m.value - 1.0).abs() <= m.slack,
        value: m.value,
        slack: m.slack,
    }
}

/// Minimum of `f` over the slice `x_axis = t`.
fn slice_minimum(system: &DiskSystem, cfg: OracleConfig, axis: usize, t: f64) -> f64 {
    let (mut lo, mut hi) = union_window(system);
    lo[axis] = t;
    hi[axis] = t;
    let r = refine(lo, hi, cfg, |x| minimax_objective(system, x));
    let mut fixed = vec![None; system.dim()];
    fixed[axis] = Some(t);
    certify(system, &fixed, r.best, r.value).value
}

/// Per-axis extremes of `{f <= level}` with `level = max(1, min f)`.
///
/// `g(t) = min {f(x) : x_q = t}` is convex, so each extreme is found by
/// bisection on `t` between the minimizer of `f` (feasible) and the edge of
/// the disks' common box (infeasible), deciding every slice with a
/// `(d-1)`-dimensional refinement. When `min f` only reaches 1 within the
/// grid slack the box collapses onto the minimizer.
pub fn oracle_aabb(system: &DiskSystem, cfg: OracleConfig) -> Option<BoundingBox> {
    let cfg = cfg.validated();
    let minimax = oracle_minimax(system, cfg);
    if minimax.value > 1.0 + minimax.slack {
        return None;
    }
    let level = minimax.value.max(1.0);
    let boxes: Vec<BoundingBox> = system.iter().map(BoundingBox::of_disk).collect();
    let window = box_intersect(&boxes).expect("system is nonempty");
    let resolution = 1e-3 * minimax.final_step;
    let mut intervals = Vec::with_capacity(system.dim());
    for q in 0..system.dim() {
        let inside = minimax.argmin[q];
        let extreme = |outside: f64| {
            let (mut feasible, mut infeasible) = (inside, outside);
            for _ in 0..200 {
                if (feasible - infeasible).abs() <= resolution {
                    break;
                }
                let mid = 0.5 * (feasible + infeasible);
                if slice_minimum(system, cfg, q, mid) <= level {
                    feasible = mid;
                } else {
                    infeasible = mid;
                }
            }
            feasible
        };
        let lower = extreme(window.interval(q).lower.min(inside) - minimax.final_step);
        let upper = extreme(window.interval(q).upper.max(inside) + minimax.final_step);
        intervals.push(Interval::new(lower, upper));
    }
    Some(BoundingBox::new(intervals))
}
