//! Detector-channel intensities and intensity extrema.
//!
//! With equal overlap alpha between every path state and the output channel,
//! the channel probability is
//!
//!   I = |alpha|^2 (1 + sum_{j != k} Re[rho_jk conj(Gamma_jk)
//!         e^{i(theta_j - theta_k)}])
//!
//! The off-diagonal phases of rho and Gamma are carried faithfully; nothing
//! assumes they can be absorbed into the path phases. Extrema come either in
//! closed form (independent phases, absorbable case), from a multi-start
//! descent over the phase torus, or from a dense 1-D grid with golden-section
//! refinement (single-parameter sweeps). `extremize_oracle` is a brute-force
//! grid search kept as an independent cross-check.

use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::PI;
use num_complex::Complex64;
// Needed for no_std float math; redundant whenever std is linked.
#[allow(unused_imports)]
use num_traits::Float;

use crate::error::Error;
use crate::model::{PhaseModel, Scenario};

const TWO_PI: f64 = 2.0 * PI;
/// Effective off-diagonal magnitudes below this are treated as dark.
const MAG_EPS: f64 = 1e-12;
/// Default sample count for single-parameter extremization grids.
pub const LINEAR_GRID_DEFAULT: usize = 4096;

/// theta samples and the intensities of a single-parameter sweep.
#[derive(Debug, Clone, PartialEq)]
pub struct IntensityPattern {
    pub thetas: Vec<f64>,
    pub intensities: Vec<f64>,
}

/// Intensity extrema with the phase configurations that attain them and the
/// incoherent baseline (the phase average).
#[derive(Debug, Clone, PartialEq)]
pub struct ExtremaResult {
    pub i_max: f64,
    pub i_min: f64,
    pub i_inc: f64,
    pub argmax: PhaseModel,
    pub argmin: PhaseModel,
}

/// Precomputed interference terms: one (j, k, magnitude, phase) triple per
/// unordered pair with E_jk = rho_jk conj(Gamma_jk) nonzero, so that
/// I(theta) = alpha_sq (1 + sum 2 mag cos(arg + theta_j - theta_k)).
struct Effective {
    n: usize,
    alpha_sq: f64,
    terms: Vec<(usize, usize, f64, f64)>,
}

impl Effective {
    fn build(s: &Scenario) -> Self {
        let n = s.n();
        let rho = s.state();
        let mut terms = Vec::new();
        for j in 0..n {
            for k in (j + 1)..n {
                let mut e = rho.entry(j, k);
                if let Some(g) = s.gram() {
                    e *= g.entry(j, k).conj();
                }
                let mag = e.norm();
                if mag > MAG_EPS {
                    terms.push((j, k, mag, e.arg()));
                }
            }
        }
        Effective {
            n,
            alpha_sq: s.alpha_sq(),
            terms,
        }
    }

    fn intensity_at(&self, phases: &[f64]) -> f64 {
        let mut acc = 1.0;
        for &(j, k, mag, arg) in &self.terms {
            acc += 2.0 * mag * (arg + phases[j] - phases[k]).cos();
        }
        let v = self.alpha_sq * acc;
        if v < 0.0 {
            0.0
        } else {
            v
        }
    }

    /// Intensity as a function of the torus point (theta_2..theta_n),
    /// theta_1 pinned at 0.
    fn intensity_torus(&self, x: &[f64]) -> f64 {
        let mut acc = 1.0;
        for &(j, k, mag, arg) in &self.terms {
            let tj = if j == 0 { 0.0 } else { x[j - 1] };
            let tk = if k == 0 { 0.0 } else { x[k - 1] };
            acc += 2.0 * mag * (arg + tj - tk).cos();
        }
        let v = self.alpha_sq * acc;
        if v < 0.0 {
            0.0
        } else {
            v
        }
    }

    fn intensity_linear(&self, theta: f64, offsets: &[f64]) -> f64 {
        let mut acc = 1.0;
        for &(j, k, mag, arg) in &self.terms {
            let d = ((j + 1) as f64 - (k + 1) as f64) * theta + offsets[j] - offsets[k];
            acc += 2.0 * mag * (arg + d).cos();
        }
        let v = self.alpha_sq * acc;
        if v < 0.0 {
            0.0
        } else {
            v
        }
    }

    /// |alpha|^2 (1 + sum_{j != k} |rho_jk Gamma_jk|): the intensity with
    /// every cosine at +1, reachable only when the phases are absorbable.
    fn closed_form_max(&self) -> f64 {
        let sum: f64 = self.terms.iter().map(|t| 2.0 * t.2).sum();
        self.alpha_sq * (1.0 + sum)
    }

    /// Per-path potentials phi with arg(E_jk) = phi_j - phi_k propagated over
    /// the nonzero-term graph (one root per connected component). Paths with
    /// no interference terms keep NaN.
    fn phase_potentials(&self) -> Vec<f64> {
        let mut phi = vec![f64::NAN; self.n];
        loop {
            let mut changed = false;
            for &(j, k, _, arg) in &self.terms {
                if !phi[j].is_nan() && phi[k].is_nan() {
                    phi[k] = phi[j] - arg;
                    changed = true;
                } else if phi[j].is_nan() && !phi[k].is_nan() {
                    phi[j] = phi[k] + arg;
                    changed = true;
                }
            }
            if !changed {
                match self.terms.iter().find(|&&(j, _, _, _)| phi[j].is_nan()) {
                    Some(&(j, _, _, _)) => phi[j] = 0.0,
                    None => break,
                }
            }
        }
        phi
    }

    /// True when all effective off-diagonal phases are of the form
    /// phi_j - phi_k, i.e. every interference cosine can reach +1 at once.
    fn absorbable_independent(&self) -> bool {
        let phi = self.phase_potentials();
        self.terms.iter().all(|&(j, k, _, arg)| {
            let dev =
                Complex64::from_polar(1.0, arg) - Complex64::from_polar(1.0, phi[j] - phi[k]);
            dev.norm() <= 1e-9
        })
    }

    /// Compensating path phases theta_j = -phi_j that bring every cosine to
    /// +1 (valid only when `absorbable_independent` holds).
    fn absorbing_phases(&self) -> Vec<f64> {
        self.phase_potentials()
            .iter()
            .map(|&p| if p.is_nan() { 0.0 } else { -p })
            .collect()
    }
}

/// Channel probability for the scenario's concrete phase configuration.
pub fn intensity(s: &Scenario) -> f64 {
    let eff = Effective::build(s);
    let phases = s
        .phases()
        .path_phases()
        .expect("angles validated at construction");
    eff.intensity_at(&phases)
}

/// Uniform sweep of the single parameter theta over [0, 2 pi).
pub fn sweep(s: &Scenario, grid: usize) -> Result<IntensityPattern, Error> {
    let offsets = match s.phases() {
        PhaseModel::Linear { offsets, .. } => offsets.clone(),
        PhaseModel::Independent(_) => return Err(Error::UnsupportedSweep),
    };
    if grid < 2 {
        return Err(Error::GridTooSmall { grid });
    }
    let eff = Effective::build(s);
    let mut thetas = Vec::with_capacity(grid);
    let mut intensities = Vec::with_capacity(grid);
    for i in 0..grid {
        let theta = i as f64 * TWO_PI / grid as f64;
        thetas.push(theta);
        intensities.push(eff.intensity_linear(theta, &offsets));
    }
    Ok(IntensityPattern { thetas, intensities })
}

/// Whether the scenario's phase freedom can bring every interference cosine
/// to +1 simultaneously (making I_max reach the closed-form bound).
pub fn absorbable_phases(s: &Scenario) -> bool {
    let eff = Effective::build(s);
    if eff.terms.is_empty() {
        return true;
    }
    match s.phases() {
        PhaseModel::Independent(_) => eff.absorbable_independent(),
        PhaseModel::Linear { offsets, .. } => {
            let bound = eff.closed_form_max();
            let (max, _) = linear_extremum(&eff, offsets, LINEAR_GRID_DEFAULT, true);
            max >= bound - 1e-9 * bound.max(1.0)
        }
    }
}

/// The intensity bound |alpha|^2 (1 + sum_{j != k} |rho_jk Gamma_jk|).
pub fn closed_form_max(s: &Scenario) -> f64 {
    Effective::build(s).closed_form_max()
}

/// Locate intensity extrema under the scenario's phase model.
pub fn extremize(s: &Scenario) -> ExtremaResult {
    extremize_with_grid(s, LINEAR_GRID_DEFAULT)
}

/// `extremize` with an explicit sample count for the single-parameter grid
/// (also used to seed the torus descent).
pub fn extremize_with_grid(s: &Scenario, grid: usize) -> ExtremaResult {
    let eff = Effective::build(s);
    let n = s.n();
    let i_inc = s.alpha_sq();
    match s.phases() {
        PhaseModel::Linear { offsets, .. } => {
            let (i_max, t_max) = linear_extremum(&eff, offsets, grid, true);
            let (i_min, t_min) = linear_extremum(&eff, offsets, grid, false);
            ExtremaResult {
                i_max,
                i_min,
                i_inc,
                argmax: s.phases().at_theta(t_max),
                argmin: s.phases().at_theta(t_min),
            }
        }
        PhaseModel::Independent(_) => {
            let (i_min, x_min) = torus_extremum(&eff, n, false);
            let (i_max, x_max) = if eff.absorbable_independent() {
                let phases = eff.absorbing_phases();
                (eff.closed_form_max(), phases)
            } else {
                let (v, x) = torus_extremum(&eff, n, true);
                (v, torus_to_phases(&x))
            };
            ExtremaResult {
                i_max,
                i_min,
                i_inc,
                argmax: PhaseModel::Independent(x_max),
                argmin: PhaseModel::Independent(torus_to_phases(&x_min)),
            }
        }
    }
}

/// Brute-force grid evaluation (with local grid-zoom polish); a slow
/// independent cross-check for `extremize`.
pub fn extremize_oracle(s: &Scenario, per_axis: usize) -> Result<ExtremaResult, Error> {
    if per_axis < 2 {
        return Err(Error::GridTooSmall { grid: per_axis });
    }
    let eff = Effective::build(s);
    let n = s.n();
    let i_inc = s.alpha_sq();
    match s.phases() {
        PhaseModel::Linear { offsets, .. } => {
            let f = |x: &[f64]| eff.intensity_linear(x[0], offsets);
            let (i_max, t_max) = grid_extremum(&f, 1, per_axis, true);
            let (i_min, t_min) = grid_extremum(&f, 1, per_axis, false);
            Ok(ExtremaResult {
                i_max,
                i_min,
                i_inc,
                argmax: s.phases().at_theta(fold_angle(t_max[0])),
                argmin: s.phases().at_theta(fold_angle(t_min[0])),
            })
        }
        PhaseModel::Independent(_) => {
            if n > 5 {
                return Err(Error::DimensionTooLarge { n, max: 5 });
            }
            let dims = n.saturating_sub(1).max(1);
            let f = |x: &[f64]| eff.intensity_torus(x);
            let (i_max, x_max) = grid_extremum(&f, dims, per_axis, true);
            let (i_min, x_min) = grid_extremum(&f, dims, per_axis, false);
            Ok(ExtremaResult {
                i_max,
                i_min,
                i_inc,
                argmax: PhaseModel::Independent(torus_to_phases(&x_max)),
                argmin: PhaseModel::Independent(torus_to_phases(&x_min)),
            })
        }
    }
}

fn torus_to_phases(x: &[f64]) -> Vec<f64> {
    let mut phases = Vec::with_capacity(x.len() + 1);
    phases.push(0.0);
    phases.extend(x.iter().map(|&t| fold_angle(t)));
    phases
}

fn fold_angle(t: f64) -> f64 {
    let mut v = t % TWO_PI;
    if v < 0.0 {
        v += TWO_PI;
    }
    if TWO_PI - v < 1e-9 {
        0.0
    } else {
        v
    }
}

// ---------------------------------------------------------------------------
// single-parameter extremization: dense grid + golden-section refinement

fn linear_extremum(eff: &Effective, offsets: &[f64], grid: usize, maximize: bool) -> (f64, f64) {
    let grid = grid.max(2);
    let sign = if maximize { -1.0 } else { 1.0 };
    let g = |theta: f64| sign * eff.intensity_linear(theta, offsets);
    let h = TWO_PI / grid as f64;
    let mut best_i = 0usize;
    let mut best_v = g(0.0);
    for i in 1..grid {
        let v = g(i as f64 * h);
        if v < best_v {
            best_v = v;
            best_i = i;
        }
    }
    let center = best_i as f64 * h;
    let (theta, v) = golden_min(&g, center - h, center + h, 1e-10);
    // The grid point itself wins if refinement stalled on a flat pattern.
    if v <= best_v {
        (sign * v, fold_angle(theta))
    } else {
        (sign * best_v, fold_angle(center))
    }
}

fn golden_min(g: &dyn Fn(f64) -> f64, mut a: f64, mut b: f64, tol: f64) -> (f64, f64) {
    const INV_PHI: f64 = 0.618_033_988_749_894_9;
    let mut c = b - INV_PHI * (b - a);
    let mut d = a + INV_PHI * (b - a);
    let mut fc = g(c);
    let mut fd = g(d);
    while b - a > tol {
        if fc <= fd {
            b = d;
            d = c;
            fd = fc;
            c = b - INV_PHI * (b - a);
            fc = g(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + INV_PHI * (b - a);
            fd = g(d);
        }
    }
    let mid = 0.5 * (a + b);
    (mid, g(mid))
}

// ---------------------------------------------------------------------------
// torus extremization: coarse grid seeds + quasi-random multi-start descent

fn torus_extremum(eff: &Effective, n: usize, maximize: bool) -> (f64, Vec<f64>) {
    let dims = n.saturating_sub(1);
    let sign = if maximize { -1.0 } else { 1.0 };
    let f = |x: &[f64]| sign * eff.intensity_torus(x);
    if dims == 0 {
        return (sign * f(&[]), Vec::new());
    }

    let mut starts: Vec<Vec<f64>> = Vec::new();
    // Best few points of a coarse lattice.
    let per_axis = match dims {
        1 => 64,
        2 => 24,
        3 => 12,
        _ => 7,
    };
    let mut scored: Vec<(f64, Vec<f64>)> = Vec::new();
    let mut index = vec![0usize; dims];
    loop {
        let x: Vec<f64> = index.iter().map(|&i| i as f64 * TWO_PI / per_axis as f64).collect();
        scored.push((f(&x), x));
        let mut d = 0;
        loop {
            index[d] += 1;
            if index[d] < per_axis {
                break;
            }
            index[d] = 0;
            d += 1;
            if d == dims {
                break;
            }
        }
        if d == dims {
            break;
        }
    }
    scored.sort_by(|a, b| a.0.total_cmp(&b.0));
    for (_, x) in scored.into_iter().take(8) {
        starts.push(x);
    }
    // Quasi-random Kronecker lattice starts.
    const ROOTS: [f64; 5] = [2.0, 3.0, 5.0, 7.0, 11.0];
    for i in 0..32usize {
        let x: Vec<f64> = (0..dims)
            .map(|d| {
                let a = ROOTS[d % ROOTS.len()].sqrt();
                (((i + 1) as f64 * a).fract()) * TWO_PI
            })
            .collect();
        starts.push(x);
    }

    let mut best: Option<(f64, Vec<f64>)> = None;
    for x0 in starts {
        let (v, x) = descend(&f, x0);
        let better = match &best {
            None => true,
            Some((bv, _)) => v < *bv,
        };
        if better {
            best = Some((v, x));
        }
    }
    let (v, x) = best.expect("at least one start");
    (sign * v, x)
}

/// Local descent with central-difference gradients and a doubling/halving
/// line search; stops once the accepted step falls below 1e-10.
fn descend(f: &dyn Fn(&[f64]) -> f64, mut x: Vec<f64>) -> (f64, Vec<f64>) {
    let dims = x.len();
    let mut fx = f(&x);
    let mut step = 0.4;
    const H: f64 = 1e-5;
    for _ in 0..400 {
        let mut g = vec![0.0; dims];
        let mut gn = 0.0;
        for d in 0..dims {
            let orig = x[d];
            x[d] = orig + H;
            let fp = f(&x);
            x[d] = orig - H;
            let fm = f(&x);
            x[d] = orig;
            g[d] = (fp - fm) / (2.0 * H);
            gn += g[d] * g[d];
        }
        gn = gn.sqrt();
        if gn < 1e-12 {
            break;
        }
        let dir: Vec<f64> = g.iter().map(|v| -v / gn).collect();
        let trial = |t: f64, x: &[f64]| -> (f64, Vec<f64>) {
            let y: Vec<f64> = x.iter().zip(dir.iter()).map(|(a, b)| a + t * b).collect();
            (f(&y), y)
        };
        let (mut ft, mut xt) = trial(step, &x);
        if ft < fx {
            // Expand while it keeps helping.
            let mut t = step;
            loop {
                let t2 = t * 2.0;
                let (f2, x2) = trial(t2, &x);
                if f2 < ft {
                    t = t2;
                    ft = f2;
                    xt = x2;
                } else {
                    break;
                }
            }
            step = t;
        } else {
            let mut t = step;
            let mut ok = false;
            while t > 1e-11 {
                t *= 0.5;
                let (f2, x2) = trial(t, &x);
                if f2 < fx {
                    ft = f2;
                    xt = x2;
                    ok = true;
                    break;
                }
            }
            step = t;
            if !ok {
                break;
            }
        }
        x = xt;
        fx = ft;
        if step < 1e-10 {
            break;
        }
    }
    (fx, x)
}

// ---------------------------------------------------------------------------
// oracle: exhaustive lattice + grid-zoom polish

fn grid_extremum(
    f: &dyn Fn(&[f64]) -> f64,
    dims: usize,
    per_axis: usize,
    maximize: bool,
) -> (f64, Vec<f64>) {
    let sign = if maximize { -1.0 } else { 1.0 };
    let g = |x: &[f64]| sign * f(x);
    let h = TWO_PI / per_axis as f64;
    let mut best_x = vec![0.0; dims];
    let mut best_v = g(&best_x);
    let mut index = vec![0usize; dims];
    loop {
        let mut d = 0;
        loop {
            index[d] += 1;
            if index[d] < per_axis {
                break;
            }
            index[d] = 0;
            d += 1;
            if d == dims {
                break;
            }
        }
        if d == dims {
            break;
        }
        let x: Vec<f64> = index.iter().map(|&i| i as f64 * h).collect();
        let v = g(&x);
        if v < best_v {
            best_v = v;
            best_x = x;
        }
    }
    // Zoom: shrink a lattice box around the best point.
    let mut half = h;
    let mut center = best_x;
    for _ in 0..60 {
        let mut local_best = (best_v, center.clone());
        let mut idx = vec![0usize; dims];
        loop {
            let x: Vec<f64> = idx
                .iter()
                .zip(center.iter())
                .map(|(&i, &c)| c - half + i as f64 * half / 2.0)
                .collect();
            let v = g(&x);
            if v < local_best.0 {
                local_best = (v, x);
            }
            let mut d = 0;
            loop {
                idx[d] += 1;
                if idx[d] < 5 {
                    break;
                }
                idx[d] = 0;
                d += 1;
                if d == dims {
                    break;
                }
            }
            if d == dims {
                break;
            }
        }
        best_v = local_best.0;
        center = local_best.1;
        half *= 0.55;
        if half < 1e-12 {
            break;
        }
    }
    (sign * best_v, center)
}
