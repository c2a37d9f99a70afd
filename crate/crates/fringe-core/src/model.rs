//! Domain types for the quanton state, ancilla overlaps and path phases.
//!
//! All types are immutable values and all operations are pure; construction
//! validates the physical invariants (Hermiticity and trace within 1e-12,
//! eigenvalues above the -1e-10 floor) and nothing mutates data afterwards.
//!
//! Path indices in the public operations are 1-based, matching the usual
//! k in {1, ..., n} labeling of slits; raw `entry(row, col)` accessors are
//! 0-based like any other matrix code.

use alloc::vec;
use alloc::vec::Vec;
use num_complex::Complex64;
// Needed for no_std float math; redundant whenever std is linked.
#[allow(unused_imports)]
use num_traits::Float;

use crate::error::Error;
use crate::matrix;

pub(crate) const TOL_HERMITIAN: f64 = 1e-12;
pub(crate) const TOL_TRACE: f64 = 1e-12;
pub(crate) const TOL_NORM: f64 = 1e-12;
pub(crate) const EIGENVALUE_FLOOR: f64 = -1e-10;

/// n x n Hermitian, PSD, unit-trace matrix: the quanton state in the path
/// basis.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    n: usize,
    entries: Vec<Complex64>,
}

impl DensityMatrix {
    /// Validate and wrap a row-major n x n matrix.
    pub fn new(n: usize, entries: Vec<Complex64>) -> Result<Self, Error> {
        if n == 0 || entries.len() != n * n {
            return Err(Error::DimensionMismatch {
                expected: n * n,
                got: entries.len(),
            });
        }
        let dev = matrix::max_hermitian_deviation(n, &entries);
        if dev > TOL_HERMITIAN {
            return Err(Error::NotHermitian { max_deviation: dev });
        }
        let trace: f64 = (0..n).map(|k| entries[matrix::idx(n, k, k)].re).sum();
        if (trace - 1.0).abs() > TOL_TRACE {
            return Err(Error::TraceNotOne { trace });
        }
        let min_eig = matrix::min_eigenvalue(n, &entries);
        if min_eig < EIGENVALUE_FLOOR {
            return Err(Error::NotPositiveSemidefinite {
                min_eigenvalue: min_eig,
            });
        }
        for r in 0..n {
            for c in (r + 1)..n {
                let bound = (entries[matrix::idx(n, r, r)].re.max(0.0)
                    * entries[matrix::idx(n, c, c)].re.max(0.0))
                .sqrt();
                if entries[matrix::idx(n, r, c)].norm() > bound + 1e-9 {
                    return Err(Error::CauchySchwarzViolation { row: r, col: c });
                }
            }
        }
        Ok(Self { n, entries })
    }

    /// rho_jk = a_j conj(a_k) for a normalized amplitude vector.
    pub fn from_pure_amplitudes(amps: &[Complex64]) -> Result<Self, Error> {
        let n = amps.len();
        if n == 0 {
            return Err(Error::DimensionMismatch { expected: 1, got: 0 });
        }
        let norm_sq: f64 = amps.iter().map(|a| a.norm_sqr()).sum();
        if (norm_sq - 1.0).abs() > TOL_NORM {
            return Err(Error::NotNormalized { norm_sq });
        }
        let mut entries = vec![Complex64::default(); n * n];
        for r in 0..n {
            for c in 0..n {
                entries[matrix::idx(n, r, c)] = amps[r] * amps[c].conj();
            }
        }
        Self::new(n, entries)
    }

    /// Diagonal (fully incoherent) state from path populations.
    pub fn diagonal(populations: &[f64]) -> Result<Self, Error> {
        let n = populations.len();
        let mut entries = vec![Complex64::default(); n.max(1) * n.max(1)];
        for (k, &p) in populations.iter().enumerate() {
            entries[matrix::idx(n, k, k)] = Complex64::new(p, 0.0);
        }
        Self::new(n, entries)
    }

    /// Nearest valid state from an arbitrary matrix: Hermitize, clamp
    /// negative eigenvalues to zero and renormalize the trace.
    pub fn project_nearest(n: usize, raw: &[Complex64]) -> Result<Self, Error> {
        if n == 0 || raw.len() != n * n {
            return Err(Error::DimensionMismatch {
                expected: n * n,
                got: raw.len(),
            });
        }
        let herm = matrix::hermitize(n, raw);
        let eig = matrix::hermitian_eigen(n, &herm);
        let clamped: Vec<f64> = eig.values.iter().map(|&v| v.max(0.0)).collect();
        let total: f64 = clamped.iter().sum();
        if total <= 0.0 {
            return Err(Error::TraceNotOne { trace: total });
        }
        let mut entries = vec![Complex64::default(); n * n];
        for r in 0..n {
            for c in 0..n {
                let mut s = Complex64::default();
                for k in 0..n {
                    s += eig.vectors[matrix::idx(n, r, k)]
                        * (clamped[k] / total)
                        * eig.vectors[matrix::idx(n, c, k)].conj();
                }
                entries[matrix::idx(n, r, c)] = s;
            }
        }
        let entries = matrix::hermitize(n, &entries);
        Self::new(n, entries)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// 0-based entry access.
    pub fn entry(&self, row: usize, col: usize) -> Complex64 {
        self.entries[matrix::idx(self.n, row, col)]
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.entries
    }

    pub fn trace(&self) -> f64 {
        (0..self.n).map(|k| self.entry(k, k).re).sum()
    }

    pub fn min_eigenvalue(&self) -> f64 {
        matrix::min_eigenvalue(self.n, &self.entries)
    }

    /// Max-abs-entry norm of rho^2 - rho; zero exactly for pure states.
    pub fn purity_defect(&self) -> f64 {
        let sq = matrix::matmul(self.n, &self.entries, &self.entries);
        matrix::max_abs_diff(&sq, &self.entries)
    }

    pub fn is_pure(&self) -> bool {
        self.purity_defect() < 1e-9
    }

    /// rho'_jk = rho_jk e^{i(theta_j - theta_k)}. Diagonal and all
    /// |rho_jk| unchanged.
    pub fn apply_phases(&self, phases: &PhaseModel) -> Result<Self, Error> {
        let theta = phases.path_phases()?;
        if theta.len() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                got: theta.len(),
            });
        }
        let n = self.n;
        let mut entries = self.entries.clone();
        for r in 0..n {
            for c in 0..n {
                if r != c {
                    entries[matrix::idx(n, r, c)] *= Complex64::from_polar(1.0, theta[r] - theta[c]);
                }
            }
        }
        let entries = matrix::hermitize(n, &entries);
        Self::new(n, entries)
    }

    /// Partial trace over the ancilla: rho'_jk = rho_jk <chi_k|chi_j>
    /// = rho_jk conj(Gamma_jk). The entrywise (Schur) product of two PSD
    /// matrices is PSD, so the result is again a valid state.
    pub fn decohere(&self, gram: &GramMatrix) -> Result<Self, Error> {
        if gram.n() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                got: gram.n(),
            });
        }
        let n = self.n;
        let mut entries = self.entries.clone();
        for r in 0..n {
            for c in 0..n {
                if r != c {
                    entries[matrix::idx(n, r, c)] *= gram.entry(r, c).conj();
                }
            }
        }
        Self::new(n, entries)
    }

    /// Keep only paths i and j (1-based) open and renormalize: the 2x2
    /// principal block divided by rho_ii + rho_jj.
    pub fn block_paths(&self, i: usize, j: usize) -> Result<Self, Error> {
        let (a, b) = self.check_pair(i, j)?;
        let pa = self.entry(a, a).re;
        let pb = self.entry(b, b).re;
        let total = pa + pb;
        if total <= 0.0 {
            return Err(Error::DegenerateBlock { i, j });
        }
        let d11 = pa / total;
        let off = self.entry(a, b) / total;
        let entries = vec![
            Complex64::new(d11, 0.0),
            off,
            off.conj(),
            Complex64::new(1.0 - d11, 0.0),
        ];
        Self::new(2, entries)
    }

    pub(crate) fn check_pair(&self, i: usize, j: usize) -> Result<(usize, usize), Error> {
        for &k in &[i, j] {
            if k == 0 || k > self.n {
                return Err(Error::PathIndexOutOfRange { index: k, n: self.n });
            }
        }
        if i == j {
            return Err(Error::SamePath { index: i });
        }
        Ok((i - 1, j - 1))
    }
}

/// n x n Hermitian, PSD, unit-diagonal matrix of ancilla overlaps
/// Gamma_jk = <chi_j|chi_k>.
#[derive(Debug, Clone, PartialEq)]
pub struct GramMatrix {
    n: usize,
    entries: Vec<Complex64>,
}

impl GramMatrix {
    pub fn new(n: usize, entries: Vec<Complex64>) -> Result<Self, Error> {
        if n == 0 || entries.len() != n * n {
            return Err(Error::DimensionMismatch {
                expected: n * n,
                got: entries.len(),
            });
        }
        let dev = matrix::max_hermitian_deviation(n, &entries);
        if dev > TOL_HERMITIAN {
            return Err(Error::NotHermitian { max_deviation: dev });
        }
        for k in 0..n {
            let d = entries[matrix::idx(n, k, k)];
            if (d.re - 1.0).abs() > TOL_HERMITIAN || d.im.abs() > TOL_HERMITIAN {
                return Err(Error::NotUnitDiagonal { index: k, value: d.re });
            }
        }
        for r in 0..n {
            for c in (r + 1)..n {
                let m = entries[matrix::idx(n, r, c)].norm();
                if m > 1.0 + 1e-12 {
                    return Err(Error::OverlapTooLarge {
                        row: r,
                        col: c,
                        modulus: m,
                    });
                }
            }
        }
        let min_eig = matrix::min_eigenvalue(n, &entries);
        if min_eig < EIGENVALUE_FLOOR {
            return Err(Error::NotPositiveSemidefinite {
                min_eigenvalue: min_eig,
            });
        }
        Ok(Self { n, entries })
    }

    /// Identical ancilla states: no decoherence at all.
    pub fn all_ones(n: usize) -> Self {
        let entries = vec![Complex64::new(1.0, 0.0); n * n];
        Self { n, entries }
    }

    /// Mutually orthogonal ancilla states: full decoherence.
    pub fn identity(n: usize) -> Self {
        let mut entries = vec![Complex64::default(); n * n];
        for k in 0..n {
            entries[matrix::idx(n, k, k)] = Complex64::new(1.0, 0.0);
        }
        Self { n, entries }
    }

    /// Gram of explicit normalized ancilla vectors of a common dimension.
    pub fn from_ancilla_states(states: &[Vec<Complex64>]) -> Result<Self, Error> {
        let n = states.len();
        if n == 0 {
            return Err(Error::DimensionMismatch { expected: 1, got: 0 });
        }
        let dim = states[0].len();
        for s in states {
            if s.len() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    got: s.len(),
                });
            }
            let norm_sq: f64 = s.iter().map(|z| z.norm_sqr()).sum();
            if (norm_sq - 1.0).abs() > TOL_NORM {
                return Err(Error::NotNormalized { norm_sq });
            }
        }
        let mut entries = vec![Complex64::default(); n * n];
        for r in 0..n {
            for c in 0..n {
                let mut ip = Complex64::default();
                for d in 0..dim {
                    ip += states[r][d].conj() * states[c][d];
                }
                entries[matrix::idx(n, r, c)] = ip;
            }
        }
        // Clip rounding on the exact invariants before validating.
        for k in 0..n {
            entries[matrix::idx(n, k, k)] = Complex64::new(1.0, 0.0);
        }
        let entries = matrix::hermitize(n, &entries);
        Self::new(n, entries)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// 0-based entry access.
    pub fn entry(&self, row: usize, col: usize) -> Complex64 {
        self.entries[matrix::idx(self.n, row, col)]
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.entries
    }
}

/// Either n freely adjustable path phases, or the single-parameter model
/// theta_k = k*theta + delta_k used for figure-style sweeps.
#[derive(Debug, Clone, PartialEq)]
pub enum PhaseModel {
    Independent(Vec<f64>),
    Linear { theta: f64, offsets: Vec<f64> },
}

impl PhaseModel {
    /// All phases zero, single-parameter model.
    pub fn zero_linear(n: usize) -> Self {
        PhaseModel::Linear {
            theta: 0.0,
            offsets: vec![0.0; n],
        }
    }

    pub fn zero_independent(n: usize) -> Self {
        PhaseModel::Independent(vec![0.0; n])
    }

    pub fn len(&self) -> usize {
        match self {
            PhaseModel::Independent(t) => t.len(),
            PhaseModel::Linear { offsets, .. } => offsets.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn is_linear(&self) -> bool {
        matches!(self, PhaseModel::Linear { .. })
    }

    /// Concrete per-path phases theta_1..theta_n (1-based k in the linear
    /// law).
    pub fn path_phases(&self) -> Result<Vec<f64>, Error> {
        match self {
            PhaseModel::Independent(t) => {
                if t.iter().any(|x| !x.is_finite()) {
                    return Err(Error::NonFiniteAngle);
                }
                Ok(t.clone())
            }
            PhaseModel::Linear { theta, offsets } => {
                if !theta.is_finite() || offsets.iter().any(|x| !x.is_finite()) {
                    return Err(Error::NonFiniteAngle);
                }
                Ok(offsets
                    .iter()
                    .enumerate()
                    .map(|(k, d)| (k + 1) as f64 * theta + d)
                    .collect())
            }
        }
    }

    /// Same model evaluated at a different sweep parameter.
    pub(crate) fn at_theta(&self, theta: f64) -> PhaseModel {
        match self {
            PhaseModel::Linear { offsets, .. } => PhaseModel::Linear {
                theta,
                offsets: offsets.clone(),
            },
            PhaseModel::Independent(t) => PhaseModel::Independent(t.clone()),
        }
    }
}

/// A complete interference configuration: quanton state, optional ancilla
/// overlaps, phase configuration and detector coupling |alpha|^2.
#[derive(Debug, Clone, PartialEq)]
pub struct Scenario {
    state: DensityMatrix,
    gram: Option<GramMatrix>,
    phases: PhaseModel,
    alpha_sq: f64,
}

impl Scenario {
    pub fn new(
        state: DensityMatrix,
        gram: Option<GramMatrix>,
        phases: PhaseModel,
        alpha_sq: f64,
    ) -> Result<Self, Error> {
        let n = state.n();
        if let Some(g) = &gram {
            if g.n() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    got: g.n(),
                });
            }
        }
        if phases.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                got: phases.len(),
            });
        }
        phases.path_phases()?;
        if !(alpha_sq > 0.0) || !alpha_sq.is_finite() {
            return Err(Error::NonPositiveCoupling { alpha_sq });
        }
        Ok(Self {
            state,
            gram,
            phases,
            alpha_sq,
        })
    }

    /// Unit coupling, no ancilla.
    pub fn bare(state: DensityMatrix, phases: PhaseModel) -> Result<Self, Error> {
        Self::new(state, None, phases, 1.0)
    }

    pub fn n(&self) -> usize {
        self.state.n()
    }

    pub fn state(&self) -> &DensityMatrix {
        &self.state
    }

    pub fn gram(&self) -> Option<&GramMatrix> {
        self.gram.as_ref()
    }

    pub fn phases(&self) -> &PhaseModel {
        &self.phases
    }

    pub fn alpha_sq(&self) -> f64 {
        self.alpha_sq
    }

    /// The quanton state after tracing out the ancilla (identity when no
    /// ancilla is present).
    pub fn effective_state(&self) -> DensityMatrix {
        match &self.gram {
            Some(g) => self
                .state
                .decohere(g)
                .expect("dimensions validated at construction"),
            None => self.state.clone(),
        }
    }

    pub fn with_phases(&self, phases: PhaseModel) -> Result<Self, Error> {
        Self::new(self.state.clone(), self.gram.clone(), phases, self.alpha_sq)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use core::f64::consts::PI;

    pub(crate) fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn r(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    /// 1/3 [[1,-l,l],[-l,1,-l],[l,-l,1]]
    pub(crate) fn bimonte_state(lambda: f64) -> DensityMatrix {
        let l = lambda / 3.0;
        DensityMatrix::new(
            3,
            vec![
                r(1.0 / 3.0),
                r(-l),
                r(l),
                r(-l),
                r(1.0 / 3.0),
                r(-l),
                r(l),
                r(-l),
                r(1.0 / 3.0),
            ],
        )
        .unwrap()
    }

    pub(crate) fn coherent4() -> DensityMatrix {
        DensityMatrix::new(4, vec![r(0.25); 16]).unwrap()
    }

    /// Gram with paths 1-3 identical and path 4 orthogonal.
    pub(crate) fn detector4_gram() -> GramMatrix {
        let mut e = vec![r(1.0); 16];
        for k in 0..3 {
            e[matrix::idx(4, k, 3)] = r(0.0);
            e[matrix::idx(4, 3, k)] = r(0.0);
        }
        GramMatrix::new(4, e).unwrap()
    }

    #[test]
    fn pure_equal_four_path_is_all_quarters() {
        let amp = r(0.5);
        let rho = DensityMatrix::from_pure_amplitudes(&[amp, amp, amp, amp]).unwrap();
        for row in 0..4 {
            for col in 0..4 {
                assert!((rho.entry(row, col) - r(0.25)).norm() < 1e-15);
            }
        }
        assert!(rho.is_pure());
    }

    #[test]
    fn pure_single_path() {
        let rho = DensityMatrix::from_pure_amplitudes(&[r(1.0), r(0.0)]).unwrap();
        assert!((rho.entry(0, 0) - r(1.0)).norm() < 1e-15);
        assert!(rho.entry(0, 1).norm() < 1e-15);
        assert!(rho.entry(1, 1).norm() < 1e-15);
    }

    #[test]
    fn phased_amplitudes_match_three_path_signs() {
        // (1,-1,1)/sqrt(3): phases (0, pi, 0) on equal amplitudes.
        let a = 1.0 / 3.0f64.sqrt();
        let amps = [r(a), r(a) * Complex64::from_polar(1.0, PI), r(a)];
        let rho = DensityMatrix::from_pure_amplitudes(&amps).unwrap();
        let expect = bimonte_state(1.0);
        assert!(matrix::max_abs_diff(rho.entries(), expect.entries()) < 1e-12);
    }

    #[test]
    fn unnormalized_amplitudes_rejected() {
        let e = DensityMatrix::from_pure_amplitudes(&[r(1.0), r(0.5)]);
        assert!(matches!(e, Err(Error::NotNormalized { .. })));
    }

    #[test]
    fn non_hermitian_rejected() {
        let e = DensityMatrix::new(2, vec![r(0.5), r(0.2), r(0.3), r(0.5)]);
        assert!(matches!(e, Err(Error::NotHermitian { .. })));
    }

    #[test]
    fn non_psd_rejected() {
        let e = DensityMatrix::new(2, vec![r(0.5), r(0.9), r(0.9), r(0.5)]);
        assert!(e.is_err());
    }

    #[test]
    fn bad_trace_rejected() {
        let e = DensityMatrix::new(2, vec![r(0.6), r(0.0), r(0.0), r(0.6)]);
        assert!(matches!(e, Err(Error::TraceNotOne { .. })));
    }

    #[test]
    fn apply_zero_and_constant_phases_is_identity() {
        let rho = bimonte_state(0.7);
        let same = rho.apply_phases(&PhaseModel::Independent(vec![0.0; 3])).unwrap();
        assert!(matrix::max_abs_diff(rho.entries(), same.entries()) < 1e-15);
        let shifted = rho.apply_phases(&PhaseModel::Independent(vec![1.3; 3])).unwrap();
        assert!(matrix::max_abs_diff(rho.entries(), shifted.entries()) < 1e-15);
    }

    #[test]
    fn linear_phase_entry() {
        let rho = coherent4();
        let out = rho
            .apply_phases(&PhaseModel::Linear {
                theta: PI / 2.0,
                offsets: vec![0.0; 4],
            })
            .unwrap();
        let expect = r(0.25) * Complex64::from_polar(1.0, -PI / 2.0);
        assert!((out.entry(0, 1) - expect).norm() < 1e-14);
    }

    #[test]
    fn decohere_reproduces_reduced_matrix() {
        let rho = coherent4().decohere(&detector4_gram()).unwrap();
        for row in 0..4 {
            for col in 0..4 {
                let expect = if row == col || (row < 3 && col < 3) { 0.25 } else { 0.0 };
                assert!((rho.entry(row, col) - r(expect)).norm() < 1e-15);
            }
        }
    }

    #[test]
    fn decohere_extremes() {
        let rho = bimonte_state(0.9);
        let same = rho.decohere(&GramMatrix::all_ones(3)).unwrap();
        assert_eq!(rho, same);
        let diag = rho.decohere(&GramMatrix::identity(3)).unwrap();
        for row in 0..3 {
            for col in 0..3 {
                if row != col {
                    assert!(diag.entry(row, col).norm() < 1e-15);
                }
            }
        }
    }

    #[test]
    fn block_paths_examples() {
        let rho = coherent4().block_paths(1, 2).unwrap();
        assert!((rho.entry(0, 0).re - 0.5).abs() < 1e-15);
        assert!((rho.entry(0, 1).re - 0.5).abs() < 1e-15);

        let reduced = coherent4().decohere(&detector4_gram()).unwrap();
        let b = reduced.block_paths(1, 4).unwrap();
        assert!((b.entry(0, 0).re - 0.5).abs() < 1e-15);
        assert!(b.entry(0, 1).norm() < 1e-15);

        let three = bimonte_state(0.6).block_paths(1, 3).unwrap();
        assert!((three.entry(0, 0).re - 0.5).abs() < 1e-14);
        assert!((three.entry(0, 1) - r(0.3)).norm() < 1e-14);
        assert!((three.trace() - 1.0).abs() == 0.0);
    }

    #[test]
    fn block_paths_dark_pair_errors() {
        let rho = DensityMatrix::diagonal(&[1.0, 0.0, 0.0]).unwrap();
        assert!(matches!(
            rho.block_paths(2, 3),
            Err(Error::DegenerateBlock { .. })
        ));
        assert!(matches!(rho.block_paths(2, 2), Err(Error::SamePath { .. })));
        assert!(matches!(
            rho.block_paths(0, 1),
            Err(Error::PathIndexOutOfRange { .. })
        ));
    }

    #[test]
    fn gram_from_states() {
        let e1 = vec![r(1.0), r(0.0)];
        let e2 = vec![r(0.0), r(1.0)];
        let g = GramMatrix::from_ancilla_states(&[e1.clone(), e2.clone()]).unwrap();
        assert_eq!(g.entries(), GramMatrix::identity(2).entries());

        let g = GramMatrix::from_ancilla_states(&[e1.clone(), e1.clone(), e1.clone()]).unwrap();
        assert_eq!(g.entries(), GramMatrix::all_ones(3).entries());

        let g = GramMatrix::from_ancilla_states(&[e1.clone(), e1.clone(), e1, e2]).unwrap();
        assert_eq!(g.entries(), detector4_gram().entries());
    }

    #[test]
    fn gram_rejects_unnormalized_states() {
        let e = GramMatrix::from_ancilla_states(&[vec![r(0.5), r(0.0)]]);
        assert!(matches!(e, Err(Error::NotNormalized { .. })));
    }

    #[test]
    fn gram_rejects_bad_diagonal() {
        let e = GramMatrix::new(2, vec![r(0.9), r(0.0), r(0.0), r(1.0)]);
        assert!(matches!(e, Err(Error::NotUnitDiagonal { .. })));
    }

    #[test]
    fn scenario_dimension_checks() {
        let rho = coherent4();
        let bad = Scenario::new(rho.clone(), None, PhaseModel::zero_linear(3), 1.0);
        assert!(bad.is_err());
        let bad = Scenario::new(rho.clone(), Some(GramMatrix::identity(3)), PhaseModel::zero_linear(4), 1.0);
        assert!(bad.is_err());
        let bad = Scenario::new(rho.clone(), None, PhaseModel::zero_linear(4), 0.0);
        assert!(matches!(bad, Err(Error::NonPositiveCoupling { .. })));
        assert!(Scenario::bare(rho, PhaseModel::zero_linear(4)).is_ok());
    }

    #[test]
    fn nonfinite_angles_rejected() {
        let rho = coherent4();
        let bad = Scenario::new(
            rho,
            None,
            PhaseModel::Independent(vec![0.0, f64::NAN, 0.0, 0.0]),
            1.0,
        );
        assert!(matches!(bad, Err(Error::NonFiniteAngle)));
    }

    #[test]
    fn projection_recovers_valid_state() {
        let mut raw = coherent4().entries().to_vec();
        raw[1] += c(0.01, 0.02);
        raw[5] -= c(0.03, 0.0);
        let rho = DensityMatrix::project_nearest(4, &raw).unwrap();
        assert!((rho.trace() - 1.0).abs() < 1e-12);
        assert!(rho.min_eigenvalue() > -1e-12);
    }
}
