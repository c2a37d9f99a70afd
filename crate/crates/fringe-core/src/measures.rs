//! Wave-nature quantifiers: traditional fringe contrast, normalized l1
//! coherence, the coherence-valued "new" visibility, the pairwise blocking
//! reconstruction and pure-state path distinguishability.

use alloc::string::ToString;
// Needed for no_std float math; redundant whenever std is linked.
#[allow(unused_imports)]
use num_traits::Float;

use crate::engine;
use crate::error::Error;
use crate::model::{DensityMatrix, GramMatrix, Scenario};

/// Fringe contrast (I_max - I_min) / (I_max + I_min).
pub fn visibility_traditional(i_max: f64, i_min: f64) -> Result<f64, Error> {
    if i_max + i_min <= 0.0 {
        return Err(Error::UndefinedVisibility);
    }
    Ok((i_max - i_min) / (i_max + i_min))
}

/// Normalized l1 coherence (1/(n-1)) sum_{j != k} |rho_jk|; phase-invariant
/// by construction.
pub fn l1_coherence(rho: &DensityMatrix) -> Result<f64, Error> {
    let n = rho.n();
    if n < 2 {
        return Err(Error::SinglePath);
    }
    let mut sum = 0.0;
    for j in 0..n {
        for k in (j + 1)..n {
            sum += 2.0 * rho.entry(j, k).norm();
        }
    }
    Ok(sum / (n - 1) as f64)
}

/// The new visibility (1/(n-1)) (I_max - I_inc) / I_inc. Equals the l1
/// coherence of the interfering state whenever the phases are absorbable.
pub fn visibility_new(i_max: f64, i_inc: f64, n: usize) -> Result<f64, Error> {
    if n < 2 {
        return Err(Error::SinglePath);
    }
    if i_inc <= 0.0 {
        return Err(Error::UndefinedVisibility);
    }
    Ok((i_max - i_inc) / i_inc / (n - 1) as f64)
}

/// Two-path visibility 2|rho_ij| / (rho_ii + rho_jj) with paths i, j
/// (1-based) open and the rest blocked.
pub fn two_path_visibility(rho: &DensityMatrix, i: usize, j: usize) -> Result<f64, Error> {
    let (a, b) = rho.check_pair(i, j)?;
    let denom = rho.entry(a, a).re + rho.entry(b, b).re;
    if denom <= 0.0 {
        return Err(Error::DegenerateBlock { i, j });
    }
    Ok(2.0 * rho.entry(a, b).norm() / denom)
}

/// Coherence reconstructed from the pairwise blocking protocol:
/// (1/(n-1)) sum_pairs (rho_ii + rho_jj) V_ij. Algebraically identical to
/// `l1_coherence`; dark pairs contribute weight zero.
pub fn pairwise_coherence(rho: &DensityMatrix) -> Result<f64, Error> {
    let n = rho.n();
    if n < 2 {
        return Err(Error::SinglePath);
    }
    let mut sum = 0.0;
    for i in 1..=n {
        for j in (i + 1)..=n {
            match two_path_visibility(rho, i, j) {
                Ok(v) => {
                    let weight = rho.entry(i - 1, i - 1).re + rho.entry(j - 1, j - 1).re;
                    sum += weight * v;
                }
                Err(Error::DegenerateBlock { .. }) => {}
                Err(e) => return Err(e),
            }
        }
    }
    Ok(sum / (n - 1) as f64)
}

/// Path distinguishability for a pure quanton entangled with the ancilla:
/// D_Q = 1 - (1/(n-1)) sum_{j != k} sqrt(rho_jj rho_kk) |Gamma_jk|.
/// For pure states this saturates D_Q + C(decohered) = 1.
pub fn distinguishability_pure(rho: &DensityMatrix, gram: &GramMatrix) -> Result<f64, Error> {
    let n = rho.n();
    if gram.n() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            got: gram.n(),
        });
    }
    if n < 2 {
        return Err(Error::SinglePath);
    }
    let defect = rho.purity_defect();
    if defect >= 1e-9 {
        return Err(Error::NotPure { defect });
    }
    let mut sum = 0.0;
    for j in 0..n {
        for k in (j + 1)..n {
            let w = (rho.entry(j, j).re.max(0.0) * rho.entry(k, k).re.max(0.0)).sqrt();
            sum += 2.0 * w * gram.entry(j, k).norm();
        }
    }
    Ok(1.0 - sum / (n - 1) as f64)
}

/// All quantifiers of one scenario. `coherence` refers to the interfering
/// (decohered) state, the quantity the pattern and the duality checks see;
/// `coherence_initial` is the quanton before any ancilla coupling.
#[derive(Debug, Clone, PartialEq)]
pub struct MeasureReport {
    pub v_traditional: f64,
    pub v_new: Result<f64, Error>,
    pub coherence: f64,
    pub coherence_initial: f64,
    pub d_q: Result<f64, Error>,
    pub absorbable_phases: bool,
    pub i_max: f64,
    pub i_min: f64,
    pub i_inc: f64,
}

/// Run the engine on a scenario and assemble every measure that applies.
pub fn report(s: &Scenario) -> Result<MeasureReport, Error> {
    let n = s.n();
    if n < 2 {
        return Err(Error::SinglePath);
    }
    let eff = s.effective_state();
    let ext = engine::extremize(s);
    let absorbable = engine::absorbable_phases(s);
    let v_traditional = visibility_traditional(ext.i_max, ext.i_min)?;
    let v_new = if absorbable {
        visibility_new(ext.i_max, ext.i_inc, n)
    } else {
        Err(Error::MeasureInapplicable {
            reason: "phases are constrained so that not all interference cosines can reach +1; \
                     the primary-maximum recipe does not measure coherence here"
                .to_string(),
        })
    };
    let d_q = match s.gram() {
        Some(g) => distinguishability_pure(s.state(), g),
        None => Err(Error::MeasureInapplicable {
            reason: "no ancilla coupling supplied".to_string(),
        }),
    };
    Ok(MeasureReport {
        v_traditional,
        v_new,
        coherence: l1_coherence(&eff)?,
        coherence_initial: l1_coherence(s.state())?,
        d_q,
        absorbable_phases: absorbable,
        i_max: ext.i_max,
        i_min: ext.i_min,
        i_inc: ext.i_inc,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::PhaseModel;
    use core::f64::consts::PI;
    use num_complex::Complex64;
    use std::vec;
    

    fn r(x: f64) -> Complex64 {
        Complex64::new(x, 0.0)
    }

    fn coherent4() -> DensityMatrix {
        DensityMatrix::new(4, vec![r(0.25); 16]).unwrap()
    }

    fn detector4_gram() -> GramMatrix {
        let e1 = vec![r(1.0), r(0.0)];
        let e2 = vec![r(0.0), r(1.0)];
        GramMatrix::from_ancilla_states(&[e1.clone(), e1.clone(), e1, e2]).unwrap()
    }

    fn reduced4() -> DensityMatrix {
        coherent4().decohere(&detector4_gram()).unwrap()
    }

    fn bimonte_state(lambda: f64) -> DensityMatrix {
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

    fn reduced_bimonte(lambda: f64) -> DensityMatrix {
        let e1 = vec![r(1.0), r(0.0)];
        let e2 = vec![r(0.0), r(1.0)];
        let g = GramMatrix::from_ancilla_states(&[e1.clone(), e1, e2]).unwrap();
        bimonte_state(lambda).decohere(&g).unwrap()
    }

    #[test]
    fn traditional_visibility_values() {
        assert!((visibility_traditional(7.0 / 4.0, 0.25).unwrap() - 0.75).abs() < 1e-15);
        assert!((visibility_traditional(2.5, 0.25).unwrap() - 9.0 / 11.0).abs() < 1e-15);
        assert!(visibility_traditional(1.3, 1.3).unwrap().abs() < 1e-15);
        assert!(matches!(
            visibility_traditional(0.0, 0.0),
            Err(Error::UndefinedVisibility)
        ));
    }

    #[test]
    fn coherence_values() {
        assert!((l1_coherence(&coherent4()).unwrap() - 1.0).abs() < 1e-15);
        assert!((l1_coherence(&reduced4()).unwrap() - 0.5).abs() < 1e-15);
        for &lambda in &[0.2, 0.6, 1.0] {
            assert!((l1_coherence(&bimonte_state(lambda)).unwrap() - lambda).abs() < 1e-14);
        }
        let single = DensityMatrix::diagonal(&[1.0]).unwrap();
        assert!(matches!(l1_coherence(&single), Err(Error::SinglePath)));
    }

    #[test]
    fn new_visibility_values() {
        assert!((visibility_new(4.0, 1.0, 4).unwrap() - 1.0).abs() < 1e-15);
        assert!(visibility_new(1.3, 1.3, 3).unwrap().abs() < 1e-15);
        // Decohered three-path at lambda = 0.6: I_max = 1 + 2*0.6/3.
        let i_max = 1.0 + 2.0 * 0.6 / 3.0;
        let v = visibility_new(i_max, 1.0, 3).unwrap();
        assert!((v - 0.2).abs() < 1e-15);
        assert!((l1_coherence(&reduced_bimonte(0.6)).unwrap() - 0.2).abs() < 1e-14);
        assert!(visibility_new(1.0, 0.0, 3).is_err());
    }

    #[test]
    fn two_path_visibility_values() {
        assert!((two_path_visibility(&coherent4(), 1, 2).unwrap() - 1.0).abs() < 1e-15);
        assert!(two_path_visibility(&reduced4(), 1, 4).unwrap().abs() < 1e-15);
        assert!((two_path_visibility(&reduced_bimonte(0.9), 1, 2).unwrap() - 0.9).abs() < 1e-14);
        let dark = DensityMatrix::diagonal(&[1.0, 0.0, 0.0]).unwrap();
        assert!(matches!(
            two_path_visibility(&dark, 2, 3),
            Err(Error::DegenerateBlock { .. })
        ));
    }

    #[test]
    fn two_path_visibility_matches_blocked_engine_route() {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(17);
        for _ in 0..25 {
            let rho = crate::sample::random_density(4, &mut rng);
            for (i, j) in [(1usize, 2usize), (1, 3), (2, 4), (3, 4)] {
                let direct = match two_path_visibility(&rho, i, j) {
                    Ok(v) => v,
                    Err(_) => continue,
                };
                let blocked = rho.block_paths(i, j).unwrap();
                let s = Scenario::bare(blocked, PhaseModel::zero_independent(2)).unwrap();
                let ext = engine::extremize(&s);
                let via_engine = visibility_traditional(ext.i_max, ext.i_min).unwrap();
                assert!((direct - via_engine).abs() < 1e-9);
            }
        }
    }

    #[test]
    fn pairwise_coherence_values() {
        assert!((pairwise_coherence(&reduced4()).unwrap() - 0.5).abs() < 1e-15);
        let dark = DensityMatrix::diagonal(&[0.2, 0.3, 0.5]).unwrap();
        assert!(pairwise_coherence(&dark).unwrap().abs() < 1e-15);
    }

    #[test]
    fn pairwise_equals_l1_on_random_states() {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(23);
        for _ in 0..200 {
            let rho = crate::sample::random_density(5, &mut rng);
            let a = pairwise_coherence(&rho).unwrap();
            let b = l1_coherence(&rho).unwrap();
            assert!((a - b).abs() < 1e-12);
        }
    }

    #[test]
    fn distinguishability_values() {
        let rho = coherent4();
        assert!((distinguishability_pure(&rho, &detector4_gram()).unwrap() - 0.5).abs() < 1e-15);
        assert!((distinguishability_pure(&rho, &GramMatrix::identity(4)).unwrap() - 1.0).abs() < 1e-15);
        assert!(distinguishability_pure(&rho, &GramMatrix::all_ones(4)).unwrap().abs() < 1e-15);
        assert!(matches!(
            distinguishability_pure(&reduced4(), &GramMatrix::all_ones(4)),
            Err(Error::NotPure { .. })
        ));
    }

    #[test]
    fn pure_state_saturation() {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(31);
        for _ in 0..50 {
            let rho = crate::sample::random_pure(4, &mut rng);
            let gram = crate::sample::random_gram(4, &mut rng);
            let d = distinguishability_pure(&rho, &gram).unwrap();
            let c = l1_coherence(&rho.decohere(&gram).unwrap()).unwrap();
            assert!((d + c - 1.0).abs() < 1e-10);
        }
    }

    #[test]
    fn report_on_detector_scenario() {
        let s = Scenario::new(
            coherent4(),
            Some(detector4_gram()),
            PhaseModel::Linear {
                theta: 0.0,
                offsets: vec![0.0, 0.0, 0.0, PI],
            },
            1.0,
        )
        .unwrap();
        let rep = report(&s).unwrap();
        assert!((rep.v_traditional - 9.0 / 11.0).abs() < 1e-9);
        assert!((rep.coherence - 0.5).abs() < 1e-12);
        assert!((rep.coherence_initial - 1.0).abs() < 1e-12);
        assert!((rep.d_q.clone().unwrap() - 0.5).abs() < 1e-12);
        assert!(rep.absorbable_phases);
        assert!((rep.v_new.clone().unwrap() - 0.5).abs() < 1e-9);
    }

    #[test]
    fn report_refuses_v_new_on_constrained_phases() {
        let s = Scenario::bare(
            coherent4(),
            PhaseModel::Linear {
                theta: 0.0,
                offsets: vec![0.0, 0.0, 0.0, PI],
            },
        )
        .unwrap();
        let rep = report(&s).unwrap();
        assert!(!rep.absorbable_phases);
        // True contrast of 1 + (cos t - cos 3t)/2: extrema at cos t = +-1/3^0.5
        // give V = 4/(3 sqrt 3). (The often-quoted 3/4 is the contrast between
        // the pattern's values at pi/3 and 2 pi/3, which are not its extrema.)
        let v_true = 4.0 / (3.0 * 3.0f64.sqrt());
        assert!((rep.v_traditional - v_true).abs() < 1e-9);
        assert!(matches!(rep.v_new, Err(Error::MeasureInapplicable { .. })));
        assert!((rep.coherence - 1.0).abs() < 1e-12);
    }
}
