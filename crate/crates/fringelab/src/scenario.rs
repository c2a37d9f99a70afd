//! Scenario files and the built-in scenarios.
//!
//! A scenario document is JSON with keys `n`, `state`, optional `gram`,
//! `phase_model` and optional `alpha_sq`. Complex numbers are `{re, im}`
//! objects; angles are radians given as numbers or the exact literals
//! `"pi"` / `"-pi"` (so offsets of exactly pi survive parsing untruncated).

use std::f64::consts::PI;
use std::fmt;

use fringe_core::{DensityMatrix, GramMatrix, PhaseModel, Scenario};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

/// Errors raised while turning a document into a Scenario.
#[derive(Debug)]
pub enum ScenarioError {
    /// Malformed JSON, with serde's line/column context.
    Json(serde_json::Error),
    /// Structurally valid JSON that fails model validation; the string names
    /// the offending key.
    Invalid { key: &'static str, detail: String },
}

impl fmt::Display for ScenarioError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ScenarioError::Json(e) => write!(f, "scenario parse error: {e}"),
            ScenarioError::Invalid { key, detail } => {
                write!(f, "invalid scenario at key `{key}`: {detail}")
            }
        }
    }
}

impl std::error::Error for ScenarioError {}

impl From<serde_json::Error> for ScenarioError {
    fn from(e: serde_json::Error) -> Self {
        ScenarioError::Json(e)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ComplexEntry {
    pub re: f64,
    pub im: f64,
}

impl From<ComplexEntry> for Complex64 {
    fn from(c: ComplexEntry) -> Self {
        Complex64::new(c.re, c.im)
    }
}

impl From<Complex64> for ComplexEntry {
    fn from(z: Complex64) -> Self {
        ComplexEntry { re: z.re, im: z.im }
    }
}

/// Radians, or the literals "pi" / "-pi" parsed exactly.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Angle {
    Radians(f64),
    Literal(String),
}

impl Angle {
    pub fn value(&self) -> Result<f64, ScenarioError> {
        match self {
            Angle::Radians(v) => Ok(*v),
            Angle::Literal(s) => match s.as_str() {
                "pi" => Ok(PI),
                "-pi" => Ok(-PI),
                other => Err(ScenarioError::Invalid {
                    key: "phase_model",
                    detail: format!("unknown angle literal {other:?}; use \"pi\", \"-pi\" or a number"),
                }),
            },
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type")]
pub enum StateSpec {
    #[serde(rename = "pure")]
    Pure { amplitudes: Vec<ComplexEntry> },
    #[serde(rename = "density")]
    Density { entries: Vec<Vec<ComplexEntry>> },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type")]
pub enum GramSpec {
    #[serde(rename = "entries")]
    Entries { entries: Vec<Vec<ComplexEntry>> },
    #[serde(rename = "ancilla_states")]
    AncillaStates { dim: usize, states: Vec<Vec<ComplexEntry>> },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type")]
pub enum PhaseSpec {
    #[serde(rename = "independent")]
    Independent {
        #[serde(default)]
        phases: Option<Vec<Angle>>,
    },
    #[serde(rename = "linear")]
    Linear {
        #[serde(default)]
        theta: Option<Angle>,
        #[serde(default)]
        offsets: Option<Vec<Angle>>,
    },
}

/// The on-disk scenario document.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScenarioFile {
    pub n: usize,
    pub state: StateSpec,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gram: Option<GramSpec>,
    pub phase_model: PhaseSpec,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alpha_sq: Option<f64>,
}

fn flatten(n: usize, rows: &[Vec<ComplexEntry>], key: &'static str) -> Result<Vec<Complex64>, ScenarioError> {
    if rows.len() != n || rows.iter().any(|r| r.len() != n) {
        return Err(ScenarioError::Invalid {
            key,
            detail: format!("expected an {n}x{n} matrix"),
        });
    }
    Ok(rows.iter().flatten().map(|&c| c.into()).collect())
}

fn angles(list: &[Angle]) -> Result<Vec<f64>, ScenarioError> {
    list.iter().map(Angle::value).collect()
}

impl ScenarioFile {
    pub fn parse(text: &str) -> Result<Self, ScenarioError> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn to_scenario(&self) -> Result<Scenario, ScenarioError> {
        let n = self.n;
        let state = match &self.state {
            StateSpec::Pure { amplitudes } => {
                if amplitudes.len() != n {
                    return Err(ScenarioError::Invalid {
                        key: "state",
                        detail: format!("expected {n} amplitudes, got {}", amplitudes.len()),
                    });
                }
                let amps: Vec<Complex64> = amplitudes.iter().map(|&c| c.into()).collect();
                DensityMatrix::from_pure_amplitudes(&amps).map_err(|e| ScenarioError::Invalid {
                    key: "state",
                    detail: e.to_string(),
                })?
            }
            StateSpec::Density { entries } => {
                let flat = flatten(n, entries, "state")?;
                DensityMatrix::new(n, flat).map_err(|e| ScenarioError::Invalid {
                    key: "state",
                    detail: e.to_string(),
                })?
            }
        };
        let gram = match &self.gram {
            None => None,
            Some(GramSpec::Entries { entries }) => {
                let flat = flatten(n, entries, "gram")?;
                Some(GramMatrix::new(n, flat).map_err(|e| ScenarioError::Invalid {
                    key: "gram",
                    detail: e.to_string(),
                })?)
            }
            Some(GramSpec::AncillaStates { dim, states }) => {
                if states.len() != n || states.iter().any(|s| s.len() != *dim) {
                    return Err(ScenarioError::Invalid {
                        key: "gram",
                        detail: format!("expected {n} ancilla states of dimension {dim}"),
                    });
                }
                let vecs: Vec<Vec<Complex64>> = states
                    .iter()
                    .map(|s| s.iter().map(|&c| c.into()).collect())
                    .collect();
                Some(GramMatrix::from_ancilla_states(&vecs).map_err(|e| ScenarioError::Invalid {
                    key: "gram",
                    detail: e.to_string(),
                })?)
            }
        };
        let phases = match &self.phase_model {
            PhaseSpec::Independent { phases } => {
                let values = match phases {
                    Some(list) => {
                        if list.len() != n {
                            return Err(ScenarioError::Invalid {
                                key: "phase_model",
                                detail: format!("expected {n} phases, got {}", list.len()),
                            });
                        }
                        angles(list)?
                    }
                    None => vec![0.0; n],
                };
                PhaseModel::Independent(values)
            }
            PhaseSpec::Linear { theta, offsets } => {
                let theta = match theta {
                    Some(a) => a.value()?,
                    None => 0.0,
                };
                let offsets = match offsets {
                    Some(list) => {
                        if list.len() != n {
                            return Err(ScenarioError::Invalid {
                                key: "phase_model",
                                detail: format!("expected {n} offsets, got {}", list.len()),
                            });
                        }
                        angles(list)?
                    }
                    None => vec![0.0; n],
                };
                PhaseModel::Linear { theta, offsets }
            }
        };
        let alpha_sq = self.alpha_sq.unwrap_or(1.0);
        Scenario::new(state, gram, phases, alpha_sq).map_err(|e| ScenarioError::Invalid {
            key: "scenario",
            detail: e.to_string(),
        })
    }
}

// ---------------------------------------------------------------------------
// built-in scenarios

pub const BUILTIN_NAMES: [&str; 6] = ["bimonte3", "mw4", "piflip4", "ancilla4", "dark", "pure2"];

fn r(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

/// Equal-amplitude four-path pure state: every entry 1/4.
fn coherent4() -> DensityMatrix {
    DensityMatrix::new(4, vec![r(0.25); 16]).expect("maximally coherent state")
}

/// Detector that identifies path 4 only: ancilla states of paths 1-3 are
/// identical, path 4's is orthogonal to them.
fn path4_detector() -> GramMatrix {
    let same = vec![r(1.0), r(0.0)];
    let other = vec![r(0.0), r(1.0)];
    GramMatrix::from_ancilla_states(&[same.clone(), same.clone(), same, other])
        .expect("orthonormal ancilla pair")
}

/// Pi offset on path 4, phases otherwise proportional to the path index.
fn piflip_offsets() -> PhaseModel {
    PhaseModel::Linear {
        theta: 0.0,
        offsets: vec![0.0, 0.0, 0.0, PI],
    }
}

/// Three-path state with off-diagonals of magnitude lambda/3 in the
/// alternating-sign pattern; lambda in [0, 1].
pub fn bimonte3(lambda: f64) -> Scenario {
    let l = lambda / 3.0;
    let third = 1.0 / 3.0;
    let state = DensityMatrix::new(
        3,
        vec![
            r(third),
            r(-l),
            r(l),
            r(-l),
            r(third),
            r(-l),
            r(l),
            r(-l),
            r(third),
        ],
    )
    .expect("valid for lambda in [0, 1]");
    Scenario::bare(state, PhaseModel::zero_independent(3)).expect("three-path scenario")
}

/// Detector that tells paths 1-2 apart from path 3 (decoheres the three-path
/// state down to a single live pair).
pub fn bimonte3_detector() -> GramMatrix {
    let same = vec![r(1.0), r(0.0)];
    let other = vec![r(0.0), r(1.0)];
    GramMatrix::from_ancilla_states(&[same.clone(), same, other]).expect("orthonormal ancilla pair")
}

/// Four-path pi-flip with the path-4 detector engaged: the scenario where
/// path information raises the fringe contrast.
pub fn mw4() -> Scenario {
    Scenario::new(coherent4(), Some(path4_detector()), piflip_offsets(), 1.0)
        .expect("four-path detector scenario")
}

/// Four-path pi-flip without any detector.
pub fn piflip4() -> Scenario {
    Scenario::bare(coherent4(), piflip_offsets()).expect("four-path scenario")
}

/// Four-path coherent state with the path-4 detector, no phase constraint.
pub fn ancilla4() -> Scenario {
    Scenario::new(
        coherent4(),
        Some(path4_detector()),
        PhaseModel::zero_linear(4),
        1.0,
    )
    .expect("four-path detector scenario")
}

/// Fully incoherent four-path state: a flat pattern.
pub fn dark() -> Scenario {
    let state = DensityMatrix::diagonal(&[0.25; 4]).expect("uniform populations");
    Scenario::bare(state, PhaseModel::zero_linear(4)).expect("four-path scenario")
}

/// Equal two-path pure state.
pub fn pure2() -> Scenario {
    let state = DensityMatrix::new(2, vec![r(0.5); 4]).expect("two-path pure state");
    Scenario::bare(state, PhaseModel::zero_independent(2)).expect("two-path scenario")
}

/// Look up a built-in by name; `lambda` only affects `bimonte3`.
pub fn builtin(name: &str, lambda: f64) -> Option<Scenario> {
    match name {
        "bimonte3" => Some(bimonte3(lambda)),
        "mw4" => Some(mw4()),
        "piflip4" => Some(piflip4()),
        "ancilla4" => Some(ancilla4()),
        "dark" => Some(dark()),
        "pure2" => Some(pure2()),
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use fringe_core::measures;

    #[test]
    fn document_round_trips_to_scenario() {
        let text = r#"{
            "n": 2,
            "state": {"type": "pure", "amplitudes": [
                {"re": 0.7071067811865476, "im": 0.0},
                {"re": 0.7071067811865476, "im": 0.0}
            ]},
            "phase_model": {"type": "linear", "offsets": [0.0, "pi"]},
            "alpha_sq": 2.0
        }"#;
        let doc = ScenarioFile::parse(text).unwrap();
        let s = doc.to_scenario().unwrap();
        assert_eq!(s.n(), 2);
        assert!((s.alpha_sq() - 2.0).abs() < 1e-15);
        match s.phases() {
            PhaseModel::Linear { offsets, .. } => assert!((offsets[1] - PI).abs() == 0.0),
            _ => panic!("linear expected"),
        }
        let json = serde_json::to_string(&doc).unwrap();
        let back = ScenarioFile::parse(&json).unwrap();
        assert_eq!(doc, back);
    }

    #[test]
    fn gram_from_ancilla_states_parses() {
        let text = r#"{
            "n": 2,
            "state": {"type": "density", "entries": [
                [{"re": 0.5, "im": 0.0}, {"re": 0.5, "im": 0.0}],
                [{"re": 0.5, "im": 0.0}, {"re": 0.5, "im": 0.0}]
            ]},
            "gram": {"type": "ancilla_states", "dim": 2, "states": [
                [{"re": 1.0, "im": 0.0}, {"re": 0.0, "im": 0.0}],
                [{"re": 0.0, "im": 0.0}, {"re": 1.0, "im": 0.0}]
            ]},
            "phase_model": {"type": "independent"}
        }"#;
        let s = ScenarioFile::parse(text).unwrap().to_scenario().unwrap();
        assert!(s.gram().is_some());
        assert!((measures::l1_coherence(&s.effective_state()).unwrap() - 0.0).abs() < 1e-12);
    }

    #[test]
    fn invalid_state_is_key_anchored() {
        let text = r#"{
            "n": 2,
            "state": {"type": "density", "entries": [
                [{"re": 0.9, "im": 0.0}, {"re": 0.0, "im": 0.0}],
                [{"re": 0.0, "im": 0.0}, {"re": 0.9, "im": 0.0}]
            ]},
            "phase_model": {"type": "independent"}
        }"#;
        match ScenarioFile::parse(text).unwrap().to_scenario() {
            Err(ScenarioError::Invalid { key: "state", .. }) => {}
            other => panic!("expected state-keyed error, got {other:?}"),
        }
    }

    #[test]
    fn bad_angle_literal_rejected() {
        let text = r#"{
            "n": 2,
            "state": {"type": "pure", "amplitudes": [
                {"re": 1.0, "im": 0.0}, {"re": 0.0, "im": 0.0}
            ]},
            "phase_model": {"type": "linear", "offsets": ["tau", 0.0]}
        }"#;
        assert!(ScenarioFile::parse(text).unwrap().to_scenario().is_err());
    }

    #[test]
    fn builtins_are_valid_and_named() {
        for name in BUILTIN_NAMES {
            let s = builtin(name, 0.5).unwrap();
            assert!(s.n() >= 2, "{name}");
        }
        assert!(builtin("nope", 0.5).is_none());
    }

    #[test]
    fn builtin_values_match_expectations() {
        let s = bimonte3(0.6);
        assert!((measures::l1_coherence(s.state()).unwrap() - 0.6).abs() < 1e-12);
        let decohered = s.state().decohere(&bimonte3_detector()).unwrap();
        assert!((measures::l1_coherence(&decohered).unwrap() - 0.2).abs() < 1e-12);

        assert!((measures::l1_coherence(mw4().state()).unwrap() - 1.0).abs() < 1e-12);
        assert!((measures::l1_coherence(&mw4().effective_state()).unwrap() - 0.5).abs() < 1e-12);
        assert!((measures::l1_coherence(&dark().effective_state()).unwrap()).abs() < 1e-12);
        assert!((measures::l1_coherence(pure2().state()).unwrap() - 1.0).abs() < 1e-12);
    }
}
