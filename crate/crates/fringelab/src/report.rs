//! Measure/duality analysis of a scenario and its JSON rendering.

use fringe_core::criteria::{CriteriaVerdict, CriterionStatus};
use fringe_core::duality::{self, Relation};
use fringe_core::measures::{self, MeasureReport};
use fringe_core::{Error, Scenario};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DualityEntry {
    pub relation: String,
    pub lhs: f64,
    pub slack: f64,
    pub holds: bool,
    pub saturated: bool,
}

/// The documented JSON schema of `analyze`: `v_new` and `d_q` are nullable
/// with a reason string alongside.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AnalysisReport {
    pub v_traditional: f64,
    pub v_new: Option<f64>,
    pub v_new_reason: Option<String>,
    pub coherence: f64,
    pub coherence_initial: f64,
    pub d_q: Option<f64>,
    pub d_q_reason: Option<String>,
    pub absorbable_phases: bool,
    pub i_max: f64,
    pub i_min: f64,
    pub i_inc: f64,
    pub duality: Vec<DualityEntry>,
}

fn split(r: &Result<f64, Error>) -> (Option<f64>, Option<String>) {
    match r {
        Ok(v) => (Some(*v), None),
        Err(e) => (None, Some(e.to_string())),
    }
}

fn entry(relation: Relation, wave: f64, particle: f64) -> Option<DualityEntry> {
    duality::check(relation, wave, particle)
        .ok()
        .map(|c| DualityEntry {
            relation: relation.id().to_string(),
            lhs: c.lhs,
            slack: c.slack,
            holds: c.holds,
            saturated: c.saturated,
        })
}

pub fn analyze(s: &Scenario) -> Result<AnalysisReport, Error> {
    let m: MeasureReport = measures::report(s)?;
    let (v_new, v_new_reason) = split(&m.v_new);
    let (d_q, d_q_reason) = split(&m.d_q);

    let mut duality = Vec::new();
    if let Some(dq) = d_q {
        // Wave side is the coherence of the state the detector actually sees.
        if let Some(e) = entry(Relation::DqC, m.coherence, dq) {
            duality.push(e);
        }
        if s.n() == 3 {
            if let Some(e) = entry(Relation::ThreeSlit, m.v_traditional, dq) {
                duality.push(e);
            }
        }
    }

    Ok(AnalysisReport {
        v_traditional: m.v_traditional,
        v_new,
        v_new_reason,
        coherence: m.coherence,
        coherence_initial: m.coherence_initial,
        d_q,
        d_q_reason,
        absorbable_phases: m.absorbable_phases,
        i_max: m.i_max,
        i_min: m.i_min,
        i_inc: m.i_inc,
        duality,
    })
}

fn opt(v: Option<f64>, reason: &Option<String>) -> String {
    match v {
        Some(x) => format!("{x:.12}"),
        None => format!(
            "n/a ({})",
            reason.as_deref().unwrap_or("not computable")
        ),
    }
}

pub fn render_text(r: &AnalysisReport) -> String {
    let mut out = String::new();
    out.push_str(&format!("intensity    max {:.12}  min {:.12}  baseline {:.12}\n", r.i_max, r.i_min, r.i_inc));
    out.push_str(&format!("V            {:.12}\n", r.v_traditional));
    out.push_str(&format!("V_C          {}\n", opt(r.v_new, &r.v_new_reason)));
    out.push_str(&format!("C            {:.12}  (before detector coupling: {:.12})\n", r.coherence, r.coherence_initial));
    out.push_str(&format!("D_Q          {}\n", opt(r.d_q, &r.d_q_reason)));
    out.push_str(&format!("absorbable   {}\n", r.absorbable_phases));
    for d in &r.duality {
        out.push_str(&format!(
            "duality {:<10} lhs {:.12}  slack {:+.3e}  holds {}  saturated {}\n",
            d.relation, d.lhs, d.slack, d.holds, d.saturated
        ));
    }
    out
}

/// JSON rendering of a certification verdict: one entry per criterion with
/// `status`, optional `detail` and, on failure, the witness state.
pub fn verdict_to_json(v: &CriteriaVerdict) -> serde_json::Value {
    fn status(st: &CriterionStatus) -> serde_json::Value {
        let mut map = serde_json::Map::new();
        let (name, detail, witness) = match st {
            CriterionStatus::Pass => ("pass", None, None),
            CriterionStatus::Evidence { detail } => ("evidence", Some(detail.clone()), None),
            CriterionStatus::ByConstruction => ("by_construction", None, None),
            CriterionStatus::NotTestable { detail } => ("not_testable", Some(detail.clone()), None),
            CriterionStatus::Fail { witness, detail } => {
                let rows: Vec<Vec<serde_json::Value>> = (0..witness.n())
                    .map(|r| {
                        (0..witness.n())
                            .map(|c| {
                                let z = witness.entry(r, c);
                                serde_json::json!({"re": z.re, "im": z.im})
                            })
                            .collect()
                    })
                    .collect();
                ("fail", Some(detail.clone()), Some(serde_json::json!(rows)))
            }
        };
        map.insert("status".into(), name.into());
        if let Some(d) = detail {
            map.insert("detail".into(), d.into());
        }
        if let Some(w) = witness {
            map.insert("witness".into(), w);
        }
        serde_json::Value::Object(map)
    }

    serde_json::json!({
        "criteria": v.criteria.iter().map(status).collect::<Vec<_>>(),
        "decoherence_monotonicity": status(&v.decoherence_monotonicity),
        "samples": v.samples,
        "seed": v.seed,
        "all_testable_pass": v.all_testable_pass(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scenario;

    #[test]
    fn mw4_analysis_values() {
        let r = analyze(&scenario::mw4()).unwrap();
        assert!((r.v_traditional - 9.0 / 11.0).abs() < 1e-9);
        assert!((r.coherence - 0.5).abs() < 1e-12);
        assert!((r.coherence_initial - 1.0).abs() < 1e-12);
        assert!((r.d_q.unwrap() - 0.5).abs() < 1e-12);
        assert!(r.absorbable_phases);
        let dq_c = r.duality.iter().find(|d| d.relation == "dq_c").unwrap();
        assert!(dq_c.holds && dq_c.saturated);
    }

    #[test]
    fn piflip_analysis_flags_inapplicable_v_new() {
        let r = analyze(&scenario::piflip4()).unwrap();
        assert!(!r.absorbable_phases);
        assert!(r.v_new.is_none());
        assert!(r.v_new_reason.is_some());
        assert!(r.d_q.is_none());
    }

    #[test]
    fn json_round_trip() {
        let r = analyze(&scenario::ancilla4()).unwrap();
        let text = serde_json::to_string_pretty(&r).unwrap();
        let back: AnalysisReport = serde_json::from_str(&text).unwrap();
        assert_eq!(r, back);
    }

    #[test]
    fn text_rendering_mentions_every_measure() {
        let r = analyze(&scenario::pure2()).unwrap();
        let text = render_text(&r);
        for needle in ["V ", "V_C", "C ", "D_Q", "absorbable"] {
            assert!(text.contains(needle), "missing {needle} in {text}");
        }
    }
}
