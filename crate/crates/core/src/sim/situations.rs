//! Situation injection: per-action failure outcomes with configured
//! probabilities, sampled once per execution from the world's rng stream.

use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum SituationTableError {
    #[error("action {action}: situation probabilities sum to {sum}, must be <= 1")]
    ProbabilitySum { action: String, sum: f64 },
    #[error("action {action}, situation {label}: probability {prob} outside [0, 1]")]
    ProbabilityRange { action: String, label: String, prob: f64 },
}

/// Which object a drop-style situation relocates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DropWho {
    /// The currently held object.
    Held,
    /// A positional argument of the failing action.
    Arg(usize),
}

/// World transform applied when a situation fires.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SituationEffect {
    /// The action fails and the relevant ground truth is left untouched
    /// (object unchanged / remains inhand / remains closed / open / off).
    NoChange,
    /// The target object ends up at a free pose on the floor near the
    /// robot, within the near threshold.
    DropNearby(DropWho),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SituationRow {
    pub label: String,
    pub effect: SituationEffect,
    pub prob: f64,
}

/// Map from action name to its injectable situations.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct SituationTable {
    rows: BTreeMap<String, Vec<SituationRow>>,
}

impl SituationTable {
    pub fn empty() -> Self {
        Self::default()
    }

    pub fn from_rows(rows: BTreeMap<String, Vec<SituationRow>>) -> Result<Self, SituationTableError> {
        let table = SituationTable { rows };
        table.validate()?;
        Ok(table)
    }

    pub fn rows_for(&self, action: &str) -> &[SituationRow] {
        self.rows.get(action).map(|v| v.as_slice()).unwrap_or(&[])
    }

    pub fn actions(&self) -> impl Iterator<Item = &String> {
        self.rows.keys()
    }

    pub fn set_rows(&mut self, action: impl Into<String>, rows: Vec<SituationRow>) {
        self.rows.insert(action.into(), rows);
    }

    /// Zero out every probability; useful for noise-free runs.
    pub fn zeroed(&self) -> SituationTable {
        let mut out = self.clone();
        for rows in out.rows.values_mut() {
            for row in rows {
                row.prob = 0.0;
            }
        }
        out
    }

    pub fn validate(&self) -> Result<(), SituationTableError> {
        for (action, rows) in &self.rows {
            let mut sum = 0.0;
            for row in rows {
                if !(0.0..=1.0).contains(&row.prob) {
                    return Err(SituationTableError::ProbabilityRange {
                        action: action.clone(),
                        label: row.label.clone(),
                        prob: row.prob,
                    });
                }
                sum += row.prob;
            }
            if sum > 1.0 + 1e-9 {
                return Err(SituationTableError::ProbabilitySum { action: action.clone(), sum });
            }
        }
        Ok(())
    }
}

fn row(label: &str, effect: SituationEffect, prob: f64) -> SituationRow {
    SituationRow { label: label.to_string(), effect, prob }
}

/// The bundled default injection probabilities. High-manipulation actions
/// carry 50% combined failure (25% unchanged, 25% drop); place and fill
/// split lower rates between remains-inhand and drop; the articulation
/// actions fail in place 10% of the time. The grasp rates apply to both
/// grasp variants since they model the same manipulation primitive.
pub fn default_situation_table() -> SituationTable {
    use SituationEffect::*;
    let mut rows = BTreeMap::new();
    rows.insert(
        "find".to_string(),
        vec![row("held_object_drops_during_navigation", DropNearby(DropWho::Held), 0.10)],
    );
    for grasp in ["grasp_on", "grasp_in"] {
        rows.insert(
            grasp.to_string(),
            vec![
                row("grasp_fails_object_unchanged", NoChange, 0.25),
                row("grasp_fails_object_drops_nearby", DropNearby(DropWho::Arg(0)), 0.25),
            ],
        );
    }
    rows.insert(
        "placein".to_string(),
        vec![
            row("place_fails_object_remains_inhand", NoChange, 0.10),
            row("place_fails_object_drops_nearby", DropNearby(DropWho::Held), 0.10),
        ],
    );
    rows.insert(
        "placeon".to_string(),
        vec![
            row("place_fails_object_remains_inhand", NoChange, 0.10),
            row("place_fails_object_drops_nearby", DropNearby(DropWho::Held), 0.10),
        ],
    );
    rows.insert(
        "fill".to_string(),
        vec![
            row("container_not_fully_filled", NoChange, 0.05),
            row("container_drops_nearby", DropNearby(DropWho::Held), 0.05),
        ],
    );
    rows.insert(
        "open".to_string(),
        vec![row("open_fails_object_remains_closed", NoChange, 0.10)],
    );
    rows.insert(
        "close".to_string(),
        vec![row("close_fails_object_remains_open", NoChange, 0.10)],
    );
    rows.insert(
        "turnon".to_string(),
        vec![row("turnon_fails_object_remains_off", NoChange, 0.10)],
    );
    rows.insert(
        "cut".to_string(),
        vec![
            row("object_not_cut_knife_inhand", NoChange, 0.25),
            row("object_not_cut_knife_drops_nearby", DropNearby(DropWho::Held), 0.25),
        ],
    );
    SituationTable { rows }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_table_is_valid() {
        let table = default_situation_table();
        assert!(table.validate().is_ok());
        let grasp: f64 = table.rows_for("grasp_on").iter().map(|r| r.prob).sum();
        assert!((grasp - 0.5).abs() < 1e-12);
        let cut: f64 = table.rows_for("cut").iter().map(|r| r.prob).sum();
        assert!((cut - 0.5).abs() < 1e-12);
        assert_eq!(table.rows_for("open").len(), 1);
        assert!(table.rows_for("unknown_action").is_empty());
    }

    #[test]
    fn probability_sum_violation_rejected() {
        let mut rows = BTreeMap::new();
        rows.insert(
            "grasp_on".to_string(),
            vec![
                row("a", SituationEffect::NoChange, 0.7),
                row("b", SituationEffect::NoChange, 0.7),
            ],
        );
        assert!(matches!(
            SituationTable::from_rows(rows),
            Err(SituationTableError::ProbabilitySum { .. })
        ));
    }

    #[test]
    fn zeroed_table_has_no_mass() {
        let z = default_situation_table().zeroed();
        for action in z.actions() {
            assert!(z.rows_for(action).iter().all(|r| r.prob == 0.0));
        }
    }
}
