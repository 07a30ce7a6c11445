use serde::Serialize;
use serde_json::Value;

use super::tree::Tree;

/// What a learner decided.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Outcome {
    Label { label: f64 },
    /// No decision is defined for the query.
    Undefined,
    Linear { w: Vec<f64>, b: f64 },
    /// Clusters as lists of row indices.
    Partition { clusters: Vec<Vec<usize>> },
    Tree { tree: Tree },
}

/// One step of the focusing, fitting and selection procedure.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TraceStep {
    pub step: String,
    pub params: Value,
    pub loss: Option<f64>,
}

impl TraceStep {
    pub fn new(step: &str, params: Value, loss: Option<f64>) -> Self {
        TraceStep {
            step: step.to_string(),
            params,
            loss,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Decision {
    pub outcome: Outcome,
    pub loss: f64,
    pub abstained: bool,
    /// Name of the registered theory whose total incongruity `loss` is.
    pub theory: String,
    pub trace: Vec<TraceStep>,
    /// Conditions worth reporting, such as an iteration cap being reached.
    pub flags: Vec<String>,
}

impl Decision {
    pub fn new(outcome: Outcome, loss: f64, theory: &str) -> Self {
        Decision {
            outcome,
            loss,
            abstained: false,
            theory: theory.to_string(),
            trace: Vec::new(),
            flags: Vec::new(),
        }
    }

    pub fn label(&self) -> Option<f64> {
        match self.outcome {
            Outcome::Label { label } => Some(label),
            _ => None,
        }
    }
}
