use crate::aggregation::ReductionMode;
use crate::error::Result;
use crate::formula::{Formula, FormulaSet};
use crate::theory::{
    aspect_deviations, build_full_model, colliding_pairs, model_incongruity, CollidingPair, FullModel,
    HypothesisSpec, Incongruity, TheoryDocument,
};

pub(crate) struct Evaluation {
    pub model: FullModel,
    pub incongruity: Incongruity,
    /// Colliding pairs and their deviations, per aspect.
    pub pairs: Vec<Vec<(CollidingPair, f64)>>,
}

/// Evaluates `doc` on observations `set` and explicit hypothetical
/// `instances`, keeping the pair-level detail.
pub(crate) fn evaluate(doc: &TheoryDocument, set: &FormulaSet, instances: Vec<Formula>) -> Result<Evaluation> {
    let theory = doc.theory()?;
    let h = HypothesisSpec::instances(instances);
    let model = build_full_model(&h, set, &theory)?;
    let incongruity = model_incongruity(&model, &theory, doc.regularization.value(&h)?, &doc.top, ReductionMode::BitExact)?;
    let pairs = theory
        .aspects()
        .iter()
        .map(|a| Ok(colliding_pairs(&model, a)?.into_iter().zip(aspect_deviations(&model, a)?).collect()))
        .collect::<Result<_>>()?;
    Ok(Evaluation {
        model,
        incongruity,
        pairs,
    })
}
