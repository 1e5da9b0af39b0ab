use crate::corpus::{distribution, DatasetSplit, Label};
use crate::error::{Error, Result};

/// Predicts the most frequent training label for every input.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MajorityModel {
    pub majority_label: Label,
}

/// Ties go to the lexicographically smallest canonical label.
pub fn majority_fit(split: &DatasetSplit) -> Result<MajorityModel> {
    if split.is_empty() {
        return Err(Error::EmptySplit);
    }
    Ok(MajorityModel {
        majority_label: distribution(split)?.argmax(),
    })
}

pub fn majority_predict(model: &MajorityModel, n: usize) -> Vec<Label> {
    vec![model.majority_label; n]
}
