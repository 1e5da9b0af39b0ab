//! Fit/predict wrappers shared by the CLI and the ablation runner.

use std::fmt;
use std::str::FromStr;

use crate::corpus::{DatasetSplit, Label};
use crate::error::{Error, Result};
use crate::features::{tfidf_fit, tfidf_transform, FeatureMatrix};
use crate::models::{lr_fit, lr_predict, majority_fit, majority_predict, TrainConfig};

/// A classifier trained on one split and applied to another.
pub trait Classifier: Sync {
    fn name(&self) -> String;

    fn fit_predict(&self, train: &DatasetSplit, eval: &DatasetSplit) -> Result<Vec<Label>>;
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BaselineKind {
    Majority,
    LrTfidf,
    LrEmbed,
}

impl BaselineKind {
    pub fn as_str(self) -> &'static str {
        match self {
            BaselineKind::Majority => "majority",
            BaselineKind::LrTfidf => "lr-tfidf",
            BaselineKind::LrEmbed => "lr-embed",
        }
    }
}

impl fmt::Display for BaselineKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for BaselineKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "majority" => Ok(BaselineKind::Majority),
            "lr-tfidf" => Ok(BaselineKind::LrTfidf),
            "lr-embed" => Ok(BaselineKind::LrEmbed),
            other => Err(Error::Config(format!("unknown baseline {other:?}"))),
        }
    }
}

#[derive(Debug, Clone, Copy, Default)]
pub struct Majority;

impl Classifier for Majority {
    fn name(&self) -> String {
        "majority".into()
    }

    fn fit_predict(&self, train: &DatasetSplit, eval: &DatasetSplit) -> Result<Vec<Label>> {
        let model = majority_fit(train)?;
        Ok(majority_predict(&model, eval.len()))
    }
}

/// Logistic regression over TF-IDF vectors fitted on the training split.
#[derive(Debug, Clone, Default)]
pub struct TfidfLogistic {
    pub train: TrainConfig,
}

impl Classifier for TfidfLogistic {
    fn name(&self) -> String {
        "lr-tfidf".into()
    }

    fn fit_predict(&self, train: &DatasetSplit, eval: &DatasetSplit) -> Result<Vec<Label>> {
        let model = tfidf_fit(&[train])?;
        let x = tfidf_transform(&model, train);
        let lr = lr_fit(&x, &train.labels()?, &self.train)?;
        lr_predict(&lr, &tfidf_transform(&model, eval))
    }
}

/// Logistic regression over precomputed vectors looked up by record id.
#[derive(Debug, Clone)]
pub struct EmbeddingLogistic {
    pub features: FeatureMatrix,
    pub train: TrainConfig,
}

impl EmbeddingLogistic {
    fn lookup(&self, split: &DatasetSplit) -> Result<FeatureMatrix> {
        self.features.select(split.ids())
    }
}

impl Classifier for EmbeddingLogistic {
    fn name(&self) -> String {
        "lr-embed".into()
    }

    fn fit_predict(&self, train: &DatasetSplit, eval: &DatasetSplit) -> Result<Vec<Label>> {
        let x = self.lookup(train)?;
        let lr = lr_fit(&x, &train.labels()?, &self.train)?;
        lr_predict(&lr, &self.lookup(eval)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::{Comment, SplitName};

    fn split(name: SplitName, rows: &[(&str, &str, Label)]) -> DatasetSplit {
        DatasetSplit::new(
            name,
            rows.iter().map(|&(id, t, l)| Comment::labeled(id, t, l)).collect(),
        )
        .unwrap()
    }

    fn toy() -> (DatasetSplit, DatasetSplit) {
        use Label::*;
        let train = split(
            SplitName::Train,
            &[
                ("t1", "gay slur hate", Homophobic),
                ("t2", "gay slur again", Homophobic),
                ("t3", "trans slur hate", Transphobic),
                ("t4", "trans slur more", Transphobic),
                ("t5", "nice video song", NonAntiLgbt),
                ("t6", "nice song music", NonAntiLgbt),
            ],
        );
        let dev = split(
            SplitName::Dev,
            &[
                ("d1", "gay slur", Homophobic),
                ("d2", "trans slur", Transphobic),
                ("d3", "nice song", NonAntiLgbt),
            ],
        );
        (train, dev)
    }

    #[test]
    fn kind_round_trip() {
        for kind in [BaselineKind::Majority, BaselineKind::LrTfidf, BaselineKind::LrEmbed] {
            assert_eq!(kind.as_str().parse::<BaselineKind>().unwrap(), kind);
        }
        assert!("svm".parse::<BaselineKind>().is_err());
    }

    #[test]
    fn tfidf_separates_toy_corpus() {
        let (train, dev) = toy();
        let clf = TfidfLogistic {
            train: TrainConfig {
                learning_rate: 1.0,
                epochs: 300,
                ..TrainConfig::default()
            },
        };
        assert_eq!(clf.fit_predict(&train, &dev).unwrap(), dev.labels().unwrap());
    }

    #[test]
    fn majority_ignores_text() {
        let (train, dev) = toy();
        assert_eq!(Majority.fit_predict(&train, &dev).unwrap(), vec![Label::Homophobic; 3]);
    }

    #[test]
    fn embedding_lookup_requires_every_id() {
        let (train, dev) = toy();
        let ids: Vec<String> = train.ids().map(String::from).collect();
        let features = FeatureMatrix::new(ids, 1, vec![0.0; 6]).unwrap();
        let clf = EmbeddingLogistic {
            features,
            train: TrainConfig::default(),
        };
        assert!(matches!(clf.fit_predict(&train, &dev), Err(Error::MissingFeatures(_))));
    }
}
