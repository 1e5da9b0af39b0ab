//! File-level commands behind the CLI.

mod config;
mod reproduce;

use std::collections::HashMap;
use std::path::{Path, PathBuf};

pub use config::{RunConfig, SplitPaths};
pub use reproduce::{cmd_reproduce, CheckLine, Expectations, ReproduceReport, Table};

use crate::ablation::{run_ablation, AblationPlan, AblationSetting, AblationTable};
use crate::augment::rebalance;
use crate::baselines::{BaselineKind, Classifier, EmbeddingLogistic, Majority, TfidfLogistic};
use crate::corpus::{
    distribution, load_tsv_with, save_tsv, synth_corpus, ClassDistribution, Corpus, DatasetSplit, Label, LabelColumn,
    ReadOptions, SplitName,
};
use crate::error::{Error, Result};
use crate::eval::{confusion, load_predictions, metrics, write_predictions, EvalReport};
use crate::features::{load_features, FeatureMatrix};
use crate::preprocess::{preprocess, preprocess_counted, PreprocessRecipe};
use crate::resources::Resources;

const ANY_LABELS: ReadOptions = ReadOptions {
    labels: LabelColumn::Auto,
    allow_empty_text: true,
};

const LABELED: ReadOptions = ReadOptions {
    labels: LabelColumn::Required,
    allow_empty_text: true,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PreprocessSummary {
    pub rows: usize,
    /// Pictographs with no entry in the emoji table.
    pub unknown_emoji: usize,
}

/// Applies `recipe` to every text of `input`; ids, labels and row order are
/// kept.
pub fn cmd_preprocess(
    input: &Path,
    output: &Path,
    recipe: PreprocessRecipe,
    resources: &Resources,
) -> Result<PreprocessSummary> {
    let split = load_tsv_with(input, SplitName::Train, ANY_LABELS)?;
    let mut unknown_emoji = 0;
    let cleaned = split.map_text(|text| {
        let (out, unknown) = preprocess_counted(text, recipe, &resources.emoji);
        unknown_emoji += unknown;
        out
    });
    save_tsv(&cleaned, output)?;
    Ok(PreprocessSummary {
        rows: cleaned.len(),
        unknown_emoji,
    })
}

/// Oversamples and downsamples a labeled file; returns the written
/// distribution.
pub fn cmd_rebalance(
    input: &Path,
    output: &Path,
    config: &RunConfig,
    resources: &Resources,
) -> Result<ClassDistribution> {
    config.validate()?;
    let split = load_tsv_with(input, SplitName::Train, LABELED)?;
    let out = rebalance(
        &split,
        &config.augmentation,
        &config.downsample,
        &resources.lexicon,
        &resources.stopwords,
    )?;
    save_tsv(&out, output)?;
    distribution(&out)
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct BaselineOptions {
    /// Feature files for `lr-embed`; rows are looked up by id across all of
    /// them.
    pub features: Vec<PathBuf>,
    /// Run the track recipe over both splits before fitting. Ignored by
    /// `lr-embed`, whose vectors are computed elsewhere.
    pub preprocess: bool,
    pub predictions_out: Option<PathBuf>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct BaselineOutcome {
    pub kind: BaselineKind,
    pub predictions: Vec<(String, Label)>,
    /// Present when every evaluation record carries a gold label.
    pub report: Option<EvalReport>,
}

pub fn load_feature_files(paths: &[PathBuf]) -> Result<FeatureMatrix> {
    let mut matrix: Option<FeatureMatrix> = None;
    for path in paths {
        let next = load_features(path)?;
        matrix = Some(match matrix {
            None => next,
            Some(m) => m.concat(next)?,
        });
    }
    matrix.ok_or_else(|| Error::Config("lr-embed needs at least one feature file".into()))
}

pub fn make_classifier(kind: BaselineKind, config: &RunConfig, features: &[PathBuf]) -> Result<Box<dyn Classifier>> {
    Ok(match kind {
        BaselineKind::Majority => Box::new(Majority),
        BaselineKind::LrTfidf => Box::new(TfidfLogistic { train: config.train }),
        BaselineKind::LrEmbed => Box::new(EmbeddingLogistic {
            features: load_feature_files(features)?,
            train: config.train,
        }),
    })
}

/// Fits on `train`, predicts `eval` and scores it when gold labels exist.
pub fn cmd_baseline(
    kind: BaselineKind,
    train_path: &Path,
    eval_path: &Path,
    config: &RunConfig,
    options: &BaselineOptions,
    resources: &Resources,
) -> Result<BaselineOutcome> {
    config.validate()?;
    let classifier = make_classifier(kind, config, &options.features)?;
    let mut train = load_tsv_with(train_path, SplitName::Train, LABELED)?;
    let mut eval = load_tsv_with(eval_path, SplitName::Dev, ANY_LABELS)?;
    if eval.is_empty() {
        return Err(Error::EmptySplit);
    }
    if options.preprocess && kind != BaselineKind::LrEmbed {
        let clean = |text: &str| preprocess(text, config.recipe, &resources.emoji);
        train = train.map_text(clean);
        eval = eval.map_text(clean);
    }
    let predicted = classifier.fit_predict(&train, &eval)?;
    let report = match eval.labels() {
        Ok(gold) => Some(metrics(&confusion(&gold, &predicted)?)),
        Err(_) => None,
    };
    let predictions: Vec<(String, Label)> = eval.ids().map(String::from).zip(predicted).collect();
    if let Some(out) = &options.predictions_out {
        write_prediction_file(out, &predictions)?;
    }
    Ok(BaselineOutcome {
        kind,
        predictions,
        report,
    })
}

fn write_prediction_file(path: &Path, rows: &[(String, Label)]) -> Result<()> {
    let mut buf = Vec::new();
    write_predictions(rows.iter().map(|(id, l)| (id.as_str(), *l)), &mut buf)?;
    std::fs::write(path, buf).map_err(|e| Error::io(path, e))
}

/// Scores a predictions file against a labeled TSV, joining on id.
pub fn cmd_evaluate(gold_path: &Path, predictions_path: &Path) -> Result<EvalReport> {
    let gold = load_tsv_with(gold_path, SplitName::Test, LABELED)?;
    let predictions: HashMap<String, Label> = load_predictions(predictions_path)?.into_iter().collect();
    if predictions.len() != gold.len() {
        return Err(Error::Dimension(format!(
            "{} predictions for {} gold records",
            predictions.len(),
            gold.len()
        )));
    }
    let mut predicted = Vec::with_capacity(gold.len());
    for id in gold.ids() {
        let label = predictions
            .get(id)
            .ok_or_else(|| Error::Config(format!("no prediction for id {id:?}")))?;
        predicted.push(*label);
    }
    Ok(metrics(&confusion(&gold.labels()?, &predicted)?))
}

/// Runs the ablation on the configured train and dev files.
pub fn cmd_ablate(
    kind: BaselineKind,
    settings: &[AblationSetting],
    config: &RunConfig,
    features: &[PathBuf],
    resources: &Resources,
) -> Result<AblationTable> {
    config.validate()?;
    let path = |p: &Option<PathBuf>, key: &str| {
        p.clone()
            .ok_or_else(|| Error::Config(format!("the ablation needs `{key}` in the config")))
    };
    let corpus = Corpus {
        track: config.track,
        train: load_tsv_with(path(&config.paths.train, "train")?, SplitName::Train, LABELED)?,
        dev: load_tsv_with(path(&config.paths.dev, "dev")?, SplitName::Dev, LABELED)?,
        test: None,
    };
    let plan = AblationPlan {
        recipe: config.recipe,
        augmentation: config.augmentation,
        downsample: config.downsample.clone(),
    };
    let classifier = make_classifier(kind, config, features)?;
    run_ablation(classifier.as_ref(), &corpus, settings, &plan, resources)
}

/// Writes a synthetic labeled split with exactly `dist` records per class.
pub fn cmd_synth(name: SplitName, dist: &ClassDistribution, output: &Path, seed: u64) -> Result<DatasetSplit> {
    let split = synth_corpus(name, dist, seed);
    save_tsv(&split, output)?;
    Ok(split)
}
