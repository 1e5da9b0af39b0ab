//! Flat TOML run configuration.
//!
//! Every key is optional and unknown keys are rejected. Missing keys take
//! the track defaults from [`RunConfig::for_track`].
//!
//! ```toml
//! track = "english"
//! seed = 7
//! train = "data/en_train.tsv"
//! dev = "data/en_dev.tsv"
//! alpha = 0.1
//! n_aug_homophobic = 16
//! n_aug_transphobic = 32
//! downsample_non_anti = 1500
//! epochs = 300
//! ```

use std::fs;
use std::path::{Path, PathBuf};

use serde::Deserialize;

use crate::augment::AugmentationConfig;
use crate::corpus::{Label, Track};
use crate::error::{Error, Result};
use crate::models::TrainConfig;
use crate::preprocess::PreprocessRecipe;
use crate::published;

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SplitPaths {
    pub train: Option<PathBuf>,
    pub dev: Option<PathBuf>,
    pub test: Option<PathBuf>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub track: Track,
    pub paths: SplitPaths,
    pub recipe: PreprocessRecipe,
    pub augmentation: AugmentationConfig,
    pub train: TrainConfig,
    /// Applied in order after oversampling.
    pub downsample: Vec<(Label, usize)>,
    pub seed: u64,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawConfig {
    track: Option<String>,
    seed: Option<u64>,
    train: Option<PathBuf>,
    dev: Option<PathBuf>,
    test: Option<PathBuf>,
    strip_punctuation: Option<bool>,
    deemojify: Option<bool>,
    lowercase_latin: Option<bool>,
    alpha: Option<f64>,
    n_aug_homophobic: Option<usize>,
    n_aug_transphobic: Option<usize>,
    n_aug_non_anti: Option<usize>,
    include_original: Option<bool>,
    downsample: Option<bool>,
    downsample_homophobic: Option<usize>,
    downsample_transphobic: Option<usize>,
    downsample_non_anti: Option<usize>,
    learning_rate: Option<f64>,
    epochs: Option<usize>,
    l2: Option<f64>,
}

impl RunConfig {
    /// Augmentation and the Non-anti-LGBT+ downsample are on for English
    /// only.
    pub fn for_track(track: Track) -> Self {
        let english = track == Track::English;
        RunConfig {
            track,
            paths: SplitPaths::default(),
            recipe: PreprocessRecipe::for_track(track),
            augmentation: if english {
                AugmentationConfig::default()
            } else {
                AugmentationConfig::disabled()
            },
            train: TrainConfig::default(),
            downsample: if english {
                vec![(Label::NonAntiLgbt, published::DEFAULT_NON_ANTI_TARGET)]
            } else {
                Vec::new()
            },
            seed: 0,
        }
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let content = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::from_toml(&content)
    }

    pub fn from_toml(content: &str) -> Result<Self> {
        let raw: RawConfig = toml::from_str(content).map_err(|e| Error::Config(e.message().to_string()))?;
        let track = match &raw.track {
            Some(t) => t
                .parse::<Track>()
                .map_err(|_| Error::Config(format!("unknown track {t:?}")))?,
            None => Track::English,
        };
        let mut config = RunConfig::for_track(track);
        config.paths = SplitPaths {
            train: raw.train,
            dev: raw.dev,
            test: raw.test,
        };

        let recipe = &mut config.recipe;
        recipe.strip_punctuation = raw.strip_punctuation.unwrap_or(recipe.strip_punctuation);
        recipe.deemojify = raw.deemojify.unwrap_or(recipe.deemojify);
        recipe.lowercase_latin = raw.lowercase_latin.unwrap_or(recipe.lowercase_latin);

        let aug = &mut config.augmentation;
        aug.alpha = raw.alpha.unwrap_or(aug.alpha);
        for (label, value) in [
            (Label::Homophobic, raw.n_aug_homophobic),
            (Label::Transphobic, raw.n_aug_transphobic),
            (Label::NonAntiLgbt, raw.n_aug_non_anti),
        ] {
            if let Some(n) = value {
                aug.n_aug[label.index()] = n;
            }
        }
        aug.include_original_in_output = raw.include_original.unwrap_or(aug.include_original_in_output);

        for (label, value) in [
            (Label::Homophobic, raw.downsample_homophobic),
            (Label::Transphobic, raw.downsample_transphobic),
            (Label::NonAntiLgbt, raw.downsample_non_anti),
        ] {
            if let Some(target) = value {
                config.downsample.retain(|&(l, _)| l != label);
                config.downsample.push((label, target));
            }
        }
        if raw.downsample == Some(false) {
            config.downsample.clear();
        }

        let train = &mut config.train;
        train.learning_rate = raw.learning_rate.unwrap_or(train.learning_rate);
        train.epochs = raw.epochs.unwrap_or(train.epochs);
        train.l2 = raw.l2.unwrap_or(train.l2);

        config = config.with_seed(raw.seed.unwrap_or(0));
        config.validate()?;
        Ok(config)
    }

    /// Sets the run seed and every stage seed derived from it.
    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self.augmentation.seed = seed;
        self.train.seed = seed;
        self
    }

    pub fn validate(&self) -> Result<()> {
        self.augmentation.validate()?;
        self.train.validate()?;
        for (i, (label, _)) in self.downsample.iter().enumerate() {
            if self.downsample[..i].iter().any(|(l, _)| l == label) {
                return Err(Error::Config(format!("two downsample targets for {label}")));
            }
        }
        Ok(())
    }
}
