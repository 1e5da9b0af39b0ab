//! Preprocessing and augmentation ablation over a pluggable classifier.
//!
//! Every arm trains on a derived copy of the training split and is scored on
//! the dev split. Augmentation only ever touches training data.

use std::fmt::{self, Write as _};
use std::str::FromStr;

use rayon::prelude::*;

use crate::augment::{rebalance, AugmentationConfig};
use crate::baselines::Classifier;
use crate::corpus::{distribution, ClassDistribution, Corpus, DatasetSplit, Label, Track};
use crate::error::{Error, Result};
use crate::eval::{confusion, metrics, round_half_up, EvalReport};
use crate::preprocess::{preprocess, PreprocessRecipe};
use crate::published;
use crate::resources::Resources;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum AblationSetting {
    Base,
    WithPreprocess,
    WithAugmentation,
    WithPreprocessAndAugmentation,
}

impl AblationSetting {
    pub const ALL: [AblationSetting; 4] = [
        AblationSetting::Base,
        AblationSetting::WithPreprocess,
        AblationSetting::WithAugmentation,
        AblationSetting::WithPreprocessAndAugmentation,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            AblationSetting::Base => "base",
            AblationSetting::WithPreprocess => "+PRE",
            AblationSetting::WithAugmentation => "+DA",
            AblationSetting::WithPreprocessAndAugmentation => "+PRE+DA",
        }
    }

    pub fn preprocesses(self) -> bool {
        matches!(
            self,
            AblationSetting::WithPreprocess | AblationSetting::WithPreprocessAndAugmentation
        )
    }

    pub fn augments(self) -> bool {
        matches!(
            self,
            AblationSetting::WithAugmentation | AblationSetting::WithPreprocessAndAugmentation
        )
    }

    /// Augmentation is defined for English only.
    pub fn applies_to(self, track: Track) -> bool {
        !self.augments() || track == Track::English
    }

    /// The settings valid for `track`, in canonical order.
    pub fn for_track(track: Track) -> Vec<AblationSetting> {
        Self::ALL.into_iter().filter(|s| s.applies_to(track)).collect()
    }
}

impl fmt::Display for AblationSetting {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for AblationSetting {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "base" => Ok(AblationSetting::Base),
            "+pre" | "pre" | "with_preprocess" => Ok(AblationSetting::WithPreprocess),
            "+da" | "da" | "with_augmentation" => Ok(AblationSetting::WithAugmentation),
            "+pre+da" | "pre+da" | "with_preprocess_and_augmentation" => {
                Ok(AblationSetting::WithPreprocessAndAugmentation)
            }
            _ => Err(Error::Config(format!("unknown ablation setting {s:?}"))),
        }
    }
}

/// Arm recipes shared by every setting.
#[derive(Debug, Clone, PartialEq)]
pub struct AblationPlan {
    pub recipe: PreprocessRecipe,
    pub augmentation: AugmentationConfig,
    pub downsample: Vec<(Label, usize)>,
}

impl AblationPlan {
    pub fn for_track(track: Track) -> Self {
        AblationPlan {
            recipe: PreprocessRecipe::for_track(track),
            augmentation: AugmentationConfig::default(),
            downsample: vec![(Label::NonAntiLgbt, published::DEFAULT_NON_ANTI_TARGET)],
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    Up,
    Down,
    Same,
}

impl Direction {
    /// Compares two macro-F1 scores after rounding to two decimals.
    pub fn between(base: f64, arm: f64) -> Direction {
        let (b, a) = (round_half_up(base, 2), round_half_up(arm, 2));
        if a > b {
            Direction::Up
        } else if a < b {
            Direction::Down
        } else {
            Direction::Same
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            Direction::Up => "↑",
            Direction::Down => "↓",
            Direction::Same => "=",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct AblationRow {
    pub setting: AblationSetting,
    pub report: EvalReport,
    /// Class counts the arm trained on.
    pub train_distribution: ClassDistribution,
    /// Relative to the base arm; `None` on the base row itself.
    pub direction: Option<Direction>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct AblationTable {
    pub classifier: String,
    pub track: Track,
    pub rows: Vec<AblationRow>,
}

impl AblationTable {
    pub fn row(&self, setting: AblationSetting) -> Option<&AblationRow> {
        self.rows.iter().find(|r| r.setting == setting)
    }

    pub fn to_tsv(&self) -> String {
        let mut out = String::from("setting\tP\tR\tF1\tRel.\n");
        for row in &self.rows {
            let [p, r, f] = row.report.rounded_macro();
            let rel = row.direction.map_or("-", Direction::symbol);
            let _ = writeln!(out, "{}\t{p:.2}\t{r:.2}\t{f:.2}\t{rel}", row.setting);
        }
        out
    }
}

/// The training and evaluation splits one arm sees.
pub fn build_arm(
    setting: AblationSetting,
    corpus: &Corpus,
    plan: &AblationPlan,
    resources: &Resources,
) -> Result<(DatasetSplit, DatasetSplit)> {
    if !setting.applies_to(corpus.track) {
        return Err(Error::Config(format!(
            "{setting} does not apply to the {} track",
            corpus.track
        )));
    }
    let (mut train, dev) = if setting.preprocesses() {
        let clean = |text: &str| preprocess(text, plan.recipe, &resources.emoji);
        (corpus.train.map_text(clean), corpus.dev.map_text(clean))
    } else {
        (corpus.train.clone(), corpus.dev.clone())
    };
    if setting.augments() {
        train = rebalance(
            &train,
            &plan.augmentation,
            &plan.downsample,
            &resources.lexicon,
            &resources.stopwords,
        )?;
    }
    Ok((train, dev))
}

/// Runs the base arm and every requested setting; rows follow `settings`.
pub fn run_ablation(
    classifier: &dyn Classifier,
    corpus: &Corpus,
    settings: &[AblationSetting],
    plan: &AblationPlan,
    resources: &Resources,
) -> Result<AblationTable> {
    for (i, s) in settings.iter().enumerate() {
        if settings[..i].contains(s) {
            return Err(Error::Config(format!("setting {s} requested twice")));
        }
        if !s.applies_to(corpus.track) {
            return Err(Error::Config(format!(
                "{s} does not apply to the {} track",
                corpus.track
            )));
        }
    }
    if corpus.train.is_empty() || corpus.dev.is_empty() {
        return Err(Error::EmptySplit);
    }
    let gold = corpus.dev.labels()?;

    let mut arms = settings.to_vec();
    if !arms.contains(&AblationSetting::Base) {
        arms.push(AblationSetting::Base);
    }
    let results: Vec<(EvalReport, ClassDistribution)> = arms
        .par_iter()
        .map(|&setting| {
            let (train, dev) = build_arm(setting, corpus, plan, resources)?;
            let predicted = classifier.fit_predict(&train, &dev)?;
            Ok((metrics(&confusion(&gold, &predicted)?), distribution(&train)?))
        })
        .collect::<Result<_>>()?;

    let base_index = arms
        .iter()
        .position(|&s| s == AblationSetting::Base)
        .expect("base arm present");
    let base_f1 = results[base_index].0.macro_f1;
    let rows = settings
        .iter()
        .zip(results)
        .map(|(&setting, (report, train_distribution))| AblationRow {
            direction: (setting != AblationSetting::Base).then(|| Direction::between(base_f1, report.macro_f1)),
            setting,
            report,
            train_distribution,
        })
        .collect();
    Ok(AblationTable {
        classifier: classifier.name(),
        track: corpus.track,
        rows,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::augment::{StopwordList, SynonymLexicon};
    use crate::baselines::{Majority, TfidfLogistic};
    use crate::corpus::{synth_corpus, SplitName};
    use crate::preprocess::EmojiTable;

    fn resources() -> Resources {
        let mut lexicon = SynonymLexicon::default();
        lexicon.insert("movie", ["film"]);
        Resources {
            emoji: EmojiTable::bundled(),
            lexicon,
            stopwords: StopwordList::english(),
        }
    }

    fn corpus(track: Track) -> Corpus {
        Corpus {
            track,
            train: synth_corpus(SplitName::Train, &ClassDistribution::new(6, 2, 40), 3),
            dev: synth_corpus(SplitName::Dev, &ClassDistribution::new(3, 1, 20), 4),
            test: None,
        }
    }

    fn small_plan() -> AblationPlan {
        AblationPlan {
            downsample: vec![(Label::NonAntiLgbt, 30)],
            ..AblationPlan::for_track(Track::English)
        }
    }

    #[test]
    fn names_parse_back() {
        for s in AblationSetting::ALL {
            assert_eq!(s.as_str().parse::<AblationSetting>().unwrap(), s);
        }
        assert!("+XX".parse::<AblationSetting>().is_err());
    }

    #[test]
    fn augmentation_is_english_only() {
        assert_eq!(AblationSetting::for_track(Track::English).len(), 4);
        assert_eq!(
            AblationSetting::for_track(Track::Tamil),
            [AblationSetting::Base, AblationSetting::WithPreprocess]
        );
        let err = run_ablation(
            &Majority,
            &corpus(Track::TamilEnglish),
            &[AblationSetting::WithAugmentation],
            &small_plan(),
            &resources(),
        );
        assert!(matches!(err, Err(Error::Config(_))));
    }

    #[test]
    fn direction_uses_rounded_scores() {
        assert_eq!(Direction::between(0.321, 0.324), Direction::Same);
        assert_eq!(Direction::between(0.32, 0.33), Direction::Up);
        assert_eq!(Direction::between(0.5, 0.1), Direction::Down);
    }

    #[test]
    fn majority_is_unchanged_by_preprocessing() {
        let table = run_ablation(
            &Majority,
            &corpus(Track::English),
            &[AblationSetting::Base, AblationSetting::WithPreprocess],
            &small_plan(),
            &resources(),
        )
        .unwrap();
        let base = &table.rows[0];
        let pre = &table.rows[1];
        assert_eq!(base.report, pre.report);
        assert_eq!(pre.direction, Some(Direction::Same));
        assert_eq!(base.direction, None);
        assert!(table.to_tsv().starts_with("setting\tP\tR\tF1\tRel.\nbase\t"));
    }

    #[test]
    fn augmented_arm_trains_on_rebalanced_counts() {
        let plan = small_plan();
        let table = run_ablation(
            &Majority,
            &corpus(Track::English),
            &[
                AblationSetting::WithAugmentation,
                AblationSetting::WithPreprocessAndAugmentation,
            ],
            &plan,
            &resources(),
        )
        .unwrap();
        for row in &table.rows {
            assert_eq!(
                row.train_distribution,
                ClassDistribution::new(6 * 18, 2 * 34, 30),
                "{}",
                row.setting
            );
            assert!(row.direction.is_some());
        }
        assert_eq!(table.rows[0].setting, AblationSetting::WithAugmentation);
    }

    #[test]
    fn arms_do_not_touch_the_input_corpus() {
        let c = corpus(Track::English);
        let before = c.clone();
        let table = run_ablation(
            &TfidfLogistic::default(),
            &c,
            &AblationSetting::ALL,
            &small_plan(),
            &resources(),
        )
        .unwrap();
        assert_eq!(c, before);
        assert_eq!(table.rows.len(), 4);
        let again = run_ablation(
            &TfidfLogistic::default(),
            &c,
            &AblationSetting::ALL,
            &small_plan(),
            &resources(),
        )
        .unwrap();
        assert_eq!(table, again);
    }

    #[test]
    fn duplicate_settings_rejected() {
        let err = run_ablation(
            &Majority,
            &corpus(Track::English),
            &[AblationSetting::Base, AblationSetting::Base],
            &small_plan(),
            &resources(),
        );
        assert!(err.is_err());
    }
}
