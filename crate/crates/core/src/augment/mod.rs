//! Easy Data Augmentation (EDA) and class-level oversampling.
//!
//! The four token operations share one change count
//! `n = max(1, round_half_up(alpha * len))`; random deletion uses `alpha`
//! directly as its per-token probability. All randomness comes from the
//! generator passed in, and [`oversample`] derives one generator per record
//! from `(seed, record id)`, so its output does not depend on thread count.

mod lexicon;

use std::fmt;

use rand::seq::SliceRandom;
use rand::Rng;
use rayon::prelude::*;

pub use lexicon::{StopwordList, SynonymLexicon};

use crate::corpus::{downsample, Comment, DatasetSplit, Label};
use crate::error::{Error, Result};
use crate::published;
use crate::rng;

/// Whitespace-free, non-empty tokens.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct TokenSeq(Vec<String>);

impl TokenSeq {
    pub fn tokenize(text: &str) -> Self {
        TokenSeq(text.split_whitespace().map(str::to_string).collect())
    }

    pub fn detokenize(&self) -> String {
        self.0.join(" ")
    }

    pub fn tokens(&self) -> &[String] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    fn push_phrase(&mut self, phrase: &str) {
        self.0.extend(phrase.split_whitespace().map(str::to_string));
    }

    fn insert_phrase(&mut self, at: usize, phrase: &str) {
        let words: Vec<String> = phrase.split_whitespace().map(str::to_string).collect();
        self.0.splice(at..at, words);
    }
}

impl fmt::Display for TokenSeq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.detokenize())
    }
}

impl<S: AsRef<str>> FromIterator<S> for TokenSeq {
    fn from_iter<I: IntoIterator<Item = S>>(iter: I) -> Self {
        let mut seq = TokenSeq::default();
        for item in iter {
            seq.push_phrase(item.as_ref());
        }
        seq
    }
}

/// Number of positions an operation changes: `max(1, round_half_up(alpha * len))`.
pub fn change_count(alpha: f64, len: usize) -> usize {
    // the epsilon keeps exact halves like 0.1 * 5 from landing just below .5
    let scaled = alpha * len as f64;
    ((scaled + 0.5 + 1e-9).floor() as usize).max(1)
}

fn eligible(token: &str, lexicon: &SynonymLexicon, stopwords: &StopwordList) -> bool {
    !stopwords.contains(token) && !lexicon.synonyms(token).is_empty()
}

/// Replaces up to `n` distinct non-stopword positions that have synonyms,
/// each with a uniformly chosen synonym.
pub fn synonym_replacement<R: Rng + ?Sized>(
    tokens: &TokenSeq,
    n: usize,
    lexicon: &SynonymLexicon,
    stopwords: &StopwordList,
    rng: &mut R,
) -> TokenSeq {
    let mut positions: Vec<usize> = (0..tokens.len())
        .filter(|&i| eligible(&tokens.0[i], lexicon, stopwords))
        .collect();
    if n == 0 || positions.is_empty() {
        return tokens.clone();
    }
    positions.shuffle(rng);
    positions.truncate(n);

    let mut replacement: Vec<Option<&str>> = vec![None; tokens.len()];
    for &pos in &positions {
        let synonyms = lexicon.synonyms(&tokens.0[pos]);
        replacement[pos] = Some(&synonyms[rng.random_range(0..synonyms.len())]);
    }

    let mut out = TokenSeq::default();
    for (token, swap) in tokens.0.iter().zip(replacement) {
        match swap {
            Some(phrase) => out.push_phrase(phrase),
            None => out.0.push(token.clone()),
        }
    }
    out
}

const INSERTION_RETRIES: usize = 10;

/// `n` times: picks a non-stopword token with synonyms (10 tries) and
/// inserts one of its synonyms at a uniformly random position.
pub fn random_insertion<R: Rng + ?Sized>(
    tokens: &TokenSeq,
    n: usize,
    lexicon: &SynonymLexicon,
    stopwords: &StopwordList,
    rng: &mut R,
) -> TokenSeq {
    let mut out = tokens.clone();
    if out.is_empty() {
        return out;
    }
    for _ in 0..n {
        let mut picked = None;
        for _ in 0..INSERTION_RETRIES {
            let candidate = &out.0[rng.random_range(0..out.len())];
            if eligible(candidate, lexicon, stopwords) {
                let synonyms = lexicon.synonyms(candidate);
                picked = Some(synonyms[rng.random_range(0..synonyms.len())].clone());
                break;
            }
        }
        if let Some(synonym) = picked {
            let at = rng.random_range(0..=out.len());
            out.insert_phrase(at, &synonym);
        }
    }
    out
}

/// `n` times: exchanges the tokens at two distinct uniformly chosen positions.
pub fn random_swap<R: Rng + ?Sized>(tokens: &TokenSeq, n: usize, rng: &mut R) -> TokenSeq {
    let mut out = tokens.clone();
    let len = out.len();
    if len < 2 {
        return out;
    }
    for _ in 0..n {
        let i = rng.random_range(0..len);
        let mut j = rng.random_range(0..len - 1);
        if j >= i {
            j += 1;
        }
        out.0.swap(i, j);
    }
    out
}

/// Deletes each token with probability `p`; never returns an empty
/// sequence for non-empty input.
pub fn random_deletion<R: Rng + ?Sized>(tokens: &TokenSeq, p: f64, rng: &mut R) -> TokenSeq {
    if tokens.len() <= 1 {
        return tokens.clone();
    }
    let p = if p.is_nan() { 0.0 } else { p.clamp(0.0, 1.0) };
    let kept: Vec<String> = tokens.0.iter().filter(|_| !rng.random_bool(p)).cloned().collect();
    if kept.is_empty() {
        return TokenSeq(vec![tokens.0[rng.random_range(0..tokens.len())].clone()]);
    }
    TokenSeq(kept)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum EdaOp {
    SynonymReplacement,
    RandomInsertion,
    RandomSwap,
    RandomDeletion,
}

impl EdaOp {
    /// Scheduling order used by [`eda_augment`].
    pub const ROUND_ROBIN: [EdaOp; 4] = [
        EdaOp::SynonymReplacement,
        EdaOp::RandomInsertion,
        EdaOp::RandomSwap,
        EdaOp::RandomDeletion,
    ];

    pub fn short_name(self) -> &'static str {
        match self {
            EdaOp::SynonymReplacement => "SR",
            EdaOp::RandomInsertion => "RI",
            EdaOp::RandomSwap => "RS",
            EdaOp::RandomDeletion => "RD",
        }
    }

    pub fn apply<R: Rng + ?Sized>(
        self,
        tokens: &TokenSeq,
        alpha: f64,
        lexicon: &SynonymLexicon,
        stopwords: &StopwordList,
        rng: &mut R,
    ) -> TokenSeq {
        let n = change_count(alpha, tokens.len());
        match self {
            EdaOp::SynonymReplacement => synonym_replacement(tokens, n, lexicon, stopwords, rng),
            EdaOp::RandomInsertion => random_insertion(tokens, n, lexicon, stopwords, rng),
            EdaOp::RandomSwap => random_swap(tokens, n, rng),
            EdaOp::RandomDeletion => random_deletion(tokens, alpha, rng),
        }
    }
}

/// `n_aug` augmented sentences (operations cycle SR, RI, RS, RD) followed by
/// the original sentence. A sentence with no tokens comes back alone.
pub fn eda_augment<R: Rng + ?Sized>(
    sentence: &str,
    alpha: f64,
    n_aug: usize,
    lexicon: &SynonymLexicon,
    stopwords: &StopwordList,
    rng: &mut R,
) -> Vec<String> {
    let tokens = TokenSeq::tokenize(sentence);
    if tokens.is_empty() {
        return vec![sentence.to_string()];
    }
    let mut out: Vec<String> = EdaOp::ROUND_ROBIN
        .iter()
        .cycle()
        .take(n_aug)
        .map(|op| op.apply(&tokens, alpha, lexicon, stopwords, rng).detokenize())
        .collect();
    out.push(sentence.to_string());
    out
}

/// Knobs for [`oversample`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AugmentationConfig {
    /// Fraction of tokens an operation changes, in `[0, 1]`.
    pub alpha: f64,
    /// Augmentations per original, indexed by [`Label::index`].
    pub n_aug: [usize; Label::COUNT],
    /// Keep each original row next to the augmenter's output, which itself
    /// ends with a copy of the original. Yields `count * (n_aug + 2)` rows
    /// per augmented label; `false` yields `count * (n_aug + 1)`.
    pub include_original_in_output: bool,
    pub seed: u64,
}

impl Default for AugmentationConfig {
    fn default() -> Self {
        AugmentationConfig {
            alpha: published::DEFAULT_ALPHA,
            n_aug: Label::ALL.map(published::default_n_aug),
            include_original_in_output: true,
            seed: 0,
        }
    }
}

impl AugmentationConfig {
    /// No label is augmented.
    pub fn disabled() -> Self {
        AugmentationConfig {
            n_aug: [0; Label::COUNT],
            ..Self::default()
        }
    }

    pub fn n_aug(&self, label: Label) -> usize {
        self.n_aug[label.index()]
    }

    pub fn with_n_aug(mut self, label: Label, n: usize) -> Self {
        self.n_aug[label.index()] = n;
        self
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if !(0.0..=1.0).contains(&self.alpha) {
            return Err(Error::Config(format!("alpha must be in [0, 1], got {}", self.alpha)));
        }
        Ok(())
    }

    /// Rows produced per original record of `label`.
    pub fn expansion(&self, label: Label) -> usize {
        match self.n_aug(label) {
            0 => 1,
            n if self.include_original_in_output => n + 2,
            n => n + 1,
        }
    }
}

/// Expands every record whose label has `n_aug > 0`; derived records get
/// ids `<id>#1`, `<id>#2`, ... and follow their original.
pub fn oversample(
    split: &DatasetSplit,
    config: &AugmentationConfig,
    lexicon: &SynonymLexicon,
    stopwords: &StopwordList,
) -> Result<DatasetSplit> {
    config.validate()?;
    let labels = split.labels()?;

    let expanded: Vec<Vec<Comment>> = split
        .records()
        .par_iter()
        .zip(labels.par_iter())
        .map(|(record, &label)| {
            let n_aug = config.n_aug(label);
            if n_aug == 0 {
                return vec![record.clone()];
            }
            let mut rng = rng::keyed(config.seed, &record.id);
            let mut texts = eda_augment(&record.text, config.alpha, n_aug, lexicon, stopwords, &mut rng);
            if texts.len() < n_aug + 1 {
                // untokenizable text: pad with copies so counts stay exact
                texts.resize(n_aug + 1, record.text.clone());
            }
            if !config.include_original_in_output {
                texts.pop();
            }
            let mut out = Vec::with_capacity(texts.len() + 1);
            out.push(record.clone());
            out.extend(
                texts
                    .into_iter()
                    .enumerate()
                    .map(|(k, text)| Comment::labeled(format!("{}#{}", record.id, k + 1), text, label)),
            );
            out
        })
        .collect();

    DatasetSplit::new(split.name(), expanded.into_iter().flatten().collect())
}

/// Oversamples, then downsamples each `(label, target)` pair with the
/// config's seed.
pub fn rebalance(
    split: &DatasetSplit,
    config: &AugmentationConfig,
    downsample_targets: &[(Label, usize)],
    lexicon: &SynonymLexicon,
    stopwords: &StopwordList,
) -> Result<DatasetSplit> {
    let mut out = oversample(split, config, lexicon, stopwords)?;
    for &(label, target) in downsample_targets {
        out = downsample(&out, label, target, config.seed)?;
    }
    Ok(out)
}
