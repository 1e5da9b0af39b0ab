//! Published reference numbers for the shared-task corpora: class counts per
//! track and split, the rebalanced English training counts, and the
//! majority-baseline macro scores.

use crate::corpus::{ClassDistribution, Label, SplitName, Track};

/// Class counts of the released corpus for one track and split.
pub fn split_counts(track: Track, split: SplitName) -> ClassDistribution {
    use SplitName::*;
    use Track::*;
    match (track, split) {
        (English, Train) => ClassDistribution::new(157, 6, 3001),
        (English, Dev) => ClassDistribution::new(58, 2, 732),
        (English, Test) => ClassDistribution::new(61, 5, 924),
        (Tamil, Train) => ClassDistribution::new(485, 155, 2022),
        (Tamil, Dev) => ClassDistribution::new(103, 37, 526),
        (Tamil, Test) => ClassDistribution::new(135, 41, 657),
        (TamilEnglish, Train) => ClassDistribution::new(311, 112, 3438),
        (TamilEnglish, Dev) => ClassDistribution::new(66, 38, 862),
        (TamilEnglish, Test) => ClassDistribution::new(88, 34, 1085),
    }
}

/// Total comments per track over all three splits.
pub fn track_total(track: Track) -> usize {
    match track {
        Track::English => 4946,
        Track::Tamil => 4161,
        Track::TamilEnglish => 6034,
    }
}

/// English training counts after oversampling and downsampling.
pub fn rebalanced_english_train() -> ClassDistribution {
    ClassDistribution::new(2826, 204, 1500)
}

/// Default per-label number of augmentations.
pub fn default_n_aug(label: Label) -> usize {
    match label {
        Label::Homophobic => 16,
        Label::Transphobic => 32,
        Label::NonAntiLgbt => 0,
    }
}

pub const DEFAULT_ALPHA: f64 = 0.1;
pub const DEFAULT_NON_ANTI_TARGET: usize = 1500;

/// Macro precision, recall and F1 (two decimals) of the most-frequent
/// baseline.
pub fn majority_macro(track: Track) -> [f64; 3] {
    match track {
        Track::English => [0.31, 0.33, 0.32],
        Track::Tamil => [0.26, 0.33, 0.29],
        Track::TamilEnglish => [0.30, 0.33, 0.31],
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn split_counts_sum_to_track_totals() {
        for track in Track::ALL {
            let sum: usize = SplitName::ALL.iter().map(|&s| split_counts(track, s).total()).sum();
            assert_eq!(sum, track_total(track), "{track}");
        }
        let all: usize = Track::ALL.iter().map(|&t| track_total(t)).sum();
        assert_eq!(all, 15_141);
    }
}
