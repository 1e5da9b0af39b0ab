//! Labeled comment corpora: schema, TSV ingestion, class counts,
//! downsampling and synthetic fixtures.
//!
//! On disk a split is a UTF-8 TSV file with columns `id`, `text` and
//! (optionally) `label`, LF line endings, and an optional header row
//! `id\ttext\tlabel`. Tabs, newlines, carriage returns and backslashes
//! inside a cell are written as `\t`, `\n`, `\r` and `\\`.

use std::collections::HashSet;
use std::fmt;
use std::fs;
use std::io::{Read, Write};
use std::path::Path;
use std::str::FromStr;

use rand::seq::{index, SliceRandom};
use rand::Rng;

use crate::error::{Error, Result};
use crate::rng;
use crate::tsv::{escape, numbered_lines, unescape};

/// Class of a comment.
///
/// Variants are declared in the lexicographic order of their canonical
/// strings, so the derived `Ord` is the tie-breaking order used everywhere.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Label {
    Homophobic,
    NonAntiLgbt,
    Transphobic,
}

impl Label {
    pub const COUNT: usize = 3;
    pub const ALL: [Label; Label::COUNT] = [Label::Homophobic, Label::NonAntiLgbt, Label::Transphobic];

    pub fn as_str(self) -> &'static str {
        match self {
            Label::Homophobic => "Homophobic",
            Label::NonAntiLgbt => "Non-anti-LGBT+ content",
            Label::Transphobic => "Transphobic",
        }
    }

    /// Position in [`Label::ALL`].
    pub fn index(self) -> usize {
        self as usize
    }

    pub fn from_index(index: usize) -> Option<Label> {
        Label::ALL.get(index).copied()
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseLabelError(pub String);

impl fmt::Display for ParseLabelError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "unknown label {:?}", self.0)
    }
}

impl std::error::Error for ParseLabelError {}

impl FromStr for Label {
    type Err = ParseLabelError;

    /// Exact match on the canonical string; no case folding or trimming.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Label::ALL
            .into_iter()
            .find(|label| label.as_str() == s)
            .ok_or_else(|| ParseLabelError(s.to_string()))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Track {
    English,
    Tamil,
    TamilEnglish,
}

impl Track {
    pub const ALL: [Track; 3] = [Track::English, Track::Tamil, Track::TamilEnglish];

    pub fn as_str(self) -> &'static str {
        match self {
            Track::English => "english",
            Track::Tamil => "tamil",
            Track::TamilEnglish => "tamil-english",
        }
    }
}

impl fmt::Display for Track {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Track {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "english" | "en" => Ok(Track::English),
            "tamil" | "ta" => Ok(Track::Tamil),
            "tamil-english" | "tamil_english" | "code-mixed" | "ta-en" => Ok(Track::TamilEnglish),
            _ => Err(Error::Config(format!("unknown track {s:?}"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SplitName {
    Train,
    Dev,
    Test,
}

impl SplitName {
    pub const ALL: [SplitName; 3] = [SplitName::Train, SplitName::Dev, SplitName::Test];

    pub fn as_str(self) -> &'static str {
        match self {
            SplitName::Train => "train",
            SplitName::Dev => "dev",
            SplitName::Test => "test",
        }
    }
}

impl fmt::Display for SplitName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for SplitName {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "train" => Ok(SplitName::Train),
            "dev" | "validation" => Ok(SplitName::Dev),
            "test" => Ok(SplitName::Test),
            _ => Err(Error::Config(format!("unknown split {s:?}"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Comment {
    pub id: String,
    pub text: String,
    /// `None` for prediction inputs.
    pub label: Option<Label>,
}

impl Comment {
    pub fn labeled(id: impl Into<String>, text: impl Into<String>, label: Label) -> Self {
        Comment {
            id: id.into(),
            text: text.into(),
            label: Some(label),
        }
    }

    pub fn unlabeled(id: impl Into<String>, text: impl Into<String>) -> Self {
        Comment {
            id: id.into(),
            text: text.into(),
            label: None,
        }
    }
}

/// An ordered list of comments with unique, non-empty ids.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DatasetSplit {
    name: SplitName,
    records: Vec<Comment>,
}

impl DatasetSplit {
    pub fn new(name: SplitName, records: Vec<Comment>) -> Result<Self> {
        let mut seen = HashSet::with_capacity(records.len());
        for (i, record) in records.iter().enumerate() {
            if record.id.is_empty() {
                return Err(Error::parse(i + 1, "empty id"));
            }
            if !seen.insert(record.id.as_str()) {
                return Err(Error::DuplicateId {
                    line: i + 1,
                    id: record.id.clone(),
                });
            }
        }
        Ok(DatasetSplit { name, records })
    }

    pub fn empty(name: SplitName) -> Self {
        DatasetSplit {
            name,
            records: Vec::new(),
        }
    }

    pub fn name(&self) -> SplitName {
        self.name
    }

    pub fn records(&self) -> &[Comment] {
        &self.records
    }

    pub fn into_records(self) -> Vec<Comment> {
        self.records
    }

    pub fn len(&self) -> usize {
        self.records.len()
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }

    /// Gold labels in record order; errors on the first unlabeled record.
    pub fn labels(&self) -> Result<Vec<Label>> {
        self.records
            .iter()
            .map(|r| r.label.ok_or_else(|| Error::Unlabeled(r.id.clone())))
            .collect()
    }

    pub fn ids(&self) -> impl Iterator<Item = &str> {
        self.records.iter().map(|r| r.id.as_str())
    }

    /// Applies `f` to every text, keeping ids, labels and order.
    pub fn map_text(&self, mut f: impl FnMut(&str) -> String) -> DatasetSplit {
        DatasetSplit {
            name: self.name,
            records: self
                .records
                .iter()
                .map(|r| Comment {
                    id: r.id.clone(),
                    text: f(&r.text),
                    label: r.label,
                })
                .collect(),
        }
    }
}

/// Per-label record counts.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct ClassDistribution {
    counts: [usize; Label::COUNT],
}

impl ClassDistribution {
    /// Arguments follow the row order of the published split table.
    pub fn new(homophobic: usize, transphobic: usize, non_anti: usize) -> Self {
        let mut counts = [0; Label::COUNT];
        counts[Label::Homophobic.index()] = homophobic;
        counts[Label::Transphobic.index()] = transphobic;
        counts[Label::NonAntiLgbt.index()] = non_anti;
        ClassDistribution { counts }
    }

    pub fn get(&self, label: Label) -> usize {
        self.counts[label.index()]
    }

    pub fn set(&mut self, label: Label, count: usize) {
        self.counts[label.index()] = count;
    }

    pub fn total(&self) -> usize {
        self.counts.iter().sum()
    }

    /// The most frequent label; ties go to the smaller label.
    pub fn argmax(&self) -> Label {
        Label::ALL.into_iter().fold(Label::ALL[0], |best, label| {
            if self.get(label) > self.get(best) {
                label
            } else {
                best
            }
        })
    }
}

impl fmt::Display for ClassDistribution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Homophobic={} Transphobic={} Non-anti-LGBT+ content={} total={}",
            self.get(Label::Homophobic),
            self.get(Label::Transphobic),
            self.get(Label::NonAntiLgbt),
            self.total()
        )
    }
}

/// The splits of one track.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Corpus {
    pub track: Track,
    pub train: DatasetSplit,
    pub dev: DatasetSplit,
    pub test: Option<DatasetSplit>,
}

/// Whether the file carries a label column.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LabelColumn {
    Required,
    Absent,
    /// Decided by the header, or by the first row's column count.
    Auto,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ReadOptions {
    pub labels: LabelColumn,
    /// Raw corpora never have empty texts; preprocessed ones may.
    pub allow_empty_text: bool,
}

impl ReadOptions {
    pub fn labeled() -> Self {
        ReadOptions {
            labels: LabelColumn::Required,
            allow_empty_text: false,
        }
    }

    pub fn unlabeled() -> Self {
        ReadOptions {
            labels: LabelColumn::Absent,
            allow_empty_text: false,
        }
    }
}

const HEADER_LABELED: &str = "id\ttext\tlabel";
const HEADER_UNLABELED: &str = "id\ttext";

pub fn load_tsv(path: impl AsRef<Path>, name: SplitName, has_labels: bool) -> Result<DatasetSplit> {
    let options = if has_labels {
        ReadOptions::labeled()
    } else {
        ReadOptions::unlabeled()
    };
    load_tsv_with(path, name, options)
}

pub fn load_tsv_with(path: impl AsRef<Path>, name: SplitName, options: ReadOptions) -> Result<DatasetSplit> {
    let path = path.as_ref();
    let content = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    parse_tsv(&content, name, options)
}

pub fn read_tsv(mut reader: impl Read, name: SplitName, options: ReadOptions) -> Result<DatasetSplit> {
    let mut content = String::new();
    reader.read_to_string(&mut content)?;
    parse_tsv(&content, name, options)
}

fn parse_tsv(content: &str, name: SplitName, options: ReadOptions) -> Result<DatasetSplit> {
    let mut lines = numbered_lines(content).peekable();
    let mut with_labels = match options.labels {
        LabelColumn::Required => Some(true),
        LabelColumn::Absent => Some(false),
        LabelColumn::Auto => None,
    };

    if let Some(&(_, first)) = lines.peek() {
        let header = match first {
            HEADER_LABELED if with_labels != Some(false) => Some(true),
            HEADER_UNLABELED if with_labels != Some(true) => Some(false),
            _ => None,
        };
        if let Some(has) = header {
            with_labels = Some(has);
            lines.next();
        } else if with_labels.is_none() {
            with_labels = Some(first.split('\t').count() == 3);
        }
    }
    let expected = if with_labels.unwrap_or(true) { 3 } else { 2 };

    let mut records = Vec::new();
    let mut seen = HashSet::new();
    for (line, row) in lines {
        let cells: Vec<&str> = row.split('\t').collect();
        if cells.len() != expected {
            return Err(Error::ColumnCount {
                line,
                expected,
                found: cells.len(),
            });
        }
        let id = unescape(cells[0]).into_owned();
        if id.is_empty() {
            return Err(Error::parse(line, "empty id"));
        }
        let text = unescape(cells[1]).into_owned();
        if text.is_empty() && !options.allow_empty_text {
            return Err(Error::parse(line, format!("empty text for id {id:?}")));
        }
        let label = match cells.get(2) {
            None | Some(&"") => None,
            Some(raw) => Some(
                raw.parse::<Label>()
                    .map_err(|e| Error::UnknownLabel { line, label: e.0 })?,
            ),
        };
        if !seen.insert(id.clone()) {
            return Err(Error::DuplicateId { line, id });
        }
        records.push(Comment { id, text, label });
    }
    Ok(DatasetSplit { name, records })
}

/// Writes a header plus one row per record. The label column is omitted
/// only when the split is non-empty and entirely unlabeled.
pub fn write_tsv(split: &DatasetSplit, mut writer: impl Write) -> Result<()> {
    let with_labels = split.is_empty() || split.records.iter().any(|r| r.label.is_some());
    let mut out = String::with_capacity(split.len() * 64);
    out.push_str(if with_labels { HEADER_LABELED } else { HEADER_UNLABELED });
    out.push('\n');
    for record in &split.records {
        out.push_str(&escape(&record.id));
        out.push('\t');
        out.push_str(&escape(&record.text));
        if with_labels {
            out.push('\t');
            if let Some(label) = record.label {
                out.push_str(label.as_str());
            }
        }
        out.push('\n');
    }
    writer.write_all(out.as_bytes())?;
    Ok(())
}

pub fn save_tsv(split: &DatasetSplit, path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    let mut buf = Vec::new();
    write_tsv(split, &mut buf)?;
    fs::write(path, buf).map_err(|e| Error::io(path, e))
}

pub fn to_tsv_string(split: &DatasetSplit) -> String {
    let mut buf = Vec::new();
    write_tsv(split, &mut buf).expect("writing to a Vec cannot fail");
    String::from_utf8(buf).expect("TSV output is UTF-8")
}

pub fn distribution(split: &DatasetSplit) -> Result<ClassDistribution> {
    let mut dist = ClassDistribution::default();
    for record in &split.records {
        let label = record.label.ok_or_else(|| Error::Unlabeled(record.id.clone()))?;
        dist.counts[label.index()] += 1;
    }
    Ok(dist)
}

/// Keeps exactly `target` records of `label`, drawn uniformly without
/// replacement. Other records and the relative order of survivors are kept.
pub fn downsample(split: &DatasetSplit, label: Label, target: usize, seed: u64) -> Result<DatasetSplit> {
    let positions: Vec<usize> = split
        .records
        .iter()
        .enumerate()
        .filter(|(_, r)| r.label == Some(label))
        .map(|(i, _)| i)
        .collect();
    if target > positions.len() {
        return Err(Error::DownsampleTarget {
            label,
            target,
            available: positions.len(),
        });
    }
    if target == positions.len() {
        return Ok(split.clone());
    }

    let mut rng = rng::seeded(seed);
    let mut drop = vec![false; split.len()];
    for &pos in &positions {
        drop[pos] = true;
    }
    for keep in index::sample(&mut rng, positions.len(), target) {
        drop[positions[keep]] = false;
    }
    let records = split
        .records
        .iter()
        .zip(drop)
        .filter(|(_, dropped)| !dropped)
        .map(|(r, _)| r.clone())
        .collect();
    Ok(DatasetSplit {
        name: split.name,
        records,
    })
}

const SYNTH_WORDS: &[&str] = &[
    "the",
    "and",
    "this",
    "that",
    "is",
    "so",
    "very",
    "you",
    "we",
    "they",
    "it",
    "to",
    "of",
    "in",
    "for",
    "with",
    "not",
    "all",
    "be",
    "have",
    "good",
    "bad",
    "movie",
    "song",
    "love",
    "great",
    "watch",
    "video",
    "people",
    "nice",
    "happy",
    "sad",
    "brother",
    "sister",
    "world",
    "life",
    "time",
    "day",
    "heart",
    "voice",
    "music",
    "best",
    "beautiful",
    "amazing",
    "support",
    "respect",
    "proud",
    "friend",
    "family",
    "story",
    "actor",
    "scene",
    "dance",
    "feel",
    "always",
    "never",
    "really",
    "strong",
    "brave",
    "kind",
    "semma",
    "vera",
    "level",
    "anna",
    "nalla",
    "padam",
    "paatu",
    "thalaiva",
];

/// Placeholder comments with exactly the requested label counts.
///
/// Labels are shuffled, and each text is 3 to 20 words drawn from a fixed
/// word list. Ids are `<split>-<n>` with a zero-padded 1-based `n`.
pub fn synth_corpus(name: SplitName, dist: &ClassDistribution, seed: u64) -> DatasetSplit {
    let mut rng = rng::keyed(seed, name.as_str());
    let mut labels: Vec<Label> = Label::ALL
        .into_iter()
        .flat_map(|label| std::iter::repeat_n(label, dist.get(label)))
        .collect();
    labels.shuffle(&mut rng);

    let records = labels
        .into_iter()
        .enumerate()
        .map(|(i, label)| {
            let len = rng.random_range(3..=20);
            let words: Vec<&str> = (0..len)
                .map(|_| SYNTH_WORDS[rng.random_range(0..SYNTH_WORDS.len())])
                .collect();
            Comment::labeled(format!("{}-{:05}", name.as_str(), i + 1), words.join(" "), label)
        })
        .collect();
    DatasetSplit { name, records }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn parse(content: &str) -> Result<DatasetSplit> {
        read_tsv(content.as_bytes(), SplitName::Train, ReadOptions::labeled())
    }

    #[test]
    fn label_strings_are_exact() {
        for label in Label::ALL {
            assert_eq!(label.as_str().parse::<Label>().unwrap(), label);
        }
        assert!("homophobic".parse::<Label>().is_err());
        assert!(" Homophobic".parse::<Label>().is_err());
        assert!("Non-anti-LGBT+".parse::<Label>().is_err());
    }

    #[test]
    fn label_order_is_lexicographic() {
        let mut names: Vec<&str> = Label::ALL.iter().map(|l| l.as_str()).collect();
        let declared = names.clone();
        names.sort();
        assert_eq!(names, declared);
    }

    #[test]
    fn empty_file_gives_empty_split() {
        assert!(parse("").unwrap().is_empty());
        assert!(parse("id\ttext\tlabel\n").unwrap().is_empty());
    }

    #[test]
    fn one_row_per_label() {
        let split = parse("a\tx\tHomophobic\nb\ty\tTransphobic\nc\tz\tNon-anti-LGBT+ content\n").unwrap();
        assert_eq!(distribution(&split).unwrap(), ClassDistribution::new(1, 1, 1));
        assert_eq!(split.ids().collect::<Vec<_>>(), ["a", "b", "c"]);
    }

    #[test]
    fn malformed_row_reports_line() {
        let err = parse("id\ttext\tlabel\na\tx\tHomophobic\nb\tmissing label\n").unwrap_err();
        assert!(
            matches!(
                err,
                Error::ColumnCount {
                    line: 3,
                    expected: 3,
                    found: 2
                }
            ),
            "{err}"
        );
    }

    #[test]
    fn unknown_label_is_named() {
        let err = parse("a\tx\tHomophobia\n").unwrap_err();
        assert!(err.to_string().contains("\"Homophobia\""), "{err}");
        assert!(matches!(err, Error::UnknownLabel { line: 1, .. }));
    }

    #[test]
    fn duplicate_id_is_rejected() {
        let err = parse("a\tx\tHomophobic\na\ty\tTransphobic\n").unwrap_err();
        assert!(matches!(err, Error::DuplicateId { line: 2, .. }), "{err}");
    }

    #[test]
    fn empty_text_only_when_allowed() {
        assert!(parse("a\t\tHomophobic\n").is_err());
        let relaxed = ReadOptions {
            allow_empty_text: true,
            ..ReadOptions::labeled()
        };
        let split = read_tsv("a\t\tHomophobic\n".as_bytes(), SplitName::Dev, relaxed).unwrap();
        assert_eq!(split.records()[0].text, "");
    }

    #[test]
    fn auto_detects_label_column() {
        let auto = ReadOptions {
            labels: LabelColumn::Auto,
            allow_empty_text: false,
        };
        let unlabeled = read_tsv("id\ttext\na\thello\n".as_bytes(), SplitName::Test, auto).unwrap();
        assert_eq!(unlabeled.records()[0].label, None);
        let labeled = read_tsv("a\thello\tTransphobic\n".as_bytes(), SplitName::Test, auto).unwrap();
        assert_eq!(labeled.records()[0].label, Some(Label::Transphobic));
    }

    #[test]
    fn distribution_rejects_unlabeled() {
        let split = DatasetSplit::new(SplitName::Test, vec![Comment::unlabeled("q1", "hi")]).unwrap();
        assert!(matches!(distribution(&split), Err(Error::Unlabeled(id)) if id == "q1"));
        assert_eq!(distribution(&DatasetSplit::empty(SplitName::Dev)).unwrap().total(), 0);
    }

    #[test]
    fn downsample_identity_and_error() {
        let split = synth_corpus(SplitName::Train, &ClassDistribution::new(3, 2, 10), 1);
        assert_eq!(downsample(&split, Label::NonAntiLgbt, 10, 5).unwrap(), split);
        let err = downsample(&split, Label::Transphobic, 3, 5).unwrap_err();
        assert!(matches!(
            err,
            Error::DownsampleTarget {
                target: 3,
                available: 2,
                ..
            }
        ));
    }

    #[test]
    fn downsample_is_seeded_and_order_preserving() {
        let split = synth_corpus(SplitName::Train, &ClassDistribution::new(5, 5, 40), 3);
        let a = downsample(&split, Label::NonAntiLgbt, 12, 99).unwrap();
        let b = downsample(&split, Label::NonAntiLgbt, 12, 99).unwrap();
        assert_eq!(a, b);
        assert_eq!(distribution(&a).unwrap(), ClassDistribution::new(5, 5, 12));
        let order: Vec<usize> = a.ids().map(|id| split.ids().position(|x| x == id).unwrap()).collect();
        assert!(order.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn argmax_ties_go_to_smallest_label() {
        assert_eq!(ClassDistribution::new(5, 5, 5).argmax(), Label::Homophobic);
        assert_eq!(ClassDistribution::new(0, 1, 0).argmax(), Label::Transphobic);
        assert_eq!(ClassDistribution::new(0, 4, 4).argmax(), Label::NonAntiLgbt);
    }

    #[test]
    fn synth_is_deterministic() {
        let dist = ClassDistribution::new(15, 6, 30);
        let a = to_tsv_string(&synth_corpus(SplitName::Dev, &dist, 42));
        let b = to_tsv_string(&synth_corpus(SplitName::Dev, &dist, 42));
        assert_eq!(a, b);
        assert_ne!(a, to_tsv_string(&synth_corpus(SplitName::Dev, &dist, 43)));
        assert!(synth_corpus(SplitName::Dev, &ClassDistribution::default(), 1).is_empty());
    }

    fn arb_split() -> impl Strategy<Value = DatasetSplit> {
        let record = (
            "[a-z0-9#]{1,8}",
            "\\PC{1,30}|[a-z \t\n\\\\]{1,30}",
            proptest::option::of(0usize..3),
        );
        proptest::collection::vec(record, 0..20).prop_map(|rows| {
            let mut seen = HashSet::new();
            let records = rows
                .into_iter()
                .filter(|(id, _, _)| seen.insert(id.clone()))
                .map(|(id, text, label)| Comment {
                    id,
                    text,
                    label: label.and_then(Label::from_index),
                })
                .collect();
            DatasetSplit::new(SplitName::Train, records).unwrap()
        })
    }

    proptest! {
        #[test]
        fn tsv_round_trip(split in arb_split()) {
            let text = to_tsv_string(&split);
            let options = ReadOptions { labels: LabelColumn::Auto, allow_empty_text: false };
            let back = read_tsv(text.as_bytes(), SplitName::Train, options).unwrap();
            prop_assert_eq!(back, split);
        }

        #[test]
        fn synth_matches_requested_counts(h in 0usize..800, t in 0usize..800, n in 0usize..3000, seed: u64) {
            let dist = ClassDistribution::new(h, t, n);
            prop_assert_eq!(distribution(&synth_corpus(SplitName::Train, &dist, seed)).unwrap(), dist);
        }

        #[test]
        fn downsample_touches_only_its_label(target in 0usize..30, seed: u64) {
            let split = synth_corpus(SplitName::Train, &ClassDistribution::new(7, 4, 30), seed);
            let out = downsample(&split, Label::NonAntiLgbt, target, seed).unwrap();
            let others = |s: &DatasetSplit| s.records().iter().filter(|r| r.label != Some(Label::NonAntiLgbt)).cloned().collect::<Vec<_>>();
            prop_assert_eq!(others(&out), others(&split));
            prop_assert_eq!(distribution(&out).unwrap().get(Label::NonAntiLgbt), target);
        }
    }
}
