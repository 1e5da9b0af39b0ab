//! Dense feature matrices: a smoothed TF-IDF vectorizer and the text format
//! used to exchange externally computed encoder vectors.
//!
//! Feature file layout:
//!
//! ```text
//! #dim=<D>\tcount=<N>
//! <id>\t<v1> <v2> ... <vD>      (N rows)
//! ```
//!
//! Further lines starting with `#` are comments.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt::Write as _;
use std::fs;
use std::io::Write;
use std::path::Path;

use crate::corpus::DatasetSplit;
use crate::error::{Error, Result};
use crate::tsv::numbered_lines;

/// Row-major `n x dim` matrix with one id per row.
#[derive(Debug, Clone, PartialEq)]
pub struct FeatureMatrix {
    row_ids: Vec<String>,
    dim: usize,
    values: Vec<f64>,
}

impl FeatureMatrix {
    pub fn new(row_ids: Vec<String>, dim: usize, values: Vec<f64>) -> Result<Self> {
        if values.len() != row_ids.len() * dim {
            return Err(Error::Dimension(format!(
                "{} values for {} rows of dim {dim}",
                values.len(),
                row_ids.len()
            )));
        }
        let mut seen = HashSet::with_capacity(row_ids.len());
        for (i, id) in row_ids.iter().enumerate() {
            if !seen.insert(id.as_str()) {
                return Err(Error::DuplicateId {
                    line: i + 1,
                    id: id.clone(),
                });
            }
        }
        if let Some(pos) = values.iter().position(|v| !v.is_finite()) {
            return Err(Error::Dimension(format!(
                "non-finite value in row {}",
                pos / dim.max(1)
            )));
        }
        Ok(FeatureMatrix { row_ids, dim, values })
    }

    pub fn empty(dim: usize) -> Self {
        FeatureMatrix {
            row_ids: Vec::new(),
            dim,
            values: Vec::new(),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rows(&self) -> usize {
        self.row_ids.len()
    }

    pub fn row_ids(&self) -> &[String] {
        &self.row_ids
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.values[i * self.dim..(i + 1) * self.dim]
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// Rows for `ids`, in that order.
    pub fn select<'a>(&self, ids: impl IntoIterator<Item = &'a str>) -> Result<FeatureMatrix> {
        let index: HashMap<&str, usize> = self
            .row_ids
            .iter()
            .enumerate()
            .map(|(i, id)| (id.as_str(), i))
            .collect();
        let mut row_ids = Vec::new();
        let mut values = Vec::new();
        for id in ids {
            let &i = index.get(id).ok_or_else(|| Error::MissingFeatures(id.to_string()))?;
            row_ids.push(id.to_string());
            values.extend_from_slice(self.row(i));
        }
        FeatureMatrix::new(row_ids, self.dim, values)
    }

    /// Rows of `self` followed by rows of `other`.
    pub fn concat(mut self, other: FeatureMatrix) -> Result<FeatureMatrix> {
        if self.dim != other.dim && self.rows() > 0 && other.rows() > 0 {
            return Err(Error::Dimension(format!(
                "cannot stack dim {} with dim {}",
                self.dim, other.dim
            )));
        }
        if self.rows() == 0 {
            self.dim = other.dim;
        }
        self.row_ids.extend(other.row_ids);
        self.values.extend(other.values);
        FeatureMatrix::new(self.row_ids, self.dim, self.values)
    }
}

/// Token to column index, with document frequencies. Columns follow sorted
/// token order, so fitting does not depend on document order.
#[derive(Debug, Clone, PartialEq)]
pub struct Vocabulary {
    index: HashMap<String, usize>,
    tokens: Vec<String>,
    doc_freq: Vec<usize>,
}

impl Vocabulary {
    pub fn len(&self) -> usize {
        self.tokens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tokens.is_empty()
    }

    pub fn index_of(&self, token: &str) -> Option<usize> {
        self.index.get(token).copied()
    }

    pub fn token(&self, column: usize) -> &str {
        &self.tokens[column]
    }

    pub fn doc_freq(&self, token: &str) -> Option<usize> {
        self.index_of(token).map(|i| self.doc_freq[i])
    }
}

/// `idf(t) = ln((1 + N) / (1 + df(t))) + 1`, rows L2-normalized.
#[derive(Debug, Clone, PartialEq)]
pub struct TfidfModel {
    vocabulary: Vocabulary,
    idf: Vec<f64>,
    n_docs: usize,
}

impl TfidfModel {
    pub fn vocabulary(&self) -> &Vocabulary {
        &self.vocabulary
    }

    pub fn n_docs(&self) -> usize {
        self.n_docs
    }

    pub fn idf(&self, token: &str) -> Option<f64> {
        self.vocabulary.index_of(token).map(|i| self.idf[i])
    }

    pub fn dim(&self) -> usize {
        self.vocabulary.len()
    }

    /// TF-IDF row for one document. All-OOV documents give a zero row.
    pub fn transform_text(&self, text: &str) -> Vec<f64> {
        let mut row = vec![0.0; self.dim()];
        for token in text.split_whitespace() {
            if let Some(i) = self.vocabulary.index_of(token) {
                row[i] += 1.0;
            }
        }
        for (value, idf) in row.iter_mut().zip(&self.idf) {
            *value *= idf;
        }
        let norm = row.iter().map(|v| v * v).sum::<f64>().sqrt();
        if norm > 0.0 {
            row.iter_mut().for_each(|v| *v /= norm);
        }
        row
    }
}

/// Fits over the whitespace tokens of every record in `splits`.
pub fn tfidf_fit(splits: &[&DatasetSplit]) -> Result<TfidfModel> {
    let mut doc_freq: BTreeMap<&str, usize> = BTreeMap::new();
    let mut n_docs = 0;
    for split in splits {
        for record in split.records() {
            n_docs += 1;
            let unique: HashSet<&str> = record.text.split_whitespace().collect();
            for token in unique {
                *doc_freq.entry(token).or_default() += 1;
            }
        }
    }
    if doc_freq.is_empty() {
        return Err(Error::EmptyCorpus);
    }

    let tokens: Vec<String> = doc_freq.keys().map(|t| t.to_string()).collect();
    let df: Vec<usize> = doc_freq.values().copied().collect();
    let idf = df
        .iter()
        .map(|&d| ((1.0 + n_docs as f64) / (1.0 + d as f64)).ln() + 1.0)
        .collect();
    let index = tokens.iter().enumerate().map(|(i, t)| (t.clone(), i)).collect();
    Ok(TfidfModel {
        vocabulary: Vocabulary {
            index,
            tokens,
            doc_freq: df,
        },
        idf,
        n_docs,
    })
}

pub fn tfidf_transform(model: &TfidfModel, split: &DatasetSplit) -> FeatureMatrix {
    let mut values = Vec::with_capacity(split.len() * model.dim());
    for record in split.records() {
        values.extend(model.transform_text(&record.text));
    }
    FeatureMatrix {
        row_ids: split.ids().map(str::to_string).collect(),
        dim: model.dim(),
        values,
    }
}

/// Writes the feature-file format; floats use the shortest representation
/// that reads back to the same `f64`.
pub fn write_features(matrix: &FeatureMatrix, mut writer: impl Write) -> Result<()> {
    let mut out = String::with_capacity(matrix.values.len() * 12 + 32);
    let _ = writeln!(out, "#dim={}\tcount={}", matrix.dim, matrix.rows());
    for (i, id) in matrix.row_ids.iter().enumerate() {
        out.push_str(id);
        out.push('\t');
        for (j, v) in matrix.row(i).iter().enumerate() {
            if j > 0 {
                out.push(' ');
            }
            let _ = write!(out, "{v:e}");
        }
        out.push('\n');
    }
    writer.write_all(out.as_bytes())?;
    Ok(())
}

pub fn store_features(matrix: &FeatureMatrix, path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    let mut buf = Vec::new();
    write_features(matrix, &mut buf)?;
    fs::write(path, buf).map_err(|e| Error::io(path, e))
}

pub fn load_features(path: impl AsRef<Path>) -> Result<FeatureMatrix> {
    let path = path.as_ref();
    let content = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    parse_features(&content)
}

fn parse_header(line: &str) -> Option<(usize, usize)> {
    let (dim, count) = line.strip_prefix("#dim=")?.split_once("\tcount=")?;
    let digits = |s: &str| !s.is_empty() && s.bytes().all(|b| b.is_ascii_digit());
    if !digits(dim) || !digits(count) {
        return None;
    }
    Some((dim.parse().ok()?, count.parse().ok()?))
}

pub fn parse_features(content: &str) -> Result<FeatureMatrix> {
    let mut lines = numbered_lines(content);
    let (dim, count) = match lines.next() {
        Some((1, header)) => parse_header(header).ok_or_else(|| Error::parse(1, format!("bad header {header:?}")))?,
        _ => return Err(Error::parse(1, "missing #dim=<D>\\tcount=<N> header")),
    };

    let mut row_ids = Vec::with_capacity(count);
    let mut values = Vec::with_capacity(count * dim);
    let mut seen = HashSet::with_capacity(count);
    for (line, row) in lines {
        if row.starts_with('#') {
            continue;
        }
        let (id, rest) = row
            .split_once('\t')
            .ok_or_else(|| Error::parse(line, "expected <id>\\t<values>"))?;
        if id.is_empty() {
            return Err(Error::parse(line, "empty id"));
        }
        let before = values.len();
        for token in rest.split_whitespace() {
            let v: f64 = token
                .parse()
                .map_err(|_| Error::parse(line, format!("bad float {token:?}")))?;
            if !v.is_finite() {
                return Err(Error::parse(line, format!("non-finite value {token:?}")));
            }
            values.push(v);
        }
        let found = values.len() - before;
        if found != dim {
            return Err(Error::parse(line, format!("expected {dim} values, found {found}")));
        }
        if !seen.insert(id.to_string()) {
            return Err(Error::DuplicateId {
                line,
                id: id.to_string(),
            });
        }
        row_ids.push(id.to_string());
    }
    if row_ids.len() != count {
        return Err(Error::parse(
            1,
            format!("header declares {count} rows, file has {}", row_ids.len()),
        ));
    }
    Ok(FeatureMatrix { row_ids, dim, values })
}
