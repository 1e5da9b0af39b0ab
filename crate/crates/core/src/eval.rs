//! Confusion matrices and macro-averaged precision, recall and F1.
//!
//! Macro F1 is the unweighted mean of per-class F1 scores (not the harmonic
//! mean of macro precision and macro recall). Any 0/0 ratio counts as 0, and
//! every class is averaged, including classes with no support.

use std::collections::HashMap;
use std::fmt::Write as _;
use std::fs;
use std::io::Write;
use std::path::Path;

use crate::corpus::Label;
use crate::error::{Error, Result};
use crate::tsv::{escape, numbered_lines, unescape};

/// `K x K` counts; entry `(gold, predicted)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConfusionMatrix {
    n_classes: usize,
    counts: Vec<usize>,
}

impl ConfusionMatrix {
    /// `counts` is row-major with gold classes as rows.
    pub fn from_counts(n_classes: usize, counts: Vec<usize>) -> Result<Self> {
        if counts.len() != n_classes * n_classes {
            return Err(Error::Dimension(format!(
                "{} counts for a {n_classes}x{n_classes} matrix",
                counts.len()
            )));
        }
        Ok(ConfusionMatrix { n_classes, counts })
    }

    pub fn n_classes(&self) -> usize {
        self.n_classes
    }

    pub fn get(&self, gold: usize, predicted: usize) -> usize {
        self.counts[gold * self.n_classes + predicted]
    }

    pub fn total(&self) -> usize {
        self.counts.iter().sum()
    }

    /// Gold support of `class`.
    pub fn row_sum(&self, class: usize) -> usize {
        (0..self.n_classes).map(|p| self.get(class, p)).sum()
    }

    /// Number of predictions of `class`.
    pub fn column_sum(&self, class: usize) -> usize {
        (0..self.n_classes).map(|g| self.get(g, class)).sum()
    }

    /// Relabels classes: new class `i` is old class `order[i]`.
    pub fn permuted(&self, order: &[usize]) -> Result<Self> {
        let mut sorted = order.to_vec();
        sorted.sort_unstable();
        if sorted != (0..self.n_classes).collect::<Vec<_>>() {
            return Err(Error::Dimension(format!(
                "{order:?} is not a permutation of 0..{}",
                self.n_classes
            )));
        }
        let k = self.n_classes;
        let counts = (0..k * k).map(|i| self.get(order[i / k], order[i % k])).collect();
        Ok(ConfusionMatrix { n_classes: k, counts })
    }
}

/// Matrix over [`Label::ALL`] order.
pub fn confusion(golds: &[Label], preds: &[Label]) -> Result<ConfusionMatrix> {
    if golds.len() != preds.len() {
        return Err(Error::Dimension(format!(
            "{} gold labels but {} predictions",
            golds.len(),
            preds.len()
        )));
    }
    if golds.is_empty() {
        return Err(Error::EmptySplit);
    }
    let k = Label::COUNT;
    let mut counts = vec![0; k * k];
    for (g, p) in golds.iter().zip(preds) {
        counts[g.index() * k + p.index()] += 1;
    }
    Ok(ConfusionMatrix { n_classes: k, counts })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ClassMetrics {
    pub precision: f64,
    pub recall: f64,
    pub f1: f64,
    pub support: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct EvalReport {
    pub per_class: Vec<ClassMetrics>,
    pub macro_precision: f64,
    pub macro_recall: f64,
    pub macro_f1: f64,
    pub total: usize,
}

impl EvalReport {
    /// Macro precision, recall and F1 rounded half-up to two decimals.
    pub fn rounded_macro(&self) -> [f64; 3] {
        [self.macro_precision, self.macro_recall, self.macro_f1].map(|v| round_half_up(v, 2))
    }
}

fn ratio(num: usize, den: usize) -> f64 {
    if den == 0 {
        0.0
    } else {
        num as f64 / den as f64
    }
}

pub fn metrics(cm: &ConfusionMatrix) -> EvalReport {
    let per_class: Vec<ClassMetrics> = (0..cm.n_classes)
        .map(|c| {
            let tp = cm.get(c, c);
            let precision = ratio(tp, cm.column_sum(c));
            let recall = ratio(tp, cm.row_sum(c));
            let f1 = if precision + recall > 0.0 {
                2.0 * precision * recall / (precision + recall)
            } else {
                0.0
            };
            ClassMetrics {
                precision,
                recall,
                f1,
                support: cm.row_sum(c),
            }
        })
        .collect();
    let k = per_class.len().max(1) as f64;
    let mean = |f: fn(&ClassMetrics) -> f64| per_class.iter().map(f).sum::<f64>() / k;
    EvalReport {
        macro_precision: mean(|m| m.precision),
        macro_recall: mean(|m| m.recall),
        macro_f1: mean(|m| m.f1),
        total: cm.total(),
        per_class,
    }
}

/// Half-up rounding to `decimals` places, e.g. 0.125 becomes 0.13.
pub fn round_half_up(value: f64, decimals: u32) -> f64 {
    let scale = 10f64.powi(decimals as i32);
    // the epsilon absorbs representation error on exact decimal halves
    (value * scale + 0.5 + 1e-9).floor() / scale
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReportStyle {
    Text,
    Tsv,
}

fn class_name(index: usize, n_classes: usize) -> String {
    match Label::from_index(index) {
        Some(label) if n_classes == Label::COUNT => label.as_str().to_string(),
        _ => format!("class{index}"),
    }
}

pub const TSV_REPORT_HEADER: &str = "class\tprecision\trecall\tf1\tsupport";

/// Per-class rows, the two-decimal macro row and a full-precision macro row.
pub fn render_report(report: &EvalReport, style: ReportStyle) -> String {
    let k = report.per_class.len();
    let [p, r, f] = report.rounded_macro();
    let mut out = String::new();
    match style {
        ReportStyle::Tsv => {
            out.push_str(TSV_REPORT_HEADER);
            out.push('\n');
            for (i, m) in report.per_class.iter().enumerate() {
                let _ = writeln!(
                    out,
                    "{}\t{:.2}\t{:.2}\t{:.2}\t{}",
                    class_name(i, k),
                    round_half_up(m.precision, 2),
                    round_half_up(m.recall, 2),
                    round_half_up(m.f1, 2),
                    m.support
                );
            }
            let _ = writeln!(out, "macro\t{p:.2}\t{r:.2}\t{f:.2}\t{}", report.total);
            let _ = writeln!(
                out,
                "macro_exact\t{}\t{}\t{}\t{}",
                report.macro_precision, report.macro_recall, report.macro_f1, report.total
            );
        }
        ReportStyle::Text => {
            let _ = writeln!(
                out,
                "{:<24} {:>9} {:>7} {:>6} {:>8}",
                "class", "precision", "recall", "f1", "support"
            );
            for (i, m) in report.per_class.iter().enumerate() {
                let _ = writeln!(
                    out,
                    "{:<24} {:>9.2} {:>7.2} {:>6.2} {:>8}",
                    class_name(i, k),
                    round_half_up(m.precision, 2),
                    round_half_up(m.recall, 2),
                    round_half_up(m.f1, 2),
                    m.support
                );
            }
            let _ = writeln!(
                out,
                "{:<24} {p:>9.2} {r:>7.2} {f:>6.2} {:>8}",
                "macro avg", report.total
            );
            let _ = writeln!(
                out,
                "exact macro: precision={} recall={} f1={}",
                report.macro_precision, report.macro_recall, report.macro_f1
            );
        }
    }
    out
}

/// `id<TAB>predicted_label` rows under a fixed header.
pub fn write_predictions<'a>(rows: impl IntoIterator<Item = (&'a str, Label)>, mut writer: impl Write) -> Result<()> {
    let mut out = String::from("id\tpredicted_label\n");
    for (id, label) in rows {
        let _ = writeln!(out, "{}\t{}", escape(id), label);
    }
    writer.write_all(out.as_bytes())?;
    Ok(())
}

pub fn parse_predictions(content: &str) -> Result<Vec<(String, Label)>> {
    let mut out = Vec::new();
    let mut seen = HashMap::new();
    for (line, row) in numbered_lines(content) {
        if line == 1 && row == "id\tpredicted_label" {
            continue;
        }
        let cells: Vec<&str> = row.split('\t').collect();
        if cells.len() != 2 {
            return Err(Error::ColumnCount {
                line,
                expected: 2,
                found: cells.len(),
            });
        }
        let label = cells[1]
            .parse::<Label>()
            .map_err(|e| Error::UnknownLabel { line, label: e.0 })?;
        let id = unescape(cells[0]).into_owned();
        if seen.insert(id.clone(), line).is_some() {
            return Err(Error::DuplicateId { line, id });
        }
        out.push((id, label));
    }
    Ok(out)
}

pub fn load_predictions(path: impl AsRef<Path>) -> Result<Vec<(String, Label)>> {
    let path = path.as_ref();
    let content = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    parse_predictions(&content)
}
