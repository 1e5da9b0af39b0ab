//! Multinomial logistic regression trained by full-batch gradient descent
//! from zero weights.
//!
//! Saved models are plain text:
//!
//! ```text
//! labels\tHomophobic\tNon-anti-LGBT+ content\tTransphobic
//! dims\t3\t<D>
//! bias\t<b0> <b1> <b2>
//! w\t<D values>            (one line per class, label order)
//! ```

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use crate::corpus::Label;
use crate::error::{Error, Result};
use crate::features::FeatureMatrix;
use crate::tsv::numbered_lines;

const K: usize = Label::COUNT;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TrainConfig {
    pub learning_rate: f64,
    pub epochs: usize,
    pub l2: f64,
    /// Carried for run bookkeeping; training itself draws no random numbers.
    pub seed: u64,
}

impl Default for TrainConfig {
    fn default() -> Self {
        TrainConfig {
            learning_rate: 0.1,
            epochs: 200,
            l2: 1e-4,
            seed: 0,
        }
    }
}

impl TrainConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.learning_rate.is_finite() && self.learning_rate > 0.0) {
            return Err(Error::Config(format!(
                "learning_rate must be positive, got {}",
                self.learning_rate
            )));
        }
        if !(self.l2.is_finite() && self.l2 >= 0.0) {
            return Err(Error::Config(format!("l2 must be non-negative, got {}", self.l2)));
        }
        Ok(())
    }
}

/// Weights are `K x dim`, row-major, rows in [`Label::ALL`] order.
#[derive(Debug, Clone, PartialEq)]
pub struct LogisticModel {
    dim: usize,
    weights: Vec<f64>,
    bias: Vec<f64>,
}

/// Same shape as the model parameters.
#[derive(Debug, Clone, PartialEq)]
pub struct Gradient {
    pub weights: Vec<f64>,
    pub bias: Vec<f64>,
}

impl LogisticModel {
    pub fn zeros(dim: usize) -> Self {
        LogisticModel {
            dim,
            weights: vec![0.0; K * dim],
            bias: vec![0.0; K],
        }
    }

    pub fn from_parts(dim: usize, weights: Vec<f64>, bias: Vec<f64>) -> Result<Self> {
        if weights.len() != K * dim || bias.len() != K {
            return Err(Error::Dimension(format!(
                "expected {} weights and {K} biases, got {} and {}",
                K * dim,
                weights.len(),
                bias.len()
            )));
        }
        if weights.iter().chain(&bias).any(|v| !v.is_finite()) {
            return Err(Error::Dimension("non-finite model parameter".into()));
        }
        Ok(LogisticModel { dim, weights, bias })
    }

    pub fn labels(&self) -> &'static [Label] {
        &Label::ALL
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn bias(&self) -> &[f64] {
        &self.bias
    }

    /// Class scores `W x + b`.
    pub fn scores(&self, x: &[f64]) -> [f64; K] {
        let mut out = [0.0; K];
        for (k, score) in out.iter_mut().enumerate() {
            let row = &self.weights[k * self.dim..(k + 1) * self.dim];
            *score = self.bias[k] + row.iter().zip(x).map(|(w, v)| w * v).sum::<f64>();
        }
        out
    }

    pub fn probabilities(&self, x: &[f64]) -> Vec<f64> {
        softmax(&self.scores(x))
    }

    fn check_dim(&self, x: &FeatureMatrix) -> Result<()> {
        if x.dim() != self.dim {
            return Err(Error::Dimension(format!(
                "model dim {} but features dim {}",
                self.dim,
                x.dim()
            )));
        }
        Ok(())
    }

    fn step(&mut self, grad: &Gradient, learning_rate: f64) {
        for (w, g) in self.weights.iter_mut().zip(&grad.weights) {
            *w -= learning_rate * g;
        }
        for (b, g) in self.bias.iter_mut().zip(&grad.bias) {
            *b -= learning_rate * g;
        }
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        out.push_str("labels");
        for label in Label::ALL {
            out.push('\t');
            out.push_str(label.as_str());
        }
        let _ = write!(out, "\ndims\t{K}\t{}\nbias\t", self.dim);
        push_values(&mut out, &self.bias);
        for k in 0..K {
            out.push_str("\nw\t");
            push_values(&mut out, &self.weights[k * self.dim..(k + 1) * self.dim]);
        }
        out.push('\n');
        out
    }

    pub fn from_text(content: &str) -> Result<Self> {
        let mut lines = numbered_lines(content);
        let mut next = |what: &str| {
            lines
                .next()
                .ok_or_else(|| Error::parse(0, format!("model file ends before {what}")))
        };

        let (line, labels) = next("labels")?;
        let expected: Vec<&str> = Label::ALL.iter().map(|l| l.as_str()).collect();
        let found: Vec<&str> = labels.split('\t').collect();
        if found.first() != Some(&"labels") || found[1..] != expected[..] {
            return Err(Error::parse(line, "label order must be the canonical three labels"));
        }

        let (line, dims) = next("dims")?;
        let dims: Vec<&str> = dims.split('\t').collect();
        let dim = match dims.as_slice() {
            ["dims", k, d] if *k == K.to_string() => d.parse::<usize>().map_err(|_| Error::parse(line, "bad dim"))?,
            _ => return Err(Error::parse(line, format!("expected dims\\t{K}\\t<D>"))),
        };

        let (line, bias) = next("bias")?;
        let bias = parse_values(line, bias, "bias", K)?;
        let mut weights = Vec::with_capacity(K * dim);
        for _ in 0..K {
            let (line, row) = next("weights")?;
            weights.extend(parse_values(line, row, "w", dim)?);
        }
        LogisticModel::from_parts(dim, weights, bias)
    }

    pub fn save(&self, path: impl AsRef<Path>) -> Result<()> {
        let path = path.as_ref();
        fs::write(path, self.to_text()).map_err(|e| Error::io(path, e))
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let content = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::from_text(&content)
    }
}

// nine significant digits
fn push_values(out: &mut String, values: &[f64]) {
    for (i, v) in values.iter().enumerate() {
        if i > 0 {
            out.push(' ');
        }
        let _ = write!(out, "{v:.8e}");
    }
}

fn parse_values(line: usize, row: &str, tag: &str, expected: usize) -> Result<Vec<f64>> {
    let rest = row
        .strip_prefix(tag)
        .and_then(|r| r.strip_prefix('\t'))
        .ok_or_else(|| Error::parse(line, format!("expected {tag} row")))?;
    let values: Vec<f64> = rest
        .split_whitespace()
        .map(|t| t.parse().map_err(|_| Error::parse(line, format!("bad float {t:?}"))))
        .collect::<Result<_>>()?;
    if values.len() != expected {
        return Err(Error::parse(
            line,
            format!("expected {expected} values, found {}", values.len()),
        ));
    }
    Ok(values)
}

/// Numerically stable softmax (max-subtracted).
pub fn softmax(scores: &[f64]) -> Vec<f64> {
    let max = scores.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let exps: Vec<f64> = scores.iter().map(|s| (s - max).exp()).collect();
    let sum: f64 = exps.iter().sum();
    exps.into_iter().map(|e| e / sum).collect()
}

/// Mean cross-entropy plus `(l2 / 2) * ||W||^2` (bias unpenalized), and its
/// exact gradient.
pub fn lr_loss_grad(model: &LogisticModel, x: &FeatureMatrix, y: &[Label], l2: f64) -> Result<(f64, Gradient)> {
    model.check_dim(x)?;
    if x.rows() != y.len() {
        return Err(Error::Dimension(format!(
            "{} feature rows but {} labels",
            x.rows(),
            y.len()
        )));
    }
    let dim = model.dim;
    let mut grad = Gradient {
        weights: vec![0.0; K * dim],
        bias: vec![0.0; K],
    };
    let mut data_loss = 0.0;
    let n = x.rows();

    for (i, &label) in y.iter().enumerate() {
        let row = x.row(i);
        let scores = model.scores(row);
        let max = scores.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        let log_sum = max + scores.iter().map(|s| (s - max).exp()).sum::<f64>().ln();
        data_loss += log_sum - scores[label.index()];

        for (k, &score) in scores.iter().enumerate() {
            let residual = (score - log_sum).exp() - if k == label.index() { 1.0 } else { 0.0 };
            grad.bias[k] += residual;
            let g = &mut grad.weights[k * dim..(k + 1) * dim];
            for (gj, xj) in g.iter_mut().zip(row) {
                *gj += residual * xj;
            }
        }
    }

    let scale = if n > 0 { 1.0 / n as f64 } else { 0.0 };
    grad.weights.iter_mut().for_each(|g| *g *= scale);
    grad.bias.iter_mut().for_each(|g| *g *= scale);
    for (g, w) in grad.weights.iter_mut().zip(&model.weights) {
        *g += l2 * w;
    }
    let penalty = 0.5 * l2 * model.weights.iter().map(|w| w * w).sum::<f64>();
    Ok((data_loss * scale + penalty, grad))
}

pub fn lr_fit(x: &FeatureMatrix, y: &[Label], config: &TrainConfig) -> Result<LogisticModel> {
    lr_fit_traced(x, y, config).map(|(model, _)| model)
}

/// Also returns the loss at the starting point and after every epoch
/// (`epochs + 1` values).
pub fn lr_fit_traced(x: &FeatureMatrix, y: &[Label], config: &TrainConfig) -> Result<(LogisticModel, Vec<f64>)> {
    config.validate()?;
    if x.rows() == 0 {
        return Err(Error::EmptySplit);
    }
    let mut model = LogisticModel::zeros(x.dim());
    let mut trace = Vec::with_capacity(config.epochs + 1);
    for epoch in 0..config.epochs {
        let (loss, grad) = lr_loss_grad(&model, x, y, config.l2)?;
        if !loss.is_finite() {
            return Err(Error::Diverged(epoch));
        }
        trace.push(loss);
        model.step(&grad, config.learning_rate);
    }
    let (loss, _) = lr_loss_grad(&model, x, y, config.l2)?;
    if !loss.is_finite() || model.weights.iter().chain(&model.bias).any(|v| !v.is_finite()) {
        return Err(Error::Diverged(config.epochs));
    }
    trace.push(loss);
    Ok((model, trace))
}

/// Argmax of the class scores; ties go to the earlier label.
pub fn lr_predict(model: &LogisticModel, x: &FeatureMatrix) -> Result<Vec<Label>> {
    model.check_dim(x)?;
    Ok((0..x.rows())
        .map(|i| {
            let scores = model.scores(x.row(i));
            let mut best = 0;
            for k in 1..K {
                if scores[k] > scores[best] {
                    best = k;
                }
            }
            Label::ALL[best]
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::Rng;

    fn matrix(rows: &[&[f64]]) -> FeatureMatrix {
        let dim = rows.first().map_or(0, |r| r.len());
        FeatureMatrix::new(
            (0..rows.len()).map(|i| format!("x{i}")).collect(),
            dim,
            rows.iter().flat_map(|r| r.iter().copied()).collect(),
        )
        .unwrap()
    }

    #[test]
    fn zero_model_loss_is_ln3() {
        let x = matrix(&[&[1.0, 2.0], &[-3.0, 0.5]]);
        let (loss, _) = lr_loss_grad(
            &LogisticModel::zeros(2),
            &x,
            &[Label::Homophobic, Label::Transphobic],
            0.3,
        )
        .unwrap();
        assert!((loss - 3f64.ln()).abs() < 1e-15);
    }

    #[test]
    fn doubling_l2_doubles_penalty() {
        let model = LogisticModel::from_parts(1, vec![1.0, -2.0, 0.5], vec![0.0; 3]).unwrap();
        let x = matrix(&[&[1.0]]);
        let y = [Label::NonAntiLgbt];
        let base = lr_loss_grad(&model, &x, &y, 0.0).unwrap().0;
        let one = lr_loss_grad(&model, &x, &y, 0.2).unwrap().0 - base;
        let two = lr_loss_grad(&model, &x, &y, 0.4).unwrap().0 - base;
        assert!((two - 2.0 * one).abs() < 1e-15);
        assert!((one - 0.1 * 5.25).abs() < 1e-15);
    }

    #[test]
    fn dimension_mismatch() {
        let x = matrix(&[&[1.0, 2.0]]);
        assert!(lr_loss_grad(&LogisticModel::zeros(3), &x, &[Label::Homophobic], 0.0).is_err());
        assert!(lr_loss_grad(&LogisticModel::zeros(2), &x, &[], 0.0).is_err());
        assert!(lr_predict(&LogisticModel::zeros(1), &x).is_err());
    }

    #[test]
    fn zero_model_predicts_first_label() {
        let x = matrix(&[&[1.0, 2.0], &[0.0, -1.0]]);
        assert_eq!(
            lr_predict(&LogisticModel::zeros(2), &x).unwrap(),
            vec![Label::Homophobic; 2]
        );
    }

    #[test]
    fn zero_epochs_gives_zero_model() {
        let x = matrix(&[&[1.0], &[2.0]]);
        let config = TrainConfig {
            epochs: 0,
            ..Default::default()
        };
        let (model, trace) = lr_fit_traced(&x, &[Label::Transphobic, Label::Transphobic], &config).unwrap();
        assert_eq!(model, LogisticModel::zeros(1));
        assert_eq!(trace.len(), 1);
    }

    #[test]
    fn hand_computed_argmax() {
        // scores for x = (1, 2): H = 1 + 0 = 1, N = -1 + 4 = 3, T = 2 - 2 + 0.5 = 0.5
        let model = LogisticModel::from_parts(2, vec![1.0, 0.0, -1.0, 2.0, 2.0, -1.0], vec![0.0, 0.0, 0.5]).unwrap();
        let x = matrix(&[&[1.0, 2.0], &[3.0, 0.0], &[0.0, 0.0]]);
        // row 2: H = 3, N = -3, T = 6.5; row 3: T wins by bias
        assert_eq!(
            lr_predict(&model, &x).unwrap(),
            vec![Label::NonAntiLgbt, Label::Transphobic, Label::Transphobic]
        );
    }

    #[test]
    fn divergence_is_reported() {
        let x = matrix(&[&[1e200], &[-1e200]]);
        let config = TrainConfig {
            learning_rate: 1e10,
            epochs: 5,
            l2: 0.0,
            seed: 0,
        };
        assert!(matches!(
            lr_fit(&x, &[Label::Homophobic, Label::Transphobic], &config),
            Err(Error::Diverged(_))
        ));
    }

    #[test]
    fn invalid_config() {
        let x = matrix(&[&[1.0]]);
        let bad = TrainConfig {
            learning_rate: 0.0,
            ..Default::default()
        };
        assert!(matches!(lr_fit(&x, &[Label::Homophobic], &bad), Err(Error::Config(_))));
    }

    #[test]
    fn text_round_trip() {
        let mut rng = crate::rng::seeded(4);
        let weights: Vec<f64> = (0..12).map(|_| rng.random_range(-5.0..5.0)).collect();
        let model = LogisticModel::from_parts(4, weights, vec![0.1, -0.2, 1e-7]).unwrap();
        let back = LogisticModel::from_text(&model.to_text()).unwrap();
        for (a, b) in model
            .weights()
            .iter()
            .chain(model.bias())
            .zip(back.weights().iter().chain(back.bias()))
        {
            assert!((a - b).abs() <= 1e-8 * a.abs().max(1e-300));
        }
        assert!(LogisticModel::from_text("labels\tA\tB\tC\n").is_err());
    }

    proptest! {
        #[test]
        fn softmax_is_a_distribution(scores in proptest::collection::vec(-300.0f64..300.0, 3)) {
            let p = softmax(&scores);
            prop_assert!(p.iter().all(|&v| v > 0.0));
            prop_assert!((p.iter().sum::<f64>() - 1.0).abs() <= 1e-12);
        }

        #[test]
        fn bias_shift_keeps_predictions(shift in -50.0f64..50.0, seed: u64) {
            let mut rng = crate::rng::seeded(seed);
            let weights: Vec<f64> = (0..6).map(|_| rng.random_range(-2.0..2.0)).collect();
            let bias: Vec<f64> = (0..3).map(|_| rng.random_range(-2.0..2.0)).collect();
            let shifted: Vec<f64> = bias.iter().map(|b| b + shift).collect();
            let rows: Vec<Vec<f64>> = (0..8).map(|_| vec![rng.random_range(-3.0..3.0), rng.random_range(-3.0..3.0)]).collect();
            let refs: Vec<&[f64]> = rows.iter().map(Vec::as_slice).collect();
            let x = matrix(&refs);
            let a = lr_predict(&LogisticModel::from_parts(2, weights.clone(), bias).unwrap(), &x).unwrap();
            let b = lr_predict(&LogisticModel::from_parts(2, weights, shifted).unwrap(), &x).unwrap();
            prop_assert_eq!(a, b);
        }
    }
}
