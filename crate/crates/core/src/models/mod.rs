//! Native baseline classifiers.

mod logistic;
mod majority;

pub use logistic::{lr_fit, lr_fit_traced, lr_loss_grad, lr_predict, softmax, Gradient, LogisticModel, TrainConfig};
pub use majority::{majority_fit, majority_predict, MajorityModel};
