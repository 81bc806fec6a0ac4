//! Feed-forward neural network: rectifier hidden layers, sigmoid output,
//! binary cross-entropy loss, mini-batch backpropagation with Adam, and
//! early stopping on a seeded validation carve-out.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::dataset::{holdout_split, Dataset, FeatureVector, FEATURE_COUNT};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Activation {
    Relu,
    /// Smooth rectifier substitute used by the gradient-check mode.
    Softplus,
}

impl Default for Activation {
    fn default() -> Activation {
        Activation::Relu
    }
}

impl Activation {
    #[inline]
    fn apply(self, z: f64) -> f64 {
        match self {
            Activation::Relu => z.max(0.0),
            Activation::Softplus => {
                if z > 30.0 {
                    z
                } else {
                    z.exp().ln_1p()
                }
            }
        }
    }

    #[inline]
    fn derivative(self, z: f64) -> f64 {
        match self {
            Activation::Relu => {
                if z > 0.0 {
                    1.0
                } else {
                    0.0
                }
            }
            Activation::Softplus => sigmoid(z),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct MlpParams {
    /// Hidden layer widths, input → output order.
    pub hidden_layers: Vec<usize>,
    pub epochs: usize,
    pub batch_size: usize,
    pub learning_rate: f64,
    pub beta1: f64,
    pub beta2: f64,
    pub epsilon: f64,
    /// Epochs without validation improvement before stopping.
    pub patience: usize,
    /// Fraction of the training fold carved out for validation.
    pub validation_fraction: f64,
    pub activation: Activation,
}

impl Default for MlpParams {
    fn default() -> MlpParams {
        MlpParams {
            hidden_layers: vec![30],
            epochs: 500,
            batch_size: 32,
            learning_rate: 1e-3,
            beta1: 0.9,
            beta2: 0.999,
            epsilon: 1e-8,
            patience: 25,
            validation_fraction: 0.1,
            activation: Activation::Relu,
        }
    }
}

impl MlpParams {
    pub fn validate(&self) -> Result<()> {
        if self.hidden_layers.is_empty() {
            return Err(Error::InvalidSpec("at least one hidden layer is required".into()));
        }
        if self.hidden_layers.iter().any(|&w| w == 0) {
            return Err(Error::InvalidSpec("hidden layer widths must be at least 1".into()));
        }
        if self.epochs == 0 || self.batch_size == 0 {
            return Err(Error::InvalidSpec("epochs and batch_size must be positive".into()));
        }
        if !(self.learning_rate > 0.0) {
            return Err(Error::InvalidSpec("learning_rate must be positive".into()));
        }
        if !(self.validation_fraction >= 0.0 && self.validation_fraction < 1.0) {
            return Err(Error::InvalidSpec("validation_fraction must lie in [0, 1)".into()));
        }
        Ok(())
    }
}

/// Layer-wise dense parameters. `weights[l]` is row-major
/// `layer_sizes[l+1] × layer_sizes[l]`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct MlpModel {
    pub layer_sizes: Vec<usize>,
    pub weights: Vec<Vec<f64>>,
    pub biases: Vec<Vec<f64>>,
    pub activation: Activation,
}

impl MlpModel {
    /// Output logit; the predicted probability is its sigmoid.
    pub fn decision(&self, x: &FeatureVector) -> f64 {
        let input = x.as_f64();
        self.forward_logit(&input)
    }

    pub fn forward_logit(&self, input: &[f64]) -> f64 {
        let mut activations: Vec<f64> = input.to_vec();
        let last = self.weights.len() - 1;
        for (l, (w, b)) in self.weights.iter().zip(&self.biases).enumerate() {
            let out_dim = self.layer_sizes[l + 1];
            let in_dim = self.layer_sizes[l];
            let mut next = vec![0.0; out_dim];
            for o in 0..out_dim {
                let mut z = b[o];
                let row = &w[o * in_dim..(o + 1) * in_dim];
                for (wv, av) in row.iter().zip(&activations) {
                    z += wv * av;
                }
                next[o] = if l == last { z } else { self.activation.apply(z) };
            }
            activations = next;
        }
        activations[0]
    }
}

#[inline]
fn sigmoid(z: f64) -> f64 {
    if z >= 0.0 {
        1.0 / (1.0 + (-z).exp())
    } else {
        let e = z.exp();
        e / (1.0 + e)
    }
}

/// ln(1 + e^(−m)) without overflow.
#[inline]
fn logistic_loss_margin(margin: f64) -> f64 {
    if margin > 0.0 {
        (-margin).exp().ln_1p()
    } else {
        -margin + margin.exp().ln_1p()
    }
}

/// Network parameters plus scratch space for one backprop pass.
pub(crate) struct Network {
    pub sizes: Vec<usize>,
    pub weights: Vec<Vec<f64>>,
    pub biases: Vec<Vec<f64>>,
    pub activation: Activation,
}

impl Network {
    fn init(sizes: Vec<usize>, activation: Activation, rng: &mut ChaCha8Rng) -> Network {
        let mut weights = Vec::new();
        let mut biases = Vec::new();
        for l in 0..sizes.len() - 1 {
            let fan_in = sizes[l];
            let limit = (6.0 / fan_in as f64).sqrt();
            let w: Vec<f64> = (0..sizes[l + 1] * fan_in)
                .map(|_| rng.gen_range(-limit..limit))
                .collect();
            weights.push(w);
            biases.push(vec![0.0; sizes[l + 1]]);
        }
        Network {
            sizes,
            weights,
            biases,
            activation,
        }
    }

    /// Mean loss over (inputs, ±1 labels).
    pub fn mean_loss(&self, inputs: &[Vec<f64>], labels: &[f64]) -> f64 {
        let mut loss = 0.0;
        for (x, &y) in inputs.iter().zip(labels) {
            let z = self.forward_logit(x);
            loss += logistic_loss_margin(y * z);
        }
        loss / inputs.len() as f64
    }

    pub fn forward_logit(&self, input: &[f64]) -> f64 {
        let layers = self.weights.len();
        let mut activations: Vec<f64> = input.to_vec();
        for l in 0..layers {
            let in_dim = self.sizes[l];
            let out_dim = self.sizes[l + 1];
            let mut next = vec![0.0; out_dim];
            for o in 0..out_dim {
                let mut z = self.biases[l][o];
                let row = &self.weights[l][o * in_dim..(o + 1) * in_dim];
                for (wv, av) in row.iter().zip(&activations) {
                    z += wv * av;
                }
                next[o] = if l == layers - 1 {
                    z
                } else {
                    self.activation.apply(z)
                };
            }
            activations = next;
        }
        activations[0]
    }

    /// Backpropagation over a batch: returns mean gradients shaped like
    /// (weights, biases).
    pub fn gradients(
        &self,
        inputs: &[Vec<f64>],
        labels: &[f64],
    ) -> (Vec<Vec<f64>>, Vec<Vec<f64>>) {
        let layers = self.weights.len();
        let mut grad_w: Vec<Vec<f64>> = self.weights.iter().map(|w| vec![0.0; w.len()]).collect();
        let mut grad_b: Vec<Vec<f64>> = self.biases.iter().map(|b| vec![0.0; b.len()]).collect();

        for (x, &y) in inputs.iter().zip(labels) {
            // Forward pass keeping pre-activations and activations.
            let mut acts: Vec<Vec<f64>> = vec![x.clone()];
            let mut zs: Vec<Vec<f64>> = Vec::with_capacity(layers);
            for l in 0..layers {
                let in_dim = self.sizes[l];
                let out_dim = self.sizes[l + 1];
                let mut z = vec![0.0; out_dim];
                for o in 0..out_dim {
                    let mut acc = self.biases[l][o];
                    let row = &self.weights[l][o * in_dim..(o + 1) * in_dim];
                    for (wv, av) in row.iter().zip(&acts[l]) {
                        acc += wv * av;
                    }
                    z[o] = acc;
                }
                let a = if l == layers - 1 {
                    z.clone()
                } else {
                    z.iter().map(|&v| self.activation.apply(v)).collect()
                };
                zs.push(z);
                acts.push(a);
            }

            // d loss / d output-logit for the ±1 logistic loss.
            let z_out = zs[layers - 1][0];
            let mut delta = vec![-y * sigmoid(-y * z_out)];

            for l in (0..layers).rev() {
                let in_dim = self.sizes[l];
                for (o, &d) in delta.iter().enumerate() {
                    grad_b[l][o] += d;
                    let row = &mut grad_w[l][o * in_dim..(o + 1) * in_dim];
                    for (g, av) in row.iter_mut().zip(&acts[l]) {
                        *g += d * av;
                    }
                }
                if l > 0 {
                    let mut prev = vec![0.0; in_dim];
                    for (o, &d) in delta.iter().enumerate() {
                        let row = &self.weights[l][o * in_dim..(o + 1) * in_dim];
                        for (p, wv) in prev.iter_mut().zip(row) {
                            *p += d * wv;
                        }
                    }
                    for (p, &z) in prev.iter_mut().zip(&zs[l - 1]) {
                        *p *= self.activation.derivative(z);
                    }
                    delta = prev;
                }
            }
        }

        let inv = 1.0 / inputs.len() as f64;
        for g in grad_w.iter_mut().flat_map(|v| v.iter_mut()) {
            *g *= inv;
        }
        for g in grad_b.iter_mut().flat_map(|v| v.iter_mut()) {
            *g *= inv;
        }
        (grad_w, grad_b)
    }
}

struct AdamState {
    m_w: Vec<Vec<f64>>,
    v_w: Vec<Vec<f64>>,
    m_b: Vec<Vec<f64>>,
    v_b: Vec<Vec<f64>>,
    step: u64,
}

impl AdamState {
    fn new(net: &Network) -> AdamState {
        AdamState {
            m_w: net.weights.iter().map(|w| vec![0.0; w.len()]).collect(),
            v_w: net.weights.iter().map(|w| vec![0.0; w.len()]).collect(),
            m_b: net.biases.iter().map(|b| vec![0.0; b.len()]).collect(),
            v_b: net.biases.iter().map(|b| vec![0.0; b.len()]).collect(),
            step: 0,
        }
    }

    fn update(&mut self, net: &mut Network, grad_w: &[Vec<f64>], grad_b: &[Vec<f64>], p: &MlpParams) {
        self.step += 1;
        let bc1 = 1.0 - p.beta1.powi(self.step as i32);
        let bc2 = 1.0 - p.beta2.powi(self.step as i32);
        for l in 0..net.weights.len() {
            adam_apply(
                &mut net.weights[l],
                &grad_w[l],
                &mut self.m_w[l],
                &mut self.v_w[l],
                p,
                bc1,
                bc2,
            );
            adam_apply(
                &mut net.biases[l],
                &grad_b[l],
                &mut self.m_b[l],
                &mut self.v_b[l],
                p,
                bc1,
                bc2,
            );
        }
    }
}

fn adam_apply(
    params: &mut [f64],
    grads: &[f64],
    m: &mut [f64],
    v: &mut [f64],
    p: &MlpParams,
    bc1: f64,
    bc2: f64,
) {
    for i in 0..params.len() {
        m[i] = p.beta1 * m[i] + (1.0 - p.beta1) * grads[i];
        v[i] = p.beta2 * v[i] + (1.0 - p.beta2) * grads[i] * grads[i];
        let m_hat = m[i] / bc1;
        let v_hat = v[i] / bc2;
        params[i] -= p.learning_rate * m_hat / (v_hat.sqrt() + p.epsilon);
    }
}

pub struct MlpOutcome {
    pub model: MlpModel,
    pub converged: bool,
    pub warnings: Vec<String>,
    /// Epochs actually run.
    pub epochs_run: usize,
}

/// Trains the network. A seeded stratified carve-out of the training fold
/// serves as the validation set; training halts at the epoch cap or when
/// validation loss fails to improve for `patience` epochs, and the
/// best-validation parameters are retained. Datasets too small to carve
/// out a validation set train for the full epoch budget.
pub fn train_mlp(train: &Dataset, params: &MlpParams, seed: u64) -> Result<MlpOutcome> {
    params.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);

    let carve = if params.validation_fraction > 0.0 {
        holdout_split(train, params.validation_fraction, seed).ok()
    } else {
        None
    };
    let (fit_set, val_set) = match &carve {
        Some((fit, val)) => (fit.clone(), Some(val)),
        None => (train.clone(), None),
    };

    let inputs: Vec<Vec<f64>> = fit_set
        .samples()
        .iter()
        .map(|s| s.features.as_f64().to_vec())
        .collect();
    let labels: Vec<f64> = fit_set.samples().iter().map(|s| s.label.as_f64()).collect();
    let val_inputs: Vec<Vec<f64>> = val_set
        .map(|v| {
            v.samples()
                .iter()
                .map(|s| s.features.as_f64().to_vec())
                .collect()
        })
        .unwrap_or_default();
    let val_labels: Vec<f64> = val_set
        .map(|v| v.samples().iter().map(|s| s.label.as_f64()).collect())
        .unwrap_or_default();

    let mut sizes = vec![FEATURE_COUNT];
    sizes.extend(&params.hidden_layers);
    sizes.push(1);
    let mut net = Network::init(sizes, params.activation, &mut rng);
    let mut adam = AdamState::new(&net);

    let mut best_val = f64::INFINITY;
    let mut best_params: Option<(Vec<Vec<f64>>, Vec<Vec<f64>>)> = None;
    let mut stale_epochs = 0usize;
    let mut epochs_run = 0usize;
    let mut indices: Vec<usize> = (0..inputs.len()).collect();
    let mut batch_x: Vec<Vec<f64>> = Vec::with_capacity(params.batch_size);
    let mut batch_y: Vec<f64> = Vec::with_capacity(params.batch_size);

    for _epoch in 0..params.epochs {
        epochs_run += 1;
        indices.shuffle(&mut rng);
        for chunk in indices.chunks(params.batch_size) {
            batch_x.clear();
            batch_y.clear();
            for &i in chunk {
                batch_x.push(inputs[i].clone());
                batch_y.push(labels[i]);
            }
            let (gw, gb) = net.gradients(&batch_x, &batch_y);
            adam.update(&mut net, &gw, &gb, params);
        }

        let train_loss = net.mean_loss(&inputs, &labels);
        if !train_loss.is_finite() {
            return Err(Error::Diverged(format!(
                "mlp training loss became non-finite at epoch {epochs_run}"
            )));
        }

        if !val_inputs.is_empty() {
            let val_loss = net.mean_loss(&val_inputs, &val_labels);
            if !val_loss.is_finite() {
                return Err(Error::Diverged(format!(
                    "mlp validation loss became non-finite at epoch {epochs_run}"
                )));
            }
            if val_loss < best_val - 1e-9 {
                best_val = val_loss;
                best_params = Some((net.weights.clone(), net.biases.clone()));
                stale_epochs = 0;
            } else {
                stale_epochs += 1;
                if stale_epochs >= params.patience {
                    break;
                }
            }
        }
    }

    if let Some((w, b)) = best_params {
        net.weights = w;
        net.biases = b;
    }

    Ok(MlpOutcome {
        model: MlpModel {
            layer_sizes: net.sizes,
            weights: net.weights,
            biases: net.biases,
            activation: params.activation,
        },
        converged: true,
        warnings: vec![],
        epochs_run,
    })
}
