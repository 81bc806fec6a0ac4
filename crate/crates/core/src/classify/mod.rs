//! Twelve from-scratch classifiers behind one fit/predict interface.
//!
//! Families: logistic regression, k-nearest-neighbors, SVM (four kernels,
//! trained by SMO), CART decision tree, random forest, AdaBoost,
//! gradient boosting, a second-order regularized booster, and a
//! feed-forward neural network trained with Adam.
//!
//! Every aggregate score of exactly zero (votes, margins, a sigmoid output
//! of exactly 0.5) predicts +1 (legitimate); the tie rule lives in
//! [`Label::from_score`].

pub mod adaboost;
pub mod forest;
pub mod gboost;
pub mod kernel;
pub mod knn;
pub mod linear;
pub mod mlp;
pub mod svm;
pub mod tree;
pub mod xgboost;

pub use kernel::{kernel_eval, KernelKind, KernelSpec};

use serde::{Deserialize, Serialize};

use crate::dataset::{Dataset, FeatureVector, Label, FEATURE_COUNT};
use crate::error::{Error, Result};

/// Default RNG seed used across the toolkit when none is given.
pub const DEFAULT_SEED: u64 = 42;

/// Model-file format version; bumped on any serialized layout change.
pub const MODEL_FORMAT_VERSION: u32 = 1;

/// Classifier family identifier.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    Logistic,
    Knn,
    Svm,
    Tree,
    Forest,
    Adaboost,
    Gboost,
    XgboostLike,
    Mlp,
}

impl Family {
    pub fn name(self) -> &'static str {
        match self {
            Family::Logistic => "logistic",
            Family::Knn => "knn",
            Family::Svm => "svm",
            Family::Tree => "tree",
            Family::Forest => "forest",
            Family::Adaboost => "adaboost",
            Family::Gboost => "gboost",
            Family::XgboostLike => "xgboost_like",
            Family::Mlp => "mlp",
        }
    }
}

/// Family-specific hyperparameters, each with documented defaults.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Hyperparams {
    Logistic(linear::LogisticParams),
    Knn(knn::KnnParams),
    Svm(svm::SvmParams),
    Tree(tree::TreeParams),
    Forest(forest::ForestParams),
    Adaboost(adaboost::AdaBoostParams),
    Gboost(gboost::GBoostParams),
    XgboostLike(xgboost::XgbParams),
    Mlp(mlp::MlpParams),
}

impl Hyperparams {
    pub fn family(&self) -> Family {
        match self {
            Hyperparams::Logistic(_) => Family::Logistic,
            Hyperparams::Knn(_) => Family::Knn,
            Hyperparams::Svm(_) => Family::Svm,
            Hyperparams::Tree(_) => Family::Tree,
            Hyperparams::Forest(_) => Family::Forest,
            Hyperparams::Adaboost(_) => Family::Adaboost,
            Hyperparams::Gboost(_) => Family::Gboost,
            Hyperparams::XgboostLike(_) => Family::XgboostLike,
            Hyperparams::Mlp(_) => Family::Mlp,
        }
    }

    pub fn default_for(family: Family) -> Hyperparams {
        match family {
            Family::Logistic => Hyperparams::Logistic(Default::default()),
            Family::Knn => Hyperparams::Knn(Default::default()),
            Family::Svm => Hyperparams::Svm(Default::default()),
            Family::Tree => Hyperparams::Tree(Default::default()),
            Family::Forest => Hyperparams::Forest(Default::default()),
            Family::Adaboost => Hyperparams::Adaboost(Default::default()),
            Family::Gboost => Hyperparams::Gboost(Default::default()),
            Family::XgboostLike => Hyperparams::XgboostLike(Default::default()),
            Family::Mlp => Hyperparams::Mlp(Default::default()),
        }
    }
}

/// A classifier family plus hyperparameters and an RNG seed.
#[derive(Clone, Debug, PartialEq)]
pub struct ClassifierSpec {
    pub hyperparams: Hyperparams,
    pub seed: u64,
}

/// Wire layout for [`ClassifierSpec`]:
/// `{"family": "...", "hyperparams": {...}, "seed": 42}`.
#[derive(Serialize, Deserialize)]
struct SpecWire {
    family: Family,
    #[serde(default)]
    hyperparams: Option<serde_json::Value>,
    #[serde(default)]
    seed: Option<u64>,
}

impl ClassifierSpec {
    pub fn new(hyperparams: Hyperparams, seed: u64) -> ClassifierSpec {
        ClassifierSpec { hyperparams, seed }
    }

    pub fn with_defaults(family: Family, seed: u64) -> ClassifierSpec {
        ClassifierSpec {
            hyperparams: Hyperparams::default_for(family),
            seed,
        }
    }

    pub fn family(&self) -> Family {
        self.hyperparams.family()
    }

    pub fn from_json(json: &str) -> Result<ClassifierSpec> {
        let wire: SpecWire = serde_json::from_str(json)
            .map_err(|e| Error::InvalidSpec(format!("cannot parse spec: {e}")))?;
        let params_value = wire.hyperparams.unwrap_or(serde_json::Value::Null);
        let hyperparams = parse_hyperparams(wire.family, params_value)?;
        let spec = ClassifierSpec {
            hyperparams,
            seed: wire.seed.unwrap_or(DEFAULT_SEED),
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn to_json(&self) -> String {
        let params = match &self.hyperparams {
            Hyperparams::Logistic(p) => serde_json::to_value(p),
            Hyperparams::Knn(p) => serde_json::to_value(p),
            Hyperparams::Svm(p) => serde_json::to_value(p),
            Hyperparams::Tree(p) => serde_json::to_value(p),
            Hyperparams::Forest(p) => serde_json::to_value(p),
            Hyperparams::Adaboost(p) => serde_json::to_value(p),
            Hyperparams::Gboost(p) => serde_json::to_value(p),
            Hyperparams::XgboostLike(p) => serde_json::to_value(p),
            Hyperparams::Mlp(p) => serde_json::to_value(p),
        }
        .expect("hyperparams serialize");
        serde_json::json!({
            "family": self.family(),
            "hyperparams": params,
            "seed": self.seed,
        })
        .to_string()
    }

    /// Validates hyperparameters against their family preconditions.
    pub fn validate(&self) -> Result<()> {
        match &self.hyperparams {
            Hyperparams::Logistic(p) => p.validate(),
            Hyperparams::Knn(p) => p.validate(),
            Hyperparams::Svm(p) => p.validate(),
            Hyperparams::Tree(p) => p.validate(),
            Hyperparams::Forest(p) => p.validate(),
            Hyperparams::Adaboost(p) => p.validate(),
            Hyperparams::Gboost(p) => p.validate(),
            Hyperparams::XgboostLike(p) => p.validate(),
            Hyperparams::Mlp(p) => p.validate(),
        }
    }

    /// Short human-readable label used in report rows, e.g. `svm-rbf`.
    pub fn label(&self) -> String {
        match &self.hyperparams {
            Hyperparams::Svm(p) => format!("svm-{}", p.kernel.kind.name()),
            other => other.family().name().to_string(),
        }
    }
}

fn parse_hyperparams(family: Family, value: serde_json::Value) -> Result<Hyperparams> {
    let value = if value.is_null() {
        serde_json::json!({})
    } else {
        value
    };
    let invalid = |e: serde_json::Error| {
        Error::InvalidSpec(format!("bad hyperparams for {}: {e}", family.name()))
    };
    Ok(match family {
        Family::Logistic => Hyperparams::Logistic(serde_json::from_value(value).map_err(invalid)?),
        Family::Knn => Hyperparams::Knn(serde_json::from_value(value).map_err(invalid)?),
        Family::Svm => Hyperparams::Svm(serde_json::from_value(value).map_err(invalid)?),
        Family::Tree => Hyperparams::Tree(serde_json::from_value(value).map_err(invalid)?),
        Family::Forest => Hyperparams::Forest(serde_json::from_value(value).map_err(invalid)?),
        Family::Adaboost => Hyperparams::Adaboost(serde_json::from_value(value).map_err(invalid)?),
        Family::Gboost => Hyperparams::Gboost(serde_json::from_value(value).map_err(invalid)?),
        Family::XgboostLike => {
            Hyperparams::XgboostLike(serde_json::from_value(value).map_err(invalid)?)
        }
        Family::Mlp => Hyperparams::Mlp(serde_json::from_value(value).map_err(invalid)?),
    })
}

/// A trained model of any family.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum TrainedModel {
    Logistic(linear::LinearModel),
    Knn(knn::KnnModel),
    Svm(svm::KernelMachineModel),
    Tree(tree::ClassificationTree),
    Forest(forest::ForestModel),
    Adaboost(adaboost::AdaBoostModel),
    Gboost(gboost::GBoostModel),
    XgboostLike(xgboost::XgbModel),
    Mlp(mlp::MlpModel),
}

impl TrainedModel {
    pub fn family(&self) -> Family {
        match self {
            TrainedModel::Logistic(_) => Family::Logistic,
            TrainedModel::Knn(_) => Family::Knn,
            TrainedModel::Svm(_) => Family::Svm,
            TrainedModel::Tree(_) => Family::Tree,
            TrainedModel::Forest(_) => Family::Forest,
            TrainedModel::Adaboost(_) => Family::Adaboost,
            TrainedModel::Gboost(_) => Family::Gboost,
            TrainedModel::XgboostLike(_) => Family::XgboostLike,
            TrainedModel::Mlp(_) => Family::Mlp,
        }
    }

    /// Raw decision score, positive toward legitimate. Every family
    /// exposes one; its scale is family-specific.
    pub fn decision_score(&self, x: &FeatureVector) -> f64 {
        match self {
            TrainedModel::Logistic(m) => m.decision(x),
            TrainedModel::Knn(m) => m.decision(x),
            TrainedModel::Svm(m) => m.decision(x),
            TrainedModel::Tree(m) => m.decision(x),
            TrainedModel::Forest(m) => m.decision(x),
            TrainedModel::Adaboost(m) => m.decision(x),
            TrainedModel::Gboost(m) => m.decision(x),
            TrainedModel::XgboostLike(m) => m.decision(x),
            TrainedModel::Mlp(m) => m.decision(x),
        }
    }
}

/// Result of a fit: the model plus convergence diagnostics. Trainers that
/// hit an iteration cap still return their best model, with `converged`
/// cleared and the condition described in `warnings`.
#[derive(Clone, Debug)]
pub struct Fitted {
    pub model: TrainedModel,
    pub converged: bool,
    pub warnings: Vec<String>,
}

/// Trains the family selected by `spec` on `train`.
///
/// Deterministic for a fixed `(spec, train)`. Training sets must be
/// non-empty and, for every family but KNN, contain both classes.
pub fn fit(spec: &ClassifierSpec, train: &Dataset) -> Result<Fitted> {
    spec.validate()?;
    if train.is_empty() {
        return Err(Error::InvalidTrainingSet("empty training set".into()));
    }
    let needs_both_classes = !matches!(spec.hyperparams, Hyperparams::Knn(_));
    if needs_both_classes
        && (train.class_count(Label::Phishing) == 0 || train.class_count(Label::Legitimate) == 0)
    {
        return Err(Error::InvalidTrainingSet(format!(
            "{} requires both classes in the training set",
            spec.family().name()
        )));
    }

    match &spec.hyperparams {
        Hyperparams::Logistic(p) => linear::train_logistic(train, p).map(|m| Fitted {
            model: TrainedModel::Logistic(m),
            converged: true,
            warnings: vec![],
        }),
        Hyperparams::Knn(p) => Ok(Fitted {
            model: TrainedModel::Knn(knn::KnnModel::fit(train, p)),
            converged: true,
            warnings: vec![],
        }),
        Hyperparams::Svm(p) => {
            let outcome = svm::train_svm_smo(train, p)?;
            Ok(Fitted {
                model: TrainedModel::Svm(outcome.model),
                converged: outcome.converged,
                warnings: outcome.warnings,
            })
        }
        Hyperparams::Tree(p) => tree::train_tree(train, p).map(|m| Fitted {
            model: TrainedModel::Tree(m),
            converged: true,
            warnings: vec![],
        }),
        Hyperparams::Forest(p) => forest::train_forest(train, p, spec.seed).map(|m| Fitted {
            model: TrainedModel::Forest(m),
            converged: true,
            warnings: vec![],
        }),
        Hyperparams::Adaboost(p) => {
            let outcome = adaboost::train_adaboost(train, p)?;
            Ok(Fitted {
                model: TrainedModel::Adaboost(outcome.model),
                converged: true,
                warnings: outcome.warnings,
            })
        }
        Hyperparams::Gboost(p) => gboost::train_gboost(train, p).map(|m| Fitted {
            model: TrainedModel::Gboost(m),
            converged: true,
            warnings: vec![],
        }),
        Hyperparams::XgboostLike(p) => {
            xgboost::train_xgboost_like(train, p, spec.seed).map(|m| Fitted {
                model: TrainedModel::XgboostLike(m),
                converged: true,
                warnings: vec![],
            })
        }
        Hyperparams::Mlp(p) => {
            let outcome = mlp::train_mlp(train, p, spec.seed)?;
            Ok(Fitted {
                model: TrainedModel::Mlp(outcome.model),
                converged: outcome.converged,
                warnings: outcome.warnings,
            })
        }
    }
}

/// Predicts the label for one feature vector. Ties (score exactly zero)
/// resolve to legitimate.
pub fn predict(model: &TrainedModel, x: &FeatureVector) -> Label {
    match model {
        // KNN votes directly rather than through a score.
        TrainedModel::Knn(m) => m.predict(x),
        other => Label::from_score(other.decision_score(x)),
    }
}

/// Versioned envelope for model files.
#[derive(Serialize, Deserialize)]
struct ModelFile {
    format_version: u32,
    model: TrainedModel,
}

/// Serializes a model to versioned JSON.
pub fn save_model(model: &TrainedModel) -> Result<String> {
    Ok(serde_json::to_string_pretty(&ModelFile {
        format_version: MODEL_FORMAT_VERSION,
        model: model.clone(),
    })?)
}

/// Loads a model from versioned JSON, rejecting unknown versions.
pub fn load_model(json: &str) -> Result<TrainedModel> {
    let file: ModelFile =
        serde_json::from_str(json).map_err(|e| Error::Model(format!("cannot parse model: {e}")))?;
    if file.format_version != MODEL_FORMAT_VERSION {
        return Err(Error::Model(format!(
            "unsupported model format version {} (expected {})",
            file.format_version, MODEL_FORMAT_VERSION
        )));
    }
    Ok(file.model)
}

/// Row-major f64 view of a dataset's features, shared by the numeric
/// trainers. Ternary values are fed to numeric models as raw
/// {-1, 0, 1} without scaling.
pub(crate) struct TrainMatrix {
    pub x: Vec<f64>,
    pub y: Vec<f64>,
}

impl TrainMatrix {
    pub fn from_dataset(train: &Dataset) -> TrainMatrix {
        let mut x = Vec::with_capacity(train.len() * FEATURE_COUNT);
        let mut y = Vec::with_capacity(train.len());
        for s in train.samples() {
            x.extend(s.features.values().iter().map(|&v| v as f64));
            y.push(s.label.as_f64());
        }
        TrainMatrix { x, y }
    }
}

#[cfg(test)]
pub(crate) mod testutil {
    use crate::dataset::{Dataset, FeatureSchema, FeatureVector, Label, LabeledSample, FEATURE_COUNT};

    /// Builds a dataset from (first-k-feature-values, label) pairs; the
    /// remaining features are +1.
    pub fn dataset_from_rows(rows: &[(&[i8], i8)]) -> Dataset {
        let samples: Vec<LabeledSample> = rows
            .iter()
            .map(|(vals, label)| {
                let mut features = [1i8; FEATURE_COUNT];
                features[..vals.len()].copy_from_slice(vals);
                LabeledSample {
                    features: FeatureVector(features),
                    label: Label::from_value(*label as i64).unwrap(),
                }
            })
            .collect();
        Dataset::new(FeatureSchema::canonical().clone(), samples, "test").unwrap()
    }

    /// A linearly separable pair: feature 0 carries the label.
    pub fn separable_pair() -> Dataset {
        dataset_from_rows(&[(&[-1], -1), (&[1], 1)])
    }
}
