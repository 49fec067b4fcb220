//! Reference models and classification.
//!
//! Training averages each cluster's feature vectors into a centroid; a test
//! vector is scored against every centroid with cosine similarity,
//! chi-square distance and Euclidean distance, and the three verdicts are
//! combined by majority vote. When all three disagree the chi-square
//! verdict wins. A one-dimensional type-token-ratio baseline mirrors the
//! same nearest-centroid scheme.

mod critical;
mod measures;
mod model_io;

pub use critical::{chi_square_critical_value, chi_square_exceeds_critical, SignificanceLevel};
pub use measures::{chi_square, cosine_similarity, euclidean_distance, CHI_SQUARE_EPSILON};
pub use model_io::{
    load_baseline_model, load_reference_model, read_baseline_model, read_reference_model,
    save_baseline_model, save_reference_model, write_baseline_model, write_reference_model,
};

use std::fmt;

use crate::error::{Error, Result};
use crate::features::{FeatureVector, LexicalProfile};
use crate::schema::FEATURE_COUNT;

/// One cluster of a [`ReferenceModel`].
#[derive(Debug, Clone, PartialEq)]
pub struct ClusterReference {
    pub label: String,
    /// Component-wise mean of the cluster's training vectors.
    pub centroid: Vec<f64>,
    pub training_count: usize,
}

/// Per-cluster centroids plus the schema fingerprint they were built under.
#[derive(Debug, Clone, PartialEq)]
pub struct ReferenceModel {
    /// At least two clusters, in order of first appearance in the training
    /// data; labels distinct, centroids finite.
    pub clusters: Vec<ClusterReference>,
    pub schema_hash: String,
    pub dimension: usize,
}

impl ReferenceModel {
    pub fn cluster_labels(&self) -> impl Iterator<Item = &str> {
        self.clusters.iter().map(|c| c.label.as_str())
    }
}

/// The three measures, in voting order.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Measure {
    Cosine,
    ChiSquare,
    Euclidean,
}

impl Measure {
    pub const ALL: [Measure; 3] = [Measure::Cosine, Measure::ChiSquare, Measure::Euclidean];

    pub fn as_str(self) -> &'static str {
        match self {
            Measure::Cosine => "cosine",
            Measure::ChiSquare => "chi_square",
            Measure::Euclidean => "euclidean",
        }
    }

    /// Cosine picks the maximum score, the distances pick the minimum.
    fn prefers(self, candidate: f64, incumbent: f64) -> bool {
        match self {
            Measure::Cosine => candidate > incumbent,
            Measure::ChiSquare | Measure::Euclidean => candidate < incumbent,
        }
    }
}

impl fmt::Display for Measure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// One measure's cluster assignment with the scores behind it.
#[derive(Debug, Clone, PartialEq)]
pub struct Verdict {
    pub measure: Measure,
    pub chosen_label: String,
    pub scores: Vec<(String, f64)>,
}

/// How a [`VoteResult`] reached its final label.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DecidedBy {
    Majority,
    ChiSquareTiebreak,
}

impl DecidedBy {
    pub fn as_str(self) -> &'static str {
        match self {
            DecidedBy::Majority => "majority",
            DecidedBy::ChiSquareTiebreak => "chi_square_tiebreak",
        }
    }
}

impl fmt::Display for DecidedBy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// The combined decision of the three measures.
#[derive(Debug, Clone, PartialEq)]
pub struct VoteResult {
    /// In [`Measure::ALL`] order.
    pub verdicts: [Verdict; 3],
    pub final_label: String,
    pub decided_by: DecidedBy,
}

/// Average each label's training vectors into a centroid.
///
/// Cluster order follows first appearance in the training list. All vectors
/// must be full 76-marker vectors extracted under one schema.
pub fn build_references(training: &[(FeatureVector, String)]) -> Result<ReferenceModel> {
    if training.is_empty() {
        return Err(Error::validation("no training vectors"));
    }
    let schema_hash = training[0].0.schema_hash.clone();

    let mut clusters: Vec<(String, Vec<f64>, usize)> = Vec::new();
    for (vector, label) in training {
        if vector.values.len() != FEATURE_COUNT {
            return Err(Error::Dimension {
                expected: FEATURE_COUNT,
                actual: vector.values.len(),
            });
        }
        if vector.schema_hash != schema_hash {
            return Err(Error::SchemaMismatch {
                model_hash: schema_hash,
                current_hash: vector.schema_hash.clone(),
            });
        }
        if label.is_empty() {
            return Err(Error::validation(format!(
                "document '{}' has an empty cluster label",
                vector.doc_id
            )));
        }
        match clusters.iter_mut().find(|(l, _, _)| l == label) {
            Some((_, sums, count)) => {
                for (sum, &v) in sums.iter_mut().zip(vector.values.iter()) {
                    *sum += v;
                }
                *count += 1;
            }
            None => clusters.push((label.clone(), vector.values.clone(), 1)),
        }
    }
    if clusters.len() < 2 {
        return Err(Error::validation(format!(
            "training data must cover at least 2 clusters, found {}",
            clusters.len()
        )));
    }

    let clusters = clusters
        .into_iter()
        .map(|(label, sums, count)| ClusterReference {
            label,
            centroid: sums.iter().map(|s| s / count as f64).collect(),
            training_count: count,
        })
        .collect();
    Ok(ReferenceModel {
        clusters,
        schema_hash,
        dimension: FEATURE_COUNT,
    })
}

/// Score `test` against every cluster under one measure and pick the
/// closest cluster. Exact ties go to the earlier cluster.
pub fn classify_single(
    model: &ReferenceModel,
    test: &FeatureVector,
    measure: Measure,
) -> Result<Verdict> {
    if test.schema_hash != model.schema_hash {
        return Err(Error::SchemaMismatch {
            model_hash: model.schema_hash.clone(),
            current_hash: test.schema_hash.clone(),
        });
    }
    if test.values.len() != model.dimension {
        return Err(Error::Dimension {
            expected: model.dimension,
            actual: test.values.len(),
        });
    }

    let mut scores = Vec::with_capacity(model.clusters.len());
    for cluster in &model.clusters {
        let score = match measure {
            Measure::Cosine => cosine_similarity(&cluster.centroid, &test.values)?,
            Measure::ChiSquare => chi_square(&cluster.centroid, &test.values)?,
            Measure::Euclidean => euclidean_distance(&cluster.centroid, &test.values)?,
        };
        scores.push((cluster.label.clone(), score));
    }

    let mut best = 0;
    for (i, (_, score)) in scores.iter().enumerate().skip(1) {
        if measure.prefers(*score, scores[best].1) {
            best = i;
        }
    }
    Ok(Verdict {
        measure,
        chosen_label: scores[best].0.clone(),
        scores,
    })
}

/// Run all three measures and combine them.
pub fn classify_vote(model: &ReferenceModel, test: &FeatureVector) -> Result<VoteResult> {
    let verdicts = [
        classify_single(model, test, Measure::Cosine)?,
        classify_single(model, test, Measure::ChiSquare)?,
        classify_single(model, test, Measure::Euclidean)?,
    ];
    let (final_label, decided_by) = combine_verdicts(&verdicts);
    Ok(VoteResult {
        verdicts,
        final_label,
        decided_by,
    })
}

/// The voting rule: a label chosen by at least two measures wins; when all
/// three disagree, the chi-square verdict is taken as the result.
pub fn combine_verdicts(verdicts: &[Verdict; 3]) -> (String, DecidedBy) {
    let [first, second, third] = verdicts;
    if first.chosen_label == second.chosen_label || first.chosen_label == third.chosen_label {
        (first.chosen_label.clone(), DecidedBy::Majority)
    } else if second.chosen_label == third.chosen_label {
        (second.chosen_label.clone(), DecidedBy::Majority)
    } else {
        let chi = verdicts
            .iter()
            .find(|v| v.measure == Measure::ChiSquare)
            .expect("one verdict per measure");
        (chi.chosen_label.clone(), DecidedBy::ChiSquareTiebreak)
    }
}

/// One cluster of a [`BaselineModel`].
#[derive(Debug, Clone, PartialEq)]
pub struct BaselineCluster {
    pub label: String,
    /// Mean type-token ratio of the cluster's training documents.
    pub mean_ttr: f64,
}

/// The vocabulary-richness baseline: one mean TTR per cluster.
#[derive(Debug, Clone, PartialEq)]
pub struct BaselineModel {
    pub clusters: Vec<BaselineCluster>,
}

/// Average each label's type-token ratios.
pub fn build_baseline(training: &[(LexicalProfile, String)]) -> Result<BaselineModel> {
    if training.is_empty() {
        return Err(Error::validation("no training profiles"));
    }
    let mut clusters: Vec<(String, f64, usize)> = Vec::new();
    for (profile, label) in training {
        if label.is_empty() {
            return Err(Error::validation("empty cluster label"));
        }
        match clusters.iter_mut().find(|(l, _, _)| l == label) {
            Some((_, sum, count)) => {
                *sum += profile.type_token_ratio();
                *count += 1;
            }
            None => clusters.push((label.clone(), profile.type_token_ratio(), 1)),
        }
    }
    if clusters.len() < 2 {
        return Err(Error::validation(format!(
            "training data must cover at least 2 clusters, found {}",
            clusters.len()
        )));
    }
    Ok(BaselineModel {
        clusters: clusters
            .into_iter()
            .map(|(label, sum, count)| BaselineCluster {
                label,
                mean_ttr: sum / count as f64,
            })
            .collect(),
    })
}

/// Nearest centroid on the TTR line; ties go to the earlier cluster.
pub fn baseline_classify(model: &BaselineModel, test: &LexicalProfile) -> Result<String> {
    if test.token_count == 0 {
        return Err(Error::validation(
            "cannot classify an empty document (no words, type-token ratio undefined)",
        ));
    }
    let ttr = test.type_token_ratio();
    let mut best: Option<(usize, f64)> = None;
    for (i, cluster) in model.clusters.iter().enumerate() {
        let distance = (ttr - cluster.mean_ttr).abs();
        if best.is_none_or(|(_, incumbent)| distance < incumbent) {
            best = Some((i, distance));
        }
    }
    match best {
        Some((i, _)) => Ok(model.clusters[i].label.clone()),
        None => Err(Error::validation("baseline model has no clusters")),
    }
}
