//! Stylometric authorship attribution for Bengali text.
//!
//! The toolkit extracts a 76-marker style fingerprint from documents,
//! averages each author's training documents into a reference centroid, and
//! classifies unseen documents by cosine similarity, chi-square distance
//! and Euclidean distance combined through majority voting. A type-token-
//! ratio baseline and a confusion-matrix evaluator complete the pipeline.
//!
//! - [`corpus`]: ingestion of raw text and shallow-parse annotated
//!   documents, sentence segmentation, dialog detection, corpus manifests,
//!   lexicons.
//! - [`features`]: the 76 style markers and the lexical profile.
//! - [`classify`]: reference models, the three measures, majority voting,
//!   model files, the baseline classifier.
//! - [`eval`]: confusion matrices and evaluation reports.
//! - [`synth`]: a seeded synthetic-corpus generator with a ground-truth
//!   marker ledger, for demos and end-to-end verification.
//! - [`schema`]: the configurable symbol inventories everything above is
//!   parameterized by.

pub mod classify;
pub mod corpus;
pub mod error;
pub mod eval;
pub mod features;
pub mod schema;
pub mod synth;
mod text;

pub use classify::{
    baseline_classify, build_baseline, build_references, chi_square, classify_single,
    classify_vote, combine_verdicts, cosine_similarity, euclidean_distance, BaselineCluster,
    BaselineModel, ClusterReference, DecidedBy, Measure, ReferenceModel, Verdict, VoteResult,
};
pub use corpus::{
    detect_dialogs, load_corpus, load_lexicon, parse_annotated, parse_raw, serialize_annotated,
    AnnotatedToken, ChunkTag, Corpus, DialogSpan, Document, Lexicon, Sentence, SourceMode,
    Terminator,
};
pub use error::{Error, Result};
pub use eval::{
    build_confusion_matrix, compute_report, render_report, render_report_tsv, ConfusionMatrix,
    EvaluationReport,
};
pub use features::{
    extract_all, extract_all_partial, extract_chunk_features, extract_context_features,
    extract_token_features, lexical_profile, write_feature_dump, FeatureVector, LexicalProfile,
};
pub use schema::{ChunkType, FeatureSchema, QuotePair, FEATURE_COUNT};
pub use text::format_significant;
