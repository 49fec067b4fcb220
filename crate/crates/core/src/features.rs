//! The 76 style markers and the lexical profile.
//!
//! Markers are percentages, grouped in three blocks:
//!
//! - token level (F1-F31): word-length distribution (F1-F10), words-per-
//!   sentence distribution (F11-F20), punctuation per word (F21), individual
//!   punctuation shares (F22-F31);
//! - chunk level (F32-F73): chunk-type shares (F32-F40), words covered per
//!   chunk type (F41-F49), POS shares (F50-F73);
//! - context level (F74-F76): words per dialog (F74), out-of-vocabulary
//!   words (F75), hapax legomena (F76).
//!
//! Every marker is a ratio, so values are independent of text length; a
//! zero denominator always yields 0, never NaN or infinity. Extraction
//! tallies integer counts and divides once, which makes the output
//! bit-identical under sentence reordering and repeated calls.

use std::collections::HashMap;

use crate::corpus::{ChunkTag, Document, Lexicon, SourceMode};
use crate::error::{Error, Result};
use crate::schema::{FeatureSchema, FEATURE_COUNT, POS_TAG_COUNT, PUNCTUATION_COUNT, UNKNOWN_POS};
use crate::text::format_significant;

/// Sizes of the three extraction blocks.
pub const TOKEN_BLOCK: usize = 31;
pub const CHUNK_BLOCK: usize = 42;
pub const CONTEXT_BLOCK: usize = 3;

/// An ordered 76-marker vector; index `i` holds marker F(i+1).
#[derive(Debug, Clone, PartialEq)]
pub struct FeatureVector {
    pub doc_id: String,
    /// Always `FEATURE_COUNT` values, all finite and non-negative.
    pub values: Vec<f64>,
    /// Hash of the schema the vector was extracted under; models refuse
    /// vectors from a different schema.
    pub schema_hash: String,
}

/// Vocabulary statistics of a document, the baseline's feature.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LexicalProfile {
    /// Distinct word surfaces (V).
    pub vocabulary_size: usize,
    /// Total words (N).
    pub token_count: usize,
    /// Word surfaces occurring exactly once.
    pub hapax_count: usize,
}

impl LexicalProfile {
    /// V/N, or 0 for an empty document.
    pub fn type_token_ratio(&self) -> f64 {
        if self.token_count == 0 {
            0.0
        } else {
            self.vocabulary_size as f64 / self.token_count as f64
        }
    }
}

fn percentage(count: usize, total: usize) -> f64 {
    if total == 0 {
        0.0
    } else {
        100.0 * count as f64 / total as f64
    }
}

/// Token-level markers F1-F31.
pub fn extract_token_features(document: &Document, schema: &FeatureSchema) -> [f64; TOKEN_BLOCK] {
    let mut word_lengths = [0usize; 10];
    let mut total_words = 0usize;
    let mut total_punctuation = 0usize;
    let mut punctuation_counts = [0usize; PUNCTUATION_COUNT];

    for token in document.tokens() {
        if token.is_punctuation {
            total_punctuation += 1;
            if let Some(i) = schema.punctuation_index(&token.surface) {
                punctuation_counts[i] += 1;
            }
        } else {
            total_words += 1;
            let len = token.surface.chars().count();
            word_lengths[len.min(10) - 1] += 1;
        }
    }

    let mut sentence_bins = [0usize; 10];
    for sentence in &document.sentences {
        sentence_bins[(sentence.word_count() / 10).min(9)] += 1;
    }
    let total_sentences = document.sentences.len();

    let mut out = [0.0; TOKEN_BLOCK];
    for (i, &count) in word_lengths.iter().enumerate() {
        out[i] = percentage(count, total_words);
    }
    for (i, &count) in sentence_bins.iter().enumerate() {
        out[10 + i] = percentage(count, total_sentences);
    }
    out[20] = percentage(total_punctuation, total_words);
    for (i, &count) in punctuation_counts.iter().enumerate() {
        out[21 + i] = percentage(count, total_punctuation);
    }
    out
}

/// Chunk-level markers F32-F73. Raw documents have no chunk annotations and
/// are rejected.
pub fn extract_chunk_features(
    document: &Document,
    schema: &FeatureSchema,
) -> Result<[f64; CHUNK_BLOCK]> {
    if document.source_mode == SourceMode::Raw {
        return Err(Error::RawMode {
            id: document.id.clone(),
        });
    }

    let mut chunk_counts = [0usize; 9];
    let mut chunk_words = [0usize; 9];
    let mut total_chunks = 0usize;
    let mut total_words = 0usize;
    let mut pos_counts = [0usize; POS_TAG_COUNT];
    let mut total_tagged = 0usize;

    for sentence in &document.sentences {
        for token in &sentence.tokens {
            if !token.is_punctuation {
                total_words += 1;
            }
            if token.pos != UNKNOWN_POS {
                total_tagged += 1;
                if let Some(i) = schema.pos_index(&token.pos) {
                    pos_counts[i] += 1;
                }
            }
            match token.chunk_tag {
                ChunkTag::Begin(chunk) => {
                    total_chunks += 1;
                    chunk_counts[chunk.index()] += 1;
                    if !token.is_punctuation {
                        chunk_words[chunk.index()] += 1;
                    }
                }
                ChunkTag::Inside(chunk) => {
                    if !token.is_punctuation {
                        chunk_words[chunk.index()] += 1;
                    }
                }
                ChunkTag::Outside => {}
            }
        }
    }

    let mut out = [0.0; CHUNK_BLOCK];
    for i in 0..9 {
        out[i] = percentage(chunk_counts[i], total_chunks);
        out[9 + i] = percentage(chunk_words[i], total_words);
    }
    for (i, &count) in pos_counts.iter().enumerate() {
        out[18 + i] = percentage(count, total_tagged);
    }
    Ok(out)
}

/// Context-level markers F74-F76.
pub fn extract_context_features(document: &Document, lexicon: &Lexicon) -> [f64; CONTEXT_BLOCK] {
    let mut total_words = 0usize;
    let mut oov_words = 0usize;
    let mut dialog_words = 0usize;
    let mut frequencies: HashMap<&str, usize> = HashMap::new();

    for (index, token) in document.tokens().enumerate() {
        if token.is_punctuation {
            continue;
        }
        total_words += 1;
        if !lexicon.contains(&token.surface) {
            oov_words += 1;
        }
        if document.dialogs.iter().any(|d| d.contains(index)) {
            dialog_words += 1;
        }
        *frequencies.entry(token.surface.as_str()).or_insert(0) += 1;
    }
    let hapax_count = frequencies.values().filter(|&&f| f == 1).count();

    let dialog_count = document.dialogs.len();
    let words_per_dialog = if dialog_count == 0 || total_words == 0 {
        0.0
    } else {
        let mean = dialog_words as f64 / dialog_count as f64;
        100.0 * mean / total_words as f64
    };

    [
        words_per_dialog,
        percentage(oov_words, total_words),
        percentage(hapax_count, total_words),
    ]
}

/// All 76 markers in index order. Raw documents are rejected because the
/// chunk block needs annotations; see [`extract_all_partial`].
pub fn extract_all(
    document: &Document,
    schema: &FeatureSchema,
    lexicon: &Lexicon,
) -> Result<FeatureVector> {
    let chunk = extract_chunk_features(document, schema)?;
    Ok(assemble(document, schema, lexicon, chunk))
}

/// Like [`extract_all`] but zero-fills the chunk block (F32-F73) for raw
/// documents instead of failing.
pub fn extract_all_partial(
    document: &Document,
    schema: &FeatureSchema,
    lexicon: &Lexicon,
) -> FeatureVector {
    let chunk = extract_chunk_features(document, schema).unwrap_or([0.0; CHUNK_BLOCK]);
    assemble(document, schema, lexicon, chunk)
}

fn assemble(
    document: &Document,
    schema: &FeatureSchema,
    lexicon: &Lexicon,
    chunk: [f64; CHUNK_BLOCK],
) -> FeatureVector {
    let token = extract_token_features(document, schema);
    let context = extract_context_features(document, lexicon);
    let mut values = Vec::with_capacity(FEATURE_COUNT);
    values.extend_from_slice(&token);
    values.extend_from_slice(&chunk);
    values.extend_from_slice(&context);
    debug_assert_eq!(values.len(), FEATURE_COUNT);
    FeatureVector {
        doc_id: document.id.clone(),
        values,
        schema_hash: schema.hash().to_string(),
    }
}

/// Vocabulary statistics over the document's words.
pub fn lexical_profile(document: &Document) -> LexicalProfile {
    let mut frequencies: HashMap<&str, usize> = HashMap::new();
    let mut token_count = 0usize;
    for token in document.tokens() {
        if token.is_punctuation {
            continue;
        }
        token_count += 1;
        *frequencies.entry(token.surface.as_str()).or_insert(0) += 1;
    }
    LexicalProfile {
        vocabulary_size: frequencies.len(),
        token_count,
        hapax_count: frequencies.values().filter(|&&f| f == 1).count(),
    }
}

/// Render feature vectors as the TSV dump: header `doc_id  F1 .. F76`,
/// values with 9 significant digits, one row per vector in input order.
pub fn write_feature_dump(vectors: &[FeatureVector]) -> String {
    let mut out = String::from("doc_id");
    for i in 1..=FEATURE_COUNT {
        out.push_str(&format!("\tF{i}"));
    }
    out.push('\n');
    for vector in vectors {
        out.push_str(&vector.doc_id);
        for &value in &vector.values {
            out.push('\t');
            out.push_str(&format_significant(value, 9));
        }
        out.push('\n');
    }
    out
}
