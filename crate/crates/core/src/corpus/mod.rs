//! Document ingestion: annotated and raw parsing, sentence segmentation,
//! dialog detection, corpus manifests and the lexicon.
//!
//! All types here are immutable after construction and documents can be
//! parsed and processed in parallel; the operations are pure functions of
//! their inputs.

mod ingest;
mod parse;

pub use ingest::{load_corpus, load_lexicon, Corpus, Lexicon};
pub use parse::{parse_annotated, parse_raw, serialize_annotated};

use std::fmt;

use crate::schema::{ChunkType, FeatureSchema};

/// One token of a shallow-parsed sentence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AnnotatedToken {
    /// NFC-normalized surface form; never empty, never contains tab or
    /// newline characters.
    pub surface: String,
    /// POS tag from the schema tagset, or the reserved "UNK".
    pub pos: String,
    pub chunk_tag: ChunkTag,
    /// True when every character of the surface is in the schema
    /// punctuation set.
    pub is_punctuation: bool,
}

/// BIO chunk label.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ChunkTag {
    Outside,
    Begin(ChunkType),
    Inside(ChunkType),
}

impl ChunkTag {
    /// Parse "O", "B-<type>" or "I-<type>".
    pub fn from_label(label: &str) -> Option<ChunkTag> {
        if label == "O" {
            return Some(ChunkTag::Outside);
        }
        let (prefix, chunk) = label.split_at_checked(2)?;
        let chunk = ChunkType::from_label(chunk)?;
        match prefix {
            "B-" => Some(ChunkTag::Begin(chunk)),
            "I-" => Some(ChunkTag::Inside(chunk)),
            _ => None,
        }
    }
}

impl fmt::Display for ChunkTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ChunkTag::Outside => f.write_str("O"),
            ChunkTag::Begin(c) => write!(f, "B-{c}"),
            ChunkTag::Inside(c) => write!(f, "I-{c}"),
        }
    }
}

/// What closed a sentence.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Terminator {
    /// The Bengali full stop '।' (U+0964).
    Dari,
    Question,
    Exclamation,
    /// No boundary marker; the sentence ran to a blank line or the end of
    /// the document.
    EndOfDocument,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Sentence {
    pub tokens: Vec<AnnotatedToken>,
    pub terminator: Terminator,
}

impl Sentence {
    /// Number of non-punctuation tokens.
    pub fn word_count(&self) -> usize {
        self.tokens.iter().filter(|t| !t.is_punctuation).count()
    }
}

/// A contiguous range of document-global token indices, half-open.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DialogSpan {
    pub start: usize,
    pub end: usize,
}

impl DialogSpan {
    pub fn len(&self) -> usize {
        self.end - self.start
    }

    pub fn is_empty(&self) -> bool {
        self.start == self.end
    }

    pub fn contains(&self, index: usize) -> bool {
        index >= self.start && index < self.end
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SourceMode {
    Raw,
    Annotated,
}

/// The unit of attribution: a sequence of sentences plus detected dialog
/// spans.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Document {
    pub id: String,
    pub sentences: Vec<Sentence>,
    /// Disjoint, sorted by start index, always within the token range.
    pub dialogs: Vec<DialogSpan>,
    pub source_mode: SourceMode,
}

impl Document {
    /// Tokens of all sentences, in document order.
    pub fn tokens(&self) -> impl Iterator<Item = &AnnotatedToken> + '_ {
        self.sentences.iter().flat_map(|s| s.tokens.iter())
    }

    pub fn token_count(&self) -> usize {
        self.sentences.iter().map(|s| s.tokens.len()).sum()
    }

    /// Number of non-punctuation tokens.
    pub fn word_count(&self) -> usize {
        self.sentences.iter().map(Sentence::word_count).sum()
    }
}

/// Recompute dialog spans from quote tokens.
///
/// A dialog is a maximal token range strictly between an opening quote
/// character and its matching closing quote, paired greedily left to right.
/// An opener with no closer anywhere in the rest of the document closes its
/// span at the end of the sentence it appears in, excluding that sentence's
/// boundary-marker token if it has one.
pub fn detect_dialogs(mut document: Document, schema: &FeatureSchema) -> Document {
    let surfaces: Vec<&str> = document
        .sentences
        .iter()
        .flat_map(|s| s.tokens.iter().map(|t| t.surface.as_str()))
        .collect();

    // sentence_of[i] = index of the sentence holding global token i
    let mut sentence_of = Vec::with_capacity(surfaces.len());
    let mut sentence_end = Vec::new(); // exclusive global end per sentence
    let mut offset = 0;
    for (si, sentence) in document.sentences.iter().enumerate() {
        offset += sentence.tokens.len();
        sentence_end.push(offset);
        sentence_of.extend(std::iter::repeat_n(si, sentence.tokens.len()));
    }

    let mut dialogs = Vec::new();
    let mut i = 0;
    while i < surfaces.len() {
        let Some(pair) = schema
            .quote_pairs()
            .iter()
            .find(|p| is_char(surfaces[i], p.open))
        else {
            i += 1;
            continue;
        };
        let closer = (i + 1..surfaces.len()).find(|&j| is_char(surfaces[j], pair.close));
        match closer {
            Some(j) => {
                dialogs.push(DialogSpan {
                    start: i + 1,
                    end: j,
                });
                i = j + 1;
            }
            None => {
                // Unmatched opener: bound the span at the opener's sentence.
                let si = sentence_of[i];
                let sentence = &document.sentences[si];
                let mut end = sentence_end[si];
                if sentence.terminator != Terminator::EndOfDocument {
                    end -= 1; // exclude the boundary-marker token
                }
                let end = end.max(i + 1);
                dialogs.push(DialogSpan { start: i + 1, end });
                i = end;
            }
        }
    }

    document.dialogs = dialogs;
    document
}

fn is_char(surface: &str, c: char) -> bool {
    let mut chars = surface.chars();
    chars.next() == Some(c) && chars.next().is_none()
}
