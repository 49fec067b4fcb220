//! The feature schema: configurable symbol inventories (POS tagset,
//! punctuation set, quote pairs) that the style markers are defined over.
//!
//! Marker order follows schema order, so models are only comparable when
//! they were built under the same schema; a canonical hash of the schema is
//! embedded in model files to enforce that.

use std::collections::{HashMap, HashSet};
use std::fmt;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::text::{fnv1a_64, nfc};

/// Number of style markers in a feature vector.
pub const FEATURE_COUNT: usize = 76;

/// Size of the POS tag inventory, excluding the reserved unknown tag.
pub const POS_TAG_COUNT: usize = 24;

/// Size of the tracked punctuation inventory.
pub const PUNCTUATION_COUNT: usize = 10;

/// Reserved tag for tokens the upstream tagger could not label. Tokens
/// carrying it are accepted everywhere but excluded from POS percentages.
pub const UNKNOWN_POS: &str = "UNK";

/// Shallow-parse chunk types, in marker order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ChunkType {
    /// Noun chunk.
    Np,
    /// Finite verb chunk.
    Vgf,
    /// Non-finite verb chunk.
    Vgnf,
    /// Gerund chunk.
    Vgnn,
    /// Adjective chunk.
    Jjp,
    /// Adverb chunk.
    Rbp,
    /// Conjunct chunk.
    Ccp,
    /// Chunk fragment.
    Fragp,
    /// Anything else.
    Others,
}

impl ChunkType {
    pub const ALL: [ChunkType; 9] = [
        ChunkType::Np,
        ChunkType::Vgf,
        ChunkType::Vgnf,
        ChunkType::Vgnn,
        ChunkType::Jjp,
        ChunkType::Rbp,
        ChunkType::Ccp,
        ChunkType::Fragp,
        ChunkType::Others,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            ChunkType::Np => "NP",
            ChunkType::Vgf => "VGF",
            ChunkType::Vgnf => "VGNF",
            ChunkType::Vgnn => "VGNN",
            ChunkType::Jjp => "JJP",
            ChunkType::Rbp => "RBP",
            ChunkType::Ccp => "CCP",
            ChunkType::Fragp => "FRAGP",
            ChunkType::Others => "OTHERS",
        }
    }

    pub fn from_label(label: &str) -> Option<ChunkType> {
        ChunkType::ALL.iter().copied().find(|c| c.as_str() == label)
    }

    /// Position in marker order.
    pub fn index(self) -> usize {
        self as usize
    }
}

impl fmt::Display for ChunkType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// An opening/closing quote character pair used for dialog detection.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct QuotePair {
    pub open: char,
    pub close: char,
}

/// On-disk schema file shape.
#[derive(Debug, Serialize, Deserialize)]
struct SchemaFile {
    pos_tagset: Vec<String>,
    punctuation_set: Vec<String>,
    quote_pairs: Vec<(String, String)>,
}

const DEFAULT_SCHEMA_TOML: &str = include_str!("../assets/default_schema.toml");

/// Validated symbol inventories plus lookup indexes and the canonical hash.
#[derive(Debug, Clone)]
pub struct FeatureSchema {
    pos_tagset: Vec<String>,
    punctuation_set: Vec<String>,
    quote_pairs: Vec<QuotePair>,
    pos_index: HashMap<String, usize>,
    punctuation_index: HashMap<String, usize>,
    punctuation_chars: HashSet<char>,
    hash: String,
}

impl FeatureSchema {
    pub fn new(
        pos_tagset: Vec<String>,
        punctuation_set: Vec<String>,
        quote_pairs: Vec<QuotePair>,
    ) -> Result<FeatureSchema> {
        let pos_tagset: Vec<String> = pos_tagset.iter().map(|t| nfc(t)).collect();
        let punctuation_set: Vec<String> = punctuation_set.iter().map(|p| nfc(p)).collect();

        if pos_tagset.len() != POS_TAG_COUNT {
            return Err(Error::validation(format!(
                "schema needs exactly {POS_TAG_COUNT} POS tags, found {}",
                pos_tagset.len()
            )));
        }
        let mut pos_index = HashMap::new();
        for (i, tag) in pos_tagset.iter().enumerate() {
            if tag.is_empty() || tag.chars().any(char::is_whitespace) {
                return Err(Error::validation(format!("invalid POS tag '{tag}'")));
            }
            if tag == UNKNOWN_POS {
                return Err(Error::validation(
                    "the reserved tag 'UNK' must not appear in pos_tagset",
                ));
            }
            if pos_index.insert(tag.clone(), i).is_some() {
                return Err(Error::validation(format!("duplicate POS tag '{tag}'")));
            }
        }

        if punctuation_set.len() != PUNCTUATION_COUNT {
            return Err(Error::validation(format!(
                "schema needs exactly {PUNCTUATION_COUNT} punctuation marks, found {}",
                punctuation_set.len()
            )));
        }
        let mut punctuation_index = HashMap::new();
        let mut punctuation_chars = HashSet::new();
        for (i, mark) in punctuation_set.iter().enumerate() {
            if mark.is_empty() || mark.chars().any(char::is_whitespace) {
                return Err(Error::validation(format!(
                    "invalid punctuation entry '{mark}'"
                )));
            }
            if punctuation_index.insert(mark.clone(), i).is_some() {
                return Err(Error::validation(format!(
                    "duplicate punctuation entry '{mark}'"
                )));
            }
            punctuation_chars.extend(mark.chars());
        }

        if quote_pairs.is_empty() {
            return Err(Error::validation("schema needs at least one quote pair"));
        }

        let mut schema = FeatureSchema {
            pos_tagset,
            punctuation_set,
            quote_pairs,
            pos_index,
            punctuation_index,
            punctuation_chars,
            hash: String::new(),
        };
        schema.hash = format!("{:016x}", fnv1a_64(schema.canonical().as_bytes()));
        Ok(schema)
    }

    /// Parse a schema file.
    pub fn from_toml(text: &str) -> Result<FeatureSchema> {
        let file: SchemaFile = toml::from_str(text)
            .map_err(|e| Error::validation(format!("invalid schema file: {e}")))?;
        let mut pairs = Vec::new();
        for (open, close) in &file.quote_pairs {
            let open = single_char(open, "quote pair opener")?;
            let close = single_char(close, "quote pair closer")?;
            pairs.push(QuotePair { open, close });
        }
        FeatureSchema::new(file.pos_tagset, file.punctuation_set, pairs)
    }

    /// Read and parse a schema file from disk.
    pub fn load(path: &Path) -> Result<FeatureSchema> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        FeatureSchema::from_toml(&text).map_err(|e| Error::in_file(path, e))
    }

    /// The schema shipped with the toolkit.
    pub fn bundled() -> FeatureSchema {
        FeatureSchema::from_toml(DEFAULT_SCHEMA_TOML).expect("bundled schema is valid")
    }

    /// Serialize back to the schema file format.
    pub fn to_toml(&self) -> String {
        let file = SchemaFile {
            pos_tagset: self.pos_tagset.clone(),
            punctuation_set: self.punctuation_set.clone(),
            quote_pairs: self
                .quote_pairs
                .iter()
                .map(|p| (p.open.to_string(), p.close.to_string()))
                .collect(),
        };
        toml::to_string(&file).expect("schema serializes")
    }

    /// Canonical hash over the normalized serialization; embedded in model
    /// files so that vectors from different schemas never mix.
    pub fn hash(&self) -> &str {
        &self.hash
    }

    pub fn pos_tagset(&self) -> &[String] {
        &self.pos_tagset
    }

    pub fn punctuation_set(&self) -> &[String] {
        &self.punctuation_set
    }

    pub fn quote_pairs(&self) -> &[QuotePair] {
        &self.quote_pairs
    }

    pub fn chunk_types(&self) -> &'static [ChunkType; 9] {
        &ChunkType::ALL
    }

    /// Marker position of a POS tag, if tracked.
    pub fn pos_index(&self, tag: &str) -> Option<usize> {
        self.pos_index.get(tag).copied()
    }

    /// Marker position of a punctuation surface, if tracked.
    pub fn punctuation_index(&self, surface: &str) -> Option<usize> {
        self.punctuation_index.get(surface).copied()
    }

    /// A tag is acceptable on input when it is tracked or the reserved UNK.
    pub fn is_valid_pos(&self, tag: &str) -> bool {
        tag == UNKNOWN_POS || self.pos_index.contains_key(tag)
    }

    /// A surface is punctuation when every character belongs to the
    /// punctuation set.
    pub fn is_punctuation_surface(&self, surface: &str) -> bool {
        !surface.is_empty() && surface.chars().all(|c| self.punctuation_chars.contains(&c))
    }

    fn canonical(&self) -> String {
        let mut out = String::new();
        out.push_str("pos_tagset");
        for tag in &self.pos_tagset {
            out.push('\t');
            out.push_str(tag);
        }
        out.push('\n');
        out.push_str("punctuation_set");
        for mark in &self.punctuation_set {
            out.push('\t');
            out.push_str(mark);
        }
        out.push('\n');
        out.push_str("quote_pairs");
        for pair in &self.quote_pairs {
            out.push('\t');
            out.push(pair.open);
            out.push('\t');
            out.push(pair.close);
        }
        out.push('\n');
        out.push_str("chunk_types");
        for chunk in ChunkType::ALL {
            out.push('\t');
            out.push_str(chunk.as_str());
        }
        out.push('\n');
        out
    }
}

impl Default for FeatureSchema {
    fn default() -> Self {
        FeatureSchema::bundled()
    }
}

fn single_char(s: &str, what: &str) -> Result<char> {
    let normalized = nfc(s);
    let mut chars = normalized.chars();
    match (chars.next(), chars.next()) {
        (Some(c), None) => Ok(c),
        _ => Err(Error::validation(format!(
            "{what} must be a single character, got '{s}'"
        ))),
    }
}
