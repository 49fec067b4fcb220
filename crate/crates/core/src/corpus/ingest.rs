//! Corpus manifests and the lexicon.

use std::collections::HashSet;
use std::path::Path;

use super::{parse_annotated, parse_raw, Document};
use crate::error::{Error, Result};
use crate::schema::FeatureSchema;
use crate::text::nfc;

/// Labeled documents plus the cluster labels in order of first appearance.
#[derive(Debug, Clone)]
pub struct Corpus {
    pub documents: Vec<(Document, String)>,
    pub clusters: Vec<String>,
}

/// Load a corpus manifest: UTF-8 TSV lines "path<TAB>cluster_label<TAB>mode"
/// with mode `raw` or `annotated`, paths relative to the manifest's
/// directory. Blank lines and lines starting with '#' are ignored.
pub fn load_corpus(manifest: &Path, schema: &FeatureSchema) -> Result<Corpus> {
    let text = std::fs::read_to_string(manifest).map_err(|e| Error::io(manifest, e))?;
    let base = manifest.parent().unwrap_or_else(|| Path::new(""));

    let mut documents = Vec::new();
    let mut clusters: Vec<String> = Vec::new();
    let mut seen_ids = HashSet::new();

    for (index, line) in text.lines().enumerate() {
        let line_no = index + 1;
        let line = line.strip_suffix('\r').unwrap_or(line);
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = line.split('\t').collect();
        if fields.len() != 3 {
            return Err(Error::in_file(
                manifest,
                Error::parse(
                    line_no,
                    format!(
                        "expected 'path<TAB>cluster_label<TAB>mode', found {} fields",
                        fields.len()
                    ),
                ),
            ));
        }
        let (id, label, mode) = (fields[0], fields[1], fields[2]);
        if label.is_empty() {
            return Err(Error::in_file(
                manifest,
                Error::parse(line_no, "empty cluster label"),
            ));
        }
        if !seen_ids.insert(id.to_string()) {
            return Err(Error::validation(format!("duplicate document id '{id}'")));
        }

        let path = base.join(id);
        let contents = std::fs::read_to_string(&path).map_err(|e| Error::io(&path, e))?;
        let mut document = match mode {
            "annotated" => parse_annotated(&contents, schema),
            "raw" => parse_raw(&contents, schema),
            other => Err(Error::parse(
                line_no,
                format!("unknown mode '{other}' (expected 'raw' or 'annotated')"),
            )),
        }
        .map_err(|e| Error::in_file(&path, e))?;
        document.id = id.to_string();

        if !clusters.iter().any(|c| c == label) {
            clusters.push(label.to_string());
        }
        documents.push((document, label.to_string()));
    }

    if documents.is_empty() {
        return Err(Error::validation(format!(
            "no documents in manifest {}",
            manifest.display()
        )));
    }
    Ok(Corpus {
        documents,
        clusters,
    })
}

/// Word list for out-of-vocabulary detection. Lookup is exact string
/// equality after NFC normalization.
#[derive(Debug, Clone, Default)]
pub struct Lexicon {
    entries: HashSet<String>,
}

impl Lexicon {
    /// An empty lexicon, under which every word is out of vocabulary.
    pub fn empty() -> Lexicon {
        Lexicon::default()
    }

    pub fn from_words<I, S>(words: I) -> Lexicon
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        Lexicon {
            entries: words.into_iter().map(|w| nfc(w.as_ref())).collect(),
        }
    }

    /// `surface` is expected to be NFC-normalized already, as all parsed
    /// token surfaces are.
    pub fn contains(&self, surface: &str) -> bool {
        self.entries.contains(surface)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

/// Load a lexicon file: one word per line, blank lines and '#' comments
/// ignored.
pub fn load_lexicon(path: &Path) -> Result<Lexicon> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    let words = text
        .lines()
        .map(|l| l.strip_suffix('\r').unwrap_or(l).trim())
        .filter(|l| !l.is_empty() && !l.starts_with('#'));
    Ok(Lexicon::from_words(words))
}
