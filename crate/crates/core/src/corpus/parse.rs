//! Parsers for the two document input formats.
//!
//! Annotated format: CoNLL-style 3-column TSV, one token per line as
//! "surface<TAB>pos<TAB>chunk_tag", blank line between sentences, lines
//! starting with '#' ignored.
//!
//! Raw format: plain UTF-8 text; tokens split on whitespace with schema
//! punctuation split off, sentences closed by '।', '?' or '!'.

use super::{detect_dialogs, AnnotatedToken, ChunkTag, Document, Sentence, SourceMode, Terminator};
use crate::error::{Error, Result};
use crate::schema::FeatureSchema;
use crate::text::nfc;

/// Parse the annotated format.
pub fn parse_annotated(text: &str, schema: &FeatureSchema) -> Result<Document> {
    let mut sentences = Vec::new();
    let mut tokens: Vec<AnnotatedToken> = Vec::new();

    for (index, line) in text.lines().enumerate() {
        let line_no = index + 1;
        let line = line.strip_suffix('\r').unwrap_or(line);
        if line.starts_with('#') {
            continue;
        }
        if line.is_empty() {
            close_sentence(&mut sentences, &mut tokens);
            continue;
        }

        let fields: Vec<&str> = line.split('\t').collect();
        if fields.len() != 3 {
            return Err(Error::parse(
                line_no,
                format!("expected 3 tab-separated fields, found {}", fields.len()),
            ));
        }
        let surface = nfc(fields[0]);
        if surface.is_empty() {
            return Err(Error::parse(line_no, "empty surface field"));
        }
        let pos = fields[1].to_string();
        if !schema.is_valid_pos(&pos) {
            return Err(Error::parse(
                line_no,
                format!("POS tag '{pos}' is not in the schema tagset"),
            ));
        }
        let chunk_tag = ChunkTag::from_label(fields[2])
            .ok_or_else(|| Error::parse(line_no, format!("invalid chunk tag '{}'", fields[2])))?;
        if let ChunkTag::Inside(chunk) = chunk_tag {
            let valid = matches!(
                tokens.last().map(|t| t.chunk_tag),
                Some(ChunkTag::Begin(prev) | ChunkTag::Inside(prev)) if prev == chunk
            );
            if !valid {
                return Err(Error::parse(
                    line_no,
                    format!("chunk tag I-{chunk} does not continue a {chunk} chunk"),
                ));
            }
        }

        let is_punctuation = schema.is_punctuation_surface(&surface);
        tokens.push(AnnotatedToken {
            surface,
            pos,
            chunk_tag,
            is_punctuation,
        });
    }
    close_sentence(&mut sentences, &mut tokens);

    let document = Document {
        id: String::new(),
        sentences,
        dialogs: Vec::new(),
        source_mode: SourceMode::Annotated,
    };
    Ok(detect_dialogs(document, schema))
}

/// Serialize a document back to the annotated format.
///
/// Parsing the output yields a document identical to the input (dialog
/// spans and sentence terminators are recomputed deterministically).
pub fn serialize_annotated(document: &Document) -> String {
    let mut out = String::new();
    for (i, sentence) in document.sentences.iter().enumerate() {
        if i > 0 {
            out.push('\n');
        }
        for token in &sentence.tokens {
            out.push_str(&token.surface);
            out.push('\t');
            out.push_str(&token.pos);
            out.push('\t');
            out.push_str(&token.chunk_tag.to_string());
            out.push('\n');
        }
    }
    out
}

/// Tokenize and segment raw text.
///
/// Every token carries pos = "UNK" and chunk tag "O"; chunk-level markers
/// are unavailable for raw documents.
pub fn parse_raw(text: &str, schema: &FeatureSchema) -> Result<Document> {
    let text = nfc(text);
    let splitter = RawSplitter::new(schema);

    let mut sentences = Vec::new();
    let mut tokens: Vec<AnnotatedToken> = Vec::new();
    for chunk in text.split_whitespace() {
        for surface in splitter.split(chunk) {
            let terminator = terminator_of(&surface);
            tokens.push(AnnotatedToken {
                is_punctuation: schema.is_punctuation_surface(&surface),
                surface,
                pos: "UNK".to_string(),
                chunk_tag: ChunkTag::Outside,
            });
            if let Some(terminator) = terminator {
                sentences.push(Sentence {
                    tokens: std::mem::take(&mut tokens),
                    terminator,
                });
            }
        }
    }
    close_sentence(&mut sentences, &mut tokens);

    let document = Document {
        id: String::new(),
        sentences,
        dialogs: Vec::new(),
        source_mode: SourceMode::Raw,
    };
    Ok(detect_dialogs(document, schema))
}

fn close_sentence(sentences: &mut Vec<Sentence>, tokens: &mut Vec<AnnotatedToken>) {
    if tokens.is_empty() {
        return;
    }
    let terminator = tokens
        .last()
        .and_then(|t| terminator_of(&t.surface))
        .unwrap_or(Terminator::EndOfDocument);
    sentences.push(Sentence {
        tokens: std::mem::take(tokens),
        terminator,
    });
}

fn terminator_of(surface: &str) -> Option<Terminator> {
    match surface {
        "\u{0964}" => Some(Terminator::Dari),
        "?" => Some(Terminator::Question),
        "!" => Some(Terminator::Exclamation),
        _ => None,
    }
}

/// Splits punctuation off whitespace-separated chunks.
///
/// Sentence terminators and quote-pair characters are always split out even
/// when absent from the punctuation set: terminators must become standalone
/// tokens for segmentation, quote characters for dialog detection.
struct RawSplitter {
    marks: Vec<String>,
    single: Vec<char>,
}

impl RawSplitter {
    fn new(schema: &FeatureSchema) -> RawSplitter {
        let mut marks: Vec<String> = schema.punctuation_set().to_vec();
        // Longest first so multi-character marks win over their prefixes.
        marks.sort_by(|a, b| b.len().cmp(&a.len()).then(a.cmp(b)));
        let mut single = vec!['\u{0964}', '?', '!'];
        for pair in schema.quote_pairs() {
            single.push(pair.open);
            single.push(pair.close);
        }
        RawSplitter { marks, single }
    }

    fn split(&self, chunk: &str) -> Vec<String> {
        let mut out = Vec::new();
        let mut word = String::new();
        let mut rest = chunk;
        'outer: while let Some(c) = rest.chars().next() {
            for mark in &self.marks {
                if let Some(tail) = rest.strip_prefix(mark.as_str()) {
                    flush(&mut out, &mut word);
                    out.push(mark.clone());
                    rest = tail;
                    continue 'outer;
                }
            }
            if self.single.contains(&c) {
                flush(&mut out, &mut word);
                out.push(c.to_string());
            } else {
                word.push(c);
            }
            rest = &rest[c.len_utf8()..];
        }
        flush(&mut out, &mut word);
        out
    }
}

fn flush(out: &mut Vec<String>, word: &mut String) {
    if !word.is_empty() {
        out.push(nfc(word));
        word.clear();
    }
}
