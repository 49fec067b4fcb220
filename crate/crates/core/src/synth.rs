//! Seeded synthetic-corpus generator.
//!
//! Produces annotated documents cluster by cluster from a style profile,
//! together with a corpus manifest, a lexicon, and a ground-truth ledger of
//! the 76 marker values each document must extract to. The ledger is
//! computed from the generator's own emission tallies with the marker
//! formulas applied directly; it never goes through the extraction code, so
//! it doubles as an independent oracle for the extractor.
//!
//! Output is a pure function of (profile, schema, seed).

use std::path::Path;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Deserialize;

use crate::error::{Error, Result};
use crate::schema::{FeatureSchema, FEATURE_COUNT, POS_TAG_COUNT};

/// NFC-stable Bengali letters used to mint vocabulary words. None of these
/// compose with each other under NFC, so a word's code-point length never
/// shifts during normalization.
const ALPHABET: [char; 41] = [
    'ক', 'খ', 'গ', 'ঘ', 'ঙ', 'চ', 'ছ', 'জ', 'ঝ', 'ঞ', 'ট', 'ঠ', 'ড', 'ঢ', 'ণ', 'ত', 'থ', 'দ', 'ধ',
    'ন', 'প', 'ফ', 'ব', 'ভ', 'ম', 'য', 'র', 'ল', 'শ', 'ষ', 'স', 'হ', 'অ', 'আ', 'ই', 'ঈ', 'উ', 'ঊ',
    'এ', 'ও', 'ঔ',
];

/// POS tag assigned to generated punctuation tokens.
const PUNCTUATION_POS: &str = "SYM";

/// Generated dialogs are delimited with the straight double quote, which the
/// schema must track both as punctuation and as a quote pair.
const DIALOG_QUOTE: &str = "\"";

const TERMINATORS: [&str; 3] = ["\u{0964}", "?", "!"];

const DEFAULT_PROFILE_TOML: &str = include_str!("../assets/default_profile.toml");

/// Style profile of one synthetic cluster. All weight vectors are
/// categorical sampling weights; see the bundled profile file for the
/// entry order conventions.
#[derive(Debug, Clone, Deserialize)]
pub struct ClusterProfile {
    pub label: String,
    pub train_documents: usize,
    pub test_documents: usize,
    /// Inclusive range, sampled uniformly per document.
    pub sentences_per_document: [usize; 2],
    /// Inclusive range, sampled uniformly per sentence.
    pub words_per_sentence: [usize; 2],
    /// Approximate number of distinct in-lexicon words the cluster draws
    /// from, spread over word lengths proportionally to the length weights.
    pub vocabulary_size: usize,
    /// Probability that a word is drawn from the out-of-lexicon pool.
    pub oov_rate: f64,
    /// Probability that a sentence carries a quoted dialog.
    pub dialog_rate: f64,
    /// Inclusive range of dialog word counts.
    pub dialog_words: [usize; 2],
    pub word_length_weights: Vec<u32>,
    pub chunk_weights: Vec<u32>,
    pub chunk_length_weights: Vec<u32>,
    pub pos_weights: Vec<u32>,
    pub punctuation_marks: Vec<String>,
    pub punctuation_weights: Vec<u32>,
    /// Probability of a punctuation mark after a chunk boundary.
    pub punctuation_rate: f64,
    pub terminator_weights: [u32; 3],
}

/// A full generation profile: one entry per cluster.
#[derive(Debug, Clone, Deserialize)]
pub struct CorpusProfile {
    pub clusters: Vec<ClusterProfile>,
}

impl CorpusProfile {
    pub fn from_toml(text: &str) -> Result<CorpusProfile> {
        toml::from_str(text).map_err(|e| Error::validation(format!("invalid profile: {e}")))
    }

    pub fn load(path: &Path) -> Result<CorpusProfile> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        CorpusProfile::from_toml(&text).map_err(|e| Error::in_file(path, e))
    }

    /// The three-cluster profile shipped with the toolkit.
    pub fn bundled() -> CorpusProfile {
        CorpusProfile::from_toml(DEFAULT_PROFILE_TOML).expect("bundled profile is valid")
    }
}

/// Whether a generated document belongs to the training or the test split.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SplitRole {
    Train,
    Test,
}

#[derive(Debug, Clone)]
pub struct GeneratedDocument {
    pub file_name: String,
    pub label: String,
    pub role: SplitRole,
    /// Annotated-format document text.
    pub content: String,
    /// Ground-truth marker values F1..F76 from the emission tallies.
    pub expected: Vec<f64>,
}

#[derive(Debug, Clone)]
pub struct GeneratedCorpus {
    pub documents: Vec<GeneratedDocument>,
    /// All in-lexicon words, in deterministic order.
    pub lexicon: Vec<String>,
}

impl GeneratedCorpus {
    pub fn manifest(&self) -> String {
        self.manifest_for(|_| true)
    }

    pub fn train_manifest(&self) -> String {
        self.manifest_for(|d| d.role == SplitRole::Train)
    }

    pub fn test_manifest(&self) -> String {
        self.manifest_for(|d| d.role == SplitRole::Test)
    }

    fn manifest_for(&self, keep: impl Fn(&GeneratedDocument) -> bool) -> String {
        let mut out = String::new();
        for doc in self.documents.iter().filter(|d| keep(d)) {
            out.push_str(&format!("{}\t{}\tannotated\n", doc.file_name, doc.label));
        }
        out
    }

    pub fn lexicon_file(&self) -> String {
        let mut out = String::new();
        for word in &self.lexicon {
            out.push_str(word);
            out.push('\n');
        }
        out
    }

    /// The ground-truth ledger: doc_id plus F1..F76 per row, full precision.
    pub fn ledger(&self) -> String {
        let mut out = String::from("doc_id");
        for i in 1..=FEATURE_COUNT {
            out.push_str(&format!("\tF{i}"));
        }
        out.push('\n');
        for doc in &self.documents {
            out.push_str(&doc.file_name);
            for value in &doc.expected {
                out.push_str(&format!("\t{value}"));
            }
            out.push('\n');
        }
        out
    }

    /// Write documents, manifests (`manifest.tsv`, `train.tsv`, `test.tsv`),
    /// `lexicon.txt`, `ledger.tsv` and `schema.toml` into `dir`.
    pub fn write_to(&self, dir: &Path, schema: &FeatureSchema) -> Result<()> {
        std::fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
        let write = |name: &str, contents: &str| -> Result<()> {
            let path = dir.join(name);
            std::fs::write(&path, contents).map_err(|e| Error::io(&path, e))
        };
        for doc in &self.documents {
            write(&doc.file_name, &doc.content)?;
        }
        write("manifest.tsv", &self.manifest())?;
        write("train.tsv", &self.train_manifest())?;
        write("test.tsv", &self.test_manifest())?;
        write("lexicon.txt", &self.lexicon_file())?;
        write("ledger.tsv", &self.ledger())?;
        write("schema.toml", &schema.to_toml())?;
        Ok(())
    }
}

/// Generate a corpus. Deterministic: the same (profile, schema, seed) yields
/// byte-identical output.
pub fn generate_corpus(
    profile: &CorpusProfile,
    schema: &FeatureSchema,
    seed: u64,
) -> Result<GeneratedCorpus> {
    validate_profile(profile, schema)?;
    let vocabulary = Vocabulary::build(profile)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);

    let mut documents = Vec::new();
    for (cluster_index, cluster) in profile.clusters.iter().enumerate() {
        for role in [SplitRole::Train, SplitRole::Test] {
            let (count, tag) = match role {
                SplitRole::Train => (cluster.train_documents, "train"),
                SplitRole::Test => (cluster.test_documents, "test"),
            };
            for index in 0..count {
                let (content, expected) =
                    generate_document(cluster, cluster_index, schema, &vocabulary, &mut rng);
                documents.push(GeneratedDocument {
                    file_name: format!("{}_{}_{:02}.tsv", cluster.label, tag, index),
                    label: cluster.label.clone(),
                    role,
                    content,
                    expected,
                });
            }
        }
    }

    Ok(GeneratedCorpus {
        documents,
        lexicon: vocabulary.lexicon(),
    })
}

fn validate_profile(profile: &CorpusProfile, schema: &FeatureSchema) -> Result<()> {
    if profile.clusters.is_empty() {
        return Err(Error::validation("profile has no clusters"));
    }
    if schema.pos_index(PUNCTUATION_POS).is_none() {
        return Err(Error::validation(format!(
            "generation needs the '{PUNCTUATION_POS}' tag in the schema tagset"
        )));
    }
    for mark in TERMINATORS.iter().chain([&DIALOG_QUOTE]) {
        if schema.punctuation_index(mark).is_none() {
            return Err(Error::validation(format!(
                "generation needs '{mark}' in the schema punctuation set"
            )));
        }
    }
    let quote = DIALOG_QUOTE.chars().next().expect("non-empty");
    if !schema
        .quote_pairs()
        .iter()
        .any(|p| p.open == quote && p.close == quote)
    {
        return Err(Error::validation(
            "generation needs the straight double quote pair in the schema",
        ));
    }

    let quote_chars: Vec<char> = schema
        .quote_pairs()
        .iter()
        .flat_map(|p| [p.open, p.close])
        .collect();
    for cluster in &profile.clusters {
        let label = &cluster.label;
        if label.is_empty()
            || label
                .chars()
                .any(|c| c.is_whitespace() || c == '/' || c == '\\')
        {
            return Err(Error::validation(format!(
                "invalid cluster label '{label}'"
            )));
        }
        if profile
            .clusters
            .iter()
            .filter(|c| c.label == *label)
            .count()
            > 1
        {
            return Err(Error::validation(format!(
                "duplicate cluster label '{label}'"
            )));
        }
        if cluster.train_documents + cluster.test_documents == 0 {
            return Err(Error::validation(format!("cluster {label}: no documents")));
        }
        check_range(
            label,
            "sentences_per_document",
            cluster.sentences_per_document,
            1,
        )?;
        check_range(label, "words_per_sentence", cluster.words_per_sentence, 1)?;
        check_range(label, "dialog_words", cluster.dialog_words, 1)?;
        check_rate(label, "oov_rate", cluster.oov_rate)?;
        check_rate(label, "dialog_rate", cluster.dialog_rate)?;
        check_rate(label, "punctuation_rate", cluster.punctuation_rate)?;
        check_weights(
            label,
            "word_length_weights",
            &cluster.word_length_weights,
            Some(10),
        )?;
        check_weights(label, "chunk_weights", &cluster.chunk_weights, Some(9))?;
        check_weights(
            label,
            "chunk_length_weights",
            &cluster.chunk_length_weights,
            None,
        )?;
        check_weights(
            label,
            "pos_weights",
            &cluster.pos_weights,
            Some(POS_TAG_COUNT),
        )?;
        check_weights(
            label,
            "terminator_weights",
            &cluster.terminator_weights,
            Some(3),
        )?;
        if cluster.punctuation_marks.is_empty()
            || cluster.punctuation_marks.len() != cluster.punctuation_weights.len()
        {
            return Err(Error::validation(format!(
                "cluster {label}: punctuation_marks and punctuation_weights must be non-empty and equally long"
            )));
        }
        check_weights(
            label,
            "punctuation_weights",
            &cluster.punctuation_weights,
            None,
        )?;
        for mark in &cluster.punctuation_marks {
            if schema.punctuation_index(mark).is_none() {
                return Err(Error::validation(format!(
                    "cluster {label}: punctuation mark '{mark}' is not in the schema punctuation set"
                )));
            }
            if mark.chars().any(|c| quote_chars.contains(&c)) {
                return Err(Error::validation(format!(
                    "cluster {label}: punctuation mark '{mark}' is a quote character and would break dialog detection"
                )));
            }
        }
        if cluster.vocabulary_size < 10 {
            return Err(Error::validation(format!(
                "cluster {label}: vocabulary_size must be at least 10"
            )));
        }
    }
    Ok(())
}

fn check_range(label: &str, what: &str, range: [usize; 2], min: usize) -> Result<()> {
    if range[0] < min || range[0] > range[1] {
        return Err(Error::validation(format!(
            "cluster {label}: {what} range [{}, {}] is invalid",
            range[0], range[1]
        )));
    }
    Ok(())
}

fn check_rate(label: &str, what: &str, rate: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&rate) {
        return Err(Error::validation(format!(
            "cluster {label}: {what} {rate} is outside [0, 1]"
        )));
    }
    Ok(())
}

fn check_weights(label: &str, what: &str, weights: &[u32], expected: Option<usize>) -> Result<()> {
    if let Some(len) = expected {
        if weights.len() != len {
            return Err(Error::validation(format!(
                "cluster {label}: {what} needs {len} entries, found {}",
                weights.len()
            )));
        }
    }
    if weights.is_empty() || weights.iter().all(|&w| w == 0) {
        return Err(Error::validation(format!(
            "cluster {label}: {what} must have a positive total"
        )));
    }
    Ok(())
}

/// Word pools stratified by code-point length, shared by all clusters.
/// Indices [0, in_sizes[l]) are in the lexicon; OOV words live above them.
struct Vocabulary {
    in_sizes: Vec<usize>, // per length 1..=10
    /// Per cluster and length: how many in/oov words that cluster draws from.
    cluster_in: Vec<Vec<usize>>,
    cluster_oov: Vec<Vec<usize>>,
}

impl Vocabulary {
    fn build(profile: &CorpusProfile) -> Result<Vocabulary> {
        let lengths = 10;
        let mut in_sizes = vec![0usize; lengths];
        let mut oov_sizes = vec![0usize; lengths];
        let mut cluster_in = Vec::new();
        let mut cluster_oov = Vec::new();

        for cluster in &profile.clusters {
            let total: u64 = cluster
                .word_length_weights
                .iter()
                .map(|&w| u64::from(w))
                .sum();
            let mut this_in = vec![0usize; lengths];
            let mut this_oov = vec![0usize; lengths];
            for (i, &w) in cluster.word_length_weights.iter().enumerate() {
                if w == 0 {
                    continue;
                }
                let share = (cluster.vocabulary_size as f64 * f64::from(w) / total as f64).round();
                let in_need = (share as usize).max(2);
                let oov_need = if cluster.oov_rate > 0.0 {
                    (in_need / 6).max(1)
                } else {
                    0
                };
                this_in[i] = in_need;
                this_oov[i] = oov_need;
                in_sizes[i] = in_sizes[i].max(in_need);
                oov_sizes[i] = oov_sizes[i].max(oov_need);
            }
            cluster_in.push(this_in);
            cluster_oov.push(this_oov);
        }

        for (i, (&ins, &oovs)) in in_sizes.iter().zip(oov_sizes.iter()).enumerate() {
            let length = (i + 1) as u32;
            let capacity = (ALPHABET.len() as u64).saturating_pow(length.min(4));
            if (ins + oovs) as u64 > capacity {
                return Err(Error::validation(format!(
                    "vocabulary needs {} words of length {length}, only {capacity} exist",
                    ins + oovs
                )));
            }
        }

        Ok(Vocabulary {
            in_sizes,
            cluster_in,
            cluster_oov,
        })
    }

    /// The j-th word of a given length: base-N digits over the alphabet,
    /// padded to the exact length. Distinct (length, j) pairs give distinct
    /// words.
    fn word(length: usize, mut j: usize) -> String {
        let mut chars = vec![ALPHABET[0]; length];
        let mut pos = length;
        while j > 0 && pos > 0 {
            pos -= 1;
            chars[pos] = ALPHABET[j % ALPHABET.len()];
            j /= ALPHABET.len();
        }
        chars.iter().collect()
    }

    fn sample(
        &self,
        cluster_index: usize,
        length_index: usize,
        oov: bool,
        rng: &mut ChaCha8Rng,
    ) -> String {
        let length = length_index + 1;
        if oov {
            let pool = self.cluster_oov[cluster_index][length_index];
            let j = self.in_sizes[length_index] + rng.random_range(0..pool);
            Vocabulary::word(length, j)
        } else {
            let pool = self.cluster_in[cluster_index][length_index];
            Vocabulary::word(length, rng.random_range(0..pool))
        }
    }

    /// All in-lexicon words in (length, index) order.
    fn lexicon(&self) -> Vec<String> {
        let mut words = Vec::new();
        for (i, &size) in self.in_sizes.iter().enumerate() {
            for j in 0..size {
                words.push(Vocabulary::word(i + 1, j));
            }
        }
        words
    }
}

/// Per-document emission tallies; the ledger row is computed from these.
#[derive(Default)]
struct Tally {
    words: usize,
    word_lengths: [usize; 10],
    sentence_bins: [usize; 10],
    sentences: usize,
    punctuation: usize,
    punctuation_by_mark: [usize; 10],
    chunks: usize,
    chunk_counts: [usize; 9],
    chunk_words: [usize; 9],
    pos_counts: Vec<usize>,
    tagged: usize,
    dialogs: usize,
    dialog_words: usize,
    oov_words: usize,
    frequencies: std::collections::HashMap<String, usize>,
}

impl Tally {
    fn new() -> Tally {
        Tally {
            pos_counts: vec![0; POS_TAG_COUNT],
            ..Tally::default()
        }
    }

    /// Apply the marker formulas to the tallies.
    fn ledger_row(&self) -> Vec<f64> {
        let pct = |count: usize, total: usize| -> f64 {
            if total == 0 {
                0.0
            } else {
                100.0 * count as f64 / total as f64
            }
        };
        let mut row = Vec::with_capacity(FEATURE_COUNT);
        for &c in &self.word_lengths {
            row.push(pct(c, self.words));
        }
        for &c in &self.sentence_bins {
            row.push(pct(c, self.sentences));
        }
        row.push(pct(self.punctuation, self.words));
        for &c in &self.punctuation_by_mark {
            row.push(pct(c, self.punctuation));
        }
        for &c in &self.chunk_counts {
            row.push(pct(c, self.chunks));
        }
        for &c in &self.chunk_words {
            row.push(pct(c, self.words));
        }
        for &c in &self.pos_counts {
            row.push(pct(c, self.tagged));
        }
        row.push(if self.dialogs == 0 || self.words == 0 {
            0.0
        } else {
            100.0 * (self.dialog_words as f64 / self.dialogs as f64) / self.words as f64
        });
        row.push(pct(self.oov_words, self.words));
        let hapax = self.frequencies.values().filter(|&&f| f == 1).count();
        row.push(pct(hapax, self.words));
        row
    }
}

struct DocumentWriter<'a> {
    cluster: &'a ClusterProfile,
    cluster_index: usize,
    schema: &'a FeatureSchema,
    vocabulary: &'a Vocabulary,
    lines: String,
    tally: Tally,
}

impl DocumentWriter<'_> {
    fn push_word(
        &mut self,
        rng: &mut ChaCha8Rng,
        chunk_tag: &str,
        chunk_index: usize,
        in_dialog: bool,
    ) {
        let length_index = pick_weighted(rng, &self.cluster.word_length_weights);
        let oov = self.cluster.oov_rate > 0.0 && rng.random::<f64>() < self.cluster.oov_rate;
        let surface = self
            .vocabulary
            .sample(self.cluster_index, length_index, oov, rng);
        let pos_index = pick_weighted(rng, &self.cluster.pos_weights);
        let pos = &self.schema.pos_tagset()[pos_index];
        self.lines
            .push_str(&format!("{surface}\t{pos}\t{chunk_tag}\n"));

        let t = &mut self.tally;
        t.words += 1;
        t.word_lengths[length_index] += 1;
        t.chunk_words[chunk_index] += 1;
        t.pos_counts[pos_index] += 1;
        t.tagged += 1;
        if oov {
            t.oov_words += 1;
        }
        if in_dialog {
            t.dialog_words += 1;
        }
        *t.frequencies.entry(surface).or_insert(0) += 1;
    }

    fn push_punctuation(&mut self, mark: &str) {
        let pos_index = self
            .schema
            .pos_index(PUNCTUATION_POS)
            .expect("validated: SYM is in the tagset");
        self.lines
            .push_str(&format!("{mark}\t{PUNCTUATION_POS}\tO\n"));
        let t = &mut self.tally;
        t.punctuation += 1;
        if let Some(i) = self.schema.punctuation_index(mark) {
            t.punctuation_by_mark[i] += 1;
        }
        t.pos_counts[pos_index] += 1;
        t.tagged += 1;
    }

    fn push_chunks(&mut self, rng: &mut ChaCha8Rng, mut words: usize, in_dialog: bool) {
        while words > 0 {
            let chunk_index = pick_weighted(rng, &self.cluster.chunk_weights);
            let chunk_label = self.schema.chunk_types()[chunk_index].as_str();
            let size = (pick_weighted(rng, &self.cluster.chunk_length_weights) + 1).min(words);
            for k in 0..size {
                let tag = if k == 0 {
                    format!("B-{chunk_label}")
                } else {
                    format!("I-{chunk_label}")
                };
                self.push_word(rng, &tag, chunk_index, in_dialog);
            }
            self.tally.chunks += 1;
            self.tally.chunk_counts[chunk_index] += 1;
            words -= size;

            // mid-sentence punctuation lands between chunks, never inside a
            // dialog (which keeps dialog word accounting trivial)
            if words > 0 && !in_dialog && rng.random::<f64>() < self.cluster.punctuation_rate {
                let mark_index = pick_weighted(rng, &self.cluster.punctuation_weights);
                let mark = self.cluster.punctuation_marks[mark_index].clone();
                self.push_punctuation(&mark);
            }
        }
    }
}

fn generate_document(
    cluster: &ClusterProfile,
    cluster_index: usize,
    schema: &FeatureSchema,
    vocabulary: &Vocabulary,
    rng: &mut ChaCha8Rng,
) -> (String, Vec<f64>) {
    let mut writer = DocumentWriter {
        cluster,
        cluster_index,
        schema,
        vocabulary,
        lines: String::new(),
        tally: Tally::new(),
    };

    let n_sentences = sample_range(rng, cluster.sentences_per_document);
    for s in 0..n_sentences {
        if s > 0 {
            writer.lines.push('\n');
        }
        let target = sample_range(rng, cluster.words_per_sentence);
        let with_dialog = rng.random::<f64>() < cluster.dialog_rate;
        let dialog_words = if with_dialog {
            sample_range(rng, cluster.dialog_words).min(target)
        } else {
            0
        };

        writer.push_chunks(rng, target - dialog_words, false);
        if with_dialog {
            writer.push_punctuation(DIALOG_QUOTE);
            writer.push_chunks(rng, dialog_words, true);
            writer.push_punctuation(DIALOG_QUOTE);
            writer.tally.dialogs += 1;
        }
        let terminator = TERMINATORS[pick_weighted(rng, &cluster.terminator_weights)];
        writer.push_punctuation(terminator);

        writer.tally.sentences += 1;
        writer.tally.sentence_bins[(target / 10).min(9)] += 1;
    }

    let expected = writer.tally.ledger_row();
    (writer.lines, expected)
}

fn sample_range(rng: &mut ChaCha8Rng, range: [usize; 2]) -> usize {
    if range[0] == range[1] {
        range[0]
    } else {
        rng.random_range(range[0]..=range[1])
    }
}

fn pick_weighted(rng: &mut ChaCha8Rng, weights: &[u32]) -> usize {
    let total: u64 = weights.iter().map(|&w| u64::from(w)).sum();
    debug_assert!(total > 0);
    let mut x = rng.random_range(0..total);
    for (i, &w) in weights.iter().enumerate() {
        let w = u64::from(w);
        if x < w {
            return i;
        }
        x -= w;
    }
    unreachable!("weights sum to total")
}
