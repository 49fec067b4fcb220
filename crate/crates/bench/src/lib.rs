//! Shared fixtures for the stylo benchmarks: a parsed synthetic corpus and
//! a model trained on it.

use stylo_core::synth::{generate_corpus, CorpusProfile, SplitRole};
use stylo_core::{
    build_references, extract_all, parse_annotated, Document, FeatureSchema, FeatureVector,
    Lexicon, ReferenceModel,
};

pub struct Fixture {
    pub schema: FeatureSchema,
    pub lexicon: Lexicon,
    /// Raw annotated text of one mid-sized document.
    pub document_text: String,
    pub documents: Vec<(Document, String)>,
    pub model: ReferenceModel,
    pub test_vectors: Vec<FeatureVector>,
}

pub fn fixture() -> Fixture {
    let schema = FeatureSchema::bundled();
    let corpus = generate_corpus(&CorpusProfile::bundled(), &schema, 42).expect("generates");
    let lexicon = Lexicon::from_words(corpus.lexicon.iter());

    let documents: Vec<(Document, String)> = corpus
        .documents
        .iter()
        .map(|d| {
            let mut parsed = parse_annotated(&d.content, &schema).expect("parses");
            parsed.id = d.file_name.clone();
            (parsed, d.label.clone())
        })
        .collect();

    let train: Vec<(FeatureVector, String)> = corpus
        .documents
        .iter()
        .zip(documents.iter())
        .filter(|(d, _)| d.role == SplitRole::Train)
        .map(|(d, (parsed, _))| {
            (
                extract_all(parsed, &schema, &lexicon).expect("extracts"),
                d.label.clone(),
            )
        })
        .collect();
    let model = build_references(&train).expect("trains");

    let test_vectors: Vec<FeatureVector> = corpus
        .documents
        .iter()
        .zip(documents.iter())
        .filter(|(d, _)| d.role == SplitRole::Test)
        .map(|(_, (parsed, _))| extract_all(parsed, &schema, &lexicon).expect("extracts"))
        .collect();

    Fixture {
        schema,
        lexicon,
        document_text: corpus.documents[0].content.clone(),
        documents,
        model,
        test_vectors,
    }
}
