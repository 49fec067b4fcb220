//! stylo: stylometric authorship attribution from the command line.
//!
//! The subcommands mirror the pipeline stages: `extract` dumps style
//! markers, `train` builds a reference model, `classify` and `evaluate`
//! apply it, `baseline` runs the type-token-ratio reference system, and
//! `generate` produces a seeded synthetic corpus with a ground-truth
//! ledger for demos and verification.

use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};

use stylo_core::synth::{generate_corpus, CorpusProfile};
use stylo_core::{
    build_baseline, build_confusion_matrix, build_references, classify, classify_vote,
    compute_report, extract_all, extract_all_partial, lexical_profile, load_corpus, load_lexicon,
    render_report, render_report_tsv, write_feature_dump, Corpus, EvaluationReport, FeatureSchema,
    FeatureVector, Lexicon, Measure, VoteResult,
};

#[derive(Parser)]
#[command(
    name = "stylo",
    version,
    about = "Stylometric authorship attribution toolkit"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Extract the 76 style markers of every manifest document as TSV
    Extract {
        /// Corpus manifest: lines "path<TAB>cluster_label<TAB>mode"
        manifest: PathBuf,
        #[command(flatten)]
        common: CommonArgs,
        /// Write the dump here instead of standard output
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Train a reference model (one mean vector per cluster)
    Train {
        manifest: PathBuf,
        #[command(flatten)]
        common: CommonArgs,
        /// Where to write the model file
        #[arg(long)]
        out: PathBuf,
    },
    /// Classify manifest documents against a trained model
    Classify {
        /// Model file written by `stylo train`
        model: PathBuf,
        manifest: PathBuf,
        #[command(flatten)]
        common: CommonArgs,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Evaluate a model on labeled documents: one confusion matrix per
    /// measure plus the combined voting
    Evaluate {
        model: PathBuf,
        manifest: PathBuf,
        #[command(flatten)]
        common: CommonArgs,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Train and evaluate the type-token-ratio baseline
    Baseline {
        train_manifest: PathBuf,
        test_manifest: PathBuf,
        #[command(flatten)]
        common: CommonArgs,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Also write the baseline model file here
        #[arg(long)]
        model_out: Option<PathBuf>,
    },
    /// Generate a seeded synthetic corpus with manifests, lexicon and a
    /// ground-truth marker ledger
    Generate {
        /// Output directory
        #[arg(long)]
        out: PathBuf,
        /// Generator seed; the same seed reproduces the corpus byte for byte
        #[arg(long, default_value_t = 42)]
        seed: u64,
        /// Cluster profile file (defaults to the bundled 3-cluster profile)
        #[arg(long)]
        spec: Option<PathBuf>,
        /// Schema file; defaults to $STYLO_SCHEMA, then the built-in schema
        #[arg(long, env = "STYLO_SCHEMA")]
        schema: Option<PathBuf>,
    },
}

#[derive(Args)]
struct CommonArgs {
    /// Schema file; defaults to $STYLO_SCHEMA, then the built-in schema
    #[arg(long, env = "STYLO_SCHEMA")]
    schema: Option<PathBuf>,
    /// Lexicon for the out-of-vocabulary marker; without it every word
    /// counts as out of vocabulary
    #[arg(long)]
    lexicon: Option<PathBuf>,
    /// Zero-fill the chunk markers (F32-F73) for raw-mode documents
    /// instead of failing
    #[arg(long)]
    allow_partial: bool,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Tsv,
}

fn main() -> Result<()> {
    match Cli::parse().command {
        Command::Extract {
            manifest,
            common,
            out,
        } => cmd_extract(&manifest, &common, out.as_deref()),
        Command::Train {
            manifest,
            common,
            out,
        } => cmd_train(&manifest, &common, &out),
        Command::Classify {
            model,
            manifest,
            common,
            format,
            out,
        } => cmd_classify(&model, &manifest, &common, format, out.as_deref()),
        Command::Evaluate {
            model,
            manifest,
            common,
            format,
            out,
        } => cmd_evaluate(&model, &manifest, &common, format, out.as_deref()),
        Command::Baseline {
            train_manifest,
            test_manifest,
            common,
            format,
            out,
            model_out,
        } => cmd_baseline(
            &train_manifest,
            &test_manifest,
            &common,
            format,
            out.as_deref(),
            model_out.as_deref(),
        ),
        Command::Generate {
            out,
            seed,
            spec,
            schema,
        } => cmd_generate(&out, seed, spec.as_deref(), schema.as_deref()),
    }
}

fn load_schema(path: Option<&Path>) -> Result<FeatureSchema> {
    match path {
        Some(path) => {
            FeatureSchema::load(path).with_context(|| format!("loading schema {}", path.display()))
        }
        None => Ok(FeatureSchema::bundled()),
    }
}

fn load_lexicon_arg(path: Option<&Path>) -> Result<Lexicon> {
    match path {
        Some(path) => {
            load_lexicon(path).with_context(|| format!("loading lexicon {}", path.display()))
        }
        None => Ok(Lexicon::empty()),
    }
}

/// Extract every document of a corpus, in manifest order.
fn extract_vectors(
    corpus: &Corpus,
    schema: &FeatureSchema,
    lexicon: &Lexicon,
    allow_partial: bool,
) -> Result<Vec<(FeatureVector, String)>> {
    corpus
        .documents
        .iter()
        .map(|(document, label)| {
            let vector = if allow_partial {
                extract_all_partial(document, schema, lexicon)
            } else {
                extract_all(document, schema, lexicon)?
            };
            Ok((vector, label.clone()))
        })
        .collect()
}

fn emit(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(path) => {
            std::fs::write(path, text).with_context(|| format!("writing {}", path.display()))
        }
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

/// True when the manifest file exists but lists no documents.
fn manifest_is_empty(path: &Path) -> Result<bool> {
    let text = std::fs::read_to_string(path)
        .with_context(|| format!("reading manifest {}", path.display()))?;
    Ok(text
        .lines()
        .all(|l| l.trim().is_empty() || l.starts_with('#')))
}

fn check_model_schema(model: &stylo_core::ReferenceModel, schema: &FeatureSchema) -> Result<()> {
    if model.schema_hash != schema.hash() {
        bail!(
            "schema hash mismatch: model was built with schema {}, current schema is {}; \
             retrain the model with this schema",
            model.schema_hash,
            schema.hash()
        );
    }
    Ok(())
}

fn cmd_extract(manifest: &Path, common: &CommonArgs, out: Option<&Path>) -> Result<()> {
    let schema = load_schema(common.schema.as_deref())?;
    let lexicon = load_lexicon_arg(common.lexicon.as_deref())?;
    let corpus = load_corpus(manifest, &schema)?;
    let vectors = extract_vectors(&corpus, &schema, &lexicon, common.allow_partial)?;
    let dump: Vec<FeatureVector> = vectors.into_iter().map(|(v, _)| v).collect();
    emit(out, &write_feature_dump(&dump))
}

fn cmd_train(manifest: &Path, common: &CommonArgs, out: &Path) -> Result<()> {
    let schema = load_schema(common.schema.as_deref())?;
    let lexicon = load_lexicon_arg(common.lexicon.as_deref())?;
    let corpus = load_corpus(manifest, &schema)?;
    let vectors = extract_vectors(&corpus, &schema, &lexicon, common.allow_partial)?;
    let model = build_references(&vectors)?;
    classify::save_reference_model(&model, out)?;
    for cluster in &model.clusters {
        println!("cluster\t{}\t{}", cluster.label, cluster.training_count);
    }
    println!("model written to {}", out.display());
    Ok(())
}

const CLASSIFY_HEADER: &str = "doc_id\tcosine\tchi_square\teuclidean\tfinal\tdecided_by\n";

fn classification_row(doc_id: &str, vote: &VoteResult) -> String {
    format!(
        "{doc_id}\t{}\t{}\t{}\t{}\t{}\n",
        vote.verdicts[0].chosen_label,
        vote.verdicts[1].chosen_label,
        vote.verdicts[2].chosen_label,
        vote.final_label,
        vote.decided_by
    )
}

fn cmd_classify(
    model_path: &Path,
    manifest: &Path,
    common: &CommonArgs,
    _format: Format,
    out: Option<&Path>,
) -> Result<()> {
    let schema = load_schema(common.schema.as_deref())?;
    let model = classify::load_reference_model(model_path)?;
    check_model_schema(&model, &schema)?;

    // an empty manifest has nothing to classify; emit just the header
    if manifest_is_empty(manifest)? {
        return emit(out, CLASSIFY_HEADER);
    }

    let lexicon = load_lexicon_arg(common.lexicon.as_deref())?;
    let corpus = load_corpus(manifest, &schema)?;
    let vectors = extract_vectors(&corpus, &schema, &lexicon, common.allow_partial)?;

    let mut output = String::from(CLASSIFY_HEADER);
    for (vector, _) in &vectors {
        let vote = classify_vote(&model, vector)
            .with_context(|| format!("classifying '{}'", vector.doc_id))?;
        output.push_str(&classification_row(&vector.doc_id, &vote));
    }
    emit(out, &output)
}

fn cmd_evaluate(
    model_path: &Path,
    manifest: &Path,
    common: &CommonArgs,
    format: Format,
    out: Option<&Path>,
) -> Result<()> {
    let schema = load_schema(common.schema.as_deref())?;
    let model = classify::load_reference_model(model_path)?;
    check_model_schema(&model, &schema)?;
    let lexicon = load_lexicon_arg(common.lexicon.as_deref())?;
    let corpus = load_corpus(manifest, &schema)?;
    for label in &corpus.clusters {
        if !model.cluster_labels().any(|l| l == label) {
            bail!("manifest label '{label}' is not a cluster of the model");
        }
    }
    let vectors = extract_vectors(&corpus, &schema, &lexicon, common.allow_partial)?;

    let mut votes = Vec::with_capacity(vectors.len());
    for (vector, label) in &vectors {
        let vote = classify_vote(&model, vector)
            .with_context(|| format!("classifying '{}'", vector.doc_id))?;
        votes.push((label.clone(), vote));
    }

    let labels: Vec<String> = model.cluster_labels().map(str::to_string).collect();
    let mut reports: Vec<EvaluationReport> = Vec::new();
    for (i, measure) in Measure::ALL.iter().enumerate() {
        let pairs: Vec<(String, String)> = votes
            .iter()
            .map(|(truth, vote)| (truth.clone(), vote.verdicts[i].chosen_label.clone()))
            .collect();
        let matrix = build_confusion_matrix(&pairs, &labels)?;
        reports.push(compute_report(matrix, measure.as_str())?);
    }
    let voting_pairs: Vec<(String, String)> = votes
        .iter()
        .map(|(truth, vote)| (truth.clone(), vote.final_label.clone()))
        .collect();
    let matrix = build_confusion_matrix(&voting_pairs, &labels)?;
    reports.push(compute_report(matrix, "voting")?);

    let rendered = match format {
        Format::Text => render_report(&reports),
        Format::Tsv => render_report_tsv(&reports),
    };
    emit(out, &rendered)
}

fn cmd_baseline(
    train_manifest: &Path,
    test_manifest: &Path,
    common: &CommonArgs,
    format: Format,
    out: Option<&Path>,
    model_out: Option<&Path>,
) -> Result<()> {
    let schema = load_schema(common.schema.as_deref())?;
    let train = load_corpus(train_manifest, &schema)?;
    let profiles: Vec<_> = train
        .documents
        .iter()
        .map(|(doc, label)| (lexical_profile(doc), label.clone()))
        .collect();
    let model = build_baseline(&profiles)?;
    if let Some(path) = model_out {
        classify::save_baseline_model(&model, path)?;
    }

    let test = load_corpus(test_manifest, &schema)?;
    let mut pairs = Vec::with_capacity(test.documents.len());
    for (doc, label) in &test.documents {
        let predicted = stylo_core::baseline_classify(&model, &lexical_profile(doc))
            .with_context(|| format!("classifying '{}'", doc.id))?;
        pairs.push((label.clone(), predicted));
    }
    let labels: Vec<String> = model.clusters.iter().map(|c| c.label.clone()).collect();
    let matrix = build_confusion_matrix(&pairs, &labels)?;
    let report = compute_report(matrix, "baseline")?;

    let rendered = match format {
        Format::Text => render_report(std::slice::from_ref(&report)),
        Format::Tsv => render_report_tsv(std::slice::from_ref(&report)),
    };
    emit(out, &rendered)
}

fn cmd_generate(
    out: &Path,
    seed: u64,
    spec: Option<&Path>,
    schema_path: Option<&Path>,
) -> Result<()> {
    let schema = load_schema(schema_path)?;
    let profile = match spec {
        Some(path) => CorpusProfile::load(path)
            .with_context(|| format!("loading profile {}", path.display()))?,
        None => CorpusProfile::bundled(),
    };
    let corpus = generate_corpus(&profile, &schema, seed)?;
    corpus.write_to(out, &schema)?;
    println!(
        "wrote {} documents, manifests (manifest.tsv, train.tsv, test.tsv), \
         lexicon.txt, ledger.tsv and schema.toml to {}",
        corpus.documents.len(),
        out.display()
    );
    Ok(())
}
