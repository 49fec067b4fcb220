//! Acceptance suite: one test per release criterion, each printing a
//! PASS line on success (run with `--nocapture` to see them).

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use stylo_core::synth::{generate_corpus, CorpusProfile, SplitRole};
use stylo_core::*;

fn exact(actual: f64, expected: f64, context: &str) {
    assert!(
        (actual - expected).abs() < 1e-12,
        "{context}: {actual} != {expected}"
    );
}

fn matrix(labels: [&str; 3], rows: [[u64; 3]; 3]) -> ConfusionMatrix {
    ConfusionMatrix {
        labels: labels.iter().map(|l| l.to_string()).collect(),
        counts: rows.iter().map(|r| r.to_vec()).collect(),
    }
}

/// Criterion 1: the published confusion matrices reproduce their row errors
/// and average errors through compute_report, with the rendered two-decimal
/// display within 0.005 of the stored value.
#[test]
fn criterion_1_table_arithmetic() {
    let labels = ["R", "A", "O"];

    // baseline table
    let baseline = compute_report(
        matrix(labels, [[6, 0, 4], [7, 2, 1], [5, 2, 3]]),
        "baseline",
    )
    .unwrap();
    exact(baseline.row_errors[0], 0.40, "baseline row R");
    exact(baseline.row_errors[1], 0.80, "baseline row A");
    exact(baseline.row_errors[2], 0.70, "baseline row O");
    exact(baseline.average_error, 1.9 / 3.0, "baseline average");
    assert!((baseline.average_error - 0.6333).abs() < 0.005);
    let rendered = render_report(&[baseline]);
    assert!(rendered.contains("Average error\t0.63"), "{rendered}");

    // cosine and chi-square tables: both average to 0.4667
    let cosine =
        compute_report(matrix(labels, [[5, 2, 3], [3, 6, 1], [4, 1, 5]]), "cosine").unwrap();
    exact(cosine.average_error, 1.4 / 3.0, "cosine average");
    assert!((cosine.average_error - 0.4667).abs() < 0.005);
    let chi = compute_report(
        matrix(labels, [[7, 3, 0], [5, 4, 1], [4, 1, 5]]),
        "chi_square",
    )
    .unwrap();
    exact(chi.row_errors[0], 0.3, "chi row R");
    exact(chi.row_errors[1], 0.6, "chi row A");
    exact(chi.row_errors[2], 0.5, "chi row O");
    exact(chi.average_error, 1.4 / 3.0, "chi average");

    // euclidean table averages to exactly 0.5
    let euclidean = compute_report(
        matrix(labels, [[6, 2, 2], [4, 4, 2], [3, 2, 5]]),
        "euclidean",
    )
    .unwrap();
    exact(euclidean.average_error, 0.5, "euclidean average");

    // combined voting table
    let voting =
        compute_report(matrix(labels, [[8, 2, 0], [4, 5, 1], [2, 2, 6]]), "voting").unwrap();
    exact(voting.row_errors[0], 0.2, "voting row R");
    exact(voting.row_errors[1], 0.5, "voting row A");
    exact(voting.row_errors[2], 0.4, "voting row O");
    exact(voting.average_error, 1.1 / 3.0, "voting average");
    assert!((voting.average_error - 0.3667).abs() < 0.005);
    let rendered = render_report(&[voting]);
    assert!(rendered.contains("Average error\t0.37"), "{rendered}");

    println!("PASS criterion 1: table arithmetic reproduction");
}

/// Criterion 2: the three measures match brute-force recomputation on 1,000
/// random 76-dimensional pairs to 1e-12 relative error; cosine stays in
/// [-1, 1]; the chi-square asymmetry witness holds exactly.
#[test]
#[allow(clippy::needless_range_loop)] // the oracle is deliberately index-based
fn criterion_2_measure_oracles() {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let relative = |a: f64, b: f64| (a - b).abs() / b.abs().max(1.0);

    for round in 0..1000 {
        let signed = round % 2 == 1;
        let sample = |rng: &mut ChaCha8Rng| -> Vec<f64> {
            (0..FEATURE_COUNT)
                .map(|_| {
                    if rng.random::<f64>() < 0.1 {
                        0.0
                    } else if signed {
                        rng.random_range(-100.0..100.0)
                    } else {
                        rng.random_range(0.0..100.0)
                    }
                })
                .collect()
        };
        let r = sample(&mut rng);
        let t = sample(&mut rng);

        // independent recomputations, index loop by index loop
        let mut dot = 0.0;
        for i in 0..FEATURE_COUNT {
            dot += r[i] * t[i];
        }
        let mut norm_r = 0.0;
        for i in 0..FEATURE_COUNT {
            norm_r += r[i] * r[i];
        }
        let mut norm_t = 0.0;
        for i in 0..FEATURE_COUNT {
            norm_t += t[i] * t[i];
        }
        let cosine_oracle = if norm_r == 0.0 || norm_t == 0.0 {
            0.0
        } else {
            dot / (norm_r.sqrt() * norm_t.sqrt())
        };
        let cosine = cosine_similarity(&r, &t).unwrap();
        assert!(relative(cosine, cosine_oracle) < 1e-12);
        assert!((-1.0 - 1e-9..=1.0 + 1e-9).contains(&cosine));

        let mut chi_oracle = 0.0;
        for i in 0..FEATURE_COUNT {
            let (o, e) = (r[i], t[i]);
            if e == 0.0 {
                if o != 0.0 {
                    chi_oracle += o * o / 1e-9;
                }
            } else {
                chi_oracle += (o - e) * (o - e) / e;
            }
        }
        assert!(relative(chi_square(&r, &t).unwrap(), chi_oracle) < 1e-12);

        let mut sum = 0.0;
        for i in 0..FEATURE_COUNT {
            sum += (r[i] - t[i]) * (r[i] - t[i]);
        }
        assert!(relative(euclidean_distance(&r, &t).unwrap(), sum.sqrt()) < 1e-12);
    }

    // asymmetry witness, exact
    assert_eq!(chi_square(&[10.0, 10.0], &[5.0, 20.0]).unwrap(), 10.0);
    assert_eq!(chi_square(&[5.0, 20.0], &[10.0, 10.0]).unwrap(), 12.5);

    println!("PASS criterion 2: measure oracles on 1000 random pairs");
}

/// Criterion 3: on 200+ seeded synthetic documents, the distribution blocks
/// sum to 100, doubling leaves F1-F31 unchanged and zeroes F76, and
/// extraction is invariant under sentence permutation.
#[test]
fn criterion_3_feature_invariants() {
    let schema = FeatureSchema::bundled();
    let mut profile = CorpusProfile::bundled();
    for cluster in &mut profile.clusters {
        cluster.train_documents = 57;
        cluster.test_documents = 10;
    }
    let corpus = generate_corpus(&profile, &schema, 3030).unwrap();
    assert!(corpus.documents.len() >= 200);
    let lexicon = Lexicon::from_words(corpus.lexicon.iter());

    for (index, doc) in corpus.documents.iter().enumerate() {
        let parsed = parse_annotated(&doc.content, &schema).unwrap();
        let vector = extract_all(&parsed, &schema, &lexicon).unwrap();

        // distribution blocks
        for (range, name) in [(0..10, "F1-F10"), (10..20, "F11-F20"), (31..40, "F32-F40")] {
            let sum: f64 = vector.values[range].iter().sum();
            assert!(
                (sum - 100.0).abs() < 1e-6,
                "{}: {name} sums to {sum}",
                doc.file_name
            );
        }

        // doubling: concatenating the document with itself
        let doubled_text = format!("{}\n{}", doc.content, doc.content);
        let doubled = parse_annotated(&doubled_text, &schema).unwrap();
        assert_eq!(doubled.sentences.len(), parsed.sentences.len() * 2);
        let doubled_vector = extract_all(&doubled, &schema, &lexicon).unwrap();
        for i in 0..31 {
            assert!(
                (doubled_vector.values[i] - vector.values[i]).abs() < 1e-9,
                "{}: F{} changed under doubling",
                doc.file_name,
                i + 1
            );
        }
        assert_eq!(doubled_vector.values[75], 0.0, "F76 must collapse");

        // sentence permutation: reverse, and rotate by a document-dependent
        // offset; dialog spans are recomputed over the permuted order
        let mut reversed = parsed.clone();
        reversed.sentences.reverse();
        let reversed = parse_annotated(&serialize_annotated(&reversed), &schema).unwrap();
        let reversed_vector = extract_all(&reversed, &schema, &lexicon).unwrap();
        assert_eq!(reversed_vector.values, vector.values);

        let mut rotated = parsed.clone();
        let by = index % rotated.sentences.len().max(1);
        rotated.sentences.rotate_left(by);
        let rotated = parse_annotated(&serialize_annotated(&rotated), &schema).unwrap();
        let rotated_vector = extract_all(&rotated, &schema, &lexicon).unwrap();
        assert_eq!(rotated_vector.values, vector.values);
    }

    println!(
        "PASS criterion 3: feature invariants on {} synthetic documents",
        corpus.documents.len()
    );
}

/// Criterion 4: the extractor reproduces the generator's ground-truth
/// ledger on the default seeded corpus within 1e-9 per marker.
#[test]
fn criterion_4_generator_ledger_equivalence() {
    let schema = FeatureSchema::bundled();
    let corpus = generate_corpus(&CorpusProfile::bundled(), &schema, 42).unwrap();
    let lexicon = Lexicon::from_words(corpus.lexicon.iter());

    for doc in &corpus.documents {
        let parsed = parse_annotated(&doc.content, &schema).unwrap();
        let vector = extract_all(&parsed, &schema, &lexicon).unwrap();
        assert_eq!(vector.values.len(), doc.expected.len());
        for (i, (got, want)) in vector.values.iter().zip(doc.expected.iter()).enumerate() {
            assert!(
                (got - want).abs() < 1e-9,
                "{} F{}: extracted {got}, ledger {want}",
                doc.file_name,
                i + 1
            );
        }
    }

    println!(
        "PASS criterion 4: generator-ledger equivalence on {} documents",
        corpus.documents.len()
    );
}

/// Criterion 5: on the default well-separated corpus (20 train + 10 test
/// per cluster), combined voting reaches at least 0.90 accuracy and every
/// single measure at least 0.80.
#[test]
fn criterion_5_end_to_end_separability() {
    let schema = FeatureSchema::bundled();
    let corpus = generate_corpus(&CorpusProfile::bundled(), &schema, 42).unwrap();
    let lexicon = Lexicon::from_words(corpus.lexicon.iter());

    let mut train = Vec::new();
    let mut test = Vec::new();
    for doc in &corpus.documents {
        let parsed = parse_annotated(&doc.content, &schema).unwrap();
        let vector = extract_all(&parsed, &schema, &lexicon).unwrap();
        match doc.role {
            SplitRole::Train => train.push((vector, doc.label.clone())),
            SplitRole::Test => test.push((vector, doc.label.clone())),
        }
    }
    assert_eq!(train.len(), 60);
    assert_eq!(test.len(), 30);

    let model = build_references(&train).unwrap();
    let mut measure_hits = [0usize; 3];
    let mut vote_hits = 0usize;
    for (vector, label) in &test {
        let vote = classify_vote(&model, vector).unwrap();
        for (i, verdict) in vote.verdicts.iter().enumerate() {
            if verdict.chosen_label == *label {
                measure_hits[i] += 1;
            }
        }
        if vote.final_label == *label {
            vote_hits += 1;
        }
    }

    let n = test.len() as f64;
    let accuracies: Vec<f64> = measure_hits.iter().map(|&h| h as f64 / n).collect();
    let vote_accuracy = vote_hits as f64 / n;
    for (measure, accuracy) in Measure::ALL.iter().zip(accuracies.iter()) {
        assert!(*accuracy >= 0.80, "{measure} accuracy {accuracy}");
    }
    assert!(vote_accuracy >= 0.90, "voting accuracy {vote_accuracy}");
    // voting must not trail chi-square by more than 0.1
    assert!(vote_accuracy >= accuracies[1] - 0.1);

    println!(
        "PASS criterion 5: separability (cosine {:.2}, chi_square {:.2}, euclidean {:.2}, voting {:.2})",
        accuracies[0], accuracies[1], accuracies[2], vote_accuracy
    );
}

/// Criterion 6: over all 27 verdict triples from 3 labels, the final label
/// is the majority when one exists and the chi-square verdict otherwise,
/// with decided_by tagged accordingly.
#[test]
fn criterion_6_voting_contract() {
    let labels = ["A", "B", "C"];
    let mut majority_cases = 0;
    let mut tiebreak_cases = 0;

    for cosine in 0..3 {
        for chi in 0..3 {
            for euclidean in 0..3 {
                let verdicts = [
                    Verdict {
                        measure: Measure::Cosine,
                        chosen_label: labels[cosine].to_string(),
                        scores: Vec::new(),
                    },
                    Verdict {
                        measure: Measure::ChiSquare,
                        chosen_label: labels[chi].to_string(),
                        scores: Vec::new(),
                    },
                    Verdict {
                        measure: Measure::Euclidean,
                        chosen_label: labels[euclidean].to_string(),
                        scores: Vec::new(),
                    },
                ];
                let (final_label, decided_by) = combine_verdicts(&verdicts);

                // oracle: count votes per label
                let mut counts = [0usize; 3];
                counts[cosine] += 1;
                counts[chi] += 1;
                counts[euclidean] += 1;
                let majority = (0..3).find(|&i| counts[i] >= 2);
                match majority {
                    Some(winner) => {
                        assert_eq!(final_label, labels[winner]);
                        assert_eq!(decided_by, DecidedBy::Majority);
                        majority_cases += 1;
                    }
                    None => {
                        assert_eq!(final_label, labels[chi]);
                        assert_eq!(decided_by, DecidedBy::ChiSquareTiebreak);
                        tiebreak_cases += 1;
                    }
                }
                // the final label is always one of the three verdict labels
                assert!(verdicts.iter().any(|v| v.chosen_label == final_label));
            }
        }
    }
    assert_eq!(majority_cases + tiebreak_cases, 27);
    assert_eq!(tiebreak_cases, 6); // the 3! all-distinct assignments

    println!("PASS criterion 6: voting contract over all 27 triples");
}

/// Criterion 7: the baseline matches an exhaustive distance-scan oracle on
/// 100 random profiles, and sits at chance level when every cluster shares
/// the same type-token-ratio distribution.
#[test]
fn criterion_7_baseline_contract() {
    let mut rng = ChaCha8Rng::seed_from_u64(7007);

    let model = BaselineModel {
        clusters: vec![
            BaselineCluster {
                label: "R".into(),
                mean_ttr: 0.35,
            },
            BaselineCluster {
                label: "A".into(),
                mean_ttr: 0.55,
            },
            BaselineCluster {
                label: "O".into(),
                mean_ttr: 0.80,
            },
        ],
    };
    for _ in 0..100 {
        let token_count = rng.random_range(1..=500);
        let vocabulary_size = rng.random_range(1..=token_count);
        let profile = LexicalProfile {
            vocabulary_size,
            token_count,
            hapax_count: rng.random_range(0..=vocabulary_size),
        };
        let chosen = baseline_classify(&model, &profile).unwrap();

        // oracle: exhaustive |delta| scan with first-cluster tie break
        let ttr = profile.type_token_ratio();
        let mut best = 0;
        for i in 1..model.clusters.len() {
            if (ttr - model.clusters[i].mean_ttr).abs()
                < (ttr - model.clusters[best].mean_ttr).abs()
            {
                best = i;
            }
        }
        assert_eq!(chosen, model.clusters[best].label);
    }

    // chance level: identical TTR distribution in all clusters
    let labels = ["R", "A", "O"];
    let sample_profile = |rng: &mut ChaCha8Rng| LexicalProfile {
        vocabulary_size: rng.random_range(80..=120),
        token_count: 200,
        hapax_count: 0,
    };
    let mut training = Vec::new();
    for label in labels {
        for _ in 0..20 {
            training.push((sample_profile(&mut rng), label.to_string()));
        }
    }
    let chance_model = build_baseline(&training).unwrap();
    let mut hits = 0usize;
    let total = 300usize;
    for i in 0..total {
        let truth = labels[i % 3];
        let profile = sample_profile(&mut rng);
        if baseline_classify(&chance_model, &profile).unwrap() == truth {
            hits += 1;
        }
    }
    let accuracy = hits as f64 / total as f64;
    assert!(
        (accuracy - 1.0 / 3.0).abs() <= 0.15,
        "chance-level accuracy {accuracy}"
    );

    println!("PASS criterion 7: baseline contract (chance level {accuracy:.3})");
}

/// Criterion 8: model files survive write -> read -> write byte-identically,
/// annotated documents survive parse -> serialize -> parse, and the
/// generator is byte-deterministic for a fixed seed.
#[test]
fn criterion_8_determinism_and_round_trips() {
    let schema = FeatureSchema::bundled();
    let profile = CorpusProfile::bundled();
    let corpus = generate_corpus(&profile, &schema, 777).unwrap();
    let lexicon = Lexicon::from_words(corpus.lexicon.iter());

    // reference model file round trip on a real trained model
    let train: Vec<(FeatureVector, String)> = corpus
        .documents
        .iter()
        .filter(|d| d.role == SplitRole::Train)
        .map(|d| {
            let parsed = parse_annotated(&d.content, &schema).unwrap();
            (
                extract_all(&parsed, &schema, &lexicon).unwrap(),
                d.label.clone(),
            )
        })
        .collect();
    let model = build_references(&train).unwrap();
    let written = classify::write_reference_model(&model);
    let reread = classify::read_reference_model(&written).unwrap();
    assert_eq!(classify::write_reference_model(&reread), written);

    // baseline file round trip
    let baseline_train: Vec<(LexicalProfile, String)> = corpus
        .documents
        .iter()
        .filter(|d| d.role == SplitRole::Train)
        .map(|d| {
            let parsed = parse_annotated(&d.content, &schema).unwrap();
            (lexical_profile(&parsed), d.label.clone())
        })
        .collect();
    let baseline = build_baseline(&baseline_train).unwrap();
    let written = classify::write_baseline_model(&baseline);
    let reread = classify::read_baseline_model(&written).unwrap();
    assert_eq!(classify::write_baseline_model(&reread), written);

    // annotated parse -> serialize -> parse identity
    for doc in &corpus.documents {
        let parsed = parse_annotated(&doc.content, &schema).unwrap();
        let reparsed = parse_annotated(&serialize_annotated(&parsed), &schema).unwrap();
        assert_eq!(parsed, reparsed, "{}", doc.file_name);
    }

    // same-seed generation is byte-identical across runs
    let again = generate_corpus(&profile, &schema, 777).unwrap();
    assert_eq!(corpus.ledger(), again.ledger());
    assert_eq!(corpus.manifest(), again.manifest());
    assert_eq!(corpus.train_manifest(), again.train_manifest());
    assert_eq!(corpus.test_manifest(), again.test_manifest());
    assert_eq!(corpus.lexicon_file(), again.lexicon_file());
    for (a, b) in corpus.documents.iter().zip(again.documents.iter()) {
        assert_eq!(a.file_name, b.file_name);
        assert_eq!(a.content, b.content);
    }
    // and a different seed produces different text
    let other = generate_corpus(&profile, &schema, 778).unwrap();
    assert_ne!(corpus.documents[0].content, other.documents[0].content);

    println!("PASS criterion 8: determinism and round trips");
}
