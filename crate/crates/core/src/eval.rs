//! Confusion matrices and evaluation reports.
//!
//! A report carries one error rate per true label (1 - diagonal/row sum),
//! their unweighted mean as the average error, and overall accuracy
//! (trace/total). Values are stored at full precision and displayed at two
//! decimals.

use crate::error::{Error, Result};
use crate::text::format_significant;

/// Square count matrix over cluster labels; `counts[i][j]` is the number of
/// documents of true label `i` predicted as label `j`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConfusionMatrix {
    pub labels: Vec<String>,
    pub counts: Vec<Vec<u64>>,
}

impl ConfusionMatrix {
    pub fn row_sum(&self, row: usize) -> u64 {
        self.counts[row].iter().sum()
    }

    pub fn total(&self) -> u64 {
        self.counts.iter().flatten().sum()
    }

    pub fn trace(&self) -> u64 {
        (0..self.labels.len()).map(|i| self.counts[i][i]).sum()
    }
}

/// Per-label error rates, their mean, and accuracy for one measure.
#[derive(Debug, Clone, PartialEq)]
pub struct EvaluationReport {
    pub matrix: ConfusionMatrix,
    pub row_errors: Vec<f64>,
    pub average_error: f64,
    pub accuracy: f64,
    pub measure_name: String,
}

/// Tally (true, predicted) pairs into a matrix over `labels`, preserving
/// label order.
pub fn build_confusion_matrix(
    pairs: &[(String, String)],
    labels: &[String],
) -> Result<ConfusionMatrix> {
    for (i, label) in labels.iter().enumerate() {
        if labels[..i].contains(label) {
            return Err(Error::validation(format!("duplicate label '{label}'")));
        }
    }
    let index_of = |label: &str| -> Result<usize> {
        labels
            .iter()
            .position(|l| l == label)
            .ok_or_else(|| Error::validation(format!("unknown label '{label}'")))
    };

    let k = labels.len();
    let mut counts = vec![vec![0u64; k]; k];
    for (truth, predicted) in pairs {
        counts[index_of(truth)?][index_of(predicted)?] += 1;
    }
    Ok(ConfusionMatrix {
        labels: labels.to_vec(),
        counts,
    })
}

/// Derive error rates and accuracy. Every true label must have at least one
/// test document.
pub fn compute_report(matrix: ConfusionMatrix, measure_name: &str) -> Result<EvaluationReport> {
    let mut row_errors = Vec::with_capacity(matrix.labels.len());
    for (i, label) in matrix.labels.iter().enumerate() {
        let row_sum = matrix.row_sum(i);
        if row_sum == 0 {
            return Err(Error::validation(format!(
                "label '{label}' has no test documents"
            )));
        }
        row_errors.push(1.0 - matrix.counts[i][i] as f64 / row_sum as f64);
    }
    let average_error = row_errors.iter().sum::<f64>() / row_errors.len() as f64;
    let accuracy = matrix.trace() as f64 / matrix.total() as f64;
    Ok(EvaluationReport {
        matrix,
        row_errors,
        average_error,
        accuracy,
        measure_name: measure_name.to_string(),
    })
}

/// Render reports as plain-text tables, one per report in input order.
pub fn render_report(reports: &[EvaluationReport]) -> String {
    let mut out = String::new();
    for (i, report) in reports.iter().enumerate() {
        if i > 0 {
            out.push('\n');
        }
        out.push_str(&format!("Confusion matrix ({})\n", report.measure_name));
        out.push('\t');
        out.push_str(&report.matrix.labels.join("\t"));
        out.push_str("\te\n");
        for (row, label) in report.matrix.labels.iter().enumerate() {
            out.push_str(label);
            for count in &report.matrix.counts[row] {
                out.push_str(&format!("\t{count}"));
            }
            out.push_str(&format!("\t{:.2}\n", report.row_errors[row]));
        }
        out.push_str(&format!("Average error\t{:.2}\n", report.average_error));
        out.push_str(&format!("Accuracy\t{:.2}\n", report.accuracy));
    }
    out
}

/// Render reports as TSV blocks for machine consumption; error values keep
/// 9 significant digits.
pub fn render_report_tsv(reports: &[EvaluationReport]) -> String {
    let mut out = String::new();
    for (i, report) in reports.iter().enumerate() {
        if i > 0 {
            out.push('\n');
        }
        out.push_str(&format!("measure\t{}\n", report.measure_name));
        out.push_str("label\t");
        out.push_str(&report.matrix.labels.join("\t"));
        out.push_str("\te\n");
        for (row, label) in report.matrix.labels.iter().enumerate() {
            out.push_str(label);
            for count in &report.matrix.counts[row] {
                out.push_str(&format!("\t{count}"));
            }
            out.push('\t');
            out.push_str(&format_significant(report.row_errors[row], 9));
            out.push('\n');
        }
        out.push_str(&format!(
            "average_error\t{}\n",
            format_significant(report.average_error, 9)
        ));
    }
    out
}
