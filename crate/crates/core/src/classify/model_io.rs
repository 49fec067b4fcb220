//! Model file formats.
//!
//! Reference model ("stylo-model v1"):
//!
//! ```text
//! stylo-model<TAB>v1
//! schema_hash<TAB><hex>
//! dimension<TAB>76
//! cluster<TAB><label><TAB><count><TAB><f1>,<f2>,...,<f76>
//! ```
//!
//! Baseline model ("stylo-baseline v1"):
//!
//! ```text
//! stylo-baseline<TAB>v1
//! cluster<TAB><label><TAB><mean_ttr>
//! ```
//!
//! Values are written with 12 significant digits, a precision that survives
//! write -> read -> write byte-identically.

use std::path::Path;

use super::{BaselineCluster, BaselineModel, ClusterReference, ReferenceModel};
use crate::error::{Error, Result};
use crate::schema::FEATURE_COUNT;
use crate::text::format_significant;

const MODEL_MAGIC: &str = "stylo-model\tv1";
const BASELINE_MAGIC: &str = "stylo-baseline\tv1";

pub fn write_reference_model(model: &ReferenceModel) -> String {
    let mut out = String::new();
    out.push_str(MODEL_MAGIC);
    out.push('\n');
    out.push_str(&format!("schema_hash\t{}\n", model.schema_hash));
    out.push_str(&format!("dimension\t{}\n", model.dimension));
    for cluster in &model.clusters {
        let components: Vec<String> = cluster
            .centroid
            .iter()
            .map(|&v| format_significant(v, 12))
            .collect();
        out.push_str(&format!(
            "cluster\t{}\t{}\t{}\n",
            cluster.label,
            cluster.training_count,
            components.join(",")
        ));
    }
    out
}

pub fn read_reference_model(text: &str) -> Result<ReferenceModel> {
    let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l));

    let (line_no, magic) = lines
        .next()
        .ok_or_else(|| Error::parse(1, "empty model file"))?;
    if magic != MODEL_MAGIC {
        return Err(Error::parse(
            line_no,
            "not a stylo-model v1 file (bad magic line)",
        ));
    }

    let schema_hash = expect_field(lines.next(), "schema_hash")?;
    let dimension: usize = expect_field(lines.next(), "dimension")?
        .parse()
        .map_err(|_| Error::parse(3, "dimension is not an integer"))?;
    if dimension != FEATURE_COUNT {
        return Err(Error::parse(
            3,
            format!("unsupported dimension {dimension}, expected {FEATURE_COUNT}"),
        ));
    }

    let mut clusters = Vec::new();
    for (line_no, line) in lines {
        if line.is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split('\t').collect();
        if fields.len() != 4 || fields[0] != "cluster" {
            return Err(Error::parse(
                line_no,
                "expected 'cluster\t<label>\t<count>\t<components>'",
            ));
        }
        let label = fields[1].to_string();
        if label.is_empty() {
            return Err(Error::parse(line_no, "empty cluster label"));
        }
        if clusters.iter().any(|c: &ClusterReference| c.label == label) {
            return Err(Error::parse(
                line_no,
                format!("duplicate cluster label '{label}'"),
            ));
        }
        let training_count: usize = fields[2]
            .parse()
            .map_err(|_| Error::parse(line_no, "training count is not an integer"))?;
        if training_count == 0 {
            return Err(Error::parse(line_no, "training count must be at least 1"));
        }
        let centroid = fields[3]
            .split(',')
            .map(|c| {
                c.parse::<f64>()
                    .ok()
                    .filter(|v| v.is_finite())
                    .ok_or_else(|| Error::parse(line_no, format!("bad centroid component '{c}'")))
            })
            .collect::<Result<Vec<f64>>>()?;
        if centroid.len() != dimension {
            return Err(Error::parse(
                line_no,
                format!(
                    "centroid has {} components, expected {dimension}",
                    centroid.len()
                ),
            ));
        }
        clusters.push(ClusterReference {
            label,
            centroid,
            training_count,
        });
    }
    if clusters.len() < 2 {
        return Err(Error::validation(format!(
            "model must have at least 2 clusters, found {}",
            clusters.len()
        )));
    }

    Ok(ReferenceModel {
        clusters,
        schema_hash,
        dimension,
    })
}

pub fn write_baseline_model(model: &BaselineModel) -> String {
    let mut out = String::new();
    out.push_str(BASELINE_MAGIC);
    out.push('\n');
    for cluster in &model.clusters {
        out.push_str(&format!(
            "cluster\t{}\t{}\n",
            cluster.label,
            format_significant(cluster.mean_ttr, 12)
        ));
    }
    out
}

pub fn read_baseline_model(text: &str) -> Result<BaselineModel> {
    let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l));
    let (line_no, magic) = lines
        .next()
        .ok_or_else(|| Error::parse(1, "empty baseline file"))?;
    if magic != BASELINE_MAGIC {
        return Err(Error::parse(
            line_no,
            "not a stylo-baseline v1 file (bad magic line)",
        ));
    }

    let mut clusters = Vec::new();
    for (line_no, line) in lines {
        if line.is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split('\t').collect();
        if fields.len() != 3 || fields[0] != "cluster" {
            return Err(Error::parse(
                line_no,
                "expected 'cluster\t<label>\t<mean_ttr>'",
            ));
        }
        let label = fields[1].to_string();
        if clusters.iter().any(|c: &BaselineCluster| c.label == label) {
            return Err(Error::parse(
                line_no,
                format!("duplicate cluster label '{label}'"),
            ));
        }
        let mean_ttr: f64 = fields[2]
            .parse()
            .map_err(|_| Error::parse(line_no, "mean_ttr is not a number"))?;
        if !mean_ttr.is_finite() {
            return Err(Error::parse(line_no, "mean_ttr must be finite"));
        }
        clusters.push(BaselineCluster { label, mean_ttr });
    }
    if clusters.is_empty() {
        return Err(Error::validation("baseline model has no clusters"));
    }
    Ok(BaselineModel { clusters })
}

pub fn save_reference_model(model: &ReferenceModel, path: &Path) -> Result<()> {
    std::fs::write(path, write_reference_model(model)).map_err(|e| Error::io(path, e))
}

pub fn load_reference_model(path: &Path) -> Result<ReferenceModel> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    read_reference_model(&text).map_err(|e| Error::in_file(path, e))
}

pub fn save_baseline_model(model: &BaselineModel, path: &Path) -> Result<()> {
    std::fs::write(path, write_baseline_model(model)).map_err(|e| Error::io(path, e))
}

pub fn load_baseline_model(path: &Path) -> Result<BaselineModel> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    read_baseline_model(&text).map_err(|e| Error::in_file(path, e))
}

fn expect_field(line: Option<(usize, &str)>, key: &str) -> Result<String> {
    let (line_no, line) = line.ok_or_else(|| Error::parse(0, format!("missing {key} line")))?;
    match line.split_once('\t') {
        Some((k, v)) if k == key => Ok(v.to_string()),
        _ => Err(Error::parse(line_no, format!("expected '{key}\t<value>'"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample_model() -> ReferenceModel {
        ReferenceModel {
            clusters: vec![
                ClusterReference {
                    label: "R".into(),
                    centroid: (0..FEATURE_COUNT).map(|i| i as f64 / 3.0).collect(),
                    training_count: 20,
                },
                ClusterReference {
                    label: "A".into(),
                    centroid: (0..FEATURE_COUNT).map(|i| 100.0 - i as f64 / 7.0).collect(),
                    training_count: 20,
                },
            ],
            schema_hash: "00ff00ff00ff00ff".into(),
            dimension: FEATURE_COUNT,
        }
    }

    #[test]
    fn model_write_read_write_is_byte_identical() {
        let first = write_reference_model(&sample_model());
        let reread = read_reference_model(&first).unwrap();
        let second = write_reference_model(&reread);
        assert_eq!(first, second);
    }

    #[test]
    fn model_header_fields_round_trip() {
        let text = write_reference_model(&sample_model());
        assert!(text.starts_with("stylo-model\tv1\nschema_hash\t00ff00ff00ff00ff\ndimension\t76\n"));
        let model = read_reference_model(&text).unwrap();
        assert_eq!(model.schema_hash, "00ff00ff00ff00ff");
        assert_eq!(model.dimension, FEATURE_COUNT);
        assert_eq!(model.clusters.len(), 2);
        assert_eq!(model.clusters[1].training_count, 20);
    }

    #[test]
    fn malformed_models_are_rejected() {
        assert!(read_reference_model("").is_err());
        assert!(read_reference_model("stylo-model\tv2\n").is_err());
        let text = write_reference_model(&sample_model());
        let truncated: String = text.lines().take(3).map(|l| format!("{l}\n")).collect();
        assert!(read_reference_model(&truncated).is_err());
        let bad_count = text.replace("cluster\tR\t20", "cluster\tR\tx");
        assert!(read_reference_model(&bad_count).is_err());
        let bad_component = text.replace("0.333333333333", "zebra");
        assert!(read_reference_model(&bad_component).is_err());
    }

    #[test]
    fn baseline_write_read_write_is_byte_identical() {
        let model = BaselineModel {
            clusters: vec![
                BaselineCluster {
                    label: "R".into(),
                    mean_ttr: 1.0 / 3.0,
                },
                BaselineCluster {
                    label: "A".into(),
                    mean_ttr: 0.9,
                },
            ],
        };
        let first = write_baseline_model(&model);
        assert!(first.starts_with("stylo-baseline\tv1\n"));
        let reread = read_baseline_model(&first).unwrap();
        let second = write_baseline_model(&reread);
        assert_eq!(first, second);
        assert!((reread.clusters[0].mean_ttr - 1.0 / 3.0).abs() < 1e-11);
    }

    #[test]
    fn baseline_rejects_garbage() {
        assert!(read_baseline_model("nope\n").is_err());
        assert!(read_baseline_model("stylo-baseline\tv1\ncluster\tR\tNaN\n").is_err());
        assert!(read_baseline_model("stylo-baseline\tv1\n").is_err());
    }
}
