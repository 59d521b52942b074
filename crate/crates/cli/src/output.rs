//! CSV and JSON rendering.

use serde::Serialize;
use serde_json::{json, Value};

use crate::commands::{CliError, Outcome};
use crate::config::RunConfig;

/// Serializes rows under a single header line, LF-terminated.
pub fn csv_bytes<R: Serialize>(rows: impl IntoIterator<Item = R>) -> Result<Vec<u8>, CliError> {
    let mut wtr = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(Vec::new());
    for row in rows {
        wtr.serialize(row).map_err(|e| CliError::Runtime(e.to_string()))?;
    }
    wtr.into_inner().map_err(|e| CliError::Runtime(e.to_string()))
}

/// The JSON document: tool, config echo, run metadata and the data itself.
pub fn json_document(config: &RunConfig, outcome: &Outcome, wall_time: Option<f64>) -> Vec<u8> {
    let mut metadata = outcome.metadata.clone();
    if let Some(t) = wall_time {
        metadata.insert("wall_time_s".into(), json!(t));
    }
    let doc = json!({
        "tool": "ptchain",
        "version": env!("CARGO_PKG_VERSION"),
        "config": config,
        "metadata": Value::Object(metadata),
        "data": outcome.data,
    });
    let mut bytes = serde_json::to_vec_pretty(&doc).expect("serializable");
    bytes.push(b'\n');
    bytes
}
