use std::io::{self, Write};

use serde::Serialize;

/// One excluded candidate.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AuditRecord {
    pub candidate: serde_json::Value,
    pub stage_rejected: String,
    pub reason: String,
    pub numbers: serde_json::Value,
}

impl AuditRecord {
    pub fn new(
        candidate: serde_json::Value,
        stage: &str,
        reason: impl Into<String>,
        numbers: serde_json::Value,
    ) -> Self {
        AuditRecord {
            candidate,
            stage_rejected: stage.to_string(),
            reason: reason.into(),
            numbers,
        }
    }
}

/// Writes records as line-delimited JSON.
pub fn write_audit<W: Write>(mut w: W, records: &[AuditRecord]) -> io::Result<()> {
    for r in records {
        serde_json::to_writer(&mut w, r)?;
        w.write_all(b"\n")?;
    }
    Ok(())
}
