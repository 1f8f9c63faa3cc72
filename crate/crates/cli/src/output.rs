use serde::Serialize;
use serde_json::{json, Value};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
}

/// `{"schema": 1, "command": ..., "input": ..., "result": ...}`
pub fn envelope<T: Serialize>(command: &str, input: Value, result: &T) -> anyhow::Result<String> {
    let doc = json!({
        "schema": SCHEMA_VERSION,
        "command": command,
        "input": input,
        "result": serde_json::to_value(result)?,
    });
    Ok(serde_json::to_string_pretty(&doc)?)
}

/// Superscript digits for exponents in text output.
pub fn superscript(n: u64) -> String {
    const DIGITS: [char; 10] = ['⁰', '¹', '²', '³', '⁴', '⁵', '⁶', '⁷', '⁸', '⁹'];
    n.to_string()
        .bytes()
        .map(|b| DIGITS[(b - b'0') as usize])
        .collect()
}
