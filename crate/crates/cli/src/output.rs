use serde::Serialize;

use crate::config::Format;
use crate::CliError;

/// `text` as is, `record` as pretty JSON, or `rows` as CSV with a header.
pub fn render<T: Serialize, R: Serialize>(format: Format, text: String, record: &T, rows: &[R]) -> Result<String, CliError> {
    match format {
        Format::Text => Ok(text),
        Format::Json => {
            let mut s = serde_json::to_string_pretty(record).map_err(|e| CliError::Output(e.to_string()))?;
            s.push('\n');
            Ok(s)
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            for r in rows {
                w.serialize(r).map_err(|e| CliError::Output(e.to_string()))?;
            }
            let bytes = w.into_inner().map_err(|e| CliError::Output(e.to_string()))?;
            String::from_utf8(bytes).map_err(|e| CliError::Output(e.to_string()))
        }
    }
}
