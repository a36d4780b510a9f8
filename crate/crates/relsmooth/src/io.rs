//! JSON reading and writing with precise error locations.

use std::fs;
use std::io::Read;
use std::path::Path;

use relsmooth_core::graph::SCHEMA_VERSION;
use relsmooth_core::DualMapGraph;
use serde::de::DeserializeOwned;
use serde::Serialize;
use serde_json::error::Category;

#[derive(Debug, thiserror::Error)]
pub enum FormatError {
    #[error("malformed JSON at byte {offset} (line {line}, column {column}): {message}")]
    Syntax { offset: usize, line: usize, column: usize, message: String },
    #[error("invalid document at `{path}`: {message}")]
    Schema { path: String, message: String },
    #[error("unsupported schema version {0}")]
    Version(u32),
    #[error("cannot read {name}: {source}")]
    Io {
        name: String,
        #[source]
        source: std::io::Error,
    },
}

/// Byte offset of a 1-based line and column.
fn byte_offset(bytes: &[u8], line: usize, column: usize) -> usize {
    let line_start: usize = bytes
        .split_inclusive(|&b| b == b'\n')
        .take(line.saturating_sub(1))
        .map(<[u8]>::len)
        .sum();
    (line_start + column.saturating_sub(1)).min(bytes.len())
}

pub fn from_json<T: DeserializeOwned>(bytes: &[u8]) -> Result<T, FormatError> {
    let de = &mut serde_json::Deserializer::from_slice(bytes);
    let result: Result<T, _> = serde_path_to_error::deserialize(de);
    let err = match result {
        Ok(v) => return Ok(v),
        Err(err) => err,
    };
    let path = err.path().to_string();
    let inner = err.into_inner();
    match inner.classify() {
        Category::Data => {
            let message = strip_position(&inner.to_string());
            // Missing fields are reported at their parent; point at the field itself.
            let path = match message.strip_prefix("missing field `").and_then(|m| m.split('`').next()) {
                Some(field) if path == "." => field.to_string(),
                Some(field) => format!("{path}.{field}"),
                None => path,
            };
            Err(FormatError::Schema { path, message })
        }
        _ => {
            let (line, column) = (inner.line(), inner.column());
            Err(FormatError::Syntax {
                offset: byte_offset(bytes, line, column),
                line,
                column,
                message: strip_position(&inner.to_string()),
            })
        }
    }
}

fn strip_position(message: &str) -> String {
    match message.rfind(" at line ") {
        Some(i) => message[..i].to_string(),
        None => message.to_string(),
    }
}

pub fn to_json<T: Serialize>(value: &T) -> Vec<u8> {
    let mut out = serde_json::to_vec_pretty(value).expect("in-memory serialization");
    out.push(b'\n');
    out
}

pub fn graph_from_json(bytes: &[u8]) -> Result<DualMapGraph, FormatError> {
    let g: DualMapGraph = from_json(bytes)?;
    if g.schema != SCHEMA_VERSION {
        return Err(FormatError::Version(g.schema));
    }
    Ok(g)
}

/// Reads a file, or standard input when `path` is `-`.
pub fn read_input(path: &Path) -> Result<Vec<u8>, FormatError> {
    let name = path.display().to_string();
    if name == "-" {
        let mut buf = Vec::new();
        std::io::stdin().read_to_end(&mut buf).map_err(|source| FormatError::Io { name, source })?;
        Ok(buf)
    } else {
        fs::read(path).map_err(|source| FormatError::Io { name, source })
    }
}

pub fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T, FormatError> {
    from_json(&read_input(path)?)
}

pub fn read_graph(path: &Path) -> Result<DualMapGraph, FormatError> {
    graph_from_json(&read_input(path)?)
}
