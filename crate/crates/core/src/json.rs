//! JSON reading with error paths.

use serde::de::DeserializeOwned;

use crate::error::{Error, Result};

/// Deserializes `text`, reporting the JSON path of the first offending value.
pub fn from_str<T: DeserializeOwned>(text: &str) -> Result<T> {
    let de = &mut serde_json::Deserializer::from_str(text);
    serde_path_to_error::deserialize(de).map_err(|e| {
        let path = e.path().to_string();
        Error::schema(if path.is_empty() { "." .to_string() } else { path }, e.into_inner().to_string())
    })
}

/// Reads and deserializes a JSON file.
pub fn read_file<T: DeserializeOwned>(path: &std::path::Path) -> Result<T> {
    let text = std::fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.display().to_string(),
        source,
    })?;
    from_str(&text)
}
