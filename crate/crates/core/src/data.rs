//! Embedded datasets. Setting `STABGATE_DATA` to a directory makes every
//! loader read `<dir>/<name>` from disk instead, which is how the tables are
//! audited or patched without rebuilding.

use crate::error::{Error, Result};

pub const DATA_ENV: &str = "STABGATE_DATA";

const EMBEDDED: &[(&str, &str)] = &[
    ("weight_tables.json", include_str!("../../../data/weight_tables.json")),
    ("m_r.json", include_str!("../../../data/m_r.json")),
    ("exceptional_unipotent_dims.json", include_str!("../../../data/exceptional_unipotent_dims.json")),
    ("closure_facts.json", include_str!("../../../data/closure_facts.json")),
    ("scripts.json", include_str!("../../../data/scripts.json")),
    ("tables.json", include_str!("../../../data/tables.json")),
    ("families.json", include_str!("../../../data/families.json")),
];

/// Names of every dataset file.
pub fn names() -> impl Iterator<Item = &'static str> {
    EMBEDDED.iter().map(|(n, _)| *n)
}

/// Raw text of a dataset, honouring the override directory.
pub fn load(name: &str) -> Result<String> {
    if let Ok(dir) = std::env::var(DATA_ENV) {
        let path = std::path::Path::new(&dir).join(name);
        return std::fs::read_to_string(&path)
            .map_err(|e| Error::DataMissing(format!("{}: {e}", path.display())));
    }
    EMBEDDED
        .iter()
        .find(|(n, _)| *n == name)
        .map(|(_, text)| text.to_string())
        .ok_or_else(|| Error::DataMissing(format!("no embedded dataset {name}")))
}

/// Parse a dataset as JSON.
pub fn load_json<T: serde::de::DeserializeOwned>(name: &str) -> Result<T> {
    let text = load(name)?;
    serde_json::from_str(&text).map_err(|e| Error::Data(format!("{name}: {e}")))
}
