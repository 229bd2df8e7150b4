//! The Cayley-table JSON document.
//!
//! ```json
//! {"name": "T2", "order": 5, "labels": ["a1", "a2", "a1a2", "a2a1", "0"],
//!  "table": [[4, 2, 4, 4, 4], …], "zero": 4}
//! ```
//!
//! `table[i][j]` is the product of element `i` by element `j`. `labels`
//! may be omitted (elements are then called `e0, e1, …`); a declared
//! `zero` or `identity` is checked against the table.

use std::path::Path;

use semiwork_core::CayleyTable;
use serde::{Deserialize, Serialize};

use crate::WorkbenchError;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableDoc {
    #[serde(default)]
    pub name: String,
    pub order: usize,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub labels: Vec<String>,
    pub table: Vec<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub zero: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub identity: Option<usize>,
}

impl TableDoc {
    pub fn from_table(name: &str, t: &CayleyTable) -> Self {
        TableDoc {
            name: name.to_string(),
            order: t.order(),
            labels: t.labels().to_vec(),
            table: t.rows(),
            zero: t.zero(),
            identity: t.identity(),
        }
    }

    pub fn to_table(&self) -> Result<CayleyTable, WorkbenchError> {
        if self.table.len() != self.order {
            return Err(WorkbenchError::Usage(format!(
                "\"order\" is {} but the table has {} rows",
                self.order,
                self.table.len()
            )));
        }
        let t = if self.labels.is_empty() {
            CayleyTable::validate(&self.table)?
        } else {
            CayleyTable::with_labels(&self.table, self.labels.clone())?
        };
        if let Some(z) = self.zero {
            t.declare_zero(z)?;
        }
        if let Some(u) = self.identity {
            t.declare_identity(u)?;
        }
        Ok(t)
    }
}

pub fn parse_table(text: &str) -> Result<(String, CayleyTable), WorkbenchError> {
    let doc: TableDoc = serde_json::from_str(text)?;
    let table = doc.to_table()?;
    Ok((doc.name, table))
}

pub fn read_table(path: &Path) -> Result<(String, CayleyTable), WorkbenchError> {
    let text = std::fs::read_to_string(path).map_err(|e| WorkbenchError::io(path, e))?;
    parse_table(&text)
}

pub fn table_json(name: &str, t: &CayleyTable) -> String {
    serde_json::to_string_pretty(&TableDoc::from_table(name, t)).expect("serializable")
}

#[cfg(test)]
mod tests {
    use super::*;
    use semiwork_core::zoo;

    #[test]
    fn round_trip() {
        let t2 = zoo::build_t(2).unwrap().table;
        let text = table_json("T2", &t2);
        let (name, back) = parse_table(&text).unwrap();
        assert_eq!(name, "T2");
        assert_eq!(back, t2);
        assert!(text.contains("\"zero\": 4"));
    }

    #[test]
    fn minimal_document() {
        let (_, t) = parse_table(r#"{"order": 1, "table": [[0]]}"#).unwrap();
        assert_eq!(t.labels(), ["e0"]);
    }

    #[test]
    fn rejections() {
        let bad_assoc = r#"{"order": 2, "table": [[1, 0], [0, 0]]}"#;
        assert!(matches!(
            parse_table(bad_assoc),
            Err(WorkbenchError::Table(_))
        ));
        let bad_zero = r#"{"order": 2, "table": [[0, 0], [0, 0]], "zero": 1}"#;
        assert!(parse_table(bad_zero).is_err());
        let bad_order = r#"{"order": 3, "table": [[0]]}"#;
        assert!(parse_table(bad_order).is_err());
        assert!(matches!(parse_table("{"), Err(WorkbenchError::Json(_))));
    }
}
