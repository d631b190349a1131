//! Minimal CSV dialect: comma separator, no quoting, UTF-8, `#` comments.

use crate::data::Dataset;
use crate::error::{Error, Result};
use crate::model::CategoricalDomain;
use std::collections::BTreeMap;
use std::path::Path;

/// Optional sidecar schema: variable name -> ordered alphabet.
pub type Schema = BTreeMap<String, Vec<String>>;

pub fn load_schema(path: &Path) -> Result<Schema> {
    let text = std::fs::read_to_string(path)?;
    Ok(serde_json::from_str(&text)?)
}

/// Parse a categorical CSV file. Without a schema, per-column alphabets are
/// the lexicographically sorted distinct tokens; with a schema, every token
/// must belong to the declared alphabet and code order follows the schema.
pub fn load_csv(path: &Path, schema: Option<&Schema>) -> Result<Dataset> {
    let text = std::fs::read_to_string(path)?;
    load_csv_str(&text, schema)
}

pub fn load_csv_str(text: &str, schema: Option<&Schema>) -> Result<Dataset> {
    let mut lines = text
        .lines()
        .enumerate()
        .filter(|(_, l)| !l.starts_with('#') && !l.trim().is_empty());
    let (_, header) = lines.next().ok_or(Error::CsvFormat {
        line: 1,
        message: "missing header".into(),
    })?;
    let names: Vec<String> = header.split(',').map(|s| s.trim().to_string()).collect();
    let n = names.len();

    let mut records: Vec<(usize, Vec<String>)> = Vec::new();
    for (lineno, line) in lines {
        let cells: Vec<String> = line.split(',').map(|s| s.trim().to_string()).collect();
        if cells.len() != n {
            return Err(Error::CsvFormat {
                line: lineno + 1,
                message: format!("expected {n} cells, got {}", cells.len()),
            });
        }
        if cells.iter().any(String::is_empty) {
            return Err(Error::CsvFormat {
                line: lineno + 1,
                message: "empty cell".into(),
            });
        }
        records.push((lineno + 1, cells));
    }
    if records.is_empty() {
        return Err(Error::EmptyDataset("no data rows after header".into()));
    }

    let alphabets: Vec<Vec<String>> = match schema {
        Some(map) => names
            .iter()
            .map(|name| {
                map.get(name).cloned().ok_or_else(|| Error::InvalidDomain(
                    format!("schema has no entry for column {name:?}"),
                ))
            })
            .collect::<Result<_>>()?,
        None => (0..n)
            .map(|j| {
                let mut values: Vec<String> =
                    records.iter().map(|(_, cells)| cells[j].clone()).collect();
                values.sort();
                values.dedup();
                if values.len() < 2 {
                    return Err(Error::DegenerateAlphabet {
                        column: names[j].clone(),
                    });
                }
                Ok(values)
            })
            .collect::<Result<_>>()?,
    };
    let domain = CategoricalDomain::new(names.clone(), alphabets)?;

    let mut rows = Vec::with_capacity(records.len());
    for (row_idx, (_, cells)) in records.iter().enumerate() {
        let mut row = Vec::with_capacity(n);
        for (j, token) in cells.iter().enumerate() {
            match domain.code(j, token) {
                Some(code) => row.push(code),
                None => {
                    return Err(Error::SchemaViolation {
                        row: row_idx,
                        column: names[j].clone(),
                        token: token.clone(),
                    })
                }
            }
        }
        rows.push(row);
    }
    Dataset::new(domain, rows)
}

/// Write a dataset back out in the same dialect, header first.
pub fn write_csv(data: &Dataset, path: &Path) -> Result<()> {
    std::fs::write(path, to_csv_string(data))?;
    Ok(())
}

pub fn to_csv_string(data: &Dataset) -> String {
    let domain = data.domain();
    let mut out = String::new();
    out.push_str(&domain.names().join(","));
    out.push('\n');
    for row in data.rows() {
        let cells: Vec<&str> = row
            .iter()
            .enumerate()
            .map(|(j, &v)| domain.alphabet(j)[v].as_str())
            .collect();
        out.push_str(&cells.join(","));
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basic_binary_file() {
        let data = load_csv_str("A,B\n0,0\n0,1\n1,0\n1,1\n", None).unwrap();
        assert_eq!(data.domain().sizes(), &[2, 2]);
        assert_eq!(data.len(), 4);
        assert_eq!(data.rows()[1], vec![0, 1]);
    }

    #[test]
    fn schema_violation_reported() {
        let mut schema = Schema::new();
        schema.insert("A".into(), vec!["0".into(), "1".into()]);
        schema.insert("B".into(), vec!["0".into(), "1".into()]);
        let err = load_csv_str("A,B\n0,0\n2,1\n", Some(&schema)).unwrap_err();
        match err {
            Error::SchemaViolation { row, column, token } => {
                assert_eq!(row, 1);
                assert_eq!(column, "A");
                assert_eq!(token, "2");
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn header_only_is_empty_dataset() {
        assert!(matches!(
            load_csv_str("A,B\n", None),
            Err(Error::EmptyDataset(_))
        ));
    }

    #[test]
    fn ragged_row_is_format_error() {
        assert!(matches!(
            load_csv_str("A,B\n0,1\n0\n", None),
            Err(Error::CsvFormat { .. })
        ));
    }

    #[test]
    fn single_valued_column_rejected_without_schema() {
        assert!(matches!(
            load_csv_str("A,B\n0,0\n0,1\n", None),
            Err(Error::DegenerateAlphabet { .. })
        ));
    }

    #[test]
    fn comments_ignored() {
        let data = load_csv_str("# generated\nA,B\n0,0\n# mid comment\n1,1\n", None).unwrap();
        assert_eq!(data.len(), 2);
    }

    #[test]
    fn roundtrip_identity() {
        let text = "A,B\nred,0\nblue,1\nred,1\n";
        let data = load_csv_str(text, None).unwrap();
        let back = load_csv_str(&to_csv_string(&data), None).unwrap();
        assert_eq!(data, back);
    }

    #[test]
    fn schema_fixes_code_order() {
        let mut schema = Schema::new();
        schema.insert("A".into(), vec!["1".into(), "0".into()]);
        schema.insert("B".into(), vec!["0".into(), "1".into()]);
        let data = load_csv_str("A,B\n0,0\n1,1\n", Some(&schema)).unwrap();
        // schema order "1","0" maps token "0" to code 1
        assert_eq!(data.rows()[0], vec![1, 0]);
    }
}
