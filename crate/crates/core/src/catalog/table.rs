use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::{CatalogError, SuiteRun, SCHEMA_VERSION};
use crate::nilsoliton::Signature;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TableFormat {
    Csv,
    Json,
    Text,
}

impl FromStr for TableFormat {
    type Err = CatalogError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "csv" => Ok(TableFormat::Csv),
            "json" => Ok(TableFormat::Json),
            "text" => Ok(TableFormat::Text),
            _ => Err(CatalogError::UnknownFormat(s.to_string())),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableRow {
    pub name: String,
    pub algebra: String,
    #[serde(rename = "N")]
    pub n: String,
    /// Signatures in canonical order; empty for obstructed algebras.
    #[serde(rename = "S")]
    pub s: Vec<String>,
}

impl TableRow {
    pub fn from_run(run: &SuiteRun) -> Option<Self> {
        let r = run.report.as_ref().ok()?;
        Some(TableRow {
            name: run.label(),
            algebra: r.algebra.clone(),
            n: r.nikolayevsky.display(),
            s: r.signatures.iter().map(|s| s.to_string()).collect(),
        })
    }

    fn s_cell(&self) -> String {
        format!("{{{}}}", self.s.join(","))
    }
}

#[derive(Serialize, Deserialize)]
struct TableDocument {
    schema_version: u64,
    rows: Vec<TableRow>,
}

fn sort_rows(rows: &mut [TableRow]) {
    for r in rows.iter_mut() {
        r.s.sort_by_key(|s| Signature::parse(s));
    }
    rows.sort_by(|a, b| a.name.cmp(&b.name));
}

/// Renders rows sorted by name, signatures in canonical order.
pub fn emit_table(rows: &[TableRow], format: TableFormat) -> String {
    let mut rows = rows.to_vec();
    sort_rows(&mut rows);
    match format {
        TableFormat::Json => {
            let doc = TableDocument { schema_version: SCHEMA_VERSION, rows };
            let mut s = serde_json::to_string_pretty(&doc).expect("rows serialize");
            s.push('\n');
            s
        }
        TableFormat::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(["name", "algebra", "N", "S"]).expect("in-memory write");
            for r in &rows {
                w.write_record([r.name.as_str(), &r.algebra, &r.n, &r.s_cell()]).expect("in-memory write");
            }
            String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8 input")
        }
        TableFormat::Text => {
            let header = ["Name", "g", "N", "S"].map(String::from);
            let cells: Vec<[String; 4]> = rows
                .iter()
                .map(|r| [r.name.clone(), r.algebra.clone(), r.n.clone(), r.s_cell()])
                .collect();
            let mut widths = header.clone().map(|h| h.chars().count());
            for c in &cells {
                for (w, s) in widths.iter_mut().zip(c) {
                    *w = (*w).max(s.chars().count());
                }
            }
            let mut out = String::new();
            for line in std::iter::once(&header).chain(&cells) {
                let padded: Vec<String> = line
                    .iter()
                    .zip(&widths)
                    .map(|(s, w)| format!("{s}{}", " ".repeat(w - s.chars().count())))
                    .collect();
                out.push_str(padded.join("  ").trim_end());
                out.push('\n');
            }
            out
        }
    }
}

/// Reads the JSON produced by [`emit_table`].
pub fn read_table_json(text: &str) -> Result<Vec<TableRow>, CatalogError> {
    let doc: TableDocument = serde_json::from_str(text)?;
    if doc.schema_version != SCHEMA_VERSION {
        return Err(CatalogError::Version(doc.schema_version));
    }
    Ok(doc.rows)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn row() -> TableRow {
        TableRow {
            name: "31:1".into(),
            algebra: "(0,0,e^{12})".into(),
            n: "2/3(1,1,2)".into(),
            s: vec!["23".into(), "∅".into(), "12".into(), "13".into()],
        }
    }

    #[test]
    fn formats() {
        let csv = emit_table(&[row()], TableFormat::Csv);
        assert_eq!(csv, "name,algebra,N,S\n31:1,\"(0,0,e^{12})\",\"2/3(1,1,2)\",\"{∅,12,13,23}\"\n");
        assert_eq!(emit_table(&[], TableFormat::Csv), "name,algebra,N,S\n");
        let text = emit_table(&[row()], TableFormat::Text);
        assert!(text.lines().nth(1).unwrap().starts_with("31:1  (0,0,e^{12})  2/3(1,1,2)  {∅,12,13,23}"));
        let json = emit_table(&[row()], TableFormat::Json);
        assert_eq!(emit_table(&read_table_json(&json).unwrap(), TableFormat::Json), json);
        assert!("xml".parse::<TableFormat>().is_err());
    }
}
