//! Serialization of scan rows and run metadata.

use serde::Serialize;
use serde_json::{Map, Value};

use crate::arith::format_rational;
use crate::explorer::ScanRow;
use crate::error::{Error, Result};

pub const CSV_HEADER: [&str; 8] = [
    "m",
    "n",
    "limit_l1",
    "limit_l2",
    "F_at_c1",
    "ke_admissible",
    "sign_change_found",
    "paper_backed",
];

/// Run-varying information, kept apart from the data so outputs can be
/// compared byte for byte when it is suppressed.
#[derive(Debug, Clone, Serialize)]
pub struct Meta {
    pub tool: String,
    pub version: String,
    pub command: String,
    pub jobs: usize,
    pub elapsed_ms: u128,
    #[serde(flatten)]
    pub extra: Map<String, Value>,
}

impl Meta {
    pub fn comment_line(&self) -> String {
        let mut line = format!(
            "# {} {} command={} jobs={} elapsed_ms={}",
            self.tool, self.version, self.command, self.jobs, self.elapsed_ms
        );
        for (k, v) in &self.extra {
            line.push_str(&format!(" {k}={v}"));
        }
        line
    }
}

pub fn to_value<T: Serialize>(data: &T) -> Result<Value> {
    serde_json::to_value(data).map_err(|e| Error::invariant(e.to_string()))
}

/// Pretty JSON for a report object, with `meta` inserted as its first key.
pub fn json_document(meta: Option<&Meta>, data: Value) -> Result<String> {
    let Value::Object(fields) = data else {
        return Err(Error::invariant("report payload must be a JSON object"));
    };
    let mut doc = Map::new();
    if let Some(meta) = meta {
        doc.insert("meta".into(), to_value(meta)?);
    }
    doc.extend(fields);
    let mut out = serde_json::to_string_pretty(&Value::Object(doc)).map_err(|e| Error::invariant(e.to_string()))?;
    out.push('\n');
    Ok(out)
}

pub fn csv_record(row: &ScanRow) -> [String; 8] {
    [
        row.m.to_string(),
        row.n.to_string(),
        format_rational(&row.limit_l1),
        format_rational(&row.limit_l2),
        format_rational(&row.f_at_c1),
        row.ke_admissible.to_string(),
        row.sign_change_found.to_string(),
        row.paper_backed.to_string(),
    ]
}

pub fn text_table(rows: &[ScanRow]) -> String {
    let records: Vec<[String; 8]> = rows.iter().map(csv_record).collect();
    let mut widths = CSV_HEADER.map(str::len);
    for r in &records {
        for (w, cell) in widths.iter_mut().zip(r) {
            *w = (*w).max(cell.len());
        }
    }
    let mut out = String::new();
    let mut push_line = |cells: &[&str]| {
        let line: Vec<String> = cells
            .iter()
            .zip(widths)
            .map(|(c, w)| format!("{c:>w$}"))
            .collect();
        out.push_str(line.join("  ").trim_end());
        out.push('\n');
    };
    push_line(&CSV_HEADER);
    for r in &records {
        let cells: Vec<&str> = r.iter().map(String::as_str).collect();
        push_line(&cells);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::explorer::{scan_range, ScanOptions};

    #[test]
    fn record_shape() {
        let rows = scan_range(1, 1, 2, 2, &ScanOptions::default()).unwrap();
        let rec = csv_record(&rows[0]);
        assert_eq!(rec[0], "1");
        assert_eq!(rec[2], "-15/8");
        assert_eq!(rec[3], "45/8");
        assert_eq!(rec[4], "-2304");
        assert_eq!(&rec[5..], ["false", "true", "true"]);
        let table = text_table(&rows);
        assert_eq!(table.lines().count(), 2);
        let doc = json_document(None, serde_json::json!({ "rows": to_value(&rows).unwrap() })).unwrap();
        assert!(doc.contains("\"F_at_c1\": \"-2304\""));
        assert!(json_document(None, Value::Null).is_err());
    }
}
