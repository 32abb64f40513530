use serde::Serialize;
use serde_json::{json, Map, Value};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Ok,
    Failure,
}

impl Status {
    pub fn exit_code(self) -> u8 {
        match self {
            Status::Ok => 0,
            Status::Failure => 1,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Text(String),
    Int(u64),
    Float(f64),
}

impl From<&str> for Cell {
    fn from(s: &str) -> Self {
        Cell::Text(s.to_string())
    }
}

impl From<usize> for Cell {
    fn from(v: usize) -> Self {
        Cell::Int(v as u64)
    }
}

impl From<f64> for Cell {
    fn from(v: f64) -> Self {
        Cell::Float(v)
    }
}

/// Plot-ready rows for curve payloads.
#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub header: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(header: &[&'static str]) -> Self {
        Self {
            header: header.to_vec(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.header.len());
        self.rows.push(row);
    }
}

#[derive(Debug, Clone)]
pub struct Report {
    pub status: Status,
    pub payload: Value,
    pub table: Option<Table>,
}

impl Report {
    pub fn new(status: Status, payload: impl Serialize, table: Option<Table>) -> anyhow::Result<Self> {
        Ok(Self {
            status,
            payload: serde_json::to_value(payload)?,
            table,
        })
    }
}

pub fn envelope(subcommand: &str, config: Value, duration_seconds: f64, report: &Report) -> Value {
    json!({
        "tool": "qai",
        "version": env!("CARGO_PKG_VERSION"),
        "subcommand": subcommand,
        "config": config,
        "duration_seconds": duration_seconds,
        "status": report.status,
        "payload": report.payload,
    })
}

fn sort_keys(value: Value) -> Value {
    match value {
        Value::Object(map) => {
            let mut entries: Vec<(String, Value)> = map.into_iter().collect();
            entries.sort_by(|a, b| a.0.cmp(&b.0));
            Value::Object(entries.into_iter().map(|(k, v)| (k, sort_keys(v))).collect::<Map<_, _>>())
        }
        Value::Array(items) => Value::Array(items.into_iter().map(sort_keys).collect()),
        other => other,
    }
}

/// Pretty JSON with keys sorted at every depth, newline-terminated.
pub fn render_json(value: &Value) -> String {
    let mut text = serde_json::to_string_pretty(&sort_keys(value.clone())).expect("JSON values serialize");
    text.push('\n');
    text
}

fn csv_field(text: &str) -> String {
    if text.contains([',', '"', '\n']) {
        format!("\"{}\"", text.replace('"', "\"\""))
    } else {
        text.to_string()
    }
}

/// Header row, then one line per row; floats with 6 decimals.
pub fn render_csv(table: &Table) -> String {
    let mut out = table.header.join(",");
    out.push('\n');
    for row in &table.rows {
        let fields: Vec<String> = row
            .iter()
            .map(|cell| match cell {
                Cell::Text(s) => csv_field(s),
                Cell::Int(v) => v.to_string(),
                Cell::Float(v) => format!("{v:.6}"),
            })
            .collect();
        out.push_str(&fields.join(","));
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn keys_sorted_at_every_depth() {
        let v = json!({"b": 1, "a": {"z": 0, "c": [{"y": 1, "x": 2}]}});
        let text = render_json(&v);
        assert!(text.ends_with('\n'));
        let pos = |k: &str| text.find(k).unwrap();
        assert!(pos("\"a\"") < pos("\"b\""));
        assert!(pos("\"c\"") < pos("\"z\""));
        assert!(pos("\"x\"") < pos("\"y\""));
    }

    #[test]
    fn csv_rows() {
        let mut t = Table::new(&["step", "name", "p"]);
        t.push(vec![0usize.into(), "a,b".into(), 0.5.into()]);
        assert_eq!(render_csv(&t), "step,name,p\n0,\"a,b\",0.500000\n");
    }
}
