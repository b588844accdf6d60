//! Tabular output in CSV or JSON.
//!
//! Both formats carry the same column names. Reals are written with 17
//! significant digits so they round-trip exactly; negative zero is printed
//! as zero so mirrored grids produce mirrored bytes.

use crate::config::Format;

#[derive(Debug, Clone, PartialEq)]
pub enum Value {
    Num(f64),
    Int(i64),
    UInt(u64),
    Bool(bool),
    Str(String),
    Null,
}

impl From<f64> for Value {
    fn from(x: f64) -> Self {
        Value::Num(x)
    }
}

impl From<Option<f64>> for Value {
    fn from(x: Option<f64>) -> Self {
        x.map_or(Value::Null, Value::Num)
    }
}

impl From<bool> for Value {
    fn from(b: bool) -> Self {
        Value::Bool(b)
    }
}

impl From<usize> for Value {
    fn from(n: usize) -> Self {
        Value::UInt(n as u64)
    }
}

impl From<&str> for Value {
    fn from(s: &str) -> Self {
        Value::Str(s.to_string())
    }
}

impl From<String> for Value {
    fn from(s: String) -> Self {
        Value::Str(s)
    }
}

pub fn format_number(x: f64) -> String {
    if x.is_nan() {
        return "nan".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    // -0.0 + 0.0 == +0.0
    format!("{:.16e}", x + 0.0)
}

fn csv_field(v: &Value) -> String {
    match v {
        Value::Num(x) => format_number(*x),
        Value::Int(n) => n.to_string(),
        Value::UInt(n) => n.to_string(),
        Value::Bool(b) => b.to_string(),
        Value::Str(s) if s.contains([',', '"', '\n']) => format!("\"{}\"", s.replace('"', "\"\"")),
        Value::Str(s) => s.clone(),
        Value::Null => String::new(),
    }
}

fn json_value(v: &Value) -> String {
    match v {
        Value::Num(x) if x.is_finite() => format_number(*x),
        Value::Num(_) | Value::Null => "null".into(),
        Value::Int(n) => n.to_string(),
        Value::UInt(n) => n.to_string(),
        Value::Bool(b) => b.to_string(),
        Value::Str(s) => serde_json::to_string(s).unwrap_or_else(|_| "null".into()),
    }
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct Table {
    pub meta: Vec<(String, Value)>,
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Value>>,
    /// Write `meta` as `# key=value` lines ahead of the CSV header.
    pub csv_meta: bool,
}

impl Table {
    pub fn new(columns: &[&'static str]) -> Self {
        Self {
            columns: columns.to_vec(),
            ..Self::default()
        }
    }

    pub fn meta(&mut self, key: impl Into<String>, value: impl Into<Value>) {
        self.meta.push((key.into(), value.into()));
    }

    pub fn push(&mut self, row: Vec<Value>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Csv => self.to_csv(),
            Format::Json => self.to_json(),
        }
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        if self.csv_meta {
            for (k, v) in &self.meta {
                out.push_str(&format!("# {k}={}\n", csv_field(v)));
            }
        }
        out.push_str(&self.columns.join(","));
        out.push('\n');
        for row in &self.rows {
            let fields: Vec<String> = row.iter().map(csv_field).collect();
            out.push_str(&fields.join(","));
            out.push('\n');
        }
        out
    }

    pub fn to_json(&self) -> String {
        let mut out = String::from("{\"meta\":{");
        let meta: Vec<String> = self
            .meta
            .iter()
            .map(|(k, v)| format!("{}:{}", json_value(&Value::Str(k.clone())), json_value(v)))
            .collect();
        out.push_str(&meta.join(","));
        out.push_str("},\"rows\":[");
        let rows: Vec<String> = self
            .rows
            .iter()
            .map(|row| {
                let fields: Vec<String> = self
                    .columns
                    .iter()
                    .zip(row)
                    .map(|(c, v)| format!("\"{c}\":{}", json_value(v)))
                    .collect();
                format!("{{{}}}", fields.join(","))
            })
            .collect();
        out.push_str(&rows.join(",\n"));
        out.push_str("]}\n");
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn numbers_round_trip() {
        for x in [0.1, 1.0 / 3.0, -2.5e-300, 1.485234375, 6.02e23] {
            let s = format_number(x);
            assert_eq!(s.parse::<f64>().unwrap(), x);
        }
        assert_eq!(format_number(-0.0), format_number(0.0));
        assert_eq!(format_number(f64::NAN), "nan");
    }

    #[test]
    fn csv_and_json_share_columns() {
        let mut t = Table::new(&["a", "b", "c"]);
        t.meta("s", 0.25);
        t.push(vec![1.5.into(), "x,y".into(), Value::Null]);
        t.push(vec![f64::INFINITY.into(), true.into(), 3usize.into()]);
        let csv = t.to_csv();
        assert_eq!(
            csv,
            "a,b,c\n1.5000000000000000e0,\"x,y\",\ninf,true,3\n"
        );
        t.csv_meta = true;
        assert!(t.to_csv().starts_with("# s=2.5000000000000000e-1\na,b,c\n"));
        let json: serde_json::Value = serde_json::from_str(&t.to_json()).unwrap();
        assert_eq!(json["meta"]["s"], 0.25);
        assert_eq!(json["rows"][0]["b"], "x,y");
        assert!(json["rows"][0]["c"].is_null());
        assert!(json["rows"][1]["a"].is_null());
        assert_eq!(json["rows"][1]["c"], 3);
    }
}
