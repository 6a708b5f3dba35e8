//! Tabular output: `# key=value` metadata plus column-titled rows, rendered as
//! CSV or as JSON `{meta, rows}`.

use serde_json::{Map, Number, Value as Json};

use crate::error::CliError;

/// Significant digits in every emitted number.
pub const SIG_DIGITS: usize = 12;

#[derive(Clone, Debug, PartialEq)]
pub enum Value {
    Num(f64),
    Int(i64),
    Bool(bool),
    Text(String),
}

impl Value {
    fn render(&self) -> String {
        match self {
            Value::Num(x) => fmt_sig(*x),
            Value::Int(i) => i.to_string(),
            Value::Bool(b) => b.to_string(),
            Value::Text(s) => s.clone(),
        }
    }

    fn to_json(&self) -> Json {
        match self {
            Value::Num(x) => fmt_sig(*x)
                .parse::<f64>()
                .ok()
                .and_then(Number::from_f64)
                .map_or(Json::Null, Json::Number),
            Value::Int(i) => Json::from(*i),
            Value::Bool(b) => Json::Bool(*b),
            Value::Text(s) => Json::String(s.clone()),
        }
    }
}

impl From<f64> for Value {
    fn from(x: f64) -> Self {
        Value::Num(x)
    }
}

impl From<i64> for Value {
    fn from(i: i64) -> Self {
        Value::Int(i)
    }
}

impl From<usize> for Value {
    fn from(i: usize) -> Self {
        Value::Int(i as i64)
    }
}

impl From<bool> for Value {
    fn from(b: bool) -> Self {
        Value::Bool(b)
    }
}

impl From<&str> for Value {
    fn from(s: &str) -> Self {
        Value::Text(s.to_string())
    }
}

impl From<String> for Value {
    fn from(s: String) -> Self {
        Value::Text(s)
    }
}

/// Formats `x` with [`SIG_DIGITS`] significant digits, trailing zeros
/// dropped; plain notation for exponents in `[-5, 12)`, scientific otherwise.
pub fn fmt_sig(x: f64) -> String {
    if x.is_nan() {
        return "NaN".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf" } else { "-inf" }.into();
    }
    if x == 0.0 {
        return "0".into();
    }
    let sci = format!("{:.*e}", SIG_DIGITS - 1, x);
    let (mant, exp) = sci
        .split_once('e')
        .expect("scientific format has an exponent");
    let exp: i32 = exp.parse().expect("integer exponent");
    let (sign, mant) = match mant.strip_prefix('-') {
        Some(m) => ("-", m),
        None => ("", mant),
    };
    let digits: String = mant.chars().filter(|c| *c != '.').collect();
    let digits = digits.trim_end_matches('0');
    let digits = if digits.is_empty() { "0" } else { digits };

    if !(-5..12).contains(&exp) {
        let (head, tail) = digits.split_at(1);
        return if tail.is_empty() {
            format!("{sign}{head}e{exp}")
        } else {
            format!("{sign}{head}.{tail}e{exp}")
        };
    }
    if exp < 0 {
        let zeros = "0".repeat((-exp - 1) as usize);
        return format!("{sign}0.{zeros}{digits}");
    }
    let int_len = exp as usize + 1;
    if digits.len() <= int_len {
        format!("{sign}{digits}{}", "0".repeat(int_len - digits.len()))
    } else {
        format!("{sign}{}.{}", &digits[..int_len], &digits[int_len..])
    }
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct Table {
    pub meta: Vec<(String, Value)>,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Value>>,
}

impl Table {
    pub fn new(columns: &[&str]) -> Self {
        Self {
            meta: Vec::new(),
            columns: columns.iter().map(|c| c.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn meta(&mut self, key: &str, value: impl Into<Value>) -> &mut Self {
        self.meta.push((key.to_string(), value.into()));
        self
    }

    pub fn push(&mut self, row: Vec<Value>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn to_csv(&self) -> Result<String, CliError> {
        let mut out = String::new();
        for (k, v) in &self.meta {
            out.push_str(&format!("# {k}={}\n", v.render()));
        }
        let mut w = csv::WriterBuilder::new()
            .terminator(csv::Terminator::Any(b'\n'))
            .from_writer(Vec::new());
        let io = |e: csv::Error| CliError::Io(e.to_string());
        w.write_record(&self.columns).map_err(io)?;
        for row in &self.rows {
            w.write_record(row.iter().map(Value::render)).map_err(io)?;
        }
        let bytes = w.into_inner().map_err(|e| CliError::Io(e.to_string()))?;
        out.push_str(&String::from_utf8(bytes).expect("csv output is utf-8"));
        Ok(out)
    }

    pub fn to_json(&self) -> String {
        let meta: Map<String, Json> = self
            .meta
            .iter()
            .map(|(k, v)| (k.clone(), v.to_json()))
            .collect();
        let rows: Vec<Json> = self
            .rows
            .iter()
            .map(|row| {
                Json::Object(
                    self.columns
                        .iter()
                        .zip(row)
                        .map(|(c, v)| (c.clone(), v.to_json()))
                        .collect(),
                )
            })
            .collect();
        let mut doc = Map::new();
        doc.insert("meta".into(), Json::Object(meta));
        doc.insert("rows".into(), Json::Array(rows));
        let mut s =
            serde_json::to_string_pretty(&Json::Object(doc)).expect("json values serialize");
        s.push('\n');
        s
    }
}

/// A table read back from disk, every cell kept as text.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct ParsedTable {
    pub meta: Vec<(String, String)>,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl ParsedTable {
    pub fn from_csv(text: &str) -> Result<Self, CliError> {
        let mut meta = Vec::new();
        let mut body = String::new();
        for line in text.lines() {
            match line.strip_prefix("# ") {
                Some(kv) => {
                    let (k, v) = kv
                        .split_once('=')
                        .ok_or_else(|| CliError::Config(format!("bad metadata line {line:?}")))?;
                    meta.push((k.to_string(), v.to_string()));
                }
                None => {
                    body.push_str(line);
                    body.push('\n');
                }
            }
        }
        let bad = |e: csv::Error| CliError::Config(e.to_string());
        let mut r = csv::ReaderBuilder::new().from_reader(body.as_bytes());
        let columns = r
            .headers()
            .map_err(bad)?
            .iter()
            .map(str::to_string)
            .collect();
        let rows = r
            .records()
            .map(|rec| rec.map(|rec| rec.iter().map(str::to_string).collect()))
            .collect::<Result<_, _>>()
            .map_err(bad)?;
        Ok(Self {
            meta,
            columns,
            rows,
        })
    }

    pub fn from_json(text: &str) -> Result<Self, CliError> {
        let bad = |m: &str| CliError::Config(format!("malformed report: {m}"));
        let doc: Json = serde_json::from_str(text).map_err(|e| CliError::Config(e.to_string()))?;
        let meta = doc
            .get("meta")
            .and_then(Json::as_object)
            .ok_or_else(|| bad("missing meta"))?
            .iter()
            .map(|(k, v)| (k.clone(), json_text(v)))
            .collect();
        let raw_rows = doc
            .get("rows")
            .and_then(Json::as_array)
            .ok_or_else(|| bad("missing rows"))?;
        let columns: Vec<String> = match raw_rows.first().and_then(Json::as_object) {
            Some(obj) => obj.keys().cloned().collect(),
            None => Vec::new(),
        };
        let mut rows = Vec::with_capacity(raw_rows.len());
        for row in raw_rows {
            let obj = row.as_object().ok_or_else(|| bad("row is not an object"))?;
            rows.push(
                columns
                    .iter()
                    .map(|c| obj.get(c).map(json_text).ok_or_else(|| bad("ragged row")))
                    .collect::<Result<Vec<_>, _>>()?,
            );
        }
        Ok(Self {
            meta,
            columns,
            rows,
        })
    }

    pub fn meta_value(&self, key: &str) -> Option<&str> {
        self.meta
            .iter()
            .find(|(k, _)| k == key)
            .map(|(_, v)| v.as_str())
    }

    pub fn column(&self, name: &str) -> Option<Vec<&str>> {
        let idx = self.columns.iter().position(|c| c == name)?;
        Some(self.rows.iter().map(|r| r[idx].as_str()).collect())
    }

    /// Numeric column; unparsable cells become NaN.
    pub fn numbers(&self, name: &str) -> Option<Vec<f64>> {
        Some(
            self.column(name)?
                .into_iter()
                .map(|s| s.parse().unwrap_or(f64::NAN))
                .collect(),
        )
    }
}

fn json_text(v: &Json) -> String {
    match v {
        Json::String(s) => s.clone(),
        Json::Null => "NaN".into(),
        other => other.to_string(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn significant_digits() {
        assert_eq!(fmt_sig(0.0), "0");
        assert_eq!(fmt_sig(-0.0), "0");
        assert_eq!(fmt_sig(4.0), "4");
        assert_eq!(fmt_sig(-2.5), "-2.5");
        assert_eq!(fmt_sig(3.0 - 2.0 * 2f64.sqrt()), "0.171572875254");
        assert_eq!(fmt_sig(1234.5), "1234.5");
        assert_eq!(fmt_sig(1e-5), "0.00001");
        assert_eq!(fmt_sig(1.5e-6), "1.5e-6");
        assert_eq!(fmt_sig(1e12), "1e12");
        assert_eq!(fmt_sig(123456789012.0), "123456789012");
        assert_eq!(fmt_sig(9.9999999999999), "10");
        assert_eq!(fmt_sig(f64::NAN), "NaN");
        assert_eq!(fmt_sig(f64::NEG_INFINITY), "-inf");
    }

    #[test]
    fn rendering_round_trips_to_twelve_digits() {
        for x in [
            std::f64::consts::PI,
            -1.0 / 3.0,
            6.02214076e23,
            2.2e-17,
            0.0294372515228594,
        ] {
            let back: f64 = fmt_sig(x).parse().unwrap();
            assert!(((back - x) / x).abs() < 1e-11, "{x}");
        }
    }

    fn sample() -> Table {
        let mut t = Table::new(&["x", "p", "label"]);
        t.meta("beta", 0.5)
            .meta("alpha", "1,0,0,0")
            .meta("t", 3usize);
        t.push(vec![Value::Int(-1), Value::Num(0.25), "a,b".into()]);
        t.push(vec![Value::Int(0), Value::Num(1.0 / 3.0), "c".into()]);
        t
    }

    #[test]
    fn csv_layout_and_round_trip() {
        let csv = sample().to_csv().unwrap();
        assert!(csv.starts_with("# beta=0.5\n# alpha=1,0,0,0\n# t=3\nx,p,label\n"));
        assert!(!csv.contains('\r'));
        let back = ParsedTable::from_csv(&csv).unwrap();
        assert_eq!(back.meta_value("alpha"), Some("1,0,0,0"));
        assert_eq!(back.column("label").unwrap(), vec!["a,b", "c"]);
        assert_eq!(back.numbers("p").unwrap()[1], 0.333333333333);
    }

    #[test]
    fn json_layout_and_round_trip() {
        let json = sample().to_json();
        let back = ParsedTable::from_json(&json).unwrap();
        assert_eq!(back.columns, vec!["x", "p", "label"]);
        assert_eq!(
            back.meta
                .iter()
                .map(|(k, _)| k.as_str())
                .collect::<Vec<_>>(),
            ["beta", "alpha", "t"]
        );
        assert_eq!(back.numbers("x").unwrap(), vec![-1.0, 0.0]);
        assert_eq!(back.numbers("p").unwrap()[1], 0.333333333333);
    }
}
