//! Suite reports and their CSV/JSON renderings. Nothing in a report depends
//! on the clock or the environment, so identical runs give identical bytes.

use std::collections::BTreeMap;
use std::fmt;
use std::io::Write;
use std::path::Path;

use htl_core::hardy::FourierCoeffs;
use htl_core::Complex64;
use serde::ser::{SerializeMap, Serializer};
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::config::{Format, RunConfig};
use crate::error::{CliError, Result};

pub const SCHEMA_VERSION: &str = "1";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Symbol,
    Bmolog,
    Asym,
    Fredholm,
}

impl Suite {
    pub const ALL: [Suite; 4] = [Suite::Symbol, Suite::Bmolog, Suite::Asym, Suite::Fredholm];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Symbol => "symbol",
            Suite::Bmolog => "bmolog",
            Suite::Asym => "asym",
            Suite::Fredholm => "fredholm",
        }
    }

    /// Exit status when this suite is the first to fail.
    pub fn exit_code(self) -> i32 {
        match self {
            Suite::Symbol => 3,
            Suite::Bmolog => 4,
            Suite::Asym => 5,
            Suite::Fredholm => 6,
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Int(i64),
    Real(f64),
    Text(String),
    Bool(bool),
    Empty,
}

impl From<f64> for Cell {
    fn from(v: f64) -> Cell {
        Cell::Real(v)
    }
}

impl From<usize> for Cell {
    fn from(v: usize) -> Cell {
        Cell::Int(v as i64)
    }
}

impl From<i64> for Cell {
    fn from(v: i64) -> Cell {
        Cell::Int(v)
    }
}

impl From<bool> for Cell {
    fn from(v: bool) -> Cell {
        Cell::Bool(v)
    }
}

impl From<&str> for Cell {
    fn from(v: &str) -> Cell {
        Cell::Text(v.to_owned())
    }
}

impl<T: Into<Cell>> From<Option<T>> for Cell {
    fn from(v: Option<T>) -> Cell {
        v.map_or(Cell::Empty, Into::into)
    }
}

impl fmt::Display for Cell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Cell::Int(v) => write!(f, "{v}"),
            Cell::Real(v) => write!(f, "{v:e}"),
            Cell::Text(s) => f.write_str(s),
            Cell::Bool(b) => write!(f, "{b}"),
            Cell::Empty => Ok(()),
        }
    }
}

impl Serialize for Cell {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Cell::Int(v) => s.serialize_i64(*v),
            Cell::Real(v) if v.is_finite() => s.serialize_f64(*v),
            // JSON has no infinities; keep them readable
            Cell::Real(v) => s.serialize_str(&v.to_string()),
            Cell::Text(t) => s.serialize_str(t),
            Cell::Bool(b) => s.serialize_bool(*b),
            Cell::Empty => s.serialize_none(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Table {
    pub name: String,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(name: &str, columns: &[&str]) -> Table {
        Table { name: name.to_owned(), columns: columns.iter().map(|c| (*c).to_owned()).collect(), rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(&self.columns)?;
        for row in &self.rows {
            w.write_record(row.iter().map(|c| c.to_string()))?;
        }
        w.flush()?;
        Ok(())
    }
}

/// Serializes tables as an object keyed by name, in insertion order.
struct TableMap<'a>(&'a [Table]);

impl Serialize for TableMap<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut m = s.serialize_map(Some(self.0.len()))?;
        for t in self.0 {
            #[derive(Serialize)]
            struct Body<'b> {
                columns: &'b [String],
                rows: &'b [Vec<Cell>],
            }
            m.serialize_entry(&t.name, &Body { columns: &t.columns, rows: &t.rows })?;
        }
        m.end()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Report {
    pub suite: Suite,
    pub notes: Vec<String>,
    pub parameters: BTreeMap<String, Value>,
    pub checks: Vec<Check>,
    pub tables: Vec<Table>,
    /// Coefficient vectors worth keeping in full.
    pub coefficients: BTreeMap<String, CoefficientDoc>,
}

impl Report {
    pub fn new(suite: Suite) -> Report {
        Report {
            suite,
            notes: Vec::new(),
            parameters: BTreeMap::new(),
            checks: Vec::new(),
            tables: Vec::new(),
            coefficients: BTreeMap::new(),
        }
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn check(&mut self, name: &str, passed: bool, detail: impl Into<String>) {
        self.checks.push(Check { name: name.to_owned(), passed, detail: detail.into() });
    }

    pub fn param(&mut self, key: &str, value: impl Serialize) {
        let v = serde_json::to_value(value).unwrap_or(Value::Null);
        self.parameters.insert(key.to_owned(), v);
    }

    pub fn note(&mut self, text: impl Into<String>) {
        self.notes.push(text.into());
    }

    pub fn table(&self, name: &str) -> Option<&Table> {
        self.tables.iter().find(|t| t.name == name)
    }

    pub fn check_named(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn to_json(&self, config: &RunConfig) -> Result<String> {
        #[derive(Serialize)]
        struct Doc<'a> {
            schema_version: &'static str,
            suite: Suite,
            passed: bool,
            config: &'a RunConfig,
            notes: &'a [String],
            parameters: &'a BTreeMap<String, Value>,
            checks: &'a [Check],
            tables: TableMap<'a>,
            #[serde(skip_serializing_if = "BTreeMap::is_empty")]
            coefficients: &'a BTreeMap<String, CoefficientDoc>,
        }
        let doc = Doc {
            schema_version: SCHEMA_VERSION,
            suite: self.suite,
            passed: self.passed(),
            config,
            notes: &self.notes,
            parameters: &self.parameters,
            checks: &self.checks,
            tables: TableMap(&self.tables),
            coefficients: &self.coefficients,
        };
        let mut s = serde_json::to_string_pretty(&doc)?;
        s.push('\n');
        Ok(s)
    }

    fn checks_table(&self) -> Table {
        let mut t = Table::new("checks", &["check", "passed", "detail"]);
        for c in &self.checks {
            t.push(vec![c.name.as_str().into(), c.passed.into(), c.detail.as_str().into()]);
        }
        t
    }

    /// All tables as one stream, each preceded by a `# suite/name` line.
    pub fn to_csv_stream(&self) -> Result<String> {
        let mut buf = Vec::new();
        for n in &self.notes {
            writeln!(buf, "# {n}")?;
        }
        let checks = self.checks_table();
        for t in std::iter::once(&checks).chain(&self.tables) {
            writeln!(buf, "# {}/{}", self.suite, t.name)?;
            t.write_csv(&mut buf)?;
            writeln!(buf)?;
        }
        String::from_utf8(buf).map_err(|e| CliError::Solver(e.to_string()))
    }

    /// Writes to `dir`, or to stdout when `dir` is absent. JSON goes to
    /// `<suite>.json`; CSV to one `<suite>-<table>.csv` per table plus
    /// `<suite>-checks.csv`, and coefficient vectors to
    /// `<suite>-<name>-coefficients.json`.
    pub fn emit(&self, config: &RunConfig, dir: Option<&Path>) -> Result<()> {
        match (config.format, dir) {
            (Format::Json, None) => print!("{}", self.to_json(config)?),
            (Format::Csv, None) => print!("{}", self.to_csv_stream()?),
            (Format::Json, Some(d)) => {
                std::fs::create_dir_all(d)?;
                std::fs::write(d.join(format!("{}.json", self.suite)), self.to_json(config)?)?;
            }
            (Format::Csv, Some(d)) => {
                std::fs::create_dir_all(d)?;
                let checks = self.checks_table();
                for t in std::iter::once(&checks).chain(&self.tables) {
                    let f = std::fs::File::create(d.join(format!("{}-{}.csv", self.suite, t.name)))?;
                    t.write_csv(std::io::BufWriter::new(f))?;
                }
                for (name, doc) in &self.coefficients {
                    let path = d.join(format!("{}-{name}-coefficients.json", self.suite));
                    std::fs::write(path, serde_json::to_string(doc)? + "\n")?;
                }
            }
        }
        Ok(())
    }
}

/// A coefficient vector as `[re, im]` pairs for indices `-N..=N`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CoefficientDoc {
    pub schema_version: String,
    pub max_index: usize,
    pub coefficients: Vec<[f64; 2]>,
}

impl From<&FourierCoeffs> for CoefficientDoc {
    fn from(c: &FourierCoeffs) -> CoefficientDoc {
        CoefficientDoc {
            schema_version: SCHEMA_VERSION.to_owned(),
            max_index: c.max_index(),
            coefficients: c.as_slice().iter().map(|v| [v.re, v.im]).collect(),
        }
    }
}

impl TryFrom<&CoefficientDoc> for FourierCoeffs {
    type Error = CliError;

    fn try_from(d: &CoefficientDoc) -> Result<FourierCoeffs> {
        if d.schema_version != SCHEMA_VERSION {
            return Err(CliError::config("schema_version", format!("unsupported version {:?}", d.schema_version)));
        }
        if d.coefficients.len() != 2 * d.max_index + 1 {
            return Err(CliError::config(
                "coefficients",
                format!(
                    "expected {} pairs for max_index {}, got {}",
                    2 * d.max_index + 1,
                    d.max_index,
                    d.coefficients.len()
                ),
            ));
        }
        let data = d.coefficients.iter().map(|&[re, im]| Complex64::new(re, im)).collect();
        Ok(FourierCoeffs::from_symmetric(data)?)
    }
}

pub fn coefficients_to_json(c: &FourierCoeffs) -> Result<String> {
    Ok(serde_json::to_string(&CoefficientDoc::from(c))?)
}

pub fn coefficients_from_json(text: &str) -> Result<FourierCoeffs> {
    let doc: CoefficientDoc = serde_json::from_str(text)?;
    FourierCoeffs::try_from(&doc)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn coefficient_json_round_trips() {
        let mut c = FourierCoeffs::zeros(2);
        c.set(-2, Complex64::new(0.5, -1.0));
        c.set(1, Complex64::new(3.0, 0.25));
        let text = coefficients_to_json(&c).unwrap();
        assert!(text.contains("\"coefficients\":[[0.5,-1.0],[0.0,0.0],[0.0,0.0],[3.0,0.25],[0.0,0.0]]"), "{text}");
        assert_eq!(coefficients_from_json(&text).unwrap(), c);
        let short = r#"{"schema_version":"1","max_index":1,"coefficients":[[1,0]]}"#;
        assert!(matches!(coefficients_from_json(short), Err(CliError::Config { field: "coefficients", .. })));
    }

    #[test]
    fn csv_stream_lists_checks_first() {
        let mut r = Report::new(Suite::Asym);
        r.check("a", true, "ok");
        let mut t = Table::new("rows", &["x", "y"]);
        t.push(vec![1.5.into(), Cell::Empty]);
        r.tables.push(t);
        let s = r.to_csv_stream().unwrap();
        assert_eq!(s, "# asym/checks\ncheck,passed,detail\na,true,ok\n\n# asym/rows\nx,y\n1.5e0,\n\n");
    }
}
