//! Rendering of command results as aligned tables, CSV and JSON.

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::arrangement::CellCount;

use super::{CliError, Format};

/// One row of a complexity series; absent quantities were not computed.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeriesRow {
    pub n: usize,
    pub p: Option<u64>,
    pub p_pt: Option<u64>,
    pub c: Option<CellCount>,
    pub beta: Vec<usize>,
    pub equal_flag: Option<bool>,
}

fn cell<T: ToString>(v: Option<T>) -> String {
    v.map_or(String::new(), |x| x.to_string())
}

fn c_cell(c: Option<CellCount>) -> String {
    match c {
        None => String::new(),
        Some(CellCount::Exact(v)) => v.to_string(),
        Some(CellCount::Bounds { lower, upper }) => format!("{lower}..{upper}"),
    }
}

impl SeriesRow {
    pub fn headers(m: usize) -> Vec<String> {
        let mut h: Vec<String> = ["n", "p", "p_pt", "c"].iter().map(|s| s.to_string()).collect();
        h.extend((1..=m).map(|i| format!("beta_{i}")));
        h.push("equal_flag".into());
        h
    }

    fn cells(&self, m: usize) -> Vec<String> {
        let mut v = vec![self.n.to_string(), cell(self.p), cell(self.p_pt), c_cell(self.c)];
        v.extend((0..m).map(|i| cell(self.beta.get(i))));
        v.push(cell(self.equal_flag));
        v
    }

    /// Reads rows back from the CSV produced by the `csv` format.
    pub fn parse_csv(text: &str) -> Result<Vec<SeriesRow>, CliError> {
        let bad = |what: &str| CliError::Failed(format!("malformed series CSV: {what}"));
        let mut rd = csv::Reader::from_reader(text.as_bytes());
        let headers = rd.headers().map_err(|e| bad(&e.to_string()))?.clone();
        let m = headers.len().checked_sub(5).ok_or_else(|| bad("too few columns"))?;
        let opt = |s: &str| -> Result<Option<u64>, CliError> {
            if s.is_empty() {
                Ok(None)
            } else {
                s.parse().map(Some).map_err(|_| bad(s))
            }
        };
        let mut out = Vec::new();
        for rec in rd.records() {
            let rec = rec.map_err(|e| bad(&e.to_string()))?;
            let c = match &rec[3] {
                "" => None,
                s => Some(match s.split_once("..") {
                    Some((a, b)) => CellCount::Bounds { lower: a.parse().map_err(|_| bad(s))?, upper: b.parse().map_err(|_| bad(s))? },
                    None => CellCount::Exact(s.parse().map_err(|_| bad(s))?),
                }),
            };
            let beta = (0..m)
                .filter(|&i| !rec[4 + i].is_empty())
                .map(|i| rec[4 + i].parse().map_err(|_| bad(&rec[4 + i])))
                .collect::<Result<_, _>>()?;
            let equal_flag = match &rec[4 + m] {
                "" => None,
                s => Some(s.parse().map_err(|_| bad(s))?),
            };
            out.push(SeriesRow {
                n: rec[0].parse().map_err(|_| bad(&rec[0]))?,
                p: opt(&rec[1])?,
                p_pt: opt(&rec[2])?,
                c,
                beta,
                equal_flag,
            });
        }
        Ok(out)
    }
}

/// A plain table of strings.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Table {
    pub headers: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(headers: &[&str]) -> Self {
        Table { headers: headers.iter().map(|s| s.to_string()).collect(), rows: Vec::new() }
    }

    pub fn row(&mut self, cells: Vec<String>) {
        self.rows.push(cells);
    }

    fn aligned(&self) -> String {
        let mut widths: Vec<usize> = self.headers.iter().map(|h| h.chars().count()).collect();
        for r in &self.rows {
            for (w, c) in widths.iter_mut().zip(r) {
                *w = (*w).max(c.chars().count());
            }
        }
        let line = |cells: &[String]| -> String {
            let parts: Vec<String> = cells.iter().zip(&widths).map(|(c, &w)| format!("{c:>w$}")).collect();
            parts.join("  ").trim_end().to_string() + "\n"
        };
        let mut out = line(&self.headers);
        for r in &self.rows {
            out += &line(r);
        }
        out
    }

    fn csv(&self) -> String {
        let mut wr = csv::Writer::from_writer(Vec::new());
        wr.write_record(&self.headers).expect("in-memory write");
        for r in &self.rows {
            wr.write_record(r).expect("in-memory write");
        }
        String::from_utf8(wr.into_inner().expect("in-memory flush")).expect("utf-8 cells")
    }
}

/// A command result: machine-readable JSON plus a human summary and table.
#[derive(Clone, Debug)]
pub struct Report {
    pub json: Value,
    pub summary: Vec<(String, String)>,
    pub table: Option<Table>,
}

impl Report {
    pub fn new(json: Value) -> Self {
        Report { json, summary: Vec::new(), table: None }
    }

    /// A complexity series; `extra` fields are merged into the JSON object.
    pub fn series(scheme: &str, rows: Vec<SeriesRow>, extra: Value) -> Self {
        let m = rows.iter().map(|r| r.beta.len()).max().unwrap_or(0);
        let mut t = Table { headers: SeriesRow::headers(m), rows: Vec::new() };
        for r in &rows {
            t.row(r.cells(m));
        }
        let mut json = serde_json::json!({ "scheme": scheme, "rows": rows });
        if let (Value::Object(obj), Value::Object(more)) = (&mut json, extra) {
            obj.extend(more);
        }
        Report { json, summary: Vec::new(), table: Some(t) }
    }

    pub fn summary(&mut self, key: &str, value: impl ToString) {
        self.summary.push((key.to_string(), value.to_string()));
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => serde_json::to_string_pretty(&self.json).expect("report serializes") + "\n",
            Format::Csv => match &self.table {
                Some(t) => t.csv(),
                None => {
                    let mut t = Table::new(&["key", "value"]);
                    for (k, v) in &self.summary {
                        t.row(vec![k.clone(), v.clone()]);
                    }
                    t.csv()
                }
            },
            Format::Table => {
                let mut out = String::new();
                for (k, v) in &self.summary {
                    out += &format!("{k} = {v}\n");
                }
                if let Some(t) = &self.table {
                    if !out.is_empty() {
                        out.push('\n');
                    }
                    out += &t.aligned();
                }
                out
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rows() -> Vec<SeriesRow> {
        vec![
            SeriesRow { n: 0, p: Some(1), p_pt: Some(1), c: Some(CellCount::Exact(1)), beta: vec![0, 0], equal_flag: Some(true) },
            SeriesRow { n: 1, p: None, p_pt: None, c: Some(CellCount::Bounds { lower: 3, upper: 9 }), beta: vec![2, 4], equal_flag: None },
        ]
    }

    #[test]
    fn empty_series_is_header_only() {
        let r = Report::series("x", Vec::new(), Value::Null);
        assert_eq!(r.render(Format::Csv), "n,p,p_pt,c,equal_flag\n");
    }

    #[test]
    fn csv_round_trip() {
        let r = Report::series("x", rows(), Value::Null);
        assert_eq!(SeriesRow::parse_csv(&r.render(Format::Csv)).unwrap(), rows());
    }

    #[test]
    fn json_round_trip() {
        let r = Report::series("x", rows(), serde_json::json!({ "all_equal": false }));
        let v: Value = serde_json::from_str(&r.render(Format::Json)).unwrap();
        let back: Vec<SeriesRow> = serde_json::from_value(v["rows"].clone()).unwrap();
        assert_eq!(back, rows());
        assert_eq!(v["all_equal"], Value::Bool(false));
    }

    #[test]
    fn table_is_aligned() {
        let mut t = Table::new(&["a", "long"]);
        t.row(vec!["100".into(), "1".into()]);
        assert_eq!(t.aligned(), "  a  long\n100     1\n");
    }
}
