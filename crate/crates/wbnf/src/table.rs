//! Column-oriented numeric tables and their CSV form.
//!
//! Layout: `# key: value` metadata lines, one header line, then one line per
//! row. Values use Rust's shortest round-trip `f64` formatting, so parsing a
//! cell gives back the exact value. Divergent distances are written as `inf`.
//! Lines end in `\n`.

use std::io::{self, Write};

/// A rectangular table of `f64` values with a metadata block.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct SweepTable {
    columns: Vec<String>,
    rows: Vec<Vec<f64>>,
    metadata: Vec<(String, String)>,
}

impl SweepTable {
    /// An empty table with the given header.
    pub fn new<S: Into<String>>(columns: impl IntoIterator<Item = S>) -> Self {
        Self {
            columns: columns.into_iter().map(Into::into).collect(),
            ..Self::default()
        }
    }

    /// Appends a row.
    ///
    /// # Panics
    /// If the row length differs from the header, or a value is NaN or
    /// `-inf`. `+inf` is the divergence sentinel and is allowed.
    pub fn push_row(&mut self, row: Vec<f64>) {
        assert_eq!(
            row.len(),
            self.columns.len(),
            "row width must match the header"
        );
        assert!(
            row.iter().all(|v| v.is_finite() || *v == f64::INFINITY),
            "table values must be finite or +inf"
        );
        self.rows.push(row);
    }

    /// Appends a metadata entry. Newlines in `value` are replaced by spaces.
    pub fn push_meta(&mut self, key: impl Into<String>, value: impl Into<String>) {
        let value: String = value.into();
        self.metadata
            .push((key.into(), value.replace(['\n', '\r'], " ")));
    }

    /// Inserts metadata entries ahead of the existing ones.
    pub fn prepend_meta(&mut self, entries: Vec<(String, String)>) {
        let rest = std::mem::take(&mut self.metadata);
        for (k, v) in entries {
            self.push_meta(k, v);
        }
        self.metadata.extend(rest);
    }

    /// Column names.
    pub fn columns(&self) -> &[String] {
        &self.columns
    }

    /// Rows in insertion order.
    pub fn rows(&self) -> &[Vec<f64>] {
        &self.rows
    }

    /// Metadata entries in insertion order.
    pub fn metadata(&self) -> &[(String, String)] {
        &self.metadata
    }

    /// Index of a named column.
    pub fn column_index(&self, name: &str) -> Option<usize> {
        self.columns.iter().position(|c| c == name)
    }

    /// All values of a named column.
    pub fn column(&self, name: &str) -> Option<Vec<f64>> {
        let i = self.column_index(name)?;
        Some(self.rows.iter().map(|r| r[i]).collect())
    }

    /// Writes the CSV form.
    pub fn emit_csv<W: Write>(&self, mut out: W) -> io::Result<()> {
        for (k, v) in &self.metadata {
            writeln!(out, "# {k}: {v}")?;
        }
        writeln!(out, "{}", self.columns.join(","))?;
        let mut line = String::new();
        for row in &self.rows {
            line.clear();
            for (i, v) in row.iter().enumerate() {
                if i > 0 {
                    line.push(',');
                }
                line.push_str(&v.to_string());
            }
            line.push('\n');
            out.write_all(line.as_bytes())?;
        }
        Ok(())
    }

    /// The CSV form as a string.
    pub fn to_csv_string(&self) -> String {
        let mut buf = Vec::new();
        self.emit_csv(&mut buf)
            .expect("writing to a Vec cannot fail");
        String::from_utf8(buf).expect("CSV output is ASCII")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_table_is_metadata_and_header() {
        let mut t = SweepTable::new(["a", "b"]);
        t.push_meta("tool", "wbnf");
        assert_eq!(t.to_csv_string(), "# tool: wbnf\na,b\n");
    }

    #[test]
    fn single_value() {
        let mut t = SweepTable::new(["x"]);
        t.push_row(vec![0.5]);
        let csv = t.to_csv_string();
        assert_eq!(csv.lines().nth(1), Some("0.5"));
    }

    #[test]
    fn round_trip_formatting() {
        let mut t = SweepTable::new(["v"]);
        let vals = [
            0.1 + 0.2,
            1e-300,
            39e9,
            -7.450000000000001e8,
            f64::INFINITY,
            1.0 / 3.0,
        ];
        for v in vals {
            t.push_row(vec![v]);
        }
        let csv = t.to_csv_string();
        let parsed: Vec<f64> = csv.lines().skip(1).map(|l| l.parse().unwrap()).collect();
        assert_eq!(parsed, vals);
        assert!(csv.contains("\ninf\n"));
        assert!(!csv.contains('\r'));
    }

    #[test]
    fn metadata_stays_on_one_line() {
        let mut t = SweepTable::new(["v"]);
        t.push_meta("k", "a\nb");
        assert_eq!(t.to_csv_string(), "# k: a b\nv\n");
    }

    #[test]
    #[should_panic]
    fn rejects_nan() {
        SweepTable::new(["v"]).push_row(vec![f64::NAN]);
    }
}
