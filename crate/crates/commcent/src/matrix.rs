//! 5x5 comparison grids: classical measures as rows, community-aware as
//! columns, one statistic per matrix.

use serde::Serialize;

use crate::centrality::Measure;

/// Which statistic a matrix holds.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum StatKind {
    TauB,
    Rbo,
}

impl StatKind {
    pub fn id(self) -> &'static str {
        match self {
            StatKind::TauB => "tau_b",
            StatKind::Rbo => "rbo",
        }
    }
}

/// Grid of statistic values; `None` marks a comparison that is undefined
/// (a fully tied vector) and renders as a blank cell.
#[derive(Debug, Clone, PartialEq)]
pub struct ComparisonMatrix {
    pub kind: StatKind,
    pub values: [[Option<f64>; 5]; 5],
    /// Statistic parameters, e.g. RBO's persistence.
    pub parameters: Vec<(String, String)>,
}

impl ComparisonMatrix {
    pub const ROWS: [Measure; 5] = Measure::CLASSICAL;
    pub const COLUMNS: [Measure; 5] = Measure::COMMUNITY_AWARE;

    pub fn new(kind: StatKind, values: [[Option<f64>; 5]; 5]) -> Self {
        ComparisonMatrix { kind, values, parameters: Vec::new() }
    }

    pub fn with_parameter(mut self, key: &str, value: impl ToString) -> Self {
        self.parameters.push((key.to_string(), value.to_string()));
        self
    }

    pub fn get(&self, row: usize, col: usize) -> Option<f64> {
        self.values[row][col]
    }

    /// Every defined entry, with its row and column measures.
    pub fn entries(&self) -> impl Iterator<Item = (Measure, Measure, Option<f64>)> + '_ {
        Self::ROWS.iter().enumerate().flat_map(move |(r, &row)| {
            Self::COLUMNS
                .iter()
                .enumerate()
                .map(move |(c, &col)| (row, col, self.values[r][c]))
        })
    }

    /// CSV with axis labels; undefined cells are empty fields.
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("# statistic={}\n", self.kind.id()));
        for (k, v) in &self.parameters {
            out.push_str(&format!("# {k}={v}\n"));
        }
        out.push_str("measure");
        for col in Self::COLUMNS {
            out.push(',');
            out.push_str(col.axis_label());
        }
        out.push('\n');
        for (r, row) in Self::ROWS.iter().enumerate() {
            out.push_str(row.axis_label());
            for c in 0..5 {
                out.push(',');
                if let Some(v) = self.values[r][c] {
                    out.push_str(&format!("{v:?}"));
                }
            }
            out.push('\n');
        }
        out
    }

    pub fn to_json_value(&self) -> serde_json::Value {
        let params: serde_json::Map<String, serde_json::Value> = self
            .parameters
            .iter()
            .map(|(k, v)| (k.clone(), serde_json::Value::String(v.clone())))
            .collect();
        serde_json::json!({
            "statistic": self.kind.id(),
            "parameters": params,
            "rows": Self::ROWS.iter().map(|m| m.id()).collect::<Vec<_>>(),
            "columns": Self::COLUMNS.iter().map(|m| m.id()).collect::<Vec<_>>(),
            "values": self.values,
        })
    }

    /// Range check: tau entries within [-1, 1], RBO within [0, 1].
    pub fn entries_in_range(&self) -> bool {
        let (lo, hi) = match self.kind {
            StatKind::TauB => (-1.0, 1.0),
            StatKind::Rbo => (0.0, 1.0),
        };
        self.values
            .iter()
            .flatten()
            .flatten()
            .all(|v| (lo..=hi).contains(v))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> ComparisonMatrix {
        let mut values = [[None; 5]; 5];
        for (r, row) in values.iter_mut().enumerate() {
            for (c, cell) in row.iter_mut().enumerate() {
                *cell = Some((r as f64 - c as f64) / 10.0);
            }
        }
        values[2][3] = None;
        ComparisonMatrix::new(StatKind::TauB, values).with_parameter("seed", 7)
    }

    #[test]
    fn csv_layout_and_blanks() {
        let csv = sample().to_csv();
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines[0], "# statistic=tau_b");
        assert_eq!(lines[1], "# seed=7");
        assert_eq!(lines[2], "measure,β_BC,β_CHB,β_PC,β_CBM,β_NNC");
        assert!(lines[3].starts_with("α_d,"));
        // row α_c has its β_CBM cell blank
        let alpha_c = lines.iter().find(|l| l.starts_with("α_c,")).unwrap();
        let fields: Vec<&str> = alpha_c.split(',').collect();
        assert_eq!(fields[4], "");
        assert_eq!(lines.len(), 3 + 5);
    }

    #[test]
    fn json_shape() {
        let v = sample().to_json_value();
        assert_eq!(v["statistic"], "tau_b");
        assert_eq!(v["rows"][0], "degree");
        assert_eq!(v["columns"][4], "nnc");
        assert!(v["values"][2][3].is_null());
        assert_eq!(v["parameters"]["seed"], "7");
    }

    #[test]
    fn range_check_flags_out_of_band_values() {
        let mut m = sample();
        assert!(m.entries_in_range());
        m.values[0][0] = Some(1.5);
        assert!(!m.entries_in_range());
    }
}
