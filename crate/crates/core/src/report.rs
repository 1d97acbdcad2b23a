//! Per-step root tables shared by every convergence experiment.

use crate::io::{fmt_f64, json_num};
use crate::scale::Magnitude;

/// One row of a root table: the k-th term, its k-th root, and the smallest
/// root seen so far.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RootEntry {
    pub k: u64,
    pub value: f64,
    pub root: f64,
    pub running_min: f64,
}

/// Root table for a sequence `a_1, a_2, ...`.
///
/// For sequences of power norms `||x^k||` the same table is called a
/// [`ConvergenceReport`]; only the CSV header differs.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct RootReport {
    pub entries: Vec<RootEntry>,
}

/// A [`RootReport`] whose values are power norms.
pub type ConvergenceReport = RootReport;

/// Column name used for the value field of a serialized report.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ValueColumn {
    /// `k,value,root,running_min`
    Value,
    /// `k,norm,root,running_min`
    Norm,
}

impl ValueColumn {
    fn name(self) -> &'static str {
        match self {
            ValueColumn::Value => "value",
            ValueColumn::Norm => "norm",
        }
    }
}

impl RootReport {
    /// Appends term `k = len + 1` given as a log-scale magnitude.
    pub fn push_magnitude(&mut self, value: Magnitude) {
        let k = self.entries.len() as u64 + 1;
        let root = value.kth_root(k);
        let running_min = match self.entries.last() {
            Some(prev) => prev.running_min.min(root),
            None => root,
        };
        self.entries.push(RootEntry {
            k,
            value: value.to_f64(),
            root,
            running_min,
        });
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn values(&self) -> Vec<f64> {
        self.entries.iter().map(|e| e.value).collect()
    }

    pub fn roots(&self) -> Vec<f64> {
        self.entries.iter().map(|e| e.root).collect()
    }

    /// Running minimum at the last step, or `None` for an empty report.
    pub fn final_min(&self) -> Option<f64> {
        self.entries.last().map(|e| e.running_min)
    }

    pub fn last_root(&self) -> Option<f64> {
        self.entries.last().map(|e| e.root)
    }

    pub fn to_csv(&self, column: ValueColumn) -> String {
        let mut out = format!("k,{},root,running_min\n", column.name());
        for e in &self.entries {
            out.push_str(&format!(
                "{},{},{},{}\n",
                e.k,
                fmt_f64(e.value),
                fmt_f64(e.root),
                fmt_f64(e.running_min)
            ));
        }
        out
    }

    /// JSON array of records keyed like the CSV header.
    pub fn to_json(&self, column: ValueColumn) -> String {
        let rows: Vec<String> = self
            .entries
            .iter()
            .map(|e| {
                format!(
                    "{{\"k\":{},\"{}\":{},\"root\":{},\"running_min\":{}}}",
                    e.k,
                    column.name(),
                    json_num(e.value),
                    json_num(e.root),
                    json_num(e.running_min)
                )
            })
            .collect();
        format!("[{}]\n", rows.join(","))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn running_min_is_nonincreasing() {
        let mut r = RootReport::default();
        for v in [4.0, 1.0, 27.0, 1.0] {
            r.push_magnitude(Magnitude::from_f64(v));
        }
        let roots = r.roots();
        assert_eq!((roots[0], roots[1], roots[3]), (4.0, 1.0, 1.0));
        assert!((roots[2] - 3.0).abs() < 1e-15);
        let mins: Vec<f64> = r.entries.iter().map(|e| e.running_min).collect();
        assert_eq!(mins, vec![4.0, 1.0, 1.0, 1.0]);
    }

    #[test]
    fn csv_header_matches_column() {
        let mut r = RootReport::default();
        r.push_magnitude(Magnitude::from_f64(2.0));
        assert_eq!(r.to_csv(ValueColumn::Value), "k,value,root,running_min\n1,2,2,2\n");
        assert!(r.to_csv(ValueColumn::Norm).starts_with("k,norm,root,running_min\n"));
        assert_eq!(
            r.to_json(ValueColumn::Norm),
            "[{\"k\":1,\"norm\":2,\"root\":2,\"running_min\":2}]\n"
        );
    }
}
