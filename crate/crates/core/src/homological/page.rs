use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::series::DimTable;

/// One cell of a spectral-sequence page: a total degree, optionally split
/// by filtration `s` and internal degree `t`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PageEntry {
    pub n: u32,
    pub s: Option<u32>,
    pub t: Option<u32>,
    pub dim: u64,
    pub representatives: Vec<String>,
}

/// Dimensions (and representative classes) of a page.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PageTable {
    pub name: String,
    pub entries: Vec<PageEntry>,
}

impl PageTable {
    pub fn new(name: &str) -> Self {
        PageTable {
            name: name.to_string(),
            entries: Vec::new(),
        }
    }

    pub fn push(&mut self, entry: PageEntry) {
        self.entries.push(entry);
    }

    /// Largest total degree present.
    pub fn max_degree(&self) -> Option<u32> {
        self.entries.iter().map(|e| e.n).max()
    }

    /// Sum of the dimensions in each total degree `0..=max`.
    pub fn totals(&self) -> DimTable {
        let max = self.max_degree().unwrap_or(0);
        let mut dims = vec![0u64; max as usize + 1];
        for e in &self.entries {
            dims[e.n as usize] += e.dim;
        }
        DimTable::new(&self.name, 0, dims)
    }

    pub fn dim_at(&self, n: u32) -> u64 {
        self.entries.iter().filter(|e| e.n == n).map(|e| e.dim).sum()
    }

    /// `n,s,t,dim` lines; `s` and `t` are empty when not tracked.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("n,s,t,dim\n");
        let opt = |v: Option<u32>| v.map(|x| x.to_string()).unwrap_or_default();
        for e in &self.entries {
            let _ = writeln!(out, "{},{},{},{}", e.n, opt(e.s), opt(e.t), e.dim);
        }
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("plain data serializes")
    }

    /// A dot chart of the total dimensions: one column per degree, one row
    /// per dimension level, with the degree and dimension rows underneath,
    /// followed by the representatives in each degree.
    pub fn render_chart(&self) -> String {
        let totals = self.totals();
        let width = 3;
        let top = totals.dims.iter().copied().max().unwrap_or(0);
        let mut out = String::new();
        let _ = writeln!(out, "{}", self.name);
        for level in (1..=top).rev() {
            let mut line = format!("{level:>4} |");
            for &d in &totals.dims {
                line.push_str(&format!("{:>width$}", if d >= level { "*" } else { "." }));
            }
            let _ = writeln!(out, "{}", line.trim_end());
        }
        let rule = "-".repeat(width * totals.dims.len());
        let _ = writeln!(out, "     +{rule}");
        let mut degrees = String::from("   n  ");
        let mut dims = String::from(" dim  ");
        for (n, d) in totals.degrees.iter().zip(&totals.dims) {
            degrees.push_str(&format!("{n:>width$}"));
            dims.push_str(&format!("{d:>width$}"));
        }
        let _ = writeln!(out, "{}", degrees.trim_end());
        let _ = writeln!(out, "{}", dims.trim_end());
        for e in self.entries.iter().filter(|e| !e.representatives.is_empty()) {
            let _ = writeln!(out, "  n = {:<3} {}", e.n, e.representatives.join(", "));
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn entry(n: u32, dim: u64) -> PageEntry {
        PageEntry {
            n,
            s: None,
            t: None,
            dim,
            representatives: Vec::new(),
        }
    }

    #[test]
    fn totals_and_chart() {
        let mut p = PageTable::new("toy");
        p.push(entry(0, 1));
        p.push(entry(2, 2));
        assert_eq!(p.totals().dims, vec![1, 0, 2]);
        let chart = p.render_chart();
        assert!(chart.contains("   2 |  .  .  *"));
        assert!(chart.contains(" dim    1  0  2"));
        assert!(p.to_csv().starts_with("n,s,t,dim\n0,,,1\n"));
    }
}
