use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use crate::grading::GroupElement;

/// One named identity checked over a family of cases.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub cases: usize,
    pub failures: usize,
    /// First failing case, with its residual.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

impl Check {
    pub fn new(name: impl Into<String>) -> Self {
        Check {
            name: name.into(),
            cases: 0,
            failures: 0,
            witness: None,
        }
    }

    pub fn passed(&self) -> bool {
        self.failures == 0
    }

    /// Records one case; `witness` is only built on failure.
    pub fn record(&mut self, ok: bool, witness: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok {
            self.failures += 1;
            if self.witness.is_none() {
                self.witness = Some(witness());
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub subject: String,
    pub checks: Vec<Check>,
    #[serde(skip_serializing_if = "BTreeMap::is_empty")]
    pub notes: BTreeMap<String, String>,
}

impl ValidationReport {
    pub fn new(subject: impl Into<String>) -> Self {
        ValidationReport {
            subject: subject.into(),
            checks: Vec::new(),
            notes: BTreeMap::new(),
        }
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(Check::passed)
    }

    pub fn push(&mut self, check: Check) {
        self.checks.push(check);
    }

    pub fn note(&mut self, key: impl Into<String>, value: impl Into<String>) {
        self.notes.insert(key.into(), value.into());
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn failed_checks(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed())
    }

    /// Appends another report's checks, prefixing their names with its subject.
    pub fn absorb(&mut self, other: ValidationReport) {
        for mut c in other.checks {
            c.name = format!("{}/{}", other.subject, c.name);
            self.checks.push(c);
        }
        for (k, v) in other.notes {
            self.notes.insert(format!("{}/{}", other.subject, k), v);
        }
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}", self.subject)?;
        let width = self.checks.iter().map(|c| c.name.len()).max().unwrap_or(0);
        for c in &self.checks {
            let status = if c.passed() { "ok" } else { "FAIL" };
            write!(f, "  {:<width$}  {:>4}  {} cases", c.name, status, c.cases)?;
            if let Some(w) = &c.witness {
                write!(f, "  ({} failing; first: {w})", c.failures)?;
            }
            writeln!(f)?;
        }
        for (k, v) in &self.notes {
            writeln!(f, "  {k} = {v}")?;
        }
        Ok(())
    }
}

/// Dimensions indexed by cohomological degree n and internal degree h.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct DimTable {
    entries: BTreeMap<(usize, GroupElement), usize>,
}

#[derive(Serialize)]
struct DimRow<'a> {
    n: usize,
    h: &'a GroupElement,
    dim: usize,
}

impl Serialize for DimTable {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(
            self.entries
                .iter()
                .map(|((n, h), &dim)| DimRow { n: *n, h, dim }),
        )
    }
}

impl DimTable {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, n: usize, h: GroupElement, dim: usize) {
        self.entries.insert((n, h), dim);
    }

    pub fn get(&self, n: usize, h: &GroupElement) -> Option<usize> {
        self.entries.get(&(n, h.clone())).copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, &GroupElement, usize)> {
        self.entries.iter().map(|((n, h), &d)| (*n, h, d))
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Σ_h dim for a fixed n.
    pub fn total(&self, n: usize) -> usize {
        self.iter()
            .filter(|(k, _, _)| *k == n)
            .map(|(_, _, d)| d)
            .sum()
    }

    pub fn degrees(&self) -> Vec<GroupElement> {
        let mut v: Vec<GroupElement> = self.entries.keys().map(|(_, h)| h.clone()).collect();
        v.sort();
        v.dedup();
        v
    }

    pub fn max_n(&self) -> Option<usize> {
        self.entries.keys().map(|(n, _)| *n).max()
    }
}

impl fmt::Display for DimTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let hs = self.degrees();
        let labels: Vec<String> = hs.iter().map(|h| format!("h={h}")).collect();
        let w = labels.iter().map(String::len).max().unwrap_or(1).max(3);
        write!(f, "{:>4}", "n")?;
        for l in &labels {
            write!(f, "  {l:>w$}")?;
        }
        writeln!(f)?;
        for n in 0..=self.max_n().unwrap_or(0) {
            write!(f, "{n:>4}")?;
            for h in &hs {
                match self.get(n, h) {
                    Some(d) => write!(f, "  {d:>w$}")?,
                    None => write!(f, "  {:>w$}", "-")?,
                }
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn first_witness_is_kept() {
        let mut c = Check::new("t");
        c.record(true, || unreachable!());
        c.record(false, || "a".into());
        c.record(false, || "b".into());
        assert_eq!((c.cases, c.failures), (3, 2));
        assert_eq!(c.witness.as_deref(), Some("a"));
    }
}
