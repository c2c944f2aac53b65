use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// An integer partition: a weakly decreasing list of positive parts.
///
/// Labels irreducible representations of `S(n)` (Young diagrams) and, read as
/// cycle lengths, conjugacy classes.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition {
    parts: Vec<u32>,
}

impl Partition {
    pub fn new(parts: Vec<u32>) -> Result<Self> {
        if parts.is_empty() {
            return Err(Error::arg("a partition needs at least one part"));
        }
        if parts.contains(&0) {
            return Err(Error::arg(format!("partition {parts:?} has a zero part")));
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::arg(format!(
                "partition {parts:?} is not non-increasing"
            )));
        }
        Ok(Partition { parts })
    }

    /// Sorts arbitrary positive parts into a partition.
    pub fn from_unsorted(mut parts: Vec<u32>) -> Result<Self> {
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Self::new(parts)
    }

    /// The single-row partition `[n]`.
    pub fn row(n: u32) -> Self {
        Partition { parts: vec![n] }
    }

    /// The single-column partition `[1^n]`.
    pub fn column(n: u32) -> Self {
        Partition {
            parts: vec![1; n as usize],
        }
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    pub fn n(&self) -> u32 {
        self.parts.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// The associate partition (transposed Young diagram).
    pub fn conjugate(&self) -> Partition {
        let cols = self.parts[0] as usize;
        let parts = (0..cols)
            .map(|c| self.parts.iter().filter(|&&p| p as usize > c).count() as u32)
            .collect();
        Partition { parts }
    }

    /// Number of standard Young tableaux, by the hook length formula.
    pub fn dimension(&self) -> u64 {
        let conj = self.conjugate();
        let n = self.n() as u64;
        let mut num: u128 = (1..=n as u128).product();
        let mut hooks: u128 = 1;
        for (r, &len) in self.parts.iter().enumerate() {
            for c in 0..len as usize {
                let arm = len as usize - c - 1;
                let leg = conj.parts[c] as usize - r - 1;
                hooks *= (arm + leg + 1) as u128;
            }
        }
        num /= hooks;
        num as u64
    }

    /// Multiplicity `a_i` of each part size `i`, indexed from 1.
    pub(crate) fn part_counts(&self) -> Vec<u32> {
        let mut counts = vec![0u32; self.n() as usize + 1];
        for &p in &self.parts {
            counts[p as usize] += 1;
        }
        counts
    }

    /// Compact label such as `311`; comma separated when a part exceeds 9.
    pub fn compact(&self) -> String {
        if self.parts.iter().all(|&p| p < 10) {
            self.parts.iter().map(|p| p.to_string()).collect()
        } else {
            self.parts
                .iter()
                .map(|p| p.to_string())
                .collect::<Vec<_>>()
                .join(",")
        }
    }
}

/// All partitions of `n` in reverse lexicographic order: `[n]` first, `[1^n]` last.
pub fn partitions(n: u32) -> Vec<Partition> {
    fn rec(remaining: u32, max: u32, prefix: &mut Vec<u32>, out: &mut Vec<Partition>) {
        if remaining == 0 {
            out.push(Partition {
                parts: prefix.clone(),
            });
            return;
        }
        for p in (1..=remaining.min(max)).rev() {
            prefix.push(p);
            rec(remaining - p, p, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if n > 0 {
        rec(n, n, &mut Vec::new(), &mut out);
    }
    out
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", self.compact())
    }
}

impl Serialize for Partition {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl FromStr for Partition {
    type Err = Error;

    /// Accepts `[311]`, `311`, `3,1,1` and `[3,1,1]`.
    fn from_str(s: &str) -> Result<Self> {
        let body = s
            .trim()
            .trim_start_matches('[')
            .trim_end_matches(']')
            .trim();
        let parts: Option<Vec<u32>> = if body.contains(',') {
            body.split(',').map(|t| t.trim().parse().ok()).collect()
        } else {
            body.chars().map(|c| c.to_digit(10)).collect()
        };
        let parts = parts.ok_or_else(|| Error::arg(format!("cannot parse partition {s:?}")))?;
        Partition::new(parts)
    }
}
