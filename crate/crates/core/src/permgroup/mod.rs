//! Partitions, permutations, conjugacy classes and characters of `S(n)`, and the
//! branching to the cyclic subgroup generated by the full cycle.

mod character;
mod partition;
mod permutation;

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use num_integer::Integer;
use serde::{Serialize, Serializer};

pub use character::{character, character_table, CharacterTable, MAX_TABLE_DEGREE};
pub use partition::{partitions, Partition};
pub use permutation::Permutation;

use crate::error::{Error, Result};

/// A conjugacy class of `S(n)`, labelled by its cycle lengths.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CycleType {
    shape: Partition,
    class_size: u64,
}

impl CycleType {
    pub fn new(shape: Partition) -> Self {
        // n! / prod_i (i^a_i a_i!)
        let n = shape.n() as u64;
        let mut size: u128 = (1..=n as u128).product();
        for (len, &count) in shape.part_counts().iter().enumerate().skip(1) {
            for c in 1..=count as u128 {
                size /= len as u128 * c;
            }
        }
        CycleType {
            shape,
            class_size: size as u64,
        }
    }

    pub fn identity(n: u32) -> Self {
        Self::new(Partition::column(n))
    }

    pub fn shape(&self) -> &Partition {
        &self.shape
    }

    pub fn n(&self) -> u32 {
        self.shape.n()
    }

    /// Number of permutations with this cycle type.
    pub fn class_size(&self) -> u64 {
        self.class_size
    }

    /// A representative permutation whose cycles occupy consecutive points.
    pub fn representative(&self) -> Permutation {
        let n = self.n() as usize;
        let mut result = Permutation::identity(n);
        let mut start = 1;
        for &len in self.shape.parts() {
            let cycle: Vec<usize> = (start..start + len as usize).collect();
            result = result.then(&Permutation::cycle(n, &cycle).expect("in range"));
            start += len as usize;
        }
        result
    }
}

impl fmt::Display for CycleType {
    /// Cycle notation with exponents, e.g. `(3)(1)^2`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let counts = self.shape.part_counts();
        for len in (1..counts.len()).rev() {
            match counts[len] {
                0 => {}
                1 => write!(f, "({len})")?,
                c => write!(f, "({len})^{c}")?,
            }
        }
        Ok(())
    }
}

impl Serialize for CycleType {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl FromStr for CycleType {
    type Err = Error;

    /// Parses `(2)^2(1)`-style labels.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::arg(format!("cannot parse cycle type {s:?}"));
        let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let mut lengths = Vec::new();
        let mut rest = s.as_str();
        while !rest.is_empty() {
            let rest_body = rest.strip_prefix('(').ok_or_else(bad)?;
            let close = rest_body.find(')').ok_or_else(bad)?;
            let len: u32 = rest_body[..close].parse().map_err(|_| bad())?;
            rest = &rest_body[close + 1..];
            let mut count = 1;
            if let Some(exp) = rest.strip_prefix('^') {
                let digits = exp.find(|c: char| !c.is_ascii_digit()).unwrap_or(exp.len());
                count = exp[..digits].parse().map_err(|_| bad())?;
                rest = &exp[digits..];
            }
            lengths.extend(std::iter::repeat_n(len, count));
        }
        Ok(CycleType::new(Partition::from_unsorted(lengths)?))
    }
}

/// The `n` powers `g, g², …, gⁿ = e` of the full cycle `g = (1,2,…,n)`.
pub fn cyclic_elements(n: usize) -> Vec<Permutation> {
    let full: Vec<usize> = (1..=n).collect();
    let g = Permutation::cycle(n, &full).expect("full cycle");
    let mut out = Vec::with_capacity(n);
    let mut acc = g.clone();
    for _ in 0..n {
        out.push(acc.clone());
        acc = acc.then(&g);
    }
    out
}

/// Cycle types met by the cyclic group `C_n`, with the number of elements in each.
///
/// `g^k` has `gcd(n,k)` cycles of length `n / gcd(n,k)`; `φ(n/d)` powers share gcd `d`.
pub fn cyclic_class_counts(n: u32) -> Vec<(CycleType, u64)> {
    let mut out = Vec::new();
    for d in 1..=n {
        if !n.is_multiple_of(d) {
            continue;
        }
        let len = n / d;
        let count = (1..=len).filter(|k| k.gcd(&len) == 1).count() as u64;
        let shape = Partition::new(vec![len; d as usize]).expect("valid");
        out.push((CycleType::new(shape), count));
    }
    out
}

/// `m(f,0)`: how often the trivial representation of `C_n` occurs in `D^f`.
pub fn trivial_multiplicity(f: &Partition) -> Result<u64> {
    let n = f.n();
    let total: i64 = cyclic_class_counts(n)
        .iter()
        .map(|(k, count)| Ok(character(f, k)? * *count as i64))
        .sum::<Result<i64>>()?;
    if total < 0 || total % n as i64 != 0 {
        return Err(Error::Consistency(format!(
            "class sum {total} for {f} is not a non-negative multiple of {n}"
        )));
    }
    Ok((total / n as i64) as u64)
}

/// The character `exp(2πi·alpha·power/n)` of the irreducible representation `D^alpha` of `C_n`.
pub fn cyclic_character(n: u32, alpha: u32, power: i64) -> Complex64 {
    let r = (alpha as i64 * power).rem_euclid(n as i64);
    match (4 * r).checked_rem(n as i64) {
        // quarter turns are exact
        Some(0) => [
            Complex64::new(1.0, 0.0),
            Complex64::new(0.0, 1.0),
            Complex64::new(-1.0, 0.0),
            Complex64::new(0.0, -1.0),
        ][(4 * r / n as i64) as usize],
        _ => Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * r as f64 / n as f64),
    }
}
