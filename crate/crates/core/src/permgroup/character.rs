//! Exact characters of the symmetric group by the Murnaghan–Nakayama rule.

use std::collections::HashMap;

use serde::Serialize;

use super::{partitions, CycleType, Partition};
use crate::error::{Error, Result};

/// `χ^f(k)` for a partition `f` and a cycle type `k` of the same `n`.
pub fn character(f: &Partition, k: &CycleType) -> Result<i64> {
    if f.n() != k.n() {
        return Err(Error::arg(format!(
            "partition {f} (n={}) and class {k} (n={}) belong to different groups",
            f.n(),
            k.n()
        )));
    }
    let mut beads = beta_set(f);
    // strip the longest cycles first; the recursion tree is smallest that way
    let lengths: Vec<u32> = k.shape().parts().to_vec();
    let mut memo = HashMap::new();
    Ok(strip(&mut beads, &lengths, &mut memo))
}

/// First-column hook lengths `λ_i + (ℓ - i)`, a set of distinct bead positions.
fn beta_set(f: &Partition) -> Vec<u32> {
    let len = f.len() as u32;
    f.parts()
        .iter()
        .enumerate()
        .map(|(i, &p)| p + len - 1 - i as u32)
        .collect()
}

fn strip(beads: &mut Vec<u32>, lengths: &[u32], memo: &mut HashMap<(Vec<u32>, usize), i64>) -> i64 {
    let Some((&r, rest)) = lengths.split_first() else {
        return 1;
    };
    let mut key = beads.clone();
    key.sort_unstable();
    if let Some(&v) = memo.get(&(key.clone(), lengths.len())) {
        return v;
    }
    let mut total = 0;
    for idx in 0..beads.len() {
        let b = beads[idx];
        if b < r || beads.contains(&(b - r)) {
            continue;
        }
        // removing a rim hook of length r moves a bead from b to b - r;
        // its leg length is the number of beads jumped over
        let leg = beads.iter().filter(|&&x| x > b - r && x < b).count();
        beads[idx] = b - r;
        let sign = if leg % 2 == 0 { 1 } else { -1 };
        total += sign * strip(beads, rest, memo);
        beads[idx] = b;
    }
    memo.insert((key, lengths.len()), total);
    total
}

/// The full character table of `S(n)`.
#[derive(Clone, Debug, Serialize)]
pub struct CharacterTable {
    pub n: u32,
    pub order: u64,
    pub partitions: Vec<Partition>,
    pub classes: Vec<CycleType>,
    /// `values[f][k]`, rows follow `partitions`, columns follow `classes`.
    pub values: Vec<Vec<i64>>,
}

pub const MAX_TABLE_DEGREE: u32 = 8;

pub fn character_table(n: u32) -> Result<CharacterTable> {
    if !(2..=MAX_TABLE_DEGREE).contains(&n) {
        return Err(Error::arg(format!(
            "character tables are supported for 2 <= n <= {MAX_TABLE_DEGREE}, got {n}"
        )));
    }
    let parts = partitions(n);
    let classes: Vec<CycleType> = parts.iter().cloned().map(CycleType::new).collect();
    let values = parts
        .iter()
        .map(|f| {
            classes
                .iter()
                .map(|k| character(f, k).expect("same degree"))
                .collect()
        })
        .collect();
    Ok(CharacterTable {
        n,
        order: (1..=n as u64).product(),
        partitions: parts,
        classes,
        values,
    })
}

impl CharacterTable {
    pub fn partition_index(&self, f: &Partition) -> Option<usize> {
        self.partitions.iter().position(|p| p == f)
    }

    pub fn class_index(&self, k: &CycleType) -> Option<usize> {
        self.classes.iter().position(|c| c.shape() == k.shape())
    }

    pub fn get(&self, f: &Partition, k: &CycleType) -> Option<i64> {
        Some(self.values[self.partition_index(f)?][self.class_index(k)?])
    }

    /// Row orthogonality `Σ_k n(k) χ^f(k) χ^g(k) = |G| δ_fg`; returns the first violation.
    pub fn check_row_orthogonality(&self) -> std::result::Result<(), (usize, usize, i128)> {
        let rows = self.values.len();
        for a in 0..rows {
            for b in 0..rows {
                let s: i128 = self
                    .classes
                    .iter()
                    .enumerate()
                    .map(|(k, c)| {
                        c.class_size() as i128
                            * self.values[a][k] as i128
                            * self.values[b][k] as i128
                    })
                    .sum();
                let expected = if a == b { self.order as i128 } else { 0 };
                if s != expected {
                    return Err((a, b, s));
                }
            }
        }
        Ok(())
    }

    /// Column orthogonality `Σ_f χ^f(k) χ^f(k') = δ_kk' |G| / n(k)`.
    pub fn check_column_orthogonality(&self) -> std::result::Result<(), (usize, usize, i128)> {
        let cols = self.classes.len();
        for a in 0..cols {
            for b in 0..cols {
                let s: i128 = self
                    .values
                    .iter()
                    .map(|row| row[a] as i128 * row[b] as i128)
                    .sum();
                let expected = if a == b {
                    (self.order / self.classes[a].class_size()) as i128
                } else {
                    0
                };
                if s != expected {
                    return Err((a, b, s));
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ct(s: &str) -> CycleType {
        s.parse().unwrap()
    }

    fn p(s: &str) -> Partition {
        s.parse().unwrap()
    }

    #[test]
    fn known_values() {
        assert_eq!(character(&p("[32]"), &ct("(2)(1)^3")).unwrap(), 1);
        assert_eq!(character(&p("[311]"), &ct("(2)^2(1)")).unwrap(), -2);
        assert_eq!(character(&p("[21]"), &ct("(3)")).unwrap(), -1);
        for k in partitions(6) {
            assert_eq!(
                character(&Partition::row(6), &CycleType::new(k)).unwrap(),
                1
            );
        }
    }

    #[test]
    fn sign_character_of_column() {
        for k in partitions(6) {
            let ct = CycleType::new(k.clone());
            let sign = if (6 - k.len()) % 2 == 0 { 1 } else { -1 };
            assert_eq!(character(&Partition::column(6), &ct).unwrap(), sign);
        }
    }

    #[test]
    fn mismatched_degree_is_rejected() {
        assert!(matches!(
            character(&p("[32]"), &ct("(3)")),
            Err(Error::Argument(_))
        ));
    }

    #[test]
    fn identity_column_gives_dimensions() {
        for n in 2..=8 {
            let t = character_table(n).unwrap();
            let e = t.class_index(&CycleType::identity(n)).unwrap();
            for (f, row) in t.partitions.iter().zip(&t.values) {
                assert_eq!(row[e] as u64, f.dimension());
            }
        }
    }

    #[test]
    fn orthogonality_up_to_eight() {
        for n in 2..=8 {
            let t = character_table(n).unwrap();
            assert_eq!(t.check_row_orthogonality(), Ok(()), "rows of S({n})");
            assert_eq!(t.check_column_orthogonality(), Ok(()), "columns of S({n})");
        }
    }

    #[test]
    fn sum_of_squared_dimensions() {
        for n in 3..=5u32 {
            let t = character_table(n).unwrap();
            let e = t.class_index(&CycleType::identity(n)).unwrap();
            let s: i64 = t.values.iter().map(|r| r[e] * r[e]).sum();
            assert_eq!(s as u64, t.order);
        }
    }

    #[test]
    fn range_checked() {
        assert!(character_table(1).is_err());
        assert!(character_table(9).is_err());
    }
}
