//! Multiplicities for the chains `O(2) > S(3) > C₃`, `O(3) > S(4) > C₄` and
//! `O(4) > S(5) > C₅`.
//!
//! `m(λ, f) = (1/n!) Σ_k n(k) χ^λ(k) χ^f(k)` over the classes `k` of `S(n)`, and the
//! number of `C_n`-periodic states in `λ` is `m(λ, 0) = Σ_f m(λ, f) m(f, 0)`.

use std::fmt;
use std::sync::OnceLock;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{round_count, Error, Result};
use crate::permgroup::{
    character, character_table, partitions, trivial_multiplicity, CharacterTable, CycleType,
    Partition, Permutation,
};
use crate::weylaction::{
    character_period, class_representatives, operator_character, GroupOperator,
};
use crate::youngrep::tetrahedral_primed_generators;

/// Distance from an integer tolerated when rounding a multiplicity.
pub const ROUNDING_TOL: f64 = 1e-6;

/// Largest `2j` accepted by [`table_4_9`].
pub const MAX_TABLE_TWO_J: u32 = 200;

/// An irreducible representation of `O(2)`: `Y_0`, or the pair `Y_{m,ε}` for `m > 0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct O2Label {
    pub m: u32,
    pub epsilon: Option<i8>,
}

impl O2Label {
    pub fn new(m: u32, epsilon: Option<i8>) -> Result<Self> {
        match (m, epsilon) {
            (0, None) | (1.., Some(1 | -1)) => Ok(O2Label { m, epsilon }),
            (0, Some(_)) => Err(Error::arg("ε is undefined for m = 0")),
            _ => Err(Error::arg(format!("m = {m} needs ε = ±1, got {epsilon:?}"))),
        }
    }

    pub fn nu(&self) -> u32 {
        self.m % 3
    }

    /// All labels with `m ≤ max`, `ε = +1` before `ε = −1`.
    pub fn up_to(max: u32) -> Vec<O2Label> {
        let mut out = vec![O2Label {
            m: 0,
            epsilon: None,
        }];
        for m in 1..=max {
            out.push(O2Label {
                m,
                epsilon: Some(1),
            });
            out.push(O2Label {
                m,
                epsilon: Some(-1),
            });
        }
        out
    }
}

impl fmt::Display for O2Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.epsilon {
            None => write!(f, "(m={})", self.m),
            Some(e) => write!(f, "(m={},ε={})", self.m, if e > 0 { "+" } else { "-" }),
        }
    }
}

/// The `S(3)` representation carried by an `O(2)` label and its count of
/// `C₃`-invariants.
///
/// For `m ≡ 0 mod 3` the reflection `φ → π − φ` acts on `Y_{m,ε}` by `ε`, giving
/// `[3]` or `[111]`; otherwise the pair `Y_{m,±}` spans `[21]`.
pub fn o2_reduce(label: &O2Label) -> Result<(Partition, u64)> {
    let f = match (label.nu(), label.epsilon) {
        (_, None) => Partition::row(3),
        (0, Some(1)) => Partition::row(3),
        (0, Some(_)) => Partition::column(3),
        _ => Partition::new(vec![2, 1])?,
    };
    let m0 = trivial_multiplicity(&f)?;
    Ok((f, m0))
}

/// An irreducible representation `(l, κ)` of `O(3) = SO(3) × {1, P}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct O3Label {
    pub l: u32,
    pub kappa: i8,
}

impl O3Label {
    pub fn new(l: u32, kappa: i8) -> Result<Self> {
        if kappa != 1 && kappa != -1 {
            return Err(Error::arg(format!("κ must be ±1, got {kappa}")));
        }
        Ok(O3Label { l, kappa })
    }

    /// The label with the parity `κ = (−1)^l` of the spherical harmonics.
    pub fn natural(l: u32) -> Self {
        O3Label {
            l,
            kappa: if l.is_multiple_of(2) { 1 } else { -1 },
        }
    }
}

impl fmt::Display for O3Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.l, self.kappa)
    }
}

/// `Σ_{m=−l}^{l} e^{imφ}`.
fn so3_character(l: u32, phi: f64) -> f64 {
    1.0 + (1..=l).map(|m| 2.0 * (m as f64 * phi).cos()).sum::<f64>()
}

/// `χ^{(l,κ)}` on the tetrahedral `[31]'` image of `p ∈ S(4)`.
///
/// Improper matrices are written `g = −R` and contribute `κ χ_l(R)`.
pub fn o3_character(label: &O3Label, p: &Permutation) -> f64 {
    let primed = tetrahedral_primed_generators();
    let g = primed.matrix(p, false);
    let det = g.determinant();
    let (r, sign) = if det < 0.0 {
        (-g, label.kappa as f64)
    } else {
        (g, 1.0)
    };
    let cos_phi = ((r.trace() - 1.0) / 2.0).clamp(-1.0, 1.0);
    sign * so3_character(label.l, cos_phi.acos())
}

fn s4_table() -> &'static CharacterTable {
    static TABLE: OnceLock<CharacterTable> = OnceLock::new();
    TABLE.get_or_init(|| character_table(4).expect("S(4) table"))
}

fn s5_table() -> &'static CharacterTable {
    static TABLE: OnceLock<CharacterTable> = OnceLock::new();
    TABLE.get_or_init(|| character_table(5).expect("S(5) table"))
}

fn check_degree(f: &Partition, n: u32) -> Result<()> {
    if f.n() != n {
        return Err(Error::arg(format!("{f} is not a partition of {n}")));
    }
    Ok(())
}

/// `(1/n!) Σ_k n(k) χ(k) χ^f(k)`, rounded.
fn class_inner_product(
    table: &CharacterTable,
    f: &Partition,
    chi: impl Fn(&CycleType) -> f64,
    context: &str,
) -> Result<u64> {
    let sum: f64 = table
        .classes
        .iter()
        .map(|k| Ok(k.class_size() as f64 * chi(k) * character(f, k)? as f64))
        .sum::<Result<f64>>()?;
    round_count(sum / table.order as f64, ROUNDING_TOL, context)
}

pub fn multiplicity_o3_s4(label: &O3Label, f: &Partition) -> Result<u64> {
    check_degree(f, 4)?;
    class_inner_product(
        s4_table(),
        f,
        |k| o3_character(label, &k.representative()),
        &format!("m({label}, {f})"),
    )
}

/// Class representatives of `S(5)` with their `O(4)` operators, in character-table order.
fn s5_operators() -> &'static [(CycleType, GroupOperator)] {
    static OPS: OnceLock<Vec<(CycleType, GroupOperator)>> = OnceLock::new();
    OPS.get_or_init(|| {
        let reps = class_representatives();
        s5_table()
            .classes
            .iter()
            .map(|k| {
                let rep = reps.iter().find(|r| &r.class == k).expect("every class");
                (k.clone(), rep.operator)
            })
            .collect()
    })
}

/// `χ^{(j,j)}(k)` for a class `k` of `S(5)`.
pub fn o4_class_character(two_j: u32, k: &CycleType) -> Result<f64> {
    s5_operators()
        .iter()
        .find(|(c, _)| c == k)
        .map(|(_, op)| operator_character(two_j, op))
        .ok_or_else(|| Error::arg(format!("{k} is not a class of S(5)")))
}

pub fn multiplicity_o4_s5(two_j: u32, f: &Partition) -> Result<u64> {
    check_degree(f, 5)?;
    let ops = s5_operators();
    class_inner_product(
        s5_table(),
        f,
        |k| {
            let (_, op) = ops.iter().find(|(c, _)| c == k).expect("every class");
            operator_character(two_j, op)
        },
        &format!("m(({}/2,{}/2), {f})", two_j, two_j),
    )
}

pub fn periodic_count_o4(two_j: u32) -> Result<u64> {
    partitions(5).iter().try_fold(0, |acc, f| {
        Ok(acc + multiplicity_o4_s5(two_j, f)? * trivial_multiplicity(f)?)
    })
}

/// Which reduction a [`MultiplicityTable`] describes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Chain {
    O2s3c3,
    O3s4c4,
    O4s5c5,
}

impl Chain {
    pub fn id(&self) -> &'static str {
        match self {
            Chain::O2s3c3 => "o2s3c3",
            Chain::O3s4c4 => "o3s4c4",
            Chain::O4s5c5 => "o4s5c5",
        }
    }
}

impl std::str::FromStr for Chain {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "o2s3c3" => Ok(Chain::O2s3c3),
            "o3s4c4" => Ok(Chain::O3s4c4),
            "o4s5c5" => Ok(Chain::O4s5c5),
            other => Err(Error::arg(format!("unknown chain {other:?}"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MultiplicityRow {
    pub label: String,
    /// Dimension of the `O(n)` representation.
    pub dimension: u64,
    /// `m(label, f)`, one entry per column partition.
    pub entries: Vec<u64>,
    /// `m(label, 0)`.
    pub periodic: u64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MultiplicityTable {
    pub chain: Chain,
    pub partitions: Vec<Partition>,
    /// `m(f, 0)` for each column.
    pub trivial_branching: Vec<u64>,
    pub rows: Vec<MultiplicityRow>,
    /// `ν₀(f) = Σ_rows m(label, f) m(f, 0)`.
    pub totals: Vec<u64>,
    pub total_periodic: u64,
    pub total_dimension: u64,
}

impl MultiplicityTable {
    fn assemble(
        chain: Chain,
        partitions: Vec<Partition>,
        rows: Vec<MultiplicityRow>,
    ) -> Result<Self> {
        let trivial_branching = partitions
            .iter()
            .map(trivial_multiplicity)
            .collect::<Result<Vec<_>>>()?;
        let totals = (0..partitions.len())
            .map(|c| rows.iter().map(|r| r.entries[c]).sum::<u64>() * trivial_branching[c])
            .collect();
        let table = MultiplicityTable {
            chain,
            total_periodic: rows.iter().map(|r| r.periodic).sum(),
            total_dimension: rows.iter().map(|r| r.dimension).sum(),
            partitions,
            trivial_branching,
            rows,
            totals,
        };
        table.dimension_audit()?;
        Ok(table)
    }

    /// Checks `Σ_f dim(f) m(label, f) = dim(label)` on every row.
    pub fn dimension_audit(&self) -> Result<()> {
        for row in &self.rows {
            let sum: u64 = row
                .entries
                .iter()
                .zip(&self.partitions)
                .map(|(m, f)| m * f.dimension())
                .sum();
            if sum != row.dimension {
                return Err(Error::Consistency(format!(
                    "{:?} row {}: Σ dim(f)·m = {sum}, expected {}",
                    self.chain, row.label, row.dimension
                )));
            }
        }
        Ok(())
    }

    pub fn column(&self, f: &Partition) -> Option<Vec<u64>> {
        let c = self.partitions.iter().position(|p| p == f)?;
        Some(self.rows.iter().map(|r| r.entries[c]).collect())
    }

    pub fn periodic_counts(&self) -> Vec<u64> {
        self.rows.iter().map(|r| r.periodic).collect()
    }
}

fn row_from(
    label: String,
    dimension: u64,
    parts: &[Partition],
    entries: Vec<u64>,
) -> Result<MultiplicityRow> {
    let periodic = entries
        .iter()
        .zip(parts)
        .map(|(m, f)| Ok(m * trivial_multiplicity(f)?))
        .sum::<Result<u64>>()?;
    Ok(MultiplicityRow {
        label,
        dimension,
        entries,
        periodic,
    })
}

/// Rows `Y_0, Y_{m,±}` for `m ≤ max`, with one-dimensional rows for each `ε`.
pub fn table_o2(max_m: u32) -> Result<MultiplicityTable> {
    let parts = partitions(3);
    let rows = O2Label::up_to(max_m)
        .iter()
        .map(|label| {
            let (f, _) = o2_reduce(label)?;
            // the [21] pair is shared by both ε; give each ε half of it
            let entries = parts.iter().map(|p| u64::from(*p == f)).collect();
            let dimension = if f.dimension() == 2 { 2 } else { 1 };
            row_from(label.to_string(), dimension, &parts, entries)
        })
        .collect::<Result<Vec<_>>>()?;
    // fold each (m, ±) pair that carries [21] into a single two-dimensional row
    let mut merged: Vec<MultiplicityRow> = Vec::new();
    for row in rows {
        if row.dimension == 2 {
            if let Some(prev) = merged.last() {
                if prev.dimension == 2
                    && prev.entries == row.entries
                    && prev.label.ends_with("ε=+)")
                {
                    let m = prev
                        .label
                        .trim_start_matches("(m=")
                        .split(',')
                        .next()
                        .unwrap()
                        .to_string();
                    merged.last_mut().unwrap().label = format!("(m={m},ε=±)");
                    continue;
                }
            }
        }
        merged.push(row);
    }
    MultiplicityTable::assemble(Chain::O2s3c3, parts, merged)
}

/// Rows `(l, (−1)^l)` for `l ≤ max_l`.
pub fn table_o3(max_l: u32) -> Result<MultiplicityTable> {
    let parts = partitions(4);
    let rows = (0..=max_l)
        .map(|l| {
            let label = O3Label::natural(l);
            let entries = parts
                .iter()
                .map(|f| multiplicity_o3_s4(&label, f))
                .collect::<Result<Vec<_>>>()?;
            row_from(label.to_string(), (2 * l + 1) as u64, &parts, entries)
        })
        .collect::<Result<Vec<_>>>()?;
    MultiplicityTable::assemble(Chain::O3s4c4, parts, rows)
}

/// Rows `2j = 0..=two_j_max`, columns in the order `[5], [11111], [41], [2111], [32], [221], [311]`.
pub fn table_4_9(two_j_max: u32) -> Result<MultiplicityTable> {
    if two_j_max > MAX_TABLE_TWO_J {
        return Err(Error::arg(format!(
            "2j = {two_j_max} exceeds the table limit {MAX_TABLE_TWO_J}"
        )));
    }
    let parts = o4_column_order();
    let rows = (0..=two_j_max)
        .into_par_iter()
        .map(|two_j| {
            let entries = parts
                .iter()
                .map(|f| multiplicity_o4_s5(two_j, f))
                .collect::<Result<Vec<_>>>()?;
            let d = (two_j + 1) as u64;
            row_from(two_j.to_string(), d * d, &parts, entries)
        })
        .collect::<Result<Vec<_>>>()?;
    MultiplicityTable::assemble(Chain::O4s5c5, parts, rows)
}

/// Associate pairs side by side, as in the printed table.
pub fn o4_column_order() -> Vec<Partition> {
    ["5", "11111", "41", "2111", "32", "221", "311"]
        .iter()
        .map(|s| s.parse().expect("valid label"))
        .collect()
}

pub fn multiplicity_table(chain: Chain, max: u32) -> Result<MultiplicityTable> {
    match chain {
        Chain::O2s3c3 => table_o2(max),
        Chain::O3s4c4 => table_o3(max),
        Chain::O4s5c5 => table_4_9(max),
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct PeriodicityCheck {
    pub class: CycleType,
    pub period: u32,
    /// `max |χ(2j + 60) − χ(2j)|` over the audited range.
    pub max_deviation_60: f64,
    /// `max |χ(2j + period) − χ(2j)|`.
    pub max_deviation_period: f64,
    pub holds: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct IncrementRow {
    pub partition: Partition,
    pub dimension: u64,
    pub transposition_character: i64,
    /// `m(2j + 60) − m(2j)` for `2j = 0..=two_j_max`.
    pub increments: Vec<i64>,
    /// The increment equals `2j + 36` on every audited row.
    pub printed_recursion_holds: bool,
    /// The increment equals `(2j + 31)·dim(f) + 5·χ^f((2)(1)³)` on every row.
    pub measured_recursion_holds: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct RecursionReport {
    pub two_j_max: u32,
    pub periodicity: Vec<PeriodicityCheck>,
    pub increments: Vec<IncrementRow>,
    /// Largest `2j` at which `Σ_f dim(f)·m = (2j+1)²` was checked.
    pub dimension_audit_two_j: u32,
    pub dimension_audit_holds: bool,
}

impl RecursionReport {
    pub fn periodicity_holds(&self) -> bool {
        self.periodicity.iter().all(|p| p.holds)
    }
}

/// Audits the period-60 character relation and the shift `2j → 2j + 60` of the
/// multiplicities on `2j = 0..=two_j_max`, by evaluating both degrees directly.
pub fn recursion_report(two_j_max: u32) -> Result<RecursionReport> {
    if two_j_max < 60 {
        return Err(Error::arg("the recursion audit needs two_j_max ≥ 60"));
    }
    let top = two_j_max + 60;
    if top > MAX_TABLE_TWO_J {
        return Err(Error::arg(format!(
            "2j + 60 = {top} exceeds the table limit {MAX_TABLE_TWO_J}"
        )));
    }
    let periodicity = s5_operators()
        .iter()
        .filter_map(|(k, op)| character_period(k).map(|p| (k, op, p)))
        .map(|(k, op, period)| {
            let chi = |t: u32| operator_character(t, op);
            let dev = |shift: u32| {
                (0..=two_j_max)
                    .map(|t| (chi(t + shift) - chi(t)).abs())
                    .fold(0.0, f64::max)
            };
            let (d60, dp) = (dev(60), dev(period));
            PeriodicityCheck {
                class: k.clone(),
                period,
                max_deviation_60: d60,
                max_deviation_period: dp,
                holds: d60 < 1e-8 && dp < 1e-8,
            }
        })
        .collect();

    let table = table_4_9(top)?;
    let transposition = CycleType::new(Partition::new(vec![2, 1, 1, 1])?);
    let increments = table
        .partitions
        .iter()
        .enumerate()
        .map(|(c, f)| {
            let chi_t = character(f, &transposition)?;
            let dim = f.dimension();
            let increments: Vec<i64> = (0..=two_j_max as usize)
                .map(|t| table.rows[t + 60].entries[c] as i64 - table.rows[t].entries[c] as i64)
                .collect();
            let printed = increments
                .iter()
                .enumerate()
                .all(|(t, &d)| d == t as i64 + 36);
            let measured = increments
                .iter()
                .enumerate()
                .all(|(t, &d)| d == (t as i64 + 31) * dim as i64 + 5 * chi_t);
            Ok(IncrementRow {
                partition: f.clone(),
                dimension: dim,
                transposition_character: chi_t,
                increments,
                printed_recursion_holds: printed,
                measured_recursion_holds: measured,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    // assemble() already audited every row up to `top`
    Ok(RecursionReport {
        two_j_max,
        periodicity,
        increments,
        dimension_audit_two_j: top,
        dimension_audit_holds: table.dimension_audit().is_ok(),
    })
}
