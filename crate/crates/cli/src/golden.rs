//! Embedded reference tables and the `verify --all` comparison.
//!
//! Each asset stores the values as printed in the reference tables. Where a printed
//! value is wrong the asset carries an erratum record with the corrected value; the
//! comparison uses the corrected value and lists the erratum in the report.

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use simplexharm::linalg::{self, RMatrix};
use simplexharm::permgroup::{character_table, trivial_multiplicity};
use simplexharm::reduction::{
    multiplicity_o3_s4, o2_reduce, o4_column_order, table_4_9, O2Label, O3Label,
};
use simplexharm::weylaction::{character_period, class_character_table};
use simplexharm::youngrep::{fixed_subspace, trivial_projector, YoungRepresentation};
use simplexharm::{CycleType, Partition};

use crate::error::{CliError, CliResult};
use crate::report::CheckResult;

pub const ASSET_VERSION: u32 = 1;
/// Absolute tolerance for real-valued comparisons.
pub const REAL_TOL: f64 = 1e-9;

/// Name, embedded text and the JSON pointer perturbed by fault injection.
pub const ASSETS: [(&str, &str, &str); 7] = [
    (
        "character_tables",
        include_str!("../assets/golden/character_tables.json"),
        "/tables/2/rows/2/values/1",
    ),
    (
        "trivial_branching",
        include_str!("../assets/golden/trivial_branching.json"),
        "/columns/2/values/6/1",
    ),
    (
        "o2_reduction",
        include_str!("../assets/golden/o2_reduction.json"),
        "/rules/0/m0",
    ),
    (
        "o3_multiplicities",
        include_str!("../assets/golden/o3_multiplicities.json"),
        "/rows/3/entries/0",
    ),
    (
        "o4_class_characters",
        include_str!("../assets/golden/o4_class_characters.json"),
        "/classes/6/values/4",
    ),
    (
        "o4_multiplicities",
        include_str!("../assets/golden/o4_multiplicities.json"),
        "/rows/8/entries/0",
    ),
    (
        "young_vectors",
        include_str!("../assets/golden/young_vectors.json"),
        "/projector_22/0/1",
    ),
];

pub fn asset_names() -> Vec<&'static str> {
    ASSETS.iter().map(|a| a.0).collect()
}

/// A recorded misprint: what the reference prints and what the computation gives.
#[derive(Clone, Debug, Deserialize, Serialize)]
pub struct Erratum {
    pub asset: Option<String>,
    pub target: Option<String>,
    pub n: Option<u32>,
    pub two_j: Option<u32>,
    pub partition: Option<String>,
    pub class: Option<String>,
    pub reference: i64,
    pub corrected: i64,
    pub reason: String,
}

impl Erratum {
    fn matches(&self, target: &str, two_j: Option<u32>, partition: Option<&str>) -> bool {
        self.target.as_deref() == Some(target)
            && self.two_j == two_j
            && self.partition.as_deref() == partition
    }
}

fn expected_with(
    errata: &[Erratum],
    target: &str,
    two_j: Option<u32>,
    partition: Option<&str>,
    printed: i64,
) -> i64 {
    errata
        .iter()
        .find(|e| e.matches(target, two_j, partition))
        .map_or(printed, |e| {
            debug_assert_eq!(e.reference, printed);
            e.corrected
        })
}

#[derive(Deserialize)]
struct CharacterTables {
    tables: Vec<CharTableAsset>,
    errata: Vec<Erratum>,
}

#[derive(Deserialize)]
struct CharTableAsset {
    n: u32,
    classes: Vec<String>,
    class_sizes: Option<Vec<u64>>,
    rows: Vec<CharRow>,
}

#[derive(Deserialize)]
struct CharRow {
    partition: String,
    values: Vec<i64>,
}

#[derive(Deserialize)]
struct TrivialBranching {
    columns: Vec<BranchColumn>,
}

#[derive(Deserialize)]
struct BranchColumn {
    n: u32,
    values: Vec<(String, u64)>,
}

#[derive(Deserialize)]
struct O2Reduction {
    max_m: u32,
    rules: Vec<O2Rule>,
}

#[derive(Deserialize)]
struct O2Rule {
    case: String,
    nu: Option<u32>,
    epsilon: Option<i8>,
    partition: String,
    m0: u64,
}

#[derive(Deserialize)]
struct O3Multiplicities {
    columns: Vec<String>,
    rows: Vec<O3Row>,
    total_states: u64,
    total_periodic: u64,
}

#[derive(Deserialize)]
struct O3Row {
    l: u32,
    kappa: i8,
    entries: Vec<u64>,
    periodic: u64,
}

#[derive(Deserialize)]
struct O4ClassCharacters {
    classes: Vec<ClassValues>,
    common_period: u32,
}

#[derive(Deserialize)]
struct ClassValues {
    class: String,
    values: Vec<f64>,
    period: Option<u32>,
}

#[derive(Deserialize)]
struct O4Multiplicities {
    columns: Vec<String>,
    rows: Vec<O4Row>,
    totals: Vec<u64>,
    total_periodic: u64,
    total_harmonics: u64,
    errata: Vec<Erratum>,
}

#[derive(Deserialize)]
struct O4Row {
    two_j: u32,
    entries: Vec<u64>,
    periodic: u64,
}

#[derive(Deserialize)]
struct YoungVectors {
    projector_22: Vec<Vec<f64>>,
    fixed_vectors: Vec<FixedVector>,
    span_311: Vec<Vec<f64>>,
    coxeter: Vec<CoxeterAsset>,
}

#[derive(Deserialize)]
struct FixedVector {
    partition: String,
    vector: Vec<f64>,
}

#[derive(Deserialize)]
struct CoxeterAsset {
    partition: String,
    rows: Vec<Vec<f64>>,
}

/// Outcome of comparing every asset against the computation.
#[derive(Debug, Serialize)]
pub struct Verification {
    pub assets: Vec<AssetSummary>,
    pub errata: Vec<Erratum>,
    #[serde(skip)]
    pub checks: Vec<CheckResult>,
}

#[derive(Debug, Serialize)]
pub struct AssetSummary {
    pub name: String,
    pub version: u32,
    pub checks: usize,
    pub failed: usize,
}

fn asset_err(name: &str, message: impl Into<String>) -> CliError {
    CliError::Asset {
        name: name.to_string(),
        message: message.into(),
    }
}

/// Parses an asset, optionally shifting the value at its fault pointer first.
fn load<T: DeserializeOwned>(name: &str, inject: bool) -> CliResult<(T, u32)> {
    let (_, text, pointer) = ASSETS
        .iter()
        .find(|a| a.0 == name)
        .ok_or_else(|| asset_err(name, "unknown asset"))?;
    let mut value: Value = serde_json::from_str(text)?;
    if inject {
        let slot = value
            .pointer_mut(pointer)
            .ok_or_else(|| asset_err(name, format!("no value at {pointer}")))?;
        *slot = match slot {
            Value::Number(n) if n.is_i64() || n.is_u64() => {
                Value::from(n.as_i64().unwrap_or(0) + 1)
            }
            Value::Number(n) => Value::from(n.as_f64().unwrap_or(0.0) + 1e-6),
            _ => return Err(asset_err(name, format!("{pointer} is not a number"))),
        };
    }
    let version = value
        .get("version")
        .and_then(Value::as_u64)
        .ok_or_else(|| asset_err(name, "missing version"))? as u32;
    if version != ASSET_VERSION {
        return Err(asset_err(
            name,
            format!("version {version}, expected {ASSET_VERSION}"),
        ));
    }
    Ok((serde_json::from_value(value)?, version))
}

fn partition(name: &str, s: &str) -> CliResult<Partition> {
    s.parse().map_err(|e| asset_err(name, format!("{e}")))
}

fn class(name: &str, s: &str) -> CliResult<CycleType> {
    s.parse().map_err(|e| asset_err(name, format!("{e}")))
}

fn rmatrix(rows: &[Vec<f64>]) -> RMatrix {
    let flat: Vec<f64> = rows.iter().flatten().copied().collect();
    RMatrix::from_row_slice(rows.len(), rows.first().map_or(0, Vec::len), &flat)
}

fn matrix_residual(got: &RMatrix, expected: &RMatrix) -> f64 {
    if got.shape() != expected.shape() {
        return f64::INFINITY;
    }
    linalg::max_abs(&(got - expected))
}

fn character_checks(
    inject: bool,
    checks: &mut Vec<CheckResult>,
    errata: &mut Vec<Erratum>,
) -> CliResult<u32> {
    const NAME: &str = "character_tables";
    let (asset, version): (CharacterTables, _) = load(NAME, inject)?;
    for t in &asset.tables {
        let table = character_table(t.n)?;
        checks.push(CheckResult::exact(
            format!("S({}) class count", t.n),
            table.classes.len(),
            t.classes.len(),
        ));
        if let Some(sizes) = &t.class_sizes {
            for (label, &size) in t.classes.iter().zip(sizes) {
                let k = class(NAME, label)?;
                checks.push(CheckResult::exact(
                    format!("S({}) n{label}", t.n),
                    k.class_size(),
                    size,
                ));
            }
        }
        for row in &t.rows {
            let f = partition(NAME, &row.partition)?;
            for (label, &printed) in t.classes.iter().zip(&row.values) {
                let k = class(NAME, label)?;
                let erratum = asset.errata.iter().find(|e| {
                    e.n == Some(t.n)
                        && e.partition.as_deref() == Some(row.partition.as_str())
                        && e.class.as_deref() == Some(label.as_str())
                });
                let expected = erratum.map_or(printed, |e| e.corrected);
                checks.push(CheckResult::exact(
                    format!("S({}) χ^{}{}", t.n, row.partition, label),
                    table.get(&f, &k),
                    Some(expected),
                ));
            }
        }
    }
    errata.extend(asset.errata.into_iter().map(|mut e| {
        e.asset = Some(NAME.to_string());
        e
    }));
    Ok(version)
}

fn branching_checks(inject: bool, checks: &mut Vec<CheckResult>) -> CliResult<u32> {
    const NAME: &str = "trivial_branching";
    let (asset, version): (TrivialBranching, _) = load(NAME, inject)?;
    for col in &asset.columns {
        for (label, m) in &col.values {
            let f = partition(NAME, label)?;
            checks.push(CheckResult::exact(
                format!("C{} m({label},0)", col.n),
                trivial_multiplicity(&f)?,
                *m,
            ));
        }
    }
    Ok(version)
}

fn o2_checks(inject: bool, checks: &mut Vec<CheckResult>) -> CliResult<u32> {
    const NAME: &str = "o2_reduction";
    let (asset, version): (O2Reduction, _) = load(NAME, inject)?;
    for label in O2Label::up_to(asset.max_m) {
        let rule = asset.rules.iter().find(|r| {
            if label.m == 0 {
                r.case == "m=0"
            } else {
                r.case == "m>0"
                    && r.nu == Some(label.nu())
                    && (r.epsilon.is_none() || r.epsilon == label.epsilon)
            }
        });
        let Some(rule) = rule else {
            checks.push(CheckResult::exact(
                format!("O(2) {label} rule"),
                false,
                true,
            ));
            continue;
        };
        let (f, m0) = o2_reduce(&label)?;
        checks.push(CheckResult::exact(
            format!("O(2) {label} reduction"),
            (f.to_string(), m0),
            (rule.partition.clone(), rule.m0),
        ));
    }
    Ok(version)
}

fn o3_checks(inject: bool, checks: &mut Vec<CheckResult>) -> CliResult<u32> {
    const NAME: &str = "o3_multiplicities";
    let (asset, version): (O3Multiplicities, _) = load(NAME, inject)?;
    let columns = asset
        .columns
        .iter()
        .map(|c| partition(NAME, c))
        .collect::<CliResult<Vec<_>>>()?;
    let (mut states, mut periodic_total) = (0, 0);
    for row in &asset.rows {
        let label = O3Label::new(row.l, row.kappa)?;
        let mut periodic = 0;
        for (f, &expected) in columns.iter().zip(&row.entries) {
            let m = multiplicity_o3_s4(&label, f)?;
            periodic += m * trivial_multiplicity(f)?;
            checks.push(CheckResult::exact(
                format!("O(3) m({label},{f})"),
                m,
                expected,
            ));
        }
        checks.push(CheckResult::exact(
            format!("O(3) m({label},0)"),
            periodic,
            row.periodic,
        ));
        states += 2 * row.l as u64 + 1;
        periodic_total += periodic;
    }
    checks.push(CheckResult::exact(
        "O(3) basis states",
        states,
        asset.total_states,
    ));
    checks.push(CheckResult::exact(
        "O(3) periodic states",
        periodic_total,
        asset.total_periodic,
    ));
    Ok(version)
}

fn class_character_checks(inject: bool, checks: &mut Vec<CheckResult>) -> CliResult<u32> {
    const NAME: &str = "o4_class_characters";
    let (asset, version): (O4ClassCharacters, _) = load(NAME, inject)?;
    let span = asset.common_period;
    let rows = class_character_table(2 * span);
    let mut lcm = 1;
    for cls in &asset.classes {
        let k = class(NAME, &cls.class)?;
        let Some(row) = rows.iter().find(|r| r.class == k) else {
            checks.push(CheckResult::exact(
                format!("χ({}) present", cls.class),
                false,
                true,
            ));
            continue;
        };
        for (two_j, &e) in cls.values.iter().enumerate() {
            checks.push(CheckResult::within(
                format!("χ^(j,j){} at 2j={two_j}", cls.class),
                (row.values[two_j] - e).abs(),
                REAL_TOL,
            ));
        }
        if let Some(p) = cls.period {
            checks.push(CheckResult::exact(
                format!("period of {}", cls.class),
                character_period(&k),
                Some(p),
            ));
            let dev = (0..=span as usize)
                .map(|t| (row.values[t + p as usize] - row.values[t]).abs())
                .fold(0.0, f64::max);
            checks.push(CheckResult::within(
                format!("χ^(j,j){} has period {p}", cls.class),
                dev,
                REAL_TOL,
            ));
            lcm = lcm * p / gcd(lcm, p);
        }
    }
    checks.push(CheckResult::exact("common period", lcm, span));
    Ok(version)
}

fn gcd(a: u32, b: u32) -> u32 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn o4_checks(
    inject: bool,
    checks: &mut Vec<CheckResult>,
    errata: &mut Vec<Erratum>,
) -> CliResult<u32> {
    const NAME: &str = "o4_multiplicities";
    let (asset, version): (O4Multiplicities, _) = load(NAME, inject)?;
    let max = asset.rows.iter().map(|r| r.two_j).max().unwrap_or(0);
    let table = table_4_9(max)?;
    let order = o4_column_order();
    let columns = asset
        .columns
        .iter()
        .map(|c| partition(NAME, c))
        .collect::<CliResult<Vec<_>>>()?;
    checks.push(CheckResult::exact("O(4) column order", &columns, &order));
    let index = |f: &Partition| table.partitions.iter().position(|p| p == f);
    let er = &asset.errata;
    for row in &asset.rows {
        let got = &table.rows[row.two_j as usize];
        for (f, &printed) in columns.iter().zip(&row.entries) {
            let label = f.to_string();
            let expected =
                expected_with(er, "entry", Some(row.two_j), Some(&label), printed as i64);
            checks.push(CheckResult::exact(
                format!("m(({0}/2,{0}/2),{label})", row.two_j),
                index(f).map(|c| got.entries[c] as i64),
                Some(expected),
            ));
        }
        let expected = expected_with(er, "periodic", Some(row.two_j), None, row.periodic as i64);
        checks.push(CheckResult::exact(
            format!("m(({0}/2,{0}/2),0)", row.two_j),
            got.periodic as i64,
            expected,
        ));
    }
    for (f, &printed) in columns.iter().zip(&asset.totals) {
        let label = f.to_string();
        let expected = expected_with(er, "total", None, Some(&label), printed as i64);
        checks.push(CheckResult::exact(
            format!("ν₀({label})"),
            index(f).map(|c| table.totals[c] as i64),
            Some(expected),
        ));
    }
    let expected = expected_with(
        er,
        "total_periodic",
        None,
        None,
        asset.total_periodic as i64,
    );
    checks.push(CheckResult::exact(
        "total periodic modes",
        table.total_periodic as i64,
        expected,
    ));
    checks.push(CheckResult::exact(
        "total harmonics",
        table.total_dimension,
        asset.total_harmonics,
    ));
    let audit = table.dimension_audit();
    checks.push(CheckResult::exact(
        "O(4) dimension audit",
        audit.is_ok(),
        true,
    ));
    errata.extend(asset.errata.into_iter().map(|mut e| {
        e.asset = Some(NAME.to_string());
        e
    }));
    Ok(version)
}

fn young_checks(inject: bool, checks: &mut Vec<CheckResult>) -> CliResult<u32> {
    const NAME: &str = "young_vectors";
    let (asset, version): (YoungVectors, _) = load(NAME, inject)?;
    let f22 = partition(NAME, "[22]")?;
    checks.push(CheckResult::within(
        "[22] C4 projector",
        matrix_residual(
            &trivial_projector(&f22).matrix,
            &rmatrix(&asset.projector_22),
        ),
        REAL_TOL,
    ));
    for fv in &asset.fixed_vectors {
        let f = partition(NAME, &fv.partition)?;
        let fixed = fixed_subspace(&f)?;
        let expected = rmatrix(&fv.vector.iter().map(|&x| vec![x]).collect::<Vec<_>>());
        // agreement up to normalization and sign
        let residual = if fixed.dim() == 1 && fixed.basis.nrows() == expected.nrows() {
            linalg::principal_angles(&fixed.basis, &expected)[0]
        } else {
            f64::INFINITY
        };
        checks.push(CheckResult::within(
            format!("{} fixed vector", fv.partition),
            residual,
            REAL_TOL,
        ));
    }
    let f311 = partition(NAME, "[311]")?;
    let fixed = fixed_subspace(&f311)?;
    let span = rmatrix(&asset.span_311).transpose();
    let residual = if fixed.dim() == span.ncols() && fixed.basis.nrows() == span.nrows() {
        linalg::principal_angles(&fixed.basis, &span)
            .into_iter()
            .fold(0.0, f64::max)
    } else {
        f64::INFINITY
    };
    checks.push(CheckResult::within("[311] fixed span", residual, REAL_TOL));
    for cox in &asset.coxeter {
        let f = partition(NAME, &cox.partition)?;
        let got = YoungRepresentation::new(&f).coxeter_matrix();
        checks.push(CheckResult::within(
            format!("{} Coxeter matrix", cox.partition),
            matrix_residual(&got, &rmatrix(&cox.rows)),
            REAL_TOL,
        ));
    }
    Ok(version)
}

/// Compares every embedded asset with the computation; `inject` names one asset to
/// perturb before comparing.
pub fn verify_all(inject: Option<&str>) -> CliResult<Verification> {
    if let Some(name) = inject {
        if !ASSETS.iter().any(|a| a.0 == name) {
            return Err(CliError::Usage(format!(
                "unknown asset {name:?}, expected one of {}",
                asset_names().join(", ")
            )));
        }
    }
    let mut checks = Vec::new();
    let mut errata = Vec::new();
    let mut assets = Vec::new();
    for (name, _, _) in ASSETS {
        let start = checks.len();
        let hit = inject == Some(name);
        let version = match name {
            "character_tables" => character_checks(hit, &mut checks, &mut errata)?,
            "trivial_branching" => branching_checks(hit, &mut checks)?,
            "o2_reduction" => o2_checks(hit, &mut checks)?,
            "o3_multiplicities" => o3_checks(hit, &mut checks)?,
            "o4_class_characters" => class_character_checks(hit, &mut checks)?,
            "o4_multiplicities" => o4_checks(hit, &mut checks, &mut errata)?,
            "young_vectors" => young_checks(hit, &mut checks)?,
            other => return Err(asset_err(other, "no comparison defined")),
        };
        for c in &mut checks[start..] {
            c.name = format!("{name}: {}", c.name);
        }
        assets.push(AssetSummary {
            name: name.to_string(),
            version,
            checks: checks.len() - start,
            failed: checks[start..].iter().filter(|c| !c.passed).count(),
        });
    }
    Ok(Verification {
        assets,
        errata,
        checks,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn clean_assets_verify() {
        let v = verify_all(None).unwrap();
        let failed: Vec<_> = v.checks.iter().filter(|c| !c.passed).collect();
        assert!(failed.is_empty(), "{failed:#?}");
        assert_eq!(v.errata.len(), 5);
    }

    #[test]
    fn every_injected_fault_is_caught() {
        for name in asset_names() {
            let v = verify_all(Some(name)).unwrap();
            let summary = v.assets.iter().find(|a| a.name == name).unwrap();
            assert!(summary.failed > 0, "fault in {name} went unnoticed");
            assert_eq!(
                v.assets.iter().map(|a| a.failed).sum::<usize>(),
                summary.failed
            );
        }
    }
}
