//! Explicit `C₅`-periodic eigenmodes on `S³` and their lower-dimensional analogues.
//!
//! Modes of degree `2j` are coefficient vectors over the `(2j+1)²` functions
//! `D^j_{m1 m2}`, ordered as in [`operator_matrix`].

use nalgebra::DVector;
use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{self, CMatrix};
use crate::permgroup::{character, partitions, trivial_multiplicity, Partition, Permutation};
use crate::reduction::{
    multiplicity_o3_s4, o2_reduce, o4_column_order, periodic_count_o4, O2Label, O3Label,
};
use crate::su2wigner::{su2_from_point, Point4, SU2Element};
use crate::weylaction::{
    act_on_point, compose, harmonic_values, operator_matrix, permutation_operator, GroupOperator,
    MAX_OPERATOR_TWO_J,
};
use crate::youngrep::{fixed_subspace, YoungRepresentation};

/// Largest `2j` at which Young operators are assembled (120 dense matrices each).
pub const MAX_YOUNG_TWO_J: u32 = 8;

/// Entries below this are ignored when fixing column phases.
const PHASE_TOL: f64 = 1e-9;

/// `g, g², …, g⁵ = e` for the Coxeter element `g = (1,2)(2,3)(3,4)(4,5)`.
pub fn cyclic_operators() -> Vec<GroupOperator> {
    let g = permutation_operator(&Permutation::coxeter(5)).expect("degree 5");
    let mut out = Vec::with_capacity(5);
    let mut acc = g;
    for _ in 0..5 {
        out.push(acc);
        acc = compose(&acc, &g);
    }
    out
}

fn check_two_j(two_j: u32, max: u32) -> Result<()> {
    if two_j > max {
        return Err(Error::arg(format!("2j = {two_j} exceeds the limit {max}")));
    }
    Ok(())
}

/// `(1/5) Σ_k M(gᵏ)`, the orthogonal projector onto `C₅`-invariant harmonics of degree `2j`.
pub fn cyclic_projector(two_j: u32) -> Result<CMatrix> {
    check_two_j(two_j, MAX_OPERATOR_TWO_J)?;
    let n = ((two_j + 1) * (two_j + 1)) as usize;
    let sum = cyclic_operators()
        .iter()
        .try_fold(CMatrix::zeros(n, n), |acc, op| {
            Ok::<_, Error>(acc + operator_matrix(two_j, op)?)
        })?;
    Ok(sum / Complex64::new(5.0, 0.0))
}

/// Orthonormal modes of one degree, one per column.
#[derive(Clone, Debug, PartialEq)]
pub struct ModeBasis {
    pub two_j: u32,
    pub coefficients: CMatrix,
    /// The `S(5)` representation each column transforms in, when known.
    pub tags: Option<Vec<Partition>>,
}

impl ModeBasis {
    pub fn from_coefficients(two_j: u32, coefficients: CMatrix) -> Result<Self> {
        let n = ((two_j + 1) * (two_j + 1)) as usize;
        if coefficients.nrows() != n {
            return Err(Error::arg(format!(
                "degree 2j = {two_j} needs {n} coefficient rows, got {}",
                coefficients.nrows()
            )));
        }
        Ok(ModeBasis {
            two_j,
            coefficients,
            tags: None,
        })
    }

    pub fn len(&self) -> usize {
        self.coefficients.ncols()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// `max |⟨ψ_a, ψ_b⟩ − δ_ab|`.
    pub fn orthonormality_defect(&self) -> f64 {
        let k = self.len();
        linalg::max_abs_c(
            &(self.coefficients.adjoint() * &self.coefficients - CMatrix::identity(k, k)),
        )
    }

    /// Values of every mode at `u`.
    pub fn evaluate(&self, u: &SU2Element) -> Result<Vec<Complex64>> {
        let d = DVector::from_vec(harmonic_values(self.two_j, u)?);
        Ok(self
            .coefficients
            .column_iter()
            .map(|c| c.iter().zip(d.iter()).map(|(a, b)| a * b).sum())
            .collect())
    }
}

fn basis_from_projector(two_j: u32, projector: &CMatrix, expected: Option<u64>) -> Result<CMatrix> {
    let rank = linalg::numerical_rank_c(projector);
    if let Some(e) = expected {
        if rank as u64 != e {
            return Err(Error::Consistency(format!(
                "projector rank {rank} at 2j = {two_j} differs from the character count {e}"
            )));
        }
    }
    let mut q = linalg::pivoted_orthonormal_columns(projector, rank);
    linalg::canonical_phases(&mut q, PHASE_TOL);
    Ok(q)
}

/// The `C₅`-periodic modes of degree `2j`, from the cyclic projector.
///
/// The column count is cross-checked against [`periodic_count_o4`].
pub fn periodic_basis(two_j: u32) -> Result<ModeBasis> {
    let p = cyclic_projector(two_j)?;
    let coefficients = basis_from_projector(two_j, &p, Some(periodic_count_o4(two_j)?))?;
    Ok(ModeBasis {
        two_j,
        coefficients,
        tags: None,
    })
}

/// Operator matrices of all 120 elements of `S(5)` at one degree.
pub struct S5Action {
    two_j: u32,
    elements: Vec<(Permutation, CMatrix)>,
}

impl S5Action {
    pub fn new(two_j: u32) -> Result<Self> {
        check_two_j(two_j, MAX_OPERATOR_TWO_J)?;
        let elements = Permutation::all(5)
            .into_par_iter()
            .map(|p| {
                let m = operator_matrix(two_j, &permutation_operator(&p)?)?;
                Ok((p, m))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(S5Action { two_j, elements })
    }

    pub fn two_j(&self) -> u32 {
        self.two_j
    }

    pub fn elements(&self) -> &[(Permutation, CMatrix)] {
        &self.elements
    }

    pub fn matrix(&self, p: &Permutation) -> Option<&CMatrix> {
        self.elements.iter().find(|(q, _)| q == p).map(|(_, m)| m)
    }

    fn weighted_sum(&self, weight: impl Fn(&Permutation) -> f64) -> CMatrix {
        let n = self.elements[0].1.nrows();
        self.elements
            .iter()
            .fold(CMatrix::zeros(n, n), |acc, (p, m)| {
                let w = weight(p);
                if w == 0.0 {
                    acc
                } else {
                    acc + m * Complex64::new(w, 0.0)
                }
            })
    }

    /// `(dim f / 120) Σ_p χ^f(p) T_p`.
    pub fn isotypic_projector(&self, f: &Partition) -> Result<CMatrix> {
        check_s5(f)?;
        let scale = f.dimension() as f64 / 120.0;
        let chars: Vec<(Permutation, f64)> = self
            .elements
            .iter()
            .map(|(p, _)| Ok((p.clone(), character(f, &p.cycle_type())? as f64)))
            .collect::<Result<_>>()?;
        Ok(self.weighted_sum(|p| {
            scale
                * chars
                    .iter()
                    .find(|(q, _)| q == p)
                    .map(|(_, c)| *c)
                    .unwrap_or(0.0)
        }))
    }

    /// `c^f_{r,s} = (dim f / 120) Σ_p D^f_{rs}(p) T_p` with the Young orthogonal `D^f`.
    pub fn young_operator(&self, f: &Partition, r: usize, s: usize) -> Result<YoungOperator> {
        check_s5(f)?;
        let rep = YoungRepresentation::new(f);
        let d = rep.dim();
        if r >= d || s >= d {
            return Err(Error::arg(format!(
                "index ({r},{s}) outside the {d}-dimensional {f}"
            )));
        }
        let scale = d as f64 / 120.0;
        let coeffs: Vec<(Permutation, f64)> = self
            .elements
            .iter()
            .map(|(p, _)| (p.clone(), rep.matrix(p)[(r, s)]))
            .collect();
        let matrix = self.weighted_sum(|p| {
            scale
                * coeffs
                    .iter()
                    .find(|(q, _)| q == p)
                    .map(|(_, c)| *c)
                    .unwrap_or(0.0)
        });
        Ok(YoungOperator {
            f: f.clone(),
            r,
            s,
            two_j: self.two_j,
            matrix,
        })
    }

    /// Rank of `c^f_{r,r}`, required to be the same for every row `r`.
    pub fn young_rank(&self, f: &Partition) -> Result<u64> {
        let d = f.dimension() as usize;
        let ranks = (0..d)
            .map(|r| Ok(linalg::numerical_rank_c(&self.young_operator(f, r, r)?.matrix) as u64))
            .collect::<Result<Vec<_>>>()?;
        if ranks.iter().any(|&k| k != ranks[0]) {
            return Err(Error::Consistency(format!(
                "Young operator ranks {ranks:?} for {f} at 2j = {} differ between rows",
                self.two_j
            )));
        }
        Ok(ranks[0])
    }
}

fn check_s5(f: &Partition) -> Result<()> {
    if f.n() != 5 {
        return Err(Error::arg(format!("{f} is not a partition of 5")));
    }
    Ok(())
}

/// A Young operator realized on the degree-`2j` harmonics.
#[derive(Clone, Debug)]
pub struct YoungOperator {
    pub f: Partition,
    pub r: usize,
    pub s: usize,
    pub two_j: u32,
    pub matrix: CMatrix,
}

pub fn young_operator(two_j: u32, f: &Partition, r: usize, s: usize) -> Result<YoungOperator> {
    check_two_j(two_j, MAX_YOUNG_TWO_J)?;
    S5Action::new(two_j)?.young_operator(f, r, s)
}

pub fn young_rank(two_j: u32, f: &Partition) -> Result<u64> {
    check_two_j(two_j, MAX_YOUNG_TWO_J)?;
    S5Action::new(two_j)?.young_rank(f)
}

/// Periodic modes split by `S(5)` representation: for each `f` with `m(f,0) > 0`,
/// the range of (isotypic projector)·(cyclic projector).
pub fn isotypic_periodic_basis(two_j: u32) -> Result<ModeBasis> {
    let action = S5Action::new(two_j)?;
    let cyclic = cyclic_projector(two_j)?;
    let n = cyclic.nrows();
    let mut columns: Vec<DVector<Complex64>> = Vec::new();
    let mut tags = Vec::new();
    for f in o4_column_order() {
        if trivial_multiplicity(&f)? == 0 {
            continue;
        }
        let p = action.isotypic_projector(&f)? * &cyclic;
        let q = basis_from_projector(two_j, &p, None)?;
        for c in q.column_iter() {
            columns.push(c.into_owned());
            tags.push(f.clone());
        }
    }
    let expected = periodic_count_o4(two_j)?;
    if columns.len() as u64 != expected {
        return Err(Error::Consistency(format!(
            "isotypic split gives {} periodic modes at 2j = {two_j}, expected {expected}",
            columns.len()
        )));
    }
    let mut coefficients = CMatrix::zeros(n, columns.len());
    for (k, c) in columns.iter().enumerate() {
        coefficients.set_column(k, c);
    }
    Ok(ModeBasis {
        two_j,
        coefficients,
        tags: Some(tags),
    })
}

/// A point of `S³` drawn from a seeded generator.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct SamplePoint {
    pub seed: u64,
    pub index: usize,
    pub u: SU2Element,
}

/// Uniform points on `S³` from normalized 4-dimensional Gaussian draws.
pub fn sample_points(count: usize, seed: u64) -> Vec<SamplePoint> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let x: [f64; 4] = std::array::from_fn(|_| StandardNormal.sample(&mut rng));
        let norm = x.iter().map(|v| v * v).sum::<f64>().sqrt();
        if norm < 1e-6 {
            continue;
        }
        let p = Point4::new(x[0] / norm, x[1] / norm, x[2] / norm, x[3] / norm);
        let u = su2_from_point(&p).expect("normalized").renormalized();
        out.push(SamplePoint {
            seed,
            index: out.len(),
            u,
        });
    }
    out
}

#[derive(Clone, Debug, Serialize)]
pub struct InvarianceReport {
    pub two_j: u32,
    pub modes: usize,
    pub num_points: usize,
    pub seed: u64,
    /// `max |ψ(g·u) − ψ(u)|` over modes, samples and `g ∈ C₅`.
    pub max_deviation: f64,
}

/// Evaluates every mode at each sample `u` and at its images under `C₅`.
pub fn verify_invariance(
    basis: &ModeBasis,
    num_points: usize,
    seed: u64,
) -> Result<InvarianceReport> {
    let ops = cyclic_operators();
    let points = sample_points(num_points, seed);
    let deviations = points
        .par_iter()
        .map(|pt| {
            let base = basis.evaluate(&pt.u)?;
            let mut worst: f64 = 0.0;
            for op in &ops {
                let moved = basis.evaluate(&act_on_point(op, &pt.u))?;
                for (a, b) in moved.iter().zip(&base) {
                    worst = worst.max((a - b).norm());
                }
            }
            Ok(worst)
        })
        .collect::<Result<Vec<f64>>>()?;
    Ok(InvarianceReport {
        two_j: basis.two_j,
        modes: basis.len(),
        num_points,
        seed,
        max_deviation: deviations.into_iter().fold(0.0, f64::max),
    })
}

/// Which lower-dimensional chain to describe.
#[derive(Clone, Debug, PartialEq)]
pub enum LowerDimLabel {
    Circle(O2Label),
    Sphere2(O3Label),
}

/// One `S(4)` component of an `O(3)` representation containing periodic states.
#[derive(Clone, Debug, Serialize)]
pub struct Sphere2Component {
    pub f: Partition,
    pub multiplicity: u64,
    /// Coefficients of the `C₄`-fixed vectors in the Young basis of `f`, one per vector.
    pub fixed_vectors: Vec<Vec<f64>>,
}

#[derive(Clone, Debug, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ModeDescription {
    Excluded {
        label: String,
        reason: String,
    },
    /// `Y_{m,ε}` as `Σ c_k Y_k` with `Y_k = e^{ikφ}/√(2π)`.
    Circle {
        label: String,
        f: Partition,
        terms: Vec<(i64, f64)>,
    },
    Sphere2 {
        label: String,
        periodic_count: u64,
        components: Vec<Sphere2Component>,
    },
}

impl ModeDescription {
    pub fn is_excluded(&self) -> bool {
        matches!(self, ModeDescription::Excluded { .. })
    }
}

pub fn lower_dim_modes(label: &LowerDimLabel) -> Result<ModeDescription> {
    match label {
        LowerDimLabel::Circle(l) => {
            let (f, m0) = o2_reduce(l)?;
            if m0 == 0 {
                return Ok(ModeDescription::Excluded {
                    label: l.to_string(),
                    reason: format!("m = {} is not divisible by 3, so the pair spans {f}", l.m),
                });
            }
            let terms = match l.epsilon {
                None => vec![(0, 1.0)],
                Some(e) => {
                    let h = 0.5f64.sqrt();
                    let sign = if l.m % 2 == 0 { 1.0 } else { -1.0 };
                    vec![(l.m as i64, h), (-(l.m as i64), e as f64 * sign * h)]
                }
            };
            Ok(ModeDescription::Circle {
                label: l.to_string(),
                f,
                terms,
            })
        }
        LowerDimLabel::Sphere2(l) => {
            let mut components = Vec::new();
            let mut present = Vec::new();
            let mut count = 0;
            for f in partitions(4) {
                let m = multiplicity_o3_s4(l, &f)?;
                if m == 0 {
                    continue;
                }
                present.push(f.to_string());
                let fixed = fixed_subspace(&f)?;
                if fixed.dim() == 0 {
                    continue;
                }
                count += m * fixed.dim() as u64;
                components.push(Sphere2Component {
                    fixed_vectors: (0..fixed.dim())
                        .map(|k| fixed.vector(k).iter().copied().collect())
                        .collect(),
                    f,
                    multiplicity: m,
                });
            }
            if components.is_empty() {
                return Ok(ModeDescription::Excluded {
                    label: l.to_string(),
                    reason: format!(
                        "only {} present, none containing the identity of C4",
                        present.join(", ")
                    ),
                });
            }
            Ok(ModeDescription::Sphere2 {
                label: l.to_string(),
                periodic_count: count,
                components,
            })
        }
    }
}
