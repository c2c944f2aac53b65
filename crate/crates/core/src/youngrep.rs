//! Young's orthogonal form of the irreducible representations of `S(n)`.
//!
//! Generator matrices come from the axial-distance rule: for the adjacent
//! transposition `(i,i+1)` and a standard tableau `T`, let `ρ` be the content of
//! `i+1` minus the content of `i` (content = column − row). The diagonal entry is
//! `1/ρ`; when swapping `i` and `i+1` in `T` gives another standard tableau `T'`,
//! the `(T,T')` and `(T',T)` entries are `sqrt(1 − 1/ρ²)`.
//!
//! Basis order: descending lexicographic order of Yamanouchi symbols (the row of
//! `n`, then of `n−1`, …), except for `[32]` and `[221]`, which use the tableau
//! numbering of the published `S(5)` tables, and `[22]`, whose second basis vector
//! carries a sign so that `D(2,3)` has off-diagonal `−√3/2`.

use std::collections::HashMap;

use nalgebra::DVector;

use crate::error::Result;
use crate::linalg::{self, RMatrix};
use crate::permgroup::{cyclic_elements, trivial_multiplicity, Partition, Permutation};

/// A standard Young tableau.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct StandardTableau {
    shape: Partition,
    rows: Vec<Vec<u32>>,
}

impl StandardTableau {
    /// Validates a filling: rows and columns strictly increasing, entries `1..=n`.
    pub fn new(rows: Vec<Vec<u32>>) -> Result<Self> {
        let shape = Partition::new(rows.iter().map(|r| r.len() as u32).collect())?;
        let n = shape.n();
        let mut seen = vec![false; n as usize + 1];
        for (r, row) in rows.iter().enumerate() {
            for (c, &x) in row.iter().enumerate() {
                let ok = x >= 1
                    && x <= n
                    && !seen[x as usize]
                    && (c == 0 || row[c - 1] < x)
                    && (r == 0 || rows[r - 1][c] < x);
                if !ok {
                    return Err(crate::Error::arg(format!(
                        "{rows:?} is not a standard tableau"
                    )));
                }
                seen[x as usize] = true;
            }
        }
        Ok(StandardTableau { shape, rows })
    }

    pub fn shape(&self) -> &Partition {
        &self.shape
    }

    pub fn rows(&self) -> &[Vec<u32>] {
        &self.rows
    }

    /// `(row, column)` of entry `k`, zero based.
    pub fn position(&self, k: u32) -> (usize, usize) {
        for (r, row) in self.rows.iter().enumerate() {
            if let Some(c) = row.iter().position(|&x| x == k) {
                return (r, c);
            }
        }
        panic!("entry {k} not in tableau");
    }

    fn content(&self, k: u32) -> i64 {
        let (r, c) = self.position(k);
        c as i64 - r as i64
    }

    /// Row indices (one based) of `n, n−1, …, 1`.
    pub fn yamanouchi(&self) -> Vec<u32> {
        let n = self.shape.n();
        (1..=n)
            .rev()
            .map(|k| self.position(k).0 as u32 + 1)
            .collect()
    }

    pub fn yamanouchi_string(&self) -> String {
        self.yamanouchi().iter().map(|r| r.to_string()).collect()
    }

    /// Reconstructs the tableau from its Yamanouchi symbol.
    pub fn from_yamanouchi(symbol: &[u32]) -> Result<Self> {
        let n = symbol.len();
        let rows_needed = symbol.iter().copied().max().unwrap_or(0) as usize;
        let mut rows: Vec<Vec<u32>> = vec![Vec::new(); rows_needed];
        for k in 1..=n {
            let r = symbol[n - k];
            if r == 0 {
                return Err(crate::Error::arg("Yamanouchi rows are one based"));
            }
            rows[r as usize - 1].push(k as u32);
        }
        StandardTableau::new(rows)
    }

    fn swapped(&self, i: u32) -> Option<StandardTableau> {
        let rows = self
            .rows
            .iter()
            .map(|row| {
                row.iter()
                    .map(|&x| match x {
                        x if x == i => i + 1,
                        x if x == i + 1 => i,
                        x => x,
                    })
                    .collect()
            })
            .collect();
        StandardTableau::new(rows).ok()
    }

    pub fn transpose(&self) -> StandardTableau {
        let cols = self.rows[0].len();
        let rows = (0..cols)
            .map(|c| self.rows.iter().filter_map(|r| r.get(c).copied()).collect())
            .collect();
        StandardTableau::new(rows).expect("transpose of a standard tableau is standard")
    }
}

fn enumerate_tableaux(shape: &Partition) -> Vec<StandardTableau> {
    fn rec(shape: &[u32], rows: &mut Vec<Vec<u32>>, k: u32, n: u32, out: &mut Vec<Vec<Vec<u32>>>) {
        if k > n {
            out.push(rows.clone());
            return;
        }
        for r in 0..shape.len() {
            let fits =
                (rows[r].len() as u32) < shape[r] && (r == 0 || rows[r - 1].len() > rows[r].len());
            if fits {
                rows[r].push(k);
                rec(shape, rows, k + 1, n, out);
                rows[r].pop();
            }
        }
    }
    let mut out = Vec::new();
    let mut rows = vec![Vec::new(); shape.len()];
    rec(shape.parts(), &mut rows, 1, shape.n(), &mut out);
    out.into_iter()
        .map(|rows| StandardTableau {
            shape: shape.clone(),
            rows,
        })
        .collect()
}

/// The published numbering of the `[32]` tableaux.
fn tableaux_32() -> Vec<StandardTableau> {
    [
        vec![vec![1, 2, 3], vec![4, 5]],
        vec![vec![1, 3, 4], vec![2, 5]],
        vec![vec![1, 2, 4], vec![3, 5]],
        vec![vec![1, 3, 5], vec![2, 4]],
        vec![vec![1, 2, 5], vec![3, 4]],
    ]
    .into_iter()
    .map(|rows| StandardTableau::new(rows).expect("standard"))
    .collect()
}

/// Standard tableaux of shape `f`, in basis order.
pub fn standard_tableaux(f: &Partition) -> Vec<StandardTableau> {
    match f.parts() {
        [3, 2] => tableaux_32(),
        [2, 2, 1] => tableaux_32()
            .iter()
            .map(StandardTableau::transpose)
            .collect(),
        _ => {
            let mut all = enumerate_tableaux(f);
            all.sort_by_key(|t| std::cmp::Reverse(t.yamanouchi()));
            all
        }
    }
}

/// Per-basis-vector signs applied on top of the axial-distance rule.
fn basis_phases(f: &Partition) -> Vec<f64> {
    match f.parts() {
        [2, 2] => vec![1.0, -1.0],
        _ => vec![1.0; f.dimension() as usize],
    }
}

/// A real orthogonal representation matrix tagged with its partition.
#[derive(Clone, Debug, PartialEq)]
pub struct ReprMatrix {
    pub shape: Partition,
    pub matrix: RMatrix,
}

impl ReprMatrix {
    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    /// `‖MᵀM − I‖∞`.
    pub fn orthogonality_defect(&self) -> f64 {
        let d = self.dim();
        linalg::max_abs(&(self.matrix.transpose() * &self.matrix - RMatrix::identity(d, d)))
    }
}

/// Young's orthogonal representation `D^f` with its generator matrices precomputed.
#[derive(Clone, Debug)]
pub struct YoungRepresentation {
    shape: Partition,
    tableaux: Vec<StandardTableau>,
    generators: Vec<RMatrix>,
}

impl YoungRepresentation {
    pub fn new(shape: &Partition) -> Self {
        let tableaux = standard_tableaux(shape);
        let phases = basis_phases(shape);
        let n = shape.n();
        let index: HashMap<&StandardTableau, usize> =
            tableaux.iter().enumerate().map(|(k, t)| (t, k)).collect();
        let d = tableaux.len();
        let generators = (1..n)
            .map(|i| {
                let mut m = RMatrix::zeros(d, d);
                for (a, t) in tableaux.iter().enumerate() {
                    let rho = (t.content(i + 1) - t.content(i)) as f64;
                    m[(a, a)] = 1.0 / rho;
                    if let Some(s) = t.swapped(i) {
                        let b = index[&s];
                        m[(a, b)] = phases[a] * phases[b] * (1.0 - 1.0 / (rho * rho)).sqrt();
                    }
                }
                m
            })
            .collect();
        YoungRepresentation {
            shape: shape.clone(),
            tableaux,
            generators,
        }
    }

    pub fn shape(&self) -> &Partition {
        &self.shape
    }

    pub fn dim(&self) -> usize {
        self.tableaux.len()
    }

    pub fn tableaux(&self) -> &[StandardTableau] {
        &self.tableaux
    }

    /// Matrix of `(i, i+1)`, `1 ≤ i ≤ n−1`.
    pub fn generator(&self, i: usize) -> &RMatrix {
        &self.generators[i - 1]
    }

    /// Product of generator matrices along the word.
    pub fn word_matrix(&self, word: &[usize]) -> RMatrix {
        let d = self.dim();
        word.iter()
            .fold(RMatrix::identity(d, d), |acc, &i| acc * self.generator(i))
    }

    /// `D^f(p)`; a homomorphism for left-to-right products.
    pub fn matrix(&self, p: &Permutation) -> RMatrix {
        assert_eq!(p.degree(), self.shape.n() as usize, "degree mismatch");
        self.word_matrix(&p.adjacent_factorization())
    }

    pub fn coxeter_matrix(&self) -> RMatrix {
        let n = self.shape.n() as usize;
        self.word_matrix(&(1..n).collect::<Vec<_>>())
    }
}

pub fn generator_matrix(f: &Partition, i: usize) -> Result<ReprMatrix> {
    let n = f.n() as usize;
    if i == 0 || i >= n {
        return Err(crate::Error::arg(format!(
            "generator index {i} outside 1..{n}"
        )));
    }
    let rep = YoungRepresentation::new(f);
    Ok(ReprMatrix {
        shape: f.clone(),
        matrix: rep.generator(i).clone(),
    })
}

pub fn rep_matrix(f: &Partition, p: &Permutation) -> Result<ReprMatrix> {
    if p.degree() != f.n() as usize {
        return Err(crate::Error::arg(format!(
            "permutation of degree {} does not act in D^{f}",
            p.degree()
        )));
    }
    Ok(ReprMatrix {
        shape: f.clone(),
        matrix: YoungRepresentation::new(f).matrix(p),
    })
}

/// `(1/n) Σ_{h ∈ C_n} D^f(h)`, the projector onto the `C_n`-invariant vectors.
pub fn trivial_projector(f: &Partition) -> ReprMatrix {
    let rep = YoungRepresentation::new(f);
    let n = f.n() as usize;
    let d = rep.dim();
    let sum = cyclic_elements(n)
        .iter()
        .fold(RMatrix::zeros(d, d), |acc, h| acc + rep.matrix(h));
    ReprMatrix {
        shape: f.clone(),
        matrix: sum / n as f64,
    }
}

/// Orthonormal basis of the eigenvalue-1 eigenspace of the Coxeter element.
#[derive(Clone, Debug)]
pub struct FixedSubspace {
    pub shape: Partition,
    /// Columns are the basis vectors.
    pub basis: RMatrix,
}

impl FixedSubspace {
    pub fn dim(&self) -> usize {
        self.basis.ncols()
    }

    pub fn vector(&self, k: usize) -> DVector<f64> {
        self.basis.column(k).into_owned()
    }
}

pub fn fixed_subspace(f: &Partition) -> Result<FixedSubspace> {
    let rep = YoungRepresentation::new(f);
    fixed_subspace_of(f, &rep.coxeter_matrix())
}

/// Kernel of `C − I` by row reduction, orthonormalized; cross-checked against the
/// singular-value rank and the character-theoretic multiplicity.
pub(crate) fn fixed_subspace_of(f: &Partition, coxeter: &RMatrix) -> Result<FixedSubspace> {
    let d = coxeter.nrows();
    let shifted = coxeter - RMatrix::identity(d, d);
    let kernel = linalg::null_space(&shifted, linalg::PIVOT_TOL);
    let mut basis = linalg::gram_schmidt(&kernel, 1e-10);
    for v in basis.iter_mut() {
        linalg::canonical_sign(v, 1e-9);
    }
    let svd_dim = d - linalg::numerical_rank(&shifted);
    let expected = trivial_multiplicity(f)? as usize;
    if basis.len() != svd_dim || basis.len() != expected {
        return Err(crate::Error::Consistency(format!(
            "fixed space of {f}: elimination gives {}, singular values give {svd_dim}, characters give {expected}",
            basis.len()
        )));
    }
    Ok(FixedSubspace {
        shape: f.clone(),
        basis: linalg::columns_to_matrix(&basis, d),
    })
}

/// The 3×3 tetrahedral form of `S(4)` in the coordinates `y_1, y_2, y_3`.
///
/// `D^{[31]'}` is hard coded; `D^{[211]'}` multiplies each generator by the sign
/// representation.
#[derive(Clone, Debug)]
pub struct TetrahedralPrimed {
    pub d31: [RMatrix; 3],
    pub d211: [RMatrix; 3],
}

pub fn tetrahedral_primed_generators() -> TetrahedralPrimed {
    let m = |v: [f64; 9]| RMatrix::from_row_slice(3, 3, &v);
    let d31 = [
        m([1.0, 0.0, 0.0, 0.0, 0.0, -1.0, 0.0, -1.0, 0.0]),
        m([0.0, 1.0, 0.0, 1.0, 0.0, 0.0, 0.0, 0.0, 1.0]),
        m([1.0, 0.0, 0.0, 0.0, 0.0, 1.0, 0.0, 1.0, 0.0]),
    ];
    let d211 = d31.clone().map(|g| -g);
    TetrahedralPrimed { d31, d211 }
}

impl TetrahedralPrimed {
    pub fn generators(&self, associate: bool) -> &[RMatrix; 3] {
        if associate {
            &self.d211
        } else {
            &self.d31
        }
    }

    /// `D^{[31]'}(p)` (or `D^{[211]'}(p)` when `associate`) for `p ∈ S(4)`.
    pub fn matrix(&self, p: &Permutation, associate: bool) -> RMatrix {
        assert_eq!(p.degree(), 4);
        let gens = self.generators(associate);
        p.adjacent_factorization()
            .iter()
            .fold(RMatrix::identity(3, 3), |acc, &i| acc * &gens[i - 1])
    }

    pub fn coxeter_matrix(&self, associate: bool) -> RMatrix {
        let gens = self.generators(associate);
        &gens[0] * &gens[1] * &gens[2]
    }

    /// `(1/4) Σ_{h ∈ C_4} D(h)`.
    pub fn trivial_projector(&self, associate: bool) -> RMatrix {
        let sum = cyclic_elements(4)
            .iter()
            .fold(RMatrix::zeros(3, 3), |acc, h| {
                acc + self.matrix(h, associate)
            });
        sum / 4.0
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::permgroup::{character, partitions};

    fn p(s: &str) -> Partition {
        s.parse().unwrap()
    }

    fn close(a: &RMatrix, b: &RMatrix, tol: f64) -> bool {
        a.shape() == b.shape() && linalg::max_abs(&(a - b)) < tol
    }

    #[test]
    fn yamanouchi_order_for_211() {
        let symbols: Vec<String> = standard_tableaux(&p("[211]"))
            .iter()
            .map(StandardTableau::yamanouchi_string)
            .collect();
        assert_eq!(symbols, ["3211", "3121", "1321"]);
    }

    #[test]
    fn row_and_column_shapes() {
        let row = standard_tableaux(&Partition::row(4));
        assert_eq!(row.len(), 1);
        assert_eq!(row[0].rows(), &[vec![1, 2, 3, 4]]);
        let col = standard_tableaux(&Partition::column(3));
        assert_eq!(col[0].rows(), &[vec![1], vec![2], vec![3]]);
    }

    #[test]
    fn yamanouchi_round_trip() {
        for n in 1..=6 {
            for f in partitions(n) {
                let ts = standard_tableaux(&f);
                assert_eq!(ts.len() as u64, f.dimension());
                for t in ts {
                    assert_eq!(
                        StandardTableau::from_yamanouchi(&t.yamanouchi()).unwrap(),
                        t
                    );
                }
            }
        }
    }

    #[test]
    fn tableau_validation() {
        assert!(StandardTableau::new(vec![vec![1, 3], vec![2]]).is_ok());
        assert!(StandardTableau::new(vec![vec![2, 1]]).is_err());
        assert!(StandardTableau::new(vec![vec![1, 2], vec![3, 4, 5]]).is_err());
    }

    #[test]
    fn generator_21() {
        let s = 3f64.sqrt() / 2.0;
        let g = generator_matrix(&p("[21]"), 2).unwrap();
        assert!(close(
            &g.matrix,
            &RMatrix::from_row_slice(2, 2, &[-0.5, s, s, 0.5]),
            1e-15
        ));
    }

    #[test]
    fn generator_22() {
        let g = generator_matrix(&p("[22]"), 3).unwrap();
        assert!(close(
            &g.matrix,
            &RMatrix::from_row_slice(2, 2, &[1.0, 0.0, 0.0, -1.0]),
            1e-15
        ));
    }

    #[test]
    fn generator_32_block() {
        let g = generator_matrix(&p("[32]"), 3).unwrap().matrix;
        let r = (8.0f64 / 9.0).sqrt();
        assert!((g[(0, 0)] + 1.0 / 3.0).abs() < 1e-15);
        assert!((g[(0, 2)] - r).abs() < 1e-15);
        assert!((g[(2, 0)] - r).abs() < 1e-15);
        assert!((g[(2, 2)] - 1.0 / 3.0).abs() < 1e-15);
        assert!(generator_matrix(&p("[32]"), 5).is_err());
        assert!(generator_matrix(&p("[32]"), 0).is_err());
    }

    #[test]
    fn rep_matrix_identity_and_22_cycle() {
        let f = p("[32]");
        let m = rep_matrix(&f, &Permutation::identity(5)).unwrap();
        assert!(close(&m.matrix, &RMatrix::identity(5, 5), 0.0 + 1e-15));
        let s = 3f64.sqrt() / 2.0;
        let c = rep_matrix(
            &p("[22]"),
            &Permutation::parse_product(4, "(1,2,3,4)").unwrap(),
        )
        .unwrap();
        assert!(close(
            &c.matrix,
            &RMatrix::from_row_slice(2, 2, &[-0.5, s, s, 0.5]),
            1e-15
        ));
        assert!(rep_matrix(&f, &Permutation::identity(4)).is_err());
    }

    #[test]
    fn generators_are_orthogonal_involutions() {
        for n in 2..=6 {
            for f in partitions(n) {
                let rep = YoungRepresentation::new(&f);
                let d = rep.dim();
                for i in 1..n as usize {
                    let g = rep.generator(i);
                    assert!(close(&(g * g), &RMatrix::identity(d, d), 1e-12), "{f} s{i}");
                    assert!(close(&g.transpose(), g, 1e-15));
                }
            }
        }
    }

    #[test]
    fn braid_and_commutation_relations() {
        for n in 3..=5 {
            for f in partitions(n) {
                let rep = YoungRepresentation::new(&f);
                let d = rep.dim();
                let id = RMatrix::identity(d, d);
                for i in 1..n as usize {
                    for j in i + 1..n as usize {
                        let prod = rep.generator(i) * rep.generator(j);
                        let power = if j == i + 1 { 3 } else { 2 };
                        let m = (0..power).fold(id.clone(), |acc, _| acc * &prod);
                        assert!(close(&m, &id, 1e-12), "{f}: (s{i} s{j})^{power}");
                    }
                }
            }
        }
    }

    #[test]
    fn traces_match_exact_characters_on_s4() {
        for f in partitions(4) {
            let rep = YoungRepresentation::new(&f);
            for q in Permutation::all(4) {
                let tr = rep.matrix(&q).trace();
                let chi = character(&f, &q.cycle_type()).unwrap() as f64;
                assert!((tr - chi).abs() < 1e-10, "{f} at {q}");
            }
        }
    }

    #[test]
    fn coxeter_power_is_identity() {
        for n in 3..=6 {
            for f in partitions(n) {
                let rep = YoungRepresentation::new(&f);
                let c = rep.coxeter_matrix();
                let d = rep.dim();
                let m = (0..n).fold(RMatrix::identity(d, d), |acc, _| acc * &c);
                assert!(close(&m, &RMatrix::identity(d, d), 1e-10));
            }
        }
    }

    #[test]
    fn projector_22() {
        let s3 = 3f64.sqrt();
        let pr = trivial_projector(&p("[22]")).matrix;
        let expect = RMatrix::from_row_slice(2, 2, &[1.0, s3, s3, 3.0]) / 4.0;
        assert!(close(&pr, &expect, 1e-12));
    }

    #[test]
    fn projector_41_vanishes() {
        let pr = trivial_projector(&p("[41]")).matrix;
        assert!(linalg::max_abs(&pr) < 1e-12);
    }

    #[test]
    fn projectors_are_idempotent_with_multiplicity_rank() {
        for n in 3..=6 {
            for f in partitions(n) {
                let pr = trivial_projector(&f).matrix;
                assert!(linalg::max_abs(&(&pr * &pr - &pr)) < 1e-12);
                assert!(close(&pr.transpose(), &pr, 1e-12));
                let m = trivial_multiplicity(&f).unwrap();
                assert_eq!(linalg::numerical_rank(&pr) as u64, m, "{f}");
                assert!((pr.trace() - m as f64).abs() < 1e-10);
            }
        }
    }

    #[test]
    fn fixed_vectors() {
        let v = fixed_subspace(&p("[211]")).unwrap().vector(0);
        let expect = [0.5f64.sqrt(), (1.0f64 / 6.0).sqrt(), (1.0f64 / 3.0).sqrt()];
        for k in 0..3 {
            assert!((v[k] - expect[k]).abs() < 1e-12);
        }
        let v = fixed_subspace(&p("[22]")).unwrap().vector(0);
        assert!((v[0] - 0.5).abs() < 1e-12 && (v[1] - 0.75f64.sqrt()).abs() < 1e-12);
        assert_eq!(fixed_subspace(&p("[41]")).unwrap().dim(), 0);
    }

    #[test]
    fn fixed_subspaces_are_orthonormal() {
        for n in 3..=6 {
            for f in partitions(n) {
                let fs = fixed_subspace(&f).unwrap();
                let k = fs.dim();
                let g = fs.basis.transpose() * &fs.basis;
                assert!(close(&g, &RMatrix::identity(k, k), 1e-12));
            }
        }
    }

    #[test]
    fn primed_tetrahedral_form() {
        let t = tetrahedral_primed_generators();
        let expect = RMatrix::from_row_slice(3, 3, &[0.0, 1.0, 0.0, 1.0, 0.0, 0.0, 0.0, 0.0, 1.0]);
        assert!(close(&t.d31[1], &expect, 0.0 + 1e-15));
        let cox = RMatrix::from_row_slice(3, 3, &[0.0, 0.0, -1.0, 0.0, 1.0, 0.0, 1.0, 0.0, 0.0]);
        assert!(close(&t.coxeter_matrix(true), &cox, 1e-15));
        for g in t.d31.iter().chain(t.d211.iter()) {
            assert!(close(&(g * g), &RMatrix::identity(3, 3), 1e-15));
        }
        let pr = t.trivial_projector(true);
        let expect = RMatrix::from_row_slice(3, 3, &[0.0, 0.0, 0.0, 0.0, 1.0, 0.0, 0.0, 0.0, 0.0]);
        assert!(close(&pr, &expect, 1e-15));
    }

    #[test]
    fn primed_forms_carry_the_right_characters() {
        let t = tetrahedral_primed_generators();
        for q in Permutation::all(4) {
            let k = q.cycle_type();
            let c31 = character(&p("[31]"), &k).unwrap() as f64;
            let c211 = character(&p("[211]"), &k).unwrap() as f64;
            assert!((t.matrix(&q, false).trace() - c31).abs() < 1e-12);
            assert!((t.matrix(&q, true).trace() - c211).abs() < 1e-12);
        }
    }
}
