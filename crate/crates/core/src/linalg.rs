//! Small dense linear-algebra helpers shared by the representation modules.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

pub type RMatrix = DMatrix<f64>;
pub type CMatrix = DMatrix<Complex64>;

/// Relative singular-value cutoff used to decide numerical rank.
pub const RANK_CUTOFF: f64 = 1e-8;

/// Singular values below this are zero regardless of scale, so a matrix that is zero
/// up to roundoff has rank 0.
pub const RANK_FLOOR: f64 = 1e-10;

/// Pivot tolerance for Gaussian elimination.
pub const PIVOT_TOL: f64 = 1e-9;

pub fn max_abs(m: &RMatrix) -> f64 {
    m.iter().fold(0.0, |acc, x| acc.max(x.abs()))
}

pub fn max_abs_c(m: &CMatrix) -> f64 {
    m.iter().fold(0.0, |acc, x| acc.max(x.norm()))
}

/// Number of singular values above `RANK_CUTOFF` times the largest one (and above
/// `RANK_FLOOR`).
pub fn numerical_rank(m: &RMatrix) -> usize {
    if m.is_empty() {
        return 0;
    }
    let sv = m.clone().singular_values();
    let top = sv.iter().cloned().fold(0.0, f64::max);
    let cut = (RANK_CUTOFF * top).max(RANK_FLOOR);
    sv.iter().filter(|&&s| s > cut).count()
}

pub fn numerical_rank_c(m: &CMatrix) -> usize {
    if m.is_empty() {
        return 0;
    }
    let sv = m.clone().singular_values();
    let top = sv.iter().cloned().fold(0.0, f64::max);
    let cut = (RANK_CUTOFF * top).max(RANK_FLOOR);
    sv.iter().filter(|&&s| s > cut).count()
}

/// Null space of `a` from its reduced row echelon form, one vector per free column.
pub fn null_space(a: &RMatrix, pivot_tol: f64) -> Vec<DVector<f64>> {
    let (rows, cols) = a.shape();
    let mut m = a.clone();
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..cols {
        if row == rows {
            break;
        }
        let (best, val) = (row..rows)
            .map(|r| (r, m[(r, col)].abs()))
            .fold((row, -1.0), |acc, x| if x.1 > acc.1 { x } else { acc });
        if val <= pivot_tol {
            continue;
        }
        m.swap_rows(row, best);
        let p = m[(row, col)];
        for c in 0..cols {
            m[(row, c)] /= p;
        }
        for r in 0..rows {
            if r != row {
                let factor = m[(r, col)];
                if factor != 0.0 {
                    for c in 0..cols {
                        m[(r, c)] -= factor * m[(row, c)];
                    }
                }
            }
        }
        pivots.push(col);
        row += 1;
    }
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&fc| {
            let mut v = DVector::zeros(cols);
            v[fc] = 1.0;
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = -m[(r, fc)];
            }
            v
        })
        .collect()
}

/// Modified Gram–Schmidt with one re-orthogonalization pass; drops vectors whose
/// residual norm falls below `tol`.
pub fn gram_schmidt(vectors: &[DVector<f64>], tol: f64) -> Vec<DVector<f64>> {
    let mut basis: Vec<DVector<f64>> = Vec::new();
    for v in vectors {
        let mut w = v.clone();
        for _ in 0..2 {
            for b in &basis {
                let c = b.dot(&w);
                w -= b * c;
            }
        }
        let norm = w.norm();
        if norm > tol {
            basis.push(w / norm);
        }
    }
    basis
}

/// Stacks column vectors into a matrix (`dim × count`).
pub fn columns_to_matrix(cols: &[DVector<f64>], dim: usize) -> RMatrix {
    let mut m = RMatrix::zeros(dim, cols.len());
    for (j, c) in cols.iter().enumerate() {
        m.set_column(j, c);
    }
    m
}

/// Principal angles (radians, ascending) between the column spans of `a` and `b`.
pub fn principal_angles(a: &RMatrix, b: &RMatrix) -> Vec<f64> {
    let qa = orthonormal_columns(a);
    let qb = orthonormal_columns(b);
    let m = qa.transpose() * qb;
    let mut angles: Vec<f64> = m
        .singular_values()
        .iter()
        .map(|s| s.clamp(-1.0, 1.0).acos())
        .collect();
    angles.sort_by(|x, y| x.partial_cmp(y).unwrap());
    angles
}

fn orthonormal_columns(a: &RMatrix) -> RMatrix {
    let cols: Vec<DVector<f64>> = a.column_iter().map(|c| c.into_owned()).collect();
    let basis = gram_schmidt(&cols, 1e-12);
    columns_to_matrix(&basis, a.nrows())
}

/// Flips the sign so that the first component above `tol` in magnitude is positive.
pub fn canonical_sign(v: &mut DVector<f64>, tol: f64) {
    if let Some(first) = v.iter().find(|x| x.abs() > tol) {
        if *first < 0.0 {
            v.neg_mut();
        }
    }
}

/// Rank-revealing orthonormalization of the columns of a complex matrix.
///
/// Greedy column pivoting: at each step the column with the largest residual is
/// normalized and projected out of the rest (ties go to the lowest index). Stops after
/// `rank` columns. The result depends only on the input, so it is reproducible.
pub fn pivoted_orthonormal_columns(m: &CMatrix, rank: usize) -> CMatrix {
    let (rows, cols) = m.shape();
    let mut work: Vec<DVector<Complex64>> = m.column_iter().map(|c| c.into_owned()).collect();
    let mut basis: Vec<DVector<Complex64>> = Vec::with_capacity(rank);
    let mut used = vec![false; cols];
    for _ in 0..rank {
        let mut best = None;
        let mut best_norm = -1.0;
        for (j, w) in work.iter().enumerate() {
            if used[j] {
                continue;
            }
            let n = w.norm();
            if n > best_norm + 1e-12 {
                best_norm = n;
                best = Some(j);
            }
        }
        let Some(j) = best else { break };
        used[j] = true;
        let mut q = work[j].clone();
        // second pass against the accepted basis guards against drift
        for b in &basis {
            let c = b.dotc(&q);
            q -= b * c;
        }
        let norm = q.norm();
        if norm == 0.0 {
            break;
        }
        q /= Complex64::new(norm, 0.0);
        for (k, w) in work.iter_mut().enumerate() {
            if !used[k] {
                let c = q.dotc(w);
                *w -= &q * c;
            }
        }
        basis.push(q);
    }
    let mut out = CMatrix::zeros(rows, basis.len());
    for (j, b) in basis.iter().enumerate() {
        out.set_column(j, b);
    }
    out
}

/// Multiplies each column by a unit phase so its first entry above `tol` is real positive.
pub fn canonical_phases(m: &mut CMatrix, tol: f64) {
    for mut col in m.column_iter_mut() {
        if let Some(first) = col.iter().find(|x| x.norm() > tol).copied() {
            let phase = first.conj() / first.norm();
            for x in col.iter_mut() {
                *x *= phase;
            }
        }
    }
}
