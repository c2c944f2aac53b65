//! `SU(2)` as the 3-sphere, its Wigner `D^j` representations and characters.
//!
//! A point `x = (x0,x1,x2,x3)` of `S³` is the matrix
//! `u = [[z1, z2], [−z̄2, z̄1]]` with `z1 = x0 − i·x3` and `z2 = −(x2 + i·x1)`.
//!
//! `D^j_{m1 m2}(u)` is the degree-`2j` polynomial
//!
//! ```text
//! Σ_σ (−1)^{m2−m1+σ} sqrt((j+m1)!(j−m1)!(j+m2)!(j−m2)!)
//!     / ((j+m1−σ)! (m2−m1+σ)! σ! (j−m2−σ)!)
//!     · z1^{j+m1−σ} z̄2^{m2−m1+σ} z2^σ z̄1^{j−m2−σ}
//! ```
//!
//! Matrices are indexed by `m = −j, …, +j` ascending on both axes. With this
//! placement `D^j(uv) = D^j(u) D^j(v)` (ordinary matrix product); at `j = 1/2` the
//! `(+½, +½)` entry is `z1`, `(+½, −½)` is `z2`, `(−½, +½)` is `−z̄2` and
//! `(−½, −½)` is `z̄1`, i.e. `u` itself with both indices reversed.

use std::ops::{Mul, Neg};
use std::sync::OnceLock;

use num_complex::Complex64;
use num_integer::Integer;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::CMatrix;

/// Norm tolerance for points of `S³`.
pub const UNIT_TOL: f64 = 1e-12;

/// Largest supported `2j`; factorials up to `24!` fit exactly in `u128`.
pub const MAX_TWO_J: u32 = 24;

/// A vector of `E⁴`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Point4 {
    pub x0: f64,
    pub x1: f64,
    pub x2: f64,
    pub x3: f64,
}

impl Point4 {
    pub const fn new(x0: f64, x1: f64, x2: f64, x3: f64) -> Self {
        Point4 { x0, x1, x2, x3 }
    }

    pub fn as_array(&self) -> [f64; 4] {
        [self.x0, self.x1, self.x2, self.x3]
    }

    pub fn dot(&self, other: &Point4) -> f64 {
        self.x0 * other.x0 + self.x1 * other.x1 + self.x2 * other.x2 + self.x3 * other.x3
    }

    pub fn norm(&self) -> f64 {
        self.dot(self).sqrt()
    }
}

/// An element of `SU(2)`, stored by the first row `(z1, z2)` of its matrix.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct SU2Element {
    pub z1: Complex64,
    pub z2: Complex64,
}

impl SU2Element {
    /// Checks `|z1|² + |z2|² = 1` within [`UNIT_TOL`].
    pub fn new(z1: Complex64, z2: Complex64) -> Result<Self> {
        let det = z1.norm_sqr() + z2.norm_sqr();
        if (det - 1.0).abs() > UNIT_TOL {
            return Err(Error::arg(format!("|z1|²+|z2|² = {det}, not 1")));
        }
        Ok(SU2Element { z1, z2 })
    }

    pub(crate) const fn new_unchecked(z1: Complex64, z2: Complex64) -> Self {
        SU2Element { z1, z2 }
    }

    pub const fn identity() -> Self {
        SU2Element::new_unchecked(Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0))
    }

    /// `q = [[0, −1], [1, 0]]`, with `qᵀ = q⁻¹ = −q` and `ū = q⁻¹ u q`.
    pub const fn q() -> Self {
        SU2Element::new_unchecked(Complex64::new(0.0, 0.0), Complex64::new(-1.0, 0.0))
    }

    /// The 2×2 matrix `[[z1, z2], [−z̄2, z̄1]]`.
    pub fn matrix(&self) -> [[Complex64; 2]; 2] {
        [[self.z1, self.z2], [-self.z2.conj(), self.z1.conj()]]
    }

    pub fn to_cmatrix(&self) -> CMatrix {
        let m = self.matrix();
        CMatrix::from_row_slice(2, 2, &[m[0][0], m[0][1], m[1][0], m[1][1]])
    }

    /// Reads an `SU(2)` matrix back; only the first row is used.
    pub fn from_matrix(m: &[[Complex64; 2]; 2]) -> Result<Self> {
        Self::new(m[0][0], m[0][1])
    }

    pub fn to_point(&self) -> Point4 {
        Point4::new(self.z1.re, -self.z2.im, -self.z2.re, -self.z1.im)
    }

    pub fn trace(&self) -> f64 {
        2.0 * self.z1.re
    }

    /// `u⁻¹ = u†`.
    pub fn inverse(&self) -> Self {
        SU2Element::new_unchecked(self.z1.conj(), -self.z2)
    }

    /// Entrywise complex conjugate `ū`.
    pub fn conj(&self) -> Self {
        SU2Element::new_unchecked(self.z1.conj(), self.z2.conj())
    }

    pub fn transpose(&self) -> Self {
        SU2Element::new_unchecked(self.z1, -self.z2.conj())
    }

    /// `max(|Δz1|, |Δz2|)`.
    pub fn distance(&self, other: &SU2Element) -> f64 {
        (self.z1 - other.z1).norm().max((self.z2 - other.z2).norm())
    }

    /// Geodesic distance on the unit 3-sphere.
    pub fn geodesic(&self, other: &SU2Element) -> f64 {
        self.to_point()
            .dot(&other.to_point())
            .clamp(-1.0, 1.0)
            .acos()
    }

    /// Projects back onto `S³` to remove accumulated roundoff.
    pub fn renormalized(&self) -> Self {
        let n = (self.z1.norm_sqr() + self.z2.norm_sqr()).sqrt();
        SU2Element::new_unchecked(self.z1 / n, self.z2 / n)
    }
}

impl Mul for SU2Element {
    type Output = SU2Element;

    fn mul(self, rhs: SU2Element) -> SU2Element {
        let (a, b, c, d) = (self.z1, self.z2, rhs.z1, rhs.z2);
        SU2Element::new_unchecked(a * c - b * d.conj(), a * d + b * c.conj())
    }
}

impl Neg for SU2Element {
    type Output = SU2Element;

    fn neg(self) -> SU2Element {
        SU2Element::new_unchecked(-self.z1, -self.z2)
    }
}

/// `z1 = x0 − i·x3`, `z2 = −(x2 + i·x1)`.
pub fn su2_from_point(x: &Point4) -> Result<SU2Element> {
    if (x.norm() - 1.0).abs() > UNIT_TOL {
        return Err(Error::arg(format!(
            "point {x:?} has norm {}, not 1",
            x.norm()
        )));
    }
    Ok(SU2Element::new_unchecked(
        Complex64::new(x.x0, -x.x3),
        Complex64::new(-x.x2, -x.x1),
    ))
}

/// The complex-conjugate element, computed as `q⁻¹ u q`.
pub fn q_conjugation(u: &SU2Element) -> SU2Element {
    let q = SU2Element::q();
    q.inverse() * *u * q
}

/// `D^j(u)` as a `(2j+1)×(2j+1)` complex matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct WignerMatrix {
    pub two_j: u32,
    pub entries: CMatrix,
}

impl WignerMatrix {
    /// Row/column index of `m` given as `2m`.
    pub fn index(two_j: u32, two_m: i32) -> usize {
        debug_assert!(two_m.abs() <= two_j as i32 && (two_j as i32 - two_m) % 2 == 0);
        ((two_m + two_j as i32) / 2) as usize
    }

    pub fn get(&self, two_m1: i32, two_m2: i32) -> Complex64 {
        self.entries[(
            Self::index(self.two_j, two_m1),
            Self::index(self.two_j, two_m2),
        )]
    }
}

/// One term of the σ-sum: coefficient and exponents of `z1, z̄2, z2, z̄1`.
#[derive(Clone, Copy, Debug)]
struct Term {
    coeff: f64,
    powers: [usize; 4],
}

struct Coefficients {
    dim: usize,
    // terms[row * dim + col]
    terms: Vec<Vec<Term>>,
}

fn factorial(k: u32) -> u128 {
    (1..=k as u128).product()
}

/// `sqrt(num/den)` after cancelling common factors in integer arithmetic.
fn sqrt_ratio(num: u128, den: u128) -> f64 {
    let g = num.gcd(&den);
    ((num / g) as f64 / (den / g) as f64).sqrt()
}

impl Coefficients {
    fn build(two_j: u32) -> Self {
        let dim = two_j as usize + 1;
        let mut terms = Vec::with_capacity(dim * dim);
        for row in 0..dim as u32 {
            for col in 0..dim as u32 {
                // j+m = index, j-m = 2j - index
                let (jp1, jm1) = (row, two_j - row);
                let (jp2, jm2) = (col, two_j - col);
                let a = factorial(jp1) * factorial(jm1);
                let b = factorial(jp2) * factorial(jm2);
                let shift = col as i64 - row as i64; // m2 - m1
                let mut entry = Vec::new();
                for sigma in 0..=two_j as i64 {
                    let e1 = jp1 as i64 - sigma;
                    let e2 = shift + sigma;
                    let e4 = jm2 as i64 - sigma;
                    if e1 < 0 || e2 < 0 || e4 < 0 {
                        continue;
                    }
                    let d = factorial(e1 as u32)
                        * factorial(e2 as u32)
                        * factorial(sigma as u32)
                        * factorial(e4 as u32);
                    let sign = if e2 % 2 == 0 { 1.0 } else { -1.0 };
                    entry.push(Term {
                        coeff: sign * sqrt_ratio(a, d) * sqrt_ratio(b, d),
                        powers: [e1 as usize, e2 as usize, sigma as usize, e4 as usize],
                    });
                }
                terms.push(entry);
            }
        }
        Coefficients { dim, terms }
    }

    fn cached(two_j: u32) -> &'static Coefficients {
        static CACHE: [OnceLock<Coefficients>; MAX_TWO_J as usize + 1] =
            [const { OnceLock::new() }; MAX_TWO_J as usize + 1];
        CACHE[two_j as usize].get_or_init(|| Coefficients::build(two_j))
    }
}

fn powers(z: Complex64, max: usize) -> Vec<Complex64> {
    let mut out = Vec::with_capacity(max + 1);
    let mut acc = Complex64::new(1.0, 0.0);
    for _ in 0..=max {
        out.push(acc);
        acc *= z;
    }
    out
}

/// Evaluates the Wigner polynomial at the (not necessarily unitary) pair `(z1, z2)`.
fn evaluate(two_j: u32, z1: Complex64, z2: Complex64) -> CMatrix {
    let coeffs = Coefficients::cached(two_j);
    let max = two_j as usize;
    let tables = [
        powers(z1, max),
        powers(z2.conj(), max),
        powers(z2, max),
        powers(z1.conj(), max),
    ];
    let dim = coeffs.dim;
    CMatrix::from_fn(dim, dim, |r, c| {
        coeffs.terms[r * dim + c]
            .iter()
            .map(|t| {
                tables[0][t.powers[0]]
                    * tables[1][t.powers[1]]
                    * tables[2][t.powers[2]]
                    * tables[3][t.powers[3]]
                    * t.coeff
            })
            .sum()
    })
}

pub fn wigner_d(two_j: u32, u: &SU2Element) -> Result<WignerMatrix> {
    if two_j > MAX_TWO_J {
        return Err(Error::arg(format!(
            "2j = {two_j} exceeds the supported maximum {MAX_TWO_J}"
        )));
    }
    Ok(WignerMatrix {
        two_j,
        entries: evaluate(two_j, u.z1, u.z2),
    })
}

/// `χ^j(u) = sin((2j+1)φ/2) / sin(φ/2)` with `cos(φ/2) = Re z1`.
///
/// Where `sin(φ/2)` vanishes the limit is used: `2j+1` at `u = e` and
/// `(−1)^{2j}(2j+1)` at `u = −e`.
pub fn su2_character(two_j: u32, u: &SU2Element) -> f64 {
    let c = u.z1.re.clamp(-1.0, 1.0);
    let half = c.acos();
    let s = half.sin();
    let dim = (two_j + 1) as f64;
    if s.abs() < 1e-9 {
        return if c > 0.0 || two_j.is_multiple_of(2) {
            dim
        } else {
            -dim
        };
    }
    (dim * half).sin() / s
}

/// Rotation angle `φ ∈ [0, 2π]` of `u`, from `cos(φ/2) = Re z1`.
pub fn rotation_angle(u: &SU2Element) -> f64 {
    2.0 * u.z1.re.clamp(-1.0, 1.0).acos()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::max_abs_c;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_su2(rng: &mut ChaCha8Rng) -> SU2Element {
        let x: [f64; 4] = std::array::from_fn(|_| rng.random_range(-1.0..1.0));
        let n = x.iter().map(|v| v * v).sum::<f64>().sqrt();
        su2_from_point(&Point4::new(x[0] / n, x[1] / n, x[2] / n, x[3] / n)).unwrap()
    }

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn coordinate_map() {
        let e = su2_from_point(&Point4::new(1.0, 0.0, 0.0, 0.0)).unwrap();
        assert_eq!(e, SU2Element::identity());
        let v1 = su2_from_point(&Point4::new(0.0, 0.0, 0.0, 1.0)).unwrap();
        assert_eq!(v1.z1, c(0.0, -1.0));
        assert_eq!(v1.z2, c(0.0, 0.0) * -1.0);
        let a4 = Point4::new((5.0f64 / 8.0).sqrt(), (3.0f64 / 8.0).sqrt(), 0.0, 0.0);
        let v4 = su2_from_point(&a4).unwrap();
        let m = v4.matrix();
        assert!((m[0][0] - c((5.0f64 / 8.0).sqrt(), 0.0)).norm() < 1e-15);
        assert!((m[0][1] - c(0.0, -(3.0f64 / 8.0).sqrt())).norm() < 1e-15);
        assert!((m[1][0] - c(0.0, -(3.0f64 / 8.0).sqrt())).norm() < 1e-15);
        assert!(su2_from_point(&Point4::new(1.0, 1.0, 0.0, 0.0)).is_err());
        assert_eq!(v4.to_point(), a4);
    }

    #[test]
    fn identity_gives_identity_matrix() {
        for two_j in 0..=MAX_TWO_J {
            let d = wigner_d(two_j, &SU2Element::identity()).unwrap();
            let n = two_j as usize + 1;
            assert!(max_abs_c(&(d.entries - CMatrix::identity(n, n))) < 1e-12);
        }
        assert!(wigner_d(MAX_TWO_J + 1, &SU2Element::identity()).is_err());
    }

    #[test]
    fn spin_half_entry_placement() {
        // expanding the σ-sum by hand at j = 1/2:
        // (+½,+½) -> z1, (+½,−½) -> z2, (−½,+½) -> −conj(z2), (−½,−½) -> conj(z1)
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..10 {
            let u = random_su2(&mut rng);
            let d = wigner_d(1, &u).unwrap();
            assert!((d.get(1, 1) - u.z1).norm() < 1e-15);
            assert!((d.get(1, -1) - u.z2).norm() < 1e-15);
            assert!((d.get(-1, 1) + u.z2.conj()).norm() < 1e-15);
            assert!((d.get(-1, -1) - u.z1.conj()).norm() < 1e-15);
        }
    }

    #[test]
    fn homogeneity_under_negation() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..10 {
            let u = random_su2(&mut rng);
            for two_j in 1..=3 {
                let sign = if two_j % 2 == 0 { 1.0 } else { -1.0 };
                let a = wigner_d(two_j, &-u).unwrap().entries;
                let b = wigner_d(two_j, &u).unwrap().entries * c(sign, 0.0);
                assert!(max_abs_c(&(a - b)) < 1e-12);
            }
        }
    }

    #[test]
    fn homomorphism_unitarity_reality() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..20 {
            let u = random_su2(&mut rng);
            let v = random_su2(&mut rng);
            for two_j in [1, 2, 3, 4, 10] {
                let du = wigner_d(two_j, &u).unwrap().entries;
                let dv = wigner_d(two_j, &v).unwrap().entries;
                let duv = wigner_d(two_j, &(u * v)).unwrap().entries;
                assert!(max_abs_c(&(&duv - &du * &dv)) < 1e-9);
                let n = two_j as usize + 1;
                assert!(max_abs_c(&(du.adjoint() * &du - CMatrix::identity(n, n))) < 1e-10);
                let dinv = wigner_d(two_j, &u.inverse()).unwrap().entries;
                assert!(max_abs_c(&(dinv - du.adjoint())) < 1e-10);
                let dt = wigner_d(two_j, &u.transpose()).unwrap().entries;
                assert!(max_abs_c(&(dt - du.transpose())) < 1e-10);
                let dbar = wigner_d(two_j, &u.conj()).unwrap().entries;
                assert!(max_abs_c(&(dbar - du.map(|z| z.conj()))) < 1e-10);
            }
        }
    }

    #[test]
    fn characters() {
        for two_j in 0..=12 {
            assert_eq!(
                su2_character(two_j, &SU2Element::identity()),
                (two_j + 1) as f64
            );
        }
        // φ = π: Σ_m e^{imπ} over m = −j..j
        let u = SU2Element::new(c(0.0, 1.0), c(0.0, 0.0)).unwrap();
        let expected = [1.0, 0.0, -1.0, 0.0, 1.0, 0.0, -1.0, 0.0];
        for (two_j, e) in expected.iter().enumerate() {
            assert!((su2_character(two_j as u32, &u) - e).abs() < 1e-12);
        }
        let minus_e = -SU2Element::identity();
        assert_eq!(su2_character(1, &minus_e), -2.0);
        assert_eq!(su2_character(2, &minus_e), 3.0);
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..20 {
            let u = random_su2(&mut rng);
            assert!((su2_character(1, &u) - 2.0 * u.z1.re).abs() < 1e-12);
            for two_j in 0..=8 {
                let tr = wigner_d(two_j, &u).unwrap().entries.trace();
                assert!((tr.re - su2_character(two_j, &u)).abs() < 1e-9);
                assert!(tr.im.abs() < 1e-9);
            }
        }
    }

    #[test]
    fn q_conjugation_is_complex_conjugation() {
        let q = SU2Element::q();
        assert_eq!(q.transpose(), q.inverse());
        assert_eq!(q.inverse(), -q);
        let real = SU2Element::new(c(0.6, 0.0), c(0.8, 0.0)).unwrap();
        assert!(q_conjugation(&real).distance(&real) < 1e-15);
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for _ in 0..10 {
            let u = random_su2(&mut rng);
            assert!(q_conjugation(&u).distance(&u.conj()) < 1e-15);
            assert!(q_conjugation(&q_conjugation(&u)).distance(&u) < 1e-15);
        }
    }
}
