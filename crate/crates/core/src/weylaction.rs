//! The `O(4)` action on `S³` restricted to the Weyl group `S(5)`.
//!
//! Every element of `O(4)` is stored as `T_{(g_l,g_r)}` or `T_{(g_l,g_r)} T_{a₀}`, where
//! `T_{(g_l,g_r)} f(u) = f(g_l⁻¹ u g_r)` and `T_{a₀} f(u) = f(−u†)` reflects `x0`.
//! The pairs `(g_l, g_r)` and `(−g_l, −g_r)` give the same operator.

use std::fmt;

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::CMatrix;
use crate::permgroup::{CycleType, Permutation};
use crate::su2wigner::{su2_character, su2_from_point, wigner_d, Point4, SU2Element};

/// Largest `2j` accepted by [`operator_matrix`].
pub const MAX_OPERATOR_TWO_J: u32 = 12;

/// A unit reflection vector and its `SU(2)` image.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct WeylVector {
    pub a: Point4,
    pub v: SU2Element,
}

impl WeylVector {
    pub fn new(a: Point4) -> Result<Self> {
        Ok(WeylVector {
            a,
            v: su2_from_point(&a)?,
        })
    }
}

/// Reflection vectors for the generators `(i, i+1)`, `i = 1..4`, of `S(5)`.
///
/// Adjacent vectors meet at `π/3`, the rest are orthogonal.
pub fn weyl_vectors_s5() -> Vec<WeylVector> {
    let s = f64::sqrt;
    [
        Point4::new(0.0, 0.0, 0.0, 1.0),
        Point4::new(0.0, 0.0, s(0.75), 0.5),
        Point4::new(0.0, s(2.0 / 3.0), s(1.0 / 3.0), 0.0),
        Point4::new(s(5.0 / 8.0), s(3.0 / 8.0), 0.0, 0.0),
    ]
    .into_iter()
    .map(|a| WeylVector::new(a).expect("unit vectors"))
    .collect()
}

/// `T_{(g_l, g_r)}`, followed on the right by `T_{a₀}` when `reflective`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct GroupOperator {
    pub g_l: SU2Element,
    pub g_r: SU2Element,
    pub reflective: bool,
}

impl GroupOperator {
    pub fn rotation(g_l: SU2Element, g_r: SU2Element) -> Self {
        GroupOperator {
            g_l,
            g_r,
            reflective: false,
        }
    }

    pub fn identity() -> Self {
        Self::rotation(SU2Element::identity(), SU2Element::identity())
    }

    /// The base reflection `T_{a₀}`, `a₀ = (1,0,0,0)`.
    pub fn base_reflection() -> Self {
        GroupOperator {
            g_l: SU2Element::identity(),
            g_r: SU2Element::identity(),
            reflective: true,
        }
    }

    pub fn then(&self, other: &GroupOperator) -> GroupOperator {
        compose(self, other)
    }

    /// Same operator, allowing the joint sign ambiguity of `(g_l, g_r)`.
    pub fn approx_eq(&self, other: &GroupOperator, tol: f64) -> bool {
        if self.reflective != other.reflective {
            return false;
        }
        let same = self
            .g_l
            .distance(&other.g_l)
            .max(self.g_r.distance(&other.g_r));
        let flipped = self
            .g_l
            .distance(&-other.g_l)
            .max(self.g_r.distance(&-other.g_r));
        same.min(flipped) < tol
    }
}

impl fmt::Display for GroupOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let fmt_el = |u: &SU2Element| {
            format!(
                "({:.6}{:+.6}i, {:.6}{:+.6}i)",
                u.z1.re, u.z1.im, u.z2.re, u.z2.im
            )
        };
        write!(f, "T[{}, {}]", fmt_el(&self.g_l), fmt_el(&self.g_r))?;
        if self.reflective {
            write!(f, " T_a0")?;
        }
        Ok(())
    }
}

/// `T_a = T_{(v_a, v_a⁻¹)} T_{a₀}`.
pub fn reflection_operator(a: &WeylVector) -> GroupOperator {
    GroupOperator {
        g_l: a.v,
        g_r: a.v.inverse(),
        reflective: true,
    }
}

/// Operator product `s·t` (apply `t` to the function first), normalized with
/// `T_{a₀} T_{(g,h)} T_{a₀} = T_{(h,g)}`.
pub fn compose(s: &GroupOperator, t: &GroupOperator) -> GroupOperator {
    let (hl, hr) = if s.reflective {
        (t.g_r, t.g_l)
    } else {
        (t.g_l, t.g_r)
    };
    GroupOperator {
        g_l: s.g_l * hl,
        g_r: s.g_r * hr,
        reflective: s.reflective ^ t.reflective,
    }
}

/// `W_{i_1} W_{i_2} …` for generator indices `1..=4`.
pub fn word_operator(word: &[usize]) -> Result<GroupOperator> {
    let vectors = weyl_vectors_s5();
    word.iter().try_fold(GroupOperator::identity(), |acc, &i| {
        let a = vectors
            .get(i.wrapping_sub(1))
            .ok_or_else(|| Error::arg(format!("generator index {i} outside 1..=4")))?;
        Ok(compose(&acc, &reflection_operator(a)))
    })
}

pub fn permutation_operator(p: &Permutation) -> Result<GroupOperator> {
    if p.degree() != 5 {
        return Err(Error::arg(format!(
            "permutation of degree {} is not in S(5)",
            p.degree()
        )));
    }
    word_operator(&p.adjacent_factorization())
}

/// The point map `M_T` with `(T f)(u) = f(M_T(u))`.
///
/// Rotations send `u` to `g_l⁻¹ u g_r`; reflective operators to
/// `g_r⁻¹ (−u†) g_l`, which is `T_{(g_l,g_r)}` applied after `T_{a₀}`.
pub fn act_on_point(op: &GroupOperator, u: &SU2Element) -> SU2Element {
    if op.reflective {
        op.g_r.inverse() * -u.inverse() * op.g_l
    } else {
        op.g_l.inverse() * *u * op.g_r
    }
}

/// `χ^{(j,j)}` of the operator: `χ^j(g_l⁻¹) χ^j(g_r)` or `χ^j(g_r g_l)`.
pub fn operator_character(two_j: u32, op: &GroupOperator) -> f64 {
    if op.reflective {
        su2_character(two_j, &(op.g_r * op.g_l))
    } else {
        su2_character(two_j, &op.g_l.inverse()) * su2_character(two_j, &op.g_r)
    }
}

/// Matrix of `op` on the `(2j+1)²` functions `D^j_{m1 m2}`, flattened row-major
/// (`m1` major, both ascending). Column `(m1, m2)` holds the coefficients of
/// `op·D^j_{m1 m2}`.
pub fn operator_matrix(two_j: u32, op: &GroupOperator) -> Result<CMatrix> {
    if two_j > MAX_OPERATOR_TWO_J {
        return Err(Error::arg(format!(
            "2j = {two_j} exceeds the operator matrix limit {MAX_OPERATOR_TWO_J}"
        )));
    }
    let dim = two_j as usize + 1;
    let (left, right, sign) = if op.reflective {
        // D_{m1m2}(−g_r⁻¹ u† g_l), with D(u†) = D(q⁻¹) D(u)ᵀ D(q)
        let q = SU2Element::q();
        let sign = if two_j.is_multiple_of(2) { 1.0 } else { -1.0 };
        (
            wigner_d(two_j, &(op.g_r.inverse() * q.inverse()))?.entries,
            wigner_d(two_j, &(q * op.g_l))?.entries,
            sign,
        )
    } else {
        (
            wigner_d(two_j, &op.g_l.inverse())?.entries,
            wigner_d(two_j, &op.g_r)?.entries,
            1.0,
        )
    };
    let n = dim * dim;
    Ok(CMatrix::from_fn(n, n, |row, col| {
        let (a, b) = (row / dim, row % dim);
        let (m1, m2) = (col / dim, col % dim);
        if op.reflective {
            // row (c, d): left[m1, d] · right[c, m2]
            left[(m1, b)] * right[(a, m2)] * sign
        } else {
            left[(m1, a)] * right[(b, m2)]
        }
    }))
}

/// Values `D^j_{m1 m2}(u)` flattened in the order used by [`operator_matrix`].
pub fn harmonic_values(two_j: u32, u: &SU2Element) -> Result<Vec<Complex64>> {
    let d = wigner_d(two_j, u)?.entries;
    let dim = two_j as usize + 1;
    Ok((0..dim * dim).map(|k| d[(k / dim, k % dim)]).collect())
}

/// Class representatives of `S(5)` as products of adjacent transpositions, in the
/// column order `(1)^5, (2)(1)^3, (2)^2(1), (3)(1)^2, (3)(2), (4)(1), (5)`.
pub const CLASS_REPRESENTATIVES: [&str; 7] = [
    "e",
    "(1,2)",
    "(1,2)(3,4)",
    "(1,2)(2,3)",
    "(1,2)(2,3)(4,5)",
    "(1,2)(2,3)(3,4)",
    "(1,2)(2,3)(3,4)(4,5)",
];

/// Reads a product of adjacent transpositions into its generator word.
fn representative_word(product: &str) -> Vec<usize> {
    if product == "e" {
        return Vec::new();
    }
    product
        .trim_matches(|c| c == '(' || c == ')')
        .split(")(")
        .map(|pair| {
            pair.split(',')
                .next()
                .and_then(|i| i.trim().parse().ok())
                .expect("well-formed representative")
        })
        .collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct ClassRepresentative {
    pub class: CycleType,
    pub product: &'static str,
    pub word: Vec<usize>,
    pub permutation: Permutation,
    pub operator: GroupOperator,
}

pub fn class_representatives() -> Vec<ClassRepresentative> {
    CLASS_REPRESENTATIVES
        .iter()
        .map(|&product| {
            let word = representative_word(product);
            let permutation = Permutation::from_word(5, &word).expect("valid word");
            ClassRepresentative {
                class: permutation.cycle_type(),
                product,
                operator: word_operator(&word).expect("valid word"),
                word,
                permutation,
            }
        })
        .collect()
}

/// Half rotation angles entering the character.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum AngleData {
    /// `φ(g_l)/2` and `φ(g_r)/2`.
    Rotation { half_left: f64, half_right: f64 },
    /// `φ(g_r g_l)/2`.
    Reflection { half_product: f64 },
}

fn half_angle(u: &SU2Element) -> f64 {
    u.z1.re.clamp(-1.0, 1.0).acos()
}

impl AngleData {
    pub fn of(op: &GroupOperator) -> Self {
        if op.reflective {
            AngleData::Reflection {
                half_product: half_angle(&(op.g_r * op.g_l)),
            }
        } else {
            AngleData::Rotation {
                half_left: half_angle(&op.g_l),
                half_right: half_angle(&op.g_r),
            }
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ClassCharacterRow {
    pub class: CycleType,
    pub representative: &'static str,
    pub angles: AngleData,
    /// `χ^{(j,j)}(k)` for `2j = 0, 1, …`.
    pub values: Vec<f64>,
}

/// Period in `2j` of `χ^{(j,j)}(k)`, for the five classes whose characters are periodic.
pub fn character_period(k: &CycleType) -> Option<u32> {
    match k.shape().parts() {
        [3, 1, 1] | [3, 2] => Some(3),
        [2, 2, 1] => Some(2),
        [4, 1] => Some(4),
        [5] => Some(5),
        _ => None,
    }
}

pub fn class_character_table(two_j_max: u32) -> Vec<ClassCharacterRow> {
    class_representatives()
        .into_iter()
        .map(|rep| ClassCharacterRow {
            angles: AngleData::of(&rep.operator),
            values: (0..=two_j_max)
                .map(|two_j| operator_character(two_j, &rep.operator))
                .collect(),
            class: rep.class,
            representative: rep.product,
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::max_abs_c;
    use rand::seq::IndexedRandom;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;
    use std::f64::consts::PI;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn el(m: [[Complex64; 2]; 2]) -> SU2Element {
        SU2Element::from_matrix(&m).unwrap()
    }

    fn random_su2(rng: &mut ChaCha8Rng) -> SU2Element {
        let x: [f64; 4] = std::array::from_fn(|_| rng.random_range(-1.0..1.0));
        let n = x.iter().map(|v| v * v).sum::<f64>().sqrt();
        su2_from_point(&Point4::new(x[0] / n, x[1] / n, x[2] / n, x[3] / n)).unwrap()
    }

    fn op_of(product: &str) -> GroupOperator {
        permutation_operator(&Permutation::parse_product(5, product).unwrap()).unwrap()
    }

    #[test]
    fn weyl_vectors_gram_and_matrices() {
        let w = weyl_vectors_s5();
        for i in 0..4 {
            for k in 0..4 {
                let expected = match (i as i32 - k as i32).abs() {
                    0 => 1.0,
                    1 => 0.5,
                    _ => 0.0,
                };
                assert!((w[i].a.dot(&w[k].a) - expected).abs() < 1e-15);
            }
        }
        let s3 = 3f64.sqrt();
        let v = |i: usize| w[i].v.matrix();
        let close = |a: [[Complex64; 2]; 2], b: [[Complex64; 2]; 2]| {
            (0..2).all(|r| (0..2).all(|k| (a[r][k] - b[r][k]).norm() < 1e-15))
        };
        assert!(close(
            v(0),
            [[c(0.0, -1.0), c(0.0, 0.0)], [c(0.0, 0.0), c(0.0, 1.0)]]
        ));
        assert!(close(
            v(1),
            [
                [c(0.0, -0.5), c(-s3 / 2.0, 0.0)],
                [c(s3 / 2.0, 0.0), c(0.0, 0.5)]
            ]
        ));
        let (r13, r23) = ((1.0f64 / 3.0).sqrt(), (2.0f64 / 3.0).sqrt());
        assert!(close(
            v(2),
            [[c(0.0, 0.0), c(-r13, -r23)], [c(r13, -r23), c(0.0, 0.0)]]
        ));
        let (r58, r38) = ((5.0f64 / 8.0).sqrt(), (3.0f64 / 8.0).sqrt());
        assert!(close(
            v(3),
            [[c(r58, 0.0), c(0.0, -r38)], [c(0.0, -r38), c(r58, 0.0)]]
        ));
    }

    #[test]
    fn reflections_are_involutions() {
        let base = reflection_operator(&WeylVector::new(Point4::new(1.0, 0.0, 0.0, 0.0)).unwrap());
        assert_eq!(base, GroupOperator::base_reflection());
        for w in weyl_vectors_s5() {
            let t = reflection_operator(&w);
            assert!(compose(&t, &t).approx_eq(&GroupOperator::identity(), 1e-15));
        }
        let x = Point4::new(0.5, 0.5, 0.5, 0.5);
        let u = su2_from_point(&x).unwrap();
        let image = act_on_point(&GroupOperator::base_reflection(), &u).to_point();
        assert!((image.x0 + 0.5).abs() < 1e-15);
        assert!((image.x1 - 0.5).abs() < 1e-15 && (image.x3 - 0.5).abs() < 1e-15);
    }

    #[test]
    fn reflection_is_the_euclidean_weyl_reflection() {
        // x -> x - 2<x,a>a
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for w in weyl_vectors_s5() {
            for _ in 0..10 {
                let u = random_su2(&mut rng);
                let x = u.to_point();
                let d = 2.0 * x.dot(&w.a);
                let expected = Point4::new(
                    x.x0 - d * w.a.x0,
                    x.x1 - d * w.a.x1,
                    x.x2 - d * w.a.x2,
                    x.x3 - d * w.a.x3,
                );
                let got = act_on_point(&reflection_operator(&w), &u).to_point();
                let diff = got
                    .as_array()
                    .iter()
                    .zip(expected.as_array())
                    .map(|(a, b)| (a - b).abs())
                    .fold(0.0, f64::max);
                assert!(diff < 1e-14);
            }
        }
    }

    #[test]
    fn composition_patterns() {
        let w = weyl_vectors_s5();
        let (a, b, cc, d) = (w[0].v, w[1].v, w[2].v, w[3].v);
        let ta = reflection_operator(&w[0]);
        let tb = reflection_operator(&w[1]);
        let tc = reflection_operator(&w[2]);
        let td = reflection_operator(&w[3]);
        let two = compose(&tb, &ta);
        assert!(two.approx_eq(
            &GroupOperator::rotation(b * a.inverse(), b.inverse() * a),
            1e-15
        ));
        let three = compose(&tc, &two);
        let expected3 = GroupOperator {
            g_l: cc * b.inverse() * a,
            g_r: cc.inverse() * b * a.inverse(),
            reflective: true,
        };
        assert!(three.approx_eq(&expected3, 1e-15));
        let four = compose(&td, &three);
        let expected4 = GroupOperator::rotation(
            d * cc.inverse() * b * a.inverse(),
            d.inverse() * cc * b.inverse() * a,
        );
        assert!(four.approx_eq(&expected4, 1e-15));
        let x = GroupOperator::rotation(a, d);
        assert_eq!(compose(&x, &GroupOperator::identity()), x);
    }

    #[test]
    fn table_4_3_matrices() {
        let s3 = 3f64.sqrt();
        let (s2, s5, s10) = (2f64.sqrt(), 5f64.sqrt(), 10f64.sqrt());
        let close = |a: &SU2Element, b: &SU2Element| a.distance(b) < 1e-12;

        let op = op_of("(1,2)(3,4)");
        let g = el([
            [c(0.0, 0.0), c(s2 / s3, -1.0 / s3)],
            [c(-s2 / s3, -1.0 / s3), c(0.0, 0.0)],
        ]);
        assert!(close(&op.g_l, &g) && close(&op.g_r, &g));

        let op = op_of("(1,2)(2,3)");
        let g = el([
            [c(0.5, 0.0), c(0.0, -s3 / 2.0)],
            [c(0.0, -s3 / 2.0), c(0.5, 0.0)],
        ]);
        assert!(close(&op.g_l, &g) && close(&op.g_r, &g));

        let op = op_of("(1,2)(2,3)(4,5)");
        let g = el([
            [c(-0.5, 0.0), c(0.0, -s3 / 2.0)],
            [c(0.0, -s3 / 2.0), c(-0.5, 0.0)],
        ]);
        assert!(close(&(op.g_r * op.g_l), &g));

        let op = op_of("(1,2)(2,3)(3,4)");
        let g = el([
            [c(0.0, -1.0 / s2), c(-s2 / (2.0 * s3), -1.0 / s3)],
            [c(s2 / (2.0 * s3), -1.0 / s3), c(0.0, 1.0 / s2)],
        ]);
        assert!(close(&(op.g_r * op.g_l), &g));

        let op = op_of("(1,2)(2,3)(3,4)(4,5)");
        let gl = el([
            [
                c((2.0 - 2.0 * s5) / 8.0, -(s2 + s10) / 8.0),
                c(
                    (3.0 * s2 - s10) / (8.0 * s3),
                    (-6.0 - 2.0 * s5) / (8.0 * s3),
                ),
            ],
            [
                c(
                    (-3.0 * s2 + s10) / (8.0 * s3),
                    (-6.0 - 2.0 * s5) / (8.0 * s3),
                ),
                c((2.0 - 2.0 * s5) / 8.0, (s2 + s10) / 8.0),
            ],
        ]);
        let gr = el([
            [
                c((2.0 + 2.0 * s5) / 8.0, (-s2 + s10) / 8.0),
                c(
                    (3.0 * s2 + s10) / (8.0 * s3),
                    (-6.0 + 2.0 * s5) / (8.0 * s3),
                ),
            ],
            [
                c(
                    (-3.0 * s2 - s10) / (8.0 * s3),
                    (-6.0 + 2.0 * s5) / (8.0 * s3),
                ),
                c((2.0 + 2.0 * s5) / 8.0, (s2 - s10) / 8.0),
            ],
        ]);
        let expected = GroupOperator::rotation(gl, gr);
        assert!(op.approx_eq(&expected, 1e-12));
    }

    #[test]
    fn representatives_have_their_classes() {
        let labels: Vec<String> = class_representatives()
            .iter()
            .map(|r| r.class.to_string())
            .collect();
        assert_eq!(
            labels,
            ["(1)^5", "(2)(1)^3", "(2)^2(1)", "(3)(1)^2", "(3)(2)", "(4)(1)", "(5)"]
        );
        for rep in class_representatives() {
            let via_bubble = permutation_operator(&rep.permutation).unwrap();
            assert!(
                via_bubble.approx_eq(&rep.operator, 1e-12),
                "{}",
                rep.product
            );
        }
    }

    #[test]
    fn table_4_7_characters() {
        let expected: [[f64; 6]; 7] = [
            [1.0, 4.0, 9.0, 16.0, 25.0, 36.0],
            [1.0, 2.0, 3.0, 4.0, 5.0, 6.0],
            [1.0, 0.0, 1.0, 0.0, 1.0, 0.0],
            [1.0, 1.0, 0.0, 1.0, 1.0, 0.0],
            [1.0, -1.0, 0.0, 1.0, -1.0, 0.0],
            [1.0, 0.0, -1.0, 0.0, 1.0, 0.0],
            [1.0, -1.0, -1.0, 1.0, 0.0, 1.0],
        ];
        for (row, exp) in class_character_table(5).iter().zip(expected) {
            for (got, e) in row.values.iter().zip(exp) {
                assert!((got - e).abs() < 1e-8, "{} {:?}", row.class, row.values);
            }
        }
        let rows = class_character_table(0);
        let angle = |k: usize| rows[k].angles;
        let near = |a: f64, b: f64| (a - b).abs() < 1e-12;
        match angle(6) {
            AngleData::Rotation {
                half_left,
                half_right,
            } => {
                // the listed matrices give g_l the larger angle; the character is symmetric
                let (lo, hi) = (half_left.min(half_right), half_left.max(half_right));
                assert!(near(lo, 2.0 * PI / 10.0) && near(hi, 6.0 * PI / 10.0));
            }
            other => panic!("{other:?}"),
        }
        assert!(
            matches!(angle(4), AngleData::Reflection { half_product } if near(half_product, 2.0 * PI / 3.0))
        );
        assert!(
            matches!(angle(5), AngleData::Reflection { half_product } if near(half_product, PI / 2.0))
        );
        assert!(
            matches!(angle(3), AngleData::Rotation { half_left, .. } if near(half_left, PI / 3.0))
        );
        assert!(
            matches!(angle(2), AngleData::Rotation { half_left, .. } if near(half_left, PI / 2.0))
        );
    }

    #[test]
    fn table_4_8_recursions() {
        let rows = class_character_table(70);
        for row in &rows {
            for (two_j, &v) in row.values.iter().enumerate() {
                let d = (two_j + 1) as f64;
                match row.class.to_string().as_str() {
                    "(1)^5" => assert!((v - d * d).abs() < 1e-8),
                    "(2)(1)^3" => assert!((v - d).abs() < 1e-8),
                    _ => {
                        let p = character_period(&row.class).unwrap() as usize;
                        if two_j + p < row.values.len() {
                            assert!((row.values[two_j + p] - v).abs() < 1e-8);
                        }
                        if two_j + 60 < row.values.len() {
                            assert!((row.values[two_j + 60] - v).abs() < 1e-8);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn reflective_character_does_not_depend_on_the_vector() {
        for w in weyl_vectors_s5() {
            for two_j in 0..8 {
                let chi = operator_character(two_j, &reflection_operator(&w));
                assert!((chi - (two_j + 1) as f64).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn operator_matrix_matches_function_action() {
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        let ops = [
            op_of("(1,2)"),
            op_of("(1,2)(2,3)(3,4)(4,5)"),
            op_of("(1,2)(2,3)(4,5)"),
        ];
        for two_j in 0..=3u32 {
            let n = ((two_j + 1) * (two_j + 1)) as usize;
            for op in &ops {
                let m = operator_matrix(two_j, op).unwrap();
                let coeffs: Vec<Complex64> = (0..n)
                    .map(|_| c(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)))
                    .collect();
                let image = &m * nalgebra::DVector::from_column_slice(&coeffs);
                for _ in 0..5 {
                    let u = random_su2(&mut rng);
                    let moved = act_on_point(op, &u);
                    let lhs: Complex64 = harmonic_values(two_j, &moved)
                        .unwrap()
                        .iter()
                        .zip(&coeffs)
                        .map(|(d, c)| d * c)
                        .sum();
                    let rhs: Complex64 = harmonic_values(two_j, &u)
                        .unwrap()
                        .iter()
                        .zip(image.iter())
                        .map(|(d, c)| d * c)
                        .sum();
                    assert!((lhs - rhs).norm() < 1e-10);
                }
                let tr = m.trace();
                assert!((tr.re - operator_character(two_j, op)).abs() < 1e-9 && tr.im.abs() < 1e-9);
            }
        }
        let id = operator_matrix(2, &GroupOperator::identity()).unwrap();
        assert!(max_abs_c(&(id - CMatrix::identity(9, 9))) < 1e-14);
        assert!(operator_matrix(MAX_OPERATOR_TWO_J + 1, &GroupOperator::identity()).is_err());
    }

    #[test]
    fn matrix_traces_reproduce_class_characters() {
        for rep in class_representatives() {
            for two_j in 0..=5 {
                let tr = operator_matrix(two_j, &rep.operator).unwrap().trace();
                assert!((tr.re - operator_character(two_j, &rep.operator)).abs() < 1e-9);
            }
        }
    }

    #[test]
    fn permutation_operator_is_a_homomorphism() {
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        let all = Permutation::all(5);
        for _ in 0..20 {
            let p = all.choose(&mut rng).unwrap();
            let q = all.choose(&mut rng).unwrap();
            let op_pq = permutation_operator(&p.then(q)).unwrap();
            let op_p = permutation_operator(p).unwrap();
            let op_q = permutation_operator(q).unwrap();
            assert!(op_pq.approx_eq(&compose(&op_p, &op_q), 1e-12));
            for two_j in 0..=4 {
                let lhs = operator_matrix(two_j, &op_pq).unwrap();
                let rhs =
                    operator_matrix(two_j, &op_p).unwrap() * operator_matrix(two_j, &op_q).unwrap();
                assert!(max_abs_c(&(lhs - rhs)) < 1e-9);
            }
        }
    }

    #[test]
    fn coxeter_element_has_order_five_and_no_fixed_points() {
        let g = permutation_operator(&Permutation::coxeter(5)).unwrap();
        assert!(!g.reflective);
        let mut power = GroupOperator::identity();
        for _ in 0..5 {
            power = compose(&power, &g);
        }
        assert!(power.approx_eq(&GroupOperator::identity(), 1e-12));
        let mut rng = ChaCha8Rng::seed_from_u64(31);
        let mut min_shift = f64::INFINITY;
        let mut gk = g;
        for _ in 1..5 {
            for _ in 0..1000 {
                let u = random_su2(&mut rng);
                min_shift = min_shift.min(act_on_point(&gk, &u).geodesic(&u));
            }
            gk = compose(&gk, &g);
        }
        assert!(min_shift > 0.5, "{min_shift}");
    }
}
