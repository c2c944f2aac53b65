//! Benchmark fixtures shared by the criterion targets.

use simplexharm::su2wigner::su2_from_point;
use simplexharm::{Point4, SU2Element};

/// A fixed generic point of `SU(2)` away from every symmetry axis.
pub fn generic_element() -> SU2Element {
    let x = [0.3, -0.5, 0.7, 0.2];
    let n = x.iter().map(|v| v * v).sum::<f64>().sqrt();
    su2_from_point(&Point4::new(x[0] / n, x[1] / n, x[2] / n, x[3] / n)).expect("unit point")
}
