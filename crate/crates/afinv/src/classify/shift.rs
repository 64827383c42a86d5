//! Exact check of a lag-k shift equivalence (A, B): X ~ Y.

use crate::decomp::Companion;
use crate::exactalg::{big, IntMatrix, RatMatrix};
use serde::Serialize;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ShiftCheck {
    /// Each identity with whether it holds exactly.
    pub identities: Vec<(String, bool)>,
    pub integral: bool,
    pub nonnegative: bool,
    /// All identities hold and A, B are integral.
    pub verified: bool,
}

/// Checks AX = YA, XB = BY, BA = Xᵏ and AB = Yᵏ. Shapes that do not fit
/// make the affected identity false instead of panicking.
pub fn verify_shift_equivalence(a: &RatMatrix, b: &RatMatrix, x: &RatMatrix, y: &RatMatrix, k: u32) -> ShiftCheck {
    let n = x.nrows();
    let square = x.is_square() && y.is_square() && y.nrows() == n;
    let shaped = square && (a.nrows(), a.ncols()) == (n, n) && (b.nrows(), b.ncols()) == (n, n);
    let id = |name: &str, f: &dyn Fn() -> bool| (name.to_string(), shaped && f());
    let identities = vec![
        id("AX = YA", &|| a * x == y * a),
        id("XB = BY", &|| x * b == b * y),
        id(&format!("BA = X^{k}"), &|| b * a == x.pow(k)),
        id(&format!("AB = Y^{k}"), &|| a * b == y.pow(k)),
    ];
    let integral = a.is_integral() && b.is_integral();
    let nonnegative = [a, b].iter().all(|m| m.entries().iter().all(|e| *e >= num_traits::Zero::zero()));
    let verified = integral && identities.iter().all(|(_, ok)| *ok);
    ShiftCheck { identities, integral, nonnegative, verified }
}

fn companion(c: &[i64]) -> RatMatrix {
    Companion::new(c.iter().map(|&x| big(x)).collect()).matrix().to_rat()
}

/// T_d with X = T_d·K²·T_d⁻¹ for the companion K of (2d, 4d², 16d³).
fn t(d: i64) -> RatMatrix {
    IntMatrix::from_i64(&[&[1, 0, 0], &[-4 * d * d, 2 * d, 1], &[0, 16 * d * d * d, -4 * d * d]]).to_rat()
}

/// A lag-k shift equivalence (A, B): X ~ Y.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ShiftExample {
    #[serde(rename = "A")]
    pub a: RatMatrix,
    #[serde(rename = "B")]
    pub b: RatMatrix,
    #[serde(rename = "X")]
    pub x: RatMatrix,
    #[serde(rename = "Y")]
    pub y: RatMatrix,
    pub k: u32,
}

/// X = companion(108, 3888, 186624) and Y = K², K = companion(6, 36, 432),
/// related by A = K⁴T₃⁻¹, B = T₃K⁴ at lag 4.
pub fn conjugated_companion_example() -> ShiftExample {
    let x = companion(&[108, 3888, 186624]);
    let k3 = companion(&[6, 36, 432]);
    let y = k3.pow(2);
    let t3 = t(3);
    let a = &k3.pow(4) * &t3.inverse().expect("T₃ is invertible");
    let b = &t3 * &k3.pow(4);
    ShiftExample { a, b, x, y, k: 4 }
}
