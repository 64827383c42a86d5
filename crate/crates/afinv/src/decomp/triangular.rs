//! Block-triangular form of a companion matrix from a factorization of its
//! first-column polynomial P = p₀·p_a.
//!
//! In the basis b_j = x^{j−1}p_a (j ≤ M), b_{M+j} = x^{j−1} (j ≤ D) the
//! matrix acts as f ↦ f(0)·f_m + (f − f(0))/x with f_m = (P+1)/x. Since
//! f_m = q_m·p_a + r_m where q_m = (p₀+1)/x and r_m = (1−p_a)/x, this gives
//!
//! ```text
//!     [ J₀  C  ]      J₀ = companion(Q), Q_k = [xᵏ]p₀
//!     [ 0   J_R]      J_R = companion(R), R_k = −[xᵏ]p_a
//! ```
//!
//! where C is zero except for its first column, which is Q.

use super::companion::Companion;
use super::DecompError;
use crate::exactalg::{factor_over_z, strser, isolate_positive_root, Int, IntMatrix, IntPoly};
use crate::specimen::Specimen;
use num_traits::{One, Zero};
use serde::Serialize;

#[derive(Debug, Clone, Serialize)]
pub struct TriangularForm {
    pub n: usize,
    /// Degree of p_a.
    pub d: usize,
    /// Rank of the kernel block, N − D.
    pub m: usize,
    pub p_a: IntPoly,
    pub p0: IntPoly,
    pub f_m: IntPoly,
    pub q_m: IntPoly,
    pub r_m: IntPoly,
    #[serde(serialize_with = "strser::ints")]
    pub q: Vec<Int>,
    #[serde(serialize_with = "strser::ints")]
    pub r: Vec<Int>,
    pub j0: IntMatrix,
    pub jr: IntMatrix,
    pub coupling: IntMatrix,
    /// Columns are the basis b_j in standard coordinates.
    pub basis: IntMatrix,
    pub blocks: IntMatrix,
}

impl TriangularForm {
    /// Integer basis of ker τ: the first M basis columns.
    pub fn kernel_basis(&self) -> Vec<Vec<Int>> {
        (0..self.m).map(|j| self.basis.col(j)).collect()
    }

    pub fn det_j0(&self) -> Int {
        if self.m == 0 {
            Int::one()
        } else {
            self.j0.det()
        }
    }

    /// Q_M, the top coefficient of p₀ (1 when M = 0).
    pub fn q_top(&self) -> Int {
        self.q.last().cloned().unwrap_or_else(Int::one)
    }
}

fn companion_matrix(c: &[Int]) -> IntMatrix {
    if c.is_empty() {
        IntMatrix::zeros(0, 0)
    } else {
        Companion::new(c.to_vec()).matrix()
    }
}

/// p_a for a specimen: the irreducible factor of p_L vanishing at a,
/// normalized by p_a(0) = 1.
pub fn p_a_of(s: &Specimen) -> Result<IntPoly, DecompError> {
    let a = isolate_positive_root(&s.p_l())?;
    Ok(normalize_unit_constant(a.minpoly()))
}

fn normalize_unit_constant(f: &IntPoly) -> IntPoly {
    let c0 = f.coeff(0);
    assert!(c0 == Int::one() || c0 == -Int::one(), "factor constant term must be a unit");
    if c0.is_one() {
        f.clone()
    } else {
        -f
    }
}

pub fn triangular_form(s: &Specimen) -> Result<TriangularForm, DecompError> {
    let pa = p_a_of(s)?;
    triangular_for_factor(&Companion::of(s), &pa)
}

/// Triangular form of `c` for a factor `pa` of its first-column polynomial.
pub fn triangular_for_factor(c: &Companion, pa: &IntPoly) -> Result<TriangularForm, DecompError> {
    let n = c.n();
    let pl = c.poly();
    let pa = normalize_unit_constant(pa);
    let d = pa.deg().unwrap_or(0);
    let m = n - d;
    let p0 = pl.exact_div(&pa).ok_or(DecompError::NotAFactor)?;
    let x = IntPoly::x();
    let f_m = (&pl + &IntPoly::one()).exact_div(&x).expect("P(0) = −1");
    let q_m = (&p0 + &IntPoly::one()).exact_div(&x).expect("p₀(0) = −1");
    let r_m = (&IntPoly::one() - &pa).exact_div(&x).expect("p_a(0) = 1");
    let (q_div, r_div) = f_m.divmod(&pa)?;
    debug_assert_eq!((&q_div, &r_div), (&q_m, &r_m));
    if q_div != q_m || r_div != r_m {
        return Err(DecompError::Inconsistent("f_m ≠ q_m·p_a + r_m".into()));
    }
    let q: Vec<Int> = (1..=m).map(|k| p0.coeff(k)).collect();
    let r: Vec<Int> = (1..=d).map(|k| -pa.coeff(k)).collect();

    let j0 = companion_matrix(&q);
    let jr = companion_matrix(&r);
    let mut coupling = IntMatrix::zeros(m, d);
    for (k, qk) in q.iter().enumerate() {
        coupling.set(k, 0, qk.clone());
    }
    let mut blocks = IntMatrix::zeros(n, n);
    for i in 0..m {
        for j in 0..m {
            blocks.set(i, j, j0.get(i, j).clone());
        }
        for j in 0..d {
            blocks.set(i, m + j, coupling.get(i, j).clone());
        }
    }
    for i in 0..d {
        for j in 0..d {
            blocks.set(m + i, m + j, jr.get(i, j).clone());
        }
    }
    let mut basis = IntMatrix::zeros(n, n);
    for j in 0..m {
        let b = pa.shift(j);
        for i in 0..n {
            basis.set(i, j, b.coeff(i));
        }
    }
    for j in 0..d {
        basis.set(j, m + j, Int::one());
    }

    let t = TriangularForm {
        n,
        d,
        m,
        p_a: pa,
        p0,
        f_m,
        q_m,
        r_m,
        q,
        r,
        j0,
        jr,
        coupling,
        basis,
        blocks,
    };
    verify(c, &t)?;
    Ok(t)
}

fn verify(c: &Companion, t: &TriangularForm) -> Result<(), DecompError> {
    let fail = |what: &str| Err(DecompError::Inconsistent(what.to_string()));
    if &t.p0 * &t.p_a != c.poly() {
        return fail("p₀·p_a ≠ P");
    }
    if &c.matrix() * &t.basis != &t.basis * &t.blocks {
        return fail("J·B ≠ B·blocks");
    }
    let det_jr = if t.d == 0 { Int::one() } else { t.jr.det() };
    if &det_jr * t.det_j0() != c.det() {
        return fail("determinant chain");
    }
    let sign = |k: usize| if k % 2 == 1 { Int::one() } else { -Int::one() };
    if t.d > 0 && det_jr != sign(t.d) * t.r.last().unwrap() {
        return fail("det J_R");
    }
    if t.m > 0 && (t.det_j0() != sign(t.m) * t.q_top() || t.q_top().is_zero()) {
        return fail("det J₀");
    }
    Ok(())
}

pub fn kernel_rank(s: &Specimen) -> Result<usize, DecompError> {
    let pa = p_a_of(s)?;
    Ok(s.n() - pa.deg().unwrap_or(0))
}

#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct SeriesStep {
    /// Size of the matrix at this stage.
    pub rank: usize,
    pub det: String,
    /// Factor split off at this stage (the whole polynomial at the last stage).
    pub factor: String,
    pub factor_degree: usize,
}

/// Repeated triangularization of the kernel block until its first-column
/// polynomial is irreducible or the block is empty.
pub fn decomposition_series(s: &Specimen) -> Result<Vec<SeriesStep>, DecompError> {
    let mut steps = Vec::new();
    let t = triangular_form(s)?;
    steps.push(SeriesStep {
        rank: t.n,
        det: s.matrix().det().to_string(),
        factor: t.p_a.to_string(),
        factor_degree: t.d,
    });
    let mut q = t.q.clone();
    while !q.is_empty() {
        let comp = Companion::new(q.clone());
        let poly = comp.poly();
        let fz = factor_over_z(&poly)?;
        let det = comp.det().to_string();
        if fz.is_irreducible() {
            steps.push(SeriesStep {
                rank: comp.n(),
                det,
                factor: normalize_unit_constant(&poly.primitive_part()).to_string(),
                factor_degree: comp.n(),
            });
            break;
        }
        let f = &fz.factors[0].0;
        let tt = triangular_for_factor(&comp, f)?;
        steps.push(SeriesStep {
            rank: comp.n(),
            det,
            factor: tt.p_a.to_string(),
            factor_degree: tt.d,
        });
        q = tt.q.clone();
    }
    Ok(steps)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn sp(m: &[u64]) -> Specimen {
        Specimen::from_m(m.to_vec()).unwrap()
    }

    #[test]
    fn exa1_blocks() {
        let t = triangular_form(&sp(&[1, 0, 4])).unwrap();
        assert_eq!(t.d, 1);
        assert_eq!(t.p_a, IntPoly::from_i64(&[1, -2]));
        assert_eq!(t.p0, IntPoly::from_i64(&[-1, -1, -2]));
        assert_eq!(t.j0, IntMatrix::from_i64(&[&[-1, 1], &[-2, 0]]));
        assert_eq!(t.r, vec![Int::from(2)]);
        assert_eq!(
            t.kernel_basis(),
            vec![
                vec![Int::from(1), Int::from(-2), Int::from(0)],
                vec![Int::from(0), Int::from(1), Int::from(-2)]
            ]
        );
    }

    #[test]
    fn irreducible_and_split_cases() {
        let t = triangular_form(&sp(&[0, 1, 1])).unwrap();
        assert_eq!((t.d, t.m), (3, 0));
        let t = triangular_form(&sp(&[1, 0, 0, 0, 1])).unwrap();
        assert_eq!((t.d, t.m), (3, 2));
        assert_eq!(kernel_rank(&sp(&[0, 3, 2])).unwrap(), 2);
        assert_eq!(kernel_rank(&sp(&[1, 2])).unwrap(), 1);
    }

    #[test]
    fn series_of_exa1_stops_at_irreducible_kernel() {
        let steps = decomposition_series(&sp(&[1, 0, 4])).unwrap();
        assert_eq!(steps.len(), 2);
        assert_eq!(steps[1].rank, 2);
        assert_eq!(steps[1].factor_degree, 2);
    }

    #[test]
    fn series_splits_reducible_kernel() {
        // kernel polynomial −(1+x)² splits twice
        let steps = decomposition_series(&sp(&[0, 3, 2])).unwrap();
        let ranks: Vec<usize> = steps.iter().map(|x| x.rank).collect();
        assert_eq!(ranks, vec![3, 2, 1]);
        assert_eq!(steps[1].factor, "x + 1");
        assert_eq!(steps[1].det, "1");
    }

    fn arb_specimen() -> impl Strategy<Value = Specimen> {
        (1usize..6)
            .prop_flat_map(|n| {
                (prop::collection::vec(0u64..4, n - 1), 1u64..6).prop_map(|(mut v, last)| {
                    v.push(last);
                    v
                })
            })
            .prop_filter_map("primitive", |m| Specimen::from_m(m).ok())
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]
        #[test]
        fn invariants_hold(s in arb_specimen()) {
            let t = triangular_form(&s).unwrap();
            prop_assert_eq!(&t.p0 * &t.p_a, s.p_l());
            prop_assert_eq!(&(&t.q_m * &t.p_a) + &t.r_m, t.f_m.clone());
            prop_assert!(t.r_m.degree() < t.p_a.degree());
            let det_jr = t.jr.det();
            prop_assert_eq!(&det_jr * &t.det_j0(), s.matrix().det());
            prop_assert_eq!(t.p_a.coeff(0), Int::one());
            prop_assert_eq!(t.p0.coeff(0), -Int::one());
            let series = decomposition_series(&s).unwrap();
            prop_assert_eq!(series[0].rank, s.n());
            for w in series.windows(2) {
                prop_assert_eq!(w[1].rank, w[0].rank - w[0].factor_degree);
            }
            prop_assert_eq!(series.iter().map(|x| x.factor_degree).sum::<usize>(), s.n());
        }
    }
}
