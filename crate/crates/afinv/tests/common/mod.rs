//! Structural identities checked on a corpus of specimens and on random
//! members of each dimension group. Shared by the property tests and the
//! acceptance harness; each check returns the first violation it finds.
#![allow(dead_code)]

use afinv::decomp::{canonical_digits, quotient_relations, reconstruct, torsion_tensor, triangular_form};
use afinv::enumerate::{enumerate_family, FamilySpec};
use afinv::exactalg::numfield::FieldHandle;
use afinv::exactalg::{Int, IntMatrix, Rat, RatMatrix};
use afinv::spectral::perron;
use afinv::specimen::Specimen;
use num_traits::{One, Signed, ToPrimitive, Zero};
use proptest::strategy::{Strategy, ValueTree};
use proptest::test_runner::{Config, RngAlgorithm, TestRng, TestRunner};

pub type Check = Result<(), String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

/// λ = 2 for N ≤ 4, λ = 3 for N ≤ 3, plus a few irrational weight lists.
pub fn corpus() -> Vec<Specimen> {
    let mut out = Vec::new();
    for (lambda, max_n) in [(2, 4), (3, 3)] {
        for n in 1..=max_n {
            out.extend(enumerate_family(&FamilySpec::new(lambda, n)).unwrap().into_iter().map(|e| e.specimen));
        }
    }
    for l in [&[1, 2][..], &[2, 3], &[1, 2, 4], &[4, 4, 5, 8], &[1, 1, 3], &[2, 2, 3]] {
        out.push(Specimen::from_l(l).unwrap());
    }
    out
}

/// Runs `check` on every specimen and stops at the first failure.
pub fn on_all(specs: &[Specimen], check: impl Fn(&Specimen) -> Check) -> Check {
    specs.iter().try_for_each(check)
}

/// αJ = λα, Jv = λv and ⟨α|v⟩ = τ(v) in ℚ(a).
pub fn eigen_identities(s: &Specimen) -> Check {
    let pd = perron(s).map_err(|e| format!("{s}: {e}"))?;
    let j = s.matrix();
    let lambda = pd.lambda_elem();
    let n = s.n();
    let entry = |i, k| pd.field.rat(Rat::from(j.get(i, k).clone()));
    for col in 0..n {
        let mut acc = pd.field.rat(Rat::zero());
        for i in 0..n {
            acc = &acc + &(&pd.alpha[i] * &entry(i, col));
        }
        ensure!(acc == &lambda * &pd.alpha[col], "{s}: αJ ≠ λα in column {col}");
    }
    for row in 0..n {
        let mut acc = pd.field.rat(Rat::zero());
        for k in 0..n {
            acc = &acc + &(&entry(row, k) * &pd.v[k]);
        }
        ensure!(acc == &lambda * &pd.v[row], "{s}: Jv ≠ λv in row {row}");
    }
    ensure!(pd.alpha[0].is_one() && pd.v[0].is_one(), "{s}: eigenvectors not normalized");
    let mut tau = pd.field.rat(Rat::zero());
    for (x, y) in pd.alpha.iter().zip(&pd.v) {
        tau = &tau + &(x * y);
    }
    ensure!(tau == pd.tau_v, "{s}: ⟨α|v⟩ ≠ τ(v)");
    Ok(())
}

/// p₀·p_a = p_L with p_a(0) = 1.
pub fn factorization(s: &Specimen) -> Check {
    let t = triangular_form(s).map_err(|e| format!("{s}: {e}"))?;
    ensure!(&t.p0 * &t.p_a == s.p_l(), "{s}: p₀·p_a ≠ p_L");
    ensure!(t.p_a.coeff(0).is_one(), "{s}: p_a(0) ≠ 1");
    ensure!(t.d + t.m == s.n(), "{s}: D + M ≠ N");
    Ok(())
}

fn sign(k: usize) -> Int {
    if k.is_multiple_of(2) {
        Int::one()
    } else {
        -Int::one()
    }
}

/// det J = (−1)^{D−1}·R_D·det J₀ = (−1)^{N−1}·m_N, det J₀ = (−1)^{M−1}·Q_M,
/// and the block form is J in the new basis.
pub fn determinant_chain(s: &Specimen) -> Check {
    let t = triangular_form(s).map_err(|e| format!("{s}: {e}"))?;
    let det_j = s.matrix().det();
    ensure!(det_j == sign(s.n() - 1) * s.m_n(), "{s}: det J = {det_j}");
    let r_d = t.r.last().cloned().ok_or_else(|| format!("{s}: empty R"))?;
    ensure!(det_j == sign(t.d - 1) * &r_d * t.det_j0(), "{s}: det J ≠ ±R_D·det J₀");
    if t.m > 0 {
        let q_m = t.q_top();
        ensure!(!q_m.is_zero(), "{s}: Q_M = 0");
        ensure!(t.det_j0() == sign(t.m - 1) * t.p_a.coeff(0) * q_m, "{s}: det J₀ ≠ ±p_a(0)·Q_M");
    }
    let b = t.basis.to_rat();
    ensure!(&s.matrix().to_rat() * &b == &b * &t.blocks.to_rat(), "{s}: J·B ≠ B·blocks");
    Ok(())
}

fn j_inverse_power(s: &Specimen, k: usize) -> RatMatrix {
    let inv = s.inverse_matrix();
    let mut acc = RatMatrix::identity(s.n());
    for _ in 0..k {
        acc = &acc * &inv;
    }
    acc
}

pub fn deterministic_runner() -> TestRunner {
    TestRunner::new_with_rng(Config::default(), TestRng::deterministic_rng(RngAlgorithm::ChaCha))
}

/// reconstruct(canonical_digits(g)) = g for `count` random g = J⁻ᵏz, with
/// digits in [0, m_N) and level at most k.
pub fn digit_round_trip(s: &Specimen, runner: &mut TestRunner, count: usize) -> Check {
    let n = s.n();
    let strategy = (proptest::collection::vec(-50i64..=50, n), 0usize..=5);
    for _ in 0..count {
        let (z, k) = strategy.new_tree(runner).map_err(|e| e.to_string())?.current();
        let z: Vec<Rat> = z.into_iter().map(|x| Rat::from(Int::from(x))).collect();
        let g = j_inverse_power(s, k).mul_vec(&z);
        let d = canonical_digits(s, &g).map_err(|e| format!("{s}: {e}"))?;
        ensure!(reconstruct(s, &d) == g, "{s}: round trip fails for {g:?}");
        ensure!(d.i.len() <= k, "{s}: level {} > {k}", d.i.len());
        ensure!(d.i.iter().all(|i| !i.is_negative() && *i < s.m_n()), "{s}: digit out of range in {:?}", d.i);
        ensure!(d.l.len() == n, "{s}: integer part has wrong length");
    }
    Ok(())
}

fn g(s: &Specimen, j: i64) -> Vec<Rat> {
    let n = s.n();
    if j <= 0 {
        let mut e = vec![Rat::zero(); n];
        e[(n as i64 - 1 + j) as usize] = Rat::one();
        return e;
    }
    let mut en = vec![Rat::zero(); n];
    en[n - 1] = Rat::one();
    j_inverse_power(s, j as usize).mul_vec(&en)
}

/// m_N·g_{N+i} = g_i − m₁g_{i+1} − ⋯ − m_{N−1}g_{N+i−1} exactly, with
/// g_j = J⁻ʲe_N, for i ≤ 3N; the library's table agrees.
pub fn quotient_congruences(s: &Specimen) -> Check {
    let n = s.n();
    let depth = 3 * n;
    let table = quotient_relations(s, depth);
    ensure!(table.all_verified(), "{s}: library relation unverified");
    ensure!(table.relations.len() == depth, "{s}: {} relations", table.relations.len());
    let mn = Rat::from(s.m_n());
    for i in 1..=depth as i64 {
        let lhs: Vec<Rat> = g(s, n as i64 + i).iter().map(|x| x * &mn).collect();
        let mut rhs = g(s, i);
        for k in 1..n {
            let mk = Rat::from(s.mj(k));
            for (r, x) in rhs.iter_mut().zip(g(s, i + k as i64)) {
                *r -= &mk * x;
            }
        }
        ensure!(lhs == rhs, "{s}: relation {i} fails");
    }
    Ok(())
}

/// Rank over ℤ_p by Gaussian elimination on u64 residues.
fn rank_mod_p(rows: &[Vec<u64>], p: u64) -> usize {
    let mut a = rows.to_vec();
    let cols = a.first().map_or(0, Vec::len);
    let inv = |x: u64| (1..p).find(|y| x * y % p == 1).unwrap();
    let mut rank = 0;
    for c in 0..cols {
        let Some(piv) = (rank..a.len()).find(|&r| a[r][c] != 0) else { continue };
        a.swap(rank, piv);
        let f = inv(a[rank][c]);
        for x in a[rank].iter_mut() {
            *x = *x * f % p;
        }
        for r in 0..a.len() {
            if r != rank && a[r][c] != 0 {
                let k = a[r][c];
                for cc in 0..cols {
                    a[r][cc] = (a[r][cc] + p * p - k * a[rank][cc]) % p;
                }
            }
        }
        rank += 1;
    }
    rank
}

fn mat_mul_mod(a: &[Vec<u64>], b: &[Vec<u64>], p: u64) -> Vec<Vec<u64>> {
    let n = a.len();
    (0..n).map(|i| (0..n).map(|j| (0..n).map(|k| a[i][k] * b[k][j]).sum::<u64>() % p).collect()).collect()
}

/// dim lim(ℤ_pᴹ, J₀) = rank of J₀ᴹ mod p.
pub fn stable_rank_oracle(j0: &IntMatrix, p: u64) -> usize {
    let m = j0.nrows();
    if m == 0 {
        return 0;
    }
    let pi = Int::from(p);
    let base: Vec<Vec<u64>> = (0..m)
        .map(|i| (0..m).map(|j| num_integer::Integer::mod_floor(j0.get(i, j), &pi).to_u64().unwrap()).collect())
        .collect();
    let mut acc: Vec<Vec<u64>> = (0..m).map(|i| (0..m).map(|j| u64::from(i == j)).collect()).collect();
    for _ in 0..m {
        acc = mat_mul_mod(&acc, &base, p);
    }
    rank_mod_p(&acc, p)
}

/// dim G₀ ⊗ ℤ_p from the library agrees with row reduction for p ≤ 7.
pub fn torsion_vs_oracle(s: &Specimen) -> Check {
    let t = triangular_form(s).map_err(|e| format!("{s}: {e}"))?;
    for p in [2u64, 3, 5, 7] {
        let dim = torsion_tensor(s, p).map_err(|e| format!("{s}: {e}"))?.dimension;
        let oracle = stable_rank_oracle(&t.j0, p);
        ensure!(dim == Some(oracle), "{s}: dim mod {p} is {dim:?}, row reduction gives {oracle}");
    }
    Ok(())
}

/// τ(v) agrees with a floating-point evaluation of the Perron pairing.
pub fn tau_matches_floats(s: &Specimen) -> Check {
    let pd = perron(s).map_err(|e| format!("{s}: {e}"))?;
    let lam = pd.lambda.to_f64();
    let a = 1.0 / lam;
    let mut v = vec![1.0f64];
    for i in 1..s.n() {
        // v_{i+1} = λv_i − m_i
        v.push(lam * v[i - 1] - s.mj(i).to_f64().unwrap());
    }
    let tau: f64 = v.iter().enumerate().map(|(i, x)| x * a.powi(i as i32)).sum();
    let exact = pd.tau_v.to_f64();
    ensure!((exact - tau).abs() < 1e-6 * tau.abs().max(1.0), "{s}: τ(v) = {exact}, floats give {tau}");
    Ok(())
}
