//! Factorization in ℤ[x] for small degrees.
//!
//! Rational roots are extracted by the divisor test. The remaining squarefree
//! cofactor is split by grouping numerically computed complex roots: each
//! subset whose scaled product rounds to an integer polynomial is a candidate,
//! and only exact division accepts it. Subsets are tried by increasing size,
//! so an accepted candidate is irreducible.

use super::int::{divisors, Int, Rat};
use super::poly::{IntPoly, RatPoly};
use super::{ExactError, ExactResult};
use num_complex::Complex64;
use num_integer::Integer;
use num_traits::{FromPrimitive, One, Signed, ToPrimitive, Zero};

pub const DEFAULT_DEGREE_BOUND: usize = 16;

/// Coefficient magnitude (log₂) past which f64 rounding is not trusted.
const PRECISION_LIMIT_BITS: f64 = 40.0;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factorization {
    /// Signed content: the input equals content · Π factorᵉ.
    pub content: Int,
    /// Irreducible, primitive, positive leading coefficient; sorted.
    pub factors: Vec<(IntPoly, usize)>,
}

impl Factorization {
    pub fn expand(&self) -> IntPoly {
        let mut acc = IntPoly::constant(self.content.clone());
        for (f, e) in &self.factors {
            acc = &acc * &f.pow(*e as u32);
        }
        acc
    }

    pub fn is_irreducible(&self) -> bool {
        self.factors.len() == 1 && self.factors[0].1 == 1
    }
}

pub fn factor_over_z(f: &IntPoly) -> ExactResult<Factorization> {
    factor_with_bound(f, DEFAULT_DEGREE_BOUND)
}

pub fn factor_with_bound(f: &IntPoly, bound: usize) -> ExactResult<Factorization> {
    let deg = f.deg().ok_or(ExactError::ZeroPolynomial)?;
    if deg > bound {
        return Err(ExactError::DegreeBoundExceeded { degree: deg, bound });
    }
    let mut content = f.content();
    if f.lc().is_negative() {
        content = -content;
    }
    let prim = f.primitive_part();
    let mut factors: Vec<(IntPoly, usize)> = Vec::new();
    for (part, mult) in squarefree_parts(&prim) {
        for g in split_squarefree(&part)? {
            factors.push((g, mult));
        }
    }
    factors.sort_by(|a, b| canonical_key(&a.0).cmp(&canonical_key(&b.0)).then(a.1.cmp(&b.1)));
    let out = Factorization { content, factors };
    assert_eq!(&out.expand(), f, "factorization failed its round-trip check");
    Ok(out)
}

fn canonical_key(p: &IntPoly) -> (usize, Vec<Int>) {
    (p.deg().unwrap_or(0), p.coeffs().iter().rev().cloned().collect())
}

/// Yun's algorithm over ℚ; parts returned primitive with multiplicities.
fn squarefree_parts(f: &IntPoly) -> Vec<(IntPoly, usize)> {
    let fr = f.to_rat();
    if f.deg().unwrap_or(0) == 0 {
        return Vec::new();
    }
    let df = fr.derivative();
    let a0 = fr.gcd(&df);
    let div = |p: &RatPoly, q: &RatPoly| p.divmod(q).expect("nonzero").0;
    let mut b = div(&fr, &a0);
    let c = div(&df, &a0);
    let mut d = &c - &b.derivative();
    let mut out = Vec::new();
    let mut i = 1;
    while b.deg().unwrap_or(0) > 0 {
        let a = b.gcd(&d);
        b = div(&b, &a);
        let c = div(&d, &a);
        d = &c - &b.derivative();
        if a.deg().unwrap_or(0) > 0 {
            out.push((a.clear_denominators().0.primitive_part(), i));
        }
        i += 1;
    }
    out
}

fn split_squarefree(f: &IntPoly) -> ExactResult<Vec<IntPoly>> {
    let mut out = Vec::new();
    let mut s = f.clone();
    if s.coeff(0).is_zero() {
        out.push(IntPoly::x());
        s = s.exact_div(&IntPoly::x()).expect("x divides");
    }
    let mut rational_done = false;
    if let (Some(ps), Some(qs)) = (divisors(&s.coeff(0)), divisors(&s.lc())) {
        rational_done = true;
        'outer: for q in &qs {
            for p in &ps {
                if !p.gcd(q).is_one() {
                    continue;
                }
                for sg in [1i64, -1] {
                    if s.deg().unwrap_or(0) == 0 {
                        break 'outer;
                    }
                    let num = p * Int::from(sg);
                    let r = Rat::new(num.clone(), q.clone());
                    if s.eval_rat(&r).is_zero() {
                        let lin = IntPoly::new(vec![-num, q.clone()]);
                        s = s.exact_div(&lin).expect("root divides");
                        out.push(lin);
                    }
                }
            }
        }
    }
    let d = s.deg().unwrap_or(0);
    if d == 0 {
        return Ok(out);
    }
    if rational_done && d <= 3 {
        out.push(s);
        return Ok(out);
    }
    out.extend(split_numeric(&s, if rational_done { 2 } else { 1 })?);
    Ok(out)
}

fn split_numeric(f: &IntPoly, min_size: usize) -> ExactResult<Vec<IntPoly>> {
    let mut out = Vec::new();
    let mut s = f.clone();
    let mut roots = complex_roots(&s)?;
    let lc = s.lc().to_f64().unwrap_or(f64::INFINITY);
    let mahler: f64 = roots.iter().map(|z| z.norm().max(1.0).log2()).sum::<f64>()
        + lc.abs().log2()
        + roots.len() as f64;
    if !mahler.is_finite() || mahler > PRECISION_LIMIT_BITS {
        return Err(ExactError::PrecisionInsufficient);
    }
    let mut k = min_size;
    while 2 * k <= roots.len() {
        let lcf = s.lc().to_f64().unwrap();
        let mut found = None;
        for idx in Combinations::new(roots.len(), k) {
            let sub: Vec<Complex64> = idx.iter().map(|&i| roots[i]).collect();
            if let Some(g) = candidate(&sub, lcf) {
                if let Some(q) = s.exact_div(&g) {
                    found = Some((idx, g, q));
                    break;
                }
            }
        }
        match found {
            Some((idx, g, q)) => {
                out.push(g);
                s = q;
                roots = roots
                    .into_iter()
                    .enumerate()
                    .filter(|(i, _)| !idx.contains(i))
                    .map(|(_, z)| z)
                    .collect();
            }
            None => k += 1,
        }
    }
    out.push(s);
    Ok(out)
}

fn candidate(roots: &[Complex64], lc: f64) -> Option<IntPoly> {
    let mut c = vec![Complex64::new(1.0, 0.0)];
    for &r in roots {
        let mut next = vec![Complex64::new(0.0, 0.0); c.len() + 1];
        for (i, &a) in c.iter().enumerate() {
            next[i + 1] += a;
            next[i] -= a * r;
        }
        c = next;
    }
    let mut ints = Vec::with_capacity(c.len());
    for z in c {
        let v = z * lc;
        let re = v.re.round();
        if v.im.abs() > 0.1 || (v.re - re).abs() > 0.1 {
            return None;
        }
        ints.push(Int::from_f64(re)?);
    }
    let g = IntPoly::new(ints).primitive_part();
    (g.deg() == Some(roots.len())).then_some(g)
}

/// All complex roots by the Aberth–Ehrlich iteration with Newton polishing.
fn complex_roots(f: &IntPoly) -> ExactResult<Vec<Complex64>> {
    let n = f.deg().unwrap_or(0);
    let c: Vec<f64> = f
        .coeffs()
        .iter()
        .map(|a| a.to_f64().ok_or(ExactError::PrecisionInsufficient))
        .collect::<Result<_, _>>()?;
    if c.iter().any(|x| !x.is_finite()) {
        return Err(ExactError::PrecisionInsufficient);
    }
    let lead = c[n];
    let monic: Vec<f64> = c.iter().map(|a| a / lead).collect();
    let eval = |z: Complex64| -> (Complex64, Complex64) {
        let mut p = Complex64::new(0.0, 0.0);
        let mut dp = Complex64::new(0.0, 0.0);
        for &a in monic.iter().rev() {
            dp = dp * z + p;
            p = p * z + a;
        }
        (p, dp)
    };
    let radius = 1.0 + monic[..n].iter().fold(0.0f64, |m, a| m.max(a.abs()));
    let mut z: Vec<Complex64> = (0..n)
        .map(|k| Complex64::from_polar(radius, 2.0 * std::f64::consts::PI * k as f64 / n as f64 + 0.4))
        .collect();
    for _ in 0..2000 {
        let mut moved = 0.0f64;
        for k in 0..n {
            let (p, dp) = eval(z[k]);
            if p.norm() == 0.0 {
                continue;
            }
            let ratio = p / dp;
            let sum: Complex64 = (0..n).filter(|&j| j != k).map(|j| 1.0 / (z[k] - z[j])).sum();
            let w = ratio / (1.0 - ratio * sum);
            if w.is_finite() {
                z[k] -= w;
                moved = moved.max(w.norm() / z[k].norm().max(1.0));
            }
        }
        if moved < 1e-15 {
            break;
        }
    }
    for zk in z.iter_mut() {
        for _ in 0..3 {
            let (p, dp) = eval(*zk);
            if dp.norm() > 0.0 {
                let step = p / dp;
                if step.is_finite() {
                    *zk -= step;
                }
            }
        }
    }
    Ok(z)
}

struct Combinations {
    n: usize,
    idx: Vec<usize>,
    done: bool,
}

impl Combinations {
    fn new(n: usize, k: usize) -> Self {
        Combinations { n, idx: (0..k).collect(), done: k > n }
    }
}

impl Iterator for Combinations {
    type Item = Vec<usize>;
    fn next(&mut self) -> Option<Vec<usize>> {
        if self.done {
            return None;
        }
        let out = self.idx.clone();
        let k = self.idx.len();
        let mut i = k;
        loop {
            if i == 0 {
                self.done = true;
                break;
            }
            i -= 1;
            if self.idx[i] < self.n - k + i {
                self.idx[i] += 1;
                for j in i + 1..k {
                    self.idx[j] = self.idx[j - 1] + 1;
                }
                break;
            }
        }
        Some(out)
    }
}
