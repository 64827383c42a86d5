//! Dense exact matrices over ℤ and ℚ.

use super::int::{rat_int, rat_to_string, Int, Rat};
use super::poly::Coef;
use super::{ExactError, ExactResult};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Serialize, Serializer};
use std::fmt;
use std::ops::{Add, Mul, Sub};

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

pub type IntMatrix = Matrix<Int>;
pub type RatMatrix = Matrix<Rat>;

impl<T: Coef> Matrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![T::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, T::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<T>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        assert!(rows.iter().all(|x| x.len() == c), "ragged matrix");
        Matrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    pub fn column_vector(v: Vec<T>) -> Self {
        Matrix { rows: v.len(), cols: 1, data: v }
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: T) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> Vec<T> {
        self.data[i * self.cols..(i + 1) * self.cols].to_vec()
    }

    pub fn col(&self, j: usize) -> Vec<T> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<T>> {
        (0..self.rows).map(|i| self.row(i)).collect()
    }

    pub fn entries(&self) -> &[T] {
        &self.data
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn map<U: Coef>(&self, f: impl Fn(&T) -> U) -> Matrix<U> {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }

    pub fn scale(&self, k: &T) -> Self {
        self.map(|a| a.clone() * k.clone())
    }

    pub fn mul_vec(&self, v: &[T]) -> Vec<T> {
        assert_eq!(v.len(), self.cols, "matrix-vector dimension");
        (0..self.rows)
            .map(|i| {
                let mut s = T::zero();
                for j in 0..self.cols {
                    let a = self.get(i, j);
                    if !a.is_zero() {
                        s = s + a.clone() * v[j].clone();
                    }
                }
                s
            })
            .collect()
    }

    /// Row vector times matrix.
    pub fn vec_mul(&self, v: &[T]) -> Vec<T> {
        assert_eq!(v.len(), self.rows, "vector-matrix dimension");
        (0..self.cols)
            .map(|j| {
                let mut s = T::zero();
                for i in 0..self.rows {
                    s = s + v[i].clone() * self.get(i, j).clone();
                }
                s
            })
            .collect()
    }

    fn mul_impl(&self, o: &Self) -> Self {
        assert_eq!(self.cols, o.rows, "matrix product dimension");
        let mut out = Self::zeros(self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..o.cols {
                    let b = o.get(k, j);
                    if !b.is_zero() {
                        let idx = i * o.cols + j;
                        out.data[idx] = out.data[idx].clone() + a.clone() * b.clone();
                    }
                }
            }
        }
        out
    }

    fn zip(&self, o: &Self, f: impl Fn(&T, &T) -> T) -> Self {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols), "matrix shape");
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&o.data).map(|(a, b)| f(a, b)).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        assert!(self.is_square());
        let mut acc = Self::identity(self.rows);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_impl(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul_impl(&base);
            }
        }
        acc
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|a| a.is_zero())
    }

    /// Block-diagonal sum.
    pub fn direct_sum(&self, o: &Self) -> Self {
        let mut m = Self::zeros(self.rows + o.rows, self.cols + o.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m.set(i, j, self.get(i, j).clone());
            }
        }
        for i in 0..o.rows {
            for j in 0..o.cols {
                m.set(self.rows + i, self.cols + j, o.get(i, j).clone());
            }
        }
        m
    }

    pub fn submatrix(&self, r0: usize, c0: usize, nr: usize, nc: usize) -> Self {
        let mut m = Self::zeros(nr, nc);
        for i in 0..nr {
            for j in 0..nc {
                m.set(i, j, self.get(r0 + i, c0 + j).clone());
            }
        }
        m
    }
}

macro_rules! mat_binop {
    ($tr:ident, $m:ident, $body:expr) => {
        impl<T: Coef> $tr<&Matrix<T>> for &Matrix<T> {
            type Output = Matrix<T>;
            fn $m(self, o: &Matrix<T>) -> Matrix<T> {
                $body(self, o)
            }
        }
        impl<T: Coef> $tr<Matrix<T>> for Matrix<T> {
            type Output = Matrix<T>;
            fn $m(self, o: Matrix<T>) -> Matrix<T> {
                $body(&self, &o)
            }
        }
    };
}
mat_binop!(Mul, mul, |a: &Matrix<T>, b: &Matrix<T>| a.mul_impl(b));
mat_binop!(Add, add, |a: &Matrix<T>, b: &Matrix<T>| a.zip(b, |x, y| x.clone() + y.clone()));
mat_binop!(Sub, sub, |a: &Matrix<T>, b: &Matrix<T>| a.zip(b, |x, y| x.clone() - y.clone()));

impl IntMatrix {
    pub fn from_i64(rows: &[&[i64]]) -> Self {
        Self::from_rows(rows.iter().map(|r| r.iter().map(|&x| Int::from(x)).collect()).collect())
    }

    pub fn to_rat(&self) -> RatMatrix {
        self.map(rat_int)
    }

    pub fn det(&self) -> Int {
        self.to_rat().det().to_integer()
    }

    pub fn is_nonnegative(&self) -> bool {
        self.data.iter().all(|a| !a.is_negative())
    }

    pub fn is_positive(&self) -> bool {
        self.data.iter().all(|a| a.is_positive())
    }

    /// Rank over the prime field 𝔽_p.
    pub fn rank_mod_p(&self, p: u64) -> usize {
        let pb = Int::from(p);
        let mut a: Vec<Vec<u64>> = (0..self.rows)
            .map(|i| self.row(i).iter().map(|x| x.mod_floor(&pb).to_u64().unwrap()).collect())
            .collect();
        let inv = |x: u64| -> u64 { modpow(x, p - 2, p) };
        let mut rank = 0;
        for c in 0..self.cols {
            let Some(piv) = (rank..self.rows).find(|&r| a[r][c] != 0) else { continue };
            a.swap(rank, piv);
            let iv = inv(a[rank][c]);
            for x in a[rank].iter_mut() {
                *x = mulmod(*x, iv, p);
            }
            for r in 0..self.rows {
                if r != rank && a[r][c] != 0 {
                    let f = a[r][c];
                    for k in 0..self.cols {
                        let sub = mulmod(f, a[rank][k], p);
                        a[r][k] = (a[r][k] + p - sub) % p;
                    }
                }
            }
            rank += 1;
        }
        rank
    }
}

fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn modpow(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mulmod(acc, b, p);
        }
        b = mulmod(b, b, p);
        e >>= 1;
    }
    acc
}

impl RatMatrix {
    pub fn from_int(m: &IntMatrix) -> Self {
        m.to_rat()
    }

    pub fn is_integral(&self) -> bool {
        self.data.iter().all(|a| a.is_integer())
    }

    pub fn to_int(&self) -> Option<IntMatrix> {
        if self.is_integral() {
            Some(self.map(|a| a.to_integer()))
        } else {
            None
        }
    }

    /// Least common multiple of all entry denominators.
    pub fn common_denominator(&self) -> Int {
        self.data.iter().fold(Int::one(), |l, a| l.lcm(a.denom()))
    }

    /// Reduced row echelon form and pivot columns.
    pub fn rref(&self) -> (RatMatrix, Vec<usize>) {
        let mut a = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..a.cols {
            let Some(p) = (r..a.rows).find(|&i| !a.get(i, c).is_zero()) else { continue };
            for k in 0..a.cols {
                a.data.swap(r * a.cols + k, p * a.cols + k);
            }
            let iv = a.get(r, c).recip();
            for k in 0..a.cols {
                let v = a.get(r, k) * &iv;
                a.set(r, k, v);
            }
            for i in 0..a.rows {
                if i != r && !a.get(i, c).is_zero() {
                    let f = a.get(i, c).clone();
                    for k in 0..a.cols {
                        let v = a.get(i, k) - &f * a.get(r, k);
                        a.set(i, k, v);
                    }
                }
            }
            pivots.push(c);
            r += 1;
            if r == a.rows {
                break;
            }
        }
        (a, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    pub fn det(&self) -> Rat {
        assert!(self.is_square());
        let n = self.rows;
        let mut a = self.clone();
        let mut det = Rat::one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&i| !a.get(i, c).is_zero()) else { return Rat::zero() };
            if p != c {
                for k in 0..n {
                    a.data.swap(c * n + k, p * n + k);
                }
                det = -det;
            }
            let piv = a.get(c, c).clone();
            det *= &piv;
            for i in c + 1..n {
                if !a.get(i, c).is_zero() {
                    let f = a.get(i, c) / &piv;
                    for k in c..n {
                        let v = a.get(i, k) - &f * a.get(c, k);
                        a.set(i, k, v);
                    }
                }
            }
        }
        det
    }

    pub fn inverse(&self) -> ExactResult<RatMatrix> {
        if !self.is_square() {
            return Err(ExactError::DimensionMismatch("inverse of a non-square matrix".into()));
        }
        let n = self.rows;
        let mut aug = Self::zeros(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, n + i, Rat::one());
        }
        let (r, piv) = aug.rref();
        if piv.len() < n || piv[n - 1] != n - 1 {
            return Err(ExactError::Singular);
        }
        Ok(r.submatrix(0, n, n, n))
    }

    /// Basis of the right kernel {x : A x = 0}.
    pub fn nullspace(&self) -> Vec<Vec<Rat>> {
        let (r, piv) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !piv.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut x = vec![Rat::zero(); self.cols];
                x[f] = Rat::one();
                for (i, &p) in piv.iter().enumerate() {
                    x[p] = -r.get(i, f).clone();
                }
                x
            })
            .collect()
    }

    /// Some solution of A x = b, if one exists.
    pub fn solve(&self, b: &[Rat]) -> Option<Vec<Rat>> {
        assert_eq!(b.len(), self.rows);
        let mut aug = Self::zeros(self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, self.cols, b[i].clone());
        }
        let (r, piv) = aug.rref();
        if piv.contains(&self.cols) {
            return None;
        }
        let mut x = vec![Rat::zero(); self.cols];
        for (i, &p) in piv.iter().enumerate() {
            x[p] = r.get(i, self.cols).clone();
        }
        Some(x)
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .to_rows()
            .iter()
            .map(|r| r.iter().map(|a| a.to_string()).collect::<Vec<_>>().join(", "))
            .collect();
        write!(f, "[{}]", rows.join("; "))
    }
}

impl fmt::Display for RatMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .to_rows()
            .iter()
            .map(|r| r.iter().map(rat_to_string).collect::<Vec<_>>().join(", "))
            .collect();
        write!(f, "[{}]", rows.join("; "))
    }
}

impl Serialize for IntMatrix {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let v: Vec<Vec<String>> =
            self.to_rows().iter().map(|r| r.iter().map(|a| a.to_string()).collect()).collect();
        v.serialize(s)
    }
}

impl Serialize for RatMatrix {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let v: Vec<Vec<String>> =
            self.to_rows().iter().map(|r| r.iter().map(rat_to_string).collect()).collect();
        v.serialize(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::int::rat;
    use proptest::prelude::*;

    #[test]
    fn inverse_of_two_by_two() {
        let j = IntMatrix::from_i64(&[&[1, 1], &[2, 0]]).to_rat();
        let inv = j.inverse().unwrap();
        let expect = RatMatrix::from_rows(vec![
            vec![rat(0, 1), rat(1, 2)],
            vec![rat(1, 1), rat(-1, 2)],
        ]);
        assert_eq!(inv, expect);
        assert_eq!(&j * &inv, RatMatrix::identity(2));
    }

    #[test]
    fn singular_detected() {
        let m = IntMatrix::from_i64(&[&[1, 2], &[2, 4]]).to_rat();
        assert_eq!(m.inverse(), Err(ExactError::Singular));
        assert_eq!(m.det(), rat(0, 1));
        assert_eq!(m.nullspace().len(), 1);
    }

    #[test]
    fn rank_over_prime_fields() {
        let m = IntMatrix::from_i64(&[&[-1, 1], &[-2, 0]]);
        assert_eq!(m.rank_mod_p(2), 1);
        assert_eq!(m.rank_mod_p(3), 2);
    }

    #[test]
    fn solve_consistent_and_inconsistent() {
        let m = IntMatrix::from_i64(&[&[1, 1], &[1, 1]]).to_rat();
        assert!(m.solve(&[rat(1, 1), rat(2, 1)]).is_none());
        let x = m.solve(&[rat(3, 1), rat(3, 1)]).unwrap();
        assert_eq!(m.mul_vec(&x), vec![rat(3, 1), rat(3, 1)]);
    }

    fn arb_square() -> impl Strategy<Value = IntMatrix> {
        (1usize..5).prop_flat_map(|n| {
            prop::collection::vec(-6i64..6, n * n).prop_map(move |v| {
                IntMatrix::from_rows(v.chunks(n).map(|r| r.iter().map(|&x| Int::from(x)).collect()).collect())
            })
        })
    }

    proptest! {
        #[test]
        fn det_is_multiplicative(a in arb_square()) {
            let b = a.transpose();
            prop_assert_eq!((&a * &b).det(), a.det() * b.det());
        }

        #[test]
        fn inverse_round_trip(a in arb_square()) {
            let r = a.to_rat();
            match r.inverse() {
                Ok(inv) => prop_assert_eq!(&r * &inv, RatMatrix::identity(a.nrows())),
                Err(_) => prop_assert!(a.det().is_zero()),
            }
        }

        #[test]
        fn pow_matches_repeated_product(a in arb_square(), e in 0u32..5) {
            let mut acc = IntMatrix::identity(a.nrows());
            for _ in 0..e { acc = &acc * &a; }
            prop_assert_eq!(a.pow(e), acc);
        }
    }
}
