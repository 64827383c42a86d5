//! Companion matrices with an arbitrary integer first column c and ones on the
//! superdiagonal. Specimens give c = m ≥ 0; the kernel block J₀ has first
//! column Q, which may be negative.
//!
//! Coordinates follow the polynomial picture eⱼ ↔ x^{j−1} in ℚ[x]/(P) with
//! P = Σ c_j xʲ − 1, where J⁻¹ acts as multiplication by x.

use crate::exactalg::{Int, IntMatrix, IntPoly, Rat};
use crate::specimen::Specimen;
use num_traits::{One, Signed, Zero};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Companion {
    c: Vec<Int>,
}

impl Companion {
    pub fn new(c: Vec<Int>) -> Self {
        assert!(!c.is_empty(), "empty companion column");
        assert!(!c.last().unwrap().is_zero(), "singular companion matrix");
        Companion { c }
    }

    pub fn of(s: &Specimen) -> Self {
        Companion::new(s.m().iter().map(|&x| Int::from(x)).collect())
    }

    pub fn n(&self) -> usize {
        self.c.len()
    }

    pub fn column(&self) -> &[Int] {
        &self.c
    }

    /// Last entry c_N; ±det of the matrix.
    pub fn last(&self) -> &Int {
        self.c.last().unwrap()
    }

    pub fn matrix(&self) -> IntMatrix {
        let n = self.n();
        let mut j = IntMatrix::zeros(n, n);
        for i in 0..n {
            j.set(i, 0, self.c[i].clone());
            if i + 1 < n {
                j.set(i, i + 1, Int::one());
            }
        }
        j
    }

    /// Σ c_j xʲ − 1.
    pub fn poly(&self) -> IntPoly {
        let mut v = vec![-Int::one()];
        v.extend(self.c.iter().cloned());
        IntPoly::new(v)
    }

    pub fn det(&self) -> Int {
        let s = if self.n() % 2 == 1 { Int::one() } else { -Int::one() };
        s * self.last()
    }

    /// J·v.
    pub fn apply(&self, v: &[Rat]) -> Vec<Rat> {
        let n = self.n();
        (0..n)
            .map(|i| {
                let mut x = Rat::from_integer(self.c[i].clone()) * &v[0];
                if i + 1 < n {
                    x += &v[i + 1];
                }
                x
            })
            .collect()
    }

    /// J⁻¹·v: w₁ = v_N/c_N and w_{i+1} = v_i − c_i·w₁.
    pub fn apply_inv(&self, v: &[Rat]) -> Vec<Rat> {
        let n = self.n();
        let w1 = &v[n - 1] / Rat::from_integer(self.last().clone());
        let mut w = Vec::with_capacity(n);
        w.push(w1.clone());
        for i in 0..n - 1 {
            w.push(&v[i] - Rat::from_integer(self.c[i].clone()) * &w1);
        }
        w
    }

    /// J⁻ᵏ e_N.
    pub fn inv_pow_en(&self, k: usize) -> Vec<Rat> {
        let mut v = unit(self.n(), self.n() - 1);
        for _ in 0..k {
            v = self.apply_inv(&v);
        }
        v
    }

    pub fn abs_last(&self) -> Int {
        self.last().abs()
    }
}

pub fn unit(n: usize, i: usize) -> Vec<Rat> {
    let mut v = vec![Rat::zero(); n];
    v[i] = Rat::one();
    v
}

pub fn is_integral(v: &[Rat]) -> bool {
    v.iter().all(|x| x.is_integer())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::rat;

    #[test]
    fn inverse_application_matches_matrix() {
        let c = Companion::new(vec![Int::from(-1), Int::from(-2)]);
        let v = vec![rat(3, 1), rat(5, 7)];
        assert_eq!(c.apply(&c.apply_inv(&v)), v);
        assert_eq!(c.apply_inv(&c.apply(&v)), v);
        assert_eq!(c.det(), Int::from(2));
        assert_eq!(c.matrix().det(), Int::from(2));
    }

    #[test]
    fn left_shift_in_polynomial_picture() {
        let s = Specimen::from_m(vec![1, 0, 4]).unwrap();
        let c = Companion::of(&s);
        // J⁻¹e₁ = e₂, J⁻¹e₂ = e₃
        assert_eq!(c.apply_inv(&unit(3, 0)), unit(3, 1));
        assert_eq!(c.apply_inv(&unit(3, 1)), unit(3, 2));
        assert_eq!(c.inv_pow_en(1), vec![rat(1, 4), rat(-1, 4), rat(0, 1)]);
    }
}
