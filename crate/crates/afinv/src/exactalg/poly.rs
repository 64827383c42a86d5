//! Dense univariate polynomials over ℤ and ℚ, coefficients stored low to high.

use super::int::{rat_int, rat_to_string, Int, Rat};
use super::{ExactError, ExactResult};
use num_integer::Integer;
use num_traits::{FromPrimitive, One, Signed, Zero};
use serde::{Serialize, Serializer};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// Coefficient ring requirements shared by ℤ and ℚ.
pub trait Coef:
    Clone
    + PartialEq
    + Zero
    + One
    + FromPrimitive
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
    + fmt::Debug
{
}

impl<T> Coef for T where
    T: Clone
        + PartialEq
        + Zero
        + One
        + FromPrimitive
        + Add<Output = T>
        + Sub<Output = T>
        + Mul<Output = T>
        + Neg<Output = T>
        + fmt::Debug
{
}

/// Degree with a sentinel below every natural number for the zero polynomial,
/// so that deg(fg) = deg f + deg g holds without special cases.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Degree {
    NegInfinity,
    Finite(usize),
}

impl Add for Degree {
    type Output = Degree;
    fn add(self, o: Degree) -> Degree {
        match (self, o) {
            (Degree::Finite(a), Degree::Finite(b)) => Degree::Finite(a + b),
            _ => Degree::NegInfinity,
        }
    }
}

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Poly<T> {
    c: Vec<T>,
}

pub type IntPoly = Poly<Int>;
pub type RatPoly = Poly<Rat>;

impl<T: Coef> Poly<T> {
    pub fn new(mut c: Vec<T>) -> Self {
        while c.last().is_some_and(|x| x.is_zero()) {
            c.pop();
        }
        Poly { c }
    }

    pub fn zero() -> Self {
        Poly { c: Vec::new() }
    }

    pub fn one() -> Self {
        Poly { c: vec![T::one()] }
    }

    pub fn x() -> Self {
        Poly { c: vec![T::zero(), T::one()] }
    }

    pub fn constant(a: T) -> Self {
        Self::new(vec![a])
    }

    pub fn monomial(a: T, k: usize) -> Self {
        let mut c = vec![T::zero(); k + 1];
        c[k] = a;
        Self::new(c)
    }

    pub fn coeffs(&self) -> &[T] {
        &self.c
    }

    pub fn coeff(&self, k: usize) -> T {
        self.c.get(k).cloned().unwrap_or_else(T::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    pub fn degree(&self) -> Degree {
        if self.c.is_empty() {
            Degree::NegInfinity
        } else {
            Degree::Finite(self.c.len() - 1)
        }
    }

    /// Degree as an option; `None` for the zero polynomial.
    pub fn deg(&self) -> Option<usize> {
        self.c.len().checked_sub(1)
    }

    pub fn lc(&self) -> T {
        self.c.last().cloned().unwrap_or_else(T::zero)
    }

    pub fn eval(&self, x: &T) -> T {
        let mut acc = T::zero();
        for a in self.c.iter().rev() {
            acc = acc * x.clone() + a.clone();
        }
        acc
    }

    pub fn derivative(&self) -> Self {
        let c = self
            .c
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, a)| a.clone() * T::from_usize(i).expect("small index"))
            .collect();
        Self::new(c)
    }

    pub fn scale(&self, k: &T) -> Self {
        Self::new(self.c.iter().map(|a| a.clone() * k.clone()).collect())
    }

    /// Multiply by xᵏ.
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut c = vec![T::zero(); k];
        c.extend(self.c.iter().cloned());
        Poly { c }
    }

    /// Coefficients strictly above degree k removed.
    pub fn truncate(&self, k: usize) -> Self {
        Self::new(self.c.iter().take(k + 1).cloned().collect())
    }

    /// xⁿ·f(1/x) for n ≥ deg f.
    pub fn reverse(&self, n: usize) -> Self {
        let mut c = vec![T::zero(); n + 1];
        for (i, a) in self.c.iter().enumerate() {
            assert!(i <= n, "reverse degree too small");
            c[n - i] = a.clone();
        }
        Self::new(c)
    }

    pub fn map<U: Coef>(&self, f: impl Fn(&T) -> U) -> Poly<U> {
        Poly::new(self.c.iter().map(f).collect())
    }

    fn add_impl(&self, o: &Self) -> Self {
        let n = self.c.len().max(o.c.len());
        Self::new((0..n).map(|i| self.coeff(i) + o.coeff(i)).collect())
    }

    fn sub_impl(&self, o: &Self) -> Self {
        let n = self.c.len().max(o.c.len());
        Self::new((0..n).map(|i| self.coeff(i) - o.coeff(i)).collect())
    }

    fn mul_impl(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero();
        }
        let mut c = vec![T::zero(); self.c.len() + o.c.len() - 1];
        for (i, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.c.iter().enumerate() {
                c[i + j] = c[i + j].clone() + a.clone() * b.clone();
            }
        }
        Self::new(c)
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = acc.mul_impl(self);
        }
        acc
    }
}

macro_rules! poly_binop {
    ($tr:ident, $m:ident, $imp:ident) => {
        impl<T: Coef> $tr<&Poly<T>> for &Poly<T> {
            type Output = Poly<T>;
            fn $m(self, o: &Poly<T>) -> Poly<T> {
                self.$imp(o)
            }
        }
        impl<T: Coef> $tr<Poly<T>> for Poly<T> {
            type Output = Poly<T>;
            fn $m(self, o: Poly<T>) -> Poly<T> {
                self.$imp(&o)
            }
        }
        impl<T: Coef> $tr<&Poly<T>> for Poly<T> {
            type Output = Poly<T>;
            fn $m(self, o: &Poly<T>) -> Poly<T> {
                self.$imp(o)
            }
        }
        impl<T: Coef> $tr<Poly<T>> for &Poly<T> {
            type Output = Poly<T>;
            fn $m(self, o: Poly<T>) -> Poly<T> {
                self.$imp(&o)
            }
        }
    };
}
poly_binop!(Add, add, add_impl);
poly_binop!(Sub, sub, sub_impl);
poly_binop!(Mul, mul, mul_impl);

impl<T: Coef> Neg for &Poly<T> {
    type Output = Poly<T>;
    fn neg(self) -> Poly<T> {
        Poly::new(self.c.iter().map(|a| -a.clone()).collect())
    }
}

impl<T: Coef> Neg for Poly<T> {
    type Output = Poly<T>;
    fn neg(self) -> Poly<T> {
        -&self
    }
}

impl IntPoly {
    pub fn from_i64(c: &[i64]) -> Self {
        Self::new(c.iter().map(|&x| Int::from(x)).collect())
    }

    pub fn to_rat(&self) -> RatPoly {
        self.map(rat_int)
    }

    pub fn eval_rat(&self, x: &Rat) -> Rat {
        self.to_rat().eval(x)
    }

    /// Nonnegative gcd of the coefficients.
    pub fn content(&self) -> Int {
        self.c.iter().fold(Int::zero(), |g, a| g.gcd(a))
    }

    /// Primitive part normalized to a positive leading coefficient.
    pub fn primitive_part(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut g = self.content();
        if self.lc().is_negative() {
            g = -g;
        }
        Self::new(self.c.iter().map(|a| a / &g).collect())
    }

    /// Euclidean division over ℚ, required to stay integral.
    pub fn divmod(&self, g: &IntPoly) -> ExactResult<(IntPoly, IntPoly)> {
        let (q, r) = self.to_rat().divmod(&g.to_rat())?;
        match (q.to_int(), r.to_int()) {
            (Some(q), Some(r)) => Ok((q, r)),
            _ => Err(ExactError::NonIntegralDivision),
        }
    }

    /// Exact quotient if `g` divides `self` in ℤ[x].
    pub fn exact_div(&self, g: &IntPoly) -> Option<IntPoly> {
        match self.divmod(g) {
            Ok((q, r)) if r.is_zero() => Some(q),
            _ => None,
        }
    }

    /// Coefficients reduced into {0,…,n−1}.
    pub fn reduce_mod(&self, n: &Int) -> ExactResult<IntPoly> {
        if *n < Int::from(2) {
            return Err(ExactError::BadModulus);
        }
        Ok(self.map(|a| a.mod_floor(n)))
    }

    /// Primitive gcd with positive leading coefficient.
    pub fn gcd(&self, o: &IntPoly) -> IntPoly {
        let g = self.to_rat().gcd(&o.to_rat());
        g.clear_denominators().0.primitive_part()
    }
}

impl RatPoly {
    pub fn to_int(&self) -> Option<IntPoly> {
        if self.c.iter().all(|a| a.is_integer()) {
            Some(self.map(|a| a.to_integer()))
        } else {
            None
        }
    }

    /// Least common denominator `d` with `d·self` integral.
    pub fn clear_denominators(&self) -> (IntPoly, Int) {
        let d = self.c.iter().fold(Int::one(), |l, a| l.lcm(a.denom()));
        let dr = rat_int(&d);
        (self.map(|a| (a * &dr).to_integer()), d)
    }

    pub fn monic(&self) -> RatPoly {
        if self.is_zero() {
            return Self::zero();
        }
        let l = self.lc().recip();
        self.scale(&l)
    }

    pub fn divmod(&self, g: &RatPoly) -> ExactResult<(RatPoly, RatPoly)> {
        let dg = g.deg().ok_or(ExactError::DivisionByZero)?;
        let lg = g.lc();
        let mut r = self.c.clone();
        if r.len() <= dg {
            return Ok((Self::zero(), self.clone()));
        }
        let mut q = vec![Rat::zero(); r.len() - dg];
        for k in (0..q.len()).rev() {
            let t = &r[k + dg] / &lg;
            if !t.is_zero() {
                for (j, b) in g.c.iter().enumerate() {
                    r[k + j] = &r[k + j] - &t * b;
                }
            }
            q[k] = t;
        }
        r.truncate(dg);
        Ok((Self::new(q), Self::new(r)))
    }

    pub fn rem(&self, g: &RatPoly) -> RatPoly {
        self.divmod(g).expect("nonzero modulus").1
    }

    /// Monic gcd (zero when both inputs vanish).
    pub fn gcd(&self, o: &RatPoly) -> RatPoly {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// (g, s, t) with s·self + t·o = g monic.
    pub fn ext_gcd(&self, o: &RatPoly) -> (RatPoly, RatPoly, RatPoly) {
        let (mut r0, mut r1) = (self.clone(), o.clone());
        let (mut s0, mut s1) = (Self::one(), Self::zero());
        let (mut t0, mut t1) = (Self::zero(), Self::one());
        while !r1.is_zero() {
            let (q, r) = r0.divmod(&r1).expect("nonzero");
            r0 = std::mem::replace(&mut r1, r);
            let s = &s0 - &(&q * &s1);
            s0 = std::mem::replace(&mut s1, s);
            let t = &t0 - &(&q * &t1);
            t0 = std::mem::replace(&mut t1, t);
        }
        if r0.is_zero() {
            return (r0, s0, t0);
        }
        let l = r0.lc().recip();
        (r0.scale(&l), s0.scale(&l), t0.scale(&l))
    }
}

fn write_terms<T>(
    f: &mut fmt::Formatter<'_>,
    c: &[T],
    var: &str,
    text: impl Fn(&T) -> (bool, String),
) -> fmt::Result {
    let mut first = true;
    for (i, a) in c.iter().enumerate().rev() {
        let (neg, mag) = text(a);
        if mag == "0" {
            continue;
        }
        if first {
            if neg {
                write!(f, "-")?;
            }
        } else {
            write!(f, " {} ", if neg { "-" } else { "+" })?;
        }
        first = false;
        let body = match i {
            0 => mag,
            1 if mag == "1" => var.to_string(),
            1 => format!("{mag}{var}"),
            _ if mag == "1" => format!("{var}^{i}"),
            _ => format!("{mag}{var}^{i}"),
        };
        write!(f, "{body}")?;
    }
    if first {
        write!(f, "0")?;
    }
    Ok(())
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_terms(f, &self.c, "x", |a| (a.is_negative(), a.abs().to_string()))
    }
}

impl fmt::Display for RatPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_terms(f, &self.c, "x", |a| (a.is_negative(), rat_to_string(&a.abs())))
    }
}

impl Serialize for IntPoly {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let v: Vec<String> = self.c.iter().map(|a| a.to_string()).collect();
        v.serialize(s)
    }
}

impl Serialize for RatPoly {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let v: Vec<String> = self.c.iter().map(rat_to_string).collect();
        v.serialize(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::int::big;
    use proptest::prelude::*;

    fn p(c: &[i64]) -> IntPoly {
        IntPoly::from_i64(c)
    }

    #[test]
    fn trimming_and_degree() {
        assert_eq!(p(&[1, 2, 0, 0]).deg(), Some(1));
        assert_eq!(p(&[0, 0]).degree(), Degree::NegInfinity);
        assert!(Degree::NegInfinity < Degree::Finite(0));
        assert_eq!(p(&[]).degree() + p(&[1, 1]).degree(), Degree::NegInfinity);
    }

    #[test]
    fn divmod_f_m_by_linear() {
        let (q, r) = p(&[1, 0, 4]).divmod(&p(&[1, -2])).unwrap();
        assert_eq!(q, p(&[-1, -2]));
        assert_eq!(r, p(&[2]));
    }

    #[test]
    fn divmod_p_l_by_linear() {
        let (q, r) = p(&[-1, 1, 0, 4]).divmod(&p(&[1, -2])).unwrap();
        assert_eq!(q, p(&[-1, -1, -2]));
        assert!(r.is_zero());
    }

    #[test]
    fn divmod_unit_divisor() {
        let f = p(&[3, -7, 0, 11]);
        let (q, r) = f.divmod(&p(&[1])).unwrap();
        assert_eq!(q, f);
        assert!(r.is_zero());
    }

    #[test]
    fn divmod_nonintegral_rejected() {
        assert_eq!(p(&[0, 1]).divmod(&p(&[0, 2])), Err(ExactError::NonIntegralDivision));
        assert_eq!(p(&[1]).divmod(&p(&[])), Err(ExactError::DivisionByZero));
    }

    #[test]
    fn reduction_mod_n() {
        assert_eq!(p(&[1, 1, 2]).reduce_mod(&big(2)).unwrap(), p(&[1, 1]));
        assert_eq!(p(&[1, 2, 2]).reduce_mod(&big(2)).unwrap(), p(&[1]));
        assert_eq!(p(&[-1, 3]).reduce_mod(&big(3)).unwrap(), p(&[2]));
        assert_eq!(p(&[1]).reduce_mod(&big(1)), Err(ExactError::BadModulus));
    }

    #[test]
    fn display_form() {
        assert_eq!(p(&[-1, 1, 0, 4]).to_string(), "4x^3 + x - 1");
        assert_eq!(p(&[]).to_string(), "0");
        assert_eq!(p(&[0, -1]).to_string(), "-x");
    }

    #[test]
    fn gcd_and_extended_gcd() {
        let a = p(&[-1, 0, 1]);
        let b = p(&[1, 2, 1]);
        assert_eq!(a.gcd(&b), p(&[1, 1]));
        let (g, s, t) = a.to_rat().ext_gcd(&b.to_rat());
        assert_eq!(&(&s * &a.to_rat()) + &(&t * &b.to_rat()), g);
    }

    fn arb_poly() -> impl Strategy<Value = IntPoly> {
        prop::collection::vec(-20i64..20, 0..7).prop_map(|v| p(&v))
    }

    proptest! {
        #[test]
        fn division_identity(f in arb_poly(), g in arb_poly()) {
            prop_assume!(!g.is_zero());
            let (q, r) = f.to_rat().divmod(&g.to_rat()).unwrap();
            prop_assert_eq!(&(&q * &g.to_rat()) + &r, f.to_rat());
            prop_assert!(r.degree() < g.degree());
        }

        #[test]
        fn unit_constant_divisor_stays_integral(f in arb_poly(), tail in prop::collection::vec(-5i64..5, 0..4), s in prop::bool::ANY) {
            let mut c = vec![if s { 1 } else { -1 }];
            c.extend(tail);
            c.push(1);
            let g = p(&c);
            let (q, r) = f.divmod(&g).unwrap();
            prop_assert_eq!(&(&q * &g) + &r, f);
        }

        #[test]
        fn degree_is_additive(f in arb_poly(), g in arb_poly()) {
            prop_assert_eq!((&f * &g).degree(), f.degree() + g.degree());
        }

        #[test]
        fn reciprocal_involution(f in arb_poly()) {
            let n = f.deg().unwrap_or(0) + 2;
            prop_assert_eq!(f.reverse(n).reverse(n), f);
        }
    }
}
