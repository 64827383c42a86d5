//! Arithmetic in ℚ(θ) = ℚ[x]/(minpoly θ) for a real algebraic θ, with exact
//! sign decisions through the embedding given by θ's isolating interval.

use super::algreal::AlgebraicReal;
use super::int::{rat, rat_int, rat_to_string, Rat};
use super::poly::RatPoly;
use num_traits::{ToPrimitive, Zero};
use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

#[derive(Debug)]
pub struct NumberField {
    modulus: RatPoly,
    root: AlgebraicReal,
}

#[derive(Clone, Debug)]
pub struct FieldElem {
    field: Arc<NumberField>,
    p: RatPoly,
}

impl NumberField {
    pub fn new(root: AlgebraicReal) -> Arc<Self> {
        let modulus = root.minpoly().to_rat().monic();
        Arc::new(NumberField { modulus, root })
    }

    pub fn degree(&self) -> usize {
        self.modulus.deg().unwrap_or(0)
    }

    pub fn root(&self) -> &AlgebraicReal {
        &self.root
    }

    pub fn same_as(&self, o: &NumberField) -> bool {
        self.modulus == o.modulus && self.root == o.root
    }
}

pub trait FieldHandle {
    fn elem(&self, p: RatPoly) -> FieldElem;
    fn rat(&self, r: Rat) -> FieldElem;
    fn generator(&self) -> FieldElem;
}

impl FieldHandle for Arc<NumberField> {
    fn elem(&self, p: RatPoly) -> FieldElem {
        let p = p.rem(&self.modulus);
        FieldElem { field: self.clone(), p }
    }

    fn rat(&self, r: Rat) -> FieldElem {
        self.elem(RatPoly::constant(r))
    }

    fn generator(&self) -> FieldElem {
        self.elem(RatPoly::x())
    }
}

impl FieldElem {
    pub fn field(&self) -> &Arc<NumberField> {
        &self.field
    }

    /// Representative polynomial in the generator, of degree below the field degree.
    pub fn poly(&self) -> &RatPoly {
        &self.p
    }

    pub fn is_zero(&self) -> bool {
        self.p.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.p == RatPoly::one()
    }

    pub fn to_rational(&self) -> Option<Rat> {
        match self.p.deg() {
            None => Some(Rat::zero()),
            Some(0) => Some(self.p.coeff(0)),
            _ => None,
        }
    }

    fn check(&self, o: &FieldElem) {
        assert!(
            Arc::ptr_eq(&self.field, &o.field) || self.field.modulus == o.field.modulus,
            "elements of different number fields"
        );
    }

    fn wrap(&self, p: RatPoly) -> FieldElem {
        self.field.elem(p)
    }

    pub fn inv(&self) -> Option<FieldElem> {
        if self.is_zero() {
            return None;
        }
        let (g, s, _) = self.p.ext_gcd(&self.field.modulus);
        debug_assert_eq!(g, RatPoly::one());
        Some(self.wrap(s))
    }

    pub fn pow(&self, e: i64) -> FieldElem {
        let base = if e < 0 { self.inv().expect("inverse of zero") } else { self.clone() };
        let mut acc = self.wrap(RatPoly::one());
        for _ in 0..e.unsigned_abs() {
            acc = &acc * &base;
        }
        acc
    }

    pub fn scale(&self, r: &Rat) -> FieldElem {
        self.wrap(self.p.scale(r))
    }

    pub fn sign(&self) -> Ordering {
        self.field.root.sign_of(&self.p)
    }

    pub fn exact_cmp(&self, o: &FieldElem) -> Ordering {
        (self - o).sign()
    }

    pub fn to_f64(&self) -> f64 {
        if let Some(r) = self.to_rational() {
            return r.to_f64().unwrap_or(f64::NAN);
        }
        let x = self.field.root.refined(&rat(1, 1 << 60));
        let (lo, hi) = x.interval();
        let mid = (lo + hi) / rat_int(&2.into());
        self.p.eval(&mid).to_f64().unwrap_or(f64::NAN)
    }

    /// Text form: a reduced rational, or a polynomial in the named generator.
    pub fn render(&self, var: &str) -> String {
        if let Some(r) = self.to_rational() {
            return rat_to_string(&r);
        }
        self.p.to_string().replace('x', var)
    }
}

impl PartialEq for FieldElem {
    fn eq(&self, o: &Self) -> bool {
        self.field.modulus == o.field.modulus && self.p == o.p
    }
}

impl fmt::Display for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render("a"))
    }
}

macro_rules! elem_binop {
    ($tr:ident, $m:ident, $op:tt) => {
        impl $tr<&FieldElem> for &FieldElem {
            type Output = FieldElem;
            fn $m(self, o: &FieldElem) -> FieldElem {
                self.check(o);
                self.wrap(&self.p $op &o.p)
            }
        }
        impl $tr<FieldElem> for FieldElem {
            type Output = FieldElem;
            fn $m(self, o: FieldElem) -> FieldElem {
                &self $op &o
            }
        }
    };
}
elem_binop!(Add, add, +);
elem_binop!(Sub, sub, -);
elem_binop!(Mul, mul, *);

impl Neg for &FieldElem {
    type Output = FieldElem;
    fn neg(self) -> FieldElem {
        self.wrap(-&self.p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::poly::IntPoly;

    fn golden_field() -> Arc<NumberField> {
        NumberField::new(AlgebraicReal::from_isolating(
            IntPoly::from_i64(&[-1, 1, 1]),
            rat(0, 1),
            rat(1, 1),
        ))
    }

    #[test]
    fn inverse_and_identities() {
        let k = golden_field();
        let a = k.generator();
        // a² = 1 − a
        assert_eq!(&a * &a, &k.rat(rat(1, 1)) - &a);
        // 1/a = a + 1
        assert_eq!(a.inv().unwrap(), &a + &k.rat(rat(1, 1)));
        assert_eq!(&a * &a.pow(-1), k.rat(rat(1, 1)));
    }

    #[test]
    fn signs_are_exact() {
        let k = golden_field();
        let a = k.generator();
        assert_eq!((&a - &k.rat(rat(5, 8))).sign(), Ordering::Less);
        assert_eq!((&a - &k.rat(rat(3, 5))).sign(), Ordering::Greater);
        assert_eq!((&(&a * &a) + &a - k.rat(rat(1, 1))).sign(), Ordering::Equal);
    }

    #[test]
    fn rational_field_behaves_like_q() {
        let k = NumberField::new(AlgebraicReal::from_rational(rat(1, 2)));
        let a = k.generator();
        assert_eq!(a.to_rational(), Some(rat(1, 2)));
        assert_eq!(a.pow(-3).to_rational(), Some(rat(8, 1)));
    }
}
