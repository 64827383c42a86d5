//! Real algebraic numbers as (irreducible minimal polynomial, isolating interval).

use super::int::{rat, rat_to_string, Int, Rat};
use super::factor::factor_over_z;
use super::poly::{IntPoly, RatPoly};
use super::{ExactError, ExactResult};
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;
use std::cmp::Ordering;
use std::fmt;

#[derive(Clone, Debug)]
pub struct AlgebraicReal {
    minpoly: IntPoly,
    lo: Rat,
    hi: Rat,
    exact: Option<Rat>,
}

fn sign(r: &Rat) -> Ordering {
    r.cmp(&Rat::zero())
}

/// Bound on |f(x) − f(mid)| for x in [lo, hi], from the mean value theorem
/// with |f′| bounded termwise by Σ i|cᵢ|Mⁱ⁻¹, M = max(|lo|, |hi|).
fn deviation_bound(f: &RatPoly, lo: &Rat, hi: &Rat) -> Rat {
    let m = lo.abs().max(hi.abs());
    let mut bound = Rat::zero();
    let mut mp = Rat::one();
    for (i, c) in f.coeffs().iter().enumerate().skip(1) {
        bound += c.abs() * Rat::from_integer(Int::from(i)) * &mp;
        mp *= &m;
    }
    bound * (hi - lo) / rat(2, 1)
}

/// Number of distinct real roots of the squarefree `p` in (lo, hi].
pub fn sturm_count(p: &IntPoly, lo: &Rat, hi: &Rat) -> usize {
    let p = p.to_rat();
    if p.deg().unwrap_or(0) == 0 {
        return 0;
    }
    let mut seq = vec![p.clone(), p.derivative()];
    loop {
        let n = seq.len();
        let r = seq[n - 2].rem(&seq[n - 1]);
        if r.is_zero() {
            break;
        }
        seq.push(-r);
    }
    let variations = |x: &Rat| -> usize {
        let signs: Vec<Ordering> =
            seq.iter().map(|q| sign(&q.eval(x))).filter(|s| *s != Ordering::Equal).collect();
        signs.windows(2).filter(|w| w[0] != w[1]).count()
    };
    variations(lo).saturating_sub(variations(hi))
}

impl AlgebraicReal {
    pub fn from_rational(r: Rat) -> Self {
        let minpoly = IntPoly::new(vec![-r.numer().clone(), r.denom().clone()]);
        AlgebraicReal { minpoly, lo: &r - Rat::one(), hi: &r + Rat::one(), exact: Some(r) }
    }

    /// Real root of the irreducible `minpoly` strictly between `lo` and `hi`,
    /// where the endpoints give values of opposite nonzero sign.
    pub fn from_isolating(minpoly: IntPoly, lo: Rat, hi: Rat) -> Self {
        let minpoly = minpoly.primitive_part();
        if minpoly.deg() == Some(1) {
            let r = Rat::new(-minpoly.coeff(0), minpoly.coeff(1));
            return Self::from_rational(r);
        }
        let (fl, fh) = (minpoly.eval_rat(&lo), minpoly.eval_rat(&hi));
        assert!(
            !fl.is_zero() && !fh.is_zero() && sign(&fl) != sign(&fh),
            "interval does not isolate a sign change"
        );
        AlgebraicReal { minpoly, lo, hi, exact: None }
    }

    pub fn minpoly(&self) -> &IntPoly {
        &self.minpoly
    }

    pub fn degree(&self) -> usize {
        self.minpoly.deg().unwrap_or(0)
    }

    pub fn interval(&self) -> (&Rat, &Rat) {
        (&self.lo, &self.hi)
    }

    pub fn is_rational(&self) -> bool {
        self.exact.is_some()
    }

    pub fn rational(&self) -> Option<&Rat> {
        self.exact.as_ref()
    }

    /// One bisection step of an isolating interval for `p`.
    fn bisect(p: &IntPoly, lo: &mut Rat, hi: &mut Rat) {
        let mid = (&*lo + &*hi) / rat(2, 1);
        let fm = p.eval_rat(&mid);
        let fl = p.eval_rat(lo);
        if sign(&fm) == sign(&fl) {
            *lo = mid;
        } else {
            *hi = mid;
        }
    }

    /// Copy with the isolating interval narrowed below `width`.
    pub fn refined(&self, width: &Rat) -> Self {
        let mut out = self.clone();
        if let Some(r) = &self.exact {
            out.lo = r - width / rat(4, 1);
            out.hi = r + width / rat(4, 1);
            return out;
        }
        while &(&out.hi - &out.lo) >= width {
            Self::bisect(&self.minpoly, &mut out.lo, &mut out.hi);
        }
        out
    }

    /// Sign of f(θ) for this number θ, decided exactly.
    pub fn sign_of(&self, f: &RatPoly) -> Ordering {
        if let Some(r) = &self.exact {
            return sign(&f.eval(r));
        }
        let f = f.rem(&self.minpoly.to_rat());
        if f.is_zero() {
            return Ordering::Equal;
        }
        let (mut lo, mut hi) = (self.lo.clone(), self.hi.clone());
        loop {
            let mid = (&lo + &hi) / rat(2, 1);
            let v = f.eval(&mid);
            if v.abs() > deviation_bound(&f, &lo, &hi) {
                return sign(&v);
            }
            Self::bisect(&self.minpoly, &mut lo, &mut hi);
        }
    }

    pub fn cmp_rat(&self, r: &Rat) -> Ordering {
        self.sign_of(&RatPoly::new(vec![-r.clone(), Rat::one()]))
    }

    pub fn exact_cmp(&self, o: &AlgebraicReal) -> Ordering {
        match (&self.exact, &o.exact) {
            (Some(a), Some(b)) => return a.cmp(b),
            (Some(a), None) => return o.cmp_rat(a).reverse(),
            (None, Some(b)) => return self.cmp_rat(b),
            _ => {}
        }
        let same = self.minpoly == o.minpoly;
        let (mut a, mut b) = (self.clone(), o.clone());
        loop {
            if a.hi < b.lo {
                return Ordering::Less;
            }
            if b.hi < a.lo {
                return Ordering::Greater;
            }
            if same {
                let lo = a.lo.clone().min(b.lo.clone());
                let hi = a.hi.clone().max(b.hi.clone());
                if sturm_count(&self.minpoly, &lo, &hi) == 1 {
                    return Ordering::Equal;
                }
            }
            Self::bisect(&a.minpoly, &mut a.lo, &mut a.hi);
            Self::bisect(&b.minpoly, &mut b.lo, &mut b.hi);
        }
    }

    /// 1/θ for nonzero θ.
    pub fn recip(&self) -> AlgebraicReal {
        if let Some(r) = &self.exact {
            return Self::from_rational(r.recip());
        }
        let mut x = self.clone();
        while !(x.lo.is_positive() || x.hi.is_negative()) {
            Self::bisect(&self.minpoly, &mut x.lo, &mut x.hi);
        }
        let d = self.degree();
        let rev = self.minpoly.reverse(d).primitive_part();
        AlgebraicReal::from_isolating(rev, x.hi.recip(), x.lo.recip()).normalized()
    }

    fn normalized(mut self) -> Self {
        if self.lo > self.hi {
            std::mem::swap(&mut self.lo, &mut self.hi);
        }
        self
    }

    pub fn to_f64(&self) -> f64 {
        if let Some(r) = &self.exact {
            return r.to_f64().unwrap_or(f64::NAN);
        }
        let x = self.refined(&rat(1, 1 << 60));
        ((&x.lo + &x.hi) / rat(2, 1)).to_f64().unwrap_or(f64::NAN)
    }

    /// Exportable description with decimal-string bounds.
    pub fn describe(&self) -> AlgebraicRealView {
        let x = self.refined(&rat(1, 1 << 40));
        AlgebraicRealView {
            minpoly: self.minpoly.to_string(),
            lo: rat_to_string(&x.lo),
            hi: rat_to_string(&x.hi),
            exact: self.exact.as_ref().map(rat_to_string),
            approx: format!("{:.12}", self.to_f64()),
        }
    }
}

/// The unique root of `f` in (0, 1], carried by the irreducible factor of `f`
/// that vanishes there.
pub fn isolate_positive_root(f: &IntPoly) -> ExactResult<AlgebraicReal> {
    let (zero, one) = (Rat::zero(), Rat::one());
    for (g, _) in factor_over_z(f)?.factors {
        if g.deg() == Some(1) {
            let r = Rat::new(-g.coeff(0), g.coeff(1));
            if r > zero && r <= one {
                return Ok(AlgebraicReal::from_rational(r));
            }
            continue;
        }
        let (g0, g1) = (g.eval_rat(&zero), g.eval_rat(&one));
        if !g0.is_zero() && !g1.is_zero() && sign(&g0) != sign(&g1) {
            return Ok(AlgebraicReal::from_isolating(g, zero, one));
        }
    }
    Err(ExactError::NoRootInUnitInterval)
}

impl PartialEq for AlgebraicReal {
    fn eq(&self, o: &Self) -> bool {
        self.exact_cmp(o) == Ordering::Equal
    }
}

#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct AlgebraicRealView {
    pub minpoly: String,
    pub lo: String,
    pub hi: String,
    pub exact: Option<String>,
    pub approx: String,
}

impl fmt::Display for AlgebraicReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.exact {
            Some(r) => write!(f, "{}", rat_to_string(r)),
            None => write!(f, "root of {} near {:.10}", self.minpoly, self.to_f64()),
        }
    }
}
