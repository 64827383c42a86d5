//! Integer and rational helpers: prime supports, valuations, localizations.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::collections::BTreeSet;

pub type Int = BigInt;
pub type Rat = BigRational;

pub fn big(n: i64) -> Int {
    BigInt::from(n)
}

pub fn rat(n: i64, d: i64) -> Rat {
    BigRational::new(big(n), big(d))
}

pub fn rat_int(n: &Int) -> Rat {
    BigRational::from_integer(n.clone())
}

/// Distinct prime divisors of |n| in increasing order; empty for 0 and ±1.
pub fn prime_support(n: &Int) -> BTreeSet<Int> {
    let mut out = BTreeSet::new();
    let mut n = n.abs();
    if n.is_zero() {
        return out;
    }
    let two = big(2);
    while n.is_even() {
        out.insert(two.clone());
        n /= &two;
    }
    let mut d = big(3);
    while &d * &d <= n {
        if (&n % &d).is_zero() {
            out.insert(d.clone());
            while (&n % &d).is_zero() {
                n /= &d;
            }
        }
        d += 2;
    }
    if n > One::one() {
        out.insert(n);
    }
    out
}

/// Exponent of the prime `p` in nonzero `n`.
pub fn valuation(n: &Int, p: &Int) -> u32 {
    assert!(!n.is_zero(), "valuation of zero");
    let mut n = n.abs();
    let mut v = 0;
    while (&n % p).is_zero() {
        n /= p;
        v += 1;
    }
    v
}

/// `n` with every prime of `primes` divided out.
pub fn strip_primes(n: &Int, primes: &BTreeSet<Int>) -> Int {
    let mut n = n.abs();
    for p in primes {
        while !n.is_zero() && (&n % p).is_zero() {
            n /= p;
        }
    }
    n
}

/// Whether `r` lies in ℤ[1/S]: its denominator has no prime outside S.
pub fn in_localization(r: &Rat, primes: &BTreeSet<Int>) -> bool {
    strip_primes(r.denom(), primes).is_one()
}

/// Whether `r` is a unit of ℤ[1/S], i.e. ±(product of primes of S).
pub fn is_localized_unit(r: &Rat, primes: &BTreeSet<Int>) -> bool {
    !r.is_zero() && strip_primes(r.numer(), primes).is_one() && in_localization(r, primes)
}

/// All positive divisors of nonzero `n`, or `None` when |n| is too large to
/// enumerate quickly.
pub fn divisors(n: &Int) -> Option<Vec<Int>> {
    let n = n.abs();
    if n.is_zero() || n.bits() > 48 {
        return None;
    }
    let v = n.to_u64()?;
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1u64;
    while d * d <= v {
        if v % d == 0 {
            small.push(big(d as i64));
            if d * d != v {
                large.push(big((v / d) as i64));
            }
        }
        d += 1;
    }
    large.reverse();
    small.extend(large);
    Some(small)
}

pub fn gcd_all<'a>(it: impl IntoIterator<Item = &'a Int>) -> Int {
    it.into_iter().fold(Int::zero(), |g, x| g.gcd(x))
}

pub fn lcm(a: &Int, b: &Int) -> Int {
    a.lcm(b)
}

/// Exact integer power.
pub fn ipow(b: &Int, e: u32) -> Int {
    num_traits::pow(b.clone(), e as usize)
}

pub fn rpow(b: &Rat, e: i64) -> Rat {
    if e >= 0 {
        num_traits::pow(b.clone(), e as usize)
    } else {
        num_traits::pow(b.recip(), (-e) as usize)
    }
}

/// Canonical text form: `n` for integers, `n/d` otherwise.
pub fn rat_to_string(r: &Rat) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn parse_rat(s: &str) -> Option<Rat> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: Int = n.trim().parse().ok()?;
            let d: Int = d.trim().parse().ok()?;
            if d.is_zero() {
                None
            } else {
                Some(BigRational::new(n, d))
            }
        }
        None => s.parse::<Int>().ok().map(BigRational::from_integer),
    }
}

/// Ceiling of p/q for positive q.
pub fn ceil_div(p: u64, q: u64) -> u64 {
    p.div_ceil(q)
}
