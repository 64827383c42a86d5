//! Presentation of F(J) = G/ℤᴺ by the generators x_j = [J⁻ʲe_N] (j ≥ 1).
//!
//! Writing g_j = J⁻ʲe_N for all j ≥ 1−N (so g_{−k} = e_{N−k}), the identity
//! m_N·g_{N+i} = g_i − m₁g_{i+1} − ⋯ − m_{N−1}g_{N+i−1} holds exactly. Modulo
//! ℤᴺ the generators with j ≤ 0 vanish.

use super::companion::{is_integral, unit, Companion};
use crate::exactalg::{strser, Int, Rat};
use crate::spectral::integral_lambda;
use crate::specimen::Specimen;
use num_traits::{One, Signed, Zero};
use serde::Serialize;
use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct QuotientRelation {
    /// The relation reads `lhs_coef·x_index = Σ c·x_j` over `rhs`.
    pub index: usize,
    #[serde(serialize_with = "strser::int")]
    pub lhs_coef: Int,
    #[serde(serialize_with = "strser::int_index_pairs")]
    pub rhs: Vec<(Int, usize)>,
    pub verified: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct QuotientTable {
    pub depth: usize,
    pub relations: Vec<QuotientRelation>,
    /// m·x₁ = 0 and m·x_i = x_{i−1}, present when λ = m_N.
    pub scaling: Option<Vec<QuotientRelation>>,
}

impl QuotientTable {
    pub fn all_verified(&self) -> bool {
        self.relations.iter().chain(self.scaling.iter().flatten()).all(|r| r.verified)
    }
}

impl fmt::Display for QuotientRelation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}x{} = ", self.lhs_coef, self.index)?;
        if self.rhs.is_empty() {
            return write!(f, "0");
        }
        for (k, (c, j)) in self.rhs.iter().enumerate() {
            let mag = c.abs();
            let sign = if c.is_negative() { "-" } else { "+" };
            match (k, c.is_negative()) {
                (0, false) => {}
                (0, true) => write!(f, "-")?,
                _ => write!(f, " {sign} ")?,
            }
            if !mag.is_one() {
                write!(f, "{mag}")?;
            }
            write!(f, "x{j}")?;
        }
        Ok(())
    }
}

/// g_j = J⁻ʲe_N for j ≥ 1−N.
struct Generators {
    c: Companion,
    n: usize,
    positive: Vec<Vec<Rat>>,
}

impl Generators {
    fn new(s: &Specimen) -> Self {
        Generators { c: Companion::of(s), n: s.n(), positive: vec![unit(s.n(), s.n() - 1)] }
    }

    fn get(&mut self, j: i64) -> Vec<Rat> {
        if j <= 0 {
            return unit(self.n, (self.n as i64 - 1 + j) as usize);
        }
        while self.positive.len() <= j as usize {
            let next = self.c.apply_inv(self.positive.last().unwrap());
            self.positive.push(next);
        }
        self.positive[j as usize].clone()
    }
}

fn combine(terms: &[(Int, Vec<Rat>)], n: usize) -> Vec<Rat> {
    let mut out = vec![Rat::zero(); n];
    for (c, v) in terms {
        let c = Rat::from_integer(c.clone());
        for (o, x) in out.iter_mut().zip(v) {
            *o += &c * x;
        }
    }
    out
}

/// Relations for x_1 … x_depth, each checked exactly.
pub fn quotient_relations(s: &Specimen, depth: usize) -> QuotientTable {
    assert!(depth >= 1, "depth must be positive");
    let n = s.n() as i64;
    let mn = s.m_n();
    let mut gens = Generators::new(s);
    let mut relations = Vec::with_capacity(depth);
    for j in 1..=depth as i64 {
        let i = j - n;
        // exact identity over all indices, then the image modulo ℤᴺ
        let mut exact = vec![(mn.clone(), gens.get(j))];
        exact.push((-Int::one(), gens.get(i)));
        let mut rhs = Vec::new();
        if i >= 1 {
            rhs.push((Int::one(), i as usize));
        }
        for k in 1..n {
            let mk = s.mj(k as usize);
            if mk.is_zero() {
                continue;
            }
            exact.push((mk.clone(), gens.get(i + k)));
            if i + k >= 1 {
                rhs.push((-mk, (i + k) as usize));
            }
        }
        let exact_ok = combine(&exact, s.n()).iter().all(|x| x.is_zero());
        let mut modular: Vec<(Int, Vec<Rat>)> = vec![(mn.clone(), gens.get(j))];
        modular.extend(rhs.iter().map(|(c, idx)| (-c, gens.get(*idx as i64))));
        let mod_ok = is_integral(&combine(&modular, s.n()));
        relations.push(QuotientRelation {
            index: j as usize,
            lhs_coef: mn.clone(),
            rhs,
            verified: exact_ok && mod_ok,
        });
    }

    let scaling = (integral_lambda(s).as_ref() == Some(&mn)).then(|| {
        (1..=depth as i64)
            .map(|j| {
                let mut terms = vec![(mn.clone(), gens.get(j))];
                let mut rhs = Vec::new();
                if j >= 2 {
                    terms.push((-Int::one(), gens.get(j - 1)));
                    rhs.push((Int::one(), (j - 1) as usize));
                }
                QuotientRelation {
                    index: j as usize,
                    lhs_coef: mn.clone(),
                    rhs,
                    verified: is_integral(&combine(&terms, s.n())),
                }
            })
            .collect()
    });
    QuotientTable { depth, relations, scaling }
}
