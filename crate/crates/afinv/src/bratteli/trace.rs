//! The trace state gives a minimal projection s_γs_γ* the value p^γ = a^{L(γ)}
//! with a = e^{−β} = 1/λ, so node (n, m) carries a^{n+m} = aⁿ·α_m.

use super::diagram::build_diagram;
use super::BratteliError;
use crate::exactalg::numfield::FieldHandle;
use crate::exactalg::{FieldElem, Int, Rat};
use crate::specimen::Specimen;
use crate::spectral::perron;
use num_traits::Zero;
use serde::{ser::SerializeSeq, Serialize, Serializer};

fn rendered<S: Serializer>(v: &[FieldElem], s: S) -> Result<S::Ok, S::Error> {
    let mut seq = s.serialize_seq(Some(v.len()))?;
    for x in v {
        seq.serialize_element(&x.render("a"))?;
    }
    seq.end()
}

#[derive(Debug, Clone, Serialize)]
pub struct TraceLevel {
    pub level: usize,
    #[serde(serialize_with = "crate::exactalg::strser::ints")]
    pub dims: Vec<Int>,
    /// v^{(n)}_m, exact in ℚ(a).
    #[serde(serialize_with = "rendered")]
    pub values: Vec<FieldElem>,
}

impl TraceLevel {
    /// ⟨dims, v⟩, which is 1 for a unital trace.
    pub fn total(&self) -> FieldElem {
        let zero = self.values[0].field().rat(Rat::zero());
        self.dims
            .iter()
            .zip(&self.values)
            .fold(zero, |acc, (d, v)| &acc + &v.scale(&Rat::from_integer(d.clone())))
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct TraceProfile {
    pub stabilization: usize,
    pub levels: Vec<TraceLevel>,
}

/// Trace values for every stabilized level up to `depth`.
pub fn trace_profile(l: &[u64], depth: usize) -> Result<TraceProfile, BratteliError> {
    let d = build_diagram(l, depth)?;
    let stab = d.stabilization.expect("build_diagram reports stabilization");
    let pd = perron(&Specimen::from_l(l)?)?;
    let levels = d.levels[stab..]
        .iter()
        .map(|lv| {
            let an = pd.field.generator().pow(lv.level as i64);
            TraceLevel { level: lv.level, dims: lv.dims.clone(), values: pd.alpha.iter().map(|x| &an * x).collect() }
        })
        .collect();
    Ok(TraceProfile { stabilization: stab, levels })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::rat;

    /// v^{(n)}·J computed directly.
    fn times_j(v: &[FieldElem], l: &[u64]) -> Vec<FieldElem> {
        let j = Specimen::from_l(l).unwrap().matrix();
        (0..v.len())
            .map(|c| {
                let zero = v[0].field().rat(Rat::zero());
                (0..v.len()).fold(zero, |acc, r| &acc + &v[r].scale(&Rat::from_integer(j.get(r, c).clone())))
            })
            .collect()
    }

    #[test]
    fn car_values() {
        let p = trace_profile(&[1, 1], 8).unwrap();
        for lv in &p.levels {
            assert_eq!(lv.values[0].to_rational(), Some(rat(1, 1 << lv.level)));
        }
    }

    #[test]
    fn consistency_and_unitality() {
        for l in [&[1u64, 2][..], &[2, 3], &[2, 2, 3], &[1, 3, 3, 3, 4, 4], &[1, 2, 4]] {
            let p = trace_profile(l, 16).unwrap();
            for lv in &p.levels {
                assert!(lv.total().is_one(), "L = {l:?}, level {}", lv.level);
            }
            for w in p.levels.windows(2) {
                assert_eq!(times_j(&w[1].values, l), w[0].values);
            }
        }
    }

    #[test]
    fn rational_eigenvalue_two() {
        // L = {1,3,3,3,4,4} has λ = 2
        let p = trace_profile(&[1, 3, 3, 3, 4, 4], 12).unwrap();
        for lv in &p.levels {
            let want: Vec<_> = (0..4).map(|m| Some(rat(1, 1 << (lv.level + m)))).collect();
            let got: Vec<_> = lv.values.iter().map(|x| x.to_rational()).collect();
            assert_eq!(got, want);
        }
    }
}
