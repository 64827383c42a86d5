//! Elementary invariants that every isomorphism preserves.

use super::bundle::{bundle, InvariantBundle};
use super::verdict::{Outcome, TraceEntry, Verdict};
use super::ClassifyError;
use crate::specimen::Specimen;
use std::collections::BTreeSet;
use std::fmt::Debug;

fn fmt_set(s: &BTreeSet<crate::exactalg::Int>) -> String {
    let v: Vec<String> = s.iter().map(|p| p.to_string()).collect();
    format!("{{{}}}", v.join(","))
}

pub fn necessary_tests(s1: &Specimen, s2: &Specimen) -> Result<Verdict, ClassifyError> {
    Ok(necessary_on_bundles(&bundle(s1)?, &bundle(s2)?))
}

pub(crate) fn necessary_on_bundles(b1: &InvariantBundle, b2: &InvariantBundle) -> Verdict {
    let mut trace = Vec::new();
    macro_rules! check {
        ($name:expr, $x:expr, $y:expr, $show:expr) => {
            let (x, y) = ($x, $y);
            if x != y {
                let detail = format!("{} vs {}", $show(&x), $show(&y));
                trace.push(TraceEntry::new($name, Outcome::Decided, detail.clone()));
                return Verdict::non_isomorphic(format!("{} differs: {}", $name, detail), trace);
            }
            trace.push(TraceEntry::new($name, Outcome::Equal, $show(&x)));
        };
    }
    fn dbg<T: Debug>(x: &T) -> String {
        format!("{x:?}")
    }
    check!("N", b1.n, b2.n, dbg);
    check!("D", b1.d, b2.d, dbg);
    check!("Prim(m_N)", &b1.prim_m_n, &b2.prim_m_n, |s: &&BTreeSet<_>| fmt_set(s));
    check!("Prim(R_D)", &b1.prim_r_d, &b2.prim_r_d, |s: &&BTreeSet<_>| fmt_set(s));
    check!("Prim(Q_(N-D))", &b1.prim_q, &b2.prim_q, |s: &&BTreeSet<_>| fmt_set(s));
    for (p, d1) in &b1.torsion {
        if let Some(d2) = b2.torsion.get(p) {
            check!(&format!("dim G0 ⊗ Z_{p}"), d1, d2, dbg);
        }
    }
    if b1.lambda_eq_mn() && b2.lambda_eq_mn() {
        let show = |x: &&Option<crate::exactalg::Int>| x.as_ref().map(|v| v.to_string()).unwrap_or_default();
        check!("I(J)", &b1.i_j, &b2.i_j, show);
    }
    Verdict::inconclusive(trace)
}
