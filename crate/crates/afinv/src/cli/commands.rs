use super::{exit, to_json, CliError, Format};
use crate::bratteli::{self, build_diagram, semigroup, telescope, trace_profile};
use crate::classify::{
    bundle_with_primes, check_witness, compare as compare_specimens, InvariantBundle, IsomorphismWitness, Verdict,
    VerdictKind, WitnessCheck,
};
use crate::enumerate::{classify_family, enumerate_family_with_cap, ClassifyOptions, FamilySpec};
use crate::exactalg::{parse_rat, IntMatrix, Matrix, Rat, RatMatrix};
use crate::specimen::Specimen;
use serde::Serialize;
use serde_json::Value;
use std::fmt::Write;
use std::path::Path;

fn join<T: ToString>(it: impl IntoIterator<Item = T>) -> String {
    it.into_iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

fn check_primes(primes: &[u64]) -> Result<(), CliError> {
    let is_prime = |p: u64| p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d));
    match primes.iter().find(|&&p| !is_prime(p)) {
        Some(p) => Err(CliError::Usage(format!("--primes must list primes only; {p} is not prime"))),
        None => Ok(()),
    }
}

fn bundle_text(b: &InvariantBundle) -> String {
    let mut s = String::new();
    let opt = |x: &Option<_>| x.as_ref().map(|v: &crate::exactalg::Int| v.to_string()).unwrap_or_else(|| "-".into());
    writeln!(s, "specimen        {}", b.specimen).unwrap();
    writeln!(s, "N, D            {}, {}", b.n, b.d).unwrap();
    writeln!(s, "lambda          {}", b.lambda).unwrap();
    writeln!(s, "tau(v)          {}", b.tau_v).unwrap();
    writeln!(s, "I(J)            {}", opt(&b.i_j)).unwrap();
    writeln!(s, "m_N, R_D, Q     {}, {}, {}", b.m_n, b.r_d, b.q_top).unwrap();
    writeln!(s, "Prim(m_N)       {{{}}}", join(&b.prim_m_n)).unwrap();
    writeln!(s, "Prim(R_D)       {{{}}}", join(&b.prim_r_d)).unwrap();
    writeln!(s, "Prim(Q)         {{{}}}", join(&b.prim_q)).unwrap();
    writeln!(s, "ker tau rank    {}", b.ker_tau_rank).unwrap();
    let tors: Vec<String> = b.torsion.iter().map(|(p, d)| format!("{p}:{d}")).collect();
    writeln!(s, "G0 x Z_p dims   {}", tors.join(" ")).unwrap();
    writeln!(s, "split           {:?}", b.split).unwrap();
    s
}

pub(super) fn invariants(specs: &[Specimen], primes: &[u64], fmt: Format) -> Result<(i32, String), CliError> {
    check_primes(primes)?;
    if specs.is_empty() {
        return Err(CliError::Usage("no specimens given".into()));
    }
    let bundles = specs.iter().map(|s| bundle_with_primes(s, primes)).collect::<Result<Vec<_>, _>>()?;
    let out = match fmt {
        Format::Text => bundles.iter().map(bundle_text).collect::<Vec<_>>().join("\n"),
        _ if bundles.len() == 1 => to_json(&bundles[0]),
        _ => to_json(&bundles),
    };
    Ok((exit::OK, out))
}

pub(super) fn verdict_code(kind: VerdictKind) -> i32 {
    match kind {
        VerdictKind::Isomorphic => exit::OK,
        VerdictKind::NonIsomorphic => exit::NON_ISOMORPHIC,
        VerdictKind::Inconclusive => exit::INCONCLUSIVE,
    }
}

#[derive(Serialize)]
struct CompareReport<'a> {
    #[serde(serialize_with = "crate::exactalg::strser::display")]
    a: &'a Specimen,
    #[serde(serialize_with = "crate::exactalg::strser::display")]
    b: &'a Specimen,
    verdict: &'a Verdict,
    witness_check: Option<WitnessCheck>,
}

fn verdict_text(v: &Verdict) -> String {
    let mut s = format!("{:?}\n", v.kind);
    if let Some(r) = &v.reason {
        writeln!(s, "reason: {r}").unwrap();
    }
    for t in &v.trace {
        writeln!(s, "  {} [{:?}] {}", t.test, t.outcome, t.detail).unwrap();
    }
    s
}

pub(super) fn compare(a: &Specimen, b: &Specimen, depth: usize, fmt: Format) -> Result<(i32, String), CliError> {
    let verdict = compare_specimens(a, b)?;
    let witness_check = match &verdict.witness {
        Some(w) => Some(check_witness(a, b, w, depth)?),
        None => None,
    };
    // a witness that fails its own check means a bug, never a verdict
    let code = match &witness_check {
        Some(WitnessCheck::Refuted { .. }) => exit::FAILURE,
        _ => verdict_code(verdict.kind),
    };
    let out = match fmt {
        Format::Text => {
            let mut s = verdict_text(&verdict);
            if let Some(c) = &witness_check {
                writeln!(s, "witness: {c:?}").unwrap();
            }
            s
        }
        _ => to_json(&CompareReport { a, b, verdict: &verdict, witness_check }),
    };
    Ok((code, out))
}

#[derive(Serialize)]
struct EnumerateReport {
    #[serde(flatten)]
    family: FamilySpec,
    count: usize,
    specimens: Vec<crate::enumerate::EnumeratedSpecimen>,
}

pub(super) fn enumerate(
    lambda: u64,
    n: usize,
    classify: bool,
    include_gcd_violations: bool,
    cap: usize,
    jobs: Option<usize>,
    fmt: Format,
) -> Result<(i32, String), CliError> {
    if cap == 0 {
        return Err(CliError::Usage("--cap must be positive".into()));
    }
    let family = FamilySpec { lambda, n, include_gcd_violations };
    if classify {
        if include_gcd_violations {
            return Err(CliError::Usage("--classify needs valid specimens; drop --include-gcd-violations".into()));
        }
        let c = classify_family(&family, &ClassifyOptions { jobs, budget: cap })?;
        let code = if !c.contradictions.is_empty() {
            exit::FAILURE
        } else if !c.inconclusive.is_empty() {
            exit::INCONCLUSIVE
        } else {
            exit::OK
        };
        let out = match fmt {
            Format::Text => {
                let mut s = format!("{} specimens, {} classes\n", c.specimens.len(), c.classes.len());
                for cl in &c.classes {
                    writeln!(s, "{{{}}}", cl.join("; ")).unwrap();
                }
                for (x, y) in &c.inconclusive {
                    writeln!(s, "inconclusive: {x} vs {y}").unwrap();
                }
                s
            }
            _ => to_json(&c),
        };
        return Ok((code, out));
    }
    let specimens = enumerate_family_with_cap(&family, cap)?;
    let out = match fmt {
        Format::Text => specimens
            .iter()
            .map(|e| format!("{}{}\n", e.specimen, if e.gcd_ok { "" } else { "  (gcd > 1)" }))
            .collect(),
        _ => to_json(&EnumerateReport { family, count: specimens.len(), specimens }),
    };
    Ok((exit::OK, out))
}

pub(super) fn diagram(
    spec: &str,
    depth: usize,
    cuts: Option<&[usize]>,
    trace: bool,
    fmt: Format,
) -> Result<(i32, String), CliError> {
    let s: Specimen = spec.parse()?;
    let l = s.weights();
    let full = build_diagram(&l, depth)?;
    let d = match cuts {
        Some(c) => telescope(&full, c)?,
        None => full,
    };
    let sg = semigroup(&l)?;
    let out = match fmt {
        Format::Dot => bratteli::to_dot(&d),
        Format::Text => {
            let mut out = format!(
                "L = {{{}}}, N = {}, gaps = {{{}}}, conductor = {}, stabilization = {}\n",
                join(&l),
                d.n,
                join(&sg.gaps),
                sg.conductor,
                d.stabilization.map(|x| x.to_string()).unwrap_or_else(|| "-".into())
            );
            for lv in &d.levels {
                writeln!(out, "level {:>3}: {}", lv.level, join(&lv.dims)).unwrap();
            }
            out
        }
        Format::Json => {
            let mut v: Value = serde_json::from_str(&bratteli::to_json(&d)).expect("diagram JSON parses");
            v["semigroup"] = serde_json::to_value(&sg).expect("semigroup serializes");
            if trace {
                v["trace"] = serde_json::to_value(trace_profile(&l, depth)?).expect("trace serializes");
            }
            to_json(&v)
        }
    };
    Ok((exit::OK, out))
}

fn bad_witness(msg: impl Into<String>) -> CliError {
    CliError::Usage(format!("witness file: {}", msg.into()))
}

fn parse_entry(v: &Value) -> Result<Rat, CliError> {
    let text = match v {
        Value::String(s) => s.clone(),
        Value::Number(n) => n.to_string(),
        _ => return Err(bad_witness(format!("entry {v} is not a number"))),
    };
    parse_rat(&text).ok_or_else(|| bad_witness(format!("entry {text:?} is not an exact rational")))
}

fn parse_matrix(v: Option<&Value>, name: &str) -> Result<RatMatrix, CliError> {
    let rows = v.and_then(Value::as_array).ok_or_else(|| bad_witness(format!("missing matrix {name}")))?;
    let rows: Vec<Vec<Rat>> = rows
        .iter()
        .map(|r| {
            r.as_array()
                .ok_or_else(|| bad_witness(format!("{name} rows must be arrays")))?
                .iter()
                .map(parse_entry)
                .collect()
        })
        .collect::<Result<_, _>>()?;
    if rows.iter().any(|r| r.len() != rows.len()) {
        return Err(bad_witness(format!("{name} must be square")));
    }
    Ok(Matrix::from_rows(rows))
}

/// Reads the witness shape that `compare` prints.
pub fn parse_witness(text: &str) -> Result<IsomorphismWitness, CliError> {
    let v: Value = serde_json::from_str(text).map_err(|e| bad_witness(e.to_string()))?;
    // accept a compare report or a bare verdict as well as a bare witness
    let v = match v.get("verdict").and_then(|x| x.get("witness")).or_else(|| v.get("witness")) {
        Some(w) => w.clone(),
        None => v,
    };
    match v.get("form").and_then(Value::as_str) {
        Some("lambda") => Ok(IsomorphismWitness::Lambda { lambda: parse_matrix(v.get("Lambda"), "Lambda")? }),
        Some("a_eta") => {
            let a = parse_matrix(v.get("A"), "A")?;
            if !a.is_integral() {
                return Err(bad_witness("A must be an integer matrix"));
            }
            let a: IntMatrix = a.map(|x| x.to_integer());
            let eta = match v.get("eta") {
                None | Some(Value::Null) => Vec::new(),
                Some(Value::Array(xs)) => xs.iter().map(parse_entry).collect::<Result<_, _>>()?,
                Some(_) => return Err(bad_witness("eta must be an array")),
            };
            let c = match v.get("c") {
                None | Some(Value::Null) => None,
                Some(x) => {
                    let r = parse_entry(x)?;
                    if !r.is_integer() {
                        return Err(bad_witness("c must be an integer"));
                    }
                    Some(r.to_integer())
                }
            };
            Ok(IsomorphismWitness::AEta { a, eta, c })
        }
        _ => Err(bad_witness("form must be \"lambda\" or \"a_eta\"")),
    }
}

#[derive(Serialize)]
struct WitnessReport<'a> {
    #[serde(serialize_with = "crate::exactalg::strser::display")]
    a: &'a Specimen,
    #[serde(serialize_with = "crate::exactalg::strser::display")]
    b: &'a Specimen,
    witness: &'a IsomorphismWitness,
    check: WitnessCheck,
}

pub(super) fn witness_check(
    a: &Specimen,
    b: &Specimen,
    path: &Path,
    depth: usize,
    fmt: Format,
) -> Result<(i32, String), CliError> {
    let w = parse_witness(&super::read_text(path)?)?;
    let check = check_witness(a, b, &w, depth)?;
    let code = match &check {
        WitnessCheck::Verified { .. } => exit::OK,
        WitnessCheck::Refuted { .. } => exit::NON_ISOMORPHIC,
        WitnessCheck::Undetermined { .. } => exit::INCONCLUSIVE,
    };
    let out = match fmt {
        Format::Text => match &check {
            WitnessCheck::Verified { depth } => format!("verified to depth {depth}\n"),
            WitnessCheck::Refuted { condition } => format!("refuted: {condition}\n"),
            WitnessCheck::Undetermined { condition } => format!("undetermined: {condition}\n"),
        },
        _ => to_json(&WitnessReport { a, b, witness: &w, check }),
    };
    Ok((code, out))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_lists() {
        assert!(check_primes(&[2, 3, 5, 7, 11]).is_ok());
        assert!(check_primes(&[2, 4]).is_err());
        assert!(check_primes(&[1]).is_err());
    }

    #[test]
    fn witness_forms() {
        let w = parse_witness(r#"{"form":"lambda","Lambda":[["1","0"],[0,"1/2"]]}"#).unwrap();
        let IsomorphismWitness::Lambda { lambda } = w else { panic!() };
        assert_eq!(lambda.get(1, 1), &crate::exactalg::rat(1, 2));
        let w = parse_witness(r#"{"form":"a_eta","A":[["2585","-38773"],["1292","-19379"]],"c":"1292"}"#).unwrap();
        assert!(matches!(w, IsomorphismWitness::AEta { c: Some(_), .. }));
        assert!(parse_witness(r#"{"form":"a_eta","A":[["1/2"]]}"#).is_err());
        assert!(parse_witness(r#"{"form":"lambda","Lambda":[["1","0"]]}"#).is_err());
        assert!(parse_witness(r#"{"form":"other"}"#).is_err());
    }

    #[test]
    fn witness_round_trip_through_compare_output() {
        let (a, b): (Specimen, Specimen) = ("m=4,32".parse().unwrap(), "m=6,16".parse().unwrap());
        let (_, out) = compare(&a, &b, 4, Format::Json).unwrap();
        let w = parse_witness(&out).unwrap();
        assert!(check_witness(&a, &b, &w, 4).unwrap().is_verified());
    }
}
