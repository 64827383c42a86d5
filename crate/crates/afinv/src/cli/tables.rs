//! Fixture tables regenerated by `reproduce` and compared byte for byte with
//! the checked-in JSON.

use super::{exit, to_json, CliError, Format};
use crate::classify::{
    bundle, check_witness, compare, conjugated_companion_example, decide_lambda_eq_mn, lambda_eq_mn_witness,
    verify_shift_equivalence, IsomorphismWitness, DEFAULT_WITNESS_DEPTH,
};
use crate::decomp::{torsion_tensor, triangular_form};
use crate::enumerate::{
    classify_family, enumerate_family, i_collisions, ClassifyOptions, FamilyClassification, FamilySpec,
};
use crate::exactalg::{strser, Int, IntMatrix};
use crate::specimen::Specimen;
use crate::spectral::perron;
use serde::Serialize;
use serde_json::{json, Value};
use std::path::{Path, PathBuf};

pub const TABLES: [&str; 7] =
    ["appexa-n2", "appexa-n3", "appexa-n4", "clmn-48-54", "invariant-table", "brunt-shift-equiv", "exa1-exa2"];

fn sp(m: &[u64]) -> Specimen {
    Specimen::from_m(m.to_vec()).expect("fixture specimens are valid")
}

#[derive(Serialize)]
struct FamilyTable {
    lambda: u64,
    #[serde(rename = "N")]
    n: usize,
    /// Column vectors before the gcd filter.
    total: usize,
    valid: usize,
    /// 1-based positions of the gcd violators in enumeration order.
    removed_positions: Vec<usize>,
    classification: FamilyClassification,
}

fn family_table(n: usize, jobs: Option<usize>) -> Result<Value, CliError> {
    let all = enumerate_family(&FamilySpec { lambda: 2, n, include_gcd_violations: true })?;
    let removed_positions = all.iter().enumerate().filter(|(_, e)| !e.gcd_ok).map(|(i, _)| i + 1).collect();
    let classification = classify_family(&FamilySpec::new(2, n), &ClassifyOptions { jobs, ..Default::default() })?;
    let t = FamilyTable {
        lambda: 2,
        n,
        total: all.len(),
        valid: classification.specimens.len(),
        removed_positions,
        classification,
    };
    Ok(serde_json::to_value(t).expect("table serializes"))
}

fn collision_table() -> Result<Value, CliError> {
    let collisions = i_collisions(48, 54, 3)?;
    let first = collisions.first().expect("the 48/54 table is nonempty");
    let (s1, s2) = (&first.first.specimen, &first.second.specimen);
    let verdict = decide_lambda_eq_mn(s1, s2)?;
    let witness = lambda_eq_mn_witness(s1, s2)?;
    let witness_check = match &witness {
        Some(w) => Some(check_witness(s1, s2, w, DEFAULT_WITNESS_DEPTH)?),
        None => None,
    };
    let reverse = lambda_eq_mn_witness(s2, s1)?;
    // the recipe matrix for c = 1292 with the + sign
    let stated = IsomorphismWitness::AEta {
        a: IntMatrix::from_i64(&[&[2585, -38773], &[1292, -19379]]),
        eta: vec![],
        c: Some(Int::from(1292)),
    };
    let stated_check = check_witness(s1, s2, &stated, DEFAULT_WITNESS_DEPTH)?;
    Ok(json!({
        "lambda": [48, 54],
        "N": 3,
        "collisions": collisions,
        "first_pair": {
            "verdict": verdict.kind,
            "reason": verdict.reason,
            "witness": witness,
            "witness_check": witness_check,
            "reverse_witness": reverse,
        },
        "c_1292": { "witness": stated, "check": stated_check },
    }))
}

#[derive(Serialize)]
struct ParameterRow {
    #[serde(serialize_with = "strser::display")]
    specimen: Specimen,
    weights: Vec<u64>,
    /// The table also lists one column whose support has gcd 2.
    gcd_ok: bool,
    #[serde(rename = "N")]
    n: usize,
    #[serde(rename = "D")]
    d: usize,
    lambda: String,
    #[serde(rename = "m_N", serialize_with = "strser::int")]
    m_n: Int,
    #[serde(rename = "R_D", serialize_with = "strser::int")]
    r_d: Int,
    tau_v: String,
    #[serde(rename = "I_J", serialize_with = "strser::opt_int")]
    i_j: Option<Int>,
}

#[derive(Serialize)]
struct TorsionRow {
    label: char,
    #[serde(serialize_with = "strser::display")]
    specimen: Specimen,
    p0: String,
    dim_z2: Option<usize>,
}

/// Rank-4, λ = 2 specimens with m₄ = 4 and Prim(m₄/2) = {2}, in table order.
pub(crate) const RANK4_GROUP2: [[u64; 4]; 8] =
    [[1, 1, 0, 4], [1, 0, 2, 4], [1, 0, 0, 8], [0, 2, 2, 4], [0, 1, 4, 4], [0, 1, 2, 8], [0, 0, 6, 4], [0, 0, 4, 8]];

/// Rows of the parameter table in order.
pub(crate) const PARAMETER_ROWS: [&[u64]; 12] = [
    &[2],
    &[1, 1],
    &[0, 0, 0, 2, 1, 0, 0, 1],
    &[0, 1, 1],
    &[0, 1, 1, 0, 1],
    &[1, 0, 0, 0, 1],
    &[1, 0, 4],
    &[0, 3, 2],
    &[1, 0, 3, 2],
    &[0, 3, 1, 2],
    &[1, 0, 2, 4],
    &[0, 3, 0, 4],
];

fn invariant_table() -> Result<Value, CliError> {
    let rows = PARAMETER_ROWS
        .iter()
        .map(|m| {
            let s = Specimen::from_m_imprimitive(m.to_vec())?;
            let b = bundle(&s)?;
            Ok(ParameterRow {
                weights: b.specimen.weights(),
                gcd_ok: s.is_primitive(),
                specimen: b.specimen,
                n: b.n,
                d: b.d,
                lambda: b.lambda,
                m_n: b.m_n,
                r_d: b.r_d,
                tau_v: b.tau_v,
                i_j: b.i_j,
            })
        })
        .collect::<Result<Vec<_>, CliError>>()?;
    let m4_two: Vec<Value> = enumerate_family(&FamilySpec::new(2, 4))?
        .into_iter()
        .filter(|e| e.specimen.m()[3] == 2)
        .map(|e| {
            let tau = perron(&e.specimen)?.tau_v.render("a");
            Ok(json!({ "specimen": e.specimen.to_string(), "tau_v": tau }))
        })
        .collect::<Result<_, CliError>>()?;
    let torsion = RANK4_GROUP2
        .iter()
        .zip('a'..)
        .map(|(m, label)| {
            let s = sp(m);
            let p0 = triangular_form(&s)?.p0.to_string();
            let dim_z2 = torsion_tensor(&s, 2)?.dimension;
            Ok(TorsionRow { label, specimen: s, p0, dim_z2 })
        })
        .collect::<Result<Vec<_>, CliError>>()?;
    Ok(json!({ "parameter_rows": rows, "rank4_m4_equals_2": m4_two, "rank4_group2_torsion": torsion }))
}

fn shift_table() -> Value {
    let e = conjugated_companion_example();
    let check = verify_shift_equivalence(&e.a, &e.b, &e.x, &e.y, e.k);
    json!({ "example": e, "check": check })
}

fn example_entry(s: &Specimen) -> Result<Value, CliError> {
    let t = triangular_form(s)?;
    let pd = perron(s)?;
    Ok(json!({
        "specimen": s.to_string(),
        "J": s.matrix(),
        "lambda": pd.lambda_int.as_ref().map(|x| x.to_string()),
        "alpha": pd.alpha.iter().map(|x| x.render("a")).collect::<Vec<_>>(),
        "p_a": t.p_a,
        "p0": t.p0,
        "J0": t.j0,
        "det_J0": t.det_j0().to_string(),
        "kernel_basis": t.kernel_basis().iter().map(|c| c.iter().map(|x| x.to_string()).collect::<Vec<_>>()).collect::<Vec<_>>(),
        "dim_G0_z2": torsion_tensor(s, 2)?.dimension,
    }))
}

fn examples_table() -> Result<Value, CliError> {
    let (s1, s2) = (sp(&[1, 0, 4]), sp(&[0, 3, 2]));
    let v = compare(&s1, &s2)?;
    Ok(json!({
        "examples": [example_entry(&s1)?, example_entry(&s2)?],
        "verdict": { "kind": v.kind, "reason": v.reason },
    }))
}

/// The JSON text of a table.
pub fn render_table(name: &str, jobs: Option<usize>) -> Result<String, CliError> {
    let v = match name {
        "appexa-n2" => family_table(2, jobs)?,
        "appexa-n3" => family_table(3, jobs)?,
        "appexa-n4" => family_table(4, jobs)?,
        "clmn-48-54" => collision_table()?,
        "invariant-table" => invariant_table()?,
        "brunt-shift-equiv" => shift_table(),
        "exa1-exa2" => examples_table()?,
        _ => return Err(CliError::UnknownTable(name.to_string())),
    };
    Ok(to_json(&v))
}

pub fn default_golden_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests").join("golden")
}

fn first_difference(a: &str, b: &str) -> String {
    let (la, lb): (Vec<&str>, Vec<&str>) = (a.lines().collect(), b.lines().collect());
    let i = la.iter().zip(&lb).position(|(x, y)| x != y).unwrap_or(la.len().min(lb.len()));
    format!(
        "first difference at line {}: expected {:?}, generated {:?}",
        i + 1,
        lb.get(i).copied().unwrap_or("<end>"),
        la.get(i).copied().unwrap_or("<end>")
    )
}

pub(super) fn reproduce(
    table: &str,
    golden_dir: Option<&Path>,
    bless: bool,
    jobs: Option<usize>,
    fmt: Format,
) -> Result<(i32, String), CliError> {
    let generated = render_table(table, jobs)?;
    let dir = golden_dir.map(Path::to_path_buf).unwrap_or_else(default_golden_dir);
    let path = dir.join(format!("{table}.json"));
    let io = |source| CliError::Io { path: path.clone(), source };
    if bless {
        std::fs::create_dir_all(&dir).map_err(|source| CliError::Io { path: dir.clone(), source })?;
        std::fs::write(&path, &generated).map_err(io)?;
        return Ok((exit::OK, format!("wrote {}\n", path.display())));
    }
    let expected = std::fs::read_to_string(&path).map_err(io)?;
    if expected != generated {
        return Err(CliError::GoldenMismatch(format!(
            "{table} differs from {}; {}",
            path.display(),
            first_difference(&generated, &expected)
        )));
    }
    let out = match fmt {
        Format::Text => format!("{table}: matches {}\n", path.display()),
        _ => generated,
    };
    Ok((exit::OK, out))
}
