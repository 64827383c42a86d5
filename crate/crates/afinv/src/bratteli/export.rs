//! JSON and DOT forms of a diagram. Both carry enough to rebuild it exactly.

use super::diagram::{Diagram, Level};
use super::BratteliError;
use crate::exactalg::{Int, IntMatrix};
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use std::fmt::Write;

/// Parallel edges are drawn up to this multiplicity; above it one labeled edge.
const MAX_PARALLEL: u32 = 4;

#[derive(Serialize, Deserialize)]
struct LevelJson {
    level: usize,
    dims: Vec<String>,
}

#[derive(Serialize, Deserialize)]
struct DiagramJson {
    #[serde(rename = "L")]
    weights: Vec<u64>,
    #[serde(rename = "N")]
    n: usize,
    levels: Vec<LevelJson>,
    /// (source level, from m, to m, multiplicity).
    edges: Vec<(usize, usize, usize, String)>,
    stabilization: Option<usize>,
}

fn parse_int(s: &str) -> Result<Int, BratteliError> {
    s.trim().parse().map_err(|_| BratteliError::Parse(format!("bad integer {s:?}")))
}

/// Fills the incidence matrices from (source level, from, to, multiplicity).
fn assemble(
    weights: Vec<u64>,
    n: usize,
    levels: Vec<Level>,
    edges: &[(usize, usize, usize, Int)],
    stabilization: Option<usize>,
) -> Result<Diagram, BratteliError> {
    let steps = levels.len().saturating_sub(1);
    let mut incidence = vec![IntMatrix::zeros(n, n); steps];
    for (lv, from, to, mult) in edges {
        let k = levels
            .iter()
            .position(|l| l.level == *lv)
            .filter(|&k| k < steps)
            .ok_or_else(|| BratteliError::Parse(format!("edge from unknown level {lv}")))?;
        if *from >= n || *to >= n {
            return Err(BratteliError::Parse(format!("node index out of range in edge at level {lv}")));
        }
        let v = incidence[k].get(*to, *from) + mult;
        incidence[k].set(*to, *from, v);
    }
    Ok(Diagram { weights, n, levels, incidence, stabilization })
}

pub fn to_json(d: &Diagram) -> String {
    let j = DiagramJson {
        weights: d.weights.clone(),
        n: d.n,
        levels: d
            .levels
            .iter()
            .map(|l| LevelJson { level: l.level, dims: l.dims.iter().map(|x| x.to_string()).collect() })
            .collect(),
        edges: d.edges().into_iter().map(|e| (e.level, e.from, e.to, e.multiplicity.to_string())).collect(),
        stabilization: d.stabilization,
    };
    serde_json::to_string_pretty(&j).expect("diagram serializes")
}

pub fn from_json(s: &str) -> Result<Diagram, BratteliError> {
    let j: DiagramJson = serde_json::from_str(s).map_err(|e| BratteliError::Parse(e.to_string()))?;
    let mut levels = Vec::with_capacity(j.levels.len());
    for l in j.levels {
        let dims = l.dims.iter().map(|x| parse_int(x)).collect::<Result<Vec<_>, _>>()?;
        if dims.len() != j.n {
            return Err(BratteliError::Parse(format!("level {} has {} nodes, expected {}", l.level, dims.len(), j.n)));
        }
        levels.push(Level { level: l.level, dims });
    }
    let edges = j
        .edges
        .iter()
        .map(|(lv, f, t, m)| Ok((*lv, *f, *t, parse_int(m)?)))
        .collect::<Result<Vec<_>, BratteliError>>()?;
    assemble(j.weights, j.n, levels, &edges, j.stabilization)
}

fn join<T: ToString>(v: &[T]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

/// Levels top-down, node ids `n{level}m{index}`, absent nodes omitted.
pub fn to_dot(d: &Diagram) -> String {
    let mut out = String::new();
    let levels: Vec<usize> = d.levels.iter().map(|l| l.level).collect();
    let stab = d.stabilization.map(|s| s.to_string()).unwrap_or_default();
    writeln!(out, "digraph bratteli {{").unwrap();
    writeln!(
        out,
        "  graph [rankdir=TB, weights=\"{}\", N=\"{}\", levels=\"{}\", stabilization=\"{stab}\"];",
        join(&d.weights),
        d.n,
        join(&levels)
    )
    .unwrap();
    writeln!(out, "  node [shape=circle];").unwrap();
    for l in &d.levels {
        let ids: Vec<String> = (0..d.n).filter(|&m| l.present(m)).map(|m| format!("n{}m{m}", l.level)).collect();
        for m in (0..d.n).filter(|&m| l.present(m)) {
            writeln!(out, "  n{}m{m} [label=\"{}\"];", l.level, l.dims[m]).unwrap();
        }
        writeln!(out, "  {{ rank=same; {} }}", ids.join("; ")).unwrap();
    }
    for e in d.edges() {
        let next = d.levels[d.levels.iter().position(|l| l.level == e.level).unwrap() + 1].level;
        let (a, b) = (format!("n{}m{}", e.level, e.from), format!("n{next}m{}", e.to));
        match e.multiplicity.to_u32().filter(|&k| k <= MAX_PARALLEL) {
            Some(k) => {
                for _ in 0..k {
                    writeln!(out, "  {a} -> {b};").unwrap();
                }
            }
            None => writeln!(out, "  {a} -> {b} [label=\"{}\"];", e.multiplicity).unwrap(),
        }
    }
    writeln!(out, "}}").unwrap();
    out
}

fn attr<'a>(line: &'a str, key: &str) -> Option<&'a str> {
    let start = line.find(&format!("{key}=\""))? + key.len() + 2;
    let len = line[start..].find('"')?;
    Some(&line[start..start + len])
}

fn node_id(s: &str) -> Result<(usize, usize), BratteliError> {
    let bad = || BratteliError::Parse(format!("bad node id {s:?}"));
    let rest = s.trim().strip_prefix('n').ok_or_else(bad)?;
    let (l, m) = rest.split_once('m').ok_or_else(bad)?;
    Ok((l.parse().map_err(|_| bad())?, m.parse().map_err(|_| bad())?))
}

fn list<T: std::str::FromStr>(s: &str) -> Result<Vec<T>, BratteliError> {
    if s.is_empty() {
        return Ok(Vec::new());
    }
    s.split(',').map(|x| x.parse().map_err(|_| BratteliError::Parse(format!("bad list {s:?}")))).collect()
}

/// Reads the output of `to_dot`.
pub fn from_dot(s: &str) -> Result<Diagram, BratteliError> {
    let header = s
        .lines()
        .find(|l| l.trim_start().starts_with("graph ["))
        .ok_or_else(|| BratteliError::Parse("missing graph attributes".into()))?;
    let need = |k: &str| attr(header, k).ok_or_else(|| BratteliError::Parse(format!("missing {k}")));
    let weights: Vec<u64> = list(need("weights")?)?;
    let n: usize = need("N")?.parse().map_err(|_| BratteliError::Parse("bad N".into()))?;
    let level_ids: Vec<usize> = list(need("levels")?)?;
    let stab = need("stabilization")?;
    let stabilization = if stab.is_empty() {
        None
    } else {
        Some(stab.parse().map_err(|_| BratteliError::Parse("bad stabilization".into()))?)
    };
    let mut levels: Vec<Level> = level_ids.iter().map(|&l| Level { level: l, dims: vec![Int::zero(); n] }).collect();
    let mut edges = Vec::new();
    for line in s.lines().map(str::trim) {
        if let Some((a, b)) = line.split_once("->") {
            let b = b.split(['[', ';']).next().unwrap_or("");
            let ((la, fa), (_, tb)) = (node_id(a)?, node_id(b)?);
            let mult = match attr(line, "label") {
                Some(x) => parse_int(x)?,
                None => Int::from(1),
            };
            edges.push((la, fa, tb, mult));
        } else if line.starts_with('n') && line.contains("[label=") {
            let (l, m) = node_id(line.split('[').next().unwrap())?;
            let dim = parse_int(attr(line, "label").unwrap())?;
            let lv = levels
                .iter_mut()
                .find(|x| x.level == l)
                .ok_or_else(|| BratteliError::Parse(format!("node at unknown level {l}")))?;
            if m >= n {
                return Err(BratteliError::Parse(format!("node index {m} out of range")));
            }
            lv.dims[m] = dim;
        }
    }
    assemble(weights, n, levels, &edges, stabilization)
}
