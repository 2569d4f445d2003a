//! Text and JSON file formats for enumerations, graphs, incidence matrices
//! and resolving sets.  Field elements always serialize as their decimal
//! index.

use std::fmt::Write as _;

use serde_json::{json, Map, Value};

use crate::error::{Error, Result};
use crate::exactla::IncidenceMatrix;
use crate::formulas::FormulaReport;
use crate::forms::PolarSpaceDescriptor;
use crate::graphs::Graph;
use crate::isotropic::Subspace;
use crate::resolving::ResolvingSet;

/// One subspace per line, basis rows joined by ';', coordinates by ','.
/// The header records family,q,d,t,count.
pub fn subspace_list_to_string(
    p: &PolarSpaceDescriptor,
    t: usize,
    list: &[Subspace],
) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "{},{},{},{},{}",
        p.family().code(),
        p.q(),
        p.d(),
        t,
        list.len()
    );
    for s in list {
        let line = s
            .basis()
            .iter()
            .map(|row| {
                row.iter()
                    .map(|x| x.index().to_string())
                    .collect::<Vec<_>>()
                    .join(",")
            })
            .collect::<Vec<_>>()
            .join(";");
        let _ = writeln!(out, "{line}");
    }
    out
}

/// Edge list with a header comment recording family, q and d.
pub fn edge_list_to_string(p: &PolarSpaceDescriptor, g: &Graph) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "# family={} q={} d={}", p.family().code(), p.q(), p.d());
    for (i, j) in g.edges() {
        let _ = writeln!(out, "{i} {j}");
    }
    out
}

/// Parse an edge list written by `edge_list_to_string`.
pub fn parse_edge_list(text: &str) -> Result<Vec<(usize, usize)>> {
    let mut edges = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let mut it = line.split_whitespace();
        let parse = |tok: Option<&str>| -> Result<usize> {
            tok.ok_or_else(|| Error::Parse(format!("edge list line {}: too few fields", lineno + 1)))?
                .parse()
                .map_err(|e| Error::Parse(format!("edge list line {}: {e}", lineno + 1)))
        };
        let i = parse(it.next())?;
        let j = parse(it.next())?;
        edges.push((i, j));
    }
    Ok(edges)
}

/// Dense 0/1 grid with a header row of point indices.
pub fn incidence_dense_to_string(m: &IncidenceMatrix) -> String {
    let mut out = String::new();
    let header: Vec<String> = (0..m.cols()).map(|c| c.to_string()).collect();
    let _ = writeln!(out, "{}", header.join(" "));
    for g in 0..m.rows() {
        for c in 0..m.cols() {
            let _ = write!(out, "{}", m.entry(g, c));
        }
        let _ = writeln!(out);
    }
    out
}

/// Sparse "g p" pair list.
pub fn incidence_pairs_to_string(m: &IncidenceMatrix) -> String {
    let mut out = String::new();
    for g in 0..m.rows() {
        for c in 0..m.cols() {
            if m.entry(g, c) == 1 {
                let _ = writeln!(out, "{g} {c}");
            }
        }
    }
    out
}

/// Descriptor JSON: {family, q, d, e2, n_amb, lambda?}.  Form matrices are
/// reconstructed, never serialized.
pub fn descriptor_to_json(p: &PolarSpaceDescriptor) -> Value {
    let mut map = Map::new();
    map.insert("family".into(), json!(p.family().code()));
    map.insert("q".into(), json!(p.q()));
    map.insert("d".into(), json!(p.d()));
    map.insert("e2".into(), json!(p.e2()));
    map.insert("n_amb".into(), json!(p.ambient_dim()));
    if let Some(lam) = p.lambda() {
        map.insert("lambda".into(), json!(lam.index()));
    }
    Value::Object(map)
}

/// ResolvingSet JSON: {family, q, d, method, size, vertices, verified}.
pub fn resolving_set_to_json(p: &PolarSpaceDescriptor, rs: &ResolvingSet) -> Value {
    json!({
        "family": p.family().code(),
        "q": p.q(),
        "d": p.d(),
        "method": rs.method.code(),
        "size": rs.size(),
        "vertices": rs.vertices,
        "verified": true,
    })
}

/// FormulaReport JSON with every numeric value as an exact decimal string.
pub fn formula_report_to_json(r: &FormulaReport) -> Value {
    let mut map = Map::new();
    map.insert("family".into(), json!(r.family.code()));
    map.insert("q".into(), json!(r.q.to_string()));
    map.insert("d".into(), json!(r.d.to_string()));
    map.insert("e2".into(), json!(r.e2.to_string()));
    map.insert("points".into(), json!(r.points.to_string()));
    map.insert("generators".into(), json!(r.generators.to_string()));
    if let Some(s) = &r.srg {
        map.insert("n".into(), json!(s.n.to_string()));
        map.insert("k".into(), json!(s.k.to_string()));
        map.insert("a".into(), json!(s.a.to_string()));
        map.insert("c".into(), json!(s.c.to_string()));
        map.insert("theta1".into(), json!(s.theta1.to_string()));
        map.insert("theta2".into(), json!(s.theta2.to_string()));
        map.insert("m1".into(), json!(s.m1.to_string()));
        map.insert("m2".into(), json!(s.m2.to_string()));
    }
    map.insert("rank_bound".into(), json!(r.rank_bound.to_string()));
    map.insert("family_bound".into(), json!(r.family_bound.to_string()));
    if let Some(g) = &r.gwl_bound {
        map.insert("gwl_bound".into(), json!(g.to_string()));
    }
    Value::Object(map)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::forms::{make_polar_space, Family};
    use crate::graphs::dual_polar_graph;
    use crate::isotropic::enumerate_isotropic;

    #[test]
    fn subspace_list_header_and_shape() {
        let p = make_polar_space(Family::Cd, 2, 2).unwrap();
        let gens = enumerate_isotropic(&p, 2).unwrap();
        let text = subspace_list_to_string(&p, 2, &gens);
        let mut lines = text.lines();
        assert_eq!(lines.next().unwrap(), "Cd,2,2,2,15");
        let first = lines.next().unwrap();
        assert_eq!(first.split(';').count(), 2);
        assert_eq!(first.split(';').next().unwrap().split(',').count(), 4);
    }

    #[test]
    fn edge_list_round_trip() {
        let p = make_polar_space(Family::Dd, 2, 2).unwrap();
        let gens = enumerate_isotropic(&p, 2).unwrap();
        let g = dual_polar_graph(&p, &gens);
        let text = edge_list_to_string(&p, &g);
        assert!(text.starts_with("# family=Dd q=2 d=2"));
        let edges = parse_edge_list(&text).unwrap();
        assert_eq!(edges, g.edges());
    }

    #[test]
    fn descriptor_json_fields() {
        let p = make_polar_space(Family::TwoD, 2, 2).unwrap();
        let v = descriptor_to_json(&p);
        assert_eq!(v["family"], "2D");
        assert_eq!(v["n_amb"], 6);
        assert_eq!(v["lambda"], 1);
    }
}
