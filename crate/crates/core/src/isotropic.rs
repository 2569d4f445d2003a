//! Enumeration of the totally isotropic subspaces of a polar space, in
//! canonical form.
//!
//! Subspaces are kept as reduced row echelon bases, so equality of subspaces
//! is equality of representations and a `BTreeSet` deduplicates levels during
//! the depth-first extension.  Enumeration is deterministic: the output is
//! sorted by the canonical basis.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::forms::PolarSpaceDescriptor;
use crate::fqlin::{self, Row};
use crate::gf::FieldTable;

/// A subspace of the ambient space in canonical (RREF) form.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Subspace {
    basis: Vec<Row>,
    n_amb: usize,
}

impl Subspace {
    /// Canonicalize a spanning set.  Zero rows are dropped.
    pub fn from_rows(f: &FieldTable, mut rows: Vec<Row>, n_amb: usize) -> Subspace {
        fqlin::rref(f, &mut rows);
        Subspace { basis: rows, n_amb }
    }

    pub fn zero(n_amb: usize) -> Subspace {
        Subspace {
            basis: Vec::new(),
            n_amb,
        }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.n_amb
    }

    pub fn basis(&self) -> &[Row] {
        &self.basis
    }

    /// For points: the single normalized basis vector.
    pub fn point_vector(&self) -> &Row {
        assert_eq!(self.dim(), 1, "point_vector on a non-point");
        &self.basis[0]
    }

    /// Reduce `v` against the echelon basis and test for zero remainder.
    pub fn contains_vector(&self, f: &FieldTable, v: &[crate::gf::FieldElement]) -> bool {
        let mut v = v.to_vec();
        for row in &self.basis {
            let pivot = row.iter().position(|x| !x.is_zero()).unwrap();
            if !v[pivot].is_zero() {
                let factor = v[pivot];
                for j in 0..self.n_amb {
                    v[j] = f.sub(v[j], f.mul(factor, row[j]));
                }
            }
        }
        v.iter().all(|x| x.is_zero())
    }

    pub fn contains(&self, f: &FieldTable, other: &Subspace) -> bool {
        other.basis.iter().all(|v| self.contains_vector(f, v))
    }
}

/// All 1-dimensional totally isotropic subspaces, sorted lexicographically by
/// the normalized coordinate vector.
pub fn enumerate_points(p: &PolarSpaceDescriptor) -> Vec<Subspace> {
    let f = p.field();
    fqlin::normalized_vectors(f, p.ambient_dim())
        .into_iter()
        .filter(|v| p.is_isotropic_vector(v))
        .map(|v| Subspace {
            basis: vec![v],
            n_amb: p.ambient_dim(),
        })
        .collect()
}

/// All totally isotropic subspaces of dimension t, canonical and sorted.
pub fn enumerate_isotropic(p: &PolarSpaceDescriptor, t: usize) -> Result<Vec<Subspace>> {
    if t < 1 || t > p.d() {
        return Err(Error::InvalidParameter(format!(
            "dimension {t} outside 1..={}",
            p.d()
        )));
    }
    Ok(extend_to_dimension(p, t))
}

/// Depth-first extension by points inside the perp, one level at a time.
/// Does not range-check t; dimension d+1 legitimately yields the empty set.
fn extend_to_dimension(p: &PolarSpaceDescriptor, t: usize) -> Vec<Subspace> {
    let f = p.field();
    let points = enumerate_points(p);
    let mut level: BTreeSet<Subspace> = points.iter().cloned().collect();
    for _ in 1..t {
        let mut next = BTreeSet::new();
        for u in &level {
            let perp = p.perp(u);
            for x in &points {
                let xv = x.point_vector();
                if perp.contains_vector(f, xv) && !u.contains_vector(f, xv) {
                    let mut rows = u.basis().to_vec();
                    rows.push(xv.clone());
                    next.insert(Subspace::from_rows(f, rows, p.ambient_dim()));
                }
            }
        }
        level = next;
    }
    level.into_iter().collect()
}

/// Full Witt-index verification: some totally isotropic subspace of dimension
/// d exists and none of dimension d+1 does.
pub fn verify_witt_index_exhaustive(p: &PolarSpaceDescriptor) -> Result<()> {
    let gens = extend_to_dimension(p, p.d());
    if gens.is_empty() {
        return Err(Error::InvariantViolation(format!(
            "no totally isotropic subspace of dimension {}",
            p.d()
        )));
    }
    if !extend_to_dimension(p, p.d() + 1).is_empty() {
        return Err(Error::InvariantViolation(format!(
            "found a totally isotropic subspace of dimension {}",
            p.d() + 1
        )));
    }
    Ok(())
}

/// Count the generators (from `generators`) that contain `u`.
pub fn count_generators_through(
    p: &PolarSpaceDescriptor,
    u: &Subspace,
    generators: &[Subspace],
) -> Result<usize> {
    if !p.is_totally_isotropic(u) {
        return Err(Error::InvalidParameter(
            "subspace is not totally isotropic".into(),
        ));
    }
    let f = p.field();
    Ok(generators.iter().filter(|g| g.contains(f, u)).count())
}

/// dim(U intersect W) = dim U + dim W - rank of the stacked bases.
pub fn intersection_dim(f: &FieldTable, u: &Subspace, w: &Subspace) -> Result<usize> {
    if u.ambient_dim() != w.ambient_dim() {
        return Err(Error::InvalidParameter(format!(
            "ambient dimensions differ: {} vs {}",
            u.ambient_dim(),
            w.ambient_dim()
        )));
    }
    let mut stacked = u.basis().to_vec();
    stacked.extend_from_slice(w.basis());
    let r = fqlin::rank(f, &stacked);
    Ok(u.dim() + w.dim() - r)
}
