//! Exact integer linear algebra: fraction-free rank, independent row
//! selection, and the incidence-matrix identities of the polar space.
//!
//! Ranks are computed over the rationals (equivalently the reals, since all
//! entries are integers) with Bareiss elimination on unbounded integers.
//! Nothing here uses floating point or a modular shortcut.

use std::collections::HashMap;

use num::{BigInt, BigRational, One, Zero};

use crate::error::{Error, Result};
use crate::formulas;
use crate::forms::PolarSpaceDescriptor;
use crate::fqlin;
use crate::graphs::Graph;
use crate::gf::FieldElement;
use crate::isotropic::Subspace;

/// A dense matrix of unbounded integers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl ExactMatrix {
    pub fn from_fn(rows: usize, cols: usize, f: impl Fn(usize, usize) -> BigInt) -> ExactMatrix {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        ExactMatrix { rows, cols, data }
    }

    pub fn identity(n: usize) -> ExactMatrix {
        Self::from_fn(n, n, |i, j| BigInt::from((i == j) as i64))
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.cols + j]
    }

    fn row(&self, i: usize) -> &[BigInt] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }
}

/// Rank over the rationals via fraction-free (Bareiss) elimination with full
/// pivoting.  Division-exact at every step.
pub fn rank_exact(m: &ExactMatrix) -> usize {
    let r = m.rows;
    let c = m.cols;
    if r == 0 || c == 0 {
        return 0;
    }
    let mut a: Vec<Vec<BigInt>> = (0..r).map(|i| m.row(i).to_vec()).collect();
    let mut prev = BigInt::one();
    let mut rank = 0;
    for step in 0..r.min(c) {
        // Find any nonzero pivot in the remaining submatrix.
        let mut found = None;
        'search: for j in step..c {
            for i in step..r {
                if !a[i][j].is_zero() {
                    found = Some((i, j));
                    break 'search;
                }
            }
        }
        let Some((pi, pj)) = found else { break };
        a.swap(step, pi);
        if pj != step {
            for row in a.iter_mut() {
                row.swap(step, pj);
            }
        }
        let pivot = a[step][step].clone();
        for i in step + 1..r {
            if a[i][step].is_zero() {
                // Still rescale the row implicitly: with a zero multiplier the
                // update is entry * pivot / prev, which stays exact.
                for j in step + 1..c {
                    if !a[i][j].is_zero() {
                        a[i][j] = &a[i][j] * &pivot / &prev;
                    }
                }
                continue;
            }
            for j in step + 1..c {
                let t = &a[i][j] * &pivot - &a[i][step] * &a[step][j];
                a[i][j] = t / &prev;
            }
            a[i][step] = BigInt::zero();
        }
        prev = pivot;
        rank += 1;
    }
    rank
}

/// Deterministic greedy row basis: scan rows in order, keep a row exactly
/// when it increases the rank.  Returns original row indices; the selected
/// submatrix has full row rank.
pub fn independent_row_basis(m: &ExactMatrix) -> Vec<usize> {
    // Incremental elimination over exact rationals; pivot rows are kept
    // normalized so reductions stay small for 0/1 inputs.
    let mut pivots: Vec<(usize, Vec<BigRational>)> = Vec::new();
    let mut keep = Vec::new();
    for r in 0..m.rows {
        let mut v: Vec<BigRational> = m
            .row(r)
            .iter()
            .map(|x| BigRational::from_integer(x.clone()))
            .collect();
        for (pc, prow) in &pivots {
            if !v[*pc].is_zero() {
                let factor = v[*pc].clone();
                for j in 0..m.cols {
                    if !prow[j].is_zero() {
                        v[j] -= &factor * &prow[j];
                    }
                }
            }
        }
        if let Some(pc) = v.iter().position(|x| !x.is_zero()) {
            let inv = v[pc].clone();
            for x in v.iter_mut() {
                if !x.is_zero() {
                    *x /= &inv;
                }
            }
            pivots.push((pc, v));
            keep.push(r);
        }
    }
    keep
}

/// The 0/1 point-generator incidence matrix.  Rows are generators, columns
/// are points, entry 1 when the point lies inside the generator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IncidenceMatrix {
    rows: usize,
    cols: usize,
    data: Vec<u8>,
}

impl IncidenceMatrix {
    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entry(&self, g: usize, p: usize) -> u8 {
        self.data[g * self.cols + p]
    }

    pub fn row_ones(&self, g: usize) -> usize {
        self.data[g * self.cols..(g + 1) * self.cols]
            .iter()
            .filter(|&&x| x == 1)
            .count()
    }

    pub fn col_ones(&self, p: usize) -> usize {
        (0..self.rows).filter(|&g| self.entry(g, p) == 1).count()
    }

    pub fn to_exact(&self) -> ExactMatrix {
        ExactMatrix::from_fn(self.rows, self.cols, |i, j| BigInt::from(self.entry(i, j)))
    }

    /// Submatrix on the given rows, in the given order.
    pub fn select_rows(&self, rows: &[usize]) -> ExactMatrix {
        ExactMatrix::from_fn(rows.len(), self.cols, |i, j| {
            BigInt::from(self.entry(rows[i], j))
        })
    }

    /// The Gram product B = M^T M, as exact integers.
    pub fn gram(&self) -> ExactMatrix {
        let mut counts = vec![0u32; self.cols * self.cols];
        for g in 0..self.rows {
            let row = &self.data[g * self.cols..(g + 1) * self.cols];
            let ones: Vec<usize> = (0..self.cols).filter(|&j| row[j] == 1).collect();
            for &x in &ones {
                for &y in &ones {
                    counts[x * self.cols + y] += 1;
                }
            }
        }
        ExactMatrix::from_fn(self.cols, self.cols, |i, j| {
            BigInt::from(counts[i * self.cols + j])
        })
    }
}

/// Build the incidence matrix from enumerated points and generators.
pub fn incidence_matrix(
    p: &PolarSpaceDescriptor,
    points: &[Subspace],
    generators: &[Subspace],
) -> Result<IncidenceMatrix> {
    let f = p.field();
    let index_of: HashMap<&[FieldElement], usize> = points
        .iter()
        .enumerate()
        .map(|(i, pt)| (pt.point_vector().as_slice(), i))
        .collect();

    let cols = points.len();
    let mut data = vec![0u8; generators.len() * cols];
    for (g, gen) in generators.iter().enumerate() {
        // Enumerate the projective points of the generator's span directly.
        let dim = gen.dim();
        let q = f.order();
        let total = q.pow(dim as u32);
        for code in 1..total {
            let mut coeffs = Vec::with_capacity(dim);
            let mut cc = code;
            for _ in 0..dim {
                coeffs.push(f.element(cc % q).unwrap());
                cc /= q;
            }
            let mut v = vec![FieldElement::ZERO; p.ambient_dim()];
            for (ci, row) in coeffs.iter().zip(gen.basis()) {
                if ci.is_zero() {
                    continue;
                }
                for j in 0..p.ambient_dim() {
                    v[j] = f.add(v[j], f.mul(*ci, row[j]));
                }
            }
            let norm = fqlin::normalize_vector(f, &v)
                .ok_or_else(|| Error::InvariantViolation("zero vector in generator span".into()))?;
            let idx = *index_of.get(norm.as_slice()).ok_or_else(|| {
                Error::InvariantViolation("generator contains an unlisted point".into())
            })?;
            data[g * cols + idx] = 1;
        }
    }
    Ok(IncidenceMatrix {
        rows: generators.len(),
        cols,
        data,
    })
}

/// Check B = N1 I + N2 A entrywise and N1 + theta2 N2 = 0, with N1, N2 the
/// closed-form generator counts and A the collinearity adjacency matrix.
pub fn gram_product_check(
    p: &PolarSpaceDescriptor,
    m: &IncidenceMatrix,
    collinearity: &Graph,
) -> Result<()> {
    if collinearity.n() != m.cols() {
        return Err(Error::InvalidParameter(
            "collinearity graph and incidence columns disagree".into(),
        ));
    }
    let triple = p.param_triple();
    let n1 = formulas::generators_through(&triple, 1)?;
    let n2 = formulas::generators_through(&triple, 2)?;
    let theta2 = formulas::eval_srg(&triple)?.theta2;
    if !(&n1 + &theta2 * &n2).is_zero() {
        return Err(Error::InvariantViolation(format!(
            "N1 + theta2 * N2 = {} != 0",
            &n1 + &theta2 * &n2
        )));
    }
    let b = m.gram();
    for x in 0..m.cols() {
        for y in 0..m.cols() {
            let expect = if x == y {
                n1.clone()
            } else if collinearity.is_edge(x, y) {
                n2.clone()
            } else {
                BigInt::zero()
            };
            if b.get(x, y) != &expect {
                return Err(Error::InvariantViolation(format!(
                    "B[{x}][{y}] = {} but N1 I + N2 A gives {expect}",
                    b.get(x, y)
                )));
            }
        }
    }
    Ok(())
}

/// nullity(M) = |Omega_1| - rank(M) must equal the closed-form m2.
pub fn nullity_equals_m2(p: &PolarSpaceDescriptor, m: &IncidenceMatrix) -> Result<()> {
    let rank = rank_exact(&m.to_exact());
    let nullity = m.cols() - rank;
    let m2 = formulas::eval_srg(&p.param_triple())?.m2;
    if BigInt::from(nullity) != m2 {
        return Err(Error::InvariantViolation(format!(
            "nullity {nullity} != m2 = {m2}"
        )));
    }
    Ok(())
}
