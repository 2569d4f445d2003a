//! Row reduction, rank and nullspaces over a small finite field.

use crate::gf::{FieldElement, FieldTable};

pub type Row = Vec<FieldElement>;

/// Reduce `rows` in place to reduced row echelon form, drop zero rows and
/// return the pivot columns.  The surviving rows are the canonical basis of
/// the row space: equal subspaces always reduce to identical rows.
pub fn rref(f: &FieldTable, rows: &mut Vec<Row>) -> Vec<usize> {
    let ncols = rows.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == rows.len() {
            break;
        }
        let Some(pr) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, pr);
        let inv = f.inv(rows[r][c]);
        for x in rows[r].iter_mut() {
            *x = f.mul(*x, inv);
        }
        for i in 0..rows.len() {
            if i != r && !rows[i][c].is_zero() {
                let factor = rows[i][c];
                for j in 0..ncols {
                    let t = f.mul(factor, rows[r][j]);
                    rows[i][j] = f.sub(rows[i][j], t);
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    rows.truncate(r);
    pivots
}

pub fn rank(f: &FieldTable, rows: &[Row]) -> usize {
    let mut copy = rows.to_vec();
    rref(f, &mut copy);
    copy.len()
}

/// Canonical basis of the solution space of `rows * x = 0`.
pub fn nullspace(f: &FieldTable, rows: &[Row], ncols: usize) -> Vec<Row> {
    let mut reduced = rows.to_vec();
    let pivots = rref(f, &mut reduced);
    let pivot_set: Vec<bool> = {
        let mut v = vec![false; ncols];
        for &c in &pivots {
            v[c] = true;
        }
        v
    };
    let mut kernel = Vec::new();
    for free in 0..ncols {
        if pivot_set[free] {
            continue;
        }
        let mut x = vec![FieldElement::ZERO; ncols];
        x[free] = FieldElement::ONE;
        for (i, &pc) in pivots.iter().enumerate() {
            x[pc] = f.neg(reduced[i][free]);
        }
        kernel.push(x);
    }
    rref(f, &mut kernel);
    kernel
}

/// Scale a vector so its first nonzero coordinate is one.  None for zero.
pub fn normalize_vector(f: &FieldTable, v: &[FieldElement]) -> Option<Row> {
    let lead = v.iter().position(|x| !x.is_zero())?;
    let inv = f.inv(v[lead]);
    Some(v.iter().map(|&x| f.mul(x, inv)).collect())
}

/// All vectors of F_q^n with first nonzero coordinate equal to one, in
/// lexicographic order of their coordinate index sequences.
pub fn normalized_vectors(f: &FieldTable, n: usize) -> Vec<Row> {
    let q = f.order();
    let total = q.checked_pow(n as u32).expect("vector space too large");
    let mut out = Vec::new();
    for code in 0..total {
        let mut v = vec![FieldElement::ZERO; n];
        let mut c = code;
        // Coordinate 0 is the most significant digit so that ascending codes
        // give lexicographic order on coordinate sequences.
        for i in (0..n).rev() {
            v[i] = f.element(c % q).unwrap();
            c /= q;
        }
        if let Some(lead) = v.iter().position(|x| !x.is_zero()) {
            if v[lead] == FieldElement::ONE {
                out.push(v);
            }
        }
    }
    out
}
