//! The six families of classical polar spaces and their fixed standard forms.
//!
//! The coordinates are a choice this crate makes once and for all:
//!
//!   * symplectic Cd:  b(x,y) = sum_i (x_{2i} y_{2i+1} - x_{2i+1} y_{2i})
//!   * hyperbolic Dd:  f = x_0 x_1 + ... + x_{2d-2} x_{2d-1}
//!   * parabolic Bd:   f = x_0^2 + x_1 x_2 + ... + x_{2d-1} x_{2d}
//!   * elliptic 2D:    f = hyperbolic pairs + u^2 + uv + lambda v^2, with
//!     lambda the first field element making t^2 + t + lambda irreducible
//!   * unitary 2A:     b(x,y) = sum_i x_i conj(y_i)
//!
//! The claimed Witt index d is never trusted: construction greedily builds a
//! maximal totally isotropic subspace and checks its dimension is exactly d.

use crate::error::{Error, Result};
use crate::formulas::{self, ParamTriple};
use crate::fqlin::{self, Row};
use crate::gf::{make_field, FieldElement, FieldTable};
use crate::isotropic::Subspace;

use num::ToPrimitive;

/// Default cap on the number of generators an instance may have before the
/// crate refuses to enumerate it.
pub const DEFAULT_GENERATOR_BUDGET: u64 = 50_000;

/// The six families of classical polar spaces.
#[derive(Copy, Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub enum Family {
    /// Symplectic, V(2d, q), e = 1.
    Cd,
    /// Parabolic quadric, V(2d+1, q), e = 1.
    Bd,
    /// Hyperbolic quadric, V(2d, q), e = 0.
    Dd,
    /// Elliptic quadric, V(2d+2, q), e = 2.
    TwoD,
    /// Hermitian variety, V(2d, q), e = 1/2.
    TwoAOdd,
    /// Hermitian variety, V(2d+1, q), e = 3/2.
    TwoAEven,
}

impl Family {
    pub const ALL: [Family; 6] = [
        Family::Cd,
        Family::Bd,
        Family::Dd,
        Family::TwoD,
        Family::TwoAOdd,
        Family::TwoAEven,
    ];

    /// The family parameter e, doubled so it stays an integer.
    pub fn e2(self) -> u8 {
        match self {
            Family::Cd | Family::Bd => 2,
            Family::Dd => 0,
            Family::TwoD => 4,
            Family::TwoAOdd => 1,
            Family::TwoAEven => 3,
        }
    }

    pub fn is_unitary(self) -> bool {
        matches!(self, Family::TwoAOdd | Family::TwoAEven)
    }

    pub fn is_orthogonal(self) -> bool {
        matches!(self, Family::Bd | Family::Dd | Family::TwoD)
    }

    pub fn ambient_dim(self, d: usize) -> usize {
        match self {
            Family::Cd | Family::Dd | Family::TwoAOdd => 2 * d,
            Family::Bd | Family::TwoAEven => 2 * d + 1,
            Family::TwoD => 2 * d + 2,
        }
    }

    pub fn code(self) -> &'static str {
        match self {
            Family::Cd => "Cd",
            Family::Bd => "Bd",
            Family::Dd => "Dd",
            Family::TwoD => "2D",
            Family::TwoAOdd => "2Aodd",
            Family::TwoAEven => "2Aeven",
        }
    }

    pub fn parse(s: &str) -> Result<Family> {
        match s {
            "Cd" => Ok(Family::Cd),
            "Bd" => Ok(Family::Bd),
            "Dd" => Ok(Family::Dd),
            "2D" => Ok(Family::TwoD),
            "2Aodd" => Ok(Family::TwoAOdd),
            "2Aeven" => Ok(Family::TwoAEven),
            other => Err(Error::InvalidParameter(format!(
                "unknown family {other:?}; expected one of Cd, Bd, Dd, 2D, 2Aodd, 2Aeven"
            ))),
        }
    }
}

impl std::fmt::Display for Family {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.code())
    }
}

/// A polar space instance: the field, the form matrices and the parameters.
#[derive(Clone, Debug)]
pub struct PolarSpaceDescriptor {
    family: Family,
    q: u8,
    d: usize,
    n_amb: usize,
    field: FieldTable,
    gram: Vec<Row>,
    /// Upper-triangular coefficients of the quadratic form, orthogonal only.
    quad: Option<Vec<Row>>,
    /// The elliptic-tail coefficient, 2D only; kept for serialization.
    lambda: Option<FieldElement>,
}

impl PolarSpaceDescriptor {
    pub fn family(&self) -> Family {
        self.family
    }

    pub fn q(&self) -> usize {
        self.q as usize
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn e2(&self) -> u8 {
        self.family.e2()
    }

    pub fn ambient_dim(&self) -> usize {
        self.n_amb
    }

    pub fn field(&self) -> &FieldTable {
        &self.field
    }

    pub fn gram(&self) -> &[Row] {
        &self.gram
    }

    pub fn lambda(&self) -> Option<FieldElement> {
        self.lambda
    }

    pub fn param_triple(&self) -> ParamTriple {
        ParamTriple::new(self.family, self.q as u64, self.d as u32)
            .expect("descriptor parameters were validated at construction")
    }

    fn conj_vec(&self, v: &[FieldElement]) -> Row {
        if self.family.is_unitary() {
            v.iter().map(|&x| self.field.sigma(x)).collect()
        } else {
            v.to_vec()
        }
    }

    /// The sesquilinear form b(u, v) = u^T . gram . conj(v).
    pub fn b_eval(&self, u: &[FieldElement], v: &[FieldElement]) -> Result<FieldElement> {
        if u.len() != self.n_amb || v.len() != self.n_amb {
            return Err(Error::InvalidParameter(format!(
                "vectors must have length {}, got {} and {}",
                self.n_amb,
                u.len(),
                v.len()
            )));
        }
        Ok(self.b_raw(u, &self.conj_vec(v)))
    }

    /// b with the second argument already conjugated.
    fn b_raw(&self, u: &[FieldElement], vbar: &[FieldElement]) -> FieldElement {
        let f = &self.field;
        let mut acc = FieldElement::ZERO;
        for i in 0..self.n_amb {
            if u[i].is_zero() {
                continue;
            }
            let mut row_acc = FieldElement::ZERO;
            for j in 0..self.n_amb {
                if !self.gram[i][j].is_zero() && !vbar[j].is_zero() {
                    row_acc = f.add(row_acc, f.mul(self.gram[i][j], vbar[j]));
                }
            }
            acc = f.add(acc, f.mul(u[i], row_acc));
        }
        acc
    }

    /// The quadratic form; defined for the orthogonal families only.
    pub fn f_eval(&self, v: &[FieldElement]) -> Result<FieldElement> {
        let quad = self.quad.as_ref().ok_or_else(|| {
            Error::Unsupported(format!(
                "the {} family carries no quadratic form",
                self.family.code()
            ))
        })?;
        if v.len() != self.n_amb {
            return Err(Error::InvalidParameter(format!(
                "vector must have length {}, got {}",
                self.n_amb,
                v.len()
            )));
        }
        let f = &self.field;
        let mut acc = FieldElement::ZERO;
        for i in 0..self.n_amb {
            if v[i].is_zero() {
                continue;
            }
            for j in i..self.n_amb {
                if !quad[i][j].is_zero() && !v[j].is_zero() {
                    acc = f.add(acc, f.mul(quad[i][j], f.mul(v[i], v[j])));
                }
            }
        }
        Ok(acc)
    }

    /// Is a single nonzero vector isotropic (singular, for quadrics)?
    pub fn is_isotropic_vector(&self, v: &[FieldElement]) -> bool {
        if self.family.is_orthogonal() {
            self.f_eval(v).map(|x| x.is_zero()).unwrap_or(false)
        } else {
            self.b_eval(v, v).map(|x| x.is_zero()).unwrap_or(false)
        }
    }

    /// Does the form vanish identically on the subspace?  By polarization it
    /// is enough to test basis vectors singly and pairwise.
    pub fn is_totally_isotropic(&self, s: &Subspace) -> bool {
        let basis = s.basis();
        if self.family.is_orthogonal() {
            for (i, u) in basis.iter().enumerate() {
                if !self.f_eval(u).map(|x| x.is_zero()).unwrap_or(false) {
                    return false;
                }
                for w in &basis[i + 1..] {
                    if !self.b_eval(u, w).unwrap().is_zero() {
                        return false;
                    }
                }
            }
        } else {
            for (i, u) in basis.iter().enumerate() {
                for w in &basis[i..] {
                    if !self.b_eval(u, w).unwrap().is_zero() {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// The subspace of vectors orthogonal to all of `s` under b.
    pub fn perp(&self, s: &Subspace) -> Subspace {
        let f = &self.field;
        let mut constraints: Vec<Row> = Vec::with_capacity(s.dim());
        for basis_vec in s.basis() {
            let vbar = self.conj_vec(basis_vec);
            // b(v, s) = sum_j v_j * (gram . vbar)_j, a linear constraint on v.
            let row: Row = (0..self.n_amb)
                .map(|j| {
                    let mut acc = FieldElement::ZERO;
                    for m in 0..self.n_amb {
                        if !self.gram[j][m].is_zero() && !vbar[m].is_zero() {
                            acc = f.add(acc, f.mul(self.gram[j][m], vbar[m]));
                        }
                    }
                    acc
                })
                .collect();
            constraints.push(row);
        }
        let kernel = fqlin::nullspace(f, &constraints, self.n_amb);
        Subspace::from_rows(f, kernel, self.n_amb)
    }

    /// Greedily extend a totally isotropic chain to a maximal one and check
    /// that its dimension equals d.  In a polar space every maximal totally
    /// isotropic subspace has dimension exactly the Witt index, so a single
    /// greedy chain suffices.
    pub fn verify_witt_index(&self) -> Result<()> {
        let f = &self.field;
        let candidates = fqlin::normalized_vectors(f, self.n_amb);
        let mut basis: Vec<Row> = Vec::new();
        loop {
            let current = Subspace::from_rows(f, basis.clone(), self.n_amb);
            let perp = self.perp(&current);
            let next = candidates.iter().find(|v| {
                self.is_isotropic_vector(v)
                    && perp.contains_vector(f, v)
                    && !current.contains_vector(f, v)
            });
            match next {
                Some(v) => basis.push(v.clone()),
                None => break,
            }
        }
        if basis.len() == self.d {
            Ok(())
        } else {
            Err(Error::InvariantViolation(format!(
                "maximal totally isotropic subspace has dimension {}, expected Witt index {}",
                basis.len(),
                self.d
            )))
        }
    }
}

/// Build the descriptor for one instance, with the default enumeration budget.
pub fn make_polar_space(family: Family, q: u8, d: usize) -> Result<PolarSpaceDescriptor> {
    make_polar_space_with_budget(family, q, d, DEFAULT_GENERATOR_BUDGET)
}

pub fn make_polar_space_with_budget(
    family: Family,
    q: u8,
    d: usize,
    budget: u64,
) -> Result<PolarSpaceDescriptor> {
    if d < 1 {
        return Err(Error::InvalidParameter("d must be at least 1".into()));
    }
    let triple = ParamTriple::new(family, q as u64, d as u32)?;
    let predicted = formulas::generator_count(&triple)?;
    let predicted_u128 = predicted.to_u128().unwrap_or(u128::MAX);
    if predicted_u128 > budget as u128 {
        return Err(Error::BudgetExceeded {
            predicted: predicted_u128,
            budget,
        });
    }

    let field = make_field(q)?;
    if family.is_unitary() && !field.has_conj() {
        return Err(Error::InvalidParameter(format!(
            "q must be a perfect square for unitary families, got {q}"
        )));
    }

    let n_amb = family.ambient_dim(d);
    let zero_row = vec![FieldElement::ZERO; n_amb];
    let one = FieldElement::ONE;

    let mut gram = vec![zero_row.clone(); n_amb];
    let mut quad: Option<Vec<Row>> = None;
    let mut lambda = None;

    match family {
        Family::Cd => {
            for i in 0..d {
                gram[2 * i][2 * i + 1] = one;
                gram[2 * i + 1][2 * i] = field.neg(one);
            }
        }
        Family::TwoAOdd | Family::TwoAEven => {
            for i in 0..n_amb {
                gram[i][i] = one;
            }
        }
        Family::Bd | Family::Dd | Family::TwoD => {
            let mut qmat = vec![zero_row.clone(); n_amb];
            match family {
                Family::Bd => {
                    qmat[0][0] = one;
                    for i in 0..d {
                        qmat[1 + 2 * i][2 + 2 * i] = one;
                    }
                }
                Family::Dd => {
                    for i in 0..d {
                        qmat[2 * i][2 * i + 1] = one;
                    }
                }
                Family::TwoD => {
                    for i in 0..d {
                        qmat[2 * i][2 * i + 1] = one;
                    }
                    let lam = irreducible_tail_coefficient(&field).ok_or_else(|| {
                        Error::InvariantViolation(
                            "no lambda with t^2 + t + lambda irreducible".into(),
                        )
                    })?;
                    qmat[2 * d][2 * d] = one;
                    qmat[2 * d][2 * d + 1] = one;
                    qmat[2 * d + 1][2 * d + 1] = lam;
                    lambda = Some(lam);
                }
                _ => unreachable!(),
            }
            // Polarize: b(e_i, e_j) = Q[i][j] for i != j, b(e_i, e_i) = 2 Q[i][i].
            for i in 0..n_amb {
                for j in 0..n_amb {
                    if i == j {
                        gram[i][i] = field.add(qmat[i][i], qmat[i][i]);
                    } else {
                        let (lo, hi) = (i.min(j), i.max(j));
                        gram[i][j] = qmat[lo][hi];
                    }
                }
            }
            quad = Some(qmat);
        }
    }

    let descriptor = PolarSpaceDescriptor {
        family,
        q,
        d,
        n_amb,
        field,
        gram,
        quad,
        lambda,
    };
    descriptor.verify_witt_index()?;
    Ok(descriptor)
}

/// First lambda in index order with t^2 + t + lambda irreducible over F_q.
fn irreducible_tail_coefficient(field: &FieldTable) -> Option<FieldElement> {
    field.elements().find(|&lam| {
        field.elements().all(|t| {
            // t^2 + t + lambda != 0
            let v = field.add(field.add(field.mul(t, t), t), lam);
            !v.is_zero()
        })
    })
}
