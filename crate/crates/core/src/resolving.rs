//! Resolving sets: the row-basis construction, exhaustive verification,
//! greedy reduction and exact minimum search.

use std::collections::HashMap;

use num::ToPrimitive;

use crate::error::{Error, Result};
use crate::exactla::{self, IncidenceMatrix};
use crate::formulas;
use crate::forms::PolarSpaceDescriptor;
use crate::graphs::{self, Graph};
use crate::isotropic::{self, Subspace};

/// How a resolving set was produced.
#[derive(Copy, Clone, PartialEq, Eq, Debug)]
pub enum Method {
    RowBasis,
    Greedy,
    Exhaustive,
}

impl Method {
    pub fn code(self) -> &'static str {
        match self {
            Method::RowBasis => "row-basis",
            Method::Greedy => "greedy",
            Method::Exhaustive => "exhaustive",
        }
    }
}

/// An ordered set of vertex indices together with its provenance.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResolvingSet {
    pub vertices: Vec<usize>,
    pub method: Method,
}

impl ResolvingSet {
    pub fn size(&self) -> usize {
        self.vertices.len()
    }
}

/// Distance matrix of the dual polar graph computed from intersection
/// dimensions: dist(U, W) = d - dim(U intersect W).
pub fn intersection_distance_matrix(
    p: &PolarSpaceDescriptor,
    generators: &[Subspace],
) -> Result<Vec<Vec<u32>>> {
    let f = p.field();
    let d = p.d();
    let n = generators.len();
    let mut dist = vec![vec![0u32; n]; n];
    for i in 0..n {
        for j in i + 1..n {
            let dim = isotropic::intersection_dim(f, &generators[i], &generators[j])?;
            let dd = (d - dim) as u32;
            dist[i][j] = dd;
            dist[j][i] = dd;
        }
    }
    Ok(dist)
}

/// Is the map v -> (dist(v, s))_{s in S} injective?  Errors carry a witness
/// pair with identical distance vectors.
pub fn verify_resolving(
    dist: &[Vec<u32>],
    set: &[usize],
) -> std::result::Result<(), (usize, usize)> {
    let n = dist.len();
    let mut seen: HashMap<Vec<u32>, usize> = HashMap::with_capacity(n);
    for v in 0..n {
        let key: Vec<u32> = set.iter().map(|&s| dist[v][s]).collect();
        if let Some(&prev) = seen.get(&key) {
            return Err((prev, v));
        }
        seen.insert(key, v);
    }
    Ok(())
}

/// Convenience wrapper over BFS distances for arbitrary graphs.
pub fn verify_resolving_graph(
    g: &Graph,
    set: &[usize],
) -> Result<std::result::Result<(), (usize, usize)>> {
    let dist = graphs::all_pairs_distances(g)?;
    Ok(verify_resolving(&dist, set))
}

/// The constructive upper bound: select an independent row basis of the
/// incidence matrix and return those generators.  The resolving property is
/// re-verified exhaustively rather than assumed.
pub fn rowbasis_resolving_set(
    p: &PolarSpaceDescriptor,
    points: &[Subspace],
    generators: &[Subspace],
) -> Result<(ResolvingSet, IncidenceMatrix, Vec<Vec<u32>>)> {
    let m = exactla::incidence_matrix(p, points, generators)?;
    let basis = exactla::independent_row_basis(&m.to_exact());

    let expected = formulas::eval_rank_bound(&p.param_triple())?;
    if expected.to_usize() != Some(basis.len()) {
        return Err(Error::InvariantViolation(format!(
            "row basis has size {} but the closed-form rank is {expected}",
            basis.len()
        )));
    }

    let dist = intersection_distance_matrix(p, generators)?;
    if let Err((u, w)) = verify_resolving(&dist, &basis) {
        return Err(Error::InvariantViolation(format!(
            "row-basis set fails to resolve: vertices {u} and {w} collide"
        )));
    }
    Ok((
        ResolvingSet {
            vertices: basis,
            method: Method::RowBasis,
        },
        m,
        dist,
    ))
}

/// Remove elements lowest-index-first while the set keeps resolving.  A
/// single forward pass suffices: once removing an element breaks the set, it
/// breaks every subset as well.
pub fn greedy_minimize(dist: &[Vec<u32>], start: &ResolvingSet) -> ResolvingSet {
    let mut current = start.vertices.clone();
    let mut i = 0;
    while i < current.len() {
        let mut trial = current.clone();
        trial.remove(i);
        if verify_resolving(dist, &trial).is_ok() {
            current = trial;
        } else {
            i += 1;
        }
    }
    ResolvingSet {
        vertices: current,
        method: Method::Greedy,
    }
}

/// Outcome of the exact subset search.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ExactOutcome {
    Found(ResolvingSet),
    /// No resolving set of size <= limit exists.
    ExceedsLimit,
}

pub const DEFAULT_SEARCH_BUDGET: u64 = 10_000_000;

/// Smallest k <= limit with a resolving k-subset, by subset enumeration in
/// colexicographic order.  Complete graphs short-circuit to n - 1 (this also
/// covers the d = 1 dual polar graphs).  Each subset verification costs one
/// unit of budget.
pub fn exact_metric_dimension(
    dist: &[Vec<u32>],
    limit: usize,
    budget: u64,
) -> Result<ExactOutcome> {
    let n = dist.len();
    if n <= 1 {
        return Ok(ExactOutcome::Found(ResolvingSet {
            vertices: Vec::new(),
            method: Method::Exhaustive,
        }));
    }
    if is_complete(dist) {
        if n - 1 > limit {
            return Ok(ExactOutcome::ExceedsLimit);
        }
        return Ok(ExactOutcome::Found(ResolvingSet {
            vertices: (0..n - 1).collect(),
            method: Method::Exhaustive,
        }));
    }
    let mut spent: u64 = 0;
    for k in 1..=limit.min(n) {
        let mut combo: Vec<usize> = (0..k).collect();
        loop {
            spent += 1;
            if spent > budget {
                return Err(Error::SearchBudget(format!(
                    "subset search exceeded {budget} verification steps at size {k}"
                )));
            }
            if verify_resolving(dist, &combo).is_ok() {
                return Ok(ExactOutcome::Found(ResolvingSet {
                    vertices: combo,
                    method: Method::Exhaustive,
                }));
            }
            if !next_colex(&mut combo, n) {
                break;
            }
        }
    }
    Ok(ExactOutcome::ExceedsLimit)
}

fn is_complete(dist: &[Vec<u32>]) -> bool {
    let n = dist.len();
    (0..n).all(|i| (0..n).all(|j| i == j || dist[i][j] == 1))
}

/// Advance a strictly increasing index tuple to its colexicographic
/// successor.  Returns false when exhausted.
fn next_colex(combo: &mut [usize], n: usize) -> bool {
    let k = combo.len();
    for i in 0..k {
        let cap = if i + 1 < k { combo[i + 1] } else { n };
        if combo[i] + 1 < cap {
            combo[i] += 1;
            for j in 0..i {
                combo[j] = j;
            }
            return true;
        }
    }
    false
}

/// Everything the conjecture probe reports for one instance.  No truth claim
/// is made; the numbers are for inspection.
#[derive(Clone, Debug)]
pub struct ConjectureReport {
    pub bound: u64,
    pub rowbasis_size: usize,
    pub greedy_size: Option<usize>,
    pub exact_min: Option<usize>,
    /// True when the exact search gave up on its limit or budget.
    pub exact_exceeded: bool,
}

impl ConjectureReport {
    /// Best-known size over the bound, as an exact fraction.
    pub fn ratio(&self) -> (u64, u64) {
        let best = self
            .exact_min
            .or(self.greedy_size)
            .unwrap_or(self.rowbasis_size) as u64;
        (best, self.bound)
    }
}
