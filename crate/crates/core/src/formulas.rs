//! Closed-form evaluators for the counting, spectral and rank expressions
//! attached to each family of polar spaces.
//!
//! Everything is computed in exact rational arithmetic.  Half-integer powers
//! of q (the unitary families) are powers of the integer s with s^2 = q, so
//! no floating point appears anywhere.  This module shares no code with the
//! enumeration path; the two are compared against each other in tests.

use num::{BigInt, BigRational, One, Signed, Zero};

use crate::error::{Error, Result};
use crate::forms::Family;

/// Instance parameters (q, d, e) with e carried as the integer 2e.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParamTriple {
    pub family: Family,
    pub q: u64,
    pub d: u32,
    pub e2: u8,
    /// sqrt(q), present exactly when 2e is odd.
    pub s: Option<u64>,
}

impl ParamTriple {
    pub fn new(family: Family, q: u64, d: u32) -> Result<Self> {
        if d < 1 {
            return Err(Error::InvalidParameter("d must be at least 1".into()));
        }
        if !is_prime_power(q) {
            return Err(Error::InvalidParameter(format!(
                "q must be a prime power, got {q}"
            )));
        }
        let e2 = family.e2();
        let s = if e2 % 2 == 1 {
            let r = integer_sqrt(q);
            if r * r != q {
                return Err(Error::InvalidParameter(format!(
                    "q must be a perfect square for unitary families, got {q}"
                )));
            }
            Some(r)
        } else {
            None
        };
        Ok(ParamTriple { family, q, d, e2, s })
    }

    /// q^(num2/2) as an exact rational; num2 may be negative, and odd num2
    /// requires q to be a square.
    fn qh(&self, num2: i64) -> BigRational {
        if num2 % 2 == 0 {
            ipow(BigInt::from(self.q), num2 / 2)
        } else {
            let s = self.s.expect("half-integer power of a non-square q");
            ipow(BigInt::from(s), num2)
        }
    }

    fn d2(&self) -> i64 {
        2 * self.d as i64
    }

    fn e2i(&self) -> i64 {
        self.e2 as i64
    }
}

fn ipow(base: BigInt, exp: i64) -> BigRational {
    if exp >= 0 {
        BigRational::from_integer(base.pow(exp as u32))
    } else {
        BigRational::new(BigInt::one(), base.pow((-exp) as u32))
    }
}

fn to_int(r: BigRational, what: &str) -> Result<BigInt> {
    if r.is_integer() {
        Ok(r.to_integer())
    } else {
        Err(Error::InvariantViolation(format!(
            "{what} evaluated to the non-integer {r}"
        )))
    }
}

pub fn is_prime_power(q: u64) -> bool {
    if q < 2 {
        return false;
    }
    let p = (2..=q).find(|p| q % p == 0).unwrap();
    let mut n = q;
    while n % p == 0 {
        n /= p;
    }
    n == 1
}

fn integer_sqrt(q: u64) -> u64 {
    (q as f64).sqrt().round() as u64
}

/// Number of points: (q^(d+e-1) + 1)(q^d - 1)/(q - 1).
pub fn point_count(t: &ParamTriple) -> Result<BigInt> {
    let v = (t.qh(t.d2() + t.e2i() - 2) + BigRational::one())
        * (t.qh(t.d2()) - BigRational::one())
        / (t.qh(2) - BigRational::one());
    to_int(v, "point count")
}

/// Number of generators: prod_{i=0}^{d-1} (q^(e+i) + 1).
pub fn generator_count(t: &ParamTriple) -> Result<BigInt> {
    let mut acc = BigRational::one();
    for i in 0..t.d as i64 {
        acc *= t.qh(t.e2i() + 2 * i) + BigRational::one();
    }
    to_int(acc, "generator count")
}

/// N_t: generators through a fixed totally isotropic t-space,
/// prod_{i=0}^{d-t-1} (q^(e+i) + 1).
pub fn generators_through(t: &ParamTriple, tdim: u32) -> Result<BigInt> {
    if tdim > t.d {
        return Err(Error::InvalidParameter(format!(
            "subspace dimension {tdim} exceeds Witt index {}",
            t.d
        )));
    }
    let mut acc = BigRational::one();
    for i in 0..(t.d - tdim) as i64 {
        acc *= t.qh(t.e2i() + 2 * i) + BigRational::one();
    }
    to_int(acc, "N_t")
}

/// Strongly regular parameters and spectrum of the collinearity graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SrgValues {
    pub n: BigInt,
    pub k: BigInt,
    pub a: BigInt,
    pub c: BigInt,
    pub theta1: BigInt,
    pub theta2: BigInt,
    pub m1: BigInt,
    pub m2: BigInt,
}

/// Evaluate the collinearity-graph parameters.  Requires d >= 2; at d = 1 the
/// graph has no edges and the expressions degenerate.
pub fn eval_srg(t: &ParamTriple) -> Result<SrgValues> {
    if t.d < 2 {
        return Err(Error::InvalidParameter(
            "collinearity parameters need d >= 2".into(),
        ));
    }
    let one = BigRational::one();
    let qm1 = t.qh(2) - &one;

    let n = (t.qh(t.d2() + t.e2i() - 2) + &one) * (t.qh(t.d2()) - &one) / &qm1;
    let k = t.qh(2) * (t.qh(t.d2() + t.e2i() - 4) + &one) * (t.qh(t.d2() - 2) - &one) / &qm1;
    let a = (t.qh(2) - &one)
        + t.qh(4) * (t.qh(t.d2() + t.e2i() - 6) + &one) * (t.qh(t.d2() - 4) - &one) / &qm1;
    let c = (t.qh(t.d2() + t.e2i() - 4) + &one) * (t.qh(t.d2() - 2) - &one) / &qm1;

    let theta1 = t.qh(t.d2() - 2) - &one;
    let theta2 = -(t.qh(t.d2() + t.e2i() - 4) + &one);

    let m1 = t.qh(t.e2i()) * (t.qh(t.d2() + t.e2i() - 4) + &one) / (t.qh(t.e2i() - 2) + &one)
        * (t.qh(t.d2()) - &one)
        / &qm1;
    let m2 = t.qh(2) * (t.qh(t.d2() + t.e2i() - 2) + &one) / (t.qh(t.e2i() - 2) + &one)
        * (t.qh(t.d2() - 2) - &one)
        / &qm1;

    // theta1, theta2 must be the roots of T^2 + (c - a)T + (c - k).
    let root_check = |th: &BigRational| th * th + (&c - &a) * th + (&c - &k);
    if !root_check(&theta1).is_zero() || !root_check(&theta2).is_zero() {
        return Err(Error::InvariantViolation(
            "theta1/theta2 are not roots of the SRG quadratic".into(),
        ));
    }
    // m1 must match the standard multiplicity quotient, and m2 = n - m1 - 1.
    let m1_std = (&theta2 + &one) * &k * (&k - &theta2) / (&c * (&theta2 - &theta1));
    if m1 != m1_std {
        return Err(Error::InvariantViolation(
            "displayed m1 disagrees with the multiplicity quotient".into(),
        ));
    }
    if &m2 != &(&n - &m1 - &one) {
        return Err(Error::InvariantViolation("m2 != n - m1 - 1".into()));
    }

    Ok(SrgValues {
        n: to_int(n, "n")?,
        k: to_int(k, "k")?,
        a: to_int(a, "a")?,
        c: to_int(c, "c")?,
        theta1: to_int(theta1, "theta1")?,
        theta2: to_int(theta2, "theta2")?,
        m1: to_int(m1, "m1")?,
        m2: to_int(m2, "m2")?,
    })
}

/// Rank of the point-generator incidence matrix:
/// (q^(d+e-1)+1)(q^(d+e-1) - q^(e-1) + q - 1) / ((q^(e-1)+1)(q-1)).
pub fn eval_rank_bound(t: &ParamTriple) -> Result<BigInt> {
    let one = BigRational::one();
    let top = t.d2() + t.e2i() - 2;
    let v = (t.qh(top) + &one) * (t.qh(top) - t.qh(t.e2i() - 2) + t.qh(2) - &one)
        / ((t.qh(t.e2i() - 2) + &one) * (t.qh(2) - &one));
    let r = to_int(v, "rank bound")?;
    if r.is_negative() {
        return Err(Error::InvariantViolation("negative rank bound".into()));
    }
    Ok(r)
}

/// The per-family restatement of the rank bound.  Written directly from the
/// family table, independent of `eval_rank_bound`.
pub fn eval_family_bound(t: &ParamTriple, family: Family) -> Result<BigInt> {
    if family != t.family {
        return Err(Error::InvalidParameter(format!(
            "family {} does not match parameter triple for {}",
            family.code(),
            t.family.code()
        )));
    }
    let one = BigRational::one();
    let two = BigRational::from_integer(BigInt::from(2));
    let v = match family {
        Family::Cd | Family::Bd => {
            (t.qh(t.d2()) + &one) * (t.qh(t.d2()) + t.qh(2) - &two)
                / (&two * (t.qh(2) - &one))
        }
        Family::Dd => {
            (t.qh(t.d2() - 2) + &one) * (t.qh(t.d2()) + t.qh(4) - t.qh(2) - &one)
                / (t.qh(4) - &one)
        }
        Family::TwoD => (t.qh(2 * t.d2() + 4) - &one) / (t.qh(4) - &one),
        Family::TwoAEven => {
            (t.qh(t.d2() + 1) + &one) * (t.qh(t.d2() + 1) + t.qh(2) - t.qh(1) - &one)
                / ((t.qh(1) + &one) * (t.qh(2) - &one))
        }
        Family::TwoAOdd => {
            (t.qh(t.d2() - 1) + &one) * (t.qh(t.d2()) + t.qh(3) - t.qh(1) - &one)
                / ((t.qh(1) + &one) * (t.qh(2) - &one))
        }
    };
    to_int(v, "family bound")
}

/// The earlier symplectic bound (q^d+1)(q^d+q-2)/(q-1); exactly twice the
/// family bound for C_d.
pub fn eval_gwl_bound(t: &ParamTriple) -> Result<BigInt> {
    if t.family != Family::Cd {
        return Err(Error::InvalidParameter(
            "the comparison bound is defined for the symplectic family only".into(),
        ));
    }
    let one = BigRational::one();
    let two = BigRational::from_integer(BigInt::from(2));
    let v = (t.qh(t.d2()) + &one) * (t.qh(t.d2()) + t.qh(2) - &two) / (t.qh(2) - &one);
    to_int(v, "comparison bound")
}

/// Everything the `formulas` CLI subcommand reports for one instance.
#[derive(Clone, Debug)]
pub struct FormulaReport {
    pub family: Family,
    pub q: u64,
    pub d: u32,
    pub e2: u8,
    pub points: BigInt,
    pub generators: BigInt,
    pub srg: Option<SrgValues>,
    pub rank_bound: BigInt,
    pub family_bound: BigInt,
    pub gwl_bound: Option<BigInt>,
}

pub fn full_report(t: &ParamTriple) -> Result<FormulaReport> {
    let srg = if t.d >= 2 { Some(eval_srg(t)?) } else { None };
    let rank_bound = eval_rank_bound(t)?;
    let family_bound = eval_family_bound(t, t.family)?;
    let gwl_bound = if t.family == Family::Cd {
        Some(eval_gwl_bound(t)?)
    } else {
        None
    };
    if let Some(s) = &srg {
        // rank = |Omega_1| - m2.
        let via_srg = &s.n - &s.m2;
        if via_srg != rank_bound {
            return Err(Error::InvariantViolation(format!(
                "rank bound {rank_bound} != n - m2 = {via_srg}"
            )));
        }
    }
    Ok(FormulaReport {
        family: t.family,
        q: t.q,
        d: t.d,
        e2: t.e2,
        points: point_count(t)?,
        generators: generator_count(t)?,
        srg,
        rank_bound,
        family_bound,
        gwl_bound,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn triple(family: Family, q: u64, d: u32) -> ParamTriple {
        ParamTriple::new(family, q, d).unwrap()
    }

    #[test]
    fn counts_match_known_values() {
        let cases = [
            (Family::Cd, 2, 2, 15, 15),
            (Family::Cd, 2, 3, 63, 135),
            (Family::TwoAOdd, 4, 2, 45, 27),
            (Family::Dd, 2, 2, 9, 6),
            (Family::Dd, 2, 3, 35, 30),
            (Family::TwoD, 2, 2, 27, 45),
            (Family::TwoAEven, 4, 2, 165, 297),
        ];
        for (fam, q, d, pts, gens) in cases {
            let t = triple(fam, q, d);
            assert_eq!(point_count(&t).unwrap(), BigInt::from(pts), "{fam:?}");
            assert_eq!(generator_count(&t).unwrap(), BigInt::from(gens), "{fam:?}");
        }
    }

    #[test]
    fn srg_values_symplectic() {
        let s = eval_srg(&triple(Family::Cd, 2, 2)).unwrap();
        let expect: [i64; 8] = [15, 6, 1, 3, 1, -3, 9, 5];
        assert_eq!(
            [&s.n, &s.k, &s.a, &s.c, &s.theta1, &s.theta2, &s.m1, &s.m2]
                .map(|x| x.clone()),
            expect.map(BigInt::from)
        );

        let s = eval_srg(&triple(Family::Cd, 2, 3)).unwrap();
        let expect: [i64; 8] = [63, 30, 13, 15, 3, -5, 35, 27];
        assert_eq!(
            [&s.n, &s.k, &s.a, &s.c, &s.theta1, &s.theta2, &s.m1, &s.m2]
                .map(|x| x.clone()),
            expect.map(BigInt::from)
        );
    }

    #[test]
    fn srg_values_elliptic() {
        let s = eval_srg(&triple(Family::TwoD, 2, 2)).unwrap();
        let expect: [i64; 8] = [27, 10, 1, 5, 1, -5, 20, 6];
        assert_eq!(
            [&s.n, &s.k, &s.a, &s.c, &s.theta1, &s.theta2, &s.m1, &s.m2]
                .map(|x| x.clone()),
            expect.map(BigInt::from)
        );
    }

    #[test]
    fn srg_refuses_d1() {
        assert!(eval_srg(&triple(Family::Cd, 2, 1)).is_err());
    }

    #[test]
    fn rank_bound_values() {
        assert_eq!(
            eval_rank_bound(&triple(Family::Cd, 2, 2)).unwrap(),
            BigInt::from(10)
        );
        assert_eq!(
            eval_rank_bound(&triple(Family::TwoD, 2, 2)).unwrap(),
            BigInt::from(21)
        );
        assert_eq!(
            eval_rank_bound(&triple(Family::TwoAEven, 4, 2)).unwrap(),
            BigInt::from(121)
        );
        assert_eq!(
            eval_rank_bound(&triple(Family::Dd, 2, 2)).unwrap(),
            BigInt::from(5)
        );
    }

    #[test]
    fn family_bound_values() {
        assert_eq!(
            eval_family_bound(&triple(Family::Cd, 2, 3), Family::Cd).unwrap(),
            BigInt::from(36)
        );
        assert_eq!(
            eval_family_bound(&triple(Family::Dd, 2, 3), Family::Dd).unwrap(),
            BigInt::from(15)
        );
        assert_eq!(
            eval_family_bound(&triple(Family::TwoAOdd, 4, 2), Family::TwoAOdd).unwrap(),
            BigInt::from(21)
        );
        assert!(eval_family_bound(&triple(Family::Cd, 2, 3), Family::Dd).is_err());
    }

    #[test]
    fn gwl_bound_values_and_doubling() {
        assert_eq!(
            eval_gwl_bound(&triple(Family::Cd, 2, 2)).unwrap(),
            BigInt::from(20)
        );
        assert_eq!(
            eval_gwl_bound(&triple(Family::Cd, 2, 3)).unwrap(),
            BigInt::from(72)
        );
        assert_eq!(
            eval_gwl_bound(&triple(Family::Cd, 3, 2)).unwrap(),
            BigInt::from(50)
        );
        assert!(eval_gwl_bound(&triple(Family::Dd, 2, 2)).is_err());
    }

    #[test]
    fn unitary_requires_square_q() {
        assert!(ParamTriple::new(Family::TwoAOdd, 3, 2).is_err());
        assert!(ParamTriple::new(Family::TwoAOdd, 4, 2).is_ok());
        assert!(ParamTriple::new(Family::TwoAEven, 9, 2).is_ok());
    }

    #[test]
    fn root_identities_across_families() {
        for family in Family::ALL {
            for q in [2u64, 3, 4, 5, 9] {
                if family.is_unitary() && integer_sqrt(q).pow(2) != q {
                    continue;
                }
                for d in 2..=5 {
                    let t = triple(family, q, d);
                    let s = eval_srg(&t).unwrap();
                    assert_eq!(&s.theta1 * &s.theta2, &s.c - &s.k);
                    assert_eq!(&s.theta1 + &s.theta2, &s.a - &s.c);
                    assert_eq!(&s.n, &(&s.m1 + &s.m2 + BigInt::one()));
                }
            }
        }
    }

    #[test]
    fn family_bound_equals_rank_bound_on_grid() {
        for family in Family::ALL {
            for q in [2u64, 3, 4, 5, 9] {
                if family.is_unitary() && integer_sqrt(q).pow(2) != q {
                    continue;
                }
                for d in 1..=6 {
                    let t = triple(family, q, d);
                    assert_eq!(
                        eval_family_bound(&t, family).unwrap(),
                        eval_rank_bound(&t).unwrap(),
                        "{family:?} q={q} d={d}"
                    );
                }
            }
        }
    }
}
