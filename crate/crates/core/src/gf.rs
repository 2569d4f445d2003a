//! Table-based arithmetic for the finite fields F_q, q <= 16.
//!
//! Elements of F_{p^k} are polynomials over F_p reduced modulo a fixed
//! irreducible, and are addressed by the index `sum c_i * p^i` over their
//! coefficients.  Index 0 is zero and index 1 is one.  The modulus is the
//! first monic irreducible of degree k in this same index order, so two
//! constructions of the same field are always identical.

use crate::error::{Error, Result};

/// Largest supported field order.
pub const MAX_ORDER: u8 = 16;

/// An element of some `FieldTable`, stored as its enumeration index.
#[derive(Copy, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default)]
pub struct FieldElement(u8);

impl FieldElement {
    pub const ZERO: FieldElement = FieldElement(0);
    pub const ONE: FieldElement = FieldElement(1);

    pub fn index(self) -> usize {
        self.0 as usize
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

/// Precomputed arithmetic for one finite field.
///
/// Immutable after construction; all operations are table lookups.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FieldTable {
    q: u8,
    p: u8,
    k: u8,
    /// Little-endian coefficients of the modulus, length k+1.  Unused for k = 1.
    modulus: Vec<u8>,
    add: Vec<u8>,
    mul: Vec<u8>,
    neg: Vec<u8>,
    inv: Vec<u8>,
    conj: Option<Vec<u8>>,
}

impl FieldTable {
    pub fn order(&self) -> usize {
        self.q as usize
    }

    pub fn characteristic(&self) -> usize {
        self.p as usize
    }

    pub fn extension_degree(&self) -> usize {
        self.k as usize
    }

    /// Modulus polynomial, little-endian coefficients.  Empty for prime fields.
    pub fn modulus(&self) -> &[u8] {
        &self.modulus
    }

    pub fn element(&self, index: usize) -> Result<FieldElement> {
        if index < self.q as usize {
            Ok(FieldElement(index as u8))
        } else {
            Err(Error::InvalidParameter(format!(
                "element index {index} out of range for F_{}",
                self.q
            )))
        }
    }

    pub fn elements(&self) -> impl Iterator<Item = FieldElement> {
        (0..self.q).map(FieldElement)
    }

    pub fn add(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        FieldElement(self.add[a.index() * self.q as usize + b.index()])
    }

    pub fn sub(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        FieldElement(self.mul[a.index() * self.q as usize + b.index()])
    }

    pub fn neg(&self, a: FieldElement) -> FieldElement {
        FieldElement(self.neg[a.index()])
    }

    /// Multiplicative inverse.  Panics on zero.
    pub fn inv(&self, a: FieldElement) -> FieldElement {
        assert!(!a.is_zero(), "inverse of zero");
        FieldElement(self.inv[a.index()])
    }

    pub fn pow(&self, a: FieldElement, mut e: u64) -> FieldElement {
        let mut base = a;
        let mut acc = FieldElement::ONE;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// True when the order-2 conjugation x -> x^sqrt(q) is defined.
    pub fn has_conj(&self) -> bool {
        self.conj.is_some()
    }

    /// The conjugation x -> x^sqrt(q).  Errors when the extension degree is odd.
    pub fn conj(&self, a: FieldElement) -> Result<FieldElement> {
        match &self.conj {
            Some(t) => Ok(FieldElement(t[a.index()])),
            None => Err(Error::Unsupported(format!(
                "conjugation needs an even extension degree; F_{} has degree {}",
                self.q, self.k
            ))),
        }
    }

    /// Conjugation without the error path, for callers that checked `has_conj`.
    pub(crate) fn sigma(&self, a: FieldElement) -> FieldElement {
        FieldElement(self.conj.as_ref().expect("conjugation undefined")[a.index()])
    }
}

/// Build the arithmetic tables for F_q.
pub fn make_field(q: u8) -> Result<FieldTable> {
    if !(2..=MAX_ORDER).contains(&q) {
        return Err(Error::InvalidParameter(format!(
            "field order must lie in 2..={MAX_ORDER}, got {q}"
        )));
    }
    let (p, k) = factor_prime_power(q).ok_or_else(|| {
        Error::InvalidParameter(format!("field order {q} is not a prime power"))
    })?;

    let modulus = if k == 1 {
        Vec::new()
    } else {
        smallest_irreducible(p, k)
    };

    let qs = q as usize;
    let mut add = vec![0u8; qs * qs];
    let mut mul = vec![0u8; qs * qs];
    let mut neg = vec![0u8; qs];
    for a in 0..qs {
        let da = index_to_digits(a as u8, p, k);
        let mut nd = vec![0u8; k as usize];
        for (i, c) in da.iter().enumerate() {
            nd[i] = (p - c) % p;
        }
        neg[a] = digits_to_index(&nd, p);
        for b in 0..qs {
            let db = index_to_digits(b as u8, p, k);
            let mut sum = vec![0u8; k as usize];
            for i in 0..k as usize {
                sum[i] = (da[i] + db[i]) % p;
            }
            add[a * qs + b] = digits_to_index(&sum, p);
            let prod = poly_mul_mod(&da, &db, &modulus, p, k);
            mul[a * qs + b] = digits_to_index(&prod, p);
        }
    }

    let mut inv = vec![0u8; qs];
    for a in 1..qs {
        let b = (1..qs)
            .find(|&b| mul[a * qs + b] == 1)
            .expect("nonzero element without inverse; modulus not irreducible");
        inv[a] = b as u8;
    }

    let conj = if k % 2 == 0 {
        let table = FieldTable {
            q,
            p,
            k,
            modulus: modulus.clone(),
            add: add.clone(),
            mul: mul.clone(),
            neg: neg.clone(),
            inv: inv.clone(),
            conj: None,
        };
        let exp = (p as u64).pow(k as u32 / 2);
        Some(
            (0..q)
                .map(|i| table.pow(FieldElement(i), exp).0)
                .collect(),
        )
    } else {
        None
    };

    Ok(FieldTable {
        q,
        p,
        k,
        modulus,
        add,
        mul,
        neg,
        inv,
        conj,
    })
}

fn factor_prime_power(q: u8) -> Option<(u8, u8)> {
    let p = (2..=q).find(|&p| q % p == 0)?;
    let mut n = q;
    let mut k = 0u8;
    while n % p == 0 {
        n /= p;
        k += 1;
    }
    if n == 1 {
        Some((p, k))
    } else {
        None
    }
}

fn index_to_digits(mut i: u8, p: u8, k: u8) -> Vec<u8> {
    let mut d = vec![0u8; k as usize];
    for slot in d.iter_mut() {
        *slot = i % p;
        i /= p;
    }
    d
}

fn digits_to_index(d: &[u8], p: u8) -> u8 {
    let mut acc = 0u8;
    for &c in d.iter().rev() {
        acc = acc * p + c;
    }
    acc
}

/// Multiply two degree-<k polynomials and reduce modulo the monic `modulus`.
fn poly_mul_mod(a: &[u8], b: &[u8], modulus: &[u8], p: u8, k: u8) -> Vec<u8> {
    let k = k as usize;
    let mut conv = vec![0u16; 2 * k - 1];
    for i in 0..k {
        if a[i] == 0 {
            continue;
        }
        for j in 0..k {
            conv[i + j] += a[i] as u16 * b[j] as u16;
        }
    }
    let mut c: Vec<u8> = conv.iter().map(|&x| (x % p as u16) as u8).collect();
    for deg in (k..c.len()).rev() {
        let coef = c[deg];
        if coef == 0 {
            continue;
        }
        c[deg] = 0;
        for j in 0..k {
            let t = (coef as u16 * modulus[j] as u16) % p as u16;
            c[deg - k + j] = ((c[deg - k + j] as u16 + p as u16 - t) % p as u16) as u8;
        }
    }
    c.truncate(k);
    c
}

/// First monic irreducible of degree k over F_p, scanning candidates by index.
fn smallest_irreducible(p: u8, k: u8) -> Vec<u8> {
    let pk = (p as u32).pow(k as u32);
    for code in 0..pk {
        let mut coeffs = Vec::with_capacity(k as usize + 1);
        let mut c = code;
        for _ in 0..k {
            coeffs.push((c % p as u32) as u8);
            c /= p as u32;
        }
        coeffs.push(1);
        if is_irreducible(&coeffs, p) {
            return coeffs;
        }
    }
    unreachable!("an irreducible of each degree always exists")
}

/// Trial division by every monic polynomial of degree 1..=deg/2.
fn is_irreducible(poly: &[u8], p: u8) -> bool {
    let deg = poly.len() - 1;
    for dd in 1..=deg / 2 {
        let count = (p as u32).pow(dd as u32);
        for code in 0..count {
            let mut div = Vec::with_capacity(dd + 1);
            let mut c = code;
            for _ in 0..dd {
                div.push((c % p as u32) as u8);
                c /= p as u32;
            }
            div.push(1);
            if poly_divides(&div, poly, p) {
                return false;
            }
        }
    }
    true
}

fn poly_divides(div: &[u8], poly: &[u8], p: u8) -> bool {
    let mut rem: Vec<u8> = poly.to_vec();
    let dd = div.len() - 1;
    while rem.len() > dd {
        let lead = *rem.last().unwrap();
        let top = rem.len() - 1;
        if lead != 0 {
            for j in 0..=dd {
                let t = (lead as u16 * div[j] as u16) % p as u16;
                let idx = top - dd + j;
                rem[idx] = ((rem[idx] as u16 + p as u16 - t) % p as u16) as u8;
            }
        }
        rem.pop();
    }
    rem.iter().all(|&c| c == 0)
}

#[cfg(test)]
mod tests {
    use super::*;

    const ORDERS: [u8; 10] = [2, 3, 4, 5, 7, 8, 9, 11, 13, 16];

    #[test]
    fn rejects_non_prime_powers_and_large_orders() {
        for q in [0, 1, 6, 10, 12, 14, 15] {
            assert!(make_field(q).is_err(), "q={q}");
        }
        assert!(make_field(17).is_err());
    }

    #[test]
    fn characteristic_two_self_inverse() {
        let f = make_field(2).unwrap();
        assert_eq!(f.add(FieldElement::ONE, FieldElement::ONE), FieldElement::ZERO);
    }

    #[test]
    fn field_axioms_exhaustive() {
        for q in ORDERS {
            let f = make_field(q).unwrap();
            let elems: Vec<_> = f.elements().collect();
            for &a in &elems {
                assert_eq!(f.add(a, FieldElement::ZERO), a);
                assert_eq!(f.mul(a, FieldElement::ONE), a);
                assert_eq!(f.add(a, f.neg(a)), FieldElement::ZERO);
                if !a.is_zero() {
                    assert_eq!(f.mul(a, f.inv(a)), FieldElement::ONE);
                }
                for &b in &elems {
                    assert_eq!(f.add(a, b), f.add(b, a));
                    assert_eq!(f.mul(a, b), f.mul(b, a));
                    for &c in &elems {
                        assert_eq!(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
                        assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
                        assert_eq!(
                            f.mul(a, f.add(b, c)),
                            f.add(f.mul(a, b), f.mul(a, c))
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn multiplicative_group_is_cyclic_of_order_q_minus_1() {
        for q in ORDERS {
            let f = make_field(q).unwrap();
            for a in f.elements().skip(1) {
                assert_eq!(f.pow(a, q as u64 - 1), FieldElement::ONE, "q={q}");
            }
            // Some element has full order, i.e. the group is cyclic.
            let has_generator = f.elements().skip(1).any(|a| {
                (1..q as u64 - 1).all(|e| f.pow(a, e) != FieldElement::ONE)
            });
            assert!(has_generator, "q={q}");
        }
    }

    #[test]
    fn conj_fixes_exactly_the_subfield() {
        // F_9: x -> x^3 must fix exactly 3 elements.
        let f = make_field(9).unwrap();
        let fixed = f.elements().filter(|&x| f.conj(x).unwrap() == x).count();
        assert_eq!(fixed, 3);
        for x in f.elements() {
            assert_eq!(f.conj(x).unwrap(), f.pow(x, 3));
        }
    }

    #[test]
    fn conj_properties() {
        for q in [4u8, 9, 16] {
            let f = make_field(q).unwrap();
            assert!(f.has_conj());
            assert_eq!(f.conj(FieldElement::ZERO).unwrap(), FieldElement::ZERO);
            for x in f.elements() {
                let cx = f.conj(x).unwrap();
                assert_eq!(f.conj(cx).unwrap(), x, "involution, q={q}");
                for y in f.elements() {
                    assert_eq!(
                        f.conj(f.mul(x, y)).unwrap(),
                        f.mul(cx, f.conj(y).unwrap())
                    );
                    assert_eq!(
                        f.conj(f.add(x, y)).unwrap(),
                        f.add(cx, f.conj(y).unwrap()),
                        "Frobenius additivity, q={q}"
                    );
                }
            }
        }
        for q in [2u8, 3, 5, 7, 8, 11, 13] {
            let f = make_field(q).unwrap();
            assert!(f.conj(FieldElement::ONE).is_err(), "q={q}");
        }
    }

    #[test]
    fn conj_on_f4_swaps_the_generators() {
        let f = make_field(4).unwrap();
        // The two elements outside F_2 are indices 2 and 3; conj swaps them.
        let g = f.element(2).unwrap();
        let cg = f.conj(g).unwrap();
        assert_ne!(cg, g);
        assert_eq!(cg, f.mul(g, g));
        for x in [FieldElement::ZERO, FieldElement::ONE] {
            assert_eq!(f.conj(x).unwrap(), x);
        }
    }

    #[test]
    fn construction_is_deterministic() {
        for q in ORDERS {
            assert_eq!(make_field(q).unwrap(), make_field(q).unwrap());
        }
    }

    #[test]
    fn known_moduli() {
        assert_eq!(make_field(4).unwrap().modulus(), &[1, 1, 1]);
        assert_eq!(make_field(8).unwrap().modulus(), &[1, 1, 0, 1]);
        assert_eq!(make_field(9).unwrap().modulus(), &[1, 0, 1]);
        assert_eq!(make_field(16).unwrap().modulus(), &[1, 1, 0, 0, 1]);
    }
}
