//! Small finite fields `F_q = F_p[t]/(f)` with table-driven arithmetic, and
//! additive characters through the trace pairing `χ_c(x) = ψ(Tr(c x))`.
//!
//! Elements are encoded as integers `Σ c_i p^i` over their coefficient vector.
//! The modulus `f` is the monic irreducible of degree `m` whose lower
//! coefficients have the smallest such encoding.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const DEFAULT_MAX_Q: u64 = 16;
/// Elements are stored in a byte.
pub const HARD_MAX_Q: u64 = 256;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Elem(pub u8);

impl Elem {
    pub const ZERO: Elem = Elem(0);
    pub const ONE: Elem = Elem(1);

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

#[derive(Clone)]
pub struct Field {
    p: u64,
    m: u32,
    q: usize,
    modulus: Vec<u64>,
    add: Vec<u8>,
    mul: Vec<u8>,
    neg: Vec<u8>,
    inv: Vec<u8>,
    trace: Vec<u8>,
}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{} (modulus {})", self.q, self.modulus_string())
    }
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        self.q == other.q && self.modulus == other.modulus
    }
}

impl Eq for Field {}

fn factor_prime_power(q: u64) -> Option<(u64, u32)> {
    if q < 2 {
        return None;
    }
    let p = (2..=q).find(|&d| q.is_multiple_of(d))?;
    let mut n = q;
    let mut m = 0;
    while n.is_multiple_of(p) {
        n /= p;
        m += 1;
    }
    (n == 1).then_some((p, m))
}

/// Remainder of `a` modulo the monic `b` over `F_p`; coefficients low to high.
fn poly_rem(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut r = a.to_vec();
    let db = b.len() - 1;
    while r.len() > db {
        let lead = *r.last().unwrap() % p;
        let shift = r.len() - 1 - db;
        if lead != 0 {
            for (i, &c) in b.iter().enumerate() {
                r[shift + i] = (r[shift + i] + p * p - lead * c % p) % p;
            }
        }
        r.pop();
    }
    while r.last() == Some(&0) {
        r.pop();
    }
    r
}

fn digits(mut n: u64, p: u64, len: usize) -> Vec<u64> {
    (0..len)
        .map(|_| {
            let d = n % p;
            n /= p;
            d
        })
        .collect()
}

fn is_irreducible(f: &[u64], p: u64) -> bool {
    let m = f.len() - 1;
    for d in 1..=m / 2 {
        for low in 0..p.pow(d as u32) {
            let mut g = digits(low, p, d);
            g.push(1);
            if poly_rem(f, &g, p).is_empty() {
                return false;
            }
        }
    }
    true
}

impl Field {
    pub fn new(q: u64) -> Result<Self> {
        Self::with_bound(q, DEFAULT_MAX_Q)
    }

    pub fn with_bound(q: u64, max_q: u64) -> Result<Self> {
        let max_q = max_q.min(HARD_MAX_Q);
        let (p, m) = factor_prime_power(q)
            .filter(|_| q <= max_q)
            .ok_or(Error::FieldSize(q, max_q))?;
        let modulus = (0..p.pow(m))
            .map(|low| {
                let mut f = digits(low, p, m as usize);
                f.push(1);
                f
            })
            .find(|f| is_irreducible(f, p))
            .expect("irreducible polynomials exist in every degree");
        let qs = q as usize;
        let to_vec = |e: usize| digits(e as u64, p, m as usize);
        let from_vec = |v: &[u64]| -> u8 { v.iter().rev().fold(0u64, |acc, &c| acc * p + c) as u8 };
        let mut add = vec![0u8; qs * qs];
        let mut mul = vec![0u8; qs * qs];
        for a in 0..qs {
            let va = to_vec(a);
            for b in 0..qs {
                let vb = to_vec(b);
                let s: Vec<u64> = va.iter().zip(&vb).map(|(x, y)| (x + y) % p).collect();
                add[a * qs + b] = from_vec(&s);
                let mut prod = vec![0u64; 2 * m as usize];
                for (i, x) in va.iter().enumerate() {
                    for (j, y) in vb.iter().enumerate() {
                        prod[i + j] = (prod[i + j] + x * y) % p;
                    }
                }
                let mut r = poly_rem(&prod, &modulus, p);
                r.resize(m as usize, 0);
                mul[a * qs + b] = from_vec(&r);
            }
        }
        let neg: Vec<u8> = (0..qs)
            .map(|a| (0..qs).find(|&b| add[a * qs + b] == 0).unwrap() as u8)
            .collect();
        let inv: Vec<u8> = (0..qs)
            .map(|a| {
                if a == 0 {
                    0
                } else {
                    (1..qs).find(|&b| mul[a * qs + b] == 1).unwrap() as u8
                }
            })
            .collect();
        let mut field = Field {
            p,
            m,
            q: qs,
            modulus,
            add,
            mul,
            neg,
            inv,
            trace: Vec::new(),
        };
        // Tr(x) = x + x^p + ... + x^{p^{m-1}} lies in the prime field
        field.trace = (0..qs)
            .map(|a| {
                let mut s = Elem::ZERO;
                let mut y = Elem(a as u8);
                for _ in 0..m {
                    s = field.add(s, y);
                    y = field.pow(y, p);
                }
                debug_assert!((s.0 as u64) < p);
                s.0
            })
            .collect();
        Ok(field)
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.m
    }

    pub fn q(&self) -> usize {
        self.q
    }

    /// Coefficients of the modulus, low degree first.
    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    pub fn modulus_string(&self) -> String {
        let mut parts = Vec::new();
        for (i, &c) in self.modulus.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            let mono = match i {
                0 => String::new(),
                1 => "t".to_string(),
                _ => format!("t^{i}"),
            };
            parts.push(match (c, i) {
                (_, 0) => c.to_string(),
                (1, _) => mono,
                _ => format!("{c}{mono}"),
            });
        }
        parts.join("+")
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> + Clone {
        (0..self.q).map(|a| Elem(a as u8))
    }

    pub fn units(&self) -> impl Iterator<Item = Elem> + Clone {
        (1..self.q).map(|a| Elem(a as u8))
    }

    pub fn elem(&self, v: u64) -> Result<Elem> {
        if (v as usize) < self.q {
            Ok(Elem(v as u8))
        } else {
            Err(Error::FieldElement)
        }
    }

    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        Elem(self.add[a.0 as usize * self.q + b.0 as usize])
    }

    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg(b))
    }

    pub fn neg(&self, a: Elem) -> Elem {
        Elem(self.neg[a.0 as usize])
    }

    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        Elem(self.mul[a.0 as usize * self.q + b.0 as usize])
    }

    pub fn inv(&self, a: Elem) -> Result<Elem> {
        if a.is_zero() {
            Err(Error::ZeroScalar)
        } else {
            Ok(Elem(self.inv[a.0 as usize]))
        }
    }

    pub fn pow(&self, a: Elem, mut e: u64) -> Elem {
        let mut base = a;
        let mut acc = Elem::ONE;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    pub fn frobenius(&self, a: Elem) -> Elem {
        self.pow(a, self.p)
    }

    /// Image of an integer in the prime field.
    pub fn from_int(&self, n: i64) -> Elem {
        Elem(n.rem_euclid(self.p as i64) as u8)
    }

    pub fn scale_int(&self, a: Elem, n: i64) -> Elem {
        self.mul(self.from_int(n), a)
    }

    pub fn trace(&self, a: Elem) -> u8 {
        self.trace[a.0 as usize]
    }

    pub fn to_coeffs(&self, a: Elem) -> Vec<u64> {
        digits(a.0 as u64, self.p, self.m as usize)
    }

    pub fn from_coeffs(&self, v: &[u64]) -> Result<Elem> {
        if v.len() != self.m as usize || v.iter().any(|&c| c >= self.p) {
            return Err(Error::FieldElement);
        }
        Ok(Elem(v.iter().rev().fold(0u64, |acc, &c| acc * self.p + c) as u8))
    }

    /// Exponent `e ∈ Z/p` with `χ_c(x) = exp(2πi e / p)`.
    pub fn char_eval(&self, c: Elem, x: Elem) -> u8 {
        self.trace(self.mul(c, x))
    }

    /// Whether `(x, y) ↦ Π_k χ_{c_k}(C_k x^{i_k} y^{j_k})` is identically 1,
    /// by evaluating at every point of `F_q²`.
    pub fn char_product_trivial(&self, terms: &[CharTerm]) -> bool {
        let p = self.p as u32;
        let terms: Vec<(Elem, u32, u32)> = terms
            .iter()
            .map(|t| (self.scale_int(t.c, t.constant), t.i, t.j))
            .filter(|(c, _, _)| !c.is_zero())
            .collect();
        if terms.is_empty() {
            return true;
        }
        for x in self.elements() {
            for y in self.elements() {
                let mut e = 0u32;
                for &(c, i, j) in &terms {
                    let mono = self.mul(self.pow(x, i as u64), self.pow(y, j as u64));
                    e += self.char_eval(c, mono) as u32;
                }
                if !e.is_multiple_of(p) {
                    return false;
                }
            }
        }
        true
    }

    /// Reduced coefficients of `Σ_k Tr(c_k C_k x^{i_k} y^{j_k})` as a
    /// polynomial in `x, y` modulo `x^q = x`, `y^q = y`; keys are exponents.
    pub fn trace_polynomial(&self, terms: &[CharTerm]) -> Vec<((u64, u64), Elem)> {
        let mut acc: std::collections::BTreeMap<(u64, u64), Elem> = Default::default();
        for t in terms {
            let mut c = self.scale_int(t.c, t.constant);
            let (mut i, mut j) = (t.i as u64, t.j as u64);
            for _ in 0..self.m {
                let key = (self.reduce_exp(i), self.reduce_exp(j));
                let slot = acc.entry(key).or_insert(Elem::ZERO);
                *slot = self.add(*slot, c);
                c = self.frobenius(c);
                i *= self.p;
                j *= self.p;
            }
        }
        acc.into_iter().filter(|(_, c)| !c.is_zero()).collect()
    }

    /// The same verdict as [`Field::char_product_trivial`], through
    /// [`Field::trace_polynomial`] instead of evaluation.
    pub fn char_product_trivial_poly(&self, terms: &[CharTerm]) -> bool {
        self.trace_polynomial(terms).is_empty()
    }

    /// `x^e` and `x^{e'}` agree as functions on `F_q` iff the reduced exponents match.
    pub fn reduce_exp(&self, e: u64) -> u64 {
        let q1 = self.q as u64 - 1;
        if e == 0 {
            0
        } else {
            (e - 1) % q1 + 1
        }
    }
}

/// `χ_c(C x^i y^j)` as one factor of a product of characters.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CharTerm {
    pub c: Elem,
    pub i: u32,
    pub j: u32,
    pub constant: i64,
}

impl CharTerm {
    pub fn new(c: Elem, (i, j): (u32, u32), constant: i64) -> Self {
        CharTerm { c, i, j, constant }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sizes_and_moduli() {
        for q in [2, 3, 4, 5, 7, 8, 9, 11, 13, 16] {
            let f = Field::new(q).unwrap();
            assert_eq!(f.q() as u64, q);
            assert_eq!(f.p().pow(f.degree()), q);
        }
        assert_eq!(Field::new(4).unwrap().modulus_string(), "t^2+t+1");
        assert_eq!(Field::new(8).unwrap().modulus_string(), "t^3+t+1");
        assert_eq!(Field::new(9).unwrap().modulus_string(), "t^2+1");
        assert_eq!(Field::new(16).unwrap().modulus_string(), "t^4+t+1");
        for bad in [0, 1, 6, 10, 12, 17, 32] {
            assert!(Field::new(bad).is_err(), "{bad}");
        }
        assert!(Field::with_bound(32, 64).is_ok());
    }

    #[test]
    fn field_axioms() {
        for q in [2, 3, 4, 8, 9] {
            let f = Field::new(q).unwrap();
            for a in f.elements() {
                assert_eq!(f.add(a, f.neg(a)), Elem::ZERO);
                if !a.is_zero() {
                    assert_eq!(f.mul(a, f.inv(a).unwrap()), Elem::ONE);
                }
                assert_eq!(f.pow(a, q), a);
                for b in f.elements() {
                    assert_eq!(f.add(a, b), f.add(b, a));
                    assert_eq!(f.mul(a, b), f.mul(b, a));
                    // Frobenius is additive and multiplicative
                    assert_eq!(f.frobenius(f.add(a, b)), f.add(f.frobenius(a), f.frobenius(b)));
                    assert_eq!(f.frobenius(f.mul(a, b)), f.mul(f.frobenius(a), f.frobenius(b)));
                    for c in f.elements() {
                        assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                        assert_eq!(f.mul(a, f.mul(b, c)), f.mul(f.mul(a, b), c));
                    }
                }
            }
        }
    }

    #[test]
    fn char_eval_examples() {
        let f2 = Field::new(2).unwrap();
        assert_eq!(f2.char_eval(Elem::ONE, Elem::ONE), 1);
        assert_eq!(f2.char_eval(Elem::ZERO, Elem::ONE), 0);
        // F_4: Tr(y) = y + y^2; t*t = t+1 and Tr(t+1) = 1
        let f4 = Field::new(4).unwrap();
        let t = f4.from_coeffs(&[0, 1]).unwrap();
        let tt = f4.mul(t, t);
        assert_eq!(f4.to_coeffs(tt), vec![1, 1]);
        let direct = f4.add(tt, f4.mul(tt, tt));
        assert_eq!(f4.char_eval(t, t), direct.0);
        assert_eq!(f4.char_eval(t, t), 1);
    }

    #[test]
    fn characters_are_a_bijection() {
        for q in [2, 3, 4, 9] {
            let f = Field::new(q).unwrap();
            let tables: std::collections::HashSet<Vec<u8>> = f
                .elements()
                .map(|c| f.elements().map(|x| f.char_eval(c, x)).collect())
                .collect();
            assert_eq!(tables.len(), q as usize);
            for c in f.elements() {
                for d in f.elements() {
                    for x in f.elements() {
                        let lhs = f.char_eval(f.add(c, d), x) as u64;
                        let rhs = (f.char_eval(c, x) + f.char_eval(d, x)) as u64 % f.p();
                        assert_eq!(lhs, rhs);
                    }
                }
            }
        }
    }

    #[test]
    fn product_trivial_examples() {
        let f2 = Field::new(2).unwrap();
        let terms = [
            CharTerm::new(Elem::ONE, (1, 1), 1),
            CharTerm::new(Elem::ONE, (2, 1), -1),
        ];
        assert!(f2.char_product_trivial(&terms));
        assert!(f2.char_product_trivial_poly(&terms));
        assert!(f2.char_product_trivial(&[]));
        let f3 = Field::new(3).unwrap();
        let single = [CharTerm::new(Elem::ONE, (1, 1), 1)];
        assert!(!f3.char_product_trivial(&single));
        assert!(!f3.char_product_trivial_poly(&single));
        // constant 2 vanishes in characteristic 2
        assert!(f2.char_product_trivial(&[CharTerm::new(Elem::ONE, (1, 1), 2)]));
    }

    #[test]
    fn poly_oracle_agrees_with_evaluation() {
        for q in [2, 3, 4, 5, 8, 9] {
            let f = Field::new(q).unwrap();
            let monos = [(1, 1), (2, 1), (1, 2), (3, 1), (3, 2), (2, 2)];
            let consts = [1, -1, 2, -2, 3];
            // every pair of terms with small parameters
            for (a, &m1) in monos.iter().enumerate() {
                for &m2 in &monos[a..] {
                    for c1 in f.elements().take(4) {
                        for c2 in f.elements().take(4) {
                            for &k in &consts {
                                let terms = [CharTerm::new(c1, m1, 1), CharTerm::new(c2, m2, k)];
                                assert_eq!(
                                    f.char_product_trivial(&terms),
                                    f.char_product_trivial_poly(&terms),
                                    "q={q} {terms:?}"
                                );
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn coefficient_round_trip() {
        let f = Field::new(9).unwrap();
        for a in f.elements() {
            assert_eq!(f.from_coeffs(&f.to_coeffs(a)).unwrap(), a);
        }
        assert!(f.from_coeffs(&[3, 0]).is_err());
        assert!(f.elem(9).is_err());
    }
}
