//! Root group morphisms, Chevalley commutator constants and the signs with
//! which Weyl group lifts permute root groups.
//!
//! A [`Pinning`] is a faithful representation in which every root `a` acts by
//! an integer nilpotent matrix `X_a`, so that `u_a(t) = exp(t X_a)`. Constants
//! are never tabulated by hand: they are read off the matrices by peeling the
//! factors of a commutator one at a time, which makes every constant
//! self-validating against the representation.
//!
//! Commutators use `[g, h] = g⁻¹ h⁻¹ g h`, and
//! `[u_a(s), u_b(t)] = Π u_{ia+jb}(C_{ij} s^i t^j)` with the product taken in
//! increasing `(i+j, i)` order.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, RwLock};

use num_traits::Zero;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::affine::{AffineRoot, ApartmentPoint};
use crate::error::{Error, Result};
use crate::rational::Q;

type GradientExpansion = Vec<(Root, CommutatorTerm)>;
type Entry = (usize, usize, i64);
use crate::root_system::{CartanType, Root, RootSystem};

/// Dense square integer matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntMatrix {
    n: usize,
    data: Vec<i64>,
}

impl IntMatrix {
    pub fn zero(n: usize) -> Self {
        IntMatrix {
            n,
            data: vec![0; n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n);
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        m
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Self {
        let n = rows.len();
        assert!(rows.iter().all(|r| r.len() == n), "matrix must be square");
        IntMatrix {
            n,
            data: rows.iter().flatten().copied().collect(),
        }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, r: usize, c: usize) -> i64 {
        self.data[r * self.n + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: i64) {
        self.data[r * self.n + c] = v;
    }

    pub fn rows(&self) -> Vec<Vec<i64>> {
        self.data.chunks(self.n).map(|c| c.to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        let n = self.n;
        let mut out = IntMatrix::zero(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.data[i * n + k];
                if a == 0 {
                    continue;
                }
                let row = &other.data[k * n..(k + 1) * n];
                let dst = &mut out.data[i * n..(i + 1) * n];
                for (d, &b) in dst.iter_mut().zip(row) {
                    *d += a * b;
                }
            }
        }
        out
    }

    pub fn add_scaled(&mut self, other: &IntMatrix, k: i64) {
        for (a, b) in self.data.iter_mut().zip(&other.data) {
            *a += k * b;
        }
    }

    pub fn sub(&self, other: &IntMatrix) -> IntMatrix {
        let mut out = self.clone();
        out.add_scaled(other, -1);
        out
    }

    fn exact_div(&mut self, k: i64) {
        for a in &mut self.data {
            debug_assert_eq!(*a % k, 0, "divided power is not integral");
            *a /= k;
        }
    }

    fn nonzero_entries(&self) -> Vec<(usize, usize, i64)> {
        let n = self.n;
        self.data
            .iter()
            .enumerate()
            .filter(|(_, &v)| v != 0)
            .map(|(i, &v)| (i / n, i % n, v))
            .collect()
    }
}

/// Which family of root group morphisms to use.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum PinningKind {
    /// The explicit 4x4 symplectic matrices for type C2.
    #[serde(rename = "sp4")]
    Sp4,
    /// Elementary matrices `E_ij` in `SL_{n+1}` for type A.
    #[serde(rename = "elementary")]
    Elementary,
    /// Adjoint representation on a Chevalley basis (any type).
    #[serde(rename = "chevalley")]
    Adjoint,
}

impl PinningKind {
    pub fn name(&self) -> &'static str {
        match self {
            PinningKind::Sp4 => "sp4",
            PinningKind::Elementary => "elementary",
            PinningKind::Adjoint => "chevalley",
        }
    }

    pub fn default_for(rs: &RootSystem) -> PinningKind {
        match (rs.cartan_type(), rs.rank()) {
            (CartanType::C, 2) => PinningKind::Sp4,
            (CartanType::A, _) => PinningKind::Elementary,
            _ => PinningKind::Adjoint,
        }
    }
}

impl fmt::Display for PinningKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for PinningKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "sp4" => Ok(PinningKind::Sp4),
            "elementary" => Ok(PinningKind::Elementary),
            "chevalley" | "adjoint" => Ok(PinningKind::Adjoint),
            other => Err(Error::Pinning(other.to_string())),
        }
    }
}

/// One factor `u_{iα+jβ}(C s^i t^j)` of a commutator.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CommutatorTerm {
    pub i: u32,
    pub j: u32,
    pub constant: i64,
}

/// Structure constants `N_{r,s}` of a Chevalley basis, `[e_r, e_s] = N_{r,s} e_{r+s}`.
///
/// Positive extraspecial pairs get `N = sign · (p+1)`; everything else follows
/// from antisymmetry, `N_{-r,-s} = -N_{r,s}`, the cyclic identity for
/// `r+s+t = 0` and the four-root identity.
#[derive(Debug, Clone)]
pub struct StructureConstants {
    n: usize,
    table: Vec<i64>,
    extraspecial: Vec<ExtraspecialPair>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExtraspecialPair {
    pub alpha: Root,
    pub beta: Root,
    pub sign: i64,
}

impl StructureConstants {
    /// `signs` is indexed like the non-simple positive roots in (height, lex)
    /// order; missing entries default to `+1`.
    pub fn new(rs: &RootSystem, signs: &[i64]) -> Self {
        let roots = rs.roots();
        let n = roots.len();
        let npos = rs.num_positive();
        // extraspecial pair for each non-simple positive root
        let mut extra: HashMap<usize, (usize, usize, i64)> = HashMap::new();
        let mut extraspecial = Vec::new();
        let mut k = 0;
        for xi in 0..npos {
            if roots[xi].height() == 1 {
                continue;
            }
            let (a, b) = (0..npos)
                .find_map(|a| {
                    let rest = &roots[xi] - &roots[a];
                    rs.root_index(&rest).filter(|&b| b < npos).map(|b| (a, b))
                })
                .expect("non-simple positive root is a sum of two positive roots");
            let sign = signs.get(k).copied().unwrap_or(1);
            assert!(sign == 1 || sign == -1, "extraspecial sign must be ±1");
            k += 1;
            extra.insert(xi, (a, b, sign));
            extraspecial.push(ExtraspecialPair {
                alpha: roots[a].clone(),
                beta: roots[b].clone(),
                sign,
            });
        }
        let mut builder = Builder {
            rs,
            npos,
            extra,
            memo: HashMap::new(),
        };
        let mut table = vec![0; n * n];
        for r in 0..n {
            for s in 0..n {
                table[r * n + s] = builder.n(r, s);
            }
        }
        StructureConstants { n, table, extraspecial }
    }

    pub fn get(&self, r: usize, s: usize) -> i64 {
        self.table[r * self.n + s]
    }

    pub fn extraspecial(&self) -> &[ExtraspecialPair] {
        &self.extraspecial
    }
}

struct Builder<'a> {
    rs: &'a RootSystem,
    npos: usize,
    extra: HashMap<usize, (usize, usize, i64)>,
    memo: HashMap<(usize, usize), i64>,
}

impl Builder<'_> {
    fn root(&self, i: usize) -> &Root {
        &self.rs.roots()[i]
    }

    fn idx(&self, r: &Root) -> Option<usize> {
        self.rs.root_index(r)
    }

    fn neg(&self, i: usize) -> usize {
        self.idx(&-self.root(i)).unwrap()
    }

    fn norm(&self, i: usize) -> i64 {
        self.rs.norm(self.root(i))
    }

    fn n(&mut self, r: usize, s: usize) -> i64 {
        if let Some(&v) = self.memo.get(&(r, s)) {
            return v;
        }
        let v = self.compute(r, s);
        self.memo.insert((r, s), v);
        v
    }

    fn compute(&mut self, r: usize, s: usize) -> i64 {
        let sum = self.root(r) + self.root(s);
        let Some(t) = self.idx(&sum) else {
            return 0;
        };
        let (rp, sp) = (r < self.npos, s < self.npos);
        if !rp && !sp {
            let (nr, ns) = (self.neg(r), self.neg(s));
            return -self.n(nr, ns);
        }
        if rp != sp {
            // r + s + u = 0 with u = -(r+s):
            // N_{r,s}/(u,u) = N_{s,u}/(r,r) = N_{u,r}/(s,s)
            let u = self.neg(t);
            let nu = self.norm(u);
            let (num, den) = if (u < self.npos) == rp {
                // u has the sign of r: (u, r) is a same-sign pair
                (self.n(u, r) * nu, self.norm(s))
            } else {
                (self.n(s, u) * nu, self.norm(r))
            };
            debug_assert_eq!(num % den, 0);
            return num / den;
        }
        // both positive
        let (a, b, sign) = self.extra[&t];
        if (r, s) == (a, b) {
            let p = self.string_below(a, b);
            return sign * (p + 1);
        }
        if (s, r) == (a, b) {
            return -self.n(s, r);
        }
        // four-root identity with (r, s, -a, -b)
        let (na, nb) = (self.neg(a), self.neg(b));
        let mut acc = Q::zero();
        // N_{s,-a} N_{r,-b} / |s-a|^2
        if let Some(sa) = self.idx(&(self.root(s) - self.root(a))) {
            acc += Q::new(self.n(s, na) * self.n(r, nb), self.norm(sa));
        }
        // N_{-a,r} N_{s,-b} / |r-a|^2
        if let Some(ra) = self.idx(&(self.root(r) - self.root(a))) {
            acc += Q::new(self.n(na, r) * self.n(s, nb), self.norm(ra));
        }
        let v = acc * -self.norm(t) / self.n(na, nb);
        debug_assert!(v.is_integer());
        v.to_integer()
    }

    /// Largest `p` with `b - p a` a root.
    fn string_below(&self, a: usize, b: usize) -> i64 {
        let mut p = 0;
        loop {
            let v = self.root(b) - &self.root(a).scale(p + 1);
            if self.idx(&v).is_none() {
                return p;
            }
            p += 1;
        }
    }
}

/// A pinned faithful representation together with cached commutator data.
#[derive(Debug)]
pub struct Pinning {
    rs: RootSystem,
    kind: PinningKind,
    /// Nilpotent `X_a`, indexed like `rs.roots()`.
    ops: Vec<IntMatrix>,
    extraspecial: Vec<ExtraspecialPair>,
    /// Lifts `n_i` of the simple affine reflections and their inverses, `i = 0..=l`.
    lifts: Vec<(IntMatrix, IntMatrix)>,
    cache: RwLock<HashMap<(usize, usize), Arc<GradientExpansion>>>,
}

impl Clone for Pinning {
    fn clone(&self) -> Self {
        Pinning {
            rs: self.rs.clone(),
            kind: self.kind,
            ops: self.ops.clone(),
            extraspecial: self.extraspecial.clone(),
            lifts: self.lifts.clone(),
            cache: RwLock::new(self.cache.read().unwrap().clone()),
        }
    }
}

fn elementary(n: usize, entries: &[(usize, usize, i64)]) -> IntMatrix {
    let mut m = IntMatrix::zero(n);
    for &(r, c, v) in entries {
        m.set(r, c, v);
    }
    m
}

impl Pinning {
    pub fn default_for(rs: &RootSystem) -> Self {
        Self::new(rs, PinningKind::default_for(rs)).expect("default pinning exists")
    }

    pub fn new(rs: &RootSystem, kind: PinningKind) -> Result<Self> {
        Self::with_signs(rs, kind, &[])
    }

    /// `signs` only affects the adjoint pinning (extraspecial pair signs).
    pub fn with_signs(rs: &RootSystem, kind: PinningKind, signs: &[i64]) -> Result<Self> {
        let (ops, extraspecial) = match kind {
            PinningKind::Sp4 => {
                if (rs.cartan_type(), rs.rank()) != (CartanType::C, 2) {
                    return Err(Error::Pinning(kind.name().into()));
                }
                (sp4_ops(rs), Vec::new())
            }
            PinningKind::Elementary => {
                if rs.cartan_type() != CartanType::A {
                    return Err(Error::Pinning(kind.name().into()));
                }
                (elementary_ops(rs), Vec::new())
            }
            PinningKind::Adjoint => {
                let sc = StructureConstants::new(rs, signs);
                (adjoint_ops(rs, &sc), sc.extraspecial().to_vec())
            }
        };
        let mut p = Pinning {
            rs: rs.clone(),
            kind,
            ops,
            extraspecial,
            lifts: Vec::new(),
            cache: RwLock::new(HashMap::new()),
        };
        let theta = rs.highest_root().clone();
        let mut lifts = vec![p.weyl_lift(&-&theta)];
        for a in rs.simple_roots() {
            lifts.push(p.weyl_lift(&a));
        }
        p.lifts = lifts;
        Ok(p)
    }

    pub fn root_system(&self) -> &RootSystem {
        &self.rs
    }

    pub fn kind(&self) -> PinningKind {
        self.kind
    }

    pub fn dim(&self) -> usize {
        self.ops[0].dim()
    }

    pub fn extraspecial(&self) -> &[ExtraspecialPair] {
        &self.extraspecial
    }

    pub fn nilpotent(&self, a: &Root) -> Result<&IntMatrix> {
        let i = self.rs.root_index(a).ok_or_else(|| Error::NotARoot(a.0.clone()))?;
        Ok(&self.ops[i])
    }

    /// `u_a(t) = Σ t^k X_a^k / k!`.
    pub fn root_element(&self, a: &Root, t: i64) -> Result<IntMatrix> {
        let x = self.nilpotent(a)?;
        let n = x.dim();
        let mut out = IntMatrix::identity(n);
        let mut term = IntMatrix::identity(n);
        let mut tk = 1i64;
        for k in 1..=n as i64 {
            term = term.mul(x);
            term.exact_div(k);
            if term.is_zero() {
                break;
            }
            tk *= t;
            out.add_scaled(&term, tk);
        }
        Ok(out)
    }

    /// `n_a = u_a(1) u_{-a}(-1) u_a(1)` and its inverse.
    pub fn weyl_lift(&self, a: &Root) -> (IntMatrix, IntMatrix) {
        let na = -a;
        let u = |r: &Root, t| self.root_element(r, t).expect("root");
        let n = u(a, 1).mul(&u(&na, -1)).mul(&u(a, 1));
        let inv = u(a, -1).mul(&u(&na, 1)).mul(&u(a, -1));
        debug_assert_eq!(n.mul(&inv), IntMatrix::identity(n.dim()));
        (n, inv)
    }

    /// Lift of the simple affine reflection `s_i` (`i = 0` uses `-θ`).
    pub fn simple_lift(&self, i: usize) -> &(IntMatrix, IntMatrix) {
        &self.lifts[i]
    }

    /// Constants of `[u_a(s), u_b(t)]` for finite roots `a`, `b`.
    pub fn gradient_expansion(&self, a: &Root, b: &Root) -> Result<Arc<Vec<(Root, CommutatorTerm)>>> {
        let ia = self.rs.root_index(a).ok_or_else(|| Error::NotARoot(a.0.clone()))?;
        let ib = self.rs.root_index(b).ok_or_else(|| Error::NotARoot(b.0.clone()))?;
        if RootSystem::collinear(a, b) {
            return Err(Error::ParallelGradients);
        }
        if let Some(v) = self.cache.read().unwrap().get(&(ia, ib)) {
            return Ok(v.clone());
        }
        let v = Arc::new(self.peel(a, b)?);
        self.cache.write().unwrap().insert((ia, ib), v.clone());
        Ok(v)
    }

    fn peel(&self, a: &Root, b: &Root) -> Result<Vec<(Root, CommutatorTerm)>> {
        let string = self.rs.root_string(a, b);
        if string.is_empty() {
            return Ok(Vec::new());
        }
        let ua = self.root_element(a, 1)?;
        let ub = self.root_element(b, 1)?;
        let ua_inv = self.root_element(a, -1)?;
        let ub_inv = self.root_element(b, -1)?;
        let mut g = ua_inv.mul(&ub_inv).mul(&ua).mul(&ub);
        let id = IntMatrix::identity(g.dim());
        let mut out = Vec::new();
        for (i, j) in string {
            let target = &a.scale(i) + &b.scale(j);
            let x = self.nilpotent(&target)?;
            let (r, c, v) = x.nonzero_entries()[0];
            let diff = g.get(r, c) - id.get(r, c);
            if diff % v != 0 {
                return Err(Error::Pinning(format!(
                    "representation is not compatible with the commutator of {a} and {b}"
                )));
            }
            let k = diff / v;
            g = self.root_element(&target, -k)?.mul(&g);
            out.push((
                target,
                CommutatorTerm {
                    i: i as u32,
                    j: j as u32,
                    constant: k,
                },
            ));
        }
        if g != id {
            return Err(Error::Pinning(format!(
                "commutator of {a} and {b} is not a product over its root string"
            )));
        }
        Ok(out)
    }

    /// `[u_α(s), u_β(t)] = Π u_{iα+jβ}(C s^i t^j)` for affine roots; affine
    /// constants agree with those of the gradients because `u_{a+n}(x) = u_a(ϖ^n x)`.
    pub fn commutator_expansion(
        &self,
        alpha: &AffineRoot,
        beta: &AffineRoot,
    ) -> Result<Vec<(AffineRoot, CommutatorTerm)>> {
        let terms = self.gradient_expansion(&alpha.gradient, &beta.gradient)?;
        Ok(terms
            .iter()
            .map(|(_, t)| (alpha.combine(t.i as i64, beta, t.j as i64), *t))
            .collect())
    }

    /// Same, keeping only the factors that are shallow at `point`.
    pub fn shallow_commutator_expansion(
        &self,
        alpha: &AffineRoot,
        beta: &AffineRoot,
        point: &ApartmentPoint,
    ) -> Result<Vec<(AffineRoot, CommutatorTerm)>> {
        for x in [alpha, beta] {
            if !x.is_shallow(point) {
                return Err(Error::NotShallow(self.rs.affine_name(x)));
            }
        }
        Ok(self
            .commutator_expansion(alpha, beta)?
            .into_iter()
            .filter(|(r, _)| r.is_shallow(point))
            .collect())
    }

    /// `η` with `n_i u_b(x) n_i⁻¹ = u_{s_i b}(η x)`, where `n_0` lifts the
    /// reflection in `-θ`. The translation part of the affine lift `n_0` is a
    /// torus element and does not change the sign.
    pub fn reflection_sign(&self, i: usize, b: &Root) -> Result<i64> {
        let refl = if i == 0 {
            let theta = self.rs.highest_root();
            self.rs.reflect(theta, b)
        } else {
            self.rs.simple_reflection(i - 1, b)
        };
        let (n, ninv) = &self.lifts[i];
        let xb = self.nilpotent(b)?;
        let xs = self.nilpotent(&refl)?;
        let (r, c, v) = xs.nonzero_entries()[0];
        // (n X_b n⁻¹)[r][c]
        let mut s = 0;
        for (k, l, x) in xb.nonzero_entries() {
            s += n.get(r, k) * x * ninv.get(l, c);
        }
        debug_assert!(s == v || s == -v);
        Ok(if s == v { 1 } else { -1 })
    }

    /// Full table of constants for ordered pairs of roots whose sum is a root.
    pub fn constants_table(&self) -> Result<Vec<ConstantsEntry>> {
        let mut out = Vec::new();
        for a in self.rs.roots() {
            for b in self.rs.roots() {
                if RootSystem::collinear(a, b) || !self.rs.is_root(&(a + b)) {
                    continue;
                }
                let terms = self
                    .gradient_expansion(a, b)?
                    .iter()
                    .map(|(r, t)| ExportTerm {
                        root: r.clone(),
                        i: t.i,
                        j: t.j,
                        constant: t.constant,
                    })
                    .collect();
                out.push(ConstantsEntry {
                    alpha: a.clone(),
                    beta: b.clone(),
                    terms,
                });
            }
        }
        Ok(out)
    }

    /// SHA-256 over the pinning name, the root system and every `X_a`.
    pub fn hash(&self) -> String {
        let mut h = Sha256::new();
        h.update(self.kind.name().as_bytes());
        h.update(self.rs.name().as_bytes());
        for (r, x) in self.rs.roots().iter().zip(&self.ops) {
            for c in r.coeffs() {
                h.update(c.to_le_bytes());
            }
            for (i, j, v) in x.nonzero_entries() {
                h.update((i as u64).to_le_bytes());
                h.update((j as u64).to_le_bytes());
                h.update(v.to_le_bytes());
            }
        }
        h.finalize().iter().map(|b| format!("{b:02x}")).collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExportTerm {
    pub root: Root,
    pub i: u32,
    pub j: u32,
    pub constant: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConstantsEntry {
    pub alpha: Root,
    pub beta: Root,
    pub terms: Vec<ExportTerm>,
}

fn sp4_ops(rs: &RootSystem) -> Vec<IntMatrix> {
    // 0-based (row, col, value) entries
    let table: [([i64; 2], &[Entry]); 8] = [
        ([1, 0], &[(0, 1, 1), (2, 3, -1)]),
        ([0, 1], &[(1, 2, 1)]),
        ([1, 1], &[(0, 2, 1), (1, 3, 1)]),
        ([2, 1], &[(0, 3, 1)]),
        ([-1, 0], &[(1, 0, 1), (3, 2, -1)]),
        ([0, -1], &[(2, 1, 1)]),
        ([-1, -1], &[(2, 0, 1), (3, 1, 1)]),
        ([-2, -1], &[(3, 0, 1)]),
    ];
    let mut ops = vec![IntMatrix::zero(4); rs.roots().len()];
    for (root, entries) in table {
        let i = rs.root_index(&Root(root.to_vec())).expect("C2 root");
        ops[i] = elementary(4, entries);
    }
    ops
}

fn elementary_ops(rs: &RootSystem) -> Vec<IntMatrix> {
    let n = rs.rank() + 1;
    rs.roots()
        .iter()
        .map(|r| {
            // e_i - e_j has coefficients 1 on simple roots i..j-1
            let c = r.coeffs();
            let first = c.iter().position(|&x| x != 0).unwrap();
            let last = c.iter().rposition(|&x| x != 0).unwrap();
            if c[first] > 0 {
                elementary(n, &[(first, last + 1, 1)])
            } else {
                elementary(n, &[(last + 1, first, 1)])
            }
        })
        .collect()
}

/// `ad e_r` on the basis `(e_s)_{s ∈ Φ}` followed by `h_1..h_l`.
fn adjoint_ops(rs: &RootSystem, sc: &StructureConstants) -> Vec<IntMatrix> {
    let roots = rs.roots();
    let m = roots.len();
    let dim = m + rs.rank();
    roots
        .iter()
        .enumerate()
        .map(|(r, root)| {
            let mut x = IntMatrix::zero(dim);
            for (s, other) in roots.iter().enumerate() {
                let sum = root + other;
                if sum.is_zero() {
                    // [e_r, e_{-r}] = h_r = Σ c_i h_i
                    for (i, c) in rs.coroot_coeffs(root).into_iter().enumerate() {
                        x.set(m + i, s, c);
                    }
                } else if let Some(t) = rs.root_index(&sum) {
                    x.set(t, s, sc.get(r, s));
                }
            }
            for i in 0..rs.rank() {
                // [e_r, h_i] = -<r, a_i^vee> e_r
                let ai = Root::simple(rs.rank(), i);
                x.set(r, m + i, -rs.pairing(root, &ai));
            }
            x
        })
        .collect()
}
