//! The affine Weyl group `W = W_0 ⋉ Q^∨` acting on affine roots and points,
//! supports of characters along orbits, condition (*), long elements of
//! parabolic subgroups and intertwining scans.
//!
//! An element is stored through its linear part `M` (columns are the images
//! of the simple roots, in simple-root coordinates) and its translation `t`,
//! recorded as the values `τ_i = <a_i, t>`. Then
//!
//! * on points, `x ↦ (M⁻¹)ᵀ x + τ` in the coordinates `x_i = <a_i, μ>`;
//! * on affine roots, `(b, n) ↦ (M b, n − <M b, t>)`,
//!
//! so that `(w·α)(w·μ) = α(μ)`.

use std::collections::{BTreeMap, HashSet, VecDeque};
use std::fmt;
use std::hash::{Hash, Hasher};

use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::affine::{AffineRoot, ApartmentPoint};
use crate::characters::{ShallowCharacter, ShallowContext};
use crate::chevalley::Pinning;
use crate::error::{Error, Result};
use crate::field::Elem;
use crate::linalg::{bounding_box, invert, mat_vec};
use crate::rational::{qi, serialize_q, Q};
use crate::root_system::{Root, RootSystem};

/// Largest finite Weyl group that is enumerated.
pub const W0_LIMIT: usize = 100_000;
/// Largest number of lattice candidates examined by an orbit search.
pub const ORBIT_LIMIT: u64 = 50_000_000;
pub const DEFAULT_RADIUS: usize = 8;

/// Element of the affine Weyl group together with a word in the simple
/// affine reflections `s_0..s_l`. Equality and hashing only look at the
/// group element; the word selects the lift `n_{i_1}⋯n_{i_k}` to `N(T)`,
/// which matters for signs.
#[derive(Debug, Clone)]
pub struct AffineWeylElement {
    m: Vec<Vec<i64>>,
    minv: Vec<Vec<i64>>,
    tau: Vec<i64>,
    word: Vec<usize>,
}

impl PartialEq for AffineWeylElement {
    fn eq(&self, other: &Self) -> bool {
        self.m == other.m && self.tau == other.tau
    }
}

impl Eq for AffineWeylElement {}

impl Hash for AffineWeylElement {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.m.hash(state);
        self.tau.hash(state);
    }
}

fn identity_matrix(n: usize) -> Vec<Vec<i64>> {
    (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect()
}

fn mat_mul(a: &[Vec<i64>], b: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let n = a.len();
    let mut out = vec![vec![0; n]; n];
    for i in 0..n {
        for k in 0..n {
            if a[i][k] == 0 {
                continue;
            }
            for j in 0..n {
                out[i][j] += a[i][k] * b[k][j];
            }
        }
    }
    out
}

/// The matrix `C[i][j] = <a_i, a_j^∨>`, mapping coroot coordinates of a
/// vector to its values on the simple roots.
fn value_matrix(rs: &RootSystem) -> Vec<Vec<i64>> {
    let l = rs.rank();
    (0..l)
        .map(|i| (0..l).map(|j| rs.simple_pairing(i, j)).collect())
        .collect()
}

impl AffineWeylElement {
    pub fn identity(rank: usize) -> Self {
        AffineWeylElement {
            m: identity_matrix(rank),
            minv: identity_matrix(rank),
            tau: vec![0; rank],
            word: Vec::new(),
        }
    }

    /// `s_i` for `0 <= i <= l`; `s_0` is the reflection in `α_0 = −θ + 1`.
    pub fn simple_reflection(rs: &RootSystem, i: usize) -> Result<Self> {
        let l = rs.rank();
        if i > l {
            return Err(Error::InvalidIndexSet(format!("no simple affine root α{i}")));
        }
        let theta = rs.highest_root();
        let cols: Vec<Root> = (0..l)
            .map(|j| {
                let a = Root::simple(l, j);
                if i == 0 {
                    rs.reflect(theta, &a)
                } else {
                    rs.simple_reflection(i - 1, &a)
                }
            })
            .collect();
        let m: Vec<Vec<i64>> = (0..l).map(|r| (0..l).map(|c| cols[c].0[r]).collect()).collect();
        // s_0 = t_{θ^∨} ∘ s_θ
        let tau = if i == 0 {
            (0..l).map(|k| rs.pairing(&Root::simple(l, k), theta)).collect()
        } else {
            vec![0; l]
        };
        Ok(AffineWeylElement {
            minv: m.clone(),
            m,
            tau,
            word: vec![i],
        })
    }

    /// `s_{w[0]} s_{w[1]} ⋯ s_{w[k-1]}`, keeping the word as given.
    pub fn from_word(rs: &RootSystem, word: &[usize]) -> Result<Self> {
        let gens = (0..=rs.rank())
            .map(|i| Self::simple_reflection(rs, i))
            .collect::<Result<Vec<_>>>()?;
        let mut w = Self::identity(rs.rank());
        for &i in word {
            let g = gens
                .get(i)
                .ok_or_else(|| Error::InvalidIndexSet(format!("no simple affine root α{i}")))?;
            w = w.compose(g);
        }
        Ok(w)
    }

    /// Translation by the coroot `Σ k_j a_j^∨`, with a reduced word.
    pub fn translation(rs: &RootSystem, coroot: &[i64]) -> Result<Self> {
        let l = rs.rank();
        if coroot.len() != l {
            return Err(Error::Dimension {
                expected: l,
                got: coroot.len(),
            });
        }
        let c = value_matrix(rs);
        let tau = (0..l).map(|i| (0..l).map(|j| c[i][j] * coroot[j]).sum()).collect();
        let t = AffineWeylElement {
            m: identity_matrix(l),
            minv: identity_matrix(l),
            tau,
            word: Vec::new(),
        };
        Ok(t.reduced(rs))
    }

    pub fn rank(&self) -> usize {
        self.tau.len()
    }

    pub fn word(&self) -> &[usize] {
        &self.word
    }

    pub fn linear_part(&self) -> &[Vec<i64>] {
        &self.m
    }

    /// Values `<a_i, t>` of the simple roots on the translation part.
    pub fn translation_values(&self) -> &[i64] {
        &self.tau
    }

    /// The translation part in coroot coordinates.
    pub fn translation_coroot(&self, rs: &RootSystem) -> Vec<i64> {
        let c: Vec<Vec<Q>> = value_matrix(rs)
            .iter()
            .map(|r| r.iter().map(|&x| qi(x)).collect())
            .collect();
        let cinv = invert(&c).expect("Cartan matrix is invertible");
        let t: Vec<Q> = self.tau.iter().map(|&x| qi(x)).collect();
        mat_vec(&cinv, &t)
            .iter()
            .map(|x| {
                debug_assert!(x.is_integer());
                x.to_integer()
            })
            .collect()
    }

    pub fn is_identity(&self) -> bool {
        self.tau.iter().all(|&t| t == 0) && self.m == identity_matrix(self.rank())
    }

    /// `self ∘ other`; the word is the concatenation.
    pub fn compose(&self, other: &Self) -> Self {
        let l = self.rank();
        // τ = τ_1 + (M_1⁻¹)ᵀ τ_2
        let tau = (0..l)
            .map(|i| self.tau[i] + (0..l).map(|j| self.minv[j][i] * other.tau[j]).sum::<i64>())
            .collect();
        let mut word = self.word.clone();
        word.extend_from_slice(&other.word);
        AffineWeylElement {
            m: mat_mul(&self.m, &other.m),
            minv: mat_mul(&other.minv, &self.minv),
            tau,
            word,
        }
    }

    pub fn inverse(&self) -> Self {
        let l = self.rank();
        // τ' = −Mᵀ τ
        let tau = (0..l)
            .map(|i| -(0..l).map(|j| self.m[j][i] * self.tau[j]).sum::<i64>())
            .collect();
        AffineWeylElement {
            m: self.minv.clone(),
            minv: self.m.clone(),
            tau,
            word: self.word.iter().rev().copied().collect(),
        }
    }

    pub fn act_on_gradient(&self, b: &Root) -> Root {
        let l = self.rank();
        Root((0..l).map(|i| (0..l).map(|j| self.m[i][j] * b.0[j]).sum()).collect())
    }

    pub fn act_on_root(&self, alpha: &AffineRoot) -> AffineRoot {
        let g = self.act_on_gradient(&alpha.gradient);
        let shift: i64 = g.0.iter().zip(&self.tau).map(|(a, t)| a * t).sum();
        AffineRoot::new(g, alpha.level - shift)
    }

    pub fn act_on_point(&self, mu: &ApartmentPoint) -> ApartmentPoint {
        let l = self.rank();
        let coords = (0..l)
            .map(|i| {
                let mut s = qi(self.tau[i]);
                for j in 0..l {
                    if self.minv[j][i] != 0 {
                        s += mu.coords[j] * self.minv[j][i];
                    }
                }
                s
            })
            .collect();
        ApartmentPoint::new(coords)
    }

    /// The same element with a reduced word, found by peeling right descents
    /// (`w α_i < 0` iff `ℓ(w s_i) < ℓ(w)`), smallest index first.
    pub fn reduced(&self, rs: &RootSystem) -> Self {
        let simples = rs.simple_affine_roots();
        let gens: Vec<Self> = (0..=rs.rank())
            .map(|i| Self::simple_reflection(rs, i).expect("valid index"))
            .collect();
        let mut w = self.clone();
        let mut rev = Vec::new();
        while !w.is_identity() {
            let i = (0..simples.len())
                .find(|&i| rs.is_negative_affine(&w.act_on_root(&simples[i])))
                .expect("a nontrivial element has a right descent");
            w = w.compose(&gens[i]);
            rev.push(i);
        }
        rev.reverse();
        AffineWeylElement {
            word: rev,
            ..self.clone()
        }
    }

    /// Coxeter length.
    pub fn length(&self, rs: &RootSystem) -> usize {
        self.reduced(rs).word.len()
    }

    pub fn is_reduced(&self, rs: &RootSystem) -> bool {
        self.length(rs) == self.word.len()
    }

    /// Sign `η` with `n u_β(x) n⁻¹ = u_{wβ}(η x)` for the lift `n` named by
    /// the word.
    pub fn eta(&self, pinning: &Pinning, b: &Root) -> Result<i64> {
        eta_word(pinning, &self.word, b)
    }

    /// `n u_α(x) n⁻¹ = u_{wα}(η x)`.
    pub fn conjugate(
        &self,
        pinning: &Pinning,
        ctx_field: &crate::field::Field,
        alpha: &AffineRoot,
        x: Elem,
    ) -> Result<(AffineRoot, Elem)> {
        let eta = self.eta(pinning, &alpha.gradient)?;
        let y = if eta == 1 { x } else { ctx_field.neg(x) };
        Ok((self.act_on_root(alpha), y))
    }

    fn word_key(&self) -> (usize, Vec<usize>) {
        (self.word.len(), self.word.clone())
    }
}

impl fmt::Display for AffineWeylElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.word.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self.word.iter().map(|i| format!("s{i}")).collect();
        write!(f, "{}", parts.join(" "))
    }
}

impl Serialize for AffineWeylElement {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Repr<'a> {
            word: &'a [usize],
            name: String,
            linear: &'a [Vec<i64>],
            translation: &'a [i64],
        }
        Repr {
            word: &self.word,
            name: self.to_string(),
            linear: &self.m,
            translation: &self.tau,
        }
        .serialize(s)
    }
}

/// `η` of the lift `n_{w[0]}⋯n_{w[k-1]}` on the root group of gradient `b`;
/// the letters act from the right. Reduced words of one element give the
/// same lift, non-reduced words may differ by a torus element of order 2.
pub fn eta_word(pinning: &Pinning, word: &[usize], b: &Root) -> Result<i64> {
    let rs = pinning.root_system();
    let mut g = b.clone();
    let mut sign = 1;
    for &i in word.iter().rev() {
        sign *= pinning.reflection_sign(i, &g)?;
        g = if i == 0 {
            rs.reflect(rs.highest_root(), &g)
        } else {
            rs.simple_reflection(i - 1, &g)
        };
    }
    Ok(sign)
}

/// Breadth-first enumeration of the subgroup generated by `gens`, words
/// extended on the right, up to `max_len` (all of it when `None`).
fn generate(rs: &RootSystem, gens: &[usize], max_len: Option<usize>, limit: usize) -> Result<Vec<AffineWeylElement>> {
    let g: Vec<AffineWeylElement> = gens
        .iter()
        .map(|&i| AffineWeylElement::simple_reflection(rs, i))
        .collect::<Result<_>>()?;
    let id = AffineWeylElement::identity(rs.rank());
    let mut seen: HashSet<AffineWeylElement> = HashSet::new();
    seen.insert(id.clone());
    let mut out = vec![id.clone()];
    let mut queue = VecDeque::from([id]);
    while let Some(w) = queue.pop_front() {
        if max_len.is_some_and(|m| w.word.len() >= m) {
            continue;
        }
        for s in &g {
            let v = w.compose(s);
            if seen.contains(&v) {
                continue;
            }
            if out.len() >= limit {
                return Err(Error::TooLarge(format!("more than {limit} Weyl group elements")));
            }
            seen.insert(v.clone());
            out.push(v.clone());
            queue.push_back(v);
        }
    }
    Ok(out)
}

/// All elements of the finite Weyl group `W_0 = <s_1..s_l>`, shortest first.
pub fn finite_weyl_group(rs: &RootSystem) -> Result<Vec<AffineWeylElement>> {
    let gens: Vec<usize> = (1..=rs.rank()).collect();
    generate(rs, &gens, None, W0_LIMIT)
}

/// All affine Weyl group elements of length at most `radius`.
pub fn elements_up_to(rs: &RootSystem, radius: usize) -> Result<Vec<AffineWeylElement>> {
    let gens: Vec<usize> = (0..=rs.rank()).collect();
    generate(rs, &gens, Some(radius), usize::MAX)
}

/// Indices `i` with `α_i(λ) = 0`; their reflections generate the stabilizer.
pub fn stabilizer_generators(rs: &RootSystem, lambda: &ApartmentPoint) -> Vec<usize> {
    (0..=rs.rank())
        .filter(|&i| rs.simple_affine_root(i).depth(lambda).is_zero())
        .collect()
}

/// The stabilizer `W_λ` of a point of the closed alcove (finite).
pub fn stabilizer(rs: &RootSystem, lambda: &ApartmentPoint) -> Result<Vec<AffineWeylElement>> {
    rs.facet_of(lambda)?;
    generate(rs, &stabilizer_generators(rs, lambda), None, W0_LIMIT)
}

/// Shortest element of the coset `w W_λ`, with a reduced word.
fn min_coset_rep(rs: &RootSystem, w: AffineWeylElement, stab: &[usize]) -> AffineWeylElement {
    let simples = rs.simple_affine_roots();
    let mut w = w;
    while let Some(&i) = stab
        .iter()
        .find(|&&i| rs.is_negative_affine(&w.act_on_root(&simples[i])))
    {
        w = w.compose(&AffineWeylElement::simple_reflection(rs, i).expect("valid index"));
    }
    w.reduced(rs)
}

/// Long element of the parabolic subgroup `W_I`, for `I` nonempty and
/// proper; built greedily by right multiplication while some `w α_i` with
/// `i ∈ I` is still positive.
pub fn long_element(rs: &RootSystem, set: &[usize]) -> Result<AffineWeylElement> {
    let l = rs.rank();
    let mut idx: Vec<usize> = set.to_vec();
    idx.sort_unstable();
    idx.dedup();
    if idx.is_empty() {
        return Err(Error::InvalidIndexSet("empty".into()));
    }
    if let Some(&i) = idx.iter().find(|&&i| i > l) {
        return Err(Error::InvalidIndexSet(format!("index {i} exceeds {l}")));
    }
    if idx.len() == l + 1 {
        return Err(Error::InvalidIndexSet(
            "the full set generates an infinite group".into(),
        ));
    }
    let simples = rs.simple_affine_roots();
    let mut w = AffineWeylElement::identity(l);
    while let Some(&i) = idx
        .iter()
        .find(|&&i| rs.is_positive_affine(&w.act_on_root(&simples[i])))
    {
        w = w.compose(&AffineWeylElement::simple_reflection(rs, i)?);
    }
    debug_assert!(idx.iter().all(|&i| rs.is_negative_affine(&w.act_on_root(&simples[i]))));
    Ok(w)
}

/// Spanning roots of `V_{μ,s}`: shallow roots at `λ` with `α(μ) >= s`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SupportSpace {
    pub roots: Vec<AffineRoot>,
    pub names: Vec<String>,
}

pub fn support_space(rs: &RootSystem, lambda: &ApartmentPoint, mu: &ApartmentPoint, s: Q) -> Result<SupportSpace> {
    rs.check_point(mu)?;
    let roots: Vec<AffineRoot> = rs
        .shallow_roots(lambda)?
        .into_iter()
        .filter(|a| a.depth(mu) >= s)
        .collect();
    let names = roots.iter().map(|a| rs.affine_name(a)).collect();
    Ok(SupportSpace { roots, names })
}

fn big_floor(x: &BigRational) -> i64 {
    x.floor().to_integer().to_i64().expect("bound fits in i64")
}

fn big_ceil(x: &BigRational) -> i64 {
    x.ceil().to_integer().to_i64().expect("bound fits in i64")
}

/// Calls `f` on every integer vector of the box.
fn for_each_in_box(ranges: &[(i64, i64)], mut f: impl FnMut(&[i64])) {
    if ranges.iter().any(|(a, b)| a > b) {
        return;
    }
    let mut k: Vec<i64> = ranges.iter().map(|r| r.0).collect();
    loop {
        f(&k);
        let mut j = 0;
        loop {
            if j == k.len() {
                return;
            }
            if k[j] < ranges[j].1 {
                k[j] += 1;
                break;
            }
            k[j] = ranges[j].0;
            j += 1;
        }
    }
}

/// Points of `W·λ` inside `{μ : α(μ) ≤ bound}` (or `< bound`), each with the
/// shortest `w` such that `wλ = μ`.
struct OrbitSearch {
    points: Vec<(ApartmentPoint, AffineWeylElement)>,
    bounded: bool,
}

fn orbit_in_region(
    rs: &RootSystem,
    lambda: &ApartmentPoint,
    constraints: &[AffineRoot],
    bound: Q,
    strict: bool,
    radius: i64,
) -> Result<OrbitSearch> {
    let l = rs.rank();
    let a: Vec<Vec<Q>> = constraints
        .iter()
        .map(|c| c.gradient.0.iter().map(|&x| qi(x)).collect())
        .collect();
    let b: Vec<Q> = constraints.iter().map(|c| bound - qi(c.level)).collect();
    let c: Vec<Vec<i64>> = value_matrix(rs);
    let cq: Vec<Vec<Q>> = c.iter().map(|r| r.iter().map(|&x| qi(x)).collect()).collect();
    let cinv = invert(&cq).expect("Cartan matrix is invertible");
    let inside = |mu: &ApartmentPoint| {
        constraints.iter().all(|al| {
            let d = al.depth(mu);
            if strict {
                d < bound
            } else {
                d <= bound
            }
        })
    };
    if !inside(lambda) {
        return Err(Error::Precondition("λ must lie in the search region".into()));
    }
    let bbox = if constraints.is_empty() {
        None
    } else {
        bounding_box(&a, &b, &cinv, &lambda.coords)
    };
    let bounded = bbox.is_some();
    let w0 = finite_weyl_group(rs)?;
    let per_sigma: u64 = match &bbox {
        Some(bx) => bx
            .iter()
            .map(|(lo, hi)| (big_floor(hi) - big_ceil(lo) + 2).max(1) as u64)
            .product(),
        None => ((2 * radius + 1) as u64).pow(l as u32),
    };
    if per_sigma.saturating_mul(w0.len() as u64) > ORBIT_LIMIT {
        return Err(Error::TooLarge(format!(
            "orbit search over {} lattice points",
            per_sigma.saturating_mul(w0.len() as u64)
        )));
    }
    let found: Vec<(Vec<Q>, usize, Vec<i64>)> = w0
        .par_iter()
        .enumerate()
        .flat_map_iter(|(si, sigma)| {
            let sx = sigma.act_on_point(lambda);
            let s = mat_vec(&cinv, &sx.coords);
            let ranges: Vec<(i64, i64)> = match &bbox {
                Some(bx) => bx
                    .iter()
                    .zip(&s)
                    .map(|((lo, hi), sj)| {
                        let sj = BigRational::new((*sj.numer()).into(), (*sj.denom()).into());
                        (big_ceil(&(lo - &sj)), big_floor(&(hi - &sj)))
                    })
                    .collect(),
                None => vec![(-radius, radius); l],
            };
            let mut hits = Vec::new();
            for_each_in_box(&ranges, |k| {
                let coords: Vec<Q> = (0..l)
                    .map(|i| sx.coords[i] + qi((0..l).map(|j| c[i][j] * k[j]).sum()))
                    .collect();
                let mu = ApartmentPoint::new(coords);
                if inside(&mu) {
                    hits.push((mu.coords, si, k.to_vec()));
                }
            });
            hits
        })
        .collect();
    let mut distinct: BTreeMap<Vec<Q>, (usize, Vec<i64>)> = BTreeMap::new();
    for (mu, si, k) in found {
        distinct.entry(mu).or_insert((si, k));
    }
    let stab = stabilizer_generators(rs, lambda);
    let mut points: Vec<(ApartmentPoint, AffineWeylElement)> = distinct
        .into_par_iter()
        .map(|(mu, (si, k))| {
            let t = AffineWeylElement::translation(rs, &k)?;
            let w = min_coset_rep(rs, t.compose(&w0[si]), &stab);
            debug_assert_eq!(w.act_on_point(lambda).coords, mu);
            Ok((ApartmentPoint::new(mu), w))
        })
        .collect::<Result<_>>()?;
    points.sort_by_key(|(_, w)| w.word_key());
    Ok(OrbitSearch { points, bounded })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum StarVerdict {
    /// Every `w` with `χ` vanishing on all `V_{wλ,s}`, `s > r`, fixes `λ`.
    Holds,
    /// A shortest `w` with `wλ ≠ λ` on which `χ` vanishes.
    Fails {
        witness: AffineWeylElement,
        point: ApartmentPoint,
    },
    /// No witness within the translation radius of an unbounded region.
    Inconclusive { radius: i64 },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StarReport {
    #[serde(flatten)]
    pub verdict: StarVerdict,
    #[serde(serialize_with = "serialize_q")]
    pub depth: Q,
    /// Whether `{μ : α(μ) ≤ r on supp χ}` is bounded (then the search is exact).
    pub bounded: bool,
    /// Orbit points examined in the region, `λ` included.
    pub orbit_points: usize,
}

impl StarReport {
    pub fn holds(&self) -> bool {
        matches!(self.verdict, StarVerdict::Holds)
    }

    pub fn witness(&self) -> Option<&AffineWeylElement> {
        match &self.verdict {
            StarVerdict::Fails { witness, .. } => Some(witness),
            _ => None,
        }
    }
}

fn support_roots(ctx: &ShallowContext, chi: &ShallowCharacter) -> Vec<AffineRoot> {
    ctx.support(chi)
        .into_iter()
        .map(|k| ctx.shallow_roots()[k].clone())
        .collect()
}

/// Whether `w` moves `λ` while `χ` vanishes on every `V_{wλ,s}`, `s > r`.
pub fn is_star_witness(ctx: &ShallowContext, chi: &ShallowCharacter, w: &AffineWeylElement) -> bool {
    let lambda = ctx.point();
    let mu = w.act_on_point(lambda);
    let r = ctx.char_depth(chi);
    mu != *lambda && support_roots(ctx, chi).iter().all(|a| a.depth(&mu) <= r)
}

/// Condition (*): searches the orbit of `λ` inside the polytope
/// `{μ : α(μ) ≤ r for α ∈ supp χ}`. When the polytope is bounded the search
/// is exhaustive; otherwise translations up to `radius` in each coroot
/// coordinate are tried.
pub fn condition_star(ctx: &ShallowContext, chi: &ShallowCharacter, radius: i64) -> Result<StarReport> {
    if !ctx.validate(chi)?.valid {
        return Err(Error::Precondition(
            "character does not satisfy its commutator relations".into(),
        ));
    }
    let support = support_roots(ctx, chi);
    if support.is_empty() {
        return Err(Error::TrivialCharacter);
    }
    let r = ctx.char_depth(chi);
    let lambda = ctx.point();
    let search = orbit_in_region(ctx.root_system(), lambda, &support, r, false, radius)?;
    let orbit_points = search.points.len();
    let first = search.points.into_iter().find(|(mu, _)| mu != lambda);
    let verdict = match first {
        Some((point, witness)) => StarVerdict::Fails { witness, point },
        None if search.bounded => StarVerdict::Holds,
        None => StarVerdict::Inconclusive { radius },
    };
    Ok(StarReport {
        verdict,
        depth: r,
        bounded: search.bounded,
        orbit_points,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BarycenterReport {
    /// Whether every simple affine parameter is nontrivial.
    pub all_nontrivial: bool,
    /// Indices `i` with `χ_{α_i}` nontrivial.
    pub nontrivial: Vec<usize>,
    /// Long element of `W_I` for `I` the nontrivial indices, when proper.
    pub long_element: Option<AffineWeylElement>,
    /// `α_i(wλ)` for `i ∈ I` (all negative).
    #[serde(serialize_with = "crate::rational::serialize_q_vec")]
    pub long_element_values: Vec<Q>,
    pub long_element_is_witness: bool,
    pub star: StarReport,
    /// `all_nontrivial` agrees with condition (*) holding.
    pub agrees: bool,
}

/// For an epipelagic character at the barycenter: the simple-parameter
/// criterion, the long element produced when it fails, and condition (*)
/// computed independently.
pub fn barycenter_criterion(ctx: &ShallowContext, chi: &ShallowCharacter) -> Result<BarycenterReport> {
    let rs = ctx.root_system();
    if *ctx.point() != rs.barycenter() {
        return Err(Error::Precondition(
            "λ must be the barycenter of the fundamental alcove".into(),
        ));
    }
    let h = rs.coxeter_number();
    if ctx.char_depth(chi) != Q::new(1, h) {
        return Err(Error::Precondition(format!("character must have depth 1/{h}")));
    }
    let nontrivial: Vec<usize> = (0..=rs.rank())
        .filter(|&i| {
            let k = ctx
                .index_of(&rs.simple_affine_root(i))
                .expect("simple affine roots are shallow at the barycenter");
            !chi.params[k].is_zero()
        })
        .collect();
    let all_nontrivial = nontrivial.len() == rs.rank() + 1;
    let (long, values, is_witness) = if all_nontrivial {
        (None, Vec::new(), false)
    } else {
        let w = long_element(rs, &nontrivial)?;
        let mu = w.act_on_point(ctx.point());
        let values: Vec<Q> = nontrivial
            .iter()
            .map(|&i| rs.simple_affine_root(i).depth(&mu))
            .collect();
        debug_assert!(values.iter().all(|v| v.is_negative()));
        let ok = is_star_witness(ctx, chi, &w);
        (Some(w), values, ok)
    };
    let star = condition_star(ctx, chi, DEFAULT_RADIUS as i64)?;
    let agrees = all_nontrivial == star.holds();
    Ok(BarycenterReport {
        all_nontrivial,
        nontrivial,
        long_element: long,
        long_element_values: values,
        long_element_is_witness: is_witness,
        star,
        agrees,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "result", rename_all = "snake_case")]
pub enum Compatibility {
    Compatible,
    /// `χ_{wβ}(x) ≠ χ_β(ηx)` although `β(λ) > 0` and `(wβ)(λ) > 0`.
    Violated {
        root: AffineRoot,
        image: AffineRoot,
        root_name: String,
        image_name: String,
        root_param: u8,
        image_param: u8,
        eta: i64,
    },
}

impl Compatibility {
    pub fn is_compatible(&self) -> bool {
        matches!(self, Compatibility::Compatible)
    }
}

/// Checks `ⁿχ = χ` on the root groups of `ⁿP₊ ∩ P₊`: for every affine root
/// `β` positive at `λ` with `wβ` positive at `λ`, `c_{wβ} = η c_β`, where
/// parameters of non-shallow roots are zero. Only `β` shallow or `wβ`
/// shallow can fail.
pub fn intertwining_reduction(
    ctx: &ShallowContext,
    chi: &ShallowCharacter,
    w: &AffineWeylElement,
) -> Result<Compatibility> {
    let rs = ctx.root_system();
    let lambda = ctx.point();
    let field = ctx.field();
    let param = |a: &AffineRoot| ctx.index_of(a).map_or(Elem::ZERO, |k| chi.params[k]);
    let winv = w.inverse();
    let mut candidates: Vec<AffineRoot> = ctx.shallow_roots().to_vec();
    for g in ctx.shallow_roots() {
        let b = winv.act_on_root(g);
        if !candidates.contains(&b) {
            candidates.push(b);
        }
    }
    for beta in candidates {
        if !beta.depth(lambda).is_positive() {
            continue;
        }
        let image = w.act_on_root(&beta);
        if !image.depth(lambda).is_positive() {
            continue;
        }
        let eta = w.eta(ctx.pinning(), &beta.gradient)?;
        let cb = param(&beta);
        let rhs = if eta == 1 { cb } else { field.neg(cb) };
        let lhs = param(&image);
        if lhs != rhs {
            return Ok(Compatibility::Violated {
                root_name: rs.affine_name(&beta),
                image_name: rs.affine_name(&image),
                root: beta,
                image,
                root_param: cb.0,
                image_param: lhs.0,
                eta,
            });
        }
    }
    Ok(Compatibility::Compatible)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum ScanVerdict {
    /// Every `w` moving `λ` violates compatibility, so the intertwining is
    /// supported on `P_χ`.
    CollapsesToPChi,
    Counterexample {
        witness: AffineWeylElement,
    },
    Inconclusive,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ScanReport {
    #[serde(flatten)]
    pub verdict: ScanVerdict,
    pub radius: usize,
    /// Elements of length at most `radius` examined.
    pub scanned: usize,
    /// Whether compatible elements are confined to the bounded region
    /// `{wλ : γ(wλ) < 1 for γ ∈ supp χ}`, making the verdict exact.
    pub exact: bool,
    /// Elements checked from that region (all `w` with `wλ` in it).
    pub bounded_candidates: usize,
    /// Longest such element.
    pub bound_length: Option<usize>,
    /// Weyl shadow of `P_χ/P₊`: compatible `w` with `wλ = λ`.
    pub stabilizer: Vec<AffineWeylElement>,
}

/// Looks for `w` with `wλ ≠ λ` compatible with `χ`. All elements up to
/// `radius` are scanned. A compatible `w` must satisfy `γ(wλ) < 1` for every
/// `γ` in the support of `χ` (otherwise `β = w⁻¹γ` has trivial character
/// but `wβ = γ` does not); when that region is bounded its finitely many
/// elements are checked too and the verdict is exact.
pub fn intertwining_scan(ctx: &ShallowContext, chi: &ShallowCharacter, radius: usize) -> Result<ScanReport> {
    let rs = ctx.root_system();
    let lambda = ctx.point();
    let scanned = elements_up_to(rs, radius)?;
    let check = |ws: &[AffineWeylElement]| -> Result<(Vec<AffineWeylElement>, Vec<AffineWeylElement>)> {
        let results: Vec<(AffineWeylElement, bool, bool)> = ws
            .par_iter()
            .map(|w| {
                let c = intertwining_reduction(ctx, chi, w)?;
                Ok((w.clone(), w.act_on_point(lambda) == *lambda, c.is_compatible()))
            })
            .collect::<Result<_>>()?;
        let mut moved = Vec::new();
        let mut fixed = Vec::new();
        for (w, fixes, ok) in results {
            if ok {
                if fixes {
                    fixed.push(w);
                } else {
                    moved.push(w);
                }
            }
        }
        Ok((moved, fixed))
    };
    let (mut counter, mut shadow) = check(&scanned)?;

    let support = support_roots(ctx, chi);
    let mut exact = false;
    let mut bounded_candidates = 0;
    let mut bound_length = None;
    if !support.is_empty() {
        let search = orbit_in_region(rs, lambda, &support, Q::from_integer(1), true, 0)?;
        if search.bounded {
            exact = true;
            let stab = stabilizer(rs, lambda)?;
            let mut all = Vec::new();
            for (_, w) in &search.points {
                for v in &stab {
                    all.push(w.compose(v).reduced(rs));
                }
            }
            bounded_candidates = all.len();
            bound_length = all.iter().map(|w| w.word.len()).max();
            let (m, f) = check(&all)?;
            counter.extend(m);
            shadow = f;
        }
    }
    counter.sort_by_key(|w| w.word_key());
    shadow.sort_by_key(|w| w.word_key());
    shadow.dedup();
    let verdict = match counter.into_iter().next() {
        Some(witness) => ScanVerdict::Counterexample { witness },
        None if exact => ScanVerdict::CollapsesToPChi,
        None => ScanVerdict::Inconclusive,
    };
    Ok(ScanReport {
        verdict,
        radius,
        scanned: scanned.len(),
        exact,
        bounded_candidates,
        bound_length,
        stabilizer: shadow,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;

    fn c2() -> RootSystem {
        RootSystem::from_name("C2").unwrap()
    }

    fn example(ctx: &ShallowContext) -> ShallowCharacter {
        let rs = ctx.root_system();
        let mut params = vec![Elem::ZERO; ctx.len()];
        for d in [[1, 0, 0], [1, 1, 0], [0, 1, 1], [1, 2, 0], [0, 2, 1]] {
            params[ctx.index_of(&rs.affine_from_delta(&d)).unwrap()] = Elem::ONE;
        }
        ctx.character(params).unwrap()
    }

    fn simple_char(ctx: &ShallowContext, on: &[usize]) -> ShallowCharacter {
        let rs = ctx.root_system();
        let mut params = vec![Elem::ZERO; ctx.len()];
        for &i in on {
            params[ctx.index_of(&rs.simple_affine_root(i)).unwrap()] = Elem::ONE;
        }
        ctx.character(params).unwrap()
    }

    #[test]
    fn reflections_and_compatibility() {
        let rs = c2();
        let lam = rs.barycenter();
        let s1 = AffineWeylElement::simple_reflection(&rs, 1).unwrap();
        let mu = s1.act_on_point(&lam);
        assert_eq!(rs.simple_affine_root(1).depth(&mu), q(-1, 4));
        for i in 0..=2 {
            let s = AffineWeylElement::simple_reflection(&rs, i).unwrap();
            let a = rs.simple_affine_root(i);
            assert_eq!(s.act_on_root(&a), a.neg());
            assert!(s.compose(&s).is_identity());
        }
        let w = AffineWeylElement::from_word(&rs, &[0, 1, 2, 1, 0, 2]).unwrap();
        let pt = ApartmentPoint::new(vec![q(1, 3), q(-2, 7)]);
        for a in rs.shallow_roots(&lam).unwrap() {
            assert_eq!(w.act_on_root(&a).depth(&w.act_on_point(&pt)), a.depth(&pt));
        }
        assert!(w.compose(&w.inverse()).is_identity());
        assert_eq!(w.inverse().act_on_point(&w.act_on_point(&pt)), pt);
    }

    #[test]
    fn translations_shift_levels() {
        let rs = c2();
        let t = AffineWeylElement::translation(&rs, &[1, -2]).unwrap();
        assert!(t.is_reduced(&rs));
        assert_eq!(t.translation_coroot(&rs), vec![1, -2]);
        let lam = rs.barycenter();
        for a in rs.roots() {
            let alpha = AffineRoot::new(a.clone(), 3);
            let img = t.act_on_root(&alpha);
            assert_eq!(img.gradient, *a);
            let shift: i64 = a.0.iter().zip(t.translation_values()).map(|(x, y)| x * y).sum();
            assert_eq!(img.level, 3 - shift);
            assert_eq!(img.depth(&t.act_on_point(&lam)), alpha.depth(&lam));
        }
    }

    #[test]
    fn reduced_words_and_finite_groups() {
        let rs = c2();
        assert!(AffineWeylElement::from_word(&rs, &[1, 1]).unwrap().is_identity());
        assert_eq!(AffineWeylElement::from_word(&rs, &[1, 2, 1, 2]).unwrap().length(&rs), 4);
        assert_eq!(
            AffineWeylElement::from_word(&rs, &[1, 2, 1, 2, 1]).unwrap().length(&rs),
            3
        );
        assert_eq!(AffineWeylElement::from_word(&rs, &[0, 1, 0]).unwrap().length(&rs), 3);
        for (name, n) in [("A2", 6), ("C2", 8), ("G2", 12), ("B3", 48), ("A3", 24), ("F4", 1152)] {
            let rs = RootSystem::from_name(name).unwrap();
            assert_eq!(finite_weyl_group(&rs).unwrap().len(), n, "{name}");
        }
        assert!(matches!(
            finite_weyl_group(&RootSystem::from_name("E8").unwrap()),
            Err(Error::TooLarge(_))
        ));
    }

    #[test]
    fn long_elements() {
        let rs = c2();
        assert_eq!(long_element(&rs, &[1, 2]).unwrap().word().len(), 4);
        assert_eq!(long_element(&rs, &[0, 2]).unwrap().word(), &[0, 2]);
        for i in 0..=2 {
            assert_eq!(long_element(&rs, &[i]).unwrap().word(), &[i]);
        }
        assert!(long_element(&rs, &[]).is_err());
        assert!(long_element(&rs, &[0, 1, 2]).is_err());
        assert!(long_element(&rs, &[3]).is_err());
    }

    #[test]
    fn example_fails_star_at_s1() {
        let rs = c2();
        let ctx = ShallowContext::with_defaults(&rs, rs.barycenter(), 2).unwrap();
        let chi = example(&ctx);
        let rep = condition_star(&ctx, &chi, 8).unwrap();
        assert!(rep.bounded);
        assert_eq!(rep.depth, q(3, 4));
        assert_eq!(rep.witness().unwrap().word(), &[1]);
        let mu = rep.witness().unwrap().act_on_point(ctx.point());
        for s in [q(4, 5), q(7, 8), qi(1)] {
            let sp = support_space(&rs, ctx.point(), &mu, s).unwrap();
            assert!(sp.names.iter().all(|n| n == "α0+α1+α2"), "{:?}", sp.names);
        }
        let fixed = support_space(&rs, ctx.point(), ctx.point(), q(3, 4)).unwrap();
        assert_eq!(fixed.roots.len(), 3);
        assert!(support_space(&rs, ctx.point(), ctx.point(), q(4, 5))
            .unwrap()
            .roots
            .is_empty());
    }

    #[test]
    fn barycenter_cases() {
        let rs = c2();
        let ctx = ShallowContext::with_defaults(&rs, rs.barycenter(), 2).unwrap();
        let all = barycenter_criterion(&ctx, &simple_char(&ctx, &[0, 1, 2])).unwrap();
        assert!(all.all_nontrivial && all.star.holds() && all.agrees);
        let some = barycenter_criterion(&ctx, &simple_char(&ctx, &[0, 2])).unwrap();
        assert!(!some.all_nontrivial && !some.star.holds() && some.agrees);
        assert_eq!(some.long_element.as_ref().unwrap().word(), &[0, 2]);
        assert!(some.long_element_is_witness);
        assert!(some.long_element_values.iter().all(|v| v.is_negative()));
        assert!(matches!(
            barycenter_criterion(&ctx, &ctx.trivial()),
            Err(Error::Precondition(_))
        ));
        assert!(matches!(
            condition_star(&ctx, &ctx.trivial(), 4),
            Err(Error::TrivialCharacter)
        ));
    }

    #[test]
    fn example_intertwining_collapses() {
        let rs = c2();
        let ctx = ShallowContext::with_defaults(&rs, rs.barycenter(), 2).unwrap();
        let chi = example(&ctx);
        let id = AffineWeylElement::identity(2);
        assert!(intertwining_reduction(&ctx, &chi, &id).unwrap().is_compatible());
        let s1 = AffineWeylElement::simple_reflection(&rs, 1).unwrap();
        assert!(!intertwining_reduction(&ctx, &chi, &s1).unwrap().is_compatible());
        let rep = intertwining_scan(&ctx, &chi, 8).unwrap();
        assert_eq!(rep.verdict, ScanVerdict::CollapsesToPChi);
        assert!(rep.exact);
        assert_eq!(rep.stabilizer, vec![id]);
        let triv = intertwining_scan(&ctx, &ctx.trivial(), 2).unwrap();
        assert!(matches!(triv.verdict, ScanVerdict::Counterexample { .. }));
    }

    #[test]
    fn eta_is_multiplicative_along_words() {
        let rs = c2();
        let pin = Pinning::default_for(&rs);
        let w1 = [0usize, 1, 2];
        let w2 = [1usize, 0];
        let m = AffineWeylElement::from_word(&rs, &w2).unwrap();
        let nm: Vec<usize> = w1.iter().chain(&w2).copied().collect();
        for b in rs.roots() {
            let lhs = eta_word(&pin, &nm, b).unwrap();
            let rhs = eta_word(&pin, &w1, &m.act_on_gradient(b)).unwrap() * eta_word(&pin, &w2, b).unwrap();
            assert_eq!(lhs, rhs);
        }
        let s1 = AffineWeylElement::simple_reflection(&rs, 1).unwrap();
        let alpha = rs.simple_affine_root(1);
        let f = crate::field::Field::new(3).unwrap();
        let (img, _) = s1.conjugate(&pin, &f, &alpha, Elem(1)).unwrap();
        assert_eq!(img, alpha.neg());
    }
}

#[cfg(test)]
mod props {
    use super::*;
    use crate::rational::q;
    use proptest::prelude::*;

    const TYPES: [&str; 5] = ["A2", "C2", "G2", "A3", "B3"];

    fn word_for(rs: &RootSystem, raw: &[usize]) -> Vec<usize> {
        raw.iter().map(|&i| i % (rs.rank() + 1)).collect()
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(200))]

        #[test]
        fn action_preserves_evaluation(
            t in 0..TYPES.len(),
            raw in prop::collection::vec(0usize..4, 0..12),
            k in 0usize..64,
            level in -3i64..4,
            coords in prop::collection::vec((-20i64..20, 1i64..9), 3),
        ) {
            let rs = RootSystem::from_name(TYPES[t]).unwrap();
            let w = AffineWeylElement::from_word(&rs, &word_for(&rs, &raw)).unwrap();
            let a = AffineRoot::new(rs.roots()[k % rs.roots().len()].clone(), level);
            let mu = ApartmentPoint::new(coords[..rs.rank()].iter().map(|&(n, d)| q(n, d)).collect());
            prop_assert_eq!(w.act_on_root(&a).depth(&w.act_on_point(&mu)), a.depth(&mu));
            prop_assert!(rs.is_affine_root(&w.act_on_root(&a)));
            let r = w.reduced(&rs);
            prop_assert!(r == w && r.is_reduced(&rs));
            prop_assert!(w.compose(&w.inverse()).is_identity());
        }

        #[test]
        fn eta_is_multiplicative(
            t in 0..TYPES.len(),
            w1 in prop::collection::vec(0usize..4, 0..8),
            w2 in prop::collection::vec(0usize..4, 0..8),
        ) {
            let rs = RootSystem::from_name(TYPES[t]).unwrap();
            let pin = Pinning::default_for(&rs);
            let (w1, w2) = (word_for(&rs, &w1), word_for(&rs, &w2));
            let m = AffineWeylElement::from_word(&rs, &w2).unwrap();
            let joined: Vec<usize> = w1.iter().chain(&w2).copied().collect();
            for b in rs.roots() {
                let lhs = eta_word(&pin, &joined, b).unwrap();
                let rhs = eta_word(&pin, &w1, &m.act_on_gradient(b)).unwrap() * eta_word(&pin, &w2, b).unwrap();
                prop_assert_eq!(lhs, rhs);
            }
        }

        #[test]
        fn moved_barycenter_has_a_deep_simple_root(
            t in 0..TYPES.len(),
            raw in prop::collection::vec(0usize..4, 1..14),
        ) {
            let rs = RootSystem::from_name(TYPES[t]).unwrap();
            let lambda = rs.barycenter();
            let w = AffineWeylElement::from_word(&rs, &word_for(&rs, &raw)).unwrap();
            let mu = w.act_on_point(&lambda);
            let h = Q::new(1, rs.coxeter_number());
            prop_assert!(mu == lambda || rs.simple_affine_roots().iter().any(|a| a.depth(&mu) > h));
        }
    }

    #[test]
    fn moved_barycenter_exhaustive() {
        for name in ["A2", "C2", "G2"] {
            let rs = RootSystem::from_name(name).unwrap();
            let lambda = rs.barycenter();
            let h = Q::new(1, rs.coxeter_number());
            for w in elements_up_to(&rs, 8).unwrap() {
                let mu = w.act_on_point(&lambda);
                if mu != lambda {
                    assert!(rs.simple_affine_roots().iter().any(|a| a.depth(&mu) > h), "{name} {w}");
                }
            }
        }
    }

    /// Characters satisfying condition (*) admit no compatible `w` moving `λ`.
    #[test]
    fn star_implies_collapse() {
        let rs = RootSystem::from_name("C2").unwrap();
        let ctx = ShallowContext::with_defaults(&rs, rs.barycenter(), 2).unwrap();
        let space = ctx.solve_space();
        let ex = space.exhaustive.as_ref().unwrap();
        let mut holding = 0;
        for code in 0..ex.maps {
            let chi = ctx.decode(code);
            if !ctx.is_valid(&chi) || ctx.support(&chi).is_empty() {
                continue;
            }
            if condition_star(&ctx, &chi, DEFAULT_RADIUS as i64).unwrap().holds() {
                holding += 1;
                let scan = intertwining_scan(&ctx, &chi, DEFAULT_RADIUS).unwrap();
                assert!(!matches!(scan.verdict, ScanVerdict::Counterexample { .. }), "{chi:?}");
            }
        }
        assert!(holding > 0);
    }
}
