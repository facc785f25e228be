//! Affine roots as affine functionals on the apartment, their depths at a
//! rational point, and the shallow affine roots at that point.
//!
//! Points are stored through the values `<a_i, λ>` of the simple roots, so
//! evaluating any affine root is a dot product over exact rationals. The simple
//! affine roots are `α_0 = -θ + 1` and `α_i = a_i` for `1 <= i <= l`, where `θ`
//! is the highest root; they satisfy `Σ m_i α_i = 1` with the marks `m_i`.
//!
//! A facet is recorded by the set `J` of simple affine roots that do not vanish
//! on it. `J` may be any nonempty subset of `{0..l}`, including the full set
//! (the open alcove).

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::{deserialize_q_vec, format_q, parse_q, qi, serialize_q_vec, Q};
use crate::root_system::{linear_combination, Root, RootSystem};

/// The functional `x ↦ <gradient, x> + level`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct AffineRoot {
    pub gradient: Root,
    pub level: i64,
}

impl AffineRoot {
    pub fn new(gradient: Root, level: i64) -> Self {
        AffineRoot { gradient, level }
    }

    pub fn depth(&self, point: &ApartmentPoint) -> Q {
        let mut s = qi(self.level);
        for (c, x) in self.gradient.coeffs().iter().zip(&point.coords) {
            if *c != 0 {
                s += x * *c;
            }
        }
        s
    }

    /// Strictly between 0 and 1 at `point`.
    pub fn is_shallow(&self, point: &ApartmentPoint) -> bool {
        let d = self.depth(point);
        d > Q::zero() && d < Q::one()
    }

    pub fn shift(&self, k: i64) -> AffineRoot {
        AffineRoot::new(self.gradient.clone(), self.level + k)
    }

    pub fn neg(&self) -> AffineRoot {
        AffineRoot::new(-&self.gradient, -self.level)
    }

    pub fn add(&self, other: &AffineRoot) -> AffineRoot {
        AffineRoot::new(&self.gradient + &other.gradient, self.level + other.level)
    }

    pub fn sub(&self, other: &AffineRoot) -> AffineRoot {
        AffineRoot::new(&self.gradient - &other.gradient, self.level - other.level)
    }

    pub fn combine(&self, i: i64, other: &AffineRoot, j: i64) -> AffineRoot {
        AffineRoot::new(
            &self.gradient.scale(i) + &other.gradient.scale(j),
            i * self.level + j * other.level,
        )
    }
}

impl fmt::Display for AffineRoot {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{:+}", self.gradient, self.level)
    }
}

/// A rational point of the apartment, stored as `coords[i] = <a_{i+1}, λ>`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ApartmentPoint {
    #[serde(serialize_with = "serialize_q_vec", deserialize_with = "deserialize_q_vec")]
    pub coords: Vec<Q>,
}

impl ApartmentPoint {
    pub fn new(coords: Vec<Q>) -> Self {
        ApartmentPoint { coords }
    }

    pub fn parse(s: &str) -> Result<Self> {
        let coords = s.split(',').map(parse_q).collect::<Result<Vec<_>>>()?;
        Ok(ApartmentPoint { coords })
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }
}

impl fmt::Display for ApartmentPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coords.iter().map(format_q).collect();
        write!(f, "({})", parts.join(", "))
    }
}

/// Indices of the simple affine roots that do not vanish on the facet.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Facet {
    pub j: BTreeSet<usize>,
}

impl Facet {
    pub fn new(rs: &RootSystem, j: impl IntoIterator<Item = usize>) -> Result<Self> {
        let j: BTreeSet<usize> = j.into_iter().collect();
        if j.is_empty() {
            return Err(Error::InvalidFacet("J must be nonempty".into()));
        }
        if let Some(&bad) = j.iter().find(|&&i| i > rs.rank()) {
            return Err(Error::InvalidFacet(format!("index {bad} exceeds rank {}", rs.rank())));
        }
        Ok(Facet { j })
    }

    pub fn parse(rs: &RootSystem, s: &str) -> Result<Self> {
        let idx = s
            .split(',')
            .filter(|t| !t.trim().is_empty())
            .map(|t| {
                t.trim()
                    .parse::<usize>()
                    .map_err(|_| Error::Parse(format!("bad facet index `{t}`")))
            })
            .collect::<Result<Vec<_>>>()?;
        Facet::new(rs, idx)
    }

    pub fn contains(&self, i: usize) -> bool {
        self.j.contains(&i)
    }

    pub fn is_alcove(&self, rs: &RootSystem) -> bool {
        self.j.len() == rs.rank() + 1
    }
}

impl fmt::Display for Facet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.j.iter().map(|i| i.to_string()).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

impl RootSystem {
    pub fn simple_affine_root(&self, i: usize) -> AffineRoot {
        if i == 0 {
            AffineRoot::new(-self.highest_root(), 1)
        } else {
            AffineRoot::new(Root::simple(self.rank(), i - 1), 0)
        }
    }

    pub fn simple_affine_roots(&self) -> Vec<AffineRoot> {
        (0..=self.rank()).map(|i| self.simple_affine_root(i)).collect()
    }

    /// The affine root `Σ n_i α_i`.
    pub fn affine_from_delta(&self, n: &[i64]) -> AffineRoot {
        assert_eq!(n.len(), self.rank() + 1);
        let theta = self.highest_root();
        let grad: Vec<i64> = (0..self.rank()).map(|i| n[i + 1] - n[0] * theta.coeffs()[i]).collect();
        AffineRoot::new(Root(grad), n[0])
    }

    /// Coordinates `(n_0..n_l)` with `α = Σ n_i α_i`; unique because the
    /// simple affine roots are linearly independent as affine functions.
    pub fn delta_coords(&self, alpha: &AffineRoot) -> Vec<i64> {
        let n = alpha.level;
        std::iter::once(n)
            .chain(
                alpha
                    .gradient
                    .coeffs()
                    .iter()
                    .zip(&self.marks()[1..])
                    .map(|(c, m)| c + n * m),
            )
            .collect()
    }

    pub fn is_affine_root(&self, alpha: &AffineRoot) -> bool {
        self.is_root(&alpha.gradient)
    }

    /// Positive affine roots are those with nonnegative Δ-coordinates; they are
    /// exactly the affine roots positive on the open fundamental alcove.
    pub fn is_positive_affine(&self, alpha: &AffineRoot) -> bool {
        self.is_affine_root(alpha) && self.delta_coords(alpha).iter().all(|&c| c >= 0)
    }

    pub fn is_negative_affine(&self, alpha: &AffineRoot) -> bool {
        self.is_affine_root(alpha) && self.delta_coords(alpha).iter().all(|&c| c <= 0)
    }

    /// Name in terms of simple affine roots, e.g. `α0+2α1`.
    pub fn affine_name(&self, alpha: &AffineRoot) -> String {
        linear_combination(&self.delta_coords(alpha), "α", 0)
    }

    pub fn barycenter(&self) -> ApartmentPoint {
        let h = self.coxeter_number();
        ApartmentPoint::new(vec![Q::new(1, h); self.rank()])
    }

    /// The point where every `α_j`, `j ∈ J`, takes the common value
    /// `1 / Σ_{j∈J} m_j` and the others vanish.
    pub fn facet_barycenter(&self, facet: &Facet) -> ApartmentPoint {
        let total: i64 = facet.j.iter().map(|&j| self.marks()[j]).sum();
        let c = Q::new(1, total);
        let coords = (1..=self.rank())
            .map(|i| if facet.contains(i) { c } else { Q::zero() })
            .collect();
        ApartmentPoint::new(coords)
    }

    pub fn check_point(&self, point: &ApartmentPoint) -> Result<()> {
        if point.dim() != self.rank() {
            return Err(Error::Dimension {
                expected: self.rank(),
                got: point.dim(),
            });
        }
        Ok(())
    }

    pub fn in_closed_alcove(&self, point: &ApartmentPoint) -> bool {
        point.dim() == self.rank() && self.simple_affine_roots().iter().all(|a| !a.depth(point).is_negative())
    }

    pub fn facet_of(&self, point: &ApartmentPoint) -> Result<Facet> {
        self.check_point(point)?;
        if !self.in_closed_alcove(point) {
            return Err(Error::OutsideAlcove);
        }
        let j = (0..=self.rank())
            .filter(|&i| self.simple_affine_root(i).depth(point) > Q::zero())
            .collect::<Vec<_>>();
        Facet::new(self, j)
    }

    /// Total order on affine roots at `point`: depth, then Δ-coordinates in
    /// decreasing lexicographic order (so `α0, α1, …` come first among ties).
    pub fn enumeration_order(&self, point: &ApartmentPoint, a: &AffineRoot, b: &AffineRoot) -> Ordering {
        a.depth(point)
            .cmp(&b.depth(point))
            .then_with(|| self.delta_coords(b).cmp(&self.delta_coords(a)))
    }

    /// All shallow affine roots at a point of the closed fundamental alcove.
    ///
    /// For each gradient `a` with `v = <a, λ>` non-integral there is exactly one
    /// level `n` with `0 < v + n < 1`, namely `n = -floor(v)`; integral `v` gives none.
    pub fn shallow_roots(&self, point: &ApartmentPoint) -> Result<Vec<AffineRoot>> {
        self.check_point(point)?;
        if !self.in_closed_alcove(point) {
            return Err(Error::OutsideAlcove);
        }
        let mut out: Vec<AffineRoot> = self
            .roots()
            .iter()
            .filter_map(|a| {
                let v = AffineRoot::new(a.clone(), 0).depth(point);
                if v.is_integer() {
                    None
                } else {
                    Some(AffineRoot::new(a.clone(), -v.floor().to_integer()))
                }
            })
            .collect();
        out.sort_by(|a, b| self.enumeration_order(point, a, b));
        Ok(out)
    }

    /// `n_J(Σ n_j α_j) = Σ_{j∈J} n_j`.
    pub fn n_j(&self, alpha: &AffineRoot, facet: &Facet) -> i64 {
        self.delta_coords(alpha)
            .iter()
            .enumerate()
            .filter(|(i, _)| facet.contains(*i))
            .map(|(_, c)| c)
            .sum()
    }

    /// A shallow root is indecomposable iff `n_J(α) = 1`.
    pub fn is_indecomposable(&self, alpha: &AffineRoot, facet: &Facet) -> Result<bool> {
        let point = self.facet_barycenter(facet);
        if !self.is_affine_root(alpha) || !alpha.is_shallow(&point) {
            return Err(Error::NotShallow(self.affine_name(alpha)));
        }
        Ok(self.n_j(alpha, facet) == 1)
    }

    /// A chain `α = α_{i_1} + … + α_{i_m}` of simple affine roots whose
    /// partial sums are all affine roots, built by repeatedly removing the
    /// largest-index simple root that leaves a positive affine root.
    pub fn simple_chain(&self, alpha: &AffineRoot) -> Vec<usize> {
        let simples = self.simple_affine_roots();
        let mut rest = alpha.clone();
        let mut peeled = Vec::new();
        loop {
            if let Some(i) = simples.iter().position(|s| *s == rest) {
                peeled.push(i);
                break;
            }
            let next = (0..simples.len())
                .rev()
                .find(|&i| self.is_positive_affine(&rest.sub(&simples[i])));
            match next {
                Some(i) => {
                    peeled.push(i);
                    rest = rest.sub(&simples[i]);
                }
                None => break,
            }
        }
        peeled.reverse();
        peeled
    }

    /// Splits a shallow root into two shallow roots, or returns `None` when it
    /// is indecomposable. Candidates are the partial sums of
    /// [`RootSystem::simple_chain`], starting from the first partial sum ending
    /// in a non-vanishing simple root; when no partial sum splits `α`, every
    /// shallow root is tried in enumeration order.
    pub fn decompose_shallow(
        &self,
        alpha: &AffineRoot,
        point: &ApartmentPoint,
    ) -> Result<Option<(AffineRoot, AffineRoot)>> {
        if !self.is_affine_root(alpha) || !alpha.is_shallow(point) {
            return Err(Error::NotShallow(self.affine_name(alpha)));
        }
        let facet = self.facet_of(point)?;
        if self.n_j(alpha, &facet) < 2 {
            return Ok(None);
        }
        let is_shallow_root = |x: &AffineRoot| self.is_affine_root(x) && x.is_shallow(point);
        let chain = self.simple_chain(alpha);
        let first = chain.iter().position(|i| facet.contains(*i)).unwrap_or(0);
        let mut partial = AffineRoot::new(Root::zero(self.rank()), 0);
        for (k, &i) in chain.iter().enumerate() {
            partial = partial.add(&self.simple_affine_root(i));
            if k < first || k + 1 == chain.len() {
                continue;
            }
            let rest = alpha.sub(&partial);
            if is_shallow_root(&partial) && is_shallow_root(&rest) {
                return Ok(Some((partial, rest)));
            }
        }
        for beta in self.shallow_roots(point)? {
            let rest = alpha.sub(&beta);
            if is_shallow_root(&rest) {
                return Ok(Some((beta, rest)));
            }
        }
        Ok(None)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;

    fn c2() -> RootSystem {
        RootSystem::from_name("C2").unwrap()
    }

    #[test]
    fn simple_affine_roots_c2() {
        let rs = c2();
        let a0 = rs.simple_affine_root(0);
        assert_eq!(a0, AffineRoot::new(Root(vec![-2, -1]), 1));
        assert_eq!(rs.delta_coords(&a0), vec![1, 0, 0]);
        // α0 + 2α1 + α2 = 1
        let sum = rs.affine_from_delta(&[1, 2, 1]);
        assert_eq!(sum, AffineRoot::new(Root(vec![0, 0]), 1));
    }

    #[test]
    fn depths_at_barycenter() {
        let rs = c2();
        let lam = rs.barycenter();
        assert_eq!(rs.simple_affine_root(1).depth(&lam), q(1, 4));
        assert_eq!(rs.simple_affine_root(0).depth(&lam), q(1, 4));
        assert_eq!(rs.affine_from_delta(&[1, 1, 1]).depth(&lam), q(3, 4));
        assert!(rs.simple_affine_root(1).is_shallow(&lam));
        assert!(!rs.affine_from_delta(&[1, 2, 1]).is_shallow(&lam));
        assert!(!rs.simple_affine_root(1).neg().is_shallow(&lam));
    }

    #[test]
    fn vertex_depth_zero() {
        let rs = c2();
        let facet = Facet::new(&rs, [1, 2]).unwrap();
        let v = rs.facet_barycenter(&facet);
        assert_eq!(rs.simple_affine_root(0).depth(&v), Q::zero());
        let vertex = rs.facet_barycenter(&Facet::new(&rs, [2]).unwrap());
        assert_eq!(rs.simple_affine_root(0).depth(&vertex), Q::zero());
    }

    #[test]
    fn shallow_roots_c2_barycenter() {
        let rs = c2();
        let lam = rs.barycenter();
        let names: Vec<String> = rs
            .shallow_roots(&lam)
            .unwrap()
            .iter()
            .map(|a| rs.affine_name(a))
            .collect();
        assert_eq!(
            names,
            ["α0", "α1", "α2", "α0+α1", "α1+α2", "α0+2α1", "α0+α1+α2", "2α1+α2"]
        );
    }

    #[test]
    fn a1_vertex_has_no_shallow_roots() {
        let rs = RootSystem::from_name("A1").unwrap();
        let v = ApartmentPoint::new(vec![Q::zero()]);
        assert!(rs.shallow_roots(&v).unwrap().is_empty());
        let mid = ApartmentPoint::new(vec![q(1, 2)]);
        let s = rs.shallow_roots(&mid).unwrap();
        assert_eq!(s.len(), 2);
        assert!(s.iter().all(|a| a.depth(&mid) == q(1, 2)));
    }

    #[test]
    fn a2_barycenter_depths() {
        let rs = RootSystem::from_name("A2").unwrap();
        let lam = rs.barycenter();
        let s = rs.shallow_roots(&lam).unwrap();
        // brute force: levels -3..=3 for each root
        let mut brute = Vec::new();
        for a in rs.roots() {
            for n in -3..=3 {
                let x = AffineRoot::new(a.clone(), n);
                if x.is_shallow(&lam) {
                    brute.push(x);
                }
            }
        }
        assert_eq!(s.len(), brute.len());
        assert_eq!(s.len(), 6);
        let d: Vec<Q> = s.iter().map(|a| a.depth(&lam)).collect();
        assert_eq!(d, vec![q(1, 3), q(1, 3), q(1, 3), q(2, 3), q(2, 3), q(2, 3)]);
    }

    #[test]
    fn outside_alcove_rejected() {
        let rs = c2();
        let p = ApartmentPoint::new(vec![q(1, 1), q(1, 4)]);
        assert_eq!(rs.shallow_roots(&p), Err(Error::OutsideAlcove));
        let p = ApartmentPoint::new(vec![q(1, 4)]);
        assert!(rs.shallow_roots(&p).is_err());
    }

    #[test]
    fn n_j_values() {
        let rs = c2();
        let full = Facet::new(&rs, [0, 1, 2]).unwrap();
        assert_eq!(rs.n_j(&rs.affine_from_delta(&[1, 1, 1]), &full), 3);
        for i in 0..3 {
            assert_eq!(rs.n_j(&rs.simple_affine_root(i), &full), 1);
        }
        let j1 = Facet::new(&rs, [1]).unwrap();
        assert_eq!(rs.n_j(&rs.affine_from_delta(&[1, 2, 0]), &j1), 2);
    }

    #[test]
    fn indecomposability() {
        let rs = c2();
        let full = Facet::new(&rs, [0, 1, 2]).unwrap();
        assert!(rs.is_indecomposable(&rs.simple_affine_root(1), &full).unwrap());
        assert!(!rs.is_indecomposable(&rs.affine_from_delta(&[1, 1, 0]), &full).unwrap());
        let j12 = Facet::new(&rs, [1, 2]).unwrap();
        assert!(rs.is_indecomposable(&rs.affine_from_delta(&[1, 1, 0]), &j12).unwrap());
        // α0 vanishes on this facet so it is not shallow there
        assert!(rs.is_indecomposable(&rs.simple_affine_root(0), &j12).is_err());
    }

    #[test]
    fn decompositions() {
        let rs = c2();
        let lam = rs.barycenter();
        let a0 = rs.simple_affine_root(0);
        let a1 = rs.simple_affine_root(1);
        let a01 = rs.affine_from_delta(&[1, 1, 0]);
        assert_eq!(
            rs.decompose_shallow(&a01, &lam).unwrap(),
            Some((a0.clone(), a1.clone()))
        );
        assert_eq!(rs.decompose_shallow(&rs.simple_affine_root(2), &lam).unwrap(), None);
        let a0_2a1 = rs.affine_from_delta(&[1, 2, 0]);
        let (b, c) = rs.decompose_shallow(&a0_2a1, &lam).unwrap().unwrap();
        assert_eq!(b.add(&c), a0_2a1);
        assert!(b.is_shallow(&lam) && c.is_shallow(&lam));
        let mut brute = Vec::new();
        for beta in rs.shallow_roots(&lam).unwrap() {
            let rest = a0_2a1.sub(&beta);
            if rs.is_affine_root(&rest) && rest.is_shallow(&lam) {
                brute.push(beta);
            }
        }
        assert!(!brute.is_empty());
        assert!(brute.contains(&b));
    }

    #[test]
    fn point_json() {
        let p = ApartmentPoint::new(vec![q(1, 4), q(3, 4)]);
        let s = serde_json::to_string(&p).unwrap();
        assert_eq!(s, r#"["1/4","3/4"]"#);
        let back: ApartmentPoint = serde_json::from_str(&s).unwrap();
        assert_eq!(back, p);
        let r = AffineRoot::new(Root(vec![-1, 0]), 1);
        assert_eq!(serde_json::to_string(&r).unwrap(), r#"{"gradient":[-1,0],"level":1}"#);
    }
}
