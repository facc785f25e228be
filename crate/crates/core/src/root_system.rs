//! Finite irreducible reduced root systems.
//!
//! Roots are integer vectors over the basis of simple roots (Bourbaki
//! numbering). The full set of roots is produced by closing the simple roots
//! under simple reflections, starting from the Cartan matrix of the type.

use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum CartanType {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl fmt::Display for CartanType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = match self {
            CartanType::A => "A",
            CartanType::B => "B",
            CartanType::C => "C",
            CartanType::D => "D",
            CartanType::E => "E",
            CartanType::F => "F",
            CartanType::G => "G",
        };
        f.write_str(c)
    }
}

impl FromStr for CartanType {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_uppercase().as_str() {
            "A" => Ok(CartanType::A),
            "B" => Ok(CartanType::B),
            "C" => Ok(CartanType::C),
            "D" => Ok(CartanType::D),
            "E" => Ok(CartanType::E),
            "F" => Ok(CartanType::F),
            "G" => Ok(CartanType::G),
            other => Err(Error::UnknownTypeLetter(other.to_string())),
        }
    }
}

/// A root written in the basis of simple roots.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Root(pub Vec<i64>);

impl Root {
    pub fn zero(rank: usize) -> Self {
        Root(vec![0; rank])
    }

    pub fn simple(rank: usize, i: usize) -> Self {
        let mut v = vec![0; rank];
        v[i] = 1;
        Root(v)
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.0
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }

    pub fn height(&self) -> i64 {
        self.0.iter().sum()
    }

    /// All coefficients nonnegative and not all zero.
    pub fn is_positive(&self) -> bool {
        !self.is_zero() && self.0.iter().all(|&c| c >= 0)
    }

    pub fn scale(&self, k: i64) -> Root {
        Root(self.0.iter().map(|c| c * k).collect())
    }
}

impl Add for &Root {
    type Output = Root;
    fn add(self, rhs: &Root) -> Root {
        Root(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &Root {
    type Output = Root;
    fn sub(self, rhs: &Root) -> Root {
        Root(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl Neg for &Root {
    type Output = Root;
    fn neg(self) -> Root {
        Root(self.0.iter().map(|a| -a).collect())
    }
}

impl Mul<&Root> for i64 {
    type Output = Root;
    fn mul(self, rhs: &Root) -> Root {
        rhs.scale(self)
    }
}

impl fmt::Display for Root {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&linear_combination(&self.0, "a", 1))
    }
}

/// Formats `Σ c_i sym_{i+offset}` as e.g. `a1+2a2`, `-a1`, `0`.
pub(crate) fn linear_combination(coeffs: &[i64], sym: &str, offset: usize) -> String {
    let mut out = String::new();
    for (i, &c) in coeffs.iter().enumerate() {
        if c == 0 {
            continue;
        }
        if c < 0 {
            out.push('-');
        } else if !out.is_empty() {
            out.push('+');
        }
        if c.abs() != 1 {
            out.push_str(&c.abs().to_string());
        }
        out.push_str(sym);
        out.push_str(&(i + offset).to_string());
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

/// Isomorphism type of the rank-two subsystem `R ∩ span(a, b)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Rank2Type {
    Collinear,
    A1xA1,
    A2,
    C2,
    G2,
}

#[derive(Debug, Clone)]
pub struct RootSystem {
    cartan_type: CartanType,
    rank: usize,
    /// `cartan[i][j] = <a_i^vee, a_j>`.
    cartan: Vec<Vec<i64>>,
    /// Symmetric bilinear form on simple roots; short roots have squared length 2.
    gram: Vec<Vec<i64>>,
    roots: Vec<Root>,
    index: HashMap<Root, usize>,
    highest_root: Root,
    marks: Vec<i64>,
    coxeter_number: i64,
}

fn type_is_valid(t: CartanType, rank: usize) -> bool {
    match t {
        CartanType::A => rank >= 1,
        CartanType::B | CartanType::C => rank >= 2,
        CartanType::D => rank >= 4,
        CartanType::E => (6..=8).contains(&rank),
        CartanType::F => rank == 4,
        CartanType::G => rank == 2,
    }
}

/// Bourbaki Cartan matrix, `a[i][j] = <a_i^vee, a_j>`.
pub fn cartan_matrix(t: CartanType, rank: usize) -> Result<Vec<Vec<i64>>> {
    if !type_is_valid(t, rank) {
        return Err(Error::InvalidType(t.to_string(), rank));
    }
    let n = rank;
    let mut a = vec![vec![0i64; n]; n];
    for (i, row) in a.iter_mut().enumerate() {
        row[i] = 2;
    }
    let simple_bond = |a: &mut Vec<Vec<i64>>, i: usize, j: usize| {
        a[i][j] = -1;
        a[j][i] = -1;
    };
    // multiple bond between a long node and a short node
    let multi_bond = |a: &mut Vec<Vec<i64>>, long: usize, short: usize, m: i64| {
        a[long][short] = -1;
        a[short][long] = -m;
    };
    match t {
        CartanType::A => {
            for i in 0..n.saturating_sub(1) {
                simple_bond(&mut a, i, i + 1);
            }
        }
        CartanType::B => {
            for i in 0..n - 2 {
                simple_bond(&mut a, i, i + 1);
            }
            multi_bond(&mut a, n - 2, n - 1, 2);
        }
        CartanType::C => {
            for i in 0..n - 2 {
                simple_bond(&mut a, i, i + 1);
            }
            multi_bond(&mut a, n - 1, n - 2, 2);
        }
        CartanType::D => {
            for i in 0..n - 2 {
                simple_bond(&mut a, i, i + 1);
            }
            simple_bond(&mut a, n - 3, n - 1);
        }
        CartanType::E => {
            simple_bond(&mut a, 0, 2);
            simple_bond(&mut a, 1, 3);
            for i in 2..n - 1 {
                simple_bond(&mut a, i, i + 1);
            }
        }
        CartanType::F => {
            simple_bond(&mut a, 0, 1);
            multi_bond(&mut a, 1, 2, 2);
            simple_bond(&mut a, 2, 3);
        }
        CartanType::G => {
            multi_bond(&mut a, 1, 0, 3);
        }
    }
    Ok(a)
}

/// Finds `d_i` with `d_i a_ij = d_j a_ji`, scaled so that the shortest simple
/// root has `d = 1`; the squared lengths are then `2 d_i`.
fn symmetrize(cartan: &[Vec<i64>]) -> Vec<i64> {
    use num_rational::Ratio;
    let n = cartan.len();
    let mut d: Vec<Option<Ratio<i64>>> = vec![None; n];
    d[0] = Some(Ratio::from_integer(1));
    let mut queue = VecDeque::from([0usize]);
    while let Some(i) = queue.pop_front() {
        for j in 0..n {
            if i != j && cartan[i][j] != 0 && d[j].is_none() {
                d[j] = Some(d[i].unwrap() * Ratio::new(cartan[i][j], cartan[j][i]));
                queue.push_back(j);
            }
        }
    }
    let d: Vec<Ratio<i64>> = d.into_iter().map(|x| x.expect("connected diagram")).collect();
    let min = *d.iter().min().unwrap();
    d.iter()
        .map(|x| {
            let r = *x / min;
            assert!(r.is_integer());
            *r.numer()
        })
        .collect()
}

impl RootSystem {
    pub fn new(t: CartanType, rank: usize) -> Result<Self> {
        let cartan = cartan_matrix(t, rank)?;
        let d = symmetrize(&cartan);
        let gram: Vec<Vec<i64>> = (0..rank)
            .map(|i| (0..rank).map(|j| 2 * d[i] * cartan[i][j] / 2).collect())
            .collect();
        debug_assert!((0..rank).all(|i| (0..rank).all(|j| gram[i][j] == gram[j][i])));

        let mut rs = RootSystem {
            cartan_type: t,
            rank,
            cartan,
            gram,
            roots: Vec::new(),
            index: HashMap::new(),
            highest_root: Root::zero(rank),
            marks: Vec::new(),
            coxeter_number: 0,
        };
        rs.close_under_reflections();
        let highest = rs
            .positive_roots()
            .max_by_key(|r| r.height())
            .cloned()
            .expect("nonempty root system");
        rs.marks = std::iter::once(1).chain(highest.0.iter().copied()).collect();
        rs.coxeter_number = rs.marks.iter().sum();
        rs.highest_root = highest;
        Ok(rs)
    }

    pub fn from_name(name: &str) -> Result<Self> {
        let name = name.trim();
        if name.is_empty() {
            return Err(Error::Parse("empty type name".into()));
        }
        let (letter, rank) = name.split_at(1);
        let t: CartanType = letter.parse()?;
        let rank: usize = rank
            .parse()
            .map_err(|_| Error::Parse(format!("bad rank in `{name}`")))?;
        Self::new(t, rank)
    }

    fn close_under_reflections(&mut self) {
        let n = self.rank;
        let mut seen: std::collections::HashSet<Root> = std::collections::HashSet::new();
        let mut queue: VecDeque<Root> = VecDeque::new();
        for i in 0..n {
            let r = Root::simple(n, i);
            seen.insert(r.clone());
            queue.push_back(r);
        }
        while let Some(r) = queue.pop_front() {
            for i in 0..n {
                let img = self.simple_reflection(i, &r);
                if seen.insert(img.clone()) {
                    queue.push_back(img);
                }
            }
        }
        let mut pos: Vec<Root> = seen.iter().filter(|r| r.is_positive()).cloned().collect();
        pos.sort_by(|a, b| a.height().cmp(&b.height()).then_with(|| a.cmp(b)));
        let neg: Vec<Root> = pos.iter().map(|r| -r).collect();
        self.roots = pos.into_iter().chain(neg).collect();
        self.index = self.roots.iter().enumerate().map(|(i, r)| (r.clone(), i)).collect();
    }

    pub fn cartan_type(&self) -> CartanType {
        self.cartan_type
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn name(&self) -> String {
        format!("{}{}", self.cartan_type, self.rank)
    }

    pub fn cartan(&self) -> &[Vec<i64>] {
        &self.cartan
    }

    /// All roots: positive roots by height, then their negatives.
    pub fn roots(&self) -> &[Root] {
        &self.roots
    }

    pub fn positive_roots(&self) -> impl Iterator<Item = &Root> {
        self.roots[..self.roots.len() / 2].iter()
    }

    pub fn num_positive(&self) -> usize {
        self.roots.len() / 2
    }

    pub fn simple_roots(&self) -> Vec<Root> {
        (0..self.rank).map(|i| Root::simple(self.rank, i)).collect()
    }

    pub fn highest_root(&self) -> &Root {
        &self.highest_root
    }

    /// Marks `m_0..m_l` of the affine diagram, `m_0 = 1`.
    pub fn marks(&self) -> &[i64] {
        &self.marks
    }

    pub fn coxeter_number(&self) -> i64 {
        self.coxeter_number
    }

    pub fn is_root(&self, v: &Root) -> bool {
        self.index.contains_key(v)
    }

    pub fn root_index(&self, v: &Root) -> Option<usize> {
        self.index.get(v).copied()
    }

    pub fn inner(&self, a: &Root, b: &Root) -> i64 {
        let mut s = 0;
        for i in 0..self.rank {
            if a.0[i] == 0 {
                continue;
            }
            for j in 0..self.rank {
                s += a.0[i] * self.gram[i][j] * b.0[j];
            }
        }
        s
    }

    pub fn norm(&self, a: &Root) -> i64 {
        self.inner(a, a)
    }

    /// `<b, a^vee> = 2(b,a)/(a,a)`.
    pub fn pairing(&self, b: &Root, a: &Root) -> i64 {
        let num = 2 * self.inner(b, a);
        let den = self.norm(a);
        debug_assert_eq!(num % den, 0);
        num / den
    }

    /// `<a_i, a_j^vee>` for simple roots.
    pub fn simple_pairing(&self, i: usize, j: usize) -> i64 {
        self.cartan[j][i]
    }

    pub fn is_long(&self, a: &Root) -> bool {
        let max = self.norm(&self.highest_root);
        self.norm(a) == max
    }

    pub fn is_short(&self, a: &Root) -> bool {
        !self.is_long(a)
    }

    pub fn simple_reflection(&self, i: usize, b: &Root) -> Root {
        // <b, a_i^vee> = sum_j b_j <a_j, a_i^vee> = sum_j b_j cartan[i][j]
        let k: i64 = (0..self.rank).map(|j| b.0[j] * self.cartan[i][j]).sum();
        let mut out = b.clone();
        out.0[i] -= k;
        out
    }

    pub fn reflect(&self, a: &Root, b: &Root) -> Root {
        let k = self.pairing(b, a);
        b - &a.scale(k)
    }

    /// Coroot `a^vee` expressed in the basis of simple coroots.
    pub fn coroot_coeffs(&self, a: &Root) -> Vec<i64> {
        let na = self.norm(a);
        (0..self.rank)
            .map(|i| {
                let num = a.0[i] * self.gram[i][i];
                debug_assert_eq!(num % na, 0);
                num / na
            })
            .collect()
    }

    /// Pairs `(i, j)` with `i, j > 0` and `i a + j b` a root, ordered by `(i+j, i)`.
    pub fn root_string(&self, a: &Root, b: &Root) -> Vec<(i64, i64)> {
        let mut out = Vec::new();
        if a.is_zero() || b.is_zero() {
            return out;
        }
        for s in 2..=6 {
            for i in 1..s {
                let j = s - i;
                if i > 3 || j > 3 {
                    continue;
                }
                let v = &a.scale(i) + &b.scale(j);
                if self.is_root(&v) {
                    out.push((i, j));
                }
            }
        }
        out
    }

    pub fn collinear(a: &Root, b: &Root) -> bool {
        let n = a.rank();
        for i in 0..n {
            for j in 0..n {
                if a.0[i] * b.0[j] != a.0[j] * b.0[i] {
                    return false;
                }
            }
        }
        true
    }

    /// Type of the subsystem of roots lying in the plane spanned by `a` and `b`.
    pub fn rank2_subsystem_type(&self, a: &Root, b: &Root) -> Rank2Type {
        if Self::collinear(a, b) {
            return Rank2Type::Collinear;
        }
        let count = self.roots.iter().filter(|r| in_span(r, a, b)).count();
        match count {
            4 => Rank2Type::A1xA1,
            6 => Rank2Type::A2,
            8 => Rank2Type::C2,
            12 => Rank2Type::G2,
            n => unreachable!("rank-2 subsystem with {n} roots"),
        }
    }

    pub fn to_export(&self) -> RootSystemExport {
        RootSystemExport {
            cartan_type: self.cartan_type.to_string(),
            rank: self.rank,
            simple_roots: self.simple_roots(),
            roots: self.roots.clone(),
            marks: self.marks.clone(),
            coxeter_number: self.coxeter_number,
        }
    }
}

/// `r` in the rational span of `a` and `b` (assumed independent): all 3x3
/// minors of the matrix with rows `a`, `b`, `r` vanish.
fn in_span(r: &Root, a: &Root, b: &Root) -> bool {
    let n = r.rank();
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                let m = [
                    [a.0[i], a.0[j], a.0[k]],
                    [b.0[i], b.0[j], b.0[k]],
                    [r.0[i], r.0[j], r.0[k]],
                ];
                let det = m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
                    - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
                    + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
                if det != 0 {
                    return false;
                }
            }
        }
    }
    true
}

/// JSON form of a root system.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct RootSystemExport {
    #[serde(rename = "type")]
    pub cartan_type: String,
    pub rank: usize,
    pub simple_roots: Vec<Root>,
    pub roots: Vec<Root>,
    pub marks: Vec<i64>,
    pub coxeter_number: i64,
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(v: &[i64]) -> Root {
        Root(v.to_vec())
    }

    #[test]
    fn classical_counts() {
        let expected = [
            ("A1", 2, 2),
            ("A2", 6, 3),
            ("A3", 12, 4),
            ("B2", 8, 4),
            ("B3", 18, 6),
            ("C2", 8, 4),
            ("C3", 18, 6),
            ("D4", 24, 6),
            ("D5", 40, 8),
            ("E6", 72, 12),
            ("E7", 126, 18),
            ("E8", 240, 30),
            ("F4", 48, 12),
            ("G2", 12, 6),
        ];
        for (name, count, h) in expected {
            let rs = RootSystem::from_name(name).unwrap();
            assert_eq!(rs.roots().len(), count, "{name}");
            assert_eq!(rs.coxeter_number(), h, "{name}");
        }
    }

    #[test]
    fn c2_data() {
        let rs = RootSystem::new(CartanType::C, 2).unwrap();
        assert_eq!(rs.roots().len(), 8);
        assert_eq!(rs.marks(), &[1, 2, 1]);
        assert_eq!(rs.coxeter_number(), 4);
        assert_eq!(rs.highest_root(), &r(&[2, 1]));
        assert!(rs.is_short(&r(&[1, 0])));
        assert!(rs.is_long(&r(&[0, 1])));
        assert!(rs.is_short(&r(&[1, 1])));
        assert!(rs.is_long(&r(&[2, 1])));
    }

    #[test]
    fn a1_data() {
        let rs = RootSystem::new(CartanType::A, 1).unwrap();
        assert_eq!(rs.roots(), &[r(&[1]), r(&[-1])]);
        assert_eq!(rs.marks(), &[1, 1]);
        assert_eq!(rs.coxeter_number(), 2);
    }

    #[test]
    fn invalid_types_rejected() {
        assert!(RootSystem::new(CartanType::D, 3).is_err());
        assert!(RootSystem::new(CartanType::G, 3).is_err());
        assert!(RootSystem::new(CartanType::E, 5).is_err());
        assert!(RootSystem::new(CartanType::B, 1).is_err());
        assert!(RootSystem::new(CartanType::A, 0).is_err());
        assert!(RootSystem::from_name("X3").is_err());
    }

    #[test]
    fn rank2_types() {
        let c2 = RootSystem::from_name("C2").unwrap();
        assert_eq!(c2.rank2_subsystem_type(&r(&[1, 0]), &r(&[0, 1])), Rank2Type::C2);
        assert_eq!(c2.rank2_subsystem_type(&r(&[1, 0]), &r(&[1, 0])), Rank2Type::Collinear);
        assert_eq!(c2.rank2_subsystem_type(&r(&[1, 0]), &r(&[-1, 0])), Rank2Type::Collinear);
        let a3 = RootSystem::from_name("A3").unwrap();
        let a1 = r(&[1, 0, 0]);
        let a3r = r(&[0, 0, 1]);
        assert!(!a3.is_root(&(&a1 + &a3r)) && !a3.is_root(&(&a1 - &a3r)));
        assert_eq!(a3.rank2_subsystem_type(&a1, &a3r), Rank2Type::A1xA1);
        assert_eq!(a3.rank2_subsystem_type(&a1, &r(&[0, 1, 0])), Rank2Type::A2);
        let g2 = RootSystem::from_name("G2").unwrap();
        assert_eq!(g2.rank2_subsystem_type(&r(&[1, 0]), &r(&[0, 1])), Rank2Type::G2);
    }

    #[test]
    fn root_strings() {
        let c2 = RootSystem::from_name("C2").unwrap();
        assert_eq!(c2.root_string(&r(&[1, 0]), &r(&[0, 1])), vec![(1, 1), (2, 1)]);
        let a2 = RootSystem::from_name("A2").unwrap();
        let a = r(&[1, 0]);
        let b = r(&[0, 1]);
        let brute: Vec<(i64, i64)> = (1..=3)
            .flat_map(|i| (1..=3).map(move |j| (i, j)))
            .filter(|&(i, j)| a2.is_root(&(&a.scale(i) + &b.scale(j))))
            .collect();
        assert_eq!(brute, vec![(1, 1)]);
        assert_eq!(a2.root_string(&a, &b), brute);
        let a3 = RootSystem::from_name("A3").unwrap();
        assert!(a3.root_string(&r(&[1, 0, 0]), &r(&[0, 0, 1])).is_empty());
        let g2 = RootSystem::from_name("G2").unwrap();
        assert_eq!(
            g2.root_string(&r(&[1, 0]), &r(&[0, 1])),
            vec![(1, 1), (2, 1), (3, 1), (3, 2)]
        );
    }

    #[test]
    fn export_shape() {
        let rs = RootSystem::from_name("C2").unwrap();
        let v = serde_json::to_value(rs.to_export()).unwrap();
        assert_eq!(v["type"], "C");
        assert_eq!(v["rank"], 2);
        assert_eq!(v["marks"], serde_json::json!([1, 2, 1]));
        assert_eq!(v["coxeter_number"], 4);
        assert_eq!(v["roots"].as_array().unwrap().len(), 8);
    }
}
