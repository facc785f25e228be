//! Shallow characters: parameter maps on the shallow root groups, their
//! validation through commutator relations, and the space of all of them.
//!
//! A character is stored as one field element `c_α` per shallow root (in the
//! enumeration order of [`RootSystem::shallow_roots`]), with
//! `χ_α(x) = ψ(Tr(c_α x))`.

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::affine::{AffineRoot, ApartmentPoint, Facet};
use crate::chevalley::{CommutatorTerm, Pinning, PinningKind};
use crate::error::{Error, Result};
use crate::field::{CharTerm, Elem, Field};
use crate::linalg::{kernel_mod_p, rref_mod_p};
use crate::rational::Q;
use crate::root_system::RootSystem;

/// Parameter maps are enumerated exhaustively only up to this many.
pub const EXHAUSTIVE_LIMIT: u64 = 1 << 20;

type Expansion = Vec<(usize, CommutatorTerm)>;

/// Everything fixed before talking about characters: the group, the point,
/// the residue field and the pinning, plus the shallow commutator data.
#[derive(Debug, Clone)]
pub struct ShallowContext {
    rs: RootSystem,
    point: ApartmentPoint,
    facet: Facet,
    field: Field,
    pinning: Arc<Pinning>,
    roots: Vec<AffineRoot>,
    index: HashMap<AffineRoot, usize>,
    /// `expansions[a][b]`: shallow factors of `[u_{α_a}(s), u_{α_b}(t)]`,
    /// `None` for parallel gradients.
    expansions: Vec<Vec<Option<Expansion>>>,
}

impl ShallowContext {
    pub fn new(rs: &RootSystem, point: ApartmentPoint, field: Field, pinning: Arc<Pinning>) -> Result<Self> {
        if pinning.root_system().name() != rs.name() {
            return Err(Error::Pinning(pinning.kind().name().into()));
        }
        let roots = rs.shallow_roots(&point)?;
        let facet = rs.facet_of(&point)?;
        let index: HashMap<AffineRoot, usize> = roots.iter().enumerate().map(|(i, r)| (r.clone(), i)).collect();
        let mut expansions = Vec::with_capacity(roots.len());
        for a in &roots {
            let mut row = Vec::with_capacity(roots.len());
            for b in &roots {
                if RootSystem::collinear(&a.gradient, &b.gradient) {
                    row.push(None);
                    continue;
                }
                let terms = pinning
                    .shallow_commutator_expansion(a, b, &point)?
                    .into_iter()
                    .map(|(r, t)| (index[&r], t))
                    .collect();
                row.push(Some(terms));
            }
            expansions.push(row);
        }
        Ok(ShallowContext {
            rs: rs.clone(),
            point,
            facet,
            field,
            pinning,
            roots,
            index,
            expansions,
        })
    }

    /// Convenience constructor with the default pinning of the type.
    pub fn with_defaults(rs: &RootSystem, point: ApartmentPoint, q: u64) -> Result<Self> {
        let pinning = Arc::new(Pinning::new(rs, PinningKind::default_for(rs))?);
        Self::new(rs, point, Field::new(q)?, pinning)
    }

    pub fn root_system(&self) -> &RootSystem {
        &self.rs
    }

    pub fn point(&self) -> &ApartmentPoint {
        &self.point
    }

    pub fn facet(&self) -> &Facet {
        &self.facet
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn pinning(&self) -> &Pinning {
        &self.pinning
    }

    pub fn shallow_roots(&self) -> &[AffineRoot] {
        &self.roots
    }

    pub fn len(&self) -> usize {
        self.roots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.roots.is_empty()
    }

    pub fn index_of(&self, root: &AffineRoot) -> Option<usize> {
        self.index.get(root).copied()
    }

    pub fn name(&self, k: usize) -> String {
        self.rs.affine_name(&self.roots[k])
    }

    pub fn depth(&self, k: usize) -> Q {
        self.roots[k].depth(&self.point)
    }

    pub fn expansion(&self, a: usize, b: usize) -> Option<&[(usize, CommutatorTerm)]> {
        self.expansions[a][b].as_deref()
    }

    pub fn is_indecomposable(&self, k: usize) -> bool {
        self.rs.n_j(&self.roots[k], &self.facet) == 1
    }

    pub fn indecomposables(&self) -> Vec<usize> {
        (0..self.len()).filter(|&k| self.is_indecomposable(k)).collect()
    }

    /// Distinct depths of shallow roots, increasing.
    pub fn depths(&self) -> Vec<Q> {
        let mut d: Vec<Q> = (0..self.len()).map(|k| self.depth(k)).collect();
        d.dedup();
        d
    }

    /// Roots of the smallest positive depth.
    pub fn epipelagic_roots(&self) -> Vec<usize> {
        match self.depths().first() {
            Some(&r) => (0..self.len()).filter(|&k| self.depth(k) == r).collect(),
            None => Vec::new(),
        }
    }

    /// Unordered pairs `i < j` with non-parallel gradients and at least one
    /// shallow factor in their commutator.
    pub fn relation_pairs(&self) -> Vec<(usize, usize)> {
        let n = self.len();
        (0..n)
            .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
            .filter(|&(i, j)| self.expansion(i, j).is_some_and(|e| !e.is_empty()))
            .collect()
    }

    fn relation_terms(&self, i: usize, j: usize, params: &[Elem]) -> Vec<CharTerm> {
        self.expansion(i, j)
            .unwrap_or(&[])
            .iter()
            .map(|&(t, term)| CharTerm::new(params[t], (term.i, term.j), term.constant))
            .collect()
    }

    pub fn character(&self, params: Vec<Elem>) -> Result<ShallowCharacter> {
        if params.len() != self.len() {
            return Err(Error::CharacterDomain(format!(
                "expected {} parameters, got {}",
                self.len(),
                params.len()
            )));
        }
        Ok(ShallowCharacter { params })
    }

    pub fn trivial(&self) -> ShallowCharacter {
        ShallowCharacter {
            params: vec![Elem::ZERO; self.len()],
        }
    }

    /// Checks every commutator relation by evaluating it on all of `F_q²`.
    pub fn validate(&self, chi: &ShallowCharacter) -> Result<Validation> {
        self.check_domain(chi)?;
        let violated: Vec<(usize, usize)> = self
            .relation_pairs()
            .into_iter()
            .filter(|&(i, j)| !self.field.char_product_trivial(&self.relation_terms(i, j, &chi.params)))
            .collect();
        Ok(Validation {
            valid: violated.is_empty(),
            violated,
        })
    }

    pub fn is_valid(&self, chi: &ShallowCharacter) -> bool {
        self.validate(chi).map(|v| v.valid).unwrap_or(false)
    }

    fn check_domain(&self, chi: &ShallowCharacter) -> Result<()> {
        if chi.params.len() != self.len() {
            return Err(Error::CharacterDomain(format!(
                "expected {} parameters, got {}",
                self.len(),
                chi.params.len()
            )));
        }
        if chi.params.iter().any(|c| c.0 as usize >= self.field.q()) {
            return Err(Error::FieldElement);
        }
        Ok(())
    }

    /// Largest depth of a root with nontrivial parameter; `0` for the
    /// trivial character.
    pub fn char_depth(&self, chi: &ShallowCharacter) -> Q {
        chi.params
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, _)| self.depth(k))
            .max()
            .unwrap_or_default()
    }

    /// Indices with nontrivial parameter.
    pub fn support(&self, chi: &ShallowCharacter) -> Vec<usize> {
        (0..self.len()).filter(|&k| !chi.params[k].is_zero()).collect()
    }

    /// Extends parameters given on the indecomposable roots by zero.
    pub fn indecomposable_extension(&self, partial: &[(AffineRoot, Elem)]) -> Result<ShallowCharacter> {
        let indec = self.indecomposables();
        let mut params = vec![Elem::ZERO; self.len()];
        let mut seen = vec![false; self.len()];
        for (root, c) in partial {
            let k = self
                .index_of(root)
                .filter(|&k| self.is_indecomposable(k))
                .ok_or_else(|| {
                    Error::CharacterDomain(format!(
                        "{} is not an indecomposable shallow root",
                        self.rs.affine_name(root)
                    ))
                })?;
            if seen[k] {
                return Err(Error::CharacterDomain(format!("{} assigned twice", self.name(k))));
            }
            seen[k] = true;
            params[k] = *c;
        }
        if let Some(&k) = indec.iter().find(|&&k| !seen[k]) {
            return Err(Error::CharacterDomain(format!(
                "missing parameter for {}",
                self.name(k)
            )));
        }
        let chi = ShallowCharacter { params };
        let v = self.validate(&chi)?;
        assert!(v.valid, "extension by zero from indecomposables must be a character");
        Ok(chi)
    }

    /// `[z·χ](g) = χ(z⁻¹·g)` with `z·u_α(x) = u_α(zx)`, i.e. `c_α ↦ z⁻¹ c_α`.
    pub fn scalar_act(&self, z: Elem, chi: &ShallowCharacter) -> Result<ShallowCharacter> {
        self.check_domain(chi)?;
        let zi = self.field.inv(z)?;
        let out = ShallowCharacter {
            params: chi.params.iter().map(|&c| self.field.mul(zi, c)).collect(),
        };
        if self.is_valid(chi) && !self.is_valid(&out) {
            return Err(Error::NotFieldLinear);
        }
        Ok(out)
    }

    pub fn add(&self, a: &ShallowCharacter, b: &ShallowCharacter) -> ShallowCharacter {
        ShallowCharacter {
            params: a
                .params
                .iter()
                .zip(&b.params)
                .map(|(&x, &y)| self.field.add(x, y))
                .collect(),
        }
    }

    /// Number of `F_p` unknowns: one per coordinate of each `c_α`.
    fn num_unknowns(&self) -> usize {
        self.len() * self.field.degree() as usize
    }

    fn unknown_basis(&self, k: usize, d: usize) -> Vec<Elem> {
        let m = self.field.degree() as usize;
        let mut coeffs = vec![0u64; m];
        coeffs[d] = 1;
        let mut params = vec![Elem::ZERO; self.len()];
        params[k] = self.field.from_coeffs(&coeffs).expect("basis element");
        params
    }

    /// The `F_p`-linear constraints on the coordinates of the parameters:
    /// every coefficient of every relation's trace polynomial must vanish.
    pub fn constraint_matrix(&self) -> Vec<Vec<u64>> {
        let f = &self.field;
        let m = f.degree() as usize;
        let nvars = self.num_unknowns();
        let pairs = self.relation_pairs();
        let blocks: Vec<Vec<Vec<u64>>> = pairs
            .par_iter()
            .map(|&(i, j)| {
                // column per unknown: reduced polynomial coefficients
                let mut rows: BTreeMap<((u64, u64), usize), Vec<u64>> = BTreeMap::new();
                for k in 0..self.len() {
                    for d in 0..m {
                        let params = self.unknown_basis(k, d);
                        for (mono, c) in f.trace_polynomial(&self.relation_terms(i, j, &params)) {
                            for (e, v) in f.to_coeffs(c).into_iter().enumerate() {
                                if v != 0 {
                                    rows.entry((mono, e)).or_insert_with(|| vec![0; nvars])[k * m + d] = v;
                                }
                            }
                        }
                    }
                }
                rows.into_values().collect()
            })
            .collect();
        blocks.into_iter().flatten().collect()
    }

    fn params_from_vector(&self, v: &[u64]) -> Vec<Elem> {
        let m = self.field.degree() as usize;
        v.chunks(m)
            .map(|c| self.field.from_coeffs(c).expect("coordinates in F_p"))
            .collect()
    }

    fn vector_from_params(&self, params: &[Elem]) -> Vec<u64> {
        params.iter().flat_map(|&c| self.field.to_coeffs(c)).collect()
    }

    fn satisfies(&self, rows: &[Vec<u64>], params: &[Elem]) -> bool {
        let v = self.vector_from_params(params);
        let p = self.field.p();
        rows.iter()
            .all(|r| r.iter().zip(&v).map(|(a, b)| a * b).sum::<u64>() % p == 0)
    }

    /// The space of all shallow characters by linear algebra over `F_p`,
    /// cross-checked by brute force when the parameter space is small.
    pub fn solve_space(&self) -> CharacterSpace {
        let f = &self.field;
        let p = f.p();
        let nvars = self.num_unknowns();
        let constraints = self.constraint_matrix();
        let kernel = kernel_mod_p(&constraints, nvars, p);
        let dim_fp = kernel.len();
        let basis: Vec<ShallowCharacter> = kernel
            .iter()
            .map(|v| ShallowCharacter {
                params: self.params_from_vector(v),
            })
            .collect();

        // stable under multiplication by a generator of F_q over F_p?
        let fq_linear = f.degree() == 1 || {
            let t = f
                .from_coeffs(&{
                    let mut c = vec![0; f.degree() as usize];
                    c[1] = 1;
                    c
                })
                .unwrap();
            basis.iter().all(|chi| {
                let scaled: Vec<Elem> = chi.params.iter().map(|&c| f.mul(t, c)).collect();
                self.satisfies(&constraints, &scaled)
            })
        };
        let dim_fq = fq_linear.then(|| dim_fp / f.degree() as usize);

        let filtration = self
            .depths()
            .into_iter()
            .map(|r| {
                let mut rows = constraints.clone();
                let m = f.degree() as usize;
                for k in (0..self.len()).filter(|&k| self.depth(k) > r) {
                    for d in 0..m {
                        let mut row = vec![0; nvars];
                        row[k * m + d] = 1;
                        rows.push(row);
                    }
                }
                let dim = kernel_mod_p(&rows, nvars, p).len();
                FiltrationStep { depth: r, dim_fp: dim }
            })
            .collect();

        let forced = self.forced_relations(&constraints);
        let exhaustive = self.exhaustive_check(&constraints, dim_fp);

        CharacterSpace {
            dim_fp,
            dim_fq,
            fq_linear,
            basis,
            filtration,
            forced,
            epipelagic_roots: self.epipelagic_roots().len(),
            exhaustive,
        }
    }

    fn forced_relations(&self, constraints: &[Vec<u64>]) -> Vec<ForcedRelation> {
        let f = &self.field;
        let p = f.p();
        let m = f.degree() as usize;
        let nvars = self.num_unknowns();
        let mut rows = constraints.to_vec();
        let pivots = rref_mod_p(&mut rows, nvars, p);
        let var = |c: usize| {
            if m == 1 {
                format!("c[{}]", self.name(c))
            } else {
                format!("c[{}]_{}", self.name(c / m), c % m)
            }
        };
        rows.iter()
            .zip(&pivots)
            .map(|(row, &pc)| {
                let terms: Vec<(usize, u64)> = (0..nvars)
                    .filter(|&c| c != pc && row[c] != 0)
                    .map(|c| (c, (p - row[c]) % p))
                    .collect();
                let rhs = if terms.is_empty() {
                    "0".to_string()
                } else {
                    terms
                        .iter()
                        .map(|&(c, k)| if k == 1 { var(c) } else { format!("{k}·{}", var(c)) })
                        .collect::<Vec<_>>()
                        .join(" + ")
                };
                ForcedRelation {
                    text: format!("{} = {rhs}", var(pc)),
                    pivot: pc,
                    terms,
                }
            })
            .collect()
    }

    /// Brute force over every parameter map when there are few enough.
    fn exhaustive_check(&self, constraints: &[Vec<u64>], dim_fp: usize) -> Option<ExhaustiveCheck> {
        let q = self.field.q() as u64;
        let total = q.checked_pow(self.len() as u32).filter(|&t| t <= EXHAUSTIVE_LIMIT)?;
        let (count, agree) = (0..total)
            .into_par_iter()
            .map(|code| {
                let chi = self.decode(code);
                let valid = self.is_valid(&chi);
                (valid as u64, valid == self.satisfies(constraints, &chi.params))
            })
            .reduce(|| (0, true), |a, b| (a.0 + b.0, a.1 && b.1));
        Some(ExhaustiveCheck {
            maps: total,
            valid: count,
            agrees: agree && count == self.field.p().pow(dim_fp as u32),
        })
    }

    /// Parameter map number `code` in base-`q` digits, first root least significant.
    pub fn decode(&self, mut code: u64) -> ShallowCharacter {
        let q = self.field.q() as u64;
        let params = (0..self.len())
            .map(|_| {
                let d = code % q;
                code /= q;
                Elem(d as u8)
            })
            .collect();
        ShallowCharacter { params }
    }

    pub fn to_file(&self, chi: &ShallowCharacter) -> CharacterFile {
        CharacterFile {
            root_system: Some(self.rs.name()),
            lambda: self.point.clone(),
            q: self.field.q() as u64,
            pinning: Some(self.pinning.kind().name().to_string()),
            params: self
                .roots
                .iter()
                .zip(&chi.params)
                .map(|(r, &c)| ParamEntry {
                    root: r.clone(),
                    c: self.field.to_coeffs(c),
                })
                .collect(),
        }
    }

    /// Reads parameters from a file; roots may be listed in any order, and
    /// roots missing from the file get the trivial parameter.
    pub fn from_file(&self, file: &CharacterFile) -> Result<ShallowCharacter> {
        if file.q != self.field.q() as u64 {
            return Err(Error::CharacterDomain(format!(
                "file is for q={}, context has q={}",
                file.q,
                self.field.q()
            )));
        }
        if file.lambda != self.point {
            return Err(Error::CharacterDomain("file is for a different point".into()));
        }
        let mut params = vec![Elem::ZERO; self.len()];
        for e in &file.params {
            let k = self
                .index_of(&e.root)
                .ok_or_else(|| Error::CharacterDomain(format!("{} is not shallow here", e.root)))?;
            params[k] = self.field.from_coeffs(&e.c)?;
        }
        Ok(ShallowCharacter { params })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ShallowCharacter {
    pub params: Vec<Elem>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Validation {
    pub valid: bool,
    /// Pairs of indices into the shallow roots whose relation fails.
    pub violated: Vec<(usize, usize)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiltrationStep {
    #[serde(
        serialize_with = "crate::rational::serialize_q",
        deserialize_with = "crate::rational::deserialize_q"
    )]
    pub depth: Q,
    pub dim_fp: usize,
}

/// `pivot = Σ coeff · var` over `F_p`, on flattened coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ForcedRelation {
    pub text: String,
    pub pivot: usize,
    pub terms: Vec<(usize, u64)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExhaustiveCheck {
    pub maps: u64,
    pub valid: u64,
    pub agrees: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CharacterSpace {
    pub dim_fp: usize,
    /// Dimension over `F_q`, when the space is closed under `F_q` scaling.
    pub dim_fq: Option<usize>,
    pub fq_linear: bool,
    pub basis: Vec<ShallowCharacter>,
    pub filtration: Vec<FiltrationStep>,
    pub forced: Vec<ForcedRelation>,
    pub epipelagic_roots: usize,
    /// `None` when the parameter space was too large to enumerate.
    pub exhaustive: Option<ExhaustiveCheck>,
}

impl CharacterSpace {
    /// Dimension of the depth-`r` piece over `F_p`.
    pub fn dim_at(&self, r: Q) -> usize {
        self.filtration
            .iter()
            .filter(|s| s.depth <= r)
            .map(|s| s.dim_fp)
            .next_back()
            .unwrap_or(0)
    }

    pub fn report(&self, ctx: &ShallowContext) -> SpaceReport {
        SpaceReport {
            root_system: ctx.rs.name(),
            lambda: ctx.point.clone(),
            q: ctx.field.q() as u64,
            modulus: ctx.field.modulus_string(),
            pinning: ctx.pinning.kind().name().to_string(),
            pinning_hash: ctx.pinning.hash(),
            shallow_roots: (0..ctx.len()).map(|k| ctx.name(k)).collect(),
            dim_fp: self.dim_fp,
            dim_fq: self.dim_fq,
            fq_linear: self.fq_linear,
            basis: self
                .basis
                .iter()
                .map(|b| b.params.iter().map(|&c| ctx.field.to_coeffs(c)).collect())
                .collect(),
            filtration: self.filtration.clone(),
            forced_relations: self.forced.iter().map(|r| r.text.clone()).collect(),
            epipelagic_roots: self.epipelagic_roots,
            epipelagic_dim_fp: self.filtration.first().map_or(0, |s| s.dim_fp),
            exhaustive: self.exhaustive.clone(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpaceReport {
    pub root_system: String,
    pub lambda: ApartmentPoint,
    pub q: u64,
    pub modulus: String,
    pub pinning: String,
    pub pinning_hash: String,
    pub shallow_roots: Vec<String>,
    pub dim_fp: usize,
    pub dim_fq: Option<usize>,
    pub fq_linear: bool,
    pub basis: Vec<Vec<Vec<u64>>>,
    pub filtration: Vec<FiltrationStep>,
    pub forced_relations: Vec<String>,
    pub epipelagic_roots: usize,
    pub epipelagic_dim_fp: usize,
    pub exhaustive: Option<ExhaustiveCheck>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParamEntry {
    pub root: AffineRoot,
    /// Coordinates over `F_p`, constant term first.
    pub c: Vec<u64>,
}

/// On-disk form of a character.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CharacterFile {
    #[serde(rename = "type", default, skip_serializing_if = "Option::is_none")]
    pub root_system: Option<String>,
    pub lambda: ApartmentPoint,
    pub q: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pinning: Option<String>,
    pub params: Vec<ParamEntry>,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;

    fn c2(qq: u64) -> ShallowContext {
        let rs = RootSystem::from_name("C2").unwrap();
        let lam = rs.barycenter();
        ShallowContext::with_defaults(&rs, lam, qq).unwrap()
    }

    fn by_names(ctx: &ShallowContext, ones: &[&str]) -> ShallowCharacter {
        let params = (0..ctx.len())
            .map(|k| {
                if ones.contains(&ctx.name(k).as_str()) {
                    Elem::ONE
                } else {
                    Elem::ZERO
                }
            })
            .collect();
        ctx.character(params).unwrap()
    }

    const EXAMPLE: [&str; 5] = ["α0", "α0+α1", "α1+α2", "α0+2α1", "2α1+α2"];

    #[test]
    fn example_character_validates() {
        let ctx = c2(2);
        let chi = by_names(&ctx, &EXAMPLE);
        assert!(ctx.validate(&chi).unwrap().valid);
        assert_eq!(ctx.char_depth(&chi), q(3, 4));
        assert!(ctx.validate(&ctx.trivial()).unwrap().valid);
        assert_eq!(ctx.char_depth(&ctx.trivial()), q(0, 1));
    }

    #[test]
    fn flipped_character_fails_on_first_pair() {
        let ctx = c2(2);
        let chi = by_names(&ctx, &["α1+α2"]);
        let v = ctx.validate(&chi).unwrap();
        assert!(!v.valid);
        let (i, j) = v.violated[0];
        assert_eq!((ctx.name(i).as_str(), ctx.name(j).as_str()), ("α1", "α2"));
    }

    #[test]
    fn domain_checked() {
        let ctx = c2(2);
        assert!(ctx.character(vec![Elem::ONE; 3]).is_err());
        let bad = ShallowCharacter {
            params: vec![Elem(5); 8],
        };
        assert!(ctx.validate(&bad).is_err());
    }

    #[test]
    fn space_c2_q2() {
        let ctx = c2(2);
        let space = ctx.solve_space();
        assert_eq!(space.dim_fp, 5);
        assert_eq!(space.dim_fq, Some(5));
        let texts: Vec<&str> = space.forced.iter().map(|r| r.text.as_str()).collect();
        assert_eq!(
            texts,
            ["c[α0+α1] = c[α0+2α1]", "c[α1+α2] = c[2α1+α2]", "c[α0+α1+α2] = 0"]
        );
        assert_eq!(space.epipelagic_roots, 3);
        assert_eq!(space.dim_at(q(1, 4)), 3);
        let ex = space.exhaustive.unwrap();
        assert_eq!((ex.maps, ex.valid, ex.agrees), (256, 32, true));
        for b in &space.basis {
            assert!(ctx.is_valid(b));
        }
    }

    #[test]
    fn space_c2_q3() {
        let ctx = c2(3);
        let space = ctx.solve_space();
        assert_eq!(space.dim_fp, 3);
        assert!(space.exhaustive.unwrap().agrees);
        let k12 = (0..8).find(|&k| ctx.name(k) == "α1+α2").unwrap();
        let k212 = (0..8).find(|&k| ctx.name(k) == "2α1+α2").unwrap();
        for b in &space.basis {
            assert!(b.params[k12].is_zero() && b.params[k212].is_zero());
        }
    }

    #[test]
    fn filtration_is_nested() {
        for name in ["A2", "C2", "G2"] {
            let rs = RootSystem::from_name(name).unwrap();
            let ctx = ShallowContext::with_defaults(&rs, rs.barycenter(), 2).unwrap();
            let space = ctx.solve_space();
            let dims: Vec<usize> = space.filtration.iter().map(|s| s.dim_fp).collect();
            assert!(dims.windows(2).all(|w| w[0] <= w[1]), "{name}: {dims:?}");
            assert_eq!(*dims.last().unwrap(), space.dim_fp);
            assert_eq!(dims[0], space.epipelagic_roots);
        }
    }

    #[test]
    fn indecomposable_extensions() {
        let ctx = c2(2);
        let roots = ctx.shallow_roots().to_vec();
        let simple: Vec<(AffineRoot, Elem)> = (0..3)
            .map(|i| (ctx.root_system().simple_affine_root(i), Elem::ONE))
            .collect();
        let chi = ctx.indecomposable_extension(&simple).unwrap();
        assert_eq!(ctx.char_depth(&chi), q(1, 4));
        let zero: Vec<_> = simple.iter().map(|(r, _)| (r.clone(), Elem::ZERO)).collect();
        assert_eq!(ctx.indecomposable_extension(&zero).unwrap(), ctx.trivial());
        // decomposable root rejected
        let bad = vec![(roots[3].clone(), Elem::ONE)];
        assert!(ctx.indecomposable_extension(&bad).is_err());

        let rs = ctx.root_system().clone();
        let facet = Facet::new(&rs, [1, 2]).unwrap();
        let fctx = ShallowContext::with_defaults(&rs, rs.facet_barycenter(&facet), 2).unwrap();
        let indec: Vec<(AffineRoot, Elem)> = fctx
            .indecomposables()
            .into_iter()
            .map(|k| (fctx.shallow_roots()[k].clone(), Elem::ONE))
            .collect();
        assert!(indec.iter().any(|(r, _)| rs.affine_name(r) == "α0+α1"));
        assert!(fctx.is_valid(&fctx.indecomposable_extension(&indec).unwrap()));
    }

    #[test]
    fn scalar_action() {
        let ctx = c2(3);
        let simple: Vec<(AffineRoot, Elem)> = (0..3)
            .map(|i| (ctx.root_system().simple_affine_root(i), Elem::ONE))
            .collect();
        let chi = ctx.indecomposable_extension(&simple).unwrap();
        assert_eq!(ctx.scalar_act(Elem::ONE, &chi).unwrap(), chi);
        let doubled = ctx.scalar_act(Elem(2), &chi).unwrap();
        assert!(ctx.is_valid(&doubled));
        assert_eq!(&doubled.params[..3], &[Elem(2); 3]);
        assert_eq!(ctx.scalar_act(Elem::ZERO, &chi), Err(Error::ZeroScalar));
    }

    #[test]
    fn file_round_trip() {
        let ctx = c2(2);
        let chi = by_names(&ctx, &EXAMPLE);
        let file = ctx.to_file(&chi);
        let text = serde_json::to_string_pretty(&file).unwrap();
        let back: CharacterFile = serde_json::from_str(&text).unwrap();
        assert_eq!(ctx.from_file(&back).unwrap(), chi);
        assert!(text.contains("\"lambda\""));
        assert!(text.contains("\"gradient\""));
    }
}
