//! The finite group `P₊/P₁` as normal-form words `Π u_{α_i}(x_i)` over the
//! shallow roots, multiplied by commutator rewriting.
//!
//! Right multiplication by a generator `u_k(y)` moves it left past the tail
//! `Π_{i>k} u_i(x_i)`, replacing every `u_i(x_i)` by
//! `u_i(x_i) [u_i(x_i), u_k(y)]`. Commutator factors that are not shallow lie
//! in `P₁` and are dropped, as are commutators of parallel root groups. Every
//! surviving factor is strictly deeper than `α_i`, so it sits later in the
//! enumeration and the recursion terminates.

use std::sync::OnceLock;

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::characters::{ShallowCharacter, ShallowContext};
use crate::error::{Error, Result};
use crate::field::Elem;

/// Environment variable seeding the sampled homomorphism check.
pub const SEED_VAR: &str = "SHALLOW_CHARS_SEED";
pub const DEFAULT_SEED: u64 = 0x5eed_c0de;
/// Exhaustive pair checks are used up to this many pairs.
pub const PAIR_LIMIT: u64 = 1 << 22;
pub const DEFAULT_SAMPLES: usize = 200_000;

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct CosetWord(pub Vec<Elem>);

impl CosetWord {
    pub fn identity(n: usize) -> Self {
        CosetWord(vec![Elem::ZERO; n])
    }

    pub fn entries(&self) -> &[Elem] {
        &self.0
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().all(|e| e.is_zero())
    }
}

#[derive(Debug)]
pub struct GroupModel<'a> {
    ctx: &'a ShallowContext,
    table: OnceLock<Vec<u32>>,
}

impl<'a> GroupModel<'a> {
    pub fn new(ctx: &'a ShallowContext) -> Self {
        GroupModel {
            ctx,
            table: OnceLock::new(),
        }
    }

    pub fn context(&self) -> &ShallowContext {
        self.ctx
    }

    /// `q^n`, or `None` on overflow.
    pub fn order(&self) -> Option<u64> {
        (self.ctx.field().q() as u64).checked_pow(self.ctx.len() as u32)
    }

    pub fn identity(&self) -> CosetWord {
        CosetWord::identity(self.ctx.len())
    }

    pub fn generator(&self, k: usize, x: Elem) -> CosetWord {
        let mut w = self.identity();
        w.0[k] = x;
        w
    }

    fn check(&self, w: &CosetWord) -> Result<()> {
        if w.0.len() != self.ctx.len() {
            return Err(Error::Dimension {
                expected: self.ctx.len(),
                got: w.0.len(),
            });
        }
        Ok(())
    }

    /// Normal form of `w · u_k(y)`.
    pub fn mul_generator(&self, w: &CosetWord, k: usize, y: Elem) -> CosetWord {
        let mut out = w.clone();
        self.push(&mut out, k, y);
        out
    }

    fn push(&self, w: &mut CosetWord, k: usize, y: Elem) {
        if y.is_zero() {
            return;
        }
        let f = self.ctx.field();
        let tail: Vec<(usize, Elem)> = (k + 1..w.0.len())
            .filter(|&i| !w.0[i].is_zero())
            .map(|i| (i, w.0[i]))
            .collect();
        for &(i, _) in &tail {
            w.0[i] = Elem::ZERO;
        }
        w.0[k] = f.add(w.0[k], y);
        let dk = self.ctx.depth(k);
        for (i, xi) in tail {
            self.push(w, i, xi);
            let Some(terms) = self.ctx.expansion(i, k) else {
                continue;
            };
            let di = self.ctx.depth(i);
            for &(t, term) in terms {
                debug_assert!(self.ctx.depth(t) > di && self.ctx.depth(t) > dk);
                let v = f.mul(
                    f.from_int(term.constant),
                    f.mul(f.pow(xi, term.i as u64), f.pow(y, term.j as u64)),
                );
                self.push(w, t, v);
            }
        }
    }

    pub fn multiply(&self, a: &CosetWord, b: &CosetWord) -> Result<CosetWord> {
        self.check(a)?;
        self.check(b)?;
        let mut out = a.clone();
        for (k, &y) in b.0.iter().enumerate() {
            self.push(&mut out, k, y);
        }
        Ok(out)
    }

    pub fn inverse(&self, a: &CosetWord) -> Result<CosetWord> {
        self.check(a)?;
        let f = self.ctx.field();
        let mut out = self.identity();
        for k in (0..a.0.len()).rev() {
            self.push(&mut out, k, f.neg(a.0[k]));
        }
        Ok(out)
    }

    /// `χ(Π u_{α_i}(x_i)) = Π χ_{α_i}(x_i)`, as an exponent in `Z/p`.
    pub fn evaluate(&self, chi: &ShallowCharacter, w: &CosetWord) -> u8 {
        let f = self.ctx.field();
        let s: u64 = chi
            .params
            .iter()
            .zip(&w.0)
            .map(|(&c, &x)| f.char_eval(c, x) as u64)
            .sum();
        (s % f.p()) as u8
    }

    pub fn decode(&self, code: u64) -> CosetWord {
        CosetWord(self.ctx.decode(code).params)
    }

    pub fn encode(&self, w: &CosetWord) -> u64 {
        let q = self.ctx.field().q() as u64;
        w.0.iter().rev().fold(0, |acc, e| acc * q + e.0 as u64)
    }

    /// Full multiplication table by element codes; only for small groups.
    pub fn cayley_table(&self) -> Result<&[u32]> {
        let order = self
            .order()
            .filter(|&o| o.checked_mul(o).is_some_and(|s| s <= PAIR_LIMIT))
            .ok_or_else(|| Error::TooLarge(format!("group of order q^{} has too many pairs", self.ctx.len())))?;
        Ok(self.table.get_or_init(|| {
            let words: Vec<CosetWord> = (0..order).map(|c| self.decode(c)).collect();
            words
                .par_iter()
                .flat_map_iter(|a| {
                    words
                        .iter()
                        .map(move |b| self.encode(&self.multiply(a, b).expect("same length")) as u32)
                })
                .collect()
        }))
    }

    /// Checks `χ(w₁w₂) = χ(w₁)χ(w₂)`: over all pairs when the group is small,
    /// otherwise over all pairs (word, generator) — which already proves the
    /// homomorphism property — plus a seeded random sample of pairs.
    pub fn verify_homomorphism(&self, chi: &ShallowCharacter) -> Result<HomReport> {
        self.verify_homomorphism_with(chi, DEFAULT_SAMPLES, seed_from_env())
    }

    pub fn verify_homomorphism_with(&self, chi: &ShallowCharacter, samples: usize, seed: u64) -> Result<HomReport> {
        if chi.params.len() != self.ctx.len() {
            return Err(Error::CharacterDomain("wrong number of parameters".into()));
        }
        let p = self.ctx.field().p() as u8;
        let order = self.order();
        if let Some(order) = order.filter(|&o| o.checked_mul(o).is_some_and(|s| s <= PAIR_LIMIT)) {
            let table = self.cayley_table()?;
            let values: Vec<u8> = (0..order).map(|c| self.evaluate(chi, &self.decode(c))).collect();
            let o = order as usize;
            let witness = (0..o * o).into_par_iter().find_first(|&idx| {
                let (a, b) = (idx / o, idx % o);
                values[table[idx] as usize] != (values[a] + values[b]) % p
            });
            return Ok(HomReport {
                holds: witness.is_none(),
                mode: HomMode::ExhaustivePairs,
                checked: order * order,
                witness: witness.map(|idx| (self.decode((idx / o) as u64), self.decode((idx % o) as u64))),
                seed: None,
            });
        }
        // generator-based check when the group can be enumerated
        let gens: Vec<(usize, Elem)> = (0..self.ctx.len())
            .flat_map(|k| self.ctx.field().units().map(move |y| (k, y)))
            .collect();
        if let Some(order) = order.filter(|&o| o.saturating_mul(gens.len() as u64) <= PAIR_LIMIT * 16) {
            let witness = (0..order).into_par_iter().find_map_first(|c| {
                let w = self.decode(c);
                let vw = self.evaluate(chi, &w);
                gens.iter().find_map(|&(k, y)| {
                    let g = self.generator(k, y);
                    let lhs = self.evaluate(chi, &self.mul_generator(&w, k, y));
                    (lhs != (vw + self.evaluate(chi, &g)) % p).then(|| (w.clone(), g))
                })
            });
            return Ok(HomReport {
                holds: witness.is_none(),
                mode: HomMode::ExhaustiveGenerators,
                checked: order * gens.len() as u64,
                witness,
                seed: None,
            });
        }
        let mut rng = StdRng::seed_from_u64(seed);
        let q = self.ctx.field().q() as u8;
        let n = self.ctx.len();
        let pairs: Vec<(CosetWord, CosetWord)> = (0..samples)
            .map(|_| {
                let mut draw = || CosetWord((0..n).map(|_| Elem(rng.gen_range(0..q))).collect());
                (draw(), draw())
            })
            .collect();
        let witness = pairs.par_iter().find_first(|(a, b)| {
            let ab = self.multiply(a, b).expect("same length");
            self.evaluate(chi, &ab) != (self.evaluate(chi, a) + self.evaluate(chi, b)) % p
        });
        Ok(HomReport {
            holds: witness.is_none(),
            mode: HomMode::Sampled,
            checked: samples as u64,
            witness: witness.cloned(),
            seed: Some(seed),
        })
    }
}

pub fn seed_from_env() -> u64 {
    std::env::var(SEED_VAR)
        .ok()
        .and_then(|s| s.trim().parse().ok())
        .unwrap_or(DEFAULT_SEED)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum HomMode {
    ExhaustivePairs,
    ExhaustiveGenerators,
    Sampled,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomReport {
    pub holds: bool,
    pub mode: HomMode,
    pub checked: u64,
    pub witness: Option<(CosetWord, CosetWord)>,
    pub seed: Option<u64>,
}


#[cfg(test)]
mod props {
    use super::*;
    use crate::root_system::RootSystem;
    use proptest::prelude::*;
    use rand::Rng;

    const CASES: [(&str, u64); 4] = [("C2", 2), ("C2", 3), ("A2", 4), ("G2", 2)];

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn group_axioms(case in 0..CASES.len(), seeds in prop::array::uniform3(any::<u64>())) {
            let (name, q) = CASES[case];
            let rs = RootSystem::from_name(name).unwrap();
            let ctx = ShallowContext::with_defaults(&rs, rs.barycenter(), q).unwrap();
            let g = GroupModel::new(&ctx);
            let [a, b, c] = seeds.map(|s| {
                let mut rng = StdRng::seed_from_u64(s);
                CosetWord((0..ctx.len()).map(|_| Elem(rng.gen_range(0..q as u8))).collect())
            });
            let ab = g.multiply(&a, &b).unwrap();
            let bc = g.multiply(&b, &c).unwrap();
            prop_assert_eq!(g.multiply(&ab, &c).unwrap(), g.multiply(&a, &bc).unwrap());
            let inv = g.inverse(&a).unwrap();
            prop_assert!(g.multiply(&inv, &a).unwrap().is_identity());
            prop_assert_eq!(g.decode(g.encode(&a)), a);
        }
    }
}
