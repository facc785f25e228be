//! Reference data for `Sp_4` at the barycenter of its alcove, and a
//! walkthrough that recomputes every item and compares.
//!
//! Affine roots are written in Δ-coordinates `(n_0, n_1, n_2)`, meaning
//! `n_0 α_0 + n_1 α_1 + n_2 α_2`; a level shift `+k` adds `k(1, 2, 1)`.

use serde::Serialize;

use crate::affine::AffineRoot;
use crate::characters::{ShallowCharacter, ShallowContext};
use crate::chevalley::{CommutatorTerm, Pinning, PinningKind};
use crate::error::Result;
use crate::field::{Elem, Field};
use crate::rational::{format_q, q, Q};
use crate::root_system::RootSystem;
use crate::weyl::{condition_star, elements_up_to, intertwining_scan, support_space, ScanVerdict, DEFAULT_RADIUS};

/// One factor `u_target(C x^j y^i)` of `[u_Y(y), u_X(x)]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FormulaTerm {
    pub target: [i64; 3],
    /// Power of `y`, the parameter of the first root.
    pub i: u32,
    /// Power of `x`.
    pub j: u32,
    pub constant: i64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Formula {
    pub first: [i64; 3],
    pub second: [i64; 3],
    pub terms: &'static [FormulaTerm],
}

const fn t(target: [i64; 3], i: u32, j: u32, constant: i64) -> FormulaTerm {
    FormulaTerm { target, i, j, constant }
}

const A0: [i64; 3] = [1, 0, 0];
const A1: [i64; 3] = [0, 1, 0];
const A2: [i64; 3] = [0, 0, 1];
const A01: [i64; 3] = [1, 1, 0];
const A12: [i64; 3] = [0, 1, 1];
const A011: [i64; 3] = [1, 2, 0];
const A012: [i64; 3] = [1, 1, 1];
const A112: [i64; 3] = [0, 2, 1];

/// Reference values of the twelve commutators between positive roots of the
/// alcove under the symplectic pinning.
pub const COMMUTATORS: [Formula; 12] = [
    Formula {
        first: A1,
        second: A2,
        terms: &[t(A12, 1, 1, 1), t(A112, 2, 1, -1)],
    },
    Formula {
        first: A1,
        second: A0,
        terms: &[t(A01, 1, 1, -1), t(A011, 2, 1, -1)],
    },
    Formula {
        first: A1,
        second: A12,
        terms: &[t(A112, 1, 1, 2)],
    },
    Formula {
        first: A1,
        second: A01,
        terms: &[t(A011, 1, 1, -2)],
    },
    Formula {
        first: A2,
        second: A01,
        terms: &[t(A012, 1, 1, -1), t([2, 2, 1], 1, 2, -1)],
    },
    Formula {
        first: A0,
        second: A12,
        terms: &[t(A012, 1, 1, -1), t([1, 2, 2], 1, 2, -1)],
    },
    Formula {
        first: A12,
        second: A011,
        terms: &[t([1, 3, 1], 1, 1, 1), t([1, 4, 2], 2, 1, 1)],
    },
    Formula {
        first: A01,
        second: A112,
        terms: &[t([1, 3, 1], 1, 1, -1), t([2, 4, 1], 2, 1, 1)],
    },
    Formula {
        first: A12,
        second: A012,
        terms: &[t([1, 2, 2], 1, 1, -2)],
    },
    Formula {
        first: A01,
        second: A012,
        terms: &[t([2, 2, 1], 1, 1, 2)],
    },
    Formula {
        first: A112,
        second: A012,
        terms: &[t([1, 3, 2], 1, 1, -1), t([2, 4, 3], 1, 2, 1)],
    },
    Formula {
        first: A011,
        second: A012,
        terms: &[t([2, 3, 1], 1, 1, 1), t([3, 4, 2], 1, 2, 1)],
    },
];

/// Relations `1 = Π χ_target(x^j y^i)` imposed by pairs of shallow roots at
/// the barycenter; signs are not part of the reference form.
pub struct RelationFamily {
    pub first: [i64; 3],
    pub second: [i64; 3],
    pub factors: &'static [([i64; 3], u32, u32)],
}

pub const RELATIONS: [RelationFamily; 4] = [
    RelationFamily {
        first: A1,
        second: A2,
        factors: &[(A12, 1, 1), (A112, 2, 1)],
    },
    RelationFamily {
        first: A1,
        second: A0,
        factors: &[(A01, 1, 1), (A011, 2, 1)],
    },
    RelationFamily {
        first: A2,
        second: A01,
        factors: &[(A012, 1, 1)],
    },
    RelationFamily {
        first: A0,
        second: A12,
        factors: &[(A012, 1, 1)],
    },
];

/// `χ_α(1)` of the example character over `F_2`.
pub const EXAMPLE: [([i64; 3], i8); 8] = [
    (A0, -1),
    (A1, 1),
    (A2, 1),
    (A01, -1),
    (A12, -1),
    (A011, -1),
    (A012, 1),
    (A112, -1),
];

/// The matrix lifting `s_1`.
pub const N1: [[i64; 4]; 4] = [[0, 1, 0, 0], [-1, 0, 0, 0], [0, 0, 0, -1], [0, 0, 1, 0]];

pub const EXAMPLE_DEPTH: (i64, i64) = (3, 4);

pub fn c2() -> RootSystem {
    RootSystem::from_name("C2").expect("C2 is a valid type")
}

/// Name with the level written as a shift of a root of the first layer,
/// e.g. `α0+1` rather than `2α0+2α1+α2`.
pub fn layered_name(rs: &RootSystem, a: &AffineRoot) -> String {
    let base = if a.gradient.is_positive() { 0 } else { 1 };
    let k = a.level - base;
    let name = rs.affine_name(&a.shift(-k));
    match k {
        0 => name,
        k if k > 0 => format!("{name}+{k}"),
        k => format!("{name}{k}"),
    }
}

fn power(var: &str, e: u32) -> String {
    match e {
        0 => String::new(),
        1 => var.to_string(),
        2 => format!("{var}²"),
        3 => format!("{var}³"),
        e => format!("{var}^{e}"),
    }
}

fn render_terms(rs: &RootSystem, terms: &[(AffineRoot, CommutatorTerm)]) -> String {
    if terms.is_empty() {
        return "1".into();
    }
    terms
        .iter()
        .map(|(r, tm)| {
            let sign = if tm.constant < 0 { '−' } else { '+' };
            let mag = tm.constant.unsigned_abs();
            let coeff = if mag == 1 { String::new() } else { mag.to_string() };
            format!(
                "u[{}]({sign}{coeff}{}{})",
                layered_name(rs, r),
                power("x", tm.j),
                power("y", tm.i)
            )
        })
        .collect::<Vec<_>>()
        .join(" ")
}

fn formula_terms(rs: &RootSystem, f: &Formula) -> Vec<(AffineRoot, CommutatorTerm)> {
    f.terms
        .iter()
        .map(|ft| {
            (
                rs.affine_from_delta(&ft.target),
                CommutatorTerm {
                    i: ft.i,
                    j: ft.j,
                    constant: ft.constant,
                },
            )
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Check {
    pub item: String,
    pub pass: bool,
    /// Checks that only describe a user-supplied character do not count.
    pub informational: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FormulaComparison {
    pub lhs: String,
    pub expected: String,
    pub computed: String,
    pub matches: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct Sp4Report {
    pub q: u64,
    pub pinning: String,
    pub pinning_hash: String,
    pub commutators: Vec<FormulaComparison>,
    pub character: Vec<(String, String, u8)>,
    pub checks: Vec<Check>,
    pub all_pass: bool,
}

impl Sp4Report {
    pub fn divergent(&self) -> Vec<&Check> {
        self.checks.iter().filter(|c| !c.pass && !c.informational).collect()
    }
}

/// The example character: `c_α = 1` exactly where `χ_α(1) = −1`.
pub fn example_character(ctx: &ShallowContext) -> ShallowCharacter {
    let rs = ctx.root_system();
    let mut params = vec![Elem::ZERO; ctx.len()];
    for (d, v) in EXAMPLE {
        if v == -1 {
            let k = ctx
                .index_of(&rs.affine_from_delta(&d))
                .expect("example roots are shallow at the barycenter");
            params[k] = Elem::ONE;
        }
    }
    ShallowCharacter { params }
}

/// Recomputes the walkthrough over `F_q`, for the example character or a
/// supplied one (whose checks are then informational only).
pub fn reproduce(q_size: u64, custom: Option<ShallowCharacter>) -> Result<Sp4Report> {
    let rs = c2();
    let lambda = rs.barycenter();
    let pinning = std::sync::Arc::new(Pinning::new(&rs, PinningKind::Sp4)?);
    let ctx = ShallowContext::new(&rs, lambda.clone(), Field::new(q_size)?, pinning.clone())?;
    let mut checks = Vec::new();
    let mut push = |item: String, pass: bool, informational: bool, detail: String| {
        checks.push(Check {
            item,
            pass,
            informational,
            detail,
        })
    };

    let mut commutators = Vec::new();
    for (n, f) in COMMUTATORS.iter().enumerate() {
        let y = rs.affine_from_delta(&f.first);
        let x = rs.affine_from_delta(&f.second);
        let lhs = format!("[u[{}](y), u[{}](x)]", layered_name(&rs, &y), layered_name(&rs, &x));
        let computed = pinning.commutator_expansion(&y, &x)?;
        let expected = formula_terms(&rs, f);
        let matches = computed == expected;
        let cmp = FormulaComparison {
            lhs: lhs.clone(),
            expected: render_terms(&rs, &expected),
            computed: render_terms(&rs, &computed),
            matches,
        };
        push(
            format!("commutator {}", n + 1),
            matches,
            false,
            format!("{lhs}: expected {}, computed {}", cmp.expected, cmp.computed),
        );
        commutators.push(cmp);
    }

    let mut family_pairs = Vec::new();
    for (n, fam) in RELATIONS.iter().enumerate() {
        let y = rs.affine_from_delta(&fam.first);
        let x = rs.affine_from_delta(&fam.second);
        let shallow = pinning.shallow_commutator_expansion(&y, &x, &lambda)?;
        let got: Vec<(AffineRoot, u32, u32)> = shallow.iter().map(|(r, tm)| (r.clone(), tm.i, tm.j)).collect();
        let want: Vec<(AffineRoot, u32, u32)> = fam
            .factors
            .iter()
            .map(|&(d, i, j)| (rs.affine_from_delta(&d), i, j))
            .collect();
        let names: Vec<String> = got
            .iter()
            .map(|(r, i, j)| format!("χ[{}]({}{})", rs.affine_name(r), power("x", *j), power("y", *i)))
            .collect();
        push(
            format!("relation family {}", n + 1),
            got == want,
            false,
            format!("1 = {}", names.join("·")),
        );
        let (a, b) = (ctx.index_of(&y), ctx.index_of(&x));
        if let (Some(a), Some(b)) = (a, b) {
            family_pairs.push((a.min(b), a.max(b)));
        }
    }
    family_pairs.sort_unstable();
    // pairs whose only shallow factors carry ±2 impose nothing in
    // residue characteristic 2 and are not part of the reference list
    let (mut odd, even): (Vec<_>, Vec<_>) = ctx.relation_pairs().into_iter().partition(|&(a, b)| {
        ctx.expansion(a, b)
            .unwrap_or(&[])
            .iter()
            .any(|(_, tm)| tm.constant % 2 != 0)
    });
    odd.sort_unstable();
    let even: Vec<String> = even
        .iter()
        .map(|&(a, b)| format!("({}, {})", ctx.name(a), ctx.name(b)))
        .collect();
    push(
        "relation pairs".into(),
        odd == family_pairs,
        false,
        format!(
            "{} pairs with an odd constant; pairs with only even constants: {}",
            odd.len(),
            even.join(", ")
        ),
    );

    let lift = &pinning.simple_lift(1).0;
    let n1_ok = lift.rows() == N1.iter().map(|r| r.to_vec()).collect::<Vec<_>>();
    push("lift of s1".into(), n1_ok, false, format!("{:?}", lift.rows()));

    let info = custom.is_some();
    let chi = custom.unwrap_or_else(|| example_character(&ctx));
    let character: Vec<(String, String, u8)> = (0..ctx.len())
        .map(|k| (ctx.name(k), format_q(&ctx.depth(k)), chi.params[k].0))
        .collect();

    let valid = ctx.validate(&chi)?;
    push(
        "character is valid".into(),
        valid.valid,
        info,
        if valid.valid {
            "all commutator relations hold".into()
        } else {
            let v: Vec<String> = valid
                .violated
                .iter()
                .map(|&(a, b)| format!("({}, {})", ctx.name(a), ctx.name(b)))
                .collect();
            format!("violated by {}", v.join(", "))
        },
    );
    let depth = ctx.char_depth(&chi);
    let want_depth: Q = q(EXAMPLE_DEPTH.0, EXAMPLE_DEPTH.1);
    push("depth".into(), depth == want_depth, info, format_q(&depth));

    if valid.valid && !ctx.support(&chi).is_empty() {
        let star = condition_star(&ctx, &chi, DEFAULT_RADIUS as i64)?;
        let witness = star.witness().cloned();
        push(
            "condition (*) fails at n1".into(),
            witness.as_ref().is_some_and(|w| w.word() == [1]),
            info,
            match &witness {
                Some(w) => format!("witness {w}"),
                None => format!("{:?}", star.verdict),
            },
        );
        if let Some(w) = witness {
            // V_{wλ,s} for all s > r is spanned by the roots with α(wλ) > r
            let mu = w.act_on_point(&lambda);
            let above: Vec<String> = support_space(&rs, &lambda, &mu, depth)?
                .roots
                .iter()
                .filter(|a| a.depth(&mu) > depth)
                .map(|a| rs.affine_name(a))
                .collect();
            push(
                "support above the depth at n1λ".into(),
                above.iter().all(|n| n == "α0+α1+α2"),
                info,
                format!("{{{}}}", above.join(", ")),
            );
        }

        let short_minus: Vec<String> = (0..ctx.len())
            .filter(|&k| rs.is_short(&ctx.shallow_roots()[k].gradient) && !chi.params[k].is_zero())
            .map(|k| ctx.name(k))
            .collect();
        push(
            "short roots with nontrivial character".into(),
            short_minus == ["α0+α1", "α1+α2"],
            info,
            short_minus.join(", "),
        );

        let s01 = rs.affine_from_delta(&A01);
        let s12 = rs.affine_from_delta(&A12);
        let elems = elements_up_to(&rs, DEFAULT_RADIUS)?;
        let positive_one = elems
            .iter()
            .all(|w| rs.is_positive_affine(&w.act_on_root(&s01)) || rs.is_positive_affine(&w.act_on_root(&s12)));
        push(
            "one of n(α0+α1), n(α1+α2) is positive".into(),
            positive_one,
            false,
            format!("{} elements of length <= {}", elems.len(), DEFAULT_RADIUS),
        );

        let scan = intertwining_scan(&ctx, &chi, DEFAULT_RADIUS)?;
        let collapses = scan.verdict == ScanVerdict::CollapsesToPChi;
        push(
            "intertwining collapses".into(),
            collapses,
            info,
            match &scan.verdict {
                ScanVerdict::Counterexample { witness } => format!("compatible element {witness}"),
                v => format!(
                    "{v:?}; {} scanned, {} in the bounded region (length <= {})",
                    scan.scanned,
                    scan.bounded_candidates,
                    scan.bound_length.unwrap_or(0)
                ),
            },
        );
        push(
            "stabilizer shadow trivial".into(),
            scan.stabilizer.len() == 1,
            info,
            format!("{} element(s)", scan.stabilizer.len()),
        );
    } else if !info {
        push(
            "condition (*) and intertwining".into(),
            false,
            false,
            "skipped: the character is not valid".into(),
        );
    }

    let all_pass = checks.iter().all(|c| c.pass || c.informational);
    Ok(Sp4Report {
        q: q_size,
        pinning: pinning.kind().name().into(),
        pinning_hash: pinning.hash(),
        commutators,
        character,
        checks,
        all_pass,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn layered_names() {
        let rs = c2();
        assert_eq!(layered_name(&rs, &rs.affine_from_delta(&[2, 2, 1])), "α0+1");
        assert_eq!(layered_name(&rs, &rs.affine_from_delta(&[2, 4, 3])), "α2+2");
        assert_eq!(layered_name(&rs, &rs.affine_from_delta(&[2, 3, 1])), "α0+α1+1");
        assert_eq!(layered_name(&rs, &rs.affine_from_delta(&A012)), "α0+α1+α2");
    }

    #[test]
    fn fixture_targets_are_consistent() {
        // every target is i·first + j·second
        for f in &COMMUTATORS {
            for ft in f.terms {
                for c in 0..3 {
                    assert_eq!(ft.target[c], ft.i as i64 * f.first[c] + ft.j as i64 * f.second[c]);
                }
            }
        }
    }

    #[test]
    fn walkthrough_isolates_one_divergence() {
        let rep = reproduce(2, None).unwrap();
        let bad: Vec<&str> = rep.divergent().iter().map(|c| c.item.as_str()).collect();
        assert_eq!(bad, ["commutator 5"]);
        assert!(!rep.all_pass);
    }

    #[test]
    fn q3_rejects_the_example() {
        let rep = reproduce(3, None).unwrap();
        let valid = rep.checks.iter().find(|c| c.item == "character is valid").unwrap();
        assert!(!valid.pass);
    }
}
