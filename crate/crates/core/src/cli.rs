//! Command-line front end. `run` parses arguments, dispatches to the
//! library and returns the process exit code:
//! 0 success / holds, 1 fails / counterexample, 2 inconclusive, 64 bad usage.

use std::io::Write;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::json;

use crate::affine::{ApartmentPoint, Facet};
use crate::characters::{CharacterFile, ShallowCharacter, ShallowContext};
use crate::chevalley::{Pinning, PinningKind};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::group::{GroupModel, HomMode};
use crate::rational::format_q;
use crate::root_system::RootSystem;
use crate::sp4;
use crate::weyl::{self, ScanVerdict, StarVerdict};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_INCONCLUSIVE: i32 = 2;
pub const EXIT_USAGE: i32 = 64;

#[derive(Debug, Parser)]
#[command(
    name = "shallow-chars",
    version,
    about = "Shallow characters of parahoric subgroups of split p-adic groups"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Shallow affine roots at λ with depth, n_J and indecomposability.
    Shallow(Common),
    /// Relations between shallow roots, or validity and depth of a character.
    Classify(Common),
    /// The space of shallow characters over F_q.
    Solve(Common),
    /// Checks that a character is a homomorphism on the coset group.
    VerifyHom(Common),
    /// Condition (*) for a character.
    CheckStar(Common),
    /// Intertwining scan over the affine Weyl group.
    Intertwine(Common),
    /// Recomputes the Sp4 walkthrough and compares with the reference data.
    ReproduceSp4(Common),
    /// Structure constants of the pinning.
    Constants(Common),
    /// Cartan matrix, roots and marks.
    RootSystem(Common),
}

#[derive(Debug, Args, Clone, Default)]
pub struct Common {
    /// Cartan type, e.g. `C2`, or a letter together with --rank.
    #[arg(long = "type")]
    pub cartan_type: Option<String>,
    #[arg(long)]
    pub rank: Option<usize>,
    /// Point as `x1,...,xl` with `x_i = a_i(λ)` rational, or `barycenter`.
    #[arg(long, allow_hyphen_values = true)]
    pub point: Option<String>,
    /// Facet as a list of simple affine root indices; λ is its barycenter.
    #[arg(long)]
    pub facet: Option<String>,
    #[arg(long)]
    pub q: Option<u64>,
    /// Word-length radius for scans, translation radius for unbounded searches.
    #[arg(long, default_value_t = weyl::DEFAULT_RADIUS)]
    pub radius: usize,
    #[arg(long)]
    pub json: bool,
    #[arg(long)]
    pub threads: Option<usize>,
    /// `sp4`, `elementary` or `chevalley`.
    #[arg(long)]
    pub pinning: Option<String>,
    /// Character file (JSON).
    #[arg(long)]
    pub character: Option<String>,
}

struct Job {
    ctx: ShallowContext,
    chi: Option<ShallowCharacter>,
    common: Common,
}

fn usage(msg: impl Into<String>) -> Error {
    Error::Precondition(msg.into())
}

fn root_system(common: &Common, file: Option<&CharacterFile>) -> Result<RootSystem> {
    let name = match (&common.cartan_type, common.rank) {
        (Some(t), Some(r)) => {
            if t.len() != 1 {
                return Err(usage("--rank is only used with a one-letter --type"));
            }
            format!("{t}{r}")
        }
        (Some(t), None) => t.clone(),
        (None, _) => file
            .and_then(|f| f.root_system.clone())
            .ok_or_else(|| usage("--type is required"))?,
    };
    let rs = RootSystem::from_name(&name)?;
    if let Some(f) = file.and_then(|f| f.root_system.as_ref()) {
        if RootSystem::from_name(f)?.name() != rs.name() {
            return Err(usage(format!("character file is for {f}, not {}", rs.name())));
        }
    }
    Ok(rs)
}

fn point(rs: &RootSystem, common: &Common, file: Option<&CharacterFile>) -> Result<ApartmentPoint> {
    let given = match (&common.point, &common.facet) {
        (Some(_), Some(_)) => return Err(usage("--point and --facet are exclusive")),
        (Some(p), None) if p == "barycenter" => Some(rs.barycenter()),
        (Some(p), None) => Some(ApartmentPoint::parse(p)?),
        (None, Some(f)) => Some(rs.facet_barycenter(&Facet::parse(rs, f)?)),
        (None, None) => None,
    };
    match (given, file) {
        (Some(p), Some(f)) if p != f.lambda => Err(usage("the character file is for a different point")),
        (Some(p), _) => Ok(p),
        (None, Some(f)) => Ok(f.lambda.clone()),
        (None, None) => Ok(rs.barycenter()),
    }
}

fn load_file(path: &str) -> Result<CharacterFile> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{path}: {e}")))?;
    serde_json::from_str(&text).map_err(|e| Error::Parse(format!("{path}: {e}")))
}

fn build_job(common: &Common, default_q: Option<u64>) -> Result<Job> {
    let file = common.character.as_deref().map(load_file).transpose()?;
    let rs = root_system(common, file.as_ref())?;
    let lambda = point(&rs, common, file.as_ref())?;
    let q = match (common.q, &file) {
        (Some(q), Some(f)) if q != f.q => return Err(usage("--q differs from the character file")),
        (Some(q), _) => q,
        (None, Some(f)) => f.q,
        (None, None) => default_q.ok_or_else(|| usage("--q is required"))?,
    };
    let kind = match (&common.pinning, file.as_ref().and_then(|f| f.pinning.as_ref())) {
        (Some(p), _) | (None, Some(p)) => p.parse()?,
        (None, None) => PinningKind::default_for(&rs),
    };
    let pinning = Arc::new(Pinning::new(&rs, kind)?);
    let ctx = ShallowContext::new(&rs, lambda, Field::new(q)?, pinning)?;
    let chi = file.as_ref().map(|f| ctx.from_file(f)).transpose()?;
    Ok(Job {
        ctx,
        chi,
        common: common.clone(),
    })
}

fn need_character(job: &Job) -> Result<&ShallowCharacter> {
    job.chi.as_ref().ok_or_else(|| usage("--character is required"))
}

fn write_error(e: std::io::Error) -> Error {
    if e.kind() == std::io::ErrorKind::BrokenPipe {
        Error::OutputClosed
    } else {
        Error::Io(e.to_string())
    }
}

fn emit<T: Serialize>(out: &mut dyn Write, value: &T) -> Result<()> {
    let s = serde_json::to_string_pretty(value).map_err(|e| Error::Io(e.to_string()))?;
    writeln!(out, "{s}").map_err(write_error)
}

fn line(out: &mut dyn Write, s: impl AsRef<str>) -> Result<()> {
    writeln!(out, "{}", s.as_ref()).map_err(write_error)
}

/// Parses `args` (program name first) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => EXIT_OK,
                _ => EXIT_USAGE,
            };
            let _ = if code == EXIT_OK {
                write!(out, "{}", e.render())
            } else {
                write!(err, "{}", e.render())
            };
            return code;
        }
    };
    match dispatch(&cli.command, out) {
        Ok(code) => code,
        // a reader such as `head` stopped early
        Err(Error::OutputClosed) => EXIT_OK,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            match e {
                Error::TooLarge(_) => EXIT_INCONCLUSIVE,
                _ => EXIT_USAGE,
            }
        }
    }
}

fn common(cmd: &Command) -> &Common {
    match cmd {
        Command::Shallow(c)
        | Command::Classify(c)
        | Command::Solve(c)
        | Command::VerifyHom(c)
        | Command::CheckStar(c)
        | Command::Intertwine(c)
        | Command::ReproduceSp4(c)
        | Command::Constants(c)
        | Command::RootSystem(c) => c,
    }
}

fn dispatch(cmd: &Command, out: &mut dyn Write) -> Result<i32> {
    let c = common(cmd);
    if let Some(n) = c.threads {
        // a second call in the same process keeps the first pool
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
    match cmd {
        Command::Shallow(c) => cmd_shallow(&build_job(c, Some(2))?, out),
        Command::Classify(c) => cmd_classify(&build_job(c, Some(2))?, out),
        Command::Solve(c) => cmd_solve(&build_job(c, None)?, out),
        Command::VerifyHom(c) => cmd_verify_hom(&build_job(c, None)?, out),
        Command::CheckStar(c) => cmd_check_star(&build_job(c, None)?, out),
        Command::Intertwine(c) => cmd_intertwine(&build_job(c, None)?, out),
        Command::ReproduceSp4(c) => cmd_reproduce_sp4(c, out),
        Command::Constants(c) => cmd_constants(c, out),
        Command::RootSystem(c) => cmd_root_system(c, out),
    }
}

#[derive(Serialize)]
struct ShallowRow {
    root: String,
    gradient: Vec<i64>,
    level: i64,
    depth: String,
    n_j: i64,
    indecomposable: bool,
}

fn cmd_shallow(job: &Job, out: &mut dyn Write) -> Result<i32> {
    let ctx = &job.ctx;
    let rs = ctx.root_system();
    let rows: Vec<ShallowRow> = (0..ctx.len())
        .map(|k| {
            let a = &ctx.shallow_roots()[k];
            ShallowRow {
                root: ctx.name(k),
                gradient: a.gradient.0.clone(),
                level: a.level,
                depth: format_q(&ctx.depth(k)),
                n_j: rs.n_j(a, ctx.facet()),
                indecomposable: ctx.is_indecomposable(k),
            }
        })
        .collect();
    if job.common.json {
        emit(
            out,
            &json!({ "type": rs.name(), "lambda": ctx.point(), "facet": ctx.facet(), "roots": rows }),
        )?;
    } else {
        line(
            out,
            format!("{} at λ = {}, facet {}", rs.name(), ctx.point(), ctx.facet()),
        )?;
        line(
            out,
            format!("{:<20} {:>6} {:>4}  indecomposable", "root", "depth", "n_J"),
        )?;
        for r in &rows {
            line(
                out,
                format!("{:<20} {:>6} {:>4}  {}", r.root, r.depth, r.n_j, r.indecomposable),
            )?;
        }
        line(out, format!("{} shallow roots", rows.len()))?;
    }
    Ok(EXIT_OK)
}

fn cmd_classify(job: &Job, out: &mut dyn Write) -> Result<i32> {
    let ctx = &job.ctx;
    let Some(chi) = &job.chi else {
        let relations: Vec<String> = ctx
            .relation_pairs()
            .into_iter()
            .map(|(a, b)| {
                let terms: Vec<String> = ctx
                    .expansion(a, b)
                    .unwrap_or(&[])
                    .iter()
                    .map(|(t, tm)| format!("{}({}·s^{}t^{})", ctx.name(*t), tm.constant, tm.i, tm.j))
                    .collect();
                format!("[{}, {}] -> {}", ctx.name(a), ctx.name(b), terms.join(" "))
            })
            .collect();
        let indec: Vec<String> = ctx.indecomposables().into_iter().map(|k| ctx.name(k)).collect();
        if job.common.json {
            emit(out, &json!({ "indecomposable": indec, "relations": relations }))?;
        } else {
            line(out, format!("indecomposable: {}", indec.join(", ")))?;
            for r in &relations {
                line(out, r)?;
            }
        }
        return Ok(EXIT_OK);
    };
    let v = ctx.validate(chi)?;
    let depth = ctx.char_depth(chi);
    let support: Vec<String> = ctx.support(chi).into_iter().map(|k| ctx.name(k)).collect();
    let violated: Vec<String> = v
        .violated
        .iter()
        .map(|&(a, b)| format!("({}, {})", ctx.name(a), ctx.name(b)))
        .collect();
    let epipelagic = !support.is_empty() && ctx.depths().first() == Some(&depth);
    if job.common.json {
        emit(
            out,
            &json!({ "valid": v.valid, "violated": violated, "depth": format_q(&depth), "support": support, "epipelagic": epipelagic }),
        )?;
    } else {
        line(out, format!("valid: {}", v.valid))?;
        if !v.valid {
            line(out, format!("violated: {}", violated.join(", ")))?;
        }
        line(out, format!("depth: {}", format_q(&depth)))?;
        line(out, format!("support: {}", support.join(", ")))?;
        line(out, format!("epipelagic: {epipelagic}"))?;
    }
    Ok(if v.valid { EXIT_OK } else { EXIT_FAIL })
}

fn cmd_solve(job: &Job, out: &mut dyn Write) -> Result<i32> {
    let ctx = &job.ctx;
    let space = ctx.solve_space();
    let rep = space.report(ctx);
    if job.common.json {
        emit(out, &rep)?;
    } else {
        line(
            out,
            format!(
                "{} at λ = {}, q = {} ({})",
                rep.root_system, rep.lambda, rep.q, rep.modulus
            ),
        )?;
        line(out, format!("pinning {} {}", rep.pinning, rep.pinning_hash))?;
        line(out, format!("dimension over F_p: {}", rep.dim_fp))?;
        match rep.dim_fq {
            Some(d) => line(out, format!("dimension over F_q: {d}"))?,
            None => line(out, "not a subspace over F_q")?,
        }
        for s in &rep.filtration {
            line(out, format!("  depth <= {}: {}", format_q(&s.depth), s.dim_fp))?;
        }
        line(out, format!("epipelagic roots: {}", rep.epipelagic_roots))?;
        for f in &rep.forced_relations {
            line(out, format!("forced: {f}"))?;
        }
        match &rep.exhaustive {
            Some(e) => line(
                out,
                format!(
                    "exhaustive: {} maps, {} characters, agrees: {}",
                    e.maps, e.valid, e.agrees
                ),
            )?,
            None => line(out, "exhaustive check skipped (too many maps)")?,
        }
    }
    Ok(match &rep.exhaustive {
        Some(e) if !e.agrees => EXIT_FAIL,
        _ => EXIT_OK,
    })
}

fn cmd_verify_hom(job: &Job, out: &mut dyn Write) -> Result<i32> {
    let chi = need_character(job)?;
    let model = GroupModel::new(&job.ctx);
    let rep = model.verify_homomorphism(chi)?;
    let valid = job.ctx.is_valid(chi);
    if job.common.json {
        emit(out, &json!({ "homomorphism": rep, "validate": valid }))?;
    } else {
        line(
            out,
            format!("homomorphism: {} ({:?}, {} checks)", rep.holds, rep.mode, rep.checked),
        )?;
        if let Some(seed) = rep.seed {
            line(out, format!("seed: {seed:#x}"))?;
        }
        line(out, format!("relations hold: {valid}"))?;
    }
    Ok(match (rep.holds, rep.mode) {
        (false, _) => EXIT_FAIL,
        (true, HomMode::Sampled) => EXIT_INCONCLUSIVE,
        (true, _) => EXIT_OK,
    })
}

fn cmd_check_star(job: &Job, out: &mut dyn Write) -> Result<i32> {
    let ctx = &job.ctx;
    let chi = need_character(job)?;
    let radius = job.common.radius as i64;
    let rep = weyl::condition_star(ctx, chi, radius)?;
    let rs = ctx.root_system();
    let barycentric =
        *ctx.point() == rs.barycenter() && ctx.char_depth(chi) == crate::rational::q(1, rs.coxeter_number());
    let bary = if barycentric {
        Some(weyl::barycenter_criterion(ctx, chi)?)
    } else {
        None
    };
    let (verdict, witness) = match &rep.verdict {
        StarVerdict::Holds => ("holds", None),
        StarVerdict::Fails { witness, .. } => ("fails", Some(witness)),
        StarVerdict::Inconclusive { .. } => ("inconclusive", None),
    };
    if job.common.json {
        emit(
            out,
            &json!({
                "condition_star": verdict,
                "witness": witness.map(|w| w.word().to_vec()),
                "witness_name": witness.map(|w| w.to_string()),
                "radius": radius,
                "depth": format_q(&rep.depth),
                "bounded": rep.bounded,
                "orbit_points": rep.orbit_points,
                "barycenter_criterion": bary,
            }),
        )?;
    } else {
        line(out, format!("condition (*): {verdict}"))?;
        if let StarVerdict::Fails { witness, point } = &rep.verdict {
            line(out, format!("witness: {witness}, moving λ to {point}"))?;
        }
        line(
            out,
            format!(
                "depth {}; region {}; {} orbit points",
                format_q(&rep.depth),
                if rep.bounded { "bounded" } else { "unbounded" },
                rep.orbit_points
            ),
        )?;
        if let Some(b) = &bary {
            line(
                out,
                format!(
                    "all simple parameters nontrivial: {} (agrees: {})",
                    b.all_nontrivial, b.agrees
                ),
            )?;
        }
    }
    Ok(match rep.verdict {
        StarVerdict::Holds => EXIT_OK,
        StarVerdict::Fails { .. } => EXIT_FAIL,
        StarVerdict::Inconclusive { .. } => EXIT_INCONCLUSIVE,
    })
}

fn cmd_intertwine(job: &Job, out: &mut dyn Write) -> Result<i32> {
    let ctx = &job.ctx;
    let chi = need_character(job)?;
    let rep = weyl::intertwining_scan(ctx, chi, job.common.radius)?;
    let (verdict, witness) = match &rep.verdict {
        ScanVerdict::CollapsesToPChi => ("collapses_to_P_chi", None),
        ScanVerdict::Counterexample { witness } => ("counterexample", Some(witness)),
        ScanVerdict::Inconclusive => ("inconclusive", None),
    };
    let shadow: Vec<String> = rep.stabilizer.iter().map(|w| w.to_string()).collect();
    if job.common.json {
        emit(
            out,
            &json!({
                "intertwining": verdict,
                "witness": witness.map(|w| w.word().to_vec()),
                "witness_name": witness.map(|w| w.to_string()),
                "radius": rep.radius,
                "scanned": rep.scanned,
                "exact": rep.exact,
                "bounded_candidates": rep.bounded_candidates,
                "bound_length": rep.bound_length,
                "stabilizer": shadow,
            }),
        )?;
    } else {
        line(out, format!("intertwining: {verdict}"))?;
        if let Some(w) = witness {
            line(out, format!("compatible element moving λ: {w}"))?;
        }
        line(
            out,
            format!("scanned {} elements of length <= {}", rep.scanned, rep.radius),
        )?;
        if rep.exact {
            line(
                out,
                format!(
                    "bounded region: {} elements, longest {}",
                    rep.bounded_candidates,
                    rep.bound_length.unwrap_or(0)
                ),
            )?;
        }
        line(out, format!("stabilizer shadow: {}", shadow.join(", ")))?;
    }
    Ok(match rep.verdict {
        ScanVerdict::CollapsesToPChi => EXIT_OK,
        ScanVerdict::Counterexample { .. } => EXIT_FAIL,
        ScanVerdict::Inconclusive => EXIT_INCONCLUSIVE,
    })
}

fn cmd_reproduce_sp4(c: &Common, out: &mut dyn Write) -> Result<i32> {
    let q = c.q.unwrap_or(2);
    let custom = match &c.character {
        Some(path) => {
            let file = load_file(path)?;
            if file.q != q {
                return Err(usage("--q differs from the character file"));
            }
            let rs = sp4::c2();
            let ctx = ShallowContext::new(
                &rs,
                rs.barycenter(),
                Field::new(q)?,
                Arc::new(Pinning::new(&rs, PinningKind::Sp4)?),
            )?;
            if file.lambda != rs.barycenter() {
                return Err(usage("the walkthrough is at the barycenter"));
            }
            Some(ctx.from_file(&file)?)
        }
        None => None,
    };
    let rep = sp4::reproduce(q, custom)?;
    if c.json {
        emit(out, &rep)?;
    } else {
        line(
            out,
            format!("Sp4, q = {}, pinning {} {}", rep.q, rep.pinning, rep.pinning_hash),
        )?;
        for f in &rep.commutators {
            let mark = if f.matches { "ok  " } else { "DIFF" };
            line(out, format!("{mark} {} = {}", f.lhs, f.computed))?;
            if !f.matches {
                line(out, format!("     expected {}", f.expected))?;
            }
        }
        line(out, "character:")?;
        for (name, depth, c) in &rep.character {
            line(out, format!("  {name:<12} {depth:>4}  c = {c}"))?;
        }
        for chk in &rep.checks {
            let mark = match (chk.pass, chk.informational) {
                (true, _) => "ok  ",
                (false, true) => "info",
                (false, false) => "DIFF",
            };
            line(out, format!("{mark} {}: {}", chk.item, chk.detail))?;
        }
        let bad: Vec<&str> = rep.divergent().iter().map(|c| c.item.as_str()).collect();
        if bad.is_empty() {
            line(out, "all items match")?;
        } else {
            line(out, format!("divergent: {}", bad.join(", ")))?;
        }
    }
    Ok(if rep.all_pass { EXIT_OK } else { EXIT_FAIL })
}

fn cmd_constants(c: &Common, out: &mut dyn Write) -> Result<i32> {
    let rs = root_system(c, None)?;
    let kind = match &c.pinning {
        Some(p) => p.parse()?,
        None => PinningKind::default_for(&rs),
    };
    let pinning = Pinning::new(&rs, kind)?;
    let table = pinning.constants_table()?;
    if c.json {
        emit(
            out,
            &json!({ "type": rs.name(), "pinning": kind.name(), "hash": pinning.hash(), "constants": table }),
        )?;
    } else {
        line(out, format!("{} pinning {} {}", rs.name(), kind.name(), pinning.hash()))?;
        for e in &table {
            let terms: Vec<String> = e
                .terms
                .iter()
                .map(|t| format!("{:?}: C{}{} = {}", t.root.0, t.i, t.j, t.constant))
                .collect();
            line(out, format!("{:?} {:?}  {}", e.alpha.0, e.beta.0, terms.join("; ")))?;
        }
    }
    Ok(EXIT_OK)
}

fn cmd_root_system(c: &Common, out: &mut dyn Write) -> Result<i32> {
    let rs = root_system(c, None)?;
    let export = rs.to_export();
    if c.json {
        emit(out, &export)?;
    } else {
        line(
            out,
            format!(
                "{}: {} roots, Coxeter number {}",
                rs.name(),
                rs.roots().len(),
                rs.coxeter_number()
            ),
        )?;
        line(out, format!("Cartan matrix {:?}", rs.cartan()))?;
        line(
            out,
            format!("highest root {:?}, marks {:?}", rs.highest_root().0, rs.marks()),
        )?;
        for r in rs.positive_roots() {
            let kind = if rs.is_long(r) { "long" } else { "short" };
            line(out, format!("  {:?} {kind}", r.0))?;
        }
    }
    Ok(EXIT_OK)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_str(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let mut full = vec!["shallow-chars"];
        full.extend_from_slice(args);
        let code = run(full, &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn shallow_table() {
        let (code, out, _) = run_str(&["shallow", "--type", "C2", "--json"]);
        assert_eq!(code, 0);
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        let rows = v["roots"].as_array().unwrap();
        assert_eq!(rows.len(), 8);
        assert_eq!(rows.iter().filter(|r| r["indecomposable"] == true).count(), 3);
        let (code, out, _) = run_str(&["shallow", "--type", "A", "--rank", "1", "--point", "1/2", "--json"]);
        assert_eq!(code, 0);
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["roots"].as_array().unwrap().len(), 2);
        let (code, out, _) = run_str(&["shallow", "--type", "C2", "--facet", "0", "--json"]);
        assert_eq!(code, 0);
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert!(v["roots"].as_array().unwrap().is_empty());
    }

    #[test]
    fn usage_errors() {
        assert_eq!(run_str(&["shallow"]).0, EXIT_USAGE);
        assert_eq!(run_str(&["bogus"]).0, EXIT_USAGE);
        assert_eq!(run_str(&["shallow", "--type", "Q7"]).0, EXIT_USAGE);
        assert_eq!(run_str(&["solve", "--type", "C2"]).0, EXIT_USAGE);
        assert_eq!(run_str(&["check-star", "--type", "C2", "--q", "2"]).0, EXIT_USAGE);
        assert_eq!(run_str(&["shallow", "--type", "C2", "--point", "1/4"]).0, EXIT_USAGE);
        assert_eq!(run_str(&["--help"]).0, EXIT_OK);
    }

    #[test]
    fn solve_and_files() {
        let (code, out, _) = run_str(&["solve", "--type", "C2", "--q", "2", "--json"]);
        assert_eq!(code, 0);
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["dim_fp"], 5);

        let rs = sp4::c2();
        let ctx = ShallowContext::with_defaults(&rs, rs.barycenter(), 2).unwrap();
        let chi = sp4::example_character(&ctx);
        let dir = std::env::temp_dir().join(format!("shallow-cli-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("example.json");
        let mut file = ctx.to_file(&chi);
        file.root_system = Some("C2".into());
        std::fs::write(&path, serde_json::to_string(&file).unwrap()).unwrap();
        let p = path.to_str().unwrap();

        let (code, out, _) = run_str(&["check-star", "--character", p, "--json"]);
        assert_eq!(code, EXIT_FAIL);
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["condition_star"], "fails");
        assert_eq!(v["witness"], json!([1]));

        let (code, out, _) = run_str(&["intertwine", "--character", p, "--json"]);
        assert_eq!(code, EXIT_OK);
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["intertwining"], "collapses_to_P_chi");

        assert_eq!(run_str(&["classify", "--character", p]).0, EXIT_OK);
        assert_eq!(run_str(&["verify-hom", "--character", p]).0, EXIT_OK);
        assert_eq!(run_str(&["check-star", "--character", p, "--q", "3"]).0, EXIT_USAGE);
        assert_eq!(run_str(&["reproduce-sp4", "--character", p]).0, EXIT_FAIL);
        std::fs::remove_dir_all(&dir).unwrap();
    }

    #[test]
    fn reproduce_exit_code_reflects_divergence() {
        let (code, out, _) = run_str(&["reproduce-sp4"]);
        assert_eq!(code, EXIT_FAIL);
        assert!(out.contains("divergent: commutator 5"), "{out}");
        let (a, _, _) = run_str(&["constants", "--type", "G2", "--json"]);
        assert_eq!(a, 0);
        let (a, _, _) = run_str(&["root-system", "--type", "F4"]);
        assert_eq!(a, 0);
    }
}
