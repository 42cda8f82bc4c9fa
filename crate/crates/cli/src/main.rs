//! `weylmod`: reads ideals, representations and modules as JSON and writes
//! JSON reports to standard output.
//!
//! Exit codes: 0 on success, 1 on a mathematical failure, 2 on bad input.

use std::io::Read;
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value as Json};

use weylmod::field::json::{parse_field_shorthand, parse_rational, poly_from_json};
use weylmod::field::Poly;
use weylmod::heisenberg::{a_infinity_orbit, build_window, graded_basis, graded_count, heisenberg_action_check};
use weylmod::indecomp::{
    brute_force_indecomposables, build_from_rep, build_order2_module, classify_block, ind0_polys,
    q1_indecomposables, q2_indecomposables, Quiver, QuiverRep,
};
use weylmod::orbit::{orbit_info, OrbitInfo, SepMaxIdeal, ShiftVector};
use weylmod::simples::{build_s_char_p, build_s_o, build_s_o_p, classify_simples, SimpleDescriptor};
use weylmod::skeleton::build_skeleton;
use weylmod::weightmod::json::{module_from_json, module_to_json};
use weylmod::weightmod::{
    is_indecomposable_finite, is_simple_finite, submodule_closure, verify_relations, SimplicityReport, WeightModule,
    Window,
};
use weylmod::{Budget, Error, Result, SCHEMA};

#[derive(Parser)]
#[command(name = "weylmod", version, about = "Weight modules over Weyl algebras, in exact arithmetic")]
struct Cli {
    /// Cap on any exhaustive enumeration; overrides WEYLMOD_MAX_ENUM.
    #[arg(long, global = true)]
    budget: Option<u64>,
    /// Seed for sampled checks.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Orbit of a maximal ideal.
    #[command(subcommand)]
    Orbit(OrbitCmd),
    /// Representation type of a block.
    #[command(subcommand)]
    Block(BlockCmd),
    /// Simple modules supported on an orbit.
    #[command(subcommand)]
    Simples(SimplesCmd),
    /// Indecomposable modules of tame and finite blocks.
    #[command(subcommand)]
    Indecomp(IndecompCmd),
    /// Checks on a module file.
    #[command(subcommand)]
    Module(ModuleCmd),
    /// Brute-force classification of quiver representations.
    #[command(subcommand)]
    Oracle(OracleCmd),
    /// Skeleton category of an orbit.
    #[command(subcommand)]
    Skeleton(SkeletonCmd),
    /// Graded pieces of the simple module over the Heisenberg algebra.
    #[command(subcommand)]
    Heisenberg(HeisenbergCmd),
}

#[derive(Args)]
struct Input {
    /// JSON input: a file, `-` for standard input, or inline text.
    input: String,
}

#[derive(Subcommand)]
enum OrbitCmd {
    /// Degeneracy, breaks, periods and skeleton objects.
    Info(Input),
}

#[derive(Subcommand)]
enum BlockCmd {
    /// Finite, tame or wild, with the reason.
    Classify(Input),
}

#[derive(Subcommand)]
enum SimplesCmd {
    /// Every simple module of the block, as descriptors.
    List(Input),
    /// Build one simple module on a window of weights.
    Build {
        input: String,
        /// Position in `simples list`.
        #[arg(long, default_value_t = 0)]
        which: usize,
        /// Generator of the maximal ideal N: coefficient array, low degree first.
        #[arg(long = "N")]
        n: Option<String>,
        #[arg(long, default_value_t = 3)]
        window: i64,
    },
}

#[derive(Subcommand)]
enum IndecompCmd {
    /// String and band representations of a tame or finite block.
    List {
        input: String,
        #[arg(long, default_value_t = 6)]
        max_string: usize,
        #[arg(long, default_value_t = 3)]
        max_poly_deg: usize,
        /// Band polynomial (coefficient array); needed over infinite fields.
        #[arg(long = "poly")]
        polys: Vec<String>,
    },
    /// The weight module of a quiver representation.
    Build {
        input: String,
        /// Representation JSON, as printed by `indecomp list`.
        #[arg(long)]
        rep: String,
        #[arg(long, default_value_t = 3)]
        window: i64,
    },
}

#[derive(Subcommand)]
enum ModuleCmd {
    /// Check the defining relations on every weight in the window.
    Verify(Input),
    /// Decide simplicity, exactly when the budget allows.
    SimpleCheck {
        input: String,
        /// Random vectors tried when the exhaustive check is out of budget.
        #[arg(long, default_value_t = 64)]
        samples: usize,
    },
    /// Decide indecomposability through the endomorphism ring.
    IndecCheck(Input),
}

#[derive(Subcommand)]
enum OracleCmd {
    /// Count isomorphism classes of representations with a dimension vector.
    Enumerate {
        #[arg(long)]
        quiver: String,
        #[arg(long)]
        field: String,
        /// Dimension vector, e.g. `1,1,1,1`.
        #[arg(long)]
        dims: String,
    },
}

#[derive(Subcommand)]
enum SkeletonCmd {
    /// Objects and generating morphisms of the skeleton.
    Show(Input),
}

#[derive(Subcommand)]
enum HeisenbergCmd {
    /// Dimension of a graded piece, truncated by length and bound.
    GradedDim {
        #[arg(long, allow_hyphen_values = true)]
        degree: i64,
        #[arg(long, visible_alias = "len")]
        length: usize,
        #[arg(long)]
        bound: u64,
        /// Orbit of `t_k - lambda`; must not be an integer.
        #[arg(long, default_value = "1/2", allow_hyphen_values = true)]
        lambda: String,
        /// List the weights as well.
        #[arg(long)]
        basis: bool,
    },
    /// Check the Heisenberg brackets on a window.
    Check {
        #[arg(long, default_value = "1/2", allow_hyphen_values = true)]
        lambda: String,
        #[arg(long, visible_alias = "indices", default_value_t = 4)]
        max_index: usize,
        #[arg(long, visible_alias = "radius", default_value_t = 2)]
        window: i64,
    },
}

fn bad(msg: impl Into<String>) -> Error {
    Error::InvalidInput(msg.into())
}

fn read_json(src: &str) -> Result<Json> {
    let text = if src == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).map_err(|e| bad(format!("standard input: {}", e)))?;
        s
    } else if src.trim_start().starts_with(['{', '[']) {
        src.to_string()
    } else {
        std::fs::read_to_string(src).map_err(|e| bad(format!("{}: {}", src, e)))?
    };
    serde_json::from_str(&text).map_err(|e| bad(format!("{}: {}", src, e)))
}

fn load_orbit(src: &str, budget: &Budget) -> Result<Arc<OrbitInfo>> {
    let j = read_json(src)?;
    let m = SepMaxIdeal::from_json(&j, &budget.irreducibility)?;
    Ok(Arc::new(orbit_info(&m, &budget.irreducibility)?))
}

fn load_module(src: &str, budget: &Budget) -> Result<WeightModule> {
    module_from_json(&read_json(src)?, budget)
}

fn module_output(m: &WeightModule) -> Json {
    let mut j = module_to_json(m);
    j["total_dim"] = json!(m.total_dim());
    j["k_dim"] = json!(m.k_dim());
    j
}

fn window(info: &OrbitInfo, r: i64) -> Result<Window> {
    if r < 0 {
        return Err(bad("window radius must be nonnegative"));
    }
    Window::boxed(info, r)
}

fn simples_list(info: &OrbitInfo) -> Json {
    let list: Vec<Json> = classify_simples(info)
        .iter()
        .enumerate()
        .map(|(k, d)| {
            let mut j = d.to_json();
            j["index"] = json!(k);
            j
        })
        .collect();
    json!({ "schema": SCHEMA, "count": list.len(), "simples": list })
}

fn simples_build(info: &Arc<OrbitInfo>, which: usize, n: Option<&str>, r: i64, budget: &Budget) -> Result<Json> {
    let list = classify_simples(info);
    let d = list.get(which).ok_or_else(|| bad(format!("--which {} but only {} simples", which, list.len())))?;
    let m = match d {
        SimpleDescriptor::SO => build_s_o(info, &window(info, r)?)?,
        SimpleDescriptor::SOp { p } => build_s_o_p(info, p, &window(info, r)?)?,
        SimpleDescriptor::CharP { .. } => {
            let n = n.map(|s| read_json(s).and_then(|j| poly_from_json(info.field(), &j))).transpose()?;
            build_s_char_p(info, d, n.as_ref(), budget)?
        }
    };
    let mut j = module_output(&m);
    j["descriptor"] = d.to_json();
    Ok(j)
}

fn indecomp_list(info: &OrbitInfo, max_string: usize, max_deg: usize, polys: &[String], budget: &Budget) -> Result<Json> {
    if info.characteristic() != 0 {
        return Err(Error::Unsupported("indecomposables are constructed in characteristic 0 only".into()));
    }
    let f = info.field();
    let (quiver, reps, bands) = match info.order() {
        0 => {
            return Ok(json!({
                "schema": SCHEMA,
                "type": classify_block(info).to_json(),
                "quiver": null,
                "modules": ["S(O)"],
                "reps": [],
            }))
        }
        1 => (Quiver::Q1, q1_indecomposables(f), true),
        2 => {
            let given: Vec<Poly> =
                polys.iter().map(|s| read_json(s).and_then(|j| poly_from_json(f, &j))).collect::<Result<_>>()?;
            let (ps, complete) = if !given.is_empty() {
                (given, false)
            } else if f.is_finite() {
                (ind0_polys(f, max_deg, budget)?, true)
            } else {
                (Vec::new(), false)
            };
            (Quiver::Q2, q2_indecomposables(f, max_string, &ps), complete)
        }
        k => return Err(Error::WrongBreakOrder { expected: 2, found: k }),
    };
    Ok(json!({
        "schema": SCHEMA,
        "type": classify_block(info).to_json(),
        "quiver": quiver.name(),
        "all_bands_listed": bands,
        "count": reps.len(),
        "reps": reps.iter().map(QuiverRep::to_json).collect::<Vec<_>>(),
    }))
}

fn indecomp_build(info: &Arc<OrbitInfo>, rep: &str, r: i64, budget: &Budget) -> Result<Json> {
    let rep = QuiverRep::from_json(&read_json(rep)?, budget)?;
    let w = window(info, r)?;
    let m = if info.order() == 2 { build_order2_module(info, &rep, &w)? } else { build_from_rep(info, &rep, &w)? };
    let mut j = module_output(&m);
    j["rep"] = json!(rep.name);
    Ok(j)
}

/// Tries random homogeneous vectors when the exhaustive check was out of
/// reach; a proper closure settles the question.
fn sample_simplicity(m: &WeightModule, mut report: SimplicityReport, samples: usize, seed: u64) -> Result<SimplicityReport> {
    if report.exact || !report.simple {
        return Ok(report);
    }
    let f = m.field();
    let support = m.support();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..samples {
        let g = &support[rng.gen_range(0..support.len())];
        let v: Vec<_> = (0..m.dim(g))
            .map(|_| match f.order() {
                Some(q) => f.element_at(rng.gen_range(0..q.min(1 << 32) as u64)),
                None => f.from_i64(rng.gen_range(-3..=3)),
            })
            .collect();
        if v.iter().all(|x| f.is_zero(x)) {
            continue;
        }
        report.vectors_checked += 1;
        let profile: Vec<usize> = submodule_closure(m, &[(g.clone(), v.clone())])?.iter().map(|s| s.dim()).collect();
        if profile != m.dims() {
            report.simple = false;
            report.exact = true;
            report.witness = Some((g.clone(), v, profile));
            break;
        }
    }
    Ok(report)
}

fn oracle(quiver: &str, field: &str, dims: &str, budget: &Budget) -> Result<Json> {
    let quiver = Quiver::parse(quiver)?;
    let f = parse_field_shorthand(field)?;
    let dims: Vec<usize> = dims
        .split(',')
        .map(|s| s.trim().parse().map_err(|_| bad(format!("bad dimension {:?}", s))))
        .collect::<Result<_>>()?;
    let r = brute_force_indecomposables(quiver, &f, &dims, budget)?;
    Ok(json!({
        "schema": SCHEMA,
        "quiver": quiver.name(),
        "field": f.to_string(),
        "dims": dims,
        "tuples": r.tuples,
        "classes": r.classes,
        "indecomposable_classes": r.indecomposables.len(),
        "reps": r.indecomposables.iter().map(QuiverRep::to_json).collect::<Vec<_>>(),
    }))
}

fn run(cli: Cli) -> Result<Json> {
    let mut budget = Budget::from_env();
    if let Some(b) = cli.budget {
        budget = budget.with_max_enum(b);
    }
    let budget = &budget;
    match cli.cmd {
        Cmd::Orbit(OrbitCmd::Info(i)) => Ok(load_orbit(&i.input, budget)?.to_json()),
        Cmd::Block(BlockCmd::Classify(i)) => Ok(classify_block(&*load_orbit(&i.input, budget)?).to_json()),
        Cmd::Simples(SimplesCmd::List(i)) => Ok(simples_list(&*load_orbit(&i.input, budget)?)),
        Cmd::Simples(SimplesCmd::Build { input, which, n, window }) => {
            simples_build(&load_orbit(&input, budget)?, which, n.as_deref(), window, budget)
        }
        Cmd::Indecomp(IndecompCmd::List { input, max_string, max_poly_deg, polys }) => {
            indecomp_list(&*load_orbit(&input, budget)?, max_string, max_poly_deg, &polys, budget)
        }
        Cmd::Indecomp(IndecompCmd::Build { input, rep, window }) => {
            indecomp_build(&load_orbit(&input, budget)?, &rep, window, budget)
        }
        Cmd::Module(ModuleCmd::Verify(i)) => Ok(verify_relations(&load_module(&i.input, budget)?).to_json()),
        Cmd::Module(ModuleCmd::SimpleCheck { input, samples }) => {
            let m = load_module(&input, budget)?;
            let report = sample_simplicity(&m, is_simple_finite(&m, budget)?, samples, cli.seed)?;
            Ok(report.to_json(&m))
        }
        Cmd::Module(ModuleCmd::IndecCheck(i)) => Ok(is_indecomposable_finite(&load_module(&i.input, budget)?, budget)?.to_json()),
        Cmd::Oracle(OracleCmd::Enumerate { quiver, field, dims }) => oracle(&quiver, &field, &dims, budget),
        Cmd::Skeleton(SkeletonCmd::Show(i)) => Ok(build_skeleton(&*load_orbit(&i.input, budget)?)?.to_json()),
        Cmd::Heisenberg(HeisenbergCmd::GradedDim { degree, length, bound, lambda: l, basis }) => {
            a_infinity_orbit(&parse_rational(&l)?, budget)?;
            let mut j = json!({
                "schema": SCHEMA,
                "degree": degree,
                "length": length,
                "bound": bound,
                "count": graded_count(degree, length, bound).to_string(),
            });
            if basis {
                // Degree `i` of the grading holds the weights with sum k gamma_k = -i.
                j["basis"] = json!(graded_basis(-degree, length, bound).iter().map(ShiftVector::key).collect::<Vec<_>>());
            }
            Ok(j)
        }
        Cmd::Heisenberg(HeisenbergCmd::Check { lambda: l, max_index, window }) => {
            let info = a_infinity_orbit(&parse_rational(&l)?, budget)?;
            let m = build_window(&info, max_index, window)?;
            Ok(heisenberg_action_check(&m).to_json())
        }
    }
}

fn emit(j: &Json) {
    println!("{}", serde_json::to_string_pretty(j).expect("serializable"));
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) if !e.use_stderr() => {
            print!("{}", e);
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            emit(&json!({ "schema": SCHEMA, "error": "UsageError", "message": e.to_string().trim_end() }));
            return ExitCode::from(2);
        }
    };
    match run(cli) {
        Ok(j) => {
            emit(&j);
            ExitCode::SUCCESS
        }
        Err(e) => {
            emit(&json!({ "schema": SCHEMA, "error": e.name(), "message": e.to_string() }));
            ExitCode::from(if e.is_usage() { 2 } else { 1 })
        }
    }
}
