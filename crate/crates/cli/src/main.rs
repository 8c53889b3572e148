//! `bisets`: command-line frontend for the mackey-bisets library.
//!
//! Every subcommand prints a JSON document (or an indented text rendering
//! of it with `--format table`). Exit codes: 0 success, 2 malformed input,
//! 3 oracle mismatch, 4 not conjugation invariant, 5 axiom failure.

use std::collections::HashMap;
use std::io::Write;
use std::path::Path;
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use serde::de::DeserializeOwned;
use serde_json::{json, Value};

use mackey_bisets::biset::{
    classify, compose_bruteforce, compose_formula, factorize, indecomposables, CanonicalKey, ExplicitBiset,
    StandardRep, StandardRepJson,
};
use mackey_bisets::category::{pullback, verify_pullback, GMapJson};
use mackey_bisets::mackey::{
    build_f, burnside_example, check_agreement, check_conjugation_invariance, check_generated_by_j, check_m1, check_m2,
    fixed_point_c2_z3, validate_structure, verify_functoriality, CheckReport, MackeyData, MackeyDataJson, MackeyError,
    SquareSampling,
};
use mackey_bisets::{FiniteGroup, GroupSpec, Subgroup};

const EXIT_MALFORMED: u8 = 2;
const EXIT_ORACLE: u8 = 3;
const EXIT_NOT_INVARIANT: u8 = 4;
const EXIT_AXIOM: u8 = 5;

#[derive(Parser)]
#[command(name = "bisets", version, about = "Biset calculus and Mackey functor verification for finite groups")]
struct Cli {
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Cross-check results against brute-force computations.
    #[arg(long, global = true)]
    oracle: bool,
    /// Seed for sampled sweeps.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Table,
}

#[derive(Subcommand)]
enum Command {
    /// Order, subgroups with centralizers, and conjugacy classes of subgroups.
    Group {
        /// Short name (S3, D4, C2xC2, A4), inline JSON, or a JSON file.
        spec: String,
    },
    /// The subgroups of a group, as sorted element lists.
    Subgroups { spec: String },
    /// Composes two standard representations by the double coset formula.
    Compose {
        #[arg(long)]
        group: String,
        /// Left factor, over (H3, H2).
        rep2: Option<String>,
        /// Right factor, over (H2, H1).
        rep1: Option<String>,
        /// Instead, check this many random composable pairs against the
        /// brute-force balanced product.
        #[arg(long)]
        random: Option<usize>,
    },
    /// Factors a standard representation as induction, isomorphism and restriction.
    Factorize {
        #[arg(long)]
        group: String,
        rep: String,
    },
    /// The opposite biset.
    Transpose {
        #[arg(long)]
        group: String,
        rep: String,
    },
    /// Pullback of two G-maps between transitive G-sets with a common target.
    Pullback {
        #[arg(long)]
        group: String,
        psi: String,
        phi: String,
    },
    /// Mackey functor checks and factorization.
    Mackey {
        #[command(subcommand)]
        command: MackeyCommand,
    },
    /// The Burnside functor.
    Burnside {
        #[command(subcommand)]
        command: BurnsideCommand,
    },
}

#[derive(Subcommand)]
enum MackeyCommand {
    /// Checks structure, additivity, the pullback axiom and conjugation invariance.
    Check {
        #[command(flatten)]
        source: MackeySource,
        /// Check every pullback square instead of one random square per
        /// subgroup triple.
        #[arg(long)]
        all_squares: bool,
    },
    /// Builds the functor on conjugation bisets and verifies it.
    Factor {
        #[command(flatten)]
        source: MackeySource,
    },
}

#[derive(Subcommand)]
enum BurnsideCommand {
    /// Prints the Burnside functor of a group as Mackey data.
    Emit {
        #[arg(long)]
        group: String,
    },
}

#[derive(Args)]
struct MackeySource {
    /// Mackey data as a JSON file or inline JSON.
    data: Option<String>,
    /// A built-in example instead of a data file.
    #[arg(long, value_enum, conflicts_with = "data")]
    example: Option<Example>,
    /// Group for the burnside example.
    #[arg(long, default_value = "S3")]
    group: String,
}

#[derive(Clone, Copy, ValueEnum)]
enum Example {
    Burnside,
    #[value(name = "fixedpoint-c2-z3")]
    FixedpointC2Z3,
}

/// Result of a subcommand: the JSON document and the exit code.
struct Outcome {
    output: Value,
    code: u8,
}

impl Outcome {
    fn ok(output: Value) -> Self {
        Self { output, code: 0 }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_MALFORMED } else { 0 });
        }
    };
    match run(&cli) {
        Ok(outcome) => {
            let text = match cli.format {
                Format::Json => serde_json::to_string_pretty(&outcome.output).expect("serializable") + "\n",
                Format::Table => render_table(&outcome.output),
            };
            // a closed pipe downstream is not an error
            let _ = std::io::stdout().lock().write_all(text.as_bytes());
            ExitCode::from(outcome.code)
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(EXIT_MALFORMED)
        }
    }
}

fn run(cli: &Cli) -> Result<Outcome> {
    match &cli.command {
        Command::Group { spec } => cmd_group(spec),
        Command::Subgroups { spec } => {
            let (_, g) = parse_group(spec)?;
            Ok(Outcome::ok(json!(g.subgroups())))
        }
        Command::Compose { group, rep2, rep1, random } => match (random, rep2, rep1) {
            (Some(n), None, None) => cmd_compose_random(group, *n, cli.seed),
            (None, Some(rep2), Some(rep1)) => cmd_compose(group, rep2, rep1, cli.oracle),
            _ => bail!("give either two representations or --random N"),
        },
        Command::Factorize { group, rep } => cmd_factorize(group, rep),
        Command::Transpose { group, rep } => {
            let (_, g) = parse_group(group)?;
            let rep = parse_rep(&g, rep)?;
            let t = rep.transpose();
            Ok(Outcome::ok(json!({ "rep": t, "key": t.canonical_key(&g) })))
        }
        Command::Pullback { group, psi, phi } => cmd_pullback(group, psi, phi, cli.oracle),
        Command::Mackey { command: MackeyCommand::Check { source, all_squares } } => {
            let d = load_mackey(source)?;
            let squares = if *all_squares { SquareSampling::All } else { SquareSampling::Random { seed: cli.seed } };
            cmd_mackey_check(&d, squares, cli.seed)
        }
        Command::Mackey { command: MackeyCommand::Factor { source } } => cmd_mackey_factor(&load_mackey(source)?),
        Command::Burnside { command: BurnsideCommand::Emit { group } } => {
            let (spec, _) = parse_group(group)?;
            Ok(Outcome::ok(serde_json::to_value(burnside_example(&spec)?)?))
        }
    }
}

/// Inline JSON if the argument looks like JSON, otherwise a file path.
fn read_json<T: DeserializeOwned>(arg: &str) -> Result<T> {
    let text = if arg.trim_start().starts_with(['{', '[']) {
        arg.to_owned()
    } else {
        std::fs::read_to_string(arg).with_context(|| format!("reading {arg}"))?
    };
    serde_json::from_str(&text).with_context(|| format!("parsing {}", abbreviate(arg)))
}

fn abbreviate(s: &str) -> String {
    if s.chars().count() > 60 {
        format!("{}…", s.chars().take(60).collect::<String>())
    } else {
        s.to_owned()
    }
}

fn parse_group(arg: &str) -> Result<(GroupSpec, FiniteGroup)> {
    let spec = if arg.trim_start().starts_with('{') || Path::new(arg).is_file() {
        read_json(arg)?
    } else {
        GroupSpec::from_name(arg).ok_or_else(|| anyhow!("unknown group {arg:?}"))?
    };
    let g = spec.build()?;
    Ok((spec, g))
}

fn parse_rep(g: &FiniteGroup, arg: &str) -> Result<StandardRep> {
    let json: StandardRepJson = read_json(arg)?;
    Ok(json.resolve(g)?)
}

fn cmd_group(spec: &str) -> Result<Outcome> {
    let (spec, g) = parse_group(spec)?;
    let subs = g.subgroups();
    let subgroups: Vec<Value> = subs
        .iter()
        .map(|h| {
            json!({
                "subgroup": h,
                "order": h.order(),
                "centralizer": g.centralizer(h),
                "normalizer": g.normalizer(h),
            })
        })
        .collect();
    let classes = g.conjugacy_classes_in(subs, &g.whole());
    Ok(Outcome::ok(json!({
        "group": spec,
        "order": g.order(),
        "subgroup_count": subs.len(),
        "conjugacy_class_count": classes.len(),
        "subgroups": subgroups,
        "conjugacy_classes": classes,
    })))
}

fn components_json(g: &FiniteGroup, reps: &[StandardRep]) -> Vec<Value> {
    reps.iter().map(|r| json!({ "rep": r, "key": r.canonical_key(g) })).collect()
}

fn sorted_keys(g: &FiniteGroup, reps: &[StandardRep]) -> Vec<CanonicalKey> {
    let mut keys: Vec<_> = reps.iter().map(|r| r.canonical_key(g)).collect();
    keys.sort();
    keys
}

fn cmd_compose(group: &str, rep2: &str, rep1: &str, oracle: bool) -> Result<Outcome> {
    let (_, g) = parse_group(group)?;
    let (rep2, rep1) = (parse_rep(&g, rep2)?, parse_rep(&g, rep1)?);
    let parts = compose_formula(&g, &rep2, &rep1)?;
    let mut out = json!({ "count": parts.len(), "components": components_json(&g, &parts) });
    let mut code = 0;
    if oracle {
        let brute = compose_bruteforce(&g, &ExplicitBiset::realize(&g, &rep2), &ExplicitBiset::realize(&g, &rep1))?;
        let brute_keys = brute.component_keys(&g)?;
        let agrees = brute_keys == sorted_keys(&g, &parts);
        if !agrees {
            code = EXIT_ORACLE;
        }
        out["oracle"] = json!({ "agrees": agrees, "bruteforce_size": brute.size(), "bruteforce_keys": brute_keys });
    }
    Ok(Outcome { output: out, code })
}

fn cmd_compose_random(group: &str, samples: usize, seed: u64) -> Result<Outcome> {
    let (spec, g) = parse_group(group)?;
    let subs = g.subgroups();
    let mut rng = StdRng::seed_from_u64(seed);
    let mut cache: HashMap<(usize, usize), Vec<CanonicalKey>> = HashMap::new();
    let mut keys =
        |i: usize, j: usize| cache.entry((i, j)).or_insert_with(|| indecomposables(&g, &subs[i], &subs[j])).clone();
    let mut mismatches = Vec::new();
    for _ in 0..samples {
        let idx: Vec<usize> = (0..3).map(|_| rand::Rng::gen_range(&mut rng, 0..subs.len())).collect();
        let (second, first) = (keys(idx[0], idx[1]), keys(idx[1], idx[2]));
        let b = second.choose(&mut rng).expect("identity component exists").rep().clone();
        let a = first.choose(&mut rng).expect("identity component exists").rep().clone();
        let formula = sorted_keys(&g, &compose_formula(&g, &b, &a)?);
        let brute = compose_bruteforce(&g, &ExplicitBiset::realize(&g, &b), &ExplicitBiset::realize(&g, &a))?
            .component_keys(&g)?;
        if formula != brute {
            mismatches.push(json!({ "second": b, "first": a, "formula": formula, "bruteforce": brute }));
        }
    }
    let code = if mismatches.is_empty() { 0 } else { EXIT_ORACLE };
    Ok(Outcome {
        output: json!({ "group": spec, "seed": seed, "samples": samples, "mismatch_count": mismatches.len(), "mismatches": mismatches }),
        code,
    })
}

fn cmd_factorize(group: &str, rep: &str) -> Result<Outcome> {
    let (_, g) = parse_group(group)?;
    let rep = parse_rep(&g, rep)?;
    let f = factorize(&g, &rep);
    let factor = |name: &str, r: &StandardRep| {
        let realizing = g.conjugation_realizing(r.gamma());
        json!({
            "factor": name,
            "rep": r,
            "conjugation": realizing.is_some(),
            "verdict": if realizing.is_some() { "conjugation" } else { "not conjugation" },
            "realizing_element": realizing,
        })
    };
    let inner = compose_formula(&g, &f.iso, &f.res)?;
    let mut recomposed = Vec::new();
    for part in &inner {
        recomposed.extend(compose_formula(&g, &f.ind, part)?);
    }
    let recomposition_ok = recomposed.len() == 1 && recomposed[0].canonical_key(&g) == rep.canonical_key(&g);
    Ok(Outcome::ok(json!({
        "rep": rep,
        "key": rep.canonical_key(&g),
        "classification": classify(&g, &rep),
        "factors": [factor("ind", &f.ind), factor("iso", &f.iso), factor("res", &f.res)],
        "conjugating_element": f.conjugating_element,
        "recomposition_ok": recomposition_ok,
    })))
}

fn cmd_pullback(group: &str, psi: &str, phi: &str, oracle: bool) -> Result<Outcome> {
    let (_, g) = parse_group(group)?;
    let psi = read_json::<GMapJson>(psi)?.resolve(&g)?;
    let phi = read_json::<GMapJson>(phi)?.resolve(&g)?;
    let pb = pullback(&g, &psi, &phi)?;
    let mut out = json!({
        "apex": pb.apex,
        "cardinality": pb.apex.cardinality(&g),
        "to_first": pb.to_first.to_json(),
        "to_second": pb.to_second.to_json(),
    });
    let mut code = 0;
    if oracle {
        let agrees = verify_pullback(&g, &psi, &phi, &pb)?;
        out["oracle"] = json!({ "agrees": agrees });
        if !agrees {
            code = EXIT_ORACLE;
        }
    }
    Ok(Outcome { output: out, code })
}

fn load_mackey(source: &MackeySource) -> Result<MackeyData> {
    match (source.example, &source.data) {
        (Some(Example::Burnside), _) => Ok(burnside_example(&parse_group(&source.group)?.0)?),
        (Some(Example::FixedpointC2Z3), _) => Ok(fixed_point_c2_z3()),
        (None, Some(data)) => Ok(read_json::<MackeyDataJson>(data)?.resolve()?),
        (None, None) => bail!("give a data file or --example"),
    }
}

fn cmd_mackey_check(d: &MackeyData, squares: SquareSampling, seed: u64) -> Result<Outcome> {
    let structure = validate_structure(d);
    let m2 = check_m2(d, 20, seed)?;
    let m1 = check_m1(d, squares)?;
    let invariance = check_conjugation_invariance(d)?;
    let mackey = structure.passed() && m1.passed() && m2.passed();
    let (verdict, code) = match (mackey, invariance.passed()) {
        (false, _) => ("axiom failure", EXIT_AXIOM),
        (true, false) => ("Mackey functor, not conjugation invariant", EXIT_NOT_INVARIANT),
        (true, true) => ("conjugation invariant Mackey functor", 0),
    };
    let checks: Vec<&CheckReport> = vec![&structure, &m2, &m1, &invariance];
    Ok(Outcome { output: json!({ "group": d.spec(), "verdict": verdict, "checks": checks }), code })
}

fn cmd_mackey_factor(d: &MackeyData) -> Result<Outcome> {
    let f = match build_f(d) {
        Ok(f) => f,
        Err(MackeyError::NotConjugationInvariant { subgroup, element, con }) => {
            return Ok(Outcome {
                output: json!({
                    "group": d.spec(),
                    "verdict": "refused: not conjugation invariant",
                    "counterexample": { "subgroup": subgroup, "element": element, "con": con },
                }),
                code: EXIT_NOT_INVARIANT,
            });
        }
        Err(e) => return Err(e.into()),
    };
    let functoriality = verify_functoriality(&f)?;
    let agreement = check_agreement(&f, d)?;
    let generated = check_generated_by_j(&f)?;
    let passed = functoriality.passed() && agreement.passed() && generated.passed();
    let subgroups: &[Subgroup] = d.subgroups();
    Ok(Outcome {
        output: json!({
            "group": d.spec(),
            "verdict": if passed { "pass" } else { "fail" },
            "subgroups": subgroups.len(),
            "keys_evaluated": f.table().len(),
            "pairs_checked": functoriality.instances,
            "maps_checked": agreement.instances,
            "checks": [functoriality, agreement, generated],
        }),
        code: if passed { 0 } else { EXIT_AXIOM },
    })
}

/// Indented text rendering of a JSON document. Short arrays of scalars
/// stay on one line.
fn render_table(v: &Value) -> String {
    let mut out = String::new();
    render(v, 0, &mut out);
    out
}

fn is_flat(v: &Value) -> bool {
    match v {
        Value::Array(items) => items.iter().all(|x| !x.is_object() && is_flat(x)),
        Value::Object(_) => false,
        _ => true,
    }
}

fn render(v: &Value, depth: usize, out: &mut String) {
    let pad = "  ".repeat(depth);
    match v {
        Value::Object(map) => {
            for (k, x) in map {
                if is_flat(x) {
                    out.push_str(&format!("{pad}{k}: {x}\n"));
                } else {
                    out.push_str(&format!("{pad}{k}:\n"));
                    render(x, depth + 1, out);
                }
            }
        }
        Value::Array(items) => {
            for x in items {
                if is_flat(x) {
                    out.push_str(&format!("{pad}- {x}\n"));
                } else {
                    out.push_str(&format!("{pad}-\n"));
                    render(x, depth + 1, out);
                }
            }
        }
        other => out.push_str(&format!("{pad}{other}\n")),
    }
}
