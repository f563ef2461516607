use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use nalgebra::DMatrix;
use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use linepack::fixtures;
use linepack::frames::{
    coherence, difference_set_check, harmonic_gram, is_etf, matrix_group_orbit_gram,
    packing_report, projective_reduce, secondary_bounds, welch_bound, Field, GramMatrix,
    DEFAULT_ETF_TOL, DEFAULT_REDUCE_TOL,
};
use linepack::heisenberg::{
    closed_form_matches_direct, heis_etf_gram, heis_etf_gram_direct, heisenberg_permutation_action,
    AbelianGroupSpec, GammaTwist, Parity,
};
use linepack::idempotents::{
    central_primitive_idempotents, multiplicity_free, projection_from_subset,
    spherical_function_values, IsotypicDecomposition, DEFAULT_TOL,
};
use linepack::permgroup::{induced_pair_action, regular_action, GroupAction, PermutationGroup};
use linepack::scheme::{is_commutative, scheme_from_action, SchurianScheme};
use linepack::symmetry::{
    gram_isomorphism, gram_symmetry_group, symmetry_group_of_colors, ColoredDigraph,
    DEFAULT_NODE_CAP,
};
use linepack::{Error, Result};

const SUBSET_CAP: u64 = 1 << 20;
const MAX_CONSTITUENTS: usize = 20;
const MAX_SCHEME_POINTS: usize = 4096;

/// Line packings from transitive permutation groups.
///
/// Exit codes: 0 success, 2 input error, 3 numeric error, 4 resource cap.
#[derive(Parser, Debug)]
#[command(name = "linepack", version)]
struct Cli {
    /// Write JSON here instead of stdout.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Orbital scheme of a transitive action.
    Scheme(SchemeArgs),
    /// Primitive central idempotents of the adjacency algebra.
    Idempotents(IdempotentArgs),
    /// Scan every subset of constituents for equiangular tight frames.
    ScanEtf(ScanArgs),
    /// Projectively reduce a Gram matrix, given directly or as a subset of constituents.
    Reduce(ReduceArgs),
    /// Heisenberg ETF Gram matrices.
    Heisenberg(HeisenbergArgs),
    /// Harmonic frame of a subset of characters of a finite abelian group.
    Harmonic(HarmonicArgs),
    /// Symmetry group of a Gram matrix.
    Symmetry(SymmetryArgs),
    /// Check the shipped reference frames.
    VerifyFigures,
}

#[derive(Copy, Clone, Debug, ValueEnum)]
enum ActionKind {
    Natural,
    Pairs,
    Regular,
}

#[derive(Copy, Clone, Debug, ValueEnum)]
enum FixtureName {
    AglLines,
    Sl2F8,
    M11,
    Hoggar,
    Heisenberg3,
    Heisenberg5,
    Heisenberg7,
}

#[derive(Args, Debug)]
struct GroupInput {
    /// Group JSON: {"degree": n, "generators": [[images..], ..]}.
    group: Option<PathBuf>,
    /// Use a built-in group instead of a file.
    #[arg(long, conflicts_with = "group")]
    fixture: Option<FixtureName>,
    #[arg(long, value_enum, default_value_t = ActionKind::Natural)]
    action: ActionKind,
    /// Largest group enumerated for the regular action.
    #[arg(long, default_value_t = 100_000)]
    element_limit: usize,
}

#[derive(Args, Debug)]
struct SchemeArgs {
    #[command(flatten)]
    input: GroupInput,
    /// Include the full orbital listing.
    #[arg(long)]
    full: bool,
}

#[derive(Args, Debug)]
struct DecompositionArgs {
    #[command(flatten)]
    input: GroupInput,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = DEFAULT_TOL)]
    tol: f64,
}

#[derive(Args, Debug)]
struct IdempotentArgs {
    #[command(flatten)]
    dec: DecompositionArgs,
    /// Include every projection as a dense matrix.
    #[arg(long)]
    projections: bool,
}

#[derive(Copy, Clone, Debug, ValueEnum)]
enum SubsetPolicy {
    All,
    MultiplicityFreeOnly,
}

#[derive(Args, Debug)]
struct ScanArgs {
    #[command(flatten)]
    dec: DecompositionArgs,
    /// Identify unimodularly proportional vectors before measuring coherence.
    #[arg(long)]
    reduce: bool,
    #[arg(long, value_enum, default_value_t = SubsetPolicy::All)]
    policy: SubsetPolicy,
    #[arg(long)]
    max_subset_size: Option<usize>,
    /// Only report subsets flagged as ETFs.
    #[arg(long)]
    etf_only: bool,
}

#[derive(Args, Debug)]
struct ReduceArgs {
    /// Gram JSON to reduce; otherwise the projection of --subset over the group input.
    #[arg(long)]
    gram: Option<PathBuf>,
    #[command(flatten)]
    dec: DecompositionArgs,
    /// Comma-separated constituent indices, as listed by `idempotents`.
    #[arg(long, value_delimiter = ',')]
    subset: Vec<usize>,
    #[arg(long, default_value_t = DEFAULT_REDUCE_TOL)]
    reduce_tol: f64,
}

#[derive(Copy, Clone, Debug, ValueEnum)]
enum ParityArg {
    Even,
    Odd,
}

#[derive(Args, Debug)]
struct HeisenbergArgs {
    /// Odd cyclic factors of A, e.g. "3" or "3,9".
    #[arg(long)]
    moduli: String,
    #[arg(long, value_enum)]
    parity: ParityArg,
    /// Galois twist ζ ↦ ζ^g, g coprime to the exponent.
    #[arg(long, default_value_t = 1)]
    gamma: u32,
    /// Emit floating-point entries instead of exact cyclotomic ones.
    #[arg(long, conflicts_with = "exact")]
    float: bool,
    #[arg(long)]
    exact: bool,
    /// Compare the closed form with a direct trace computation.
    #[arg(long)]
    verify: bool,
    #[arg(long, default_value_t = DEFAULT_ETF_TOL)]
    tol: f64,
}

#[derive(Args, Debug)]
struct HarmonicArgs {
    /// Cyclic factors of the group, e.g. "7" or "2,4".
    #[arg(long)]
    moduli: String,
    /// Elements separated by ';', components by ',', e.g. "1;2;4".
    #[arg(long)]
    subset: String,
    #[arg(long, default_value_t = DEFAULT_ETF_TOL)]
    tol: f64,
}

#[derive(Args, Debug)]
struct SymmetryArgs {
    /// Gram JSON.
    gram: PathBuf,
    /// Color matrix JSON ([[c..], ..]) used instead of clustering the Gram entries.
    #[arg(long)]
    assume_colors: Option<PathBuf>,
    /// Also search for an isomorphism onto this Gram matrix.
    #[arg(long)]
    compare: Option<PathBuf>,
    #[arg(long, default_value_t = 1e-9)]
    tol: f64,
    #[arg(long, default_value_t = DEFAULT_NODE_CAP)]
    node_cap: u64,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok((value, ok)) => match emit(&value, cli.output.as_deref()) {
            Ok(()) if ok => ExitCode::SUCCESS,
            Ok(()) => ExitCode::from(3),
            Err(e) => fail(&e),
        },
        Err(e) => fail(&e),
    }
}

fn fail(e: &Error) -> ExitCode {
    eprintln!("linepack: {e}");
    ExitCode::from(e.exit_code() as u8)
}

fn emit(value: &Value, output: Option<&Path>) -> Result<()> {
    let mut text = serde_json::to_string_pretty(value)?;
    text.push('\n');
    match output {
        Some(path) => fs::write(path, text)?,
        None => print!("{text}"),
    }
    Ok(())
}

fn run(cli: &Cli) -> Result<(Value, bool)> {
    match &cli.command {
        Command::Scheme(a) => cmd_scheme(a).map(|v| (v, true)),
        Command::Idempotents(a) => cmd_idempotents(a).map(|v| (v, true)),
        Command::ScanEtf(a) => cmd_scan(a).map(|v| (v, true)),
        Command::Reduce(a) => cmd_reduce(a).map(|v| (v, true)),
        Command::Heisenberg(a) => cmd_heisenberg(a),
        Command::Harmonic(a) => cmd_harmonic(a).map(|v| (v, true)),
        Command::Symmetry(a) => cmd_symmetry(a).map(|v| (v, true)),
        Command::VerifyFigures => cmd_verify(),
    }
}

fn check_tol(tol: f64) -> Result<()> {
    if tol.is_finite() && tol > 0.0 {
        Ok(())
    } else {
        Err(Error::input(format!(
            "tolerance must be positive, got {tol}"
        )))
    }
}

fn load_action(input: &GroupInput) -> Result<GroupAction> {
    let base = match (&input.group, input.fixture) {
        (Some(path), _) => {
            GroupAction::natural(PermutationGroup::from_json(&fs::read_to_string(path)?)?)
        }
        (None, Some(f)) => match f {
            FixtureName::AglLines => fixtures::agl_lines(),
            FixtureName::Sl2F8 => fixtures::sl2_f8_projective_line(),
            FixtureName::M11 => fixtures::mathieu_m11_on_12(),
            FixtureName::Hoggar => fixtures::hoggar_action()?.0,
            FixtureName::Heisenberg3 => heisenberg_permutation_action(3)?,
            FixtureName::Heisenberg5 => heisenberg_permutation_action(5)?,
            FixtureName::Heisenberg7 => heisenberg_permutation_action(7)?,
        },
        (None, None) => return Err(Error::input("give a group JSON file or --fixture")),
    };
    let action = match input.action {
        ActionKind::Natural => base,
        ActionKind::Pairs => induced_pair_action(&base)?,
        ActionKind::Regular => regular_action(&base.group, input.element_limit)?,
    };
    if action.point_count > MAX_SCHEME_POINTS {
        return Err(Error::resource(format!(
            "action on {} points exceeds the limit of {MAX_SCHEME_POINTS}",
            action.point_count
        )));
    }
    Ok(action)
}

fn load_scheme(input: &GroupInput) -> Result<(GroupAction, SchurianScheme)> {
    let action = load_action(input)?;
    let scheme = scheme_from_action(&action)?;
    Ok((action, scheme))
}

fn load_decomposition(args: &DecompositionArgs) -> Result<IsotypicDecomposition> {
    check_tol(args.tol)?;
    let (_, scheme) = load_scheme(&args.input)?;
    central_primitive_idempotents(&scheme, args.seed, args.tol)
}

fn load_gram(path: &Path) -> Result<GramMatrix> {
    let text = fs::read_to_string(path)?;
    let value: Value = serde_json::from_str(&text)?;
    if value.get("den").is_some() {
        GramMatrix::from_rational_json(&text)
    } else {
        GramMatrix::from_json(&text)
    }
}

fn gram_value(g: &GramMatrix) -> Result<Value> {
    Ok(serde_json::from_str(&g.to_json()?)?)
}

fn complex_pairs(v: &[Complex64]) -> Vec<[f64; 2]> {
    v.iter().map(|z| [z.re, z.im]).collect()
}

fn normalized(g: &GramMatrix) -> GramMatrix {
    let d = g.entries()[(0, 0)].re;
    GramMatrix::with_exactness(g.entries().map(|z| z / d), g.exactness())
}

fn cmd_scheme(args: &SchemeArgs) -> Result<Value> {
    let (action, scheme) = load_scheme(&args.input)?;
    let mut out = json!({
        "points": scheme.point_count(),
        "group_order": action.group.order().to_string(),
        "num_orbitals": scheme.num_orbitals(),
        "valencies": scheme.valencies(),
        "transpose_pairing": scheme.transpose_pairing(),
        "commutative": is_commutative(&scheme),
    });
    if args.full {
        out["scheme"] = serde_json::to_value(scheme.to_export())?;
    }
    Ok(out)
}

fn cmd_idempotents(args: &IdempotentArgs) -> Result<Value> {
    let dec = load_decomposition(&args.dec)?;
    let spherical: Vec<Vec<[f64; 2]>> = (0..dec.len())
        .map(|j| complex_pairs(&spherical_function_values(&dec, j)))
        .collect();
    let mut out = serde_json::to_value(dec.to_export(args.projections))?;
    out["trivial_index"] = json!(dec.trivial_index);
    out["multiplicity_free"] = json!(multiplicity_free(&dec));
    out["spherical_functions"] = json!(spherical);
    Ok(out)
}

#[derive(Serialize)]
struct ScanEntry {
    subset: Vec<usize>,
    d: usize,
    n: usize,
    coherence: f64,
    etf: bool,
    welch_met: bool,
    orthoplex_met: bool,
    levenstein_met: bool,
    field: Field,
    unequal_classes: bool,
}

fn scan_subset(dec: &IsotypicDecomposition, subset: Vec<usize>, reduce: bool) -> Result<ScanEntry> {
    let d: usize = subset.iter().map(|&j| dec.ranks[j]).sum();
    let full = projection_from_subset(dec, &subset)?;
    let (gram, unequal_classes) = if reduce {
        let red = projective_reduce(&full, DEFAULT_REDUCE_TOL)?;
        (red.gram, red.unequal_classes)
    } else {
        (full, false)
    };
    let gram = normalized(&gram);
    let n = gram.n();
    let field = if gram.is_real(1e-12) {
        Field::Real
    } else {
        Field::Complex
    };
    let (mu, etf, welch) = if n >= 2 {
        (
            coherence(&gram)?,
            is_etf(&gram, DEFAULT_ETF_TOL),
            welch_bound(n, d)?,
        )
    } else {
        (0.0, false, 0.0)
    };
    let (orthoplex, levenstein) = secondary_bounds(n, d, field);
    let met = |b: Option<f64>| b.is_some_and(|b| (mu - b).abs() <= DEFAULT_ETF_TOL);
    let nontrivial = d > 1 && d < n;
    Ok(ScanEntry {
        subset,
        d,
        n,
        coherence: mu,
        etf: etf && nontrivial,
        welch_met: nontrivial && (mu - welch).abs() <= DEFAULT_ETF_TOL,
        orthoplex_met: nontrivial && met(orthoplex),
        levenstein_met: nontrivial && met(levenstein),
        field,
        unequal_classes,
    })
}

fn binomial_sum(r: usize, k: usize) -> u64 {
    let mut total = 0u64;
    let mut c = 1u64;
    for i in 1..=k.min(r) {
        c = c * (r - i + 1) as u64 / i as u64;
        total += c;
    }
    total
}

fn cmd_scan(args: &ScanArgs) -> Result<Value> {
    let dec = load_decomposition(&args.dec)?;
    let pool: Vec<usize> = match args.policy {
        SubsetPolicy::All => (0..dec.len()).collect(),
        SubsetPolicy::MultiplicityFreeOnly => (0..dec.len())
            .filter(|&j| dec.multiplicities[j] == 1)
            .collect(),
    };
    if pool.len() > MAX_CONSTITUENTS {
        return Err(Error::resource(format!(
            "{} constituents exceed the scan limit of {MAX_CONSTITUENTS}",
            pool.len()
        )));
    }
    let k = args.max_subset_size.unwrap_or(pool.len());
    let count = binomial_sum(pool.len(), k);
    if count > SUBSET_CAP {
        return Err(Error::resource(format!(
            "{count} subsets exceed the cap of {SUBSET_CAP}"
        )));
    }
    let masks: Vec<u32> = (1u32..1 << pool.len())
        .filter(|m| m.count_ones() as usize <= k)
        .collect();
    let mut entries = masks
        .par_iter()
        .map(|&m| {
            let subset: Vec<usize> = (0..pool.len())
                .filter(|&b| m >> b & 1 == 1)
                .map(|b| pool[b])
                .collect();
            scan_subset(&dec, subset, args.reduce).map(|e| (m, e))
        })
        .collect::<Result<Vec<_>>>()?;
    if args.etf_only {
        entries.retain(|(_, e)| e.etf);
    }
    entries.sort_by(|(ma, a), (mb, b)| {
        b.etf
            .cmp(&a.etf)
            .then(key(a.coherence).cmp(&key(b.coherence)))
            .then(ma.cmp(mb))
    });
    let etf_count = entries.iter().filter(|(_, e)| e.etf).count();
    Ok(json!({
        "ranks": dec.ranks,
        "n": dec.multiplicities,
        "m": dec.degrees,
        "trivial_index": dec.trivial_index,
        "reduced": args.reduce,
        "subsets_scanned": masks.len(),
        "etf_count": etf_count,
        "results": entries.into_iter().map(|(_, e)| e).collect::<Vec<_>>(),
    }))
}

fn key(x: f64) -> i64 {
    (x * 1e9).round() as i64
}

fn cmd_reduce(args: &ReduceArgs) -> Result<Value> {
    check_tol(args.reduce_tol)?;
    let gram = match &args.gram {
        Some(path) => load_gram(path)?,
        None => {
            if args.dec.input.group.is_none() && args.dec.input.fixture.is_none() {
                return Err(Error::input("give --gram, or a group with --subset"));
            }
            if args.subset.is_empty() {
                return Err(Error::input("--subset is required with a group input"));
            }
            let dec = load_decomposition(&args.dec)?;
            projection_from_subset(&dec, &args.subset)?
        }
    };
    let red = projective_reduce(&gram, args.reduce_tol)?;
    let reduced = normalized(&red.gram);
    let report = packing_report(&reduced, DEFAULT_ETF_TOL)?;
    Ok(json!({
        "original_n": gram.n(),
        "class_map": red.class_map,
        "representatives": red.representatives,
        "unequal_classes": red.unequal_classes,
        "report": report,
        "gram": gram_value(&reduced)?,
    }))
}

fn cmd_heisenberg(args: &HeisenbergArgs) -> Result<(Value, bool)> {
    check_tol(args.tol)?;
    let spec = AbelianGroupSpec::parse(&args.moduli)?;
    let gamma = GammaTwist::new(&spec, args.gamma)?;
    let parity = match args.parity {
        ParityArg::Even => Parity::Even,
        ParityArg::Odd => Parity::Odd,
    };
    let direct = if args.verify {
        Some(heis_etf_gram_direct(&spec, gamma, parity)?)
    } else {
        None
    };
    let exact = heis_etf_gram(&spec, gamma, parity);
    let float = exact.to_gram();
    let report = packing_report(&normalized(&float), args.tol)?;
    let mut out = json!({
        "moduli": spec.moduli(),
        "parity": format!("{:?}", args.parity).to_lowercase(),
        "gamma": args.gamma,
        "report": report,
    });
    out["gram"] = if args.float {
        gram_value(&float)?
    } else {
        serde_json::from_str(&exact.to_json()?)?
    };
    let mut ok = true;
    if let Some(direct) = direct {
        ok = closed_form_matches_direct(&exact, &direct);
        out["verified"] = json!(ok);
    }
    Ok((out, ok))
}

fn parse_moduli(text: &str) -> Result<Vec<u32>> {
    text.split(',')
        .map(|s| {
            s.trim()
                .parse::<u32>()
                .ok()
                .filter(|&m| m >= 1)
                .ok_or_else(|| Error::input(format!("bad modulus '{s}'")))
        })
        .collect()
}

fn cmd_harmonic(args: &HarmonicArgs) -> Result<Value> {
    check_tol(args.tol)?;
    let moduli = parse_moduli(&args.moduli)?;
    let subset: Vec<Vec<u32>> = args
        .subset
        .split(';')
        .map(|elem| {
            elem.split(',')
                .map(|s| {
                    s.trim()
                        .parse::<u32>()
                        .map_err(|_| Error::input(format!("bad subset component '{s}'")))
                })
                .collect()
        })
        .collect::<Result<_>>()?;
    let gram = harmonic_gram(&moduli, &subset)?;
    let (is_diff, lambda) = difference_set_check(&moduli, &subset)?;
    let report = packing_report(&normalized(&gram), args.tol)?;
    Ok(json!({
        "moduli": moduli,
        "subset": subset,
        "difference_set": is_diff,
        "lambda": lambda,
        "report": report,
        "gram": gram_value(&gram)?,
    }))
}

fn cmd_symmetry(args: &SymmetryArgs) -> Result<Value> {
    check_tol(args.tol)?;
    let gram = load_gram(&args.gram)?;
    let group = match &args.assume_colors {
        Some(path) => {
            let colors: Vec<Vec<u32>> = serde_json::from_str(&fs::read_to_string(path)?)?;
            let graph = ColoredDigraph::new(colors)?;
            if graph.n != gram.n() {
                return Err(Error::input(format!(
                    "color matrix has {} points, Gram matrix has {}",
                    graph.n,
                    gram.n()
                )));
            }
            symmetry_group_of_colors(&graph, args.node_cap)?
        }
        None => gram_symmetry_group(&gram, args.tol, args.node_cap)?,
    };
    let transitive = linepack::permgroup::is_transitive(&GroupAction::natural(group.clone()));
    let mut out = json!({
        "n": gram.n(),
        "order": group.order().to_string(),
        "generators": group.generators().iter().map(|g| g.to_string()).collect::<Vec<_>>(),
        "homogeneous": transitive,
    });
    if let Some(path) = &args.compare {
        let other = load_gram(path)?;
        let iso = if other.n() == gram.n() {
            gram_isomorphism(&gram, &other, args.tol, args.node_cap)?
        } else {
            None
        };
        out["isomorphism"] = json!(iso);
    }
    Ok(out)
}

fn close(a: f64, b: f64) -> bool {
    (a - b).abs() <= 1e-8
}

fn verify_agl_7x28() -> Result<Value> {
    let scheme = scheme_from_action(&fixtures::agl_lines())?;
    let dec = central_primitive_idempotents(&scheme, 0, DEFAULT_TOL)?;
    let j = dec
        .ranks
        .iter()
        .position(|&r| r == 7)
        .ok_or_else(|| Error::numeric("no rank-7 constituent"))?;
    let computed = projection_from_subset(&dec, &[j])?;
    let fig = fixtures::agl_7x28();
    let mut iso = gram_isomorphism(&computed, &fig, 1e-9, DEFAULT_NODE_CAP)?;
    let mut sign_flipped = false;
    if iso.is_none() {
        let flipped = GramMatrix::new(DMatrix::from_fn(28, 28, |x, y| {
            let z = computed.entries()[(x, y)];
            if x == y {
                z
            } else {
                -z
            }
        }));
        iso = gram_isomorphism(&flipped, &fig, 1e-9, DEFAULT_NODE_CAP)?;
        sign_flipped = iso.is_some();
    }
    let e = fig.entries();
    let entries_ok = (0..28)
        .all(|x| close(e[(x, x)].re, 0.25) && (0..x).all(|y| close(e[(x, y)].norm(), 1.0 / 12.0)));
    let pass = iso.is_some() && entries_ok && is_etf(&fig, DEFAULT_ETF_TOL);
    Ok(json!({
        "name": "agl-7x28",
        "pass": pass,
        "permutation_equivalent": iso.is_some(),
        "sign_flipped": sign_flipped,
        "entries": entries_ok,
    }))
}

fn verify_mub(name: &str, fig: GramMatrix, n: usize, mu: f64, orthoplex: bool) -> Result<Value> {
    let report = packing_report(&normalized(&fig), DEFAULT_ETF_TOL)?;
    let pass = fig.n() == n && close(report.coherence, mu) && (!orthoplex || report.orthoplex_met);
    Ok(json!({ "name": name, "pass": pass, "report": report }))
}

fn verify_hoggar() -> Result<Value> {
    let orbit = matrix_group_orbit_gram(
        &fixtures::three_qubit_generators(),
        &fixtures::zauner_vector(),
        1024,
        1e-9,
    )?;
    let red = projective_reduce(&orbit, DEFAULT_REDUCE_TOL)?;
    let report = packing_report(&normalized(&red.gram), DEFAULT_ETF_TOL)?;
    let pass = orbit.n() == 256
        && report.n == 64
        && report.d == 8
        && report.is_etf
        && close(report.coherence, 1.0 / 3.0);
    Ok(json!({
        "name": "hoggar-64x8",
        "pass": pass,
        "orbit_size": orbit.n(),
        "report": report,
    }))
}

fn cmd_verify() -> Result<(Value, bool)> {
    let figures = vec![
        verify_agl_7x28()?,
        verify_mub("mub-4x12", fixtures::mub_4x12(), 12, 0.5, true)?,
        verify_mub("mub-2x6", fixtures::mub_2x6(), 6, 0.5f64.sqrt(), true)?,
        verify_hoggar()?,
    ];
    let all = figures.iter().all(|f| f["pass"] == json!(true));
    Ok((json!({ "figures": figures, "all_pass": all }), all))
}
