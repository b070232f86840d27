//! Command-line surface for the library: root listings, weight sets of
//! highest weight modules, and exact identity checks.
//!
//! All results go to stdout as a single JSON document embedding a run
//! manifest (`--format text` renders the same data as tables); diagnostics
//! and timing go to stderr so identical inputs produce byte-identical
//! stdout. Exit codes: 0 success/verified, 1 usage, 2 failed precondition,
//! 3 identity mismatch.

use std::collections::BTreeSet;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use hwm_core::cartan::{positive_roots, Gcm, SubdiagramClass};
use hwm_core::characters::{
    bggl_euler_character, ch_parabolic_verma_alternating, ch_parabolic_verma_fixed_point,
    ch_parabolic_verma_induction, denominator_identity,
};
use hwm_core::hull::{hull_stabilizer, ray_decomposition, wt_via_hull};
use hwm_core::rational::{q_from_str, q_to_string, Q};
use hwm_core::weights::{
    integrability, lepowsky_complete, rank2_trivial_partial_sums, weyl_kac_weight_series,
    wt_highest_weight_module, wt_parabolic_verma, wt_simple_via_orbit, ModuleSpec, ModuleWeights,
    WeightSet,
};
use hwm_core::Error;

#[derive(Parser)]
#[command(
    name = "hwm",
    version,
    about = "Weights and characters of highest weight modules"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// List positive roots with multiplicities up to a height cutoff.
    Roots(RootsArgs),
    /// Compute truncated weight sets of a highest weight module.
    Weights(WeightsArgs),
    /// Verify a character or geometry identity exactly.
    Check(CheckArgs),
}

#[derive(Args)]
struct GcmInput {
    /// Built-in matrix name (A1, A2, B2, G2, A1xA1, affineA1, hyperbolic)
    /// or a path to a JSON file with the matrix rows.
    #[arg(long)]
    gcm: String,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Method {
    Slice,
    Orbit,
    Hull,
    Weylkac,
    All,
}

#[derive(Args)]
struct RootsArgs {
    #[command(flatten)]
    gcm: GcmInput,
    /// Height cutoff for the enumeration.
    #[arg(long, default_value_t = 8)]
    height: i64,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Args)]
struct WeightsArgs {
    #[command(flatten)]
    gcm: GcmInput,
    /// Highest weight: comma-separated coroot pairings, integers or "p/q".
    #[arg(long)]
    hw: String,
    /// Declared integrable directions: comma-separated indices, "" for none,
    /// or "all" for every admissible direction.
    #[arg(long, conflicts_with = "simple")]
    integrability: Option<String>,
    /// Shorthand for the simple module: integrability "all".
    #[arg(long)]
    simple: bool,
    /// Height cutoff for the weight band.
    #[arg(long, default_value_t = 8)]
    cutoff: i64,
    #[arg(long, value_enum, default_value_t = Method::Slice)]
    method: Method,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Args)]
struct CheckArgs {
    #[command(subcommand)]
    identity: CheckIdentity,
}

#[derive(Subcommand)]
enum CheckIdentity {
    /// Weyl denominator identity as exact Laurent polynomials (finite type).
    Denominator {
        #[command(flatten)]
        gcm: GcmInput,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Euler-characteristic expansion over minimal coset representatives
    /// against the directly induced parabolic character.
    Bggl {
        #[command(flatten)]
        gcm: GcmInput,
        #[arg(long)]
        hw: String,
        /// Integrability of the module being expanded.
        #[arg(long, default_value = "all")]
        integrability: String,
        /// The smaller parabolic to expand along (subset of the above).
        #[arg(long)]
        sub: String,
        #[arg(long, default_value_t = 8)]
        cutoff: i64,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Fixed-point character sum against the induced and alternating routes.
    FixedPoint {
        #[command(flatten)]
        gcm: GcmInput,
        #[arg(long)]
        hw: String,
        #[arg(long, default_value = "all")]
        integrability: String,
        #[arg(long, default_value_t = 8)]
        cutoff: i64,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Rank-2 trivial-module partial sums against the imaginary-root limit.
    Rank2Imaginary {
        #[command(flatten)]
        gcm: GcmInput,
        #[arg(long, default_value_t = 10)]
        cutoff: i64,
        /// Longest Weyl-group length included in the partial sums.
        #[arg(long, default_value_t = 14)]
        length: usize,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Hull stabilizer equals the declared integrable directions.
    HullStabilizer {
        #[command(flatten)]
        gcm: GcmInput,
        #[arg(long)]
        hw: String,
        #[arg(long, default_value = "all")]
        integrability: String,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
}

enum Failure {
    Usage(String),
    Precondition {
        manifest: Option<Value>,
        error: Error,
    },
}

fn fail(manifest: &Value, error: Error) -> Failure {
    Failure::Precondition {
        manifest: Some(manifest.clone()),
        error,
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = u8::from(e.use_stderr());
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let start = Instant::now();
    let outcome = run(cli);
    let code = match outcome {
        Ok((doc, format, code)) => {
            println!("{}", render(&doc, format));
            code
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("usage error: {msg}");
            1
        }
        Err(Failure::Precondition { manifest, error }) => {
            let kind = {
                let debug = format!("{error:?}");
                debug
                    .split(['(', '{', ' '])
                    .next()
                    .unwrap_or("Error")
                    .to_string()
            };
            let mut doc = json!({ "error": { "kind": kind, "message": error.to_string() } });
            if let Some(m) = manifest {
                doc["manifest"] = m;
            }
            println!(
                "{}",
                serde_json::to_string_pretty(&doc).expect("serializable")
            );
            eprintln!("precondition failed: {error}");
            2
        }
    };
    eprintln!("elapsed_ms: {}", start.elapsed().as_millis());
    ExitCode::from(code)
}

fn run(cli: Cli) -> Result<(Value, Format, u8), Failure> {
    match cli.command {
        Command::Roots(args) => cmd_roots(args),
        Command::Weights(args) => cmd_weights(args),
        Command::Check(args) => cmd_check(args.identity),
    }
}

// ---------------------------------------------------------------------------
// Input handling

fn fixture_matrix(name: &str) -> Option<Vec<Vec<i64>>> {
    let rows: &[&[i64]] = match name.to_ascii_lowercase().as_str() {
        "a1" => &[&[2]],
        "a2" => &[&[2, -1], &[-1, 2]],
        "b2" => &[&[2, -2], &[-1, 2]],
        "g2" => &[&[2, -1], &[-3, 2]],
        "a1xa1" => &[&[2, 0], &[0, 2]],
        "affinea1" => &[&[2, -2], &[-2, 2]],
        "hyperbolic" => &[&[2, -3], &[-3, 2]],
        _ => return None,
    };
    Some(rows.iter().map(|r| r.to_vec()).collect())
}

/// Resolves `--gcm` as a built-in name first, then as a file path. Files
/// hold either the bare matrix `[[2,-1],[-1,2]]` or `{"matrix": [...]}`.
fn load_matrix(input: &GcmInput) -> Result<Vec<Vec<i64>>, Failure> {
    if let Some(m) = fixture_matrix(&input.gcm) {
        return Ok(m);
    }
    let path = PathBuf::from(&input.gcm);
    let text = std::fs::read_to_string(&path).map_err(|e| {
        Failure::Usage(format!(
            "'{}' is not a built-in matrix and not a readable file: {e}",
            input.gcm
        ))
    })?;
    let value: Value = serde_json::from_str(&text)
        .map_err(|e| Failure::Usage(format!("{}: invalid JSON: {e}", path.display())))?;
    let matrix_value = match &value {
        Value::Array(_) => &value,
        Value::Object(map) => map.get("matrix").ok_or_else(|| {
            Failure::Usage(format!("{}: missing \"matrix\" field", path.display()))
        })?,
        _ => {
            return Err(Failure::Usage(format!(
                "{}: expected an array of rows",
                path.display()
            )))
        }
    };
    serde_json::from_value(matrix_value.clone()).map_err(|e| {
        Failure::Usage(format!(
            "{}: matrix rows must be integers: {e}",
            path.display()
        ))
    })
}

fn load_gcm(input: &GcmInput) -> Result<(Gcm, Value), Failure> {
    let matrix = load_matrix(input)?;
    let canonical = json!(matrix);
    let gcm = Gcm::new(matrix).map_err(|error| Failure::Precondition {
        manifest: None,
        error,
    })?;
    Ok((gcm, canonical))
}

fn parse_hw(s: &str) -> Result<Vec<Q>, Failure> {
    s.split(',')
        .map(|part| {
            q_from_str(part.trim()).map_err(|_| {
                Failure::Usage(format!("bad rational entry {:?} in --hw", part.trim()))
            })
        })
        .collect()
}

/// `""` means no directions, `"all"` means every admissible one, otherwise a
/// comma-separated index list.
fn parse_jset(s: &str, admissible: &[usize]) -> Result<Vec<usize>, Failure> {
    let s = s.trim();
    if s.is_empty() {
        return Ok(Vec::new());
    }
    if s.eq_ignore_ascii_case("all") {
        return Ok(admissible.to_vec());
    }
    s.split(',')
        .map(|part| {
            part.trim().parse::<usize>().map_err(|_| {
                Failure::Usage(format!("bad index {:?} in integrability set", part.trim()))
            })
        })
        .collect()
}

fn manifest(command: &str, matrix: &Value, cutoffs: Value) -> Value {
    let mut hasher = Sha256::new();
    hasher.update(matrix.to_string().as_bytes());
    let digest = format!("{:x}", hasher.finalize());
    json!({
        "command": command,
        "input_digest": digest,
        "cutoffs": cutoffs,
        "version": env!("CARGO_PKG_VERSION"),
    })
}

// ---------------------------------------------------------------------------
// Commands

fn cmd_roots(args: RootsArgs) -> Result<(Value, Format, u8), Failure> {
    let (gcm, matrix) = load_gcm(&args.gcm)?;
    let manifest = manifest("roots", &matrix, json!({ "height": args.height }));
    let datum = positive_roots(&gcm, args.height).map_err(|e| fail(&manifest, e))?;
    let roots: Vec<Value> = datum
        .iter_sorted()
        .into_iter()
        .map(|(beta, info)| json!({ "root": beta, "mult": info.mult, "real": info.real }))
        .collect();
    let doc = json!({
        "manifest": manifest,
        "rank": gcm.rank(),
        "count": roots.len(),
        "roots": roots,
    });
    Ok((doc, args.format, 0))
}

fn weight_set_value(set: &WeightSet) -> Value {
    json!({ "count": set.len(), "offsets": set.iter_sorted() })
}

fn cmd_weights(args: WeightsArgs) -> Result<(Value, Format, u8), Failure> {
    let (gcm, matrix) = load_gcm(&args.gcm)?;
    let manifest = manifest("weights", &matrix, json!({ "cutoff": args.cutoff }));
    let c = parse_hw(&args.hw)?;
    let admissible = integrability(&gcm, &c);
    let j_set = match (&args.integrability, args.simple) {
        (Some(s), _) => parse_jset(s, &admissible)?,
        (None, true) => admissible.clone(),
        (None, false) => {
            return Err(Failure::Usage("pass --simple or --integrability".into()));
        }
    };
    let spec = ModuleSpec::new(&gcm, c.clone(), &j_set).map_err(|e| fail(&manifest, e))?;
    let is_simple_spec = spec.j_set() == admissible.as_slice();

    // Determinacy of the weight set across all modules with this spec.
    let complete = lepowsky_complete(&gcm, &spec);
    let determinacy =
        match wt_highest_weight_module(&gcm, &spec, args.cutoff).map_err(|e| fail(&manifest, e))? {
            ModuleWeights::Determined { .. } => "determined",
            ModuleWeights::Undetermined { .. } => "undetermined: diagram not complete",
        };

    let mut routes: Vec<Value> = Vec::new();
    let mut computed: Vec<(&'static str, WeightSet)> = Vec::new();
    let skipped = |routes: &mut Vec<Value>, method: &str, why: &str| {
        routes.push(json!({ "method": method, "skipped": why }));
    };

    let all = args.method == Method::All;
    let want = |m: Method| all || args.method == m;

    if want(Method::Slice) {
        let set = wt_parabolic_verma(&gcm, &spec, args.cutoff).map_err(|e| fail(&manifest, e))?;
        routes.push(json!({ "method": "slice", "result": weight_set_value(&set) }));
        computed.push(("slice", set));
    }
    if want(Method::Orbit) {
        if !is_simple_spec {
            if !all {
                return Err(fail(
                    &manifest,
                    Error::BadInput(
                        "the orbit route computes the simple module; use --simple".into(),
                    ),
                ));
            }
            skipped(&mut routes, "orbit", "computes the simple module only");
        } else {
            match wt_simple_via_orbit(&gcm, &c, args.cutoff) {
                Ok(set) => {
                    routes.push(json!({ "method": "orbit", "result": weight_set_value(&set) }));
                    computed.push(("orbit", set));
                }
                Err(Error::InfiniteStabilizer) if all => {
                    skipped(&mut routes, "orbit", "infinite stabilizer")
                }
                Err(e) => return Err(fail(&manifest, e)),
            }
        }
    }
    if want(Method::Hull) {
        let finite = gcm
            .classify_subdiagram(spec.j_set())
            .map_err(|e| fail(&manifest, e))?
            == SubdiagramClass::Finite;
        if !finite {
            if !all {
                return Err(fail(&manifest, Error::RequiresFiniteType));
            }
            skipped(&mut routes, "hull", "presentation would be truncated");
        } else {
            let set = wt_via_hull(&gcm, &spec, args.cutoff).map_err(|e| fail(&manifest, e))?;
            routes.push(json!({ "method": "hull", "result": weight_set_value(&set) }));
            computed.push(("hull", set));
        }
    }
    if want(Method::Weylkac) {
        if !is_simple_spec {
            if !all {
                return Err(fail(
                    &manifest,
                    Error::BadInput(
                        "the series route computes the simple module; use --simple".into(),
                    ),
                ));
            }
            skipped(&mut routes, "weylkac", "computes the simple module only");
        } else {
            match weyl_kac_weight_series(&gcm, &c, args.cutoff) {
                Ok(series) => {
                    let mut set = WeightSet::new(c.clone(), args.cutoff);
                    for offset in series.support() {
                        set.insert(offset);
                    }
                    routes.push(json!({ "method": "weylkac", "result": weight_set_value(&set) }));
                    computed.push(("weylkac", set));
                }
                Err(Error::InfiniteStabilizer) if all => {
                    skipped(&mut routes, "weylkac", "infinite stabilizer")
                }
                Err(e) => return Err(fail(&manifest, e)),
            }
        }
    }

    let mut doc = json!({
        "manifest": manifest,
        "highest_weight": c.iter().map(q_to_string).collect::<Vec<_>>(),
        "admissible": admissible,
        "integrability": spec.j_set(),
        "complete": complete,
        "determinacy": determinacy,
        "cutoff": args.cutoff,
        "routes": routes,
    });

    let mut code = 0u8;
    if all {
        let (base_name, base) = &computed[0];
        let mut agreement = true;
        for (name, set) in &computed[1..] {
            if set.offsets != base.offsets {
                agreement = false;
                let diff: Vec<&Vec<i64>> =
                    base.offsets.symmetric_difference(&set.offsets).collect();
                doc["disagreement"] = json!({
                    "between": [base_name, name],
                    "symmetric_difference": diff,
                });
                break;
            }
        }
        doc["agreement"] = json!(agreement);
        if !agreement {
            code = 3;
        }
    }
    Ok((doc, args.format, code))
}

fn series_terms(series: &hwm_core::FormalSeries) -> Vec<Value> {
    series
        .iter_sorted()
        .into_iter()
        .map(|(offset, coeff)| json!({ "offset": offset, "coeff": coeff }))
        .collect()
}

fn series_difference(a: &hwm_core::FormalSeries, b: &hwm_core::FormalSeries) -> Vec<Value> {
    let keys: BTreeSet<Vec<i64>> = a.support().into_iter().chain(b.support()).collect();
    keys.into_iter()
        .filter(|k| a.coeff(k) != b.coeff(k))
        .map(|k| json!({ "offset": &k, "lhs": a.coeff(&k), "rhs": b.coeff(&k) }))
        .collect()
}

fn cmd_check(identity: CheckIdentity) -> Result<(Value, Format, u8), Failure> {
    match identity {
        CheckIdentity::Denominator { gcm, format } => {
            let (gcm, matrix) = load_gcm(&gcm)?;
            let manifest = manifest("check denominator", &matrix, json!({}));
            let report = denominator_identity(&gcm).map_err(|e| fail(&manifest, e))?;
            let verified = report.matches;
            let doc = json!({
                "manifest": manifest,
                "identity": "denominator",
                "verified": verified,
                "group_order": report.group_order,
                "lhs_terms": report.lhs.iter_sorted().len(),
                "rhs_terms": report.rhs.iter_sorted().len(),
            });
            Ok((doc, format, if verified { 0 } else { 3 }))
        }
        CheckIdentity::Bggl {
            gcm,
            hw,
            integrability: j,
            sub,
            cutoff,
            format,
        } => {
            let (gcm, matrix) = load_gcm(&gcm)?;
            let manifest = manifest("check bggl", &matrix, json!({ "cutoff": cutoff }));
            let c = parse_hw(&hw)?;
            let admissible = integrability(&gcm, &c);
            let j_set = parse_jset(&j, &admissible)?;
            let j_sub = parse_jset(&sub, &admissible)?;
            let spec = ModuleSpec::new(&gcm, c, &j_set).map_err(|e| fail(&manifest, e))?;
            let direct = ch_parabolic_verma_induction(&gcm, &spec, cutoff)
                .map_err(|e| fail(&manifest, e))?;
            let euler = bggl_euler_character(&gcm, &spec, &j_sub, cutoff)
                .map_err(|e| fail(&manifest, e))?;
            let verified = direct == euler;
            let mut doc = json!({
                "manifest": manifest,
                "identity": "bggl",
                "verified": verified,
                "integrability": spec.j_set(),
                "sub": j_sub,
                "terms": direct.len(),
            });
            if !verified {
                doc["differences"] = json!(series_difference(&direct, &euler));
            }
            Ok((doc, format, if verified { 0 } else { 3 }))
        }
        CheckIdentity::FixedPoint {
            gcm,
            hw,
            integrability: j,
            cutoff,
            format,
        } => {
            let (gcm, matrix) = load_gcm(&gcm)?;
            let manifest = manifest("check fixed-point", &matrix, json!({ "cutoff": cutoff }));
            let c = parse_hw(&hw)?;
            let admissible = integrability(&gcm, &c);
            let j_set = parse_jset(&j, &admissible)?;
            let spec = ModuleSpec::new(&gcm, c, &j_set).map_err(|e| fail(&manifest, e))?;
            let induced = ch_parabolic_verma_induction(&gcm, &spec, cutoff)
                .map_err(|e| fail(&manifest, e))?;
            let alternating = ch_parabolic_verma_alternating(&gcm, &spec, cutoff)
                .map_err(|e| fail(&manifest, e))?;
            let fixed_point = ch_parabolic_verma_fixed_point(&gcm, &spec, cutoff)
                .map_err(|e| fail(&manifest, e))?;
            let verified = induced == alternating && induced == fixed_point;
            let mut doc = json!({
                "manifest": manifest,
                "identity": "fixed-point",
                "verified": verified,
                "integrability": spec.j_set(),
                "terms": induced.len(),
            });
            if !verified {
                doc["differences"] = json!({
                    "alternating": series_difference(&induced, &alternating),
                    "fixed_point": series_difference(&induced, &fixed_point),
                });
            }
            Ok((doc, format, if verified { 0 } else { 3 }))
        }
        CheckIdentity::Rank2Imaginary {
            gcm,
            cutoff,
            length,
            format,
        } => {
            let (gcm, matrix) = load_gcm(&gcm)?;
            let manifest = manifest(
                "check rank2-imaginary",
                &matrix,
                json!({ "cutoff": cutoff, "length": length }),
            );
            let report =
                rank2_trivial_partial_sums(&gcm, cutoff, length).map_err(|e| fail(&manifest, e))?;
            let verified = report.matches;
            let stabilization: Vec<Value> = report
                .stabilized_at
                .iter()
                .map(|(offset, len)| json!({ "offset": offset, "length": len }))
                .collect();
            let doc = json!({
                "manifest": manifest,
                "identity": "rank2-imaginary",
                "verified": verified,
                "limit": series_terms(&report.expected),
                "stabilization": stabilization,
            });
            Ok((doc, format, if verified { 0 } else { 3 }))
        }
        CheckIdentity::HullStabilizer {
            gcm,
            hw,
            integrability: j,
            format,
        } => {
            let (gcm, matrix) = load_gcm(&gcm)?;
            let manifest = manifest("check hull-stabilizer", &matrix, json!({}));
            let c = parse_hw(&hw)?;
            let admissible = integrability(&gcm, &c);
            let j_set = parse_jset(&j, &admissible)?;
            let spec = ModuleSpec::new(&gcm, c, &j_set).map_err(|e| fail(&manifest, e))?;
            if gcm
                .classify_subdiagram(spec.j_set())
                .map_err(|e| fail(&manifest, e))?
                != SubdiagramClass::Finite
            {
                return Err(fail(&manifest, Error::RequiresFiniteType));
            }
            let hull = ray_decomposition(&gcm, &spec, 0).map_err(|e| fail(&manifest, e))?;
            let stabilizer = hull_stabilizer(&gcm, &hull);
            let verified = stabilizer == spec.j_set();
            let doc = json!({
                "manifest": manifest,
                "identity": "hull-stabilizer",
                "verified": verified,
                "integrability": spec.j_set(),
                "stabilizer": stabilizer,
                "vertices": hull.vertices,
                "rays": hull.rays,
            });
            Ok((doc, format, if verified { 0 } else { 3 }))
        }
    }
}

// ---------------------------------------------------------------------------
// Rendering

fn render(doc: &Value, format: Format) -> String {
    match format {
        Format::Json => serde_json::to_string_pretty(doc).expect("serializable"),
        Format::Text => render_text(doc),
    }
}

fn int_row(v: &Value) -> String {
    let parts: Vec<String> = v
        .as_array()
        .map(|a| a.iter().map(|x| x.to_string()).collect())
        .unwrap_or_default();
    parts.join(" ")
}

fn render_text(doc: &Value) -> String {
    let mut out = String::new();
    if let Some(roots) = doc.get("roots").and_then(Value::as_array) {
        out.push_str(&format!("positive roots: {}\n", roots.len()));
        out.push_str("root\tmult\treal\n");
        for r in roots {
            out.push_str(&format!(
                "{}\t{}\t{}\n",
                int_row(&r["root"]),
                r["mult"],
                r["real"]
            ));
        }
        return out;
    }
    if let Some(routes) = doc.get("routes").and_then(Value::as_array) {
        let hw: Vec<String> = doc["highest_weight"]
            .as_array()
            .map(|a| {
                a.iter()
                    .map(|x| x.as_str().unwrap_or_default().to_string())
                    .collect()
            })
            .unwrap_or_default();
        out.push_str(&format!("highest weight: {}\n", hw.join(", ")));
        out.push_str(&format!(
            "integrability: [{}]  admissible: [{}]\n",
            int_row(&doc["integrability"]),
            int_row(&doc["admissible"])
        ));
        out.push_str(&format!(
            "determinacy: {}\n",
            doc["determinacy"].as_str().unwrap_or("?")
        ));
        out.push_str(&format!("cutoff: {}\n", doc["cutoff"]));
        for route in routes {
            let method = route["method"].as_str().unwrap_or("?");
            if let Some(why) = route.get("skipped") {
                out.push_str(&format!(
                    "route {method}: skipped ({})\n",
                    why.as_str().unwrap_or("?")
                ));
                continue;
            }
            let result = &route["result"];
            out.push_str(&format!("route {method}: {} offsets\n", result["count"]));
            if let Some(offsets) = result["offsets"].as_array() {
                for m in offsets {
                    out.push_str(&format!("  {}\n", int_row(m)));
                }
            }
        }
        if let Some(agreement) = doc.get("agreement") {
            out.push_str(&format!("agreement: {agreement}\n"));
        }
        return out;
    }
    if let Some(identity) = doc.get("identity").and_then(Value::as_str) {
        let verified = doc["verified"].as_bool().unwrap_or(false);
        out.push_str(&format!(
            "identity {identity}: {}\n",
            if verified { "verified" } else { "MISMATCH" }
        ));
        if let Some(order) = doc.get("group_order") {
            out.push_str(&format!("group order: {order}\n"));
        }
        if let Some(stab) = doc.get("stabilization").and_then(Value::as_array) {
            out.push_str("offset\tstable from length\n");
            for row in stab {
                out.push_str(&format!("{}\t{}\n", int_row(&row["offset"]), row["length"]));
            }
        }
        if let Some(s) = doc.get("stabilizer") {
            out.push_str(&format!("stabilizer: [{}]\n", int_row(s)));
        }
        return out;
    }
    serde_json::to_string_pretty(doc).expect("serializable")
}
