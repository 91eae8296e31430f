//! Command-line front end: generation, reduction, solving, and verification
//! with JSON reports. Exit codes: 0 success, 1 verification failure, 2 input
//! error.

use clap::{Parser, Subcommand, ValueEnum};
use gapforge::circuits::{graph_to_circuit, min_weight_satisfying, MonotoneCircuit};
use gapforge::colorcoding::{build_family, verify_family, FamilyVerdict, HashFamily};
use gapforge::frac::Frac;
use gapforge::gapsource::{
    attach_colorings, attach_cyclic_colorings, duplicate_side, planted_colored_yes, preprocess,
    sparse_colored_no, synth_no_instance, synth_yes_instance, GapBicliqueInstance,
};
use gapforge::graphs::{is_dominating, parse_graph, write_graph, ColoredBipartiteGraph};
use gapforge::manifest::digest_hex;
use gapforge::reduce_anchored::{build_anchored, derive_anchored_params, extract_anchored_witness};
use gapforge::reduce_product::{build_product, derive_product_params, extract_product_witness};
use gapforge::solvers::{
    exact_min_dominating_set, greedy_dominating_set, has_k_clique, SolverBudget,
};
use serde::Serialize;
use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

#[derive(Parser)]
#[command(
    name = "gapforge",
    about = "Gap-producing reductions to dominating set, with verification oracles",
    version
)]
struct Cli {
    /// Path for the JSON run report; stdout when omitted.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Worker cap. Accepted for forward compatibility; all stages currently
    /// run single-threaded.
    #[arg(long, global = true, default_value_t = 1)]
    jobs: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum DsMode {
    Exact,
    ExactBb,
    ExactEnum,
    Greedy,
}

#[derive(Clone, Copy, ValueEnum)]
enum SynthMode {
    Yes,
    No,
}

#[derive(Clone, Copy, ValueEnum)]
enum ColorStyle {
    Cyclic,
    Families,
}

#[derive(Clone, Copy, ValueEnum)]
enum CircuitMode {
    ToCircuit,
    MinWeight,
}

#[derive(Clone, Copy, ValueEnum)]
enum VerifyMode {
    Family,
    Instance,
    Domset,
}

#[derive(Subcommand)]
enum Command {
    /// Build a coloring family and write it as JSON.
    GenFamily {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        family_out: Option<PathBuf>,
    },
    /// Pad the clique parameter to 5 mod 6 with universal vertices.
    Preprocess {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        graph_out: Option<PathBuf>,
    },
    /// Generate a verified YES or NO gap instance, optionally duplicated
    /// and colored.
    Synth {
        #[arg(long, value_enum)]
        mode: SynthMode,
        #[arg(long)]
        s: usize,
        /// Required planted common-neighborhood size (YES mode).
        #[arg(long, default_value_t = 0)]
        d: usize,
        #[arg(long, default_value_t = 0)]
        left_pad: usize,
        #[arg(long, default_value_t = 0)]
        right_pad: usize,
        /// Sparse-side bound (NO mode).
        #[arg(long, default_value_t = 1)]
        no_threshold: usize,
        #[arg(long, default_value_t = 4)]
        a_size: usize,
        #[arg(long, default_value_t = 4)]
        b_size: usize,
        /// Edge probability for NO sampling, e.g. "0.3" or "1/3".
        #[arg(long, default_value = "1/3")]
        edge_prob: String,
        #[arg(long)]
        seed: Option<u64>,
        /// Left-side duplication factor applied before coloring.
        #[arg(long = "delta-dup", default_value_t = 1)]
        delta_dup: usize,
        /// Also emit a colored instance in this style.
        #[arg(long, value_enum)]
        colored: Option<ColorStyle>,
        #[arg(long)]
        a_colors: Option<usize>,
        #[arg(long)]
        b_colors: Option<usize>,
        #[arg(long)]
        instance_out: Option<PathBuf>,
        #[arg(long)]
        colored_out: Option<PathBuf>,
    },
    /// Build the anchored gap graph from a colored instance.
    Reduce32 {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        t: usize,
        #[arg(long, default_value_t = gapforge::reduce_anchored::DEFAULT_VERTEX_CAP)]
        cap_vertices: usize,
        #[arg(long)]
        graph_out: Option<PathBuf>,
        #[arg(long)]
        manifest_out: Option<PathBuf>,
    },
    /// Build the product gap graph from a colored instance.
    ReduceMain {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        c: usize,
        #[arg(long)]
        t: usize,
        #[arg(long, default_value_t = gapforge::reduce_product::DEFAULT_VERTEX_CAP)]
        cap_vertices: usize,
        #[arg(long)]
        graph_out: Option<PathBuf>,
        #[arg(long)]
        manifest_out: Option<PathBuf>,
    },
    /// Exact parameter derivations (big-integer arithmetic).
    Params {
        #[arg(long)]
        k: usize,
        /// Product-regime coordinate count; selects the product derivation.
        #[arg(long)]
        c: Option<usize>,
        /// Instance size for the anchored derivation.
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        epsilon: Option<String>,
        #[arg(long)]
        delta: Option<String>,
    },
    /// Minimum dominating set.
    SolveDs {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long, value_enum, default_value_t = DsMode::Exact)]
        mode: DsMode,
        #[arg(long)]
        max_nodes: Option<u64>,
    },
    /// Search for a clique of the given size.
    Clique {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        k: usize,
    },
    /// Translate a graph to a depth-2 monotone circuit, or solve one.
    Circuit {
        #[arg(long, value_enum)]
        mode: CircuitMode,
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        circuit_out: Option<PathBuf>,
        #[arg(long)]
        max_nodes: Option<u64>,
    },
    /// Verify a family, an instance promise, or a dominating set.
    Verify {
        #[arg(long, value_enum)]
        mode: VerifyMode,
        #[arg(long = "in")]
        input: PathBuf,
        /// Comma-separated vertex ids (domset mode).
        #[arg(long)]
        set: Option<String>,
    },
    /// End-to-end demo: matched YES/NO instances through a reduction, both
    /// solved exactly; fails unless the NO side is strictly harder.
    GapDemo {
        #[arg(long)]
        s: usize,
        #[arg(long)]
        d: usize,
        #[arg(long)]
        t: usize,
        #[arg(long)]
        seed: Option<u64>,
        /// Use the product reduction with this coordinate count.
        #[arg(long)]
        c: Option<usize>,
        #[arg(long, default_value_t = gapforge::reduce_anchored::DEFAULT_VERTEX_CAP)]
        cap_vertices: usize,
    },
}

#[derive(Debug)]
enum CliError {
    /// Malformed input, missing files, cap violations: exit 2.
    Input(String),
    /// A verification that was asked for failed: exit 1.
    Verify(String),
}

impl CliError {
    fn input(e: impl std::fmt::Display) -> Self {
        CliError::Input(e.to_string())
    }
}

#[derive(Serialize)]
struct GapSummary {
    ds_yes_bound: usize,
    ds_no_value: usize,
    ratio: f64,
    gamma_yes: usize,
}

#[derive(Serialize)]
struct RunReport {
    command: String,
    inputs_digest: String,
    parameters: serde_json::Value,
    outputs: BTreeMap<String, String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    gap_summary: Option<GapSummary>,
    timing: serde_json::Value,
}

fn resolve_seed(flag: Option<u64>) -> u64 {
    flag.or_else(|| {
        std::env::var("GAPFORGE_SEED")
            .ok()
            .and_then(|v| v.parse().ok())
    })
    .unwrap_or(1)
}

fn read_file(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path)
        .map_err(|e| CliError::Input(format!("cannot read {}: {e}", path.display())))
}

fn write_file(path: &Path, contents: &str) -> Result<(), CliError> {
    std::fs::write(path, contents)
        .map_err(|e| CliError::Input(format!("cannot write {}: {e}", path.display())))
}

fn parse_frac(text: &str) -> Result<Frac, CliError> {
    Frac::parse(text).map_err(CliError::input)
}

fn ds_result_json(r: &gapforge::graphs::DominatingSetResult) -> serde_json::Value {
    serde_json::json!({
        "size": r.size,
        "vertices": r.vertices.iter().collect::<Vec<_>>(),
        "optimal": r.optimal,
        "lower_bound": r.gamma_lower_bound,
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if cli.jobs == 0 {
        eprintln!("error: --jobs must be at least 1");
        return ExitCode::from(2);
    }
    let started = Instant::now();
    let out_path = cli.out.clone();
    match run(cli) {
        Ok(mut report) => {
            report.timing = serde_json::json!({
                "elapsed_ms": started.elapsed().as_millis() as u64
            });
            let text = serde_json::to_string_pretty(&report).expect("report serializes");
            match out_path {
                Some(path) => {
                    if let Err(e) = std::fs::write(&path, text) {
                        eprintln!("error: cannot write report {}: {e}", path.display());
                        return ExitCode::from(2);
                    }
                }
                None => println!("{text}"),
            }
            ExitCode::SUCCESS
        }
        Err(CliError::Verify(msg)) => {
            eprintln!("verification failure: {msg}");
            ExitCode::from(1)
        }
        Err(CliError::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn report(
    command: &str,
    inputs_digest: String,
    parameters: serde_json::Value,
    outputs: BTreeMap<String, String>,
) -> RunReport {
    RunReport {
        command: command.into(),
        inputs_digest,
        parameters,
        outputs,
        gap_summary: None,
        timing: serde_json::Value::Null,
    }
}

fn run(cli: Cli) -> Result<RunReport, CliError> {
    match cli.command {
        Command::GenFamily { n, k, family_out } => {
            let build = build_family(n, k).map_err(CliError::input)?;
            let path = family_out.unwrap_or_else(|| PathBuf::from(format!("family_{n}_{k}.json")));
            let json = build.family.to_json();
            write_file(&path, &json)?;
            let mut outputs = BTreeMap::new();
            outputs.insert("family".into(), path.display().to_string());
            Ok(report(
                "gen-family",
                digest_hex(json.as_bytes()),
                serde_json::json!({
                    "n": n,
                    "k": k,
                    "size": build.family.len(),
                    "size_bound": build.size_bound,
                    "bound_constant": build.bound_constant,
                    "verified": build.verified,
                    "extension_rounds": build.extension_rounds,
                }),
                outputs,
            ))
        }
        Command::Preprocess {
            input,
            k,
            graph_out,
        } => {
            let text = read_file(&input)?;
            let g = parse_graph(&text).map_err(CliError::input)?;
            let result = preprocess(&g, k);
            let path = graph_out.unwrap_or_else(|| PathBuf::from("preprocessed.gr"));
            write_file(&path, &write_graph(&result.graph))?;
            let mut outputs = BTreeMap::new();
            outputs.insert("graph".into(), path.display().to_string());
            Ok(report(
                "preprocess",
                digest_hex(text.as_bytes()),
                serde_json::json!({
                    "k": k,
                    "k_out": result.k_out,
                    "added": result.added,
                }),
                outputs,
            ))
        }
        Command::Synth {
            mode,
            s,
            d,
            left_pad,
            right_pad,
            no_threshold,
            a_size,
            b_size,
            edge_prob,
            seed,
            delta_dup,
            colored,
            a_colors,
            b_colors,
            instance_out,
            colored_out,
        } => {
            let seed = resolve_seed(seed);
            let inst = match mode {
                SynthMode::Yes => {
                    synth_yes_instance(s, d, left_pad, right_pad, seed).map_err(CliError::input)?
                }
                SynthMode::No => {
                    let p = parse_frac(&edge_prob)?;
                    synth_no_instance(s, no_threshold, a_size, b_size, p, seed)
                        .map_err(CliError::input)?
                }
            };
            let inst = if delta_dup > 1 {
                duplicate_side(&inst, delta_dup)
            } else {
                inst
            };
            let path =
                instance_out.unwrap_or_else(|| PathBuf::from(format!("instance_{seed}.json")));
            let json = inst.to_json();
            write_file(&path, &json)?;
            let mut outputs = BTreeMap::new();
            outputs.insert("instance".into(), path.display().to_string());
            if let Some(style) = colored {
                let ac = a_colors.unwrap_or(inst.s);
                let bc = b_colors.unwrap_or(if inst.d > 0 {
                    inst.d
                } else {
                    inst.graph.b_size()
                });
                let cbg = match style {
                    ColorStyle::Cyclic => {
                        attach_cyclic_colorings(&inst, ac, bc).map_err(CliError::input)?
                    }
                    ColorStyle::Families => {
                        attach_colorings(&inst, ac, bc)
                            .map_err(CliError::input)?
                            .cbg
                    }
                };
                let cpath = colored_out.unwrap_or_else(|| {
                    let mut p = path.clone();
                    p.set_extension("colored.json");
                    p
                });
                write_file(&cpath, &cbg.to_json())?;
                outputs.insert("colored".into(), cpath.display().to_string());
            }
            Ok(report(
                "synth",
                digest_hex(json.as_bytes()),
                serde_json::json!({
                    "s": inst.s,
                    "d": inst.d,
                    "no_threshold": inst.no_threshold,
                    "promise": match inst.promise {
                        gapforge::gapsource::Promise::Yes => "YES",
                        gapforge::gapsource::Promise::No => "NO",
                        gapforge::gapsource::Promise::Unknown => "UNKNOWN",
                    },
                    "seed": inst.seed,
                    "delta": inst.dup_factor,
                }),
                outputs,
            ))
        }
        Command::Reduce32 {
            input,
            t,
            cap_vertices,
            graph_out,
            manifest_out,
        } => {
            let text = read_file(&input)?;
            let cbg = ColoredBipartiteGraph::from_json(&text).map_err(CliError::input)?;
            let out = build_anchored(&cbg, t, cap_vertices).map_err(CliError::input)?;
            let gpath = graph_out.unwrap_or_else(|| PathBuf::from("anchored.gr"));
            let mpath = manifest_out.unwrap_or_else(|| {
                let mut p = gpath.clone();
                p.set_extension("manifest.json");
                p
            });
            let header = format!("c source-digest {}\n", out.manifest.source_digest);
            write_file(&gpath, &(header + &write_graph(&out.graph)))?;
            write_file(&mpath, &out.manifest.to_json())?;
            let mut outputs = BTreeMap::new();
            outputs.insert("graph".into(), gpath.display().to_string());
            outputs.insert("manifest".into(), mpath.display().to_string());
            Ok(report(
                "reduce32",
                digest_hex(text.as_bytes()),
                out.manifest.parameters.clone(),
                outputs,
            ))
        }
        Command::ReduceMain {
            input,
            c,
            t,
            cap_vertices,
            graph_out,
            manifest_out,
        } => {
            let text = read_file(&input)?;
            let cbg = ColoredBipartiteGraph::from_json(&text).map_err(CliError::input)?;
            let out = build_product(&cbg, c, t, cap_vertices).map_err(CliError::input)?;
            let gpath = graph_out.unwrap_or_else(|| PathBuf::from("product.gr"));
            let mpath = manifest_out.unwrap_or_else(|| {
                let mut p = gpath.clone();
                p.set_extension("manifest.json");
                p
            });
            let header = format!("c source-digest {}\n", out.manifest.source_digest);
            write_file(&gpath, &(header + &write_graph(&out.graph)))?;
            write_file(&mpath, &out.manifest.to_json())?;
            let mut outputs = BTreeMap::new();
            outputs.insert("graph".into(), gpath.display().to_string());
            outputs.insert("manifest".into(), mpath.display().to_string());
            Ok(report(
                "reduce-main",
                digest_hex(text.as_bytes()),
                out.manifest.parameters.clone(),
                outputs,
            ))
        }
        Command::Params {
            k,
            c,
            n,
            epsilon,
            delta,
        } => {
            let value: serde_json::Value = if let Some(c) = c {
                let params = derive_product_params(k, c).map_err(CliError::input)?;
                serde_json::from_str(&params.to_json()).expect("params json")
            } else {
                let n = n.ok_or_else(|| {
                    CliError::Input("anchored derivation needs --n, --epsilon, --delta".into())
                })?;
                let eps = parse_frac(&epsilon.ok_or_else(|| {
                    CliError::Input("anchored derivation needs --epsilon".into())
                })?)?;
                let del =
                    parse_frac(&delta.ok_or_else(|| {
                        CliError::Input("anchored derivation needs --delta".into())
                    })?)?;
                let params = derive_anchored_params(k, n, eps, del).map_err(CliError::input)?;
                serde_json::from_str(&params.to_json()).expect("params json")
            };
            Ok(report(
                "params",
                digest_hex(value.to_string().as_bytes()),
                value,
                BTreeMap::new(),
            ))
        }
        Command::SolveDs {
            input,
            mode,
            max_nodes,
        } => {
            let text = read_file(&input)?;
            let g = parse_graph(&text).map_err(CliError::input)?;
            let result = match mode {
                DsMode::Greedy => greedy_dominating_set(&g),
                DsMode::Exact | DsMode::ExactBb | DsMode::ExactEnum => {
                    let mut budget = match mode {
                        DsMode::ExactEnum => SolverBudget::exact_enum(),
                        _ => SolverBudget::exact_bb(),
                    };
                    if let Some(nodes) = max_nodes {
                        budget = budget.with_max_nodes(nodes);
                    }
                    exact_min_dominating_set(&g, budget).map_err(CliError::input)?
                }
            };
            Ok(report(
                "solve-ds",
                digest_hex(text.as_bytes()),
                ds_result_json(&result),
                BTreeMap::new(),
            ))
        }
        Command::Clique { input, k } => {
            let text = read_file(&input)?;
            let g = parse_graph(&text).map_err(CliError::input)?;
            let witness = has_k_clique(&g, k);
            Ok(report(
                "clique",
                digest_hex(text.as_bytes()),
                serde_json::json!({
                    "k": k,
                    "found": witness.is_some(),
                    "witness": witness.map(|w| w.into_iter().collect::<Vec<_>>()),
                }),
                BTreeMap::new(),
            ))
        }
        Command::Circuit {
            mode,
            input,
            circuit_out,
            max_nodes,
        } => {
            let text = read_file(&input)?;
            match mode {
                CircuitMode::ToCircuit => {
                    let g = parse_graph(&text).map_err(CliError::input)?;
                    let circuit = graph_to_circuit(&g);
                    let path = circuit_out.unwrap_or_else(|| PathBuf::from("circuit.txt"));
                    write_file(&path, &circuit.to_text())?;
                    let mut outputs = BTreeMap::new();
                    outputs.insert("circuit".into(), path.display().to_string());
                    Ok(report(
                        "circuit",
                        digest_hex(text.as_bytes()),
                        serde_json::json!({
                            "mode": "to-circuit",
                            "vars": circuit.num_vars(),
                            "clauses": circuit.clauses().len(),
                        }),
                        outputs,
                    ))
                }
                CircuitMode::MinWeight => {
                    let circuit = MonotoneCircuit::from_text(&text).map_err(CliError::input)?;
                    let mut budget = SolverBudget::exact_bb();
                    if let Some(nodes) = max_nodes {
                        budget = budget.with_max_nodes(nodes);
                    }
                    let result =
                        min_weight_satisfying(&circuit, budget).map_err(CliError::input)?;
                    Ok(report(
                        "circuit",
                        digest_hex(text.as_bytes()),
                        serde_json::json!({
                            "mode": "min-weight",
                            "weight": result.weight,
                            "vars": result.true_vars.iter().collect::<Vec<_>>(),
                            "optimal": result.optimal,
                            "lower_bound": result.weight_lower_bound,
                        }),
                        BTreeMap::new(),
                    ))
                }
            }
        }
        Command::Verify { mode, input, set } => {
            let text = read_file(&input)?;
            match mode {
                VerifyMode::Family => {
                    let family = HashFamily::from_json(&text).map_err(CliError::input)?;
                    match verify_family(&family).map_err(CliError::input)? {
                        FamilyVerdict::Ok => Ok(report(
                            "verify",
                            digest_hex(text.as_bytes()),
                            serde_json::json!({"mode": "family", "verdict": "ok"}),
                            BTreeMap::new(),
                        )),
                        FamilyVerdict::Counterexample(witness) => Err(CliError::Verify(format!(
                            "family misses subset {witness:?}"
                        ))),
                    }
                }
                VerifyMode::Instance => {
                    let inst = GapBicliqueInstance::from_json(&text).map_err(CliError::input)?;
                    match inst.verify_promise() {
                        Ok(check) => Ok(report(
                            "verify",
                            digest_hex(text.as_bytes()),
                            serde_json::json!({"mode": "instance", "verdict": format!("{check:?}")}),
                            BTreeMap::new(),
                        )),
                        Err(gapforge::gapsource::GapError::PromiseViolated(msg)) => {
                            Err(CliError::Verify(msg))
                        }
                        Err(other) => Err(CliError::input(other)),
                    }
                }
                VerifyMode::Domset => {
                    let g = parse_graph(&text).map_err(CliError::input)?;
                    let set = set.ok_or_else(|| {
                        CliError::Input("domset mode needs --set \"v1,v2,...\"".into())
                    })?;
                    let vertices: Result<std::collections::BTreeSet<u32>, _> = set
                        .split(',')
                        .filter(|part| !part.trim().is_empty())
                        .map(|part| part.trim().parse::<u32>())
                        .collect();
                    let vertices =
                        vertices.map_err(|e| CliError::Input(format!("bad vertex list: {e}")))?;
                    let ok = is_dominating(&g, &vertices).map_err(CliError::input)?;
                    if !ok {
                        return Err(CliError::Verify(format!(
                            "{vertices:?} does not dominate {}",
                            input.display()
                        )));
                    }
                    Ok(report(
                        "verify",
                        digest_hex(text.as_bytes()),
                        serde_json::json!({
                            "mode": "domset",
                            "verdict": "ok",
                            "size": vertices.len(),
                        }),
                        BTreeMap::new(),
                    ))
                }
            }
        }
        Command::GapDemo {
            s,
            d,
            t,
            seed,
            c,
            cap_vertices,
        } => {
            let seed = resolve_seed(seed);
            gap_demo(s, d, t, seed, c, cap_vertices)
        }
    }
}

/// Matched YES/NO pipeline: plant a rainbow biclique on one side, sample a
/// verified sparse instance on the other, push both through the chosen
/// reduction, and solve both exactly.
fn gap_demo(
    s: usize,
    d: usize,
    t: usize,
    seed: u64,
    c: Option<usize>,
    cap_vertices: usize,
) -> Result<RunReport, CliError> {
    if s == 0 || d == 0 || t == 0 {
        return Err(CliError::Input("need s, d, t >= 1".into()));
    }
    let a_size = s + 1;
    let b_size = d + 1;
    let (yes_cbg, left, right) =
        planted_colored_yes(s, d, a_size, b_size, seed).map_err(CliError::input)?;
    let no_cbg = sparse_colored_no(
        s,
        d,
        a_size,
        b_size,
        s.min(a_size),
        1,
        Frac::new(1, 4).unwrap(),
        seed,
    )
    .map_err(CliError::input)?;

    let (yes_graph, no_graph, yes_bound, construction) = match c {
        None => {
            let yes = build_anchored(&yes_cbg, t, cap_vertices).map_err(CliError::input)?;
            let no = build_anchored(&no_cbg, t, cap_vertices).map_err(CliError::input)?;
            let witness =
                extract_anchored_witness(&yes, &yes_cbg, &left, &right).map_err(CliError::input)?;
            (yes.graph, no.graph, witness.size, "anchored")
        }
        Some(c) => {
            let yes = build_product(&yes_cbg, c, t, cap_vertices).map_err(CliError::input)?;
            let no = build_product(&no_cbg, c, t, cap_vertices).map_err(CliError::input)?;
            let witness =
                extract_product_witness(&yes, &yes_cbg, &left, &right).map_err(CliError::input)?;
            (yes.graph, no.graph, witness.size, "product")
        }
    };
    let gamma_yes =
        exact_min_dominating_set(&yes_graph, SolverBudget::exact_bb()).map_err(CliError::input)?;
    let gamma_no =
        exact_min_dominating_set(&no_graph, SolverBudget::exact_bb()).map_err(CliError::input)?;
    if !gamma_yes.optimal || !gamma_no.optimal {
        return Err(CliError::Input(
            "exact solver budget exhausted; lower s/d/t".into(),
        ));
    }
    let summary = GapSummary {
        ds_yes_bound: yes_bound,
        ds_no_value: gamma_no.size,
        ratio: gamma_no.size as f64 / yes_bound as f64,
        gamma_yes: gamma_yes.size,
    };
    if gamma_no.size <= gamma_yes.size {
        return Err(CliError::Verify(format!(
            "no gap at seed {seed}: no-side {} <= yes-side {}",
            gamma_no.size, gamma_yes.size
        )));
    }
    let mut rep = report(
        "gap-demo",
        digest_hex(format!("{s},{d},{t},{seed},{c:?}").as_bytes()),
        serde_json::json!({
            "s": s,
            "d": d,
            "t": t,
            "seed": seed,
            "construction": construction,
            "yes_vertices": yes_graph.n(),
            "no_vertices": no_graph.n(),
        }),
        BTreeMap::new(),
    );
    rep.gap_summary = Some(summary);
    Ok(rep)
}
