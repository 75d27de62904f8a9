//! Command-line shell for the decomposition engine: class membership checks,
//! forcer listings with cutset certificates, certified balanced-separator
//! runs, tree decompositions, 2-join decomposition trees, brute-force
//! oracles, class-member generation, and the parameter calculator.

mod cert;
mod formats;

use cert::{CertificateDocument, RunMeta};
use clap::{Parser, Subcommand};
use formats::GraphDocument;
use oddsig_core::detect::{is_c4free_odd_signable, ClassCheck, Search, SearchBudget};
use oddsig_core::graph::{
    format_rational, parse_rational, rat, Graph, VertexSet, WeightAssignment,
};
use oddsig_core::oracle::{
    balanced_separator_exact, generate_class_member, sep_star_exact, treewidth_exact, GenStrategy,
    OracleBudget,
};
use oddsig_core::pipeline::{
    compute_balanced_separator, minimal_verified_d, params_for, reverify,
    verify_balanced_separator, DriverOptions, PipelineError,
};
use oddsig_core::separation::Separation;
use oddsig_core::twojoin::{build_2join_tree, find_2join};
use oddsig_core::wheels::{enumerate_forcers, forcer_cutset, ForcerFamily};
use serde::Serialize;
use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

// exit codes are a stable contract, documented in the README
const EXIT_OK: u8 = 0;
const EXIT_NEGATIVE: u8 = 1;
const EXIT_CAPPED: u8 = 2;
const EXIT_USAGE: u8 = 64;
const EXIT_DATA: u8 = 65;
const EXIT_INTERNAL: u8 = 70;

#[derive(Parser)]
#[command(
    name = "oddsig",
    version,
    about = "Decomposition engine for C4-free odd-signable graphs: detectors, forcers, certified balanced separators, and 2-join trees"
)]
struct Cli {
    /// key=value file mirroring long flags (flags win, then environment,
    /// then the file)
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Class membership with a forbidden-structure witness.
    Check {
        graph: PathBuf,
        /// Detector work budget in elementary steps.
        #[arg(long)]
        cap: Option<u64>,
    },
    /// List forcers with their guaranteed cutset certificates.
    Forcers {
        graph: PathBuf,
        #[arg(long, default_value = "all")]
        kind: String,
        #[arg(long)]
        cap: Option<u64>,
    },
    /// Run the balanced-separator pipeline and emit a certificate document.
    Separator {
        graph: PathBuf,
        /// Balance parameter in [1/2, 1), as p/q.
        #[arg(long)]
        c: Option<String>,
        /// Distance budget.
        #[arg(long)]
        d: Option<usize>,
        /// Derive (c, d) from the degree bound instead.
        #[arg(long)]
        paper_params: bool,
        /// Degree bound for --paper-params (defaults to the graph's).
        #[arg(long)]
        delta: Option<usize>,
        /// Also report the minimal d at which the separator verifies.
        #[arg(long)]
        tight: bool,
        /// Skip the class membership precheck.
        #[arg(long)]
        waive_class_check: bool,
        #[arg(long)]
        cap: Option<u64>,
    },
    /// Exact tree decomposition (oracle) or one derived from a laminar file.
    Treedec {
        graph: PathBuf,
        /// JSON list of separations [{a:[..],c:[..],b:[..]}] (one-based).
        #[arg(long)]
        from_laminar: Option<PathBuf>,
    },
    /// Find a 2-join, or build the full decomposition tree.
    Twojoin {
        graph: PathBuf,
        #[arg(long)]
        tree: bool,
        #[arg(long)]
        cap: Option<u64>,
    },
    /// Brute-force ground truth: treewidth | sep-star | balanced-separator.
    Oracle {
        task: String,
        graph: PathBuf,
        #[arg(long)]
        c: Option<String>,
        #[arg(long)]
        d: Option<usize>,
    },
    /// Generate a verified class member.
    Gen {
        #[arg(long)]
        delta: usize,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        seed: u64,
        #[arg(long, default_value = "constructive")]
        strategy: String,
        /// Emit JSON instead of the edge-list text format.
        #[arg(long)]
        json: bool,
    },
    /// Derived-constant table for a degree bound.
    Params {
        #[arg(long)]
        delta: usize,
        #[arg(long)]
        wmax: Option<String>,
        #[arg(long)]
        json: bool,
    },
}

struct Settings {
    detector_budget: u64,
    exact_treewidth_cap: usize,
    config: BTreeMap<String, String>,
}

fn load_settings(config: Option<&Path>) -> Result<Settings, String> {
    let mut map = BTreeMap::new();
    if let Some(path) = config {
        let text = std::fs::read_to_string(path)
            .map_err(|e| format!("cannot read config {}: {e}", path.display()))?;
        for line in text.lines() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (k, v) = line
                .split_once('=')
                .ok_or_else(|| format!("config line is not key=value: `{line}`"))?;
            map.insert(k.trim().to_string(), v.trim().to_string());
        }
    }
    let pick = |env_key: &str, cfg_key: &str| -> Option<String> {
        std::env::var(env_key)
            .ok()
            .or_else(|| map.get(cfg_key).cloned())
    };
    let detector_budget = match pick("ODDSIG_DETECTOR_BUDGET", "detector-budget") {
        Some(s) => s
            .parse()
            .map_err(|_| format!("bad detector budget `{s}`"))?,
        None => oddsig_core::detect::DEFAULT_BUDGET,
    };
    let exact_treewidth_cap = match pick("ODDSIG_EXACT_TW_CAP", "exact-tw-cap") {
        Some(s) => s.parse().map_err(|_| format!("bad treewidth cap `{s}`"))?,
        None => 13,
    };
    Ok(Settings {
        detector_budget,
        exact_treewidth_cap,
        config: map,
    })
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            // clap's help/version go to stdout with success
            use clap::error::ErrorKind::*;
            if matches!(e.kind(), DisplayHelp | DisplayVersion) {
                print!("{e}");
                return ExitCode::from(EXIT_OK);
            }
            eprint!("{e}");
            return ExitCode::from(EXIT_USAGE);
        }
    };
    let settings = match load_settings(cli.config.as_deref()) {
        Ok(s) => s,
        Err(msg) => {
            eprintln!("oddsig: {msg}");
            return ExitCode::from(EXIT_USAGE);
        }
    };
    match run(cli.cmd, &settings) {
        Ok(code) => ExitCode::from(code),
        Err((code, msg)) => {
            eprintln!("oddsig: {msg}");
            ExitCode::from(code)
        }
    }
}

type CmdResult = Result<u8, (u8, String)>;

fn read_graph(path: &Path) -> Result<(GraphDocument, Graph, WeightAssignment), (u8, String)> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| (EXIT_USAGE, format!("cannot read {}: {e}", path.display())))?;
    let doc = GraphDocument::parse(&text).map_err(|e| (EXIT_DATA, e.to_string()))?;
    let (g, w) = doc.realize().map_err(|e| (EXIT_DATA, e.to_string()))?;
    Ok((doc, g, w))
}

fn emit_line(line: &str) {
    use std::io::Write;
    let mut out = std::io::stdout().lock();
    if writeln!(out, "{line}").is_err() {
        // downstream closed the pipe; nothing left to say
        std::process::exit(0);
    }
}

fn print_json<T: Serialize>(value: &T) {
    emit_line(&serde_json::to_string_pretty(value).expect("output serializes"));
}

fn ones(set: &VertexSet) -> Vec<usize> {
    set.iter().map(|v| v + 1).collect()
}

fn run(cmd: Cmd, settings: &Settings) -> CmdResult {
    match cmd {
        Cmd::Check { graph, cap } => {
            let (_, g, _) = read_graph(&graph)?;
            let mut budget = SearchBudget::new(cap.unwrap_or(settings.detector_budget));
            #[derive(Serialize)]
            struct CheckOut {
                member: bool,
                capped: bool,
                #[serde(skip_serializing_if = "Option::is_none")]
                witness: Option<String>,
            }
            match is_c4free_odd_signable(&g, &g.vertices(), &mut budget) {
                ClassCheck::Member => {
                    print_json(&CheckOut {
                        member: true,
                        capped: false,
                        witness: None,
                    });
                    Ok(EXIT_OK)
                }
                ClassCheck::NotMember(v) => {
                    print_json(&CheckOut {
                        member: false,
                        capped: false,
                        witness: Some(v.describe()),
                    });
                    Ok(EXIT_NEGATIVE)
                }
                ClassCheck::Capped => {
                    print_json(&CheckOut {
                        member: false,
                        capped: true,
                        witness: None,
                    });
                    Ok(EXIT_CAPPED)
                }
            }
        }
        Cmd::Forcers { graph, kind, cap } => {
            let (_, g, _) = read_graph(&graph)?;
            let families: Vec<ForcerFamily> = match kind.as_str() {
                "strong" => vec![ForcerFamily::Strong],
                "twin" => vec![ForcerFamily::Twin],
                "all" => vec![ForcerFamily::Strong, ForcerFamily::Twin],
                other => return Err((EXIT_USAGE, format!("unknown forcer kind `{other}`"))),
            };
            let mut budget = SearchBudget::new(cap.unwrap_or(settings.detector_budget));
            let forcers = enumerate_forcers(&g, &g.vertices(), &families, &mut budget)
                .map_err(|_| (EXIT_CAPPED, "forcer enumeration capped".to_string()))?;
            #[derive(Serialize)]
            struct ForcerOut {
                kind: String,
                hole: Vec<usize>,
                center: Vec<usize>,
                cutset: Vec<usize>,
                side_a: Vec<usize>,
                side_b: Vec<usize>,
                certificate_verified: bool,
            }
            let mut out = Vec::new();
            for f in &forcers {
                let cert = forcer_cutset(&g, &g.vertices(), f)
                    .map_err(|e| (EXIT_INTERNAL, format!("cutset certificate failed: {e}")))?;
                out.push(ForcerOut {
                    kind: format!("{:?}", f.kind),
                    hole: f.hole.vertices().iter().map(|v| v + 1).collect(),
                    center: ones(&f.center),
                    cutset: ones(&cert.cutset),
                    side_a: ones(&cert.side_a),
                    side_b: ones(&cert.side_b),
                    certificate_verified: cert.verify(&g, &g.vertices()),
                });
            }
            print_json(&out);
            Ok(EXIT_OK)
        }
        Cmd::Separator {
            graph,
            c,
            d,
            paper_params,
            delta,
            tight,
            waive_class_check,
            cap,
        } => {
            let (doc, g, w) = read_graph(&graph)?;
            let delta = delta.unwrap_or_else(|| g.max_degree());
            let cfg = &settings.config;
            let (c, d) = if paper_params {
                let p = params_for(delta, Some(w.max_weight()))
                    .or_else(|_| params_for(delta, None))
                    .map_err(|e| (EXIT_DATA, e.to_string()))?;
                (p.c, p.d)
            } else {
                let c_str = c
                    .or_else(|| cfg.get("c").cloned())
                    .ok_or((EXIT_USAGE, "pass --c p/q or --paper-params".to_string()))?;
                let c = parse_rational(&c_str).map_err(|e| (EXIT_DATA, e.to_string()))?;
                if c < rat(1, 2) || c >= rat(1, 1) {
                    return Err((EXIT_DATA, "c must lie in [1/2, 1)".to_string()));
                }
                let d = d
                    .or_else(|| cfg.get("d").and_then(|s| s.parse().ok()))
                    .ok_or((EXIT_USAGE, "pass --d N or --paper-params".to_string()))?;
                (c, d)
            };
            let options = DriverOptions {
                check_class_membership: !waive_class_check,
                detector_budget: cap.unwrap_or(settings.detector_budget),
                exact_treewidth_cap: settings.exact_treewidth_cap,
                probe_small_separators: true,
            };
            match compute_balanced_separator(&g, &w, &c, d, &options) {
                Ok((certificate, trace)) => {
                    let verified = verify_balanced_separator(
                        &g,
                        &g.vertices(),
                        &w,
                        &certificate.separator,
                        &c,
                        d,
                    )
                    .ok;
                    let reverified = reverify(&g, &w, &c, d, &trace, &certificate);
                    let tight_minimal_d = if tight {
                        minimal_verified_d(&g, &g.vertices(), &w, &certificate.separator, &c, d)
                    } else {
                        None
                    };
                    let meta = RunMeta {
                        command: "separator".into(),
                        delta,
                        c: format_rational(&c),
                        d,
                        paper_params,
                        detector_budget: options.detector_budget,
                        exact_treewidth_cap: options.exact_treewidth_cap,
                        seed: None,
                        tight_minimal_d,
                    };
                    // echo the weights actually used, so the document
                    // re-verifies offline even when the input relied on the
                    // uniform default
                    let echo = if doc.weights.is_some() {
                        doc
                    } else {
                        doc.with_weights(&w)
                    };
                    let out = CertificateDocument::new(
                        meta,
                        echo,
                        trace,
                        certificate,
                        verified,
                        reverified,
                    );
                    print_json(&out);
                    if verified && reverified {
                        Ok(EXIT_OK)
                    } else {
                        Err((EXIT_INTERNAL, "certificate failed verification".into()))
                    }
                }
                Err(PipelineError::NotClassMember(witness)) => {
                    Err((EXIT_NEGATIVE, format!("not a class member: {witness}")))
                }
                Err(PipelineError::ClassCheckCapped) | Err(PipelineError::Capped) => {
                    Err((EXIT_CAPPED, "search budget exhausted".into()))
                }
                Err(e) => Err((EXIT_INTERNAL, e.to_string())),
            }
        }
        Cmd::Treedec {
            graph,
            from_laminar,
        } => {
            let (_, g, _) = read_graph(&graph)?;
            #[derive(Serialize)]
            struct TdOut {
                width: usize,
                bags: Vec<Vec<usize>>,
                edges: Vec<(usize, usize)>,
                exact: bool,
            }
            let (td, exact) = match from_laminar {
                None => {
                    let budget = OracleBudget {
                        treewidth_max_n: settings.exact_treewidth_cap,
                        ..OracleBudget::default()
                    };
                    match treewidth_exact(&g, &g.vertices(), &budget) {
                        Ok((_, td)) => (td, true),
                        Err(oddsig_core::oracle::OracleError::CapExceeded { .. }) => (
                            oddsig_core::pipeline::greedy_treedec(&g, &g.vertices()),
                            false,
                        ),
                        Err(e) => return Err((EXIT_INTERNAL, e.to_string())),
                    }
                }
                Some(path) => {
                    let text = std::fs::read_to_string(&path).map_err(|e| {
                        (EXIT_USAGE, format!("cannot read {}: {e}", path.display()))
                    })?;
                    #[derive(serde::Deserialize)]
                    struct RawSep {
                        a: Vec<usize>,
                        c: Vec<usize>,
                        b: Vec<usize>,
                    }
                    let raw: Vec<RawSep> = serde_json::from_str(&text)
                        .map_err(|e| (EXIT_DATA, format!("bad separation list: {e}")))?;
                    let mask = g.vertices();
                    let mut seps = Vec::new();
                    for r in &raw {
                        let set = |vs: &[usize]| -> Result<VertexSet, (u8, String)> {
                            let mut s = VertexSet::new(g.n());
                            for &v in vs {
                                if v == 0 || v > g.n() {
                                    return Err((EXIT_DATA, format!("vertex {v} out of range")));
                                }
                                s.insert(v - 1);
                            }
                            Ok(s)
                        };
                        let sep = Separation::new(&g, &mask, set(&r.a)?, set(&r.c)?, set(&r.b)?)
                            .map_err(|e| (EXIT_DATA, e.to_string()))?;
                        seps.push(sep);
                    }
                    let td = oddsig_core::laminar::build_tree_decomposition(&g, &mask, &seps)
                        .map_err(|e| (EXIT_DATA, e.to_string()))?;
                    (td, true)
                }
            };
            print_json(&TdOut {
                width: td.width(),
                bags: td.bags().iter().map(ones).collect(),
                edges: td.edges().to_vec(),
                exact,
            });
            Ok(EXIT_OK)
        }
        Cmd::Twojoin { graph, tree, cap } => {
            let (_, g, _) = read_graph(&graph)?;
            let mut budget = SearchBudget::new(cap.unwrap_or(settings.detector_budget));
            if tree {
                let t = build_2join_tree(&g, &mut budget).map_err(|e| match e {
                    oddsig_core::twojoin::TwoJoinError::Capped
                    | oddsig_core::twojoin::TwoJoinError::ClassCheckCapped => {
                        (EXIT_CAPPED, e.to_string())
                    }
                    oddsig_core::twojoin::TwoJoinError::NotClassMember(_)
                    | oddsig_core::twojoin::TwoJoinError::HasStarCutset(_) => {
                        (EXIT_NEGATIVE, e.to_string())
                    }
                    other => (EXIT_INTERNAL, other.to_string()),
                })?;
                print_json(&t);
                Ok(EXIT_OK)
            } else {
                #[derive(Serialize)]
                struct SplitOut {
                    found: bool,
                    #[serde(skip_serializing_if = "Option::is_none")]
                    x1: Option<Vec<usize>>,
                    #[serde(skip_serializing_if = "Option::is_none")]
                    x2: Option<Vec<usize>>,
                    #[serde(skip_serializing_if = "Option::is_none")]
                    a1: Option<Vec<usize>>,
                    #[serde(skip_serializing_if = "Option::is_none")]
                    b1: Option<Vec<usize>>,
                }
                match find_2join(&g, &g.vertices(), &[], &mut budget) {
                    Search::Found(s) => {
                        print_json(&SplitOut {
                            found: true,
                            x1: Some(ones(&s.x1)),
                            x2: Some(ones(&s.x2)),
                            a1: Some(ones(&s.a1)),
                            b1: Some(ones(&s.b1)),
                        });
                        Ok(EXIT_OK)
                    }
                    Search::Absent => {
                        print_json(&SplitOut {
                            found: false,
                            x1: None,
                            x2: None,
                            a1: None,
                            b1: None,
                        });
                        Ok(EXIT_NEGATIVE)
                    }
                    Search::Capped => Err((EXIT_CAPPED, "2-join search capped".into())),
                }
            }
        }
        Cmd::Oracle { task, graph, c, d } => {
            let (_, g, w) = read_graph(&graph)?;
            let c = match c {
                Some(s) => parse_rational(&s).map_err(|e| (EXIT_DATA, e.to_string()))?,
                None => rat(1, 2),
            };
            let mut budget = OracleBudget::default();
            match task.as_str() {
                "treewidth" => {
                    let (tw, _) = treewidth_exact(&g, &g.vertices(), &budget)
                        .map_err(|e| (EXIT_CAPPED, e.to_string()))?;
                    print_json(&serde_json::json!({ "treewidth": tw }));
                    Ok(EXIT_OK)
                }
                "sep-star" => {
                    let sep = sep_star_exact(&g, &g.vertices(), &c, &budget)
                        .map_err(|e| (EXIT_CAPPED, e.to_string()))?;
                    print_json(&serde_json::json!({ "sep_star": sep, "c": format_rational(&c) }));
                    Ok(EXIT_OK)
                }
                "balanced-separator" => {
                    let d = d.ok_or((EXIT_USAGE, "pass --d N".to_string()))?;
                    let y = balanced_separator_exact(&g, &g.vertices(), &w, &c, d, &mut budget)
                        .map_err(|e| (EXIT_CAPPED, e.to_string()))?;
                    match y {
                        Some(y) => {
                            print_json(&serde_json::json!({
                                "found": true,
                                "separator": ones(&y),
                            }));
                            Ok(EXIT_OK)
                        }
                        None => {
                            print_json(&serde_json::json!({ "found": false }));
                            Ok(EXIT_NEGATIVE)
                        }
                    }
                }
                other => Err((EXIT_USAGE, format!("unknown oracle task `{other}`"))),
            }
        }
        Cmd::Gen {
            delta,
            n,
            seed,
            strategy,
            json,
        } => {
            let strategy = match strategy.as_str() {
                "rejection" => GenStrategy::Rejection,
                "constructive" => GenStrategy::Constructive,
                other => return Err((EXIT_USAGE, format!("unknown strategy `{other}`"))),
            };
            let g = generate_class_member(delta, n, seed, strategy)
                .map_err(|e| (EXIT_INTERNAL, e.to_string()))?;
            let doc = GraphDocument::from_graph(&g);
            if json {
                emit_line(&doc.emit_json());
            } else {
                emit_line(&format!("c generated: delta={delta} n={n} seed={seed}"));
                for line in doc.emit_text().lines() {
                    emit_line(line);
                }
            }
            Ok(EXIT_OK)
        }
        Cmd::Params { delta, wmax, json } => {
            let wmax = match wmax {
                Some(s) => Some(parse_rational(&s).map_err(|e| (EXIT_DATA, e.to_string()))?),
                None => None,
            };
            let p = params_for(delta, wmax.as_ref()).map_err(|e| (EXIT_DATA, e.to_string()))?;
            if json {
                print_json(&p);
            } else {
                emit_line(&format!("delta                 = {}", p.delta));
                emit_line(&format!("f(2, delta)           = {}", p.f2_delta));
                emit_line(&format!("d lower bound         >= {}", p.d_min_main));
                emit_line(&format!("d lower bound (clean) >= {}", p.d_min_clean));
                emit_line(&format!("d used                = {}", p.d));
                emit_line(&format!("c                     = {}", format_rational(&p.c)));
                emit_line(&format!("wmax used             = {}", format_rational(&p.wmax_used)));
                emit_line(&format!("d-bounded capacity    = {}", p.capacity));
                emit_line(&format!("treewidth bound       = {}", format_rational(&p.tw_bound)));
                emit_line(&format!(
                    "star-cutset-free tw   <= {}",
                    oddsig_core::twojoin::width_bounds(delta as u64, 2, 3).star_cutset_free_tw
                ));
            }
            Ok(EXIT_OK)
        }
    }
}
