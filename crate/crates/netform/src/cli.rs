//! Command-line surface.
//!
//! Every command prints one JSON report (or CSV with `--csv`). Values come
//! from defaults, then the `--config` file, then flags.

use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use netform_core::cost::CostModel;
use netform_core::cost::{bare_node_cost, node_cost, social_cost};
use netform_core::dynamics::{classify_structure, simulate, SimulationResult, TurnLog};
use netform_core::motifs::{count_motif, MotifKind};
use netform_core::stability::{
    is_pairwise_stable, network_from_index, stable_networks, ViolationKind,
};
use netform_core::topology::{core_disjoint_ratio, mean_major_minor_cycle};
use netform_core::{DisjointnessMode, EdgeChange, GameParams, NodeId, PlayerType};
use serde_json::{json, Map, Value};

use crate::config::RunConfig;
use crate::error::{Error, Result};
use crate::io::{self, Kind, LabeledNetwork};
use crate::parallel;
use crate::report::{self, Report};

#[derive(Debug, Parser)]
#[command(
    name = "netform",
    version,
    about = "Reliability-aware network formation: costs, stability, dynamics, motifs"
)]
pub struct Cli {
    /// Base random seed.
    #[arg(long, global = true, env = "NETFORM_SEED")]
    pub seed: Option<u64>,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Node and social costs of a network.
    Cost {
        #[command(flatten)]
        net: NetworkArgs,
        #[command(flatten)]
        params: ParamArgs,
        #[arg(long)]
        csv: bool,
    },
    /// Pairwise stability and equilibrium prices.
    #[command(subcommand)]
    Stable(StableCommand),
    /// Run the turn-based dynamics of a run config.
    Simulate {
        #[command(flatten)]
        params: ParamArgs,
        /// Write turn logs as JSON lines.
        #[arg(long)]
        log: Option<PathBuf>,
    },
    /// Motif counts and configuration-model significance.
    #[command(subcommand)]
    Motifs(MotifCommand),
    /// Topology metrics of one snapshot or a directory of snapshots.
    #[command(subcommand)]
    Topology(TopologyCommand),
}

#[derive(Debug, Subcommand)]
pub enum StableCommand {
    /// Stability report of a network.
    Check {
        #[command(flatten)]
        net: NetworkArgs,
        #[command(flatten)]
        params: ParamArgs,
    },
    /// Every stable network on a small player set.
    Enumerate {
        #[command(flatten)]
        players: PlayerArgs,
        #[command(flatten)]
        params: ParamArgs,
        /// Use the single-path cost model.
        #[arg(long)]
        bare: bool,
    },
    /// Prices of stability, anarchy and reliability.
    Prices {
        #[command(flatten)]
        players: PlayerArgs,
        #[command(flatten)]
        params: ParamArgs,
    },
}

#[derive(Debug, Subcommand)]
pub enum MotifCommand {
    /// Occurrences of a motif in a network.
    Count {
        #[command(flatten)]
        net: NetworkArgs,
        #[command(flatten)]
        motif: MotifArgs,
        #[arg(long)]
        csv: bool,
    },
    /// Observed count against configuration-model draws.
    Null {
        #[command(flatten)]
        net: NetworkArgs,
        #[command(flatten)]
        motif: MotifArgs,
        /// Configuration-model draws.
        #[arg(long, default_value_t = 100)]
        samples: usize,
        #[arg(long)]
        csv: bool,
    },
}

#[derive(Debug, Subcommand)]
pub enum TopologyCommand {
    /// Mean shortest cycle through a major and a minor player.
    Cycles {
        #[command(flatten)]
        src: SeriesArgs,
        /// Sample this many major-minor pairs instead of all.
        #[arg(long)]
        samples: Option<usize>,
        #[arg(long)]
        csv: bool,
    },
    /// Disjoint paths to the major core over minor degree.
    CoreRatio {
        #[command(flatten)]
        src: SeriesArgs,
        #[arg(long, value_enum, default_value_t = ModeArg::Node)]
        mode: ModeArg,
        #[arg(long)]
        csv: bool,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Node,
    Link,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MotifArg {
    DoubleStar,
    EntangledCycle,
}

#[derive(Debug, Args)]
pub struct MotifArgs {
    #[arg(long, value_enum)]
    pub kind: MotifArg,
    /// `m` for double stars (default 1), `l` for entangled cycles
    /// (default 3).
    #[arg(long)]
    pub size: Option<usize>,
}

impl MotifArgs {
    fn kind(&self) -> MotifKind {
        match self.kind {
            MotifArg::DoubleStar => MotifKind::DoubleStar(self.size.unwrap_or(1)),
            MotifArg::EntangledCycle => MotifKind::EntangledCycle(self.size.unwrap_or(3)),
        }
    }
}

#[derive(Debug, Args)]
pub struct ParamArgs {
    /// Run config JSON file.
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Parameter overrides as a JSON object, e.g. '{"A": 4, "c_a": "3/2"}'.
    #[arg(long)]
    pub params: Option<String>,
}

#[derive(Debug, Args)]
pub struct PlayerArgs {
    #[arg(long)]
    pub majors: usize,
    #[arg(long)]
    pub minors: usize,
}

#[derive(Debug, Args)]
pub struct NetworkArgs {
    /// Network JSON with typed nodes.
    #[arg(long, conflicts_with = "edges")]
    pub network: Option<PathBuf>,
    /// Edge list; player types come from `--ranking`.
    #[arg(long)]
    pub edges: Option<PathBuf>,
    /// Ranking file, best first, one id per line.
    #[arg(long, requires = "edges")]
    pub ranking: Option<PathBuf>,
    /// Ranked ids that become major players.
    #[arg(long, default_value_t = 100)]
    pub top_k: usize,
}

#[derive(Debug, Args)]
pub struct SeriesArgs {
    #[command(flatten)]
    pub net: NetworkArgs,
    /// Directory of dated edge-list snapshots.
    #[arg(long, conflicts_with_all = ["network", "edges"], requires = "ranking")]
    pub dir: Option<PathBuf>,
}

/// Effective run config: defaults, then the file, then `--params`.
fn load_config(args: &ParamArgs) -> Result<RunConfig> {
    let mut config = match &args.config {
        Some(path) => RunConfig::load(path)?,
        None => RunConfig::default(),
    };
    if let Some(text) = &args.params {
        let overrides: Value = serde_json::from_str(text)?;
        let Value::Object(overrides) = overrides else {
            return Err(Error::input("--params must be a JSON object"));
        };
        let mut merged = serde_json::to_value(&config.params)?;
        let target = merged
            .as_object_mut()
            .expect("params serialize to an object");
        target.extend(overrides);
        config.params = serde_json::from_value(merged)?;
    }
    Ok(config)
}

/// A loaded network plus what the loader reported.
struct Loaded {
    label: String,
    graph: LabeledNetwork,
    notes: Value,
}

fn load_edges(path: &Path, ranking: Option<&[u64]>, top_k: usize) -> Result<Loaded> {
    let snap = io::parse_edge_list(path)?;
    let mut notes = json!({
        "source": snap.source_path,
        "self_loops_dropped": snap.self_loops_dropped,
        "duplicates_collapsed": snap.duplicates_collapsed,
    });
    let graph = match ranking {
        Some(ranking) => {
            let c = io::classify_with_ranking(&snap, ranking, top_k)?;
            notes["ranked_absent"] = json!(c.ranked_absent);
            if c.short_ranking {
                notes["warning"] = json!(format!("ranking has fewer than {top_k} entries"));
            }
            c.graph
        }
        None => snap.graph,
    };
    Ok(Loaded {
        label: snap.label,
        graph,
        notes,
    })
}

fn load_network(args: &NetworkArgs) -> Result<Loaded> {
    match (&args.network, &args.edges) {
        (Some(path), _) => Ok(Loaded {
            label: path
                .file_stem()
                .map(|s| s.to_string_lossy().into_owned())
                .unwrap_or_default(),
            graph: io::read_network_file(path)?,
            notes: json!({"source": path.display().to_string()}),
        }),
        (None, Some(path)) => {
            let ranking = args.ranking.as_ref().map(io::read_ranking).transpose()?;
            load_edges(path, ranking.as_deref(), args.top_k)
        }
        (None, None) => Err(Error::input("give --network or --edges")),
    }
}

fn load_series(args: &SeriesArgs) -> Result<Vec<Loaded>> {
    match &args.dir {
        Some(dir) => {
            let ranking =
                io::read_ranking(args.net.ranking.as_ref().expect("clap requires --ranking"))?;
            io::snapshot_files(dir)?
                .iter()
                .map(|f| load_edges(f, Some(&ranking), args.net.top_k))
                .collect()
        }
        None => Ok(vec![load_network(&args.net)?]),
    }
}

fn split(g: &LabeledNetwork) -> Result<(Vec<NodeId>, Vec<NodeId>)> {
    let majors: Vec<NodeId> = g.network.majors().collect();
    let minors: Vec<NodeId> = g.network.minors().collect();
    if majors.is_empty() {
        return Err(Error::input(
            "no major players; pass --ranking or a typed --network",
        ));
    }
    if minors.is_empty() {
        return Err(Error::input("no minor players"));
    }
    Ok((majors, minors))
}

fn kind_name(k: PlayerType) -> &'static str {
    match Kind::from(k) {
        Kind::Major => "major",
        Kind::Minor => "minor",
    }
}

/// What a command produced: the report text and its format.
pub struct Output {
    pub text: String,
}

fn emit(command: &str, config: Value, results: Value) -> Output {
    Output {
        text: Report::new(command, config, results).to_json(),
    }
}

fn config_echo(config: &RunConfig, inputs: Value) -> Result<Value> {
    Ok(json!({"run": serde_json::to_value(config)?, "inputs": inputs}))
}

pub fn run(cli: &Cli) -> Result<Output> {
    let seed = cli.seed.unwrap_or(0);
    let output = match &cli.command {
        Command::Cost { net, params, csv } => cost_cmd(net, params, *csv)?,
        Command::Stable(cmd) => stable_cmd(cmd)?,
        Command::Simulate { params, log } => simulate_cmd(params, log.as_deref(), cli.seed)?,
        Command::Motifs(cmd) => motifs_cmd(cmd, seed)?,
        Command::Topology(cmd) => topology_cmd(cmd, seed)?,
    };
    if let Some(path) = &cli.out {
        fs::write(path, &output.text).map_err(|e| Error::io(path, e))?;
        return Ok(Output {
            text: String::new(),
        });
    }
    Ok(output)
}

fn cost_cmd(net: &NetworkArgs, args: &ParamArgs, csv: bool) -> Result<Output> {
    let config = load_config(args)?;
    let p = config.game_params()?;
    let loaded = load_network(net)?;
    let g = &loaded.graph;
    let mut nodes = Vec::new();
    let mut rows = Vec::new();
    for v in g.network.nodes() {
        let full = node_cost(&g.network, &p, v)?;
        let bare = bare_node_cost(&g.network, &p, v)?;
        rows.push(vec![
            g.id(v).to_string(),
            kind_name(g.network.kind(v)).to_string(),
            g.network.degree(v).to_string(),
            full.infinite_terms.to_string(),
            netform_core::ext::format_rational(&full.finite),
            bare.infinite_terms.to_string(),
            netform_core::ext::format_rational(&bare.finite),
        ]);
        nodes.push(json!({
            "id": g.id(v),
            "kind": kind_name(g.network.kind(v)),
            "degree": g.network.degree(v),
            "cost": report::cost(&full),
            "bare_cost": report::cost(&bare),
        }));
    }
    if csv {
        let header = ["id", "kind", "degree", "q", "cost", "bare_q", "bare_cost"];
        return Ok(Output {
            text: report::csv(&header, &rows),
        });
    }
    let results = json!({
        "network": loaded.label,
        "nodes": nodes,
        "social_cost": report::cost(&social_cost(&g.network, &p, false)?),
        "bare_social_cost": report::cost(&social_cost(&g.network, &p, true)?),
    });
    Ok(emit("cost", config_echo(&config, loaded.notes)?, results))
}

fn stable_cmd(cmd: &StableCommand) -> Result<Output> {
    match cmd {
        StableCommand::Check { net, params } => {
            let config = load_config(params)?;
            let p = config.game_params()?;
            let loaded = load_network(net)?;
            let g = &loaded.graph;
            let report = is_pairwise_stable(&g.network, &p)?;
            let violations: Vec<Value> = report
                .violations
                .iter()
                .map(|v| {
                    json!({
                        "kind": match v.kind {
                            ViolationKind::BeneficialRemoval => "removal",
                            ViolationKind::BeneficialAddition => "addition",
                        },
                        "edge": [g.id(v.edge.0), g.id(v.edge.1)],
                        "delta_i": report::cost(&v.delta_i),
                        "delta_j": report::cost(&v.delta_j),
                    })
                })
                .collect();
            let results =
                json!({"network": loaded.label, "stable": report.stable, "violations": violations});
            Ok(emit(
                "stable check",
                config_echo(&config, loaded.notes)?,
                results,
            ))
        }
        StableCommand::Enumerate {
            players,
            params,
            bare,
        } => {
            let config = load_config(params)?;
            let p = config.game_params()?;
            let model = if *bare {
                CostModel::Bare
            } else {
                CostModel::Full
            };
            let (n_a, n_b) = (players.majors, players.minors);
            let scan = parallel::scan(&p, n_a, n_b, model, config.budgets.enumeration_players)?;
            let stable: Vec<Value> = stable_networks(&scan, n_a, n_b)
                .iter()
                .map(|s| json!({"index": s.index, "social_cost": report::cost(&s.social), "edges": edges_of(&s.network)}))
                .collect();
            let (opt_index, opt_social) =
                scan.optimal.clone().expect("scan covers the empty graph");
            let results = json!({
                "stable_count": stable.len(),
                "stable": stable,
                "optimal": {
                    "index": opt_index,
                    "social_cost": report::cost(&opt_social),
                    "edges": edges_of(&network_from_index(n_a, n_b, opt_index)),
                },
            });
            let inputs = json!({"majors": n_a, "minors": n_b, "bare": bare});
            Ok(emit(
                "stable enumerate",
                config_echo(&config, inputs)?,
                results,
            ))
        }
        StableCommand::Prices { players, params } => {
            let config = load_config(params)?;
            let p = config.game_params()?;
            let (n_a, n_b) = (players.majors, players.minors);
            let m = parallel::price_metrics(&p, n_a, n_b, config.budgets.enumeration_players)?;
            let opt_cost = |c: &Option<netform_core::ExtCost>| c.as_ref().map(report::cost);
            let opt_ratio = |r: &Option<netform_core::ExtRatio>| r.as_ref().map(report::ratio);
            let results = json!({
                "optimal_social_cost": report::cost(&m.optimal_social),
                "best_stable_social_cost": opt_cost(&m.best_stable_social),
                "worst_stable_social_cost": opt_cost(&m.worst_stable_social),
                "bare_best_stable_social_cost": opt_cost(&m.bare_best_stable_social),
                "pos": opt_ratio(&m.pos),
                "poa": opt_ratio(&m.poa),
                "por": opt_ratio(&m.por),
                "optimal_edges": edges_of(&m.optimal_network),
                "best_stable_edges": m.best_stable_network.as_ref().map(edges_of),
                "worst_stable_edges": m.worst_stable_network.as_ref().map(edges_of),
                "stable_count": m.stable_count,
                "bare_stable_count": m.bare_stable_count,
                "empty_stable_set": m.empty_stable_set,
                "precondition_warning": m.precondition_warning,
            });
            let inputs = json!({"majors": n_a, "minors": n_b});
            Ok(emit(
                "stable prices",
                config_echo(&config, inputs)?,
                results,
            ))
        }
    }
}

fn edges_of(g: &netform_core::Network) -> Value {
    json!(g.edges().map(|(u, v)| [u.0, v.0]).collect::<Vec<_>>())
}

/// One JSON-lines record of a turn.
pub fn turn_record(seed: u64, log: &TurnLog) -> Value {
    let moves: Vec<Value> = log
        .moves
        .iter()
        .map(|m| {
            json!({
                "change": match m.change {
                    EdgeChange::Add => "add",
                    EdgeChange::Remove => "remove",
                },
                "edge": [m.edge.0 .0, m.edge.1 .0],
                "payment": m.payment.as_ref().map(report::rational),
                "actor_delta": report::cost(&m.actor_delta),
            })
        })
        .collect();
    json!({
        "seed": seed,
        "turn": log.turn,
        "round": log.round,
        "actor": log.actor.0,
        "arrival": log.arrival.map(kind_name),
        "moves": moves,
        "network_hash": hex::encode(log.network_hash),
    })
}

fn simulation_json(p: &GameParams, seed: u64, r: &SimulationResult) -> Result<Value> {
    let label = |v: NodeId| r.labels[v.index()].0;
    let class = classify_structure(&r.network, p);
    let mut roles = Map::new();
    for (v, rs) in &class.roles {
        let names: Vec<String> = rs.iter().map(|x| format!("{x:?}")).collect();
        roles.insert(label(*v).to_string(), json!(names));
    }
    let mut edges: Vec<[u32; 2]> = r
        .network
        .edges()
        .map(|(u, v)| {
            let (a, b) = (label(u), label(v));
            [a.min(b), a.max(b)]
        })
        .collect();
    edges.sort_unstable();
    let payments: Vec<Value> = r
        .payments
        .iter()
        .map(|(a, b, amount)| json!([label(a), label(b), report::rational(&amount)]))
        .collect();
    Ok(json!({
        "seed": seed,
        "converged": r.converged,
        "rounds": r.rounds,
        "last_arrival_round": r.last_arrival_round,
        "settle_rounds": r.settle_rounds,
        "turns": r.logs.len(),
        "final_hash": r.logs.last().map(|l| hex::encode(l.network_hash)),
        "edges": edges,
        "payments": payments,
        "social_cost": report::cost(&social_cost(&r.network, p, false)?),
        "structure": {"kind": format!("{:?}", class.kind), "roles": roles},
    }))
}

fn simulate_cmd(args: &ParamArgs, log: Option<&Path>, seed_flag: Option<u64>) -> Result<Output> {
    let mut config = load_config(args)?;
    if let Some(seed) = seed_flag {
        config.seeds = vec![seed];
    }
    if config.seeds.is_empty() {
        config.seeds = vec![0];
    }
    let p = config.game_params()?;
    let schedule = config
        .schedule
        .as_ref()
        .ok_or_else(|| Error::input("run config has no schedule"))?
        .to_schedule()?;
    let rule = config.dynamic_rule();
    let mut runs = Vec::new();
    let mut lines = String::new();
    for &seed in &config.seeds {
        let r = simulate(&p, &schedule, rule, config.budgets.max_rounds, seed)?;
        for l in &r.logs {
            lines.push_str(&serde_json::to_string(&turn_record(seed, l))?);
            lines.push('\n');
        }
        runs.push(simulation_json(&p, seed, &r)?);
    }
    if let Some(path) = log {
        fs::write(path, lines).map_err(|e| Error::io(path, e))?;
    }
    let inputs = json!({"log": log.map(|p| p.display().to_string())});
    Ok(emit(
        "simulate",
        config_echo(&config, inputs)?,
        json!({"runs": runs}),
    ))
}

fn motifs_cmd(cmd: &MotifCommand, seed: u64) -> Result<Output> {
    match cmd {
        MotifCommand::Count { net, motif, csv } => {
            let loaded = load_network(net)?;
            let kind = motif.kind();
            let count = count_motif(&loaded.graph.network, kind)?;
            if *csv {
                return Ok(Output {
                    text: report::csv(
                        &["network", "motif", "count"],
                        &[vec![loaded.label, motif_label(kind), count.to_string()]],
                    ),
                });
            }
            let config = json!({"inputs": loaded.notes, "motif": report::motif_kind(kind)});
            Ok(emit(
                "motifs count",
                config,
                json!({"network": loaded.label, "count": count}),
            ))
        }
        MotifCommand::Null {
            net,
            motif,
            samples,
            csv,
        } => {
            let loaded = load_network(net)?;
            let kind = motif.kind();
            let r = parallel::null_model_stats(&loaded.graph.network, kind, *samples, seed)?;
            if *csv {
                let row = vec![
                    loaded.label,
                    motif_label(kind),
                    r.observed.to_string(),
                    netform_core::ext::format_rational(&r.null_mean),
                    r.null_std.to_string(),
                    r.samples.to_string(),
                    r.p_bound
                        .map(|b| netform_core::ext::format_rational(&b))
                        .unwrap_or_default(),
                ];
                let header = [
                    "network",
                    "motif",
                    "observed",
                    "null_mean",
                    "null_std",
                    "samples",
                    "p_bound",
                ];
                return Ok(Output {
                    text: report::csv(&header, &[row]),
                });
            }
            let config = json!({
                "inputs": loaded.notes,
                "motif": report::motif_kind(kind),
                "samples": samples,
                "seed": seed,
            });
            Ok(emit(
                "motifs null",
                config,
                json!({"network": loaded.label, "report": report::motif_report(&r)}),
            ))
        }
    }
}

fn motif_label(kind: MotifKind) -> String {
    match kind {
        MotifKind::DoubleStar(m) => format!("double_star_{m}"),
        MotifKind::EntangledCycle(l) => format!("entangled_cycle_{l}"),
    }
}

fn topology_cmd(cmd: &TopologyCommand, seed: u64) -> Result<Output> {
    match cmd {
        TopologyCommand::Cycles { src, samples, csv } => {
            let series = load_series(src)?;
            let mut rows = Vec::new();
            let mut out = Vec::new();
            let mut notes = Vec::new();
            for s in series {
                let (majors, minors) = split(&s.graph)?;
                let stats =
                    mean_major_minor_cycle(&s.graph.network, &majors, &minors, *samples, seed)?;
                let mean = stats.mean.as_ref().map(netform_core::ext::format_rational);
                rows.push(vec![
                    s.label.clone(),
                    majors.len().to_string(),
                    minors.len().to_string(),
                    mean.clone().unwrap_or_default(),
                    stats
                        .mean
                        .as_ref()
                        .map(|m| netform_core::ext::rational_to_f64(m).to_string())
                        .unwrap_or_default(),
                    stats.pairs_evaluated.to_string(),
                    stats.pairs_without_cycle.to_string(),
                ]);
                out.push(json!({
                    "snapshot": s.label,
                    "majors": majors.len(),
                    "minors": minors.len(),
                    "mean_cycle": mean,
                    "mean_cycle_approx": stats.mean.as_ref().map(netform_core::ext::rational_to_f64),
                    "pairs_evaluated": stats.pairs_evaluated,
                    "pairs_without_cycle": stats.pairs_without_cycle,
                    "excluded_fraction": report::rational(&stats.excluded_fraction()),
                }));
                notes.push(s.notes);
            }
            if *csv {
                let header = [
                    "snapshot",
                    "majors",
                    "minors",
                    "mean_cycle",
                    "mean_cycle_approx",
                    "pairs",
                    "pairs_without_cycle",
                ];
                return Ok(Output {
                    text: report::csv(&header, &rows),
                });
            }
            let config =
                json!({"inputs": notes, "samples": samples, "seed": seed, "top_k": src.net.top_k});
            Ok(emit("topology cycles", config, json!({"series": out})))
        }
        TopologyCommand::CoreRatio { src, mode, csv } => {
            let series = load_series(src)?;
            let mode = match mode {
                ModeArg::Node => DisjointnessMode::NodeDisjoint,
                ModeArg::Link => DisjointnessMode::LinkDisjoint,
            };
            let mut rows = Vec::new();
            let mut out = Vec::new();
            let mut notes = Vec::new();
            for s in series {
                let (majors, _) = split(&s.graph)?;
                let ratio = core_disjoint_ratio(&s.graph.network, &majors, mode)?;
                rows.push(vec![
                    s.label.clone(),
                    netform_core::ext::format_rational(&ratio),
                    netform_core::ext::rational_to_f64(&ratio).to_string(),
                ]);
                out.push(json!({
                    "snapshot": s.label,
                    "ratio": report::rational(&ratio),
                    "ratio_approx": netform_core::ext::rational_to_f64(&ratio),
                }));
                notes.push(s.notes);
            }
            if *csv {
                return Ok(Output {
                    text: report::csv(&["snapshot", "ratio", "ratio_approx"], &rows),
                });
            }
            let mode_name = match mode {
                DisjointnessMode::NodeDisjoint => "node",
                DisjointnessMode::LinkDisjoint => "link",
            };
            let config = json!({"inputs": notes, "mode": mode_name, "top_k": src.net.top_k});
            Ok(emit("topology core-ratio", config, json!({"series": out})))
        }
    }
}
