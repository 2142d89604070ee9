// Licensed under the Apache License, Version 2.0 (the "License"); you may
// not use this file except in compliance with the License. You may obtain
// a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS, WITHOUT
// WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied. See the
// License for the specific language governing permissions and limitations
// under the License.

//! `ef1reach`: decide and construct EF1 paths between allocations.
//!
//! Exit codes: 0 found/true, 1 not found/false, 2 usage or input error,
//! 3 budget exhausted.

mod files;
mod report;

use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use ef1reach::distance::{build_item_graph, max_cycle_partition, ItemGraph};
use ef1reach::gadgets::{self, BipartiteMatchingInstance, Cnf3Formula, PartitionOutcome};
use ef1reach::polypaths::{self, BaseAlgorithm};
use ef1reach::search::{ef1_reach_with_stats, optimal_ef1_path_with_stats};
use ef1reach::{
    bfs_distance, ef1_component_connected, ef1_violations, Allocation, Distance, Error, Instance, MoveSet,
    SearchBudget,
};
use serde::Serialize;
use serde_json::json;

use files::{load_allocation, load_instance, write_json, AllocationFile, InstanceFile};
use report::PathReport;

#[derive(Parser)]
#[command(name = "ef1reach", version, about = "Reachability between EF1 allocations under exchanges and transfers")]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    output: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Moves {
    Exchange,
    Transfer,
    Both,
}

impl From<Moves> for MoveSet {
    fn from(m: Moves) -> Self {
        match m {
            Moves::Exchange => MoveSet::ExchangeOnly,
            Moves::Transfer => MoveSet::TransferOnly,
            Moves::Both => MoveSet::ExchangeAndTransfer,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Method {
    Bfs,
    Cycles,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Algo {
    TwoIdentical,
    TwoBinary,
    IdenBinary,
    Xt,
    ThreeHeavy,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Base {
    TwoIdentical,
    TwoBinary,
    IdenBinary,
}

#[derive(Args)]
struct Endpoints {
    #[arg(long)]
    instance: PathBuf,
    #[arg(long)]
    from: PathBuf,
    #[arg(long)]
    to: PathBuf,
}

impl Endpoints {
    fn load(&self) -> Result<(Instance, Allocation, Allocation)> {
        let inst = load_instance(&self.instance)?;
        let a = load_allocation(&self.from, &inst)?;
        let b = load_allocation(&self.to, &inst)?;
        Ok((inst, a, b))
    }
}

#[derive(Args)]
struct BudgetArgs {
    /// Maximum number of stored search states.
    #[arg(long, default_value_t = 2_000_000)]
    budget: usize,
    /// Do not explore paths longer than this.
    #[arg(long)]
    max_len: Option<usize>,
}

impl BudgetArgs {
    fn budget(&self) -> SearchBudget {
        SearchBudget {
            max_path_len: self.max_len,
            ..SearchBudget::states(self.budget)
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Report whether an allocation is EF1 and list violating pairs.
    Check {
        #[arg(long)]
        instance: PathBuf,
        #[arg(long)]
        alloc: PathBuf,
    },
    /// Search for a path through EF1 allocations.
    Reach {
        #[command(flatten)]
        ends: Endpoints,
        #[arg(long, value_enum, default_value_t = Moves::Exchange)]
        moves: Moves,
        /// Only accept paths as short as the unrestricted distance.
        #[arg(long)]
        optimal: bool,
        #[command(flatten)]
        budget: BudgetArgs,
    },
    /// Number of moves between two allocations, ignoring fairness.
    Distance {
        #[command(flatten)]
        ends: Endpoints,
        #[arg(long, value_enum, default_value_t = Method::Bfs)]
        method: Method,
        #[arg(long, value_enum, default_value_t = Moves::Exchange)]
        moves: Moves,
        #[command(flatten)]
        budget: BudgetArgs,
    },
    /// Connectivity of the graph of EF1 allocations.
    Connect {
        #[arg(long)]
        instance: PathBuf,
        /// Size vector, e.g. `3,3` (exchange moves only).
        #[arg(long, value_delimiter = ',')]
        sizes: Option<Vec<usize>>,
        #[arg(long, value_enum, default_value_t = Moves::Exchange)]
        moves: Moves,
        #[arg(long, default_value_t = 2_000_000)]
        budget: usize,
    },
    /// Build a path with one of the polynomial-time constructions.
    Poly {
        #[command(flatten)]
        ends: Endpoints,
        #[arg(long, value_enum)]
        algo: Algo,
        /// Exchange-only construction behind `xt`; inferred when omitted.
        #[arg(long, value_enum)]
        base: Option<Base>,
    },
    /// Generate reduction instances.
    Gen {
        #[command(subcommand)]
        kind: GenKind,
    },
    /// Emit a known counterexample, optionally checking its claims.
    Catalog {
        /// Fixture name; omit with `--list`.
        name: Option<String>,
        #[arg(long)]
        verify: bool,
        #[arg(long)]
        list: bool,
        /// Write PREFIX.instance.json, PREFIX.from.json, PREFIX.to.json.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum GenKind {
    /// Perfect matching reconfiguration instance.
    Pmr {
        /// Vertices per side.
        #[arg(long)]
        v: usize,
        /// Edges as `p-q` pairs, 1-based, e.g. `1-1,1-2,2-2`.
        #[arg(long, value_delimiter = ',')]
        edges: Vec<String>,
        /// Source matching: the q matched to p1, p2, ...
        #[arg(long, value_delimiter = ',')]
        w0: Vec<usize>,
        /// Target matching.
        #[arg(long, value_delimiter = ',')]
        w: Vec<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Four-agent instance built from a multiset with even sum.
    Partition {
        #[arg(long, value_delimiter = ',', required = true)]
        values: Vec<u64>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Allocations whose item graph is the given multigraph.
    Graphdist {
        #[arg(long)]
        vertices: usize,
        /// Edges as `u-v` pairs, 1-based.
        #[arg(long, value_delimiter = ',', required = true)]
        edges: Vec<String>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Triangle-partition gadget graph for a 3-CNF formula.
    Dtp {
        #[arg(long)]
        vars: usize,
        /// Clauses separated by `;`, literals by `,`: `1,-2,3;2,3,-1`.
        #[arg(long, default_value = "")]
        clauses: String,
        /// Torus size; defaults to 100 per clause.
        #[arg(long)]
        p: Option<usize>,
        /// Truth values as a string of T/F; builds and validates the
        /// induced triangle partition.
        #[arg(long)]
        assignment: Option<String>,
        /// Edge-list output file; stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

/// Writes to stdout; a closed pipe (`| head`) is not an error.
fn say(text: &str) -> Result<()> {
    let mut out = std::io::stdout().lock();
    match out.write_all(text.as_bytes()).and_then(|()| out.flush()) {
        Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => Err(e.into()),
        _ => Ok(()),
    }
}

/// Output text or a JSON value, returning `code`.
fn emit<T: Serialize>(format: Format, text: &str, value: &T, code: u8) -> Result<u8> {
    match format {
        Format::Text => say(text)?,
        Format::Json => say(&format!("{}\n", serde_json::to_string_pretty(value)?))?,
    }
    Ok(code)
}

fn parse_pairs(items: &[String]) -> Result<Vec<(usize, usize)>> {
    items
        .iter()
        .filter(|s| !s.trim().is_empty())
        .map(|s| {
            let (u, v) = s.split_once('-').ok_or_else(|| anyhow!("expected `u-v`, got `{s}`"))?;
            let u: usize = u.trim().parse().with_context(|| format!("bad pair `{s}`"))?;
            let v: usize = v.trim().parse().with_context(|| format!("bad pair `{s}`"))?;
            if u == 0 || v == 0 {
                bail!("pair `{s}` is not 1-based");
            }
            Ok((u - 1, v - 1))
        })
        .collect()
}

fn one_based(items: &[usize], what: &str) -> Result<Vec<usize>> {
    items
        .iter()
        .map(|&x| x.checked_sub(1).ok_or_else(|| anyhow!("{what} entries are 1-based")))
        .collect()
}

fn parse_clauses(text: &str) -> Result<Vec<Vec<(usize, bool)>>> {
    text.split(';')
        .filter(|c| !c.trim().is_empty())
        .map(|c| {
            c.split(',')
                .map(|lit| {
                    let v: i64 = lit.trim().parse().with_context(|| format!("bad literal `{lit}`"))?;
                    if v == 0 {
                        bail!("literal 0 is not a variable");
                    }
                    Ok(((v.unsigned_abs() - 1) as usize, v < 0))
                })
                .collect()
        })
        .collect()
}

/// Instance and endpoints either to three files or as one JSON document.
fn emit_triple(format: Format, inst: &Instance, a: &Allocation, b: &Allocation, out: Option<&Path>) -> Result<u8> {
    let files = (
        InstanceFile::from_instance(inst),
        AllocationFile::from_allocation(inst, a),
        AllocationFile::from_allocation(inst, b),
    );
    match out {
        Some(prefix) => {
            let p = prefix.display();
            write_json(Path::new(&format!("{p}.instance.json")), &files.0)?;
            write_json(Path::new(&format!("{p}.from.json")), &files.1)?;
            write_json(Path::new(&format!("{p}.to.json")), &files.2)?;
            let text = format!("wrote {p}.instance.json, {p}.from.json, {p}.to.json\n");
            emit(format, &text, &json!({ "written": [format!("{p}.instance.json"), format!("{p}.from.json"), format!("{p}.to.json")] }), 0)
        }
        None => {
            let doc = json!({ "instance": files.0, "from": files.1, "to": files.2 });
            say(&format!("{}\n", serde_json::to_string_pretty(&doc)?))?;
            Ok(0)
        }
    }
}

fn run_gen(format: Format, kind: GenKind) -> Result<u8> {
    match kind {
        GenKind::Pmr { v, edges, w0, w, out } => {
            let b = BipartiteMatchingInstance::new(
                v,
                parse_pairs(&edges)?,
                one_based(&w0, "--w0")?,
                one_based(&w, "--w")?,
            )?;
            let (inst, a0, a) = gadgets::gen_pmr_instance(&b)?;
            emit_triple(format, &inst, &a0, &a, out.as_deref())
        }
        GenKind::Partition { values, out } => {
            let (inst, a, b) = gadgets::gen_partition_instance(&values)?;
            emit_triple(format, &inst, &a, &b, out.as_deref())
        }
        GenKind::Graphdist { vertices, edges, out } => {
            let g = ItemGraph::new(vertices, parse_pairs(&edges)?)?;
            let (inst, a, b) = gadgets::gen_graph_distance_instance(&g)?;
            emit_triple(format, &inst, &a, &b, out.as_deref())
        }
        GenKind::Dtp { vars, clauses, p, assignment, out } => {
            let f = Cnf3Formula::new(vars, &parse_clauses(&clauses)?)?;
            let g = gadgets::gen_threesat_dtp(&f, p)?;
            let text = g.to_text();
            match &out {
                Some(path) => std::fs::write(path, &text).with_context(|| format!("writing {}", path.display()))?,
                None if assignment.is_none() => say(&text)?,
                None => {}
            }
            let Some(assignment) = assignment else {
                return Ok(0);
            };
            let values: Vec<bool> = assignment
                .chars()
                .map(|c| match c.to_ascii_uppercase() {
                    'T' | '1' => Ok(true),
                    'F' | '0' => Ok(false),
                    other => Err(anyhow!("assignment characters are T or F, got `{other}`")),
                })
                .collect::<Result<_>>()?;
            match gadgets::partition_from_assignment(&g, &values)? {
                PartitionOutcome::Partition(parts) => {
                    let check = g.validate(&parts);
                    let text = format!(
                        "valid triangle partition: {} triangles over {} edges ({} edge checks)\n",
                        parts.len(),
                        g.edge_count(),
                        check.edge_checks
                    );
                    let doc = json!({ "verdict": "Valid", "triangles": parts.len(), "edges": g.edge_count(), "edge_checks": check.edge_checks });
                    emit(format, &text, &doc, 0)
                }
                PartitionOutcome::Unsatisfied { clause } => {
                    let text = format!("assignment falsifies clause {}\n", clause + 1);
                    emit(format, &text, &json!({ "verdict": "Unsatisfied", "clause": clause + 1 }), 1)
                }
            }
        }
    }
}

fn run_catalog(format: Format, name: Option<String>, verify: bool, list: bool, out: Option<PathBuf>) -> Result<u8> {
    if list {
        let text: String = gadgets::CATALOG_NAMES.iter().map(|n| format!("{n}\n")).collect();
        return emit(format, &text, &gadgets::CATALOG_NAMES, 0);
    }
    let name = name.ok_or_else(|| anyhow!("a fixture name is required (see --list)"))?;
    let f = gadgets::catalog(&name)?;
    if !verify {
        return emit_triple(format, &f.instance, &f.source, &f.target, out.as_deref());
    }
    if let Some(prefix) = &out {
        emit_triple(Format::Text, &f.instance, &f.source, &f.target, Some(prefix))?;
    }
    let outcomes = gadgets::verify(&f, SearchBudget::default())?;
    let passed = outcomes.iter().all(|c| c.passed);
    let mut text = String::new();
    for c in &outcomes {
        let mark = if c.passed { "as expected" } else { "UNEXPECTED" };
        text.push_str(&format!("{}: {} {mark}\n", c.claim, c.observed));
    }
    text.push_str(&format!("{name}: {}\n", if passed { "all checks passed" } else { "checks failed" }));
    let doc = json!({
        "fixture": name,
        "verdict": if passed { "Verified" } else { "Failed" },
        "checks": outcomes.iter().map(|c| json!({ "claim": c.claim, "observed": c.observed, "passed": c.passed })).collect::<Vec<_>>(),
    });
    emit(format, &text, &doc, if passed { 0 } else { 1 })
}

fn base_for(inst: &Instance, base: Option<Base>) -> Result<BaseAlgorithm> {
    Ok(match base {
        Some(Base::TwoIdentical) => BaseAlgorithm::TwoIdentical,
        Some(Base::TwoBinary) => BaseAlgorithm::TwoBinary,
        Some(Base::IdenBinary) => BaseAlgorithm::IdenticalBinary,
        None if inst.is_identical() && inst.is_binary() => BaseAlgorithm::IdenticalBinary,
        None if inst.agents() == 2 && inst.is_identical() => BaseAlgorithm::TwoIdentical,
        None if inst.agents() == 2 && inst.is_binary() => BaseAlgorithm::TwoBinary,
        None => bail!("no exchange-only construction covers this instance; pass --base"),
    })
}

fn run(cli: Cli) -> Result<u8> {
    let format = cli.output;
    match cli.command {
        Command::Check { instance, alloc } => {
            let inst = load_instance(&instance)?;
            let a = load_allocation(&alloc, &inst)?;
            let v = ef1_violations(&inst, &a)?;
            let mut text = String::from(if v.is_empty() { "EF1\n" } else { "not EF1\n" });
            for &(i, j) in &v {
                text.push_str(&format!("agent {} envies agent {} by more than one good\n", i + 1, j + 1));
            }
            let pairs: Vec<[usize; 2]> = v.iter().map(|&(i, j)| [i + 1, j + 1]).collect();
            let doc = json!({ "verdict": if v.is_empty() { "EF1" } else { "NotEF1" }, "violations": pairs });
            emit(format, &text, &doc, if v.is_empty() { 0 } else { 1 })
        }
        Command::Reach { ends, moves, optimal, budget } => {
            let (inst, a, b) = ends.load()?;
            let (r, stats) = if optimal {
                optimal_ef1_path_with_stats(&inst, &a, &b, moves.into(), budget.budget())?
            } else {
                ef1_reach_with_stats(&inst, &a, &b, moves.into(), budget.budget())?
            };
            let rep = PathReport::from_result(&inst, &r, Some(stats));
            emit(format, &rep.text(), &rep, rep.exit_code())
        }
        Command::Distance { ends, method, moves, budget } => {
            let (inst, a, b) = ends.load()?;
            let d = match method {
                Method::Bfs => bfs_distance(&inst, &a, &b, moves.into(), budget.budget())?,
                Method::Cycles => {
                    if moves != Moves::Exchange {
                        bail!("the cycle method only measures exchange distance");
                    }
                    let g = build_item_graph(&a, &b)?;
                    match max_cycle_partition(&g, budget.budget) {
                        Ok((c, _)) => Distance::Exact(g.edge_count() - c),
                        Err(Error::BudgetExceeded(_)) => Distance::BudgetExhausted,
                        Err(e) => return Err(e.into()),
                    }
                }
            };
            let (verdict, length, code) = match d {
                Distance::Exact(l) => ("Exact", Some(l), 0),
                Distance::Unreachable => ("Unreachable", None, 1),
                Distance::BudgetExhausted => ("BudgetExhausted", None, 3),
            };
            let text = length.map_or(format!("{verdict}\n"), |l| format!("{l}\n"));
            emit(format, &text, &json!({ "verdict": verdict, "length": length }), code)
        }
        Command::Connect { instance, sizes, moves, budget } => {
            let inst = load_instance(&instance)?;
            let c = ef1_component_connected(&inst, sizes.as_deref(), moves.into(), SearchBudget::states(budget))?;
            let verdict = if c.connected { "Connected" } else { "Disconnected" };
            let text = format!(
                "{verdict}: {} EF1 allocations in {} component(s) {:?}, universe {}\n",
                c.component_sizes.iter().sum::<usize>(),
                c.component_sizes.len(),
                c.component_sizes,
                c.universe
            );
            let doc = json!({ "verdict": verdict, "components": c.component_sizes, "universe": c.universe });
            emit(format, &text, &doc, if c.connected { 0 } else { 1 })
        }
        Command::Poly { ends, algo, base } => {
            let (inst, a, b) = ends.load()?;
            let c = match algo {
                Algo::TwoIdentical => polypaths::path_two_identical(&inst, &a, &b)?,
                Algo::TwoBinary => polypaths::path_two_binary(&inst, &a, &b)?,
                Algo::IdenBinary => polypaths::path_identical_binary(&inst, &a, &b)?,
                Algo::Xt => polypaths::path_xt_via_dummies(&inst, &a, &b, base_for(&inst, base)?)?,
                Algo::ThreeHeavy => polypaths::path_three_heavy_xt(&inst, &a, &b)?,
            };
            let rep = PathReport::from_moves(&inst, &c.moves, c.candidate_checks);
            emit(format, &rep.text(), &rep, 0)
        }
        Command::Gen { kind } => run_gen(format, kind),
        Command::Catalog { name, verify, list, out } => run_catalog(format, name, verify, list, out),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            let budget = matches!(e.downcast_ref::<Error>(), Some(Error::BudgetExceeded(_)));
            ExitCode::from(if budget { 3 } else { 2 })
        }
    }
}
