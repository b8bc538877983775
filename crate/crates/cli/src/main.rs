//! `rcdl`: rank defeasible ALC knowledge bases and answer rational closure
//! queries from the command line.
//!
//! Exit status is 0 on success whatever the verdict, 1 on parse errors and
//! 2 when the tableau hits a resource limit.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand};
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use rcdl_core::oracle::{
    dump_json, kb_requirements, random_concept, search, search_countermodel, search_model, RandomSpec, Requirement,
    SearchReport, MAX_DOMAIN,
};
use rcdl_core::parser::AxiomJson;
use rcdl_core::{
    parse_kb_file, parse_query, Axiom, Dci, DefeasibleReasoner, Gci, KnowledgeBase, ParseError, RankValue, Ranking,
    ReasonerError, TableauConfig,
};

#[derive(Debug, Parser)]
#[command(name = "rcdl", version, about = "Rational closure for defeasible ALC knowledge bases")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    opts: GlobalOpts,
}

#[derive(Debug, Args)]
struct GlobalOpts {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Tableau node budget per satisfiability check.
    #[arg(long, global = true, default_value_t = 100_000, value_parser = clap::value_parser!(u64).range(1..))]
    max_nodes: u64,
    /// Tableau depth budget.
    #[arg(long, global = true, default_value_t = 512, value_parser = clap::value_parser!(u64).range(1..))]
    max_depth: u64,
    /// Seed for sampled oracle queries.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Compute and print the ranking of the DTBox.
    Rank { input: PathBuf },
    /// Decide whether a query is in the rational closure.
    Query {
        input: PathBuf,
        #[arg(short, long)]
        query: String,
    },
    /// Report whether the knowledge base has a modular model.
    Check { input: PathBuf },
    /// Search for a small ranked (counter)model.
    Oracle {
        input: PathBuf,
        /// Look for a countermodel of this axiom instead of a model.
        #[arg(short, long)]
        query: Option<String>,
        #[arg(long, default_value_t = 4, value_parser = clap::value_parser!(u64).range(1..=MAX_DOMAIN as u64))]
        max_domain: u64,
        /// Also cross-check this many random queries against the engine.
        #[arg(long, default_value_t = 0)]
        samples: usize,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            if e.chain().any(|c| matches!(c.downcast_ref(), Some(ReasonerError::ResourceLimit { .. }))) {
                ExitCode::from(2)
            } else {
                ExitCode::from(1)
            }
        }
    }
}

fn run(cli: &Cli) -> Result<()> {
    let config = TableauConfig::new(cli.opts.max_nodes as usize, cli.opts.max_depth as usize)?;
    let reasoner = DefeasibleReasoner::new(config);
    let out = match &cli.command {
        Command::Rank { input } => rank(&reasoner, &load(input)?, cli.opts.json)?,
        Command::Query { input, query } => {
            let kb = load(input)?;
            let q = parse_query(query).map_err(query_error)?;
            self::query(&reasoner, &kb, &q, cli.opts.json)?
        }
        Command::Check { input } => check(&reasoner, &load(input)?, cli.opts.json)?,
        Command::Oracle { input, query, max_domain, samples } => {
            let kb = load(input)?;
            let q = query.as_deref().map(parse_query).transpose().map_err(query_error)?;
            let opts = OracleOpts { max_domain: *max_domain as usize, samples: *samples, seed: cli.opts.seed };
            oracle(&reasoner, &kb, q.as_ref(), &opts, cli.opts.json)?
        }
    };
    print!("{out}");
    Ok(())
}

fn load(path: &Path) -> Result<KnowledgeBase> {
    Ok(parse_kb_file(path)?.kb)
}

fn query_error(e: ParseError) -> anyhow::Error {
    anyhow::Error::new(e).context("in query")
}

fn axiom_json(a: &Axiom) -> Value {
    serde_json::to_value(AxiomJson::from(a)).expect("plain data")
}

fn gci_json(g: &Gci) -> Value {
    axiom_json(&Axiom::Strict(g.clone()))
}

fn dci_json(d: &Dci) -> Value {
    axiom_json(&Axiom::Defeasible(d.clone()))
}

fn compute(reasoner: &DefeasibleReasoner, kb: &KnowledgeBase) -> Result<Ranking> {
    reasoner.compute_ranking(kb).context("while ranking")
}

fn rank(reasoner: &DefeasibleReasoner, kb: &KnowledgeBase, json: bool) -> Result<String> {
    let r = compute(reasoner, kb)?;
    let promoted: Vec<Gci> = r.moved_to_tbox.iter().map(Dci::to_gci).collect();
    if json {
        let v = json!({
            "tstar": r.tstar.iter().map(gci_json).collect::<Vec<_>>(),
            "promoted": r.moved_to_tbox.iter().map(dci_json).collect::<Vec<_>>(),
            "partition": r.partition.iter()
                .map(|p| p.iter().map(dci_json).collect::<Vec<_>>())
                .collect::<Vec<_>>(),
            "stats": {
                "entailment_checks": r.stats.ranking_checks + r.stats.consistency_checks,
            },
        });
        return Ok(format!("{v}\n"));
    }
    let mut s = String::from("T*:\n");
    if r.tstar.is_empty() {
        s += "  (empty)\n";
    }
    for g in &r.tstar {
        let mark = if promoted.contains(g) { "  (promoted)" } else { "" };
        s += &format!("  {g}{mark}\n");
    }
    if !r.moved_to_tbox.is_empty() {
        s += "promoted to TBox (infinite rank):\n";
        for d in &r.moved_to_tbox {
            s += &format!("  {d}\n");
        }
    }
    s += "partition:\n";
    if r.partition.is_empty() {
        s += "  (empty)\n";
    }
    for (i, p) in r.partition.iter().enumerate() {
        s += &format!("  D{i}:\n");
        for d in p {
            s += &format!("    {d}\n");
        }
    }
    s +=
        &format!("entailment checks: ranking {}, consistency {}\n", r.stats.ranking_checks, r.stats.consistency_checks);
    if !r.consistent {
        s += "warning: T* is inconsistent; every query holds trivially\n";
    }
    Ok(s)
}

fn query(reasoner: &DefeasibleReasoner, kb: &KnowledgeBase, q: &Axiom, json: bool) -> Result<String> {
    let r = compute(reasoner, kb)?;
    let res = reasoner.rationally_deducible(&r, q).context("while answering the query")?;
    if json {
        let v = json!({
            "verdict": res.verdict,
            "decided_at": res.decided_at,
            "checks": res.checks_spent,
            "kb_inconsistent": res.kb_inconsistent,
        });
        return Ok(format!("{v}\n"));
    }
    let verdict = if res.verdict { "IN" } else { "NOT IN" };
    let mut s = format!("{verdict} rational closure\n");
    s += &match res.decided_at {
        RankValue::Finite(i) => format!("decided at rank {i}\n"),
        RankValue::Infinite => "decided by T* alone (rank infinity)\n".into(),
    };
    s += &format!("entailment checks: {}\n", res.checks_spent);
    if res.kb_inconsistent {
        s += "warning: T* is inconsistent; the verdict is trivial\n";
    }
    Ok(s)
}

fn check(reasoner: &DefeasibleReasoner, kb: &KnowledgeBase, json: bool) -> Result<String> {
    let r = compute(reasoner, kb)?;
    let classical = reasoner.classical();
    let mut empty = Vec::new();
    for a in kb.signature().atoms {
        let g = Gci::new(rcdl_core::Concept::atom(a.clone()), rcdl_core::Concept::Bottom);
        if classical.entails(&r.tstar, &g).context("while checking concept names")? {
            empty.push(a);
        }
    }
    if json {
        let v = json!({
            "consistent": r.consistent,
            "infinite_rank": r.moved_to_tbox.iter().map(dci_json).collect::<Vec<_>>(),
            "unsatisfiable": empty,
        });
        return Ok(format!("{v}\n"));
    }
    let mut s = if r.consistent {
        "consistent: the knowledge base has a modular model\n".to_string()
    } else {
        "inconsistent: T* entails top [= bot\n".to_string()
    };
    if r.moved_to_tbox.is_empty() {
        s += "no DCIs of infinite rank\n";
    } else {
        s += "DCIs of infinite rank:\n";
        for d in &r.moved_to_tbox {
            s += &format!("  {d}\n");
        }
    }
    for a in &empty {
        s += &format!("unsatisfiable concept: {a} (T* entails {a} [= bot)\n");
    }
    Ok(s)
}

struct OracleOpts {
    max_domain: usize,
    samples: usize,
    seed: u64,
}

fn oracle(
    reasoner: &DefeasibleReasoner,
    kb: &KnowledgeBase,
    q: Option<&Axiom>,
    opts: &OracleOpts,
    json: bool,
) -> Result<String> {
    let report: SearchReport = match q {
        Some(q) => search_countermodel(kb, q, opts.max_domain),
        None => search_model(kb, opts.max_domain),
    };
    let what = if q.is_some() { "countermodel" } else { "model" };
    let checks = if opts.samples > 0 { sampled_checks(reasoner, kb, opts)? } else { Vec::new() };
    if json {
        let v = json!({
            "kind": what,
            "found": report.model.is_some(),
            "model": report.model.as_ref().map(dump_json),
            "max_domain": opts.max_domain,
            "shapes_explored": report.explored,
            "one_sided": true,
            "samples": checks.iter().map(|c| json!({
                "query": axiom_json(&c.query),
                "verdict": c.verdict,
                "witness": c.witness,
                "consistent": c.consistent(),
            })).collect::<Vec<_>>(),
        });
        return Ok(format!("{v}\n"));
    }
    let mut s = match &report.model {
        Some(m) => format!("{what} found:\n{}\n", dump_json(m)),
        None => format!("no {what} within bound {}\n", opts.max_domain),
    };
    s += &format!("shapes explored: {}\n", report.explored);
    s += "note: the search is one-sided; finding nothing within the bound proves nothing\n";
    if !checks.is_empty() {
        let bad = checks.iter().filter(|c| !c.consistent()).count();
        s += &format!("sampled queries (seed {}):\n", opts.seed);
        for c in &checks {
            let verdict = if c.verdict { "IN" } else { "NOT IN" };
            let witness = if c.witness { "countermodel at engine ranks" } else { "none within bound" };
            let flag = if c.consistent() { "" } else { "  CONTRADICTION" };
            s += &format!("  {}: {verdict}; {witness}{flag}\n", c.query);
        }
        s += &format!("contradictions: {bad}\n");
    }
    Ok(s)
}

struct SampleCheck {
    query: Axiom,
    verdict: bool,
    witness: bool,
}

impl SampleCheck {
    /// An IN verdict must have no countermodel that respects the engine's ranks.
    fn consistent(&self) -> bool {
        !(self.verdict && self.witness)
    }
}

fn sampled_checks(reasoner: &DefeasibleReasoner, kb: &KnowledgeBase, opts: &OracleOpts) -> Result<Vec<SampleCheck>> {
    let r = compute(reasoner, kb)?;
    let sig = kb.signature();
    let spec = RandomSpec {
        atoms: sig.atoms.into_iter().collect(),
        roles: sig.roles.into_iter().collect(),
        ..RandomSpec::default()
    };
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut base = kb_requirements(kb);
    for d in &kb.dtbox {
        base.push(Requirement::HeightIs(d.lhs.clone(), reasoner.concept_rank(&r, &d.lhs)?));
    }
    let mut out = Vec::with_capacity(opts.samples);
    for _ in 0..opts.samples {
        let lhs = random_concept(&mut rng, &spec, 2);
        let rhs = random_concept(&mut rng, &spec, 2);
        let query = Axiom::Defeasible(Dci::new(lhs, rhs));
        let verdict = reasoner.rationally_deducible(&r, &query)?.verdict;
        let mut reqs = base.clone();
        reqs.push(Requirement::HeightIs(query.lhs().clone(), reasoner.concept_rank(&r, query.lhs())?));
        reqs.push(Requirement::Fails(query.clone()));
        let witness = search(&reqs, opts.max_domain).model.is_some();
        out.push(SampleCheck { query, verdict, witness });
    }
    Ok(out)
}
