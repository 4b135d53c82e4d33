//! Command-line front end: exact continued fraction arithmetic,
//! T-chains, zero continued fractions, P-resolutions, building-block
//! assembly, involution quotients, and the golden corpus.
//!
//! Exit codes: 0 success, 1 validation error, 2 check failure (corpus
//! diff, failed verification, scan counterexamples), 3 internal
//! inconsistency.

use std::collections::BTreeMap;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use num_bigint::BigInt;
use num_rational::BigRational;
use serde_json::{Map, Value};

use cqs_core::appendix::{appendix_check, ComparisonReport, FamilyId, FamilyParams};
use cqs_core::horikawa::{geography, horikawa_families};
use cqs_core::pres::{
    compute_p_resolution, enumerate_p_resolutions, render, verify_p_resolution, PResolution,
};
use cqs_core::quotient::{
    duval_quotient_scan, lee_park_quotient, quotient_candidates, wahl_quotient_scan, Cqs,
    ScanReport,
};
use cqs_core::smallsurf::{
    assemble, blowdown_invariants, bmy_bound, instantiate_block, k2_multisection, lee_park,
    BlockId, BlockParams, FiberKind, SmallSurfaceConfig, SmallSurfaceReport,
};
use cqs_core::tsing::{center, discrepancies, enumerate_t_chains, t_children, t_recognize, TType};
use cqs_core::zcf::{enumerate_zcf, k_cross_set, k_set, ZeroChain};
use cqs_core::{blow_down, dual, evaluate, hj_expand, Error, Fraction, GenChain, HJChain};

mod corpus;

#[derive(Parser)]
#[command(name = "cqs", version, about = "Exact combinatorics of cyclic quotient singularities")]
struct Cli {
    /// Emit canonical JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Cap the number of emitted records for enumerations.
    #[arg(long, global = true)]
    limit: Option<usize>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Hirzebruch-Jung continued fractions.
    #[command(subcommand)]
    Hj(HjCmd),
    /// T-chains and discrepancies.
    #[command(subcommand)]
    Tchain(TchainCmd),
    /// Zero continued fractions and K-sets.
    #[command(subcommand)]
    Zcf(ZcfCmd),
    /// P-resolutions.
    #[command(subcommand)]
    Pres(PresCmd),
    /// Building blocks, assembly, tables, and invariants.
    #[command(subcommand)]
    Small(SmallCmd),
    /// Involution quotients.
    #[command(subcommand)]
    Quot(QuotCmd),
    /// Run a quick internal battery.
    Selftest,
    /// Golden corpus management.
    #[command(subcommand)]
    Corpus(CorpusCmd),
}

#[derive(Subcommand)]
enum HjCmd {
    /// Expand Δ/Ω as [e_1,…,e_r].
    Expand { delta: String, omega: String },
    /// Evaluate a chain's continuant, e.g. `eval 2,1,2`.
    Eval { chain: String },
    /// The dual expansion of Δ/(Δ−Ω).
    Dual { delta: String, omega: String },
}

#[derive(Subcommand)]
enum TchainCmd {
    /// Recognize a T-chain, e.g. `check 3,5,2`.
    Check { chain: String },
    /// Discrepancies of a chain (with center and T-data when it is one).
    Disc { chain: String },
    /// The two generated T-chains.
    Children { chain: String },
    /// Enumerate T-chains breadth-first.
    Enum {
        #[arg(long, default_value_t = 8)]
        max_len: usize,
        #[arg(long, default_value_t = 200)]
        max_delta: i64,
        /// Restrict to one d.
        #[arg(long)]
        d: Option<i64>,
    },
}

#[derive(Subcommand)]
enum ZcfCmd {
    /// All zero continued fractions of a given length.
    Enum { s: usize },
    /// K(Δ/Δ−Ω): zero chains bounded by the dual expansion.
    Kset { delta: String, omega: String },
    /// K^×: K-set members matching the dual chain at both ends.
    Kcross { delta: String, omega: String },
}

#[derive(Subcommand)]
enum PresCmd {
    /// All P-resolutions of Δ/Ω.
    All {
        delta: String,
        omega: String,
        /// Only the non-A-ending resolutions (the K^× subset).
        #[arg(long)]
        cross: bool,
        /// Print the bracket notation only.
        #[arg(long)]
        render: bool,
    },
    /// Compute and verify one P-resolution.
    Verify {
        delta: String,
        omega: String,
        #[arg(long)]
        zcf: String,
    },
    /// Render one P-resolution in bracket notation.
    Render {
        delta: String,
        omega: String,
        #[arg(long)]
        zcf: String,
    },
    /// Check a cataloged family at concrete parameters.
    Appendix {
        family: String,
        #[command(flatten)]
        params: ParamArgs,
    },
}

#[derive(Args)]
struct ParamArgs {
    #[arg(long)]
    r: Option<i64>,
    #[arg(long)]
    a: Option<i64>,
    #[arg(long)]
    b: Option<i64>,
    #[arg(long)]
    c: Option<i64>,
    #[arg(long)]
    n: Option<i64>,
    #[arg(long)]
    n2: Option<i64>,
}

impl ParamArgs {
    fn to_family_params(&self) -> FamilyParams {
        FamilyParams {
            r: self.r,
            a: self.a,
            b: self.b,
            c: self.c,
            n: self.n,
            n2: self.n2,
        }
    }
}

#[derive(Subcommand)]
enum SmallCmd {
    /// Instantiate a building block.
    Block {
        id: String,
        #[arg(long)]
        r: Option<i64>,
        #[arg(long)]
        fiber: Option<String>,
        #[arg(long)]
        fiber2: Option<String>,
    },
    /// Assemble a main block with FIBs.
    Assemble {
        #[arg(long)]
        pg: i64,
        #[arg(long)]
        block: String,
        #[arg(long)]
        r: Option<i64>,
        #[arg(long)]
        fiber: Option<String>,
        #[arg(long)]
        fiber2: Option<String>,
        /// Comma-separated FIB fibers, e.g. `I2,I1,I1`.
        #[arg(long)]
        fibs: Option<String>,
    },
    /// The classification table on the Noether line K² = 2p_g − 4.
    Horikawa {
        #[arg(long)]
        pg: i64,
    },
    /// Geography of small surfaces for one p_g.
    Geography {
        #[arg(long)]
        pg: i64,
    },
    /// Rational blowdown invariants; with --e the multisection K².
    Invariants {
        #[arg(long)]
        pg: i64,
        #[arg(long, default_value_t = 0)]
        n: i64,
        #[arg(long)]
        e: Option<i64>,
        #[arg(long, default_value_t = 0)]
        e_prime: i64,
        #[arg(long, default_value_t = 0)]
        n_prime: i64,
        #[arg(long, default_value_t = 0)]
        n_star: i64,
        #[arg(long, default_value_t = 0)]
        t30: i64,
    },
    /// The two-chain configuration on the Noether line.
    Leepark {
        #[arg(long)]
        pg: i64,
    },
    /// The log Bogomolov-Miyaoka-Yau bound for given singularities.
    Bmy {
        #[arg(long)]
        pg: i64,
        /// Repeatable singularity type `d,n,a`.
        #[arg(long = "sing")]
        sings: Vec<String>,
    },
}

#[derive(Subcommand)]
enum QuotCmd {
    /// The five involution-quotient cases of 1/m(1,q).
    Cases { m: String, q: String },
    /// Scan Wahl singularities up to index n.
    ScanWahl { max_n: i64 },
    /// Scan T-singularities up to d·n².
    ScanDuval { max_index: i64 },
    /// The T-singularity quotient of 1/n²(1,n−1).
    Leepark { n: i64 },
}

#[derive(Subcommand)]
enum CorpusCmd {
    /// Regenerate every family on the frozen grid and diff bit-exactly.
    Check {
        #[arg(long, default_value = "data/corpus")]
        dir: PathBuf,
    },
    /// Write the frozen grid to disk.
    Regen {
        #[arg(long, default_value = "data/corpus")]
        dir: PathBuf,
    },
}

// --- output helpers ------------------------------------------------------

fn obj(pairs: Vec<(&str, Value)>) -> Value {
    let sorted: BTreeMap<&str, Value> = pairs.into_iter().collect();
    let mut map = Map::new();
    for (k, v) in sorted {
        map.insert(k.to_string(), v);
    }
    Value::Object(map)
}

fn bignum(b: &BigInt) -> Value {
    Value::Number(b.to_string().parse().expect("integer literal"))
}

fn num(x: i64) -> Value {
    Value::Number(x.into())
}

fn chain_value(entries: &[BigInt]) -> Value {
    Value::Array(entries.iter().map(bignum).collect())
}

fn rat_str(r: &BigRational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

fn ttype_value(t: &TType) -> Value {
    obj(vec![
        ("d", bignum(t.d())),
        ("n", bignum(t.n())),
        ("a", bignum(t.a())),
    ])
}

fn pres_value(p: &PResolution) -> Value {
    obj(vec![
        (
            "source",
            obj(vec![
                ("delta", bignum(p.source.delta())),
                ("omega", bignum(p.source.omega())),
            ]),
        ),
        ("zcf", chain_value(p.zcf.entries())),
        (
            "nodes",
            Value::Array(
                p.nodes
                    .iter()
                    .map(|n| {
                        obj(vec![
                            ("d", bignum(n.d())),
                            ("n", bignum(n.n())),
                            ("a", bignum(n.a())),
                        ])
                    })
                    .collect(),
            ),
        ),
        ("links", chain_value(&p.links)),
        (
            "notation",
            Value::String(render(p).unwrap_or_else(|_| "(invalid)".to_string())),
        ),
    ])
}

struct Out {
    json: bool,
    limit: Option<usize>,
    emitted: usize,
}

impl Out {
    fn line(&mut self, text: String, value: Value) -> bool {
        if let Some(limit) = self.limit {
            if self.emitted >= limit {
                return false;
            }
        }
        self.emitted += 1;
        if self.json {
            println!("{}", serde_json::to_string(&value).expect("serialize"));
        } else {
            println!("{}", text);
        }
        true
    }
}

// --- command implementations ---------------------------------------------

fn parse_big(s: &str) -> Result<BigInt, Error> {
    s.parse::<BigInt>()
        .map_err(|_| Error::Validation(format!("`{}` is not an integer", s)))
}

fn parse_chain(s: &str) -> Result<Vec<BigInt>, Error> {
    s.split(',')
        .map(|t| parse_big(t.trim()))
        .collect::<Result<Vec<_>, _>>()
}

fn parse_fraction(delta: &str, omega: &str) -> Result<Fraction, Error> {
    Fraction::new(parse_big(delta)?, parse_big(omega)?)
}

fn parse_fiber(s: &str) -> Result<FiberKind, Error> {
    FiberKind::parse(s.trim())
}

fn parse_ttype(s: &str) -> Result<TType, Error> {
    let parts: Vec<&str> = s.split(',').collect();
    if parts.len() != 3 {
        return Err(Error::Validation(format!(
            "`{}` is not a d,n,a triple",
            s
        )));
    }
    TType::new(
        parse_big(parts[0].trim())?,
        parse_big(parts[1].trim())?,
        parse_big(parts[2].trim())?,
    )
}

fn fmt_chain(entries: &[BigInt]) -> String {
    let inner: Vec<String> = entries.iter().map(|e| e.to_string()).collect();
    format!("[{}]", inner.join(","))
}

/// 0 = ok, 2 = failed checks.
type CmdResult = Result<u8, Error>;

fn run_hj(cmd: HjCmd, out: &mut Out) -> CmdResult {
    match cmd {
        HjCmd::Expand { delta, omega } => {
            let f = parse_fraction(&delta, &omega)?;
            let chain = hj_expand(&f);
            out.line(
                fmt_chain(chain.entries()),
                obj(vec![("chain", chain_value(chain.entries()))]),
            );
        }
        HjCmd::Eval { chain } => {
            let v = parse_chain(&chain)?;
            let c = evaluate(&v)?;
            out.line(
                format!("p={} q={}", c.p, c.q),
                obj(vec![("p", bignum(&c.p)), ("q", bignum(&c.q))]),
            );
        }
        HjCmd::Dual { delta, omega } => {
            let f = parse_fraction(&delta, &omega)?;
            let chain = dual(&f);
            out.line(
                fmt_chain(chain.entries()),
                obj(vec![("chain", chain_value(chain.entries()))]),
            );
        }
    }
    Ok(0)
}

fn run_tchain(cmd: TchainCmd, out: &mut Out) -> CmdResult {
    match cmd {
        TchainCmd::Check { chain } => {
            let c = HJChain::new(parse_chain(&chain)?)?;
            match t_recognize(&c)? {
                Some(t) => {
                    out.line(
                        format!("T-chain: d={} n={} a={}", t.d(), t.n(), t.a()),
                        obj(vec![("t_type", ttype_value(&t))]),
                    );
                }
                None => {
                    out.line(
                        "not a T-chain".to_string(),
                        obj(vec![("t_type", Value::Null)]),
                    );
                }
            }
        }
        TchainCmd::Disc { chain } => {
            let c = HJChain::new(parse_chain(&chain)?)?;
            let d = discrepancies(&c)?;
            let rendered: Vec<String> = d.deltas.iter().map(rat_str).collect();
            let center_value = match t_recognize(&c)? {
                Some(_) => {
                    let idx = center(&c)?;
                    Value::Array(idx.iter().map(|&i| num(i as i64)).collect())
                }
                None => Value::Null,
            };
            out.line(
                format!("discrepancies: {}", rendered.join(", ")),
                obj(vec![
                    (
                        "discrepancies",
                        Value::Array(rendered.iter().cloned().map(Value::String).collect()),
                    ),
                    ("center", center_value),
                ]),
            );
        }
        TchainCmd::Children { chain } => {
            let c = HJChain::new(parse_chain(&chain)?)?;
            let (l, r) = t_children(&c)?;
            out.line(
                format!("{} {}", fmt_chain(l.entries()), fmt_chain(r.entries())),
                obj(vec![
                    ("left", chain_value(l.entries())),
                    ("right", chain_value(r.entries())),
                ]),
            );
        }
        TchainCmd::Enum {
            max_len,
            max_delta,
            d,
        } => {
            for (t, chain) in enumerate_t_chains(max_len, max_delta, d)? {
                let keep = out.line(
                    format!(
                        "{}  d={} n={} a={}",
                        fmt_chain(chain.entries()),
                        t.d(),
                        t.n(),
                        t.a()
                    ),
                    obj(vec![
                        ("chain", chain_value(chain.entries())),
                        ("t_type", ttype_value(&t)),
                    ]),
                );
                if !keep {
                    break;
                }
            }
        }
    }
    Ok(0)
}

fn run_zcf(cmd: ZcfCmd, out: &mut Out) -> CmdResult {
    let emit = |out: &mut Out, chains: Vec<ZeroChain>| {
        for z in chains {
            let keep = out.line(
                fmt_chain(z.entries()),
                obj(vec![("chain", chain_value(z.entries()))]),
            );
            if !keep {
                break;
            }
        }
    };
    match cmd {
        ZcfCmd::Enum { s } => emit(out, enumerate_zcf(s)?),
        ZcfCmd::Kset { delta, omega } => emit(out, k_set(&parse_fraction(&delta, &omega)?)?),
        ZcfCmd::Kcross { delta, omega } => {
            emit(out, k_cross_set(&parse_fraction(&delta, &omega)?)?)
        }
    }
    Ok(0)
}

fn run_pres(cmd: PresCmd, out: &mut Out) -> CmdResult {
    match cmd {
        PresCmd::All {
            delta,
            omega,
            cross,
            render: render_only,
        } => {
            let f = parse_fraction(&delta, &omega)?;
            for p in enumerate_p_resolutions(&f, cross)? {
                let text = if render_only {
                    render(&p)?
                } else {
                    format!("{}  {}", fmt_chain(p.zcf.entries()), render(&p)?)
                };
                if !out.line(text, pres_value(&p)) {
                    break;
                }
            }
            Ok(0)
        }
        PresCmd::Verify { delta, omega, zcf } => {
            let f = parse_fraction(&delta, &omega)?;
            let z = ZeroChain::new(parse_chain(&zcf)?)?;
            let p = compute_p_resolution(&f, &z)?;
            let report = verify_p_resolution(&p)?;
            let checks: Vec<Value> = report
                .checks()
                .iter()
                .map(|c| {
                    obj(vec![
                        ("name", Value::String(c.name.to_string())),
                        ("passed", Value::Bool(c.passed)),
                        ("detail", Value::String(c.detail.clone())),
                    ])
                })
                .collect();
            let text = report
                .checks()
                .iter()
                .map(|c| format!("{}: {}", c.name, if c.passed { "pass" } else { "FAIL" }))
                .collect::<Vec<_>>()
                .join("; ");
            out.line(
                format!("{}  {}", render(&p)?, text),
                obj(vec![
                    ("resolution", pres_value(&p)),
                    ("checks", Value::Array(checks)),
                    ("passed", Value::Bool(report.passed())),
                ]),
            );
            Ok(if report.passed() { 0 } else { 2 })
        }
        PresCmd::Render { delta, omega, zcf } => {
            let f = parse_fraction(&delta, &omega)?;
            let z = ZeroChain::new(parse_chain(&zcf)?)?;
            let p = compute_p_resolution(&f, &z)?;
            let report = verify_p_resolution(&p)?;
            if !report.passed() {
                return Err(Error::Precondition(
                    "resolution fails verification; not rendering".to_string(),
                ));
            }
            out.line(
                render(&p)?,
                obj(vec![("notation", Value::String(render(&p)?))]),
            );
            Ok(0)
        }
        PresCmd::Appendix { family, params } => {
            let id = FamilyId::parse(&family)?;
            let report = appendix_check(id, &params.to_family_params())?;
            emit_comparison(&report, out);
            Ok(if report.exact_match() { 0 } else { 2 })
        }
    }
}

fn emit_comparison(report: &ComparisonReport, out: &mut Out) {
    for row in &report.rows {
        let status = if row.matched { "match" } else { "MISMATCH" };
        out.line(
            format!(
                "{} {:?} {} -> {}  [{}]",
                report.family.name(),
                row.labels,
                row.zcf,
                row.expected_notation,
                status
            ),
            obj(vec![
                ("family", Value::String(report.family.name().to_string())),
                (
                    "labels",
                    Value::Array(
                        row.labels
                            .iter()
                            .map(|l| Value::String(l.to_string()))
                            .collect(),
                    ),
                ),
                ("zcf", chain_value(row.zcf.entries())),
                ("expected", Value::String(row.expected_notation.clone())),
                (
                    "actual",
                    row.actual_notation
                        .clone()
                        .map(Value::String)
                        .unwrap_or(Value::Null),
                ),
                ("matched", Value::Bool(row.matched)),
            ]),
        );
    }
    for (z, s) in &report.extra {
        out.line(
            format!("{} extra {} -> {}", report.family.name(), z, s),
            obj(vec![
                ("family", Value::String(report.family.name().to_string())),
                ("extra_zcf", chain_value(z.entries())),
                ("notation", Value::String(s.clone())),
            ]),
        );
    }
}

fn block_value(b: &cqs_core::smallsurf::BlockInstance) -> Value {
    obj(vec![
        ("id", Value::String(b.id.name().to_string())),
        (
            "chains",
            Value::Array(
                b.chains
                    .iter()
                    .map(|(t, c)| {
                        obj(vec![
                            ("t_type", ttype_value(t)),
                            ("chain", chain_value(c.entries())),
                        ])
                    })
                    .collect(),
            ),
        ),
        ("local_k2", num(b.local_k2)),
        ("blowups", num(b.blowups)),
        (
            "section_discrepancy",
            b.section_discrepancy
                .as_ref()
                .map(|r| Value::String(rat_str(r)))
                .unwrap_or(Value::Null),
        ),
        ("euler_cost", num(b.euler_cost)),
        ("complete_fibers", num(b.complete_fibers)),
        (
            "j_class",
            b.j_class.map(num).unwrap_or(Value::Null),
        ),
    ])
}

fn report_value(rep: &SmallSurfaceReport) -> Value {
    obj(vec![
        ("pg", num(rep.pg)),
        ("k2", num(rep.k2)),
        ("n_fibers", num(rep.n_fibers)),
        ("singularity_count", num(rep.singularity_count)),
        (
            "singularities",
            Value::Array(
                rep.singularities
                    .iter()
                    .map(|(t, c)| {
                        obj(vec![
                            ("t_type", ttype_value(t)),
                            ("chain", chain_value(c.entries())),
                        ])
                    })
                    .collect(),
            ),
        ),
        ("euler_used", num(rep.euler_used)),
        ("euler_budget", num(rep.euler_budget)),
        (
            "nef_junctions",
            Value::Array(
                rep.nef_checks
                    .iter()
                    .map(|r| Value::String(rat_str(r)))
                    .collect(),
            ),
        ),
        (
            "checks",
            Value::Array(
                rep.checks
                    .iter()
                    .map(|(name, ok, detail)| {
                        obj(vec![
                            ("name", Value::String(name.clone())),
                            ("passed", Value::Bool(*ok)),
                            ("detail", Value::String(detail.clone())),
                        ])
                    })
                    .collect(),
            ),
        ),
        (
            "invariants",
            obj(vec![
                ("chi_top", num(rep.invariants.chi_top)),
                ("b_plus", num(rep.invariants.b_plus)),
                ("b_minus", num(rep.invariants.b_minus)),
                ("sigma", num(rep.invariants.sigma)),
                ("homeo_type", Value::String(rep.invariants.homeo_type.clone())),
            ]),
        ),
        ("topology_caveat", Value::Bool(rep.topology_caveat)),
    ])
}

fn run_small(cmd: SmallCmd, out: &mut Out) -> CmdResult {
    match cmd {
        SmallCmd::Block {
            id,
            r,
            fiber,
            fiber2,
        } => {
            let params = BlockParams {
                r,
                fiber: fiber.as_deref().map(parse_fiber).transpose()?,
                fiber2: fiber2.as_deref().map(parse_fiber).transpose()?,
            };
            let b = instantiate_block(BlockId::parse(&id)?, &params)?;
            let chains: Vec<String> = b
                .chains
                .iter()
                .map(|(t, c)| format!("{} = {}", fmt_chain(c.entries()), t))
                .collect();
            out.line(
                format!(
                    "{}: K²={} m={} χ={} chains: {}",
                    b.id,
                    b.local_k2,
                    b.blowups,
                    b.euler_cost,
                    chains.join("; ")
                ),
                block_value(&b),
            );
            Ok(0)
        }
        SmallCmd::Assemble {
            pg,
            block,
            r,
            fiber,
            fiber2,
            fibs,
        } => {
            let params = BlockParams {
                r,
                fiber: fiber.as_deref().map(parse_fiber).transpose()?,
                fiber2: fiber2.as_deref().map(parse_fiber).transpose()?,
            };
            let main = instantiate_block(BlockId::parse(&block)?, &params)?;
            let mut fib_instances = Vec::new();
            if let Some(list) = fibs {
                for part in list.split(',') {
                    fib_instances.push(instantiate_block(
                        BlockId::Fib,
                        &BlockParams {
                            r: None,
                            fiber: Some(parse_fiber(part)?),
                            fiber2: None,
                        },
                    )?);
                }
            }
            let config = SmallSurfaceConfig::new(pg, main, fib_instances)?;
            let rep = assemble(&config)?;
            let ok = rep.all_checks_pass();
            let sings: Vec<String> = rep
                .singularities
                .iter()
                .map(|(_, c)| fmt_chain(c.entries()))
                .collect();
            out.line(
                format!(
                    "K²={} N={} l={} χ={}≤{} checks={} sings: {}",
                    rep.k2,
                    rep.n_fibers,
                    rep.singularity_count,
                    rep.euler_used,
                    rep.euler_budget,
                    if ok { "pass" } else { "FAIL" },
                    sings.join(" ")
                ),
                report_value(&rep),
            );
            Ok(if ok { 0 } else { 2 })
        }
        SmallCmd::Horikawa { pg } => {
            for fam in horikawa_families(pg)? {
                let keep = out.line(
                    format!(
                        "{}: {} [{}; stated ≤ {}, budget ≤ {}] {}",
                        fam.label,
                        fam.chain_spec,
                        fam.block.map(|b| b.name()).unwrap_or("Lee-Park"),
                        fam.bound_stated,
                        fam.bound_computed,
                        fam.smoothability_note
                    ),
                    obj(vec![
                        ("label", Value::String(fam.label.clone())),
                        (
                            "block",
                            fam.block
                                .map(|b| Value::String(b.name().to_string()))
                                .unwrap_or(Value::Null),
                        ),
                        ("chains", Value::String(fam.chain_spec.clone())),
                        ("param_count", num(fam.param_count as i64)),
                        ("bound_stated", num(fam.bound_stated)),
                        ("bound_computed", num(fam.bound_computed)),
                        (
                            "smoothability",
                            Value::String(fam.smoothability_note.clone()),
                        ),
                    ]),
                );
                if !keep {
                    break;
                }
            }
            Ok(0)
        }
        SmallCmd::Geography { pg } => {
            let g = geography(pg)?;
            let witnesses: Vec<String> = g
                .max_witnesses
                .iter()
                .map(|(b, s)| format!("{} with {} FIBs", b.name(), s))
                .collect();
            out.line(
                format!(
                    "p_g={}: {} ≤ K² ≤ {} (max via {}; global bound {})",
                    pg,
                    g.min_k2,
                    g.max_k2,
                    witnesses.join(", "),
                    if g.attains_global_bound {
                        "attained"
                    } else {
                        "not attained"
                    }
                ),
                obj(vec![
                    ("pg", num(pg)),
                    ("min_k2", num(g.min_k2)),
                    ("max_k2", num(g.max_k2)),
                    (
                        "max_witnesses",
                        Value::Array(
                            g.max_witnesses
                                .iter()
                                .map(|(b, s)| {
                                    obj(vec![
                                        ("block", Value::String(b.name().to_string())),
                                        ("fibs", num(*s)),
                                    ])
                                })
                                .collect(),
                        ),
                    ),
                    ("attains_global_bound", Value::Bool(g.attains_global_bound)),
                    (
                        "attained",
                        Value::Array(
                            g.attained
                                .iter()
                                .map(|(k2, (b, s))| {
                                    obj(vec![
                                        ("k2", num(*k2)),
                                        ("block", Value::String(b.name().to_string())),
                                        ("fibs", num(*s)),
                                    ])
                                })
                                .collect(),
                        ),
                    ),
                ]),
            );
            Ok(0)
        }
        SmallCmd::Invariants {
            pg,
            n,
            e,
            e_prime,
            n_prime,
            n_star,
            t30,
        } => {
            if let Some(e) = e {
                let k2 = k2_multisection(e, e_prime, n, n_prime, n_star, t30, pg)?;
                out.line(
                    format!("K² = {}", k2),
                    obj(vec![("k2", num(k2))]),
                );
                return Ok(0);
            }
            let inv = blowdown_invariants(pg, n)?;
            out.line(
                format!(
                    "K²={} χ_top={} b⁺={} b⁻={} σ={} homeo: {}",
                    inv.k2, inv.chi_top, inv.b_plus, inv.b_minus, inv.sigma, inv.homeo_type
                ),
                obj(vec![
                    ("k2", num(inv.k2)),
                    ("chi_top", num(inv.chi_top)),
                    ("b_plus", num(inv.b_plus)),
                    ("b_minus", num(inv.b_minus)),
                    ("sigma", num(inv.sigma)),
                    ("homeo_type", Value::String(inv.homeo_type.clone())),
                ]),
            );
            Ok(0)
        }
        SmallCmd::Leepark { pg } => {
            let lp = lee_park(pg)?;
            out.line(
                format!(
                    "two {} singularities 1/{}(1,{}), K² = {}",
                    fmt_chain(lp.chain.entries()),
                    lp.singularity.fraction().delta(),
                    lp.singularity.fraction().omega(),
                    lp.k2
                ),
                obj(vec![
                    ("chain", chain_value(lp.chain.entries())),
                    ("t_type", ttype_value(&lp.singularity)),
                    ("k2", num(lp.k2)),
                    (
                        "invariants",
                        obj(vec![
                            ("b_plus", num(lp.invariants.b_plus)),
                            ("b_minus", num(lp.invariants.b_minus)),
                            (
                                "homeo_type",
                                Value::String(lp.invariants.homeo_type.clone()),
                            ),
                        ]),
                    ),
                ]),
            );
            Ok(0)
        }
        SmallCmd::Bmy { pg, sings } => {
            let types: Vec<TType> = sings
                .iter()
                .map(|s| parse_ttype(s))
                .collect::<Result<_, _>>()?;
            let bound = bmy_bound(pg, &types)?;
            out.line(
                format!("K² ≤ {}", rat_str(&bound)),
                obj(vec![("bound", Value::String(rat_str(&bound)))]),
            );
            Ok(0)
        }
    }
}

fn scan_outcome(report: &ScanReport, what: &str, out: &mut Out) -> u8 {
    out.line(
        format!(
            "{}: scanned {}, {} counterexamples{}",
            what,
            report.scanned,
            report.counterexamples.len(),
            if report.clean() { "" } else { ":" }
        ),
        obj(vec![
            ("scanned", num(report.scanned as i64)),
            (
                "counterexamples",
                Value::Array(
                    report
                        .counterexamples
                        .iter()
                        .map(|s| Value::String(s.clone()))
                        .collect(),
                ),
            ),
        ]),
    );
    if !report.clean() {
        for c in &report.counterexamples {
            eprintln!("  {}", c);
        }
        2
    } else {
        0
    }
}

fn run_quot(cmd: QuotCmd, out: &mut Out) -> CmdResult {
    match cmd {
        QuotCmd::Cases { m, q } => {
            let cqs = Cqs::new(parse_big(&m)?, parse_big(&q)?)?;
            for o in quotient_candidates(&cqs)? {
                let raw = match &o.raw {
                    cqs_core::quotient::RawQuotient::Smooth => "smooth".to_string(),
                    cqs_core::quotient::RawQuotient::Candidate { m0, q0 } => {
                        format!("({},{})", m0, q0)
                    }
                };
                let text = if o.applicable {
                    let norm = o
                        .normalized
                        .as_ref()
                        .map(|c| c.to_string())
                        .unwrap_or_else(|| "smooth point".to_string());
                    let t = o
                        .is_t
                        .as_ref()
                        .map(|t| format!(" = T{}", t))
                        .unwrap_or_default();
                    format!("case ({}): {} -> {}{}", o.case, raw, norm, t)
                } else {
                    format!(
                        "case ({}): inapplicable ({})",
                        o.case,
                        o.reason.clone().unwrap_or_default()
                    )
                };
                let keep = out.line(
                    text,
                    obj(vec![
                        ("case", Value::String(o.case.to_string())),
                        ("raw", Value::String(raw)),
                        ("applicable", Value::Bool(o.applicable)),
                        (
                            "normalized",
                            o.normalized
                                .as_ref()
                                .map(|c| {
                                    obj(vec![
                                        ("m", bignum(c.m())),
                                        ("q", bignum(c.q())),
                                    ])
                                })
                                .unwrap_or(Value::Null),
                        ),
                        ("smooth", Value::Bool(o.is_smooth)),
                        (
                            "t_type",
                            o.is_t.as_ref().map(ttype_value).unwrap_or(Value::Null),
                        ),
                        (
                            "reason",
                            o.reason.clone().map(Value::String).unwrap_or(Value::Null),
                        ),
                    ]),
                );
                if !keep {
                    break;
                }
            }
            Ok(0)
        }
        QuotCmd::ScanWahl { max_n } => {
            let report = wahl_quotient_scan(max_n)?;
            Ok(scan_outcome(&report, "Wahl quotient scan", out))
        }
        QuotCmd::ScanDuval { max_index } => {
            let report = duval_quotient_scan(max_index)?;
            Ok(scan_outcome(&report, "Du Val quotient scan", out))
        }
        QuotCmd::Leepark { n } => {
            let (case, cqs, t) = lee_park_quotient(n)?;
            out.line(
                format!("case ({}): {} = T{}", case, cqs, t),
                obj(vec![
                    ("case", Value::String(case.to_string())),
                    ("m", bignum(cqs.m())),
                    ("q", bignum(cqs.q())),
                    ("t_type", ttype_value(&t)),
                ]),
            );
            Ok(0)
        }
    }
}

fn run_selftest(out: &mut Out) -> CmdResult {
    let mut failures = 0usize;
    let mut item = |name: &str, ok: bool, out: &mut Out| {
        out.line(
            format!("{}: {}", name, if ok { "pass" } else { "FAIL" }),
            obj(vec![
                ("name", Value::String(name.to_string())),
                ("passed", Value::Bool(ok)),
            ]),
        );
        if !ok {
            failures += 1;
        }
    };

    let round_trip = (2i64..=120).all(|delta| {
        (1..delta)
            .filter(|&o| num_integer::gcd(delta, o) == 1)
            .all(|omega| {
                let f = Fraction::new(delta, omega).unwrap();
                let v = evaluate(hj_expand(&f).entries()).unwrap();
                v.p == BigInt::from(delta) && v.q == BigInt::from(omega)
            })
    });
    item("hj round trip (Δ ≤ 120)", round_trip, out);

    let catalan = enumerate_zcf(8).map(|v| v.len() == 429).unwrap_or(false);
    item("Catalan count at s = 8", catalan, out);

    let blowdown = GenChain::from_i64s(&[2, 2, 2, 1, 4])
        .and_then(|g| blow_down(&g))
        .map(|end| end.is_terminal())
        .unwrap_or(false);
    item("blow-down of [2,2,2,1,4]", blowdown, out);

    let type_ii = appendix_check(
        FamilyId::TypeII,
        &FamilyParams {
            a: Some(4),
            ..Default::default()
        },
    )
    .map(|r| r.exact_match())
    .unwrap_or(false);
    item("appendix family [3,4,2]", type_ii, out);

    let tables = horikawa_families(3).map(|f| f.len() == 4).unwrap_or(false)
        && horikawa_families(4).map(|f| f.len() == 10).unwrap_or(false);
    item("classification table sizes", tables, out);

    let wahl = wahl_quotient_scan(12).map(|r| r.clean()).unwrap_or(false);
    item("Wahl quotient scan (n ≤ 12)", wahl, out);

    Ok(if failures == 0 { 0 } else { 2 })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut out = Out {
        json: cli.json,
        limit: cli.limit,
        emitted: 0,
    };
    let outcome = match cli.cmd {
        Cmd::Hj(c) => run_hj(c, &mut out),
        Cmd::Tchain(c) => run_tchain(c, &mut out),
        Cmd::Zcf(c) => run_zcf(c, &mut out),
        Cmd::Pres(c) => run_pres(c, &mut out),
        Cmd::Small(c) => run_small(c, &mut out),
        Cmd::Quot(c) => run_quot(c, &mut out),
        Cmd::Selftest => run_selftest(&mut out),
        Cmd::Corpus(c) => corpus::run(c, &mut out),
    };
    match outcome {
        Ok(0) => ExitCode::SUCCESS,
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {}", e);
            match e {
                Error::Internal(_) => ExitCode::from(3),
                _ => ExitCode::from(1),
            }
        }
    }
}
