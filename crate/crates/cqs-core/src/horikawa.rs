//! The classification tables for surfaces on the Noether line
//! K² = 2p_g − 4, and the geography of small surfaces.
//!
//! Besides the Lee-Park configuration, there are 3 small-surface
//! families for p_g = 3, 9 for p_g = 4, and 8 for every p_g ≥ 5. Each
//! family record carries its stated parameter bound verbatim next to the
//! bound recomputed from the Euler budget Σ χ_top(F) ≤ 12(p_g + 1); the
//! two are not reconciled when they differ.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::smallsurf::{
    assemble, instantiate_block, lee_park, BlockId, BlockInstance, BlockParams, FiberKind,
    SmallSurfaceConfig, SmallSurfaceReport,
};
use crate::tsing::TType;

/// One parametric family of the classification.
#[derive(Debug, Clone)]
pub struct HorikawaFamily {
    pub pg: i64,
    /// Roman label within its p_g table, e.g. "p_g=4 (vi)".
    pub label: String,
    /// `None` marks the Lee-Park family.
    pub block: Option<BlockId>,
    /// Human-readable chain list as tabulated.
    pub chain_spec: String,
    /// Number of free multiplicity parameters (0, 1, or 2).
    pub param_count: usize,
    /// Stated upper bound on the parameter (sum) in the table.
    pub bound_stated: i64,
    /// Upper bound recomputed from the Euler budget alone.
    pub bound_computed: i64,
    pub smoothability_note: String,
}

/// Internal constructor data: how to realize the family at a parameter
/// choice as a block-plus-FIBs configuration.
#[derive(Debug, Clone)]
enum Realize {
    LeePark,
    Config {
        block: BlockId,
        r: Option<i64>,
        /// fiber sizes as functions of (n1, n2)
        fiber: fn(i64, i64, i64) -> Option<FiberKind>,
        fiber2: fn(i64, i64, i64) -> Option<FiberKind>,
        /// FIB count and how the first FIB absorbs a parameter
        fib_count: i64,
        fib_extra: fn(i64, i64) -> i64,
    },
}

struct FamilySpec {
    label: &'static str,
    block: Option<BlockId>,
    chain_spec: String,
    param_count: usize,
    bound_stated: i64,
    realize: Realize,
}

fn note_for(pg: i64, is_lee_park: bool) -> String {
    if is_lee_park {
        if pg == 6 {
            "smoothable; K²=8 admits both spin and nonspin smoothings".to_string()
        } else {
            "smoothable only into the nonspin component".to_string()
        }
    } else if pg >= 10 {
        "not smoothable (no KSBA degeneration of Horikawa surfaces)".to_string()
    } else if pg == 3 {
        "smoothings exist only for certain members of families (i) and (iv)".to_string()
    } else {
        "smoothability not settled here".to_string()
    }
}

fn fib_sizes(count: i64, extra: i64) -> Vec<FiberKind> {
    let mut v = Vec::new();
    for i in 0..count {
        if i == 0 {
            v.push(FiberKind::I(1 + extra));
        } else {
            v.push(FiberKind::I(1));
        }
    }
    v
}

fn families_for(pg: i64) -> Vec<FamilySpec> {
    let mut out = Vec::new();
    out.push(FamilySpec {
        label: "i",
        block: None,
        chain_spec: format!("two [{},2^{}]", pg + 1, (pg - 3).max(0)),
        param_count: 0,
        bound_stated: 0,
        realize: Realize::LeePark,
    });
    if pg == 3 {
        out.push(FamilySpec {
            label: "ii",
            block: Some(BlockId::S0F),
            chain_spec: "one [2,2,6], one [2,5], n [4]".to_string(),
            param_count: 1,
            bound_stated: 43,
            realize: Realize::Config {
                block: BlockId::S0F,
                r: Some(6),
                fiber: |_, _, _| None,
                fiber2: |_, _, _| None,
                fib_count: 1,
                fib_extra: |n1, _| n1,
            },
        });
        out.push(FamilySpec {
            label: "iii",
            block: Some(BlockId::S1F2),
            chain_spec: "one [4,5,3,2,2], n [6,2,2]".to_string(),
            param_count: 1,
            bound_stated: 44,
            realize: Realize::Config {
                block: BlockId::S1F2,
                r: Some(4),
                fiber: |n1, _, r| Some(FiberKind::I(r - 2 + n1)),
                fiber2: |_, _, _| None,
                fib_count: 0,
                fib_extra: |_, _| 0,
            },
        });
        out.push(FamilySpec {
            label: "iv",
            block: Some(BlockId::S1F4),
            chain_spec: "one [2,4,3,3] (d=2), n [4]".to_string(),
            param_count: 1,
            bound_stated: 43,
            realize: Realize::Config {
                block: BlockId::S1F4,
                r: Some(4),
                fiber: |n1, _, r| Some(FiberKind::I(r - 2 + n1)),
                fiber2: |_, _, _| None,
                fib_count: 0,
                fib_extra: |_, _| 0,
            },
        });
    } else if pg == 4 {
        out.push(FamilySpec {
            label: "ii",
            block: Some(BlockId::S0F),
            chain_spec: "one [9,2^5], two [2,5], n [4]".to_string(),
            param_count: 1,
            bound_stated: 52,
            realize: Realize::Config {
                block: BlockId::S0F,
                r: Some(9),
                fiber: |_, _, _| None,
                fiber2: |_, _, _| None,
                fib_count: 2,
                fib_extra: |n1, _| n1,
            },
        });
        out.push(FamilySpec {
            label: "iii",
            block: Some(BlockId::S1F2),
            chain_spec: "one [7,8,2,2,2,3,2^5], one [2,5], n1 [4], n2 [9,2^5]".to_string(),
            param_count: 2,
            bound_stated: 53,
            realize: Realize::Config {
                block: BlockId::S1F2,
                r: Some(7),
                fiber: |_, n2, r| Some(FiberKind::I(r - 2 + n2)),
                fiber2: |_, _, _| None,
                fib_count: 1,
                fib_extra: |n1, _| n1,
            },
        });
        out.push(FamilySpec {
            label: "iv",
            block: Some(BlockId::S1F4),
            chain_spec: "one [2,7,3,2,2,2,3] (d=2), one [2,5], n [4]".to_string(),
            param_count: 1,
            bound_stated: 52,
            realize: Realize::Config {
                block: BlockId::S1F4,
                r: Some(7),
                fiber: |_, _, r| Some(FiberKind::I(r - 2)),
                fiber2: |_, _, _| None,
                fib_count: 1,
                fib_extra: |n1, _| n1,
            },
        });
        out.push(FamilySpec {
            label: "v",
            block: Some(BlockId::S2F3),
            chain_spec: "one [3,2,2,3,5,5,2], n1 [4], n2 [5,2]".to_string(),
            param_count: 2,
            bound_stated: 54,
            realize: Realize::Config {
                block: BlockId::S2F3,
                r: None,
                fiber: |n1, _, _| Some(FiberKind::I(4 + n1)),
                fiber2: |_, n2, _| Some(FiberKind::I(1 + n2)),
                fib_count: 0,
                fib_extra: |_, _| 0,
            },
        });
        out.push(FamilySpec {
            label: "vi",
            block: Some(BlockId::S2F4),
            chain_spec: "one [3,2^4,3,8,2] (d=2), one [3,2,6,2], n1 [4], n2 [2,5]".to_string(),
            param_count: 2,
            bound_stated: 52,
            realize: Realize::Config {
                block: BlockId::S2F4,
                r: Some(5),
                fiber: |n1, _, r| Some(FiberKind::I(r + 1 + n1)),
                fiber2: |_, n2, _| Some(FiberKind::I(1 + n2)),
                fib_count: 0,
                fib_extra: |_, _| 0,
            },
        });
        out.push(FamilySpec {
            label: "vii",
            block: Some(BlockId::S2F5),
            chain_spec: "one [3,2,2,2,3,7,2] (d=2), one [3,5,3,2], n1 [4], n2 [2,5]".to_string(),
            param_count: 2,
            bound_stated: 52,
            realize: Realize::Config {
                block: BlockId::S2F5,
                r: Some(5),
                fiber: |n1, _, r| Some(FiberKind::I(r + n1)),
                fiber2: |_, n2, _| Some(FiberKind::I(2 + n2)),
                fib_count: 0,
                fib_extra: |_, _| 0,
            },
        });
        out.push(FamilySpec {
            label: "viii",
            block: Some(BlockId::S2F6),
            chain_spec: "one [3,7,2,2,3,2], one [3,8,2,2,2,3,2], one [3,5,2], n1 [4], n2 [2,5]"
                .to_string(),
            param_count: 2,
            bound_stated: 52,
            realize: Realize::Config {
                block: BlockId::S2F6,
                r: Some(5),
                fiber: |n1, _, _| Some(FiberKind::I(2 + n1)),
                fiber2: |_, n2, r| Some(FiberKind::I(r + n2)),
                fib_count: 0,
                fib_extra: |_, _| 0,
            },
        });
        out.push(FamilySpec {
            label: "ix",
            block: Some(BlockId::S2F7),
            chain_spec: "one [4,5,5,2,2,3,2,2], n1 [4], n2 [6,2,2]".to_string(),
            param_count: 2,
            bound_stated: 54,
            realize: Realize::Config {
                block: BlockId::S2F7,
                r: Some(5),
                fiber: |n1, _, _| Some(FiberKind::I(1 + n1)),
                fiber2: |_, n2, r| Some(FiberKind::I(r - 1 + n2)),
                fib_count: 0,
                fib_extra: |_, _| 0,
            },
        });
        out.push(FamilySpec {
            label: "x",
            block: Some(BlockId::S2F8),
            chain_spec: "one [4,6,2,3,2,2], one [4,8,2,2,2,3,2,2], n1 [4], n2 [6,2,2]".to_string(),
            param_count: 2,
            bound_stated: 53,
            realize: Realize::Config {
                block: BlockId::S2F8,
                r: Some(5),
                fiber: |n1, _, _| Some(FiberKind::I(1 + n1)),
                fiber2: |_, n2, r| Some(FiberKind::I(r + n2)),
                fib_count: 0,
                fib_extra: |_, _| 0,
            },
        });
    } else if pg >= 5 {
        out.push(FamilySpec {
            label: "ii",
            block: Some(BlockId::S0F),
            chain_spec: format!(
                "one [{},2^{}], {} [2,5], n [4]",
                3 * pg - 3,
                3 * pg - 7,
                pg - 2
            ),
            param_count: 1,
            bound_stated: 8 * pg + 20,
            realize: Realize::Config {
                block: BlockId::S0F,
                r: Some(3 * pg - 3),
                fiber: |_, _, _| None,
                fiber2: |_, _, _| None,
                fib_count: pg - 2,
                fib_extra: |n1, _| n1,
            },
        });
        out.push(FamilySpec {
            label: "iii",
            block: Some(BlockId::S1F2),
            chain_spec: format!(
                "one [{0},{1},2^{2},3,2^{3}], {4} [2,5], n1 [4], n2 [{5},2^{3}]",
                3 * pg - 5,
                3 * pg - 4,
                3 * pg - 9,
                3 * pg - 7,
                pg - 3,
                3 * pg - 3
            ),
            param_count: 2,
            bound_stated: 8 * pg + 22,
            realize: Realize::Config {
                block: BlockId::S1F2,
                r: Some(3 * pg - 5),
                fiber: |_, n2, r| Some(FiberKind::I(r - 2 + n2)),
                fiber2: |_, _, _| None,
                fib_count: pg - 3,
                fib_extra: |n1, _| n1,
            },
        });
        out.push(FamilySpec {
            label: "iv",
            block: Some(BlockId::S1F4),
            chain_spec: format!(
                "one [2,{},3,2^{},3] (d=2), {} [2,5], n [4]",
                3 * pg - 5,
                3 * pg - 9,
                pg - 3
            ),
            param_count: 1,
            bound_stated: 8 * pg + 20,
            realize: Realize::Config {
                block: BlockId::S1F4,
                r: Some(3 * pg - 5),
                fiber: |_, _, r| Some(FiberKind::I(r - 2)),
                fiber2: |_, _, _| None,
                fib_count: pg - 3,
                fib_extra: |n1, _| n1,
            },
        });
        out.push(FamilySpec {
            label: "v",
            block: Some(BlockId::S2F4),
            chain_spec: format!(
                "one [3,2^{},3,{},2] (d=2), {}+n1 [2,5], one [3,2,6,2], n2 [4]",
                3 * pg - 8,
                3 * pg - 4,
                pg - 4
            ),
            param_count: 2,
            bound_stated: 8 * pg + 21,
            realize: Realize::Config {
                block: BlockId::S2F4,
                r: Some(3 * pg - 7),
                fiber: |_, _, r| Some(FiberKind::I(r + 1)),
                fiber2: |n1, _, _| Some(FiberKind::I(1 + n1)),
                fib_count: pg - 4,
                fib_extra: |_, n2| n2,
            },
        });
        out.push(FamilySpec {
            label: "vi",
            block: Some(BlockId::S2F5),
            chain_spec: format!(
                "one [3,2^{},3,{},2] (d=2), {}+n1 [2,5], one [3,5,3,2], n2 [4]",
                3 * pg - 9,
                3 * pg - 5,
                pg - 4
            ),
            param_count: 2,
            bound_stated: 8 * pg + 21,
            realize: Realize::Config {
                block: BlockId::S2F5,
                r: Some(3 * pg - 7),
                fiber: |_, _, r| Some(FiberKind::I(r)),
                fiber2: |n1, _, _| Some(FiberKind::I(2 + n1)),
                fib_count: pg - 4,
                fib_extra: |_, n2| n2,
            },
        });
        out.push(FamilySpec {
            label: "vii",
            block: Some(BlockId::S2F6),
            chain_spec: format!(
                "one [3,{},2^{},3,2], one [3,{},2^{},3,2], {}+n1 [2,5], one [3,5,2], n2 [4]",
                3 * pg - 5,
                3 * pg - 10,
                3 * pg - 4,
                3 * pg - 9,
                pg - 4
            ),
            param_count: 2,
            bound_stated: 8 * pg + 21,
            realize: Realize::Config {
                block: BlockId::S2F6,
                r: Some(3 * pg - 7),
                fiber: |_, _, _| Some(FiberKind::I(2)),
                fiber2: |n1, _, r| Some(FiberKind::I(r + n1)),
                fib_count: pg - 4,
                fib_extra: |_, n2| n2,
            },
        });
        out.push(FamilySpec {
            label: "viii",
            block: Some(BlockId::S2F7),
            chain_spec: format!(
                "one [4,{},5,2^{},3,2,2], {} [2,5], n1 [4], n2 [6,2,2]",
                3 * pg - 7,
                3 * pg - 10,
                pg - 4
            ),
            param_count: 2,
            bound_stated: 8 * pg + 23,
            realize: Realize::Config {
                block: BlockId::S2F7,
                r: Some(3 * pg - 7),
                fiber: |_, _, _| Some(FiberKind::I(1)),
                fiber2: |_, n2, r| Some(FiberKind::I(r - 1 + n2)),
                fib_count: pg - 4,
                fib_extra: |n1, _| n1,
            },
        });
        out.push(FamilySpec {
            label: "ix",
            block: Some(BlockId::S2F8),
            chain_spec: format!(
                "one [4,{},2^{},3,2,2], one [4,{},2^{},3,2,2], {} [2,5], n1 [4], n2 [6,2,2]",
                3 * pg - 6,
                3 * pg - 11,
                3 * pg - 4,
                3 * pg - 9,
                pg - 4
            ),
            param_count: 2,
            bound_stated: 8 * pg + 22,
            realize: Realize::Config {
                block: BlockId::S2F8,
                r: Some(3 * pg - 7),
                fiber: |_, _, _| Some(FiberKind::I(1)),
                fiber2: |_, n2, r| Some(FiberKind::I(r + n2)),
                fib_count: pg - 4,
                fib_extra: |n1, _| n1,
            },
        });
    }
    out
}

/// Instantiate a family at a parameter choice (n2 ignored for one- and
/// zero-parameter families).
pub fn instantiate_family(
    pg: i64,
    label: &str,
    n1: i64,
    n2: i64,
) -> Result<Option<SmallSurfaceConfig>> {
    let spec = families_for(pg)
        .into_iter()
        .find(|f| f.label == label)
        .ok_or_else(|| Error::validation(format!("no family ({}) for p_g = {}", label, pg)))?;
    match spec.realize {
        Realize::LeePark => Ok(None),
        Realize::Config {
            block,
            r,
            fiber,
            fiber2,
            fib_count,
            fib_extra,
        } => {
            let main = instantiate_block(
                block,
                &BlockParams {
                    r,
                    fiber: fiber(n1, n2, r.unwrap_or(0)),
                    fiber2: fiber2(n1, n2, r.unwrap_or(0)),
                },
            )?;
            let fibs: Result<Vec<BlockInstance>> = fib_sizes(fib_count, fib_extra(n1, n2))
                .into_iter()
                .map(|f| {
                    instantiate_block(
                        BlockId::Fib,
                        &BlockParams {
                            r: None,
                            fiber: Some(f),
                            fiber2: None,
                        },
                    )
                })
                .collect();
            Ok(Some(SmallSurfaceConfig::new(pg, main, fibs?)?))
        }
    }
}

fn computed_bound(pg: i64, label: &str) -> Result<i64> {
    // largest n1 + n2 whose instantiation stays within the Euler budget
    let budget = 12 * (pg + 1);
    let base = match instantiate_family(pg, label, 0, 0)? {
        None => return Ok(0),
        Some(cfg) => assemble(&cfg)?.euler_used,
    };
    // every unit of n1 or n2 enlarges exactly one consumed fiber by one
    Ok(budget - base)
}

/// The classification table for a given p_g ≥ 3: the Lee-Park family
/// plus the small-surface families.
pub fn horikawa_families(pg: i64) -> Result<Vec<HorikawaFamily>> {
    if pg < 3 {
        return Err(Error::validation("the classification needs p_g >= 3"));
    }
    let mut out = Vec::new();
    for spec in families_for(pg) {
        let bound_computed = if spec.param_count == 0 {
            0
        } else {
            computed_bound(pg, spec.label)?
        };
        out.push(HorikawaFamily {
            pg,
            label: format!("p_g={} ({})", pg, spec.label),
            block: spec.block,
            chain_spec: spec.chain_spec,
            param_count: spec.param_count,
            bound_stated: spec.bound_stated,
            bound_computed,
            smoothability_note: note_for(pg, spec.block.is_none()),
        });
    }
    Ok(out)
}

/// Assemble a family instantiation and check K² = 2p_g − 4.
pub fn validate_family_instance(
    pg: i64,
    label: &str,
    n1: i64,
    n2: i64,
) -> Result<Option<SmallSurfaceReport>> {
    match instantiate_family(pg, label, n1, n2)? {
        None => {
            let lp = lee_park(pg)?;
            if lp.k2 != 2 * pg - 4 {
                return Err(Error::internal("Lee-Park family off the Noether line"));
            }
            Ok(None)
        }
        Some(cfg) => {
            let report = assemble(&cfg)?;
            if report.k2 != 2 * pg - 4 {
                return Err(Error::internal(format!(
                    "family ({}) at ({}, {}) has K² = {} instead of {}",
                    label,
                    n1,
                    n2,
                    report.k2,
                    2 * pg - 4
                )));
            }
            if !report.all_checks_pass() {
                return Err(Error::internal(format!(
                    "family ({}) at ({}, {}) fails assembly checks: {:?}",
                    label, n1, n2, report.checks
                )));
            }
            Ok(Some(report))
        }
    }
}

/// Geography of small surfaces for a fixed p_g.
#[derive(Debug, Clone)]
pub struct GeographyReport {
    pub pg: i64,
    pub min_k2: i64,
    pub max_k2: i64,
    /// Blocks attaining the maximum, with the FIB count that does it.
    pub max_witnesses: Vec<(BlockId, i64)>,
    /// One witness configuration (block, FIB count) per attained K².
    pub attained: BTreeMap<i64, (BlockId, i64)>,
    /// Whether max equals the absolute bound (14p_g + 11)/3.
    pub attains_global_bound: bool,
}

/// Maximal FIB count for a block family at this p_g, from the Euler
/// budget with all consumed fibers minimal, or `None` when the block
/// cannot host the section at all.
fn max_fibs(pg: i64, block: BlockId) -> Option<i64> {
    let budget = 12 * (pg + 1);
    // fixed-r blocks exist only when r = p_g + 1 + 2s has a solution
    if let Some(r) = block.fixed_r() {
        let t = r - pg - 1;
        if t < 0 || t % 2 != 0 {
            return None;
        }
        let s = t / 2;
        let cost = match block {
            BlockId::S1F1 => 1 + s,
            BlockId::S2F9 => 2 + 2 + s,
            BlockId::S2F1 => 2 + 3 + s,
            BlockId::S2F2 | BlockId::S2F3 => 4 + 1 + s,
            BlockId::S1F3 => 1 + 3 + s,
            _ => unreachable!(),
        };
        return (cost <= budget).then_some(s);
    }
    // free-r blocks: minimal consumed cost as a function of s
    let cost = |s: i64| -> Option<i64> {
        let r = pg + 1 + 2 * s;
        let c = match block {
            BlockId::S0F => {
                if r < 4 {
                    return None;
                }
                if r == 4 {
                    0
                } else {
                    r - 3
                }
            }
            BlockId::S1F2 => {
                if r < 4 {
                    return None;
                }
                r - 2
            }
            BlockId::S1F4 => {
                if r < 3 {
                    return None;
                }
                (r - 2).max(1) + 2
            }
            BlockId::S2F4 => (r + 1) + 1,
            BlockId::S2F5 => r.max(2) + 2,
            BlockId::S2F6 => 2 + r.max(3),
            BlockId::S2F7 => {
                if r < 3 {
                    return None;
                }
                1 + (r - 1)
            }
            BlockId::S2F8 => {
                if r < 4 {
                    return None;
                }
                1 + r
            }
            _ => return None,
        };
        Some(c + s)
    };
    let mut best: Option<i64> = None;
    let mut s = 0;
    loop {
        match cost(s) {
            Some(c) if c <= budget => best = Some(s),
            Some(_) => break,
            None => {
                if s > budget {
                    break;
                }
            }
        }
        s += 1;
    }
    best
}

/// Min and max K² over all small surfaces with the given p_g, plus a
/// witness for every intermediate value.
pub fn geography(pg: i64) -> Result<GeographyReport> {
    if pg < 3 {
        return Err(Error::validation("geography needs p_g >= 3"));
    }
    let blocks: &[BlockId] = &[
        BlockId::S0F,
        BlockId::S1F1,
        BlockId::S1F2,
        BlockId::S1F3,
        BlockId::S1F4,
        BlockId::S2F1,
        BlockId::S2F2,
        BlockId::S2F3,
        BlockId::S2F4,
        BlockId::S2F5,
        BlockId::S2F6,
        BlockId::S2F7,
        BlockId::S2F8,
        BlockId::S2F9,
    ];
    let mut attained: BTreeMap<i64, (BlockId, i64)> = BTreeMap::new();
    for &block in blocks {
        let Some(j) = block.j_class() else { continue };
        let Some(s_max) = max_fibs(pg, block) else {
            continue;
        };
        for s in 0..=s_max {
            let k2 = pg - 2 + s + j;
            attained.entry(k2).or_insert((block, s));
        }
    }
    let min_k2 = *attained
        .keys()
        .next()
        .ok_or_else(|| Error::internal("no configuration at all"))?;
    let max_k2 = *attained.keys().last().unwrap();
    let contiguous = (min_k2..=max_k2).all(|k| attained.contains_key(&k));
    if !contiguous {
        return Err(Error::internal(format!(
            "K² range for p_g = {} has gaps: {:?}",
            pg,
            attained.keys().collect::<Vec<_>>()
        )));
    }
    let mut max_witnesses = Vec::new();
    for &block in blocks {
        let (Some(j), Some(s_max)) = (block.j_class(), max_fibs(pg, block)) else {
            continue;
        };
        if pg - 2 + s_max + j == max_k2 {
            max_witnesses.push((block, s_max));
        }
    }
    let attains_global_bound = 3 * max_k2 == 14 * pg + 11;
    Ok(GeographyReport {
        pg,
        min_k2,
        max_k2,
        max_witnesses,
        attained,
        attains_global_bound,
    })
}

/// Chains with the stated multiplicities for one family instantiation,
/// as (multiplicity, type, chain-as-written) triples.
pub fn family_singularities(report: &SmallSurfaceReport) -> Vec<(i64, TType, String)> {
    let mut grouped: BTreeMap<String, (i64, TType)> = BTreeMap::new();
    for (t, chain) in &report.singularities {
        let key = chain.to_string();
        grouped
            .entry(key)
            .and_modify(|(count, _)| *count += 1)
            .or_insert((1, t.clone()));
    }
    grouped
        .into_iter()
        .map(|(chain, (count, t))| (count, t, chain))
        .collect()
}
