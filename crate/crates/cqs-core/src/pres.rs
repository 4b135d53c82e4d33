//! P-resolutions of cyclic quotient singularities.
//!
//! A P-resolution of 1/Δ(1,Ω) is encoded by a zero continued fraction
//! [k_1,…,k_s] bounded by the dual expansion [b_1,…,b_s]: the nonzero
//! deficits d_j = b_j − k_j mark the singular points, connected by curves
//! of self-intersection −c_i. Nodes are stored uniformly as (d, n, a)
//! triples: n = a = 1 with d ≥ 2 is an A_{d−1} point, d = n = a = 1 a
//! smooth point, anything else a T-singularity.
//!
//! Everything is verified against the zero-reduction identity
//!    [b_s,…,b_1]-(1)-[node chains with links] = 0,
//! which contracts to the terminal state [0].

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::cf::{big, blow_down, dual, evaluate, Fraction, GenChain, HJChain};
use crate::error::{Error, Result};
use crate::tsing::{discrepancies, t_expand, TType};
use crate::zcf::{k_cross_set, k_set, ZeroChain};

/// A node of a P-resolution, stored as (d, n, a).
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PNode {
    d: BigInt,
    n: BigInt,
    a: BigInt,
}

/// What a node is, derived from its (d, n, a).
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PNodeKind {
    Smooth,
    /// A_k, stored as d = k + 1, n = a = 1.
    DuVal(BigInt),
    T(TType),
}

impl PNode {
    pub fn new(d: impl Into<BigInt>, n: impl Into<BigInt>, a: impl Into<BigInt>) -> Result<Self> {
        let node = PNode {
            d: d.into(),
            n: n.into(),
            a: a.into(),
        };
        node.kind()?;
        Ok(node)
    }

    pub fn smooth() -> Self {
        PNode {
            d: BigInt::one(),
            n: BigInt::one(),
            a: BigInt::one(),
        }
    }

    pub fn d(&self) -> &BigInt {
        &self.d
    }

    pub fn n(&self) -> &BigInt {
        &self.n
    }

    pub fn a(&self) -> &BigInt {
        &self.a
    }

    pub fn kind(&self) -> Result<PNodeKind> {
        if self.d < BigInt::one() {
            return Err(Error::validation(format!("node {:?} has d < 1", self)));
        }
        if self.n.is_one() {
            if !self.a.is_one() {
                return Err(Error::validation(format!(
                    "node {:?} has n = 1 but a != 1",
                    self
                )));
            }
            if self.d.is_one() {
                return Ok(PNodeKind::Smooth);
            }
            return Ok(PNodeKind::DuVal(&self.d - BigInt::one()));
        }
        Ok(PNodeKind::T(TType::new(
            self.d.clone(),
            self.n.clone(),
            self.a.clone(),
        )?))
    }

    /// Minimal resolution chain of the node: empty for a smooth point,
    /// k curves of self-intersection −2 for A_k, the T-chain otherwise.
    pub fn chain(&self) -> Result<Vec<BigInt>> {
        Ok(match self.kind()? {
            PNodeKind::Smooth => Vec::new(),
            PNodeKind::DuVal(k) => {
                let mut len = k;
                let mut v = Vec::new();
                while len.is_positive() {
                    v.push(big(2));
                    len -= 1;
                }
                v
            }
            PNodeKind::T(t) => t_expand(&t).entries().to_vec(),
        })
    }
}

impl fmt::Display for PNode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind() {
            Ok(PNodeKind::Smooth) => write!(f, "(smooth)"),
            Ok(PNodeKind::DuVal(k)) => write!(f, "A_{}", k),
            Ok(PNodeKind::T(t)) if t.d().is_one() => write!(f, "[({},{})]", t.n(), t.a()),
            Ok(PNodeKind::T(t)) => write!(f, "[{}({},{})]", t.d(), t.n(), t.a()),
            Err(_) => write!(f, "(invalid)"),
        }
    }
}

/// A P-resolution: the source fraction, its zero continued fraction, the
/// nodes, and the connecting-curve self-intersections −c_i.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PResolution {
    pub source: Fraction,
    pub zcf: ZeroChain,
    pub nodes: Vec<PNode>,
    pub links: Vec<BigInt>,
    /// The full deficit vector d_j = b_j − k_j.
    pub d_deficits: Vec<BigInt>,
}

/// Blow down 1-entries of a prefix chain, stopping at a chain with no
/// 1-entries or at the single entry [1].
fn reduce_prefix(mut v: Vec<BigInt>) -> Result<Vec<BigInt>> {
    loop {
        if v.len() == 1 && v[0].is_one() {
            return Ok(v);
        }
        if v.iter().any(|e| !e.is_positive()) {
            return Err(Error::structural(format!(
                "prefix reduction reached a malformed state {:?}",
                v
            )));
        }
        let Some(i) = v.iter().position(|e| e.is_one()) else {
            return Ok(v);
        };
        if v.len() == 1 {
            return Ok(v);
        }
        if i > 0 {
            v[i - 1] -= 1;
        }
        if i + 1 < v.len() {
            v[i + 1] -= 1;
        }
        v.remove(i);
    }
}

/// n/(n−a) is the value of the reduced prefix; [1] means a smooth point
/// or A-node (n = a = 1).
fn node_from_prefix(prefix: Vec<BigInt>, deficit: &BigInt) -> Result<PNode> {
    if prefix.is_empty() {
        return PNode::new(deficit.clone(), 1, 1);
    }
    let reduced = reduce_prefix(prefix)?;
    if reduced.len() == 1 && reduced[0].is_one() {
        return PNode::new(deficit.clone(), 1, 1);
    }
    let c = evaluate(&reduced)?;
    let g = c.p.gcd(&c.q);
    let n = &c.p / &g;
    let n_minus_a = &c.q / &g;
    if !(n_minus_a.is_positive() && n_minus_a < n) {
        return Err(Error::structural(format!(
            "prefix value {}/{} does not define a node",
            c.p, c.q
        )));
    }
    let a = &n - &n_minus_a;
    PNode::new(deficit.clone(), n, a)
}

/// One cell of the symbolic contraction used to extract the c_i.
#[derive(Debug, Clone)]
enum Cell {
    Curve(BigInt),
    Link { index: usize, decrements: BigInt },
}

/// Contract the chain reverse(b) + (−1) + interleaved node chains, with
/// the links held symbolically; each link's self-intersection is fixed
/// the moment it has to act as the next (−1)-curve (or as the terminal
/// 0-curve when it is the last curve standing).
fn solve_links(bound: &HJChain, nodes: &[PNode]) -> Result<Vec<BigInt>> {
    let link_count = nodes.len() - 1;
    let mut cells: Vec<Cell> = Vec::new();
    for e in bound.entries().iter().rev() {
        cells.push(Cell::Curve(e.clone()));
    }
    cells.push(Cell::Curve(BigInt::one()));
    for (i, node) in nodes.iter().enumerate() {
        for e in node.chain()? {
            cells.push(Cell::Curve(e));
        }
        if i < link_count {
            cells.push(Cell::Link {
                index: i,
                decrements: BigInt::zero(),
            });
        }
    }
    let mut links: Vec<Option<BigInt>> = vec![None; link_count];
    loop {
        // terminal state: a single concrete 0
        if cells.len() == 1 {
            match &cells[0] {
                Cell::Curve(x) if x.is_zero() => break,
                Cell::Curve(x) => {
                    return Err(Error::structural(format!(
                        "contraction stopped at [{}] instead of [0]",
                        x
                    )))
                }
                Cell::Link { index, decrements } => {
                    // the connecting curve itself ends as the 0-curve
                    if !decrements.is_positive() {
                        return Err(Error::structural(
                            "connecting curve resolved to a non-positive self-intersection",
                        ));
                    }
                    links[*index] = Some(decrements.clone());
                    break;
                }
            }
        }
        if cells.iter().any(|c| match c {
            Cell::Curve(x) => !x.is_positive(),
            Cell::Link { .. } => false,
        }) {
            return Err(Error::structural(format!(
                "contraction reached a malformed state with {} cells",
                cells.len()
            )));
        }
        let one_pos = cells.iter().position(|c| match c {
            Cell::Curve(x) => x.is_one(),
            Cell::Link { .. } => false,
        });
        match one_pos {
            Some(i) => {
                if cells.len() == 1 {
                    return Err(Error::structural("contraction consumed the whole chain"));
                }
                for j in [i.wrapping_sub(1), i + 1] {
                    if j < cells.len() && j != i {
                        match &mut cells[j] {
                            Cell::Curve(x) => *x -= 1,
                            Cell::Link { decrements, .. } => *decrements += 1,
                        }
                    }
                }
                cells.remove(i);
            }
            None => {
                // no (−1)-curve left: the leftmost pending connecting
                // curve must have become one
                let Some(pos) = cells.iter().position(|c| matches!(c, Cell::Link { .. })) else {
                    return Err(Error::structural(
                        "contraction stuck with no (−1)-curve and no pending link",
                    ));
                };
                let Cell::Link { index, decrements } = cells[pos].clone() else {
                    unreachable!()
                };
                let c = &decrements + BigInt::one();
                links[index] = Some(c);
                cells[pos] = Cell::Curve(BigInt::one());
            }
        }
    }
    links
        .into_iter()
        .enumerate()
        .map(|(i, l)| {
            l.ok_or_else(|| Error::structural(format!("link {} was never resolved", i + 1)))
        })
        .collect()
}

/// Run the P-resolution algorithm for a zero chain in K(Δ/(Δ−Ω)).
pub fn compute_p_resolution(fraction: &Fraction, zcf: &ZeroChain) -> Result<PResolution> {
    let bound = dual(fraction);
    let b = bound.entries();
    if zcf.len() != b.len()
        || zcf
            .entries()
            .iter()
            .zip(b)
            .any(|(k, bj)| !(k.is_positive() && k <= bj))
    {
        return Err(Error::precondition(format!(
            "{} is not in the K-set of {}",
            zcf, fraction
        )));
    }
    let deficits: Vec<BigInt> = b
        .iter()
        .zip(zcf.entries())
        .map(|(bj, kj)| bj - kj)
        .collect();
    let positions: Vec<usize> = deficits
        .iter()
        .enumerate()
        .filter(|(_, d)| d.is_positive())
        .map(|(j, _)| j)
        .collect();
    if positions.is_empty() {
        return Err(Error::structural(
            "zero chain equals the dual chain; no node positions",
        ));
    }
    let mut nodes = Vec::with_capacity(positions.len());
    for (idx, &j) in positions.iter().enumerate() {
        // prefix [b_1,…,b_{j−1}] with the deficits of all earlier node
        // positions already applied
        let mut prefix: Vec<BigInt> = b[..j].to_vec();
        for &earlier in &positions[..idx] {
            prefix[earlier] -= &deficits[earlier];
        }
        nodes.push(node_from_prefix(prefix, &deficits[j])?);
    }
    let links = solve_links(&bound, &nodes)?;
    Ok(PResolution {
        source: fraction.clone(),
        zcf: zcf.clone(),
        nodes,
        links,
        d_deficits: deficits,
    })
}

/// All P-resolutions of Δ/Ω, in the canonical (zero-chain) order. Each
/// result passes the four verification checks.
pub fn enumerate_p_resolutions(fraction: &Fraction, cross_only: bool) -> Result<Vec<PResolution>> {
    let chains = if cross_only {
        k_cross_set(fraction)?
    } else {
        k_set(fraction)?
    };
    let mut out = Vec::with_capacity(chains.len());
    for z in &chains {
        let p = compute_p_resolution(fraction, z)?;
        let report = verify_p_resolution(&p)?;
        if !report.passed() {
            return Err(Error::internal(format!(
                "computed P-resolution of {} for {} fails verification: {}",
                fraction, z, report
            )));
        }
        out.push(p);
    }
    Ok(out)
}

/// Outcome of one verification check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Check {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

/// Verification report: four independently computed checks.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerifyReport {
    pub zero_reduction: Check,
    pub node_validity: Check,
    pub ampleness: Check,
    /// Exact K·Γ_i for each connecting curve.
    pub k_gamma: Vec<BigRational>,
    pub zcf_round_trip: Check,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.zero_reduction.passed
            && self.node_validity.passed
            && self.ampleness.passed
            && self.zcf_round_trip.passed
    }

    pub fn checks(&self) -> [&Check; 4] {
        [
            &self.zero_reduction,
            &self.node_validity,
            &self.ampleness,
            &self.zcf_round_trip,
        ]
    }
}

impl fmt::Display for VerifyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in self.checks() {
            writeln!(
                f,
                "{}: {} ({})",
                c.name,
                if c.passed { "pass" } else { "FAIL" },
                c.detail
            )?;
        }
        Ok(())
    }
}

fn check(name: &'static str, passed: bool, detail: String) -> Check {
    Check {
        name,
        passed,
        detail,
    }
}

/// The concrete chain reverse(b) + (−1) + interleaved node chains.
fn assembled_chain(p: &PResolution) -> Result<Vec<BigInt>> {
    let bound = dual(&p.source);
    let mut v: Vec<BigInt> = bound.entries().iter().rev().cloned().collect();
    v.push(BigInt::one());
    for (i, node) in p.nodes.iter().enumerate() {
        v.extend(node.chain()?);
        if i < p.links.len() {
            v.push(p.links[i].clone());
        }
    }
    Ok(v)
}

/// Discrepancy of the outermost curve of a node on the given side
/// (0 on smooth and Du Val nodes).
fn edge_discrepancy(node: &PNode, last: bool) -> Result<BigRational> {
    match node.kind()? {
        PNodeKind::Smooth | PNodeKind::DuVal(_) => Ok(BigRational::zero()),
        PNodeKind::T(t) => {
            let chain = t_expand(&t);
            let d = discrepancies(&chain)?;
            Ok(if last {
                d.deltas[d.deltas.len() - 1].clone()
            } else {
                d.deltas[0].clone()
            })
        }
    }
}

/// Verify a P-resolution: (1) the zero-reduction identity, (2) node
/// validity, (3) K·Γ_i > 0 for every connecting curve, (4) the zero
/// chain round trip through the algorithm.
pub fn verify_p_resolution(p: &PResolution) -> Result<VerifyReport> {
    // (1) zero reduction
    let zero_reduction = match assembled_chain(p)
        .and_then(|v| GenChain::new(v).map_err(|e| Error::structural(e.to_string())))
        .and_then(|g| blow_down(&g))
    {
        Ok(end) if end.is_terminal() => {
            check("zero-reduction", true, "contracts to [0]".to_string())
        }
        Ok(end) => check(
            "zero-reduction",
            false,
            format!("stops at {:?}", end.entries()),
        ),
        Err(e) => check("zero-reduction", false, e.to_string()),
    };

    // (2) node validity
    let node_validity = {
        let mut bad = Vec::new();
        for (i, node) in p.nodes.iter().enumerate() {
            if node.kind().is_err() {
                bad.push(i);
            }
        }
        let structure_ok = p.nodes.len() == p.links.len() + 1
            && p.links.iter().all(|c| c.is_positive())
            && !p.nodes.is_empty();
        if bad.is_empty() && structure_ok {
            check(
                "node-validity",
                true,
                format!("{} nodes, {} links", p.nodes.len(), p.links.len()),
            )
        } else {
            check(
                "node-validity",
                false,
                format!("invalid nodes {:?}, structure ok: {}", bad, structure_ok),
            )
        }
    };

    // (3) relative ampleness
    let mut k_gamma = Vec::with_capacity(p.links.len());
    let mut ample_ok = true;
    let mut ample_detail = Vec::new();
    for (i, c) in p.links.iter().enumerate() {
        let left = edge_discrepancy(&p.nodes[i], true)?;
        let right = edge_discrepancy(&p.nodes[i + 1], false)?;
        let value = BigRational::from(c - big(2)) - left - right;
        if !value.is_positive() {
            ample_ok = false;
        }
        ample_detail.push(format!("K·Γ_{} = {}", i + 1, value));
        k_gamma.push(value);
    }
    let ampleness = check(
        "relative-ampleness",
        ample_ok,
        if ample_detail.is_empty() {
            "no connecting curves".to_string()
        } else {
            ample_detail.join(", ")
        },
    );

    // (4) zero chain round trip
    let zcf_round_trip = {
        let bound = dual(&p.source);
        let reconstructed: Vec<BigInt> = bound
            .entries()
            .iter()
            .zip(&p.d_deficits)
            .map(|(bj, dj)| bj - dj)
            .collect();
        if reconstructed != p.zcf.entries() {
            check(
                "zcf-round-trip",
                false,
                "deficits do not reproduce the zero chain".to_string(),
            )
        } else {
            match compute_p_resolution(&p.source, &p.zcf) {
                Ok(again) if again.nodes == p.nodes && again.links == p.links => {
                    check("zcf-round-trip", true, "algorithm reproduces the data".to_string())
                }
                Ok(_) => check(
                    "zcf-round-trip",
                    false,
                    "algorithm yields different nodes or links".to_string(),
                ),
                Err(e) => check("zcf-round-trip", false, e.to_string()),
            }
        }
    };

    Ok(VerifyReport {
        zero_reduction,
        node_validity,
        ampleness,
        k_gamma,
        zcf_round_trip,
    })
}

/// Canonical text form: T nodes as `[d(n,a)]` with d omitted when 1,
/// A_k as `A_k`, smooth points elided, connecting curves as `(c)`.
pub fn render(p: &PResolution) -> Result<String> {
    render_tokens(&p.nodes, &p.links)
}

pub(crate) fn render_tokens(nodes: &[PNode], links: &[BigInt]) -> Result<String> {
    let mut parts: Vec<String> = Vec::new();
    for (i, node) in nodes.iter().enumerate() {
        match node.kind()? {
            PNodeKind::Smooth => {}
            PNodeKind::DuVal(k) => parts.push(format!("A_{}", k)),
            PNodeKind::T(t) => {
                if t.d().is_one() {
                    parts.push(format!("[({},{})]", t.n(), t.a()));
                } else {
                    parts.push(format!("[{}({},{})]", t.d(), t.n(), t.a()));
                }
            }
        }
        if i < links.len() {
            parts.push(format!("({})", links[i]));
        }
    }
    Ok(parts.join("-"))
}
