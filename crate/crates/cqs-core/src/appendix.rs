//! The catalog of cyclic quotient singularity families whose
//! P-resolutions are enumerated in closed form, and the comparison
//! harness that diffs the enumeration against those parametric rows.
//!
//! Each family instantiates a chain shape such as [2,…,2,r,2,…,2];
//! its rows list every associated zero continued fraction with the
//! resolution rendered in the bracket notation. Four of the families
//! (those used when two complete fibers meet the section) list only the
//! non-A-ending resolutions, i.e. the K^× subset.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::One;

use crate::cf::{big, Fraction, HJChain};
use crate::error::{Error, Result};
use crate::pres::{enumerate_p_resolutions, render, render_tokens, PNode};
use crate::zcf::ZeroChain;

/// Parameters of a family instantiation. Unused slots stay `None`.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord)]
pub struct FamilyParams {
    pub r: Option<i64>,
    pub a: Option<i64>,
    pub b: Option<i64>,
    pub c: Option<i64>,
    pub n: Option<i64>,
    pub n2: Option<i64>,
}

impl FamilyParams {
    fn get(&self, slot: char) -> Result<i64> {
        let v = match slot {
            'r' => self.r,
            'a' => self.a,
            'b' => self.b,
            'c' => self.c,
            'n' => self.n,
            'm' => self.n2,
            _ => None,
        };
        v.ok_or_else(|| Error::validation(format!("missing family parameter {}", slot)))
    }

    pub fn to_sorted_pairs(&self) -> Vec<(&'static str, i64)> {
        let mut out = Vec::new();
        if let Some(v) = self.a {
            out.push(("a", v));
        }
        if let Some(v) = self.b {
            out.push(("b", v));
        }
        if let Some(v) = self.c {
            out.push(("c", v));
        }
        if let Some(v) = self.n {
            out.push(("n", v));
        }
        if let Some(v) = self.n2 {
            out.push(("n2", v));
        }
        if let Some(v) = self.r {
            out.push(("r", v));
        }
        out
    }
}

/// A golden-row token. `ShortA(x)` is the end shorthand "A_x−[…]",
/// which expands to A_{x−1}−(2)−[…] for x ≥ 1 and to nothing for x = 0.
#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    A(i64),
    ShortA(i64),
    L(i64),
    T { d: i64, n: i64, a: i64 },
}

use Tok::*;

/// Expand row tokens into the uniform (nodes, links) form used by the
/// algorithm output. A_0 and d = 0 bracket nodes at the ends vanish
/// together with their adjacent connecting curve.
fn expand_tokens(tokens: Vec<Tok>) -> Result<(Vec<PNode>, Vec<BigInt>)> {
    // resolve the shorthand first
    let mut flat: Vec<Tok> = Vec::new();
    for (i, t) in tokens.iter().enumerate() {
        match *t {
            ShortA(x) if x < 0 => {
                return Err(Error::validation(format!("negative shorthand A_{}", x)))
            }
            ShortA(0) => {}
            ShortA(x) => {
                if i == 0 {
                    flat.push(A(x - 1));
                    flat.push(L(2));
                } else {
                    flat.push(L(2));
                    flat.push(A(x - 1));
                }
            }
            ref other => flat.push(other.clone()),
        }
    }
    // a bracket node with d = 0 vanishes: at an end it takes its
    // adjacent connecting curve along, in the interior its two
    // neighbouring curves merge into one of self-intersection
    // −(c_left + c_right − 1)
    while let Some(pos) = flat.iter().position(|t| matches!(t, T { d: 0, .. })) {
        let left_link = pos > 0 && matches!(flat[pos - 1], L(_));
        let right_link = pos + 1 < flat.len() && matches!(flat[pos + 1], L(_));
        match (left_link, right_link) {
            (true, true) => {
                let L(cl) = flat[pos - 1] else { unreachable!() };
                let L(cr) = flat[pos + 1] else { unreachable!() };
                flat.splice(pos - 1..=pos + 1, [L(cl + cr - 1)]);
            }
            (true, false) => {
                flat.drain(pos - 1..=pos);
            }
            (false, true) => {
                flat.drain(pos..=pos + 1);
            }
            (false, false) => {
                flat.remove(pos);
            }
        }
    }
    // now alternate nodes and links, inserting smooth nodes where the
    // row elides them (leading link, trailing link, adjacent links)
    let mut nodes: Vec<PNode> = Vec::new();
    let mut links: Vec<BigInt> = Vec::new();
    let mut expect_node = true;
    for t in flat {
        match t {
            L(c) => {
                if expect_node {
                    nodes.push(PNode::smooth());
                }
                links.push(big(c));
                expect_node = true;
            }
            A(x) => {
                if x < 0 {
                    return Err(Error::validation(format!("negative A index {}", x)));
                }
                if !expect_node {
                    return Err(Error::validation("two adjacent nodes in a golden row"));
                }
                if x == 0 {
                    nodes.push(PNode::smooth());
                } else {
                    nodes.push(PNode::new(x + 1, 1, 1)?);
                }
                expect_node = false;
            }
            T { d, n, a } => {
                if !expect_node {
                    return Err(Error::validation("two adjacent nodes in a golden row"));
                }
                nodes.push(PNode::new(d, n, a)?);
                expect_node = false;
            }
            ShortA(_) => unreachable!(),
        }
    }
    if expect_node {
        nodes.push(PNode::smooth());
    }
    if nodes.len() != links.len() + 1 {
        return Err(Error::validation("golden row is not an alternating chain"));
    }
    Ok((nodes, links))
}

/// One expected row, instantiated at concrete parameters.
#[derive(Debug, Clone)]
pub struct ExpectedRow {
    pub label: &'static str,
    pub zcf: ZeroChain,
    pub nodes: Vec<PNode>,
    pub links: Vec<BigInt>,
    pub notation: String,
}

struct RowSpec {
    label: &'static str,
    applies: fn(&P) -> bool,
    zcf: fn(&P) -> Vec<i64>,
    tokens: fn(&P) -> Vec<Tok>,
}

/// Shorthand for the concrete parameter tuple inside row definitions.
#[derive(Debug, Clone, Copy)]
pub struct P {
    pub r: i64,
    pub a: i64,
    pub b: i64,
    pub c: i64,
    pub n: i64,
    pub m: i64,
}

fn reps(x: i64, count: i64) -> Vec<i64> {
    std::iter::repeat_n(x, count.max(0) as usize).collect()
}

fn cat(parts: &[&[i64]]) -> Vec<i64> {
    parts.iter().flat_map(|p| p.iter().copied()).collect()
}

/// The eleven cataloged families.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum FamilyId {
    F2r2,
    F2ra2,
    F2ra232,
    F2a232,
    TypeII,
    TypeIII,
    TypeIV,
    F4rb2,
    F4rb232,
    F2ar323,
    F323rb232,
}

impl FamilyId {
    pub const ALL: [FamilyId; 11] = [
        FamilyId::F2r2,
        FamilyId::F2ra2,
        FamilyId::F2ra232,
        FamilyId::F2a232,
        FamilyId::TypeII,
        FamilyId::TypeIII,
        FamilyId::TypeIV,
        FamilyId::F4rb2,
        FamilyId::F4rb232,
        FamilyId::F2ar323,
        FamilyId::F323rb232,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            FamilyId::F2r2 => "2r2",
            FamilyId::F2ra2 => "2ra2",
            FamilyId::F2ra232 => "2ra232",
            FamilyId::F2a232 => "2a232",
            FamilyId::TypeII => "typeII",
            FamilyId::TypeIII => "typeIII",
            FamilyId::TypeIV => "typeIV",
            FamilyId::F4rb2 => "4rb2",
            FamilyId::F4rb232 => "4rb232",
            FamilyId::F2ar323 => "2ar323",
            FamilyId::F323rb232 => "323rb232",
        }
    }

    pub fn parse(name: &str) -> Result<FamilyId> {
        FamilyId::ALL
            .iter()
            .copied()
            .find(|f| f.name() == name)
            .ok_or_else(|| Error::validation(format!("unknown family `{}`", name)))
    }

    /// Families listed only up to the non-A-ending subset K^×.
    pub fn cross_only(&self) -> bool {
        matches!(
            self,
            FamilyId::F4rb2 | FamilyId::F4rb232 | FamilyId::F2ar323 | FamilyId::F323rb232
        )
    }

    /// Which parameter slots an instantiation must provide.
    pub fn slots(&self) -> &'static [char] {
        match self {
            FamilyId::F2r2 => &['r', 'a', 'b'],
            FamilyId::F2ra2 => &['r', 'a', 'b', 'c'],
            FamilyId::F2ra232 => &['r', 'a', 'b', 'n'],
            FamilyId::F2a232 => &['a', 'b', 'n'],
            FamilyId::TypeII | FamilyId::TypeIII | FamilyId::TypeIV => &['a'],
            FamilyId::F4rb2 => &['r', 'b'],
            FamilyId::F4rb232 => &['r', 'b', 'n'],
            FamilyId::F2ar323 => &['r', 'a', 'n'],
            FamilyId::F323rb232 => &['r', 'b', 'n', 'm'],
        }
    }

    fn unpack(&self, params: &FamilyParams) -> Result<P> {
        let mut p = P {
            r: 0,
            a: 0,
            b: 0,
            c: 0,
            n: 0,
            m: 0,
        };
        for &slot in self.slots() {
            let v = params.get(slot)?;
            match slot {
                'r' => p.r = v,
                'a' => p.a = v,
                'b' => p.b = v,
                'c' => p.c = v,
                'n' => p.n = v,
                'm' => p.m = v,
                _ => unreachable!(),
            }
        }
        Ok(p)
    }

    /// Validity of the parameters for the family's chain shape.
    fn in_range(&self, p: &P) -> bool {
        match self {
            FamilyId::F2r2 => p.r >= 3 && p.a >= 0 && p.b >= 0,
            FamilyId::F2ra2 => p.r >= 3 && p.a >= 3 && p.b >= 0 && p.c >= 0,
            FamilyId::F2ra232 => p.r >= 3 && p.a >= 3 && p.b >= 0 && p.n >= 2,
            FamilyId::F2a232 => p.a >= 4 && p.b >= 0 && p.n >= 2,
            FamilyId::TypeII | FamilyId::TypeIII | FamilyId::TypeIV => p.a >= 3,
            FamilyId::F4rb2 => p.r >= 3 && p.b >= 4,
            FamilyId::F4rb232 => p.r >= 3 && p.b >= 3 && p.n >= 2,
            FamilyId::F2ar323 => p.r >= 3 && p.a >= 4 && p.n >= 2,
            FamilyId::F323rb232 => p.r >= 3 && p.b >= 3 && p.n >= 2 && p.m >= 2,
        }
    }

    /// The instantiated chain.
    pub fn chain(&self, params: &FamilyParams) -> Result<HJChain> {
        let p = self.unpack(params)?;
        if !self.in_range(&p) {
            return Err(Error::validation(format!(
                "parameters out of range for family {}",
                self.name()
            )));
        }
        let entries = match self {
            FamilyId::F2r2 => cat(&[&reps(2, p.a), &[p.r], &reps(2, p.b)]),
            FamilyId::F2ra2 => cat(&[&reps(2, p.b), &[p.r, p.a], &reps(2, p.c)]),
            FamilyId::F2ra232 => cat(&[
                &reps(2, p.b),
                &[p.r, p.a],
                &reps(2, p.n - 2),
                &[3],
                &reps(2, p.a - 3),
            ]),
            FamilyId::F2a232 => cat(&[
                &reps(2, p.b),
                &[p.a],
                &reps(2, p.n - 2),
                &[3],
                &reps(2, p.a - 4),
            ]),
            FamilyId::TypeII => vec![3, p.a, 2],
            FamilyId::TypeIII => vec![4, p.a, 2],
            FamilyId::TypeIV => vec![3, p.a, 3],
            FamilyId::F4rb2 => cat(&[&[4, p.r, p.b], &reps(2, p.b - 4)]),
            FamilyId::F4rb232 => cat(&[
                &[4, p.r, p.b],
                &reps(2, p.n - 2),
                &[3],
                &reps(2, p.b - 3),
            ]),
            FamilyId::F2ar323 => cat(&[
                &reps(2, p.a - 4),
                &[p.a, p.r, 3],
                &reps(2, p.n - 2),
                &[3],
            ]),
            FamilyId::F323rb232 => cat(&[
                &[3],
                &reps(2, p.n - 2),
                &[3, p.r, p.b],
                &reps(2, p.m - 2),
                &[3],
                &reps(2, p.b - 3),
            ]),
        };
        HJChain::from_i64s(&entries)
    }

    fn rows(&self) -> &'static [RowSpec] {
        match self {
            FamilyId::F2r2 => ROWS_2R2,
            FamilyId::F2ra2 => ROWS_2RA2,
            FamilyId::F2ra232 => ROWS_2RA232,
            FamilyId::F2a232 => ROWS_2A232,
            FamilyId::TypeII => ROWS_TYPE_II,
            FamilyId::TypeIII => ROWS_TYPE_III,
            FamilyId::TypeIV => ROWS_TYPE_IV,
            FamilyId::F4rb2 => ROWS_4RB2,
            FamilyId::F4rb232 => ROWS_4RB232,
            FamilyId::F2ar323 => ROWS_2AR323,
            FamilyId::F323rb232 => ROWS_323RB232,
        }
    }

    /// Expected rows at concrete parameters.
    pub fn expected_rows(&self, params: &FamilyParams) -> Result<Vec<ExpectedRow>> {
        let p = self.unpack(params)?;
        if !self.in_range(&p) {
            return Err(Error::validation(format!(
                "parameters out of range for family {}",
                self.name()
            )));
        }
        let mut out = Vec::new();
        for row in self.rows() {
            if !(row.applies)(&p) {
                continue;
            }
            let zcf = ZeroChain::from_i64s(&(row.zcf)(&p)).map_err(|e| {
                Error::internal(format!(
                    "family {} row {} produced a bad zero chain: {}",
                    self.name(),
                    row.label,
                    e
                ))
            })?;
            let (nodes, links) = expand_tokens((row.tokens)(&p))?;
            let notation = render_tokens(&nodes, &links)?;
            out.push(ExpectedRow {
                label: row.label,
                zcf,
                nodes,
                links,
                notation,
            });
        }
        Ok(out)
    }
}

// --- row tables ---------------------------------------------------------

// [2,…,2(a), r, 2,…,2(b)]
static ROWS_2R2: &[RowSpec] = &[
    RowSpec {
        label: "a",
        applies: |_| true,
        zcf: |p| cat(&[&[1], &reps(2, p.r - 3), &[1]]),
        tokens: |p| vec![A(p.a), L(p.r), A(p.b)],
    },
    RowSpec {
        label: "b",
        applies: |p| p.r >= 4 && p.a >= p.r - 4,
        zcf: |p| cat(&[&[p.r - 2, 1], &reps(2, p.r - 3)]),
        tokens: |p| {
            vec![
                ShortA(p.a - p.r + 4),
                T {
                    d: 1,
                    n: p.r - 2,
                    a: p.r - 3,
                },
                ShortA(p.b),
            ]
        },
    },
    RowSpec {
        label: "c",
        applies: |p| p.r >= 4 && p.b >= p.r - 4,
        zcf: |p| cat(&[&reps(2, p.r - 3), &[1, p.r - 2]]),
        tokens: |p| {
            vec![
                ShortA(p.a),
                T {
                    d: 1,
                    n: p.r - 2,
                    a: 1,
                },
                ShortA(p.b - p.r + 4),
            ]
        },
    },
];

// [2,…,2(b), r, a, 2,…,2(c)]
static ROWS_2RA2: &[RowSpec] = &[
    RowSpec {
        label: "a",
        applies: |_| true,
        zcf: |p| cat(&[&[1], &reps(2, p.r + p.a - 5), &[1]]),
        tokens: |p| vec![A(p.b), L(p.r), L(p.a), A(p.c)],
    },
    RowSpec {
        label: "b",
        applies: |p| p.a >= 4 && p.c >= p.a - 4,
        zcf: |p| {
            cat(&[
                &[1],
                &reps(2, p.r - 3),
                &[3],
                &reps(2, p.a - 4),
                &[1, p.a - 2],
            ])
        },
        tokens: |p| {
            vec![
                A(p.b),
                L(p.r),
                T {
                    d: 1,
                    n: p.a - 2,
                    a: 1,
                },
                ShortA(p.c - p.a + 4),
            ]
        },
    },
    RowSpec {
        label: "c",
        applies: |p| p.r >= 4 && p.b >= p.r - 4,
        zcf: |p| {
            cat(&[
                &[p.r - 2, 1],
                &reps(2, p.r - 4),
                &[3],
                &reps(2, p.a - 3),
                &[1],
            ])
        },
        tokens: |p| {
            vec![
                ShortA(p.b - p.r + 4),
                T {
                    d: 1,
                    n: p.r - 2,
                    a: p.r - 3,
                },
                L(p.a),
                A(p.c),
            ]
        },
    },
    RowSpec {
        label: "d",
        applies: |p| p.b >= p.r + p.a - 6,
        zcf: |p| cat(&[&[p.r + p.a - 4, 1], &reps(2, p.r + p.a - 5)]),
        // at r = 3 the two printed nodes merge into the d = 2 node
        tokens: |p| {
            if p.r == 3 {
                vec![
                    ShortA(p.b - p.r - p.a + 6),
                    T {
                        d: 2,
                        n: p.a - 1,
                        a: p.a - 2,
                    },
                    ShortA(p.c),
                ]
            } else {
                vec![
                    ShortA(p.b - p.r - p.a + 6),
                    T {
                        d: 1,
                        n: p.r + p.a - 4,
                        a: p.r + p.a - 5,
                    },
                    L(1),
                    T {
                        d: 1,
                        n: p.a - 1,
                        a: p.a - 2,
                    },
                    ShortA(p.c),
                ]
            }
        },
    },
    RowSpec {
        label: "e",
        // printed mirrored in the source; the resolution read along the
        // dual chain has a = 1 on both nodes, merging at a = 3
        applies: |p| p.c >= p.r + p.a - 6,
        zcf: |p| cat(&[&reps(2, p.r + p.a - 5), &[1, p.r + p.a - 4]]),
        tokens: |p| {
            if p.a == 3 {
                vec![
                    ShortA(p.b),
                    T {
                        d: 2,
                        n: p.r - 1,
                        a: 1,
                    },
                    ShortA(p.c - p.r - p.a + 6),
                ]
            } else {
                vec![
                    ShortA(p.b),
                    T {
                        d: 1,
                        n: p.r - 1,
                        a: 1,
                    },
                    L(1),
                    T {
                        d: 1,
                        n: p.r + p.a - 4,
                        a: 1,
                    },
                    ShortA(p.c - p.r - p.a + 6),
                ]
            }
        },
    },
    RowSpec {
        label: "f",
        applies: |p| p.r >= 4 && p.a >= 4 && p.b >= p.r - 3 && p.c >= p.a - 3,
        zcf: |p| {
            cat(&[
                &[p.r - 1, 1],
                &reps(2, p.r - 4),
                &[3],
                &reps(2, p.a - 4),
                &[1, p.a - 1],
            ])
        },
        tokens: |p| {
            vec![
                ShortA(p.b - p.r + 3),
                T {
                    d: 1,
                    n: p.r - 1,
                    a: p.r - 2,
                },
                L(1),
                T {
                    d: 1,
                    n: p.a - 1,
                    a: 1,
                },
                ShortA(p.c - p.a + 3),
            ]
        },
    },
    RowSpec {
        label: "g",
        applies: |p| p.r == 5 && p.b >= p.a - 2,
        zcf: |p| cat(&[&[p.a, 2, 1, 3], &reps(2, p.a - 2)]),
        tokens: |p| {
            vec![
                ShortA(p.b - p.a + 2),
                T {
                    d: 1,
                    n: 2 * p.a - 1,
                    a: 2 * p.a - 3,
                },
                ShortA(p.c),
            ]
        },
    },
    RowSpec {
        label: "h",
        applies: |p| p.a == 5 && p.c >= p.r - 2,
        zcf: |p| cat(&[&reps(2, p.r - 2), &[3, 1, 2, p.r]]),
        tokens: |p| {
            vec![
                ShortA(p.b),
                T {
                    d: 1,
                    n: 2 * p.r - 1,
                    a: 2,
                },
                ShortA(p.c - p.r + 2),
            ]
        },
    },
];

// [2,…,2(b), r, a, 2,…,2(n−2), 3, 2,…,2(a−3)]
static ROWS_2RA232: &[RowSpec] = &[
    RowSpec {
        label: "a",
        applies: |_| true,
        zcf: |p| cat(&[&[1], &reps(2, p.r + p.a - 4), &[1]]),
        tokens: |p| {
            vec![
                A(p.b),
                L(p.r),
                L(p.a),
                A(p.n - 2),
                L(3),
                A(p.a - 3),
            ]
        },
    },
    RowSpec {
        label: "b",
        applies: |p| p.a >= 4 && p.n >= p.a - 2,
        zcf: |p| {
            cat(&[
                &[1],
                &reps(2, p.r - 3),
                &[3],
                &reps(2, p.a - 4),
                &[1, p.a - 1, 1],
            ])
        },
        tokens: |p| {
            vec![
                A(p.b),
                L(p.r),
                T {
                    d: 1,
                    n: p.a - 2,
                    a: 1,
                },
                ShortA(p.n - p.a + 2),
                L(3),
                A(p.a - 3),
            ]
        },
    },
    RowSpec {
        label: "c",
        applies: |_| true,
        zcf: |p| {
            cat(&[
                &[1],
                &reps(2, p.r - 3),
                &[3],
                &reps(2, p.a - 3),
                &[1, p.a - 1],
            ])
        },
        tokens: |p| {
            vec![
                A(p.b),
                L(p.r),
                T {
                    d: p.n,
                    n: p.a - 1,
                    a: 1,
                },
            ]
        },
    },
    RowSpec {
        label: "d",
        applies: |p| p.r >= 4 && p.b >= p.r - 4,
        zcf: |p| {
            cat(&[
                &[p.r - 2, 1],
                &reps(2, p.r - 4),
                &[3],
                &reps(2, p.a - 2),
                &[1],
            ])
        },
        tokens: |p| {
            vec![
                ShortA(p.b - p.r + 4),
                T {
                    d: 1,
                    n: p.r - 2,
                    a: p.r - 3,
                },
                L(p.a),
                A(p.n - 2),
                L(3),
                A(p.a - 3),
            ]
        },
    },
    RowSpec {
        label: "e",
        // at r = 3 the first two printed nodes merge into one with d = 2
        applies: |p| p.b >= p.r + p.a - 5,
        zcf: |p| cat(&[&[p.r + p.a - 3, 1], &reps(2, p.r + p.a - 4)]),
        tokens: |p| {
            let mut toks = vec![ShortA(p.b - p.r - p.a + 5)];
            if p.r == 3 {
                toks.push(T {
                    d: 2,
                    n: p.r + p.a - 3,
                    a: p.r + p.a - 4,
                });
            } else {
                toks.extend([
                    T {
                        d: 1,
                        n: p.r + p.a - 3,
                        a: p.r + p.a - 4,
                    },
                    L(1),
                    T {
                        d: 1,
                        n: p.a,
                        a: p.a - 1,
                    },
                ]);
            }
            toks.extend([
                L(1),
                T {
                    d: p.n - 1,
                    n: 2,
                    a: 1,
                },
                ShortA(p.a - 3),
            ]);
            toks
        },
    },
    RowSpec {
        label: "f",
        applies: |p| p.b >= p.r + p.a - 6,
        zcf: |p| {
            cat(&[
                &[p.r + p.a - 4, 1],
                &reps(2, p.r + p.a - 6),
                &[3, 1],
            ])
        },
        tokens: |p| {
            let mut toks = vec![ShortA(p.b - p.r - p.a + 6)];
            if p.r == 3 {
                toks.push(T {
                    d: 2,
                    n: p.r + p.a - 4,
                    a: p.r + p.a - 5,
                });
            } else {
                toks.extend([
                    T {
                        d: 1,
                        n: p.r + p.a - 4,
                        a: p.r + p.a - 5,
                    },
                    L(1),
                    T {
                        d: 1,
                        n: p.a - 1,
                        a: p.a - 2,
                    },
                ]);
            }
            toks.extend([ShortA(p.n - 2), L(3), A(p.a - 3)]);
            toks
        },
    },
    RowSpec {
        label: "g",
        // the r = 3 variant loses the leading blow-up of the zero chain
        applies: |p| {
            p.a >= 4
                && p.n >= p.a - 2
                && if p.r == 3 {
                    p.b >= 1
                } else {
                    p.b >= p.r - 2
                }
        },
        zcf: |p| {
            if p.r == 3 {
                cat(&[&[3], &reps(2, p.a - 3), &[1, p.a - 1, 2]])
            } else {
                cat(&[
                    &[p.r, 1],
                    &reps(2, p.r - 4),
                    &[3],
                    &reps(2, p.a - 4),
                    &[1, p.a - 1, 2],
                ])
            }
        },
        tokens: |p| {
            vec![
                if p.r == 3 {
                    ShortA(p.b - 1)
                } else {
                    ShortA(p.b - p.r + 2)
                },
                T {
                    d: 1,
                    n: p.r,
                    a: p.r - 1,
                },
                L(1),
                T {
                    d: 1,
                    n: 2 * p.a - 3,
                    a: p.a - 1,
                },
                L(1),
                T {
                    d: p.n - p.a + 2,
                    n: 2,
                    a: 1,
                },
                ShortA(p.a - 3),
            ]
        },
    },
    RowSpec {
        label: "h",
        applies: |p| p.r >= 4 && p.a >= 4 && p.b >= p.r - 3 && p.n >= p.a - 1,
        zcf: |p| {
            cat(&[
                &[p.r - 1, 1],
                &reps(2, p.r - 4),
                &[3],
                &reps(2, p.a - 4),
                &[1, p.a, 1],
            ])
        },
        tokens: |p| {
            vec![
                ShortA(p.b - p.r + 3),
                T {
                    d: 1,
                    n: p.r - 1,
                    a: p.r - 2,
                },
                L(1),
                T {
                    d: 1,
                    n: p.a - 1,
                    a: 1,
                },
                ShortA(p.n - p.a + 1),
                L(3),
                A(p.a - 3),
            ]
        },
    },
    RowSpec {
        label: "i",
        applies: |p| p.r == 5 && p.b >= p.a - 1,
        zcf: |p| cat(&[&[p.a + 1, 2, 1, 3], &reps(2, p.a - 1)]),
        tokens: |p| {
            vec![
                ShortA(p.b - p.a + 1),
                T {
                    d: 1,
                    n: 2 * p.a + 1,
                    a: 2 * p.a - 1,
                },
                L(1),
                T {
                    d: p.n - 1,
                    n: 2,
                    a: 1,
                },
                ShortA(p.a - 3),
            ]
        },
    },
    RowSpec {
        label: "j",
        applies: |p| p.r == 5 && p.b >= p.a - 2,
        zcf: |p| cat(&[&[p.a, 2, 1, 3], &reps(2, p.a - 3), &[3, 1]]),
        tokens: |p| {
            vec![
                ShortA(p.b - p.a + 2),
                T {
                    d: 1,
                    n: 2 * p.a - 1,
                    a: 2 * p.a - 3,
                },
                ShortA(p.n - 2),
                L(3),
                A(p.a - 3),
            ]
        },
    },
    RowSpec {
        label: "k",
        applies: |p| p.a == 5 && p.b >= 1 && p.n >= p.r - 1,
        zcf: |p| cat(&[&[3], &reps(2, p.r - 3), &[3, 1, 2, p.r, 2]]),
        tokens: |p| {
            vec![
                ShortA(p.b - 1),
                T {
                    d: 1,
                    n: 4 * (p.r - 1),
                    a: 2 * p.r - 1,
                },
                L(1),
                T {
                    d: p.n - p.r + 1,
                    n: 2,
                    a: 1,
                },
                L(2),
                A(1),
            ]
        },
    },
    RowSpec {
        label: "l",
        applies: |p| p.a == 5 && p.n >= p.r,
        zcf: |p| cat(&[&reps(2, p.r - 2), &[3, 1, 2, p.r + 1, 1]]),
        tokens: |p| {
            vec![
                ShortA(p.b),
                T {
                    d: 1,
                    n: 2 * p.r - 1,
                    a: 2,
                },
                ShortA(p.n - p.r),
                L(3),
                A(2),
            ]
        },
    },
    RowSpec {
        label: "m",
        // at a = 3 the first two printed nodes merge into one with d = 2
        applies: |p| p.r >= 4 && p.b >= 1 && p.n >= p.r + p.a - 5,
        zcf: |p| {
            cat(&[
                &[3],
                &reps(2, p.r + p.a - 6),
                &[1, p.r + p.a - 4, 2],
            ])
        },
        tokens: |p| {
            let mut toks = vec![ShortA(p.b - 1)];
            if p.a == 3 {
                toks.push(T {
                    d: 2,
                    n: 2 * p.r - 3,
                    a: p.r - 1,
                });
            } else {
                toks.extend([
                    T {
                        d: 1,
                        n: 2 * p.r - 3,
                        a: p.r - 1,
                    },
                    L(1),
                    T {
                        d: 1,
                        n: 2 * p.r + 2 * p.a - 9,
                        a: p.r + p.a - 4,
                    },
                ]);
            }
            toks.extend([
                L(1),
                T {
                    d: p.n - p.r - p.a + 5,
                    n: 2,
                    a: 1,
                },
                ShortA(p.a - 3),
            ]);
            toks
        },
    },
    RowSpec {
        label: "n",
        // at a = 3 the two printed nodes merge into one with d = 2
        applies: |p| p.n >= p.r + p.a - 4,
        zcf: |p| cat(&[&reps(2, p.r + p.a - 5), &[1, p.a + p.r - 3, 1]]),
        tokens: |p| {
            let mut toks = vec![ShortA(p.b)];
            if p.a == 3 {
                toks.push(T {
                    d: 2,
                    n: p.r - 1,
                    a: 1,
                });
            } else {
                toks.extend([
                    T {
                        d: 1,
                        n: p.r - 1,
                        a: 1,
                    },
                    L(1),
                    T {
                        d: 1,
                        n: p.r + p.a - 4,
                        a: 1,
                    },
                ]);
            }
            toks.extend([ShortA(p.n - p.r - p.a + 4), L(3), A(p.a - 3)]);
            toks
        },
    },
    RowSpec {
        label: "o",
        applies: |p| p.n >= p.a - 3 && p.a > p.r,
        zcf: |p| {
            cat(&[
                &reps(2, p.r - 2),
                &[3],
                &reps(2, p.a - 4),
                &[1, p.a - 2, p.r],
            ])
        },
        tokens: |p| {
            vec![
                ShortA(p.b),
                T {
                    d: 1,
                    n: p.r * p.a - 2 * p.r - 1,
                    a: p.a - 2,
                },
                L(1),
                T {
                    d: p.n - p.a + 3,
                    n: p.r,
                    a: 1,
                },
                ShortA(p.a - p.r - 1),
            ]
        },
    },
];

// [2,…,2(b), a, 2,…,2(n−2), 3, 2,…,2(a−4)]
static ROWS_2A232: &[RowSpec] = &[
    RowSpec {
        label: "a",
        applies: |_| true,
        zcf: |p| cat(&[&[1], &reps(2, p.a - 2), &[1]]),
        tokens: |p| vec![A(p.b), L(p.a), A(p.n - 2), L(3), A(p.a - 4)],
    },
    RowSpec {
        label: "b",
        applies: |p| p.b >= p.a - 3,
        zcf: |p| cat(&[&[p.a - 1, 1], &reps(2, p.a - 2)]),
        tokens: |p| {
            vec![
                ShortA(p.b - p.a + 3),
                T {
                    d: 1,
                    n: p.a - 1,
                    a: p.a - 2,
                },
                L(1),
                T {
                    d: p.n - 1,
                    n: 2,
                    a: 1,
                },
                ShortA(p.a - 4),
            ]
        },
    },
    RowSpec {
        label: "c",
        applies: |p| p.b >= p.a - 4,
        zcf: |p| cat(&[&[p.a - 2, 1], &reps(2, p.a - 4), &[3, 1]]),
        tokens: |p| {
            vec![
                ShortA(p.b - p.a + 4),
                T {
                    d: 1,
                    n: p.a - 2,
                    a: p.a - 3,
                },
                ShortA(p.n - 2),
                L(3),
                A(p.a - 4),
            ]
        },
    },
    RowSpec {
        label: "d",
        applies: |p| p.b >= 1 && p.n >= p.a - 3,
        zcf: |p| cat(&[&[3], &reps(2, p.a - 4), &[1, p.a - 2, 2]]),
        tokens: |p| {
            vec![
                ShortA(p.b - 1),
                T {
                    d: 1,
                    n: 2 * p.a - 5,
                    a: p.a - 2,
                },
                L(1),
                T {
                    d: p.n - p.a + 3,
                    n: 2,
                    a: 1,
                },
                ShortA(p.a - 4),
            ]
        },
    },
    RowSpec {
        label: "e",
        applies: |p| p.n >= p.a - 2,
        zcf: |p| cat(&[&reps(2, p.a - 3), &[1, p.a - 1, 1]]),
        tokens: |p| {
            vec![
                ShortA(p.b),
                T {
                    d: 1,
                    n: p.a - 2,
                    a: 1,
                },
                ShortA(p.n - p.a + 2),
                L(3),
                A(p.a - 4),
            ]
        },
    },
];

// [3, a, 2]
static ROWS_TYPE_II: &[RowSpec] = &[
    RowSpec {
        label: "a",
        applies: |_| true,
        zcf: |p| cat(&[&[1], &reps(2, p.a - 2), &[1]]),
        tokens: |p| vec![L(3), L(p.a), A(1)],
    },
    RowSpec {
        label: "b",
        applies: |p| p.a == 3,
        zcf: |_| vec![2, 1, 2],
        tokens: |_| vec![T { d: 2, n: 2, a: 1 }, L(2)],
    },
    RowSpec {
        label: "c",
        applies: |p| p.a == 4,
        zcf: |_| vec![1, 3, 1, 2],
        tokens: |_| vec![L(3), T { d: 1, n: 2, a: 1 }, L(2)],
    },
    RowSpec {
        label: "d",
        applies: |p| p.a == 4,
        zcf: |_| vec![2, 2, 1, 3],
        tokens: |_| {
            vec![
                T { d: 1, n: 2, a: 1 },
                L(1),
                T { d: 1, n: 3, a: 1 },
            ]
        },
    },
    RowSpec {
        label: "e",
        applies: |p| p.a == 5,
        zcf: |_| vec![2, 3, 1, 2, 3],
        tokens: |_| vec![T { d: 1, n: 5, a: 2 }],
    },
    RowSpec {
        label: "f",
        applies: |p| p.a == 5,
        zcf: |_| vec![1, 3, 2, 1, 3],
        tokens: |_| vec![L(3), T { d: 1, n: 3, a: 1 }],
    },
];

// [4, a, 2]
static ROWS_TYPE_III: &[RowSpec] = &[
    RowSpec {
        label: "a",
        applies: |_| true,
        zcf: |p| cat(&[&[1], &reps(2, p.a - 1), &[1]]),
        tokens: |p| vec![L(4), L(p.a), A(1)],
    },
    RowSpec {
        label: "b",
        applies: |p| p.a == 4,
        zcf: |_| vec![1, 2, 3, 1, 2],
        tokens: |_| vec![L(4), T { d: 1, n: 2, a: 1 }, L(2)],
    },
    RowSpec {
        label: "c",
        applies: |p| p.a == 5,
        zcf: |_| vec![1, 2, 3, 2, 1, 3],
        tokens: |_| vec![L(4), T { d: 1, n: 3, a: 1 }],
    },
    RowSpec {
        label: "d",
        applies: |_| true,
        zcf: |p| cat(&[&[2, 1, 3], &reps(2, p.a - 3), &[1]]),
        tokens: |p| vec![T { d: 1, n: 2, a: 1 }, L(p.a), A(1)],
    },
    RowSpec {
        label: "e",
        applies: |p| p.a == 3,
        zcf: |_| vec![2, 2, 1, 3],
        // the chain [4,3,2] contracted as one T-singularity; read from
        // the dual side the type is (2, 3, 1)
        tokens: |_| vec![T { d: 2, n: 3, a: 1 }],
    },
];

// [3, a, 3]
static ROWS_TYPE_IV: &[RowSpec] = &[
    RowSpec {
        label: "a",
        applies: |_| true,
        zcf: |p| cat(&[&[1], &reps(2, p.a - 1), &[1]]),
        tokens: |p| vec![L(3), L(p.a), L(3)],
    },
    RowSpec {
        label: "b",
        applies: |p| p.a == 3,
        zcf: |_| vec![1, 3, 1, 2],
        tokens: |_| vec![L(3), T { d: 2, n: 2, a: 1 }],
    },
    RowSpec {
        label: "c",
        applies: |p| p.a == 3,
        zcf: |_| vec![2, 1, 3, 1],
        tokens: |_| vec![T { d: 2, n: 2, a: 1 }, L(3)],
    },
    RowSpec {
        label: "d",
        applies: |p| p.a == 4,
        zcf: |_| vec![1, 3, 1, 3, 1],
        tokens: |_| vec![L(3), T { d: 1, n: 2, a: 1 }, L(3)],
    },
];

// [4, r, b, 2,…,2(b−4)], non-A-ending rows only
static ROWS_4RB2: &[RowSpec] = &[RowSpec {
    label: "a",
    applies: |_| true,
    zcf: |p| {
        cat(&[
            &[2, 1, 3],
            &reps(2, p.r - 3),
            &[3],
            &reps(2, p.b - 4),
            &[1, p.b - 2],
        ])
    },
    tokens: |p| {
        vec![
            T { d: 1, n: 2, a: 1 },
            L(p.r),
            T {
                d: 1,
                n: p.b - 2,
                a: 1,
            },
        ]
    },
}];

// [4, r, b, 2,…,2(n−2), 3, 2,…,2(b−3)], non-A-ending rows only
static ROWS_4RB232: &[RowSpec] = &[
    RowSpec {
        label: "a",
        applies: |_| true,
        zcf: |p| {
            cat(&[
                &[2, 1, 3],
                &reps(2, p.r - 3),
                &[3],
                &reps(2, p.b - 3),
                &[1, p.b - 1],
            ])
        },
        tokens: |p| {
            vec![
                T { d: 1, n: 2, a: 1 },
                L(p.r),
                T {
                    d: p.n,
                    n: p.b - 1,
                    a: 1,
                },
            ]
        },
    },
    RowSpec {
        label: "b",
        applies: |p| p.b == 5 && p.n >= p.r - 1,
        zcf: |p| cat(&[&[2, 2, 3], &reps(2, p.r - 3), &[3, 1, 2, p.r, 4]]),
        tokens: |p| {
            vec![
                T {
                    d: 1,
                    n: 8 * p.r - 6,
                    a: 2 * p.r - 1,
                },
                L(1),
                T {
                    d: p.n - p.r + 1,
                    n: 4,
                    a: 1,
                },
            ]
        },
    },
    RowSpec {
        label: "c",
        applies: |p| p.b == 5 && p.n >= p.r,
        zcf: |p| cat(&[&[2, 2, 3], &reps(2, p.r - 1), &[1, p.r + 1, 4]]),
        tokens: |p| {
            vec![
                T {
                    d: 1,
                    n: 4 * p.r - 5,
                    a: p.r - 1,
                },
                L(1),
                T {
                    d: 1,
                    n: 4 * p.r + 3,
                    a: p.r + 1,
                },
                L(1),
                T {
                    d: p.n - p.r,
                    n: 4,
                    a: 1,
                },
            ]
        },
    },
    RowSpec {
        label: "d",
        applies: |p| p.b == p.r + 3 && p.n >= p.r,
        zcf: |p| {
            cat(&[
                &reps(2, p.r),
                &[3],
                &reps(2, p.r - 1),
                &[1, p.b - 2, p.b - 1],
            ])
        },
        tokens: |p| {
            vec![
                T { d: 1, n: 3, a: 1 },
                L(1),
                T {
                    d: 1,
                    n: p.r * p.r + 3 * p.r + 1,
                    a: p.r + 1,
                },
                L(1),
                T {
                    d: p.n - p.r,
                    n: p.r + 2,
                    a: 1,
                },
            ]
        },
    },
];

// [2,…,2(a−4), a, r, 3, 2,…,2(n−2), 3], non-A-ending rows only
static ROWS_2AR323: &[RowSpec] = &[
    RowSpec {
        label: "a",
        applies: |_| true,
        zcf: |p| {
            cat(&[
                &[p.a - 2, 1],
                &reps(2, p.a - 4),
                &[3],
                &reps(2, p.r - 3),
                &[3, 1, 2],
            ])
        },
        tokens: |p| {
            vec![
                T {
                    d: 1,
                    n: p.a - 2,
                    a: p.a - 3,
                },
                L(p.r),
                T { d: p.n, n: 2, a: 1 },
            ]
        },
    },
    RowSpec {
        label: "b",
        applies: |p| p.a == 5 && p.r == 4 && p.n >= 4,
        zcf: |_| vec![3, 2, 2, 3, 1, 2, 5, 2],
        tokens: |p| {
            vec![
                T { d: 1, n: 16, a: 9 },
                L(1),
                T { d: 1, n: 9, a: 5 },
                L(1),
                T {
                    d: p.n - 4,
                    n: 2,
                    a: 1,
                },
            ]
        },
    },
    RowSpec {
        label: "c",
        applies: |p| p.a == 5 && p.r == 5 && p.n >= 4,
        zcf: |_| vec![3, 2, 2, 3, 2, 1, 3, 5, 2],
        tokens: |p| {
            vec![
                T {
                    d: 1,
                    n: 25,
                    a: 14,
                },
                L(1),
                T {
                    d: p.n - 4,
                    n: 2,
                    a: 1,
                },
            ]
        },
    },
    RowSpec {
        label: "d",
        applies: |p| p.a == 5 && p.n > p.r,
        zcf: |p| cat(&[&[3], &reps(2, p.r), &[1, p.r + 2, 2]]),
        tokens: |p| {
            vec![
                T { d: 1, n: 7, a: 4 },
                L(1),
                T {
                    d: 2,
                    n: 2 * p.r + 3,
                    a: p.r + 2,
                },
                L(1),
                T {
                    d: p.n - p.r - 1,
                    n: 2,
                    a: 1,
                },
            ]
        },
    },
];

// [3, 2,…,2(n−2), 3, r, b, 2,…,2(n'−2), 3, 2,…,2(b−3)], non-A-ending
static ROWS_323RB232: &[RowSpec] = &[
    RowSpec {
        label: "a",
        applies: |p| p.r == 3 && p.b == 4,
        zcf: |_| vec![2, 3, 3, 1, 2, 3, 3],
        tokens: |p| {
            vec![
                T {
                    d: p.n - 2,
                    n: 2,
                    a: 1,
                },
                L(1),
                T { d: 2, n: 13, a: 5 },
                L(1),
                T {
                    d: p.m - 2,
                    n: 3,
                    a: 1,
                },
            ]
        },
    },
    RowSpec {
        label: "b",
        applies: |p| p.r == 4 && p.b == 4 && p.m >= 3,
        zcf: |_| vec![2, 3, 3, 1, 3, 1, 4, 3],
        tokens: |p| {
            vec![
                T {
                    d: p.n - 2,
                    n: 2,
                    a: 1,
                },
                L(1),
                T { d: 1, n: 13, a: 5 },
                L(1),
                T { d: 1, n: 11, a: 4 },
                L(1),
                T {
                    d: p.m - 3,
                    n: 3,
                    a: 1,
                },
            ]
        },
    },
    RowSpec {
        label: "c",
        applies: |p| p.r == 4 && p.b == 4 && p.n >= 4,
        zcf: |_| vec![2, 5, 2, 1, 3, 2, 2, 3],
        tokens: |p| {
            vec![
                T {
                    d: p.n - 4,
                    n: 2,
                    a: 1,
                },
                L(1),
                T { d: 1, n: 9, a: 4 },
                L(1),
                T { d: 1, n: 16, a: 7 },
                L(1),
                T {
                    d: p.m - 1,
                    n: 3,
                    a: 1,
                },
            ]
        },
    },
    RowSpec {
        label: "d",
        applies: |p| p.r == 5 && p.b == 4 && p.n >= 4,
        zcf: |_| vec![2, 5, 3, 1, 2, 3, 2, 2, 3],
        tokens: |p| {
            vec![
                T {
                    d: p.n - 4,
                    n: 2,
                    a: 1,
                },
                L(1),
                T {
                    d: 1,
                    n: 25,
                    a: 11,
                },
                L(1),
                T {
                    d: p.m - 1,
                    n: 3,
                    a: 1,
                },
            ]
        },
    },
    RowSpec {
        label: "e",
        applies: |_| true,
        zcf: |p| {
            cat(&[
                &[2, 1, 3],
                &reps(2, p.r - 3),
                &[3],
                &reps(2, p.b - 3),
                &[1, p.b - 1],
            ])
        },
        tokens: |p| {
            vec![
                T { d: p.n, n: 2, a: 1 },
                L(p.r),
                T {
                    d: p.m,
                    n: p.b - 1,
                    a: 1,
                },
            ]
        },
    },
    RowSpec {
        label: "f",
        applies: |p| p.b == 4 && p.n > p.r,
        zcf: |p| cat(&[&[2, p.r + 2, 1], &reps(2, p.r), &[3]]),
        tokens: |p| {
            vec![
                T {
                    d: p.n - p.r - 1,
                    n: 2,
                    a: 1,
                },
                L(1),
                T {
                    d: 2,
                    n: 2 * p.r + 3,
                    a: p.r + 1,
                },
                L(1),
                T { d: 1, n: 7, a: 3 },
                L(1),
                T {
                    d: p.m - 1,
                    n: 3,
                    a: 1,
                },
            ]
        },
    },
    RowSpec {
        label: "g",
        applies: |p| p.b == 4 && p.n >= p.r,
        zcf: |p| cat(&[&[2, p.r + 1, 1], &reps(2, p.r - 3), &[3, 1, 3, 3]]),
        tokens: |p| {
            vec![
                T {
                    d: p.n - p.r,
                    n: 2,
                    a: 1,
                },
                L(1),
                T {
                    d: 2,
                    n: 2 * p.r + 1,
                    a: p.r,
                },
                L(1),
                T { d: 1, n: 8, a: 3 },
                L(1),
                T {
                    d: p.m - 2,
                    n: 3,
                    a: 1,
                },
            ]
        },
    },
    RowSpec {
        label: "h",
        applies: |p| p.b == 4 && p.m >= p.r,
        zcf: |p| cat(&[&[2, 3], &reps(2, p.r - 1), &[1, p.r + 1, 3]]),
        tokens: |p| {
            vec![
                T {
                    d: p.n - 2,
                    n: 2,
                    a: 1,
                },
                L(1),
                T { d: 1, n: 5, a: 2 },
                L(1),
                T {
                    d: 1,
                    n: 3 * p.r - 1,
                    a: p.r,
                },
                L(1),
                T {
                    d: 1,
                    n: 3 * p.r + 2,
                    a: p.r + 1,
                },
                L(1),
                T {
                    d: p.m - p.r,
                    n: 3,
                    a: 1,
                },
            ]
        },
    },
    RowSpec {
        label: "i",
        applies: |p| p.b == 5 && p.m >= p.r - 1,
        zcf: |p| cat(&[&[2, 2, 3], &reps(2, p.r - 3), &[3, 1, 2, p.r, 4]]),
        tokens: |p| {
            vec![
                T {
                    d: p.n - 1,
                    n: 2,
                    a: 1,
                },
                L(1),
                T {
                    d: 1,
                    n: 8 * p.r - 6,
                    a: 2 * p.r - 1,
                },
                L(1),
                T {
                    d: p.m - p.r + 1,
                    n: 4,
                    a: 1,
                },
            ]
        },
    },
    RowSpec {
        label: "j",
        applies: |p| p.b == 5 && p.m >= p.r,
        zcf: |p| cat(&[&[2, 2, 3], &reps(2, p.r - 1), &[1, p.r + 1, 4]]),
        tokens: |p| {
            vec![
                T {
                    d: p.n - 1,
                    n: 2,
                    a: 1,
                },
                L(1),
                T {
                    d: 1,
                    n: 4 * p.r - 5,
                    a: p.r - 1,
                },
                L(1),
                T {
                    d: 1,
                    n: 4 * p.r + 3,
                    a: p.r + 1,
                },
                L(1),
                T {
                    d: p.m - p.r,
                    n: 4,
                    a: 1,
                },
            ]
        },
    },
    RowSpec {
        label: "k",
        applies: |p| p.b == p.r + 3 && p.m >= p.r,
        zcf: |p| {
            cat(&[
                &reps(2, p.r),
                &[3],
                &reps(2, p.r - 1),
                &[1, p.b - 2, p.b - 1],
            ])
        },
        tokens: |p| {
            vec![
                T {
                    d: p.n - 1,
                    n: 2,
                    a: 1,
                },
                L(1),
                T { d: 1, n: 3, a: 1 },
                L(1),
                T {
                    d: 1,
                    n: p.r * p.r + 3 * p.r + 1,
                    a: p.r + 1,
                },
                L(1),
                T {
                    d: p.m - p.r,
                    n: p.r + 2,
                    a: 1,
                },
            ]
        },
    },
];

// --- comparison ----------------------------------------------------------

/// One line of a comparison: an expected row or an unexpected resolution.
#[derive(Debug, Clone)]
pub struct RowOutcome {
    pub labels: Vec<&'static str>,
    pub zcf: ZeroChain,
    pub expected_notation: String,
    pub actual_notation: Option<String>,
    pub matched: bool,
}

/// Diff between the enumerated P-resolutions and the family's rows.
#[derive(Debug, Clone)]
pub struct ComparisonReport {
    pub family: FamilyId,
    pub params: FamilyParams,
    pub chain: HJChain,
    pub fraction: Fraction,
    pub rows: Vec<RowOutcome>,
    /// Enumerated resolutions with no matching row.
    pub extra: Vec<(ZeroChain, String)>,
    /// Row labels that coincide as zero chains.
    pub collisions: Vec<Vec<&'static str>>,
}

impl ComparisonReport {
    pub fn exact_match(&self) -> bool {
        self.extra.is_empty() && self.rows.iter().all(|r| r.matched)
    }

    pub fn matched_labels(&self) -> Vec<&'static str> {
        self.rows
            .iter()
            .filter(|r| r.matched)
            .flat_map(|r| r.labels.iter().copied())
            .collect()
    }
}

/// Instantiate a family and diff the enumerated P-resolutions against
/// its rows.
pub fn appendix_check(family: FamilyId, params: &FamilyParams) -> Result<ComparisonReport> {
    let chain = family.chain(params)?;
    let fraction = chain.fraction()?;
    if *fraction.omega() == fraction.delta() - BigInt::one() {
        // Du Val chains have an empty K-set; nothing to compare.
    }
    let actual = enumerate_p_resolutions(&fraction, family.cross_only())?;
    let mut actual_by_zcf: BTreeMap<ZeroChain, String> = BTreeMap::new();
    for p in &actual {
        actual_by_zcf.insert(p.zcf.clone(), render(p)?);
    }

    // group expected rows by zero chain, noting collisions
    let mut expected: BTreeMap<ZeroChain, (Vec<&'static str>, String)> = BTreeMap::new();
    let mut collisions = Vec::new();
    for row in family.expected_rows(params)? {
        match expected.get_mut(&row.zcf) {
            None => {
                expected.insert(row.zcf.clone(), (vec![row.label], row.notation));
            }
            Some((labels, notation)) => {
                if *notation != row.notation {
                    return Err(Error::internal(format!(
                        "family {} rows {:?}/{} share zcf {} with different notation",
                        family.name(),
                        labels,
                        row.label,
                        row.zcf
                    )));
                }
                labels.push(row.label);
                collisions.push(labels.clone());
            }
        }
    }

    let mut rows = Vec::new();
    for (zcf, (labels, notation)) in &expected {
        let actual_notation = actual_by_zcf.get(zcf).cloned();
        let matched = actual_notation.as_deref() == Some(notation.as_str());
        rows.push(RowOutcome {
            labels: labels.clone(),
            zcf: zcf.clone(),
            expected_notation: notation.clone(),
            actual_notation,
            matched,
        });
    }
    let extra: Vec<(ZeroChain, String)> = actual_by_zcf
        .into_iter()
        .filter(|(z, _)| !expected.contains_key(z))
        .collect();

    Ok(ComparisonReport {
        family,
        params: params.clone(),
        chain,
        fraction,
        rows,
        extra,
        collisions,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params(pairs: &[(char, i64)]) -> FamilyParams {
        let mut p = FamilyParams::default();
        for &(slot, v) in pairs {
            match slot {
                'r' => p.r = Some(v),
                'a' => p.a = Some(v),
                'b' => p.b = Some(v),
                'c' => p.c = Some(v),
                'n' => p.n = Some(v),
                'm' => p.n2 = Some(v),
                _ => panic!(),
            }
        }
        p
    }

    #[test]
    fn example_2r2() {
        let rep = appendix_check(FamilyId::F2r2, &params(&[('r', 4), ('a', 1), ('b', 0)])).unwrap();
        assert!(rep.exact_match(), "{:#?}", rep);
        // rows (b) and (c) coincide as zero chains at r = 4
        assert_eq!(rep.collisions.len(), 1);
        let labels = rep.matched_labels();
        assert!(labels.contains(&"a") && labels.contains(&"b") && labels.contains(&"c"));
    }

    #[test]
    fn example_type_ii() {
        let rep = appendix_check(FamilyId::TypeII, &params(&[('a', 4)])).unwrap();
        assert!(rep.exact_match(), "{:#?}", rep);
        assert_eq!(rep.matched_labels(), vec!["a", "c", "d"]);

        let rep = appendix_check(FamilyId::TypeII, &params(&[('a', 5)])).unwrap();
        assert!(rep.exact_match(), "{:#?}", rep);
        let mut labels = rep.matched_labels();
        labels.sort();
        assert_eq!(labels, vec!["a", "e", "f"]);
    }

    #[test]
    fn example_type_iv() {
        let rep = appendix_check(FamilyId::TypeIV, &params(&[('a', 4)])).unwrap();
        assert!(rep.exact_match(), "{:#?}", rep);
        assert_eq!(rep.matched_labels(), vec!["a", "d"]);
        let d = rep.rows.iter().find(|r| r.labels == vec!["d"]).unwrap();
        assert_eq!(d.expected_notation, "(3)-[(2,1)]-(3)");
    }

    #[test]
    fn families_match_on_a_grid() {
        let mut cells: Vec<(FamilyId, FamilyParams)> = Vec::new();
        for r in 3..=6 {
            for a in 0..=3 {
                for b in 0..=3 {
                    cells.push((FamilyId::F2r2, params(&[('r', r), ('a', a), ('b', b)])));
                }
            }
        }
        for r in 3..=5 {
            for a in 3..=5 {
                for b in 0..=4 {
                    for c in 0..=3 {
                        cells.push((
                            FamilyId::F2ra2,
                            params(&[('r', r), ('a', a), ('b', b), ('c', c)]),
                        ));
                    }
                }
            }
        }
        for r in 3..=5 {
            for a in 3..=5 {
                for b in 0..=4 {
                    for n in 2..=8 {
                        cells.push((
                            FamilyId::F2ra232,
                            params(&[('r', r), ('a', a), ('b', b), ('n', n)]),
                        ));
                    }
                }
            }
        }
        for a in 4..=6 {
            for b in 0..=3 {
                for n in 2..=5 {
                    cells.push((FamilyId::F2a232, params(&[('a', a), ('b', b), ('n', n)])));
                }
            }
        }
        for a in 3..=8 {
            cells.push((FamilyId::TypeII, params(&[('a', a)])));
            cells.push((FamilyId::TypeIII, params(&[('a', a)])));
            cells.push((FamilyId::TypeIV, params(&[('a', a)])));
        }
        for r in 3..=5 {
            for b in 4..=6 {
                cells.push((FamilyId::F4rb2, params(&[('r', r), ('b', b)])));
            }
        }
        for r in 3..=5 {
            for b in 3..=8 {
                for n in 2..=7 {
                    cells.push((FamilyId::F4rb232, params(&[('r', r), ('b', b), ('n', n)])));
                }
            }
        }
        for r in 3..=6 {
            for a in 4..=6 {
                for n in 2..=7 {
                    cells.push((FamilyId::F2ar323, params(&[('r', r), ('a', a), ('n', n)])));
                }
            }
        }
        for r in 3..=5 {
            for b in 3..=8 {
                for n in 2..=4 {
                    for m in 2..=6 {
                        cells.push((
                            FamilyId::F323rb232,
                            params(&[('r', r), ('b', b), ('n', n), ('m', m)]),
                        ));
                    }
                }
            }
        }
        let mut failures = Vec::new();
        let mut seen: std::collections::BTreeMap<&str, std::collections::BTreeSet<&str>> =
            std::collections::BTreeMap::new();
        for (family, p) in cells {
            let rep = appendix_check(family, &p).unwrap();
            for row in &rep.rows {
                if row.matched {
                    seen.entry(family.name())
                        .or_default()
                        .extend(row.labels.iter().copied());
                }
            }
            if rep.exact_match() {
                continue;
            }
            let mut lines = Vec::new();
            for row in &rep.rows {
                if !row.matched {
                    lines.push(format!(
                        "  row {:?} zcf {} expected `{}` got {:?}",
                        row.labels, row.zcf, row.expected_notation, row.actual_notation
                    ));
                }
            }
            for (z, s) in &rep.extra {
                lines.push(format!("  extra zcf {} -> `{}`", z, s));
            }
            failures.push(format!(
                "family {} at r={:?} a={:?} b={:?} c={:?} n={:?} n2={:?} (chain {}):\n{}",
                family.name(),
                p.r,
                p.a,
                p.b,
                p.c,
                p.n,
                p.n2,
                rep.chain,
                lines.join("\n")
            ));
        }
        assert!(
            failures.is_empty(),
            "{} mismatching cells:\n{}",
            failures.len(),
            failures.join("\n")
        );
        // the grid must exercise every row of every family at least once
        let expected_labels: &[(&str, &[&str])] = &[
            ("2r2", &["a", "b", "c"]),
            ("2ra2", &["a", "b", "c", "d", "e", "f", "g", "h"]),
            (
                "2ra232",
                &[
                    "a", "b", "c", "d", "e", "f", "g", "h", "i", "j", "k", "l", "m", "n", "o",
                ],
            ),
            ("2a232", &["a", "b", "c", "d", "e"]),
            ("typeII", &["a", "b", "c", "d", "e", "f"]),
            ("typeIII", &["a", "b", "c", "d", "e"]),
            ("typeIV", &["a", "b", "c", "d"]),
            ("4rb2", &["a"]),
            ("4rb232", &["a", "b", "c", "d"]),
            ("2ar323", &["a", "b", "c", "d"]),
            (
                "323rb232",
                &["a", "b", "c", "d", "e", "f", "g", "h", "i", "j", "k"],
            ),
        ];
        for (family, labels) in expected_labels {
            let got = seen.get(family).unwrap_or_else(|| {
                panic!("family {} never matched a row on the grid", family)
            });
            for label in *labels {
                assert!(
                    got.contains(label),
                    "family {} row ({}) never exercised on the grid",
                    family,
                    label
                );
            }
        }
    }
}
