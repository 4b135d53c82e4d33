//! Involution quotients of cyclic quotient singularities.
//!
//! When 1/m(1,q) admits an involution whose quotient is again a cyclic
//! quotient singularity (or a smooth point), the quotient is one of five
//! arithmetic cases. The raw (m₀, q₀) a case produces may need reduction
//! mod m₀ and may fail coprimality; unnormalizable candidates are kept
//! with a reason rather than dropped.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::cf::{big, hj_expand, Fraction};
use crate::error::{Error, Result};
use crate::tsing::{t_recognize, TType};

/// A cyclic quotient singularity 1/m(1,q).
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Cqs {
    m: BigInt,
    q: BigInt,
}

impl Cqs {
    pub fn new(m: impl Into<BigInt>, q: impl Into<BigInt>) -> Result<Self> {
        let m = m.into();
        let q = q.into();
        if !(q.is_positive() && q < m) {
            return Err(Error::validation(format!(
                "cyclic quotient singularity needs 0 < q < m, got 1/{}(1,{})",
                m, q
            )));
        }
        if !m.gcd(&q).is_one() {
            return Err(Error::validation(format!(
                "1/{}(1,{}) needs gcd(m,q) = 1",
                m, q
            )));
        }
        Ok(Cqs { m, q })
    }

    pub fn m(&self) -> &BigInt {
        &self.m
    }

    pub fn q(&self) -> &BigInt {
        &self.q
    }

    pub fn fraction(&self) -> Fraction {
        Fraction::new(self.m.clone(), self.q.clone()).expect("validated")
    }

    /// The T-singularity type when this is a non-Du-Val T-singularity.
    pub fn t_type(&self) -> Result<Option<TType>> {
        t_recognize(&hj_expand(&self.fraction()))
    }

    pub fn is_du_val(&self) -> bool {
        self.q == &self.m - BigInt::one()
    }
}

impl fmt::Display for Cqs {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "1/{}(1,{})", self.m, self.q)
    }
}

/// The five quotient cases.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum CaseTag {
    A,
    B,
    C,
    D,
    E,
}

impl fmt::Display for CaseTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            CaseTag::A => "a",
            CaseTag::B => "b",
            CaseTag::C => "c",
            CaseTag::D => "d",
            CaseTag::E => "e",
        };
        f.write_str(s)
    }
}

/// Raw quotient data before normalization.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RawQuotient {
    Smooth,
    Candidate { m0: BigInt, q0: BigInt },
}

/// One emitted case with its normalization status.
#[derive(Debug, Clone)]
pub struct QuotientOutcome {
    pub case: CaseTag,
    pub raw: RawQuotient,
    pub applicable: bool,
    /// Why the case or candidate does not apply, when it doesn't.
    pub reason: Option<String>,
    pub normalized: Option<Cqs>,
    pub is_smooth: bool,
    /// The quotient's T-type when it is a non-Du-Val T-singularity.
    pub is_t: Option<TType>,
}

fn normalize(case: CaseTag, m0: BigInt, q0_raw: BigInt) -> Result<QuotientOutcome> {
    let raw = RawQuotient::Candidate {
        m0: m0.clone(),
        q0: q0_raw.clone(),
    };
    if m0.is_one() {
        // 1/1(1,·) is a smooth point
        return Ok(QuotientOutcome {
            case,
            raw,
            applicable: true,
            reason: None,
            normalized: None,
            is_smooth: true,
            is_t: None,
        });
    }
    let q0 = q0_raw.mod_floor(&m0);
    if q0.is_zero() || !m0.gcd(&q0).is_one() {
        return Ok(QuotientOutcome {
            case,
            raw,
            applicable: false,
            reason: Some(format!(
                "raw quotient ({}, {}) is not coprime after reduction mod {}",
                m0, q0_raw, m0
            )),
            normalized: None,
            is_smooth: false,
            is_t: None,
        });
    }
    let cqs = Cqs::new(m0, q0)?;
    let is_t = cqs.t_type()?;
    Ok(QuotientOutcome {
        case,
        raw,
        applicable: true,
        reason: None,
        normalized: Some(cqs),
        is_smooth: false,
        is_t,
    })
}

fn inapplicable(case: CaseTag, reason: &str) -> QuotientOutcome {
    QuotientOutcome {
        case,
        raw: RawQuotient::Smooth,
        applicable: false,
        reason: Some(reason.to_string()),
        normalized: None,
        is_smooth: false,
        is_t: None,
    }
}

/// All five cases for 1/m(1,q), each with applicability and the
/// normalized quotient when it exists. Case (b) emits both lifts.
pub fn quotient_candidates(cqs: &Cqs) -> Result<Vec<QuotientOutcome>> {
    let m = cqs.m();
    let q = cqs.q();
    let mut out = Vec::new();

    // (a) smooth, only when q = m − 1
    if *q == m - BigInt::one() {
        out.push(QuotientOutcome {
            case: CaseTag::A,
            raw: RawQuotient::Smooth,
            applicable: true,
            reason: None,
            normalized: None,
            is_smooth: true,
            is_t: None,
        });
    } else {
        out.push(inapplicable(CaseTag::A, "needs q = m − 1"));
    }

    // (b) m₀ = 2m, q₀ ∈ {q, m + q}
    out.push(normalize(CaseTag::B, big(2) * m, q.clone())?);
    out.push(normalize(CaseTag::B, big(2) * m, m + q)?);

    // (c) m₀ = m, q₀ = 2q
    out.push(normalize(CaseTag::C, m.clone(), big(2) * q)?);

    // (d) m₀ = m/2, q₀ = q, only for even m
    if m.is_even() {
        out.push(normalize(CaseTag::D, m / big(2), q.clone())?);
    } else {
        out.push(inapplicable(CaseTag::D, "needs m even"));
    }

    // (e) m₀ = m/u, q₀ = (q+1)/u with u = gcd(q+1, m), only when
    // q² ≡ 1 (mod m) and q ≠ m − 1
    let q_sq = (q * q).mod_floor(m);
    if q_sq.is_one() && *q != m - BigInt::one() {
        let u = (q + BigInt::one()).gcd(m);
        out.push(normalize(CaseTag::E, m / &u, (q + BigInt::one()) / &u)?);
    } else {
        out.push(inapplicable(
            CaseTag::E,
            "needs q² ≡ 1 (mod m) and q ≠ m − 1",
        ));
    }

    Ok(out)
}

/// A scan result: the inputs whose quotients violate the claim.
#[derive(Debug, Clone)]
pub struct ScanReport {
    pub scanned: usize,
    pub counterexamples: Vec<String>,
}

impl ScanReport {
    pub fn clean(&self) -> bool {
        self.counterexamples.is_empty()
    }
}

/// For every Wahl singularity 1/n²(1, na−1) with n ≤ max_n: no
/// applicable case yields a Wahl singularity or a smooth point.
pub fn wahl_quotient_scan(max_n: i64) -> Result<ScanReport> {
    if max_n < 2 {
        return Err(Error::validation("need max_n >= 2"));
    }
    let mut scanned = 0;
    let mut counterexamples = Vec::new();
    for n in 2..=max_n {
        for a in 1..n {
            if num_integer::gcd(a, n) != 1 {
                continue;
            }
            let cqs = Cqs::new(n * n, n * a - 1)?;
            scanned += 1;
            for outcome in quotient_candidates(&cqs)? {
                if !outcome.applicable {
                    continue;
                }
                if outcome.is_smooth {
                    counterexamples.push(format!("{} case ({}) gives a smooth point", cqs, outcome.case));
                }
                if let Some(t) = &outcome.is_t {
                    if t.is_wahl() {
                        counterexamples.push(format!(
                            "{} case ({}) gives the Wahl singularity {}",
                            cqs, outcome.case, t
                        ));
                    }
                }
            }
        }
    }
    Ok(ScanReport {
        scanned,
        counterexamples,
    })
}

/// For every non-Du-Val T-singularity with d·n² ≤ max_index: an A-type
/// quotient arises only when n = 2, and then 1/2d(1, 2d−1) is among the
/// quotients. (At n = 2 the reflection case (e) always contributes a
/// second A-type option, the A_1 point 1/2(1,1).)
pub fn duval_quotient_scan(max_index: i64) -> Result<ScanReport> {
    if max_index < 1 {
        return Err(Error::validation("need max_index >= 1"));
    }
    let mut scanned = 0;
    let mut counterexamples = Vec::new();
    let mut n = 2i64;
    while n * n <= max_index {
        let mut d = 1i64;
        while d * n * n <= max_index {
            for a in 1..n {
                if num_integer::gcd(a, n) != 1 {
                    continue;
                }
                let cqs = Cqs::new(d * n * n, d * n * a - 1)?;
                scanned += 1;
                let mut a_quotients = Vec::new();
                for outcome in quotient_candidates(&cqs)? {
                    if !outcome.applicable {
                        continue;
                    }
                    let Some(result) = &outcome.normalized else {
                        continue;
                    };
                    if result.is_du_val() {
                        a_quotients.push((outcome.case, result.clone()));
                    }
                }
                for (case, result) in &a_quotients {
                    if n != 2 {
                        counterexamples.push(format!(
                            "{} case ({}) gives Du Val {} although n = {}",
                            cqs, case, result, n
                        ));
                    } else if !(*result.m() == big(2 * d) && *result.q() == big(2 * d - 1)
                        || (*result.m() == big(2) && result.q().is_one()))
                    {
                        counterexamples.push(format!(
                            "{} case ({}) gives unexpected Du Val {}",
                            cqs, case, result
                        ));
                    }
                }
                if n == 2
                    && !a_quotients
                        .iter()
                        .any(|(_, r)| *r.m() == big(2 * d) && *r.q() == big(2 * d - 1))
                {
                    counterexamples.push(format!(
                        "{} misses the expected Du Val quotient 1/{}(1,{})",
                        cqs,
                        2 * d,
                        2 * d - 1
                    ));
                }
            }
            d += 1;
        }
        n += 1;
    }
    Ok(ScanReport {
        scanned,
        counterexamples,
    })
}

/// The unique T-singularity quotient of 1/n²(1, n−1): it arises from
/// case (b) as 1/2n²(1, 2nk−1) for n = 2k−1 odd, and from case (d) as
/// 1/2k²(1, 2k−1) for n = 2k even. Needs n ≥ 3; at n = 2 the would-be
/// quotient degenerates to the Du Val point A_1.
pub fn lee_park_quotient(n: i64) -> Result<(CaseTag, Cqs, TType)> {
    if n < 3 {
        return Err(Error::validation("need n >= 3"));
    }
    let cqs = Cqs::new(n * n, n - 1)?;
    let mut found = Vec::new();
    for outcome in quotient_candidates(&cqs)? {
        if !outcome.applicable {
            continue;
        }
        if let (Some(result), Some(t)) = (&outcome.normalized, &outcome.is_t) {
            found.push((outcome.case, result.clone(), t.clone()));
        }
    }
    if found.len() != 1 {
        return Err(Error::internal(format!(
            "1/{}²(1,{}) has {} T-type quotients instead of 1",
            n,
            n - 1,
            found.len()
        )));
    }
    Ok(found.remove(0))
}
