//! Hirzebruch-Jung continued fraction arithmetic over exact integers.
//!
//! A fraction Δ/Ω with 0 < Ω < Δ coprime expands uniquely as
//! Δ/Ω = e_1 − 1/(e_2 − 1/(… − 1/e_r)) with every e_i ≥ 2, written
//! [e_1,…,e_r]. Chains with entries equal to 1 appear as intermediate
//! states of blow-downs and as zero continued fractions.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub(crate) fn big(x: i64) -> BigInt {
    BigInt::from(x)
}

pub(crate) fn big_vec(xs: &[i64]) -> Vec<BigInt> {
    xs.iter().map(|&x| BigInt::from(x)).collect()
}

/// A cyclic quotient singularity type 1/Δ(1,Ω), stored as the reduced
/// fraction Δ/Ω with 0 < Ω < Δ and gcd(Δ,Ω) = 1.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Fraction {
    delta: BigInt,
    omega: BigInt,
}

impl Fraction {
    pub fn new(delta: impl Into<BigInt>, omega: impl Into<BigInt>) -> Result<Self> {
        let delta = delta.into();
        let omega = omega.into();
        if !(omega.is_positive() && omega < delta) {
            return Err(Error::validation(format!(
                "fraction {}/{} needs 0 < omega < delta",
                delta, omega
            )));
        }
        if !delta.gcd(&omega).is_one() {
            return Err(Error::validation(format!(
                "fraction {}/{} is not reduced",
                delta, omega
            )));
        }
        Ok(Fraction { delta, omega })
    }

    pub fn delta(&self) -> &BigInt {
        &self.delta
    }

    pub fn omega(&self) -> &BigInt {
        &self.omega
    }

    /// The conjugate fraction Δ/(Δ−Ω) whose expansion is the dual chain.
    pub fn conjugate(&self) -> Fraction {
        Fraction {
            delta: self.delta.clone(),
            omega: &self.delta - &self.omega,
        }
    }
}

impl fmt::Display for Fraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.delta, self.omega)
    }
}

/// A Hirzebruch-Jung chain [e_1,…,e_r]: nonempty, every entry ≥ 2.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct HJChain {
    entries: Vec<BigInt>,
}

impl HJChain {
    pub fn new(entries: Vec<BigInt>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::validation("HJ chain must be nonempty"));
        }
        if entries.iter().any(|e| *e < big(2)) {
            return Err(Error::validation(format!(
                "HJ chain {:?} has an entry < 2",
                entries
            )));
        }
        Ok(HJChain { entries })
    }

    pub fn from_i64s(xs: &[i64]) -> Result<Self> {
        HJChain::new(big_vec(xs))
    }

    pub fn entries(&self) -> &[BigInt] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn reversed(&self) -> HJChain {
        let mut entries = self.entries.clone();
        entries.reverse();
        HJChain { entries }
    }

    /// The fraction Δ/Ω this chain resolves.
    pub fn fraction(&self) -> Result<Fraction> {
        let c = evaluate(&self.entries)?;
        Fraction::new(c.p, c.q)
    }
}

impl fmt::Display for HJChain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, e) in self.entries.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", e)?;
        }
        write!(f, "]")
    }
}

/// Formal value of a chain via the continuant recursion
/// p_i = e_i·p_{i−1} − p_{i−2} with p_0 = 1, p_{−1} = 0; q is the same
/// recursion started one entry later, so the chain value is p/q.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Continuant {
    pub p: BigInt,
    pub q: BigInt,
}

fn continuant_top(entries: &[BigInt]) -> BigInt {
    let mut prev = BigInt::zero();
    let mut cur = BigInt::one();
    for e in entries {
        let next = e * &cur - &prev;
        prev = cur;
        cur = next;
    }
    cur
}

/// Evaluate a chain of positive integers (entries of 1 allowed).
pub fn evaluate(entries: &[BigInt]) -> Result<Continuant> {
    if entries.is_empty() {
        return Err(Error::validation("cannot evaluate an empty chain"));
    }
    if entries.iter().any(|e| !e.is_positive()) {
        return Err(Error::validation(format!(
            "chain {:?} has a non-positive entry",
            entries
        )));
    }
    Ok(Continuant {
        p: continuant_top(entries),
        q: continuant_top(&entries[1..]),
    })
}

/// Expand Δ/Ω as a Hirzebruch-Jung continued fraction.
pub fn hj_expand(fraction: &Fraction) -> HJChain {
    let mut m = fraction.delta().clone();
    let mut q = fraction.omega().clone();
    let mut entries = Vec::new();
    while q.is_positive() {
        // e = ceil(m/q); the tail fraction is q/(e·q − m)
        let e = (&m + &q - BigInt::one()).div_floor(&q);
        let r = &e * &q - &m;
        entries.push(e);
        m = q;
        q = r;
    }
    HJChain { entries }
}

/// The dual chain: the expansion of Δ/(Δ−Ω).
pub fn dual(fraction: &Fraction) -> HJChain {
    hj_expand(&fraction.conjugate())
}

/// An intermediate blow-down state: entries ≥ 0, where 0 is legal only as
/// the terminal state [0].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GenChain {
    entries: Vec<BigInt>,
}

impl GenChain {
    pub fn new(entries: Vec<BigInt>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::validation("blow-down state must be nonempty"));
        }
        if entries.iter().any(|e| e.is_negative()) {
            return Err(Error::validation(format!(
                "blow-down state {:?} has a negative entry",
                entries
            )));
        }
        if entries.iter().any(|e| e.is_zero()) && entries != [BigInt::zero()] {
            return Err(Error::validation(format!(
                "blow-down state {:?} has a non-terminal zero",
                entries
            )));
        }
        Ok(GenChain { entries })
    }

    pub fn from_i64s(xs: &[i64]) -> Result<Self> {
        GenChain::new(big_vec(xs))
    }

    pub fn entries(&self) -> &[BigInt] {
        &self.entries
    }

    pub fn is_terminal(&self) -> bool {
        self.entries.len() == 1 && self.entries[0].is_zero()
    }
}

fn contract_at(v: &mut Vec<BigInt>, i: usize) -> Result<()> {
    if v.len() == 1 {
        return Err(Error::structural(
            "blow-down contracted the whole chain away",
        ));
    }
    if i > 0 {
        v[i - 1] -= 1;
    }
    if i + 1 < v.len() {
        v[i + 1] -= 1;
    }
    v.remove(i);
    Ok(())
}

fn blow_down_inner(
    start: &GenChain,
    mut pick: impl FnMut(usize) -> usize,
) -> Result<GenChain> {
    let mut v = start.entries().to_vec();
    loop {
        if v.len() == 1 && v[0].is_zero() {
            return Ok(GenChain { entries: v });
        }
        if v.iter().any(|e| !e.is_positive()) {
            return Err(Error::structural(format!(
                "blow-down reached a malformed state {:?}",
                v
            )));
        }
        let ones: Vec<usize> = v
            .iter()
            .enumerate()
            .filter(|(_, e)| e.is_one())
            .map(|(i, _)| i)
            .collect();
        if ones.is_empty() {
            return Ok(GenChain { entries: v });
        }
        let choice = pick(ones.len());
        let i = ones[choice.min(ones.len() - 1)];
        contract_at(&mut v, i)?;
    }
}

/// Contract (−1)-curves until no entry equals 1 or the terminal state [0]
/// is reached, always taking the leftmost entry equal to 1.
pub fn blow_down(start: &GenChain) -> Result<GenChain> {
    blow_down_inner(start, |_| 0)
}

/// Same reduction with a caller-chosen contraction order; `pick` receives
/// the number of entries currently equal to 1 and returns which of them
/// (by position among the ones) to contract.
pub fn blow_down_with(
    start: &GenChain,
    pick: impl FnMut(usize) -> usize,
) -> Result<GenChain> {
    blow_down_inner(start, pick)
}

/// Whether a positive chain is a zero continued fraction: its continuant
/// reaches 0 exactly at the last entry while every proper prefix stays
/// positive. This is the blow-down notion (the chain contracts to [0])
/// and the one in bijection with polygon triangulations; chains such as
/// [1,1,2,1,1] whose continuant merely ends at 0 are rejected.
pub fn is_zero_chain(entries: &[BigInt]) -> Result<bool> {
    if entries.is_empty() {
        return Err(Error::validation("cannot test an empty chain"));
    }
    if entries.iter().any(|e| !e.is_positive()) {
        return Err(Error::validation(format!(
            "chain {:?} has a non-positive entry",
            entries
        )));
    }
    let mut prev = BigInt::zero();
    let mut cur = BigInt::one();
    for (i, e) in entries.iter().enumerate() {
        let next = e * &cur - &prev;
        prev = cur;
        cur = next;
        let last = i + 1 == entries.len();
        if last {
            return Ok(cur.is_zero());
        }
        if !cur.is_positive() {
            return Ok(false);
        }
    }
    unreachable!()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn frac(d: i64, o: i64) -> Fraction {
        Fraction::new(d, o).unwrap()
    }

    #[test]
    fn expand_examples() {
        assert_eq!(hj_expand(&frac(4, 1)).entries(), &big_vec(&[4])[..]);
        assert_eq!(hj_expand(&frac(9, 5)).entries(), &big_vec(&[2, 5])[..]);
        assert_eq!(hj_expand(&frac(25, 9)).entries(), &big_vec(&[3, 5, 2])[..]);
        assert_eq!(hj_expand(&frac(19, 7)).entries(), &big_vec(&[3, 4, 2])[..]);
    }

    #[test]
    fn expand_rejects_bad_input() {
        assert!(Fraction::new(4, 2).is_err());
        assert!(Fraction::new(4, 0).is_err());
        assert!(Fraction::new(4, 4).is_err());
        assert!(Fraction::new(4, 5).is_err());
    }

    #[test]
    fn evaluate_examples() {
        let c = evaluate(&big_vec(&[4])).unwrap();
        assert_eq!((c.p, c.q), (big(4), big(1)));
        let c = evaluate(&big_vec(&[2, 5])).unwrap();
        assert_eq!((c.p, c.q), (big(9), big(5)));
        let c = evaluate(&big_vec(&[2, 1, 2])).unwrap();
        assert_eq!(c.p, big(0));
        assert!(evaluate(&[]).is_err());
        assert!(evaluate(&big_vec(&[2, 0, 2])).is_err());
    }

    #[test]
    fn dual_examples() {
        assert_eq!(dual(&frac(4, 1)).entries(), &big_vec(&[2, 2, 2])[..]);
        // dual(9,5) expands 9/4
        assert_eq!(dual(&frac(9, 5)).entries(), &big_vec(&[3, 2, 2, 2])[..]);
        assert_eq!(dual(&frac(19, 7)).entries(), &big_vec(&[2, 3, 2, 3])[..]);
        assert_eq!(dual(&frac(25, 9)).entries(), &big_vec(&[2, 3, 2, 2, 3])[..]);
    }

    #[test]
    fn blow_down_examples() {
        let r = blow_down(&GenChain::from_i64s(&[2, 1, 2]).unwrap()).unwrap();
        assert!(r.is_terminal());
        let r = blow_down(&GenChain::from_i64s(&[4, 1, 5, 2]).unwrap()).unwrap();
        assert_eq!(r.entries(), &big_vec(&[3, 4, 2])[..]);
        let r = blow_down(&GenChain::from_i64s(&[2, 2, 2, 1, 4]).unwrap()).unwrap();
        assert!(r.is_terminal());
        // non-terminal zero states are rejected up front
        assert!(GenChain::from_i64s(&[0, 2]).is_err());
        // and malformed reductions report a structural error
        assert!(blow_down(&GenChain::from_i64s(&[2, 1, 1, 2]).unwrap()).is_err());
    }

    #[test]
    fn zero_chain_examples() {
        assert!(is_zero_chain(&big_vec(&[1, 1])).unwrap());
        assert!(!is_zero_chain(&big_vec(&[2, 2])).unwrap());
        assert!(is_zero_chain(&big_vec(&[1, 3, 1, 2])).unwrap());
        assert!(is_zero_chain(&big_vec(&[2, 1, 2])).unwrap());
        assert!(is_zero_chain(&big_vec(&[1, 2, 1])).unwrap());
        // continuant hits 0 at the end but a prefix already died; not a
        // genuine zero chain and the blow-down agrees
        assert!(!is_zero_chain(&big_vec(&[1, 1, 2, 1, 1])).unwrap());
        assert!(blow_down(&GenChain::from_i64s(&[1, 1, 2, 1, 1]).unwrap()).is_err());
    }

    #[test]
    fn round_trip_small() {
        for delta in 2i64..=120 {
            for omega in 1..delta {
                if num_integer::gcd(delta, omega) != 1 {
                    continue;
                }
                let f = frac(delta, omega);
                let chain = hj_expand(&f);
                let c = evaluate(chain.entries()).unwrap();
                assert_eq!(c.p, big(delta));
                assert_eq!(c.q, big(omega));
            }
        }
    }

    #[test]
    fn dual_is_an_involution() {
        for delta in 2i64..=80 {
            for omega in 1..delta {
                if num_integer::gcd(delta, omega) != 1 {
                    continue;
                }
                let f = frac(delta, omega);
                let d = dual(&f);
                let back = dual(&d.fraction().unwrap());
                assert_eq!(back, hj_expand(&f));
            }
        }
    }
}
