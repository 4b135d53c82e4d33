//! T-singularities: recognition, generation, and discrepancies.
//!
//! A non-Du-Val T-singularity is a cyclic quotient singularity of type
//! 1/(dn²)(1, dna−1) with gcd(a,n) = 1, d ≥ 1, n ≥ 2; its minimal
//! resolution chain is a T-chain. Every T-chain arises from [4] or
//! [3,2,…,2,3] by iterating
//!     [e_1,…,e_r] → [2,e_1,…,e_{r−1},e_r+1]  and  [e_1+1,e_2,…,e_r,2],
//! which also drives the discrepancy recursion used as a cross-check
//! against the linear solve.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::cf::{big, evaluate, hj_expand, Fraction, HJChain};
use crate::error::{Error, Result};

/// A T-singularity type (d, n, a): the fraction is (d·n², d·n·a − 1).
/// Wahl singularities are exactly d = 1. Du Val chains (n = 1) are not
/// representable here; they are handled as a separate node kind in the
/// P-resolution module.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TType {
    d: BigInt,
    n: BigInt,
    a: BigInt,
}

impl TType {
    pub fn new(d: impl Into<BigInt>, n: impl Into<BigInt>, a: impl Into<BigInt>) -> Result<Self> {
        let d = d.into();
        let n = n.into();
        let a = a.into();
        if d < BigInt::one() {
            return Err(Error::validation(format!("T-type needs d >= 1, got {}", d)));
        }
        if n < big(2) {
            return Err(Error::validation(format!("T-type needs n >= 2, got {}", n)));
        }
        if !(a.is_positive() && a < n) {
            return Err(Error::validation(format!(
                "T-type needs 0 < a < n, got a={} n={}",
                a, n
            )));
        }
        if !n.gcd(&a).is_one() {
            return Err(Error::validation(format!(
                "T-type needs gcd(a,n)=1, got a={} n={}",
                a, n
            )));
        }
        Ok(TType { d, n, a })
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

    pub fn is_wahl(&self) -> bool {
        self.d.is_one()
    }

    /// The fraction (d·n², d·n·a − 1).
    pub fn fraction(&self) -> Fraction {
        let delta = &self.d * &self.n * &self.n;
        let omega = &self.d * &self.n * &self.a - BigInt::one();
        Fraction::new(delta, omega).expect("T-type fraction is always valid")
    }

    /// The same singularity read from the other end of its chain.
    pub fn mirror(&self) -> TType {
        TType {
            d: self.d.clone(),
            n: self.n.clone(),
            a: &self.n - &self.a,
        }
    }
}

impl std::fmt::Display for TType {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({},{},{})", self.d, self.n, self.a)
    }
}

/// Minimal resolution chain of a T-singularity.
pub fn t_expand(t: &TType) -> HJChain {
    hj_expand(&t.fraction())
}

/// Strip the generating operations down to a seed; returns the seed's d
/// when the chain is a T-chain.
fn unwrap_t(chain: &HJChain) -> Option<BigInt> {
    let two = big(2);
    let three = big(3);
    let mut c = chain.entries().to_vec();
    loop {
        if c.len() == 1 {
            return if c[0] == big(4) { Some(BigInt::one()) } else { None };
        }
        let first = c[0].clone();
        let last = c[c.len() - 1].clone();
        if first == three && last == three && c[1..c.len() - 1].iter().all(|e| *e == two) {
            return Some(big(c.len() as i64));
        }
        if first == two && last >= three {
            c.remove(0);
            let k = c.len() - 1;
            c[k] -= 1;
        } else if last == two && first >= three {
            c.pop();
            c[0] -= 1;
        } else {
            return None;
        }
    }
}

fn recognize_arithmetic(chain: &HJChain) -> Result<Option<TType>> {
    let c = evaluate(chain.entries())?;
    let delta = c.p;
    let omega_plus_1 = c.q + BigInt::one();
    let g = delta.gcd(&omega_plus_1);
    let n = &delta / &g;
    if n < big(2) {
        return Ok(None);
    }
    let (d, rem) = g.div_rem(&n);
    if !rem.is_zero() || d < BigInt::one() {
        return Ok(None);
    }
    let dn = &d * &n;
    let (a, rem) = omega_plus_1.div_rem(&dn);
    if !rem.is_zero() {
        return Ok(None);
    }
    if !(a.is_positive() && a < n && n.gcd(&a).is_one()) {
        return Ok(None);
    }
    Ok(Some(TType { d, n, a }))
}

/// Recognize a T-chain, returning its (d, n, a). Du Val chains and
/// non-T chains yield `None`. Two independent recognition paths (the
/// gcd arithmetic and the unwrapping of the generating operations) must
/// agree; a disagreement is an internal error.
pub fn t_recognize(chain: &HJChain) -> Result<Option<TType>> {
    let arith = recognize_arithmetic(chain)?;
    let unwrapped = unwrap_t(chain);
    match (arith, unwrapped) {
        (Some(t), Some(d)) if *t.d() == d => Ok(Some(t)),
        (None, None) => Ok(None),
        (a, u) => Err(Error::internal(format!(
            "T-chain recognition disagrees on {}: arithmetic {:?}, unwrap d {:?}",
            chain, a, u
        ))),
    }
}

/// The two generated T-chains [2,e_1,…,e_r+1] and [e_1+1,…,e_r,2].
pub fn t_children(chain: &HJChain) -> Result<(HJChain, HJChain)> {
    if t_recognize(chain)?.is_none() {
        return Err(Error::precondition(format!("{} is not a T-chain", chain)));
    }
    let e = chain.entries();
    let mut left = Vec::with_capacity(e.len() + 1);
    left.push(big(2));
    left.extend_from_slice(e);
    let k = left.len() - 1;
    left[k] += 1;
    let mut right = e.to_vec();
    right[0] += 1;
    right.push(big(2));
    Ok((HJChain::new(left)?, HJChain::new(right)?))
}

/// Breadth-first closure of the seeds under the generating operations,
/// truncated by chain length and Δ; sorted lexicographically by entries.
pub fn enumerate_t_chains(
    max_len: usize,
    max_delta: impl Into<BigInt>,
    d_filter: Option<i64>,
) -> Result<Vec<(TType, HJChain)>> {
    if max_len < 1 {
        return Err(Error::validation("enumeration needs max_len >= 1"));
    }
    let max_delta = max_delta.into();
    let mut seeds = Vec::new();
    match d_filter {
        Some(d) if d < 1 => {
            return Err(Error::validation("d filter must be >= 1"));
        }
        Some(1) => seeds.push(HJChain::from_i64s(&[4])?),
        Some(d) => {
            let mut v = vec![3i64];
            v.extend(std::iter::repeat_n(2, (d - 2) as usize));
            v.push(3);
            seeds.push(HJChain::from_i64s(&v)?);
        }
        None => {
            seeds.push(HJChain::from_i64s(&[4])?);
            let mut d = 2i64;
            while (d as usize) <= max_len && big(4 * d) <= max_delta {
                let mut v = vec![3i64];
                v.extend(std::iter::repeat_n(2, (d - 2) as usize));
                v.push(3);
                seeds.push(HJChain::from_i64s(&v)?);
                d += 1;
            }
        }
    }

    let fits = |c: &HJChain| -> Result<bool> {
        Ok(c.len() <= max_len && evaluate(c.entries())?.p <= max_delta)
    };

    let mut out: Vec<(TType, HJChain)> = Vec::new();
    let mut frontier: Vec<HJChain> = Vec::new();
    for s in seeds {
        if fits(&s)? {
            frontier.push(s);
        }
    }
    while let Some(chain) = frontier.pop() {
        let t = t_recognize(&chain)?
            .ok_or_else(|| Error::internal(format!("generated non-T chain {}", chain)))?;
        let (l, r) = t_children(&chain)?;
        out.push((t, chain));
        for child in [l, r] {
            if fits(&child)? {
                frontier.push(child);
            }
        }
    }
    out.sort_by(|x, y| x.1.cmp(&y.1));
    out.dedup_by(|x, y| x.1 == y.1);
    Ok(out)
}

/// Discrepancies of a chain plus the end parameters t_1, t_r (only for
/// T-chains, where δ_i = −1 + t_i/n).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiscrepancyVector {
    pub deltas: Vec<BigRational>,
    pub t_first: Option<BigInt>,
    pub t_last: Option<BigInt>,
}

/// Fraction-free elimination on the chain intersection matrix (diagonal
/// −e_i, adjacent off-diagonal 1) with right side e_i − 2. The i-th row
/// reduces exactly to D_i·x_i + D_{i−1}·x_{i+1} = R_i, where D_i are the
/// leading principal minors (D_i = −e_i·D_{i−1} − D_{i−2}), so the sweep
/// needs no divisions and back-substitution is an exact rational pass.
fn solve_chain_system(entries: &[BigInt]) -> Result<Vec<BigRational>> {
    let r = entries.len();
    let mut minors: Vec<BigInt> = Vec::with_capacity(r + 1);
    minors.push(BigInt::one());
    let mut reduced_rhs: Vec<BigInt> = Vec::with_capacity(r);
    for (i, e) in entries.iter().enumerate() {
        let d = -e;
        let b = e - big(2);
        let next = if i == 0 {
            d
        } else {
            &d * &minors[i] - &minors[i - 1]
        };
        let rhs = if i == 0 {
            b
        } else {
            &minors[i] * &b - &reduced_rhs[i - 1]
        };
        minors.push(next);
        reduced_rhs.push(rhs);
    }
    if minors.iter().skip(1).any(|m| m.is_zero()) {
        return Err(Error::internal(
            "singular intersection matrix in discrepancy solve",
        ));
    }
    let mut x = vec![BigRational::zero(); r];
    for i in (0..r).rev() {
        let mut acc = BigRational::from(reduced_rhs[i].clone());
        if i + 1 < r {
            acc -= BigRational::from(minors[i].clone()) * &x[i + 1];
        }
        x[i] = acc / BigRational::from(minors[i + 1].clone());
    }
    Ok(x)
}

/// Discrepancies of the exceptional curves of a chain, solved exactly.
pub fn discrepancies(chain: &HJChain) -> Result<DiscrepancyVector> {
    let deltas = solve_chain_system(chain.entries())?;
    let minus_one = -BigRational::one();
    if deltas
        .iter()
        .any(|d| *d <= minus_one || d > &BigRational::zero())
    {
        return Err(Error::internal(format!(
            "discrepancies of {} escaped (−1, 0]",
            chain
        )));
    }
    let (t_first, t_last) = match t_recognize(chain)? {
        Some(t) => {
            let n = BigRational::from(t.n().clone());
            let tf = (&n * (BigRational::one() + &deltas[0])).to_integer();
            let tl = (&n * (BigRational::one() + &deltas[deltas.len() - 1])).to_integer();
            (Some(tf), Some(tl))
        }
        None => (None, None),
    };
    Ok(DiscrepancyVector {
        deltas,
        t_first,
        t_last,
    })
}

/// Discrepancies of a T-chain via the generating recursion on integer
/// vectors (t_1,…,t_r): appending [e_1+1,…,e_r,2] maps t to
/// (t_1,…,t_r,t_1+t_r) with index n+t_1, prepending maps it to
/// (t_1+t_r,t_1,…,t_r) with index n+t_r. Returns `None` off T-chains.
pub fn discrepancies_recursive(chain: &HJChain) -> Result<Option<Vec<BigRational>>> {
    #[derive(Clone, Copy)]
    enum Op {
        StripLeft,
        StripRight,
    }
    let two = big(2);
    let three = big(3);
    let mut c = chain.entries().to_vec();
    let mut ops = Vec::new();
    let seed_d: usize;
    loop {
        if c.len() == 1 {
            if c[0] == big(4) {
                seed_d = 1;
                break;
            }
            return Ok(None);
        }
        let first = c[0].clone();
        let last = c[c.len() - 1].clone();
        if first == three && last == three && c[1..c.len() - 1].iter().all(|e| *e == two) {
            seed_d = c.len();
            break;
        }
        if first == two && last >= three {
            c.remove(0);
            let k = c.len() - 1;
            c[k] -= 1;
            ops.push(Op::StripLeft);
        } else if last == two && first >= three {
            c.pop();
            c[0] -= 1;
            ops.push(Op::StripRight);
        } else {
            return Ok(None);
        }
    }
    let mut t: Vec<BigInt> = vec![BigInt::one(); seed_d.max(1)];
    let mut n = big(2);
    for op in ops.iter().rev() {
        let t1 = t[0].clone();
        let tr = t[t.len() - 1].clone();
        match op {
            // undoing a StripLeft means the chain was [2,e_1,…,e_r+1]
            Op::StripLeft => {
                let mut next = Vec::with_capacity(t.len() + 1);
                next.push(&t1 + &tr);
                next.extend(t);
                t = next;
                n += tr;
            }
            Op::StripRight => {
                t.push(&t1 + &tr);
                n += t1;
            }
        }
    }
    let n = BigRational::from(n);
    Ok(Some(
        t.into_iter()
            .map(|ti| BigRational::from(ti) / &n - BigRational::one())
            .collect(),
    ))
}

/// 1-based indices of the curves attaining the minimal discrepancy
/// −(n−1)/n of a T-chain.
pub fn center(chain: &HJChain) -> Result<Vec<usize>> {
    let t = t_recognize(chain)?
        .ok_or_else(|| Error::precondition(format!("{} is not a T-chain", chain)))?;
    let disc = discrepancies(chain)?;
    let min = disc
        .deltas
        .iter()
        .min()
        .expect("chain is nonempty")
        .clone();
    let expected = -BigRational::new(t.n() - BigInt::one(), t.n().clone());
    if min != expected {
        return Err(Error::internal(format!(
            "minimal discrepancy of {} is {} instead of −(n−1)/n",
            chain, min
        )));
    }
    Ok(disc
        .deltas
        .iter()
        .enumerate()
        .filter(|(_, d)| **d == min)
        .map(|(i, _)| i + 1)
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cf::big_vec;

    fn chain(xs: &[i64]) -> HJChain {
        HJChain::from_i64s(xs).unwrap()
    }

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(big(n), big(d))
    }

    #[test]
    fn expand_examples() {
        assert_eq!(t_expand(&TType::new(1, 2, 1).unwrap()), chain(&[4]));
        assert_eq!(t_expand(&TType::new(4, 2, 1).unwrap()), chain(&[3, 2, 2, 3]));
        assert_eq!(t_expand(&TType::new(1, 3, 2).unwrap()), chain(&[2, 5]));
    }

    #[test]
    fn recognize_examples() {
        assert_eq!(
            t_recognize(&chain(&[4])).unwrap(),
            Some(TType::new(1, 2, 1).unwrap())
        );
        assert_eq!(
            t_recognize(&chain(&[2, 4, 3, 3])).unwrap(),
            Some(TType::new(2, 5, 3).unwrap())
        );
        assert_eq!(t_recognize(&chain(&[3, 5])).unwrap(), None);
        // Du Val chains are reported as not-a-T-chain
        assert_eq!(t_recognize(&chain(&[2, 2, 2])).unwrap(), None);
    }

    #[test]
    fn children_examples() {
        let (l, r) = t_children(&chain(&[4])).unwrap();
        assert_eq!((l, r), (chain(&[2, 5]), chain(&[5, 2])));
        let (l, r) = t_children(&chain(&[2, 5])).unwrap();
        assert_eq!((l, r), (chain(&[2, 2, 6]), chain(&[3, 5, 2])));
        let (l, r) = t_children(&chain(&[3, 2, 3])).unwrap();
        assert_eq!((l, r), (chain(&[2, 3, 2, 4]), chain(&[4, 2, 3, 2])));
        assert!(t_children(&chain(&[3, 5])).is_err());
    }

    #[test]
    fn enumerate_examples() {
        let one = enumerate_t_chains(1, 4, Some(1)).unwrap();
        assert_eq!(one.len(), 1);
        assert_eq!(one[0].0, TType::new(1, 2, 1).unwrap());
        assert_eq!(one[0].1, chain(&[4]));

        let two: Vec<HJChain> = enumerate_t_chains(2, 100, Some(1))
            .unwrap()
            .into_iter()
            .map(|(_, c)| c)
            .collect();
        assert_eq!(two, vec![chain(&[2, 5]), chain(&[4]), chain(&[5, 2])]);

        let three: Vec<HJChain> = enumerate_t_chains(3, 100, Some(1))
            .unwrap()
            .into_iter()
            .map(|(_, c)| c)
            .collect();
        assert_eq!(
            three,
            vec![
                chain(&[2, 2, 6]),
                chain(&[2, 5]),
                chain(&[2, 5, 3]),
                chain(&[3, 5, 2]),
                chain(&[4]),
                chain(&[5, 2]),
                chain(&[6, 2, 2]),
            ]
        );
    }

    #[test]
    fn discrepancy_examples() {
        assert_eq!(
            discrepancies(&chain(&[4])).unwrap().deltas,
            vec![rat(-1, 2)]
        );
        assert_eq!(
            discrepancies(&chain(&[2, 5])).unwrap().deltas,
            vec![rat(-1, 3), rat(-2, 3)]
        );
        assert_eq!(
            discrepancies(&chain(&[3, 5, 2])).unwrap().deltas,
            vec![rat(-3, 5), rat(-4, 5), rat(-2, 5)]
        );
        // non-T chains still solve
        let d = discrepancies(&chain(&[3, 5])).unwrap();
        assert_eq!(d.t_first, None);
        assert_eq!(d.deltas.len(), 2);
    }

    #[test]
    fn center_examples() {
        assert_eq!(center(&chain(&[4])).unwrap(), vec![1]);
        assert_eq!(center(&chain(&[3, 5, 2])).unwrap(), vec![2]);
        assert_eq!(center(&chain(&[3, 2, 2, 3])).unwrap(), vec![1, 2, 3, 4]);
        assert!(center(&chain(&[2, 2])).is_err());
    }

    #[test]
    fn end_parameters() {
        let d = discrepancies(&chain(&[2, 5])).unwrap();
        assert_eq!(d.t_first, Some(big(2)));
        assert_eq!(d.t_last, Some(big(1)));
    }

    #[test]
    fn recursion_matches_solve_on_moderate_chains() {
        for (_, c) in enumerate_t_chains(usize::MAX, 2000, None).unwrap() {
            let rec = discrepancies_recursive(&c).unwrap().unwrap();
            let solved = discrepancies(&c).unwrap().deltas;
            assert_eq!(rec, solved, "chain {}", c);
        }
    }

    #[test]
    fn round_trip_moderate() {
        for (t, c) in enumerate_t_chains(usize::MAX, 5000, None).unwrap() {
            assert_eq!(t_recognize(&c).unwrap(), Some(t.clone()));
            assert_eq!(t_expand(&t), c);
        }
    }

    #[test]
    fn child_index_law() {
        // children of a chain with end parameters (t_1, t_r) and index n
        // have indices n + t_r (prepended) and n + t_1 (appended), and
        // t_1 + t_r = n
        for (t, c) in enumerate_t_chains(usize::MAX, 600, None).unwrap() {
            let d = discrepancies(&c).unwrap();
            let (t1, tr) = (d.t_first.unwrap(), d.t_last.unwrap());
            assert_eq!(&t1 + &tr, t.n().clone(), "{}", c);
            let (prepended, appended) = t_children(&c).unwrap();
            let left = t_recognize(&prepended).unwrap().unwrap();
            let right = t_recognize(&appended).unwrap().unwrap();
            assert_eq!(left.n().clone(), t.n() + &tr, "{}", c);
            assert_eq!(right.n().clone(), t.n() + &t1, "{}", c);
            assert_eq!(left.d(), t.d());
            assert_eq!(right.d(), t.d());
        }
    }

    #[test]
    fn mirror_is_reversal() {
        for (t, c) in enumerate_t_chains(usize::MAX, 800, None).unwrap() {
            let rev = HJChain::new({
                let mut v = c.entries().to_vec();
                v.reverse();
                v
            })
            .unwrap();
            assert_eq!(t_recognize(&rev).unwrap(), Some(t.mirror()));
        }
    }

    #[test]
    fn gcd_recognizer_rejects_near_misses() {
        for xs in [
            vec![3, 5],
            vec![5, 2, 2],
            vec![2, 6],
            vec![4, 4],
            vec![3, 2, 2],
        ] {
            assert_eq!(t_recognize(&HJChain::new(big_vec(&xs)).unwrap()).unwrap(), None);
        }
    }
}
