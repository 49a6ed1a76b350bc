//! Chain enumeration: flag `f`- and `h`-vectors by several independent
//! routes, maximal-chain counting and the explicit key bijection, the
//! Eulerian specialization at `l = 0`, and closed-form evaluations.
//!
//! Every quantity here is computed at least twice by structurally different
//! methods (rank-selected chain DP, descent statistics, product formulas),
//! and the test suite pins them against each other and against frozen small
//! cases.

use std::collections::HashSet;
use std::fmt;

use itertools::Itertools;
use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::blocks::BlockTuple;
use crate::comb::{binomial, factorial, int_pow};
use crate::error::{Error, Result};
use crate::exec;
use crate::poset::{Element, Family, GradedPoset};
use crate::shelling::{chains_between, LabeledChain};
use crate::sign_vector::SignVector;

/// Polynomial with exact integer coefficients, stored densely from degree 0.
///
/// Equality pads the shorter coefficient list with zeros, so `1 + 3t` and
/// `1 + 3t + 0t^2` compare equal even though they render differently.
#[derive(Clone, Debug)]
pub struct IntPolynomial {
    coeffs: Vec<BigInt>,
}

impl IntPolynomial {
    /// Wrap a dense coefficient list (`coeffs[i]` is the degree-`i` term).
    pub fn new(coeffs: Vec<BigInt>) -> IntPolynomial {
        if coeffs.is_empty() {
            IntPolynomial { coeffs: vec![BigInt::zero()] }
        } else {
            IntPolynomial { coeffs }
        }
    }

    /// Convenience constructor for small literals.
    pub fn from_isize(coeffs: &[isize]) -> IntPolynomial {
        IntPolynomial::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    /// The zero polynomial.
    pub fn zero() -> IntPolynomial {
        IntPolynomial::new(Vec::new())
    }

    /// `(1 - t)^k` expanded by the binomial theorem.
    pub fn one_minus_t_pow(k: usize) -> IntPolynomial {
        let coeffs = (0..=k)
            .map(|j| {
                let b = binomial(k, j);
                if j % 2 == 0 { b } else { -b }
            })
            .collect();
        IntPolynomial::new(coeffs)
    }

    /// Dense coefficients as stored (may carry trailing zeros).
    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// Degree-`i` coefficient, zero beyond the stored length.
    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_else(BigInt::zero)
    }

    /// Degree ignoring trailing zeros (the zero polynomial reports 0).
    pub fn degree(&self) -> usize {
        self.coeffs
            .iter()
            .rposition(|c| !c.is_zero())
            .unwrap_or(0)
    }

    /// Sum of two polynomials.
    pub fn add(&self, other: &IntPolynomial) -> IntPolynomial {
        let len = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..len).map(|i| self.coeff(i) + other.coeff(i)).collect();
        IntPolynomial::new(coeffs)
    }

    /// Product of two polynomials.
    pub fn mul(&self, other: &IntPolynomial) -> IntPolynomial {
        let mut coeffs = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        IntPolynomial::new(coeffs)
    }

    /// Scale every coefficient by `c`.
    pub fn mul_scalar(&self, c: &BigInt) -> IntPolynomial {
        IntPolynomial::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Multiply by `t^k`.
    pub fn shift(&self, k: usize) -> IntPolynomial {
        let mut coeffs = vec![BigInt::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        IntPolynomial::new(coeffs)
    }

    /// Drop every term of degree above `max_deg`, keeping a dense list of
    /// exactly `max_deg + 1` coefficients.
    pub fn truncated(&self, max_deg: usize) -> IntPolynomial {
        let coeffs = (0..=max_deg).map(|i| self.coeff(i)).collect();
        IntPolynomial::new(coeffs)
    }
}

impl PartialEq for IntPolynomial {
    fn eq(&self, other: &IntPolynomial) -> bool {
        let len = self.coeffs.len().max(other.coeffs.len());
        (0..len).all(|i| self.coeff(i) == other.coeff(i))
    }
}

impl Eq for IntPolynomial {}

impl fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use num_traits::Signed;
        let mut wrote = false;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if wrote {
                write!(f, " {} ", if c.is_negative() { "-" } else { "+" })?;
            } else if c.is_negative() {
                write!(f, "-")?;
            }
            match i {
                0 => write!(f, "{mag}")?,
                _ => {
                    if !mag.is_one() {
                        write!(f, "{mag}")?;
                    }
                    if i == 1 {
                        write!(f, "t")?;
                    } else {
                        write!(f, "t^{i}")?;
                    }
                }
            }
            wrote = true;
        }
        if !wrote {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// A function on rank subsets `S` of `{1, ..., d}`, stored densely over all
/// `2^d` subsets: entry `mask` has bit `i - 1` set iff `i` is in `S`.
///
/// Holds chain counts (the flag `f`-vector) or their inclusion–exclusion
/// transform (the flag `h`-vector).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FlagVector {
    d: usize,
    values: Vec<BigInt>,
}

impl FlagVector {
    /// Dense storage refuses rank counts past this point.
    pub const MAX_D: usize = 20;

    /// Build from a dense value table of length `2^d`.
    pub fn from_values(d: usize, values: Vec<BigInt>) -> Result<FlagVector> {
        if d > Self::MAX_D {
            return Err(Error::GuardExceeded {
                what: "flag vector rank count",
                value: d,
                limit: Self::MAX_D,
            });
        }
        if values.len() != 1 << d {
            return Err(Error::BadRankSet(format!(
                "expected {} values for d = {d}, got {}",
                1usize << d,
                values.len()
            )));
        }
        Ok(FlagVector { d, values })
    }

    fn zeroed(d: usize) -> Result<FlagVector> {
        FlagVector::from_values(d, vec![BigInt::zero(); 1 << d])
    }

    /// Number of ranks the subsets are drawn from.
    pub fn d(&self) -> usize {
        self.d
    }

    /// Value at a subset given as a bitmask.
    pub fn get(&self, mask: usize) -> &BigInt {
        &self.values[mask]
    }

    /// Value at a subset given as a list of ranks in `1..=d`.
    pub fn get_set(&self, set: &[usize]) -> Result<&BigInt> {
        Ok(&self.values[Self::mask_of(self.d, set)?])
    }

    /// Encode a rank list as a bitmask, validating the range.
    pub fn mask_of(d: usize, set: &[usize]) -> Result<usize> {
        let mut mask = 0usize;
        for &r in set {
            if r < 1 || r > d {
                return Err(Error::BadRankSet(format!("rank {r} outside 1..={d}")));
            }
            if mask >> (r - 1) & 1 == 1 {
                return Err(Error::BadRankSet(format!("rank {r} repeated")));
            }
            mask |= 1 << (r - 1);
        }
        Ok(mask)
    }

    /// Decode a bitmask into the sorted rank list it stands for.
    pub fn set_of(mask: usize) -> Vec<usize> {
        (0..usize::BITS as usize)
            .filter(|b| mask >> b & 1 == 1)
            .map(|b| b + 1)
            .collect()
    }

    /// Sum the values over subsets of each cardinality: entry `i` is the sum
    /// over `|S| = i`, so a flag `f`-vector yields the `f`-vector and a flag
    /// `h`-vector yields the `h`-vector.
    pub fn rank_sums(&self) -> Vec<BigInt> {
        let mut sums = vec![BigInt::zero(); self.d + 1];
        for (mask, v) in self.values.iter().enumerate() {
            sums[mask.count_ones() as usize] += v;
        }
        sums
    }

    /// Iterate `(mask, value)` pairs in mask order.
    pub fn iter(&self) -> impl Iterator<Item = (usize, &BigInt)> {
        self.values.iter().enumerate()
    }
}

/// Count chains through each rank subset by dynamic programming over the
/// comparability relation.
///
/// Works on any graded poset: ranks `min_rank..=max_rank` are renumbered
/// `1..=d`. Entry at mask `S` counts the chains whose rank set is exactly `S`
/// (the empty chain counts once at `S = {}`).
pub fn flag_f_brute(p: &GradedPoset) -> Result<FlagVector> {
    let min_r = p.min_rank();
    let d = p.max_rank() - min_r + 1;
    if d > FlagVector::MAX_D {
        return Err(Error::GuardExceeded {
            what: "flag vector rank count",
            value: d,
            limit: FlagVector::MAX_D,
        });
    }
    // Touch the reachability closure once so the parallel workers share it.
    let _ = p.lt(0, 0);
    let masks: Vec<usize> = (0..1usize << d).collect();
    let values = exec::map(&masks, |&mask| {
        if mask == 0 {
            return BigInt::one();
        }
        let ranks: Vec<usize> = (0..d)
            .filter(|b| mask >> b & 1 == 1)
            .map(|b| b + min_r)
            .collect();
        let mut cur = vec![BigInt::zero(); p.len()];
        for &x in p.rank_elements(ranks[0]) {
            cur[x] = BigInt::one();
        }
        for w in ranks.windows(2) {
            let (lo_rank, hi_rank) = (w[0], w[1]);
            let mut next = vec![BigInt::zero(); p.len()];
            for &y in p.rank_elements(hi_rank) {
                let mut acc = BigInt::zero();
                for x in p.downset(y) {
                    if p.rank(x) == lo_rank {
                        acc += &cur[x];
                    }
                }
                next[y] = acc;
            }
            cur = next;
        }
        let last = *ranks.last().expect("nonempty mask");
        p.rank_elements(last).iter().map(|&x| cur[x].clone()).sum()
    });
    FlagVector::from_values(d, values)
}

/// Inclusion–exclusion transform of a flag `f`-vector into the flag
/// `h`-vector, as an in-place subset Möbius pass.
pub fn flag_h(alpha: &FlagVector) -> FlagVector {
    let mut values = alpha.values.clone();
    for b in 0..alpha.d {
        for mask in 0..values.len() {
            if mask >> b & 1 == 1 {
                let lower = values[mask ^ (1 << b)].clone();
                values[mask] -= lower;
            }
        }
    }
    FlagVector { d: alpha.d, values }
}

/// Inverse of [`flag_h`]: the subset zeta transform recovering the flag
/// `f`-vector from the flag `h`-vector.
pub fn flag_f_from_h(beta: &FlagVector) -> FlagVector {
    let mut values = beta.values.clone();
    for b in 0..beta.d {
        for mask in 0..values.len() {
            if mask >> b & 1 == 1 {
                let lower = values[mask ^ (1 << b)].clone();
                values[mask] += lower;
            }
        }
    }
    FlagVector { d: beta.d, values }
}

/// Closed-form flag chain count for the exactly-`l` family: a product of
/// three binomials and a multinomial in the rank gaps. The empty set gives 1.
pub fn flag_f_closed(n: usize, l: usize, set: &[usize]) -> Result<BigInt> {
    if l >= n || n == 0 {
        return Err(Error::InvalidParams { n, l });
    }
    let d = n - l;
    for w in set.windows(2) {
        if w[0] >= w[1] {
            return Err(Error::BadRankSet(format!("{set:?} is not strictly increasing")));
        }
    }
    let (first, last) = match (set.first(), set.last()) {
        (Some(&a), Some(&b)) => (a, b),
        _ => return Ok(BigInt::one()),
    };
    if first < 1 || last > d {
        return Err(Error::BadRankSet(format!("{set:?} not contained in 1..={d}")));
    }
    let mut gaps = factorial(last - first);
    for w in set.windows(2) {
        gaps /= factorial(w[1] - w[0]);
    }
    Ok(binomial(l + first - 1, l)
        * binomial(n, l + last)
        * binomial(2 * l + last, last - first)
        * gaps)
}

/// Flag `h`-vector of the exactly-`l` poset read off as descent statistics:
/// tally the descent sets of every maximal chain of the bounded extension.
/// Fans out over atoms.
pub fn flag_h_descents(n: usize, l: usize) -> Result<FlagVector> {
    let p = GradedPoset::build(n, l, Family::RHat)?;
    let d = n - l;
    let mut fv = FlagVector::zeroed(d)?;
    let bottom = p.bottom().expect("bounded poset has a minimum");
    let atoms: Vec<usize> = p.covers(bottom).to_vec();
    let tallies = exec::map(&atoms, |&a| {
        let mut t = vec![0u64; 1 << d];
        for chain in maximal_chains_from(&p, a).expect("atom of the bounded poset") {
            t[chain.descent_mask()] += 1;
        }
        t
    });
    for t in tallies {
        for (mask, c) in t.iter().enumerate() {
            fv.values[mask] += BigInt::from(*c);
        }
    }
    Ok(fv)
}

/// Collapse a flag `f`-vector to the `(F, H)` polynomial pair.
///
/// `F` sums the flag values by cardinality. `H` is computed twice: once as
/// the cardinality sums of the flag `h`-vector, and once through the
/// substitution identity `H(t) = sum_i f_{i-1} t^i (1 - t)^{d-i}`. The two
/// routes must agree; a mismatch panics, since it would mean the transforms
/// themselves are inconsistent.
pub fn fh_from_flag(alpha: &FlagVector) -> (IntPolynomial, IntPolynomial) {
    let d = alpha.d();
    let f = IntPolynomial::new(alpha.rank_sums());
    let h_direct = IntPolynomial::new(flag_h(alpha).rank_sums());
    let mut h_ident = IntPolynomial::zero();
    for i in 0..=d {
        let term = IntPolynomial::one_minus_t_pow(d - i)
            .mul_scalar(&f.coeff(i))
            .shift(i);
        h_ident = h_ident.add(&term);
    }
    assert_eq!(
        h_direct, h_ident,
        "flag h cardinality sums disagree with the (1-t) substitution identity"
    );
    (f, h_direct)
}

/// `(F, H)` of a graded poset via the brute-force flag route.
pub fn fh_vectors(p: &GradedPoset) -> Result<(IntPolynomial, IntPolynomial)> {
    Ok(fh_from_flag(&flag_f_brute(p)?))
}

/// All maximal chains of the bounded exactly-`l` poset passing through a
/// given atom, with their edge labels.
pub fn maximal_chains_from(p: &GradedPoset, atom: usize) -> Result<Vec<LabeledChain>> {
    if p.family() != Family::RHat {
        return Err(Error::UnsupportedFamily(
            p.family().as_str(),
            "labeled maximal-chain enumeration",
        ));
    }
    let bottom = p.bottom().expect("bounded poset has a minimum");
    let top = p.top().expect("bounded poset has a maximum");
    chains_between(p, atom, top)
        .into_iter()
        .map(|path| {
            let mut full = Vec::with_capacity(path.len() + 1);
            full.push(bottom);
            full.extend(path);
            LabeledChain::from_path(p, full)
        })
        .collect()
}

/// All maximal chains of the bounded exactly-`l` poset, fanned out over
/// atoms. Order is deterministic: atoms ascending, then depth-first.
pub fn maximal_chains(p: &GradedPoset) -> Result<Vec<LabeledChain>> {
    if p.family() != Family::RHat {
        return Err(Error::UnsupportedFamily(
            p.family().as_str(),
            "labeled maximal-chain enumeration",
        ));
    }
    let bottom = p.bottom().expect("bounded poset has a minimum");
    let atoms: Vec<usize> = p.covers(bottom).to_vec();
    let per_atom = exec::map(&atoms, |&a| maximal_chains_from(p, a));
    let mut out = Vec::new();
    for chains in per_atom {
        out.extend(chains?);
    }
    Ok(out)
}

/// Number of maximal chains of the bounded exactly-`l` poset:
/// `C(n + l, 2l + 1) * (n - l - 1)!`.
pub fn max_chain_count(n: usize, l: usize) -> Result<BigInt> {
    if l >= n || n == 0 {
        return Err(Error::InvalidParams { n, l });
    }
    Ok(binomial(n + l, 2 * l + 1) * factorial(n - l - 1))
}

/// Combinatorial key for a maximal chain: a `(2l + 1)`-subset of
/// `{1, ..., n + l}` choosing the endpoints, and a permutation of
/// `{1, ..., n - l - 1}` ordering the interior insertions.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MaximalChainKey {
    /// Strictly increasing positions in `1..=n+l`.
    pub positions: Vec<usize>,
    /// Permutation of `1..=n-l-1`, applied to the leftover supports.
    pub perm: Vec<usize>,
}

/// Decode a key into its maximal chain, listed bottom atom to coatom as
/// block tuples (the bounding elements are implicit).
///
/// Odd-indexed positions (1st, 3rd, ...) determine the singleton blocks of
/// the starting atom; even-indexed positions determine the block boundaries
/// of the ending coatom; the permutation fixes the order in which the
/// remaining supports are inserted.
pub fn chain_from_key(n: usize, l: usize, key: &MaximalChainKey) -> Result<Vec<BlockTuple>> {
    if l >= n || n == 0 {
        return Err(Error::InvalidParams { n, l });
    }
    let c = &key.positions;
    if c.len() != 2 * l + 1 {
        return Err(Error::BadChainKey(format!(
            "expected {} positions, got {}",
            2 * l + 1,
            c.len()
        )));
    }
    for w in c.windows(2) {
        if w[0] >= w[1] {
            return Err(Error::BadChainKey(format!("positions {c:?} not strictly increasing")));
        }
    }
    if c[0] < 1 || c[c.len() - 1] > n + l {
        return Err(Error::BadChainKey(format!(
            "positions {c:?} not contained in 1..={}",
            n + l
        )));
    }
    let m = n - l - 1;
    if key.perm.len() != m {
        return Err(Error::BadChainKey(format!(
            "expected a permutation of 1..={m}, got {:?}",
            key.perm
        )));
    }
    let mut seen = vec![false; m + 1];
    for &v in &key.perm {
        if v < 1 || v > m || seen[v] {
            return Err(Error::BadChainKey(format!(
                "{:?} is not a permutation of 1..={m}",
                key.perm
            )));
        }
        seen[v] = true;
    }

    // Odd positions give the atom's singletons, even ones the coatom's
    // block boundaries.
    let starts: Vec<usize> = (1..=l + 1).map(|i| c[2 * i - 2] - i + 1).collect();
    let bounds: Vec<usize> = (1..=l).map(|i| c[2 * i - 1] - i).collect();

    let atom = BlockTuple::new(n, starts.iter().map(|&a| vec![a]).collect())?;
    let mut coatom_blocks = Vec::with_capacity(l + 1);
    let mut lo = 1usize;
    for &b in &bounds {
        coatom_blocks.push((lo..=b).collect::<Vec<_>>());
        lo = b + 1;
    }
    coatom_blocks.push((lo..=n).collect::<Vec<_>>());
    let coatom = BlockTuple::new(n, coatom_blocks)?;

    let block_of = |e: usize| bounds.iter().filter(|&&b| b < e).count() + 1;
    let leftover: Vec<usize> = (1..=n).filter(|e| !starts.contains(e)).collect();

    let mut chain = Vec::with_capacity(n - l);
    chain.push(atom);
    for &idx in &key.perm {
        let e = leftover[idx - 1];
        let next = chain.last().expect("nonempty").with_added(block_of(e), e)?;
        chain.push(next);
    }
    debug_assert_eq!(chain.last(), Some(&coatom));
    Ok(chain)
}

/// Every maximal-chain key for the given parameters, in lexicographic order
/// of `(positions, perm)`.
pub fn chain_keys(n: usize, l: usize) -> Result<Vec<MaximalChainKey>> {
    if l >= n || n == 0 {
        return Err(Error::InvalidParams { n, l });
    }
    let m = n - l - 1;
    let mut out = Vec::new();
    for positions in (1..=n + l).combinations(2 * l + 1) {
        for perm in (1..=m).permutations(m) {
            out.push(MaximalChainKey { positions: positions.clone(), perm });
        }
    }
    Ok(out)
}

/// Eulerian number: permutations of `{1, ..., n}` with exactly `d` descents,
/// by the standard two-term recurrence.
pub fn eulerian(n: usize, d: usize) -> BigInt {
    if d > n {
        return BigInt::zero();
    }
    let mut row = vec![BigInt::one()];
    for m in 1..=n {
        let mut next = vec![BigInt::zero(); row.len() + 1];
        for (k, v) in row.iter().enumerate() {
            next[k] += BigInt::from(k + 1) * v;
            next[k + 1] += BigInt::from(m - k - 1) * v;
        }
        row = next;
    }
    row.into_iter().nth(d).expect("d <= n")
}

/// Check the descent-preserving bijection between permutations and maximal
/// chains of the bounded `l = 0` poset: cumulative supports of each
/// permutation must walk a maximal chain whose label descents match the
/// permutation's descents, hitting every chain exactly once.
pub fn eulerian_bijection_check(n: usize) -> Result<bool> {
    let p = GradedPoset::build(n, 0, Family::RHat)?;
    let total = maximal_chains(&p)?.len();
    if BigInt::from(total) != max_chain_count(n, 0)? {
        return Ok(false);
    }
    let mut seen = HashSet::new();
    for perm in (1..=n).permutations(n) {
        let mut path = vec![p.bottom().expect("bounded")];
        let mut support: Vec<usize> = Vec::new();
        for &v in &perm {
            support.push(v);
            support.sort_unstable();
            let t = BlockTuple::new(n, vec![support.clone()])?;
            let e = Element::Vector(SignVector::from_block_tuple(&t));
            match p.index_of(&e) {
                Some(i) => path.push(i),
                None => return Ok(false),
            }
        }
        path.push(p.top().expect("bounded"));
        let chain = LabeledChain::from_path(&p, path)?;
        let perm_descents: Vec<usize> = perm
            .windows(2)
            .enumerate()
            .filter(|(_, w)| w[0] > w[1])
            .map(|(i, _)| i + 1)
            .collect();
        if chain.descent_set() != perm_descents {
            return Ok(false);
        }
        if !seen.insert(chain.elements.clone()) {
            return Ok(false);
        }
    }
    Ok(seen.len() == total)
}

/// Both sides of the surjection-count identity: the sum of multinomials over
/// positive compositions of `s` into `d` parts, and the inclusion–exclusion
/// sum `sum_i (-1)^i C(d, i) (d - i)^s`.
pub fn surjection_identity(s: usize, d: usize) -> (BigInt, BigInt) {
    fn go(remaining: usize, parts: usize, denom: &BigInt, s_fact: &BigInt, acc: &mut BigInt) {
        if parts == 0 {
            if remaining == 0 {
                *acc += s_fact / denom;
            }
            return;
        }
        for t in 1..=remaining.saturating_sub(parts - 1) {
            go(remaining - t, parts - 1, &(denom * factorial(t)), s_fact, acc);
        }
    }
    let mut lhs = BigInt::zero();
    go(s, d, &BigInt::one(), &factorial(s), &mut lhs);
    let mut rhs = BigInt::zero();
    for i in 0..=d {
        let term = binomial(d, i) * int_pow(d - i, s);
        if i % 2 == 0 {
            rhs += term;
        } else {
            rhs -= term;
        }
    }
    (lhs, rhs)
}

/// Closed form for the number of chains with `d + 1` elements (the degree
/// `d + 1` coefficient of `F`), as a triple sum with alternating signs.
pub fn f_d_closed(n: usize, l: usize, d: usize) -> Result<BigInt> {
    if l >= n || n == 0 {
        return Err(Error::InvalidParams { n, l });
    }
    let mut total = BigInt::zero();
    for r in 1..=(n - l) {
        let s_max = n - l - r;
        for s in d..=s_max {
            let base = binomial(l + r - 1, l) * binomial(n, l + r + s) * binomial(2 * l + r + s, s);
            let mut inner = BigInt::zero();
            for i in 0..=d {
                let term = binomial(d, i) * int_pow(d - i, s);
                if i % 2 == 0 {
                    inner += term;
                } else {
                    inner -= term;
                }
            }
            total += base * inner;
        }
    }
    Ok(total)
}

/// Closed form for the `h`-polynomial of the exactly-`l` poset, as
/// `(1 - t)^{n-l}` times a generating sum, truncated to degrees
/// `0..=n-l` (the raw product carries spurious higher-degree terms).
pub fn h_series_closed(n: usize, l: usize) -> Result<IntPolynomial> {
    if l >= n || n == 0 {
        return Err(Error::InvalidParams { n, l });
    }
    let d = n - l;
    let mut inner = vec![BigInt::zero(); d + 1];
    inner[0] = BigInt::one();
    for (j, slot) in inner.iter_mut().enumerate().skip(1) {
        let mut c = BigInt::zero();
        for s in 0..d {
            for r in 0..d - s {
                c += binomial(l + r, l)
                    * binomial(n, l + r + s + 1)
                    * binomial(2 * l + r + s + 1, s)
                    * int_pow(j - 1, s);
            }
        }
        *slot = c;
    }
    Ok(IntPolynomial::new(inner)
        .mul(&IntPolynomial::one_minus_t_pow(d))
        .truncated(d))
}

/// Closed form for `h_1` of the exactly-`l` poset.
pub fn h1_closed(n: usize, l: usize) -> Result<BigInt> {
    if l >= n || n == 0 {
        return Err(Error::InvalidParams { n, l });
    }
    let mut total = BigInt::from(l as i64 - n as i64);
    if (l + 1).is_multiple_of(2) {
        total += BigInt::one();
    } else {
        total -= BigInt::one();
    }
    for i in 0..=l {
        let term = binomial(n, i) * int_pow(2, n - i);
        if (l - i).is_multiple_of(2) {
            total += term;
        } else {
            total -= term;
        }
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poset::{Family, GradedPoset};

    fn big(v: i64) -> BigInt {
        BigInt::from(v)
    }

    fn bigs(vs: &[i64]) -> Vec<BigInt> {
        vs.iter().map(|&v| big(v)).collect()
    }

    #[test]
    fn polynomial_arithmetic_and_display() {
        let f = IntPolynomial::from_isize(&[1, 5, 4]);
        assert_eq!(f.degree(), 2);
        assert_eq!(f.to_string(), "1 + 5t + 4t^2");
        assert_eq!(IntPolynomial::from_isize(&[1, 3, 0]).to_string(), "1 + 3t");
        assert_eq!(IntPolynomial::from_isize(&[0, -1]).to_string(), "-t");
        assert_eq!(IntPolynomial::zero().to_string(), "0");

        // Padding-insensitive equality.
        assert_eq!(IntPolynomial::from_isize(&[1, 3]), IntPolynomial::from_isize(&[1, 3, 0, 0]));

        let sq = IntPolynomial::one_minus_t_pow(2);
        assert_eq!(sq, IntPolynomial::from_isize(&[1, -2, 1]));
        let prod = IntPolynomial::from_isize(&[1, 5, 9]).mul(&sq);
        assert_eq!(prod, IntPolynomial::from_isize(&[1, 3, 0, -13, 9]));
        assert_eq!(prod.truncated(2), IntPolynomial::from_isize(&[1, 3, 0]));
        assert_eq!(prod.coeff(4), big(9));
        assert_eq!(prod.coeff(99), big(0));

        let shifted = IntPolynomial::from_isize(&[2, 1]).shift(2).mul_scalar(&big(3));
        assert_eq!(shifted, IntPolynomial::from_isize(&[0, 0, 6, 3]));
    }

    #[test]
    fn flag_vector_accessors_and_guard() {
        let fv = FlagVector::from_values(2, bigs(&[1, 3, 2, 4])).unwrap();
        assert_eq!(fv.d(), 2);
        assert_eq!(fv.get(0b01), &big(3));
        assert_eq!(fv.get_set(&[2]).unwrap(), &big(2));
        assert_eq!(fv.get_set(&[1, 2]).unwrap(), &big(4));
        assert_eq!(FlagVector::set_of(0b101), vec![1, 3]);
        assert_eq!(fv.rank_sums(), bigs(&[1, 5, 4]));
        assert!(fv.get_set(&[3]).is_err());
        assert!(fv.get_set(&[1, 1]).is_err());
        assert!(FlagVector::from_values(2, bigs(&[1])).is_err());
        assert!(FlagVector::from_values(21, Vec::new()).is_err());
    }

    #[test]
    fn flag_counts_on_the_smallest_interesting_poset() {
        let p = GradedPoset::build(3, 1, Family::R).unwrap();
        let alpha = flag_f_brute(&p).unwrap();
        assert_eq!(alpha.d(), 2);
        assert_eq!(alpha.values, bigs(&[1, 3, 2, 4]));

        let beta = flag_h(&alpha);
        assert_eq!(beta.values, bigs(&[1, 2, 1, 0]));
        assert_eq!(flag_f_from_h(&beta), alpha);

        let (f, h) = fh_from_flag(&alpha);
        assert_eq!(f, IntPolynomial::from_isize(&[1, 5, 4]));
        assert_eq!(h, IntPolynomial::from_isize(&[1, 3, 0]));

        // Closed product form agrees subset by subset.
        for (set, want) in [
            (&[][..], 1),
            (&[1][..], 3),
            (&[2][..], 2),
            (&[1, 2][..], 4),
        ] {
            assert_eq!(flag_f_closed(3, 1, set).unwrap(), big(want));
        }
        assert!(flag_f_closed(3, 1, &[0]).is_err());
        assert!(flag_f_closed(3, 1, &[1, 1]).is_err());
        assert!(flag_f_closed(3, 1, &[3]).is_err());
        assert!(flag_f_closed(3, 3, &[]).is_err());
    }

    #[test]
    fn closed_flag_counts_match_the_chain_scan() {
        for (n, l) in [(4, 0), (4, 1), (4, 2), (5, 1), (5, 2)] {
            let p = GradedPoset::build(n, l, Family::R).unwrap();
            let alpha = flag_f_brute(&p).unwrap();
            for mask in 0..1usize << alpha.d() {
                let set = FlagVector::set_of(mask);
                assert_eq!(
                    flag_f_closed(n, l, &set).unwrap(),
                    *alpha.get(mask),
                    "flag count mismatch at n={n}, l={l}, S={set:?}"
                );
            }
        }
    }

    #[test]
    fn descent_statistics_match_the_moebius_transform() {
        for (n, l) in [(3, 1), (4, 1), (4, 2), (5, 2), (4, 0)] {
            let p = GradedPoset::build(n, l, Family::R).unwrap();
            let beta = flag_h(&flag_f_brute(&p).unwrap());
            let by_descents = flag_h_descents(n, l).unwrap();
            assert_eq!(beta, by_descents, "descent route diverged at n={n}, l={l}");
        }
    }

    #[test]
    fn bounded_extension_flag_bookkeeping() {
        // Adjoining bounds shifts rank subsets: interior positions restrict
        // to the unbounded flag counts, and any flag h entry touching an
        // adjoined bound vanishes.
        let p = GradedPoset::build(3, 1, Family::R).unwrap();
        let hat = p.bounded_extension();
        let alpha = flag_f_brute(&p).unwrap();
        let alpha_hat = flag_f_brute(&hat).unwrap();
        let beta = flag_h(&alpha);
        let beta_hat = flag_h(&alpha_hat);
        let d = alpha.d();
        assert_eq!(alpha_hat.d(), d + 2);
        let ends = 1 | (1 << (d + 1));
        for mask_hat in 0..1usize << (d + 2) {
            let interior = (mask_hat >> 1) & ((1 << d) - 1);
            assert_eq!(alpha_hat.get(mask_hat), alpha.get(interior));
            if mask_hat & ends != 0 {
                assert_eq!(beta_hat.get(mask_hat), &BigInt::zero());
            } else {
                assert_eq!(beta_hat.get(mask_hat), beta.get(interior));
            }
        }
    }

    #[test]
    fn maximal_chain_counts_and_enumeration_agree() {
        for (n, l, want) in [(3, 1, 4), (4, 1, 20), (5, 2, 42), (4, 0, 24)] {
            assert_eq!(max_chain_count(n, l).unwrap(), big(want));
            let hat = GradedPoset::build(n, l, Family::RHat).unwrap();
            let chains = maximal_chains(&hat).unwrap();
            assert_eq!(chains.len(), want as usize);
            for c in &chains {
                assert_eq!(c.elements.len(), n - l + 2);
                assert!(c.descent_set().iter().all(|&i| i >= 1 && i <= n - l));
            }
        }
        let unbounded = GradedPoset::build(3, 1, Family::R).unwrap();
        assert!(maximal_chains(&unbounded).is_err());
    }

    #[test]
    fn per_atom_chunks_partition_the_chain_list() {
        let hat = GradedPoset::build(4, 1, Family::RHat).unwrap();
        let bottom = hat.bottom().unwrap();
        let mut glued = Vec::new();
        for &a in hat.covers(bottom) {
            glued.extend(maximal_chains_from(&hat, a).unwrap());
        }
        let all = maximal_chains(&hat).unwrap();
        assert_eq!(all.len(), glued.len());
        for (x, y) in all.iter().zip(&glued) {
            assert_eq!(x.elements, y.elements);
        }
    }

    #[test]
    fn chain_keys_decode_to_the_pinned_examples() {
        let key = MaximalChainKey { positions: vec![1, 2, 3], perm: vec![1] };
        let chain = chain_from_key(3, 1, &key).unwrap();
        assert_eq!(
            chain,
            vec![
                BlockTuple::new(3, vec![vec![1], vec![2]]).unwrap(),
                BlockTuple::new(3, vec![vec![1], vec![2, 3]]).unwrap(),
            ]
        );

        let key = MaximalChainKey { positions: vec![2, 3, 4], perm: vec![1] };
        let chain = chain_from_key(3, 1, &key).unwrap();
        assert_eq!(
            chain,
            vec![
                BlockTuple::new(3, vec![vec![2], vec![3]]).unwrap(),
                BlockTuple::new(3, vec![vec![1, 2], vec![3]]).unwrap(),
            ]
        );
    }

    #[test]
    fn chain_key_validation_rejects_malformed_keys() {
        let ok = |positions: Vec<usize>, perm: Vec<usize>| MaximalChainKey { positions, perm };
        assert!(chain_from_key(3, 1, &ok(vec![1, 2], vec![1])).is_err());
        assert!(chain_from_key(3, 1, &ok(vec![1, 1, 3], vec![1])).is_err());
        assert!(chain_from_key(3, 1, &ok(vec![1, 2, 5], vec![1])).is_err());
        assert!(chain_from_key(3, 1, &ok(vec![1, 2, 3], vec![])).is_err());
        assert!(chain_from_key(3, 1, &ok(vec![1, 2, 3], vec![2])).is_err());
        assert!(chain_from_key(4, 1, &ok(vec![1, 2, 3], vec![1, 1])).is_err());
        assert!(chain_from_key(3, 3, &ok(vec![1, 2, 3], vec![1])).is_err());
    }

    #[test]
    fn keys_are_in_bijection_with_maximal_chains() {
        for (n, l) in [(3, 1), (4, 1), (4, 2), (5, 2), (4, 0)] {
            let keys = chain_keys(n, l).unwrap();
            assert_eq!(BigInt::from(keys.len()), max_chain_count(n, l).unwrap());

            let mut decoded = HashSet::new();
            for key in &keys {
                let chain = chain_from_key(n, l, key).unwrap();
                assert_eq!(chain.len(), n - l);
                assert!(decoded.insert(chain), "duplicate chain from {key:?}");
            }

            let hat = GradedPoset::build(n, l, Family::RHat).unwrap();
            let enumerated: HashSet<Vec<BlockTuple>> = maximal_chains(&hat)
                .unwrap()
                .into_iter()
                .map(|c| {
                    c.elements[1..c.elements.len() - 1]
                        .iter()
                        .map(|&i| hat.element(i).tuple().expect("interior element"))
                        .collect()
                })
                .collect();
            assert_eq!(decoded, enumerated, "key image differs at n={n}, l={l}");
        }
    }

    #[test]
    fn eulerian_numbers_by_recurrence() {
        assert_eq!(eulerian(3, 1), big(4));
        assert_eq!(
            (0..=4).map(|d| eulerian(5, d)).collect::<Vec<_>>(),
            bigs(&[1, 26, 66, 26, 1])
        );
        assert_eq!(eulerian(5, 5), big(0));
        assert_eq!(eulerian(0, 0), big(1));
        assert_eq!(eulerian(4, 9), big(0));
        for n in 1..=7 {
            let total: BigInt = (0..n).map(|d| eulerian(n, d)).sum();
            assert_eq!(total, factorial(n), "Eulerian row must sum to n!");
        }
    }

    #[test]
    fn boolean_family_h_vector_is_the_eulerian_row() {
        for n in 2..=6 {
            let p = GradedPoset::build(n, 0, Family::R).unwrap();
            let (_, h) = fh_vectors(&p).unwrap();
            for d in 0..=n {
                assert_eq!(h.coeff(d), eulerian(n, d), "h_{d} of the n={n} boolean family");
            }
        }
    }

    #[test]
    fn permutation_chain_bijection_preserves_descents() {
        for n in 2..=5 {
            assert!(eulerian_bijection_check(n).unwrap(), "bijection failed at n={n}");
        }
    }

    #[test]
    fn surjection_identity_holds_on_a_grid() {
        assert_eq!(surjection_identity(3, 2), (big(6), big(6)));
        assert_eq!(surjection_identity(0, 3), (big(0), big(0)));
        assert_eq!(surjection_identity(0, 0), (big(1), big(1)));
        for s in 0..=8 {
            for d in 0..=4 {
                let (lhs, rhs) = surjection_identity(s, d);
                assert_eq!(lhs, rhs, "identity failed at s={s}, d={d}");
            }
        }
    }

    #[test]
    fn closed_chain_counts_match_the_flag_route() {
        for (n, l) in [(3, 1), (4, 1), (4, 2), (5, 2), (5, 0), (6, 3)] {
            let p = GradedPoset::build(n, l, Family::R).unwrap();
            let (f, _) = fh_vectors(&p).unwrap();
            for d in 0..=(n - l) {
                assert_eq!(
                    f_d_closed(n, l, d).unwrap(),
                    f.coeff(d + 1),
                    "chain-count closed form diverged at n={n}, l={l}, d={d}"
                );
            }
        }
    }

    #[test]
    fn closed_h_series_matches_the_flag_route() {
        assert_eq!(h_series_closed(3, 1).unwrap(), IntPolynomial::from_isize(&[1, 3, 0]));
        for n in 1..=6 {
            for l in 0..n {
                let p = GradedPoset::build(n, l, Family::R).unwrap();
                let (_, h) = fh_vectors(&p).unwrap();
                let closed = h_series_closed(n, l).unwrap();
                assert_eq!(closed, h, "closed h series diverged at n={n}, l={l}");
                assert_eq!(closed.coeffs().len(), n - l + 1);
            }
        }
    }

    #[test]
    fn closed_h1_matches_the_series() {
        assert_eq!(h1_closed(3, 1).unwrap(), big(3));
        for n in 1..=7 {
            for l in 0..n {
                assert_eq!(
                    h1_closed(n, l).unwrap(),
                    h_series_closed(n, l).unwrap().coeff(1),
                    "h_1 closed form diverged at n={n}, l={l}"
                );
            }
            // At l = 0 the count collapses to 2^n - n - 1.
            assert_eq!(h1_closed(n, 0).unwrap(), int_pow(2, n) - big(n as i64) - big(1));
        }
    }
}
