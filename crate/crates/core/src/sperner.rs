//! Antichain and chain-decomposition analysis: Whitney numbers with their
//! closed forms, Dilworth-width certificates, Greene–Kleitman chain
//! profiles, Sperner and strong Sperner checks, and the normalized matching
//! condition checked rank pair by rank pair.
//!
//! Width and chain-profile computations reduce to matching and flow
//! problems on the comparability graph (solvers in [`crate::opt`]); every
//! optimum returned here is accompanied by a certificate or cross-checked
//! against an independent route in the tests.

use num_bigint::BigInt;
use num_traits::Zero;
use serde::Serialize;

use crate::comb::binomial;
use crate::error::{Error, Result};
use crate::exec;
use crate::opt::{hopcroft_karp, Dinic, MinCostFlow};
use crate::poset::{Family, GradedPoset};

/// Whitney numbers of the second kind (rank sizes) from the closed product
/// formulas, indexed from the lowest rank of the family.
pub fn whitney(n: usize, l: usize, family: Family) -> Result<Vec<BigInt>> {
    if n == 0 || l >= n {
        return Err(Error::InvalidParams { n, l });
    }
    match family {
        // Ranks run 1..=n-l; rank r counts vectors with support l+r.
        Family::R => Ok((1..=n - l)
            .map(|r| binomial(l + r - 1, l) * binomial(n, l + r))
            .collect()),
        // Ranks run 1..=n; rank r counts vectors of support r with at most
        // l sign changes, and the change-count tally telescopes into a
        // prefix of binomials.
        Family::P => {
            let prefixes = binomial_prefix_sums(l, n);
            Ok((1..=n).map(|r| binomial(n, r) * &prefixes[r]).collect())
        }
        other => Err(Error::UnsupportedFamily(
            other.as_str(),
            "Whitney closed forms cover families R and P",
        )),
    }
}

/// The sequence `s_r = sum_{i=0}^{l} C(r-1, i)` for `r = 0..=r_max`,
/// counting the sign patterns available on a fixed support of size `r`.
pub fn binomial_prefix_sums(l: usize, r_max: usize) -> Vec<BigInt> {
    (0..=r_max)
        .map(|r| {
            if r == 0 {
                BigInt::zero()
            } else {
                (0..=l).map(|i| binomial(r - 1, i)).sum()
            }
        })
        .collect()
}

/// Whether a sequence of nonnegative integers is log-concave
/// (`a[i]^2 >= a[i-1] * a[i+1]` for every interior index).
pub fn is_log_concave(seq: &[BigInt]) -> bool {
    seq.windows(3).all(|w| &w[1] * &w[1] >= &w[0] * &w[2])
}

/// A maximum antichain together with a minimum chain cover of equal size;
/// each certifies the other's optimality.
#[derive(Debug)]
pub struct AntichainCertificate {
    pub antichain: Vec<usize>,
    pub chain_cover: Vec<Vec<usize>>,
}

/// Maximum antichain via Dilworth's theorem: a minimum chain cover comes
/// from a maximum matching on the comparability graph, and the antichain is
/// read off the König vertex cover of the same matching.
pub fn max_antichain(p: &GradedPoset) -> AntichainCertificate {
    let m = p.len();
    let mut adj = vec![Vec::new(); m];
    for (lo, hi) in p.comparable_pairs() {
        adj[lo].push(hi);
    }
    let matching = hopcroft_karp(&adj, m);

    // Chains: start at elements that are not the successor of anything and
    // follow matched edges upward.
    let mut chain_cover = Vec::new();
    for start in 0..m {
        if matching.r_to_l[start].is_some() {
            continue;
        }
        let mut chain = vec![start];
        let mut cur = start;
        while let Some(next) = matching.l_to_r[cur] {
            chain.push(next);
            cur = next;
        }
        chain_cover.push(chain);
    }

    // König: alternate from unmatched left vertices; an element joins the
    // antichain exactly when its left copy is reached and its right copy
    // is not.
    let mut z_l = vec![false; m];
    let mut z_r = vec![false; m];
    let mut queue: std::collections::VecDeque<usize> =
        (0..m).filter(|&u| matching.l_to_r[u].is_none()).collect();
    for &u in &queue {
        z_l[u] = true;
    }
    while let Some(u) = queue.pop_front() {
        for &v in &adj[u] {
            if !z_r[v] {
                z_r[v] = true;
                if let Some(w) = matching.r_to_l[v] {
                    if !z_l[w] {
                        z_l[w] = true;
                        queue.push_back(w);
                    }
                }
            }
        }
    }
    let antichain: Vec<usize> = (0..m).filter(|&x| z_l[x] && !z_r[x]).collect();

    assert_eq!(
        antichain.len(),
        chain_cover.len(),
        "antichain and chain cover must certify each other"
    );
    AntichainCertificate { antichain, chain_cover }
}

/// Greene–Kleitman chain profile: `lambda[k-1]` is the gain of the k-th
/// chain, so the largest union of `k` chains covers `lambda[0] + ... +
/// lambda[k-1]` elements. Computed by repeated unit augmentations in a
/// min-cost flow where covering an element pays -1.
pub fn chain_partition_profile(p: &GradedPoset) -> Vec<usize> {
    let m = p.len();
    if m == 0 {
        return Vec::new();
    }
    // Node split: element x enters at x and leaves at m + x. Source 2m,
    // sink 2m + 1.
    let (s, t) = (2 * m, 2 * m + 1);
    let mut mcf = MinCostFlow::new(2 * m + 2);
    for x in 0..m {
        mcf.add_edge(s, x, 1, 0);
        mcf.add_edge(x, m + x, 1, -1);
        mcf.add_edge(m + x, t, 1, 0);
    }
    for (lo, hi) in p.comparable_pairs() {
        mcf.add_edge(m + lo, hi, 1, 0);
    }
    let mut profile = Vec::new();
    let mut covered = 0usize;
    while covered < m {
        match mcf.send_unit(s, t) {
            Some(cost) if cost < 0 => {
                let gain = (-cost) as usize;
                covered += gain;
                profile.push(gain);
            }
            // A zero-gain augmentation (or exhaustion) would mean every
            // element is already covered, which the loop guard rules out.
            other => unreachable!("augmentation stalled at {covered}/{m} elements: {other:?}"),
        }
    }
    debug_assert!(profile.windows(2).all(|w| w[0] >= w[1]));
    debug_assert_eq!(profile.iter().sum::<usize>(), m);
    profile
}

/// Largest number of elements covered by a union of `j` antichains, from
/// the conjugate of the Greene–Kleitman chain profile.
pub fn max_union_antichains(p: &GradedPoset, j: usize) -> usize {
    chain_partition_profile(p).iter().map(|&lam| lam.min(j)).sum()
}

/// Brute-force check of [`max_union_antichains`]: scan all element subsets
/// and keep the largest whose longest chain has at most `j` elements.
/// Exponential, so guarded to tiny posets.
pub fn max_union_antichains_brute(p: &GradedPoset, j: usize) -> Result<usize> {
    let m = p.len();
    if m > 20 {
        return Err(Error::GuardExceeded {
            what: "elements in exhaustive antichain-union scan",
            value: m,
            limit: 20,
        });
    }
    // Elements sorted by rank so chains run left to right in the DP.
    let mut order: Vec<usize> = (0..m).collect();
    order.sort_by_key(|&x| p.rank(x));
    let mut best = 0usize;
    for mask in 0u32..(1u32 << m) {
        let count = mask.count_ones() as usize;
        if count <= best {
            continue;
        }
        // Longest chain inside the subset (Mirsky-style DP).
        let mut longest = vec![0usize; m];
        let mut chain_max = 0;
        for (i, &x) in order.iter().enumerate() {
            if mask & (1 << x) == 0 {
                continue;
            }
            let mut len = 1;
            for &y in &order[..i] {
                if mask & (1 << y) != 0 && p.lt(y, x) {
                    len = len.max(longest[y] + 1);
                }
            }
            longest[x] = len;
            chain_max = chain_max.max(len);
        }
        if chain_max <= j {
            best = count;
        }
    }
    Ok(best)
}

/// Whether the largest antichain is realized by a full rank level, returned
/// with the width certificate.
pub fn is_sperner(p: &GradedPoset) -> (bool, AntichainCertificate) {
    let cert = max_antichain(p);
    let rank_max = p.rank_sizes().into_iter().max().unwrap_or(0);
    (cert.antichain.len() == rank_max, cert)
}

/// Strong Sperner check: for every `j`, the largest union of `j` antichains
/// is exactly the sum of the `j` largest rank sizes. Returns the verdict
/// with the per-`j` comparison rows `(j, union, rank_bound)`.
pub fn is_strongly_sperner(p: &GradedPoset) -> (bool, Vec<(usize, usize, usize)>) {
    let mut sizes = p.rank_sizes();
    sizes.sort_unstable_by(|a, b| b.cmp(a));
    let profile = chain_partition_profile(p);
    let mut rows = Vec::new();
    let mut ok = true;
    let mut bound = 0usize;
    for (j, size) in sizes.iter().enumerate() {
        bound += size;
        let union: usize = profile.iter().map(|&lam| lam.min(j + 1)).sum();
        ok &= union == bound;
        rows.push((j + 1, union, bound));
    }
    (ok, rows)
}

/// Normalized matching condition between ranks `r` and `r + 1`: every
/// subset `A` of rank `r` must satisfy `|N(A)| / W_{r+1} >= |A| / W_r`.
/// Equivalent to a max-flow value of `W_r * W_{r+1}` in a three-layer
/// network, so no subset scan is needed.
pub fn lym_rank_pair_check(p: &GradedPoset, r: usize) -> Result<bool> {
    let lower = p.rank_elements(r);
    let upper = p.rank_elements(r + 1);
    if lower.is_empty() || upper.is_empty() {
        return Err(Error::InvalidPoset(format!(
            "normalized matching needs nonempty ranks {r} and {}",
            r + 1
        )));
    }
    let (w_lo, w_hi) = (lower.len() as i64, upper.len() as i64);
    let m = p.len();
    let (s, t) = (m, m + 1);
    let mut net = Dinic::new(m + 2);
    for &x in lower {
        net.add_edge(s, x, w_hi);
        for &y in p.covers(x) {
            net.add_edge(x, y, w_lo * w_hi);
        }
    }
    for &y in upper {
        net.add_edge(y, t, w_lo);
    }
    Ok(net.max_flow(s, t) == w_lo * w_hi)
}

/// One row of the Sperner sweep over the at-most family.
#[derive(Debug, Serialize)]
pub struct SweepRow {
    pub n: usize,
    pub l: usize,
    pub elements: usize,
    pub max_antichain: usize,
    pub max_rank_size: usize,
    pub sperner: bool,
}

/// Width analysis of a single at-most poset.
pub fn sweep_row(n: usize, l: usize) -> Result<SweepRow> {
    let p = GradedPoset::build(n, l, Family::P)?;
    let (sperner, cert) = is_sperner(&p);
    let max_rank_size = p.rank_sizes().into_iter().max().unwrap_or(0);
    Ok(SweepRow {
        n,
        l,
        elements: p.len(),
        max_antichain: cert.antichain.len(),
        max_rank_size,
        sperner,
    })
}

/// Sweep results over all valid `(n, l)` pairs up to `n_max`.
#[derive(Debug, Serialize)]
pub struct SweepTable {
    pub rows: Vec<SweepRow>,
}

impl SweepTable {
    pub fn all_sperner(&self) -> bool {
        self.rows.iter().all(|row| row.sperner)
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("n,l,elements,max_antichain,max_rank_size,sperner\n");
        for row in &self.rows {
            out.push_str(&format!(
                "{},{},{},{},{},{}\n",
                row.n, row.l, row.elements, row.max_antichain, row.max_rank_size, row.sperner
            ));
        }
        out
    }
}

/// Run [`sweep_row`] for every `0 <= l < n <= n_max`.
pub fn sperner_sweep(n_max: usize) -> Result<SweepTable> {
    let pairs: Vec<(usize, usize)> =
        (1..=n_max).flat_map(|n| (0..n).map(move |l| (n, l))).collect();
    let rows = exec::map(&pairs, |&(n, l)| sweep_row(n, l))
        .into_iter()
        .collect::<Result<Vec<_>>>()?;
    Ok(SweepTable { rows })
}
