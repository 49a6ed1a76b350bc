//! Graded posets of projective sign vectors.
//!
//! Family `R` fixes the number of sign changes exactly; family `P` bounds it
//! from above. Both are graded: `R` by support size minus sign changes
//! (ranks `1..=n-l`), `P` by support size (ranks `1..=n`). The `*Hat`
//! families adjoin a bottom and a top element.

use std::collections::HashMap;
use std::fmt;
use std::sync::OnceLock;

use itertools::Itertools;
use serde::Serialize;

use crate::bitset::BitMatrix;
use crate::blocks::BlockTuple;
use crate::error::{Error, Result};
use crate::sign_vector::{Sign, SignVector};

/// Hard cap on `n` for poset construction; beyond this the element sets do
/// not fit in memory at any useful scale.
pub const MAX_BUILD_N: usize = 14;

/// Which poset a [`GradedPoset`] carries.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Family {
    /// Exactly `l` sign changes.
    R,
    /// At most `l` sign changes.
    P,
    /// `R` with adjoined bottom and top.
    RHat,
    /// `P` with adjoined bottom and top.
    PHat,
    /// Ad-hoc poset built from explicit cover data (tests, counterexamples).
    Custom,
}

impl Family {
    /// True for the `*Hat` families.
    pub fn is_bounded(self) -> bool {
        matches!(self, Family::RHat | Family::PHat)
    }

    /// The unbounded family underlying a `*Hat` family.
    pub fn base(self) -> Family {
        match self {
            Family::RHat => Family::R,
            Family::PHat => Family::P,
            other => other,
        }
    }

    /// Stable name used in exports.
    pub fn as_str(self) -> &'static str {
        match self {
            Family::R => "R",
            Family::P => "P",
            Family::RHat => "R-hat",
            Family::PHat => "P-hat",
            Family::Custom => "custom",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Payload of one poset element.
///
/// The derived `Ord` puts `Bottom` first and `Top` last, with sign vectors
/// in between ordered lexicographically by their rendered strings; element
/// indices therefore follow that order in every constructed poset.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Element {
    Bottom,
    Vector(SignVector),
    Node(usize),
    Top,
}

impl Element {
    /// The sign vector inside, if any.
    pub fn vector(&self) -> Option<&SignVector> {
        match self {
            Element::Vector(v) => Some(v),
            _ => None,
        }
    }

    /// Block-tuple coordinates of a vector element.
    pub fn tuple(&self) -> Option<BlockTuple> {
        self.vector().map(SignVector::to_block_tuple)
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Element::Bottom => f.write_str("0\u{302}"),
            Element::Top => f.write_str("1\u{302}"),
            Element::Vector(v) => write!(f, "{v}"),
            Element::Node(k) => write!(f, "#{k}"),
        }
    }
}

/// A finite graded poset given by its Hasse diagram.
///
/// `rank` is constant on antichains of incomparables only in the graded
/// sense: every cover relation connects consecutive ranks, and every maximal
/// element of the constructed families sits in the top rank.
pub struct GradedPoset {
    family: Family,
    n: usize,
    l: usize,
    elements: Vec<Element>,
    ranks: Vec<usize>,
    up: Vec<Vec<usize>>,
    down: Vec<Vec<usize>>,
    by_rank: Vec<Vec<usize>>,
    index: HashMap<Element, usize>,
    reach: OnceLock<BitMatrix>,
}

impl GradedPoset {
    /// Build `R_{n,l}`, `P_{n,l}`, or their bounded extensions. Errors
    /// unless `0 <= l < n <= MAX_BUILD_N` and the family is not `Custom`.
    pub fn build(n: usize, l: usize, family: Family) -> Result<GradedPoset> {
        if l >= n || n == 0 {
            return Err(Error::InvalidParams { n, l });
        }
        if n > MAX_BUILD_N {
            return Err(Error::GuardExceeded {
                what: "n",
                value: n,
                limit: MAX_BUILD_N,
            });
        }
        if family.is_bounded() {
            return Ok(GradedPoset::build(n, l, family.base())?.bounded_extension());
        }
        let vectors = match family {
            Family::R => r_vectors(n, l),
            Family::P => p_vectors(n, l),
            other => {
                return Err(Error::UnsupportedFamily(
                    other.as_str(),
                    "build takes a sign-vector family, not custom cover data",
                ))
            }
        };
        let mut elements: Vec<Element> = vectors.into_iter().map(Element::Vector).collect();
        elements.sort();
        let index: HashMap<Element, usize> = elements
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, e)| (e, i))
            .collect();
        let ranks: Vec<usize> = elements
            .iter()
            .map(|e| {
                let v = e.vector().expect("vector element");
                match family {
                    Family::R => v.support_size() - l,
                    _ => v.support_size(),
                }
            })
            .collect();

        let mut up = vec![Vec::new(); elements.len()];
        let mut down = vec![Vec::new(); elements.len()];
        for (i, e) in elements.iter().enumerate() {
            let v = e.vector().expect("vector element");
            match family {
                Family::R => {
                    for (cover, _) in v.to_block_tuple().covers() {
                        let target = Element::Vector(SignVector::from_block_tuple(&cover));
                        let j = *index.get(&target).expect("cover stays in the family");
                        up[i].push(j);
                        down[j].push(i);
                    }
                }
                _ => {
                    for a in 1..=n {
                        if v.entry(a) != Sign::Zero {
                            continue;
                        }
                        for sign in [Sign::Plus, Sign::Minus] {
                            let y = v.with_entry(a, sign).expect("support grows");
                            if y.sign_changes() <= l {
                                let j = *index.get(&Element::Vector(y)).expect("enumerated");
                                up[i].push(j);
                                down[j].push(i);
                            }
                        }
                    }
                }
            }
        }
        for adj in up.iter_mut().chain(down.iter_mut()) {
            adj.sort_unstable();
            debug_assert!(adj.windows(2).all(|w| w[0] != w[1]));
        }

        Ok(GradedPoset::assemble(family, n, l, elements, ranks, up, down, index))
    }

    /// Adjoin a bottom under rank 1 and a top over the maximal rank.
    /// The input must be an unbounded `R`/`P` poset.
    pub fn bounded_extension(&self) -> GradedPoset {
        assert!(
            matches!(self.family, Family::R | Family::P),
            "bounded_extension takes an unbounded R/P poset"
        );
        let shift = 1usize;
        let m = self.elements.len();
        let mut elements = Vec::with_capacity(m + 2);
        elements.push(Element::Bottom);
        elements.extend(self.elements.iter().cloned());
        elements.push(Element::Top);

        let max_rank = self.max_rank();
        let mut ranks = Vec::with_capacity(m + 2);
        ranks.push(0);
        ranks.extend(self.ranks.iter().copied());
        ranks.push(max_rank + 1);

        let mut up = vec![Vec::new(); m + 2];
        let mut down = vec![Vec::new(); m + 2];
        for (i, adj) in self.up.iter().enumerate() {
            up[i + shift] = adj.iter().map(|&j| j + shift).collect();
        }
        for (i, adj) in self.down.iter().enumerate() {
            down[i + shift] = adj.iter().map(|&j| j + shift).collect();
        }
        for &i in &self.by_rank[self.min_rank()] {
            up[0].push(i + shift);
            down[i + shift].push(0);
        }
        for &i in &self.by_rank[max_rank] {
            up[i + shift].push(m + 1);
            down[m + 1].push(i + shift);
        }

        let index = elements
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, e)| (e, i))
            .collect();
        let family = match self.family {
            Family::R => Family::RHat,
            _ => Family::PHat,
        };
        GradedPoset::assemble(family, self.n, self.l, elements, ranks, up, down, index)
    }

    /// Build an ad-hoc graded poset from explicit ranks and cover pairs
    /// `(lower, upper)`. Ranks must make every cover span consecutive ranks.
    pub fn from_covers(ranks: Vec<usize>, covers: &[(usize, usize)]) -> Result<GradedPoset> {
        let m = ranks.len();
        let mut up = vec![Vec::new(); m];
        let mut down = vec![Vec::new(); m];
        for &(lo, hi) in covers {
            if lo >= m || hi >= m {
                return Err(Error::InvalidPoset(format!("cover ({lo},{hi}) out of range")));
            }
            if ranks[hi] != ranks[lo] + 1 {
                return Err(Error::InvalidPoset(format!(
                    "cover ({lo},{hi}) spans ranks {} -> {}",
                    ranks[lo], ranks[hi]
                )));
            }
            up[lo].push(hi);
            down[hi].push(lo);
        }
        for adj in up.iter_mut().chain(down.iter_mut()) {
            adj.sort_unstable();
            adj.dedup();
        }
        let elements: Vec<Element> = (0..m).map(Element::Node).collect();
        let index = elements
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, e)| (e, i))
            .collect();
        Ok(GradedPoset::assemble(
            Family::Custom,
            0,
            0,
            elements,
            ranks,
            up,
            down,
            index,
        ))
    }

    #[allow(clippy::too_many_arguments)]
    fn assemble(
        family: Family,
        n: usize,
        l: usize,
        elements: Vec<Element>,
        ranks: Vec<usize>,
        up: Vec<Vec<usize>>,
        down: Vec<Vec<usize>>,
        index: HashMap<Element, usize>,
    ) -> GradedPoset {
        let max_rank = ranks.iter().copied().max().unwrap_or(0);
        let mut by_rank = vec![Vec::new(); max_rank + 1];
        for (i, &r) in ranks.iter().enumerate() {
            by_rank[r].push(i);
        }
        GradedPoset {
            family,
            n,
            l,
            elements,
            ranks,
            up,
            down,
            by_rank,
            index,
            reach: OnceLock::new(),
        }
    }

    /// Family tag.
    pub fn family(&self) -> Family {
        self.family
    }

    /// Ground set size (0 for custom posets).
    pub fn n(&self) -> usize {
        self.n
    }

    /// Sign-change parameter (0 for custom posets).
    pub fn l(&self) -> usize {
        self.l
    }

    /// Number of elements.
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    /// True when the poset has no elements (never for built families).
    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// Payload of element `i`.
    pub fn element(&self, i: usize) -> &Element {
        &self.elements[i]
    }

    /// Rank of element `i`.
    pub fn rank(&self, i: usize) -> usize {
        self.ranks[i]
    }

    /// Smallest rank present.
    pub fn min_rank(&self) -> usize {
        self.by_rank
            .iter()
            .position(|v| !v.is_empty())
            .unwrap_or(0)
    }

    /// Largest rank present.
    pub fn max_rank(&self) -> usize {
        self.by_rank.len() - 1
    }

    /// Elements of rank `r`, ascending by index.
    pub fn rank_elements(&self, r: usize) -> &[usize] {
        self.by_rank.get(r).map_or(&[], Vec::as_slice)
    }

    /// Sizes of the nonempty ranks, from `min_rank` to `max_rank`.
    pub fn rank_sizes(&self) -> Vec<usize> {
        (self.min_rank()..=self.max_rank())
            .map(|r| self.by_rank[r].len())
            .collect()
    }

    /// Elements covering `i`, ascending.
    pub fn covers(&self, i: usize) -> &[usize] {
        &self.up[i]
    }

    /// Elements covered by `i`, ascending.
    pub fn covered_by(&self, i: usize) -> &[usize] {
        &self.down[i]
    }

    /// All Hasse edges `(lower, upper)`, ascending by `(lower, upper)`.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for (i, adj) in self.up.iter().enumerate() {
            for &j in adj {
                out.push((i, j));
            }
        }
        out
    }

    /// Number of Hasse edges.
    pub fn edge_count(&self) -> usize {
        self.up.iter().map(Vec::len).sum()
    }

    /// Index of an element payload.
    pub fn index_of(&self, e: &Element) -> Option<usize> {
        self.index.get(e).copied()
    }

    /// Index of the adjoined bottom, when bounded.
    pub fn bottom(&self) -> Option<usize> {
        self.index.get(&Element::Bottom).copied()
    }

    /// Index of the adjoined top, when bounded.
    pub fn top(&self) -> Option<usize> {
        self.index.get(&Element::Top).copied()
    }

    /// Reachability closure: row `i` holds the strict down-set of `i`.
    fn reachability(&self) -> &BitMatrix {
        self.reach.get_or_init(|| {
            let m = self.elements.len();
            let mut reach = BitMatrix::new(m, m);
            for r in self.min_rank()..=self.max_rank() {
                for &i in &self.by_rank[r] {
                    for &parent in &self.down[i] {
                        reach.or_rows(i, parent);
                        reach.set(i, parent);
                    }
                }
            }
            reach
        })
    }

    /// Strict order test by index.
    pub fn lt(&self, a: usize, b: usize) -> bool {
        self.reachability().get(b, a)
    }

    /// Order test by index.
    pub fn leq(&self, a: usize, b: usize) -> bool {
        a == b || self.lt(a, b)
    }

    /// All strictly comparable pairs `(lower, upper)`, grouped by upper index.
    pub fn comparable_pairs(&self) -> Vec<(usize, usize)> {
        let reach = self.reachability();
        let mut out = Vec::new();
        for hi in 0..self.elements.len() {
            for lo in reach.iter_row(hi) {
                out.push((lo, hi));
            }
        }
        out
    }

    /// Strict down-set of `i` as indices, ascending.
    pub fn downset(&self, i: usize) -> Vec<usize> {
        self.reachability().iter_row(i).collect()
    }

    /// Render element `i` the way exports do.
    pub fn label(&self, i: usize) -> String {
        self.elements[i].to_string()
    }

    /// Check the meet/join tables and the distributive law.
    ///
    /// The poset must be bounded (unique minimum and maximum). Returns the
    /// first witnesses encountered in index order when a check fails.
    pub fn lattice_report(&self) -> LatticeReport {
        let m = self.elements.len();
        let reach = self.reachability();

        // Inclusive down- and up-sets.
        let mut down = BitMatrix::new(m, m);
        let mut up = BitMatrix::new(m, m);
        for i in 0..m {
            down.set(i, i);
            up.set(i, i);
            for j in reach.iter_row(i) {
                down.set(i, j);
                up.set(j, i);
            }
        }

        let unique_extreme = |sets: &BitMatrix| -> Option<usize> {
            (0..m).find(|&i| (0..m).all(|j| sets.get(j, i)))
        };
        let bottom = unique_extreme(&down);
        let top = unique_extreme(&up);
        if bottom.is_none() || top.is_none() {
            return LatticeReport {
                is_lattice: false,
                is_distributive: false,
                meet_witness: Some(("<unbounded>".into(), "<unbounded>".into())),
                join_witness: None,
                distributivity_witness: None,
            };
        }

        // meet(a, b): the common lower bounds have a unique maximal element
        // that dominates them all, or there is no meet.
        let extremum = |bounds: &BitMatrix, dominates: &BitMatrix, a: usize, b: usize| {
            let mut best: Option<usize> = None;
            let mut best_rank = 0;
            let mut tie = false;
            for c in bounds.iter_and(a, b) {
                match best {
                    None => {
                        best = Some(c);
                        best_rank = self.ranks[c];
                    }
                    Some(_) if self.ranks[c] == best_rank => tie = true,
                    Some(_) if self.ranks[c] > best_rank => {
                        best = Some(c);
                        best_rank = self.ranks[c];
                        tie = false;
                    }
                    _ => {}
                }
            }
            match best {
                Some(c) if !tie => {
                    // Every common bound must lie under/over c.
                    let all_dominated = bounds
                        .iter_and(a, b)
                        .all(|x| dominates.get(c, x) || x == c);
                    if all_dominated {
                        Some(c)
                    } else {
                        None
                    }
                }
                _ => None,
            }
        };
        // For joins, rank preference flips; reuse by negating ranks is
        // murkier than writing the dual directly.
        let join_extremum = |a: usize, b: usize| {
            let mut best: Option<usize> = None;
            let mut best_rank = usize::MAX;
            let mut tie = false;
            for c in up.iter_and(a, b) {
                match best {
                    None => {
                        best = Some(c);
                        best_rank = self.ranks[c];
                    }
                    Some(_) if self.ranks[c] == best_rank => tie = true,
                    Some(_) if self.ranks[c] < best_rank => {
                        best = Some(c);
                        best_rank = self.ranks[c];
                        tie = false;
                    }
                    _ => {}
                }
            }
            match best {
                Some(c) if !tie => {
                    let all_dominated = up.iter_and(a, b).all(|x| up.get(c, x) || x == c);
                    if all_dominated {
                        Some(c)
                    } else {
                        None
                    }
                }
                _ => None,
            }
        };

        let mut meet = vec![usize::MAX; m * m];
        let mut join = vec![usize::MAX; m * m];
        for a in 0..m {
            for b in a..m {
                let mv = extremum(&down, &down, a, b);
                let jv = join_extremum(a, b);
                match mv {
                    Some(c) => {
                        meet[a * m + b] = c;
                        meet[b * m + a] = c;
                    }
                    None => {
                        return LatticeReport {
                            is_lattice: false,
                            is_distributive: false,
                            meet_witness: Some((self.label(a), self.label(b))),
                            join_witness: None,
                            distributivity_witness: None,
                        }
                    }
                }
                match jv {
                    Some(c) => {
                        join[a * m + b] = c;
                        join[b * m + a] = c;
                    }
                    None => {
                        return LatticeReport {
                            is_lattice: false,
                            is_distributive: false,
                            meet_witness: None,
                            join_witness: Some((self.label(a), self.label(b))),
                            distributivity_witness: None,
                        }
                    }
                }
            }
        }

        // x ^ (y v z) == (x ^ y) v (x ^ z) for all triples.
        for x in 0..m {
            for y in 0..m {
                for z in 0..m {
                    let lhs = meet[x * m + join[y * m + z]];
                    let rhs = join[meet[x * m + y] * m + meet[x * m + z]];
                    if lhs != rhs {
                        return LatticeReport {
                            is_lattice: true,
                            is_distributive: false,
                            meet_witness: None,
                            join_witness: None,
                            distributivity_witness: Some((
                                self.label(x),
                                self.label(y),
                                self.label(z),
                            )),
                        };
                    }
                }
            }
        }

        LatticeReport {
            is_lattice: true,
            is_distributive: true,
            meet_witness: None,
            join_witness: None,
            distributivity_witness: None,
        }
    }
}

/// Outcome of [`GradedPoset::lattice_report`].
#[derive(Clone, Debug, Serialize)]
pub struct LatticeReport {
    pub is_lattice: bool,
    pub is_distributive: bool,
    /// Pair with no meet, when not a lattice.
    pub meet_witness: Option<(String, String)>,
    /// Pair with no join, when not a lattice.
    pub join_witness: Option<(String, String)>,
    /// Triple violating `x ^ (y v z) = (x ^ y) v (x ^ z)`.
    pub distributivity_witness: Option<(String, String, String)>,
}

/// All vectors with exactly `l` sign changes: choose a support and split it
/// into `l + 1` consecutive nonempty runs.
fn r_vectors(n: usize, l: usize) -> Vec<SignVector> {
    let mut out = Vec::new();
    for size in l + 1..=n {
        for support in (1..=n).combinations(size) {
            for cuts in (1..size).combinations(l) {
                let mut blocks = Vec::with_capacity(l + 1);
                let mut start = 0;
                for &cut in &cuts {
                    blocks.push(support[start..cut].to_vec());
                    start = cut;
                }
                blocks.push(support[start..].to_vec());
                let tuple = BlockTuple::new(n, blocks).expect("split of a sorted support");
                out.push(SignVector::from_block_tuple(&tuple));
            }
        }
    }
    out
}

/// All canonical vectors with at most `l` sign changes.
fn p_vectors(n: usize, l: usize) -> Vec<SignVector> {
    let mut out = Vec::new();
    let mut raw = vec![Sign::Zero; n];
    fn go(raw: &mut Vec<Sign>, pos: usize, n: usize, l: usize, out: &mut Vec<SignVector>) {
        if pos == n {
            if let Ok(v) = SignVector::normalize(raw) {
                if v.to_string() == raw.iter().map(|s| s.as_char()).collect::<String>()
                    && v.sign_changes() <= l
                {
                    out.push(v);
                }
            }
            return;
        }
        for sign in [Sign::Plus, Sign::Minus, Sign::Zero] {
            raw[pos] = sign;
            go(raw, pos + 1, n, l, out);
        }
        raw[pos] = Sign::Zero;
    }
    go(&mut raw, 0, n, l, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sv(s: &str) -> Element {
        Element::Vector(s.parse().expect("valid"))
    }

    #[test]
    fn r31_shape() {
        let p = GradedPoset::build(3, 1, Family::R).unwrap();
        assert_eq!(p.len(), 5);
        assert_eq!(p.edge_count(), 4);
        assert_eq!(p.rank_sizes(), vec![3, 2]);
        // Hasse diagram: +-0 under +-- only; +0- under both; 0+- under ++-.
        let at = |s: &str| p.index_of(&sv(s)).expect("present");
        assert_eq!(p.covers(at("+-0")), &[at("+--")]);
        assert_eq!(p.covers(at("+0-")), &[at("++-"), at("+--")]);
        assert_eq!(p.covers(at("0+-")), &[at("++-")]);
    }

    #[test]
    fn p31_shape() {
        let p = GradedPoset::build(3, 1, Family::P).unwrap();
        assert_eq!(p.len(), 12);
        assert_eq!(p.rank_sizes(), vec![3, 6, 3]);
        assert_eq!(p.edge_count(), 21);
        // The flip comparability: (0,+,+) < (+,-,-).
        let at = |s: &str| p.index_of(&sv(s)).expect("present");
        assert!(p.lt(at("0++"), at("+--")));
        assert!(!p.lt(at("0++"), at("++-")));
    }

    #[test]
    fn single_element_family() {
        let p = GradedPoset::build(4, 3, Family::R).unwrap();
        assert_eq!(p.len(), 1);
        assert_eq!(p.element(0), &sv("+-+-"));
        let hat = p.bounded_extension();
        assert_eq!(hat.len(), 3);
        assert_eq!(hat.rank_sizes(), vec![1, 1, 1]);
    }

    #[test]
    fn bounded_extension_counts() {
        let hat = GradedPoset::build(3, 1, Family::R).unwrap().bounded_extension();
        assert_eq!(hat.len(), 7);
        assert_eq!(hat.edge_count(), 9);
        assert_eq!(hat.comparable_pairs().len(), 15);
        assert_eq!(hat.family(), Family::RHat);
        assert_eq!(hat.rank(hat.bottom().unwrap()), 0);
        assert_eq!(hat.rank(hat.top().unwrap()), 3);

        let hat = GradedPoset::build(4, 1, Family::R).unwrap().bounded_extension();
        assert_eq!(hat.len(), 19);
    }

    #[test]
    fn covers_connect_consecutive_ranks() {
        for (n, l, family) in [(4, 1, Family::R), (4, 2, Family::P), (5, 2, Family::R)] {
            let p = GradedPoset::build(n, l, family).unwrap();
            for (lo, hi) in p.edges() {
                assert_eq!(p.rank(hi), p.rank(lo) + 1);
            }
        }
    }

    #[test]
    fn transitive_closure_matches_payload_order() {
        // Cover reachability and the direct order tests must agree.
        for family in [Family::R, Family::P] {
            let p = GradedPoset::build(4, 1, family).unwrap();
            for a in 0..p.len() {
                for b in 0..p.len() {
                    let payload = match family {
                        Family::R => {
                            let ta = p.element(a).tuple().unwrap();
                            let tb = p.element(b).tuple().unwrap();
                            a != b && ta.leq(&tb)
                        }
                        _ => {
                            let va = p.element(a).vector().unwrap();
                            let vb = p.element(b).vector().unwrap();
                            a != b && va.leq(vb)
                        }
                    };
                    assert_eq!(p.lt(a, b), payload, "family {family} pair ({a},{b})");
                }
            }
        }
    }

    #[test]
    fn rank_sizes_count_by_support() {
        let p = GradedPoset::build(5, 2, Family::R).unwrap();
        // W_r = C(r+1,2) * C(5, 2+r).
        assert_eq!(p.rank_sizes(), vec![10, 15, 6]);
        let p = GradedPoset::build(4, 2, Family::P).unwrap();
        assert_eq!(p.rank_sizes(), vec![4, 12, 16, 7]);
    }

    #[test]
    fn custom_poset_and_validation() {
        // Two incomparable 2-chains.
        let p = GradedPoset::from_covers(vec![1, 1, 2, 2], &[(0, 2), (1, 3)]).unwrap();
        assert_eq!(p.len(), 4);
        assert!(p.lt(0, 2));
        assert!(!p.lt(0, 3));
        assert!(GradedPoset::from_covers(vec![1, 3], &[(0, 1)]).is_err());
        assert!(GradedPoset::from_covers(vec![1, 2], &[(0, 5)]).is_err());
    }

    #[test]
    fn lattice_of_small_bounded_families() {
        let hat = GradedPoset::build(3, 1, Family::R).unwrap().bounded_extension();
        let report = hat.lattice_report();
        assert!(report.is_lattice);
        assert!(!report.is_distributive);
        assert!(report.distributivity_witness.is_some());

        // Boolean algebra plus a duplicated top stays distributive.
        let hat = GradedPoset::build(3, 0, Family::R).unwrap().bounded_extension();
        let report = hat.lattice_report();
        assert!(report.is_lattice);
        assert!(report.is_distributive);

        // A 3-chain is a distributive lattice.
        let hat = GradedPoset::build(4, 3, Family::R).unwrap().bounded_extension();
        assert!(hat.lattice_report().is_distributive);
    }

    #[test]
    fn non_lattice_witness() {
        // Diamond with two middle elements and two tops: meets exist,
        // but the two middles have no join... build: bottom, a, b, t1, t2
        let ranks = vec![1, 2, 2, 3, 3];
        let covers = [(0, 1), (0, 2), (1, 3), (1, 4), (2, 3), (2, 4)];
        let p = GradedPoset::from_covers(ranks, &covers).unwrap();
        let report = p.lattice_report();
        assert!(!report.is_lattice);
    }

    #[test]
    fn build_guards() {
        assert!(GradedPoset::build(3, 3, Family::R).is_err());
        assert!(GradedPoset::build(0, 0, Family::R).is_err());
        assert!(GradedPoset::build(15, 1, Family::R).is_err());
    }
}
