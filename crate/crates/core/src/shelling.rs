//! Edge labels on bounded `R` posets and verification of the shelling axioms.
//!
//! Every Hasse edge of the bounded poset gets a label from a totally ordered
//! set: interior covers carry their `(type, block, element)` triple, bottom
//! edges carry the atom's support set, and top edges carry the sentinel
//! `(β, l+1, n+1)`. The two axioms checked per closed interval are
//!
//! * **EL1** — exactly one maximal chain of the interval has strictly
//!   increasing labels, and
//! * **EL2** — the first label of that chain is strictly smaller than the
//!   label of every other edge leaving the interval's bottom element.
//!
//! [`increasing_chain`] builds the distinguished chain directly (no search),
//! and [`ElVerifier`] cross-checks it against exhaustive chain scans.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use crate::blocks::BlockTuple;
use crate::error::{Error, Result};
use crate::exec;
use crate::poset::{Element, Family, GradedPoset};

/// A label on a Hasse edge of the bounded poset.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum EdgeLabel {
    /// Interior cover inserting `elem` below the maximum of block `block`.
    Alpha { block: usize, elem: usize },
    /// Bottom edge to the atom with the given support (sorted).
    Set(Vec<usize>),
    /// Interior cover inserting `elem` above the maximum of block `block`,
    /// or the top edge `(β, l+1, n+1)`.
    Beta { block: usize, elem: usize },
}

impl EdgeLabel {
    fn class(&self) -> u8 {
        match self {
            EdgeLabel::Alpha { .. } => 0,
            EdgeLabel::Set(_) => 1,
            EdgeLabel::Beta { .. } => 2,
        }
    }
}

impl Ord for EdgeLabel {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (
                EdgeLabel::Alpha { block: i, elem: a },
                EdgeLabel::Alpha { block: j, elem: b },
            ) => (i, a).cmp(&(j, b)),
            (EdgeLabel::Set(s), EdgeLabel::Set(t)) => s.cmp(t),
            // Beta labels order by block *descending*, then element ascending.
            (
                EdgeLabel::Beta { block: i, elem: a },
                EdgeLabel::Beta { block: j, elem: b },
            ) => j.cmp(i).then(a.cmp(b)),
            _ => self.class().cmp(&other.class()),
        }
    }
}

impl PartialOrd for EdgeLabel {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for EdgeLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EdgeLabel::Alpha { block, elem } => write!(f, "(\u{3b1},{block},{elem})"),
            EdgeLabel::Beta { block, elem } => write!(f, "(\u{3b2},{block},{elem})"),
            EdgeLabel::Set(s) => {
                write!(f, "{{")?;
                for (k, a) in s.iter().enumerate() {
                    if k > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{a}")?;
                }
                write!(f, "}}")
            }
        }
    }
}

/// Label a single Hasse edge of a bounded `R` poset.
pub fn label_edge(p: &GradedPoset, lo: usize, hi: usize) -> Result<EdgeLabel> {
    if p.family() != Family::RHat {
        return Err(Error::UnsupportedFamily(
            p.family().as_str(),
            "edge labels are defined on bounded R posets",
        ));
    }
    if !p.covers(lo).contains(&hi) {
        return Err(Error::NotACover);
    }
    match (p.element(lo), p.element(hi)) {
        (Element::Bottom, Element::Vector(v)) => Ok(EdgeLabel::Set(v.support())),
        (Element::Vector(_), Element::Top) => Ok(EdgeLabel::Beta {
            block: p.l() + 1,
            elem: p.n() + 1,
        }),
        (Element::Vector(xv), Element::Vector(yv)) => {
            let x = xv.to_block_tuple();
            let y = yv.to_block_tuple();
            for i in 1..=y.num_blocks() {
                for &a in y.block(i) {
                    if x.block(i).binary_search(&a).is_err() {
                        let max_before = *x.block(i).last().expect("blocks nonempty");
                        return Ok(if a < max_before {
                            EdgeLabel::Alpha { block: i, elem: a }
                        } else {
                            EdgeLabel::Beta { block: i, elem: a }
                        });
                    }
                }
            }
            Err(Error::NotACover)
        }
        _ => Err(Error::NotACover),
    }
}

/// Label every Hasse edge; keys are `(lower, upper)` index pairs.
pub fn label_all_edges(p: &GradedPoset) -> Result<BTreeMap<(usize, usize), EdgeLabel>> {
    p.edges()
        .into_iter()
        .map(|(lo, hi)| Ok(((lo, hi), label_edge(p, lo, hi)?)))
        .collect()
}

/// A saturated chain together with its edge labels.
#[derive(Clone, Debug)]
pub struct LabeledChain {
    pub elements: Vec<usize>,
    pub labels: Vec<EdgeLabel>,
}

impl LabeledChain {
    /// Label a saturated chain given as element indices.
    pub fn from_path(p: &GradedPoset, elements: Vec<usize>) -> Result<LabeledChain> {
        let labels = elements
            .windows(2)
            .map(|w| label_edge(p, w[0], w[1]))
            .collect::<Result<Vec<_>>>()?;
        Ok(LabeledChain { elements, labels })
    }

    /// Whether the label sequence strictly increases.
    pub fn is_increasing(&self) -> bool {
        self.labels.windows(2).all(|w| w[0] < w[1])
    }

    /// Positions `i` (1-based, between edges `i` and `i+1`) where the label
    /// sequence decreases.
    pub fn descent_set(&self) -> Vec<usize> {
        self.labels
            .windows(2)
            .enumerate()
            .filter(|(_, w)| w[0] > w[1])
            .map(|(i, _)| i + 1)
            .collect()
    }

    /// Descent set as a bitmask (bit `i-1` set for a descent at position `i`).
    pub fn descent_mask(&self) -> usize {
        self.descent_set().iter().map(|i| 1usize << (i - 1)).sum()
    }
}

/// Insertion order realizing the unique increasing chain between two
/// comparable block tuples: below-max insertions block-ascending, then
/// above-max insertions block-descending, elements ascending throughout.
fn increasing_insertions(from: &BlockTuple, to: &BlockTuple) -> Vec<(usize, usize)> {
    let k = from.num_blocks();
    let mut steps = Vec::new();
    for i in 1..=k {
        let max_before = *from.block(i).last().expect("nonempty");
        for &a in to.block(i) {
            if a < max_before && from.block(i).binary_search(&a).is_err() {
                steps.push((i, a));
            }
        }
    }
    for i in (1..=k).rev() {
        let max_before = *from.block(i).last().expect("nonempty");
        for &a in to.block(i) {
            if a > max_before {
                steps.push((i, a));
            }
        }
    }
    steps
}

fn tuple_index(p: &GradedPoset, t: &BlockTuple) -> usize {
    let v = crate::sign_vector::SignVector::from_block_tuple(t);
    p.index_of(&Element::Vector(v))
        .expect("tuple stays inside the family")
}

/// Construct the unique increasing maximal chain of the closed interval
/// `[x, y]` of a bounded `R` poset, without searching.
pub fn increasing_chain(p: &GradedPoset, x: usize, y: usize) -> Result<LabeledChain> {
    if p.family() != Family::RHat {
        return Err(Error::UnsupportedFamily(
            p.family().as_str(),
            "increasing chains are defined on bounded R posets",
        ));
    }
    if x == y {
        return Ok(LabeledChain {
            elements: vec![x],
            labels: Vec::new(),
        });
    }
    if !p.lt(x, y) {
        return Err(Error::NotComparable);
    }
    let bottom = p.bottom().expect("bounded");
    let top = p.top().expect("bounded");
    let (n, l) = (p.n(), p.l());

    let mut elements = Vec::new();
    // Entry point: x itself, or the forced atom when starting from the bottom
    // (block minima of y; the all-initial-segments atom for the full interval).
    let start = if x == bottom {
        elements.push(bottom);
        if y == top {
            BlockTuple::new(n, (1..=l + 1).map(|i| vec![i]).collect())?
        } else {
            let target = p.element(y).tuple().expect("interior");
            let minima: Vec<Vec<usize>> =
                target.blocks().iter().map(|b| vec![b[0]]).collect();
            BlockTuple::new(n, minima)?
        }
    } else {
        p.element(x).tuple().expect("interior")
    };
    // Exit point: y itself, or the completion of the entry tuple when ending
    // at the top (fill every gap below a block maximum, extend the last block
    // to n).
    let end = if y == top {
        start.completion()
    } else {
        p.element(y).tuple().expect("interior")
    };

    elements.push(tuple_index(p, &start));
    let mut current = start.clone();
    for (block, added) in increasing_insertions(&start, &end) {
        current = current.with_added(block, added)?;
        elements.push(tuple_index(p, &current));
    }
    if y == top {
        elements.push(top);
    }
    debug_assert_eq!(*elements.last().unwrap(), y);

    let chain = LabeledChain::from_path(p, elements)?;
    debug_assert!(chain.is_increasing());
    Ok(chain)
}

/// All saturated chains from `x` to `y` (inclusive), as index paths.
pub(crate) fn chains_between(p: &GradedPoset, x: usize, y: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut stack = vec![x];
    dfs(p, y, &mut stack, &mut out);
    return out;

    fn dfs(p: &GradedPoset, y: usize, stack: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        let cur = *stack.last().unwrap();
        if cur == y {
            out.push(stack.clone());
            return;
        }
        for &c in p.covers(cur) {
            if p.leq(c, y) {
                stack.push(c);
                dfs(p, y, stack, out);
                stack.pop();
            }
        }
    }
}

/// Result of checking one closed interval.
#[derive(Clone, Debug, Serialize)]
pub struct IntervalCheck {
    pub x: usize,
    pub y: usize,
    /// 1: interior/interior, 2: from bottom, 3: to top, 4: full interval.
    pub case: usize,
    /// Number of maximal chains of the interval.
    pub chains: usize,
    /// How many of them have strictly increasing labels.
    pub increasing: usize,
    /// Exactly one increasing chain, matching the direct construction.
    pub el1: bool,
    /// First label of the increasing chain strictly smallest among the
    /// labels of all edges from `x` into the interval.
    pub el2: bool,
    /// The increasing chain is also lexicographically first.
    pub lex_first: bool,
}

impl IntervalCheck {
    pub fn passed(&self) -> bool {
        self.el1 && self.el2 && self.lex_first
    }
}

/// One failed interval, rendered for reports.
#[derive(Clone, Debug, Serialize)]
pub struct ElViolation {
    pub x: String,
    pub y: String,
    pub case: usize,
    pub reason: String,
}

/// Aggregated verification outcome over every closed interval.
#[derive(Clone, Debug, Serialize)]
pub struct ElReport {
    pub n: usize,
    pub l: usize,
    /// Closed intervals of length >= 1 checked.
    pub intervals: usize,
    /// Tallies for cases 1-4.
    pub case_counts: [usize; 4],
    pub violations: Vec<ElViolation>,
    pub passed: bool,
}

/// Exhaustive checker for the labeling axioms on one bounded poset.
pub struct ElVerifier {
    poset: GradedPoset,
}

impl ElVerifier {
    pub fn new(n: usize, l: usize) -> Result<ElVerifier> {
        let poset = GradedPoset::build(n, l, Family::R)?.bounded_extension();
        Ok(ElVerifier { poset })
    }

    pub fn poset(&self) -> &GradedPoset {
        &self.poset
    }

    /// All strict comparable pairs, i.e. the intervals worth checking.
    pub fn intervals(&self) -> Vec<(usize, usize)> {
        self.poset.comparable_pairs()
    }

    /// Exhaustively check one closed interval `[x, y]`.
    pub fn check_interval(&self, x: usize, y: usize) -> IntervalCheck {
        let p = &self.poset;
        let bottom = p.bottom().expect("bounded");
        let top = p.top().expect("bounded");
        let case = match (x == bottom, y == top) {
            (false, false) => 1,
            (true, false) => 2,
            (false, true) => 3,
            (true, true) => 4,
        };

        let constructed = increasing_chain(p, x, y).expect("comparable pair");
        let chains: Vec<LabeledChain> = chains_between(p, x, y)
            .into_iter()
            .map(|path| LabeledChain::from_path(p, path).expect("saturated"))
            .collect();

        let increasing: Vec<&LabeledChain> =
            chains.iter().filter(|c| c.is_increasing()).collect();
        let el1 = increasing.len() == 1 && increasing[0].elements == constructed.elements;

        let first = &constructed.labels[0];
        let x1 = constructed.elements[1];
        let el2 = p.covers(x).iter().all(|&z| {
            z == x1
                || !p.leq(z, y)
                || label_edge(p, x, z).map(|lab| *first < lab).unwrap_or(false)
        });

        let lex_first = chains
            .iter()
            .all(|c| c.elements == constructed.elements || constructed.labels < c.labels);

        IntervalCheck {
            x,
            y,
            case,
            chains: chains.len(),
            increasing: increasing.len(),
            el1,
            el2,
            lex_first,
        }
    }

    /// Check every closed interval and aggregate.
    pub fn run(&self) -> ElReport {
        let intervals = self.intervals();
        let checks = exec::map(&intervals, |&(x, y)| self.check_interval(x, y));

        let mut case_counts = [0usize; 4];
        let mut violations = Vec::new();
        for c in &checks {
            case_counts[c.case - 1] += 1;
            if !c.passed() {
                let mut reasons = Vec::new();
                if !c.el1 {
                    reasons.push(format!(
                        "{} increasing chains out of {}",
                        c.increasing, c.chains
                    ));
                }
                if !c.el2 {
                    reasons.push("first label not strictly minimal".into());
                }
                if !c.lex_first {
                    reasons.push("increasing chain not lexicographically first".into());
                }
                violations.push(ElViolation {
                    x: self.poset.label(c.x),
                    y: self.poset.label(c.y),
                    case: c.case,
                    reason: reasons.join("; "),
                });
            }
        }
        ElReport {
            n: self.poset.n(),
            l: self.poset.l(),
            intervals: checks.len(),
            case_counts,
            violations,
            passed: checks.iter().all(IntervalCheck::passed),
        }
    }
}

/// Build the bounded poset for `(n, l)` and check every closed interval.
pub fn verify_el(n: usize, l: usize) -> Result<ElReport> {
    Ok(ElVerifier::new(n, l)?.run())
}

/// For every element not covered by the top, sorting its covers by edge
/// label must coincide with sorting the covering tuples lexicographically.
pub fn atom_order_is_lex(n: usize, l: usize) -> Result<bool> {
    let p = GradedPoset::build(n, l, Family::R)?.bounded_extension();
    let top = p.top().expect("bounded");
    for x in 0..p.len() {
        if x == top || p.covers(x).contains(&top) {
            continue;
        }
        let mut by_label: Vec<usize> = p.covers(x).to_vec();
        by_label.sort_by_key(|&y| label_edge(&p, x, y).expect("edge"));
        let mut by_tuple: Vec<usize> = p.covers(x).to_vec();
        by_tuple.sort_by_key(|&y| p.element(y).tuple().expect("interior"));
        if by_label != by_tuple {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poset::Family;

    fn rhat(n: usize, l: usize) -> GradedPoset {
        GradedPoset::build(n, l, Family::R)
            .unwrap()
            .bounded_extension()
    }

    fn idx(p: &GradedPoset, s: &str) -> usize {
        p.index_of(&Element::Vector(s.parse().unwrap())).unwrap()
    }

    fn alpha(block: usize, elem: usize) -> EdgeLabel {
        EdgeLabel::Alpha { block, elem }
    }

    fn beta(block: usize, elem: usize) -> EdgeLabel {
        EdgeLabel::Beta { block, elem }
    }

    #[test]
    fn label_order_basics() {
        assert!(alpha(2, 5) < EdgeLabel::Set(vec![1, 3]));
        assert!(EdgeLabel::Set(vec![1, 3]) < beta(3, 9));
        assert!(beta(3, 9) < beta(2, 7));
        assert!(beta(2, 7) < beta(1, 5));
        assert!(EdgeLabel::Set(vec![1, 2]) < EdgeLabel::Set(vec![1, 3]));
        assert!(alpha(1, 3) < alpha(2, 1));
        assert!(alpha(1, 1) < alpha(1, 3));
        assert!(beta(2, 3) < beta(2, 4));
    }

    #[test]
    fn label_order_is_total_and_transitive() {
        // Every label that can arise for n=4, l=1.
        let (n, l) = (4usize, 1usize);
        let mut labels = Vec::new();
        for block in 1..=l + 1 {
            for elem in 1..=n + 1 {
                labels.push(alpha(block, elem));
                labels.push(beta(block, elem));
            }
        }
        for i in 1..=n {
            for j in i + 1..=n {
                labels.push(EdgeLabel::Set(vec![i, j]));
            }
        }
        for a in &labels {
            for b in &labels {
                let ab = a.cmp(b);
                assert_eq!(ab.reverse(), b.cmp(a));
                assert_eq!(ab == std::cmp::Ordering::Equal, a == b);
                for c in &labels {
                    if ab.is_lt() && b.cmp(c).is_lt() {
                        assert!(a.cmp(c).is_lt());
                    }
                }
            }
        }
    }

    #[test]
    fn edge_labels_on_the_small_bounded_poset() {
        let p = rhat(3, 1);
        let bot = p.bottom().unwrap();
        let top = p.top().unwrap();
        assert_eq!(
            label_edge(&p, bot, idx(&p, "+-0")).unwrap(),
            EdgeLabel::Set(vec![1, 2])
        );
        assert_eq!(
            label_edge(&p, idx(&p, "+0-"), idx(&p, "+--")).unwrap(),
            alpha(2, 2)
        );
        assert_eq!(
            label_edge(&p, idx(&p, "+0-"), idx(&p, "++-")).unwrap(),
            beta(1, 2)
        );
        assert_eq!(
            label_edge(&p, idx(&p, "+-0"), idx(&p, "+--")).unwrap(),
            beta(2, 3)
        );
        assert_eq!(
            label_edge(&p, idx(&p, "0+-"), idx(&p, "++-")).unwrap(),
            alpha(1, 1)
        );
        assert_eq!(label_edge(&p, idx(&p, "+--"), top).unwrap(), beta(2, 4));
        assert_eq!(label_edge(&p, idx(&p, "++-"), top).unwrap(), beta(2, 4));
        assert!(label_edge(&p, bot, top).is_err());
        assert_eq!(label_all_edges(&p).unwrap().len(), 9);
    }

    #[test]
    fn cover_labels_sort_like_tuples() {
        // Covers of ({2,4},{6},{8}) in the n=9, l=2 poset, by increasing
        // label; the tuple order must agree.
        let p = rhat(9, 2);
        let x = idx(&p, "0+0+0-0+0");
        let mut covers: Vec<(EdgeLabel, BlockTuple)> = p
            .covers(x)
            .iter()
            .map(|&y| {
                (
                    label_edge(&p, x, y).unwrap(),
                    p.element(y).tuple().unwrap(),
                )
            })
            .collect();
        covers.sort_by(|a, b| a.0.cmp(&b.0));
        let labels: Vec<EdgeLabel> = covers.iter().map(|c| c.0.clone()).collect();
        assert_eq!(
            labels,
            vec![
                alpha(1, 1),
                alpha(1, 3),
                alpha(2, 5),
                alpha(3, 7),
                beta(3, 9),
                beta(2, 7),
                beta(1, 5),
            ]
        );
        let tuples: Vec<BlockTuple> = covers.into_iter().map(|c| c.1).collect();
        assert!(tuples.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn increasing_chain_of_the_full_interval() {
        let p = rhat(3, 1);
        let chain =
            increasing_chain(&p, p.bottom().unwrap(), p.top().unwrap()).unwrap();
        assert_eq!(
            chain.elements,
            vec![
                p.bottom().unwrap(),
                idx(&p, "+-0"),
                idx(&p, "+--"),
                p.top().unwrap()
            ]
        );
        assert_eq!(
            chain.labels,
            vec![EdgeLabel::Set(vec![1, 2]), beta(2, 3), beta(2, 4)]
        );
        assert!(chain.is_increasing());
        assert!(chain.descent_set().is_empty());
    }

    #[test]
    fn descent_sets_of_the_four_maximal_chains() {
        let p = rhat(3, 1);
        let (bot, top) = (p.bottom().unwrap(), p.top().unwrap());
        let mut by_path = std::collections::HashMap::new();
        for path in chains_between(&p, bot, top) {
            let chain = LabeledChain::from_path(&p, path).unwrap();
            by_path.insert(
                (p.label(chain.elements[1]), p.label(chain.elements[2])),
                chain.descent_set(),
            );
        }
        assert_eq!(by_path.len(), 4);
        assert_eq!(by_path[&("+-0".into(), "+--".into())], Vec::<usize>::new());
        assert_eq!(by_path[&("+0-".into(), "+--".into())], vec![1]);
        assert_eq!(by_path[&("+0-".into(), "++-".into())], vec![2]);
        assert_eq!(by_path[&("0+-".into(), "++-".into())], vec![1]);
    }

    #[test]
    fn increasing_chain_matches_exhaustive_scan() {
        // Interval [({2},{4}), ({1,2,3},{4,5})] in the n=5, l=1 poset.
        let p = rhat(5, 1);
        let x = idx(&p, "0+0-0");
        let y = idx(&p, "+++--");
        let constructed = increasing_chain(&p, x, y).unwrap();
        assert_eq!(
            constructed.labels,
            vec![alpha(1, 1), beta(2, 5), beta(1, 3)]
        );
        let increasing: Vec<Vec<usize>> = chains_between(&p, x, y)
            .into_iter()
            .filter(|path| {
                LabeledChain::from_path(&p, path.clone())
                    .unwrap()
                    .is_increasing()
            })
            .collect();
        assert_eq!(increasing, vec![constructed.elements]);
    }

    #[test]
    fn interval_counts_and_cases_small() {
        let verifier = ElVerifier::new(3, 1).unwrap();
        let report = verifier.run();
        assert!(report.passed, "violations: {:?}", report.violations);
        assert_eq!(report.intervals, 15);
        assert_eq!(report.case_counts, [4, 5, 5, 1]);
    }

    #[test]
    fn verification_passes_on_small_posets() {
        for (n, l) in [(2, 0), (4, 1), (4, 2), (4, 3), (5, 2)] {
            let report = verify_el(n, l).unwrap();
            assert!(report.passed, "({n},{l}): {:?}", report.violations);
            assert!(report.violations.is_empty());
        }
    }

    #[test]
    fn no_label_repeats_on_maximal_chains() {
        for (n, l) in [(4, 0), (5, 1), (5, 2)] {
            let p = rhat(n, l);
            for path in chains_between(&p, p.bottom().unwrap(), p.top().unwrap()) {
                let chain = LabeledChain::from_path(&p, path).unwrap();
                let mut labels = chain.labels.clone();
                labels.sort();
                labels.dedup();
                assert_eq!(labels.len(), chain.labels.len());
            }
        }
    }

    #[test]
    fn atom_orders_are_lexicographic() {
        for (n, l) in [(3, 1), (4, 0), (4, 1), (4, 2), (5, 2)] {
            assert!(atom_order_is_lex(n, l).unwrap(), "failed at ({n},{l})");
        }
    }

    #[test]
    fn singleton_and_error_cases() {
        let p = rhat(3, 1);
        let x = idx(&p, "+0-");
        let chain = increasing_chain(&p, x, x).unwrap();
        assert_eq!(chain.elements, vec![x]);
        assert!(chain.labels.is_empty());
        // Incomparable pair.
        assert!(increasing_chain(&p, idx(&p, "+-0"), idx(&p, "++-")).is_err());
        // Unsupported family.
        let q = GradedPoset::build(3, 1, Family::P).unwrap();
        assert!(label_edge(&q, 0, 1).is_err());
    }
}
