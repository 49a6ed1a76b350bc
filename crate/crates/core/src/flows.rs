//! Normalized flows: exact rational edge weights on the Hasse diagram whose
//! rank-wise up- and down-sums are constant. Admitting such a flow certifies
//! the strongly Sperner property, so the constructions here back the
//! antichain machinery with an independent witness.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed};

use crate::blocks::{BlockTuple, CoverInfo, CoverType};
use crate::error::{Error, Result};
use crate::poset::{Element, Family, GradedPoset};
use crate::sign_vector::{Sign, SignVector};

fn ratio(num: usize, den: usize) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

fn whole(v: usize) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

/// Weight of a single cover step out of `x` in the exactly-`l` family.
///
/// Each free position admits one or two insertions. A unique insertion gets
/// weight 1. When a position fits between two blocks, the late insertion
/// (into the earlier block) takes the prefix share of the support and the
/// early insertion (into the later block) takes the suffix share, so the two
/// weights for that position always sum to 1.
pub fn cover_weight(x: &BlockTuple, info: &CoverInfo) -> BigRational {
    let total = x.support_size();
    let k = x.num_blocks();
    match info.cover_type {
        CoverType::Beta if info.block < k => {
            let prefix = (1..=info.block).map(|i| x.block(i).len()).sum();
            ratio(prefix, total)
        }
        CoverType::Alpha if info.block >= 2 && info.added < x.block(info.block)[0] => {
            let suffix = (info.block..=k).map(|i| x.block(i).len()).sum();
            ratio(suffix, total)
        }
        _ => BigRational::one(),
    }
}

/// Nonnegative rational weights on the Hasse edges of a poset.
pub struct RationalFlow<'p> {
    poset: &'p GradedPoset,
    weights: BTreeMap<(usize, usize), BigRational>,
}

impl<'p> RationalFlow<'p> {
    /// The poset the weights live on.
    pub fn poset(&self) -> &'p GradedPoset {
        self.poset
    }

    /// Weight of the edge `lo` ⋖ `hi`, if that edge exists.
    pub fn weight(&self, lo: usize, hi: usize) -> Option<&BigRational> {
        self.weights.get(&(lo, hi))
    }

    /// Iterate `((lo, hi), weight)` in edge order.
    pub fn iter(&self) -> impl Iterator<Item = (&(usize, usize), &BigRational)> {
        self.weights.iter()
    }

    /// Number of weighted edges.
    pub fn len(&self) -> usize {
        self.weights.len()
    }

    /// Whether the flow has no edges at all.
    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    /// The constant assignment, mostly useful as a negative control.
    pub fn constant(p: &GradedPoset, value: BigRational) -> RationalFlow<'_> {
        let weights = p.edges().into_iter().map(|e| (e, value.clone())).collect();
        RationalFlow { poset: p, weights }
    }

    /// Sum of the weights on edges leaving `x` upward.
    pub fn up_sum(&self, x: usize) -> BigRational {
        self.poset
            .covers(x)
            .iter()
            .filter_map(|&y| self.weights.get(&(x, y)))
            .sum()
    }

    /// Sum of the weights on edges entering `y` from below.
    pub fn down_sum(&self, y: usize) -> BigRational {
        self.poset
            .covered_by(y)
            .iter()
            .filter_map(|&x| self.weights.get(&(x, y)))
            .sum()
    }
}

/// The normalized flow on the exactly-`l` poset, built from
/// [`cover_weight`].
pub fn flow_r(p: &GradedPoset) -> Result<RationalFlow<'_>> {
    if p.family() != Family::R {
        return Err(Error::UnsupportedFamily(
            p.family().as_str(),
            "the exactly-l flow construction",
        ));
    }
    let mut weights = BTreeMap::new();
    for i in 0..p.len() {
        let x = p.element(i).tuple().expect("unbounded elements are sign vectors");
        for (y, info) in x.covers() {
            let j = p
                .index_of(&Element::Vector(SignVector::from_block_tuple(&y)))
                .expect("covers stay inside the poset");
            weights.insert((i, j), cover_weight(&x, &info));
        }
    }
    Ok(RationalFlow { poset: p, weights })
}

/// A normalized flow on the at-most-`l` poset, defined for `l = 0`, `l = 1`,
/// and `l = n - 1` only.
///
/// The `l = n - 1` poset is biregular, so the constant weight 1 works; that
/// case is claimed first, since the split rule below would under-fill its
/// doubled up-degrees. For `l <= 1`, each free position contributes weight 1
/// split evenly across the sign choices that stay within `l` sign changes.
pub fn flow_p(p: &GradedPoset) -> Result<RationalFlow<'_>> {
    if p.family() != Family::P {
        return Err(Error::UnsupportedFamily(
            p.family().as_str(),
            "the at-most-l flow construction",
        ));
    }
    let (n, l) = (p.n(), p.l());
    if l + 1 == n {
        return Ok(RationalFlow::constant(p, BigRational::one()));
    }
    if l > 1 {
        return Err(Error::UnsupportedFamily(
            "P",
            "flows are defined only for l = 0, l = 1, and l = n - 1",
        ));
    }
    let mut weights = BTreeMap::new();
    for (i, j) in p.edges() {
        let x = p.element(i).vector().expect("unbounded elements are sign vectors");
        let y = p.element(j).vector().expect("unbounded elements are sign vectors");
        let a = (1..=n)
            .find(|&a| x.entry(a) == Sign::Zero && y.entry(a) != Sign::Zero)
            .expect("a cover adds exactly one support position");
        let choices = [Sign::Plus, Sign::Minus]
            .iter()
            .filter(|&&s| x.with_entry(a, s).is_ok_and(|v| v.sign_changes() <= l))
            .count();
        weights.insert((i, j), ratio(1, choices));
    }
    Ok(RationalFlow { poset: p, weights })
}

/// Result of auditing a flow's rank sums.
#[derive(Debug)]
pub struct FlowReport {
    pub family: Family,
    pub n: usize,
    pub l: usize,
    /// No edge carries a negative weight.
    pub nonnegative: bool,
    /// Up-sums are constant and positive on every non-maximal rank.
    pub nf1: bool,
    /// Down-sums are constant and positive on every non-minimal rank.
    pub nf2: bool,
    /// The common up-sum per rank, for ranks where one exists.
    pub up_sums: Vec<(usize, BigRational)>,
    /// The common down-sum per rank, for ranks where one exists.
    pub down_sums: Vec<(usize, BigRational)>,
    /// Whether the sums equal the family's predicted values (vacuously true
    /// when no prediction applies to the poset's family and `l`).
    pub matches_family_formula: bool,
    /// Human-readable details for every failed check.
    pub violations: Vec<String>,
}

impl FlowReport {
    /// Whether every audited condition held.
    pub fn passed(&self) -> bool {
        self.nonnegative
            && self.nf1
            && self.nf2
            && self.matches_family_formula
            && self.violations.is_empty()
    }
}

fn uniform_sums(
    p: &GradedPoset,
    ranks: impl Iterator<Item = usize>,
    sum: impl Fn(usize) -> BigRational,
    what: &str,
    violations: &mut Vec<String>,
) -> (bool, Vec<(usize, BigRational)>) {
    let mut ok = true;
    let mut out = Vec::new();
    for r in ranks {
        let mut iter = p.rank_elements(r).iter();
        let Some(&first) = iter.next() else { continue };
        let want = sum(first);
        let mut uniform = true;
        for &x in iter {
            let got = sum(x);
            if got != want {
                uniform = false;
                violations.push(format!(
                    "{what}-sums differ within rank {r}: {got} at {} vs {want} at {}",
                    p.label(x),
                    p.label(first)
                ));
            }
        }
        if uniform && want.is_positive() {
            out.push((r, want));
        } else {
            ok = false;
            if uniform {
                violations.push(format!("{what}-sum at rank {r} is {want}, not positive"));
            }
        }
    }
    (ok, out)
}

/// Audit a flow: nonnegativity, constant positive up-sums below the top
/// rank, constant positive down-sums above the bottom rank, and agreement
/// with the predicted sums for the stock families.
///
/// Predictions: the exactly-`l` family has up-sum `n - l - r` and down-sum
/// `(rho - 1)(l + rho) / (l + rho - 1)` at rank `rho`; the at-most-`l`
/// family has up-sum `2(n - r)` and down-sum `rho` when `l = n - 1`, and
/// up-sum `n - r` with down-sum `rho` (`l = 0`) or `rho - 1` (`l = 1`)
/// otherwise.
pub fn verify_flow(flow: &RationalFlow) -> FlowReport {
    let p = flow.poset();
    let mut violations = Vec::new();

    let nonnegative = flow.iter().all(|(_, w)| !w.is_negative());
    if !nonnegative {
        violations.push("some edge weight is negative".to_string());
    }

    let (lo, hi) = (p.min_rank(), p.max_rank());
    let (nf1, up_sums) = uniform_sums(p, lo..hi, |x| flow.up_sum(x), "up", &mut violations);
    let (nf2, down_sums) =
        uniform_sums(p, lo + 1..=hi, |y| flow.down_sum(y), "down", &mut violations);

    let (n, l) = (p.n(), p.l());
    let expected_up = |r: usize| -> Option<BigRational> {
        match p.family() {
            Family::R => Some(whole(n - l - r)),
            Family::P if l + 1 == n => Some(whole(2 * (n - r))),
            Family::P if l <= 1 => Some(whole(n - r)),
            _ => None,
        }
    };
    let expected_down = |rho: usize| -> Option<BigRational> {
        match p.family() {
            Family::R => Some(ratio((rho - 1) * (l + rho), l + rho - 1)),
            Family::P if l + 1 == n => Some(whole(rho)),
            Family::P if l == 0 => Some(whole(rho)),
            Family::P if l == 1 => Some(whole(rho - 1)),
            _ => None,
        }
    };
    let mut matches_family_formula = true;
    for (r, s) in &up_sums {
        if let Some(want) = expected_up(*r) {
            if *s != want {
                matches_family_formula = false;
                violations.push(format!("up-sum at rank {r} is {s}, predicted {want}"));
            }
        }
    }
    for (rho, s) in &down_sums {
        if let Some(want) = expected_down(*rho) {
            if *s != want {
                matches_family_formula = false;
                violations.push(format!("down-sum at rank {rho} is {s}, predicted {want}"));
            }
        }
    }

    FlowReport {
        family: p.family(),
        n,
        l,
        nonnegative,
        nf1,
        nf2,
        up_sums,
        down_sums,
        matches_family_formula,
        violations,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Zero;

    fn vidx(p: &GradedPoset, s: &str) -> usize {
        (0..p.len())
            .find(|&i| p.label(i) == s)
            .unwrap_or_else(|| panic!("{s} not in the poset"))
    }

    #[test]
    fn weights_on_the_running_example() {
        let p = GradedPoset::build(3, 1, Family::R).unwrap();
        let flow = flow_r(&p).unwrap();
        assert_eq!(flow.len(), 4);
        let w = |a: &str, b: &str| flow.weight(vidx(&p, a), vidx(&p, b)).unwrap().clone();
        assert_eq!(w("+-0", "+--"), ratio(1, 1));
        assert_eq!(w("+0-", "+--"), ratio(1, 2));
        assert_eq!(w("+0-", "++-"), ratio(1, 2));
        assert_eq!(w("0+-", "++-"), ratio(1, 1));

        let report = verify_flow(&flow);
        assert!(report.passed(), "violations: {:?}", report.violations);
        assert_eq!(report.up_sums, vec![(1, whole(1))]);
        assert_eq!(report.down_sums, vec![(2, ratio(3, 2))]);
    }

    #[test]
    fn cover_weights_on_the_split_example() {
        let x = BlockTuple::new(9, vec![vec![2, 4], vec![6], vec![8]]).unwrap();
        let covers = x.covers();
        assert_eq!(covers.len(), 7);
        // Weights keyed by (block, added position).
        let expected = [
            ((1, 1), ratio(1, 1)),
            ((1, 3), ratio(1, 1)),
            ((1, 5), ratio(1, 2)),
            ((2, 5), ratio(1, 2)),
            ((2, 7), ratio(3, 4)),
            ((3, 7), ratio(1, 4)),
            ((3, 9), ratio(1, 1)),
        ];
        for (y, info) in &covers {
            let want = expected
                .iter()
                .find(|(k, _)| *k == (info.block, info.added))
                .map(|(_, w)| w.clone())
                .unwrap_or_else(|| panic!("unexpected cover {y:?}"));
            assert_eq!(cover_weight(&x, info), want, "weight of {info:?}");
        }
    }

    #[test]
    fn weights_for_each_position_sum_to_one() {
        for (n, l) in [(4, 1), (5, 2), (6, 2)] {
            let p = GradedPoset::build(n, l, Family::R).unwrap();
            for i in 0..p.len() {
                let x = p.element(i).tuple().unwrap();
                let mut by_position: BTreeMap<usize, BigRational> = BTreeMap::new();
                for (_, info) in x.covers() {
                    let w = cover_weight(&x, &info);
                    *by_position.entry(info.added).or_insert_with(BigRational::zero) += w;
                }
                for (a, total) in by_position {
                    assert!(total.is_one(), "position {a} of {x:?} sums to {total}");
                }
            }
        }
    }

    #[test]
    fn exact_family_flow_passes_across_parameters() {
        for n in 1..=6 {
            for l in 0..n {
                let p = GradedPoset::build(n, l, Family::R).unwrap();
                let report = verify_flow(&flow_r(&p).unwrap());
                assert!(
                    report.passed(),
                    "flow audit failed at n={n}, l={l}: {:?}",
                    report.violations
                );
            }
        }
    }

    #[test]
    fn removal_cases_reproduce_the_insertion_weights() {
        // Dual route: the weight of x ⋖ y can be read off from y alone by
        // case analysis on the removed element's place in its block. The two
        // computations must agree edge for edge.
        fn removal_weight(y: &BlockTuple, block: usize, removed: usize) -> BigRational {
            let k = y.num_blocks();
            let denom = y.support_size() - 1;
            let b = y.block(block);
            if removed == b[0] {
                let tail: usize = (block..=k).map(|i| y.block(i).len()).sum();
                ratio(tail - 1, denom)
            } else if removed == *b.last().unwrap() {
                let head: usize = (1..=block).map(|i| y.block(i).len()).sum();
                ratio(head - 1, denom)
            } else {
                BigRational::one()
            }
        }

        for (n, l) in [(4, 1), (5, 1), (5, 2), (6, 2)] {
            let p = GradedPoset::build(n, l, Family::R).unwrap();
            let flow = flow_r(&p).unwrap();
            for (i, j) in p.edges() {
                let y = p.element(j).tuple().unwrap();
                let x = p.element(i).tuple().unwrap();
                let (block, removed) = (1..=y.num_blocks())
                    .find_map(|b| {
                        y.block(b)
                            .iter()
                            .find(|e| !x.block(b).contains(e))
                            .map(|&e| (b, e))
                    })
                    .expect("cover differs in one block");
                assert_eq!(
                    flow.weight(i, j).unwrap(),
                    &removal_weight(&y, block, removed),
                    "edge {} ⋖ {}",
                    p.label(i),
                    p.label(j)
                );
            }
        }
    }

    #[test]
    fn constant_weights_fail_on_uneven_up_degrees() {
        let p = GradedPoset::build(3, 1, Family::R).unwrap();
        let report = verify_flow(&RationalFlow::constant(&p, BigRational::one()));
        assert!(!report.nf1);
        assert!(!report.passed());
        assert!(report.violations.iter().any(|v| v.contains("up-sums differ")));
    }

    #[test]
    fn negative_weights_are_flagged() {
        let p = GradedPoset::build(3, 1, Family::R).unwrap();
        let report = verify_flow(&RationalFlow::constant(&p, -BigRational::one()));
        assert!(!report.nonnegative);
        assert!(!report.passed());
    }

    #[test]
    fn at_most_family_split_weights() {
        let p = GradedPoset::build(3, 1, Family::P).unwrap();
        let flow = flow_p(&p).unwrap();
        let w = |a: &str, b: &str| flow.weight(vidx(&p, a), vidx(&p, b)).unwrap().clone();
        assert_eq!(w("0+0", "++0"), ratio(1, 2));
        assert_eq!(w("0+0", "+-0"), ratio(1, 2));
        assert_eq!(w("0+0", "0++"), ratio(1, 2));
        assert_eq!(w("0+0", "0+-"), ratio(1, 2));

        let report = verify_flow(&flow);
        assert!(report.passed(), "violations: {:?}", report.violations);
        assert_eq!(report.up_sums, vec![(1, whole(2)), (2, whole(1))]);
        assert_eq!(report.down_sums, vec![(2, whole(1)), (3, whole(2))]);
    }

    #[test]
    fn at_most_family_flow_passes_where_defined() {
        for n in 1..=6 {
            for l in [0, 1, n - 1] {
                if l >= n {
                    continue;
                }
                let p = GradedPoset::build(n, l, Family::P).unwrap();
                let report = verify_flow(&flow_p(&p).unwrap());
                assert!(
                    report.passed(),
                    "flow audit failed at n={n}, l={l}: {:?}",
                    report.violations
                );
            }
        }
    }

    #[test]
    fn biregular_case_takes_priority_over_the_split_rule() {
        // At l = n - 1 every zero entry admits both signs, so the split rule
        // would assign 1/2 everywhere and halve the predicted up-sums. The
        // constant flow is the right one.
        let p = GradedPoset::build(3, 2, Family::P).unwrap();
        let flow = flow_p(&p).unwrap();
        assert!(flow.iter().all(|(_, w)| w.is_one()));
        let report = verify_flow(&flow);
        assert!(report.passed(), "violations: {:?}", report.violations);
        assert_eq!(report.up_sums, vec![(1, whole(4)), (2, whole(2))]);
        assert_eq!(report.down_sums, vec![(2, whole(2)), (3, whole(3))]);
    }

    #[test]
    fn zero_changes_agrees_with_the_exact_family() {
        // The two families coincide at l = 0, elements and indices included,
        // and so must the flows.
        let r = GradedPoset::build(4, 0, Family::R).unwrap();
        let p = GradedPoset::build(4, 0, Family::P).unwrap();
        let fr = flow_r(&r).unwrap();
        let fp = flow_p(&p).unwrap();
        assert_eq!(fr.len(), fp.len());
        for (edge, w) in fr.iter() {
            assert_eq!(fp.weight(edge.0, edge.1), Some(w));
            assert!(w.is_one());
        }
    }

    #[test]
    fn family_mismatches_are_rejected() {
        let r = GradedPoset::build(3, 1, Family::R).unwrap();
        let p = GradedPoset::build(3, 1, Family::P).unwrap();
        assert!(flow_p(&r).is_err());
        assert!(flow_r(&p).is_err());
        let mid = GradedPoset::build(5, 2, Family::P).unwrap();
        assert!(matches!(flow_p(&mid), Err(Error::UnsupportedFamily(_, _))));
    }

    #[test]
    fn single_element_posets_pass_vacuously() {
        let p = GradedPoset::build(3, 2, Family::R).unwrap();
        let flow = flow_r(&p).unwrap();
        assert!(flow.is_empty());
        let report = verify_flow(&flow);
        assert!(report.passed());
        assert!(report.up_sums.is_empty() && report.down_sums.is_empty());
    }
}
