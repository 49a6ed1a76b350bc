//! Block tuples: the combinatorial coordinates behind sign vectors.
//!
//! A block tuple on `[n]` is an ordered tuple of nonempty sets
//! `A_1, ..., A_k` of positions with `max(A_i) < min(A_{i+1})`. It encodes
//! the sign vector whose block `j` carries sign `(-1)^(j-1)`; a tuple with
//! `k` blocks therefore has exactly `k - 1` sign changes. Order is
//! componentwise containment, and cover relations insert one new position
//! into one block.

use serde::Serialize;

use crate::error::{Error, Result};

/// Whether a cover inserts below or above the receiving block's maximum.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum CoverType {
    /// Inserted position is smaller than the block's maximum.
    Alpha,
    /// Inserted position is larger than the block's maximum.
    Beta,
}

/// Description of one cover relation `x <. y`: `y` arises from `x` by adding
/// position `added` to block `block` (1-based).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CoverInfo {
    pub block: usize,
    pub added: usize,
    pub cover_type: CoverType,
}

/// An ordered tuple of separated blocks of positions in `[n]`.
///
/// Invariants, checked at construction: every block is nonempty and strictly
/// increasing, all positions lie in `1..=n`, and each block's maximum is
/// below the next block's minimum. The derived `Ord` is lexicographic on the
/// tuple of blocks, which is the order used when sorting covers "by tuple".
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BlockTuple {
    n: usize,
    blocks: Vec<Vec<usize>>,
}

impl BlockTuple {
    /// Validate and build a block tuple on `[n]`.
    pub fn new(n: usize, blocks: Vec<Vec<usize>>) -> Result<BlockTuple> {
        if blocks.is_empty() {
            return Err(Error::InvalidBlocks("no blocks".into()));
        }
        for block in &blocks {
            if block.is_empty() {
                return Err(Error::InvalidBlocks("empty block".into()));
            }
            if !block.windows(2).all(|w| w[0] < w[1]) {
                return Err(Error::InvalidBlocks(format!(
                    "block {block:?} is not strictly increasing"
                )));
            }
            if block[0] < 1 || *block.last().expect("nonempty") > n {
                return Err(Error::InvalidBlocks(format!(
                    "block {block:?} leaves 1..={n}"
                )));
            }
        }
        for pair in blocks.windows(2) {
            let (prev, next) = (&pair[0], &pair[1]);
            if prev.last() >= next.first() {
                return Err(Error::InvalidBlocks(format!(
                    "blocks {prev:?} and {next:?} are not separated"
                )));
            }
        }
        Ok(BlockTuple { n, blocks })
    }

    /// Ground set size `n`.
    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of blocks (`sign_changes() + 1`).
    pub fn num_blocks(&self) -> usize {
        self.blocks.len()
    }

    /// Sign changes of the encoded vector.
    pub fn sign_changes(&self) -> usize {
        self.blocks.len() - 1
    }

    /// The blocks, 1-based positions, ascending within and across blocks.
    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    /// Block `i`, 1-based.
    pub fn block(&self, i: usize) -> &[usize] {
        &self.blocks[i - 1]
    }

    /// Total number of positions used.
    pub fn support_size(&self) -> usize {
        self.blocks.iter().map(Vec::len).sum()
    }

    /// Rank in its graded family: support size minus sign changes.
    pub fn rank(&self) -> usize {
        self.support_size() - self.sign_changes()
    }

    /// Componentwise containment. Only meaningful between tuples with the
    /// same number of blocks on the same ground set.
    pub fn leq(&self, other: &BlockTuple) -> bool {
        self.n == other.n
            && self.blocks.len() == other.blocks.len()
            && self
                .blocks
                .iter()
                .zip(&other.blocks)
                .all(|(a, b)| a.iter().all(|x| b.binary_search(x).is_ok()))
    }

    /// Copy of `self` with `added` inserted into block `block` (1-based).
    /// The result is validated, so illegal insertions error out.
    pub fn with_added(&self, block: usize, added: usize) -> Result<BlockTuple> {
        let mut blocks = self.blocks.clone();
        let b = &mut blocks[block - 1];
        match b.binary_search(&added) {
            Ok(_) => {
                return Err(Error::InvalidBlocks(format!(
                    "{added} already in block {block}"
                )))
            }
            Err(pos) => b.insert(pos, added),
        }
        BlockTuple::new(self.n, blocks)
    }

    /// All covers of `self`: for each block `i`, insert any unused position
    /// strictly between the neighbouring blocks. Returned in (block, added)
    /// order. The cover type records whether the insertion lands below
    /// (`Alpha`) or above (`Beta`) the receiving block's maximum.
    pub fn covers(&self) -> Vec<(BlockTuple, CoverInfo)> {
        let k = self.blocks.len();
        let mut out = Vec::new();
        for i in 1..=k {
            let lo = if i == 1 { 0 } else { *self.blocks[i - 2].last().expect("nonempty") };
            let hi = if i == k {
                self.n + 1
            } else {
                *self.blocks[i].first().expect("nonempty")
            };
            let block_max = *self.blocks[i - 1].last().expect("nonempty");
            for a in lo + 1..hi {
                if self.blocks[i - 1].binary_search(&a).is_ok() {
                    continue;
                }
                let cover_type = if a < block_max { CoverType::Alpha } else { CoverType::Beta };
                let next = self.with_added(i, a).expect("gap insertion is valid");
                out.push((
                    next,
                    CoverInfo {
                        block: i,
                        added: a,
                        cover_type,
                    },
                ));
            }
        }
        out
    }

    /// The largest tuple above `self` with the same block maxima pattern:
    /// block `i < k` becomes the full run from just above the previous
    /// maximum up to `max(A_i)`, and the last block runs up to `n`. This is
    /// the tuple every maximal element of an increasing chain out of `self`
    /// passes through.
    pub fn completion(&self) -> BlockTuple {
        let k = self.blocks.len();
        let mut blocks = Vec::with_capacity(k);
        let mut start = 1;
        for (j, block) in self.blocks.iter().enumerate() {
            let end = if j + 1 == k { self.n } else { *block.last().expect("nonempty") };
            blocks.push((start..=end).collect::<Vec<_>>());
            start = end + 1;
        }
        BlockTuple::new(self.n, blocks).expect("completion is a valid tuple")
    }
}
