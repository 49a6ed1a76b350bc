//! Fixed-width bit matrix used for reachability closures.

/// Dense `rows x cols` bit matrix. Row `i` stores the strict down-set of
/// element `i` when used as a reachability closure.
#[derive(Clone, Debug)]
pub(crate) struct BitMatrix {
    words_per_row: usize,
    data: Vec<u64>,
}

impl BitMatrix {
    pub fn new(rows: usize, cols: usize) -> Self {
        let words_per_row = cols.div_ceil(64);
        BitMatrix {
            words_per_row,
            data: vec![0; rows * words_per_row],
        }
    }

    pub fn set(&mut self, row: usize, col: usize) {
        self.data[row * self.words_per_row + col / 64] |= 1 << (col % 64);
    }

    pub fn get(&self, row: usize, col: usize) -> bool {
        self.data[row * self.words_per_row + col / 64] & (1 << (col % 64)) != 0
    }

    /// `dst |= src`, row-wise. The two rows must differ.
    pub fn or_rows(&mut self, dst: usize, src: usize) {
        debug_assert_ne!(dst, src);
        let w = self.words_per_row;
        let (a, b) = (dst * w, src * w);
        for k in 0..w {
            let bits = self.data[b + k];
            self.data[a + k] |= bits;
        }
    }

    pub fn row(&self, row: usize) -> &[u64] {
        &self.data[row * self.words_per_row..(row + 1) * self.words_per_row]
    }

    /// Indices of set bits in `row`, ascending.
    pub fn iter_row(&self, row: usize) -> impl Iterator<Item = usize> + '_ {
        self.row(row).iter().enumerate().flat_map(|(w, &word)| {
            let mut bits = word;
            std::iter::from_fn(move || {
                if bits == 0 {
                    None
                } else {
                    let tz = bits.trailing_zeros() as usize;
                    bits &= bits - 1;
                    Some(w * 64 + tz)
                }
            })
        })
    }

    /// Set bits of `row(a) & row(b)`, ascending.
    pub fn iter_and(&self, a: usize, b: usize) -> impl Iterator<Item = usize> + '_ {
        let w = self.words_per_row;
        (0..w).flat_map(move |k| {
            let mut bits = self.data[a * w + k] & self.data[b * w + k];
            std::iter::from_fn(move || {
                if bits == 0 {
                    None
                } else {
                    let tz = bits.trailing_zeros() as usize;
                    bits &= bits - 1;
                    Some(k * 64 + tz)
                }
            })
        })
    }
}
