//! Dense square bit matrix used for reachability closures.

/// Square bit matrix with one row of `n` bits per element.
#[derive(Clone, Debug)]
pub struct BitMatrix {
    n: usize,
    words: usize,
    data: Vec<u64>,
}

impl BitMatrix {
    pub fn new(n: usize) -> Self {
        let words = n.div_ceil(64);
        BitMatrix {
            n,
            words,
            data: vec![0; n * words],
        }
    }

    pub fn size(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn set(&mut self, row: usize, col: usize) {
        debug_assert!(row < self.n && col < self.n);
        self.data[row * self.words + col / 64] |= 1u64 << (col % 64);
    }

    #[inline]
    pub fn get(&self, row: usize, col: usize) -> bool {
        debug_assert!(row < self.n && col < self.n);
        self.data[row * self.words + col / 64] >> (col % 64) & 1 != 0
    }

    /// `row(dst) |= row(src)`. The two rows must be distinct.
    pub fn or_row(&mut self, dst: usize, src: usize) {
        assert_ne!(dst, src);
        let w = self.words;
        let (lo, hi, first_is_dst) = if dst < src {
            let (a, b) = self.data.split_at_mut(src * w);
            (a, b, true)
        } else {
            let (a, b) = self.data.split_at_mut(dst * w);
            (a, b, false)
        };
        if first_is_dst {
            let d = &mut lo[dst * w..dst * w + w];
            let s = &hi[..w];
            for (x, y) in d.iter_mut().zip(s) {
                *x |= *y;
            }
        } else {
            let d = &mut hi[..w];
            let s = &lo[src * w..src * w + w];
            for (x, y) in d.iter_mut().zip(s) {
                *x |= *y;
            }
        }
    }

    /// Indices of set bits in a row, ascending.
    pub fn row_ones(&self, row: usize) -> Vec<usize> {
        let mut out = Vec::new();
        for w in 0..self.words {
            let mut bits = self.data[row * self.words + w];
            while bits != 0 {
                let b = bits.trailing_zeros() as usize;
                out.push(w * 64 + b);
                bits &= bits - 1;
            }
        }
        out
    }

    pub fn row_count(&self, row: usize) -> usize {
        self.data[row * self.words..(row + 1) * self.words]
            .iter()
            .map(|w| w.count_ones() as usize)
            .sum()
    }
}
