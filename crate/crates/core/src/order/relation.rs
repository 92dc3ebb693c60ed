use std::fmt;

/// Largest number of points a [`Relation`] can hold.
pub const MAX_POINTS: usize = 8;

/// Reflexive binary relation on `n` labelled points as a bit matrix:
/// bit `j` of `rows[i]` is set iff `i ≤ j`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Relation {
    n: usize,
    rows: [u8; MAX_POINTS],
}

impl Relation {
    /// The discrete (identity) relation.
    pub fn identity(n: usize) -> Self {
        assert!(n <= MAX_POINTS, "at most {MAX_POINTS} points");
        let mut rows = [0u8; MAX_POINTS];
        for (i, row) in rows.iter_mut().enumerate().take(n) {
            *row = 1 << i;
        }
        Self { n, rows }
    }

    /// Builds from explicit rows; returns `None` unless every row fits in
    /// `n` bits and the relation is reflexive.
    pub fn from_rows(n: usize, rows: &[u8]) -> Option<Self> {
        if n > MAX_POINTS || rows.len() != n {
            return None;
        }
        let full = full_mask(n);
        let mut out = [0u8; MAX_POINTS];
        for (i, &r) in rows.iter().enumerate() {
            if r & !full != 0 || r & (1 << i) == 0 {
                return None;
            }
            out[i] = r;
        }
        Some(Self { n, rows: out })
    }

    /// Reflexive closure of the pairs `(i, j)` meaning `i ≤ j`.
    pub fn from_pairs(n: usize, pairs: &[(usize, usize)]) -> Option<Self> {
        let mut r = Self::identity(n);
        for &(i, j) in pairs {
            if i >= n || j >= n {
                return None;
            }
            r.rows[i] |= 1 << j;
        }
        Some(r)
    }

    /// Reflexive relation whose off-diagonal entries are read, row by row,
    /// from the low `n² − n` bits of `mask`.
    pub(crate) fn from_off_diagonal(n: usize, mask: u64) -> Self {
        let mut rows = [0u8; MAX_POINTS];
        let mut bit = 0;
        for (i, row) in rows.iter_mut().enumerate().take(n) {
            let mut r = 1u8 << i;
            for j in 0..n {
                if j != i {
                    if mask >> bit & 1 == 1 {
                        r |= 1 << j;
                    }
                    bit += 1;
                }
            }
            *row = r;
        }
        Self { n, rows }
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn rows(&self) -> &[u8] {
        &self.rows[..self.n]
    }

    pub fn related(&self, i: usize, j: usize) -> bool {
        self.rows[i] >> j & 1 == 1
    }

    fn column(&self, j: usize) -> u8 {
        (0..self.n)
            .filter(|&i| self.related(i, j))
            .fold(0u8, |acc, i| acc | 1 << i)
    }

    pub fn is_reflexive(&self) -> bool {
        (0..self.n).all(|i| self.related(i, i))
    }

    /// Every row contains the rows it points to: `R∘R ⊆ R`.
    pub fn is_transitive(&self) -> bool {
        (0..self.n).all(|i| {
            let row = self.rows[i];
            let mut reach = row;
            let mut bits = row;
            while bits != 0 {
                let j = bits.trailing_zeros() as usize;
                reach |= self.rows[j];
                bits &= bits - 1;
            }
            reach == row
        })
    }

    pub fn is_antisymmetric(&self) -> bool {
        (0..self.n).all(|i| self.rows[i] & self.column(i) == 1 << i)
    }

    pub fn is_preorder(&self) -> bool {
        self.is_reflexive() && self.is_transitive()
    }

    pub fn is_poset(&self) -> bool {
        self.is_preorder() && self.is_antisymmetric()
    }

    /// Whether the comparability graph (ignoring direction) has exactly one
    /// component. False for the empty relation.
    pub fn is_connected(&self) -> bool {
        if self.n == 0 {
            return false;
        }
        let full = full_mask(self.n);
        let neighbours: Vec<u8> = (0..self.n).map(|i| self.rows[i] | self.column(i)).collect();
        let mut seen = 1u8;
        loop {
            let mut next = seen;
            let mut bits = seen;
            while bits != 0 {
                let i = bits.trailing_zeros() as usize;
                next |= neighbours[i];
                bits &= bits - 1;
            }
            if next == seen {
                return seen == full;
            }
            seen = next;
        }
    }

    /// The relation transported along `perm`: `perm[i] ≤ perm[j]` in the
    /// result iff `i ≤ j` here.
    pub fn permute(&self, perm: &[usize]) -> Self {
        let mut rows = [0u8; MAX_POINTS];
        for i in 0..self.n {
            let mut r = 0u8;
            for j in 0..self.n {
                if self.related(i, j) {
                    r |= 1 << perm[j];
                }
            }
            rows[perm[i]] = r;
        }
        Self { n: self.n, rows }
    }

    /// Row-major bit encoding, `n²` bits.
    pub fn code(&self) -> u64 {
        let mut code = 0u64;
        for i in 0..self.n {
            for j in 0..self.n {
                code = code << 1 | self.related(i, j) as u64;
            }
        }
        code
    }
}

pub(crate) fn full_mask(n: usize) -> u8 {
    ((1u16 << n) - 1) as u8
}

impl fmt::Debug for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Relation({}; ", self.n)?;
        for i in 0..self.n {
            if i > 0 {
                f.write_str("|")?;
            }
            for j in 0..self.n {
                f.write_str(if self.related(i, j) { "1" } else { "0" })?;
            }
        }
        f.write_str(")")
    }
}

impl fmt::Display for Relation {
    /// Lists the strict relations `i<j` (1-based), e.g. `{1<2, 1<3}`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        let mut first = true;
        for i in 0..self.n {
            for j in 0..self.n {
                if i != j && self.related(i, j) {
                    if !first {
                        f.write_str(", ")?;
                    }
                    write!(f, "{}<={}", i + 1, j + 1)?;
                    first = false;
                }
            }
        }
        f.write_str("}")
    }
}
