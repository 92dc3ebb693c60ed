//! Integer sequences used as ground truth: Stirling numbers of the second
//! kind, Bell numbers, integer partition counts, and an exhaustive set
//! partition enumerator.

use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use thiserror::Error;

/// Largest `n` accepted by [`set_partitions_enumerate`].
pub const SET_PARTITION_CAP: usize = 12;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CombinatoricsError {
    #[error("n = {n} exceeds the enumeration cap of {cap}")]
    Range { n: usize, cap: usize },
}

/// How a sequence's values were obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Provenance {
    Recurrence,
    Enumeration,
    Series,
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Provenance::Recurrence => "recurrence",
            Provenance::Enumeration => "enumeration",
            Provenance::Series => "series",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SequenceRecord {
    pub name: String,
    pub values: Vec<BigUint>,
    pub provenance: Provenance,
}

/// Triangle of Stirling numbers of the second kind, `S(n, k)` for
/// `0 ≤ k ≤ n ≤ n_max` (with `S(0, 0) = 1`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StirlingTable {
    rows: Vec<Vec<BigUint>>,
}

impl StirlingTable {
    pub(crate) fn from_rows(rows: Vec<Vec<BigUint>>) -> Self {
        Self { rows }
    }

    pub fn n_max(&self) -> usize {
        self.rows.len() - 1
    }

    /// `S(n, k)`; zero outside the triangle.
    pub fn get(&self, n: usize, k: usize) -> BigUint {
        self.rows
            .get(n)
            .and_then(|row| row.get(k))
            .cloned()
            .unwrap_or_else(BigUint::zero)
    }

    /// `S(n, 1), …, S(n, n)`.
    pub fn row(&self, n: usize) -> &[BigUint] {
        if n == 0 {
            &self.rows[0][..]
        } else {
            &self.rows[n][1..]
        }
    }

    pub fn row_sum(&self, n: usize) -> BigUint {
        self.rows[n].iter().sum()
    }
}

/// Fills `S(n, k) = k·S(n−1, k) + S(n−1, k−1)`.
pub fn stirling2_table(n_max: usize) -> StirlingTable {
    let mut rows: Vec<Vec<BigUint>> = vec![vec![BigUint::one()]];
    for n in 1..=n_max {
        let prev = &rows[n - 1];
        let row: Vec<BigUint> = (0..=n)
            .map(|k| {
                if k == 0 {
                    return BigUint::zero();
                }
                let stay = prev.get(k).map(|s| s * BigUint::from(k)).unwrap_or_default();
                stay + &prev[k - 1]
            })
            .collect();
        rows.push(row);
    }
    StirlingTable { rows }
}

/// Bell numbers via the binomial recurrence `B_{n+1} = Σ_j C(n, j)·B_j`.
pub fn bell_binomial(n_max: usize) -> Vec<BigUint> {
    let mut bell = vec![BigUint::one()];
    // current row of Pascal's triangle, C(n, ·)
    let mut binom = vec![BigUint::one()];
    for n in 0..n_max {
        let next: BigUint = binom.iter().zip(&bell).map(|(c, b)| c * b).sum();
        bell.push(next);
        let mut row = Vec::with_capacity(n + 2);
        row.push(BigUint::one());
        for j in 1..=n {
            row.push(&binom[j - 1] + &binom[j]);
        }
        row.push(BigUint::one());
        binom = row;
    }
    bell
}

/// `B_0..=B_{n_max}` as Stirling row sums, cross-checked against the binomial
/// recurrence.
pub fn bell_numbers(n_max: usize) -> SequenceRecord {
    let table = stirling2_table(n_max);
    let values: Vec<BigUint> = (0..=n_max).map(|n| table.row_sum(n)).collect();
    assert_eq!(values, bell_binomial(n_max), "Bell recurrences disagree");
    SequenceRecord {
        name: "bell".into(),
        values,
        provenance: Provenance::Recurrence,
    }
}

/// Number of integer partitions `P_0..=P_{n_max}`, by expanding
/// `Π_k 1/(1 − x^k)` one factor at a time.
pub fn partition_counts(n_max: usize) -> SequenceRecord {
    let mut p = vec![BigUint::zero(); n_max + 1];
    p[0] = BigUint::one();
    for part in 1..=n_max {
        for n in part..=n_max {
            let add = p[n - part].clone();
            p[n] += add;
        }
    }
    SequenceRecord {
        name: "partitions".into(),
        values: p,
        provenance: Provenance::Recurrence,
    }
}

/// A set partition of `{0, …, n−1}` as a restricted growth string: element
/// `i` lies in block `rgs[i]`, and `rgs[i] ≤ 1 + max(rgs[..i])`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SetPartition {
    rgs: Vec<u8>,
}

impl SetPartition {
    pub fn rgs(&self) -> &[u8] {
        &self.rgs
    }

    pub fn block_count(&self) -> usize {
        self.rgs.iter().max().map_or(0, |&m| m as usize + 1)
    }

    /// Blocks as sorted element lists, ordered by smallest element.
    pub fn blocks(&self) -> Vec<Vec<usize>> {
        let mut blocks = vec![Vec::new(); self.block_count()];
        for (i, &b) in self.rgs.iter().enumerate() {
            blocks[b as usize].push(i);
        }
        blocks
    }
}

/// Visits every restricted growth string of length `n` in lexicographic
/// order. No cap; the caller decides what is affordable.
pub fn for_each_set_partition(n: usize, mut visit: impl FnMut(&[u8])) {
    if n == 0 {
        visit(&[]);
        return;
    }
    let mut rgs = vec![0u8; n];
    // maxes[i] = max(rgs[..=i])
    let mut maxes = vec![0u8; n];
    loop {
        visit(&rgs);
        // rightmost position that can still grow
        let mut i = n - 1;
        loop {
            if i == 0 {
                return;
            }
            if rgs[i] <= maxes[i - 1] {
                break;
            }
            i -= 1;
        }
        rgs[i] += 1;
        maxes[i] = maxes[i - 1].max(rgs[i]);
        for j in i + 1..n {
            rgs[j] = 0;
            maxes[j] = maxes[i];
        }
    }
}

/// All set partitions of an `n`-element set, each exactly once.
pub fn set_partitions_enumerate(n: usize) -> Result<Vec<SetPartition>, CombinatoricsError> {
    if n > SET_PARTITION_CAP {
        return Err(CombinatoricsError::Range {
            n,
            cap: SET_PARTITION_CAP,
        });
    }
    let mut out = Vec::new();
    for_each_set_partition(n, |rgs| out.push(SetPartition { rgs: rgs.to_vec() }));
    Ok(out)
}

/// Number of set partitions of an `n`-set with `k` blocks, for every `k`,
/// counted by enumeration.
pub fn block_count_histogram(n: usize) -> Result<Vec<u64>, CombinatoricsError> {
    if n > SET_PARTITION_CAP {
        return Err(CombinatoricsError::Range {
            n,
            cap: SET_PARTITION_CAP,
        });
    }
    let mut hist = vec![0u64; n + 1];
    for_each_set_partition(n, |rgs| {
        let k = rgs.iter().max().map_or(0, |&m| m as usize + 1);
        hist[k] += 1;
    });
    Ok(hist)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(v: &[u64]) -> Vec<BigUint> {
        v.iter().map(|&x| BigUint::from(x)).collect()
    }

    /// Counts non-increasing summand lists of `n` with parts at most `max`.
    fn brute_partitions(n: usize, max: usize) -> u64 {
        if n == 0 {
            return 1;
        }
        (1..=max.min(n)).map(|p| brute_partitions(n - p, p)).sum()
    }

    #[test]
    fn stirling_known_values() {
        let t = stirling2_table(6);
        assert_eq!(t.get(3, 2), BigUint::from(3u8));
        assert_eq!(t.row(4), &big(&[1, 7, 6, 1])[..]);
        assert_eq!(t.row(2), &big(&[1, 1])[..]);
        for n in 1..=6 {
            assert_eq!(t.get(n, n), BigUint::one());
            assert_eq!(t.get(n, 1), BigUint::one());
            assert_eq!(t.get(n, 0), BigUint::zero());
            assert_eq!(t.get(n, n + 1), BigUint::zero());
        }
    }

    #[test]
    fn bell_values() {
        let b = bell_numbers(10);
        assert_eq!(&b.values[..7], &big(&[1, 1, 2, 5, 15, 52, 203])[..]);
        assert_eq!(b.values[10], BigUint::from(115975u32));
        assert_eq!(b.provenance, Provenance::Recurrence);
        assert_eq!(bell_numbers(0).values, big(&[1]));
    }

    #[test]
    fn partition_values() {
        let p = partition_counts(20);
        assert_eq!(&p.values[..7], &big(&[1, 1, 2, 3, 5, 7, 11])[..]);
        assert_eq!(p.values[20], BigUint::from(627u32));
        let p = partition_counts(25);
        for n in 0..=25 {
            assert_eq!(p.values[n], BigUint::from(brute_partitions(n, n)), "n={n}");
        }
    }

    #[test]
    fn set_partition_enumeration() {
        let parts = set_partitions_enumerate(3).unwrap();
        assert_eq!(parts.len(), 5);
        assert_eq!(block_count_histogram(3).unwrap(), vec![0, 1, 3, 1]);
        assert_eq!(set_partitions_enumerate(1).unwrap().len(), 1);
        assert_eq!(set_partitions_enumerate(6).unwrap().len(), 203);
        assert_eq!(set_partitions_enumerate(0).unwrap().len(), 1);
        assert_eq!(
            set_partitions_enumerate(13).unwrap_err(),
            CombinatoricsError::Range { n: 13, cap: 12 }
        );
        // restricted-growth order is lexicographic, hence duplicate-free
        let parts = set_partitions_enumerate(5).unwrap();
        assert!(parts.windows(2).all(|w| w[0] < w[1]));
        let p = &parts[7];
        assert_eq!(p.blocks().iter().map(Vec::len).sum::<usize>(), 5);
    }

    #[test]
    fn three_way_bell_agreement() {
        let n_max = SET_PARTITION_CAP;
        let table = stirling2_table(n_max);
        let via_binomial = bell_binomial(n_max);
        for n in 0..=n_max {
            let hist = block_count_histogram(n).unwrap();
            let enumerated: u64 = hist.iter().sum();
            assert_eq!(table.row_sum(n), via_binomial[n]);
            assert_eq!(via_binomial[n], BigUint::from(enumerated), "n={n}");
            for (k, &count) in hist.iter().enumerate() {
                assert_eq!(table.get(n, k), BigUint::from(count), "S({n},{k})");
            }
        }
    }
}
