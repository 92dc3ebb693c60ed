//! Finite topologies as preorders, posets, and the quotient that squashes
//! each class of mutually related points to a single point.
//!
//! A topology on a finite set is the same thing as a preorder (its
//! specialization order), so topologies are enumerated as reflexive
//! transitive relations. Every preorder on `n` points with `k` mutual
//! classes is a set partition of the points into `k` blocks together with a
//! poset on the blocks, which gives the counting identity
//! `t_n = Σ_k S(n, k)·d_k` for connected structures.

mod relation;

pub use relation::{Relation, MAX_POINTS};

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::Zero;
use rayon::prelude::*;
use thiserror::Error;

use crate::combinatorics::stirling2_table;
use crate::series::{Rational, TruncSeries};

/// Default cap on the number of points.
pub const DEFAULT_CAP: usize = 5;
/// Cap reachable with an explicit override (`2^30` candidates).
pub const OVERRIDE_CAP: usize = 6;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OrderError {
    #[error("n = {n} exceeds the enumeration cap of {cap}")]
    Range { n: usize, cap: usize },
    #[error("relation is not a preorder: {0:?}")]
    NotPreorder(Relation),
}

fn check_cap(n: usize, cap: usize) -> Result<(), OrderError> {
    let cap = cap.min(OVERRIDE_CAP);
    if n > cap {
        return Err(OrderError::Range { n, cap });
    }
    if n > DEFAULT_CAP {
        log::warn!("enumerating relations on {n} points: 2^{} candidates", n * n - n);
    }
    Ok(())
}

/// All preorders on `n ≤ 5` labelled points.
pub fn enumerate_preorders(n: usize) -> Result<Vec<Relation>, OrderError> {
    enumerate_preorders_capped(n, DEFAULT_CAP)
}

/// Like [`enumerate_preorders`] with a raised cap (at most
/// [`OVERRIDE_CAP`]); logs a warning above the default.
pub fn enumerate_preorders_capped(n: usize, cap: usize) -> Result<Vec<Relation>, OrderError> {
    check_cap(n, cap)?;
    let bits = n * n - n;
    if bits == 0 {
        return Ok(vec![Relation::identity(n)]);
    }
    // high bits pick a chunk, low bits are scanned sequentially
    let chunk_bits = bits.min(12);
    let low_bits = bits - chunk_bits;
    let chunks: Vec<Vec<Relation>> = (0u64..1 << chunk_bits)
        .into_par_iter()
        .map(|hi| {
            let base = hi << low_bits;
            (0u64..1 << low_bits)
                .map(|lo| Relation::from_off_diagonal(n, base | lo))
                .filter(Relation::is_transitive)
                .collect()
        })
        .collect();
    Ok(chunks.into_iter().flatten().collect())
}

/// All posets on `n ≤ 5` labelled points.
pub fn enumerate_posets(n: usize) -> Result<Vec<Relation>, OrderError> {
    enumerate_posets_capped(n, DEFAULT_CAP)
}

pub fn enumerate_posets_capped(n: usize, cap: usize) -> Result<Vec<Relation>, OrderError> {
    Ok(enumerate_preorders_capped(n, cap)?
        .into_iter()
        .filter(Relation::is_antisymmetric)
        .collect())
}

pub fn is_connected(r: &Relation) -> bool {
    r.is_connected()
}

/// A preorder squashed to a poset on its mutual-relation classes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuotientResult {
    /// Poset on the blocks, block `a` being `blocks[a]`.
    pub poset: Relation,
    /// Classes of `i ≤ j ∧ j ≤ i`, each sorted, ordered by smallest element.
    pub blocks: Vec<Vec<usize>>,
}

pub fn quotient(r: &Relation) -> Result<QuotientResult, OrderError> {
    if !r.is_preorder() {
        return Err(OrderError::NotPreorder(*r));
    }
    let n = r.len();
    let mut block_of = vec![usize::MAX; n];
    let mut blocks: Vec<Vec<usize>> = Vec::new();
    for i in 0..n {
        if block_of[i] != usize::MAX {
            continue;
        }
        let members: Vec<usize> = (i..n).filter(|&j| r.related(i, j) && r.related(j, i)).collect();
        for &j in &members {
            block_of[j] = blocks.len();
        }
        blocks.push(members);
    }
    let pairs: Vec<(usize, usize)> = (0..blocks.len())
        .flat_map(|a| (0..blocks.len()).map(move |b| (a, b)))
        .filter(|&(a, b)| r.related(blocks[a][0], blocks[b][0]))
        .collect();
    let poset = Relation::from_pairs(blocks.len(), &pairs).expect("block indices are in range");
    Ok(QuotientResult { poset, blocks })
}

/// Smallest [`Relation::code`] over all relabellings of the points.
pub fn canonical_code(r: &Relation) -> u64 {
    let n = r.len();
    let mut perm: Vec<usize> = (0..n).collect();
    let mut best = u64::MAX;
    heap_permutations(&mut perm, n, &mut |p| best = best.min(r.permute(p).code()));
    best
}

/// Number of relabellings fixing `r`.
pub fn stabilizer_order(r: &Relation) -> u64 {
    let n = r.len();
    let mut perm: Vec<usize> = (0..n).collect();
    let mut count = 0;
    heap_permutations(&mut perm, n, &mut |p| {
        if r.permute(p) == *r {
            count += 1;
        }
    });
    count
}

fn heap_permutations(perm: &mut [usize], k: usize, visit: &mut impl FnMut(&[usize])) {
    if k <= 1 {
        visit(perm);
        return;
    }
    for i in 0..k - 1 {
        heap_permutations(perm, k - 1, visit);
        if k % 2 == 0 {
            perm.swap(i, k - 1);
        } else {
            perm.swap(0, k - 1);
        }
    }
    heap_permutations(perm, k - 1, visit);
}

/// Canonical representatives (one per isomorphism class), sorted by
/// `(n, canonical code)`.
pub fn unlabelled_representatives(structures: &[Relation]) -> Result<Vec<Relation>, OrderError> {
    if let Some(r) = structures.iter().find(|r| r.len() > OVERRIDE_CAP) {
        return Err(OrderError::Range {
            n: r.len(),
            cap: OVERRIDE_CAP,
        });
    }
    let codes: BTreeSet<(usize, u64)> = structures
        .par_iter()
        .map(|r| (r.len(), canonical_code(r)))
        .collect();
    Ok(codes.into_iter().map(|(n, code)| decode(n, code)).collect())
}

/// Number of isomorphism classes among `structures`.
pub fn count_unlabelled(structures: &[Relation]) -> Result<usize, OrderError> {
    Ok(unlabelled_representatives(structures)?.len())
}

fn decode(n: usize, code: u64) -> Relation {
    let mut rows = vec![0u8; n];
    for i in 0..n {
        for j in 0..n {
            let bit = n * n - 1 - (i * n + j);
            if code >> bit & 1 == 1 {
                rows[i] |= 1 << j;
            }
        }
    }
    Relation::from_rows(n, &rows).expect("codes come from reflexive relations")
}

/// Outcome of checking `t_n = Σ_k S(n, k)·d_k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StirlingIdentityReport {
    pub n: usize,
    /// Connected preorders on `n` points, counted directly.
    pub connected_preorders: u64,
    /// `d_1..=d_n`: connected posets on `k` points.
    pub connected_posets: Vec<u64>,
    /// `Σ_k S(n, k)·d_k`.
    pub stirling_sum: u64,
    pub fibers: Vec<Fiber>,
}

/// Connected preorders on `n` points whose quotient has `blocks` blocks.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Fiber {
    pub blocks: usize,
    pub counted: u64,
    /// `S(n, k)·d_k`
    pub expected: u64,
}

impl StirlingIdentityReport {
    pub fn holds(&self) -> bool {
        self.connected_preorders == self.stirling_sum
            && self.fibers.iter().all(|f| f.counted == f.expected)
            && self.fibers.iter().map(|f| f.counted).sum::<u64>() == self.connected_preorders
    }
}

pub fn verify_stirling_identity(n: usize) -> Result<StirlingIdentityReport, OrderError> {
    check_cap(n, DEFAULT_CAP)?;
    let table = stirling2_table(n.max(1));
    let connected_posets: Vec<u64> = (1..=n)
        .map(|k| Ok(enumerate_posets(k)?.iter().filter(|r| r.is_connected()).count() as u64))
        .collect::<Result<_, OrderError>>()?;
    let mut counted = vec![0u64; n + 1];
    let mut connected_preorders = 0;
    for r in enumerate_preorders(n)?.iter().filter(|r| r.is_connected()) {
        connected_preorders += 1;
        counted[quotient(r)?.blocks.len()] += 1;
    }
    let stirling = |k: usize| -> u64 { table.get(n, k).try_into().expect("S(n,k) fits in u64 for n <= 6") };
    let fibers: Vec<Fiber> = (1..=n)
        .map(|k| Fiber {
            blocks: k,
            counted: counted[k],
            expected: stirling(k) * connected_posets[k - 1],
        })
        .collect();
    Ok(StirlingIdentityReport {
        n,
        connected_preorders,
        stirling_sum: fibers.iter().map(|f| f.expected).sum(),
        connected_posets,
        fibers,
    })
}

/// Labelled totals compared with the exponential of the connected counts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExpFormulaCheck {
    /// Index `k` holds the count on `k` points; index 0 is 0 for connected
    /// and 1 for totals.
    pub connected: Vec<u64>,
    pub direct_totals: Vec<u64>,
    pub exp_totals: Vec<Rational>,
}

impl ExpFormulaCheck {
    pub fn holds(&self) -> bool {
        self.direct_totals.len() == self.exp_totals.len()
            && self
                .direct_totals
                .iter()
                .zip(&self.exp_totals)
                .all(|(d, e)| Rational::from_integer(BigInt::from(*d)) == *e)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConnectedTotalsReport {
    pub posets: ExpFormulaCheck,
    pub preorders: ExpFormulaCheck,
}

impl ConnectedTotalsReport {
    pub fn holds(&self) -> bool {
        self.posets.holds() && self.preorders.holds()
    }
}

fn exp_formula(n_max: usize, enumerate: impl Fn(usize) -> Result<Vec<Relation>, OrderError>) -> Result<ExpFormulaCheck, OrderError> {
    let mut connected = vec![0u64];
    let mut direct_totals = vec![1u64];
    for k in 1..=n_max {
        let all = enumerate(k)?;
        direct_totals.push(all.len() as u64);
        connected.push(all.iter().filter(|r| r.is_connected()).count() as u64);
    }
    let egf: Vec<Rational> = connected.iter().map(|&c| Rational::from_integer(c.into())).collect();
    let total = TruncSeries::from_egf(n_max, &egf)
        .and_then(|s| s.exp())
        .expect("connected EGF has zero constant term");
    let exp_totals = (0..=n_max)
        .map(|k| total.egf_coeff(k).unwrap_or_else(|_| Rational::zero()))
        .collect();
    Ok(ExpFormulaCheck {
        connected,
        direct_totals,
        exp_totals,
    })
}

/// Exponentiates connected-count EGFs and compares with direct totals, for
/// posets and for preorders.
pub fn connected_totals_cross_check(n_max: usize) -> Result<ConnectedTotalsReport, OrderError> {
    check_cap(n_max, DEFAULT_CAP)?;
    Ok(ConnectedTotalsReport {
        posets: exp_formula(n_max, enumerate_posets)?,
        preorders: exp_formula(n_max, enumerate_preorders)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn connected_count(rs: &[Relation]) -> usize {
        rs.iter().filter(|r| r.is_connected()).count()
    }

    #[test]
    fn small_counts() {
        assert_eq!(enumerate_preorders(1).unwrap().len(), 1);
        assert_eq!(enumerate_preorders(2).unwrap().len(), 4);
        assert_eq!(enumerate_posets(1).unwrap().len(), 1);
        assert_eq!(enumerate_preorders(0).unwrap().len(), 1);
        let p3 = enumerate_posets(3).unwrap();
        assert_eq!(connected_count(&p3), 12);
        assert_eq!(p3.len(), 19);
    }

    #[test]
    fn four_point_counts() {
        let pre = enumerate_preorders(4).unwrap();
        let pos = enumerate_posets(4).unwrap();
        assert_eq!(pre.len(), 355);
        assert_eq!(connected_count(&pre), 233);
        assert_eq!(pos.len(), 219);
        assert_eq!(connected_count(&pos), 146);
        assert!(pre.iter().all(Relation::is_preorder));
        assert!(pos.iter().all(Relation::is_poset));
    }

    #[test]
    fn cap_is_enforced() {
        assert_eq!(enumerate_preorders(6).unwrap_err(), OrderError::Range { n: 6, cap: 5 });
        assert_eq!(
            enumerate_preorders_capped(7, 7).unwrap_err(),
            OrderError::Range { n: 7, cap: 6 }
        );
        assert!(verify_stirling_identity(6).is_err());
    }

    #[test]
    fn quotient_examples() {
        let complete = Relation::from_pairs(2, &[(0, 1), (1, 0)]).unwrap();
        let q = quotient(&complete).unwrap();
        assert_eq!(q.blocks, vec![vec![0, 1]]);
        assert_eq!(q.poset, Relation::identity(1));
        for p in enumerate_posets(3).unwrap() {
            let q = quotient(&p).unwrap();
            assert_eq!(q.poset, p);
            assert_eq!(q.blocks.len(), 3);
        }
        let broken = Relation::from_pairs(3, &[(0, 1), (1, 2)]).unwrap();
        assert!(matches!(quotient(&broken), Err(OrderError::NotPreorder(_))));
    }

    #[test]
    fn quotient_idempotent_and_preserves_connectivity() {
        for n in 1..=4 {
            for r in enumerate_preorders(n).unwrap() {
                let q = quotient(&r).unwrap();
                assert!(q.poset.is_poset());
                assert_eq!(q.poset.is_connected(), r.is_connected());
                let again = quotient(&q.poset).unwrap();
                assert!(again.blocks.iter().all(|b| b.len() == 1));
                assert_eq!(again.poset, q.poset);
            }
        }
    }

    #[test]
    fn stirling_identity_four() {
        let report = verify_stirling_identity(4).unwrap();
        assert!(report.holds());
        assert_eq!(report.connected_preorders, 233);
        assert_eq!(report.connected_posets, vec![1, 2, 12, 146]);
        let fibers: Vec<u64> = report.fibers.iter().map(|f| f.counted).collect();
        assert_eq!(fibers, vec![1, 14, 72, 146]);
        let one = verify_stirling_identity(1).unwrap();
        assert!(one.holds());
        assert_eq!(one.connected_preorders, 1);
    }

    #[test]
    fn unlabelled_counts() {
        let counts: Vec<usize> = (1..=4)
            .map(|n| count_unlabelled(&enumerate_preorders(n).unwrap()).unwrap())
            .collect();
        assert_eq!(counts, vec![1, 3, 9, 33]);
    }

    #[test]
    fn orbit_stabilizer() {
        for n in 1..=4usize {
            let all = enumerate_preorders(n).unwrap();
            let reps = unlabelled_representatives(&all).unwrap();
            let n_fact: u64 = (1..=n as u64).product();
            let labelled: u64 = reps.iter().map(|r| n_fact / stabilizer_order(r)).sum();
            assert_eq!(labelled, all.len() as u64);
            for r in &reps {
                assert_eq!(canonical_code(r), r.code());
            }
        }
    }

    #[test]
    fn exponential_formula() {
        let report = connected_totals_cross_check(4).unwrap();
        assert!(report.holds());
        assert_eq!(report.posets.direct_totals, vec![1, 1, 3, 19, 219]);
        assert_eq!(report.preorders.direct_totals, vec![1, 1, 4, 29, 355]);
        assert_eq!(report.preorders.connected, vec![0, 1, 3, 19, 233]);
        let one = connected_totals_cross_check(1).unwrap();
        assert_eq!(one.posets.connected[1], one.posets.direct_totals[1]);
    }
}
