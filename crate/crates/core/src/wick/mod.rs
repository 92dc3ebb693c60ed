//! Brute-force vacuum diagram enumeration.
//!
//! Diagrams are enumerated as integer incidence matrices between line nodes
//! and vertex nodes, deduplicated by a canonical form, and weighted by
//! `1/|Aut|` where `Aut` acts on individual legs. Summing
//! `amplitudes/|Aut|` over all diagrams must reproduce the partition
//! function exactly; this module does so without touching the series
//! engine.

mod diagram;
mod perm;

pub use diagram::Diagram;

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rayon::prelude::*;
use thiserror::Error;

use crate::qft::{eps_leg_bound, pairing_bound, ModelSpec, PartitionSeries, QftError};
use crate::series::{BiPoly, Coefficient, Rational};

/// Largest number of legs the oracle will enumerate.
pub const LEG_CAP: usize = 8;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("{legs} legs exceeds the diagram cap of {cap}")]
    Range { legs: usize, cap: usize },
    #[error("invalid diagram: {0}")]
    InvalidDiagram(String),
    #[error(transparent)]
    Model(#[from] QftError),
}

/// An unlabelled diagram with its automorphism data.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymmetryDatum {
    pub diagram: Diagram,
    pub aut_order: u64,
    pub symmetry_number: Rational,
    pub connected: bool,
}

impl SymmetryDatum {
    pub fn new(diagram: Diagram) -> Self {
        let diagram = diagram.canonical();
        let aut_order = diagram.aut_order();
        Self {
            symmetry_number: Rational::new(BigInt::one(), aut_order.into()),
            connected: diagram.is_connected(),
            aut_order,
            diagram,
        }
    }

    /// Product of the model's line and vertex amplitudes over all nodes.
    pub fn weight(&self, model: &ModelSpec) -> BiPoly {
        let lines = self.diagram.line_arities().iter().map(|&m| model.lines().amplitude(m));
        let vertices = self.diagram.vertex_arities().iter().map(|&n| model.vertices().amplitude(n));
        lines.chain(vertices).fold(BiPoly::one(), |acc, a| acc.mul(&a))
    }
}

/// Multisets (non-decreasing lists) of parts from `allowed` summing to `total`.
fn multisets(total: usize, allowed: &[usize]) -> Vec<Vec<usize>> {
    fn go(rest: usize, allowed: &[usize], current: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if rest == 0 {
            out.push(current.clone());
            return;
        }
        for (idx, &p) in allowed.iter().enumerate() {
            if p <= rest {
                current.push(p);
                go(rest - p, &allowed[idx..], current, out);
                current.pop();
            }
        }
    }
    let mut out = Vec::new();
    go(total, allowed, &mut Vec::new(), &mut out);
    out
}

/// Non-negative integer matrices with the given row and column sums. Rows of
/// equal arity are generated in non-decreasing order, which loses no
/// isomorphism class.
fn matrices(rows: &[usize], cols: &[usize]) -> Vec<Vec<Vec<u8>>> {
    fn fill_row(
        j: usize,
        left: usize,
        row: &mut Vec<u8>,
        remaining: &[usize],
        out: &mut Vec<Vec<u8>>,
    ) {
        if j == remaining.len() {
            if left == 0 {
                out.push(row.clone());
            }
            return;
        }
        let tail: usize = remaining[j + 1..].iter().sum();
        let lo = left.saturating_sub(tail);
        for e in lo..=left.min(remaining[j]) {
            row[j] = e as u8;
            fill_row(j + 1, left - e, row, remaining, out);
        }
        row[j] = 0;
    }
    fn go(
        i: usize,
        rows: &[usize],
        remaining: &mut Vec<usize>,
        current: &mut Vec<Vec<u8>>,
        out: &mut Vec<Vec<Vec<u8>>>,
    ) {
        if i == rows.len() {
            if remaining.iter().all(|&r| r == 0) {
                out.push(current.clone());
            }
            return;
        }
        let mut candidates = Vec::new();
        fill_row(0, rows[i], &mut vec![0; remaining.len()], remaining, &mut candidates);
        for row in candidates {
            if i > 0 && rows[i] == rows[i - 1] && row < current[i - 1] {
                continue;
            }
            for (r, &e) in remaining.iter_mut().zip(&row) {
                *r -= e as usize;
            }
            current.push(row);
            go(i + 1, rows, remaining, current, out);
            let row = current.pop().expect("pushed above");
            for (r, &e) in remaining.iter_mut().zip(&row) {
                *r += e as usize;
            }
        }
    }
    let mut out = Vec::new();
    go(0, rows, &mut cols.to_vec(), &mut Vec::new(), &mut out);
    out
}

/// Every unlabelled diagram with exactly `legs` legs whose line arities come
/// from `line_arities` and vertex arities from `vertex_arities`, in canonical
/// form and sorted.
pub fn diagrams_with_legs(
    legs: usize,
    line_arities: &[usize],
    vertex_arities: &[usize],
) -> Result<Vec<Diagram>, OracleError> {
    if legs > LEG_CAP {
        return Err(OracleError::Range { legs, cap: LEG_CAP });
    }
    let line_sets = multisets(legs, line_arities);
    let vertex_sets = multisets(legs, vertex_arities);
    let cells: Vec<(&Vec<usize>, &Vec<usize>)> = line_sets
        .iter()
        .flat_map(|l| vertex_sets.iter().map(move |v| (l, v)))
        .collect();
    // distinct cells hold distinct arity multisets, so per-cell dedup suffices
    let per_cell: Vec<BTreeSet<Diagram>> = cells
        .par_iter()
        .map(|(l, v)| {
            matrices(l, v)
                .into_iter()
                .map(|m| Diagram::from_parts_unchecked(l.to_vec(), v.to_vec(), m).canonical())
                .collect()
        })
        .collect();
    let mut all: Vec<Diagram> = per_cell.into_iter().flatten().collect();
    all.sort();
    Ok(all)
}

/// All unlabelled diagrams whose amplitude product has a term of
/// `ε`-degree exactly `eps_degree`.
pub fn enumerate_diagrams(model: &ModelSpec, eps_degree: usize) -> Result<Vec<SymmetryDatum>, OracleError> {
    let legs_max = eps_leg_bound(model, eps_degree)?;
    if legs_max > LEG_CAP {
        return Err(OracleError::Range {
            legs: legs_max,
            cap: LEG_CAP,
        });
    }
    let mut out = Vec::new();
    for legs in 0..=legs_max {
        let lines = model.lines().arities_up_to(legs);
        let vertices = model.vertices().arities_up_to(legs);
        for d in diagrams_with_legs(legs, &lines, &vertices)? {
            let datum = SymmetryDatum::new(d);
            let w = datum.weight(model);
            if w.terms().any(|(&(e, _), _)| e as usize == eps_degree) {
                out.push(datum);
            }
        }
    }
    Ok(out)
}

/// Keeps the connected diagrams.
pub fn connected_filter(data: &[SymmetryDatum]) -> Vec<SymmetryDatum> {
    data.iter().filter(|d| d.connected).cloned().collect()
}

/// Partition-function table recomputed as `Σ weight/|Aut|` over diagrams,
/// truncated at `ε^N`, `g^J`.
pub fn oracle_table(model: &ModelSpec, eps_order: usize, g_order: usize) -> Result<PartitionSeries, OracleError> {
    oracle_sum(model, eps_order, g_order, |_| true)
}

/// Like [`oracle_table`] but over connected diagrams only.
pub fn oracle_connected_table(
    model: &ModelSpec,
    eps_order: usize,
    g_order: usize,
) -> Result<PartitionSeries, OracleError> {
    oracle_sum(model, eps_order, g_order, |d| d.connected)
}

fn oracle_sum(
    model: &ModelSpec,
    eps_order: usize,
    g_order: usize,
    keep: impl Fn(&SymmetryDatum) -> bool,
) -> Result<PartitionSeries, OracleError> {
    let legs_max = pairing_bound(model, eps_order, g_order)?;
    if legs_max > LEG_CAP {
        return Err(OracleError::Range {
            legs: legs_max,
            cap: LEG_CAP,
        });
    }
    let mut total = BiPoly::zero();
    for legs in 0..=legs_max {
        let lines = model.lines().arities_up_to(legs);
        let vertices = model.vertices().arities_up_to(legs);
        for d in diagrams_with_legs(legs, &lines, &vertices)? {
            let datum = SymmetryDatum::new(d);
            if !keep(&datum) {
                continue;
            }
            let w = datum.weight(model).truncate(eps_order, g_order);
            total.add_assign(&w.scale(&datum.symmetry_number));
        }
    }
    Ok(PartitionSeries::from_bipoly(&total, eps_order, g_order))
}

/// `[ε^i g^j] Z` from the diagram sum.
pub fn oracle_coefficient(model: &ModelSpec, eps_degree: usize, g_degree: usize) -> Result<Rational, OracleError> {
    Ok(oracle_table(model, eps_degree, g_degree)?.coeff(eps_degree, g_degree))
}

/// Checks `aut_order` against [`Diagram::aut_order_brute_force`] for every
/// diagram with at most `max_legs` legs and arbitrary arities. Returns the
/// number of diagrams checked, or the first disagreement.
pub fn validate_aut_closed_form(max_legs: usize) -> Result<usize, (Diagram, u64, u64)> {
    let mut checked = 0;
    for legs in 0..=max_legs {
        let arities: Vec<usize> = (1..=legs).collect();
        for d in diagrams_with_legs(legs, &arities, &arities).map_err(|_| (Diagram::empty(), 0, 0))? {
            let closed = d.aut_order();
            let brute = d.aut_order_brute_force();
            if closed != brute {
                return Err((d, closed, brute));
            }
            checked += 1;
        }
    }
    Ok(checked)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qft::{free_energy, partition_function, BuiltinModel};
    use rand::seq::SliceRandom;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn r(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    #[test]
    fn multisets_and_matrices() {
        assert_eq!(multisets(3, &[1, 2, 3]), vec![vec![1, 1, 1], vec![1, 2], vec![3]]);
        assert_eq!(multisets(0, &[1]), vec![Vec::<usize>::new()]);
        assert!(multisets(3, &[2]).is_empty());
        // 2x2 with unit margins: only the identity survives row ordering
        assert_eq!(matrices(&[1, 1], &[1, 1]), vec![vec![vec![0, 1], vec![1, 0]]]);
        assert_eq!(matrices(&[2], &[1, 1]), vec![vec![vec![1, 1]]]);
    }

    #[test]
    fn diagram_validation() {
        assert!(Diagram::new(vec![2], vec![2], vec![vec![2]]).is_ok());
        assert!(Diagram::new(vec![2], vec![2], vec![vec![1]]).is_err());
        assert!(Diagram::new(vec![1], vec![1, 1], vec![vec![1, 0]]).is_err());
        assert!(Diagram::new(vec![0], vec![], vec![vec![]]).is_err());
    }

    #[test]
    fn bell_squared_degree_two() {
        let model = BuiltinModel::BellSquared.spec();
        let data = enumerate_diagrams(&model, 2).unwrap();
        assert_eq!(data.len(), 4);
        let sum: Rational = data.iter().map(|d| d.symmetry_number.clone()).sum();
        assert_eq!(sum, r(2, 1));
        let connected: Rational = connected_filter(&data).iter().map(|d| d.symmetry_number.clone()).sum();
        let z = partition_function(&model, 2, 0).unwrap();
        assert_eq!(connected, free_energy(&z).unwrap().coeff(2, 0));
        assert_eq!(connected, r(3, 2));
    }

    #[test]
    fn bell_squared_unlabelled_counts() {
        let model = BuiltinModel::BellSquared.spec();
        let counts: Vec<usize> = (0..=4).map(|n| enumerate_diagrams(&model, n).unwrap().len()).collect();
        assert_eq!(counts, vec![1, 1, 4, 10, 33]);
    }

    #[test]
    fn empty_diagram() {
        let model = BuiltinModel::BellSquared.spec();
        let data = enumerate_diagrams(&model, 0).unwrap();
        assert_eq!(data.len(), 1);
        assert!(data[0].diagram.is_empty());
        assert!(!data[0].connected);
        assert_eq!(data[0].aut_order, 1);
        assert!(connected_filter(&data).is_empty());
        for m in BuiltinModel::ALL {
            assert_eq!(oracle_coefficient(&m.spec(), 0, 0).unwrap(), r(1, 1));
        }
    }

    #[test]
    fn phi4_figure_eight() {
        let model = BuiltinModel::Phi4.spec();
        let data = enumerate_diagrams(&model, 2).unwrap();
        let figure_eight: Vec<_> = data.iter().filter(|d| d.diagram.vertex_arities() == [4]).collect();
        assert_eq!(figure_eight.len(), 1);
        assert_eq!(figure_eight[0].aut_order, 8);
        assert!(figure_eight[0].connected);
        assert_eq!(oracle_coefficient(&model, 2, 1).unwrap(), r(1, 8));
        assert_eq!(oracle_coefficient(&model, 4, 2).unwrap(), r(35, 384));
    }

    #[test]
    fn partitions_model_cubic() {
        let model = BuiltinModel::Partitions.spec();
        let table = oracle_table(&model, 3, 3).unwrap();
        assert_eq!(table.eps_slice(3), vec![r(0, 1), r(1, 6), r(1, 2), r(1, 6)]);
    }

    #[test]
    fn leg_cap_enforced() {
        let model = BuiltinModel::BellSquared.spec();
        assert!(matches!(
            enumerate_diagrams(&model, 9),
            Err(OracleError::Range { legs: 9, cap: 8 })
        ));
        assert!(matches!(
            oracle_coefficient(&BuiltinModel::Phi4.spec(), 6, 3),
            Err(OracleError::Range { .. })
        ));
    }

    #[test]
    fn closed_form_automorphisms_match_brute_force() {
        let checked = validate_aut_closed_form(5).unwrap();
        assert!(checked > 100);
    }

    #[test]
    fn canonical_form_is_invariant() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let arities: Vec<usize> = (1..=5).collect();
        let diagrams = diagrams_with_legs(5, &arities, &arities).unwrap();
        for d in &diagrams {
            assert_eq!(&d.canonical(), d);
            let mut lp: Vec<usize> = (0..d.line_arities().len()).collect();
            let mut vp: Vec<usize> = (0..d.vertex_arities().len()).collect();
            for _ in 0..3 {
                lp.shuffle(&mut rng);
                vp.shuffle(&mut rng);
                let moved = d.relabel(&lp, &vp);
                assert_eq!(&moved.canonical(), d);
                assert_eq!(moved.aut_order(), d.aut_order());
            }
        }
    }
}
