use std::collections::BTreeMap;

use super::perm::{class_group_order, equal_runs, factorial_u64, for_each_class_permutation};
use super::OracleError;

/// A vacuum diagram as a bipartite multigraph: `incidence[i][j]` legs of
/// line `i` are attached to vertex `j`.
///
/// Legs are not tracked individually. Line and vertex arities are the row
/// and column sums of the incidence matrix.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Diagram {
    line_arities: Vec<usize>,
    vertex_arities: Vec<usize>,
    incidence: Vec<Vec<u8>>,
}

impl Diagram {
    pub fn new(
        line_arities: Vec<usize>,
        vertex_arities: Vec<usize>,
        incidence: Vec<Vec<u8>>,
    ) -> Result<Self, OracleError> {
        let bad = |msg: String| Err(OracleError::InvalidDiagram(msg));
        if incidence.len() != line_arities.len() {
            return bad(format!(
                "{} incidence rows for {} lines",
                incidence.len(),
                line_arities.len()
            ));
        }
        if line_arities.iter().chain(&vertex_arities).any(|&a| a == 0) {
            return bad("arities must be at least 1".into());
        }
        for (i, row) in incidence.iter().enumerate() {
            if row.len() != vertex_arities.len() {
                return bad(format!("row {i} has {} entries", row.len()));
            }
            let s: usize = row.iter().map(|&e| e as usize).sum();
            if s != line_arities[i] {
                return bad(format!("line {i} has arity {} but {s} attached legs", line_arities[i]));
            }
        }
        for (j, &n) in vertex_arities.iter().enumerate() {
            let s: usize = incidence.iter().map(|row| row[j] as usize).sum();
            if s != n {
                return bad(format!("vertex {j} has arity {n} but {s} attached legs"));
            }
        }
        Ok(Self {
            line_arities,
            vertex_arities,
            incidence,
        })
    }

    pub(crate) fn from_parts_unchecked(
        line_arities: Vec<usize>,
        vertex_arities: Vec<usize>,
        incidence: Vec<Vec<u8>>,
    ) -> Self {
        Self {
            line_arities,
            vertex_arities,
            incidence,
        }
    }

    /// The diagram with no lines and no vertices.
    pub fn empty() -> Self {
        Self::from_parts_unchecked(Vec::new(), Vec::new(), Vec::new())
    }

    pub fn line_arities(&self) -> &[usize] {
        &self.line_arities
    }

    pub fn vertex_arities(&self) -> &[usize] {
        &self.vertex_arities
    }

    pub fn incidence(&self) -> &[Vec<u8>] {
        &self.incidence
    }

    pub fn legs(&self) -> usize {
        self.line_arities.iter().sum()
    }

    pub fn is_empty(&self) -> bool {
        self.line_arities.is_empty() && self.vertex_arities.is_empty()
    }

    /// One component over all line and vertex nodes. The empty diagram is
    /// not connected.
    pub fn is_connected(&self) -> bool {
        let (l, v) = (self.line_arities.len(), self.vertex_arities.len());
        if l + v == 0 {
            return false;
        }
        // nodes 0..l are lines, l..l+v vertices
        let mut seen = vec![false; l + v];
        let mut stack = vec![0usize];
        seen[0] = true;
        while let Some(node) = stack.pop() {
            let neighbours: Vec<usize> = if node < l {
                (0..v).filter(|&j| self.incidence[node][j] > 0).map(|j| l + j).collect()
            } else {
                (0..l).filter(|&i| self.incidence[i][node - l] > 0).collect()
            };
            for nb in neighbours {
                if !seen[nb] {
                    seen[nb] = true;
                    stack.push(nb);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    /// Renames line `i` to `line_perm[i]` and vertex `j` to `vertex_perm[j]`.
    pub fn relabel(&self, line_perm: &[usize], vertex_perm: &[usize]) -> Self {
        let (l, v) = (self.line_arities.len(), self.vertex_arities.len());
        let mut line_arities = vec![0; l];
        let mut vertex_arities = vec![0; v];
        let mut incidence = vec![vec![0u8; v]; l];
        for i in 0..l {
            line_arities[line_perm[i]] = self.line_arities[i];
            for j in 0..v {
                incidence[line_perm[i]][vertex_perm[j]] = self.incidence[i][j];
            }
        }
        for j in 0..v {
            vertex_arities[vertex_perm[j]] = self.vertex_arities[j];
        }
        Self::from_parts_unchecked(line_arities, vertex_arities, incidence)
    }

    /// Nodes sorted by arity (stable), so that arity classes are contiguous.
    fn sorted_by_arity(&self) -> Self {
        let mut rows: Vec<usize> = (0..self.line_arities.len()).collect();
        rows.sort_by_key(|&i| self.line_arities[i]);
        let mut cols: Vec<usize> = (0..self.vertex_arities.len()).collect();
        cols.sort_by_key(|&j| self.vertex_arities[j]);
        Self::from_parts_unchecked(
            rows.iter().map(|&i| self.line_arities[i]).collect(),
            cols.iter().map(|&j| self.vertex_arities[j]).collect(),
            rows.iter()
                .map(|&i| cols.iter().map(|&j| self.incidence[i][j]).collect())
                .collect(),
        )
    }

    /// Lexicographically smallest incidence matrix (row-major) over all
    /// arity-preserving relabellings of lines and vertices.
    ///
    /// For a fixed ordering of one side, the best ordering of the other side
    /// is obtained by sorting within each arity class, so only one side is
    /// searched exhaustively: whichever has the smaller symmetric group.
    pub fn canonical(&self) -> Self {
        let base = self.sorted_by_arity();
        let row_classes = equal_runs(&base.line_arities);
        let col_classes = equal_runs(&base.vertex_arities);
        let row_group = class_group_order(&row_classes);
        let col_group = class_group_order(&col_classes);
        let l = base.line_arities.len();
        let v = base.vertex_arities.len();
        let mut best: Option<Vec<Vec<u8>>> = None;
        if row_group <= col_group {
            for_each_class_permutation(&row_classes, l, |p| {
                let rows: Vec<Vec<u8>> = p.iter().map(|&i| base.incidence[i].clone()).collect();
                let m = sort_columns_within(&rows, &col_classes, v);
                if best.as_ref().is_none_or(|b| m < *b) {
                    best = Some(m);
                }
            });
        } else {
            for_each_class_permutation(&col_classes, v, |p| {
                let mut m: Vec<Vec<u8>> = base
                    .incidence
                    .iter()
                    .map(|row| p.iter().map(|&j| row[j]).collect())
                    .collect();
                for r in &row_classes {
                    m[r.clone()].sort();
                }
                if best.as_ref().is_none_or(|b| m < *b) {
                    best = Some(m);
                }
            });
        }
        Self::from_parts_unchecked(
            base.line_arities,
            base.vertex_arities,
            best.unwrap_or_default(),
        )
    }

    /// Number of arity-preserving node relabellings `(σ, τ)` that leave the
    /// incidence matrix unchanged.
    pub fn node_automorphisms(&self) -> u64 {
        let base = self.sorted_by_arity();
        let row_classes = equal_runs(&base.line_arities);
        let col_classes = equal_runs(&base.vertex_arities);
        let l = base.line_arities.len();
        let column = |m: &[Vec<u8>], j: usize| -> Vec<u8> { m.iter().map(|row| row[j]).collect() };
        // per column class: multiset of column vectors of the original
        let reference: Vec<BTreeMap<Vec<u8>, usize>> = col_classes
            .iter()
            .map(|r| {
                let mut counts = BTreeMap::new();
                for j in r.clone() {
                    *counts.entry(column(&base.incidence, j)).or_insert(0) += 1;
                }
                counts
            })
            .collect();
        let tau_count: u64 = reference
            .iter()
            .flat_map(|counts| counts.values())
            .map(|&c| factorial_u64(c))
            .product();
        let mut total = 0u64;
        for_each_class_permutation(&row_classes, l, |p| {
            let permuted: Vec<Vec<u8>> = p.iter().map(|&i| base.incidence[i].clone()).collect();
            let matches = col_classes.iter().zip(&reference).all(|(r, counts)| {
                let mut here = BTreeMap::new();
                for j in r.clone() {
                    *here.entry(column(&permuted, j)).or_insert(0) += 1;
                }
                here == *counts
            });
            if matches {
                total += tau_count;
            }
        });
        total
    }

    /// Order of the leg-level automorphism group:
    /// node automorphisms times `Π e_ij!` for the regroupings of parallel legs.
    pub fn aut_order(&self) -> u64 {
        let parallel: u64 = self
            .incidence
            .iter()
            .flatten()
            .map(|&e| factorial_u64(e as usize))
            .product();
        self.node_automorphisms() * parallel
    }

    /// `|Aut|` by literal enumeration at leg level.
    ///
    /// Fixes one concrete pairing of line legs with vertex legs realizing the
    /// incidence matrix, then runs over every element of the line-side group
    /// (arity-preserving line permutations composed with leg permutations
    /// inside each line). Each such element determines a unique map on vertex
    /// legs; it is an automorphism exactly when that map permutes whole
    /// vertices of equal arity.
    pub fn aut_order_brute_force(&self) -> u64 {
        let base = self.sorted_by_arity();
        let legs = base.legs();
        let line_start = offsets(&base.line_arities);
        let vertex_start = offsets(&base.vertex_arities);
        let mut vertex_of_leg = vec![0usize; legs];
        for (j, &n) in base.vertex_arities.iter().enumerate() {
            for leg in vertex_start[j]..vertex_start[j] + n {
                vertex_of_leg[leg] = j;
            }
        }
        // pairing: line leg -> vertex leg
        let mut pairing = vec![0usize; legs];
        let mut next_line = line_start.clone();
        let mut next_vertex = vertex_start.clone();
        for (i, row) in base.incidence.iter().enumerate() {
            for (j, &e) in row.iter().enumerate() {
                for _ in 0..e {
                    pairing[next_line[i]] = next_vertex[j];
                    next_line[i] += 1;
                    next_vertex[j] += 1;
                }
            }
        }
        let mut inverse = vec![0usize; legs];
        for (a, &b) in pairing.iter().enumerate() {
            inverse[b] = a;
        }

        let row_classes = equal_runs(&base.line_arities);
        let l = base.line_arities.len();
        let mut count = 0u64;
        let mut alpha = vec![0usize; legs];
        // leg permutations inside each line, enumerated as a product
        let internal: Vec<Vec<Vec<usize>>> = base
            .line_arities
            .iter()
            .map(|&m| all_permutations(m))
            .collect();
        for_each_class_permutation(&row_classes, l, |sigma| {
            let mut choice = vec![0usize; l];
            loop {
                for i in 0..l {
                    let target = sigma[i];
                    for (k, &pk) in internal[i][choice[i]].iter().enumerate() {
                        alpha[line_start[i] + k] = line_start[target] + pk;
                    }
                }
                // β = pairing ∘ α ∘ pairing⁻¹ on vertex legs
                let mut image_vertex = vec![usize::MAX; base.vertex_arities.len()];
                let ok = (0..legs).all(|w| {
                    let b = pairing[alpha[inverse[w]]];
                    let (from, to) = (vertex_of_leg[w], vertex_of_leg[b]);
                    if base.vertex_arities[from] != base.vertex_arities[to] {
                        return false;
                    }
                    if image_vertex[from] == usize::MAX {
                        image_vertex[from] = to;
                    }
                    image_vertex[from] == to
                });
                if ok {
                    count += 1;
                }
                // odometer over internal choices
                let mut i = 0;
                loop {
                    if i == l {
                        return;
                    }
                    choice[i] += 1;
                    if choice[i] < internal[i].len() {
                        break;
                    }
                    choice[i] = 0;
                    i += 1;
                }
            }
        });
        count
    }
}

fn offsets(arities: &[usize]) -> Vec<usize> {
    let mut out = Vec::with_capacity(arities.len());
    let mut acc = 0;
    for &a in arities {
        out.push(acc);
        acc += a;
    }
    out
}

fn all_permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    for_each_class_permutation(&[0..n], n, |p| out.push(p.to_vec()));
    out
}

/// Sorts columns within each class by their column vectors (top to bottom),
/// which minimizes the row-major reading for a fixed row order.
fn sort_columns_within(rows: &[Vec<u8>], classes: &[std::ops::Range<usize>], v: usize) -> Vec<Vec<u8>> {
    let mut cols: Vec<Vec<u8>> = (0..v).map(|j| rows.iter().map(|r| r[j]).collect()).collect();
    for r in classes {
        cols[r.clone()].sort();
    }
    (0..rows.len())
        .map(|i| cols.iter().map(|c| c[i]).collect())
        .collect()
}
