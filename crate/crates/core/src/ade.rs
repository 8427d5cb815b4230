//! Simply laced Dynkin types, their graphs, plumbing intersection forms and
//! exact signatures of symmetric integer forms.
//!
//! Signatures are computed by congruence diagonalization over `BigRational`,
//! so the result is exact for any integer input (Sylvester's law of inertia).

use std::fmt;
use std::str::FromStr;

use num_rational::BigRational;
use num_traits::{Signed, Zero};
use thiserror::Error;

/// Largest rank accepted for an [`AdeType`].
pub const MAX_RANK: u32 = 64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AdeError {
    #[error("invalid rank {rank} for type {kind}")]
    InvalidRank { kind: AdeKind, rank: u32 },
    #[error("cannot parse ADE type from {0:?}")]
    Parse(String),
    #[error("invalid graph: {0}")]
    InvalidGraph(String),
    #[error("matrix is not square or not symmetric")]
    NotSymmetric,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum AdeKind {
    A,
    D,
    E,
}

impl fmt::Display for AdeKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = match self {
            AdeKind::A => 'A',
            AdeKind::D => 'D',
            AdeKind::E => 'E',
        };
        write!(f, "{c}")
    }
}

/// A simply laced Dynkin type `A_n`, `D_n` or `E_n`.
///
/// The rank equals the number of irreducible exceptional curves in the
/// minimal resolution of the corresponding du Val singularity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct AdeType {
    kind: AdeKind,
    rank: u32,
}

impl AdeType {
    pub fn new(kind: AdeKind, rank: u32) -> Result<Self, AdeError> {
        let ok = rank <= MAX_RANK
            && match kind {
                AdeKind::A => rank >= 1,
                AdeKind::D => rank >= 4,
                AdeKind::E => (6..=8).contains(&rank),
            };
        if ok {
            Ok(Self { kind, rank })
        } else {
            Err(AdeError::InvalidRank { kind, rank })
        }
    }

    /// Shorthand for `A_n`; panics if `n` is out of range.
    pub fn a(n: u32) -> Self {
        Self::new(AdeKind::A, n).expect("valid A_n rank")
    }

    pub fn d(n: u32) -> Self {
        Self::new(AdeKind::D, n).expect("valid D_n rank")
    }

    pub fn e(n: u32) -> Self {
        Self::new(AdeKind::E, n).expect("valid E_n rank")
    }

    pub fn kind(&self) -> AdeKind {
        self.kind
    }

    pub fn rank(&self) -> u32 {
        self.rank
    }

    /// Number of irreducible components of the exceptional curve.
    pub fn components(&self) -> u32 {
        self.rank
    }

    /// Every ADE type of rank at most `max_rank`, in canonical order.
    pub fn all_up_to(max_rank: u32) -> Vec<AdeType> {
        let max_rank = max_rank.min(MAX_RANK);
        let mut out = Vec::new();
        for kind in [AdeKind::A, AdeKind::D, AdeKind::E] {
            for rank in 1..=max_rank {
                if let Ok(t) = AdeType::new(kind, rank) {
                    out.push(t);
                }
            }
        }
        out
    }

    /// The standard Dynkin tree with all Euler weights `-2`.
    pub fn dynkin_graph(&self) -> DynkinGraph {
        let n = self.rank as usize;
        let mut edges = Vec::with_capacity(n.saturating_sub(1));
        match self.kind {
            AdeKind::A => edges.extend((1..n).map(|i| (i - 1, i))),
            AdeKind::D => {
                // path 0..n-2, fork vertex n-1 attached to n-3
                edges.extend((1..n - 1).map(|i| (i - 1, i)));
                edges.push((n - 3, n - 1));
            }
            AdeKind::E => {
                // path 0..n-2, extra vertex attached to the third vertex
                edges.extend((1..n - 1).map(|i| (i - 1, i)));
                edges.push((2, n - 1));
            }
        }
        DynkinGraph::new(n, edges, vec![-2; n]).expect("standard Dynkin graph is valid")
    }
}

impl fmt::Display for AdeType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}_{}", self.kind, self.rank)
    }
}

impl FromStr for AdeType {
    type Err = AdeError;

    /// Accepts `A_3`, `A3`, `d_4`, `E_8`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let mut chars = s.chars();
        let kind = match chars.next().map(|c| c.to_ascii_uppercase()) {
            Some('A') => AdeKind::A,
            Some('D') => AdeKind::D,
            Some('E') => AdeKind::E,
            _ => return Err(AdeError::Parse(s.to_string())),
        };
        let rest = chars.as_str();
        let rest = rest.strip_prefix('_').unwrap_or(rest);
        let rank: u32 = rest.parse().map_err(|_| AdeError::Parse(s.to_string()))?;
        AdeType::new(kind, rank)
    }
}

/// A finite simple graph with an integer weight on every vertex.
///
/// For plumbing, the weight is the Euler number of the disc bundle over the
/// corresponding sphere; exceptional curves of du Val singularities are
/// `(-2)`-curves.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DynkinGraph {
    vertices: usize,
    edges: Vec<(usize, usize)>,
    euler_weights: Vec<i64>,
}

impl DynkinGraph {
    /// Builds a graph, rejecting self-loops, repeated edges and out-of-range
    /// endpoints. Edges are stored normalized as `(min, max)`.
    pub fn new(
        vertices: usize,
        edges: Vec<(usize, usize)>,
        euler_weights: Vec<i64>,
    ) -> Result<Self, AdeError> {
        if euler_weights.len() != vertices {
            return Err(AdeError::InvalidGraph(format!(
                "{} weights for {} vertices",
                euler_weights.len(),
                vertices
            )));
        }
        let mut normalized = Vec::with_capacity(edges.len());
        for (u, v) in edges {
            if u >= vertices || v >= vertices {
                return Err(AdeError::InvalidGraph(format!("edge ({u},{v}) out of range")));
            }
            if u == v {
                return Err(AdeError::InvalidGraph(format!("self-loop at {u}")));
            }
            let e = (u.min(v), u.max(v));
            if normalized.contains(&e) {
                return Err(AdeError::InvalidGraph(format!("repeated edge ({u},{v})")));
            }
            normalized.push(e);
        }
        Ok(Self {
            vertices,
            edges: normalized,
            euler_weights,
        })
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn euler_weights(&self) -> &[i64] {
        &self.euler_weights
    }

    pub fn with_euler_weights(mut self, weights: Vec<i64>) -> Result<Self, AdeError> {
        if weights.len() != self.vertices {
            return Err(AdeError::InvalidGraph("weight count mismatch".into()));
        }
        self.euler_weights = weights;
        Ok(self)
    }

    /// Connected and acyclic.
    pub fn is_tree(&self) -> bool {
        if self.vertices == 0 {
            return false;
        }
        self.edges.len() + 1 == self.vertices && self.component_count() == 1
    }

    /// Number of connected components (union-find).
    pub fn component_count(&self) -> usize {
        let mut parent: Vec<usize> = (0..self.vertices).collect();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        let mut components = self.vertices;
        for &(u, v) in &self.edges {
            let (ru, rv) = (find(&mut parent, u), find(&mut parent, v));
            if ru != rv {
                parent[ru] = rv;
                components -= 1;
            }
        }
        components
    }

    /// First Betti number of the graph, `|E| - |V| + #components`.
    pub fn cycle_rank(&self) -> usize {
        self.edges.len() + self.component_count() - self.vertices
    }
}

/// A symmetric integer matrix, stored row-major.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SymIntForm {
    dim: usize,
    entries: Vec<i64>,
}

impl SymIntForm {
    pub fn new(rows: Vec<Vec<i64>>) -> Result<Self, AdeError> {
        let dim = rows.len();
        if rows.iter().any(|r| r.len() != dim) {
            return Err(AdeError::NotSymmetric);
        }
        let entries: Vec<i64> = rows.into_iter().flatten().collect();
        let form = Self { dim, entries };
        for i in 0..dim {
            for j in 0..i {
                if form.get(i, j) != form.get(j, i) {
                    return Err(AdeError::NotSymmetric);
                }
            }
        }
        Ok(form)
    }

    pub fn zero(dim: usize) -> Self {
        Self {
            dim,
            entries: vec![0; dim * dim],
        }
    }

    pub fn diagonal(diag: &[i64]) -> Self {
        let mut form = Self::zero(diag.len());
        for (i, &d) in diag.iter().enumerate() {
            form.entries[i * form.dim + i] = d;
        }
        form
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.entries[i * self.dim + j]
    }

    fn set_sym(&mut self, i: usize, j: usize, value: i64) {
        self.entries[i * self.dim + j] = value;
        self.entries[j * self.dim + i] = value;
    }

    pub fn rows(&self) -> Vec<Vec<i64>> {
        self.entries.chunks(self.dim.max(1)).take(self.dim).map(<[i64]>::to_vec).collect()
    }

    pub fn negate(&self) -> Self {
        Self {
            dim: self.dim,
            entries: self.entries.iter().map(|x| -x).collect(),
        }
    }

    /// Orthogonal sum `self ⊕ other`.
    pub fn block_sum(&self, other: &SymIntForm) -> Self {
        let dim = self.dim + other.dim;
        let mut out = Self::zero(dim);
        for i in 0..self.dim {
            for j in 0..self.dim {
                out.entries[i * dim + j] = self.get(i, j);
            }
        }
        for i in 0..other.dim {
            for j in 0..other.dim {
                out.entries[(self.dim + i) * dim + self.dim + j] = other.get(i, j);
            }
        }
        out
    }
}

impl fmt::Display for SymIntForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let width = self.entries.iter().map(|x| x.to_string().len()).max().unwrap_or(1);
        for i in 0..self.dim {
            let row: Vec<String> = (0..self.dim)
                .map(|j| format!("{:>width$}", self.get(i, j)))
                .collect();
            writeln!(f, "[{}]", row.join(" "))?;
        }
        Ok(())
    }
}

/// Inertia of a real symmetric form.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct FormSignature {
    pub positives: usize,
    pub negatives: usize,
    pub zeros: usize,
}

impl FormSignature {
    pub fn new(positives: usize, negatives: usize, zeros: usize) -> Self {
        Self {
            positives,
            negatives,
            zeros,
        }
    }

    pub fn sigma(&self) -> i64 {
        self.positives as i64 - self.negatives as i64
    }

    pub fn dim(&self) -> usize {
        self.positives + self.negatives + self.zeros
    }
}

impl fmt::Display for FormSignature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "(+{}, -{}, 0x{}) sigma = {}",
            self.positives,
            self.negatives,
            self.zeros,
            self.sigma()
        )
    }
}

/// Cartan matrix of a simply laced type: `2` on the diagonal, `-1` for
/// adjacent vertices of the standard Dynkin tree.
pub fn cartan_matrix(t: AdeType) -> SymIntForm {
    let g = t.dynkin_graph();
    let mut form = SymIntForm::diagonal(&vec![2; g.vertex_count()]);
    for &(u, v) in g.edges() {
        form.set_sym(u, v, -1);
    }
    form
}

/// Intersection form of the plumbed 4-manifold: Euler weights on the
/// diagonal and `1` for every edge.
pub fn plumbing_form(g: &DynkinGraph) -> SymIntForm {
    let mut form = SymIntForm::diagonal(g.euler_weights());
    for &(u, v) in g.edges() {
        form.set_sym(u, v, 1);
    }
    form
}

/// Exact inertia of `q` by symmetric congruence diagonalization.
///
/// A nonzero diagonal pivot is split off as a 1×1 block. When the remaining
/// block has zero diagonal but some `e = a[i][j] != 0`, the hyperbolic plane
/// spanned by `i, j` is split off instead and contributes `(1, 1, 0)`.
pub fn form_signature(q: &SymIntForm) -> FormSignature {
    let n = q.dim();
    let mut a: Vec<Vec<BigRational>> = (0..n)
        .map(|i| (0..n).map(|j| BigRational::from_integer(q.get(i, j).into())).collect())
        .collect();
    let mut active: Vec<usize> = (0..n).collect();
    let mut sig = FormSignature::default();

    while !active.is_empty() {
        if let Some(pos) = active.iter().position(|&i| !a[i][i].is_zero()) {
            let p = active.swap_remove(pos);
            let pivot = a[p][p].clone();
            if pivot.is_positive() {
                sig.positives += 1;
            } else {
                sig.negatives += 1;
            }
            for &i in &active {
                if a[i][p].is_zero() {
                    continue;
                }
                let factor = &a[i][p] / &pivot;
                for &j in &active {
                    let delta = &factor * &a[p][j];
                    a[i][j] -= delta;
                }
            }
            continue;
        }

        let pair = active.iter().enumerate().find_map(|(x, &i)| {
            active[x + 1..]
                .iter()
                .find(|&&j| !a[i][j].is_zero())
                .map(|&j| (i, j))
        });
        let Some((p, r)) = pair else {
            sig.zeros += active.len();
            break;
        };
        active.retain(|&i| i != p && i != r);
        sig.positives += 1;
        sig.negatives += 1;
        // Schur complement against [[0, e], [e, 0]], whose inverse is
        // [[0, 1/e], [1/e, 0]].
        let e = a[p][r].clone();
        let col_p: Vec<BigRational> = active.iter().map(|&k| a[k][p].clone()).collect();
        let col_r: Vec<BigRational> = active.iter().map(|&k| a[k][r].clone()).collect();
        for (x, &k) in active.iter().enumerate() {
            for (y, &l) in active.iter().enumerate() {
                let delta = (&col_p[x] * &col_r[y] + &col_r[x] * &col_p[y]) / &e;
                if !delta.is_zero() {
                    a[k][l] -= delta;
                }
            }
        }
    }
    sig
}

pub fn is_negative_definite(q: &SymIntForm) -> bool {
    form_signature(q) == FormSignature::new(0, q.dim(), 0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_constraints() {
        assert!(AdeType::new(AdeKind::A, 0).is_err());
        assert!(AdeType::new(AdeKind::D, 3).is_err());
        assert!(AdeType::new(AdeKind::E, 5).is_err());
        assert!(AdeType::new(AdeKind::E, 9).is_err());
        assert!(AdeType::new(AdeKind::A, MAX_RANK + 1).is_err());
        assert_eq!(AdeType::d(4).components(), 4);
    }

    #[test]
    fn parse_tokens() {
        assert_eq!("A_3".parse::<AdeType>().unwrap(), AdeType::a(3));
        assert_eq!("e8".parse::<AdeType>().unwrap(), AdeType::e(8));
        assert!("F_4".parse::<AdeType>().is_err());
        assert!("D_2".parse::<AdeType>().is_err());
        assert_eq!(AdeType::d(5).to_string(), "D_5");
    }

    #[test]
    fn small_cartan_matrices() {
        assert_eq!(cartan_matrix(AdeType::a(1)).rows(), vec![vec![2]]);
        assert_eq!(cartan_matrix(AdeType::a(2)).rows(), vec![vec![2, -1], vec![-1, 2]]);
    }

    #[test]
    fn e8_shape() {
        let c = cartan_matrix(AdeType::e(8));
        let g = AdeType::e(8).dynkin_graph();
        assert!(g.is_tree());
        let degrees: Vec<usize> = (0..8)
            .map(|v| (0..8).filter(|&w| w != v && c.get(v, w) == -1).count())
            .collect();
        assert_eq!(degrees.iter().filter(|&&d| d == 3).count(), 1);
        assert_eq!(degrees[2], 3);
        assert_eq!(degrees.iter().filter(|&&d| d == 1).count(), 3);
    }

    #[test]
    fn plumbing_examples() {
        let a1 = AdeType::a(1).dynkin_graph();
        assert_eq!(plumbing_form(&a1).rows(), vec![vec![-2]]);
        let a2 = AdeType::a(2).dynkin_graph();
        assert_eq!(plumbing_form(&a2).rows(), vec![vec![-2, 1], vec![1, -2]]);
        let d4 = AdeType::d(4);
        assert_eq!(plumbing_form(&d4.dynkin_graph()), cartan_matrix(d4).negate());
    }

    #[test]
    fn signature_examples() {
        assert_eq!(
            form_signature(&SymIntForm::new(vec![vec![2]]).unwrap()),
            FormSignature::new(1, 0, 0)
        );
        assert_eq!(
            form_signature(&SymIntForm::diagonal(&[1, -1, 0])),
            FormSignature::new(1, 1, 1)
        );
        assert!(is_negative_definite(&SymIntForm::diagonal(&[-2])));
        assert!(!is_negative_definite(&SymIntForm::diagonal(&[-1, 1])));
        assert!(is_negative_definite(&cartan_matrix(AdeType::e(8)).negate()));
    }

    #[test]
    fn hyperbolic_and_degenerate() {
        let h = SymIntForm::new(vec![vec![0, 3], vec![3, 0]]).unwrap();
        assert_eq!(form_signature(&h), FormSignature::new(1, 1, 0));
        let z = SymIntForm::zero(3);
        assert_eq!(form_signature(&z), FormSignature::new(0, 0, 3));
        let empty = SymIntForm::zero(0);
        assert_eq!(form_signature(&empty), FormSignature::default());
        // zero diagonal, rank 2, one kernel vector
        let m = SymIntForm::new(vec![vec![0, 1, 1], vec![1, 0, 1], vec![1, 1, 0]]).unwrap();
        assert_eq!(form_signature(&m), FormSignature::new(1, 2, 0));
    }

    #[test]
    fn rejects_asymmetric() {
        assert!(SymIntForm::new(vec![vec![0, 1], vec![2, 0]]).is_err());
        assert!(SymIntForm::new(vec![vec![0, 1]]).is_err());
    }

    #[test]
    fn graph_validation() {
        assert!(DynkinGraph::new(2, vec![(0, 0)], vec![-2, -2]).is_err());
        assert!(DynkinGraph::new(2, vec![(0, 1), (1, 0)], vec![-2, -2]).is_err());
        assert!(DynkinGraph::new(2, vec![(0, 2)], vec![-2, -2]).is_err());
        let cycle = DynkinGraph::new(3, vec![(0, 1), (1, 2), (2, 0)], vec![-2; 3]).unwrap();
        assert!(!cycle.is_tree());
        assert_eq!(cycle.cycle_rank(), 1);
        for t in AdeType::all_up_to(20) {
            assert!(t.dynkin_graph().is_tree(), "{t}");
        }
    }
}
