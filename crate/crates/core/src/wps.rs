//! Singularities of a general hypersurface in weighted projective 3-space.
//!
//! A general quasismooth member `X_d ⊂ P(a_0, a_1, a_2, a_3)` is singular only
//! where it meets the singular strata of the ambient space: the coordinate
//! vertices `P_i` with `a_i ∤ d` and finitely many points on each edge
//! `P(a_i, a_j)` with `gcd(a_i, a_j) > 1`. Every such point is a cyclic
//! quotient singularity `1/r(b_1, b_2)`.

use std::fmt;

use num_integer::Integer;
use thiserror::Error;

use crate::ade::AdeType;
use crate::basket::Basket;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WpsError {
    #[error("weights must be positive")]
    NonPositiveWeight,
    #[error("degree must be positive")]
    NonPositiveDegree,
    #[error("{0} is not well-formed")]
    NotWellFormed(HypersurfaceFamily),
    #[error("{0} is not quasismooth")]
    NotQuasismooth(HypersurfaceFamily),
    #[error("no linking monomial at the vertex of weight {weight} in {family}")]
    NoLinkingMonomial {
        family: HypersurfaceFamily,
        weight: u64,
    },
    #[error("quotient 1/{r}({b1},{b2}) is not an isolated cyclic quotient")]
    NotIsolated { r: u64, b1: u64, b2: u64 },
    #[error("{0} is not a du Val singularity")]
    NotDuVal(CyclicQuotient),
}

/// Weight quadruple of `P(a_0, a_1, a_2, a_3)`, sorted ascending.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Weights([u64; 4]);

impl Weights {
    pub fn new(mut a: [u64; 4]) -> Result<Self, WpsError> {
        if a.contains(&0) {
            return Err(WpsError::NonPositiveWeight);
        }
        a.sort_unstable();
        Ok(Self(a))
    }

    pub fn as_array(&self) -> [u64; 4] {
        self.0
    }

    pub fn sum(&self) -> u64 {
        self.0.iter().sum()
    }
}

impl fmt::Display for Weights {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c, d] = self.0;
        write!(f, "P({a},{b},{c},{d})")
    }
}

/// A general hypersurface of the given degree.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct HypersurfaceFamily {
    pub weights: Weights,
    pub degree: u64,
}

impl HypersurfaceFamily {
    pub fn new(weights: [u64; 4], degree: u64) -> Result<Self, WpsError> {
        if degree == 0 {
            return Err(WpsError::NonPositiveDegree);
        }
        Ok(Self {
            weights: Weights::new(weights)?,
            degree,
        })
    }

    /// The K3 family `X_d` with `d = a_0 + a_1 + a_2 + a_3`.
    pub fn canonical_trivial(weights: [u64; 4]) -> Result<Self, WpsError> {
        let w = Weights::new(weights)?;
        Ok(Self {
            weights: w,
            degree: w.sum(),
        })
    }

    pub fn is_canonical_trivial(&self) -> bool {
        self.degree == self.weights.sum()
    }
}

impl fmt::Display for HypersurfaceFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{} ⊂ {}", self.degree, self.weights)
    }
}

/// Cyclic quotient singularity `1/r(b_1, b_2)`, residues reduced mod `r`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CyclicQuotient {
    r: u64,
    b: (u64, u64),
}

impl CyclicQuotient {
    pub fn new(r: u64, b1: u64, b2: u64) -> Result<Self, WpsError> {
        let (c1, c2) = (b1 % r.max(1), b2 % r.max(1));
        if r < 2 || c1.gcd(&r) != 1 || c2.gcd(&r) != 1 {
            return Err(WpsError::NotIsolated { r, b1, b2 });
        }
        Ok(Self { r, b: (c1, c2) })
    }

    pub fn order(&self) -> u64 {
        self.r
    }

    pub fn residues(&self) -> (u64, u64) {
        self.b
    }

    pub fn is_du_val(&self) -> bool {
        (self.b.0 + self.b.1) % self.r == 0
    }

    /// `A_{r-1}` for du Val quotients.
    pub fn to_ade(&self) -> Result<AdeType, WpsError> {
        if !self.is_du_val() {
            return Err(WpsError::NotDuVal(*self));
        }
        let rank = u32::try_from(self.r - 1).map_err(|_| WpsError::NotDuVal(*self))?;
        AdeType::new(crate::ade::AdeKind::A, rank).map_err(|_| WpsError::NotDuVal(*self))
    }
}

impl fmt::Display for CyclicQuotient {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "1/{}({},{})", self.r, self.b.0, self.b.1)
    }
}

/// Every triple of weights is coprime.
pub fn well_formed(w: &Weights) -> bool {
    let a = w.0;
    (0..4).all(|skip| {
        let g = (0..4)
            .filter(|&i| i != skip)
            .fold(0u64, |g, i| g.gcd(&a[i]));
        g == 1
    })
}

/// Well-formed ambient space and, for every pair of weights, their gcd
/// divides the degree (the hypersurface contains no codimension-one
/// singular stratum of the ambient space).
pub fn hypersurface_well_formed(f: &HypersurfaceFamily) -> bool {
    let a = f.weights.0;
    well_formed(&f.weights)
        && pairs().all(|(i, j)| f.degree % a[i].gcd(&a[j]) == 0)
}

/// Whether `target` is a nonnegative integer combination of `weights`.
fn representable(target: u64, weights: &[u64]) -> bool {
    let target = target as usize;
    let mut reach = vec![false; target + 1];
    reach[0] = true;
    for &w in weights {
        let w = w as usize;
        for t in w..=target {
            if reach[t - w] {
                reach[t] = true;
            }
        }
    }
    reach[target]
}

fn pairs() -> impl Iterator<Item = (usize, usize)> {
    (0..4).flat_map(|i| (i + 1..4).map(move |j| (i, j)))
}

fn complement(i: usize, j: usize) -> (usize, usize) {
    let mut rest = (0..4).filter(|&k| k != i && k != j);
    (rest.next().unwrap(), rest.next().unwrap())
}

/// Quasismoothness of the general member.
///
/// For every nonempty subset `I` of the coordinates, either some degree `d`
/// monomial involves only variables in `I`, or there are `|I|` monomials of
/// the form `x_I^M · x_j` of degree `d` with pairwise distinct `j ∉ I`.
pub fn quasismooth(f: &HypersurfaceFamily) -> bool {
    let a = f.weights.0;
    let d = f.degree;
    (1u8..16).all(|mask| {
        let inside: Vec<u64> = (0..4).filter(|&i| mask & (1 << i) != 0).map(|i| a[i]).collect();
        if representable(d, &inside) {
            return true;
        }
        let linked = (0..4)
            .filter(|&j| mask & (1 << j) == 0)
            .filter(|&j| a[j] <= d && representable(d - a[j], &inside))
            .count();
        linked >= inside.len()
    })
}

fn check_admissible(f: &HypersurfaceFamily) -> Result<(), WpsError> {
    if !hypersurface_well_formed(f) {
        return Err(WpsError::NotWellFormed(*f));
    }
    if !quasismooth(f) {
        return Err(WpsError::NotQuasismooth(*f));
    }
    Ok(())
}

/// Passes both the well-formedness and the quasismoothness filter.
pub fn admissible(f: &HypersurfaceFamily) -> bool {
    check_admissible(f).is_ok()
}

/// Singular points at coordinate vertices `P_i` with `a_i ∤ d`.
///
/// Near such a vertex some monomial `x_i^k x_l` eliminates `x_l`, leaving the
/// quotient `1/a_i(a_j, a_k)` in the remaining two coordinates.
pub fn vertex_singularities(f: &HypersurfaceFamily) -> Result<Vec<CyclicQuotient>, WpsError> {
    check_admissible(f)?;
    let a = f.weights.0;
    let d = f.degree;
    let mut out = Vec::new();
    for i in 0..4 {
        if d % a[i] == 0 {
            continue;
        }
        let l = (0..4)
            .filter(|&l| l != i)
            .find(|&l| a[l] < d && (d - a[l]) % a[i] == 0)
            .ok_or(WpsError::NoLinkingMonomial {
                family: *f,
                weight: a[i],
            })?;
        let (j, k) = complement(i, l);
        out.push(CyclicQuotient::new(a[i], a[j], a[k])?);
    }
    Ok(out)
}

/// Singular points in the interior of edges `P(a_i, a_j)` with
/// `h = gcd(a_i, a_j) > 1`, as `(type, count)`.
///
/// The count is one less than the number of solutions `(p, q) ≥ 0` of
/// `p a_i + q a_j = d`, the degree of the restricted binary form in the
/// torus coordinate of the edge.
pub fn edge_singularities(
    f: &HypersurfaceFamily,
) -> Result<Vec<(CyclicQuotient, usize)>, WpsError> {
    check_admissible(f)?;
    let a = f.weights.0;
    let d = f.degree;
    let mut out = Vec::new();
    for (i, j) in pairs() {
        let h = a[i].gcd(&a[j]);
        if h == 1 {
            continue;
        }
        let solutions = (0..=d / a[j]).filter(|q| (d - q * a[j]) % a[i] == 0).count();
        if solutions > 1 {
            let (k, l) = complement(i, j);
            out.push((CyclicQuotient::new(h, a[k], a[l])?, solutions - 1));
        }
    }
    Ok(out)
}

/// The du Val basket of the general member.
pub fn basket(f: &HypersurfaceFamily) -> Result<Basket, WpsError> {
    let mut basket = Basket::new();
    for q in vertex_singularities(f)? {
        basket.insert(q.to_ade()?, 1);
    }
    for (q, n) in edge_singularities(f)? {
        basket.insert(q.to_ade()?, n);
    }
    Ok(basket)
}
