//! Signatures of du Val K3 surfaces and the comparison of Hodge L-classes with
//! Goresky–MacPherson L-classes for 3-folds with trivial canonical class and
//! positive irregularity.
//!
//! A 3-fold `X` of this kind with `q(X) = q > 0` is finitely covered by a
//! product `F × E`, where `E` is an abelian variety of dimension `q` and `F` is
//! connected with trivial canonical class. Both classes are obtained by
//! pushing the class of the product down the degree `d` cover and dividing by
//! `d`; [`bsy_check`] runs the two derivations independently and compares
//! them term for term.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use thiserror::Error;

use crate::ade::{cartan_matrix, form_signature, DynkinGraph};
use crate::basket::Basket;
use crate::homology::{
    l_class_surface, product_class, t1_surface, CoveringMap, FormalClass, Generator,
    HomologyError, SpaceLabel,
};

/// Upper bound on `Σ d_i` for a K3 surface with du Val singularities.
pub const FLETCHER_BOUND: u64 = 19;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BsyError {
    #[error("total component count {total_d} exceeds the bound {FLETCHER_BOUND}")]
    BoundViolation { total_d: u64 },
    #[error("irregularity {q} out of range for {what}")]
    InvalidIrregularity { q: u8, what: &'static str },
    #[error("a surface with q > 0 has no singular points, got basket {0}")]
    SingularIrregularSurface(Basket),
    #[error("cover degree must be positive")]
    InvalidDegree,
    #[error(transparent)]
    Homology(#[from] HomologyError),
}

/// Hodge numbers `h^{2,0} = h^{0,2}` and `h^{1,1}` of a compact Kähler surface.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SurfaceHodgeNumbers {
    pub h20: i64,
    pub h11: i64,
}

impl SurfaceHodgeNumbers {
    pub const K3: Self = Self { h20: 1, h11: 20 };
    pub const ABELIAN: Self = Self { h20: 1, h11: 4 };

    /// Hodge index theorem: `σ = 2 h^{2,0} - h^{1,1} + 2`.
    pub fn signature(&self) -> i64 {
        2 * self.h20 - self.h11 + 2
    }
}

/// Signature of a smooth K3 surface.
pub fn smooth_k3_signature() -> i64 {
    SurfaceHodgeNumbers::K3.signature()
}

/// A normal projective surface with trivial canonical class and at worst du
/// Val singularities.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SurfaceModel {
    basket: Basket,
    q: u8,
}

impl SurfaceModel {
    pub fn new(basket: Basket, q: u8) -> Result<Self, BsyError> {
        if q > 2 {
            return Err(BsyError::InvalidIrregularity { q, what: "a surface" });
        }
        if q > 0 && !basket.is_empty() {
            return Err(BsyError::SingularIrregularSurface(basket));
        }
        Ok(Self { basket, q })
    }

    pub fn k3(basket: Basket) -> Self {
        Self { basket, q: 0 }
    }

    pub fn basket(&self) -> &Basket {
        &self.basket
    }

    pub fn irregularity(&self) -> u8 {
        self.q
    }

    pub fn signature(&self) -> Result<i64, BsyError> {
        sigma_k3(&self.basket, self.q)
    }
}

/// `σ(F) = σ(F_0) + Σ d_i` for `q(F) = 0`, and `σ(F) = 0` otherwise.
pub fn sigma_k3(b: &Basket, q: u8) -> Result<i64, BsyError> {
    if q > 2 {
        return Err(BsyError::InvalidIrregularity { q, what: "a surface" });
    }
    let total_d = b.total_d();
    if total_d > FLETCHER_BOUND {
        return Err(BsyError::BoundViolation { total_d });
    }
    if q > 0 {
        if !b.is_empty() {
            return Err(BsyError::SingularIrregularSurface(b.clone()));
        }
        return Ok(0);
    }
    Ok(smooth_k3_signature() + total_d as i64)
}

/// Signature bookkeeping for `F_0 = M_0 ∪ ⋃ T_i` and `F = M ∪ ⋃ N_i`, where
/// `T_i` are plumbed tubes around the exceptional curves and `N_i` are cone
/// neighbourhoods of the singular points.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NovikovDecomposition {
    pub sigma_resolution: i64,
    pub tube_signatures: Vec<i64>,
    pub sigma_complement: i64,
    pub cone_signatures: Vec<i64>,
}

impl NovikovDecomposition {
    /// `σ(F) = σ(M, ∂M) + Σ σ(N_i, ∂N_i)`.
    pub fn surface_signature(&self) -> i64 {
        self.sigma_complement + self.cone_signatures.iter().sum::<i64>()
    }

    pub fn is_consistent(&self) -> bool {
        self.sigma_complement + self.tube_signatures.iter().sum::<i64>() == self.sigma_resolution
            && self.cone_signatures.iter().all(|&s| s == 0)
            && self.cone_signatures.len() == self.tube_signatures.len()
    }
}

// A suspension has an orientation-reversing involution, so σ = -σ.
fn suspension_signature() -> i64 {
    0
}

pub fn novikov_assembly(b: &Basket) -> Result<NovikovDecomposition, BsyError> {
    let total_d = b.total_d();
    if total_d > FLETCHER_BOUND {
        return Err(BsyError::BoundViolation { total_d });
    }
    let sigma_resolution = smooth_k3_signature();
    let tube_signatures: Vec<i64> = b
        .points()
        .map(|t| form_signature(&cartan_matrix(t).negate()).sigma())
        .collect();
    let sigma_complement = sigma_resolution - tube_signatures.iter().sum::<i64>();
    let cone_signatures = vec![suspension_signature(); tube_signatures.len()];
    Ok(NovikovDecomposition {
        sigma_resolution,
        tube_signatures,
        sigma_complement,
        cone_signatures,
    })
}

/// Fiber `F` of the Albanese map, by irregularity of the 3-fold.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Fiber {
    /// `q(X) = 1`: a surface with trivial canonical class.
    Surface(SurfaceModel),
    /// `q(X) = 2`: a smooth curve.
    Curve,
    /// `q(X) = 3`: a point.
    Point,
}

/// Covering data `p: F × E → X` of degree `d` over the Albanese torus.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KawamataDiagram {
    fiber: Fiber,
    cover_degree: u32,
}

impl KawamataDiagram {
    pub fn new(q: u8, fiber: Fiber, cover_degree: u32) -> Result<Self, BsyError> {
        if cover_degree == 0 {
            return Err(BsyError::InvalidDegree);
        }
        let expected = match fiber {
            Fiber::Surface(_) => 1,
            Fiber::Curve => 2,
            Fiber::Point => 3,
        };
        if q != expected {
            return Err(BsyError::InvalidIrregularity { q, what: "this fiber" });
        }
        Ok(Self {
            fiber,
            cover_degree,
        })
    }

    /// `q(X) = 1` with a K3 fiber carrying `basket`.
    pub fn with_k3_fiber(basket: Basket, cover_degree: u32) -> Result<Self, BsyError> {
        Self::new(1, Fiber::Surface(SurfaceModel::k3(basket)), cover_degree)
    }

    /// The canonical diagram for irregularity `q ∈ {2, 3}`.
    pub fn for_irregularity(q: u8, cover_degree: u32) -> Result<Self, BsyError> {
        match q {
            2 => Self::new(2, Fiber::Curve, cover_degree),
            3 => Self::new(3, Fiber::Point, cover_degree),
            _ => Err(BsyError::InvalidIrregularity { q, what: "a 3-fold with q > 1 fiber" }),
        }
    }

    pub fn irregularity(&self) -> u8 {
        match self.fiber {
            Fiber::Surface(_) => 1,
            Fiber::Curve => 2,
            Fiber::Point => 3,
        }
    }

    pub fn fiber(&self) -> &Fiber {
        &self.fiber
    }

    pub fn cover_degree(&self) -> u32 {
        self.cover_degree
    }

    /// Spaces `(F, E, X)`; real dimensions sum to 6.
    pub fn spaces(&self) -> (SpaceLabel, SpaceLabel, SpaceLabel) {
        let fiber_dim = 6 - 2 * u32::from(self.irregularity());
        let f = SpaceLabel::new("F", fiber_dim).expect("even");
        let e = SpaceLabel::new("E", 6 - fiber_dim).expect("even");
        let x = SpaceLabel::new("X", 6).expect("even");
        (f, e, x)
    }

    fn factor_generators(space: &SpaceLabel) -> Vec<Generator> {
        if space.dim() == 0 {
            vec![Generator::fundamental(space)]
        } else {
            vec![Generator::point(space), Generator::fundamental(space)]
        }
    }

    /// The Galois cover `p: F × E → X` of degree `d`.
    ///
    /// The deck group acts diagonally, translating `E`, so it fixes every
    /// product class; hence `p_! p_* = d` on the source. The fundamental
    /// class pushes to `d[X]` and transfers back to `[F × E]`; a degree-0
    /// class pushes to `[pt_X]`; any other product class `c` pushes to a
    /// generator `p_*[c]` on `X`.
    pub fn covering(&self) -> Result<CoveringMap, BsyError> {
        let (f, e, x) = self.spaces();
        let source = f.product(&e);
        let d = i64::from(self.cover_degree);
        let mut push = BTreeMap::new();
        let mut transfer = BTreeMap::new();
        for g in Self::factor_generators(&f) {
            for h in Self::factor_generators(&e) {
                let s = g.cross(&h);
                let sc = FormalClass::from_generator(&s);
                let t = if s.degree() == x.dim() {
                    push.insert(s.clone(), FormalClass::from_generator(&Generator::fundamental(&x)).scale_int(d));
                    transfer.insert(Generator::fundamental(&x), sc);
                    continue;
                } else if s.degree() == 0 {
                    Generator::point(&x)
                } else {
                    Generator::new(format!("p_*[{}]", s.label()), s.degree(), &x)?
                };
                push.insert(s, FormalClass::from_generator(&t));
                transfer.insert(t, sc.scale_int(d));
            }
        }
        Ok(CoveringMap::new(&source, &x, self.cover_degree, push, transfer)?)
    }

    /// `(L_*(F), L_*(E))` from signatures.
    fn l_classes(&self) -> Result<(FormalClass, FormalClass), BsyError> {
        let (f, e, _) = self.spaces();
        let lf = match &self.fiber {
            Fiber::Surface(s) => l_class_surface(s.signature()?, &f)?,
            Fiber::Curve | Fiber::Point => FormalClass::from_generator(&Generator::fundamental(&f)),
        };
        let le = match self.irregularity() {
            2 => l_class_surface(SurfaceHodgeNumbers::ABELIAN.signature(), &e)?,
            // curves and the flat 6-torus: L^* = 1
            _ => FormalClass::from_generator(&Generator::fundamental(&e)),
        };
        Ok((lf, le))
    }

    /// `(T_{1*}(F), T_{1*}(E))` from the Hodge-theoretic side.
    fn hodge_classes(&self) -> Result<(FormalClass, FormalClass), BsyError> {
        let (f, e, _) = self.spaces();
        let tf = match &self.fiber {
            Fiber::Surface(s) if s.irregularity() == 0 => {
                t1_surface(s.basket(), s.basket().point_count(), &f)?
            }
            // nonsingular with σ = 0
            Fiber::Surface(_) => l_class_surface(0, &f)?,
            Fiber::Curve | Fiber::Point => FormalClass::from_generator(&Generator::fundamental(&f)),
        };
        // E is smooth, so T_{1*}(E) = L_*(E)
        let (_, te) = self.l_classes()?;
        debug_assert_eq!(te.space(), &e);
        Ok((tf, te))
    }
}

/// Closed form of `L_*(X)`: `(σ(F)/d)·p_*[pt_F×E] + [X]` for `q = 1`,
/// `[X]` for `q ∈ {2, 3}`.
pub fn threefold_lclass(k: &KawamataDiagram) -> Result<FormalClass, BsyError> {
    let (f, e, x) = k.spaces();
    let fundamental = FormalClass::from_generator(&Generator::fundamental(&x));
    match k.fiber() {
        Fiber::Surface(s) => {
            let sigma = s.signature()?;
            let pushed = Generator::new(
                format!("p_*[{}]", Generator::point(&f).cross(&Generator::fundamental(&e)).label()),
                e.dim(),
                &x,
            )?;
            let coeff = BigRational::new(BigInt::from(sigma), BigInt::from(k.cover_degree()));
            Ok(FormalClass::term(&pushed, coeff).add(&fundamental)?)
        }
        Fiber::Curve | Fiber::Point => Ok(fundamental),
    }
}

/// Both derivations of the characteristic class of `X` and their comparison.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BsyReport {
    pub irregularity: u8,
    pub cover_degree: u32,
    /// `(1/d) p_* (T_{1*}(F) × T_{1*}(E))`.
    pub hodge_route: FormalClass,
    /// `(1/d) p_* (L_*(F) × L_*(E))`.
    pub topological_route: FormalClass,
    /// [`threefold_lclass`].
    pub closed_form: FormalClass,
    pub equal: bool,
}

impl fmt::Display for BsyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "q = {}, cover degree d = {}", self.irregularity, self.cover_degree)?;
        writeln!(f, "Hodge route:       T_1*(X) = {}", self.hodge_route)?;
        writeln!(f, "topological route: L_*(X)  = {}", self.topological_route)?;
        writeln!(f, "closed form:       L_*(X)  = {}", self.closed_form)?;
        write!(f, "{}", if self.equal { "PASS" } else { "FAIL" })
    }
}

pub fn bsy_check(k: &KawamataDiagram) -> Result<BsyReport, BsyError> {
    let p = k.covering()?;
    let inv_d = BigRational::new(1.into(), BigInt::from(k.cover_degree()));

    let (tf, te) = k.hodge_classes()?;
    let hodge_route = p.pushforward(&product_class(&tf, &te))?.scale(&inv_d);

    let (lf, le) = k.l_classes()?;
    let topological_route = p.pushforward(&product_class(&lf, &le))?.scale(&inv_d);

    let closed_form = threefold_lclass(k)?;
    let equal = hodge_route == topological_route && topological_route == closed_form;
    Ok(BsyReport {
        irregularity: k.irregularity(),
        cover_degree: k.cover_degree(),
        hodge_route,
        topological_route,
        closed_form,
        equal,
    })
}

/// `L_*(F × E)` for the diagram, from the product formula.
pub fn product_lclass(k: &KawamataDiagram) -> Result<FormalClass, BsyError> {
    let (lf, le) = k.l_classes()?;
    Ok(product_class(&lf, &le))
}

/// Every exceptional configuration is a tree of rational curves, so the
/// exceptional sets have vanishing rational `H^1`.
pub fn rational_homology_manifold_check(b: &Basket) -> bool {
    let graphs: Vec<DynkinGraph> = b.points().map(|t| t.dynkin_graph()).collect();
    exceptional_graphs_are_trees(&graphs)
}

pub fn exceptional_graphs_are_trees(graphs: &[DynkinGraph]) -> bool {
    graphs.iter().all(DynkinGraph::is_tree)
}
