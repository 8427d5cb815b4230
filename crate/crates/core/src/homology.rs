//! Formal rational homology classes.
//!
//! Homology is not computed from chains. Each space carries explicitly named
//! generators, and maps between spaces are given by tables on generators and
//! extended linearly. This is enough to carry L-classes and Hodge L-classes of
//! the low-dimensional spaces involved (surfaces, curves, their products and
//! finite quotients) through products, pushforwards and transfers, with exact
//! rational coefficients.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::ade::DynkinGraph;
use crate::basket::Basket;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HomologyError {
    #[error("expected a space of real dimension {expected}, got {found}")]
    DimensionMismatch { expected: u32, found: u32 },
    #[error("class lives on {found}, expected {expected}")]
    SpaceMismatch { expected: String, found: String },
    #[error("generator {0} has no image")]
    UnknownGenerator(String),
    #[error("invalid generator {label}: {reason}")]
    InvalidGenerator { label: String, reason: String },
    #[error("invalid map: {0}")]
    InvalidMap(String),
    #[error("basket has {expected} singular points, got m = {found}")]
    BasketPointCountMismatch { expected: usize, found: usize },
}

/// A compact space of even real dimension, identified by name.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SpaceLabel {
    name: String,
    dim: u32,
}

impl SpaceLabel {
    pub fn new(name: impl Into<String>, dim: u32) -> Result<Self, HomologyError> {
        let name = name.into();
        if dim % 2 != 0 {
            return Err(HomologyError::InvalidGenerator {
                label: name,
                reason: format!("odd real dimension {dim}"),
            });
        }
        Ok(Self { name, dim })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dim(&self) -> u32 {
        self.dim
    }

    /// The cartesian product, named `A×B`.
    pub fn product(&self, other: &SpaceLabel) -> SpaceLabel {
        SpaceLabel {
            name: format!("{}×{}", self.name, other.name),
            dim: self.dim + other.dim,
        }
    }
}

impl fmt::Display for SpaceLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name)
    }
}

/// A named homology generator of a given real degree.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Generator {
    degree: u32,
    label: String,
    space: SpaceLabel,
}

impl Generator {
    pub fn new(
        label: impl Into<String>,
        degree: u32,
        space: &SpaceLabel,
    ) -> Result<Self, HomologyError> {
        let label = label.into();
        if degree % 2 != 0 || degree > space.dim {
            return Err(HomologyError::InvalidGenerator {
                label,
                reason: format!("degree {degree} on a space of dimension {}", space.dim),
            });
        }
        Ok(Self {
            degree,
            label,
            space: space.clone(),
        })
    }

    /// Fundamental class, labeled by the space name.
    pub fn fundamental(space: &SpaceLabel) -> Self {
        Self {
            degree: space.dim,
            label: space.name.clone(),
            space: space.clone(),
        }
    }

    /// Class of a point, labeled `pt_<space>`.
    pub fn point(space: &SpaceLabel) -> Self {
        Self {
            degree: 0,
            label: format!("pt_{}", space.name),
            space: space.clone(),
        }
    }

    /// Cross product `g × h` on the product space.
    pub fn cross(&self, other: &Generator) -> Self {
        Self {
            degree: self.degree + other.degree,
            label: format!("{}×{}", self.label, other.label),
            space: self.space.product(&other.space),
        }
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn space(&self) -> &SpaceLabel {
        &self.space
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.label.contains('[') {
            write!(f, "{}", self.label)
        } else {
            write!(f, "[{}]", self.label)
        }
    }
}

/// A rational linear combination of generators of one space. Zero
/// coefficients are never stored.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FormalClass {
    space: SpaceLabel,
    terms: BTreeMap<Generator, BigRational>,
}

impl FormalClass {
    pub fn zero(space: &SpaceLabel) -> Self {
        Self {
            space: space.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn from_generator(g: &Generator) -> Self {
        Self::term(g, BigRational::one())
    }

    pub fn term(g: &Generator, coeff: BigRational) -> Self {
        let mut c = Self::zero(&g.space);
        if !coeff.is_zero() {
            c.terms.insert(g.clone(), coeff);
        }
        c
    }

    pub fn space(&self) -> &SpaceLabel {
        &self.space
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Generator, &BigRational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, g: &Generator) -> BigRational {
        self.terms.get(g).cloned().unwrap_or_else(BigRational::zero)
    }

    /// Sum of the coefficients in real degree `degree`.
    pub fn degree_part(&self, degree: u32) -> FormalClass {
        Self {
            space: self.space.clone(),
            terms: self
                .terms
                .iter()
                .filter(|(g, _)| g.degree == degree)
                .map(|(g, c)| (g.clone(), c.clone()))
                .collect(),
        }
    }

    fn add_term(&mut self, g: &Generator, coeff: &BigRational) {
        if coeff.is_zero() {
            return;
        }
        let slot = self.terms.entry(g.clone()).or_insert_with(BigRational::zero);
        *slot += coeff;
        if slot.is_zero() {
            self.terms.remove(g);
        }
    }

    fn expect_space(&self, space: &SpaceLabel) -> Result<(), HomologyError> {
        if &self.space == space {
            Ok(())
        } else {
            Err(HomologyError::SpaceMismatch {
                expected: space.to_string(),
                found: self.space.to_string(),
            })
        }
    }

    pub fn add(&self, other: &FormalClass) -> Result<FormalClass, HomologyError> {
        other.expect_space(&self.space)?;
        let mut out = self.clone();
        for (g, c) in &other.terms {
            out.add_term(g, c);
        }
        Ok(out)
    }

    pub fn sub(&self, other: &FormalClass) -> Result<FormalClass, HomologyError> {
        self.add(&other.scale(&-BigRational::one()))
    }

    pub fn scale(&self, factor: &BigRational) -> FormalClass {
        let mut out = Self::zero(&self.space);
        if factor.is_zero() {
            return out;
        }
        out.terms = self
            .terms
            .iter()
            .map(|(g, c)| (g.clone(), c * factor))
            .collect();
        out
    }

    pub fn scale_int(&self, factor: i64) -> FormalClass {
        self.scale(&BigRational::from_integer(BigInt::from(factor)))
    }
}

fn write_coefficient(f: &mut fmt::Formatter<'_>, c: &BigRational) -> fmt::Result {
    if c.is_one() {
        Ok(())
    } else if (-c).is_one() {
        write!(f, "-")
    } else if c.is_integer() {
        write!(f, "{c}·")
    } else {
        write!(f, "({c})·")
    }
}

impl fmt::Display for FormalClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (g, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write_coefficient(f, c)?;
            write!(f, "{g}")?;
        }
        Ok(())
    }
}

/// Exterior product, the bilinear extension of [`Generator::cross`].
pub fn product_class(a: &FormalClass, b: &FormalClass) -> FormalClass {
    let mut out = FormalClass::zero(&a.space.product(&b.space));
    for (g, x) in &a.terms {
        for (h, y) in &b.terms {
            out.add_term(&g.cross(h), &(x * y));
        }
    }
    out
}

/// A degree-preserving linear map between formal homology groups, given on
/// generators.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FormalMap {
    source: SpaceLabel,
    target: SpaceLabel,
    table: BTreeMap<Generator, FormalClass>,
}

impl FormalMap {
    pub fn new(
        source: &SpaceLabel,
        target: &SpaceLabel,
        table: BTreeMap<Generator, FormalClass>,
    ) -> Result<Self, HomologyError> {
        for (g, image) in &table {
            if g.space != *source {
                return Err(HomologyError::InvalidMap(format!("{g} is not on {source}")));
            }
            image.expect_space(target)?;
            if image.terms.keys().any(|h| h.degree != g.degree) {
                return Err(HomologyError::InvalidMap(format!(
                    "image of {g} is not homogeneous of degree {}",
                    g.degree
                )));
            }
        }
        Ok(Self {
            source: source.clone(),
            target: target.clone(),
            table,
        })
    }

    /// The constant map to a point of `target`: points go to points and all
    /// higher-degree generators of `source` go to zero.
    pub fn collapse(
        source: &SpaceLabel,
        generators: &[Generator],
        target: &SpaceLabel,
    ) -> Result<Self, HomologyError> {
        let pt = Generator::point(target);
        let table = generators
            .iter()
            .map(|g| {
                let image = if g.degree == 0 {
                    FormalClass::from_generator(&pt)
                } else {
                    FormalClass::zero(target)
                };
                (g.clone(), image)
            })
            .collect();
        Self::new(source, target, table)
    }

    pub fn source(&self) -> &SpaceLabel {
        &self.source
    }

    pub fn target(&self) -> &SpaceLabel {
        &self.target
    }

    pub fn generators(&self) -> impl Iterator<Item = &Generator> {
        self.table.keys()
    }

    pub fn apply(&self, c: &FormalClass) -> Result<FormalClass, HomologyError> {
        c.expect_space(&self.source)?;
        let mut out = FormalClass::zero(&self.target);
        for (g, x) in &c.terms {
            let image = self
                .table
                .get(g)
                .ok_or_else(|| HomologyError::UnknownGenerator(g.to_string()))?;
            for (h, y) in &image.terms {
                out.add_term(h, &(x * y));
            }
        }
        Ok(out)
    }
}

/// A finite covering `p: source → target` of degree `d` with its pushforward
/// `p_*` and transfer `p_!`. Construction checks `p_* p_! = d` on every
/// target generator.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoveringMap {
    degree: u32,
    pushforward: FormalMap,
    transfer: FormalMap,
}

impl CoveringMap {
    pub fn new(
        source: &SpaceLabel,
        target: &SpaceLabel,
        degree: u32,
        pushforward_table: BTreeMap<Generator, FormalClass>,
        transfer_table: BTreeMap<Generator, FormalClass>,
    ) -> Result<Self, HomologyError> {
        if degree == 0 {
            return Err(HomologyError::InvalidMap("covering degree must be positive".into()));
        }
        if source.dim != target.dim {
            return Err(HomologyError::DimensionMismatch {
                expected: target.dim,
                found: source.dim,
            });
        }
        let cover = Self {
            degree,
            pushforward: FormalMap::new(source, target, pushforward_table)?,
            transfer: FormalMap::new(target, source, transfer_table)?,
        };
        for g in cover.transfer.generators() {
            let c = FormalClass::from_generator(g);
            let round_trip = cover.pushforward(&cover.transfer(&c)?)?;
            if round_trip != c.scale_int(i64::from(degree)) {
                return Err(HomologyError::InvalidMap(format!(
                    "p_* p_! {g} = {round_trip}, expected {degree}·{g}"
                )));
            }
        }
        Ok(cover)
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn source(&self) -> &SpaceLabel {
        self.pushforward.source()
    }

    pub fn target(&self) -> &SpaceLabel {
        self.pushforward.target()
    }

    /// Target generators, i.e. the domain of the transfer.
    pub fn target_generators(&self) -> impl Iterator<Item = &Generator> {
        self.transfer.generators()
    }

    pub fn source_generators(&self) -> impl Iterator<Item = &Generator> {
        self.pushforward.generators()
    }

    pub fn pushforward(&self, c: &FormalClass) -> Result<FormalClass, HomologyError> {
        self.pushforward.apply(c)
    }

    pub fn transfer(&self, c: &FormalClass) -> Result<FormalClass, HomologyError> {
        self.transfer.apply(c)
    }
}

pub fn pushforward(p: &CoveringMap, c: &FormalClass) -> Result<FormalClass, HomologyError> {
    p.pushforward(c)
}

pub fn transfer(p: &CoveringMap, c: &FormalClass) -> Result<FormalClass, HomologyError> {
    p.transfer(c)
}

/// `L_*(F) = σ(F)[pt] + [F]` for a compact 4-dimensional rational homology
/// manifold `F`.
pub fn l_class_surface(sigma: i64, surface: &SpaceLabel) -> Result<FormalClass, HomologyError> {
    if surface.dim != 4 {
        return Err(HomologyError::DimensionMismatch {
            expected: 4,
            found: surface.dim,
        });
    }
    FormalClass::from_generator(&Generator::fundamental(surface))
        .add(&FormalClass::from_generator(&Generator::point(surface)).scale_int(sigma))
}

/// Hodge L-class `T_{1*}` of a configuration of rational curves meeting
/// transversally in single points, one curve per vertex and one
/// intersection point per edge of `graph`, on the space `curve`.
///
/// Scissor additivity gives `Σ_v [P¹_v] - (#edges)[pt]`; smooth `P¹` has
/// `T_{1*} = L_* = [P¹]`. Returns the class and its degree-0 coefficient.
pub fn hodge_class_of_configuration(
    graph: &DynkinGraph,
    curve: &SpaceLabel,
) -> Result<(FormalClass, BigRational), HomologyError> {
    if curve.dim != 2 {
        return Err(HomologyError::DimensionMismatch {
            expected: 2,
            found: curve.dim,
        });
    }
    let pt = Generator::point(curve);
    let mut class = FormalClass::zero(curve);
    // attach components one at a time: T(C ∪ P¹) = T(C) + T(P¹) - T(pt) per
    // new intersection point
    for v in 0..graph.vertex_count() {
        let line = Generator::new(format!("P1_{}", v + 1), 2, curve)?;
        class.add_term(&line, &BigRational::one());
    }
    let meets = BigRational::from_integer(BigInt::from(graph.edges().len()));
    class.add_term(&pt, &-meets);
    let degree0 = class.coefficient(&pt);
    Ok((class, degree0))
}

/// Hodge L-class at `y = 1` of the exceptional tree of `n` rational curves of
/// a rational double point: `Σ [P¹_i] - (n-1)[pt]`, with degree-0 part
/// `-(n-1)`.
///
/// # Panics
///
/// If `n == 0`.
pub fn hodge_class_tree(n: u32) -> (FormalClass, BigRational) {
    assert!(n >= 1, "an exceptional tree has at least one component");
    let path = DynkinGraph::new(
        n as usize,
        (1..n as usize).map(|i| (i - 1, i)).collect(),
        vec![-2; n as usize],
    )
    .expect("path graph");
    let curve = SpaceLabel::new("E", 2).expect("even dimension");
    hodge_class_of_configuration(&path, &curve).expect("curve has dimension 2")
}

/// Hodge L-class of a K3 surface with du Val singularities, by replaying the
/// scissor computation through the crepant resolution `F_0 → F`.
///
/// `T_{1*}(F) = (m + σ(F_0))[pt] + [F] - Σ_i T_{1,0}(E_i)`, where `m` is the
/// number of singular points and `E_i` the exceptional trees. Each `E_i` is
/// collapsed to its singular point, so only degree-0 parts survive.
pub fn t1_surface(
    basket: &Basket,
    m: usize,
    surface: &SpaceLabel,
) -> Result<FormalClass, HomologyError> {
    if m != basket.point_count() {
        return Err(HomologyError::BasketPointCountMismatch {
            expected: basket.point_count(),
            found: m,
        });
    }
    let sigma_resolution = crate::bsy::smooth_k3_signature();
    let offset = i64::try_from(m).expect("point count fits in i64") + sigma_resolution;
    let mut class = l_class_surface(offset, surface)?;
    // points of the same type contribute the same collapsed class
    for (t, multiplicity) in basket.entries() {
        let curve = SpaceLabel::new(format!("E_{t}"), 2)?;
        let (exceptional, _) = hodge_class_of_configuration(&t.dynkin_graph(), &curve)?;
        let generators: Vec<Generator> = exceptional.terms().map(|(g, _)| g.clone()).collect();
        let collapse = FormalMap::collapse(&curve, &generators, surface)?;
        let multiplicity = i64::try_from(multiplicity).expect("multiplicity fits in i64");
        class = class.sub(&collapse.apply(&exceptional)?.scale_int(multiplicity))?;
    }
    Ok(class)
}

/// Whether every coefficient of `c` has a denominator dividing `d`.
pub fn denominators_divide(c: &FormalClass, d: u32) -> bool {
    let d = BigInt::from(d);
    c.terms().all(|(_, x)| (&d % x.denom()).is_zero())
}
