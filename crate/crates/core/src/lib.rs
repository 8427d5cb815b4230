//! Exact signatures, L-classes and Hodge L-classes of du Val K3 surfaces and
//! of Calabi–Yau 3-folds with canonical singularities and positive
//! irregularity.
//!
//! * [`ade`]: Dynkin graphs, Cartan and plumbing forms, exact inertia.
//! * [`wps`]: singularity baskets of weighted projective hypersurfaces.
//! * [`homology`]: formal homology classes, products, pushforwards, transfers.
//! * [`bsy`]: surface signatures, Novikov bookkeeping and the comparison of
//!   `T_{1*}` with `L_*` for 3-folds.
//! * [`catalog`]: the tabulated surfaces and a verification harness.
//! * [`search`]: basket and hypersurface enumeration.
//! * [`cli`]: the `k3sig` command line.

pub mod ade;
pub mod basket;
pub mod bsy;
pub mod catalog;
pub mod cli;
pub mod homology;
pub mod search;
pub mod wps;

pub use ade::{AdeKind, AdeType, DynkinGraph, FormSignature, SymIntForm};
pub use basket::Basket;
pub use bsy::{BsyReport, KawamataDiagram, NovikovDecomposition, SurfaceModel};
pub use catalog::CatalogRow;
pub use homology::{CoveringMap, FormalClass, Generator, SpaceLabel};
pub use search::K3Family;
pub use wps::{CyclicQuotient, HypersurfaceFamily, Weights};
