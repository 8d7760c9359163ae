//! Combinatorics of extended affine Weyl groups `W̃ = X_* ⋊ W₀`.
//!
//! The crate computes Iwahori–Matsumoto lengths, cyclic-shift classes,
//! Newton points, reduction trees and their path statistics (dimensions and
//! top-component counts of affine Deligne–Lusztig varieties), very-special
//! end points, and dual-group weight multiplicities used to cross-check the
//! component counts at `w₀t^μ`.
//!
//! All arithmetic is exact. The integer linear algebra and the weight
//! multiplicity recursion are generic over the scalar type; the
//! combinatorial layers use the aliases below.

pub mod affine;
pub mod classes;
pub mod encoding;
pub mod error;
pub mod invariants;
pub mod levi;
pub mod linalg;
pub mod reduction;
pub mod rootdata;
pub mod weights;
pub mod weyl;

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

pub use affine::{AffineElement, XMuYDecomposition};
pub use classes::{NewtonClass, NewtonPoint};
pub use error::{Error, Result};
pub use levi::{LeviContext, StandardTriple};
pub use reduction::{EdgeKind, ReductionPath, ReductionTree, Strategy};
pub use rootdata::{Isogeny, RootDatum};
pub use weyl::WeylElement;

/// Integer scalar of lattice coordinates.
pub type Int = i64;
/// Exact rational scalar.
pub type Rational = num_rational::Ratio<Int>;
/// Integral coweight in the coordinates of `X_*`.
pub type Coweight = Vec<Int>;
/// Rational coweight.
pub type QVector = Vec<Rational>;

/// Resource limits shared by all searches.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Budgets {
    pub max_nodes: usize,
    pub max_paths: usize,
    /// Cap on the size of one cyclic-shift class.
    pub max_class: usize,
    /// Cap on elements generated while searching for straight representatives.
    pub max_generated: usize,
}

impl Default for Budgets {
    fn default() -> Self {
        Self { max_nodes: 1_000_000, max_paths: 10_000_000, max_class: 200_000, max_generated: 2_000_000 }
    }
}

/// A root datum together with budgets and memo tables.
///
/// Memoized values are deterministic, so sharing an engine across threads
/// never changes results.
pub struct Engine {
    datum: RootDatum,
    budgets: Budgets,
    defects: Mutex<HashMap<NewtonClass, (usize, AffineElement)>>,
    trees: Mutex<HashMap<(AffineElement, Strategy), Arc<reduction::TreeBundle>>>,
}

impl Engine {
    pub fn new(datum: RootDatum) -> Self {
        Self::with_budgets(datum, Budgets::default())
    }

    pub fn with_budgets(datum: RootDatum, budgets: Budgets) -> Self {
        Self { datum, budgets, defects: Mutex::new(HashMap::new()), trees: Mutex::new(HashMap::new()) }
    }

    /// Shorthand for `Engine::new(RootDatum::build(label, isogeny)?)`.
    pub fn build(label: &str, isogeny: Isogeny) -> Result<Self> {
        Ok(Self::new(RootDatum::build(label, isogeny)?))
    }

    pub fn datum(&self) -> &RootDatum {
        &self.datum
    }

    pub fn budgets(&self) -> Budgets {
        self.budgets
    }
}

/// Converts an integral vector to rationals.
pub fn to_rational(v: &[Int]) -> QVector {
    v.iter().map(|&x| Rational::from_integer(x)).collect()
}

/// Returns the integral vector if every entry is an integer.
pub fn to_integral(v: &[Rational]) -> Option<Coweight> {
    v.iter().map(|x| x.is_integer().then(|| x.to_integer())).collect()
}
