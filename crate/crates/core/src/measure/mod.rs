//! Fuzzy measures (capacities) and their evaluation.
//!
//! A [`Measure`] is a monotone set function `μ: 2^X → [0, 1]` with `μ(∅) = 0`.
//! Besides direct evaluation on a [`Coalition`], every measure exposes a *cursor*:
//! an incremental state for a growing prefix of an order, so that walking an order
//! of `n` elements costs `O(n)` work for the built-in families instead of `O(n²)`.
//! Cursor evaluation and direct evaluation of the same set are bit-identical.

mod check;
mod derived;
mod families;
pub mod presets;
mod spec;

pub use check::{check_axioms, check_monotone, AxiomReport, MonotoneCheck, MonotonicityReport, MAX_EXHAUSTIVE};
pub use derived::DerivedMeasure;
pub use families::{AdditiveMeasure, BiClusterMeasure, CardinalityMeasure, MaxWeightMeasure, TableMeasure};
pub use spec::MeasureSpec;

use serde::{Deserialize, Serialize};

use crate::coalition::{Coalition, GroundSet};
use crate::error::{invalid, Result};
use crate::scalar::Scalar;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MeasureKind {
    Cardinality,
    MaxWeight,
    BiCluster,
    Additive,
    Table,
    Derived,
}

pub trait Measure<T: Scalar>: Send + Sync {
    /// Incremental state for a prefix `P` of an order.
    type Cursor: Clone + Send;

    fn ground(&self) -> GroundSet;

    fn kind(&self) -> MeasureKind;

    /// Elements the measure ranges over. Derived measures drop some of the ground set.
    fn players(&self) -> Coalition {
        Coalition::full(self.ground())
    }

    /// `μ(s)` without argument checks; `s` must be a subset of [`Measure::players`].
    fn value(&self, s: &Coalition) -> T;

    /// Cursor positioned at the empty prefix.
    fn cursor(&self) -> Self::Cursor;

    /// Extends the prefix by `element`, which must not already be in it.
    fn advance(&self, cursor: &mut Self::Cursor, element: usize);

    /// `μ(P ∪ extra)`; `extra` must be disjoint from `P` and free of repeats.
    fn peek(&self, cursor: &Self::Cursor, extra: &[usize]) -> T;

    /// Checked evaluation.
    fn eval(&self, s: &Coalition) -> Result<T> {
        s.same_ground(self.ground())?;
        if !s.is_subset(&self.players()) {
            return invalid(format!("coalition {s:?} is not within the measure's players"));
        }
        Ok(self.value(s))
    }
}

impl<T: Scalar, M: Measure<T> + ?Sized> Measure<T> for &M {
    type Cursor = M::Cursor;

    fn ground(&self) -> GroundSet {
        (**self).ground()
    }
    fn kind(&self) -> MeasureKind {
        (**self).kind()
    }
    fn players(&self) -> Coalition {
        (**self).players()
    }
    fn value(&self, s: &Coalition) -> T {
        (**self).value(s)
    }
    fn cursor(&self) -> Self::Cursor {
        (**self).cursor()
    }
    fn advance(&self, cursor: &mut Self::Cursor, element: usize) {
        (**self).advance(cursor, element)
    }
    fn peek(&self, cursor: &Self::Cursor, extra: &[usize]) -> T {
        (**self).peek(cursor, extra)
    }
}

/// Any of the built-in measure families, chosen at runtime.
#[derive(Clone, Debug, PartialEq)]
pub enum AnyMeasure<T> {
    Cardinality(CardinalityMeasure<T>),
    MaxWeight(MaxWeightMeasure<T>),
    BiCluster(BiClusterMeasure<T>),
    Additive(AdditiveMeasure<T>),
    Table(TableMeasure<T>),
}

#[derive(Clone, Debug)]
pub enum AnyCursor<T: Scalar> {
    Cardinality(<CardinalityMeasure<T> as Measure<T>>::Cursor),
    MaxWeight(<MaxWeightMeasure<T> as Measure<T>>::Cursor),
    BiCluster(<BiClusterMeasure<T> as Measure<T>>::Cursor),
    Additive(<AdditiveMeasure<T> as Measure<T>>::Cursor),
    Table(<TableMeasure<T> as Measure<T>>::Cursor),
}

macro_rules! dispatch {
    ($self:expr, $m:ident => $body:expr) => {
        match $self {
            AnyMeasure::Cardinality($m) => $body,
            AnyMeasure::MaxWeight($m) => $body,
            AnyMeasure::BiCluster($m) => $body,
            AnyMeasure::Additive($m) => $body,
            AnyMeasure::Table($m) => $body,
        }
    };
}

impl<T: Scalar> Measure<T> for AnyMeasure<T> {
    type Cursor = AnyCursor<T>;

    fn ground(&self) -> GroundSet {
        dispatch!(self, m => m.ground())
    }

    fn kind(&self) -> MeasureKind {
        dispatch!(self, m => m.kind())
    }

    fn value(&self, s: &Coalition) -> T {
        dispatch!(self, m => m.value(s))
    }

    fn cursor(&self) -> Self::Cursor {
        match self {
            AnyMeasure::Cardinality(m) => AnyCursor::Cardinality(m.cursor()),
            AnyMeasure::MaxWeight(m) => AnyCursor::MaxWeight(m.cursor()),
            AnyMeasure::BiCluster(m) => AnyCursor::BiCluster(m.cursor()),
            AnyMeasure::Additive(m) => AnyCursor::Additive(m.cursor()),
            AnyMeasure::Table(m) => AnyCursor::Table(m.cursor()),
        }
    }

    fn advance(&self, cursor: &mut Self::Cursor, element: usize) {
        match (self, cursor) {
            (AnyMeasure::Cardinality(m), AnyCursor::Cardinality(c)) => m.advance(c, element),
            (AnyMeasure::MaxWeight(m), AnyCursor::MaxWeight(c)) => m.advance(c, element),
            (AnyMeasure::BiCluster(m), AnyCursor::BiCluster(c)) => m.advance(c, element),
            (AnyMeasure::Additive(m), AnyCursor::Additive(c)) => m.advance(c, element),
            (AnyMeasure::Table(m), AnyCursor::Table(c)) => m.advance(c, element),
            _ => panic!("cursor used with a different measure"),
        }
    }

    fn peek(&self, cursor: &Self::Cursor, extra: &[usize]) -> T {
        match (self, cursor) {
            (AnyMeasure::Cardinality(m), AnyCursor::Cardinality(c)) => m.peek(c, extra),
            (AnyMeasure::MaxWeight(m), AnyCursor::MaxWeight(c)) => m.peek(c, extra),
            (AnyMeasure::BiCluster(m), AnyCursor::BiCluster(c)) => m.peek(c, extra),
            (AnyMeasure::Additive(m), AnyCursor::Additive(c)) => m.peek(c, extra),
            (AnyMeasure::Table(m), AnyCursor::Table(c)) => m.peek(c, extra),
            _ => panic!("cursor used with a different measure"),
        }
    }
}

macro_rules! any_from {
    ($variant:ident, $ty:ident) => {
        impl<T> From<$ty<T>> for AnyMeasure<T> {
            fn from(m: $ty<T>) -> Self {
                AnyMeasure::$variant(m)
            }
        }
    };
}

any_from!(Cardinality, CardinalityMeasure);
any_from!(MaxWeight, MaxWeightMeasure);
any_from!(BiCluster, BiClusterMeasure);
any_from!(Additive, AdditiveMeasure);
any_from!(Table, TableMeasure);
