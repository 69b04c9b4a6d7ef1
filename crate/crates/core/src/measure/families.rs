use super::{Measure, MeasureKind};
use crate::coalition::{Coalition, GroundSet};
use crate::error::{Error, Result};
use crate::scalar::{ExactSum, Scalar};

fn bad<R>(msg: impl Into<String>) -> Result<R> {
    Err(Error::InvalidMeasure(msg.into()))
}

fn unit_interval<T: Scalar>(x: T) -> bool {
    x >= T::zero() && x <= T::one()
}

/// Symmetric measure: `μ(S) = v[|S|]`.
#[derive(Clone, Debug, PartialEq)]
pub struct CardinalityMeasure<T> {
    ground: GroundSet,
    values: Vec<T>,
}

impl<T: Scalar> CardinalityMeasure<T> {
    /// `values[k]` is the value of every coalition of size `k`; `values.len() = n + 1`.
    pub fn new(values: Vec<T>) -> Result<Self> {
        let m = Self::new_unchecked(values)?;
        let v = &m.values;
        if v[0] != T::zero() {
            return bad(format!("v[0] must be 0, got {}", v[0]));
        }
        if let Some(k) = (1..v.len()).find(|&k| v[k] < v[k - 1]) {
            return bad(format!("values decrease between sizes {} and {k}", k - 1));
        }
        if v[v.len() - 1] > T::one() {
            return bad(format!("v[n] = {} exceeds 1", v[v.len() - 1]));
        }
        Ok(m)
    }

    /// Only checks the shape of the input.
    pub fn new_unchecked(values: Vec<T>) -> Result<Self> {
        if values.len() < 3 {
            return bad("cardinality measure needs n + 1 values with n >= 2");
        }
        let ground = GroundSet::new(values.len() - 1)?;
        Ok(Self { ground, values })
    }

    pub fn values(&self) -> &[T] {
        &self.values
    }
}

impl<T: Scalar> Measure<T> for CardinalityMeasure<T> {
    type Cursor = usize;

    fn ground(&self) -> GroundSet {
        self.ground
    }
    fn kind(&self) -> MeasureKind {
        MeasureKind::Cardinality
    }
    fn value(&self, s: &Coalition) -> T {
        self.values[s.len()]
    }
    fn cursor(&self) -> usize {
        0
    }
    fn advance(&self, size: &mut usize, _element: usize) {
        *size += 1;
    }
    fn peek(&self, size: &usize, extra: &[usize]) -> T {
        self.values[size + extra.len()]
    }
}

/// `μ(S) = max_{i ∈ S} w_i`, the airport game.
#[derive(Clone, Debug, PartialEq)]
pub struct MaxWeightMeasure<T> {
    ground: GroundSet,
    weights: Vec<T>,
}

impl<T: Scalar> MaxWeightMeasure<T> {
    pub fn new(weights: Vec<T>) -> Result<Self> {
        let m = Self::new_unchecked(weights)?;
        if let Some(i) = m.weights.iter().position(|&w| !unit_interval(w)) {
            return bad(format!("weight of element {} is {} (outside [0, 1])", i + 1, m.weights[i]));
        }
        Ok(m)
    }

    pub fn new_unchecked(weights: Vec<T>) -> Result<Self> {
        let ground = GroundSet::new(weights.len())?;
        Ok(Self { ground, weights })
    }

    pub fn weights(&self) -> &[T] {
        &self.weights
    }

    fn fold(&self, start: T, elements: impl Iterator<Item = usize>) -> T {
        elements.fold(start, |acc, e| if self.weights[e] > acc { self.weights[e] } else { acc })
    }
}

impl<T: Scalar> Measure<T> for MaxWeightMeasure<T> {
    type Cursor = T;

    fn ground(&self) -> GroundSet {
        self.ground
    }
    fn kind(&self) -> MeasureKind {
        MeasureKind::MaxWeight
    }
    fn value(&self, s: &Coalition) -> T {
        self.fold(T::zero(), s.iter())
    }
    fn cursor(&self) -> T {
        T::zero()
    }
    fn advance(&self, max: &mut T, element: usize) {
        *max = self.fold(*max, std::iter::once(element));
    }
    fn peek(&self, max: &T, extra: &[usize]) -> T {
        self.fold(*max, extra.iter().copied())
    }
}

/// `μ(S) = c · min(|S ∩ G1|, |S ∩ G2|)` for a partition `G1, G2` of the ground set.
#[derive(Clone, Debug, PartialEq)]
pub struct BiClusterMeasure<T> {
    ground: GroundSet,
    group1: Coalition,
    in_group1: Vec<bool>,
    pair_value: T,
}

impl<T: Scalar> BiClusterMeasure<T> {
    pub fn new(group1: Coalition, group2: Coalition, pair_value: T) -> Result<Self> {
        let m = Self::new_unchecked(group1, group2, pair_value)?;
        if pair_value <= T::zero() {
            return bad("pair value must be positive");
        }
        let (g1, g2) = m.group_sizes();
        if pair_value * T::from_count(g1.min(g2)) > T::one() {
            return bad("pair value times the smaller group size exceeds 1");
        }
        Ok(m)
    }

    pub fn new_unchecked(group1: Coalition, group2: Coalition, pair_value: T) -> Result<Self> {
        let ground = group1.ground();
        group2.same_ground(ground)?;
        if !group1.is_disjoint(&group2) || group1.len() + group2.len() != ground.len() {
            return bad("groups must partition the ground set");
        }
        let in_group1 = ground.elements().map(|e| group1.contains(e)).collect();
        Ok(Self { ground, group1, in_group1, pair_value })
    }

    /// Group 1 is the first `group1_size` elements, group 2 the rest.
    pub fn split(group1_size: usize, group2_size: usize, pair_value: T) -> Result<Self> {
        let ground = GroundSet::new(group1_size + group2_size)?;
        let g1 = Coalition::from_elements(ground, 0..group1_size)?;
        let g2 = Coalition::from_elements(ground, group1_size..ground.len())?;
        Self::new(g1, g2, pair_value)
    }

    pub fn pair_value(&self) -> T {
        self.pair_value
    }

    pub fn group_sizes(&self) -> (usize, usize) {
        let g1 = self.group1.len();
        (g1, self.ground.len() - g1)
    }

    pub fn in_group1(&self, element: usize) -> bool {
        self.in_group1[element]
    }

    /// Value of a coalition with `n1` members in group 1 and `n2` in group 2.
    pub fn value_of_counts(&self, n1: usize, n2: usize) -> T {
        self.pair_value * T::from_count(n1.min(n2))
    }
}

impl<T: Scalar> Measure<T> for BiClusterMeasure<T> {
    type Cursor = (usize, usize);

    fn ground(&self) -> GroundSet {
        self.ground
    }
    fn kind(&self) -> MeasureKind {
        MeasureKind::BiCluster
    }
    fn value(&self, s: &Coalition) -> T {
        let n1 = s.intersection_len(&self.group1);
        self.value_of_counts(n1, s.len() - n1)
    }
    fn cursor(&self) -> (usize, usize) {
        (0, 0)
    }
    fn advance(&self, counts: &mut (usize, usize), element: usize) {
        if self.in_group1[element] {
            counts.0 += 1;
        } else {
            counts.1 += 1;
        }
    }
    fn peek(&self, &(n1, n2): &(usize, usize), extra: &[usize]) -> T {
        let e1 = extra.iter().filter(|&&e| self.in_group1[e]).count();
        self.value_of_counts(n1 + e1, n2 + extra.len() - e1)
    }
}

/// `μ(S) = Σ_{i ∈ S} w_i`, evaluated as the correctly rounded exact sum so that the
/// value does not depend on the order members are visited in.
#[derive(Clone, Debug, PartialEq)]
pub struct AdditiveMeasure<T> {
    ground: GroundSet,
    weights: Vec<T>,
}

impl<T: Scalar> AdditiveMeasure<T> {
    pub fn new(weights: Vec<T>) -> Result<Self> {
        let m = Self::new_unchecked(weights)?;
        if let Some(i) = m.weights.iter().position(|&w| w < T::zero()) {
            return bad(format!("weight of element {} is negative", i + 1));
        }
        let total = T::exact_sum(m.weights.iter().copied());
        if total > T::one() {
            return bad(format!("weights sum to {total}, more than 1"));
        }
        Ok(m)
    }

    pub fn new_unchecked(weights: Vec<T>) -> Result<Self> {
        let ground = GroundSet::new(weights.len())?;
        Ok(Self { ground, weights })
    }

    pub fn weights(&self) -> &[T] {
        &self.weights
    }
}

impl<T: Scalar> Measure<T> for AdditiveMeasure<T> {
    type Cursor = ExactSum<T>;

    fn ground(&self) -> GroundSet {
        self.ground
    }
    fn kind(&self) -> MeasureKind {
        MeasureKind::Additive
    }
    fn value(&self, s: &Coalition) -> T {
        T::exact_sum(s.iter().map(|e| self.weights[e]))
    }
    fn cursor(&self) -> ExactSum<T> {
        ExactSum::new()
    }
    fn advance(&self, acc: &mut ExactSum<T>, element: usize) {
        acc.add(self.weights[element]);
    }
    fn peek(&self, acc: &ExactSum<T>, extra: &[usize]) -> T {
        if extra.is_empty() {
            return acc.value();
        }
        let mut acc = acc.clone();
        acc.extend(extra.iter().map(|&e| self.weights[e]));
        acc.value()
    }
}

pub const MAX_TABLE_GROUND: usize = 24;

/// Explicit table of `2^n` values indexed by bitmask (bit `k` is element `k`).
#[derive(Clone, Debug, PartialEq)]
pub struct TableMeasure<T> {
    ground: GroundSet,
    values: Vec<T>,
}

impl<T: Scalar> TableMeasure<T> {
    pub fn new(n: usize, values: Vec<T>) -> Result<Self> {
        let m = Self::new_unchecked(n, values)?;
        if m.values[0] != T::zero() {
            return bad("value of the empty set must be 0");
        }
        if let Some((small, large)) = m.monotonicity_violation() {
            return bad(format!(
                "not monotone: μ({:?}) > μ({:?})",
                Coalition::from_mask(m.ground, small as u64)?,
                Coalition::from_mask(m.ground, large as u64)?
            ));
        }
        if m.values[m.values.len() - 1] > T::one() {
            return bad("value of the full set exceeds 1");
        }
        Ok(m)
    }

    pub fn new_unchecked(n: usize, values: Vec<T>) -> Result<Self> {
        let ground = GroundSet::new(n)?;
        if n > MAX_TABLE_GROUND {
            return Err(Error::Capability(format!("table measures support n <= {MAX_TABLE_GROUND}, got {n}")));
        }
        if values.len() != 1 << n {
            return bad(format!("table for n = {n} needs {} values, got {}", 1usize << n, values.len()));
        }
        Ok(Self { ground, values })
    }

    /// Tabulates any measure over a small ground set.
    pub fn tabulate<M: Measure<T>>(measure: &M) -> Result<Self> {
        let ground = measure.ground();
        if ground.len() > MAX_TABLE_GROUND {
            return Err(Error::Capability(format!("cannot tabulate a measure with n = {}", ground.len())));
        }
        let values = (0..1u64 << ground.len())
            .map(|mask| Ok(measure.value(&Coalition::from_mask(ground, mask)?)))
            .collect::<Result<Vec<_>>>()?;
        Self::new_unchecked(ground.len(), values)
    }

    pub fn values(&self) -> &[T] {
        &self.values
    }

    /// First `(S, S ∪ {i})` with `μ(S) > μ(S ∪ {i})`, as masks.
    pub(crate) fn monotonicity_violation(&self) -> Option<(usize, usize)> {
        let n = self.ground.len();
        (0..self.values.len()).find_map(|mask| {
            (0..n)
                .filter(|b| mask & (1 << b) == 0)
                .map(|b| mask | 1 << b)
                .find(|&up| self.values[mask] > self.values[up])
                .map(|up| (mask, up))
        })
    }
}

impl<T: Scalar> Measure<T> for TableMeasure<T> {
    type Cursor = usize;

    fn ground(&self) -> GroundSet {
        self.ground
    }
    fn kind(&self) -> MeasureKind {
        MeasureKind::Table
    }
    fn value(&self, s: &Coalition) -> T {
        self.values[s.low_word() as usize]
    }
    fn cursor(&self) -> usize {
        0
    }
    fn advance(&self, mask: &mut usize, element: usize) {
        *mask |= 1 << element;
    }
    fn peek(&self, mask: &usize, extra: &[usize]) -> T {
        self.values[extra.iter().fold(*mask, |m, &e| m | 1 << e)]
    }
}
