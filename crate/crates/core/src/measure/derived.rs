use super::{Measure, MeasureKind};
use crate::coalition::{Coalition, GroundSet};
use crate::error::{invalid, Result};
use crate::scalar::Scalar;

/// `μ'(S) = μ(S ∪ F)` on the players of `μ` minus `F ∪ R`.
///
/// With `F = {i}` this is the measure where `i` is always present; with `R = {i}`
/// the one where `i` never takes part. Element labels are kept from the base.
#[derive(Clone, Debug)]
pub struct DerivedMeasure<M> {
    base: M,
    forced_in: Coalition,
    removed: Coalition,
}

impl<M> DerivedMeasure<M> {
    pub fn new<T: Scalar>(base: M, forced_in: Coalition, removed: Coalition) -> Result<Self>
    where
        M: Measure<T>,
    {
        let ground = base.ground();
        forced_in.same_ground(ground)?;
        removed.same_ground(ground)?;
        if !forced_in.is_disjoint(&removed) {
            return invalid("forced-in and removed elements overlap");
        }
        let players = base.players();
        if !forced_in.is_subset(&players) || !removed.is_subset(&players) {
            return invalid("derived measure refers to elements the base does not range over");
        }
        if players.len() - forced_in.len() - removed.len() < 1 {
            return invalid("derived measure has no players left");
        }
        Ok(Self { base, forced_in, removed })
    }

    /// `element` joins every coalition and leaves the player set.
    pub fn with_forced<T: Scalar>(base: M, element: usize) -> Result<Self>
    where
        M: Measure<T>,
    {
        let ground = base.ground();
        ground.check(element)?;
        let forced = Coalition::from_elements(ground, [element])?;
        Self::new(base, forced, Coalition::empty(ground))
    }

    /// `element` is dropped from the player set.
    pub fn without<T: Scalar>(base: M, element: usize) -> Result<Self>
    where
        M: Measure<T>,
    {
        let ground = base.ground();
        ground.check(element)?;
        let removed = Coalition::from_elements(ground, [element])?;
        Self::new(base, Coalition::empty(ground), removed)
    }

    pub fn base(&self) -> &M {
        &self.base
    }

    pub fn forced_in(&self) -> &Coalition {
        &self.forced_in
    }

    pub fn removed(&self) -> &Coalition {
        &self.removed
    }
}

impl<T: Scalar, M: Measure<T>> Measure<T> for DerivedMeasure<M> {
    type Cursor = M::Cursor;

    fn ground(&self) -> GroundSet {
        self.base.ground()
    }

    fn kind(&self) -> MeasureKind {
        MeasureKind::Derived
    }

    fn players(&self) -> Coalition {
        self.base.players().difference(&self.forced_in).difference(&self.removed)
    }

    fn value(&self, s: &Coalition) -> T {
        self.base.value(&s.union(&self.forced_in))
    }

    fn cursor(&self) -> M::Cursor {
        let mut c = self.base.cursor();
        for e in self.forced_in.iter() {
            self.base.advance(&mut c, e);
        }
        c
    }

    fn advance(&self, cursor: &mut M::Cursor, element: usize) {
        self.base.advance(cursor, element)
    }

    fn peek(&self, cursor: &M::Cursor, extra: &[usize]) -> T {
        self.base.peek(cursor, extra)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::measure::TableMeasure;
    use proptest::prelude::*;

    fn random_table(n: usize, raw: &[u32]) -> TableMeasure<f64> {
        // monotone by construction: value = fraction of a random additive weight plus max
        let values: Vec<f64> = (0..1usize << n)
            .map(|mask| {
                let sum: u32 = (0..n).filter(|b| mask >> b & 1 == 1).map(|b| raw[b] % 97).sum();
                sum as f64 / (97.0 * n as f64)
            })
            .collect();
        TableMeasure::new(n, values).unwrap()
    }

    proptest! {
        #[test]
        fn derived_evaluates_base_with_forced(n in 3usize..=10, raw in prop::collection::vec(any::<u32>(), 10), f in 0usize..10, r in 0usize..10) {
            let f = f % n;
            let r = r % n;
            prop_assume!(f != r);
            let base = random_table(n, &raw);
            let ground = base.ground();
            let derived = DerivedMeasure::new(
                &base,
                Coalition::from_elements(ground, [f]).unwrap(),
                Coalition::from_elements(ground, [r]).unwrap(),
            ).unwrap();
            let players = derived.players().to_vec();
            prop_assert_eq!(players.len(), n - 2);
            for mask in 0u64..1 << players.len() {
                let s = Coalition::from_elements(ground, players.iter().enumerate().filter(|(b, _)| mask >> b & 1 == 1).map(|(_, &e)| e)).unwrap();
                prop_assert_eq!(derived.eval(&s).unwrap(), base.value(&s.with(f)));
            }
        }
    }

    #[test]
    fn derived_rejects_arguments_touching_fixed_elements() {
        let base = random_table(4, &[1, 2, 3, 4]);
        let d = DerivedMeasure::with_forced(&base, 1).unwrap();
        let s = Coalition::from_elements(base.ground(), [1, 2]).unwrap();
        assert!(d.eval(&s).is_err());
        assert!(DerivedMeasure::new(&base, s.clone(), s).is_err());
    }

    #[test]
    fn cursor_starts_with_forced_elements() {
        let base = random_table(4, &[5, 7, 11, 13]);
        let d = DerivedMeasure::with_forced(&base, 2).unwrap();
        let c = d.cursor();
        let s = Coalition::from_elements(base.ground(), [0]).unwrap();
        assert_eq!(d.peek(&c, &[0]), d.value(&s));
        assert_eq!(d.peek(&c, &[]), base.value(&Coalition::from_elements(base.ground(), [2]).unwrap()));
    }
}
