use crate::scalar::Scalar;

/// Running count, mean and centred sum of squares (Welford), mergeable (Chan et al.).
///
/// A stream of identical values keeps the mean bit-exact, and merging with an
/// empty accumulator is the identity.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Moments<T> {
    count: u64,
    mean: T,
    m2: T,
}

impl<T: Scalar> Default for Moments<T> {
    fn default() -> Self {
        Self { count: 0, mean: T::zero(), m2: T::zero() }
    }
}

impl<T: Scalar> Moments<T> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, x: T) {
        self.count += 1;
        let delta = x - self.mean;
        if delta != T::zero() {
            self.mean += delta / T::from_count(self.count as usize);
            self.m2 += delta * (x - self.mean);
        }
    }

    pub fn merge(&mut self, other: &Self) {
        if other.count == 0 {
            return;
        }
        if self.count == 0 {
            *self = *other;
            return;
        }
        let total = self.count + other.count;
        let delta = other.mean - self.mean;
        if delta != T::zero() {
            let (na, nb, n) = (T::from_count(self.count as usize), T::from_count(other.count as usize), T::from_count(total as usize));
            self.mean += delta * nb / n;
            self.m2 += other.m2 + delta * delta * na * nb / n;
        } else {
            self.m2 += other.m2;
        }
        self.count = total;
    }

    pub fn count(&self) -> u64 {
        self.count
    }

    pub fn mean(&self) -> Option<T> {
        (self.count > 0).then_some(self.mean)
    }

    /// Unbiased sample variance; needs two observations.
    pub fn variance(&self) -> Option<T> {
        (self.count > 1).then(|| self.m2 / T::from_count(self.count as usize - 1))
    }

    /// `Σ (x − mean)²`.
    pub fn centred_sum_sq(&self) -> T {
        self.m2
    }

    /// Standard error of the mean.
    pub fn std_error(&self) -> Option<f64> {
        self.variance().map(|v| (v.to_f64().max(0.0) / self.count as f64).sqrt())
    }
}
