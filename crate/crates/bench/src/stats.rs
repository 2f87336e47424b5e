//! Order statistics and moments over timing samples, generic over the float
//! type.

use num_traits::Float;

/// Median, mean and sample standard deviation of a set of observations.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Summary<T> {
    pub median: T,
    pub mean: T,
    pub stddev: T,
}

impl<T: Float> Summary<T> {
    /// `None` for an empty slice.
    pub fn of(values: &[T]) -> Option<Summary<T>> {
        Some(Summary {
            median: median(values)?,
            mean: mean(values)?,
            stddev: stddev(values)?,
        })
    }
}

/// Middle order statistic; the mean of the two middle values for even counts.
pub fn median<T: Float>(values: &[T]) -> Option<T> {
    if values.is_empty() {
        return None;
    }
    let mut sorted = values.to_vec();
    sorted.sort_by(|a, b| a.partial_cmp(b).expect("no NaN samples"));
    let n = sorted.len();
    let two = T::one() + T::one();
    Some(if n % 2 == 1 {
        sorted[n / 2]
    } else {
        (sorted[n / 2 - 1] + sorted[n / 2]) / two
    })
}

pub fn mean<T: Float>(values: &[T]) -> Option<T> {
    if values.is_empty() {
        return None;
    }
    let sum = values.iter().fold(T::zero(), |acc, &v| acc + v);
    Some(sum / T::from(values.len())?)
}

/// Sample standard deviation (n - 1 denominator); zero for one value.
pub fn stddev<T: Float>(values: &[T]) -> Option<T> {
    let m = mean(values)?;
    if values.len() < 2 {
        return Some(T::zero());
    }
    let ss = values
        .iter()
        .fold(T::zero(), |acc, &v| acc + (v - m) * (v - m));
    Some((ss / T::from(values.len() - 1)?).sqrt())
}
