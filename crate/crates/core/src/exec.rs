//! Execution strategy for the data-parallel inner loops (optimizer
//! restarts, the propagation sweep, batch verification).
//!
//! Both strategies produce bit-identical results: parallel work is always
//! partitioned by index and merged with an order-insensitive rule, so
//! `Sequential` is a drop-in fallback when the `parallel` feature is off.

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Parallelism {
    Sequential,
    #[cfg(feature = "parallel")]
    Rayon,
}

#[allow(clippy::derivable_impls)] // the default depends on the feature set
impl Default for Parallelism {
    fn default() -> Self {
        #[cfg(feature = "parallel")]
        {
            Parallelism::Rayon
        }
        #[cfg(not(feature = "parallel"))]
        {
            Parallelism::Sequential
        }
    }
}

/// `(0..count).map(f)` under the chosen strategy, preserving index order.
pub(crate) fn map_indexed<T, F>(par: Parallelism, count: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    match par {
        Parallelism::Sequential => (0..count).map(f).collect(),
        #[cfg(feature = "parallel")]
        Parallelism::Rayon => {
            use rayon::prelude::*;
            (0..count).into_par_iter().map(f).collect()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sequential_and_default_agree() {
        let a = map_indexed(Parallelism::Sequential, 100, |i| i * i);
        let b = map_indexed(Parallelism::default(), 100, |i| i * i);
        assert_eq!(a, b);
    }
}
