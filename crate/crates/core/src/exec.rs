//! Execution mode for the batch operations (many independent star closures,
//! chain traces, probe rounds). Results are always returned in input order,
//! so both modes produce identical output.

use std::sync::atomic::{AtomicU8, Ordering};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Exec {
    Sequential,
    /// Uses the rayon global pool; identical to `Sequential` when the crate
    /// is built without the `parallel` feature.
    Parallel,
}

static DEFAULT: AtomicU8 = AtomicU8::new(if cfg!(feature = "parallel") { 1 } else { 0 });

impl Exec {
    pub fn default_mode() -> Exec {
        match DEFAULT.load(Ordering::Relaxed) {
            0 => Exec::Sequential,
            _ => Exec::Parallel,
        }
    }

    pub fn set_default_mode(mode: Exec) {
        DEFAULT.store(mode as u8, Ordering::Relaxed);
    }

    pub fn map<T, R, F>(self, items: &[T], f: F) -> Vec<R>
    where
        T: Sync,
        R: Send,
        F: Fn(&T) -> R + Sync + Send,
    {
        match self {
            Exec::Sequential => items.iter().map(f).collect(),
            #[cfg(feature = "parallel")]
            Exec::Parallel => {
                use rayon::prelude::*;
                items.par_iter().map(f).collect()
            }
            #[cfg(not(feature = "parallel"))]
            Exec::Parallel => items.iter().map(f).collect(),
        }
    }
}

impl Default for Exec {
    fn default() -> Self {
        Exec::default_mode()
    }
}

/// Size the global rayon pool once; later calls are ignored.
pub fn init_threads(n: usize) {
    #[cfg(feature = "parallel")]
    {
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build_global();
    }
    #[cfg(not(feature = "parallel"))]
    let _ = n;
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn modes_agree_and_keep_order() {
        let xs: Vec<u64> = (0..100).collect();
        let a = Exec::Sequential.map(&xs, |x| x * x);
        let b = Exec::Parallel.map(&xs, |x| x * x);
        assert_eq!(a, b);
        assert_eq!(a[10], 100);
    }
}
