//! Exact arithmetic for the birational geometry of rational surfaces over
//! finite fields: finite field towers, projective points and Galois orbits,
//! multihomogeneous rational maps, surface models with hexagon symmetries,
//! automorphism group computations, and Sarkisov link bookkeeping.
//!
//! Everything is computed exactly over explicitly constructed fields F_{p^n};
//! there is no floating point and no randomness in any library path, so every
//! operation is deterministic and reproducible.

pub mod field;
pub mod poly;

use std::sync::atomic::{AtomicUsize, Ordering};

static THREADS: AtomicUsize = AtomicUsize::new(1);

/// Set the number of worker threads used by parallel enumeration helpers.
/// Values of 0 or 1 select the single-threaded path.
pub fn set_threads(n: usize) {
    THREADS.store(n.max(1), Ordering::Relaxed);
}

/// Current worker thread count (1 = single-threaded).
pub fn threads() -> usize {
    THREADS.load(Ordering::Relaxed).max(1)
}

/// Map `f` over `items`, splitting the slice across the configured worker
/// threads. Output order matches input order regardless of thread count, so
/// results are identical to the sequential path.
pub fn par_map<T, U, F>(items: &[T], f: F) -> Vec<U>
where
    T: Sync,
    U: Send,
    F: Fn(&T) -> U + Sync,
{
    let workers = threads();
    if workers <= 1 || items.len() < 2 {
        return items.iter().map(&f).collect();
    }
    let chunk = items.len().div_ceil(workers);
    std::thread::scope(|scope| {
        let handles: Vec<_> = items
            .chunks(chunk)
            .map(|part| scope.spawn(|| part.iter().map(&f).collect::<Vec<U>>()))
            .collect();
        handles
            .into_iter()
            .flat_map(|h| h.join().expect("worker thread panicked"))
            .collect()
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn par_map_matches_sequential_for_any_thread_count() {
        let items: Vec<u64> = (0..103).collect();
        let expect: Vec<u64> = items.iter().map(|x| x * x + 1).collect();
        for workers in [1, 2, 3, 8] {
            set_threads(workers);
            assert_eq!(par_map(&items, |x| x * x + 1), expect);
        }
        set_threads(1);
    }
}
