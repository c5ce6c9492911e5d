//! Index-parallel map with a sequential fallback.
//!
//! With the default `parallel` feature, [`map_indices`] fans the closure out
//! over a rayon thread pool; without it, the call is plain iteration. Both
//! paths assemble results in index order, so the output is bit-identical
//! either way. Reductions that are sensitive to evaluation order (sums of
//! floats) are kept sequential by the callers.

#[cfg(feature = "parallel")]
pub fn map_indices<T, F>(n: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    use rayon::prelude::*;
    (0..n).into_par_iter().map(f).collect()
}

#[cfg(not(feature = "parallel"))]
pub fn map_indices<T, F>(n: usize, f: F) -> Vec<T>
where
    F: Fn(usize) -> T,
{
    map_indices_seq(n, f)
}

/// Always-sequential variant, exposed for benchmarking against the parallel
/// path and for callers that want to avoid pool startup on tiny inputs.
pub fn map_indices_seq<T, F>(n: usize, f: F) -> Vec<T>
where
    F: Fn(usize) -> T,
{
    (0..n).map(f).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parallel_and_sequential_agree_bitwise() {
        let f = |i: usize| {
            let x = i as f64 * 0.1;
            (x.sin() * x.exp(), x.cos() / (1.0 + x))
        };
        let a = map_indices(1000, f);
        let b = map_indices_seq(1000, f);
        assert_eq!(a.len(), b.len());
        for (u, v) in a.iter().zip(&b) {
            assert_eq!(u.0.to_bits(), v.0.to_bits());
            assert_eq!(u.1.to_bits(), v.1.to_bits());
        }
    }

    #[test]
    fn empty_input_yields_empty_output() {
        let out: Vec<u32> = map_indices(0, |i| i as u32);
        assert!(out.is_empty());
    }
}
