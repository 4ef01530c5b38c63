//! Thin dispatch layer between rayon and plain iteration.
//!
//! Grid kernels express their work as "for each equally sized chunk of this
//! slice, with some per-worker scratch state, do f". With the `parallel`
//! feature the chunks are distributed by rayon; without it the same closure
//! runs on a single scratch state in order. Scalar reductions are NOT routed
//! through here: they stay sequential in both builds so that outputs are
//! bit-identical across feature sets.

#[cfg(feature = "parallel")]
pub(crate) fn chunks_for_each<T, S, I, F>(data: &mut [T], size: usize, init: I, f: F)
where
    T: Send,
    S: Send,
    I: Fn() -> S + Sync + Send,
    F: Fn(&mut S, usize, &mut [T]) + Sync + Send,
{
    use rayon::prelude::*;
    data.par_chunks_exact_mut(size)
        .enumerate()
        .for_each_init(&init, |scratch, (idx, chunk)| f(scratch, idx, chunk));
}

#[cfg(not(feature = "parallel"))]
pub(crate) fn chunks_for_each<T, S, I, F>(data: &mut [T], size: usize, init: I, f: F)
where
    T: Send,
    S: Send,
    I: Fn() -> S + Sync + Send,
    F: Fn(&mut S, usize, &mut [T]) + Sync + Send,
{
    let mut scratch = init();
    for (idx, chunk) in data.chunks_exact_mut(size).enumerate() {
        f(&mut scratch, idx, chunk);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn covers_all_chunks_once() {
        let mut v = vec![0u64; 12];
        chunks_for_each(
            &mut v,
            3,
            || 10u64,
            |s, idx, chunk| {
                for x in chunk.iter_mut() {
                    *x += *s + idx as u64;
                }
            },
        );
        assert_eq!(v, vec![10, 10, 10, 11, 11, 11, 12, 12, 12, 13, 13, 13]);
    }
}
