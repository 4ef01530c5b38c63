//! Strided four-axis FFT driver over interleaved component vectors.
//!
//! Data layout: site-major, component-minor, sites in row-major order over
//! the four axes. Each axis transform gathers the strided lines into a
//! contiguous scratch buffer (one chunk per line, safe to parallelize),
//! runs the planned FFT in place, and scatters back through contiguous
//! output chunks. The inverse direction carries the 1/n normalization so a
//! forward/inverse round trip is the identity.

use std::sync::Arc;

use rustfft::{Fft, FftPlanner};

use crate::parallel::chunks_for_each;
use crate::C64;

pub(crate) struct FourAxisFft {
    sizes: [usize; 4],
    dim: usize,
    forward: Vec<Arc<dyn Fft<f64>>>,
    inverse: Vec<Arc<dyn Fft<f64>>>,
    scratch: Vec<C64>,
}

impl FourAxisFft {
    pub fn new(sizes: [usize; 4], dim: usize) -> Self {
        let mut planner = FftPlanner::new();
        let forward = sizes
            .iter()
            .map(|&n| planner.plan_fft_forward(n))
            .collect();
        let inverse = sizes
            .iter()
            .map(|&n| planner.plan_fft_inverse(n))
            .collect();
        let total = sizes.iter().product::<usize>() * dim;
        FourAxisFft {
            sizes,
            dim,
            forward,
            inverse,
            scratch: vec![C64::new(0.0, 0.0); total],
        }
    }

    pub fn forward(&mut self, data: &mut [C64]) {
        for axis in 0..4 {
            self.transform_axis(data, axis, false);
        }
    }

    pub fn inverse(&mut self, data: &mut [C64]) {
        for axis in 0..4 {
            self.transform_axis(data, axis, true);
        }
    }

    fn transform_axis(&mut self, data: &mut [C64], axis: usize, inv: bool) {
        let n = self.sizes[axis];
        if n == 1 {
            return;
        }
        debug_assert_eq!(data.len(), self.scratch.len());
        let inner: usize = self.sizes[axis + 1..].iter().product::<usize>() * self.dim;
        let fft = if inv {
            &self.inverse[axis]
        } else {
            &self.forward[axis]
        };
        let scratch_len = fft.get_inplace_scratch_len();

        // gather each line (fixed other coords and component) and transform
        let input: &[C64] = data;
        chunks_for_each(
            &mut self.scratch,
            n,
            || vec![C64::new(0.0, 0.0); scratch_len],
            |fft_scratch, line, chunk| {
                let o = line / inner;
                let i = line % inner;
                let base = o * n * inner + i;
                for (k, c) in chunk.iter_mut().enumerate() {
                    *c = input[base + k * inner];
                }
                fft.process_with_scratch(chunk, fft_scratch);
            },
        );

        // scatter back; inverse direction normalizes by 1/n
        let scale = if inv { 1.0 / n as f64 } else { 1.0 };
        let lines: &[C64] = &self.scratch;
        chunks_for_each(
            data,
            inner,
            || (),
            |_, cidx, chunk| {
                let o = cidx / n;
                let k = cidx % n;
                for (i, c) in chunk.iter_mut().enumerate() {
                    *c = lines[(o * inner + i) * n + k] * scale;
                }
            },
        );
    }
}
