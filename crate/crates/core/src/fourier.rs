//! Multi-dimensional discrete Fourier transforms on a [`GridSpec`].

use num_complex::Complex;
use rustfft::Fft;

use crate::grid::{Field, GridSpec, Spectrum};
use crate::scalar::Real;

/// Number of lines gathered per batch when transforming a strided axis.
const BATCH: usize = 16;

fn transform_axes<T: Real>(grid: &GridSpec<T>, data: &mut [Complex<T>], fft: &dyn Fft<T>) {
    let n = grid.points();
    let d = grid.dim();
    let zero = Complex::new(T::zero(), T::zero());
    let mut scratch = vec![zero; fft.get_inplace_scratch_len()];

    // Last axis: rows are contiguous and rustfft batches them natively.
    fft.process_with_scratch(data, &mut scratch);

    let mut lines = vec![zero; n * BATCH];
    for axis in 0..d.saturating_sub(1) {
        let stride = n.pow((d - 1 - axis) as u32);
        let blocks = n.pow(axis as u32);
        for block in 0..blocks {
            let base = block * n * stride;
            let mut inner = 0;
            while inner < stride {
                let width = BATCH.min(stride - inner);
                for i in 0..n {
                    let row = base + i * stride + inner;
                    for b in 0..width {
                        lines[b * n + i] = data[row + b];
                    }
                }
                fft.process_with_scratch(&mut lines[..width * n], &mut scratch);
                for i in 0..n {
                    let row = base + i * stride + inner;
                    for b in 0..width {
                        data[row + b] = lines[b * n + i];
                    }
                }
                inner += width;
            }
        }
    }
}

/// Forward transform, normalized by `1/n^d`.
pub fn forward_transform<T: Real>(f: &Field<T>) -> Spectrum<T> {
    forward_transform_owned(f.clone())
}

/// [`forward_transform`] reusing the field's storage.
pub fn forward_transform_owned<T: Real>(f: Field<T>) -> Spectrum<T> {
    let grid = f.grid().clone();
    let mut data = f.into_values();
    transform_axes(&grid, &mut data, grid.forward_plan().as_ref());
    let scale = T::one() / T::from_usize_lossy(grid.len());
    for z in &mut data {
        *z *= scale;
    }
    Spectrum::from_parts(grid, data)
}

/// Inverse transform (unnormalized), the exact inverse of [`forward_transform`].
pub fn inverse_transform<T: Real>(spectrum: &Spectrum<T>) -> Field<T> {
    inverse_transform_owned(spectrum.clone())
}

/// [`inverse_transform`] reusing the spectrum's storage.
pub fn inverse_transform_owned<T: Real>(spectrum: Spectrum<T>) -> Field<T> {
    let grid = spectrum.grid().clone();
    let mut data = spectrum.into_coefficients();
    transform_axes(&grid, &mut data, grid.inverse_plan().as_ref());
    Field::from_parts(grid, data)
}

/// `(-1)^{sum of mode numbers}` at a flat index: the phase relating DFT
/// coefficients (origin at index 0) to a lattice whose origin sits at `n/2`.
pub(crate) fn centering_sign<T: Real>(grid: &GridSpec<T>, flat: usize) -> T {
    let mut idx = vec![0; grid.dim()];
    grid.unflatten(flat, &mut idx);
    let parity: i64 = idx.iter().map(|&i| grid.mode(i)).sum();
    if parity.rem_euclid(2) == 0 {
        T::one()
    } else {
        -T::one()
    }
}

/// Samples of the unitary continuum transform
/// `(2 pi)^{-d/2} int f(X) e^{-i X . zeta} dX` at the lattice frequencies,
/// in storage order, computed from the discrete coefficients.
pub fn continuum_transform<T: Real>(spectrum: &Spectrum<T>) -> Vec<Complex<T>> {
    let grid = spectrum.grid();
    let scale = (T::lit(2.0) * grid.half_length() / (T::lit(2.0) * T::PI()).sqrt()).powi(grid.dim() as i32);
    spectrum
        .coefficients()
        .iter()
        .enumerate()
        .map(|(flat, c)| c * (scale * centering_sign(grid, flat)))
        .collect()
}
