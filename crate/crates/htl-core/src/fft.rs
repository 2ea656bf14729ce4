//! Iterative radix-2 FFT.

use alloc::vec::Vec;
use core::f64::consts::PI;
use num_complex::Complex64;
use num_traits::Float;

/// In-place transform `X_k = Σ_j x_j e^{∓2πi jk/n}`; the sign is `-` for the
/// forward direction. No normalization in either direction.
pub fn fft_in_place(buf: &mut [Complex64], inverse: bool) {
    let n = buf.len();
    assert!(n.is_power_of_two(), "fft length must be a power of two");
    if n <= 1 {
        return;
    }
    let bits = n.trailing_zeros();
    for i in 0..n {
        let j = i.reverse_bits() >> (usize::BITS - bits);
        if i < j {
            buf.swap(i, j);
        }
    }
    let sign = if inverse { 1.0 } else { -1.0 };
    // Twiddles computed directly per index, not by repeated multiplication,
    // so that rounding does not accumulate at large n.
    let twiddles: Vec<Complex64> = (0..n / 2)
        .map(|k| {
            let t = sign * 2.0 * PI * k as f64 / n as f64;
            Complex64::new(t.cos(), t.sin())
        })
        .collect();
    let mut len = 2;
    while len <= n {
        let half = len / 2;
        let stride = n / len;
        for start in (0..n).step_by(len) {
            for k in 0..half {
                let w = twiddles[k * stride];
                let u = buf[start + k];
                let v = buf[start + k + half] * w;
                buf[start + k] = u + v;
                buf[start + k + half] = u - v;
            }
        }
        len <<= 1;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn matches_naive_dft() {
        let n = 64;
        let x: Vec<Complex64> =
            (0..n).map(|j| Complex64::new((j as f64 * 0.37).sin(), (j as f64 * 1.3).cos())).collect();
        let mut y = x.clone();
        fft_in_place(&mut y, false);
        for (k, yk) in y.iter().enumerate() {
            let mut s = Complex64::new(0.0, 0.0);
            for (j, v) in x.iter().enumerate() {
                s += v * Complex64::from_polar(1.0, -2.0 * PI * (j * k) as f64 / n as f64);
            }
            assert!((s - yk).norm() < 1e-12);
        }
        fft_in_place(&mut y, true);
        for (a, b) in x.iter().zip(&y) {
            assert!((a - b / n as f64).norm() < 1e-14);
        }
    }
}
