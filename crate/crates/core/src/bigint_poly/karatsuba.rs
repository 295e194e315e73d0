use num_bigint::BigInt;
use num_traits::Zero;

use super::IntPoly;

/// Operand length (in coefficients) below which multiplication falls back to
/// the schoolbook convolution.
pub const KARATSUBA_THRESHOLD: usize = 32;

pub fn mul_schoolbook(a: &IntPoly, b: &IntPoly) -> IntPoly {
    IntPoly::from_coeffs(schoolbook(a.coeffs(), b.coeffs()))
}

/// Product using Karatsuba splitting for operands whose shorter side has at
/// least `threshold` coefficients. Any threshold gives the same result; values
/// below 2 are treated as 2.
pub fn mul_with_threshold(a: &IntPoly, b: &IntPoly, threshold: usize) -> IntPoly {
    if a.is_zero() || b.is_zero() {
        return IntPoly::zero();
    }
    IntPoly::from_coeffs(karatsuba(a.coeffs(), b.coeffs(), threshold.max(2)))
}

fn schoolbook(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn add_slices(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let (long, short) = if a.len() >= b.len() { (a, b) } else { (b, a) };
    let mut out = long.to_vec();
    for (o, s) in out.iter_mut().zip(short) {
        *o += s;
    }
    out
}

fn accumulate(dst: &mut [BigInt], src: &[BigInt], offset: usize) {
    for (d, s) in dst[offset..].iter_mut().zip(src) {
        *d += s;
    }
}

fn karatsuba(a: &[BigInt], b: &[BigInt], threshold: usize) -> Vec<BigInt> {
    if a.len().min(b.len()) < threshold {
        return schoolbook(a, b);
    }
    let half = a.len().max(b.len()).div_ceil(2);
    let (a0, a1) = a.split_at(half.min(a.len()));
    let (b0, b1) = b.split_at(half.min(b.len()));

    let low = karatsuba(a0, b0, threshold);
    let high = karatsuba(a1, b1, threshold);
    let mut mid = karatsuba(&add_slices(a0, a1), &add_slices(b0, b1), threshold);
    for (m, l) in mid.iter_mut().zip(&low) {
        *m -= l;
    }
    for (m, h) in mid.iter_mut().zip(&high) {
        *m -= h;
    }

    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    accumulate(&mut out, &low, 0);
    accumulate(&mut out, &mid, half);
    accumulate(&mut out, &high, 2 * half);
    out
}
