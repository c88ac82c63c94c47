//! Exact Walsh–Hadamard spectrum.
//!
//! Coefficients are kept as integers `c_S = sum_v f(v) chi_S(v)`, i.e. scaled
//! by `2^n` relative to the usual Fourier coefficients `f^_S = c_S / 2^n`.

use crate::cube::{check_dim, CubeFunction};
use crate::error::{Error, Result};
use crate::Rational;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WalshSpectrum {
    n: usize,
    coeffs: Vec<i64>,
}

/// In-place unnormalized fast Walsh–Hadamard transform.
fn fwht(data: &mut [i64]) {
    let len = data.len();
    let mut h = 1;
    while h < len {
        for block in data.chunks_mut(2 * h) {
            let (lo, hi) = block.split_at_mut(h);
            for (a, b) in lo.iter_mut().zip(hi.iter_mut()) {
                let (x, y) = (*a, *b);
                *a = x + y;
                *b = x - y;
            }
        }
        h *= 2;
    }
}

pub fn walsh_transform(f: &CubeFunction) -> WalshSpectrum {
    let mut coeffs: Vec<i64> = f.table().iter().map(|&s| s.into()).collect();
    fwht(&mut coeffs);
    WalshSpectrum { n: f.n(), coeffs }
}

/// Inverts a spectrum; fails unless every reconstructed value is `±1`.
pub fn walsh_inverse(spec: &WalshSpectrum) -> Result<CubeFunction> {
    let mut values = spec.coeffs.clone();
    fwht(&mut values);
    let scale = 1i64 << spec.n;
    let table = values
        .into_iter()
        .map(|x| match x {
            x if x == scale => Ok(1),
            x if x == -scale => Ok(-1),
            _ => Err(Error::NonBooleanSpectrum),
        })
        .collect::<Result<Vec<i8>>>()?;
    CubeFunction::from_table(spec.n, table)
}

impl WalshSpectrum {
    pub fn from_coeffs(n: usize, coeffs: Vec<i64>) -> Result<Self> {
        check_dim(n)?;
        if coeffs.len() != 1 << n {
            return Err(Error::TableLength {
                got: coeffs.len(),
                expected: 1 << n,
            });
        }
        Ok(WalshSpectrum { n, coeffs })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn coeff(&self, set: u64) -> i64 {
        self.coeffs[set as usize]
    }

    /// Subsets (as masks) with nonzero coefficient, in increasing mask order.
    pub fn support(&self) -> Vec<u64> {
        (0..self.coeffs.len() as u64)
            .filter(|&s| self.coeffs[s as usize] != 0)
            .collect()
    }

    pub fn support_size(&self) -> usize {
        self.coeffs.iter().filter(|&&c| c != 0).count()
    }

    pub fn parseval_sum(&self) -> u128 {
        self.coeffs.iter().map(|&c| (c as i128 * c as i128) as u128).sum()
    }

    /// Sorted absolute values of the coefficients on sets of size `d`.
    pub fn degree_abs_multiset(&self, d: usize) -> Vec<u64> {
        let mut out: Vec<u64> = (0..self.coeffs.len())
            .filter(|&s| (s as u64).count_ones() as usize == d)
            .map(|s| self.coeffs[s].unsigned_abs())
            .collect();
        out.sort_unstable();
        out
    }

    /// `sum_{|S|=d} (c_S / 2^n)^2`.
    pub fn degree_weight(&self, d: usize) -> Result<Rational> {
        if d > self.n {
            return Err(Error::out_of_range("degree", d, format!("0..={}", self.n)));
        }
        let num: u128 = (0..self.coeffs.len())
            .filter(|&s| (s as u64).count_ones() as usize == d)
            .map(|s| {
                let c = self.coeffs[s] as i128;
                (c * c) as u128
            })
            .sum();
        let den = 1u128 << (2 * self.n);
        let g = num_integer::gcd(num, den);
        Ok(Rational::new_raw((num / g) as u64, (den / g) as u64))
    }
}

pub fn degree_weight(spec: &WalshSpectrum, d: usize) -> Result<Rational> {
    spec.degree_weight(d)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{base_h, parity_g};

    /// Direct O(4^n) summation.
    fn naive(f: &CubeFunction) -> Vec<i64> {
        let n = f.n() as u32;
        (0..1u64 << n)
            .map(|s| {
                (0..1u64 << n)
                    .map(|v| {
                        let chi = if (v & s).count_ones() % 2 == 0 { 1 } else { -1 };
                        i64::from(f.eval(v)) * chi
                    })
                    .sum()
            })
            .collect()
    }

    #[test]
    fn dictator_on_one_bit() {
        let x1 = CubeFunction::monomial(1, 1).unwrap();
        let spec = walsh_transform(&x1);
        assert_eq!(spec.coeffs(), &[0, 2]);
    }

    #[test]
    fn constant_function() {
        let one = CubeFunction::constant(3, 1).unwrap();
        let spec = walsh_transform(&one);
        assert_eq!(spec.coeff(0), 8);
        assert_eq!(spec.support_size(), 1);
    }

    #[test]
    fn h_has_four_half_coefficients() {
        let spec = walsh_transform(&base_h());
        // x1x2 + x2x3 - x3x4 + x1x4, each with coefficient 1/2 => c_S = 8
        let expected = [(0b0011u64, 8i64), (0b0110, 8), (0b1100, -8), (0b1001, 8)];
        assert_eq!(spec.support_size(), 4);
        for (set, c) in expected {
            assert_eq!(spec.coeff(set), c, "set {set:04b}");
        }
        assert_eq!(spec.coeff(0), 0);
    }

    #[test]
    fn matches_naive_summation() {
        let f = CubeFunction::from_fn(4, |v| if (v * 7 + 3) % 5 < 2 { 1 } else { -1 }).unwrap();
        assert_eq!(walsh_transform(&f).coeffs(), naive(&f).as_slice());
        assert_eq!(walsh_transform(&base_h()).coeffs(), naive(&base_h()).as_slice());
    }

    #[test]
    fn degree_weights() {
        let h = walsh_transform(&base_h());
        assert_eq!(h.degree_weight(2).unwrap(), Rational::from_integer(1));
        let g4 = walsh_transform(&parity_g(4).unwrap());
        assert_eq!(g4.degree_weight(2).unwrap(), Rational::from_integer(1));
        assert_eq!(g4.degree_weight(0).unwrap(), Rational::from_integer(0));
        assert!(g4.degree_weight(5).is_err());
    }

    #[test]
    fn inverse_rejects_non_boolean() {
        let spec = WalshSpectrum::from_coeffs(1, vec![1, 1]).unwrap();
        assert_eq!(walsh_inverse(&spec), Err(Error::NonBooleanSpectrum));
        let spec = WalshSpectrum::from_coeffs(1, vec![2, 0]).unwrap();
        assert_eq!(walsh_inverse(&spec).unwrap(), CubeFunction::constant(1, 1).unwrap());
    }
}
