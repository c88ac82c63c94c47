//! Boolean functions on the hypercube `{-1,1}^n`, stored as full truth tables.
//!
//! Vertex ids run over `[0, 2^n)`. Coordinate `x_i` (1-based) of vertex `v` is
//! `+1` when bit `i-1` of `v` is clear and `-1` when it is set. Every module of
//! this crate and every file format uses the same convention.

use std::fmt;

use crate::error::{Error, Result};
use crate::Rational;

/// Largest dimension for which truth tables are materialized.
pub const MAX_DIM: usize = 24;

/// A `±1`-valued function on the `n`-dimensional hypercube.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CubeFunction {
    n: usize,
    table: Vec<i8>,
}

pub(crate) fn check_dim(n: usize) -> Result<()> {
    if n == 0 || n > MAX_DIM {
        return Err(Error::DimensionOutOfRange { n, max: MAX_DIM });
    }
    Ok(())
}

/// Value of coordinate `i` (0-based) at vertex `v`.
#[inline]
pub fn coordinate(v: u64, i: usize) -> i8 {
    if (v >> i) & 1 == 0 {
        1
    } else {
        -1
    }
}

/// The `n` neighbors of `v`, flipping coordinates 1..=n in order.
pub fn neighbors(v: u64, n: usize) -> Result<Vec<u64>> {
    if n == 0 || n > 63 {
        return Err(Error::DimensionOutOfRange { n, max: 63 });
    }
    if v >> n != 0 {
        return Err(Error::VertexOutOfRange { vertex: v, n });
    }
    Ok((0..n).map(|i| v ^ (1 << i)).collect())
}

impl CubeFunction {
    pub fn from_table(n: usize, table: Vec<i8>) -> Result<Self> {
        check_dim(n)?;
        let expected = 1usize << n;
        if table.len() != expected {
            return Err(Error::TableLength {
                got: table.len(),
                expected,
            });
        }
        if let Some((index, &value)) = table.iter().enumerate().find(|(_, &s)| s != 1 && s != -1) {
            return Err(Error::NotASign {
                index,
                value: value.into(),
            });
        }
        Ok(CubeFunction { n, table })
    }

    /// Builds a function by evaluating `f` at every vertex id. Any positive
    /// return value maps to `+1`, anything else to `-1`.
    pub fn from_fn(n: usize, mut f: impl FnMut(u64) -> i8) -> Result<Self> {
        check_dim(n)?;
        let table = (0..1u64 << n).map(|v| if f(v) > 0 { 1 } else { -1 }).collect();
        Ok(CubeFunction { n, table })
    }

    pub fn constant(n: usize, sign: i8) -> Result<Self> {
        Self::from_fn(n, |_| sign)
    }

    /// The character `chi_S(x) = prod_{i in S} x_i`, with `S` given as a bit mask.
    pub fn monomial(n: usize, set: u64) -> Result<Self> {
        Self::from_fn(n, |v| if (v & set).count_ones().is_multiple_of(2) { 1 } else { -1 })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn table(&self) -> &[i8] {
        &self.table
    }

    pub fn num_vertices(&self) -> u64 {
        1u64 << self.n
    }

    #[inline]
    pub fn eval(&self, v: u64) -> i8 {
        self.table[v as usize]
    }

    /// Number of vertices where the function is `+1`.
    pub fn support_size(&self) -> u64 {
        self.table.iter().filter(|&&s| s == 1).count() as u64
    }

    pub fn negate(&self) -> CubeFunction {
        CubeFunction {
            n: self.n,
            table: self.table.iter().map(|&s| -s).collect(),
        }
    }

    /// Pointwise product with a function of the same dimension.
    pub fn pointwise_mul(&self, other: &CubeFunction) -> Result<CubeFunction> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch {
                left: self.n,
                right: other.n,
            });
        }
        let table = self.table.iter().zip(&other.table).map(|(a, b)| a * b).collect();
        Ok(CubeFunction { n: self.n, table })
    }

    /// Truth table as a `+`/`-` string, character `v` is the sign of `f(v)`.
    pub fn to_sign_string(&self) -> String {
        self.table.iter().map(|&s| if s > 0 { '+' } else { '-' }).collect()
    }

    pub(crate) fn from_parts_unchecked(n: usize, table: Vec<i8>) -> Self {
        debug_assert_eq!(table.len(), 1 << n);
        CubeFunction { n, table }
    }
}

impl fmt::Debug for CubeFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.n <= 8 {
            write!(f, "CubeFunction(n={}, {})", self.n, self.to_sign_string())
        } else {
            write!(f, "CubeFunction(n={}, support={})", self.n, self.support_size())
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ProfileKind {
    /// Count neighbors where the function is `+1`.
    Bias,
    /// Count neighbors where the function agrees with its value at the vertex.
    Stability,
}

impl fmt::Display for ProfileKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ProfileKind::Bias => "biased",
            ProfileKind::Stability => "stable",
        })
    }
}

/// Per-vertex neighbor counts for one [`ProfileKind`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LocalProfile {
    pub kind: ProfileKind,
    pub n: usize,
    pub counts: Vec<u32>,
}

impl LocalProfile {
    /// The common count, if every vertex has the same one.
    pub fn constant_count(&self) -> Option<u32> {
        let first = *self.counts.first()?;
        self.counts.iter().all(|&c| c == first).then_some(first)
    }

    /// Number of vertices with each count `0..=n`.
    pub fn histogram(&self) -> Vec<u64> {
        let mut hist = vec![0u64; self.n + 1];
        for &c in &self.counts {
            hist[c as usize] += 1;
        }
        hist
    }
}

pub fn local_profile(f: &CubeFunction, kind: ProfileKind) -> LocalProfile {
    let n = f.n;
    let counts = (0..f.num_vertices())
        .map(|v| {
            let own = f.eval(v);
            (0..n)
                .filter(|&i| {
                    let y = f.eval(v ^ (1 << i));
                    match kind {
                        ProfileKind::Bias => y == 1,
                        ProfileKind::Stability => y == own,
                    }
                })
                .count() as u32
        })
        .collect();
    LocalProfile { kind, n, counts }
}

fn constant_fraction(f: &CubeFunction, kind: ProfileKind) -> Option<Rational> {
    local_profile(f, kind)
        .constant_count()
        .map(|c| Rational::new(c.into(), f.n as u64))
}

/// `Some(p)` iff every vertex has exactly `p*n` neighbors where `f = +1`.
pub fn is_locally_biased(f: &CubeFunction) -> Option<Rational> {
    constant_fraction(f, ProfileKind::Bias)
}

/// `Some(p)` iff every vertex agrees with `f` on exactly `p*n` neighbors.
pub fn is_locally_stable(f: &CubeFunction) -> Option<Rational> {
    constant_fraction(f, ProfileKind::Stability)
}

pub fn locally_constant(f: &CubeFunction, kind: ProfileKind) -> Option<Rational> {
    constant_fraction(f, kind)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(a: u64, b: u64) -> Rational {
        Rational::new(a, b)
    }

    #[test]
    fn neighbor_lists() {
        assert_eq!(neighbors(0, 2).unwrap(), vec![1, 2]);
        assert_eq!(neighbors(5, 3).unwrap(), vec![4, 7, 1]);
        assert_eq!(neighbors(0, 1).unwrap(), vec![1]);
        assert!(matches!(neighbors(8, 3), Err(Error::VertexOutOfRange { .. })));
    }

    #[test]
    fn table_validation() {
        assert!(CubeFunction::from_table(2, vec![1, 1, 1]).is_err());
        assert!(matches!(
            CubeFunction::from_table(1, vec![1, 0]),
            Err(Error::NotASign { index: 1, .. })
        ));
        assert!(CubeFunction::from_table(0, vec![1]).is_err());
        assert!(CubeFunction::from_table(1, vec![1, -1]).is_ok());
    }

    #[test]
    fn coordinate_encoding() {
        let x1 = CubeFunction::monomial(2, 0b01).unwrap();
        assert_eq!(x1.table(), &[1, -1, 1, -1]);
        let x2 = CubeFunction::monomial(2, 0b10).unwrap();
        assert_eq!(x2.table(), &[1, 1, -1, -1]);
    }

    #[test]
    fn profiles_of_simple_functions() {
        let one = CubeFunction::constant(2, 1).unwrap();
        assert_eq!(local_profile(&one, ProfileKind::Bias).counts, vec![2; 4]);

        let parity = CubeFunction::monomial(2, 0b11).unwrap();
        assert_eq!(local_profile(&parity, ProfileKind::Stability).counts, vec![0; 4]);

        let g4 = CubeFunction::monomial(4, 0b0011).unwrap();
        assert_eq!(local_profile(&g4, ProfileKind::Bias).counts, vec![2; 16]);
    }

    #[test]
    fn bias_and_stability_values() {
        let minus = CubeFunction::constant(3, -1).unwrap();
        assert_eq!(is_locally_biased(&minus), Some(r(0, 1)));
        assert_eq!(is_locally_stable(&minus), Some(r(1, 1)));

        // parity on n-1 of n variables
        for n in 2..=6 {
            let f = CubeFunction::monomial(n, (1 << n) - 2).unwrap();
            assert_eq!(is_locally_stable(&f), Some(r(1, n as u64)));
        }

        // a vertex indicator is neither
        let spike = CubeFunction::from_fn(3, |v| if v == 0 { 1 } else { -1 }).unwrap();
        assert_eq!(is_locally_biased(&spike), None);
        assert_eq!(is_locally_stable(&spike), None);
    }

    #[test]
    fn histogram_counts_vertices() {
        let spike = CubeFunction::from_fn(3, |v| if v == 0 { 1 } else { -1 }).unwrap();
        let hist = local_profile(&spike, ProfileKind::Bias).histogram();
        assert_eq!(hist, vec![5, 3, 0, 0]);
    }
}
