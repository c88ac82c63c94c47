//! Builders for locally biased and locally stable functions.
//!
//! Every builder that takes a function checks its precondition with the
//! verifiers of [`crate::cube`], and products place their factors on
//! consecutive coordinate blocks in argument order.

use crate::codes::{hamming_code_unchecked, is_perfect_radius1, min_distance, parity_translates, BinaryCode};
use crate::cube::{check_dim, is_locally_biased, is_locally_stable, CubeFunction, MAX_DIM};
use crate::error::{Error, Result};
use crate::Rational;

fn half() -> Rational {
    Rational::new(1, 2)
}

fn require_half_biased(f: &CubeFunction, what: &str) -> Result<()> {
    match is_locally_biased(f) {
        Some(p) if p == half() => Ok(()),
        Some(p) => Err(Error::Precondition(format!("{what} is locally {p}-biased, not 1/2"))),
        None => Err(Error::Precondition(format!("{what} is not locally biased"))),
    }
}

fn low_mask(n: usize) -> u64 {
    (1u64 << n) - 1
}

/// `f(x) = +1` iff the first `n-1` coordinates of `x` form a codeword.
/// The code must be a perfect distance-3 code, so the result is locally
/// `1/n`-biased on `n = len + 1` coordinates.
pub fn biased_from_code(code: &BinaryCode) -> Result<CubeFunction> {
    if !is_perfect_radius1(code) {
        return Err(Error::InvalidCode("code is not a perfect radius-1 code".into()));
    }
    if code.len() >= 2 && min_distance(code)? != 3 {
        return Err(Error::InvalidCode("code does not have minimum distance 3".into()));
    }
    let n = code.n() + 1;
    check_dim(n)?;
    let mask = low_mask(code.n());
    CubeFunction::from_fn(n, |v| if code.contains(v & mask) { 1 } else { -1 })
}

/// Locally `m/2^k`-biased function on `2^k` coordinates: the union of the
/// cylinder functions over the parity translates `t = 0, ..., m-1` of the
/// rearranged Hamming code.
pub fn biased_m_over_n(k: u32, m: u64) -> Result<CubeFunction> {
    let n = 1usize << k;
    if n > MAX_DIM {
        return Err(Error::DimensionOutOfRange { n, max: MAX_DIM });
    }
    if m > n as u64 {
        return Err(Error::out_of_range("m", m, format!("0..={n}")));
    }
    if k == 0 {
        return CubeFunction::constant(1, if m == 1 { 1 } else { -1 });
    }
    let translates: Vec<BinaryCode> = if k == 1 {
        // {0} and {1} on one bit
        let base = hamming_code_unchecked(1);
        vec![base.clone(), crate::codes::xor_translate(&base, 1)?]
    } else {
        parity_translates(k)
    };
    let mask = low_mask(n - 1);
    let chosen = &translates[..m as usize];
    CubeFunction::from_fn(n, |v| {
        let w = v & mask;
        if chosen.iter().any(|c| c.contains(w)) {
            1
        } else {
            -1
        }
    })
}

/// `f'(x) = f(y)` on `c*n` coordinates, where `y_i = prod_j x_{i + j n}`.
pub fn tensor_lift(f: &CubeFunction, c: usize) -> Result<CubeFunction> {
    tensor_lift_with_max(f, c, MAX_DIM)
}

pub fn tensor_lift_with_max(f: &CubeFunction, c: usize, max_dim: usize) -> Result<CubeFunction> {
    if c == 0 {
        return Err(Error::out_of_range("lift factor", c, ">= 1"));
    }
    let n = f.n();
    let big = n.saturating_mul(c);
    if big > max_dim.min(MAX_DIM) {
        return Err(Error::DimensionOutOfRange {
            n: big,
            max: max_dim.min(MAX_DIM),
        });
    }
    let mask = low_mask(n);
    CubeFunction::from_fn(big, |v| {
        let y = (0..c).fold(0, |acc, j| acc ^ ((v >> (j * n)) & mask));
        f.eval(y)
    })
}

/// `f(x) = f1(x_1..x_{n1}) * f2(x_{n1+1}..x_n)` without any checks.
pub(crate) fn block_product(f1: &CubeFunction, f2: &CubeFunction) -> Result<CubeFunction> {
    let n1 = f1.n();
    let n = n1 + f2.n();
    check_dim(n)?;
    let mask = low_mask(n1);
    CubeFunction::from_fn(n, |v| f1.eval(v & mask) * f2.eval(v >> n1))
}

/// Product of two locally 1/2-biased functions on disjoint coordinate blocks.
pub fn product(f1: &CubeFunction, f2: &CubeFunction) -> Result<CubeFunction> {
    require_half_biased(f1, "first factor")?;
    require_half_biased(f2, "second factor")?;
    block_product(f1, f2)
}

/// `g_n = x_1 ... x_{n/2}`.
pub fn parity_g(n: usize) -> Result<CubeFunction> {
    if n < 2 || !n.is_multiple_of(2) {
        return Err(Error::Precondition(format!("g_n needs even n >= 2, got {n}")));
    }
    CubeFunction::monomial(n, low_mask(n / 2))
}

/// `h(x) = (x1 x2 + x2 x3 - x3 x4 + x1 x4) / 2` on four coordinates.
pub fn base_h() -> CubeFunction {
    let x = |v: u64, i: usize| crate::cube::coordinate(v, i - 1) as i32;
    let table = (0..16u64)
        .map(|v| {
            let twice = x(v, 1) * x(v, 2) + x(v, 2) * x(v, 3) - x(v, 3) * x(v, 4) + x(v, 1) * x(v, 4);
            debug_assert!(twice == 2 || twice == -2);
            (twice / 2) as i8
        })
        .collect();
    CubeFunction::from_parts_unchecked(4, table)
}

/// `h_k(x) = h(prod_i x_{1+4i}, ..., prod_i x_{4+4i})` on `4k` coordinates.
pub fn h_k(k: usize) -> Result<CubeFunction> {
    if k == 0 {
        return Err(Error::out_of_range("k", k, ">= 1"));
    }
    tensor_lift(&base_h(), k)
}

/// Product of `h_{i_1}, ..., h_{i_j}` on consecutive blocks (signature sorted
/// ascending), completed by `g_{n-m}` on the remaining `n - m` coordinates.
pub fn half_biased_from_signature(n: usize, signature: &[usize]) -> Result<CubeFunction> {
    if n < 2 || !n.is_multiple_of(2) {
        return Err(Error::Precondition(format!("signature functions need even n >= 2, got {n}")));
    }
    check_dim(n)?;
    if signature.contains(&0) {
        return Err(Error::Precondition("signature entries must be >= 1".into()));
    }
    let used: usize = signature.iter().map(|i| 4 * i).sum();
    if used > n {
        return Err(Error::Precondition(format!(
            "signature needs {used} coordinates, only {n} available"
        )));
    }
    let mut parts = signature.to_vec();
    parts.sort_unstable();
    let mut factors = parts.into_iter().map(h_k).collect::<Result<Vec<_>>>()?;
    if used < n {
        factors.push(parity_g(n - used)?);
    }
    let mut iter = factors.into_iter();
    let first = iter.next().expect("n >= 2 gives at least one factor");
    iter.try_fold(first, |acc, f| block_product(&acc, &f))
}

/// Parity on the last `n - m` coordinates, `x_{m+1} ... x_n`; locally
/// `m/n`-stable.
pub fn stable_parity(n: usize, m: usize) -> Result<CubeFunction> {
    check_dim(n)?;
    if m > n {
        return Err(Error::out_of_range("m", m, format!("0..={n}")));
    }
    CubeFunction::monomial(n, low_mask(n) ^ low_mask(m))
}

/// `f'(x_1..x_{n+1}) = f(x_1..x_n) * x_{n+1}`; locally `(n/2)/(n+1)`-stable.
pub fn stable_from_biased(f: &CubeFunction) -> Result<CubeFunction> {
    require_half_biased(f, "input")?;
    let n = f.n();
    check_dim(n + 1)?;
    let mask = low_mask(n);
    CubeFunction::from_fn(n + 1, |v| f.eval(v & mask) * crate::cube::coordinate(v, n))
}

/// Extends a locally stable function to `new_n >= n` coordinates by ignoring
/// the extra ones.
pub fn stable_extend(f: &CubeFunction, new_n: usize) -> Result<CubeFunction> {
    if is_locally_stable(f).is_none() {
        return Err(Error::Precondition("input is not locally stable".into()));
    }
    if new_n < f.n() {
        return Err(Error::out_of_range("target dimension", new_n, format!(">= {}", f.n())));
    }
    check_dim(new_n)?;
    let mask = low_mask(f.n());
    CubeFunction::from_fn(new_n, |v| f.eval(v & mask))
}
