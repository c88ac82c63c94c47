//! Periodic colorings of the Cayley graph of `Z` with a finite generating
//! set `S`: `x ~ x ± s` for every `s` in `S`.

use std::fmt;

use crate::error::{Error, Result};
use crate::Rational;

/// Largest period for the exhaustive search.
pub const SEARCH_MAX_PERIOD: usize = 24;

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct CayleyZFunction {
    period: usize,
    generators: Vec<u64>,
    pattern: Vec<i8>,
}

impl CayleyZFunction {
    pub fn new(generators: &[u64], pattern: Vec<i8>) -> Result<Self> {
        if pattern.is_empty() {
            return Err(Error::Precondition("period must be at least 1".into()));
        }
        if let Some((index, &value)) = pattern.iter().enumerate().find(|(_, &s)| s != 1 && s != -1) {
            return Err(Error::NotASign {
                index,
                value: value.into(),
            });
        }
        Ok(CayleyZFunction {
            period: pattern.len(),
            generators: normalize_generators(generators)?,
            pattern,
        })
    }

    pub fn period(&self) -> usize {
        self.period
    }

    pub fn generators(&self) -> &[u64] {
        &self.generators
    }

    pub fn pattern(&self) -> &[i8] {
        &self.pattern
    }

    pub fn eval(&self, x: i64) -> i8 {
        self.pattern[x.rem_euclid(self.period as i64) as usize]
    }
}

impl fmt::Display for CayleyZFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &s in &self.pattern {
            f.write_str(if s > 0 { "+" } else { "-" })?;
        }
        Ok(())
    }
}

fn normalize_generators(generators: &[u64]) -> Result<Vec<u64>> {
    if generators.is_empty() {
        return Err(Error::Precondition("generator set is empty".into()));
    }
    if generators.contains(&0) {
        return Err(Error::Precondition("generators must be positive".into()));
    }
    let mut gens = generators.to_vec();
    gens.sort_unstable();
    if gens.windows(2).any(|w| w[0] == w[1]) {
        return Err(Error::Precondition("generators must be distinct".into()));
    }
    Ok(gens)
}

/// `+1` on `[0, a+b)` and `-1` on `[a+b, 2(a+b))`, generators `{a, b}`.
pub fn cayley_half_biased(a: u64, b: u64) -> Result<CayleyZFunction> {
    if a <= 1 || b <= 1 || a == b {
        return Err(Error::Precondition(format!("need distinct a, b > 1, got {a}, {b}")));
    }
    let half = (a + b) as usize;
    let pattern = (0..2 * half).map(|x| if x < half { 1 } else { -1 }).collect();
    CayleyZFunction::new(&[a, b], pattern)
}

/// `Some(p)` iff every residue has exactly `2|S|p` of its neighbors `r ± s`
/// colored `+1`.
pub fn verify_cayley_bias(f: &CayleyZFunction) -> Option<Rational> {
    let period = f.period as u64;
    let count_at = |r: u64| -> u64 {
        f.generators
            .iter()
            .map(|&s| {
                let s = s % period;
                let up = f.pattern[((r + s) % period) as usize];
                let down = f.pattern[((r + period - s) % period) as usize];
                u64::from(up == 1) + u64::from(down == 1)
            })
            .sum()
    };
    let first = count_at(0);
    (1..period)
        .all(|r| count_at(r) == first)
        .then(|| Rational::new(first, 2 * f.generators.len() as u64))
}

/// Patterns of length `period` as bit masks: bit `i` set iff position `i` is `+1`.
fn is_biased_bits(bits: u32, period: usize, gens: &[u64], count: u64) -> bool {
    let bit = |i: usize| (bits >> i) & 1;
    (0..period).all(|r| {
        gens.iter()
            .map(|&s| {
                let s = (s % period as u64) as usize;
                u64::from(bit((r + s) % period)) + u64::from(bit((r + period - s) % period))
            })
            .sum::<u64>()
            == count
    })
}

/// Sort key: the `+`/`-` string read as a binary number with `-` = 1.
fn order_key(bits: u32, period: usize) -> u32 {
    (0..period).fold(0, |acc, i| (acc << 1) | (1 - ((bits >> i) & 1)))
}

fn rotate(bits: u32, period: usize, k: usize) -> u32 {
    (0..period).fold(0, |acc, i| acc | (((bits >> ((i + k) % period)) & 1) << i))
}

fn reflect(bits: u32, period: usize) -> u32 {
    (0..period).fold(0, |acc, i| acc | (((bits >> ((period - i) % period)) & 1) << i))
}

fn is_primitive(bits: u32, period: usize) -> bool {
    (1..period)
        .filter(|d| period.is_multiple_of(*d))
        .all(|d| rotate(bits, period, d) != bits)
}

/// Minimal order key over rotations and reflections.
fn canonical_key(bits: u32, period: usize) -> u32 {
    let mirrored = reflect(bits, period);
    (0..period)
        .flat_map(|k| [rotate(bits, period, k), rotate(mirrored, period, k)])
        .map(|b| order_key(b, period))
        .min()
        .unwrap()
}

/// Canonical representative of a pattern's class under translation,
/// reflection and reduction to its primitive period.
pub fn canonicalize_cayley(f: &CayleyZFunction) -> CayleyZFunction {
    let full = f.period;
    let primitive = (1..=full)
        .find(|&d| full.is_multiple_of(d) && (0..full).all(|i| f.pattern[i] == f.pattern[i % d]))
        .unwrap();
    if primitive > 32 {
        // only reachable with patterns longer than any search handles
        return f.clone();
    }
    let bits = (0..primitive).fold(0u32, |acc, i| acc | (u32::from(f.pattern[i] == 1) << i));
    let key = canonical_key(bits, primitive);
    let pattern = (0..primitive)
        .map(|i| if (key >> (primitive - 1 - i)) & 1 == 1 { -1 } else { 1 })
        .collect();
    CayleyZFunction {
        period: primitive,
        generators: f.generators.clone(),
        pattern,
    }
}

/// Every locally `p`-biased coloring of Cayley(Z, S) with period at most
/// `max_period`, one representative per class (translation, reflection,
/// primitive period), sorted by period and then by pattern string.
pub fn search_cayley(generators: &[u64], max_period: usize, p: Rational) -> Result<Vec<CayleyZFunction>> {
    search_cayley_threaded(generators, max_period, p, 1)
}

/// [`search_cayley`] with periods spread over `threads` workers.
pub fn search_cayley_threaded(
    generators: &[u64],
    max_period: usize,
    p: Rational,
    threads: usize,
) -> Result<Vec<CayleyZFunction>> {
    let gens = normalize_generators(generators)?;
    if max_period == 0 || max_period > SEARCH_MAX_PERIOD {
        return Err(Error::out_of_range("period bound", max_period, format!("1..={SEARCH_MAX_PERIOD}")));
    }
    if p > Rational::from_integer(1) {
        return Err(Error::Precondition(format!("p = {p} exceeds 1")));
    }
    let degree = 2 * gens.len() as u64;
    let count = p * Rational::from_integer(degree);
    if !count.is_integer() {
        return Ok(Vec::new());
    }
    let count = count.to_integer();
    let periods: Vec<usize> = (1..=max_period)
        // a p-biased coloring has density p, by double counting
        .filter(|&period| (p * Rational::from_integer(period as u64)).is_integer())
        .collect();
    let search = |period: usize| -> Vec<(usize, u32)> {
        let ones = (p * Rational::from_integer(period as u64)).to_integer() as u32;
        fixed_weight_masks(period, ones)
            .filter(|&bits| {
                is_biased_bits(bits, period, &gens, count)
                    && is_primitive(bits, period)
                    && canonical_key(bits, period) == order_key(bits, period)
            })
            .map(|bits| (period, order_key(bits, period)))
            .collect()
    };
    let threads = threads.max(1);
    let mut found: Vec<(usize, u32)> = if threads == 1 {
        periods.iter().flat_map(|&period| search(period)).collect()
    } else {
        std::thread::scope(|scope| {
            let handles: Vec<_> = (0..threads)
                .map(|w| {
                    let mine: Vec<usize> = periods.iter().copied().skip(w).step_by(threads).collect();
                    let search = &search;
                    scope.spawn(move || mine.into_iter().flat_map(search).collect::<Vec<_>>())
                })
                .collect();
            handles.into_iter().flat_map(|h| h.join().expect("search worker panicked")).collect()
        })
    };
    found.sort_unstable();
    Ok(found
        .into_iter()
        .map(|(period, key)| CayleyZFunction {
            period,
            generators: gens.clone(),
            pattern: (0..period)
                .map(|i| if (key >> (period - 1 - i)) & 1 == 1 { -1 } else { 1 })
                .collect(),
        })
        .collect())
}

/// All `period`-bit masks with exactly `weight` bits set (Gosper's hack).
fn fixed_weight_masks(period: usize, weight: u32) -> impl Iterator<Item = u32> {
    let limit = 1u64 << period;
    let first = if weight == 0 { 0u64 } else { (1u64 << weight) - 1 };
    let mut next = Some(first).filter(|&x| x < limit && weight as usize <= period);
    std::iter::from_fn(move || {
        let cur = next?;
        next = if cur == 0 {
            None
        } else {
            let c = cur & cur.wrapping_neg();
            let r = cur + c;
            let n = (((r ^ cur) >> 2) / c) | r;
            Some(n).filter(|&x| x < limit)
        };
        Some(cur as u32)
    })
}
