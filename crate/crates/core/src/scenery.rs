//! Random-walk sceneries on the hypercube and their exact laws.
//!
//! The walk is simple (non-lazy) and starts from the uniform distribution.
//! Exact laws are computed depth-first over word prefixes, carrying for each
//! prefix the number of (start, step sequence) pairs that produce it and end
//! at each vertex; after `L` steps the counts are divided by `2^n n^L`.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::cube::CubeFunction;
use crate::error::{Error, Result};
use crate::Rational;

/// Longest word a [`SignWord`] can hold.
pub const MAX_WORD_LEN: usize = 32;

/// A word over `{-1,+1}`. Ordering is lexicographic with `+1` before `-1`,
/// the order of the `+`/`-` strings.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SignWord {
    len: u8,
    /// bit `len - 1 - i` is set iff sign `i` is `-1`
    code: u32,
}

impl SignWord {
    pub fn from_signs(signs: &[i8]) -> Result<Self> {
        if signs.len() > MAX_WORD_LEN {
            return Err(Error::out_of_range("word length", signs.len(), format!("0..={MAX_WORD_LEN}")));
        }
        let mut code = 0u32;
        for (i, &s) in signs.iter().enumerate() {
            match s {
                1 => {}
                -1 => code |= 1 << (signs.len() - 1 - i),
                other => {
                    return Err(Error::NotASign {
                        index: i,
                        value: other.into(),
                    })
                }
            }
        }
        Ok(SignWord {
            len: signs.len() as u8,
            code,
        })
    }

    fn from_code(len: usize, code: u32) -> Self {
        SignWord { len: len as u8, code }
    }

    pub fn len(&self) -> usize {
        self.len as usize
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn code(&self) -> u32 {
        self.code
    }

    pub fn sign(&self, i: usize) -> i8 {
        if (self.code >> (self.len() - 1 - i)) & 1 == 1 {
            -1
        } else {
            1
        }
    }

    pub fn signs(&self) -> Vec<i8> {
        (0..self.len()).map(|i| self.sign(i)).collect()
    }

    pub fn count_plus(&self) -> usize {
        self.len() - self.code.count_ones() as usize
    }
}

impl fmt::Display for SignWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.len() {
            f.write_str(if self.sign(i) > 0 { "+" } else { "-" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for SignWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SignWord({self})")
    }
}

impl FromStr for SignWord {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let signs = s
            .chars()
            .enumerate()
            .map(|(i, c)| match c {
                '+' => Ok(1),
                '-' => Ok(-1),
                other => Err(Error::parse(1, i + 1, format!("unexpected character {other:?}"))),
            })
            .collect::<Result<Vec<i8>>>()?;
        SignWord::from_signs(&signs)
    }
}

/// A walk on the `n`-cube; consecutive vertices differ in exactly one bit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Walk {
    n: usize,
    vertices: Vec<u64>,
}

impl Walk {
    pub fn new(n: usize, vertices: Vec<u64>) -> Result<Self> {
        crate::cube::check_dim(n)?;
        if vertices.is_empty() {
            return Err(Error::Precondition("a walk has at least one vertex".into()));
        }
        if let Some(&v) = vertices.iter().find(|&&v| v >> n != 0) {
            return Err(Error::VertexOutOfRange { vertex: v, n });
        }
        if let Some(w) = vertices.windows(2).find(|w| (w[0] ^ w[1]).count_ones() != 1) {
            return Err(Error::Precondition(format!("{} and {} are not adjacent", w[0], w[1])));
        }
        Ok(Walk { n, vertices })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn vertices(&self) -> &[u64] {
        &self.vertices
    }

    /// Number of steps.
    pub fn steps(&self) -> usize {
        self.vertices.len() - 1
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Start {
    Vertex(u64),
    Uniform,
}

/// Simple random walk of `steps` steps. Randomness comes from ChaCha8 seeded
/// with `seed` through `SeedableRng::seed_from_u64`, so walks are identical
/// across platforms.
pub fn random_walk(n: usize, steps: usize, seed: u64, start: Start) -> Result<Walk> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    random_walk_with(&mut rng, n, steps, start)
}

fn random_walk_with(rng: &mut impl Rng, n: usize, steps: usize, start: Start) -> Result<Walk> {
    crate::cube::check_dim(n)?;
    let first = match start {
        Start::Vertex(v) if v >> n != 0 => return Err(Error::VertexOutOfRange { vertex: v, n }),
        Start::Vertex(v) => v,
        Start::Uniform => rng.random_range(0..1u64 << n),
    };
    let mut vertices = Vec::with_capacity(steps + 1);
    vertices.push(first);
    let mut cur = first;
    for _ in 0..steps {
        cur ^= 1 << rng.random_range(0..n);
        vertices.push(cur);
    }
    Ok(Walk { n, vertices })
}

/// `(f(S_0), ..., f(S_L))`.
pub fn scenery(f: &CubeFunction, walk: &Walk) -> Result<Vec<i8>> {
    if f.n() != walk.n {
        return Err(Error::DimensionMismatch {
            left: f.n(),
            right: walk.n,
        });
    }
    Ok(walk.vertices.iter().map(|&v| f.eval(v)).collect())
}

/// Samples `samples` walks of `steps` steps from uniform starts and counts the
/// observed scenery words.
pub fn sample_scenery_counts(f: &CubeFunction, steps: usize, samples: u64, seed: u64) -> Result<BTreeMap<SignWord, u64>> {
    if steps + 1 > MAX_WORD_LEN {
        return Err(Error::out_of_range("walk length", steps, format!("0..{MAX_WORD_LEN}")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut counts = BTreeMap::new();
    for _ in 0..samples {
        let walk = random_walk_with(&mut rng, f.n(), steps, Start::Uniform)?;
        let word = SignWord::from_signs(&scenery(f, &walk)?)?;
        *counts.entry(word).or_insert(0) += 1;
    }
    Ok(counts)
}

/// Exact law of sign words of a fixed length.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SceneryDistribution {
    len: usize,
    /// indexed by `SignWord::code`
    probs: Vec<BigRational>,
}

impl SceneryDistribution {
    fn zeros(len: usize) -> Self {
        SceneryDistribution {
            len,
            probs: vec![BigRational::zero(); 1 << len],
        }
    }

    pub fn word_len(&self) -> usize {
        self.len
    }

    pub fn prob(&self, word: &SignWord) -> BigRational {
        if word.len() != self.len {
            return BigRational::zero();
        }
        self.probs[word.code as usize].clone()
    }

    /// Words with positive probability, in lexicographic order.
    pub fn iter(&self) -> impl Iterator<Item = (SignWord, &BigRational)> {
        self.probs
            .iter()
            .enumerate()
            .filter(|(_, p)| !p.is_zero())
            .map(|(code, p)| (SignWord::from_code(self.len, code as u32), p))
    }

    pub fn total(&self) -> BigRational {
        self.probs.iter().sum()
    }

    pub fn support_size(&self) -> usize {
        self.probs.iter().filter(|p| !p.is_zero()).count()
    }
}

impl fmt::Display for SceneryDistribution {
    /// One line per word: `<word> <num>/<den>`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (word, p) in self.iter() {
            writeln!(f, "{word} {}/{}", p.numer(), p.denom())?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SceneryLimits {
    pub max_n: usize,
    pub max_steps: usize,
}

impl Default for SceneryLimits {
    fn default() -> Self {
        SceneryLimits {
            max_n: 12,
            max_steps: 12,
        }
    }
}

fn check_limits(f: &CubeFunction, steps: usize, limits: SceneryLimits) -> Result<u128> {
    if f.n() > limits.max_n || steps > limits.max_steps || steps + 1 > MAX_WORD_LEN {
        return Err(Error::Infeasible(format!(
            "n = {}, L = {steps} exceeds n <= {}, L <= {}",
            f.n(),
            limits.max_n,
            limits.max_steps
        )));
    }
    (0..steps)
        .try_fold(1u128 << f.n(), |acc, _| acc.checked_mul(f.n() as u128))
        .ok_or_else(|| Error::Infeasible("path count overflows 128 bits".into()))
}

fn to_rational(count: u128, total: u128) -> BigRational {
    BigRational::new(BigInt::from(count), BigInt::from(total))
}

/// Neighbor sums: `out[w] = sum_{v ~ w} mass[v]`.
fn spread(n: usize, mass: &[u128]) -> Vec<u128> {
    (0..mass.len())
        .map(|w| (0..n).map(|i| mass[w ^ (1 << i)]).sum())
        .collect()
}

/// Exact law of `(f(S_0), ..., f(S_L))` under a uniform start.
pub fn exact_scenery_distribution(f: &CubeFunction, steps: usize) -> Result<SceneryDistribution> {
    exact_scenery_distribution_with(f, steps, SceneryLimits::default())
}

pub fn exact_scenery_distribution_with(f: &CubeFunction, steps: usize, limits: SceneryLimits) -> Result<SceneryDistribution> {
    let total = check_limits(f, steps, limits)?;
    let mut out = SceneryDistribution::zeros(steps + 1);
    let table = f.table();
    for s in [1i8, -1] {
        let mass: Vec<u128> = table.iter().map(|&x| u128::from(x == s)).collect();
        let code = u32::from(s < 0);
        scenery_dfs(f, mass, code, 0, steps, total, &mut out);
    }
    Ok(out)
}

fn scenery_dfs(
    f: &CubeFunction,
    mass: Vec<u128>,
    code: u32,
    depth: usize,
    steps: usize,
    total: u128,
    out: &mut SceneryDistribution,
) {
    let weight: u128 = mass.iter().sum();
    if weight == 0 {
        return;
    }
    if depth == steps {
        out.probs[code as usize] = to_rational(weight, total);
        return;
    }
    let spread = spread(f.n(), &mass);
    for s in [1i8, -1] {
        let next: Vec<u128> = spread
            .iter()
            .zip(f.table())
            .map(|(&m, &x)| if x == s { m } else { 0 })
            .collect();
        scenery_dfs(f, next, (code << 1) | u32::from(s < 0), depth + 1, steps, total, out);
    }
}

/// Exact law of `(f(S_0) f(S_1), ..., f(S_{L-1}) f(S_L))` under a uniform start.
pub fn stability_pair_distribution(f: &CubeFunction, steps: usize) -> Result<SceneryDistribution> {
    stability_pair_distribution_with(f, steps, SceneryLimits::default())
}

pub fn stability_pair_distribution_with(
    f: &CubeFunction,
    steps: usize,
    limits: SceneryLimits,
) -> Result<SceneryDistribution> {
    let total = check_limits(f, steps, limits)?;
    let mut out = SceneryDistribution::zeros(steps);
    let mass = vec![1u128; f.table().len()];
    pair_dfs(f, mass, 0, 0, steps, total, &mut out);
    Ok(out)
}

fn pair_dfs(
    f: &CubeFunction,
    mass: Vec<u128>,
    code: u32,
    depth: usize,
    steps: usize,
    total: u128,
    out: &mut SceneryDistribution,
) {
    let weight: u128 = mass.iter().sum();
    if weight == 0 {
        return;
    }
    if depth == steps {
        out.probs[code as usize] = to_rational(weight, total);
        return;
    }
    let n = f.n();
    for e in [1i8, -1] {
        let next: Vec<u128> = (0..mass.len())
            .map(|w| {
                let fw = f.eval(w as u64);
                (0..n)
                    .map(|i| w ^ (1 << i))
                    .filter(|&v| f.eval(v as u64) * fw == e)
                    .map(|v| mass[v])
                    .sum()
            })
            .collect();
        pair_dfs(f, next, (code << 1) | u32::from(e < 0), depth + 1, steps, total, out);
    }
}

/// Product law of `len` independent signs with `P(+1) = p`.
pub fn bernoulli_product(p: Rational, len: usize) -> Result<SceneryDistribution> {
    if p > Rational::from_integer(1) {
        return Err(Error::Precondition(format!("p = {p} exceeds 1")));
    }
    if len > 20 {
        return Err(Error::Infeasible(format!("word length {len} exceeds 20")));
    }
    let plus = BigRational::new(BigInt::from(*p.numer()), BigInt::from(*p.denom()));
    let minus = BigRational::one() - &plus;
    let mut out = SceneryDistribution::zeros(len);
    for (code, slot) in out.probs.iter_mut().enumerate() {
        let word = SignWord::from_code(len, code as u32);
        let k = word.count_plus();
        *slot = num_traits::pow(plus.clone(), k) * num_traits::pow(minus.clone(), len - k);
    }
    Ok(out)
}

pub fn distributions_equal(a: &SceneryDistribution, b: &SceneryDistribution) -> Result<bool> {
    if a.len != b.len {
        return Err(Error::DimensionMismatch {
            left: a.len,
            right: b.len,
        });
    }
    Ok(a.probs == b.probs)
}

#[derive(Debug, Clone, PartialEq)]
pub struct ChiSquareReport {
    /// Pearson statistic over words with positive reference probability.
    pub statistic: f64,
    /// Number of such words minus one.
    pub dof: usize,
    pub total: u64,
    /// Observed words the reference gives probability zero.
    pub incompatible: Vec<SignWord>,
}

pub fn chi_square_report(counts: &BTreeMap<SignWord, u64>, reference: &SceneryDistribution) -> Result<ChiSquareReport> {
    let total: u64 = counts.values().sum();
    if total == 0 {
        return Err(Error::Precondition("no samples".into()));
    }
    if let Some(w) = counts.keys().find(|w| w.len() != reference.word_len()) {
        return Err(Error::DimensionMismatch {
            left: w.len(),
            right: reference.word_len(),
        });
    }
    let to_f64 = |p: &BigRational| p.to_f64().unwrap_or(f64::NAN);
    let mut statistic = 0.0;
    let mut support = 0usize;
    for (word, p) in reference.iter() {
        support += 1;
        let expected = to_f64(p) * total as f64;
        let observed = counts.get(&word).copied().unwrap_or(0) as f64;
        statistic += (observed - expected).powi(2) / expected;
    }
    let incompatible = counts
        .iter()
        .filter(|(w, &c)| c > 0 && reference.prob(w).is_zero())
        .map(|(w, _)| *w)
        .collect();
    Ok(ChiSquareReport {
        statistic,
        dof: support.saturating_sub(1),
        total,
        incompatible,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{parity_g, stable_parity};

    fn w(s: &str) -> SignWord {
        s.parse().unwrap()
    }

    #[test]
    fn word_order_and_parsing() {
        assert!(w("++") < w("+-"));
        assert!(w("+-") < w("-+"));
        assert_eq!(w("+-+").signs(), vec![1, -1, 1]);
        assert_eq!(w("+-+").to_string(), "+-+");
        assert!("+x".parse::<SignWord>().is_err());
    }

    #[test]
    fn walks() {
        let walk = random_walk(3, 0, 1, Start::Uniform).unwrap();
        assert_eq!(walk.vertices().len(), 1);

        let walk = random_walk(1, 6, 9, Start::Vertex(1)).unwrap();
        assert_eq!(walk.vertices(), &[1, 0, 1, 0, 1, 0, 1]);

        let a = random_walk(6, 50, 42, Start::Uniform).unwrap();
        let b = random_walk(6, 50, 42, Start::Uniform).unwrap();
        assert_eq!(a, b);
        assert!(Walk::new(a.n(), a.vertices().to_vec()).is_ok());
        assert!(Walk::new(2, vec![0, 3]).is_err());
    }

    #[test]
    fn sceneries() {
        let walk = random_walk(1, 4, 0, Start::Vertex(0)).unwrap();
        let x1 = CubeFunction::monomial(1, 1).unwrap();
        assert_eq!(scenery(&x1, &walk).unwrap(), vec![1, -1, 1, -1, 1]);
        let one = CubeFunction::constant(1, 1).unwrap();
        assert_eq!(scenery(&one, &walk).unwrap(), vec![1; 5]);
        assert!(scenery(&parity_g(4).unwrap(), &walk).is_err());
    }

    #[test]
    fn one_symbol_law_is_support_fraction() {
        let f = CubeFunction::from_fn(3, |v| if v < 3 { 1 } else { -1 }).unwrap();
        let d = exact_scenery_distribution(&f, 0).unwrap();
        let expected = BigRational::new(BigInt::from(3), BigInt::from(8));
        assert_eq!(d.prob(&w("+")), expected);
    }

    #[test]
    fn constant_minus_is_point_mass() {
        let f = CubeFunction::constant(3, -1).unwrap();
        let d = exact_scenery_distribution(&f, 4).unwrap();
        assert_eq!(d.support_size(), 1);
        assert_eq!(d.prob(&w("-----")), BigRational::one());
    }

    #[test]
    fn bernoulli_laws() {
        let d = bernoulli_product(Rational::from_integer(0), 3).unwrap();
        assert_eq!(d.prob(&w("---")), BigRational::one());
        let d = bernoulli_product(Rational::new(1, 2), 3).unwrap();
        assert_eq!(d.support_size(), 8);
        assert!(d.iter().all(|(_, p)| *p == BigRational::new(1.into(), 8.into())));
        let d = bernoulli_product(Rational::new(1, 8), 2).unwrap();
        assert_eq!(d.prob(&w("++")), BigRational::new(1.into(), 64.into()));
        assert_eq!(d.total(), BigRational::one());
    }

    #[test]
    fn pair_laws() {
        let parity = CubeFunction::monomial(3, 0b111).unwrap();
        let d = stability_pair_distribution(&parity, 3).unwrap();
        assert_eq!(d.prob(&w("---")), BigRational::one());
        let one = CubeFunction::constant(3, 1).unwrap();
        let d = stability_pair_distribution(&one, 3).unwrap();
        assert_eq!(d.prob(&w("+++")), BigRational::one());
        let f = stable_parity(3, 1).unwrap();
        let d = stability_pair_distribution(&f, 4).unwrap();
        assert_eq!(d, bernoulli_product(Rational::new(1, 3), 4).unwrap());
    }

    #[test]
    fn equality_checks() {
        let g4 = exact_scenery_distribution(&parity_g(4).unwrap(), 3).unwrap();
        assert!(distributions_equal(&g4, &g4).unwrap());
        let point = bernoulli_product(Rational::from_integer(1), 4).unwrap();
        assert!(!distributions_equal(&g4, &point).unwrap());
        let short = bernoulli_product(Rational::from_integer(1), 3).unwrap();
        assert!(distributions_equal(&g4, &short).is_err());
    }

    #[test]
    fn guard() {
        let f = CubeFunction::constant(13, 1).unwrap();
        assert!(matches!(exact_scenery_distribution(&f, 2), Err(Error::Infeasible(_))));
        let f = CubeFunction::constant(2, 1).unwrap();
        assert!(exact_scenery_distribution(&f, 13).is_err());
    }

    #[test]
    fn chi_square() {
        let reference = bernoulli_product(Rational::new(1, 2), 3).unwrap();
        let proportional: BTreeMap<_, _> = reference.iter().map(|(w, _)| (w, 5)).collect();
        let r = chi_square_report(&proportional, &reference).unwrap();
        assert_eq!(r.statistic, 0.0);
        assert_eq!(r.dof, 7);

        let single: BTreeMap<_, _> = [(w("+++"), 8)].into_iter().collect();
        let r = chi_square_report(&single, &reference).unwrap();
        assert!((r.statistic - 56.0).abs() < 1e-12);

        let point = bernoulli_product(Rational::from_integer(1), 3).unwrap();
        let r = chi_square_report(&[(w("+-+"), 3), (w("+++"), 1)].into_iter().collect(), &point).unwrap();
        assert_eq!(r.incompatible, vec![w("+-+")]);
        assert!(chi_square_report(&BTreeMap::new(), &point).is_err());
    }
}
