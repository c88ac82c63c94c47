//! Binary codes on `{0,1}^n` with words stored as bit masks (coordinate `i` is
//! bit `i-1`), Hamming codes and their xor translates.

use std::collections::BTreeSet;

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BinaryCode {
    n: usize,
    words: BTreeSet<u64>,
}

impl BinaryCode {
    pub fn new(n: usize, words: impl IntoIterator<Item = u64>) -> Result<Self> {
        if n == 0 || n > 32 {
            return Err(Error::InvalidCode(format!("word length {n} outside 1..=32")));
        }
        let mut set = BTreeSet::new();
        for w in words {
            if w >> n != 0 {
                return Err(Error::InvalidCode(format!("word {w:#b} has more than {n} bits")));
            }
            if !set.insert(w) {
                return Err(Error::InvalidCode(format!("duplicate word {w:#b}")));
            }
        }
        Ok(BinaryCode { n, words: set })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn contains(&self, w: u64) -> bool {
        self.words.contains(&w)
    }

    pub fn words(&self) -> impl Iterator<Item = u64> + '_ {
        self.words.iter().copied()
    }

    /// Word as a `0`/`1` string, coordinate `i` at character `i-1`.
    pub fn word_string(&self, w: u64) -> String {
        (0..self.n).map(|i| if (w >> i) & 1 == 1 { '1' } else { '0' }).collect()
    }
}

/// Position `i` (1-based) of a Hamming code is a parity position iff `i` is a
/// power of two.
fn is_parity_position(i: usize) -> bool {
    i.is_power_of_two()
}

/// Hamming code on `2^k - 1` bits. Data positions range over all bit strings;
/// parity position `i` holds the xor of data positions `j` with `i & j != 0`.
pub fn hamming_code(k: u32) -> Result<BinaryCode> {
    if k < 2 {
        return Err(Error::out_of_range("Hamming parameter k", k, ">= 2"));
    }
    if k > 4 {
        return Err(Error::out_of_range("Hamming parameter k", k, "2..=4"));
    }
    Ok(hamming_code_unchecked(k))
}

/// Also covers `k = 1`, the single-word code `{0}` on one bit.
pub(crate) fn hamming_code_unchecked(k: u32) -> BinaryCode {
    let n = (1usize << k) - 1;
    let data: Vec<usize> = (1..=n).filter(|&i| !is_parity_position(i)).collect();
    let words = (0..1u64 << data.len()).map(|d| {
        let mut word = 0u64;
        for (bit, &pos) in data.iter().enumerate() {
            word |= ((d >> bit) & 1) << (pos - 1);
        }
        for l in 0..k {
            let p = 1usize << l;
            let parity = data
                .iter()
                .filter(|&&j| p & j != 0)
                .fold(0, |acc, &j| acc ^ ((word >> (j - 1)) & 1));
            word |= parity << (p - 1);
        }
        word
    });
    BinaryCode {
        n,
        words: words.collect(),
    }
}

pub fn min_distance(code: &BinaryCode) -> Result<u32> {
    if code.len() < 2 {
        return Err(Error::InvalidCode("minimum distance needs at least 2 words".into()));
    }
    let words: Vec<u64> = code.words().collect();
    let mut best = u32::MAX;
    for (i, &a) in words.iter().enumerate() {
        for &b in &words[i + 1..] {
            best = best.min((a ^ b).count_ones());
        }
    }
    Ok(best)
}

/// Radius-1 balls around the words partition `{0,1}^n`.
pub fn is_perfect_radius1(code: &BinaryCode) -> bool {
    let n = code.n;
    if (code.len() as u64).checked_mul(n as u64 + 1) != Some(1u64 << n) {
        return false;
    }
    let mut covered = vec![false; 1 << n];
    for w in code.words() {
        for x in std::iter::once(w).chain((0..n).map(|i| w ^ (1 << i))) {
            if std::mem::replace(&mut covered[x as usize], true) {
                return false;
            }
        }
    }
    true
}

pub fn xor_translate(code: &BinaryCode, t: u64) -> Result<BinaryCode> {
    if t >> code.n != 0 {
        return Err(Error::out_of_range("translate mask", t, format!("< 2^{}", code.n)));
    }
    Ok(BinaryCode {
        n: code.n,
        words: code.words().map(|w| w ^ t).collect(),
    })
}

/// Coordinate order that puts the data positions of a length `2^k - 1` code
/// first (increasing) and the parity positions last (increasing). Entry `j`
/// is the old 1-based position that moves to new position `j + 1`.
pub fn parity_right_order(k: u32) -> Vec<usize> {
    let n = (1usize << k) - 1;
    let data = (1..=n).filter(|&i| !is_parity_position(i));
    let parity = (1..=n).filter(|&i| is_parity_position(i));
    data.chain(parity).collect()
}

/// Permutes the coordinates of a Hamming code so its `k` parity bits occupy
/// the rightmost positions. See [`parity_right_order`].
pub fn rearrange_parity_right(code: &BinaryCode, k: u32) -> Result<BinaryCode> {
    let n = (1usize << k) - 1;
    if code.n != n {
        return Err(Error::InvalidCode(format!(
            "expected word length {n} for k = {k}, got {}",
            code.n
        )));
    }
    let order = parity_right_order(k);
    let words = code.words().map(|w| {
        order
            .iter()
            .enumerate()
            .fold(0u64, |acc, (j, &old)| acc | (((w >> (old - 1)) & 1) << j))
    });
    Ok(BinaryCode {
        n,
        words: words.collect(),
    })
}

/// The `2^k` translates of the rearranged Hamming code by masks `t` written
/// into the parity coordinates, `t = 0, 1, ..., 2^k - 1`.
pub fn parity_translates(k: u32) -> Vec<BinaryCode> {
    let base = rearrange_parity_right(&hamming_code_unchecked(k), k).expect("matching length");
    let shift = base.n - k as usize;
    (0..1u64 << k)
        .map(|t| xor_translate(&base, t << shift).expect("mask fits"))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    /// All words of length 2^k - 1 satisfying the parity equations.
    fn brute_force_hamming(k: u32) -> BTreeSet<u64> {
        let n = (1usize << k) - 1;
        (0..1u64 << n)
            .filter(|&x| {
                (0..k).all(|l| {
                    let p = 1usize << l;
                    let lhs = (x >> (p - 1)) & 1;
                    let rhs = (1..=n)
                        .filter(|&j| !j.is_power_of_two() && p & j != 0)
                        .fold(0, |acc, j| acc ^ ((x >> (j - 1)) & 1));
                    lhs == rhs
                })
            })
            .collect()
    }

    #[test]
    fn hamming_small_codes() {
        let h2 = hamming_code(2).unwrap();
        assert_eq!(h2.n(), 3);
        assert_eq!(h2.words().collect::<Vec<_>>(), vec![0b000, 0b111]);

        let h3 = hamming_code(3).unwrap();
        assert_eq!(h3.n(), 7);
        assert_eq!(h3.len(), 16);
        assert_eq!(min_distance(&h3).unwrap(), 3);
        assert!(h3.contains(0));
        assert!(hamming_code(1).is_err());
    }

    #[test]
    fn hamming_matches_parity_equations() {
        for k in 2..=4 {
            let code = hamming_code(k).unwrap();
            assert_eq!(code.words, brute_force_hamming(k), "k = {k}");
            assert_eq!(code.len(), 1 << ((1 << k) - k - 1));
            assert!(is_perfect_radius1(&code));
            assert_eq!(min_distance(&code).unwrap(), 3);
        }
    }

    #[test]
    fn min_distance_cases() {
        assert_eq!(min_distance(&BinaryCode::new(3, [0, 7]).unwrap()).unwrap(), 3);
        assert_eq!(min_distance(&BinaryCode::new(2, [0, 1]).unwrap()).unwrap(), 1);
        assert!(min_distance(&BinaryCode::new(2, [0]).unwrap()).is_err());
    }

    #[test]
    fn perfectness() {
        assert!(is_perfect_radius1(&BinaryCode::new(3, [0, 7]).unwrap()));
        assert!(!is_perfect_radius1(&BinaryCode::new(2, [0]).unwrap()));
        // right size, overlapping balls
        assert!(!is_perfect_radius1(&BinaryCode::new(3, [0, 3]).unwrap()));
    }

    #[test]
    fn translates() {
        let c = BinaryCode::new(3, [0, 7]).unwrap();
        assert_eq!(xor_translate(&c, 0).unwrap(), c);
        assert_eq!(
            xor_translate(&c, 0b001).unwrap().words().collect::<Vec<_>>(),
            vec![0b001, 0b110]
        );
        assert!(xor_translate(&c, 8).is_err());
    }

    #[test]
    fn rearranged_code() {
        let c = hamming_code(2).unwrap();
        assert_eq!(rearrange_parity_right(&c, 2).unwrap(), c);

        assert_eq!(parity_right_order(3), vec![3, 5, 6, 7, 1, 2, 4]);
        let r = rearrange_parity_right(&hamming_code(3).unwrap(), 3).unwrap();
        let prefixes: BTreeSet<u64> = r.words().map(|w| w & 0b1111).collect();
        assert_eq!(prefixes.len(), 16);
        assert_eq!(min_distance(&r).unwrap(), 3);
        assert!(rearrange_parity_right(&c, 3).is_err());
    }

    #[test]
    fn parity_translates_are_disjoint_and_perfect() {
        for k in 2..=4 {
            let ts = parity_translates(k);
            assert_eq!(ts.len(), 1 << k);
            let mut seen = BTreeSet::new();
            for t in &ts {
                assert!(is_perfect_radius1(t));
                for w in t.words() {
                    assert!(seen.insert(w), "k = {k}: word {w:#b} repeated");
                }
            }
            // together they cover the whole space
            assert_eq!(seen.len(), 1 << ((1 << k) - 1));
        }
    }

    #[test]
    fn word_strings() {
        let c = BinaryCode::new(3, [0b001]).unwrap();
        assert_eq!(c.word_string(0b001), "100");
    }
}
