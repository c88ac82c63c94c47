//! Independent oracles and fixtures shared by the integration tests.
//! Nothing here calls the library routine it is checking.
#![allow(dead_code)]

use std::collections::BTreeMap;

use indist_core::codes::hamming_code;
use indist_core::constructions::{
    base_h, biased_from_code, biased_m_over_n, h_k, half_biased_from_signature, parity_g, product, stable_extend,
    stable_from_biased, stable_parity, tensor_lift,
};
use indist_core::iso::CubeAutomorphism;
use indist_core::{CubeFunction, Rational};
use rand::seq::SliceRandom;
use rand::Rng;

/// Bias count of every vertex straight from the definition, as `(count, n)`
/// when constant.
pub fn brute_bias(n: usize, value: impl Fn(u64) -> i8) -> Option<(u64, u64)> {
    let mut common = None;
    for v in 0..1u64 << n {
        let c = (0..n).filter(|&i| value(v ^ (1 << i)) == 1).count() as u64;
        match common {
            None => common = Some(c),
            Some(d) if d != c => return None,
            _ => {}
        }
    }
    common.map(|c| (c, n as u64))
}

pub fn brute_stability(n: usize, value: impl Fn(u64) -> i8) -> Option<(u64, u64)> {
    let mut common = None;
    for v in 0..1u64 << n {
        let c = (0..n).filter(|&i| value(v ^ (1 << i)) == value(v)).count() as u64;
        match common {
            None => common = Some(c),
            Some(d) if d != c => return None,
            _ => {}
        }
    }
    common.map(|c| (c, n as u64))
}

pub fn ratio((a, b): (u64, u64)) -> Rational {
    Rational::new(a, b)
}

/// `c_S = sum_v f(v) (-1)^{|v & S|}` by direct summation.
pub fn naive_walsh(f: &CubeFunction) -> Vec<i64> {
    let size = 1u64 << f.n();
    (0..size)
        .map(|s| {
            (0..size)
                .map(|v| {
                    let sign = if (v & s).count_ones() % 2 == 0 { 1 } else { -1 };
                    i64::from(f.eval(v)) * sign
                })
                .sum()
        })
        .collect()
}

/// `sum_{|S| = d} c_S^2 / 4^n`, reduced.
pub fn naive_degree_weight(f: &CubeFunction, d: u32) -> Rational {
    let coeffs = naive_walsh(f);
    let num: u64 = coeffs
        .iter()
        .enumerate()
        .filter(|(s, _)| s.count_ones() == d)
        .map(|(_, &c)| (c * c) as u64)
        .sum();
    Rational::new(num, 1u64 << (2 * f.n()))
}

/// Counts of scenery words over every start vertex and every sequence of
/// `steps` coordinate choices. The total is `2^n * n^steps`.
pub fn path_sum_counts(f: &CubeFunction, steps: usize, pairs: bool) -> (BTreeMap<Vec<i8>, u64>, u64) {
    let n = f.n();
    let mut counts = BTreeMap::new();
    let mut total = 0;
    let choices = (n as u64).pow(steps as u32);
    for start in 0..1u64 << n {
        for mut code in 0..choices {
            let mut v = start;
            let mut seen = vec![f.eval(v)];
            for _ in 0..steps {
                v ^= 1 << (code % n as u64);
                code /= n as u64;
                seen.push(f.eval(v));
            }
            let word = if pairs {
                seen.windows(2).map(|w| w[0] * w[1]).collect()
            } else {
                seen
            };
            *counts.entry(word).or_insert(0) += 1;
            total += 1;
        }
    }
    (counts, total)
}

/// Partitions of `j` by listing them: non-increasing part sequences.
pub fn listed_partitions(j: usize) -> u64 {
    fn rec(left: usize, max: usize) -> u64 {
        if left == 0 {
            return 1;
        }
        (1..=max.min(left)).map(|p| rec(left - p, p)).sum()
    }
    rec(j, j)
}

pub fn random_function(rng: &mut impl Rng, n: usize) -> CubeFunction {
    CubeFunction::from_fn(n, |_| if rng.random::<bool>() { 1 } else { -1 }).unwrap()
}

pub fn random_automorphism(rng: &mut impl Rng, n: usize) -> CubeAutomorphism {
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(rng);
    let flips = rng.random::<u64>() & ((1u64 << n) - 1);
    CubeAutomorphism::new(perm, flips).unwrap()
}

/// Every builder output on at most `max_n` coordinates, labelled.
pub fn builder_outputs(max_n: usize) -> Vec<(String, CubeFunction)> {
    let mut out: Vec<(String, CubeFunction)> = Vec::new();
    let mut push = |name: String, f: CubeFunction| {
        if f.n() <= max_n {
            out.push((name, f));
        }
    };
    for n in 1..=max_n.min(8) {
        push(format!("const+ n={n}"), CubeFunction::constant(n, 1).unwrap());
        push(format!("const- n={n}"), CubeFunction::constant(n, -1).unwrap());
    }
    for k in 2..=3u32 {
        push(format!("code H_{k}"), biased_from_code(&hamming_code(k).unwrap()).unwrap());
    }
    for k in 0..=3u32 {
        if 1usize << k > max_n {
            continue;
        }
        for m in 0..=1u64 << k {
            push(format!("m/n k={k} m={m}"), biased_m_over_n(k, m).unwrap());
        }
    }
    for n in (2..=max_n).step_by(2) {
        push(format!("g_{n}"), parity_g(n).unwrap());
    }
    push("h".into(), base_h());
    for k in 1..=max_n / 4 {
        push(format!("h_{k}"), h_k(k).unwrap());
    }
    for n in (4..=max_n).step_by(2) {
        for sig in indist_core::counting::half_biased_signatures(n) {
            push(format!("signature n={n} {sig:?}"), half_biased_from_signature(n, &sig).unwrap());
        }
    }
    for c in 2..=4 {
        push(format!("lift g_2 c={c}"), tensor_lift(&parity_g(2).unwrap(), c).unwrap());
        push(
            format!("lift code c={c}"),
            tensor_lift(&biased_from_code(&hamming_code(2).unwrap()).unwrap(), c).unwrap(),
        );
    }
    push("lift h c=2".into(), tensor_lift(&base_h(), 2).unwrap());
    push("h x g_2".into(), product(&base_h(), &parity_g(2).unwrap()).unwrap());
    push("g_2 x g_2".into(), product(&parity_g(2).unwrap(), &parity_g(2).unwrap()).unwrap());
    for n in 1..=max_n.min(8) {
        for m in 0..n {
            push(format!("stable parity n={n} m={m}"), stable_parity(n, m).unwrap());
        }
    }
    push("stable h".into(), stable_from_biased(&base_h()).unwrap());
    push("stable g_4".into(), stable_from_biased(&parity_g(4).unwrap()).unwrap());
    push("stable g_2".into(), stable_from_biased(&parity_g(2).unwrap()).unwrap());
    push(
        "stable extend".into(),
        stable_extend(&stable_parity(3, 1).unwrap(), 6).unwrap(),
    );
    out
}
