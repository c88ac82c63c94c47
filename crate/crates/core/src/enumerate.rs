//! Exhaustive enumeration of locally biased and locally stable functions on
//! small cubes, grouped into isomorphism classes.

use std::collections::{BTreeSet, HashSet};
use std::fmt;

use crate::cube::{CubeFunction, ProfileKind};
use crate::error::{Error, Result};
use crate::iso::{unpack, OrbitTable};
use crate::Rational;

/// Largest dimension for the full table scan.
pub const ORACLE_MAX_DIM: usize = 4;
/// Largest dimension for the backtracking search.
pub const BACKTRACK_MAX_DIM: usize = 5;

/// All `b / 2^k` with `0 <= b <= 2^k` and `2^k | n`.
pub fn permissible_p(n: usize) -> BTreeSet<Rational> {
    let mut out = BTreeSet::new();
    let mut k = 0;
    while n > 0 && n.is_multiple_of(1 << k) {
        let den = 1u64 << k;
        out.extend((0..=den).map(|b| Rational::new(b, den)));
        k += 1;
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Constraint {
    pub kind: ProfileKind,
    /// `None` accepts every constant profile.
    pub p: Option<Rational>,
}

impl Constraint {
    pub fn biased(p: Option<Rational>) -> Self {
        Constraint {
            kind: ProfileKind::Bias,
            p,
        }
    }

    pub fn stable(p: Option<Rational>) -> Self {
        Constraint {
            kind: ProfileKind::Stability,
            p,
        }
    }

    /// Neighbor counts to search for on the `n`-cube.
    fn target_counts(&self, n: usize) -> Vec<u32> {
        match self.p {
            None => (0..=n as u32).collect(),
            Some(p) => {
                let scaled = p * Rational::from_integer(n as u64);
                if scaled.is_integer() && scaled.to_integer() <= n as u64 {
                    vec![scaled.to_integer() as u32]
                } else {
                    Vec::new()
                }
            }
        }
    }
}

impl fmt::Display for Constraint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.p {
            Some(p) => write!(f, "{} p={}", self.kind, p),
            None => write!(f, "{} p=any", self.kind),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EnumerationMode {
    /// Scan all `2^(2^n)` truth tables.
    Oracle,
    /// Assign vertices in breadth-first order with forward checking.
    Backtrack,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EnumeratedClass {
    /// Canonical form (lexicographically minimal table of the orbit).
    pub representative: CubeFunction,
    pub p: Rational,
    /// Number of enumerated functions in the class.
    pub size: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EnumerationReport {
    pub n: usize,
    pub constraint: Constraint,
    pub mode: EnumerationMode,
    pub total_functions: u64,
    /// Sorted by representative table.
    pub classes: Vec<EnumeratedClass>,
    pub nodes_visited: u64,
}

impl EnumerationReport {
    pub fn class_representatives(&self) -> impl Iterator<Item = &CubeFunction> {
        self.classes.iter().map(|c| &c.representative)
    }

    /// Distinct `p` values found.
    pub fn p_values(&self) -> BTreeSet<Rational> {
        self.classes.iter().map(|c| c.p).collect()
    }
}

/// Packed truth tables (see `iso::pack`) of every function meeting the
/// constraint, sorted, together with the number of search nodes.
pub fn enumerate_packed(
    n: usize,
    constraint: Constraint,
    mode: EnumerationMode,
    threads: usize,
) -> Result<(Vec<u64>, u64)> {
    let bound = match mode {
        EnumerationMode::Oracle => ORACLE_MAX_DIM,
        EnumerationMode::Backtrack => BACKTRACK_MAX_DIM,
    };
    if n == 0 || n > bound {
        return Err(Error::DimensionOutOfRange { n, max: bound });
    }
    if let Some(p) = constraint.p {
        if p > Rational::from_integer(1) {
            return Err(Error::Precondition(format!("p = {p} exceeds 1")));
        }
    }
    let targets = constraint.target_counts(n);
    let run = |c: u32| match mode {
        EnumerationMode::Oracle => scan(n, constraint.kind, c),
        EnumerationMode::Backtrack => Backtracker::new(n, constraint.kind, c).run(),
    };
    let results: Vec<(Vec<u64>, u64)> = if threads > 1 && targets.len() > 1 {
        std::thread::scope(|s| {
            let handles: Vec<_> = targets.iter().map(|&c| s.spawn(move || run(c))).collect();
            handles.into_iter().map(|h| h.join().expect("worker panicked")).collect()
        })
    } else {
        targets.iter().map(|&c| run(c)).collect()
    };
    let nodes = results.iter().map(|r| r.1).sum();
    let mut all: Vec<u64> = results.into_iter().flat_map(|r| r.0).collect();
    all.sort_unstable();
    Ok((all, nodes))
}

pub fn enumerate_functions(n: usize, constraint: Constraint, mode: EnumerationMode) -> Result<Vec<CubeFunction>> {
    let (packed, _) = enumerate_packed(n, constraint, mode, 1)?;
    Ok(packed.into_iter().map(|b| unpack(n, b)).collect())
}

pub fn enumerate(n: usize, constraint: Constraint, mode: EnumerationMode, threads: usize) -> Result<EnumerationReport> {
    let (packed, nodes_visited) = enumerate_packed(n, constraint, mode, threads)?;
    let orbits = OrbitTable::new(n);
    let mut seen: HashSet<u64> = HashSet::new();
    let mut classes = Vec::new();
    for &bits in &packed {
        if seen.contains(&bits) {
            continue;
        }
        let orbit = orbits.orbit_set(bits);
        let canonical = *orbit.iter().min().unwrap();
        let representative = unpack(n, canonical);
        let p = count_fraction(&representative, constraint.kind);
        classes.push(EnumeratedClass {
            representative,
            p,
            size: orbit.len() as u64,
        });
        seen.extend(orbit);
    }
    classes.sort_by(|a, b| a.representative.table().cmp(b.representative.table()));
    Ok(EnumerationReport {
        n,
        constraint,
        mode,
        total_functions: packed.len() as u64,
        classes,
        nodes_visited,
    })
}

fn count_fraction(f: &CubeFunction, kind: ProfileKind) -> Rational {
    crate::cube::locally_constant(f, kind).expect("enumerated functions have constant profiles")
}

pub fn enumerate_locally_biased(n: usize, p: Option<Rational>, mode: EnumerationMode) -> Result<EnumerationReport> {
    enumerate(n, Constraint::biased(p), mode, 1)
}

pub fn enumerate_locally_stable(n: usize, p: Option<Rational>, mode: EnumerationMode) -> Result<EnumerationReport> {
    enumerate(n, Constraint::stable(p), mode, 1)
}

#[inline]
fn packed_value(bits: u64, len: u64, v: u64) -> bool {
    (bits >> (len - 1 - v)) & 1 == 1
}

/// Full scan over all tables; `count` is the required neighbor count.
fn scan(n: usize, kind: ProfileKind, count: u32) -> (Vec<u64>, u64) {
    let len = 1u64 << n;
    let total = 1u64 << len;
    let mut out = Vec::new();
    for bits in 0..total {
        let ok = (0..len).all(|v| {
            let own = packed_value(bits, len, v);
            let c = (0..n)
                .filter(|&i| {
                    let y = packed_value(bits, len, v ^ (1 << i));
                    match kind {
                        ProfileKind::Bias => y,
                        ProfileKind::Stability => y == own,
                    }
                })
                .count() as u32;
            c == count
        });
        if ok {
            out.push(bits);
        }
    }
    (out, total)
}

struct Backtracker {
    n: usize,
    kind: ProfileKind,
    count: u32,
    order: Vec<u64>,
    /// 0 undecided, otherwise the sign
    values: Vec<i8>,
    plus: Vec<u32>,
    minus: Vec<u32>,
    nodes: u64,
    found: Vec<u64>,
}

impl Backtracker {
    fn new(n: usize, kind: ProfileKind, count: u32) -> Self {
        let len = 1usize << n;
        let mut order: Vec<u64> = (0..len as u64).collect();
        // breadth-first from vertex 0: by distance, then by id
        order.sort_by_key(|&v| (v.count_ones(), v));
        Backtracker {
            n,
            kind,
            count,
            order,
            values: vec![0; len],
            plus: vec![0; len],
            minus: vec![0; len],
            nodes: 0,
            found: Vec::new(),
        }
    }

    fn run(mut self) -> (Vec<u64>, u64) {
        self.descend(0);
        (self.found, self.nodes)
    }

    fn feasible(&self, w: u64) -> bool {
        let w = w as usize;
        let (plus, minus) = (self.plus[w], self.minus[w]);
        let n = self.n as u32;
        match self.kind {
            ProfileKind::Bias => plus <= self.count && self.count <= n - minus,
            ProfileKind::Stability => match self.values[w] {
                0 => true,
                s => {
                    let (same, diff) = if s > 0 { (plus, minus) } else { (minus, plus) };
                    same <= self.count && diff <= n - self.count
                }
            },
        }
    }

    fn set(&mut self, u: u64, s: i8) {
        self.values[u as usize] = s;
        for i in 0..self.n {
            let w = (u ^ (1 << i)) as usize;
            if s > 0 {
                self.plus[w] += 1;
            } else {
                self.minus[w] += 1;
            }
        }
    }

    fn unset(&mut self, u: u64) {
        let s = self.values[u as usize];
        self.values[u as usize] = 0;
        for i in 0..self.n {
            let w = (u ^ (1 << i)) as usize;
            if s > 0 {
                self.plus[w] -= 1;
            } else {
                self.minus[w] -= 1;
            }
        }
    }

    fn descend(&mut self, depth: usize) {
        if depth == self.order.len() {
            let len = self.values.len() as u64;
            let bits = (0..len).fold(0u64, |acc, v| {
                acc | (u64::from(self.values[v as usize] > 0) << (len - 1 - v))
            });
            self.found.push(bits);
            return;
        }
        let u = self.order[depth];
        for s in [-1i8, 1] {
            self.nodes += 1;
            self.set(u, s);
            let ok = self.feasible(u) && (0..self.n).all(|i| self.feasible(u ^ (1 << i)));
            if ok {
                self.descend(depth + 1);
            }
            self.unset(u);
        }
    }
}
