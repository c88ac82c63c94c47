//! Hypercube automorphisms, isomorphism testing and canonical forms.
//!
//! An automorphism `psi` is a sign-flip mask followed by a coordinate
//! permutation: `psi(v) = P(v ^ flips)`, where `P` moves bit `i` of its
//! argument to bit `perm[i]`. It acts on functions by precomposition,
//! `apply(f, psi) = f ∘ psi`. With `a.compose(b) = psi_a ∘ psi_b` the action
//! satisfies `apply(apply(f, a), b) == apply(f, a.compose(b))`.

use std::collections::HashSet;
use std::fmt;

use crate::cube::{local_profile, CubeFunction, ProfileKind};
use crate::error::{Error, Result};
use crate::walsh::{walsh_transform, WalshSpectrum};

pub const DEFAULT_EXACT_BOUND: usize = 5;
pub const DEFAULT_NODE_BUDGET: u64 = 1_000_000;

/// Largest dimension with a bit-packed truth table.
pub(crate) const PACKED_MAX_DIM: usize = 6;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CubeAutomorphism {
    /// 0-based: coordinate `i` is sent to coordinate `perm[i]`.
    perm: Vec<usize>,
    flips: u64,
}

impl CubeAutomorphism {
    pub fn new(perm: Vec<usize>, flips: u64) -> Result<Self> {
        let n = perm.len();
        if n == 0 || n > 63 {
            return Err(Error::InvalidAutomorphism(format!("dimension {n}")));
        }
        let mut seen = vec![false; n];
        for &p in &perm {
            if p >= n || seen[p] {
                return Err(Error::InvalidAutomorphism(format!("{perm:?} is not a permutation")));
            }
            seen[p] = true;
        }
        if flips >> n != 0 {
            return Err(Error::InvalidAutomorphism(format!("flip mask {flips:#b} exceeds {n} bits")));
        }
        Ok(CubeAutomorphism { perm, flips })
    }

    /// Same as [`CubeAutomorphism::new`] with a permutation of `1..=n`.
    pub fn from_one_based(perm: &[usize], flips: u64) -> Result<Self> {
        let perm = perm
            .iter()
            .map(|&p| p.checked_sub(1).ok_or_else(|| Error::InvalidAutomorphism("coordinate 0".into())))
            .collect::<Result<Vec<_>>>()?;
        Self::new(perm, flips)
    }

    pub fn identity(n: usize) -> Self {
        CubeAutomorphism {
            perm: (0..n).collect(),
            flips: 0,
        }
    }

    pub fn n(&self) -> usize {
        self.perm.len()
    }

    pub fn perm(&self) -> &[usize] {
        &self.perm
    }

    pub fn flips(&self) -> u64 {
        self.flips
    }

    pub fn is_identity(&self) -> bool {
        self.flips == 0 && self.perm.iter().enumerate().all(|(i, &p)| i == p)
    }

    fn permute_bits(&self, w: u64) -> u64 {
        self.perm
            .iter()
            .enumerate()
            .fold(0, |acc, (i, &p)| acc | (((w >> i) & 1) << p))
    }

    fn unpermute_bits(&self, w: u64) -> u64 {
        self.perm
            .iter()
            .enumerate()
            .fold(0, |acc, (i, &p)| acc | (((w >> p) & 1) << i))
    }

    #[inline]
    pub fn map_vertex(&self, v: u64) -> u64 {
        self.permute_bits(v ^ self.flips)
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &CubeAutomorphism) -> Result<CubeAutomorphism> {
        if self.n() != other.n() {
            return Err(Error::DimensionMismatch {
                left: self.n(),
                right: other.n(),
            });
        }
        let perm = other.perm.iter().map(|&p| self.perm[p]).collect();
        let flips = other.flips ^ other.unpermute_bits(self.flips);
        Ok(CubeAutomorphism { perm, flips })
    }

    pub fn inverse(&self) -> CubeAutomorphism {
        let mut perm = vec![0; self.n()];
        for (i, &p) in self.perm.iter().enumerate() {
            perm[p] = i;
        }
        CubeAutomorphism {
            perm,
            flips: self.permute_bits(self.flips),
        }
    }
}

impl fmt::Display for CubeAutomorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let perm: Vec<String> = self.perm.iter().map(|p| (p + 1).to_string()).collect();
        let flips: Vec<String> = (0..self.n())
            .filter(|i| (self.flips >> i) & 1 == 1)
            .map(|i| (i + 1).to_string())
            .collect();
        write!(f, "perm=[{}] flips={{{}}}", perm.join(","), flips.join(","))
    }
}

/// All permutations of `0..n` in lexicographic order.
pub(crate) fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..n).collect();
    loop {
        out.push(cur.clone());
        // next lexicographic permutation
        let Some(i) = (0..n.saturating_sub(1)).rev().find(|&i| cur[i] < cur[i + 1]) else {
            break;
        };
        let j = (i + 1..n).rev().find(|&j| cur[j] > cur[i]).unwrap();
        cur.swap(i, j);
        cur[i + 1..].reverse();
    }
    out
}

/// Every automorphism of the `n`-cube: permutations in lexicographic order,
/// and for each permutation all flip masks in increasing order. The identity
/// comes first.
pub fn all_automorphisms(n: usize) -> impl Iterator<Item = CubeAutomorphism> {
    permutations(n).into_iter().flat_map(move |perm| {
        (0..1u64 << n).map(move |flips| CubeAutomorphism {
            perm: perm.clone(),
            flips,
        })
    })
}

pub fn apply_automorphism(f: &CubeFunction, a: &CubeAutomorphism) -> Result<CubeFunction> {
    if f.n() != a.n() {
        return Err(Error::DimensionMismatch {
            left: f.n(),
            right: a.n(),
        });
    }
    let table = (0..f.num_vertices()).map(|v| f.eval(a.map_vertex(v))).collect();
    Ok(CubeFunction::from_parts_unchecked(f.n(), table))
}

/// Truth tables of dimension <= 6 packed into a `u64`. Vertex `v` sits at bit
/// `2^n - 1 - v` and a set bit means `+1`, so integer order equals the
/// lexicographic order of sign sequences with `-1 < +1`.
///
/// Panics if `f.n() > 6`.
pub fn pack(f: &CubeFunction) -> u64 {
    let len = f.num_vertices();
    assert!(f.n() <= PACKED_MAX_DIM, "cannot pack dimension {}", f.n());
    (0..len).fold(0, |acc, v| acc | (u64::from(f.eval(v) == 1) << (len - 1 - v)))
}

/// Inverse of [`pack`]; panics if `n` is 0 or above 6.
pub fn unpack(n: usize, bits: u64) -> CubeFunction {
    assert!((1..=PACKED_MAX_DIM).contains(&n), "cannot unpack dimension {n}");
    let len = 1u64 << n;
    let table = (0..len)
        .map(|v| if (bits >> (len - 1 - v)) & 1 == 1 { 1 } else { -1 })
        .collect();
    CubeFunction::from_parts_unchecked(n, table)
}

/// Vertex maps of the whole automorphism group, for orbit computations on
/// packed tables.
pub(crate) struct OrbitTable {
    n: usize,
    maps: Vec<Vec<u8>>,
}

impl OrbitTable {
    pub(crate) fn new(n: usize) -> Self {
        assert!(n <= PACKED_MAX_DIM);
        let maps = all_automorphisms(n)
            .map(|a| (0..1u64 << n).map(|v| a.map_vertex(v) as u8).collect())
            .collect();
        OrbitTable { n, maps }
    }

    pub(crate) fn apply(&self, index: usize, bits: u64) -> u64 {
        let len = 1u64 << self.n;
        self.maps[index]
            .iter()
            .enumerate()
            .fold(0, |acc, (v, &w)| acc | (((bits >> (len - 1 - w as u64)) & 1) << (len - 1 - v as u64)))
    }

    pub(crate) fn orbit(&self, bits: u64) -> impl Iterator<Item = u64> + '_ {
        (0..self.maps.len()).map(move |i| self.apply(i, bits))
    }

    pub(crate) fn canonical(&self, bits: u64) -> u64 {
        self.orbit(bits).min().unwrap()
    }

    pub(crate) fn orbit_set(&self, bits: u64) -> HashSet<u64> {
        self.orbit(bits).collect()
    }
}

/// Lexicographically minimal truth table in the automorphism orbit of `f`,
/// using `-1 < +1` and comparing from vertex 0.
pub fn canonical_form(f: &CubeFunction) -> Result<CubeFunction> {
    canonical_form_with_bound(f, DEFAULT_EXACT_BOUND)
}

pub fn canonical_form_with_bound(f: &CubeFunction, exact_bound: usize) -> Result<CubeFunction> {
    if f.n() > exact_bound {
        return Err(Error::Precondition(format!(
            "canonical form needs n <= {exact_bound}, got {}",
            f.n()
        )));
    }
    if f.n() <= PACKED_MAX_DIM {
        let table = OrbitTable::new(f.n());
        return Ok(unpack(f.n(), table.canonical(pack(f))));
    }
    let mut best = f.clone();
    for a in all_automorphisms(f.n()) {
        let g = apply_automorphism(f, &a)?;
        if g.table() < best.table() {
            best = g;
        }
    }
    Ok(best)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct IsoOptions {
    /// Dimensions up to this bound are decided by full orbit search.
    pub exact_bound: usize,
    /// Node budget of the permutation search used above `exact_bound`.
    pub node_budget: u64,
}

impl Default for IsoOptions {
    fn default() -> Self {
        IsoOptions {
            exact_bound: DEFAULT_EXACT_BOUND,
            node_budget: DEFAULT_NODE_BUDGET,
        }
    }
}

/// Evidence that two functions are not isomorphic.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Certificate {
    SupportSize { left: u64, right: u64 },
    FourierSupportSize { left: usize, right: usize },
    DegreeSpectrum { degree: usize },
    SupportIntersections,
    ProfileHistogram { kind: ProfileKind },
    /// Every automorphism was tried.
    ExhaustiveOrbit { checked: u64 },
    /// The pruned permutation search finished without a match.
    PermutationSearch { nodes: u64 },
}

impl fmt::Display for Certificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Certificate::SupportSize { left, right } => write!(f, "support sizes {left} vs {right}"),
            Certificate::FourierSupportSize { left, right } => {
                write!(f, "Fourier support sizes {left} vs {right}")
            }
            Certificate::DegreeSpectrum { degree } => {
                write!(f, "coefficient multisets differ at degree {degree}")
            }
            Certificate::SupportIntersections => f.write_str("Fourier support intersection patterns differ"),
            Certificate::ProfileHistogram { kind } => write!(f, "{kind} profile histograms differ"),
            Certificate::ExhaustiveOrbit { checked } => write!(f, "exhaustive search over {checked} automorphisms"),
            Certificate::PermutationSearch { nodes } => {
                write!(f, "permutation search exhausted after {nodes} nodes")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum IsoVerdict {
    /// `apply_automorphism(f, witness) == g`.
    Isomorphic(CubeAutomorphism),
    NonIsomorphic(Certificate),
    Unknown { nodes: u64 },
}

impl IsoVerdict {
    pub fn is_isomorphic(&self) -> bool {
        matches!(self, IsoVerdict::Isomorphic(_))
    }

    pub fn is_non_isomorphic(&self) -> bool {
        matches!(self, IsoVerdict::NonIsomorphic(_))
    }
}

pub fn are_isomorphic(f: &CubeFunction, g: &CubeFunction) -> Result<IsoVerdict> {
    are_isomorphic_with(f, g, IsoOptions::default())
}

pub fn are_isomorphic_with(f: &CubeFunction, g: &CubeFunction, opts: IsoOptions) -> Result<IsoVerdict> {
    if f.n() != g.n() {
        return Err(Error::DimensionMismatch {
            left: f.n(),
            right: g.n(),
        });
    }
    if f.n() <= opts.exact_bound {
        Ok(exhaustive(f, g))
    } else {
        Ok(certificate_search(f, g, opts.node_budget))
    }
}

fn exhaustive(f: &CubeFunction, g: &CubeFunction) -> IsoVerdict {
    let mut checked = 0u64;
    for a in all_automorphisms(f.n()) {
        checked += 1;
        if (0..f.num_vertices()).all(|v| f.eval(a.map_vertex(v)) == g.eval(v)) {
            return IsoVerdict::Isomorphic(a);
        }
    }
    IsoVerdict::NonIsomorphic(Certificate::ExhaustiveOrbit { checked })
}

/// Multiset of `(|S|, |T|, |S ∩ T|)` over unordered pairs of support sets.
fn intersection_pattern(support: &[u64]) -> Vec<(u32, u32, u32)> {
    let mut out = Vec::with_capacity(support.len() * support.len().saturating_sub(1) / 2);
    for (i, &s) in support.iter().enumerate() {
        for &t in &support[i + 1..] {
            let (a, b) = (s.count_ones(), t.count_ones());
            out.push((a.min(b), a.max(b), (s & t).count_ones()));
        }
    }
    out.sort_unstable();
    out
}

const INTERSECTION_LIMIT: usize = 2048;

/// Compares automorphism invariants, returning the first mismatch.
pub fn invariant_certificate(f: &CubeFunction, g: &CubeFunction) -> Option<Certificate> {
    invariant_check(f, g, &walsh_transform(f), &walsh_transform(g))
}

fn invariant_check(f: &CubeFunction, g: &CubeFunction, sf: &WalshSpectrum, sg: &WalshSpectrum) -> Option<Certificate> {
    let (lf, lg) = (f.support_size(), g.support_size());
    if lf != lg {
        return Some(Certificate::SupportSize { left: lf, right: lg });
    }
    let (kf, kg) = (sf.support_size(), sg.support_size());
    if kf != kg {
        return Some(Certificate::FourierSupportSize { left: kf, right: kg });
    }
    for degree in 0..=f.n() {
        if sf.degree_abs_multiset(degree) != sg.degree_abs_multiset(degree) {
            return Some(Certificate::DegreeSpectrum { degree });
        }
    }
    if kf <= INTERSECTION_LIMIT && intersection_pattern(&sf.support()) != intersection_pattern(&sg.support()) {
        return Some(Certificate::SupportIntersections);
    }
    for kind in [ProfileKind::Bias, ProfileKind::Stability] {
        if local_profile(f, kind).histogram() != local_profile(g, kind).histogram() {
            return Some(Certificate::ProfileHistogram { kind });
        }
    }
    None
}

fn certificate_search(f: &CubeFunction, g: &CubeFunction, budget: u64) -> IsoVerdict {
    let sf = walsh_transform(f);
    let sg = walsh_transform(g);
    if let Some(cert) = invariant_check(f, g, &sf, &sg) {
        return IsoVerdict::NonIsomorphic(cert);
    }
    let mut search = PermSearch::new(f, g, &sf, &sg, budget);
    let mut perm = vec![usize::MAX; f.n()];
    let mut used = vec![false; f.n()];
    match search.descend(0, &mut perm, &mut used) {
        Outcome::Found(a) => IsoVerdict::Isomorphic(a),
        Outcome::Exhausted => IsoVerdict::NonIsomorphic(Certificate::PermutationSearch { nodes: search.nodes }),
        Outcome::Budget => IsoVerdict::Unknown { nodes: search.nodes },
    }
}

enum Outcome {
    Found(CubeAutomorphism),
    Exhausted,
    Budget,
}

/// Backtracking over coordinate permutations. For `g = f ∘ psi` we need
/// `c^g_S = ±c^f_{P(S)}`, so absolute coefficients of single coordinates,
/// of coordinate pairs and the per-coordinate coefficient multisets must
/// agree under `P`. Flips are then recovered from the signs by linear algebra
/// over GF(2).
struct PermSearch<'a> {
    f: &'a CubeFunction,
    g: &'a CubeFunction,
    sf: &'a WalshSpectrum,
    sg: &'a WalshSpectrum,
    g_support: Vec<u64>,
    f_coord: Vec<Vec<u64>>,
    g_coord: Vec<Vec<u64>>,
    budget: u64,
    nodes: u64,
}

fn per_coordinate(spec: &WalshSpectrum) -> Vec<Vec<u64>> {
    let n = spec.n();
    let mut out = vec![Vec::new(); n];
    for s in spec.support() {
        let c = spec.coeff(s).unsigned_abs();
        for (i, list) in out.iter_mut().enumerate() {
            if (s >> i) & 1 == 1 {
                list.push(c);
            }
        }
    }
    for list in &mut out {
        list.sort_unstable();
    }
    out
}

impl<'a> PermSearch<'a> {
    fn new(f: &'a CubeFunction, g: &'a CubeFunction, sf: &'a WalshSpectrum, sg: &'a WalshSpectrum, budget: u64) -> Self {
        PermSearch {
            f,
            g,
            sf,
            sg,
            g_support: sg.support(),
            f_coord: per_coordinate(sf),
            g_coord: per_coordinate(sg),
            budget,
            nodes: 0,
        }
    }

    fn descend(&mut self, i: usize, perm: &mut [usize], used: &mut [bool]) -> Outcome {
        let n = perm.len();
        if i == n {
            return match self.leaf(perm) {
                Some(a) => Outcome::Found(a),
                None => Outcome::Exhausted,
            };
        }
        for j in 0..n {
            if used[j] {
                continue;
            }
            self.nodes += 1;
            if self.nodes > self.budget {
                return Outcome::Budget;
            }
            if self.g_coord[i] != self.f_coord[j] {
                continue;
            }
            if self.sg.coeff(1 << i).unsigned_abs() != self.sf.coeff(1 << j).unsigned_abs() {
                continue;
            }
            let pairs_ok = (0..i).all(|k| {
                self.sg.coeff((1 << i) | (1 << k)).unsigned_abs()
                    == self.sf.coeff((1 << j) | (1 << perm[k])).unsigned_abs()
            });
            if !pairs_ok {
                continue;
            }
            perm[i] = j;
            used[j] = true;
            match self.descend(i + 1, perm, used) {
                Outcome::Exhausted => {}
                other => return other,
            }
            used[j] = false;
        }
        perm[i] = usize::MAX;
        Outcome::Exhausted
    }

    fn leaf(&self, perm: &[usize]) -> Option<CubeAutomorphism> {
        let map_set = |s: u64| {
            perm.iter()
                .enumerate()
                .fold(0u64, |acc, (i, &p)| acc | (((s >> i) & 1) << p))
        };
        // parity(|S ∩ F|) = [sign of c^g_S differs from c^f_{P(S)}]
        let mut rows: Vec<(u64, bool)> = Vec::with_capacity(self.g_support.len());
        for &s in &self.g_support {
            let cg = self.sg.coeff(s);
            let cf = self.sf.coeff(map_set(s));
            if cg.unsigned_abs() != cf.unsigned_abs() {
                return None;
            }
            rows.push((s, cg != cf));
        }
        let flips = solve_gf2(perm.len(), rows)?;
        let a = CubeAutomorphism::new(perm.to_vec(), flips).ok()?;
        (0..self.f.num_vertices())
            .all(|v| self.f.eval(a.map_vertex(v)) == self.g.eval(v))
            .then_some(a)
    }
}

/// Solves `parity(row & x) = rhs` for all rows; free variables are set to 0.
fn solve_gf2(n: usize, mut rows: Vec<(u64, bool)>) -> Option<u64> {
    let mut pivots: Vec<usize> = Vec::new();
    let mut r = 0;
    for col in 0..n {
        let Some(idx) = (r..rows.len()).find(|&k| (rows[k].0 >> col) & 1 == 1) else {
            continue;
        };
        rows.swap(r, idx);
        let (pm, pb) = rows[r];
        for (k, row) in rows.iter_mut().enumerate() {
            if k != r && (row.0 >> col) & 1 == 1 {
                row.0 ^= pm;
                row.1 ^= pb;
            }
        }
        pivots.push(col);
        r += 1;
    }
    if rows[r..].iter().any(|&(m, b)| m == 0 && b) {
        return None;
    }
    // reduced form: each pivot row has no other pivot columns set
    Some(
        pivots
            .iter()
            .zip(&rows)
            .fold(0u64, |acc, (&col, &(_, b))| if b { acc | (1 << col) } else { acc }),
    )
}
