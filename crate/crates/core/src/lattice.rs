//! Periodic colorings of `Z^n` and their extension from hypercube functions.
//!
//! A coloring is given by its cell over the box `prod [0, P_i)`. Cells are
//! stored with coordinate 1 varying fastest: residue `r` sits at index
//! `sum r_i * prod_{j<i} P_j`. With all periods equal to 2 this index is the
//! hypercube vertex id, so a cube truth table is a valid cell as is.

use crate::cube::CubeFunction;
use crate::error::{Error, Result};
use crate::iso::permutations;
use crate::Rational;

/// Largest number of cells accepted.
pub const MAX_CELLS: usize = 1 << 24;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PeriodicLatticeFunction {
    periods: Vec<usize>,
    cell: Vec<i8>,
}

impl PeriodicLatticeFunction {
    pub fn new(periods: Vec<usize>, cell: Vec<i8>) -> Result<Self> {
        if periods.is_empty() || periods.len() > 24 {
            return Err(Error::Precondition(format!("lattice dimension {} outside 1..=24", periods.len())));
        }
        if periods.contains(&0) {
            return Err(Error::Precondition("periods must be positive".into()));
        }
        let size = periods
            .iter()
            .try_fold(1usize, |acc, &p| acc.checked_mul(p).filter(|&s| s <= MAX_CELLS))
            .ok_or_else(|| Error::Infeasible(format!("cell larger than {MAX_CELLS}")))?;
        if cell.len() != size {
            return Err(Error::TableLength {
                got: cell.len(),
                expected: size,
            });
        }
        if let Some((index, &value)) = cell.iter().enumerate().find(|(_, &s)| s != 1 && s != -1) {
            return Err(Error::NotASign {
                index,
                value: value.into(),
            });
        }
        Ok(PeriodicLatticeFunction { periods, cell })
    }

    pub fn n(&self) -> usize {
        self.periods.len()
    }

    pub fn periods(&self) -> &[usize] {
        &self.periods
    }

    pub fn cell(&self) -> &[i8] {
        &self.cell
    }

    fn strides(&self) -> Vec<usize> {
        let mut acc = 1;
        self.periods
            .iter()
            .map(|&p| {
                let s = acc;
                acc *= p;
                s
            })
            .collect()
    }

    fn residues(&self, mut index: usize) -> Vec<usize> {
        self.periods
            .iter()
            .map(|&p| {
                let r = index % p;
                index /= p;
                r
            })
            .collect()
    }

    fn index(&self, residues: &[usize]) -> usize {
        residues.iter().zip(self.strides()).map(|(r, s)| r * s).sum()
    }

    /// Value at an arbitrary lattice point.
    pub fn eval(&self, x: &[i64]) -> Result<i8> {
        if x.len() != self.n() {
            return Err(Error::DimensionMismatch {
                left: x.len(),
                right: self.n(),
            });
        }
        let residues: Vec<usize> = x
            .iter()
            .zip(&self.periods)
            .map(|(&xi, &p)| xi.rem_euclid(p as i64) as usize)
            .collect();
        Ok(self.cell[self.index(&residues)])
    }

    pub fn to_sign_string(&self) -> String {
        self.cell.iter().map(|&s| if s > 0 { '+' } else { '-' }).collect()
    }
}

/// `f~(x) = f(x mod 2)` on `Z^n`.
pub fn extend_to_lattice(f: &CubeFunction) -> PeriodicLatticeFunction {
    PeriodicLatticeFunction {
        periods: vec![2; f.n()],
        cell: f.table().to_vec(),
    }
}

/// Neighbor counts `|{y ~ r : g(y) = +1}|` over the `2n` lattice neighbors of
/// every residue class.
pub fn lattice_bias_counts(g: &PeriodicLatticeFunction) -> Vec<u32> {
    let strides = g.strides();
    (0..g.cell.len())
        .map(|idx| {
            let r = g.residues(idx);
            let mut count = 0;
            for (i, (&p, &stride)) in g.periods.iter().zip(&strides).enumerate() {
                let base = idx - r[i] * stride;
                let up = base + ((r[i] + 1) % p) * stride;
                let down = base + ((r[i] + p - 1) % p) * stride;
                count += u32::from(g.cell[up] == 1) + u32::from(g.cell[down] == 1);
            }
            count
        })
        .collect()
}

/// `Some(p)` iff every lattice point has exactly `2np` neighbors colored `+1`.
pub fn verify_lattice_bias(g: &PeriodicLatticeFunction) -> Option<Rational> {
    let counts = lattice_bias_counts(g);
    let first = counts[0];
    counts
        .iter()
        .all(|&c| c == first)
        .then(|| Rational::new(first.into(), 2 * g.n() as u64))
}

/// Lattice symmetry `x -> y` with `y_{perm[i]} = ±x_i + shift_{perm[i]}`,
/// the sign negative for coordinates in `reflections`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LatticeSymmetry {
    pub perm: Vec<usize>,
    pub reflections: u64,
    pub shift: Vec<usize>,
}

/// Largest lattice dimension for [`find_lattice_symmetry`].
pub const SYMMETRY_MAX_DIM: usize = 6;

/// Searches the finite group of coordinate permutations, reflections and
/// cell translations for a symmetry `s` with `b(x) = a(s(x))`.
pub fn find_lattice_symmetry(a: &PeriodicLatticeFunction, b: &PeriodicLatticeFunction) -> Result<Option<LatticeSymmetry>> {
    if a.n() != b.n() {
        return Err(Error::DimensionMismatch {
            left: a.n(),
            right: b.n(),
        });
    }
    let n = a.n();
    if n > SYMMETRY_MAX_DIM {
        return Err(Error::DimensionOutOfRange {
            n,
            max: SYMMETRY_MAX_DIM,
        });
    }
    let mut pa = a.periods.clone();
    let mut pb = b.periods.clone();
    pa.sort_unstable();
    pb.sort_unstable();
    if pa != pb {
        return Ok(None);
    }
    let b_residues: Vec<Vec<usize>> = (0..b.cell.len()).map(|i| b.residues(i)).collect();
    for perm in permutations(n) {
        if (0..n).any(|i| b.periods[i] != a.periods[perm[i]]) {
            continue;
        }
        for reflections in 0..1u64 << n {
            for shift_index in 0..a.cell.len() {
                let shift = a.residues(shift_index);
                let matches = b_residues.iter().enumerate().all(|(idx, r)| {
                    let mut y = vec![0; n];
                    for i in 0..n {
                        let p = a.periods[perm[i]];
                        let xi = if (reflections >> i) & 1 == 1 { (p - r[i]) % p } else { r[i] };
                        y[perm[i]] = (xi + shift[perm[i]]) % p;
                    }
                    a.cell[a.index(&y)] == b.cell[idx]
                });
                if matches {
                    return Ok(Some(LatticeSymmetry {
                        perm,
                        reflections,
                        shift,
                    }));
                }
            }
        }
    }
    Ok(None)
}
