//! Locally biased labelings of the `n`-regular tree, truncated at depth `D`.
//!
//! Vertices are stored in breadth-first order. The root has `n` children,
//! every other internal vertex has `n - 1`, so every internal vertex has
//! degree `n`.

use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::Rational;

/// Largest truncated tree accepted.
pub const MAX_TREE_VERTICES: usize = 1 << 24;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TreeLabeling {
    degree: usize,
    depth: usize,
    labels: Vec<i8>,
    /// Start of each level in `labels`, plus the total size.
    level_starts: Vec<usize>,
}

fn level_starts(degree: usize, depth: usize) -> Result<Vec<usize>> {
    let mut starts = vec![0, 1];
    let mut width = 1usize;
    for level in 1..=depth {
        width = width
            .checked_mul(if level == 1 { degree } else { degree - 1 })
            .filter(|&w| w <= MAX_TREE_VERTICES)
            .ok_or_else(|| Error::Infeasible(format!("tree larger than {MAX_TREE_VERTICES} vertices")))?;
        let next = starts[level] + width;
        if next > MAX_TREE_VERTICES {
            return Err(Error::Infeasible(format!("tree larger than {MAX_TREE_VERTICES} vertices")));
        }
        starts.push(next);
    }
    Ok(starts)
}

impl TreeLabeling {
    pub fn new(degree: usize, depth: usize, labels: Vec<i8>) -> Result<Self> {
        check_params(degree, depth)?;
        let starts = level_starts(degree, depth)?;
        let expected = *starts.last().unwrap();
        if labels.len() != expected {
            return Err(Error::TableLength {
                got: labels.len(),
                expected,
            });
        }
        if let Some((index, &value)) = labels.iter().enumerate().find(|(_, &s)| s != 1 && s != -1) {
            return Err(Error::NotASign {
                index,
                value: value.into(),
            });
        }
        Ok(TreeLabeling {
            degree,
            depth,
            labels,
            level_starts: starts,
        })
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn depth(&self) -> usize {
        self.depth
    }

    pub fn labels(&self) -> &[i8] {
        &self.labels
    }

    pub fn num_vertices(&self) -> usize {
        self.labels.len()
    }

    /// Depth of vertex `u`.
    pub fn level(&self, u: usize) -> usize {
        self.level_starts.partition_point(|&s| s <= u) - 1
    }

    pub fn parent(&self, u: usize) -> Option<usize> {
        let level = self.level(u);
        match level {
            0 => None,
            1 => Some(0),
            _ => {
                let offset = (u - self.level_starts[level]) / (self.degree - 1);
                Some(self.level_starts[level - 1] + offset)
            }
        }
    }

    /// Children of `u`, empty at the last level.
    pub fn children(&self, u: usize) -> std::ops::Range<usize> {
        let level = self.level(u);
        if level == self.depth {
            return 0..0;
        }
        if level == 0 {
            return 1..1 + self.degree;
        }
        let fan = self.degree - 1;
        let first = self.level_starts[level + 1] + (u - self.level_starts[level]) * fan;
        first..first + fan
    }

    /// Number of `+1` neighbors of `u`.
    pub fn plus_neighbors(&self, u: usize) -> usize {
        let up = self.parent(u).map_or(0, |p| usize::from(self.labels[p] == 1));
        up + self.children(u).filter(|&c| self.labels[c] == 1).count()
    }
}

fn check_params(degree: usize, depth: usize) -> Result<()> {
    if degree < 3 {
        return Err(Error::out_of_range("tree degree", degree, "3.."));
    }
    if depth < 2 {
        return Err(Error::out_of_range("tree depth", depth, "2.."));
    }
    Ok(())
}

/// Greedy labeling where every vertex above the last level sees exactly `b`
/// neighbors labeled `+1`.
///
/// With `seed = None` the root is `+1` (or `-1` when `b = 0`) and each
/// vertex fills its quota with its first children. With a seed the root is
/// `+1` with probability `b / n` and the quota goes to a uniform subset.
pub fn tree_greedy(degree: usize, depth: usize, b: usize, seed: Option<u64>) -> Result<TreeLabeling> {
    check_params(degree, depth)?;
    if b > degree {
        return Err(Error::out_of_range("tree quota b", b, format!("0..={degree}")));
    }
    let starts = level_starts(degree, depth)?;
    let mut tree = TreeLabeling {
        degree,
        depth,
        labels: vec![-1; *starts.last().unwrap()],
        level_starts: starts,
    };
    let mut rng = seed.map(ChaCha8Rng::seed_from_u64);
    tree.labels[0] = match rng.as_mut() {
        Some(rng) => {
            if rng.random_range(0..degree) < b {
                1
            } else {
                -1
            }
        }
        None => {
            if b == 0 {
                -1
            } else {
                1
            }
        }
    };
    let internal = tree.level_starts[depth];
    for u in 0..internal {
        let from_parent = tree.parent(u).map_or(0, |p| usize::from(tree.labels[p] == 1));
        let children = tree.children(u);
        let need = b
            .checked_sub(from_parent)
            .filter(|&k| k <= children.len())
            .ok_or_else(|| Error::Infeasible(format!("vertex {u} cannot reach quota {b}")))?;
        match rng.as_mut() {
            Some(rng) => {
                for i in sample(rng, children.len(), need) {
                    tree.labels[children.start + i] = 1;
                }
            }
            None => {
                for c in children.start..children.start + need {
                    tree.labels[c] = 1;
                }
            }
        }
    }
    Ok(tree)
}

/// `Some(b / n)` iff every vertex above the last level has the same number
/// `b` of `+1` neighbors.
pub fn verify_tree_bias(t: &TreeLabeling) -> Option<Rational> {
    let internal = t.level_starts[t.depth];
    let first = t.plus_neighbors(0);
    (1..internal)
        .all(|u| t.plus_neighbors(u) == first)
        .then(|| Rational::new(first as u64, t.degree as u64))
}
