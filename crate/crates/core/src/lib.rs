//! Locally biased and locally stable Boolean functions on the hypercube,
//! with the tools to compare them: Walsh spectra, isomorphism testing,
//! exhaustive enumeration, and exact scenery distributions of random walks.
//!
//! Vertices of `{-1,1}^n` are `u64` bit masks: bit `i - 1` set means
//! coordinate `i` is `-1`. Functions take values in `{-1, +1}` stored as `i8`.

pub mod cayley;
pub mod codes;
pub mod constructions;
pub mod counting;
pub mod cube;
pub mod enumerate;
pub mod error;
pub mod format;
pub mod iso;
pub mod lattice;
pub mod scenery;
pub mod tree;
pub mod walsh;

/// Exact probabilities such as bias values `p = k / n`.
pub type Rational = num_rational::Ratio<u64>;

pub use cayley::{cayley_half_biased, search_cayley, verify_cayley_bias, CayleyZFunction};
pub use codes::{hamming_code, BinaryCode};
pub use cube::{is_locally_biased, is_locally_stable, local_profile, CubeFunction, LocalProfile, ProfileKind};
pub use enumerate::{enumerate_locally_biased, enumerate_locally_stable, EnumerationMode, EnumerationReport};
pub use error::{Error, Result};
pub use iso::{are_isomorphic, canonical_form, Certificate, CubeAutomorphism, IsoOptions, IsoVerdict};
pub use lattice::{extend_to_lattice, verify_lattice_bias, PeriodicLatticeFunction};
pub use scenery::{exact_scenery_distribution, stability_pair_distribution, SceneryDistribution, SignWord};
pub use tree::{tree_greedy, verify_tree_bias, TreeLabeling};
pub use walsh::{walsh_transform, WalshSpectrum};
