//! Subgroup lattices of finite permutation groups, generic finite lattice
//! algorithms, and finite inverse systems standing in for profinite groups.

pub mod arith;
pub mod bitset;
pub mod classify;
pub mod construct;
pub mod error;
pub mod format;
pub mod group;
pub mod hom;
pub mod lattice;
pub mod perm;
pub mod structure;
pub mod subgroup;
pub mod subgroups;
pub mod tower;

pub use bitset::BitSet;
pub use error::{Error, Result};
pub use group::{FiniteGroup, Limits};
pub use hom::Homomorphism;
pub use lattice::{Antichain, Lattice, LatticeDecomposition};
pub use perm::Permutation;
pub use subgroup::Subgroup;
pub use subgroups::{enumerate_subgroups, NodeInfo, SubgroupLatticeView};
pub use tower::{CoherentSubgroup, LevelPredicate, Tower, TrajectoryReport, Verdict, WidthClass};
