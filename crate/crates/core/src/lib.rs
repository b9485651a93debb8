//! Exact simulation of symmetry-reduced QAOA on `n` qudits of dimension `d`.
//!
//! The crate is organized bottom-up:
//!
//! - [`combinatorics`]: partitions, tableaux, hook lengths, contents, characters
//! - [`tensor`]: dense operators and states, spectra, evolution, PF structure
//! - [`hamiltonians`]: problem Hamiltonians, standard and sector mixers
//! - [`schur_weyl`]: sector projectors, Young symmetrizers, sector ground states
//! - [`symmetry`]: classical symmetry groups acting on strings and their orbits
//! - [`qaoa`]: the alternating-operator chain, sampling and optimization

pub mod basis;
pub mod combinatorics;
pub mod error;
pub mod group_algebra;
pub mod hamiltonians;
pub mod optimizer;
pub mod perm;
pub mod qaoa;
pub mod schur_weyl;
pub mod symmetry;
pub mod tensor;

pub use combinatorics::{Cell, Partition, Tableau, TableauKind};
pub use error::{Error, Result};
pub use group_algebra::GroupAlgebraElement;
pub use hamiltonians::{ProblemSpec, ZForm};
pub use perm::Permutation;
pub use tensor::{Operator, PfReport, SpectralDecomposition, StateVector};
pub use qaoa::{ChainOrder, QaoaParams, QaoaResult, SectorRunReport};
pub use schur_weyl::{Sector, SectorTable};
