//! Free bases of representation rings of `SU(n)` and `SO(2n)` over their
//! invariant subrings, with the algorithms that move between them.

pub mod error;
pub mod freebasis;
pub mod fuzz;
pub mod lattice;
pub mod laurent;
pub mod pairing;
pub mod symreduce;
pub mod weyl;

pub use error::{Error, Result};
pub use freebasis::{standard_basis, steinberg_basis, BasisContext, Decomposition};
pub use lattice::{Family, GroupType, Weight};
pub use laurent::{substitute, LaurentPoly, MonomialMap};
pub use pairing::{gram_matrix, index_pair, rank_certificate, unimodular_check, GramMatrix, VirtualCharacter};
pub use symreduce::{contract, InvariantPoly};
pub use weyl::WeylElement;
