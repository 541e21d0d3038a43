pub mod bimodule;
pub mod group;
pub mod lattice;
pub mod linear;
pub mod ring;
pub mod snf;

pub use bimodule::{validate_bimodule, Bimodule, BimoduleTables};
pub use group::{FiniteAbelianGroup, GroupHomomorphism, GroupTables};
pub use linear::{solve_linear, solve_sparse, subquotient_invariants, LinearSolution, Subquotient};
pub use ring::{validate_ring, FiniteRing};
pub use snf::{smith_normal_form, SmithForm};
