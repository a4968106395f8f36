//! Qutrit operator constants, gate matrices, Lie subalgebra patterns and
//! randomized structure checks.

mod gates;
mod identities;
mod selftest;
mod subspace;

pub use gates::{
    cinc_matrix, controlled_local, digit, dim, embed_local, gcx_matrix, generator, rotation, AlgebraError, Axis,
    GeneratorId, Level,
};
pub use identities::{identity_suite, local_x_expansion, IdentityCheck, LocalXExpansion};
pub use selftest::{
    commutation_selftest, commutation_selftest_with, maximal_abelian_check, random_element, AbelianReport,
    GeneratorTable, RelationResult, SelfTestReport, SELFTEST_TOL,
};
pub use subspace::{
    diagonal_basis, group_shape_residual, project, subspace_membership, DiagonalKind, GroupShape, SubspaceId,
    SubspaceTag,
};
