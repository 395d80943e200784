//! Exterior-power invariants of finite cyclic actions on `Z^d`.
//!
//! For the companion action of `C_n` on `Z^phi(n)`, the K1 rank of the
//! crossed product is the sum of the fixed-submodule ranks of the odd
//! exterior powers. Everything here computes that sum and the certificates
//! that force it to be positive.

mod fixed;
mod partition;
mod report;
mod wedge;

pub use fixed::{
    binomial, exterior_traces, fixed_rank, fixed_rank_by_kernel, fixed_rank_table,
    fixed_ranks_by_trace, DegreeRank, EXACT_RANK_LIMIT, KERNEL_ROUTE_LIMIT,
};
pub use partition::{
    fixed_witnesses, partition_search, FixedWitnesses, PartitionCertificate, MAX_SEARCH_DIM,
};
pub use report::{
    af_verdict, prime_closed_form, s1, AfStatus, AfVerdict, KReport, CRITERION_LEVEL,
    SCHEMA_VERSION,
};
pub use wedge::{
    apply, exterior_power_matrix, indices_of, mask_of, wedge, wedge_basis, WedgeVector,
};
