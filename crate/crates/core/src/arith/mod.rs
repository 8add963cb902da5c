//! Exact arithmetic: finite fields F_{p^s}, p-typical Witt vectors with their
//! structure maps, canonical finite-group descriptors, and integer sparse
//! linear algebra (Smith normal form) used by every homology computation.
//!
//! All values are immutable after construction and all operations are pure.

pub mod fq;
mod galois;
pub mod group;
pub mod matrix;
pub mod witt;

pub use fq::{Field, FieldCtx, FqElement, PrimePower};
pub use group::{
    group_from_matrices, homology_at, witt_module_order, FinAbPGroup, WittModuleDescriptor,
    WittSummand,
};
pub use matrix::{smith_normal_form, AbGroup, IntMat, Snf, SparseIntMatrix};
pub use witt::{
    ghost_components, teichmuller_witt, witt_int_iso, witt_int_iso_inverse, witt_ring_ops,
    witt_structure_maps, WittMap, WittOp, WittVector,
};

/// p-adic valuation of n, with v(0) reported as None.
pub fn nu_p(p: u64, n: u64) -> Option<u32> {
    if n == 0 {
        return None;
    }
    let mut e = 0;
    let mut n = n;
    while n % p == 0 {
        e += 1;
        n /= p;
    }
    Some(e)
}
