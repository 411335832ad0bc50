//! Krieger's joint state chain and its finitary and irreducible restrictions.
//!
//! A joint state is a triple `(F, a, P)`: the future `F` of a left ray, the
//! symbol `a` read next, and the past `P` of the right ray that follows.
//! The chain on joint states is a vertex shift `X_A` labeled by the middle
//! symbol, and the flip lifts to the symmetric involution
//! `(F, a, P)* = (P*, τ(a), F*)`, recorded as the permutation matrix `J`.

mod chain;
mod classes;

pub use chain::{
    build_finitary_chain, build_irreducible_component, build_joint_chain,
    build_joint_chain_with_cap, diamond_free, diamond_free_check, is_intrinsically_synchronizing,
    ChainKind, Cover, JointState, JointStateChain,
};
pub use classes::{
    compute_future_classes, compute_past_classes, witness_set, FollowerClass, FutureClass,
    PastClass, RayWitness, DEFAULT_MONOID_CAP,
};
