use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid presentation: {0}")]
    InvalidGraph(String),

    #[error("the shift space is empty")]
    EmptyShift,

    #[error("symbol {0:?} is not in the alphabet")]
    BadSymbol(String),

    #[error("flip is not an involution (witness block {witness:?})")]
    NotInvolution { witness: String },

    #[error("flip does not map the shift onto itself by a reversal (witness block {witness:?})")]
    NotReversing { witness: String },

    #[error("flip table is missing block {0:?}")]
    IncompleteFlipTable(String),

    #[error("relation monoid exceeds the cap of {cap} elements")]
    MonoidBlowup { cap: usize },

    #[error("star map left the joint state set: {0}")]
    StarMismatch(String),

    #[error("{0:?} is not a block of the shift")]
    NotABlock(String),

    #[error("presentation is not irreducible")]
    NotIrreducible,

    #[error("level {k} is nonempty but has no matrices")]
    IncompleteLevels { k: usize },

    #[error("J and A do not satisfy JA = AᵀJ and J² = I")]
    FlipIncompatible,

    #[error("power series has the wrong constant term for {0}")]
    BadConstantTerm(&'static str),

    #[error("could not construct a subset family satisfying the lemma hypotheses: {0}")]
    HypothesisConstructionFailure(String),

    #[error("system file: {0}")]
    Schema(String),
}
