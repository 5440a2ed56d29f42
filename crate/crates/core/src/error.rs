use thiserror::Error;

/// Errors raised by constructions and checks in the workbench.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("malformed input: {0}")]
    Malformed(String),

    #[error("composition is not associative: {h} ∘ ({g} ∘ {f}) ≠ ({h} ∘ {g}) ∘ {f}")]
    AssociativityViolation { h: String, g: String, f: String },

    #[error("identity law fails for {identity} and {morphism}")]
    IdentityViolation { identity: String, morphism: String },

    #[error("ill-typed composition of {g} after {f}: {reason}")]
    IllTypedComposition { g: String, f: String, reason: String },

    #[error("not a functor: {0}")]
    NotFunctor(String),

    #[error("search space of {required} exceeds the budget of {budget}")]
    SizeLimitExceeded { required: u128, budget: u128 },

    #[error("functor is not a monomorphism: {0}")]
    NotMonomorphism(String),

    #[error("functor is not a sieve")]
    NotSieve,

    #[error("category {0} is not a poset")]
    NotPoset(String),

    #[error("invalid Dwyer witness: {0}")]
    InvalidWitness(String),

    #[error("simplicial set is not complete (truncated at dimension {0})")]
    IncompleteInput(usize),

    #[error("simplicial identity fails: {0}")]
    SimplicialIdentity(String),

    #[error("congruence closure did not stabilise within {0} classes")]
    ClosureBudgetExceeded(usize),

    #[error("diagram is not functorial: {0}")]
    NotFunctorial(String),

    #[error("family is not natural: {0}")]
    NotNatural(String),

    #[error("diagram is not an orbit: its colimit has {0} elements")]
    NotOrbit(usize),

    #[error("tower link {0} is not a monomorphism")]
    NotMonoTower(usize),

    #[error("index categories of the diagrams differ")]
    IndexMismatch,

    #[error("group axiom fails: {0}")]
    GroupAxiom(String),

    #[error("not a subgroup: {0}")]
    NotSubgroup(String),

    #[error("subgroup is not contained in the stabilizer of {0}")]
    NotSubgroupOfStabilizer(String),

    #[error("unknown suite `{0}`")]
    UnknownSuite(String),

    #[error("unknown name `{0}`")]
    UnknownName(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
