//! Brute-force checks in truncated loop groups `GL_n(F_{q^m}[t]/t^N)`.

pub mod fplin;
pub mod iwahori;
pub mod ring;
pub mod search;
pub mod verify;

pub use iwahori::{iwahori_factorize, IwahoriFactors};
pub use ring::{LoopMatrix, Series, TruncRing};
pub use search::{
    find_conjugator, solve_torus_lang, Attempt, SearchKind, SearchOutcome, SearchPolicy,
};
pub use verify::{
    newton_invariant_of_monomial, verify_double_coset_conjugacy, verify_hn_reduction, Experiment,
    ExperimentReport, LoopSpec,
};
