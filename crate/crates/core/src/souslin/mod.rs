//! Souslin instances over a family of name pairs: exact evaluation of the
//! compatibility event for a pair of conditions, an exhaustive pair finder
//! and the constructive refinement pipeline producing certified pairs.

mod eval;
mod generate;
mod instance;
mod pipeline;

pub use eval::{eval_pair, find_pair_bruteforce, measure_outside, PairEvaluation};
pub use generate::{generate, GeneratorConfig, NOISE_BLOCK};
pub use instance::{Condition, NamesSource, SouslinInstance};
pub use pipeline::{
    approximants, find_pair_pipeline, Approximant, CertificateRecord, PairCertificate, PipelineOutcome, PipelineRun,
    Residual,
};
