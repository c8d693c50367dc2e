use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::instance::{avoid, Condition, NamesSource, SouslinInstance};
use crate::construction::WeightSequence;
use crate::cube::{ClopenSet, Coordinate, PartialAssignment};
use crate::error::{Error, Result};

/// Block holding the coordinates shared by all generated conditions.
pub const NOISE_BLOCK: u64 = 1 << 40;

/// Parameters of a seeded random instance.
#[derive(Clone, Debug)]
pub struct GeneratorConfig {
    pub source: NamesSource,
    pub family: usize,
    /// `|Γ_ξ|` for every condition.
    pub gamma: usize,
    pub cut: usize,
    /// Number of noise coordinates each condition fixes at random.
    pub noise: u64,
    pub weight: WeightSequence,
}

impl GeneratorConfig {
    pub fn base(generators: usize, horizon: usize, family: usize) -> Self {
        GeneratorConfig {
            source: NamesSource::Base { generators, horizon },
            family,
            gamma: 1,
            cut: 2,
            noise: 2,
            weight: WeightSequence::InverseSquare,
        }
    }
}

/// A random instance satisfying the instance invariant by construction.
///
/// Uses ChaCha8 seeded with `seed`. Condition `ξ` draws `Γ_ξ` as a uniform
/// `gamma`-subset of the generators and one fair bit choosing a side; it
/// then fixes, for every `α ∈ Γ_ξ` and `cut ≤ n < M`, coordinates making the
/// chosen side (`ȧ_α` or `ḃ_α`) empty at `n`, and finally `noise` fair bits
/// on [`NOISE_BLOCK`]. Each condition is a single cylinder.
pub fn generate(config: &GeneratorConfig, seed: u64) -> Result<SouslinInstance> {
    let names = config
        .source
        .build()?
        .ok_or_else(|| Error::Config("cannot generate over explicit names".into()))?;
    let generators = names.len();
    if config.gamma > generators {
        return Err(Error::Config(format!(
            "tuple size {} exceeds {generators} generators",
            config.gamma
        )));
    }
    let horizon = config.source.horizon();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut conditions = Vec::with_capacity(config.family);
    for _ in 0..config.family {
        let mut gamma: Vec<usize> = sample(&mut rng, generators, config.gamma).into_vec();
        gamma.sort_unstable();
        let side = rng.gen::<bool>();
        let mut x = PartialAssignment::new();
        for &alpha in &gamma {
            let name = if side { &names[alpha].1 } else { &names[alpha].0 };
            for n in config.cut.min(horizon)..horizon {
                if !avoid(&mut x, &name.events()[n]) {
                    return Err(Error::Config(format!("cannot avoid name {alpha} at {n}")));
                }
            }
        }
        for offset in 0..config.noise {
            x.set(Coordinate::new(NOISE_BLOCK, offset), rng.gen());
        }
        conditions.push(Condition::new(ClopenSet::cylinder(x), gamma));
    }
    SouslinInstance::new(config.source, conditions, config.cut, config.weight)
}
