use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{Delta, IndexedEventPair};
use crate::cube::{ClopenSet, Coordinate, PartialAssignment};

/// First block of the coordinates shared by all generated pairs; pair `ξ`
/// also owns block `ξ`.
pub const SHARED_BLOCK: u64 = 1 << 41;

fn table_event(block: u64, mask: u8) -> ClopenSet {
    ClopenSet::from_cylinders((0..8u8).filter(|p| mask >> p & 1 == 1).map(|p| {
        PartialAssignment::from_entries((0..3).map(|k| (Coordinate::new(block, k), p >> k & 1 == 1)))
    }))
}

/// `count` seeded pairs `(x_ξ, s_ξ)` with `μ(x_ξ | [s_ξ]) > δ`.
///
/// ChaCha8 seeded with `seed`. `s_ξ` fixes one shared coordinate (true with
/// probability 4/5) and one coordinate of block `ξ`; `x_ξ` is the join of a
/// random three-coordinate table on one of two shared blocks and a literal
/// on block `ξ`, redrawn until the conditional measure exceeds `δ`.
pub fn random_event_pairs(count: usize, delta: &Delta, seed: u64) -> Vec<IndexedEventPair> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|xi| {
            let own = Coordinate::new(xi as u64, 0);
            let mut s = PartialAssignment::new();
            s.set(Coordinate::new(SHARED_BLOCK, 0), rng.gen_bool(0.8));
            s.set(own, rng.gen());
            loop {
                let shared = table_event(SHARED_BLOCK + 1 + rng.gen_range(0..2), rng.gen());
                let x = shared.join(&ClopenSet::cylinder(PartialAssignment::from_entries([(own, rng.gen())])));
                let pair = IndexedEventPair::new(x, s.clone(), xi);
                if delta.is_exceeded_by(&pair.conditional()) {
                    break pair;
                }
            }
        })
        .collect()
}
