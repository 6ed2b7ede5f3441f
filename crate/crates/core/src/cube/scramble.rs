use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{Move, MoveSequence};

/// `n` random face turns, never turning the same face twice in a row, so
/// every move is an effective turn. Deterministic for a given seed.
pub fn random_scramble(n: usize, seed: u64) -> MoveSequence {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    random_scramble_with(n, &mut rng)
}

pub fn random_scramble_with<R: Rng + ?Sized>(n: usize, rng: &mut R) -> MoveSequence {
    let mut out = Vec::with_capacity(n);
    let mut last: Option<usize> = None;
    while out.len() < n {
        let face = match last {
            // pick among the five other faces
            Some(prev) => {
                let f = rng.gen_range(0..5);
                if f >= prev {
                    f + 1
                } else {
                    f
                }
            }
            None => rng.gen_range(0..6),
        };
        let turns = rng.gen_range(1..=3);
        out.push(Move::from_index(face * 3 + turns - 1));
        last = Some(face);
    }
    MoveSequence::from_moves(out)
}
