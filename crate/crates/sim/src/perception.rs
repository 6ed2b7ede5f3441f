use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rubikai_core::cube::{Face, CENTER_INDICES};

use crate::Scene;

/// The descriptor a camera would report for the scene's cube. Each
/// non-center sticker is independently replaced, with probability
/// `sticker_noise`, by a uniformly drawn different label.
pub fn observe_cube(scene: &Scene, sticker_noise: f64, seed: u64) -> String {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    observe_with(scene, sticker_noise, &mut rng)
}

pub(crate) fn observe_with<R: Rng + ?Sized>(scene: &Scene, sticker_noise: f64, rng: &mut R) -> String {
    let facelets = scene.cube_state.to_facelets();
    let p = sticker_noise.clamp(0.0, 1.0);
    facelets
        .stickers()
        .iter()
        .enumerate()
        .map(|(i, &f)| {
            if CENTER_INDICES.contains(&i) || !rng.gen_bool(p) {
                return f.letter();
            }
            let k = rng.gen_range(0..5);
            let other = Face::ALL.iter().filter(|&&g| g != f).nth(k).expect("five other faces");
            other.letter()
        })
        .collect()
}
