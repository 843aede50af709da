//! Run configuration shared by the expansion algorithms.

use std::cell::Cell;

use rand_chacha::ChaCha8Rng;

/// Seed and draw counter for the Las Vegas steps. Each draw gets its own stream,
/// so replaying with the same seed reproduces every choice.
#[derive(Debug)]
pub struct Ctx {
    pub seed: u64,
    draws: Cell<u64>,
}

impl Ctx {
    pub fn new(seed: u64) -> Self {
        Ctx { seed, draws: Cell::new(0) }
    }

    pub fn rng(&self) -> ChaCha8Rng {
        let n = self.draws.get();
        self.draws.set(n + 1);
        crate::dynev::primitive::seeded(self.seed, n)
    }
}

impl Default for Ctx {
    fn default() -> Self {
        Ctx::new(0)
    }
}
