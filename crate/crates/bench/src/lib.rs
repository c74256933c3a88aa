//! Instance generators shared by the benchmark targets.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use wasserq::{DiagramPoint, PersistenceDiagram};

/// A reproducible random diagram with `len` points, lifetimes in (0.05, 3].
pub fn random_diagram(seed: u64, len: usize) -> PersistenceDiagram {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    PersistenceDiagram::new(
        (0..len)
            .map(|_| {
                let birth: f64 = rng.gen_range(-2.0..2.0);
                DiagramPoint::new(birth, birth + rng.gen_range(0.05..3.0)).unwrap()
            })
            .collect(),
    )
}
