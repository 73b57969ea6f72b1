//! Seeded random instances: decompositions, invertible matrices, base changes.

use num_bigint::BigUint;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub use rand::SeedableRng;

use crate::decompose::Decomposition;
use crate::linalg::Matrix;
use crate::rep::Representation;
use crate::roots::RootSystem;
use crate::scalar::{from_i64, Scalar};
use crate::error::Result;

/// Reproducible generator used by every sampler.
pub type Rng64 = ChaCha8Rng;

pub fn rng(seed: u64) -> Rng64 {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Independent multiplicities in `0..=max_mult` for every root.
pub fn random_decomposition<R: Rng>(roots: &RootSystem, max_mult: u64, rng: &mut R) -> Decomposition {
    Decomposition::from_pairs(
        roots.roots().iter().map(|r| (r.vector.clone(), BigUint::from(rng.gen_range(0..=max_mult)))),
    )
}

/// Like [`random_decomposition`] but never empty.
pub fn random_nonzero_decomposition<R: Rng>(roots: &RootSystem, max_mult: u64, rng: &mut R) -> Decomposition {
    loop {
        let d = random_decomposition(roots, max_mult.max(1), rng);
        if !d.is_empty() {
            return d;
        }
    }
}

/// Random `n x n` matrix with small integer entries, resampled until invertible.
pub fn random_invertible<F: Scalar, R: Rng>(n: usize, rng: &mut R) -> Matrix<F> {
    loop {
        let m = Matrix::from_fn(n, n, |_, _| from_i64::<F>(rng.gen_range(-3..=3)));
        if m.rank() == n {
            return m;
        }
    }
}

/// `m` transported along independent random automorphisms of every vertex space.
pub fn random_base_change<F: Scalar, R: Rng>(m: &Representation<F>, rng: &mut R) -> Result<Representation<F>> {
    let g: Vec<Matrix<F>> = m.dim_vector().0.iter().map(|&d| random_invertible(d as usize, rng)).collect();
    m.base_change(&g)
}
