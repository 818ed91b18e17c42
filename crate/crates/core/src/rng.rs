//! Seeded pseudo-random generation.
//!
//! All randomized constructors draw from ChaCha8 seeded through
//! `SeedableRng::seed_from_u64`, so a given seed reproduces the same stream on
//! every platform this crate builds for.

pub type Prng = rand_chacha::ChaCha8Rng;
