//! Reduced words over a finite alphabet, shortlex enumeration of balls,
//! spheres and finite subsets, and a prefix index for fast products.

mod alphabet;
mod enumerate;
mod error;
mod index;
mod word;

pub use alphabet::Alphabet;
pub use enumerate::{all_words, ball, ball_size, sphere, sphere_size, FiniteSubsets, FiniteWordSet, Sphere};
pub use error::FreeGroupError;
pub use index::WordIndex;
pub use word::{cancellation, is_reduced, Letter, Word};
