//! Presentations, kernel enumeration and oracle-backed group models.

mod error;
pub mod kernel;
pub mod model;
mod presentation;
pub mod pushforward;
pub mod ratio;

pub use error::PresentationError;
pub use kernel::{
    enumerate_kernel, translation_relations, Interleave, KernelKind, KernelStream, OracleKernel,
    SeededKernel, StagedKernel, SyllableKernel,
};
pub use model::{
    builtin_model, Bs12Model, CyclicModel, Element, FreeModel, GroupModel, HeisenbergModel,
    LamplighterModel, LinearModel, Model,
};
pub use presentation::{Family, Generators, Presentation, PresentationFile, Relators};
pub use pushforward::{pushforward, PushClass};
pub use ratio::Q;
