//! Følner-side procedures: the dovetailed Reiter search, layer-cake
//! extraction, injective Følner search with an oracle, brute-force Følner
//! functions and explicit Følner boxes for the built-in models.

mod boxes;
mod certificate;
mod error;
mod function;
mod search;
mod tree;
mod universal;

pub use boxes::{box_certificate, heisenberg_box, heisenberg_dims, heisenberg_word, lamplighter_box};
pub use certificate::{
    images, injective_part, is_folner, letter_ratios, ratios_of, within, FolnerCertificate, FolnerFile, Witness,
};
pub use error::FolnerError;
pub use function::{
    folner_function_bruteforce, next_combination, uniform_bound, FolnerFunctionTable, FolnerValue, SUBSET_GUARD,
};
pub use search::{
    candidates, folner_from_reiter, injective_folner_search, power_box, reiter_search, ReiterOutcome, SharedKernel,
    SubsetOrder,
};
pub use tree::{free_ball_slack, free_ball_slack_bruteforce};
pub use universal::{universal_run, Member, UniversalOutcome};
