//! From an Equality-Problem oracle that only answers on a generic set to a
//! decider for the whole word problem: injective families checked by the
//! oracle, certified by the invariance subroutine, then handed to the sofic
//! decider.

mod error;
mod families;
mod oracle;
mod pipeline;

pub use error::PipelineError;
pub use families::{enumerate_injective_families, family_candidates, verified_injective, EpRelations, InjectiveFamilies};
pub use oracle::{EpAnswer, EpOracle, Prepared, QueryStats};
pub use pipeline::{
    generic_ep_to_wp, CertifiedFamily, FamilyRecord, GenericEpDecider, LevelRecord, PipelineConfig, PipelineVerdict,
    SoficRecord, Transcript,
};
