//! Generic and negligible subsets of a free group: exact and sampled ball
//! densities, translated-ball witnesses, the disjoint packing of translated
//! balls and the sets `T_f`.

mod density;
mod error;
mod predicate;
mod translate;

pub use density::{
    density, density_report, random_reduced_word, ratio, sample_density, DensityReport, DensityRow, SampleEstimate,
    BALL_GUARD,
};
pub use error::GenericityError;
pub use predicate::{t_f_set, translated_ball, Growth, SetPredicate, TF_SEARCH_LIMIT};
pub use translate::{disjoint_translates, find_translate, packing_limit, packing_ratio};
