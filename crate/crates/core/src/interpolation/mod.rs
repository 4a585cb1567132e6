//! Gadget counts, access profiles and the exact interpolation system.

mod combinatorics;
mod gadget;
mod profile;
mod system;

pub use combinatorics::{f, factorial, falling_factorial, stirling2};
pub use gadget::{e_set, ell_of, in_excluded, surjective_gadget_count};
pub use profile::{
    access_profile, access_profile_with, interpolation_hardness_test,
    interpolation_hardness_test_with, profile_order, AccessProfile, ProfileClass,
};
pub use system::{
    build_interpolation_system, column_pairs, solve_t, solve_t_integral, InterpolationSystem,
};
