//! Independent sets, type decompositions, star sets and diameters.

mod decompose;
mod independent;
mod star;

pub use decompose::{
    classify_element, classify_type2, decompose, validate_decomposition, Decomposition,
    ElementClass, GroupKind, Type2Class, TypedGroup,
};
pub use independent::{
    all_maximum_independent_sets, alpha_exact, alpha_exact_with_cap,
    greedy_maximal_independent_set, is_independent, is_maximal_independent, max_independent_set,
    max_independent_set_with_cap, GreedyOrder, IndependentSet, DEFAULT_ALPHA_CAP_N,
    DEFAULT_MIS_CAP,
};
pub use star::{
    diameter, is_star_set, r_rho, star_diameter, DiameterResult, DiameterSearch, StarMode, StarSet,
    DEFAULT_DIAMETER_CAP,
};
