pub mod classgroup;
pub mod construct;
pub mod divisors;
pub mod hyperbolic;
pub mod ideal;
pub mod range;
pub mod search;
pub mod verdict;

pub use classgroup::{class_group, pic_two_part, principal_generator, ClassGroup, Form};
pub use construct::{
    artin_character, construct_binary, construct_ternary_family, find_unramified_quadratic, BinaryConstruction,
    TernaryFamily,
};
pub use divisors::{primes_above, small_first};
pub use hyperbolic::{binary_hyperbolic_represents, normalized_generator};
pub use ideal::Ideal;
pub use range::{counterexample_family, represents_range_check, Counterexample, RangeReport};
pub use search::{hyperbolic_search, search_representation};
pub use verdict::{
    hyperbolic_class, is_globally_universal, single_class_condition, GlobalVerdict, ProofKind, UniversalReason,
};
