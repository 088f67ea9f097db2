//! Bijections between right pyramids, positive strings, walks, generalized
//! Dyck paths and `a`-ary trees, plus the admissible composition of walks.

pub mod composition;
pub mod dyck;
pub mod string;

pub use composition::{
    all_admissible_compositions, closed_walks_starting_right, compose_admissible, composition_profile, factorize_walk,
    AdmissibleComposition, CompositionFactor, Letter,
};
pub use dyck::{
    all_dyck_paths, all_trees, dyck_to_tree, path_to_walk, tree_to_dyck, walk_to_path, AryTree, LatticePath, PathStep,
};
pub use string::{
    decode_pyramid_a2, encode_pyramid_a2, is_positive, positive_strings, right_pyramid_to_string,
    string_to_right_pyramid, string_to_walk, walk_to_string, BitString, Step, Walk,
};
