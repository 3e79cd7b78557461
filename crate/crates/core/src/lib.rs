pub mod anosov;
pub mod automorphisms;
pub mod example_tower;
pub mod exact_linear;
pub mod fixtures;
pub mod free_nilpotent;
pub mod gradings;
pub mod lie_core;
pub mod number_field;
