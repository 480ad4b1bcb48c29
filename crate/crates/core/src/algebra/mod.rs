//! Finite Abelian groups, prime fields, linear codes over them and exact
//! arithmetic in cyclotomic rings.

pub mod cyclotomic;
pub mod field;
pub mod group;
pub mod linear;

pub use cyclotomic::CyclotomicInteger;
pub use group::{abelian_groups_of_order, group_parse, FiniteAbelianGroup, GroupElement};
pub use linear::{hamming_code, repetition_code, MinDistance, PrimeLinearCode};
