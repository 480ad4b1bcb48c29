//! Codes correcting grain and mineral errors on granular magnetic media:
//! words and error balls, exact upper bounds, algebraic constructions,
//! colourings of confusability graphs and exact cardinality counting.

pub mod algebra;
pub mod bounds;
pub mod cardinality;
pub mod channel;
pub mod code;
pub mod coloring;
pub mod constructions;
pub mod error;
pub mod group_code;
pub mod search;
pub mod word;

pub use channel::{ball, ball_size_grain, balls_disjoint, ErrorKind, ErrorModel};
pub use code::{
    brute_force_decode, is_t_correcting, prepend_bit_lift, shorten_first_bit, single_grain_sufficient, verify,
    CodeBook, Conflict, Decoded,
};
pub use error::{Error, Result, DEFAULT_ENUMERATION_CAP};
pub use word::BitWord;
