//! Exact scalars: rationals, number fields and odd-characteristic finite fields.

pub mod finite;
pub mod numfield;
pub mod poly;
pub mod roots;

pub use finite::{ff_trace, FiniteField};
pub use numfield::{cyclotomic, Field, FieldElem};
pub use poly::{fmt_rat, parse_rat, rat, ratio, Rat};
pub use roots::{adjoin_sqrt, is_square, nth_root, rational_square_class, sqrt, Embedding, SqrtExtension};
