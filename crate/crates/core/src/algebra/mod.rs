//! Monomials, term orders, the ring `k[x, T]` and binomial reduction.

pub mod monomial;
pub mod order;
pub mod reduce;
pub mod ring;
pub mod text;

pub use monomial::{ImageMonomial, SMonomial, TVariable, XMonomial};
pub use order::{OrderVariant, TermOrder, Variable};
pub use reduce::{reduce, s_pair_terms, s_polynomial, Reducer, Reduction, SPolynomial};
pub use ring::{Binomial, Mono, Poly, Ring};
