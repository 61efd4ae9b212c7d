//! Defining equations of multi-Rees algebras and multi-fiber rings of powers
//! of ideals generated by subsets of the variables.

pub mod algebra;
pub mod battery;
pub mod error;
pub mod export;
pub mod fiber_type;
pub mod gb;
pub mod golden;
pub mod graph;
pub mod ideal;
pub mod linalg;
pub mod model;
pub mod oracle;
pub mod quasi_matrix;

pub use error::{Error, Result};
pub use ideal::{IdealSpec, Instance, Options};
pub use model::Model;
