//! Exhaustive computations with co-t-structures, cotorsion pairs and torsion
//! pairs in the bounded derived category of a type A quiver.

pub mod bijections;
pub mod cotstr;
pub mod derived;
pub mod error;
pub mod ext_coheart;
pub mod homotopy_cat;
pub mod linalg;
pub mod quiver_rep;
pub mod report;
pub mod subcat;
pub mod yoneda_mod;

pub use error::{LabError, Result};
