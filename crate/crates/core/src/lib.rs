pub mod algebra;
pub mod completion;
pub mod congruence;
pub mod enumerate;
pub mod gallery;
pub mod json;
pub mod kripke;
pub mod lattice;
pub mod report;
