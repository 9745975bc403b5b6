pub mod abgroup;
pub mod document;
pub mod error;
pub mod field;
pub mod hom;
pub mod lattice;
pub mod matrix;
pub mod poly;
pub mod quotient;
pub mod report;
pub mod tate;
