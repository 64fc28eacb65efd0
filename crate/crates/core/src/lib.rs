pub mod error;
pub mod form;
pub mod linalg;
pub mod scalar;
pub mod structure;
pub mod dsl;
pub mod metric;
pub mod lefschetz;
pub mod catalog;
pub mod sasakian;
pub mod search;
pub mod random;
pub mod reproduce;
