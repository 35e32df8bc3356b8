pub mod polyz;
pub mod poly2;
pub mod embed;
pub mod fields;
pub mod rank1;
pub mod parity;
pub mod families;
pub mod enumerate;
pub mod graphs;
pub mod config;
pub mod report;
pub mod verify;
pub mod cli;
