pub mod error;
pub mod numerics;
pub mod rdi_inverter;
pub mod solution_catalog;
pub mod special_fn;
pub mod spinor_factory;
pub mod sta_core;
pub mod verifier;
