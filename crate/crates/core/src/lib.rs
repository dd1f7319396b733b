//! Exact-arithmetic engine for modular-form-valued characteristic forms.

pub mod charforms;
pub mod cli;
pub mod modforms;
pub mod qseries;
pub mod ring;
pub mod verifier;
