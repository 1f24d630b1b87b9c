pub mod build;
pub mod classify;
pub mod cli;
pub mod cover;
pub mod exact;
pub mod galois;
pub mod schinzel;
