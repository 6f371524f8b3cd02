//! Command line and HTTP front ends over the clusterlab engine.

pub mod api;
pub mod cli;
pub mod server;
pub mod session;
