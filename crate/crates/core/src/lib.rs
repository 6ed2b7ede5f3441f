pub mod coord;
pub mod cube;
pub mod metrics;
pub mod plan;
pub mod solver;
