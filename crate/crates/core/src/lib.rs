pub mod cli;
pub mod cns;
pub mod coeff;
pub mod eval;
pub mod normalize;
pub mod ore;
pub mod serial;
