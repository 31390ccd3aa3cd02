//! Generators, file formats, the construction dispatcher, the preserver
//! baseline, and the CSV benchmark driver.

pub mod baseline;
pub mod bench;
pub mod construct;
pub mod generate;
pub mod io;
pub mod pairs;
pub mod rng;
