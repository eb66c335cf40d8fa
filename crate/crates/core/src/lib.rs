pub mod algebra;
pub mod error;
pub mod exec;
pub mod frobenius;
pub mod groebner;
pub mod session;
pub mod splinter;
