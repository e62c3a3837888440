pub mod arith;
pub mod cli;
pub mod error;
pub mod complexes;
pub mod ringmod;
pub mod supports;
pub mod topology;

#[cfg(test)]
mod proptests;

pub use arith::{Euclid, Fpx, Int};
pub use error::{Error, Result};

pub type IntComplex = complexes::Complex<Int>;
pub type IntModule = ringmod::Module<Int>;
pub type IntRing = ringmod::Ring<Int>;
pub type PolyComplex<const P: u64> = complexes::Complex<Fpx<P>>;
pub type PolyModule<const P: u64> = ringmod::Module<Fpx<P>>;
pub type PolyRing<const P: u64> = ringmod::Ring<Fpx<P>>;
