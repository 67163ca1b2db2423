//! Exact digit systems and the fractals they generate.
//!
//! * [`radix`]: standard and balanced base-`m` numerals, addition with
//!   carries, the carry-free test and digit extraction for rationals.
//! * [`fractal`]: generator lattices, depth-`n` prefractals built by IFS
//!   iteration or from digit conditions, and exact membership of rational
//!   points.
//! * [`dimension`]: closed-form and box-counted Minkowski dimensions, and the
//!   area of each prefractal.
//! * [`render`]: PBM and SVG output.
//! * [`cli`]: the `digit-fractals` command.

pub mod cli;
pub mod dimension;
pub mod error;
pub mod fractal;
pub mod radix;
pub mod render;

pub use error::{Error, Result};
pub use fractal::{GeneratorLattice, MembershipAutomaton, Prefractal};
pub use radix::{DigitString, DigitSystem, Rational, ValueInterval};
