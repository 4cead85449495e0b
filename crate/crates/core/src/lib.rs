//! Weighted word lengths on countable semigroups and the norms they induce on
//! the semigroup algebra.
//!
//! Given a generating sequence `s_1, s_2, ...` and weights `F(n) >= 0`, the
//! length `l_F(s)` is the cheapest factorization of `s` into generators and
//! `||a||_F = sum_s |a_s| e^{l_F(s)}` is a submultiplicative norm on the
//! semigroup algebra. The family of all such norms describes the
//! Arens-Michael envelope. This crate computes these objects on finite balls:
//!
//! - [`semigroup`]: concrete semigroups, products, closures.
//! - [`length`]: `l_F` by best-first search, an exhaustive cross-check,
//!   subadditivity scans and dominating weights for locally finite semigroups.
//! - [`normspace`]: algebra elements, convolution, norms and comparison constants.
//! - [`nuclearity`]: staircase weights, defect census and nuclear-sum witnesses.
//! - [`classify`]: finite / finitely generated / locally finite evidence.
//! - [`cli`]: the JSON input format, report emission and the command runner.

pub mod classify;
pub mod cli;
pub mod element;
pub mod error;
pub mod length;
pub mod normspace;
pub mod nuclearity;
pub mod semigroup;
pub mod weight;

pub use element::{Element, GeneratorList};
pub use error::{Error, Result};
pub use length::{length_table, length_table_for, LengthTable};
pub use normspace::{AlgebraElement, Base, WeightedNorm};
pub use semigroup::{ClosureResult, Semigroup, SemigroupSpec};
pub use weight::{Cost, WeightFunction};
