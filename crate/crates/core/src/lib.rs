// Bounds such as `D - 1 ≥ 2k + 1 + κ` are kept in their usual written form.
#![allow(clippy::int_plus_one)]

pub mod bbfix;
pub mod error;
pub mod grassmod;
pub mod parabolic;
pub mod poscalc;
pub mod rootsys;
