//! Exact-arithmetic verification engine for the B-model structure theory of
//! the quintic threefold.

pub mod exactcore;
pub mod genring;
pub mod graphs;
pub mod hae;
pub mod mirrordata;
pub mod oscpf;
pub mod qde;
pub mod report;

pub use exactcore::{int, rat, rat_str, CycNum, Mat5, QSeries, Rat, Ring, SeriesError, ZSeries};
pub use report::{Check, Report, Status};
