//! Exact computations with Mac Lane 3-cocycles of finite rings and the
//! skeletal categorical rings they classify.

pub mod algebra;
pub mod catalog;
pub mod catgroup;
pub mod catring;
pub mod cli;
pub mod cochain;
pub mod correspondence;
pub mod error;
pub mod io;
pub mod props;

pub use error::{Error, Result};
