//! Exact combinatorics of Newton and Ekedahl–Oort stratifications for split
//! classical groups, plus brute-force checks in truncated loop groups.

pub mod affine;
pub mod bgmu;
pub mod cli;
pub mod eozip;
pub mod error;
pub mod field;
pub mod lattice;
pub mod loopgrp;
pub mod polygon;
pub mod poset;
pub mod report;
pub mod rootdata;
pub mod specfile;
pub mod weyl;

pub use error::{Error, Result};
