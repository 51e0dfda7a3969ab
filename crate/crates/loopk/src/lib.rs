//! IO companion of `loopk-core`: the JSON polynomial schema, structured
//! check reports, text formats, and the verification suites behind the
//! `loopk` command-line tool.

pub mod json;
pub mod suites;

pub use json::{poly_from_json, poly_to_json, PolyJson, Report};
