//! Group catalogues, bundled towers, verification suites and JSON reports
//! behind the `proflat` command.

pub mod catalogue;
pub mod cli;
pub mod error;
pub mod report;
pub mod suites;
pub mod towers;

pub use catalogue::{Catalogue, CatalogueEntry, Source};
pub use error::{HarnessError, Result};
pub use report::{CheckResult, Report, Summary};
pub use suites::{Suite, VerifyOptions};
