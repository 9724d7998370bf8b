//! Firewall log status reporter.
//!
//! Parses semicolon-delimited firewall log exports (21 positional
//! fields per line) and renders frequency summary reports over the
//! log-type records: source addresses, destination addresses, service
//! usage and network interface usage, with counts, percentages, top-N
//! listings and traffic totals.

pub mod aggregate;
pub mod cli;
pub mod model;
pub mod parser;
pub mod render;
