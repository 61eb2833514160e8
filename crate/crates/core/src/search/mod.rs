//! Locating periodic parameters, checking closure numerically and scanning
//! the `(E, D)` plane.

pub mod poncelet;
pub mod roots;
pub mod scan;

pub use poncelet::{verify_poncelet, ClosureReport, Verdict};
pub use roots::{find_periodic_parameters, PeriodicRoot, Slice};
pub use scan::{scan_periodicity, ScanCell, ScanGrid, ScanResult};
