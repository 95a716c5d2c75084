//! Torsion points on explicit curves in the Legendre family.

pub mod moddb;
pub mod scan;
pub mod spec;
pub mod verify;

pub use moddb::ModularPolyDB;
pub use scan::{certify, recertify, scan_fiber, scan_section, Certificate, FiberScan, HitRecord, SectionScan, TorsionHit};
pub use spec::{CurveFile, CurveSpec};
pub use verify::{detect_isogenous_fiber, verify_mm_bound, VerifyReport};
