pub mod logbound;
pub mod ops;
pub use logbound::{BoundRecord, Expr, LogBound};
pub use ops::*;
