pub mod binomial;
pub mod error;
pub mod freealg;
pub mod realize;
pub mod report;
pub mod rewrite;
pub mod scalars;
