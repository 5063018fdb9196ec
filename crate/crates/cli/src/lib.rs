//! Batch front end for `skein-core`: JSON job requests in, exact results and check reports out.

pub mod jobs;

pub use jobs::{batch, run, summarize, BatchSummary, JobError, JobOrders, JobRequest, JobResult, Task};
