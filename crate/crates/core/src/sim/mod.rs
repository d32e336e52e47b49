//! The 11v11 match simulator: physics, referee, logging and batches.

mod baseline;
mod batch;
mod engine;
mod log;
mod settings;

pub use baseline::baseline_decide;
pub use batch::{run_batch, run_match, run_match_sides, sign_test, BatchSummary, MatchResult, SimError};
pub use engine::{
    AgentDecision, Body, Event, Match, Mode, StateRecord, Team, CENTER_CIRCLE, FIELD_MARGIN, RESTART_DISTANCE,
    RESTART_TIMEOUT,
};
pub use log::{read_log, JsonLinesSink, LogLine, LogSink, NullSink, LOG_VERSION};
pub use settings::{Policy, SimSettings};
