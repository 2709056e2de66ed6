//! Physical setup: wave speeds, record length, the probing pulse and the
//! catalog of source profiles.
//!
//! Units are nanoseconds and metres, so the medium speed is of order
//! 0.1 m/ns and pulse frequencies are in rad/ns.

mod config;
mod pulse;
mod signal;
mod source;

pub use config::PhysicalConfig;
pub use pulse::{background_field, effective_source, Pulse, PulseShape};
pub use signal::Signal;
pub use source::{GaussianBump, SourceSpec};
