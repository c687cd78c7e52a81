//! Probe experiments (under construction).
