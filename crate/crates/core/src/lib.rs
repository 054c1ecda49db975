//! Parallel Diffusion chip-firing and the enumeration of period-2
//! configurations on paths.
//!
//! Every vertex of a graph holds an integer stack; at each step every vertex
//! simultaneously passes one chip to each strictly poorer neighbour. Every
//! sequence ends in a period of length 1 or 2. On the path `P_n` the
//! period-2 configurations (up to adding a constant) are counted three ways:
//!
//! * by the fourth-order recurrence [`counting::count_t_recurrence`];
//! * by summing vertex-multiplier products over the orientations admitted by
//!   [`rules::check_p2_orientation`] ([`counting::count_t_direct`]);
//! * by a decomposition over the first flat or agreeing pair
//!   ([`counting::count_t_summation`]).
//!
//! [`oracle`] checks all of them against exhaustive search that uses nothing
//! but the firing rule.
//!
//! Paths are indexed right to left: `v_1` is the rightmost vertex and edge
//! `e_i` joins `v_i` and `v_{i+1}`. Configurations are written `v_1..v_n`.

pub mod asymptotics;
pub mod cli;
pub mod config;
pub mod counting;
pub mod diffusion;
pub mod error;
pub mod graph;
pub mod limits;
pub mod multiplier;
pub mod oracle;
pub mod orientation;
pub mod rules;
pub mod verify;

pub use config::Configuration;
pub use diffusion::{
    detect_period, fire_step, induced_orientation, is_inside_period, run_sequence, PeriodReport, SequenceTrace,
};
pub use error::{Error, Result};
pub use graph::{parse_graph, PathGraph, SimpleGraph};
pub use limits::Limits;
pub use multiplier::{count_configs_on_orientation, vertex_multiplier, MultiplierVector};
pub use orientation::{EdgeSense, PathOrientation};
pub use rules::{check_p2_orientation, enumerate_p2_orientations, witness_configuration, ForbiddenPatternReport};
