//! Exact combinatorics and dynamics of ping-pong actions of free groups
//! on the circle: configurations of domain arcs, the surface glued from
//! a configuration, piecewise-linear realizations with rational
//! breakpoints, the induced circular and linear orders, and exhaustive
//! search over small configurations.

pub mod circle;
pub mod config;
pub mod diagram;
pub mod freegroup;
pub mod orders;
pub mod plmap;
pub mod realize;
pub mod search;
pub mod surface;
