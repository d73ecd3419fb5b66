pub mod laurent;
pub mod diagram;
pub mod weights;
pub mod statesum;
pub mod relations;
pub mod foxcalc;
pub mod cli;
