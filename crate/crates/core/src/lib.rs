pub mod cli;
pub mod cluster;
pub mod golden;
pub mod laurent;
pub mod model_a;
pub mod model_d;
pub mod qchar;
pub mod simplicity;
pub mod verify;
