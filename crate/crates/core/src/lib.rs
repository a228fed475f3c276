pub mod audit;
pub mod curve;
pub mod driver;
pub mod ff;
pub mod jacobian;
pub mod order;
pub mod real;
pub mod sampling;
pub mod weil;
