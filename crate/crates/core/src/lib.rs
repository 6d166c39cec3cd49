pub mod arith;
pub mod galois;
pub mod kisin;
pub mod reps;
