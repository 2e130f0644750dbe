pub mod dyadic;
