pub mod abundance;
pub mod audit;
pub mod chain;
pub mod cli;
pub mod constants;
pub mod dyadic;
pub mod error;
pub mod factored;
pub mod ga;
pub mod primes;
pub mod qexact;
pub mod report;
pub mod scan;
pub mod verdict;
pub mod xreal;
