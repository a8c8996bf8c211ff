pub mod field;
pub mod groebner;
pub mod ideal;
pub mod poly;
pub mod complex;
pub mod delta;
pub mod linalg;
pub mod homology;
pub mod mv;
pub mod analysis;
pub mod search;
pub mod problem;
pub mod report;
