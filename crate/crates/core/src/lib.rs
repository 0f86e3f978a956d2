pub mod betweenness;
pub mod blowup;
pub mod constructions;
pub mod graph;
pub mod rational;
pub mod search;
pub mod verification;
