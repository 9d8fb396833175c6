pub mod continuity;
pub mod corpus;
pub mod density;
pub mod error;
pub mod formula;
pub mod generator;
pub mod ideal;
pub mod index_set;
pub mod json;
pub mod j2;
pub mod limits;
pub mod lusin;
pub mod oracle;
pub mod piecewise;
pub mod poly;
pub mod reproduce;
pub mod rational;
pub mod sequence;
pub mod sets;
pub mod urysohn;
