pub mod bijections;
pub mod catalog;
pub mod cli;
pub mod enumerate;
pub mod equiv;
pub mod expr;
pub mod series;
pub mod word;
