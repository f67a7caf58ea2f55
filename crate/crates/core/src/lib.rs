pub mod chernweil;
pub mod expr;
pub mod forms;
pub mod linalg;
pub mod ring;
pub mod schur;
pub mod theorem;
pub mod variety;
