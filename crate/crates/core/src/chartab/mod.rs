//! Exact cyclotomic arithmetic, character tables and class-function algebra.

mod cyclotomic;
mod dixon;
pub(crate) mod modp;
mod table;

pub use cyclotomic::{cyclotomic_polynomial, totient, CycloSum, Cyclotomic};
pub use table::{
    character_table, class_fusion, induce, p_part, restrict, CharacterTable, ClassFunction,
    ClassFusion,
};
