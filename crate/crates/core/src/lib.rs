#![no_std]
extern crate alloc;

pub mod arith;
pub mod modforms;
pub mod greek;
pub mod congruence;
pub mod newton;
pub mod hondatate;
pub mod hermitian;
pub mod building;
pub mod level1;
