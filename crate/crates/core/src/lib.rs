pub mod asm;
pub mod detgen;
pub mod exact;
pub mod pp;
pub mod tables;
pub mod verify;
