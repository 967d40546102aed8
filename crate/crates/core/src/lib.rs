pub mod classes;
pub mod composition;
pub mod error;
pub mod format;
pub mod partitions;
pub mod poset;
pub mod qsym;
pub mod verify;
