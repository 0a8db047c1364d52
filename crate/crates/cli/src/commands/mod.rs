pub mod bound;
pub mod compare;
pub mod validate;
pub mod verify_table;
