pub mod exact;
pub mod operator;
pub mod par;
pub mod pe;
pub mod sphere;
pub mod special;
pub mod verify;
