//! Legendrian fronts, contact (±1)-surgery invariants and Floer rank
//! bookkeeping, with exact arithmetic throughout.

pub mod catalog;
pub mod detect;
pub mod front;
pub mod hfmod;
pub mod linalg;
pub mod seifert;
pub mod surgery;
pub mod verdict;
