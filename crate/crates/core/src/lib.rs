pub mod bigreal;
pub mod catalog;
pub mod closed_form;
pub mod error;
pub mod exact;
pub mod report;
pub mod series;
pub mod special;
pub mod wz;
