pub mod abgroup;
pub mod be;
pub mod bounds;
pub mod catalog;
pub mod hopf;
pub mod multiplier;
pub mod oracle;
pub mod pcgroup;
