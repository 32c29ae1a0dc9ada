#![allow(dead_code)]

pub mod gates;
pub mod oracle;
pub mod quadrature;
