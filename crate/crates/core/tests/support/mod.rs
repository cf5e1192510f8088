pub mod gates;
pub mod oracles;
