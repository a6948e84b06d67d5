//! Special functions used throughout the crate.

pub mod gamma;
pub mod hypergeometric;
pub mod meijer;

pub use gamma::{gamma, ln_gamma, ln_gamma_complex, ln_pochhammer, pochhammer};
pub use hypergeometric::{
    hyp1f1, hyp1f1_parity_parts, hyp1f1_unit_complex, hyp1f1_parity_parts_with, hyp1f1_with, hyp2f1, hyp2f1_with,
    ln_hyp1f1_unit, Parity, SeriesControl,
};
pub use meijer::{
    meijer_g11_12, meijer_g20_12, meijer_g20_12_at, meijer_g20_12_scaled, mellin_gamma_ratio,
    mellin_moment, MeijerParams, Scaled,
};
