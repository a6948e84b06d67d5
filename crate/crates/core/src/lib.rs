//! Even/odd Barut–Girardello and Gazeau–Klauder coherent states of the
//! isotonic oscillator, built on a truncated su(1,1) Fock space.
//!
//! Every closed-form identity about these states (normalizations, overlaps,
//! resolutions of the identity, kernels, quantized observables, thermal
//! quantities) is checked against an independent brute-force computation by
//! the [`claims`] registry, which reports a verdict and a residual per
//! identity.
//!
//! Module map:
//!
//! * [`specfun`]: log-gamma, Pochhammer, ₁F₁, ₂F₁, Meijer G^{2,0}_{1,2}.
//! * [`quad`]: Gauss–Legendre and adaptive Gauss–Kronrod quadrature.
//! * [`fock`]: truncated Fock space, generators, spectrum, wavefunctions.
//! * [`states`]: coherent-state vectors, overlaps, evolution.
//! * [`measures`]: radial weights and resolution of the identity.
//! * [`kernels`]: reproducing kernels.
//! * [`quantize`]: Berezin–Toeplitz quantization.
//! * [`thermal`]: density operators, Husimi Q and Glauber–Sudarshan P.
//! * [`claims`]: the verification registry.

pub mod claims;
pub mod error;
pub mod fock;
pub mod kernels;
pub mod measures;
pub mod quad;
pub mod quantize;
pub mod specfun;
pub mod states;
pub mod thermal;

pub use error::{Error, Result};
pub use num_complex::Complex64 as C64;
