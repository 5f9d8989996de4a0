//! Degradation frequency curves (DFCs): band-wise residual-to-degraded
//! spectral energy signatures of image degradation, plus the tooling built on
//! them: adaptive band tokenization, degradation fingerprints, severity
//! estimation and a band-gain restoration baseline.

pub mod band_filter;
pub mod bench;
pub mod curve;
pub mod error;
pub mod fingerprint;
pub mod io;
pub mod luma;
pub mod masks;
pub mod metrics;
pub mod plot;
pub mod rng;
pub mod scenes;
pub mod spectral;
pub mod synth;
pub mod tokenizer;

pub use curve::{compute_dfc, DegradationFrequencyCurve, DfcAnalyzer};
pub use error::{DfcError, Result};
pub use luma::LumaImage;
