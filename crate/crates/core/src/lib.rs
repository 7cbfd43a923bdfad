//! Modulational stability of small-amplitude periodic traveling waves of the
//! Whitham equation `u_t + M u_x + u u_x = 0`, where the Fourier multiplier
//! `M` carries the full dispersion of capillary-gravity water waves or of
//! water waves over a constant-vorticity shear flow.
//!
//! * [`dispersion`]: phase-speed symbols and their derivatives.
//! * [`waves`]: small-amplitude traveling waves (expansion and Newton refinement).
//! * [`stability`]: Benjamin–Feir and modulational-instability indices.
//! * [`floquet`]: Hill's method for the Bloch spectrum of the linearization.
//! * [`diagrams`]: stability diagrams as labeled curve sets.

pub mod diagrams;
pub mod dispersion;
pub mod error;
pub mod floquet;
pub mod roots;
pub mod stability;
pub mod waves;

pub use dispersion::{Branch, DispersionModel, Family};
pub use error::{Error, Result};
pub use floquet::SpectrumResult;
pub use stability::{IndexReport, Mechanism, Verdict};
pub use waves::TravelingWave;
pub use diagrams::{Plane, StabilityCurve};
