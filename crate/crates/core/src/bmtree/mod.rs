//! Hyperbolic elements of universal groups `U(F)` on the `k`-regular tree,
//! encoded as twisted periodic colour words, and their scales.

mod axis;
mod predict;
mod scale;
mod spectrum;

pub use axis::{inverse_axis, validate_axis, AxisData, AxisViolation};
pub use predict::{symscale_case, ExponentSet, SymScaleCase};
pub use scale::{
    aggregate_scale, build_alternating, build_tau_cycle, designated_sylow, localized_scale,
    localized_scale_with, modular, rational_from_p_parts, rational_p_part, scale, Rational,
};
pub use spectrum::{
    scale_spectrum, scale_spectrum_default, ScaleSpectrum, SpectrumMode, DEFAULT_EXPONENT_CAP,
    DEFAULT_MAX_LEN, DEFAULT_VALUE_CAP,
};
