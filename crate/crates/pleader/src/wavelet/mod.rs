//! Orthonormal wavelet machinery: Daubechies filters and periodic discrete
//! wavelet transforms in one and two dimensions.

mod filters;
mod transform;

pub use filters::{daubechies_filter, WaveletFilter};
pub use transform::{
    dwt_1d, dwt_2d, max_analysis_octaves_1d, max_octaves_1d, ArrayData, Boundary, OctaveDetail,
    Signal, WaveletPyramid, MIN_RETAINED_POSITIONS,
};
