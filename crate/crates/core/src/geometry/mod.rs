//! Points, group laws, distances, balls and ball volumes.

mod an;
mod hn;
mod htype;
mod volume;

pub use an::{
    an_distance, an_identity, an_inv, an_mul, ball_contains, kappa, region_volume, region_volume_bound, ANBall, ANPoint,
};
pub use hn::{hn_distance, HnPoint};
pub use htype::{htype_dilate, htype_inv, htype_mul, radon_hurwitz, HTypeDescriptor, HTypePoint};
pub use volume::{
    an_volume, an_volume_density, an_volume_sandwich, hn_volume, hn_volume_sandwich, ln_an_volume, ln_hn_volume,
    ln_psi, ln_vc_volume, psi, vc_volume, vc_volume_density,
};
