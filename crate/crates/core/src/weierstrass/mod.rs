//! Short Weierstrass models over Q(t), their singular fibers, and the named
//! families used throughout the crate.

pub mod families;
mod kodaira;
mod model;

pub use kodaira::{parse_fiber_list, KodairaType};
pub use model::{
    discriminant_of, fiber_counts, format_counts, kodaira_from_valuations, minimalize,
    minimalize_with_scale, FiberReport, Place, SurfaceClass, WeierstrassModel,
};
