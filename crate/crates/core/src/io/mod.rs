//! Configuration, packing files and rendering.

pub mod config;
pub mod export;
pub mod render;

pub use config::{load_config, parse_config, ClusterSpec, GroupSpec};
pub use export::{export_packing, import_packing, Format};
pub use render::{fivefold_axis, render_svg, Projection, RenderView};
