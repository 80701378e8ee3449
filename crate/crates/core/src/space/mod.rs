//! Geometry of the 3-sphere and Lobachevsky space in Beltrami coordinates.

pub mod chart;
pub mod isometry;
pub mod pair;

pub use chart::{ChartPoint, Matrix3};
pub use isometry::{random_isometry, Isometry};
pub use pair::{
    distance_cosine, distance_from_cosine, embedded_distance, geodesic_distance, pair_transform,
    vector_add, PairVector,
};
