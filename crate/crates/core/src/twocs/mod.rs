//! Rank-two instances: support structure of extreme points, path
//! augmentation, forest rounding, and the point-wise 3-approximate oracle.

mod augment;
mod partition;
mod round;
mod structure;

pub use augment::{augmentation_vector, AugmentationStep, Path};
pub use partition::{partition_feasible, point_oracle3, Partition};
pub use round::{interior_vertices, sv_round_forest, trim_cycles, RoundedForest};
pub use structure::{
    analyze_positive_support, analyze_support, ensure_rank_two, ComponentKind, SupportComponent,
    SupportNode, SupportStructure,
};
