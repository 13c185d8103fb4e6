pub mod albanese;
pub mod bdf;
pub mod families;
pub mod report;

pub use albanese::{albanese_data, covering_report, AlbaneseData, CoveringReport};
pub use bdf::{
    bdf_catalog, bdf_classify, descriptor_of, ActionDescriptor, BdFType, BdfViolation, LambdaConstraint, LambdaValue, Rotation,
};
pub use families::{build_family, build_gamma_family, build_lambda_family, fiber_report};
pub use report::{Check, ConstructionReport, Family, FiberReport, SCHEMA_VERSION};
