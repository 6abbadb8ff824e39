//! Exact construction of the double-box graph hypersurface (a cubic 5-fold
//! in `P^6`), verification of its singular stratification, the evaluation-map
//! rank computation, and the assembled Hodge/monodromy report.

pub mod kinematics;
pub mod poly;
pub mod quadext;

mod doublebox;

pub use doublebox::{
    doublebox_report, DoubleBox, DoubleBoxReport, EvChecks, EvReport, HodgeSummary, NodeReport,
    SingularLocusReport, SymanzikSystem,
};
pub use kinematics::{sample_kinematics, KinematicCase, KinematicData};
