//! Multi-state swap-test circuits: construction, exact simulation, shot
//! sampling and all-pairs overlap estimation.

pub mod analytics;
pub mod bits;
pub mod circuit;
pub mod counts;
pub mod error;
pub mod estimation;
pub mod fixtures;
pub mod io;
pub mod layout;
pub mod multiswap;
pub mod permutation;
pub mod san;
pub mod sim;
pub mod state;

pub use bits::Bits;
pub use circuit::{count_resources, CircuitIR, Gate, GateKind, ResourceProfile, Role};
pub use counts::CountsTable;
pub use error::{Error, Result};
pub use estimation::{Engine, Experiment, OverlapEstimate, TallyRecord};
pub use layout::{LayoutPlan, Scheme};
pub use permutation::{PermutationTable, Pair};
pub use sim::Simulator;
pub use state::{PureState, StateEnsemble};
pub use swap_test::SwapTestVariant;
