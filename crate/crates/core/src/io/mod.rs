//! File formats: state JSON, counts files, CSV reports, OpenQASM and
//! permutation-table JSON.

pub mod counts_file;
pub mod qasm;
pub mod report;
pub mod states;
pub mod table_json;

pub use counts_file::{parse_counts, write_counts, CountsFile};
pub use qasm::{to_qasm, QasmOptions};
pub use states::parse_states;
pub use table_json::export_table;
