//! Reading chart files into panels and writing every artifact as
//! comma-separated UTF-8 text with a header row.
//!
//! Two input schemas are recognised by their header:
//!
//! * chart data: `artist_id,year,week,sales_units[,threshold]`, raw copies as
//!   non-negative integers;
//! * exported panels: `artist_id,year,week,sales_k,censored`, as written by
//!   [`export_panel`].

mod export;
mod parse;
mod table;

pub use export::{
    export_acf, export_aggregate, export_correlation, export_events, export_histogram,
    export_panel, export_regimes, export_spectrum, export_tree, format_float, read_regimes,
    read_tree, TreeRow,
};
pub use parse::{parse_chart_file, ParseOptions, ParseReport, ThresholdRule, Week53Policy};
pub use table::{read_table, write_table, Table};
