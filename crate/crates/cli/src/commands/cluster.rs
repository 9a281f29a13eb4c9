use anyhow::Result;
use popsales::clustering::{correlation_distance, correlation_matrix, minimum_spanning_tree, single_linkage_dendrogram};
use popsales::ingestion::{export_correlation, export_tree, format_float};
use popsales::Execution;

use crate::config::RunConfig;
use crate::data::{load, prepare_out};
use crate::report::Summary;
use crate::DataArgs;

pub fn run(cfg: &RunConfig, args: &DataArgs) -> Result<()> {
    let data = load(cfg, args)?;
    let out = &cfg.outputs;
    prepare_out(out)?;

    let cm = correlation_matrix(&data.panel, cfg.analysis.min_overlap, Execution::default())?;
    export_correlation(&cm, out.join("correlation.csv"))?;
    let mut summary = Summary::new(format!("cluster: {}", args.data.display()));
    data.describe(&mut summary);
    summary.add("artists", cm.len());
    summary.add("pairs", cm.len() * cm.len().saturating_sub(1) / 2);
    let missing = cm.missing_pairs();
    summary.add("missing_pairs", missing.len());
    for &(i, j) in missing.iter().take(5) {
        summary.note(format!(
            "no correlation for `{}` and `{}` ({} shared uncensored weeks, need {})",
            cm.labels[i], cm.labels[j], cm.overlap[i][j], cfg.analysis.min_overlap
        ));
    }

    let dist = correlation_distance(&cm);
    let mst = minimum_spanning_tree(&dist)?;
    let dendrogram = single_linkage_dendrogram(&dist)?;
    export_tree(&mst, out.join("mst.csv"))?;
    export_tree(&dendrogram, out.join("dendrogram.csv"))?;

    summary.num("mst_total_distance", mst.total_weight());
    let mut edges = mst.edges.clone();
    edges.sort_by(|a, b| a.distance.total_cmp(&b.distance));
    for e in edges.iter().take(5) {
        summary.add(
            format!("closest {} - {}", mst.node_name(e.a), mst.node_name(e.b)),
            format_float(e.distance),
        );
    }
    summary.print();
    summary.write(&out.join("cluster_summary.csv"))
}
