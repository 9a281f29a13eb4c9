//! Independent reference implementations shared by the integration tests.
#![allow(dead_code)]

/// Decodes a Prüfer sequence into the edges of a labelled tree on `n` nodes.
pub fn prufer_edges(seq: &[usize], n: usize) -> Vec<(usize, usize)> {
    let mut degree = vec![1; n];
    for &v in seq {
        degree[v] += 1;
    }
    let mut edges = Vec::with_capacity(n - 1);
    for &v in seq {
        let leaf = (0..n).find(|&u| degree[u] == 1).unwrap();
        edges.push((leaf, v));
        degree[leaf] -= 1;
        degree[v] -= 1;
    }
    let rest: Vec<usize> = (0..n).filter(|&u| degree[u] == 1).collect();
    edges.push((rest[0], rest[1]));
    edges
}

/// Minimum total weight over all `n^(n-2)` labelled spanning trees.
pub fn brute_force_mst_weight(d: &[Vec<f64>]) -> f64 {
    let n = d.len();
    if n == 2 {
        return d[0][1];
    }
    let mut best = f64::INFINITY;
    let mut seq = vec![0; n - 2];
    loop {
        let w: f64 = prufer_edges(&seq, n).iter().map(|&(a, b)| d[a][b]).sum();
        best = best.min(w);
        let mut k = 0;
        while k < seq.len() {
            seq[k] += 1;
            if seq[k] < n {
                break;
            }
            seq[k] = 0;
            k += 1;
        }
        if k == seq.len() {
            return best;
        }
    }
}

/// Textbook O(n * max_lag) autocorrelation.
pub fn acf_direct(x: &[f64], max_lag: usize) -> Vec<f64> {
    let n = x.len();
    let m = x.iter().sum::<f64>() / n as f64;
    let denom: f64 = x.iter().map(|v| (v - m) * (v - m)).sum();
    (0..=max_lag)
        .map(|k| {
            let mut num = 0.0;
            for t in 0..n - k {
                num += (x[t] - m) * (x[t + k] - m);
            }
            num / denom
        })
        .collect()
}

/// Upper-tail probability of Pearson's statistic with `len - 1` degrees of freedom.
pub fn chi_square_p(observed: &[f64], expected: &[f64]) -> f64 {
    use statrs::distribution::{ChiSquared, ContinuousCDF};
    let stat: f64 = observed
        .iter()
        .zip(expected)
        .map(|(o, e)| (o - e).powi(2) / e)
        .sum();
    let dist = ChiSquared::new((observed.len() - 1) as f64).unwrap();
    1.0 - dist.cdf(stat)
}
