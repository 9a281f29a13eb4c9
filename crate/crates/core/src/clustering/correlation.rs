use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::series::{Panel, WeeklySeries};

/// Pairwise Pearson correlations; `None` where two artists overlap on fewer
/// than `min_overlap` uncensored weeks or one is flat over the overlap.
#[derive(Debug, Clone, PartialEq)]
pub struct CorrelationMatrix {
    pub labels: Vec<String>,
    pub rho: Vec<Vec<Option<f64>>>,
    /// Uncensored weeks shared by each pair.
    pub overlap: Vec<Vec<usize>>,
}

impl CorrelationMatrix {
    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn missing_pairs(&self) -> Vec<(usize, usize)> {
        let n = self.len();
        (0..n)
            .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
            .filter(|&(i, j)| self.rho[i][j].is_none())
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct DistanceMatrix {
    pub labels: Vec<String>,
    pub d: Vec<Vec<Option<f64>>>,
}

impl DistanceMatrix {
    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    /// Builds a complete matrix from dense values.
    pub fn from_dense(labels: Vec<String>, d: Vec<Vec<f64>>) -> Self {
        let d = d.into_iter().map(|row| row.into_iter().map(Some).collect()).collect();
        DistanceMatrix { labels, d }
    }

    pub(crate) fn dense(&self) -> Result<Vec<Vec<f64>>> {
        let n = self.len();
        if n < 2 {
            return Err(Error::InsufficientData(format!("tree needs at least 2 nodes, got {n}")));
        }
        let mut out = vec![vec![0.0; n]; n];
        for i in 0..n {
            for j in 0..n {
                match self.d[i][j] {
                    Some(v) if v.is_finite() => out[i][j] = v,
                    _ if i == j => {}
                    _ => return Err(Error::MissingEntry(self.labels[i].clone(), self.labels[j].clone())),
                }
            }
        }
        Ok(out)
    }
}

fn pair_correlation(a: &WeeklySeries, b: &WeeklySeries, min_overlap: usize) -> (Option<f64>, usize) {
    let lo = a.start_week.max(b.start_week);
    let hi = a.end_week().min(b.end_week());
    let mut xs = Vec::new();
    let mut ys = Vec::new();
    for g in lo..hi {
        let (x, cx) = a.at(g).expect("inside span");
        let (y, cy) = b.at(g).expect("inside span");
        if !cx && !cy {
            xs.push(x);
            ys.push(y);
        }
    }
    let n = xs.len();
    if n < min_overlap.max(2) {
        return (None, n);
    }
    let mx = xs.iter().sum::<f64>() / n as f64;
    let my = ys.iter().sum::<f64>() / n as f64;
    let (mut sxy, mut sxx, mut syy) = (0.0, 0.0, 0.0);
    for (x, y) in xs.iter().zip(&ys) {
        sxy += (x - mx) * (y - my);
        sxx += (x - mx) * (x - mx);
        syy += (y - my) * (y - my);
    }
    if !(sxx > 0.0 && syy > 0.0) {
        return (None, n);
    }
    (Some((sxy / (sxx * syy).sqrt()).clamp(-1.0, 1.0)), n)
}

/// Pairwise-complete correlations over weeks where both artists are uncensored.
pub fn correlation_matrix(panel: &Panel, min_overlap: usize, exec: Execution) -> Result<CorrelationMatrix> {
    for s in &panel.series {
        let vals: Vec<f64> = s
            .values
            .iter()
            .zip(&s.censored)
            .filter(|(_, &c)| !c)
            .map(|(v, _)| *v)
            .collect();
        if vals.windows(2).all(|w| w[0] == w[1]) {
            return Err(Error::ZeroVariance(format!(
                "artist `{}` has constant sales over its uncensored weeks",
                s.artist_id
            )));
        }
    }
    let n = panel.series.len();
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
    let results = exec.map_indexed(pairs.len(), |k| {
        let (i, j) = pairs[k];
        pair_correlation(&panel.series[i], &panel.series[j], min_overlap)
    });

    let mut rho = vec![vec![None; n]; n];
    let mut overlap = vec![vec![0; n]; n];
    for (i, s) in panel.series.iter().enumerate() {
        rho[i][i] = Some(1.0);
        overlap[i][i] = s.len() - s.censored_count();
    }
    for (&(i, j), (r, m)) in pairs.iter().zip(results) {
        rho[i][j] = r;
        rho[j][i] = r;
        overlap[i][j] = m;
        overlap[j][i] = m;
    }
    Ok(CorrelationMatrix {
        labels: panel.series.iter().map(|s| s.artist_id.clone()).collect(),
        rho,
        overlap,
    })
}

/// `d = sqrt(2 (1 - rho))`, in `[0, 2]`; missing correlations stay missing.
pub fn correlation_distance(cm: &CorrelationMatrix) -> DistanceMatrix {
    let d = cm
        .rho
        .iter()
        .map(|row| {
            row.iter()
                .map(|r| r.map(|r| (2.0 * (1.0 - r)).max(0.0).sqrt()))
                .collect()
        })
        .collect();
    DistanceMatrix {
        labels: cm.labels.clone(),
        d,
    }
}
