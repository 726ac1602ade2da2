//! Rank statistics for comparing algorithm samples.

use statrs::distribution::{ChiSquared, ContinuousCDF, Normal};

use crate::error::{BenchError, Result};

/// Ranks (1-based) with ties given their average rank.
pub fn midranks(values: &[f64]) -> Vec<f64> {
    let mut order: Vec<usize> = (0..values.len()).collect();
    order.sort_by(|&a, &b| values[a].total_cmp(&values[b]));
    let mut ranks = vec![0.0; values.len()];
    let mut i = 0;
    while i < order.len() {
        let mut j = i;
        while j + 1 < order.len() && values[order[j + 1]] == values[order[i]] {
            j += 1;
        }
        let rank = (i + j) as f64 / 2.0 + 1.0;
        for &k in &order[i..=j] {
            ranks[k] = rank;
        }
        i = j + 1;
    }
    ranks
}

/// `Σ (t³ - t)` over tie groups.
fn tie_sum(values: &[f64]) -> f64 {
    let mut sorted = values.to_vec();
    sorted.sort_by(f64::total_cmp);
    let mut sum = 0.0;
    for run in sorted.chunk_by(|a, b| a == b) {
        let t = run.len() as f64;
        sum += t * t * t - t;
    }
    sum
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct KruskalWallis {
    pub h: f64,
    pub p_value: f64,
}

/// Kruskal-Wallis H test with tie correction.
pub fn kruskal_wallis(groups: &[Vec<f64>]) -> Result<KruskalWallis> {
    if groups.len() < 2 {
        return Err(BenchError::Stats("at least two groups are required".into()));
    }
    if groups.iter().any(|g| g.is_empty()) {
        return Err(BenchError::Stats("empty group".into()));
    }
    let pooled: Vec<f64> = groups.iter().flatten().copied().collect();
    let n = pooled.len() as f64;
    let ranks = midranks(&pooled);
    let mut offset = 0;
    let mut sum = 0.0;
    for g in groups {
        let r: f64 = ranks[offset..offset + g.len()].iter().sum();
        sum += r * r / g.len() as f64;
        offset += g.len();
    }
    let correction = 1.0 - tie_sum(&pooled) / (n * n * n - n);
    if correction <= 0.0 {
        return Ok(KruskalWallis { h: 0.0, p_value: 1.0 });
    }
    let h = ((12.0 / (n * (n + 1.0)) * sum - 3.0 * (n + 1.0)) / correction).max(0.0);
    let chi = ChiSquared::new((groups.len() - 1) as f64).expect("positive degrees of freedom");
    Ok(KruskalWallis {
        h,
        p_value: chi.sf(h),
    })
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RankSum {
    /// Positive when the first sample tends to be larger.
    pub z: f64,
    pub p_value: f64,
}

/// Two-sided Wilcoxon rank-sum test, normal approximation with tie and
/// continuity correction.
pub fn rank_sum_test(a: &[f64], b: &[f64]) -> Result<RankSum> {
    if a.is_empty() || b.is_empty() {
        return Err(BenchError::Stats("empty sample".into()));
    }
    let pooled: Vec<f64> = a.iter().chain(b).copied().collect();
    let ranks = midranks(&pooled);
    let (n1, n2) = (a.len() as f64, b.len() as f64);
    let n = n1 + n2;
    let w: f64 = ranks[..a.len()].iter().sum();
    let mean = n1 * (n + 1.0) / 2.0;
    let var = n1 * n2 / 12.0 * ((n + 1.0) - tie_sum(&pooled) / (n * (n - 1.0)));
    if var <= 0.0 {
        return Ok(RankSum { z: 0.0, p_value: 1.0 });
    }
    let diff = w - mean;
    let corrected = if diff.abs() <= 0.5 { 0.0 } else { diff - 0.5 * diff.signum() };
    let z = corrected / var.sqrt();
    let normal = Normal::standard();
    Ok(RankSum {
        z,
        p_value: (2.0 * normal.sf(z.abs())).min(1.0),
    })
}

/// Pairwise rank-sum tests at level `alpha_level / m`, run only when the
/// Kruskal-Wallis test rejects at `alpha_level`.
///
/// Entry `j` lists, for every other group `i` that differs significantly,
/// `"i(+)"` when group `j` is better (larger) and `"i(-)"` otherwise, with
/// 1-based indices.
pub fn bonferroni_posthoc(groups: &[Vec<f64>], alpha_level: f64) -> Result<Vec<Vec<String>>> {
    let k = groups.len();
    let mut marks = vec![Vec::new(); k];
    if kruskal_wallis(groups)?.p_value >= alpha_level {
        return Ok(marks);
    }
    let level = alpha_level / (k * (k - 1) / 2) as f64;
    for i in 0..k {
        for j in (i + 1)..k {
            let t = rank_sum_test(&groups[j], &groups[i])?;
            if t.p_value < level && t.z != 0.0 {
                let j_better = t.z > 0.0;
                marks[j].push(format!("{}({})", i + 1, if j_better { '+' } else { '-' }));
                marks[i].push(format!("{}({})", j + 1, if j_better { '-' } else { '+' }));
            }
        }
    }
    for m in &mut marks {
        m.sort_by_key(|s| s[..s.find('(').unwrap()].parse::<usize>().unwrap());
    }
    Ok(marks)
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Summary {
    pub mean: f64,
    pub min: f64,
    pub max: f64,
    /// Sample standard deviation (`n - 1` denominator); 0 for one sample.
    pub std: f64,
    pub count: usize,
}

pub fn summarize(values: &[f64]) -> Option<Summary> {
    if values.is_empty() {
        return None;
    }
    let n = values.len() as f64;
    let mean = values.iter().sum::<f64>() / n;
    let min = values.iter().copied().fold(f64::INFINITY, f64::min);
    let max = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let std = if values.len() > 1 {
        (values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (n - 1.0)).sqrt()
    } else {
        0.0
    };
    Some(Summary {
        mean: mean.clamp(min, max),
        min,
        max,
        std,
        count: values.len(),
    })
}
