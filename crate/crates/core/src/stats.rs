//! Small sample statistics helpers.

/// Sample mean and standard error of the mean.
pub fn mean_se(xs: impl Iterator<Item = f64>) -> (f64, f64) {
    let v: Vec<f64> = xs.collect();
    let n = v.len() as f64;
    if v.is_empty() {
        return (0.0, 0.0);
    }
    let mean = v.iter().sum::<f64>() / n;
    if v.len() < 2 {
        return (mean, 0.0);
    }
    let var = v.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1.0);
    (mean, (var / n).sqrt())
}

/// Shannon entropy in bits of a frequency vector.
pub fn entropy_bits(counts: impl Iterator<Item = u64>) -> f64 {
    let c: Vec<u64> = counts.filter(|&c| c > 0).collect();
    let n: u64 = c.iter().sum();
    if n == 0 {
        return 0.0;
    }
    let n = n as f64;
    -c.iter().map(|&k| {
        let p = k as f64 / n;
        p * p.log2()
    }).sum::<f64>()
}
