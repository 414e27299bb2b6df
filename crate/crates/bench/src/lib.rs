//! Fixed inputs shared by the benchmarks, so timings are comparable across runs.

use appell_core::{Complex64, Nome};

/// Half-nomes spanning the small-|u| regime and the largest modulus the
/// numeric checks sample (`|q| = 0.57`).
pub fn bench_nomes() -> [Nome; 2] {
    [
        Nome::new(Complex64::new(0.2, 0.0)).expect("inside the disc"),
        Nome::new(Complex64::from_polar(0.57f64.sqrt(), 0.7)).expect("inside the disc"),
    ]
}

/// `n` points on a spiral through the annulus `0.5 ≤ |z| ≤ 2`.
pub fn spiral_points(n: usize) -> Vec<Complex64> {
    (0..n)
        .map(|k| {
            let t = k as f64 / n.max(1) as f64;
            Complex64::from_polar(0.5 * 4f64.powf(t), 2.399 * k as f64)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spiral_stays_in_annulus() {
        for z in spiral_points(50) {
            assert!((0.5..=2.0).contains(&z.norm()));
        }
    }
}
