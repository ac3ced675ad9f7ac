//! Small dense-vector helpers shared by the feature and fusion code.

/// Euclidean norm, scaled by the largest magnitude first so that very large
/// or very small components neither overflow nor underflow.
pub fn l2_norm(v: &[f64]) -> f64 {
    let scale = v.iter().fold(0.0f64, |m, x| m.max(x.abs()));
    if scale == 0.0 || !scale.is_finite() {
        return scale;
    }
    let sum: f64 = v.iter().map(|x| (x / scale) * (x / scale)).sum();
    scale * sum.sqrt()
}

/// Divides `v` by its Euclidean norm. The zero vector stays zero.
pub fn l2_normalize(v: &mut [f64]) {
    let norm = l2_norm(v);
    if norm > 0.0 {
        for x in v.iter_mut() {
            *x /= norm;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn three_four_five() {
        let mut v = [3.0, 4.0, 0.0];
        assert_eq!(l2_norm(&v), 5.0);
        l2_normalize(&mut v);
        assert_eq!(v, [0.6, 0.8, 0.0]);
    }

    #[test]
    fn zero_and_extremes() {
        let mut z = [0.0; 4];
        l2_normalize(&mut z);
        assert_eq!(z, [0.0; 4]);
        let mut big = [1e300, 1e300];
        l2_normalize(&mut big);
        assert!((l2_norm(&big) - 1.0).abs() < 1e-12);
        let mut tiny = [1e-300, 0.0];
        l2_normalize(&mut tiny);
        assert_eq!(tiny, [1.0, 0.0]);
    }
}
