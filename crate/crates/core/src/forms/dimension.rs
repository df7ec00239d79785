use num_rational::Ratio;

use crate::error::{Error, Result};

/// Dimension of the space of cusp forms of odd weight `k` for a group of
/// genus `g` without `−I`, with `r1` regular cusps, `r2` irregular cusps and
/// elliptic points of the given orders:
///
/// `(k−1)(g−1) + ½(k−2)r₁ + ½(k−1)r₂ + Σ (eᵢ−1)/(2eᵢ)`
pub fn dim_cusp_forms(g: i64, r1: i64, r2: i64, elliptic_orders: &[i64], k: i64) -> Result<Ratio<i64>> {
    if k % 2 == 0 {
        return Err(Error::UnsupportedWeight(k));
    }
    if k < 3 {
        return Err(Error::BadParameter(format!("weight {k} below 3")));
    }
    if let Some(&e) = elliptic_orders.iter().find(|&&e| e < 1) {
        return Err(Error::BadParameter(format!("elliptic order {e}")));
    }
    let half = Ratio::new(1, 2);
    let mut d = Ratio::from_integer((k - 1) * (g - 1))
        + half * (k - 2) * r1
        + half * (k - 1) * r2;
    for &e in elliptic_orders {
        d += Ratio::new(e - 1, 2 * e);
    }
    Ok(d)
}
