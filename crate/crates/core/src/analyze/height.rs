use num_rational::BigRational;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::construct::z_stream;
use crate::lattice::{EisensteinInt, QOmega, SqrtThreeScalar};

/// Maximum height of `K_n` and where it is reached.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HeightReport {
    pub n: u32,
    pub height: SqrtThreeScalar,
    /// Every vertex of `K_n` at maximal height, left to right.
    pub maximizers: Vec<QOmega>,
    pub leftmost: QOmega,
    pub rightmost: QOmega,
    /// Whether the extremes are `(4+4ω)/9` and `(5+4ω)/9`, the values
    /// usually quoted for the limit curve. Only meaningful for `n ≥ 2`.
    pub quoted_extremes_hold: bool,
}

/// Quoted piecewise form: `0`, `1/(2√3)`, then `2/(3√3)`.
pub fn height_closed(n: u32) -> SqrtThreeScalar {
    match n {
        0 => SqrtThreeScalar::default(),
        // 1/(2√3) = √3/6
        1 => SqrtThreeScalar::from_ratios(0, 1, 1, 6),
        // 2/(3√3) = 2√3/9
        _ => SqrtThreeScalar::from_ratios(0, 1, 2, 9),
    }
}

pub fn height(n: u32) -> HeightReport {
    let mut best = i64::MIN;
    let mut at: Vec<EisensteinInt> = Vec::new();
    for z in z_stream(4usize.pow(n) + 1) {
        let b = z.im_half_sqrt3();
        if b > best {
            best = b;
            at.clear();
        }
        if b == best {
            at.push(z);
        }
    }
    at.sort_by_key(|z| z.re_twice());
    at.dedup();
    let maximizers: Vec<QOmega> = at.iter().map(|&z| QOmega::from_eis_scaled(z, n)).collect();
    let leftmost = maximizers[0].clone();
    let rightmost = maximizers[maximizers.len() - 1].clone();
    let quoted_extremes_hold =
        leftmost == QOmega::from_ratios(4, 9, 4, 9) && rightmost == QOmega::from_ratios(5, 9, 4, 9);
    let height = SqrtThreeScalar::new(
        BigRational::zero(),
        BigRational::new(best.into(), (num_bigint::BigInt::from(3).pow(n)) * 2),
    );
    HeightReport { n, height, maximizers, leftmost, rightmost, quoted_extremes_hold }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_heights() {
        assert_eq!(height(0).height, SqrtThreeScalar::default());
        let h1 = height(1);
        assert_eq!(h1.height, height_closed(1));
        assert_eq!(h1.leftmost, QOmega::from_ratios(2, 3, 1, 3));
        assert_eq!(h1.rightmost, h1.leftmost);
        assert_eq!(height(2).height, height_closed(2));
        assert_eq!(height(2).maximizers, vec![QOmega::from_ratios(4, 9, 4, 9)]);
    }

    #[test]
    fn heights_match_piecewise_form() {
        for n in 0..=8 {
            let r = height(n);
            assert_eq!(r.height, height_closed(n), "n={n}");
            if n >= 2 {
                for m in &r.maximizers {
                    assert_eq!(m.b, BigRational::new(4.into(), 9.into()));
                }
            }
        }
    }

    #[test]
    fn observed_extremes_for_deep_iterates() {
        for n in 3..=7 {
            let r = height(n);
            assert_eq!(r.leftmost, QOmega::from_ratios(3, 9, 4, 9), "n={n}");
            assert_eq!(r.rightmost, QOmega::from_ratios(4, 9, 4, 9), "n={n}");
            assert!(!r.quoted_extremes_hold);
        }
    }
}
