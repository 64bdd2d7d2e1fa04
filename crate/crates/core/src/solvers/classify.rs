//! Complexity regime of a distance profile.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::matrix::DistanceProfile;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum RegimeTag {
    PolynomialBinary,
    NPCompleteBinary,
    UnknownNonBinary,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Regime {
    pub tag: RegimeTag,
    /// Which rule places the profile in this regime.
    pub reason: String,
}

impl Regime {
    pub fn is_polynomial(&self) -> bool {
        self.tag == RegimeTag::PolynomialBinary
    }
}

impl fmt::Display for RegimeTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            RegimeTag::PolynomialBinary => "polynomial-time",
            RegimeTag::NPCompleteBinary => "NP-complete",
            RegimeTag::UnknownNonBinary => "unknown (non-binary)",
        })
    }
}

/// `2⌈h/2⌉ + 1`, the largest maximum distance that is still polynomial.
pub fn polynomial_ceiling(h: usize) -> usize {
    2 * h.div_ceil(2) + 1
}

/// Binary profiles are polynomial exactly when `H <= 2⌈h/2⌉ + 1`, i.e.
/// `H <= h + 1`, or `h` odd and `H = h + 2`. Larger alphabets are not
/// classified.
pub fn classify(p: DistanceProfile, sigma_size: usize) -> Regime {
    let (h, big_h) = (p.min, p.max);
    if sigma_size > 2 {
        return Regime {
            tag: RegimeTag::UnknownNonBinary,
            reason: format!(
                "alphabet of {sigma_size} symbols; the distance dichotomy covers binary matrices only"
            ),
        };
    }
    if big_h <= h + 1 {
        Regime {
            tag: RegimeTag::PolynomialBinary,
            reason: format!(
                "H <= h+1: rows fall into two weight classes; large classes are sunflowers, small ones have bounded size (h={h}, H={big_h})"
            ),
        }
    } else if h % 2 == 1 && big_h == h + 2 {
        Regime {
            tag: RegimeTag::PolynomialBinary,
            reason: format!(
                "h odd and H = h+2: three weight classes, each a sunflower or of bounded size; the mixed case reduces to a bipartite matching (h={h}, H={big_h})"
            ),
        }
    } else {
        Regime {
            tag: RegimeTag::NPCompleteBinary,
            reason: format!(
                "H >= 2*ceil(h/2)+2: padding the (2,4) distance-3 independent set construction reaches this profile (h={h}, H={big_h})"
            ),
        }
    }
}
