//! Regime arithmetic: which parameters each construction/finder pair
//! consumes at a given (n, e), and the predicted order of `un_4(n, e)`.
//!
//! Regimes meet at `e = n^2`, `e = n^3` and `e = n^{4-1/216}`; a point on a
//! boundary belongs to the lower regime.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::HarnessError;
use crate::util::{binomial_f64, cube_root_ratio, floor_tol, iroot, isqrt};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Regime {
    /// `e <= n^2`: only a single edge is unavoidable.
    Sparse,
    /// `n^2 < e <= n^3`.
    Middle,
    /// `n^3 < e <= n^{4-1/216}`.
    Dense,
    /// `n^{4-1/216} < e < C(n,4)`.
    VeryDense,
}

impl Regime {
    pub const ALL: [Regime; 4] = [Regime::Sparse, Regime::Middle, Regime::Dense, Regime::VeryDense];

    pub fn name(self) -> &'static str {
        match self {
            Regime::Sparse => "sparse",
            Regime::Middle => "middle",
            Regime::Dense => "dense",
            Regime::VeryDense => "very-dense",
        }
    }

    /// `(lo, hi]`, except that the sparse regime starts at 1 inclusive and
    /// the very dense one stops short of `C(n,4)`.
    pub fn bounds(self, n: usize) -> (f64, f64) {
        let nf = n as f64;
        match self {
            Regime::Sparse => (1.0, nf * nf),
            Regime::Middle => (nf * nf, nf.powi(3)),
            Regime::Dense => (nf.powi(3), nf.powf(4.0 - 1.0 / 216.0)),
            Regime::VeryDense => (nf.powf(4.0 - 1.0 / 216.0), binomial_f64(n, 4)),
        }
    }

    /// Whether `derive_parameters` accepts `(n, e)` for this regime. The
    /// dense and very dense formulas share the third regime `n^3 < e < C(n,4)`:
    /// the split point `n^{4-1/216}` exceeds `C(n,4)` unless `n >= 24^216`.
    fn accepts(self, n: usize, e: f64) -> bool {
        let nf = n as f64;
        let total = binomial_f64(n, 4);
        if e < 1.0 || e > total {
            return false;
        }
        match self {
            Regime::Sparse => e <= nf * nf,
            Regime::Middle => e > nf * nf && e <= nf.powi(3),
            Regime::Dense | Regime::VeryDense => e > nf.powi(3) && e < total,
        }
    }

    /// The regime holding `(n, e)`, splitting the third regime literally.
    pub fn classify(n: usize, e: f64) -> Result<Regime, HarnessError> {
        let outside = || HarnessError::Regime {
            n,
            e,
            what: "every regime".into(),
        };
        let third = [Regime::Sparse, Regime::Middle, Regime::Dense]
            .into_iter()
            .find(|r| r.accepts(n, e))
            .ok_or_else(outside)?;
        if third == Regime::Dense && e > Regime::Dense.bounds(n).1 {
            return Ok(Regime::VeryDense);
        }
        Ok(third)
    }
}

impl fmt::Display for Regime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Regime {
    type Err = HarnessError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Self::ALL
            .into_iter()
            .find(|r| r.name() == s)
            .ok_or_else(|| HarnessError::InvalidSpec(format!("unknown regime `{s}`")))
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ParameterRecord {
    pub regime: Regime,
    pub n: usize,
    pub e: f64,
    pub k: Option<usize>,
    pub d: Option<usize>,
    pub t: Option<usize>,
    pub s: Option<usize>,
    /// `s` before flooring.
    pub s_real: Option<f64>,
    /// Number of disjoint copies in the predicted pattern.
    pub copies: usize,
    pub pattern: String,
    pub pattern_edges: usize,
    /// The order-of-magnitude prediction for `un_4(n, e)`.
    pub predicted: f64,
    pub predicted_expression: String,
}

/// As [`derive_parameters_with`] with the middle-regime constant `c = 1`.
pub fn derive_parameters(regime: Regime, n: usize, e: f64) -> Result<ParameterRecord, HarnessError> {
    derive_parameters_with(regime, n, e, 1.0)
}

/// `c` enters only the middle regime, through `k = c sqrt(e) / n`.
pub fn derive_parameters_with(regime: Regime, n: usize, e: f64, c: f64) -> Result<ParameterRecord, HarnessError> {
    if n < 4 || !regime.accepts(n, e) {
        return Err(HarnessError::Regime {
            n,
            e,
            what: format!("the {regime} regime"),
        });
    }
    let nf = n as f64;
    let dense_prediction = || {
        let a = e.powf(4.0 / 3.0) / nf.powf(10.0 / 3.0);
        let b = e.powf(0.25) * nf.ln() / (binomial_f64(n, 4) / e).ln();
        a.min(b)
    };
    let mut rec = ParameterRecord {
        regime,
        n,
        e,
        k: None,
        d: None,
        t: None,
        s: None,
        s_real: None,
        copies: 1,
        pattern: "edge".into(),
        pattern_edges: 1,
        predicted: 1.0,
        predicted_expression: "1".into(),
    };
    match regime {
        Regime::Sparse => {}
        Regime::Middle => {
            let k = floor_tol(c * e.sqrt() / nf);
            if k == 0 {
                return Err(HarnessError::Regime {
                    n,
                    e,
                    what: format!("the middle regime with c = {c} (k = 0)"),
                });
            }
            let h = isqrt(k);
            rec.k = Some(k);
            rec.pattern = format!("St4({h},{k},1)");
            rec.pattern_edges = h * k;
            rec.predicted = (e / (nf * nf)).powf(0.75).min((e / nf).cbrt());
            rec.predicted_expression = "min{(e/n^2)^(3/4), (e/n)^(1/3)}".into();
        }
        Regime::Dense => {
            let k = floor_tol(e / nf.powi(3)).max(1);
            let d = cube_root_ratio(n, k);
            let t = k.min(iroot(d as u128, 4) as usize);
            rec.k = Some(k);
            rec.d = Some(d);
            rec.t = Some(t);
            rec.copies = t;
            rec.pattern = format!("{t} x St4({d},{d},{k})");
            rec.pattern_edges = t * d * d * k;
            rec.predicted = dense_prediction();
            rec.predicted_expression = "min{e^(4/3)/n^(10/3), e^(1/4) ln n / ln(C(n,4)/e)}".into();
        }
        Regime::VeryDense => {
            let s_real = (nf.ln() / (nf.powi(4) / e).ln()).cbrt() / 12.0;
            let s = floor_tol(s_real);
            let t = iroot(n as u128, 4) as usize;
            let copies = floor_tol((e / nf).powf(0.25) / 24.0);
            rec.s = Some(s);
            rec.s_real = Some(s_real);
            rec.t = Some(t);
            rec.copies = copies;
            rec.pattern = format!("{copies} x K4({s},{s},{s},{t})");
            rec.pattern_edges = copies * s * s * s * t;
            rec.predicted = dense_prediction();
            rec.predicted_expression = "min{e^(4/3)/n^(10/3), e^(1/4) ln n / ln(C(n,4)/e)}".into();
        }
    }
    Ok(rec)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn middle_inverts_k() {
        let n = 10_000;
        for k in [4usize, 9, 16, 25] {
            let e = (n * n * k * k) as f64;
            let rec = derive_parameters(Regime::Middle, n, e).unwrap();
            assert_eq!(rec.k, Some(k));
            let h = isqrt(k);
            assert_eq!(rec.pattern, format!("St4({h},{k},1)"));
            assert_eq!(rec.pattern_edges, (k as f64).powf(1.5) as usize);
        }
        // with c = 2, e = n^2 k^2 / c^2 still returns k
        let rec = derive_parameters_with(Regime::Middle, 100, (100 * 100 * 36) as f64 / 4.0, 2.0).unwrap();
        assert_eq!(rec.k, Some(6));
    }

    #[test]
    fn dense_formula() {
        let n = 1000;
        for k in [2usize, 5, 8] {
            let e = (k * n * n * n) as f64;
            let rec = derive_parameters(Regime::Dense, n, e).unwrap();
            let d = ((n / k) as f64).cbrt().floor() as usize;
            assert_eq!(rec.d, Some(d));
            assert_eq!(rec.t, Some(k.min((d as f64).powf(0.25).floor() as usize)));
        }
    }

    #[test]
    fn very_dense_s_expression() {
        let n = 1024usize;
        let e = binomial_f64(n, 4) / 2.0;
        let rec = derive_parameters(Regime::VeryDense, n, e).unwrap();
        let expected = (1.0 / 12.0) * ((n as f64).ln() / ((n as f64).powi(4) / e).ln()).powf(1.0 / 3.0);
        assert!((rec.s_real.unwrap() - expected).abs() < 1e-9);
        // the ratio of logarithms does not depend on the base
        let base2 = (1.0 / 12.0) * ((n as f64).log2() / ((n as f64).powi(4) / e).log2()).powf(1.0 / 3.0);
        let base10 = (1.0 / 12.0) * ((n as f64).log10() / ((n as f64).powi(4) / e).log10()).powf(1.0 / 3.0);
        assert!((base2 - expected).abs() < 1e-9 && (base10 - expected).abs() < 1e-9);
        assert_eq!(rec.t, Some(5));
    }

    #[test]
    fn boundaries_go_down() {
        let n = 100;
        assert_eq!(Regime::classify(n, 10_000.0).unwrap(), Regime::Sparse);
        assert_eq!(Regime::classify(n, 10_001.0).unwrap(), Regime::Middle);
        assert_eq!(Regime::classify(n, 1e6).unwrap(), Regime::Middle);
        assert!(derive_parameters(Regime::Middle, n, 10_000.0).is_err());
        assert!(Regime::classify(n, 0.0).is_err());
        assert_eq!(Regime::classify(1000, 1e9).unwrap(), Regime::Middle);
        assert_eq!(Regime::classify(1000, 2e9).unwrap(), Regime::Dense);
        assert!(Regime::classify(n, binomial_f64(n, 4) + 1.0).is_err());
    }
}
