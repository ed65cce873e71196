//! Upper bounds on the density of `K_g` in `K_r`-free `k`-graphs, the
//! comparison bound of de Caen, and the partite lower-bound construction.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::combinatorics::{
    binomial, epsilon_value, format_rational, multinomial, serde_rational, to_f64, x_ratio,
    EpsilonMode, Rational,
};
use crate::error::{Error, Result};
use crate::tridiagonal::{positivity_threshold, TridiagonalSystem};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct BoundReport {
    pub k: u32,
    pub g: u32,
    pub r: u32,
    pub n: u64,
    pub mode: EpsilonMode,
    #[serde(with = "serde_rational")]
    pub epsilon: Rational,
    #[serde(with = "serde_rational")]
    pub finite_factor: Rational,
    #[serde(with = "serde_rational")]
    pub asymptotic: Rational,
    #[serde(with = "serde_rational")]
    pub finite_bound: Rational,
    /// `delta_k(eps) x_{k,r}` from the exact solve; never above `finite_bound`.
    #[serde(with = "serde_rational")]
    pub solved_bound: Rational,
    #[serde(with = "serde_rational::option")]
    pub de_caen: Option<Rational>,
    #[serde(with = "serde_rational::option")]
    pub lower_bound: Option<Rational>,
    pub threshold_ok: bool,
}

/// `prod_{m=k}^{g} x_{m,r}`.
pub fn asymptotic_bound(k: u32, g: u32, r: u32) -> Result<Rational> {
    validate_kgr(k, g, r)?;
    (k..=g).try_fold(Rational::one(), |acc, m| Ok(acc * x_ratio(k, m, r)?))
}

/// The finite-size factor exactly as printed with the main theorem:
/// `1 + (r-1)(r-k)^2 / ((k-1)^2 n - (r-1)(2k^2 - 2k(r+1) + r^2 + 1))`.
pub fn printed_factor(k: u32, r: u32, n: u64) -> Rational {
    let (k, r, n) = (i128::from(k), i128::from(r), i128::from(n));
    let numer = (r - 1) * (r - k) * (r - k);
    let denom = (k - 1) * (k - 1) * n - (r - 1) * (2 * k * k - 2 * k * (r + 1) + r * r + 1);
    Rational::one() + Rational::new(BigInt::from(numer), BigInt::from(denom))
}

/// `1 / (1 - eps (r-1)(r-k)/(k-1))`, the determinant bound on the inverse.
pub fn determinant_factor(k: u32, r: u32, eps: &Rational) -> Result<Rational> {
    let scale = Rational::new(
        BigInt::from((r - 1) * (r - k)),
        BigInt::from(k - 1),
    );
    let denom = Rational::one() - eps * scale;
    if denom <= Rational::zero() {
        return Err(Error::EpsilonTooLarge {
            eps: format_rational(eps),
            threshold: format_rational(&positivity_threshold(k, r)),
        });
    }
    Ok(Rational::one() / denom)
}

/// Strict lower bound on `n` for the chosen mode: the bound holds for every
/// `n` strictly greater than the returned value.
pub fn n_threshold(k: u32, r: u32, mode: EpsilonMode) -> Rational {
    let base = Rational::from_integer(BigInt::from(r - 1));
    let km1sq = BigInt::from(k - 1) * BigInt::from(k - 1);
    match mode {
        // (r-1)(1 + ((r-k)/(k-1))^2)
        EpsilonMode::PaperLiteral => {
            &base
                + Rational::new(
                    BigInt::from(r - 1) * BigInt::from(r - k) * BigInt::from(r - k),
                    km1sq,
                )
        }
        // (r-1) + (r-1)^2 (r-k) / (k-1)^2
        EpsilonMode::Corrected => {
            &base
                + Rational::new(
                    BigInt::from(r - 1) * BigInt::from(r - 1) * BigInt::from(r - k),
                    km1sq,
                )
        }
    }
}

fn validate_kgr(k: u32, g: u32, r: u32) -> Result<()> {
    if k < 2 || g < k || r <= g {
        return Err(Error::InvalidParameters(format!(
            "need 2 <= k <= g < r, got k = {k}, g = {g}, r = {r}"
        )));
    }
    Ok(())
}

/// The finite-`n` upper bound on the density of `K_g` in `K_r`-free
/// `n`-vertex `k`-graphs.
pub fn upper_bound(k: u32, g: u32, r: u32, n: u64, mode: EpsilonMode) -> Result<BoundReport> {
    validate_kgr(k, g, r)?;
    let threshold = n_threshold(k, r, mode);
    if Rational::from_integer(BigInt::from(n)) <= threshold {
        return Err(Error::BelowThreshold {
            n,
            threshold: format_rational(&threshold),
        });
    }
    let eps = epsilon_value(k, r, n, mode)?;
    let finite_factor = match mode {
        EpsilonMode::PaperLiteral => printed_factor(k, r, n),
        EpsilonMode::Corrected => determinant_factor(k, r, &eps)?,
    };
    let asymptotic = asymptotic_bound(k, g, r)?;
    let finite_bound = &finite_factor * &asymptotic;

    let sys = TridiagonalSystem::new(k, r)?;
    let delta = sys.solve_column(&eps, g)?;
    let solved_bound = &delta[0] * sys.low_boundary();

    let de_caen = (g == k).then(|| de_caen_bound(k, r, n)).transpose()?;
    let lower_bound = if (r - 1).is_multiple_of(k - 1) {
        Some(partite_lower_bound(k, g, (r - 1) / (k - 1))?.direct)
    } else {
        None
    };
    Ok(BoundReport {
        k,
        g,
        r,
        n,
        mode,
        epsilon: eps,
        finite_factor,
        asymptotic,
        finite_bound,
        solved_bound,
        de_caen,
        lower_bound,
        threshold_ok: true,
    })
}

/// De Caen's bound `1 - (1 + (r-k)/(n-r+1)) / C(r-1, k-1)`.
pub fn de_caen_bound(k: u32, r: u32, n: u64) -> Result<Rational> {
    if k < 2 || r < k || n < u64::from(r) {
        return Err(Error::InvalidParameters(format!(
            "de Caen's bound needs 2 <= k <= r <= n, got k = {k}, r = {r}, n = {n}"
        )));
    }
    let stretch = Rational::one()
        + Rational::new(BigInt::from(r - k), BigInt::from(n - u64::from(r) + 1));
    let c = binomial(u64::from(r) - 1, i64::from(k) - 1);
    Ok(Rational::one() - stretch / Rational::from_integer(c))
}

/// The `n -> infinity` limit of de Caen's bound, `1 - 1/C(r-1, k-1)`.
pub fn de_caen_asymptotic(k: u32, r: u32) -> Rational {
    let c = binomial(u64::from(r) - 1, i64::from(k) - 1);
    Rational::one() - Rational::new(BigInt::one(), c)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct PartiteLowerBound {
    pub k: u32,
    pub g: u32,
    pub l: u32,
    /// Probability that a uniform `g`-set meets every part in at most `k-1`
    /// vertices.
    #[serde(with = "serde_rational")]
    pub direct: Rational,
    /// The inclusion-exclusion sum as printed, evaluated literally.
    #[serde(with = "serde_rational")]
    pub paper_formula: Rational,
    pub agree: bool,
}

fn compositions_bounded(total: u32, parts: u32, cap: u32, prefix: &mut Vec<u64>, out: &mut dyn FnMut(&[u64])) {
    if parts == 0 {
        if total == 0 {
            out(prefix);
        }
        return;
    }
    // Remaining parts can absorb at most (parts - 1) * cap.
    let max_here = cap.min(total);
    for c in 0..=max_here {
        if total - c > (parts - 1) * cap {
            continue;
        }
        prefix.push(u64::from(c));
        compositions_bounded(total - c, parts - 1, cap, prefix, out);
        prefix.pop();
    }
}

fn tuples_at_least(min: u32, len: u32, budget: u32, prefix: &mut Vec<u64>, out: &mut dyn FnMut(&[u64])) {
    if len == 0 {
        out(prefix);
        return;
    }
    for i in min..=budget {
        prefix.push(u64::from(i));
        tuples_at_least(min, len - 1, budget - i, prefix, out);
        prefix.pop();
    }
}

/// Density of `K_g` in the balanced `l`-part construction that keeps every
/// `k`-set not contained in a single part.
pub fn partite_lower_bound(k: u32, g: u32, l: u32) -> Result<PartiteLowerBound> {
    if l < 1 || k < 2 || g < k {
        return Err(Error::InvalidParameters(format!(
            "partite lower bound needs l >= 1 and g >= k >= 2, got k = {k}, g = {g}, l = {l}"
        )));
    }
    let l_pow_g = num_traits::pow(BigInt::from(l), g as usize);

    let mut hits = BigInt::zero();
    compositions_bounded(g, l, k - 1, &mut Vec::new(), &mut |parts| {
        hits += multinomial(parts);
    });
    let direct = Rational::new(hits, l_pow_g);

    let mut paper_formula = Rational::zero();
    for s in 0..=(g / k) {
        let mut inner = Rational::zero();
        tuples_at_least(k, s, g, &mut Vec::new(), &mut |tuple| {
            let used: u64 = tuple.iter().sum();
            let mut parts = tuple.to_vec();
            parts.push(u64::from(g) - used);
            inner += Rational::new(
                multinomial(&parts),
                num_traits::pow(BigInt::from(l), used as usize),
            );
        });
        let term = Rational::from_integer(binomial(u64::from(l), i64::from(s))) * inner;
        if s % 2 == 0 {
            paper_formula += term;
        } else {
            paper_formula -= term;
        }
    }
    let agree = direct == paper_formula;
    Ok(PartiteLowerBound {
        k,
        g,
        l,
        direct,
        paper_formula,
        agree,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct SandwichTable {
    pub k: u32,
    pub r: u32,
    pub l: u32,
    /// `multinomial(r-1; k-1, ..., k-1) l^{-(r-1)}`.
    #[serde(with = "serde_rational")]
    pub multinomial_lower: Rational,
    /// `prod_{m=k}^{r-1} x_{m,r}`.
    #[serde(with = "serde_rational")]
    pub product: Rational,
    /// `e^{(k-r)/k}`, floating point.
    pub exp_upper: f64,
    /// `exp_upper` rendered to 12 decimals; approximate.
    pub exp_upper_approx: String,
    pub ordering_holds: bool,
}

/// The chain `lower <= prod x_{m,r} <= e^{(k-r)/k}` for `g = r - 1`.
pub fn sandwich_table(k: u32, r: u32) -> Result<SandwichTable> {
    if k < 2 || r <= k {
        return Err(Error::InvalidParameters(format!(
            "sandwich needs 2 <= k < r, got k = {k}, r = {r}"
        )));
    }
    if !(r - 1).is_multiple_of(k - 1) {
        return Err(Error::InvalidParameters(format!(
            "sandwich needs (k-1) | (r-1), got k = {k}, r = {r}"
        )));
    }
    let l = (r - 1) / (k - 1);
    let parts = vec![u64::from(k - 1); l as usize];
    let multinomial_lower = Rational::new(
        multinomial(&parts),
        num_traits::pow(BigInt::from(l), (r - 1) as usize),
    );
    let product = asymptotic_bound(k, r - 1, r)?;
    let exp_upper = ((f64::from(k) - f64::from(r)) / f64::from(k)).exp();
    let ordering_holds = multinomial_lower <= product && to_f64(&product) <= exp_upper;
    Ok(SandwichTable {
        k,
        r,
        l,
        multinomial_lower,
        product,
        exp_upper,
        exp_upper_approx: format!("{exp_upper:.12}"),
        ordering_holds,
    })
}
