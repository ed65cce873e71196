//! Exact rational arithmetic and the scalar quantities shared by every
//! other module: binomial coefficients, the product terms `x_{m,r}` and the
//! finite-size perturbation `epsilon`.

use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Arbitrary-precision fraction, always in lowest terms with a positive
/// denominator.
pub type Rational = num_rational::BigRational;

pub fn rat(numer: i64, denom: i64) -> Rational {
    Rational::new(BigInt::from(numer), BigInt::from(denom))
}

pub fn int(value: i64) -> Rational {
    Rational::from_integer(BigInt::from(value))
}

/// Parses `"p/q"`, `"p"`, or a terminating decimal such as `"-0.125"`.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let trimmed = text.trim();
    let err = || Error::ParseRational(text.to_string());
    if trimmed.is_empty() {
        return Err(err());
    }
    if let Some((p, q)) = trimmed.split_once('/') {
        let p = BigInt::from_str(p.trim()).map_err(|_| err())?;
        let q = BigInt::from_str(q.trim()).map_err(|_| err())?;
        if q.is_zero() {
            return Err(err());
        }
        return Ok(Rational::new(p, q));
    }
    if let Some((whole, frac)) = trimmed.split_once('.') {
        let negative = whole.starts_with('-');
        let digits = format!("{}{}", whole.trim_start_matches(['-', '+']), frac);
        if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
            return Err(err());
        }
        let magnitude = BigInt::from_str(&digits).map_err(|_| err())?;
        let scale = num_traits::pow(BigInt::from(10), frac.len());
        let value = Rational::new(magnitude, scale);
        return Ok(if negative { -value } else { value });
    }
    BigInt::from_str(trimmed)
        .map(Rational::from_integer)
        .map_err(|_| err())
}

/// Renders an exact value as `"p/q"` (or `"p"` for integers).
pub fn format_rational(value: &Rational) -> String {
    value.to_string()
}

/// Lossy conversion for display and floating-point comparisons only.
pub fn to_f64(value: &Rational) -> f64 {
    use num_traits::ToPrimitive;
    value.to_f64().unwrap_or(f64::NAN)
}

/// Serde adapter writing rationals as exact `"p/q"` strings.
pub mod serde_rational {
    use super::*;
    use serde::{Deserializer, Serializer};

    pub fn serialize<S: Serializer>(value: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&format_rational(value))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Rational, D::Error> {
        let text = String::deserialize(d)?;
        parse_rational(&text).map_err(serde::de::Error::custom)
    }

    pub mod option {
        use super::*;

        pub fn serialize<S: Serializer>(
            value: &Option<Rational>,
            s: S,
        ) -> std::result::Result<S::Ok, S::Error> {
            match value {
                Some(v) => s.serialize_some(&format_rational(v)),
                None => s.serialize_none(),
            }
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(
            d: D,
        ) -> std::result::Result<Option<Rational>, D::Error> {
            let text: Option<String> = Option::deserialize(d)?;
            text.map(|t| parse_rational(&t).map_err(serde::de::Error::custom))
                .transpose()
        }
    }

    pub mod vec {
        use super::*;
        use serde::ser::SerializeSeq;

        pub fn serialize<S: Serializer>(
            values: &[Rational],
            s: S,
        ) -> std::result::Result<S::Ok, S::Error> {
            let mut seq = s.serialize_seq(Some(values.len()))?;
            for v in values {
                seq.serialize_element(&format_rational(v))?;
            }
            seq.end()
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(
            d: D,
        ) -> std::result::Result<Vec<Rational>, D::Error> {
            let texts: Vec<String> = Vec::deserialize(d)?;
            texts
                .iter()
                .map(|t| parse_rational(t).map_err(serde::de::Error::custom))
                .collect()
        }
    }
}

/// Which finite-size perturbation to use when replacing `1/((n-m) x_{m,r})`
/// by a single constant.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize, Default)]
#[serde(rename_all = "kebab-case")]
pub enum EpsilonMode {
    /// `(r-k) / ((n-r+1)(k-1))`, as printed alongside the main theorem.
    #[default]
    PaperLiteral,
    /// `(r-1) / ((n-r+1)(k-1)) = 1 / ((n-r+1) x_{r-1,r})`, the value the
    /// definition of `x_{m,r}` actually requires.
    Corrected,
}

impl std::fmt::Display for EpsilonMode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            EpsilonMode::PaperLiteral => f.write_str("paper-literal"),
            EpsilonMode::Corrected => f.write_str("corrected"),
        }
    }
}

impl FromStr for EpsilonMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "paper-literal" | "paper" | "literal" => Ok(EpsilonMode::PaperLiteral),
            "corrected" => Ok(EpsilonMode::Corrected),
            other => Err(Error::InvalidParameters(format!(
                "unknown epsilon mode {other:?} (expected paper-literal or corrected)"
            ))),
        }
    }
}

/// `C(n, j)`, with `0` whenever `j < 0` or `j > n`.
pub fn binomial(n: u64, j: i64) -> BigInt {
    if j < 0 || j as u64 > n {
        return BigInt::zero();
    }
    let j = (j as u64).min(n - j as u64);
    let mut acc = BigInt::one();
    for i in 0..j {
        acc *= BigInt::from(n - i);
        acc /= BigInt::from(i + 1);
    }
    acc
}

/// Machine-word binomial for the small index arithmetic of the hypergraph
/// code. Panics on overflow, which cannot happen for `n <= 64`.
pub fn binomial_u64(n: u64, j: u64) -> u64 {
    if j > n {
        return 0;
    }
    let j = j.min(n - j);
    let mut acc: u128 = 1;
    for i in 0..j as u128 {
        acc = acc * (n as u128 - i) / (i + 1);
    }
    u64::try_from(acc).expect("binomial coefficient overflows u64")
}

/// `x_{m,r}^{(k)} = 1 - C(m-1, k-1) / C(r-1, k-1)`.
pub fn x_ratio(k: u32, m: u32, r: u32) -> Result<Rational> {
    if k < 2 || k > r {
        return Err(Error::InvalidParameters(format!(
            "x_ratio needs 2 <= k <= r, got k = {k}, r = {r}"
        )));
    }
    if m + 1 < k || m > r {
        return Err(Error::InvalidParameters(format!(
            "x_ratio needs k-1 <= m <= r, got k = {k}, m = {m}, r = {r}"
        )));
    }
    let num = binomial(u64::from(m) - 1, i64::from(k) - 1);
    let den = binomial(u64::from(r) - 1, i64::from(k) - 1);
    Ok(Rational::one() - Rational::new(num, den))
}

/// The perturbation `epsilon` for an `n`-vertex host.
pub fn epsilon_value(k: u32, r: u32, n: u64, mode: EpsilonMode) -> Result<Rational> {
    if k < 2 || r <= k {
        return Err(Error::InvalidParameters(format!(
            "epsilon needs 2 <= k < r, got k = {k}, r = {r}"
        )));
    }
    if n <= u64::from(r) {
        return Err(Error::InvalidParameters(format!(
            "epsilon needs n > r, got n = {n}, r = {r}"
        )));
    }
    let numer = match mode {
        EpsilonMode::PaperLiteral => i64::from(r - k),
        EpsilonMode::Corrected => i64::from(r - 1),
    };
    let denom = BigInt::from(n - u64::from(r) + 1) * BigInt::from(k - 1);
    Ok(Rational::new(BigInt::from(numer), denom))
}

/// Multinomial coefficient `total! / prod(parts!)`; `parts` must sum to `total`.
pub fn multinomial(parts: &[u64]) -> BigInt {
    let mut acc = BigInt::one();
    let mut running = 0u64;
    for &p in parts {
        running += p;
        acc *= binomial(running, p as i64);
    }
    acc
}

pub(crate) fn ratio_of(numer: u64, denom: u64) -> Rational {
    Rational::new(BigInt::from(numer), BigInt::from(denom))
}
