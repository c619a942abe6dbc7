//! Exact rational scalars.
//!
//! Every coefficient in this crate is a reduced big rational. There is no
//! floating point anywhere, so every identity check is an exact equality.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Arbitrary-precision rational, always stored reduced with a positive
/// denominator (zero is `0/1`).
pub type Scalar = BigRational;

/// Dense coordinate vector over the rationals.
pub type Vector = Vec<Scalar>;

pub fn int(v: i64) -> Scalar {
    BigRational::from_integer(BigInt::from(v))
}

/// `num/den`, reduced. Panics on a zero denominator.
pub fn ratio(num: i64, den: i64) -> Scalar {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

pub fn zero() -> Scalar {
    Scalar::zero()
}

pub fn one() -> Scalar {
    Scalar::one()
}

/// Parses `p` or `p/q` with an optional leading sign.
pub fn parse_scalar(text: &str) -> Result<Scalar, String> {
    let text = text.trim();
    let (num, den) = match text.split_once('/') {
        Some((n, d)) => (n, Some(d)),
        None => (text, None),
    };
    let num: BigInt = num.trim().trim_start_matches('+').parse().map_err(|_| format!("invalid rational `{text}`"))?;
    let den: BigInt = match den {
        Some(d) => d.trim().parse().map_err(|_| format!("invalid rational `{text}`"))?,
        None => BigInt::one(),
    };
    if den.is_zero() {
        return Err(format!("zero denominator in `{text}`"));
    }
    Ok(BigRational::new(num, den))
}

/// `p` for integers, `p/q` otherwise.
pub fn fmt_scalar(value: &Scalar) -> String {
    if value.is_integer() {
        value.numer().to_string()
    } else {
        format!("{}/{}", value.numer(), value.denom())
    }
}

/// Formats a coefficient in front of a basis symbol: `""`, `"-"`, `"3"`, `"-1/2"`.
pub(crate) fn fmt_coeff_prefix(value: &Scalar) -> String {
    if value.is_one() {
        String::new()
    } else if (-value).is_one() {
        "-".to_string()
    } else {
        fmt_scalar(value)
    }
}

pub fn zero_vector(dim: usize) -> Vector {
    vec![Scalar::zero(); dim]
}

pub fn basis_vector(dim: usize, index: usize) -> Vector {
    let mut v = zero_vector(dim);
    v[index] = Scalar::one();
    v
}

pub fn is_zero_vector(v: &[Scalar]) -> bool {
    v.iter().all(Zero::is_zero)
}

/// `acc += coeff * v`
pub fn add_scaled(acc: &mut [Scalar], coeff: &Scalar, v: &[Scalar]) {
    if coeff.is_zero() {
        return;
    }
    for (a, b) in acc.iter_mut().zip(v) {
        if !b.is_zero() {
            *a += coeff * b;
        }
    }
}

pub fn scale_vector(coeff: &Scalar, v: &[Scalar]) -> Vector {
    v.iter().map(|x| coeff * x).collect()
}

pub fn neg_vector(v: &[Scalar]) -> Vector {
    v.iter().map(|x| -x).collect()
}

pub fn sub_vectors(a: &[Scalar], b: &[Scalar]) -> Vector {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn add_vectors(a: &[Scalar], b: &[Scalar]) -> Vector {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

/// Nonzero entries as `(index, coefficient)` pairs.
pub fn support(v: &[Scalar]) -> impl Iterator<Item = (usize, &Scalar)> {
    v.iter().enumerate().filter(|(_, c)| !c.is_zero())
}

/// Renders `c1*label1 + c2*label2 ...`, or `0`.
pub fn fmt_vector(v: &[Scalar], labels: &[String]) -> String {
    let mut out = String::new();
    for (i, c) in support(v) {
        if out.is_empty() {
            out.push_str(&fmt_coeff_prefix(c));
        } else if c.is_negative() {
            out.push_str(" - ");
            out.push_str(&fmt_coeff_prefix(&-c));
        } else {
            out.push_str(" + ");
            out.push_str(&fmt_coeff_prefix(c));
        }
        out.push_str(&labels[i]);
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

/// Default basis labels `x1 … xn`.
pub fn default_labels(dim: usize) -> Vec<String> {
    (1..=dim).map(|i| format!("x{i}")).collect()
}
