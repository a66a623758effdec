//! Exact rational scalars and dense coordinate vectors.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// An exact rational number, always kept in lowest terms with a positive
/// denominator.
pub type Scalar = BigRational;

/// A dense coordinate vector.
pub type Vector = Vec<Scalar>;

pub fn int(n: i64) -> Scalar {
    Scalar::from_integer(BigInt::from(n))
}

pub fn ratio(num: i64, den: i64) -> Scalar {
    Scalar::new(BigInt::from(num), BigInt::from(den))
}

/// Parses `p` or `p/q` with `q > 0`. A leading `-` or `+` is allowed on `p` only.
pub fn parse_scalar(text: &str) -> Option<Scalar> {
    let (num, den) = match text.split_once('/') {
        Some((n, d)) => (n, Some(d)),
        None => (text, None),
    };
    let num = parse_int(num, true)?;
    match den {
        None => Some(Scalar::from_integer(num)),
        Some(d) => {
            let den = parse_int(d, false)?;
            if den.is_zero() {
                return None;
            }
            Some(Scalar::new(num, den))
        }
    }
}

fn parse_int(text: &str, signed: bool) -> Option<BigInt> {
    let digits = match text.as_bytes().first() {
        Some(b'-') | Some(b'+') if signed => &text[1..],
        _ => text,
    };
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    text.parse().ok()
}

/// Exact textual form: `p` for integers, `p/q` otherwise.
pub fn format_scalar(x: &Scalar) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

pub fn zero_vector(len: usize) -> Vector {
    vec![Scalar::zero(); len]
}

pub fn unit_vector(len: usize, index: usize) -> Vector {
    let mut v = zero_vector(len);
    v[index] = Scalar::one();
    v
}

pub fn is_zero_vector(v: &[Scalar]) -> bool {
    v.iter().all(Zero::is_zero)
}

/// `y += a * x`
pub fn axpy(y: &mut [Scalar], a: &Scalar, x: &[Scalar]) {
    debug_assert_eq!(y.len(), x.len());
    if a.is_zero() {
        return;
    }
    for (yi, xi) in y.iter_mut().zip(x) {
        if !xi.is_zero() {
            *yi += a * xi;
        }
    }
}

pub fn add_vectors(a: &[Scalar], b: &[Scalar]) -> Vector {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn sub_vectors(a: &[Scalar], b: &[Scalar]) -> Vector {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn scale_vector(a: &Scalar, v: &[Scalar]) -> Vector {
    v.iter().map(|x| a * x).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_forms() {
        assert_eq!(parse_scalar("3"), Some(int(3)));
        assert_eq!(parse_scalar("-3/6"), Some(ratio(-1, 2)));
        assert_eq!(parse_scalar("+4/2"), Some(int(2)));
        assert_eq!(parse_scalar("1/0"), None);
        assert_eq!(parse_scalar("1/-2"), None);
        assert_eq!(parse_scalar("--1"), None);
        assert_eq!(parse_scalar(""), None);
        assert_eq!(parse_scalar("1.5"), None);
    }

    #[test]
    fn format_is_exact() {
        assert_eq!(format_scalar(&ratio(6, -4)), "-3/2");
        assert_eq!(format_scalar(&int(-7)), "-7");
        assert_eq!(format_scalar(&Scalar::zero()), "0");
    }
}
