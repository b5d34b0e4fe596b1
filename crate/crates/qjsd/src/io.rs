//! Plain-text density-matrix files.
//!
//! Format: line 1 holds the integer dimension N; each of the next N lines
//! holds N entries `re+imj` separated by single spaces, row-major, with
//! subsystem A as the slow index for bipartite states. The parser accepts
//! `1e-3`-style exponents; writers emit 17 significant digits so `f64`
//! round-trips exactly.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use num_complex::Complex;

use crate::density::DensityMatrix;
use crate::error::{Error, Result};
use crate::linalg::ComplexMatrix;
use crate::scalar::Real;

/// Render one state in the text format.
pub fn density_to_string<R: Real>(rho: &DensityMatrix<R>) -> String {
    let n = rho.dim();
    let mut out = String::new();
    let _ = writeln!(out, "{n}");
    for i in 0..n {
        for j in 0..n {
            if j > 0 {
                out.push(' ');
            }
            let v = rho.mat().get(i, j);
            let re = v.re.to_f64().expect("finite entry");
            let im = v.im.to_f64().expect("finite entry");
            let _ = write!(out, "{re:.16e}{im:+.16e}j");
        }
        out.push('\n');
    }
    out
}

pub fn write_density<R: Real>(path: &Path, rho: &DensityMatrix<R>) -> Result<()> {
    fs::write(path, density_to_string(rho))?;
    Ok(())
}

/// Parse a state; the result is validated by `DensityMatrix::new`.
pub fn parse_density<R: Real>(text: &str) -> Result<DensityMatrix<R>> {
    let mut lines = text.lines();
    let first = lines
        .next()
        .ok_or_else(|| Error::Parse("empty density-matrix file".into()))?;
    let n: usize = first
        .trim()
        .parse()
        .map_err(|_| Error::Parse(format!("bad dimension line {first:?}")))?;
    if n == 0 {
        return Err(Error::Parse("dimension must be positive".into()));
    }
    let mut mat = ComplexMatrix::<R>::zeros(n);
    for i in 0..n {
        let line = lines
            .next()
            .ok_or_else(|| Error::Parse(format!("missing row {i}")))?;
        let tokens: Vec<&str> = line.split_whitespace().collect();
        if tokens.len() != n {
            return Err(Error::Parse(format!(
                "row {i} has {} entries, expected {n}",
                tokens.len()
            )));
        }
        for (j, tok) in tokens.iter().enumerate() {
            let (re, im) = parse_complex(tok)?;
            mat.set(
                i,
                j,
                Complex::new(
                    R::from_f64(re).ok_or_else(|| Error::Parse(format!("unrepresentable value {re}")))?,
                    R::from_f64(im).ok_or_else(|| Error::Parse(format!("unrepresentable value {im}")))?,
                ),
            );
        }
    }
    DensityMatrix::new(mat)
}

pub fn read_density<R: Real>(path: &Path) -> Result<DensityMatrix<R>> {
    let text = fs::read_to_string(path)?;
    parse_density(&text)
}

/// Split `re+imj` into its two float parts. A token without the trailing `j`
/// is a pure real entry.
fn parse_complex(token: &str) -> Result<(f64, f64)> {
    let bad = || Error::Parse(format!("bad complex entry {token:?}"));
    let (body, has_j) = match token.strip_suffix(['j', 'J']) {
        Some(b) => (b, true),
        None => (token, false),
    };
    if body.is_empty() {
        return Err(bad());
    }
    // The imaginary part starts at the last sign that is not an exponent sign
    // and not the leading sign of the real part.
    let bytes = body.as_bytes();
    let mut split = None;
    for k in 1..bytes.len() {
        if (bytes[k] == b'+' || bytes[k] == b'-')
            && bytes[k - 1] != b'e'
            && bytes[k - 1] != b'E'
        {
            split = Some(k);
        }
    }
    let parse_part = |s: &str| -> Result<f64> {
        let v: f64 = s.parse().map_err(|_| bad())?;
        if !v.is_finite() {
            return Err(Error::Parse(format!("non-finite entry {token:?}")));
        }
        Ok(v)
    };
    match (split, has_j) {
        (Some(k), true) => Ok((parse_part(&body[..k])?, parse_part(&body[k..])?)),
        (None, true) => Ok((0.0, parse_part(body)?)),
        (Some(_), false) => Err(bad()),
        (None, false) => Ok((parse_part(body)?, 0.0)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families;
    use proptest::prelude::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn parse_accepts_exponent_styles() {
        assert_eq!(parse_complex("1e-3+2e-4j").unwrap(), (1e-3, 2e-4));
        assert_eq!(parse_complex("-0.5-0.25j").unwrap(), (-0.5, -0.25));
        assert_eq!(parse_complex("0.25+0j").unwrap(), (0.25, 0.0));
        assert_eq!(parse_complex("0.25").unwrap(), (0.25, 0.0));
        assert_eq!(parse_complex("2.5E-1+1.0E-9j").unwrap(), (0.25, 1.0e-9));
    }

    #[test]
    fn parse_rejects_garbage() {
        assert!(parse_complex("j").is_err());
        assert!(parse_complex("1.0+j").is_err());
        assert!(parse_complex("abc+1j").is_err());
        assert!(parse_complex("inf+0j").is_err());
    }

    #[test]
    fn round_trip_is_exact_for_f64() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..25 {
            let rho = families::random_density::<f64>(4, 4, &mut rng).unwrap();
            let text = density_to_string(&rho);
            let back: DensityMatrix<f64> = parse_density(&text).unwrap();
            assert!(back.mat().max_abs_diff(rho.mat()) == 0.0, "17 digits must round-trip");
        }
    }

    #[test]
    fn parse_rejects_invalid_states() {
        // negative eigenvalue
        let text = "2\n1.1+0j 0+0j\n0+0j -0.1+0j\n";
        assert!(parse_density::<f64>(text).is_err());
        // short row
        let text = "2\n1+0j\n0+0j 0+0j\n";
        assert!(parse_density::<f64>(text).is_err());
    }

    proptest! {
        #[test]
        fn complex_token_round_trip(re in -1.0f64..1.0, im in -1.0f64..1.0) {
            let tok = format!("{re:.16e}{im:+.16e}j");
            let (r2, i2) = parse_complex(&tok).unwrap();
            prop_assert_eq!(re, r2);
            prop_assert_eq!(im, i2);
        }
    }
}
