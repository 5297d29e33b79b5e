//! Locale-independent parsing of complex scalars written as `a+bi`.

use num_complex::Complex64;

fn real(s: &str) -> Result<f64, String> {
    let v: f64 = s.parse().map_err(|_| format!("invalid number {s:?}"))?;
    if v.is_finite() {
        Ok(v)
    } else {
        Err(format!("non-finite number {s:?}"))
    }
}

/// Imaginary coefficient, where a bare sign stands for ±1.
fn coefficient(s: &str) -> Result<f64, String> {
    match s {
        "" | "+" => Ok(1.0),
        "-" => Ok(-1.0),
        _ => real(s),
    }
}

/// Parses `3`, `-2.5`, `1+2i`, `1-2i`, `2i`, `-i`, `1e-3+4E2i` and the like.
pub fn parse_complex(text: &str) -> Result<Complex64, String> {
    let s = text.trim();
    if s.is_empty() {
        return Err("empty complex scalar".into());
    }
    let Some(body) = s.strip_suffix(['i', 'j']) else {
        return Ok(Complex64::new(real(s)?, 0.0));
    };
    let bytes = body.as_bytes();
    let split = (1..bytes.len())
        .rev()
        .find(|&k| matches!(bytes[k], b'+' | b'-') && !matches!(bytes[k - 1], b'e' | b'E'));
    let z = match split {
        Some(k) => Complex64::new(real(&body[..k])?, coefficient(&body[k..])?),
        None => Complex64::new(0.0, coefficient(body)?),
    };
    Ok(z)
}

/// Comma-separated list of complex scalars.
pub fn parse_list(text: &str) -> Result<Vec<Complex64>, String> {
    if text.trim().is_empty() {
        return Ok(Vec::new());
    }
    text.split(',').map(parse_complex).collect()
}
