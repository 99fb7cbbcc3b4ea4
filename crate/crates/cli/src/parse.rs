//! Flag value parsers. They return `String` errors so clap reports them as
//! usage errors.

use onebit_core::Complex64;

/// Parses `a+bj`, `a-bj`, `a`, `bj` (also with `i`), ignoring whitespace.
pub fn parse_complex(s: &str) -> Result<Complex64, String> {
    let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if t.is_empty() {
        return Err("empty complex number".into());
    }
    let bad = || format!("cannot parse complex number `{s}` (expected a+bj)");
    let num =
        |v: &str| v.parse::<f64>().map_err(|_| bad()).and_then(|x| if x.is_finite() { Ok(x) } else { Err(bad()) });

    let Some(body) = t.strip_suffix(['j', 'i']) else {
        return Ok(Complex64::new(num(&t)?, 0.0));
    };
    // Split at the last sign that is not the sign of an exponent.
    let bytes = body.as_bytes();
    let split =
        (1..bytes.len()).rev().find(|&i| matches!(bytes[i], b'+' | b'-') && !matches!(bytes[i - 1], b'e' | b'E'));
    let imag = |v: &str| match v {
        "" | "+" => Ok(1.0),
        "-" => Ok(-1.0),
        _ => num(v),
    };
    match split {
        Some(i) => Ok(Complex64::new(num(&body[..i])?, imag(&body[i..])?)),
        None => Ok(Complex64::new(0.0, imag(body)?)),
    }
}

/// Comma-separated list of complex channel entries.
pub fn parse_channel(s: &str) -> Result<Vec<Complex64>, String> {
    let v = s.split(',').map(parse_complex).collect::<Result<Vec<_>, _>>()?;
    if v.is_empty() {
        return Err("channel needs at least one entry".into());
    }
    Ok(v)
}

/// `start:step:stop` in dB (stop inclusive), or a single value.
pub fn parse_snr_grid(s: &str) -> Result<Vec<f64>, String> {
    let parts: Vec<&str> = s.split(':').map(str::trim).collect();
    let num = |v: &str| {
        v.parse::<f64>().ok().filter(|x| x.is_finite()).ok_or_else(|| format!("bad number `{v}` in SNR grid `{s}`"))
    };
    match parts.as_slice() {
        [one] => Ok(vec![num(one)?]),
        [start, step, stop] => {
            let (start, step, stop) = (num(start)?, num(step)?, num(stop)?);
            if step <= 0.0 {
                return Err(format!("SNR step must be positive in `{s}`"));
            }
            if stop < start {
                return Err(format!("SNR stop is below start in `{s}`"));
            }
            let n = ((stop - start) / step + 1e-9).floor() as usize + 1;
            Ok((0..n).map(|i| start + i as f64 * step).collect())
        }
        _ => Err(format!("SNR grid `{s}` is not start:step:stop")),
    }
}
