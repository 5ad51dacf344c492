use std::io::Write;
use std::path::Path;

use crate::error::{Error, Result};

/// Formats `x` with 6 significant digits, `%g`-style: plain notation for
/// decimal exponents in `[-5, 6)`, scientific otherwise, trailing zeros
/// stripped.
pub fn fmt_sig(x: f64) -> String {
    if x.is_nan() {
        return "nan".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    if x == 0.0 {
        return "0".into();
    }
    // the exponent after rounding to 6 digits, so 999999.7 becomes 1e6
    let sci = format!("{x:.5e}");
    let (mantissa, exp) = sci.split_once('e').expect("scientific format has an exponent");
    let exp: i32 = exp.parse().expect("integer exponent");
    if (-5..6).contains(&exp) {
        let decimals = (5 - exp).max(0) as usize;
        strip_zeros(&format!("{x:.decimals$}"))
    } else {
        format!("{}e{exp}", strip_zeros(mantissa))
    }
}

fn strip_zeros(s: &str) -> String {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s.to_string()
    }
}

/// Writes a CSV with LF line endings. Cells are written verbatim.
pub fn write_csv(path: &Path, header: &[&str], rows: &[Vec<String>]) -> Result<()> {
    if let Some(parent) = path.parent() {
        std::fs::create_dir_all(parent)?;
    }
    let mut f = std::io::BufWriter::new(std::fs::File::create(path)?);
    writeln!(f, "{}", header.join(","))?;
    for row in rows {
        if row.len() != header.len() {
            return Err(Error::InvalidArgument(format!("CSV row has {} cells, header {}", row.len(), header.len())));
        }
        writeln!(f, "{}", row.join(","))?;
    }
    f.flush()?;
    Ok(())
}

/// Binary PGM (P5, maxval 255) of a row-major `rows x cols` image scaled
/// so its maximum maps to 255. An all-zero image stays black.
pub fn pgm_bytes(values: &[f64], rows: usize, cols: usize) -> Result<Vec<u8>> {
    if values.len() != rows * cols {
        return Err(Error::Dimension(format!("{} pixels for a {rows}x{cols} image", values.len())));
    }
    if values.iter().any(|v| !v.is_finite() || *v < 0.0) {
        return Err(Error::InvalidArgument("image values must be finite and nonnegative".into()));
    }
    let max = values.iter().copied().fold(0.0, f64::max);
    let mut out = format!("P5\n{cols} {rows}\n255\n").into_bytes();
    out.extend(values.iter().map(|&v| if max > 0.0 { (255.0 * v / max).round() as u8 } else { 0 }));
    Ok(out)
}

pub fn write_pgm(path: &Path, values: &[f64], rows: usize, cols: usize) -> Result<()> {
    if let Some(parent) = path.parent() {
        std::fs::create_dir_all(parent)?;
    }
    std::fs::write(path, pgm_bytes(values, rows, cols)?)?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn significant_digits() {
        assert_eq!(fmt_sig(26.43), "26.43");
        assert_eq!(fmt_sig(1.0 / 3.0), "0.333333");
        assert_eq!(fmt_sig(300.0), "300");
        assert_eq!(fmt_sig(123456.7), "123457");
        assert_eq!(fmt_sig(999999.7), "1e6");
        assert_eq!(fmt_sig(1.5e-7), "1.5e-7");
        assert_eq!(fmt_sig(-2.0e-3), "-0.002");
        assert_eq!(fmt_sig(0.0), "0");
        assert_eq!(fmt_sig(0.3), "0.3");
    }

    #[test]
    fn pgm_layout() {
        let bytes = pgm_bytes(&[0.0, 1.0, 2.0, 4.0, 0.0, 0.0], 2, 3).unwrap();
        let header = b"P5\n3 2\n255\n";
        assert_eq!(&bytes[..header.len()], header);
        assert_eq!(&bytes[header.len()..], &[0, 64, 128, 255, 0, 0]);
        let dark = pgm_bytes(&[0.0; 4], 2, 2).unwrap();
        assert!(dark[dark.len() - 4..].iter().all(|&b| b == 0));
        assert!(pgm_bytes(&[1.0], 2, 2).is_err());
    }
}
