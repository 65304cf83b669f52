//! Six-significant-figure rendering shared by every subcommand.

const DIGITS: i32 = 6;

/// Formats `x` to six significant figures.
///
/// Moderate magnitudes print in fixed notation with trailing zeros kept
/// (`3.27440`), very large or very small ones in scientific notation.
pub fn sig6(x: f64) -> String {
    if x == 0.0 {
        return format!("{:.*}", (DIGITS - 1) as usize, 0.0);
    }
    if !x.is_finite() {
        return x.to_string();
    }
    let exp = decade(x);
    if !(-4..DIGITS).contains(&exp) {
        return format!("{:.*e}", (DIGITS - 1) as usize, x);
    }
    let decimals = (DIGITS - 1 - exp).max(0) as usize;
    let fixed = format!("{x:.decimals$}");
    // rounding can carry into the next decade (9.999999 -> 10.00000)
    let rounded: f64 = fixed.parse().unwrap_or(x);
    if rounded != 0.0 && decade(rounded) != exp {
        let decimals = (DIGITS - 1 - decade(rounded)).max(0) as usize;
        return format!("{rounded:.decimals$}");
    }
    fixed
}

fn decade(x: f64) -> i32 {
    x.abs().log10().floor() as i32
}

/// The value a reader recovers from [`sig6`], for embedding in JSON.
pub fn round6(x: f64) -> f64 {
    sig6(x).parse().unwrap_or(x)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixed_and_scientific() {
        assert_eq!(sig6(3.2744019), "3.27440");
        assert_eq!(sig6(0.4689955936), "0.468996");
        assert_eq!(sig6(0.5), "0.500000");
        assert_eq!(sig6(2.0), "2.00000");
        assert_eq!(sig6(123456.7), "123457");
        assert_eq!(sig6(0.0), "0.00000");
        assert_eq!(sig6(-1.5), "-1.50000");
        assert_eq!(sig6(9.9999996), "10.0000");
        assert_eq!(sig6(1.5e-7), "1.50000e-7");
        assert_eq!(sig6(2.5e9), "2.50000e9");
    }

    #[test]
    fn round_trip_value() {
        assert_eq!(round6(0.49607213), 0.496072);
    }
}
