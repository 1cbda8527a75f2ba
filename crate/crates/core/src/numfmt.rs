//! Display formatting for ratios and percentages: two decimals, rounding
//! half-up, computed in integer arithmetic so display never drifts from the
//! stored numerator/denominator.

/// `num/den` to two decimals, half-up. None when `den` is zero.
pub fn ratio_2dp(num: u64, den: u64) -> Option<String> {
    scaled_2dp(num as u128 * 100, den)
}

/// `num/den * 100` (a percentage) to two decimals, half-up.
pub fn pct_2dp(num: u64, den: u64) -> Option<String> {
    scaled_2dp(num as u128 * 10_000, den)
}

/// A bare f64 percentage to two decimals, half-up on the decimal value.
pub fn f64_2dp(value: f64) -> String {
    // round half away from zero at the second decimal
    let scaled = (value * 100.0).abs() + 0.5;
    let units = scaled.floor() as i64 * value.signum() as i64;
    format!("{}.{:02}", units / 100, (units % 100).abs())
}

fn scaled_2dp(scaled_num: u128, den: u64) -> Option<String> {
    if den == 0 {
        return None;
    }
    let den = den as u128;
    let hundredths = (2 * scaled_num + den) / (2 * den);
    Some(format!("{}.{:02}", hundredths / 100, hundredths % 100))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rounds_half_up() {
        assert_eq!(ratio_2dp(1, 8).as_deref(), Some("0.13")); // 0.125
        assert_eq!(ratio_2dp(15_067, 6_882).as_deref(), Some("2.19"));
        assert_eq!(ratio_2dp(15_234, 6_882).as_deref(), Some("2.21"));
        assert_eq!(ratio_2dp(20_497, 10_308).as_deref(), Some("1.99"));
        assert_eq!(ratio_2dp(23_670, 10_308).as_deref(), Some("2.30"));
        assert_eq!(ratio_2dp(14_613, 3_811).as_deref(), Some("3.83"));
        assert_eq!(ratio_2dp(16_414, 3_811).as_deref(), Some("4.31"));
    }

    #[test]
    fn percentage_formatting() {
        assert_eq!(pct_2dp(8_443, 15_234).as_deref(), Some("55.42"));
        assert_eq!(pct_2dp(5_638, 6_882).as_deref(), Some("81.92"));
        assert_eq!(pct_2dp(0, 10).as_deref(), Some("0.00"));
        assert_eq!(pct_2dp(10, 10).as_deref(), Some("100.00"));
        assert_eq!(pct_2dp(1, 0), None);
    }
}
