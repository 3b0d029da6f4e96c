//! The rational series behind the asymptotic expansion of the connected
//! counts, the exact big-integer recurrence, and the connectedness report.
//!
//! All transcendental factors (e, √(2π)) stay symbolic: the alien
//! derivative of C is R/(e·√(2π)) with R computed here in exact rationals,
//! and reports divide by a 60-term rational approximation of e only when
//! rendering. No Γ evaluation appears anywhere; the translated expansion
//! uses double factorials directly.

use num::bigint::BigInt;
use num::{Signed, Zero};

use crate::rational::{decimal_string, double_factorial_odd, inv_e, rat, Rat};
use crate::series::{catalog_series, connected_counts, PowerSeries, SeriesError, SeriesName};

/// Exact number of connected diagrams on n chords, from the recurrence
/// C_1 = 1, C_n = Σ (2i−1) C_i C_{n−i}.
pub fn exact_cn(n: usize) -> BigInt {
    assert!(n >= 1, "connected counts start at one chord");
    connected_counts(n).pop().expect("nonempty count vector")
}

/// R(x) = (x/C)·exp(1 − (A−1)/(2x)) with A = (1+C)², normalized so that
/// R(0) = 1; the alien derivative of C is R/(e·√(2π)). The exponent's
/// shifted argument has zero constant term since A − 1 = 2x + 3x² + ....
pub fn alien_rational_series(order: usize) -> PowerSeries {
    let c = catalog_series(SeriesName::C, order + 1);
    let exponential = alien_exponential(&c);
    let c_over_x = c.shift_down(1).expect("C has zero constant term");
    let x_over_c = PowerSeries::one(order)
        .div(&c_over_x)
        .expect("C/x has a unit constant term");
    &x_over_c * &exponential
}

/// The same series through the derivative form (1 + C − 2xC′)·exp(...),
/// the other closed expression for the alien derivative. Used as an
/// independent route in the verification suite.
pub fn alien_rational_series_alt(order: usize) -> PowerSeries {
    let c = catalog_series(SeriesName::C, order + 1);
    let exponential = alien_exponential(&c);
    let two_x_cp = c
        .derivative()
        .expect("order is at least one")
        .shift_up(1)
        .scale(&rat(2, 1));
    let prefactor = &(&PowerSeries::one(order) + &c.truncated(order)) - &two_x_cp.truncated(order);
    &prefactor * &exponential
}

/// exp(1 − (A−1)/(2x)) at order c.order() − 1.
fn alien_exponential(c: &PowerSeries) -> PowerSeries {
    let one = PowerSeries::one(c.order());
    let unit_plus_c = &one + c;
    let a = &unit_plus_c * &unit_plus_c;
    let shifted = (&a - &one)
        .shift_down(1)
        .expect("A−1 has zero constant term")
        .scale(&rat(1, 2));
    let argument = &PowerSeries::one(shifted.order()) - &shifted;
    argument.exp().expect("argument has zero constant term")
}

/// The m-term truncated sum S(n,m) = Σ_{k<m} r_k (2(n−k)−1)!! as an exact
/// rational; e^{−1}·S(n,m) estimates C_n.
pub fn asymptotic_sum(n: usize, terms: usize) -> Result<Rat, SeriesError> {
    if terms == 0 || terms > n {
        return Err(SeriesError::Order {
            requested: terms,
            available: n,
        });
    }
    let series = alien_rational_series(terms - 1);
    let mut acc = Rat::zero();
    for k in 0..terms {
        acc += series.coeff(k) * Rat::from_integer(double_factorial_odd(n - k));
    }
    Ok(acc)
}

/// One row of the connectedness report.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReportRow {
    pub n: usize,
    /// C_n/(2n−1)!!, exact.
    pub exact_ratio: Rat,
    /// e^{−1}(1 − 5/(4n)).
    pub leading_estimate: Rat,
    /// |exact − leading|.
    pub abs_error: Rat,
    /// e^{−1}·S(n,m)/(2n−1)!! for m = 1..=min(m_max, n).
    pub truncated_ratios: Vec<Rat>,
}

/// Rows for n = 2..=n_max comparing the exact connected ratio against the
/// closed two-term estimate and the m-term truncated expansions.
pub fn connectedness_report(n_max: usize, m_max: usize) -> Vec<ReportRow> {
    assert!(n_max >= 2, "the report starts at n = 2");
    let counts = connected_counts(n_max);
    let euler_inv = inv_e();
    let series = alien_rational_series(m_max.min(n_max).saturating_sub(1));
    (2..=n_max)
        .map(|n| {
            let all = Rat::from_integer(double_factorial_odd(n));
            let exact_ratio = Rat::from_integer(counts[n].clone()) / &all;
            let leading_estimate =
                &euler_inv * (Rat::from_integer(1.into()) - rat(5, 4 * n as i64));
            let abs_error = (&exact_ratio - &leading_estimate).abs();
            let truncated_ratios = (1..=m_max.min(n))
                .map(|m| {
                    let mut sum = Rat::zero();
                    for k in 0..m {
                        sum += series.coeff(k) * Rat::from_integer(double_factorial_odd(n - k));
                    }
                    &euler_inv * sum / &all
                })
                .collect();
            ReportRow {
                n,
                exact_ratio,
                leading_estimate,
                abs_error,
                truncated_ratios,
            }
        })
        .collect()
}

/// Render report rows with the given decimal precision, either as CSV or
/// as an aligned text table.
pub fn render_report(rows: &[ReportRow], digits: usize, csv: bool) -> String {
    let m_max = rows.iter().map(|r| r.truncated_ratios.len()).max().unwrap_or(0);
    let mut header: Vec<String> = ["n", "exact_ratio", "leading_estimate", "abs_error"]
        .iter()
        .map(|s| s.to_string())
        .collect();
    for m in 1..=m_max {
        header.push(format!("estimate_m{m}"));
    }
    let mut table: Vec<Vec<String>> = vec![header];
    for row in rows {
        let mut cells = vec![
            row.n.to_string(),
            decimal_string(&row.exact_ratio, digits),
            decimal_string(&row.leading_estimate, digits),
            decimal_string(&row.abs_error, digits),
        ];
        for m in 0..m_max {
            cells.push(
                row.truncated_ratios
                    .get(m)
                    .map(|r| decimal_string(r, digits))
                    .unwrap_or_default(),
            );
        }
        table.push(cells);
    }
    if csv {
        let lines: Vec<String> = table.iter().map(|cells| cells.join(",")).collect();
        return lines.join("\n") + "\n";
    }
    let columns = table[0].len();
    let widths: Vec<usize> = (0..columns)
        .map(|c| table.iter().map(|row| row[c].len()).max().unwrap_or(0))
        .collect();
    let mut out = String::new();
    for row in &table {
        let mut line = String::new();
        for (c, cell) in row.iter().enumerate() {
            if c > 0 {
                line.push_str("  ");
            }
            line.push_str(&format!("{cell:>width$}", width = widths[c]));
        }
        out.push_str(line.trim_end());
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    #[test]
    fn alien_series_matches_printed_coefficients() {
        let r = alien_rational_series(5);
        let expect = [
            rat(1, 1),
            rat(-5, 2),
            rat(-43, 8),
            rat(-579, 16),
            rat(-44477, 128),
            rat(-5326191, 1280),
        ];
        for (k, value) in expect.iter().enumerate() {
            assert_eq!(r.coeff(k), value, "coefficient {k}");
        }
        assert_eq!(alien_rational_series(0).coeff(0), &int(1));
    }

    #[test]
    fn closed_forms_agree() {
        assert_eq!(alien_rational_series(12), alien_rational_series_alt(12));
    }

    #[test]
    fn exact_counts() {
        assert_eq!(exact_cn(1), BigInt::from(1));
        assert_eq!(exact_cn(5), BigInt::from(248));
        assert_eq!(exact_cn(6), BigInt::from(2830));
    }

    #[test]
    fn truncated_sums() {
        for n in 1..=8 {
            assert_eq!(
                asymptotic_sum(n, 1).unwrap(),
                Rat::from_integer(double_factorial_odd(n)),
                "leading term at n = {n}"
            );
        }
        assert_eq!(asymptotic_sum(5, 2).unwrap(), rat(1365, 2));
        assert!(asymptotic_sum(5, 6).is_err());
        assert!(asymptotic_sum(5, 0).is_err());
    }

    #[test]
    fn report_basics() {
        let rows = connectedness_report(5, 3);
        assert_eq!(rows[0].n, 2);
        assert_eq!(rows[0].exact_ratio, rat(1, 3));
        // at n = 2 only m ≤ 2 estimates exist
        assert_eq!(rows[0].truncated_ratios.len(), 2);
        assert_eq!(rows[3].truncated_ratios.len(), 3);
        let text = render_report(&rows, 8, false);
        assert!(text.contains("0.33333333"));
        let csv = render_report(&rows, 8, true);
        assert!(csv.starts_with("n,exact_ratio,leading_estimate,abs_error,estimate_m1"));
    }
}
