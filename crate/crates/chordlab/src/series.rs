//! Truncated formal power series with exact rational coefficients, plus the
//! catalog of named generating functions for chord-diagram classes.
//!
//! A `PowerSeries` stores its truncation order N explicitly and exactly
//! N+1 coefficients c_0..c_N. Binary operations truncate to the minimum
//! order of their inputs, so exactness is never overstated. All values are
//! immutable after construction and every operation is a pure function.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num::bigint::BigInt;
use num::{One, Signed, Zero};
use serde::de::Error as _;
use serde::ser::SerializeStruct;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::rational::{double_factorial_odd, format_rat, parse_rat, Rat};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SeriesError {
    /// Division by a series with zero constant term.
    #[error("division by a series with zero constant term")]
    Division,
    /// Composition with an inner series whose constant term is nonzero.
    #[error("composition requires an inner series with zero constant term")]
    Composition,
    /// exp/log (or another closed operation) applied outside its domain.
    #[error("domain error: {0}")]
    Domain(String),
    /// A coefficient beyond the available truncation order was requested.
    #[error("order {requested} exceeds truncation order {available}")]
    Order { requested: usize, available: usize },
    /// Unknown catalog series name.
    #[error("unknown series name `{0}`")]
    Usage(String),
}

/// A formal power series truncated at an explicit order, with exact
/// rational coefficients. `coeffs` always holds exactly `order + 1`
/// entries; the coefficient of x^k is `coeffs[k]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PowerSeries {
    coeffs: Vec<Rat>,
}

impl PowerSeries {
    /// Build from explicit coefficients c_0..c_N; the order is N.
    pub fn from_coeffs(coeffs: Vec<Rat>) -> Self {
        assert!(!coeffs.is_empty(), "a series carries at least c_0");
        PowerSeries { coeffs }
    }

    pub fn from_ints(values: &[i64]) -> Self {
        Self::from_coeffs(values.iter().map(|&v| crate::rational::int(v)).collect())
    }

    pub fn zero(order: usize) -> Self {
        PowerSeries {
            coeffs: vec![Rat::zero(); order + 1],
        }
    }

    pub fn one(order: usize) -> Self {
        Self::monomial(0, Rat::one(), order)
    }

    /// The identity series x (requires order ≥ 1 to be representable).
    pub fn x(order: usize) -> Self {
        assert!(order >= 1, "x needs order at least 1");
        Self::monomial(1, Rat::one(), order)
    }

    /// c·x^k at the given order. Panics if k exceeds the order.
    pub fn monomial(k: usize, coeff: Rat, order: usize) -> Self {
        assert!(k <= order, "monomial degree exceeds order");
        let mut coeffs = vec![Rat::zero(); order + 1];
        coeffs[k] = coeff;
        PowerSeries { coeffs }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// The coefficient of x^k. Panics beyond the truncation order, where
    /// the coefficient is unknown rather than zero.
    pub fn coeff(&self, k: usize) -> &Rat {
        assert!(
            k <= self.order(),
            "coefficient {k} beyond truncation order {}",
            self.order()
        );
        &self.coeffs[k]
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    /// Restriction to a smaller order. Panics if `order` exceeds the
    /// carried order: truncation never invents coefficients.
    pub fn truncated(&self, order: usize) -> PowerSeries {
        assert!(order <= self.order(), "cannot extend a truncated series");
        PowerSeries {
            coeffs: self.coeffs[..=order].to_vec(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Rat::is_zero)
    }

    pub fn scale(&self, factor: &Rat) -> PowerSeries {
        PowerSeries {
            coeffs: self.coeffs.iter().map(|c| c * factor).collect(),
        }
    }

    /// Exact quotient self/rhs; the denominator needs a unit constant term.
    pub fn div(&self, rhs: &PowerSeries) -> Result<PowerSeries, SeriesError> {
        if rhs.coeffs[0].is_zero() {
            return Err(SeriesError::Division);
        }
        let order = self.order().min(rhs.order());
        let mut out = vec![Rat::zero(); order + 1];
        for n in 0..=order {
            let mut acc = self.coeffs[n].clone();
            for k in 1..=n {
                acc -= &rhs.coeffs[k] * &out[n - k];
            }
            out[n] = acc / &rhs.coeffs[0];
        }
        Ok(PowerSeries { coeffs: out })
    }

    /// Termwise derivative; drops the order by one.
    pub fn derivative(&self) -> Result<PowerSeries, SeriesError> {
        if self.order() == 0 {
            return Err(SeriesError::Order {
                requested: 1,
                available: 0,
            });
        }
        let coeffs = (1..=self.order())
            .map(|k| &self.coeffs[k] * Rat::from_integer(BigInt::from(k)))
            .collect();
        Ok(PowerSeries { coeffs })
    }

    /// Composition self(inner); the inner series needs a zero constant
    /// term so that every coefficient stays a finite sum.
    pub fn compose(&self, inner: &PowerSeries) -> Result<PowerSeries, SeriesError> {
        if !inner.coeffs[0].is_zero() {
            return Err(SeriesError::Composition);
        }
        let order = self.order().min(inner.order());
        let inner = inner.truncated(order);
        // Horner evaluation over the outer coefficients.
        let mut acc = PowerSeries::monomial(0, self.coeffs[order].clone(), order);
        for k in (0..order).rev() {
            acc = &acc * &inner;
            acc.coeffs[0] += &self.coeffs[k];
        }
        Ok(acc)
    }

    /// exp of a series with zero constant term, via the standard
    /// first-order recurrence.
    pub fn exp(&self) -> Result<PowerSeries, SeriesError> {
        if !self.coeffs[0].is_zero() {
            return Err(SeriesError::Domain(
                "exp requires a zero constant term".into(),
            ));
        }
        let order = self.order();
        let mut out = vec![Rat::zero(); order + 1];
        out[0] = Rat::one();
        for n in 1..=order {
            let mut acc = Rat::zero();
            for k in 1..=n {
                acc += &self.coeffs[k] * Rat::from_integer(BigInt::from(k)) * &out[n - k];
            }
            out[n] = acc / Rat::from_integer(BigInt::from(n));
        }
        Ok(PowerSeries { coeffs: out })
    }

    /// log of a series with unit constant term; inverse of `exp` up to the
    /// truncation order.
    pub fn log(&self) -> Result<PowerSeries, SeriesError> {
        if !self.coeffs[0].is_one() {
            return Err(SeriesError::Domain(
                "log requires a unit constant term".into(),
            ));
        }
        let order = self.order();
        let mut out = vec![Rat::zero(); order + 1];
        for n in 1..=order {
            let mut acc = Rat::zero();
            for k in 1..n {
                acc += &out[k] * Rat::from_integer(BigInt::from(k)) * &self.coeffs[n - k];
            }
            out[n] = &self.coeffs[n] - acc / Rat::from_integer(BigInt::from(n));
        }
        Ok(PowerSeries { coeffs: out })
    }

    /// Multiplication by x^k; the result is exact through order + k.
    pub fn shift_up(&self, k: usize) -> PowerSeries {
        let mut coeffs = vec![Rat::zero(); self.order() + k + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[i + k] = c.clone();
        }
        PowerSeries { coeffs }
    }

    /// Exact division by x^k; the first k coefficients must vanish.
    pub fn shift_down(&self, k: usize) -> Result<PowerSeries, SeriesError> {
        if k > self.order() {
            return Err(SeriesError::Order {
                requested: k,
                available: self.order(),
            });
        }
        if self.coeffs[..k].iter().any(|c| !c.is_zero()) {
            return Err(SeriesError::Domain(format!(
                "series is not divisible by x^{k}"
            )));
        }
        Ok(PowerSeries {
            coeffs: self.coeffs[k..].to_vec(),
        })
    }

    /// self^exponent truncated at the carried order.
    pub fn pow(&self, exponent: usize) -> PowerSeries {
        let mut acc = PowerSeries::one(self.order());
        for _ in 0..exponent {
            acc = &acc * self;
        }
        acc
    }
}

impl Add for &PowerSeries {
    type Output = PowerSeries;
    fn add(self, rhs: &PowerSeries) -> PowerSeries {
        let order = self.order().min(rhs.order());
        PowerSeries {
            coeffs: (0..=order)
                .map(|k| &self.coeffs[k] + &rhs.coeffs[k])
                .collect(),
        }
    }
}

impl Sub for &PowerSeries {
    type Output = PowerSeries;
    fn sub(self, rhs: &PowerSeries) -> PowerSeries {
        let order = self.order().min(rhs.order());
        PowerSeries {
            coeffs: (0..=order)
                .map(|k| &self.coeffs[k] - &rhs.coeffs[k])
                .collect(),
        }
    }
}

impl Mul for &PowerSeries {
    type Output = PowerSeries;
    fn mul(self, rhs: &PowerSeries) -> PowerSeries {
        let order = self.order().min(rhs.order());
        let mut out = vec![Rat::zero(); order + 1];
        for i in 0..=order {
            if self.coeffs[i].is_zero() {
                continue;
            }
            for j in 0..=order - i {
                if !rhs.coeffs[j].is_zero() {
                    out[i + j] += &self.coeffs[i] * &rhs.coeffs[j];
                }
            }
        }
        PowerSeries { coeffs: out }
    }
}

impl Neg for &PowerSeries {
    type Output = PowerSeries;
    fn neg(self) -> PowerSeries {
        PowerSeries {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl fmt::Display for PowerSeries {
    /// Polynomial rendering, e.g. `x + x^2 + 4x^3` or `1 - 5/2x - 43/8x^2`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let sep = if first {
                if c.is_negative() {
                    "-"
                } else {
                    ""
                }
            } else if c.is_negative() {
                " - "
            } else {
                " + "
            };
            let magnitude = c.abs();
            let var = match k {
                0 => String::new(),
                1 => "x".to_owned(),
                _ => format!("x^{k}"),
            };
            let coeff = if k > 0 && magnitude.is_one() {
                String::new()
            } else {
                format_rat(&magnitude)
            };
            write!(f, "{sep}{coeff}{var}")?;
            first = false;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl Serialize for PowerSeries {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut state = serializer.serialize_struct("PowerSeries", 2)?;
        state.serialize_field("order", &self.order())?;
        let rendered: Vec<String> = self.coeffs.iter().map(format_rat).collect();
        state.serialize_field("coeffs", &rendered)?;
        state.end()
    }
}

impl<'de> Deserialize<'de> for PowerSeries {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Repr {
            order: usize,
            coeffs: Vec<String>,
        }
        let repr = Repr::deserialize(deserializer)?;
        if repr.coeffs.len() != repr.order + 1 {
            return Err(D::Error::custom(format!(
                "series of order {} needs {} coefficients, found {}",
                repr.order,
                repr.order + 1,
                repr.coeffs.len()
            )));
        }
        let coeffs = repr
            .coeffs
            .iter()
            .map(|s| parse_rat(s).map_err(D::Error::custom))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(PowerSeries { coeffs })
    }
}

/// [x^n] b(x)^n by exact repeated multiplication.
pub fn lagrange_power_coeff(b: &PowerSeries, n: usize) -> Result<Rat, SeriesError> {
    if n == 0 || n > b.order() {
        return Err(SeriesError::Order {
            requested: n,
            available: b.order(),
        });
    }
    Ok(b.truncated(n).pow(n).coeff(n).clone())
}

/// The named generating functions of the chord-diagram classes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SeriesName {
    /// All rooted chord diagrams: D_n = (2n−1)!!.
    D,
    /// Connected diagrams.
    C,
    /// Nonempty indecomposable diagrams.
    I0,
    /// Indecomposable diagrams, I = 1 + I0.
    I,
    /// Indecomposable diagrams with exactly two components, I2 = C − x.
    I2,
    /// Diagrams with at most two components.
    Dle2,
    /// Pairs of connected-or-empty diagrams, A = (1+C)².
    A,
    /// Stacked-vertex trees, Z = x·D².
    Z,
}

impl SeriesName {
    pub const ALL: [SeriesName; 8] = [
        SeriesName::D,
        SeriesName::C,
        SeriesName::I0,
        SeriesName::I,
        SeriesName::I2,
        SeriesName::Dle2,
        SeriesName::A,
        SeriesName::Z,
    ];
}

impl FromStr for SeriesName {
    type Err = SeriesError;
    fn from_str(s: &str) -> Result<Self, SeriesError> {
        match s {
            "D" => Ok(SeriesName::D),
            "C" => Ok(SeriesName::C),
            "I0" => Ok(SeriesName::I0),
            "I" => Ok(SeriesName::I),
            "I2" => Ok(SeriesName::I2),
            "Dle2" => Ok(SeriesName::Dle2),
            "A" => Ok(SeriesName::A),
            "Z" => Ok(SeriesName::Z),
            other => Err(SeriesError::Usage(other.to_owned())),
        }
    }
}

impl fmt::Display for SeriesName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            SeriesName::D => "D",
            SeriesName::C => "C",
            SeriesName::I0 => "I0",
            SeriesName::I => "I",
            SeriesName::I2 => "I2",
            SeriesName::Dle2 => "Dle2",
            SeriesName::A => "A",
            SeriesName::Z => "Z",
        };
        f.write_str(name)
    }
}

/// Connected-diagram counts C_0..C_max by the interval recurrence
/// C_1 = 1, C_n = Σ_{i=1}^{n−1} (2i−1) C_i C_{n−i}.
pub fn connected_counts(max: usize) -> Vec<BigInt> {
    let mut counts = vec![BigInt::zero(); max + 1];
    if max >= 1 {
        counts[1] = BigInt::one();
    }
    for n in 2..=max {
        let mut acc = BigInt::zero();
        for i in 1..n {
            acc += BigInt::from(2 * i as u64 - 1) * &counts[i] * &counts[n - i];
        }
        counts[n] = acc;
    }
    counts
}

/// Build a catalog series at the requested truncation order.
pub fn catalog_series(name: SeriesName, order: usize) -> PowerSeries {
    let from_ints = |values: Vec<BigInt>| {
        PowerSeries::from_coeffs(values.into_iter().map(Rat::from_integer).collect())
    };
    match name {
        SeriesName::D => from_ints((0..=order).map(double_factorial_odd).collect()),
        SeriesName::C => from_ints(connected_counts(order)),
        SeriesName::I0 => {
            let d = catalog_series(SeriesName::D, order);
            let one = PowerSeries::one(order);
            &one - &one.div(&d).expect("D has a unit constant term")
        }
        SeriesName::I => {
            &PowerSeries::one(order) + &catalog_series(SeriesName::I0, order)
        }
        SeriesName::I2 => {
            let c = catalog_series(SeriesName::C, order);
            if order == 0 {
                c
            } else {
                &c - &PowerSeries::x(order)
            }
        }
        SeriesName::A => {
            let unit_plus_c =
                &PowerSeries::one(order) + &catalog_series(SeriesName::C, order);
            &unit_plus_c * &unit_plus_c
        }
        SeriesName::Dle2 => {
            let a = catalog_series(SeriesName::A, order);
            if order == 0 {
                a
            } else {
                &a - &PowerSeries::x(order)
            }
        }
        SeriesName::Z => {
            let d = catalog_series(SeriesName::D, order);
            (&d * &d).shift_up(1).truncated(order)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat};

    fn series(values: &[i64]) -> PowerSeries {
        PowerSeries::from_ints(values)
    }

    #[test]
    fn binomial_square() {
        let a = series(&[1, 1]);
        assert_eq!(&a * &a, series(&[1, 2]));
        let a = series(&[1, 1, 0]);
        assert_eq!(&a * &a, series(&[1, 2, 1]));
    }

    #[test]
    fn mixed_orders_truncate_to_minimum() {
        let a = series(&[1, 2, 3, 4]);
        let b = series(&[1, 1]);
        assert_eq!((&a + &b).order(), 1);
        assert_eq!(&a * &b, series(&[1, 3]));
    }

    #[test]
    fn diagrams_are_lists_of_indecomposables() {
        // D · (1 − I0) = 1 through order 10.
        let d = catalog_series(SeriesName::D, 10);
        let i0 = catalog_series(SeriesName::I0, 10);
        let product = &d * &(&PowerSeries::one(10) - &i0);
        assert_eq!(product, PowerSeries::one(10));
    }

    #[test]
    fn reciprocal_of_d() {
        // 1/D = 1 − x − 2x² − 10x³ − 74x⁴ − 706x⁵.
        let d = catalog_series(SeriesName::D, 5);
        let inv = PowerSeries::one(5).div(&d).unwrap();
        assert_eq!(inv, series(&[1, -1, -2, -10, -74, -706]));
    }

    #[test]
    fn division_by_nonunit_fails() {
        let x = PowerSeries::x(3);
        assert_eq!(
            PowerSeries::one(3).div(&x).unwrap_err(),
            SeriesError::Division
        );
    }

    #[test]
    fn derivative_basics() {
        assert_eq!(series(&[1, 1, 1]).derivative().unwrap(), series(&[1, 2]));
        assert_eq!(
            series(&[7]).derivative().unwrap_err(),
            SeriesError::Order {
                requested: 1,
                available: 0
            }
        );
        // derive(C) = 1, 2, 12, 108, 1240.
        let c = catalog_series(SeriesName::C, 5);
        assert_eq!(c.derivative().unwrap(), series(&[1, 2, 12, 108, 1240]));
    }

    #[test]
    fn composition_basics() {
        // (x²) ∘ (x + x²) = x² + 2x³ + x⁴.
        let outer = PowerSeries::monomial(2, int(1), 4);
        let inner = series(&[0, 1, 1, 0, 0]);
        assert_eq!(outer.compose(&inner).unwrap(), series(&[0, 0, 1, 2, 1]));
        // geometric: (x/(1−x)) ∘ x = x + x² + x³ + ...
        let geom = PowerSeries::x(6).div(&series(&[1, -1, 0, 0, 0, 0, 0])).unwrap();
        assert_eq!(geom.compose(&PowerSeries::x(6)).unwrap(), geom);
        // nonzero inner constant term is rejected.
        assert_eq!(
            outer.compose(&PowerSeries::one(4)).unwrap_err(),
            SeriesError::Composition
        );
    }

    #[test]
    fn exp_and_log_basics() {
        let e = PowerSeries::x(3).exp().unwrap();
        assert_eq!(
            e,
            PowerSeries::from_coeffs(vec![int(1), int(1), rat(1, 2), rat(1, 6)])
        );
        let l = series(&[1, 1, 0, 0]).log().unwrap();
        assert_eq!(
            l,
            PowerSeries::from_coeffs(vec![int(0), int(1), rat(-1, 2), rat(1, 3)])
        );
        assert!(PowerSeries::one(3).exp().is_err());
        assert!(PowerSeries::x(3).log().is_err());
    }

    #[test]
    fn shifted_alien_exponent_is_admissible() {
        // (A−1)/(2x) − 1 has a zero constant term, so the exponential in
        // the alien series is defined; its exp has unit constant term.
        let a = catalog_series(SeriesName::A, 8);
        let shifted = (&a - &PowerSeries::one(8))
            .shift_down(1)
            .unwrap()
            .scale(&rat(1, 2));
        assert!(shifted.coeff(0).is_one());
        let argument = &PowerSeries::one(7) - &shifted;
        let exp = argument.exp().unwrap();
        assert!(exp.coeff(0).is_one());
    }

    #[test]
    fn lagrange_coefficients() {
        let a = catalog_series(SeriesName::A, 4);
        assert_eq!(lagrange_power_coeff(&a, 1).unwrap(), int(2));
        assert_eq!(lagrange_power_coeff(&a, 3).unwrap(), int(74));
        let one = PowerSeries::one(5);
        for n in 1..=5 {
            assert_eq!(lagrange_power_coeff(&one, n).unwrap(), int(0));
        }
        assert!(matches!(
            lagrange_power_coeff(&a, 9),
            Err(SeriesError::Order { .. })
        ));
    }

    #[test]
    fn catalog_matches_printed_values() {
        assert_eq!(
            catalog_series(SeriesName::C, 5),
            series(&[0, 1, 1, 4, 27, 248])
        );
        assert_eq!(
            catalog_series(SeriesName::I, 5),
            series(&[1, 1, 2, 10, 74, 706])
        );
        assert_eq!(
            catalog_series(SeriesName::A, 7),
            series(&[1, 2, 3, 10, 63, 558, 6226, 82836])
        );
        assert_eq!(
            catalog_series(SeriesName::Z, 5),
            series(&[0, 1, 2, 7, 36, 249])
        );
        assert_eq!(catalog_series(SeriesName::D, 0), series(&[1]));
    }

    #[test]
    fn display_rendering() {
        assert_eq!(
            catalog_series(SeriesName::C, 5).to_string(),
            "x + x^2 + 4x^3 + 27x^4 + 248x^5"
        );
        assert_eq!(catalog_series(SeriesName::D, 0).to_string(), "1");
        assert_eq!(PowerSeries::zero(4).to_string(), "0");
        assert_eq!(
            PowerSeries::from_coeffs(vec![int(1), rat(-5, 2), rat(-43, 8)]).to_string(),
            "1 - 5/2x - 43/8x^2"
        );
    }

    #[test]
    fn json_round_trip() {
        let r = PowerSeries::from_coeffs(vec![int(1), rat(-5, 2), rat(-43, 8)]);
        let json = serde_json::to_string(&r).unwrap();
        assert_eq!(json, r#"{"order":2,"coeffs":["1","-5/2","-43/8"]}"#);
        let back: PowerSeries = serde_json::from_str(&json).unwrap();
        assert_eq!(back, r);
        assert!(serde_json::from_str::<PowerSeries>(r#"{"order":3,"coeffs":["1"]}"#).is_err());
    }

    #[test]
    fn unknown_catalog_name() {
        assert_eq!(
            "Q".parse::<SeriesName>().unwrap_err(),
            SeriesError::Usage("Q".into())
        );
    }
}
