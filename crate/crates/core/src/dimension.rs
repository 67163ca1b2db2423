//! Minkowski dimension and area of the prefractals.
//!
//! The depth-`n` prefractal is a union of `l^n` squares of side `m^-n`, where
//! `l` is the lattice cardinality, so `log N(eps) / log(1/eps)` is the same
//! number at every depth. The estimate below is computed from an actually
//! generated prefractal rather than from `l^n`.

use crate::error::{Error, Result};
use crate::fractal::{cardinality, generate};
use crate::radix::{DigitSystem, Rational};
use num_bigint::BigInt;

/// `log(m(m+1)/2 + b(m-1-b)) / log m`.
pub fn closed_form_dim(m: i64, b: i64) -> Result<f64> {
    let sys = DigitSystem::new(m, b)?;
    Ok(closed_form(sys))
}

fn closed_form(sys: DigitSystem) -> f64 {
    (cardinality(sys) as f64).ln() / (sys.radix() as f64).ln()
}

/// Box count of a depth-`n` prefractal on the `m^-n` grid.
#[derive(Debug, Clone, PartialEq)]
pub struct DimensionReport {
    pub m: i64,
    pub b: i64,
    pub depth: u32,
    pub box_count: u64,
    pub estimate: f64,
    pub closed_form: f64,
    pub abs_error: f64,
}

impl DimensionReport {
    /// One JSON object, fields in declaration order, reals with 12
    /// significant digits.
    pub fn to_json_line(&self) -> String {
        format!(
            r#"{{"m":{},"b":{},"depth":{},"box_count":{},"estimate":{},"closed_form":{},"abs_error":{}}}"#,
            self.m,
            self.b,
            self.depth,
            self.box_count,
            format_sig(self.estimate, 12),
            format_sig(self.closed_form, 12),
            format_sig(self.abs_error, 12),
        )
    }
}

/// Formats a finite float with `digits` significant digits as a JSON number.
pub fn format_sig(value: f64, digits: usize) -> String {
    assert!(value.is_finite() && digits > 0);
    if value == 0.0 {
        return "0".to_string();
    }
    let sci = format!("{:.*e}", digits - 1, value);
    let (mantissa, exp) = sci.split_once('e').expect("scientific format");
    let exp: i32 = exp.parse().expect("integer exponent");
    if (-5..15).contains(&exp) {
        let decimals = (digits as i32 - 1 - exp).max(0) as usize;
        format!("{value:.decimals$}")
    } else {
        format!("{mantissa}e{exp}")
    }
}

/// Generates the depth-`n` prefractal and turns its square count into a
/// dimension estimate at `eps = m^-n`.
pub fn box_count_estimate(
    system: DigitSystem,
    depth: u32,
    max_squares: u64,
) -> Result<DimensionReport> {
    if depth == 0 {
        return Err(Error::InvalidArgument(
            "box counting needs depth >= 1".into(),
        ));
    }
    let count = generate(system, depth, max_squares)?.len() as u64;
    let estimate = (count as f64).ln() / (depth as f64 * (system.radix() as f64).ln());
    let closed_form = closed_form(system);
    Ok(DimensionReport {
        m: system.radix(),
        b: system.balance(),
        depth,
        box_count: count,
        estimate,
        closed_form,
        abs_error: (estimate - closed_form).abs(),
    })
}

/// Exact area `l^n / m^(2n)` of the depth-`n` prefractal.
pub fn lebesgue_measure(system: DigitSystem, depth: u32) -> Rational {
    let count = BigInt::from(cardinality(system)).pow(depth);
    let cell = BigInt::from(system.radix()).pow(2 * depth);
    Rational::new(count, cell)
}

/// Closed-form dimensions for a fixed balance across several radices.
pub fn dim_limit_table(b: i64, m_values: &[i64]) -> Result<Vec<(i64, f64)>> {
    m_values
        .iter()
        .map(|&m| closed_form_dim(m, b).map(|d| (m, d)))
        .collect()
}
