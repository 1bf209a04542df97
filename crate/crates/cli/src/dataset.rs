// Copyright 2026 The stored-light Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

//! Tabular results and their CSV encoding.

use std::io::Write;

use crate::error::CliError;

/// Significant digits written for every number.
pub const SIGNIFICANT_DIGITS: usize = 12;

/// `printf("%.12g")`: shortest of fixed or exponent notation at twelve
/// significant digits, trailing zeros removed. Negative zero prints as `0`.
pub fn format_number(x: f64) -> String {
    if x == 0.0 {
        return "0".into();
    }
    if !x.is_finite() {
        return format!("{x}");
    }
    let sci = format!("{:.*e}", SIGNIFICANT_DIGITS - 1, x);
    let (mantissa, exp) = sci.split_once('e').expect("exponent form");
    let exp: i32 = exp.parse().expect("integer exponent");
    if exp < -4 || exp >= SIGNIFICANT_DIGITS as i32 {
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{}e{}{:02}", trim_fraction(mantissa), sign, exp.abs())
    } else {
        let decimals = (SIGNIFICANT_DIGITS as i32 - 1 - exp) as usize;
        trim_fraction(&format!("{x:.decimals$}")).to_string()
    }
}

fn trim_fraction(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

/// A header row naming the swept axes and the computed quantities, followed
/// by one row per grid point.
#[derive(Debug, Clone, PartialEq)]
pub struct Dataset {
    header: Vec<String>,
    rows: Vec<Vec<f64>>,
}

impl Dataset {
    pub fn new(header: Vec<String>, rows: Vec<Vec<f64>>) -> Self {
        debug_assert!(rows.iter().all(|r| r.len() == header.len()));
        Self { header, rows }
    }

    pub fn header(&self) -> &[String] {
        &self.header
    }

    pub fn rows(&self) -> &[Vec<f64>] {
        &self.rows
    }

    pub fn column_index(&self, name: &str) -> Option<usize> {
        self.header.iter().position(|h| h == name)
    }

    pub fn column(&self, name: &str) -> Option<Vec<f64>> {
        let i = self.column_index(name)?;
        Some(self.rows.iter().map(|r| r[i]).collect())
    }

    pub fn write_csv<W: Write>(&self, out: W) -> Result<(), CliError> {
        let mut w = csv::WriterBuilder::new()
            .delimiter(b',')
            .terminator(csv::Terminator::Any(b'\n'))
            .from_writer(out);
        w.write_record(&self.header)?;
        for row in &self.rows {
            w.write_record(row.iter().map(|&x| format_number(x)))?;
        }
        w.flush().map_err(|source| CliError::Io {
            path: "<csv>".into(),
            source,
        })?;
        Ok(())
    }

    pub fn to_csv_string(&self) -> String {
        let mut buf = Vec::new();
        self.write_csv(&mut buf).expect("writing to memory");
        String::from_utf8(buf).expect("ascii output")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn matches_printf_g() {
        let cases = [
            (1.0, "1"),
            (0.5, "0.5"),
            (-0.0, "0"),
            (std::f64::consts::PI, "3.14159265359"),
            (1.0 / 3.0, "0.333333333333"),
            (123456789012.0, "123456789012"),
            (1234567890123.0, "1.23456789012e+12"),
            (0.0001, "0.0001"),
            (0.00001234, "1.234e-05"),
            (9.9999999999995, "10"),
            (-2.5e-300, "-2.5e-300"),
            (1e100, "1e+100"),
        ];
        for (x, want) in cases {
            assert_eq!(format_number(x), want, "{x:e}");
        }
    }

    #[test]
    fn csv_layout() {
        let d = Dataset::new(
            vec!["phi1".into(), "p1".into()],
            vec![vec![0.0, 1.0], vec![0.25, 0.75]],
        );
        assert_eq!(d.to_csv_string(), "phi1,p1\n0,1\n0.25,0.75\n");
        assert_eq!(d.column("p1").unwrap(), vec![1.0, 0.75]);
        assert!(d.column("p2").is_none());
    }
}
