//! Calendar dates as they appear in datasheets.
//!
//! Accepted forms are `YYYY`, `YYYY-MM` and `YYYY-MM-DD`. Partial dates
//! normalize to the first day of the period they name.

use chrono::{Datelike, NaiveDate};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("`{0}` is not a date (expected YYYY, YYYY-MM or YYYY-MM-DD)")]
pub struct DateError(pub String);

pub fn parse_date(s: &str) -> Result<NaiveDate, DateError> {
    let err = || DateError(s.to_string());
    let parts: Vec<&str> = s.split('-').collect();
    let expected_widths = [4, 2, 2];
    if parts.is_empty() || parts.len() > 3 {
        return Err(err());
    }
    let mut nums = [1u32; 3];
    for (i, part) in parts.iter().enumerate() {
        if part.len() != expected_widths[i] || !part.bytes().all(|b| b.is_ascii_digit()) {
            return Err(err());
        }
        nums[i] = part.parse().map_err(|_| err())?;
    }
    NaiveDate::from_ymd_opt(nums[0] as i32, nums[1], nums[2]).ok_or_else(err)
}

/// Normalized `YYYY-MM-DD` form.
pub fn format_date(d: NaiveDate) -> String {
    format!("{:04}-{:02}-{:02}", d.year(), d.month(), d.day())
}
