use std::io::Write;

use ratlp::{fmt_decimal, fmt_q, Q};
use serde::Serialize;

/// Where a command writes, and how.
pub struct Out<'a> {
    w: &'a mut dyn Write,
    pub json: bool,
    pub decimals: Option<usize>,
}

impl<'a> Out<'a> {
    pub fn new(w: &'a mut dyn Write, json: bool, decimals: Option<usize>) -> Self {
        Out { w, json, decimals }
    }

    /// `num/den`, followed by the rounded decimal when requested.
    pub fn q(&self, v: &Q) -> String {
        match self.decimals {
            Some(k) => format!("{} ({})", fmt_q(v), fmt_decimal(v, k)),
            None => fmt_q(v),
        }
    }

    /// The rounded decimal alone, for the optional JSON column.
    pub fn approx(&self, v: &Q) -> Option<String> {
        self.decimals.map(|k| fmt_decimal(v, k))
    }

    pub fn line(&mut self, s: impl AsRef<str>) -> anyhow::Result<()> {
        writeln!(self.w, "{}", s.as_ref())?;
        Ok(())
    }

    pub fn emit_json<T: Serialize>(&mut self, v: &T) -> anyhow::Result<()> {
        let s = serde_json::to_string_pretty(v)?;
        writeln!(self.w, "{s}")?;
        Ok(())
    }
}
