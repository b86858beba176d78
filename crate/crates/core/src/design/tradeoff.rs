use serde::{Deserialize, Serialize};

use super::evaluate_design;
use crate::error::{Error, Result};
use crate::filter::FilterConfig;
use crate::parallel::Workers;
use crate::spectrum::GridSpec;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TradeoffPoint {
    pub field_t: f64,
    pub t_max: Option<f64>,
    pub bandwidth_ghz: Option<f64>,
    pub error: Option<String>,
}

/// Peak transmission and bandwidth at each field, in the given order.
pub fn tradeoff_curve(
    template: &FilterConfig,
    fields_t: &[f64],
    length_mm: f64,
    grid: &GridSpec,
    workers: Workers,
) -> Result<Vec<TradeoffPoint>> {
    if fields_t.len() < 2 {
        return Err(Error::param("fields_t", "need at least 2 field samples"));
    }
    Ok(workers.map(fields_t, |&b| {
        match evaluate_design(template, b, length_mm, grid, Workers::single()) {
            Ok(fom) => TradeoffPoint {
                field_t: b,
                t_max: Some(fom.t_max),
                bandwidth_ghz: Some(fom.bandwidth_ghz),
                error: None,
            },
            Err(e) => TradeoffPoint {
                field_t: b,
                t_max: None,
                bandwidth_ghz: None,
                error: Some(e.to_string()),
            },
        }
    }))
}
