//! Built-in spaces addressable by label.
//!
//! | label | space |
//! |---|---|
//! | `point` | `{0}` |
//! | `interval_h<N>` | `{0, 1/N, ..., 1}` |
//! | `square_h<N>[_chebyshev]` | `{0, 1/N, ..., 1}^2` |
//! | `cube_h<N>[_chebyshev]` | `{0, 1/N, ..., 1}^3` |
//! | `cantor_<D>[_2adic]` | depth-`D` Cantor left endpoints |

use crate::error::{Error, Result};
use crate::rational::q;
use crate::space::{
    build_cantor_space_with_metric, build_grid_space, build_point_space, MetricKind, SampledSpace,
};

/// Labels listed by `--help` and exercised by the metric checks.
pub fn catalog() -> Vec<String> {
    let mut out = vec!["point".to_string()];
    for k in 3..=10 {
        out.push(format!("interval_h{}", 1 << k));
    }
    for k in 3..=6 {
        out.push(format!("square_h{}", 1 << k));
    }
    out.push("square_h64_chebyshev".into());
    out.push("cube_h8".into());
    for d in 1..=10 {
        out.push(format!("cantor_{d}"));
    }
    for d in [4, 8] {
        out.push(format!("cantor_{d}_2adic"));
    }
    out
}

fn bad(label: &str) -> Error {
    Error::InvalidInput(format!("unknown built-in space {label:?}"))
}

pub fn builtin(label: &str, point_cap: usize) -> Result<SampledSpace> {
    if label == "point" {
        return Ok(build_point_space());
    }
    if let Some(rest) = label.strip_prefix("cantor_") {
        let (depth, metric) = match rest.strip_suffix("_2adic") {
            Some(d) => (d, MetricKind::Cantor2adic),
            None => (rest, MetricKind::Euclidean),
        };
        let depth: u32 = depth.parse().map_err(|_| bad(label))?;
        return build_cantor_space_with_metric(depth, metric);
    }
    let (body, metric) = match label.strip_suffix("_chebyshev") {
        Some(b) => (b, MetricKind::Chebyshev),
        None => (label, MetricKind::Euclidean),
    };
    let (dim, steps) = match body.split_once("_h") {
        Some(("interval", n)) => (1, n),
        Some(("square", n)) => (2, n),
        Some(("cube", n)) => (3, n),
        _ => return Err(bad(label)),
    };
    let steps: i64 = steps.parse().map_err(|_| bad(label))?;
    if steps < 2 {
        return Err(bad(label));
    }
    build_grid_space(dim, &q(1, steps), metric, point_cap)
}
