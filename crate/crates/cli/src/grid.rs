//! Grid files: a `[limits]` table and a list of `[[check]]` tables whose
//! array-valued keys are expanded as a cartesian product.

use serde::Deserialize;
use serde_json::Value;

use crate::checks::{CliError, Limits, CHECKS};
use crate::report::Params;

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct GridFile {
    #[serde(default)]
    limits: LimitsTable,
    #[serde(default)]
    check: Vec<toml::Table>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct LimitsTable {
    max_order: Option<u64>,
    max_degree: Option<usize>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Job {
    pub check: String,
    pub params: Params,
}

pub struct Grid {
    pub limits: Limits,
    pub jobs: Vec<Job>,
}

pub fn parse_grid(text: &str, base: Limits) -> Result<Grid, CliError> {
    let file: GridFile =
        toml::from_str(text).map_err(|e| CliError::Config(format!("grid file: {e}")))?;
    let limits = Limits {
        max_order: file.limits.max_order.map_or(base.max_order, u128::from),
        max_degree: file.limits.max_degree.unwrap_or(base.max_degree),
    };
    let mut jobs = Vec::new();
    for (i, table) in file.check.into_iter().enumerate() {
        let name = match table.get("name") {
            Some(toml::Value::String(s)) => s.clone(),
            _ => return Err(CliError::Config(format!("check #{} has no name", i + 1))),
        };
        if !CHECKS.contains(&name.as_str()) {
            return Err(CliError::Config(format!("unknown check {name:?}")));
        }
        let mut axes: Vec<(String, Vec<Value>)> = Vec::new();
        for (key, value) in table.iter().filter(|(k, _)| k.as_str() != "name") {
            let values = match value {
                toml::Value::Array(items) => items.iter().map(to_json).collect::<Result<Vec<_>, _>>()?,
                scalar => vec![to_json(scalar)?],
            };
            if values.is_empty() {
                return Err(CliError::Config(format!("{name}: {key} is an empty list")));
            }
            axes.push((key.clone(), values));
        }
        let mut points: Vec<Params> = vec![Params::new()];
        for (key, values) in &axes {
            points = points
                .into_iter()
                .flat_map(|p| {
                    values.iter().map(move |v| {
                        let mut q = p.clone();
                        q.insert(key.clone(), v.clone());
                        q
                    })
                })
                .collect();
        }
        jobs.extend(points.into_iter().map(|params| Job {
            check: name.clone(),
            params,
        }));
    }
    Ok(Grid { limits, jobs })
}

fn to_json(v: &toml::Value) -> Result<Value, CliError> {
    match v {
        toml::Value::Integer(i) if *i >= 0 => Ok(Value::from(*i as u64)),
        toml::Value::String(s) => Ok(Value::String(s.clone())),
        toml::Value::Boolean(b) => Ok(Value::Bool(*b)),
        other => Err(CliError::Config(format!("unsupported grid value {other}"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn expands_products() {
        let grid = parse_grid(
            "[[check]]\nname = \"rank\"\np = [2, 3]\nk = 1\nd = [1, 2]\n",
            Limits::default(),
        )
        .unwrap();
        assert_eq!(grid.jobs.len(), 4);
        assert_eq!(grid.jobs[0].params["p"], Value::from(2u64));
        assert_eq!(grid.jobs[0].params["d"], Value::from(1u64));
        assert_eq!(grid.jobs[1].params["d"], Value::from(2u64));
    }

    #[test]
    fn rejects_bad_files() {
        assert!(parse_grid("[[check]]\nname = \"nope\"\n", Limits::default()).is_err());
        assert!(parse_grid("[[check]]\np = 2\n", Limits::default()).is_err());
        assert!(parse_grid("[limits]\nmax_order = -1\n", Limits::default()).is_err());
        assert!(parse_grid("bogus = 1\n", Limits::default()).is_err());
    }

    #[test]
    fn limits_override_defaults() {
        let grid = parse_grid("[limits]\nmax_degree = 6\n", Limits::default()).unwrap();
        assert_eq!(grid.limits.max_degree, 6);
        assert_eq!(grid.limits.max_order, 1_000_000);
    }
}
