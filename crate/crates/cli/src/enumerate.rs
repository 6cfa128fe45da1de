use serde_json::{json, Value};

use strickland_lab::abelian::{enumerate_subgroups, QzSubgroup};
use strickland_lab::actions::{enumerate_action_classes_filtered, OrderFilter};
use strickland_lab::divisors::enumerate_components;

use crate::checks::{get_group, get_u64, CliError};
use crate::report::Params;

/// One record per enumerated object; `label` is the human readable form.
pub fn run_enumeration(what: &str, params: &Params) -> Result<Vec<Value>, CliError> {
    match what {
        "classes" => classes(params),
        "subgroups" => subgroups(params),
        "components" => components(params),
        other => Err(CliError::Config(format!("unknown enumeration {other:?}"))),
    }
}

fn classes(params: &Params) -> Result<Vec<Value>, CliError> {
    let a = get_group(params)?;
    let h = get_u64(params, "h")? as usize;
    let n = get_u64(params, "n")? as usize;
    let filter = match params.get("p") {
        Some(_) => OrderFilter::PrimePower(get_u64(params, "p")?),
        None => OrderFilter::All,
    };
    Ok(enumerate_action_classes_filtered(&a, h, n, filter)
        .into_iter()
        .map(|c| {
            json!({
                "label": c.to_string(),
                "orbits": c.orbit_count(),
                "centralizer": c.centralizer_shape().to_string(),
                "centralizer_order": c.centralizer_shape().order().to_string(),
                "survives_transfer": c.survives_transfer(),
            })
        })
        .collect())
}

/// Subgroups of `A` of a given order, or with `--h`, subgroups of
/// `(Q/Z)^h` of order `--m`.
fn subgroups(params: &Params) -> Result<Vec<Value>, CliError> {
    if params.contains_key("A") {
        let a = get_group(params)?;
        let order = get_u64(params, "m")?;
        return Ok(enumerate_subgroups(&a, order)
            .into_iter()
            .map(|s| {
                json!({
                    "label": format!("<{}>", s.generators().iter().map(|g| format!("{g:?}")).collect::<Vec<_>>().join(", ")),
                    "order": s.order(),
                    "iso_type": s.iso_type().to_string(),
                })
            })
            .collect());
    }
    let h = get_u64(params, "h")? as usize;
    let m = get_u64(params, "m")?;
    Ok(QzSubgroup::all_of_order(h, m)
        .into_iter()
        .map(|s| {
            json!({
                "label": s.to_string(),
                "order": s.order(),
                "iso_type": s.iso_type().to_string(),
            })
        })
        .collect())
}

fn components(params: &Params) -> Result<Vec<Value>, CliError> {
    let m = get_u64(params, "m")? as usize;
    let k = get_u64(params, "k")? as u32;
    let h = get_u64(params, "h")? as usize;
    let p = get_u64(params, "p")?;
    Ok(enumerate_components(m, k, h, p)?
        .into_iter()
        .map(|c| json!({ "label": c.to_string(), "size": c.size() }))
        .collect())
}
