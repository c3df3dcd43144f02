use std::fs;

use anyhow::{anyhow, bail, Context, Result};
use serde_json::Value;

use weildeco::arith::{RationalFunction, Ring};
use weildeco::decorations::{Element, Shape};
use weildeco::divisors::{PrimeDivisor, WeilDivisor};
use weildeco::hm::{UData, UInput};
use weildeco::toric::{builtin_fan, Fan, FanSpec};

/// Inline text, or the contents of a file when prefixed with `@`.
pub fn payload(src: &str) -> Result<String> {
    match src.strip_prefix('@') {
        Some(path) => fs::read_to_string(path).with_context(|| format!("reading {path}")),
        None => Ok(src.to_string()),
    }
}

pub fn fan(src: &str) -> Result<Fan> {
    if src.starts_with('@') || src.trim_start().starts_with('{') {
        let spec: FanSpec = serde_json::from_str(&payload(src)?).context("fan JSON")?;
        return Ok(Fan::new(&spec)?);
    }
    Ok(builtin_fan(src)?)
}

/// Variables used for elements on `fan`: Cox coordinates on projective
/// space, torus coordinates otherwise.
pub fn ring(fan: &Fan) -> Ring {
    if fan.is_projective_space() {
        Ring::cox(fan.nrays())
    } else {
        Ring::affine(fan.dim())
    }
}

pub fn u_matrix(fan: &Fan, src: &str) -> Result<Vec<Vec<i64>>> {
    match src.trim() {
        "classical" => {
            if !(fan.is_projective_space() && fan.dim() == 4) {
                bail!("`classical` is defined on P4 only");
            }
            Ok(UData::classical().matrix().to_vec())
        }
        "zero" => Ok(vec![vec![0; fan.nrays()]; fan.nrays()]),
        _ => {
            let v: Value = serde_json::from_str(&payload(src)?).context("u must be a JSON matrix")?;
            if v.is_object() {
                let input: UInput = serde_json::from_value(v)?;
                return Ok(UData::from_input(&input)?.matrix().to_vec());
            }
            Ok(serde_json::from_value(v).context("u must be a JSON matrix")?)
        }
    }
}

pub fn udata(fan: &Fan, src: &str) -> Result<UData> {
    Ok(UData::new(fan, u_matrix(fan, src)?)?)
}

pub fn prime(fan: &Fan, src: &str) -> Result<PrimeDivisor> {
    Ok(PrimeDivisor::parse(src, fan)?)
}

/// Toric primes plus any extra hypersurfaces given on the command line.
pub fn primes(fan: &Fan, extra: &[String]) -> Result<Vec<PrimeDivisor>> {
    let mut v = fan.toric_primes();
    for s in extra {
        v.push(prime(fan, s)?);
    }
    Ok(v)
}

/// `{"H0": 2, "z0 + z1 + z2": -1}`.
pub fn divisor(fan: &Fan, src: &str) -> Result<WeilDivisor> {
    let v: Value = serde_json::from_str(&payload(src)?).context("divisor must be a JSON object")?;
    let obj = v.as_object().ok_or_else(|| anyhow!("divisor must be a JSON object"))?;
    let mut pairs = Vec::with_capacity(obj.len());
    for (k, c) in obj {
        let c = c.as_i64().ok_or_else(|| anyhow!("coefficient of {k} is not an integer"))?;
        pairs.push((prime(fan, k)?, c));
    }
    Ok(WeilDivisor::from_pairs(pairs))
}

/// `{"H0": "x2*x3"}`: the functions `h` of a seminorm decoration.
pub fn seminorm_targets(fan: &Fan, src: &str) -> Result<Vec<(PrimeDivisor, RationalFunction)>> {
    let v: Value = serde_json::from_str(&payload(src)?).context("targets must be a JSON object")?;
    let obj = v.as_object().ok_or_else(|| anyhow!("targets must be a JSON object"))?;
    let r = ring(fan);
    obj.iter()
        .map(|(k, h)| {
            let h = h.as_str().ok_or_else(|| anyhow!("target at {k} must be a string"))?;
            Ok((prime(fan, k)?, r.parse(h)?))
        })
        .collect()
}

pub fn element(fan: &Fan, shape: &Shape, src: &str) -> Result<Element> {
    let v: Value = serde_json::from_str(&payload(src)?).context("element must be a JSON string or array")?;
    let strings: Vec<String> = match v {
        Value::String(s) => vec![s],
        Value::Array(items) => items
            .into_iter()
            .map(|x| match x {
                Value::String(s) => Ok(s),
                Value::Number(n) => Ok(n.to_string()),
                other => Err(anyhow!("unexpected entry {other}")),
            })
            .collect::<Result<_>>()?,
        other => bail!("unexpected element {other}"),
    };
    let r = ring(fan);
    let flat = strings.iter().map(|s| r.parse(s)).collect::<weildeco::Result<Vec<_>>>()?;
    Ok(shape.unflatten(&flat)?)
}

