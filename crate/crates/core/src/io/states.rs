use num_complex::Complex64;
use serde_json::Value;

use crate::error::{Error, Result};
use crate::state::{normalize, PureState, StateEnsemble};

fn amplitude(value: &Value, at: &str) -> Result<Complex64> {
    let part = |v: &Value, which: &str| {
        v.as_f64()
            .ok_or_else(|| Error::parse(format!("{at}{which}"), "expected a number"))
    };
    match value {
        Value::Number(_) => Ok(Complex64::new(part(value, "")?, 0.0)),
        Value::Array(pair) if pair.len() == 2 => Ok(Complex64::new(part(&pair[0], "[0]")?, part(&pair[1], "[1]")?)),
        _ => Err(Error::parse(at, "expected a real number or an [re, im] pair")),
    }
}

/// Parses `{"width": w, "states": [[...], ...]}`. Amplitudes are plain reals or
/// `[re, im]` pairs. With `normalize` set, each vector is rescaled instead of
/// being checked against the norm tolerance.
pub fn parse_states(text: &str, normalize_input: bool) -> Result<StateEnsemble> {
    let doc: Value = serde_json::from_str(text).map_err(|e| {
        Error::parse(format!("line {} column {}", e.line(), e.column()), e.to_string())
    })?;
    let obj = doc
        .as_object()
        .ok_or_else(|| Error::parse("document", "expected a JSON object"))?;
    let width = obj
        .get("width")
        .ok_or_else(|| Error::parse("width", "missing field"))?
        .as_u64()
        .filter(|&w| w >= 1)
        .ok_or_else(|| Error::parse("width", "expected a positive integer"))? as usize;
    let list = obj
        .get("states")
        .ok_or_else(|| Error::parse("states", "missing field"))?
        .as_array()
        .ok_or_else(|| Error::parse("states", "expected an array of states"))?;

    let mut states = Vec::with_capacity(list.len());
    for (i, raw) in list.iter().enumerate() {
        let at = format!("states[{i}]");
        let values = raw
            .as_array()
            .ok_or_else(|| Error::parse(at.as_str(), "expected an array of amplitudes"))?;
        if values.len() != 1 << width {
            return Err(Error::parse(
                at,
                format!("expected {} amplitudes for width {width}, found {}", 1 << width, values.len()),
            ));
        }
        let amps = values
            .iter()
            .enumerate()
            .map(|(k, v)| amplitude(v, &format!("{at}[{k}]")))
            .collect::<Result<Vec<_>>>()?;
        let state = if normalize_input { normalize(amps) } else { PureState::new(amps) };
        states.push(state.map_err(|e| Error::parse(at, e.to_string()))?);
    }
    StateEnsemble::new(states)
}

/// Serializes an ensemble as `[re, im]` pairs.
pub fn write_states(ensemble: &StateEnsemble) -> String {
    let states: Vec<Vec<[f64; 2]>> = ensemble
        .states()
        .iter()
        .map(|s| s.amplitudes().iter().map(|a| [a.re, a.im]).collect())
        .collect();
    serde_json::json!({ "width": ensemble.width(), "states": states }).to_string()
}
