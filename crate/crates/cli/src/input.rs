use std::collections::BTreeMap;
use std::fs;
use std::io::{self, Read};

use twisted_roots::picard::BundleData;
use twisted_roots::{DualGraph, LineBundle};

use crate::CliError;

/// Reads a file, or standard input when `path` is `-`.
pub fn read_source(path: &str) -> Result<String, CliError> {
    let text = if path == "-" {
        let mut s = String::new();
        io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| CliError::Io(path.to_string(), e))?;
        s
    } else {
        fs::read_to_string(path).map_err(|e| CliError::Io(path.to_string(), e))?
    };
    Ok(text)
}

pub fn parse_graph(path: &str) -> Result<DualGraph, CliError> {
    let text = read_source(path)?;
    serde_json::from_str(&text).map_err(|e| CliError::Parse(path.to_string(), e))
}

/// Bundle from either a builder string or a JSON file.
pub fn load_bundle<'g>(
    graph: &'g DualGraph,
    spec: Option<&str>,
    file: Option<&str>,
) -> Result<LineBundle<'g>, CliError> {
    match (spec, file) {
        (Some(spec), None) => {
            let (k, h) = parse_omega(spec)?;
            Ok(LineBundle::omega_twisted(graph, k, &h)?)
        }
        (None, Some(path)) => {
            let text = read_source(path)?;
            let data: BundleData =
                serde_json::from_str(&text).map_err(|e| CliError::Parse(path.to_string(), e))?;
            Ok(LineBundle::from_data(graph, &data)?)
        }
        (None, None) => Ok(LineBundle::trivial(graph)),
        (Some(_), Some(_)) => Err(CliError::Usage(
            "--bundle and --bundle-file are mutually exclusive".into(),
        )),
    }
}

/// Parses `omega:k=K[,h=ID:VAL,...]`.
pub fn parse_omega(spec: &str) -> Result<(i64, BTreeMap<u32, i64>), CliError> {
    let bad = || CliError::Usage(format!("bad bundle `{spec}`, expected omega:k=K[,h=ID:VAL,...]"));
    let rest = spec.strip_prefix("omega:").ok_or_else(bad)?;
    let mut k = None;
    let mut h = BTreeMap::new();
    for part in rest.split(',') {
        if let Some(v) = part.strip_prefix("k=") {
            if k.replace(v.parse::<i64>().map_err(|_| bad())?).is_some() {
                return Err(bad());
            }
        } else if let Some(v) = part.strip_prefix("h=") {
            let (id, val) = v.split_once(':').ok_or_else(bad)?;
            let id = id.parse::<u32>().map_err(|_| bad())?;
            let val = val.parse::<i64>().map_err(|_| bad())?;
            if h.insert(id, val).is_some() {
                return Err(bad());
            }
        } else {
            return Err(bad());
        }
    }
    Ok((k.ok_or_else(bad)?, h))
}

/// Comma-separated list of integers.
pub fn parse_list<T: std::str::FromStr>(s: &str) -> Result<Vec<T>, String> {
    if s.trim().is_empty() {
        return Ok(Vec::new());
    }
    s.split(',')
        .map(|x| x.trim().parse::<T>().map_err(|_| format!("`{x}` is not a valid number")))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn omega_builder() {
        assert_eq!(parse_omega("omega:k=1").unwrap(), (1, BTreeMap::new()));
        assert_eq!(
            parse_omega("omega:k=-2,h=1:3,h=4:-1").unwrap(),
            (-2, BTreeMap::from([(1, 3), (4, -1)]))
        );
        for bad in ["omega", "omega:", "omega:h=1:2", "omega:k=1,k=2", "theta:k=1", "omega:k=1,h=1"] {
            assert!(parse_omega(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn lists() {
        assert_eq!(parse_list::<u64>("1,2, 3").unwrap(), vec![1, 2, 3]);
        assert!(parse_list::<u64>("1,x").is_err());
        assert_eq!(parse_list::<u64>("").unwrap(), Vec::<u64>::new());
    }
}
