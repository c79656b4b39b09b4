use std::io::Read;
use std::path::Path;

use anyhow::{bail, Context, Result};
use contour_core::grassmann::Arrangement;
use contour_core::presets::{generic_2_4, generic_3_6, nine_lines, split_2_4, split_heights};
use contour_core::subdivision::{HeightFunction, Subdivision, SubdivisionJson};
use serde::de::DeserializeOwned;

pub fn read_text(path: Option<&Path>) -> Result<String> {
    match path {
        Some(p) if p.as_os_str() != "-" => {
            std::fs::read_to_string(p).with_context(|| format!("reading {}", p.display()))
        }
        _ => {
            let mut s = String::new();
            std::io::stdin()
                .read_to_string(&mut s)
                .context("reading standard input")?;
            Ok(s)
        }
    }
}

pub fn parse<T: DeserializeOwned>(path: Option<&Path>) -> Result<T> {
    let text = read_text(path)?;
    let name = path.map_or("<stdin>".to_string(), |p| p.display().to_string());
    serde_json::from_str(&text).with_context(|| format!("parse error in {name}"))
}

/// `trivial-R-N` names the one-cell subdivision of Δ(R, N).
fn trivial_preset(name: &str) -> Option<(usize, usize)> {
    let rest = name.strip_prefix("trivial-")?;
    let (r, n) = rest.split_once('-')?;
    Some((r.parse().ok()?, n.parse().ok()?))
}

pub fn arrangement(path: Option<&Path>, preset: Option<&str>) -> Result<Arrangement> {
    match preset {
        Some("generic-2-4") => Ok(generic_2_4()),
        Some("generic-3-6") => Ok(generic_3_6()),
        Some("nine-lines-3-9") => Ok(nine_lines()),
        Some(p) => bail!("preset {p} is not an arrangement"),
        None => parse(path),
    }
}

pub fn subdivision(path: Option<&Path>, preset: Option<&str>) -> Result<Subdivision> {
    match preset {
        Some("split-2-4") => Ok(split_2_4()?),
        Some(p) => match trivial_preset(p) {
            Some((r, n)) => Ok(Subdivision::trivial_hypersimplex(r, n)?),
            None => bail!("preset {p} is not a subdivision"),
        },
        None => {
            let json: SubdivisionJson = parse(path)?;
            Ok(json.to_subdivision()?)
        }
    }
}

/// Heights with `(r, n)` taken from the preset or the flags.
pub fn heights(
    path: Option<&Path>,
    preset: Option<&str>,
    r: Option<usize>,
    n: Option<usize>,
) -> Result<(usize, usize, HeightFunction)> {
    match preset {
        Some("split-2-4") => Ok((2, 4, split_heights(2, 4, &[0, 1], 1))),
        Some(p) => bail!("preset {p} does not provide heights"),
        None => {
            let (Some(r), Some(n)) = (r, n) else {
                bail!("subdivide needs --r and --n with a heights file");
            };
            let map = parse(path)?;
            Ok((r, n, HeightFunction::from_keyed(r, n, &map)?))
        }
    }
}
