//! JSON file formats for groups and finite group actions.

use std::path::Path;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::group::{max_order, FiniteGroup, GSet, Perm};

/// `{"degree": d, "generators": [[images...], ...]}`
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupFile {
    pub degree: usize,
    pub generators: Vec<Vec<usize>>,
}

/// `{"points": k, "generator_action": [[images...], ...]}`
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GSetFile {
    pub points: usize,
    pub generator_action: Vec<Vec<usize>>,
}

impl GroupFile {
    pub fn of(group: &FiniteGroup) -> Self {
        GroupFile {
            degree: group.degree(),
            generators: group.generators().iter().map(Perm::images).collect(),
        }
    }
}

impl GSetFile {
    pub fn of(x: &GSet) -> Self {
        GSetFile {
            points: x.points(),
            generator_action: x.generator_action().iter().map(Perm::images).collect(),
        }
    }
}

fn field<'a>(obj: &'a Value, name: &str) -> Result<&'a Value> {
    obj.as_object()
        .ok_or_else(|| Error::input("<root>", "expected a JSON object"))?
        .get(name)
        .ok_or_else(|| Error::input(name, "missing"))
}

fn count(v: &Value, name: &str) -> Result<usize> {
    v.as_u64()
        .map(|x| x as usize)
        .ok_or_else(|| Error::input(name, "expected a nonnegative integer"))
}

fn perm_list(v: &Value, name: &str, degree: usize) -> Result<Vec<Perm>> {
    let arr = v
        .as_array()
        .ok_or_else(|| Error::input(name, "expected an array of image arrays"))?;
    arr.iter()
        .enumerate()
        .map(|(i, p)| {
            let here = format!("{name}[{i}]");
            let images = p
                .as_array()
                .ok_or_else(|| Error::input(&here, "expected an array of point indices"))?
                .iter()
                .map(|x| count(x, &here))
                .collect::<Result<Vec<usize>>>()?;
            if images.len() != degree {
                return Err(Error::input(
                    &here,
                    format!("has length {}, expected {degree}", images.len()),
                ));
            }
            Perm::from_images(images).map_err(|_| Error::input(&here, "is not a permutation"))
        })
        .collect()
}

pub fn parse_group(text: &str) -> Result<FiniteGroup> {
    let v: Value = serde_json::from_str(text).map_err(|e| Error::input("<root>", e.to_string()))?;
    let degree = count(field(&v, "degree")?, "degree")?;
    if degree == 0 {
        return Err(Error::input("degree", "must be at least 1"));
    }
    let gens = perm_list(field(&v, "generators")?, "generators", degree)?;
    FiniteGroup::from_generators_capped(degree, gens, max_order())
}

pub fn parse_gset(text: &str, group: Arc<FiniteGroup>) -> Result<GSet> {
    let v: Value = serde_json::from_str(text).map_err(|e| Error::input("<root>", e.to_string()))?;
    let points = count(field(&v, "points")?, "points")?;
    let actions = perm_list(field(&v, "generator_action")?, "generator_action", points)?;
    if actions.len() != group.generators().len() {
        return Err(Error::input(
            "generator_action",
            format!(
                "{} actions given for {} group generators",
                actions.len(),
                group.generators().len()
            ),
        ));
    }
    GSet::new(group, points, actions).map_err(|e| match e {
        Error::InvalidAction(m) => Error::input("generator_action", m),
        other => other,
    })
}

pub fn read_group(path: &Path) -> Result<FiniteGroup> {
    parse_group(&std::fs::read_to_string(path)?)
}

pub fn read_gset(path: &Path, group: Arc<FiniteGroup>) -> Result<GSet> {
    parse_gset(&std::fs::read_to_string(path)?, group)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_s3() {
        let g = parse_group(r#"{"degree": 3, "generators": [[1,0,2],[1,2,0]]}"#).unwrap();
        assert_eq!(g.order(), 6);
        let g = Arc::new(g);
        let x = parse_gset(r#"{"points": 1, "generator_action": [[0],[0]]}"#, g.clone()).unwrap();
        assert_eq!(x.orbit_count(), 1);
        assert_eq!(GroupFile::of(&g).generators.len(), 2);
    }

    fn field_of(e: Error) -> String {
        match e {
            Error::Input { field, .. } => field,
            other => panic!("unexpected error {other}"),
        }
    }

    #[test]
    fn errors_name_the_field() {
        assert_eq!(
            field_of(parse_group(r#"{"generators": []}"#).unwrap_err()),
            "degree"
        );
        assert_eq!(
            field_of(parse_group(r#"{"degree": 3, "generators": [[0,1,2],[0,0,1]]}"#).unwrap_err()),
            "generators[1]"
        );
        assert_eq!(
            field_of(parse_group(r#"{"degree": 2, "generators": [[0,1,2]]}"#).unwrap_err()),
            "generators[0]"
        );
        let g = Arc::new(parse_group(r#"{"degree": 2, "generators": [[1,0]]}"#).unwrap());
        assert_eq!(
            field_of(
                parse_gset(r#"{"points": 2, "generator_action": []}"#, g.clone()).unwrap_err()
            ),
            "generator_action"
        );
        // a 3-cycle cannot represent an involution
        assert_eq!(
            field_of(parse_gset(r#"{"points": 3, "generator_action": [[1,2,0]]}"#, g).unwrap_err()),
            "generator_action"
        );
    }
}
