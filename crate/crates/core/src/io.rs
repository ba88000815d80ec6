//! JSON file formats for instances and matchings.
//!
//! Instance:
//!
//! ```json
//! {"residents":[{"name":"r1","prefs":[["h3"],["h1","h6"],["h4"]]}],
//!  "hospitals":[{"name":"h1","lower":1,"upper":2,"prefs":[["r1","r2"],["r3"]]}]}
//! ```
//!
//! Each inner array is one tie group; the outer order is preference order.
//! Matching: `{"pairs":[["r1","h1"], ...]}`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::instance::{Instance, InstanceBuilder, Matching};

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct InstanceFile {
    residents: Vec<ResidentEntry>,
    hospitals: Vec<HospitalEntry>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ResidentEntry {
    name: String,
    prefs: Vec<Vec<String>>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct HospitalEntry {
    name: String,
    lower: usize,
    upper: usize,
    prefs: Vec<Vec<String>>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct MatchingFile {
    pairs: Vec<(String, String)>,
}

fn malformed(e: serde_json::Error) -> Error {
    Error::MalformedInput {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    }
}

pub fn parse_instance(bytes: &[u8]) -> Result<Instance> {
    let file: InstanceFile = serde_json::from_slice(bytes).map_err(malformed)?;
    let mut builder = InstanceBuilder::new();
    for r in file.residents {
        builder.resident(r.name, r.prefs);
    }
    for h in file.hospitals {
        builder.hospital(h.name, h.lower, h.upper, h.prefs);
    }
    builder.build()
}

fn names(
    list: &crate::instance::PreferenceList,
    resolve: impl Fn(usize) -> String,
) -> Vec<Vec<String>> {
    list.groups()
        .iter()
        .map(|g| g.iter().map(|&a| resolve(a)).collect())
        .collect()
}

pub fn serialize_instance(instance: &Instance) -> Vec<u8> {
    let file = InstanceFile {
        residents: (0..instance.num_residents())
            .map(|r| ResidentEntry {
                name: instance.resident_name(r).to_string(),
                prefs: names(instance.resident_prefs(r), |h| {
                    instance.hospital_name(h).to_string()
                }),
            })
            .collect(),
        hospitals: (0..instance.num_hospitals())
            .map(|h| {
                let q = instance.quota(h);
                HospitalEntry {
                    name: instance.hospital_name(h).to_string(),
                    lower: q.lower,
                    upper: q.upper,
                    prefs: names(instance.hospital_prefs(h), |r| {
                        instance.resident_name(r).to_string()
                    }),
                }
            })
            .collect(),
    };
    let mut out = serde_json::to_vec_pretty(&file).expect("instance serializes");
    out.push(b'\n');
    out
}

/// Parses a matching file against `instance`'s names. Acceptability and
/// capacities are left to the verifier.
pub fn parse_matching(instance: &Instance, bytes: &[u8]) -> Result<Matching> {
    let file: MatchingFile = serde_json::from_slice(bytes).map_err(malformed)?;
    let pairs = file
        .pairs
        .iter()
        .map(|(r, h)| {
            let ri = instance
                .resident_index(r)
                .ok_or_else(|| Error::UnknownName {
                    name: r.clone(),
                    context: "matching".into(),
                })?;
            let hi = instance
                .hospital_index(h)
                .ok_or_else(|| Error::UnknownName {
                    name: h.clone(),
                    context: "matching".into(),
                })?;
            Ok((ri, hi))
        })
        .collect::<Result<Vec<_>>>()?;
    Matching::from_pairs(instance.num_residents(), pairs)
}

pub fn serialize_matching(instance: &Instance, matching: &Matching) -> Vec<u8> {
    let file = MatchingFile {
        pairs: matching
            .pairs()
            .into_iter()
            .map(|(r, h)| {
                (
                    instance.resident_name(r).to_string(),
                    instance.hospital_name(h).to_string(),
                )
            })
            .collect(),
    };
    let mut out = serde_json::to_vec(&file).expect("matching serializes");
    out.push(b'\n');
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    const THM41: &str = r#"{
      "residents": [
        {"name": "r1", "prefs": [["h1"]]},
        {"name": "r2", "prefs": [["h1"], ["h2"]]}
      ],
      "hospitals": [
        {"name": "h1", "lower": 1, "upper": 1, "prefs": [["r1", "r2"]]},
        {"name": "h2", "lower": 1, "upper": 1, "prefs": [["r2"]]}
      ]
    }"#;

    #[test]
    fn round_trip() {
        let inst = parse_instance(THM41.as_bytes()).unwrap();
        assert_eq!(inst.acceptable_pairs().len(), 3);
        let again = parse_instance(&serialize_instance(&inst)).unwrap();
        assert_eq!(inst, again);
    }

    #[test]
    fn lower_above_upper_is_a_quota_violation() {
        let text = THM41.replace(
            r#""lower": 1, "upper": 1, "prefs": [["r2"]]"#,
            r#""lower": 2, "upper": 1, "prefs": [["r2"]]"#,
        );
        assert!(matches!(
            parse_instance(text.as_bytes()),
            Err(Error::QuotaViolation { .. })
        ));
    }

    #[test]
    fn unknown_hospital_name() {
        let text = THM41.replace(r#"[["h1"], ["h2"]]"#, r#"[["h1"], ["h7"]]"#);
        assert!(matches!(
            parse_instance(text.as_bytes()),
            Err(Error::UnknownName { .. })
        ));
    }

    #[test]
    fn syntax_errors_carry_position() {
        match parse_instance(b"{\n  \"residents\": [,\n}") {
            Err(Error::MalformedInput { line, .. }) => assert_eq!(line, 2),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn matching_round_trip() {
        let inst = parse_instance(THM41.as_bytes()).unwrap();
        let m = parse_matching(&inst, br#"{"pairs":[["r1","h1"],["r2","h2"]]}"#).unwrap();
        assert_eq!(m.pairs(), vec![(0, 0), (1, 1)]);
        assert_eq!(
            parse_matching(&inst, &serialize_matching(&inst, &m)).unwrap(),
            m
        );
    }
}
