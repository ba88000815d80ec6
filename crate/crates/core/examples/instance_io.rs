//! JSON round trip for instances and matchings, plus the model classifier.

use hrt_mslq::generators::families;
use hrt_mslq::io::{parse_instance, parse_matching, serialize_instance, serialize_matching};
use hrt_mslq::oracle::classify;
use hrt_mslq::{triple_proposal, TieBreakPolicy};

fn main() -> hrt_mslq::Result<()> {
    let inst = families::uniform_tight(1, 2)?;
    let bytes = serialize_instance(&inst);
    println!("{}", String::from_utf8_lossy(&bytes));
    let again = parse_instance(&bytes)?;
    assert_eq!(serialize_instance(&again), bytes);

    let (m, _) = triple_proposal(&inst, &TieBreakPolicy::ByIndex)?;
    let mbytes = serialize_matching(&inst, &m);
    print!("{}", String::from_utf8_lossy(&mbytes));
    assert_eq!(parse_matching(&inst, &mbytes)?, m);

    println!(
        "{}",
        serde_json::to_string_pretty(&classify(&inst)).unwrap()
    );

    let broken = br#"{"residents": [{"name": "r1", "prefs": [["h9"]]}], "hospitals": []}"#;
    println!("{}", parse_instance(broken).unwrap_err());
    Ok(())
}
