//! Score a hand-written matching and list what blocks it.

use hrt_mslq::io::{parse_instance, parse_matching};
use hrt_mslq::verify;

const INSTANCE: &str = r#"{
  "residents": [
    {"name": "r1", "prefs": [["h1"], ["h2"]]},
    {"name": "r2", "prefs": [["h1"], ["h3"]]}
  ],
  "hospitals": [
    {"name": "h1", "lower": 1, "upper": 1, "prefs": [["r1", "r2"]]},
    {"name": "h2", "lower": 1, "upper": 1, "prefs": [["r1"]]},
    {"name": "h3", "lower": 0, "upper": 1, "prefs": [["r2"]]}
  ]
}"#;

fn main() -> hrt_mslq::Result<()> {
    let inst = parse_instance(INSTANCE.as_bytes())?;
    let candidates = [
        r#"{"pairs": [["r1", "h1"], ["r2", "h3"]]}"#,
        r#"{"pairs": [["r1", "h2"], ["r2", "h1"]]}"#,
        r#"{"pairs": [["r1", "h2"], ["r2", "h3"]]}"#,
    ];
    for text in candidates {
        let m = parse_matching(&inst, text.as_bytes())?;
        let blocking = verify::blocking_pairs(&inst, &m)?;
        println!("{}", m.display(&inst));
        println!("  score  {}", verify::score(&inst, &m)?.with_decimal());
        println!("  stable {}", blocking.is_empty());
        for b in blocking {
            println!(
                "  blocks ({}, {}): {:?} / {:?}",
                inst.resident_name(b.resident),
                inst.hospital_name(b.hospital),
                b.resident_reason,
                b.hospital_reason
            );
        }
    }

    // (r1, h3) is not an acceptable pair.
    let bad = parse_matching(&inst, br#"{"pairs": [["r1", "h3"]]}"#)?;
    println!("\n{}", verify::score(&inst, &bad).unwrap_err());
    Ok(())
}
