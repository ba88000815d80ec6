//! Vertex cover to HRT: a minimum cover becomes a stable matching with the
//! predicted score, and back.

use hrt_mslq::generators::{min_vertex_cover, vc_gadget, Graph};
use hrt_mslq::verify;

fn main() -> hrt_mslq::Result<()> {
    let g = Graph::parse("# square with a matching\n0 1\n1 2\n2 3\n3 0\nmatching:\n0 1\n2 3\n")?;
    let gadget = vc_gadget(&g, 1, 2)?;
    let inst = gadget.instance();
    println!(
        "{} vertices -> {} residents, {} hospitals, theta {}",
        g.num_vertices(),
        inst.num_residents(),
        inst.num_hospitals(),
        gadget.theta()
    );

    let cover = min_vertex_cover(&g)?;
    let m = gadget.cover_to_stable(&cover)?;
    println!("cover {cover:?}");
    println!("  stable {}", verify::is_stable(inst, &m)?);
    println!("  score  {}", verify::score(inst, &m)?.with_decimal());
    println!(
        "  expect {}",
        gadget.cover_score(cover.len()).with_decimal()
    );
    println!("  back   {:?}", gadget.cover_from_stable(&m)?);

    // A non-cover is refused.
    println!("{}", gadget.cover_to_stable(&[0]).unwrap_err());
    Ok(())
}
