//! The named worst-case constructions.

use crate::error::{Error, Result};
use crate::instance::{Instance, InstanceBuilder};

type Lists = Vec<Vec<String>>;

fn strict<I: IntoIterator<Item = String>>(xs: I) -> Lists {
    xs.into_iter().map(|x| vec![x]).collect()
}

fn tie<I: IntoIterator<Item = String>>(xs: I) -> Lists {
    let g: Vec<String> = xs.into_iter().collect();
    if g.is_empty() {
        Vec::new()
    } else {
        vec![g]
    }
}

fn s(x: &str) -> String {
    x.to_string()
}

/// `r1: h1`, `r2: h1 h2`; `h1 [1,1]: (r1 r2)`, `h2 [1,1]: r2`.
pub fn marriage_gap() -> Instance {
    InstanceBuilder::new()
        .resident("r1", strict([s("h1")]))
        .resident("r2", strict([s("h1"), s("h2")]))
        .hospital("h1", 1, 1, tie([s("r1"), s("r2")]))
        .hospital("h2", 1, 1, strict([s("r2")]))
        .build()
        .expect("valid construction")
}

/// `r1: h1 h2`, `r2: h1 h3`; `h1 [1,1]: (r1 r2)`, `h2 [1,1]: r1`, `h3 [0,1]: r2`.
pub fn marriage_tight() -> Instance {
    InstanceBuilder::new()
        .resident("r1", strict([s("h1"), s("h2")]))
        .resident("r2", strict([s("h1"), s("h3")]))
        .hospital("h1", 1, 1, tie([s("r1"), s("r2")]))
        .hospital("h2", 1, 1, strict([s("r1")]))
        .hospital("h3", 0, 1, strict([s("r2")]))
        .build()
        .expect("valid construction")
}

fn check_uniform(lower: usize, upper: usize) -> Result<()> {
    if lower == 0 || lower > upper {
        return Err(Error::InvalidArgument(format!(
            "uniform families need 1 <= lower <= upper, got [{lower}, {upper}]"
        )));
    }
    Ok(())
}

/// Residents `r_i: x h_i` and `r'_i: x` for i = 1..u; `h_i: r_i` and
/// `x: (all residents)`, every quota `[l, u]`.
pub fn uniform_gap(lower: usize, upper: usize) -> Result<Instance> {
    check_uniform(lower, upper)?;
    let u = upper;
    let mut b = InstanceBuilder::new();
    for i in 1..=u {
        b.resident(format!("r{i}"), strict([s("x"), format!("h{i}")]));
    }
    for i in 1..=u {
        b.resident(format!("r'{i}"), strict([s("x")]));
    }
    for i in 1..=u {
        b.hospital(format!("h{i}"), lower, upper, strict([format!("r{i}")]));
    }
    let all = (1..=u)
        .map(|i| format!("r{i}"))
        .chain((1..=u).map(|i| format!("r'{i}")));
    b.hospital("x", lower, upper, tie(all));
    b.build()
}

/// Residents `a_i: x h_i`, `b_i: x y`, `c_i: y`; `h_i: a_i`,
/// `x: (a_1..a_u b_1..b_u)`, `y: b_1..b_u c_1..c_u`, every quota `[l, u]`.
///
/// Index order a, b, c is the adversarial priority.
pub fn uniform_tight(lower: usize, upper: usize) -> Result<Instance> {
    check_uniform(lower, upper)?;
    let u = upper;
    let mut b = InstanceBuilder::new();
    for i in 1..=u {
        b.resident(format!("a{i}"), strict([s("x"), format!("h{i}")]));
    }
    for i in 1..=u {
        b.resident(format!("b{i}"), strict([s("x"), s("y")]));
    }
    for i in 1..=u {
        b.resident(format!("c{i}"), strict([s("y")]));
    }
    for i in 1..=u {
        b.hospital(format!("h{i}"), lower, upper, strict([format!("a{i}")]));
    }
    let a_and_b = (1..=u)
        .map(|i| format!("a{i}"))
        .chain((1..=u).map(|i| format!("b{i}")));
    b.hospital("x", lower, upper, tie(a_and_b));
    let b_then_c = (1..=u)
        .map(|i| format!("b{i}"))
        .chain((1..=u).map(|i| format!("c{i}")));
    b.hospital("y", lower, upper, strict(b_then_c));
    b.build()
}

fn check_n(n: usize, min: usize) -> Result<()> {
    if n < min {
        return Err(Error::InvalidArgument(format!(
            "family needs n >= {min}, got {n}"
        )));
    }
    Ok(())
}

/// `n` residents each with one tie over `h_1..h_{n+1}`; hospitals rank
/// `r_1..r_n` strictly; `h_i [1,1]`, `h_{n+1} [0,n]`.
pub fn general_gap(n: usize) -> Result<Instance> {
    check_n(n, 1)?;
    let hospitals: Vec<String> = (1..=n + 1).map(|i| format!("h{i}")).collect();
    let residents: Vec<String> = (1..=n).map(|i| format!("r{i}")).collect();
    let mut b = InstanceBuilder::new();
    for r in &residents {
        b.resident(r.clone(), tie(hospitals.clone()));
    }
    for (i, h) in hospitals.iter().enumerate() {
        let (lower, upper) = if i < n { (1, 1) } else { (0, n) };
        b.hospital(h.clone(), lower, upper, strict(residents.clone()));
    }
    b.build()
}

/// Strict resident lists: `r_i: x h_i` for i <= n/2, `r'_i: x` for
/// i <= ceil(n/2); `h_i [1,1]: r_i`, `x [ceil(n/2), ceil(n/2)]: (all)`.
pub fn strict_gap(n: usize) -> Result<Instance> {
    check_n(n, 1)?;
    let (fl, cl) = (n / 2, n.div_ceil(2));
    let mut b = InstanceBuilder::new();
    for i in 1..=fl {
        b.resident(format!("r{i}"), strict([s("x"), format!("h{i}")]));
    }
    for i in 1..=cl {
        b.resident(format!("r'{i}"), strict([s("x")]));
    }
    for i in 1..=fl {
        b.hospital(format!("h{i}"), 1, 1, strict([format!("r{i}")]));
    }
    let all = (1..=fl)
        .map(|i| format!("r{i}"))
        .chain((1..=cl).map(|i| format!("r'{i}")));
    b.hospital("x", cl, cl, tie(all));
    b.build()
}

/// For n >= 3: `r'_i: x h_i` (i <= ceil(n/2)), `r''_i: x y` (i <= n/2);
/// `x [ceil(n/2), ceil(n/2)]: (all)`, `y [n,n]: r''_1..`, `h_i [1,1]: r'_i`.
/// Hospitals `h_i` with i > ceil(n/2) are listed by nobody.
/// n = 2 is [`marriage_tight`]; n = 1 is a single pair.
///
/// Index order R' then R'' is the adversarial priority.
pub fn phi_tight(n: usize) -> Result<Instance> {
    check_n(n, 1)?;
    match n {
        1 => {
            return InstanceBuilder::new()
                .resident("r1", strict([s("h1")]))
                .hospital("h1", 1, 1, strict([s("r1")]))
                .build()
        }
        2 => return Ok(marriage_tight()),
        _ => {}
    }
    let (fl, cl) = (n / 2, n.div_ceil(2));
    let r1: Vec<String> = (1..=cl).map(|i| format!("r'{i}")).collect();
    let r2: Vec<String> = (1..=fl).map(|i| format!("r''{i}")).collect();
    let mut b = InstanceBuilder::new();
    for (i, r) in r1.iter().enumerate() {
        b.resident(r.clone(), strict([s("x"), format!("h{}", i + 1)]));
    }
    for r in &r2 {
        b.resident(r.clone(), strict([s("x"), s("y")]));
    }
    for i in 1..=n {
        let list = if i <= cl {
            strict([format!("r'{i}")])
        } else {
            Vec::new()
        };
        b.hospital(format!("h{i}"), 1, 1, list);
    }
    b.hospital("x", cl, cl, tie(r1.iter().chain(&r2).cloned()));
    b.hospital("y", n, n, strict(r2));
    b.build()
}
