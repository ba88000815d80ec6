//! Reduction from minimum vertex cover on graphs with a perfect matching.
//!
//! Every edge `(v_i, v_j)` of the designated perfect matching `F*` becomes a
//! gadget with `5u` residents and `3 + 2u` hospitals, all with quotas
//! `[l, u]`:
//!
//! ```text
//! a^j_k: y^j                               x^i_k: b^i_k
//! b^i_k: (y^j z^ij) [out(b^i_k)] x^i_k     y^j:   c^ij_1..u  b^i_1..u  [out(y^j)]  a^j_1..u
//! c^ij_k: z^ij (y^i y^j)                   z^ij:  (b^i_1..u b^j_1..u)  c^ij_1..u
//! b^j_k: (y^i z^ij) [out(b^j_k)] x^j_k     y^i:   c^ij_1..u  b^j_1..u  [out(y^i)]  a^i_1..u
//! a^i_k: y^i                               x^j_k: b^j_k
//! ```
//!
//! Every other edge `(v_p, v_q)` adds the pairs `(b^p_k, y^q)` and
//! `(b^q_k, y^p)`. `out(b^p_k)` lists those `y^q` by increasing `q`;
//! `out(y^q)` lists those `b^p_k` by increasing `(p, k)`.
//!
//! Names use 1-based vertex numbers: `a3_1`, `b1_2`, `c1.2_1`, `x1_1`, `y2`,
//! `z1.2`.

use crate::error::{Error, Result};
use crate::generators::graph::Graph;
use crate::instance::{Instance, InstanceBuilder, Matching};
use crate::score::Score;
use crate::verify;

#[derive(Clone, Debug)]
struct Layout {
    a: Vec<Vec<usize>>,
    b: Vec<Vec<usize>>,
    c: Vec<Vec<usize>>,
    x: Vec<Vec<usize>>,
    y: Vec<usize>,
    z: Vec<usize>,
}

/// A gadget instance together with the graph it encodes.
#[derive(Clone, Debug)]
pub struct Gadget {
    instance: Instance,
    graph: Graph,
    fstar: Vec<(usize, usize)>,
    lower: usize,
    upper: usize,
    layout: Layout,
}

fn a_name(p: usize, k: usize) -> String {
    format!("a{}_{k}", p + 1)
}
fn b_name(p: usize, k: usize) -> String {
    format!("b{}_{k}", p + 1)
}
fn c_name(i: usize, j: usize, k: usize) -> String {
    format!("c{}.{}_{k}", i + 1, j + 1)
}
fn x_name(p: usize, k: usize) -> String {
    format!("x{}_{k}", p + 1)
}
fn y_name(p: usize) -> String {
    format!("y{}", p + 1)
}
fn z_name(i: usize, j: usize) -> String {
    format!("z{}.{}", i + 1, j + 1)
}

fn strict(xs: impl IntoIterator<Item = String>) -> impl Iterator<Item = Vec<String>> {
    xs.into_iter().map(|x| vec![x])
}

/// Builds the instance for `graph` (its designated perfect matching, or one
/// found by search) with all quotas `[lower, upper]`.
pub fn vc_gadget(graph: &Graph, lower: usize, upper: usize) -> Result<Gadget> {
    if lower == 0 || lower > upper {
        return Err(Error::InvalidQuotas { lower, upper });
    }
    let fstar = graph.perfect_matching()?;
    let n = graph.num_vertices();
    let u = upper;
    let mut partner = vec![0; n];
    for &(i, j) in &fstar {
        partner[i] = j;
        partner[j] = i;
    }
    // non-F* neighbours of each vertex, increasing
    let mut out: Vec<Vec<usize>> = vec![Vec::new(); n];
    for &(p, q) in graph.edges() {
        if partner[p] != q {
            out[p].push(q);
            out[q].push(p);
        }
    }
    out.iter_mut().for_each(|o| o.sort_unstable());

    let ks = || 1..=u;
    let mut bld = InstanceBuilder::new();
    for &(i, j) in &fstar {
        let b_list = |me: usize, other: usize, k: usize| -> Vec<Vec<String>> {
            let mut l = vec![vec![y_name(other), z_name(i, j)]];
            l.extend(strict(out[me].iter().map(|&s| y_name(s))));
            l.push(vec![x_name(me, k)]);
            l
        };
        for k in ks() {
            bld.resident(a_name(j, k), vec![vec![y_name(j)]]);
        }
        for k in ks() {
            bld.resident(b_name(i, k), b_list(i, j, k));
        }
        for k in ks() {
            bld.resident(
                c_name(i, j, k),
                vec![vec![z_name(i, j)], vec![y_name(i), y_name(j)]],
            );
        }
        for k in ks() {
            bld.resident(b_name(j, k), b_list(j, i, k));
        }
        for k in ks() {
            bld.resident(a_name(i, k), vec![vec![y_name(i)]]);
        }

        let y_list = |me: usize, other: usize| -> Vec<Vec<String>> {
            let mut l: Vec<Vec<String>> = strict(ks().map(|k| c_name(i, j, k))).collect();
            l.extend(strict(ks().map(|k| b_name(other, k))));
            l.extend(strict(
                out[me]
                    .iter()
                    .flat_map(|&s| ks().map(move |k| b_name(s, k))),
            ));
            l.extend(strict(ks().map(|k| a_name(me, k))));
            l
        };
        bld.hospital(y_name(j), lower, upper, y_list(j, i));
        let mut z_list = vec![ks()
            .map(|k| b_name(i, k))
            .chain(ks().map(|k| b_name(j, k)))
            .collect()];
        z_list.extend(strict(ks().map(|k| c_name(i, j, k))));
        bld.hospital(z_name(i, j), lower, upper, z_list);
        bld.hospital(y_name(i), lower, upper, y_list(i, j));
        for k in ks() {
            bld.hospital(x_name(i, k), lower, upper, vec![vec![b_name(i, k)]]);
        }
        for k in ks() {
            bld.hospital(x_name(j, k), lower, upper, vec![vec![b_name(j, k)]]);
        }
    }
    let instance = bld.build()?;

    let r = |name: String| instance.resident_index(&name).expect("built above");
    let h = |name: String| instance.hospital_index(&name).expect("built above");
    let layout = Layout {
        a: (0..n)
            .map(|p| ks().map(|k| r(a_name(p, k))).collect())
            .collect(),
        b: (0..n)
            .map(|p| ks().map(|k| r(b_name(p, k))).collect())
            .collect(),
        c: fstar
            .iter()
            .map(|&(i, j)| ks().map(|k| r(c_name(i, j, k))).collect())
            .collect(),
        x: (0..n)
            .map(|p| ks().map(|k| h(x_name(p, k))).collect())
            .collect(),
        y: (0..n).map(|p| h(y_name(p))).collect(),
        z: fstar.iter().map(|&(i, j)| h(z_name(i, j))).collect(),
    };
    Ok(Gadget {
        instance,
        graph: graph.clone(),
        fstar,
        lower,
        upper,
        layout,
    })
}

impl Gadget {
    pub fn instance(&self) -> &Instance {
        &self.instance
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn fstar(&self) -> &[(usize, usize)] {
        &self.fstar
    }

    pub fn theta(&self) -> Score {
        Score::new(self.upper as i64, self.lower as i64)
    }

    /// `(1.5 + theta)|V| - theta * cover_size`.
    pub fn cover_score(&self, cover_size: usize) -> Score {
        let (l, u) = (self.lower as i64, self.upper as i64);
        let n = self.graph.num_vertices() as i64;
        Score::new((3 * l + 2 * u) * n - 2 * u * cover_size as i64, 2 * l)
    }

    /// The stable matching built from a vertex cover; its score is
    /// [`Gadget::cover_score`] of the cover size.
    pub fn cover_to_stable(&self, cover: &[usize]) -> Result<Matching> {
        let n = self.graph.num_vertices();
        let mut in_c = vec![false; n];
        for &v in cover {
            if v >= n {
                return Err(Error::InvalidArgument(format!("vertex {v} out of range")));
            }
            in_c[v] = true;
        }
        if let Some((u, v)) = self.graph.uncovered_edge(&in_c) {
            return Err(Error::NotACover(u, v));
        }
        let lay = &self.layout;
        let mut m = Matching::empty(self.instance.num_residents());
        for (e, &(i, j)) in self.fstar.iter().enumerate() {
            for k in 0..self.upper {
                let pairs = match (in_c[i], in_c[j]) {
                    (true, true) => vec![
                        (lay.b[i][k], lay.y[j]),
                        (lay.c[e][k], lay.z[e]),
                        (lay.b[j][k], lay.y[i]),
                    ],
                    (false, true) => vec![
                        (lay.b[i][k], lay.x[i][k]),
                        (lay.c[e][k], lay.y[j]),
                        (lay.b[j][k], lay.z[e]),
                        (lay.a[i][k], lay.y[i]),
                    ],
                    (true, false) => vec![
                        (lay.a[j][k], lay.y[j]),
                        (lay.b[i][k], lay.z[e]),
                        (lay.c[e][k], lay.y[i]),
                        (lay.b[j][k], lay.x[j][k]),
                    ],
                    (false, false) => unreachable!("F* edges are covered"),
                };
                for (r, h) in pairs {
                    m.assign(r, Some(h));
                }
            }
        }
        Ok(m)
    }

    /// `{v : no (b^v_k, x^v_k) in M}`, a vertex cover whenever `M` is stable.
    pub fn cover_from_stable(&self, matching: &Matching) -> Result<Vec<usize>> {
        if !verify::is_stable(&self.instance, matching)? {
            return Err(Error::UnstableInput);
        }
        let lay = &self.layout;
        Ok((0..self.graph.num_vertices())
            .filter(|&v| (0..self.upper).all(|k| !matching.contains(lay.b[v][k], lay.x[v][k])))
            .collect())
    }
}
