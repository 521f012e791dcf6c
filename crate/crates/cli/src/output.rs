use std::fmt::Write as _;

use overlap_bounds::{triangle_interval, Model, OverlapGraph64, Provenance, TriangleInputs};

use crate::document::GraphDocument;

fn provenance(p: Provenance) -> &'static str {
    match p {
        Provenance::Measured => "measured",
        Provenance::Inferred => "inferred",
    }
}

/// `i,j,lo,hi,provenance`, one row per pair.
pub fn csv(g: &OverlapGraph64) -> String {
    let mut out = String::from("i,j,lo,hi,provenance\n");
    for ((i, j), e) in g.edges() {
        let iv = e.value.interval();
        writeln!(out, "{i},{j},{:?},{:?},{}", iv.lo(), iv.hi(), provenance(e.provenance)).unwrap();
    }
    out
}

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

/// Undirected DOT graph: measured edges solid, inferred edges dashed and
/// labelled with their interval.
pub fn dot(g: &OverlapGraph64, doc: &GraphDocument) -> String {
    let mut out = String::from("graph overlaps {\n");
    for v in 0..g.n() {
        writeln!(out, "  {v} [label={}];", quote(&doc.label(v))).unwrap();
    }
    for ((i, j), e) in g.edges() {
        let iv = e.value.interval();
        let label = if iv.is_point() {
            format!("{}", iv.lo())
        } else {
            format!("[{}, {}]", iv.lo(), iv.hi())
        };
        let style = match e.provenance {
            Provenance::Measured => "solid",
            Provenance::Inferred => "dashed",
        };
        writeln!(out, "  {i} -- {j} [style={style}, label={}];", quote(&label)).unwrap();
    }
    out.push_str("}\n");
    out
}

/// `r_ab,r_ac,lo,hi` on a `steps × steps` grid over the unit square.
pub fn plot_grid(model: Model, steps: usize) -> String {
    let mut out = String::from("r_ab,r_ac,lo,hi\n");
    let h = 1.0 / (steps.max(2) - 1) as f64;
    for a in 0..steps.max(2) {
        for b in 0..steps.max(2) {
            let (x, y) = ((a as f64 * h).min(1.0), (b as f64 * h).min(1.0));
            let iv = triangle_interval(TriangleInputs::new(x, y).expect("grid inside [0, 1]"), model);
            writeln!(out, "{x:?},{y:?},{:?},{:?}", iv.lo(), iv.hi()).unwrap();
        }
    }
    out
}
