//! The correlation polytope of `m` propositions and their conjunction.
//!
//! Vertices are the truth assignments `(a_1, …, a_m, a_1 ∧ … ∧ a_m)`. The
//! candidate facets are supplied rather than discovered: each is checked
//! for validity on every vertex and its saturating vertex set is checked to
//! span an `m`-dimensional affine subspace.

use std::fmt;

use thiserror::Error;

pub const MAX_PROPOSITIONS: usize = 20;
/// Above this the table is streamed row by row instead of materialized.
pub const MATERIALIZE_LIMIT: usize = 12;

const RANK_TOL: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolytopeError {
    #[error("m = {m} exceeds the enumeration cap of {max}")]
    TooLarge { m: usize, max: usize },
    #[error("m = {0} is below the minimum of 2 propositions")]
    TooSmall(usize),
    #[error("proposition index {index} out of range for m = {m}")]
    BadInequality { index: usize, m: usize },
}

fn check_m(m: usize) -> Result<(), PolytopeError> {
    if m < 2 {
        return Err(PolytopeError::TooSmall(m));
    }
    if m > MAX_PROPOSITIONS {
        return Err(PolytopeError::TooLarge { m, max: MAX_PROPOSITIONS });
    }
    Ok(())
}

/// Row `index` of the table: bits of `index`, first proposition most
/// significant, followed by their conjunction.
pub fn vertex_row(m: usize, index: usize) -> Vec<u8> {
    let mut row: Vec<u8> = (0..m).map(|k| ((index >> (m - 1 - k)) & 1) as u8).collect();
    let all = row.iter().all(|&b| b == 1);
    row.push(u8::from(all));
    row
}

/// All `2^m` rows in lexicographic order, generated lazily.
pub fn vertex_rows(m: usize) -> impl Iterator<Item = Vec<u8>> {
    (0..1usize << m).map(move |i| vertex_row(m, i))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruthAssignmentTable {
    m: usize,
    rows: Vec<Vec<u8>>,
}

impl TruthAssignmentTable {
    pub fn m(&self) -> usize {
        self.m
    }

    pub fn rows(&self) -> &[Vec<u8>] {
        &self.rows
    }

    /// Sum of each column.
    pub fn column_sums(&self) -> Vec<usize> {
        let mut sums = vec![0; self.m + 1];
        for row in &self.rows {
            for (s, &b) in sums.iter_mut().zip(row) {
                *s += b as usize;
            }
        }
        sums
    }
}

pub fn and_polytope_vertices(m: usize) -> Result<TruthAssignmentTable, PolytopeError> {
    check_m(m)?;
    Ok(TruthAssignmentTable {
        m,
        rows: vertex_rows(m).collect(),
    })
}

/// Candidate facet inequalities, written as `slack(p) ≥ 0` for a point
/// `p = (p(a_1), …, p(a_m), p(∧))`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BooleInequality {
    /// `p(∧) ≥ 0`
    NonNegative,
    /// `p(∧) ≥ 1 − m + Σ p(a_i)`
    LowerBound,
    /// `p(∧) ≤ p(a_i)`, zero-based `i`.
    UpperBound(usize),
}

impl fmt::Display for BooleInequality {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::NonNegative => write!(f, "p(and) >= 0"),
            Self::LowerBound => write!(f, "p(and) >= 1 - m + sum p(a_i)"),
            Self::UpperBound(i) => write!(f, "p(and) <= p(a_{})", i + 1),
        }
    }
}

impl BooleInequality {
    /// The full candidate list for `m` propositions.
    pub fn listed(m: usize) -> Vec<Self> {
        let mut out = vec![Self::NonNegative, Self::LowerBound];
        out.extend((0..m).map(Self::UpperBound));
        out
    }

    fn check_index(&self, m: usize) -> Result<(), PolytopeError> {
        match *self {
            Self::UpperBound(index) if index >= m => Err(PolytopeError::BadInequality { index, m }),
            _ => Ok(()),
        }
    }

    /// Exact slack on a `{0, 1}` vertex.
    pub fn vertex_slack(&self, row: &[u8]) -> i64 {
        let m = row.len() - 1;
        let and = row[m] as i64;
        match *self {
            Self::NonNegative => and,
            Self::LowerBound => and - (1 - m as i64 + row[..m].iter().map(|&b| b as i64).sum::<i64>()),
            Self::UpperBound(i) => row[i] as i64 - and,
        }
    }

    /// Slack at an arbitrary point of probability space.
    pub fn slack(&self, p: &[f64]) -> f64 {
        let m = p.len() - 1;
        let and = p[m];
        match *self {
            Self::NonNegative => and,
            Self::LowerBound => and - (1.0 - m as f64 + p[..m].iter().sum::<f64>()),
            Self::UpperBound(i) => p[i] - and,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InequalityCheck {
    pub inequality: BooleInequality,
    pub violations: usize,
    pub saturating: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BooleReport {
    pub m: usize,
    pub vertices: usize,
    pub checks: Vec<InequalityCheck>,
}

impl BooleReport {
    pub fn total_violations(&self) -> usize {
        self.checks.iter().map(|c| c.violations).sum()
    }
}

/// Evaluate every listed inequality on every vertex. Vertex validity
/// certifies the whole polytope since it is their convex hull.
pub fn check_boole_inequalities(m: usize) -> Result<BooleReport, PolytopeError> {
    check_m(m)?;
    let ineqs = BooleInequality::listed(m);
    let mut checks: Vec<_> = ineqs
        .iter()
        .map(|&inequality| InequalityCheck {
            inequality,
            violations: 0,
            saturating: 0,
        })
        .collect();
    let mut vertices = 0;
    for row in vertex_rows(m) {
        vertices += 1;
        for c in &mut checks {
            match c.inequality.vertex_slack(&row) {
                s if s < 0 => c.violations += 1,
                0 => c.saturating += 1,
                _ => {}
            }
        }
    }
    Ok(BooleReport { m, vertices, checks })
}

/// Vertices on which `inequality` holds with equality.
pub fn saturating_vertices(m: usize, inequality: BooleInequality) -> Result<Vec<Vec<u8>>, PolytopeError> {
    check_m(m)?;
    inequality.check_index(m)?;
    Ok(vertex_rows(m).filter(|r| inequality.vertex_slack(r) == 0).collect())
}

/// Affine dimension of the face cut out by `inequality`. It is a facet of
/// the `(m + 1)`-dimensional polytope exactly when this equals `m`.
pub fn facet_dimension(m: usize, inequality: BooleInequality) -> Result<usize, PolytopeError> {
    check_m(m)?;
    inequality.check_index(m)?;
    let mut rank = AffineRank::default();
    for row in vertex_rows(m).filter(|r| inequality.vertex_slack(r) == 0) {
        rank.push(&row.iter().map(|&b| b as f64).collect::<Vec<_>>());
    }
    Ok(rank.rank())
}

/// Incremental affine rank: differences from the first point are reduced
/// against an echelon basis with partial pivoting.
#[derive(Clone, Debug, Default)]
pub struct AffineRank {
    origin: Option<Vec<f64>>,
    basis: Vec<(usize, Vec<f64>)>,
}

impl AffineRank {
    pub fn push(&mut self, point: &[f64]) {
        let Some(origin) = &self.origin else {
            self.origin = Some(point.to_vec());
            return;
        };
        let mut v: Vec<f64> = point.iter().zip(origin).map(|(p, o)| p - o).collect();
        for (pivot, b) in &self.basis {
            let f = v[*pivot] / b[*pivot];
            if f != 0.0 {
                for (x, y) in v.iter_mut().zip(b) {
                    *x -= f * y;
                }
            }
        }
        let (pivot, mag) = v
            .iter()
            .enumerate()
            .map(|(i, x)| (i, x.abs()))
            .fold((0, 0.0), |acc, cur| if cur.1 > acc.1 { cur } else { acc });
        if mag > RANK_TOL {
            self.basis.push((pivot, v));
        }
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }
}

/// Solve the square system `a x = b` by Gaussian elimination with partial
/// pivoting. `None` if singular.
pub fn solve_linear(mut a: Vec<Vec<f64>>, mut b: Vec<f64>) -> Option<Vec<f64>> {
    let n = b.len();
    for col in 0..n {
        let piv = (col..n).max_by(|&i, &j| a[i][col].abs().total_cmp(&a[j][col].abs()))?;
        if a[piv][col].abs() < RANK_TOL {
            return None;
        }
        a.swap(col, piv);
        b.swap(col, piv);
        let pivot = a[col].clone();
        for row in col + 1..n {
            let f = a[row][col] / pivot[col];
            for (x, p) in a[row].iter_mut().zip(&pivot).skip(col) {
                *x -= f * p;
            }
            b[row] -= f * b[col];
        }
    }
    let mut x = vec![0.0; n];
    for row in (0..n).rev() {
        let s: f64 = (row + 1..n).map(|k| a[row][k] * x[k]).sum();
        x[row] = (b[row] - s) / a[row][row];
    }
    Some(x)
}

/// Barycentric coordinates of `p` with respect to a simplex given by
/// `dim + 1` vertices in `dim` dimensions.
pub fn barycentric_coordinates(vertices: &[Vec<f64>], p: &[f64]) -> Option<Vec<f64>> {
    let dim = p.len();
    if vertices.len() != dim + 1 {
        return None;
    }
    let mut a = vec![vec![0.0; dim + 1]; dim + 1];
    for (col, v) in vertices.iter().enumerate() {
        for (row, &x) in v.iter().enumerate() {
            a[row][col] = x;
        }
        a[dim][col] = 1.0;
    }
    let mut b = p.to_vec();
    b.push(1.0);
    solve_linear(a, b)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_proposition_table() {
        let t = and_polytope_vertices(2).unwrap();
        assert_eq!(t.rows(), &[vec![0, 0, 0], vec![0, 1, 0], vec![1, 0, 0], vec![1, 1, 1]]);
    }

    #[test]
    fn three_proposition_table() {
        let t = and_polytope_vertices(3).unwrap();
        assert_eq!(t.rows().len(), 8);
        let ones: Vec<_> = t.rows().iter().filter(|r| r[3] == 1).collect();
        assert_eq!(ones, vec![&vec![1, 1, 1, 1]]);
    }

    #[test]
    fn column_sums() {
        for m in 2..=10 {
            let sums = and_polytope_vertices(m).unwrap().column_sums();
            assert!(sums[..m].iter().all(|&s| s == 1 << (m - 1)));
            assert_eq!(sums[m], 1);
        }
    }

    #[test]
    fn size_limits() {
        assert_eq!(and_polytope_vertices(1), Err(PolytopeError::TooSmall(1)));
        assert_eq!(and_polytope_vertices(21), Err(PolytopeError::TooLarge { m: 21, max: 20 }));
        assert_eq!(
            facet_dimension(3, BooleInequality::UpperBound(3)),
            Err(PolytopeError::BadInequality { index: 3, m: 3 })
        );
    }

    #[test]
    fn two_propositions_satisfy_the_four_faces() {
        let r = check_boole_inequalities(2).unwrap();
        assert_eq!(r.vertices, 4);
        assert_eq!(r.checks.len(), 4);
        assert_eq!(r.total_violations(), 0);
        let upper = r.checks.iter().find(|c| c.inequality == BooleInequality::UpperBound(0)).unwrap();
        assert_eq!(upper.saturating, 3);
    }

    #[test]
    fn lower_bound_saturation_set() {
        // Rows with exactly two zeros overall (one false proposition and the
        // false conjunction) plus the all-true row.
        let sat = saturating_vertices(3, BooleInequality::LowerBound).unwrap();
        let mut expected: Vec<Vec<u8>> = vertex_rows(3)
            .filter(|r| r.iter().filter(|&&b| b == 0).count() == 2)
            .collect();
        expected.push(vec![1, 1, 1, 1]);
        assert_eq!(sat, expected);
        assert_eq!(sat.len(), 4);
    }

    #[test]
    fn facet_ranks() {
        assert_eq!(facet_dimension(2, BooleInequality::LowerBound).unwrap(), 2);
        assert_eq!(facet_dimension(5, BooleInequality::LowerBound).unwrap(), 5);
        assert_eq!(facet_dimension(3, BooleInequality::UpperBound(0)).unwrap(), 3);
        assert_eq!(facet_dimension(4, BooleInequality::NonNegative).unwrap(), 4);
    }

    #[test]
    fn affine_rank_basics() {
        let mut r = AffineRank::default();
        for p in [[0.0, 0.0], [1.0, 1.0], [2.0, 2.0]] {
            r.push(&p);
        }
        assert_eq!(r.rank(), 1);
        r.push(&[0.0, 1.0]);
        assert_eq!(r.rank(), 2);
    }

    #[test]
    fn barycentric_solve() {
        let verts = vec![vec![0.0, 0.0], vec![1.0, 0.0], vec![0.0, 1.0]];
        let w = barycentric_coordinates(&verts, &[0.25, 0.5]).unwrap();
        assert!((w[0] - 0.25).abs() < 1e-12 && (w[1] - 0.25).abs() < 1e-12 && (w[2] - 0.5).abs() < 1e-12);
        let flat = vec![vec![0.0, 0.0], vec![1.0, 1.0], vec![2.0, 2.0]];
        assert_eq!(barycentric_coordinates(&flat, &[0.5, 0.5]), None);
    }
}
