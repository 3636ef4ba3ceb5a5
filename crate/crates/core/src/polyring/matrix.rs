use std::collections::HashMap;

use super::poly::HomPoly;
use super::scalar::Scalar;
use crate::error::{Error, Result};

/// Matrix of homogeneous polynomials between graded free modules.
///
/// Entry `(i, j)` maps the source summand `O(-col_twists[j])` to the target
/// summand `O(-row_twists[i])`, so it is zero or homogeneous of degree
/// `col_twists[j] - row_twists[i] >= 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedMatrix {
    nvars: usize,
    row_twists: Vec<i64>,
    col_twists: Vec<i64>,
    entries: Vec<Vec<HomPoly>>,
}

impl GradedMatrix {
    pub fn new(
        nvars: usize,
        row_twists: Vec<i64>,
        col_twists: Vec<i64>,
        entries: Vec<Vec<HomPoly>>,
    ) -> Result<Self> {
        if entries.len() != row_twists.len() {
            return Err(Error::TwistMismatch(format!(
                "{} rows but {} row twists",
                entries.len(),
                row_twists.len()
            )));
        }
        for (i, row) in entries.iter().enumerate() {
            if row.len() != col_twists.len() {
                return Err(Error::TwistMismatch(format!(
                    "row {i} has {} entries but {} column twists",
                    row.len(),
                    col_twists.len()
                )));
            }
            for (j, e) in row.iter().enumerate() {
                if e.nvars() != nvars {
                    return Err(Error::InvalidArgument(format!(
                        "entry ({i}, {j}) lives in {} variables, expected {nvars}",
                        e.nvars()
                    )));
                }
                if let Some(deg) = e.degree() {
                    let expected = col_twists[j] - row_twists[i];
                    if deg as i64 != expected {
                        return Err(Error::EntryDegree {
                            row: i,
                            col: j,
                            found: deg,
                            expected,
                        });
                    }
                }
            }
        }
        Ok(GradedMatrix {
            nvars,
            row_twists,
            col_twists,
            entries,
        })
    }

    pub fn zeros(nvars: usize, row_twists: Vec<i64>, col_twists: Vec<i64>) -> Self {
        let entries = vec![vec![HomPoly::zero(nvars); col_twists.len()]; row_twists.len()];
        GradedMatrix {
            nvars,
            row_twists,
            col_twists,
            entries,
        }
    }

    pub fn identity(nvars: usize, twists: Vec<i64>, one: Scalar) -> Self {
        let mut m = Self::zeros(nvars, twists.clone(), twists);
        for i in 0..m.rows() {
            m.entries[i][i] = HomPoly::constant(nvars, one.clone());
        }
        m
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn rows(&self) -> usize {
        self.row_twists.len()
    }

    pub fn cols(&self) -> usize {
        self.col_twists.len()
    }

    pub fn row_twists(&self) -> &[i64] {
        &self.row_twists
    }

    pub fn col_twists(&self) -> &[i64] {
        &self.col_twists
    }

    pub fn entry(&self, i: usize, j: usize) -> &HomPoly {
        &self.entries[i][j]
    }

    pub fn entries(&self) -> &[Vec<HomPoly>] {
        &self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().flatten().all(HomPoly::is_zero)
    }

    /// Positions and values of the nonzero entries.
    pub fn nonzero_entries(&self) -> Vec<(usize, usize, &HomPoly)> {
        let mut out = Vec::new();
        for (i, row) in self.entries.iter().enumerate() {
            for (j, e) in row.iter().enumerate() {
                if !e.is_zero() {
                    out.push((i, j, e));
                }
            }
        }
        out
    }

    pub fn transpose(&self) -> GradedMatrix {
        // Negated twists keep every entry degree.
        let entries = (0..self.cols())
            .map(|j| (0..self.rows()).map(|i| self.entries[i][j].clone()).collect())
            .collect();
        GradedMatrix {
            nvars: self.nvars,
            row_twists: self.col_twists.iter().map(|t| -t).collect(),
            col_twists: self.row_twists.iter().map(|t| -t).collect(),
            entries,
        }
    }

    /// Apply `f` entrywise; twists are kept.
    pub fn map_entries(&self, f: impl Fn(&HomPoly) -> Result<HomPoly>) -> Result<GradedMatrix> {
        let entries = self
            .entries
            .iter()
            .map(|row| row.iter().map(&f).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        GradedMatrix::new(self.nvars, self.row_twists.clone(), self.col_twists.clone(), entries)
    }

    /// Numeric matrix of values at `point`.
    pub fn eval(&self, point: &[Scalar]) -> Vec<Vec<Scalar>> {
        self.entries
            .iter()
            .map(|row| row.iter().map(|e| eval_or_zero(e, point)).collect())
            .collect()
    }

    /// Square submatrix on the given rows and columns.
    fn sub_entries(&self, rows: &[usize], cols: &[usize]) -> Vec<Vec<HomPoly>> {
        rows.iter()
            .map(|&i| cols.iter().map(|&j| self.entries[i][j].clone()).collect())
            .collect()
    }

    /// Determinant of the submatrix on `rows` x `cols`, in the given order.
    pub fn minor(&self, rows: &[usize], cols: &[usize]) -> HomPoly {
        assert_eq!(rows.len(), cols.len(), "minor must be square");
        determinant(self.nvars, self.sub_entries(rows, cols))
    }
}

fn eval_or_zero(e: &HomPoly, point: &[Scalar]) -> Scalar {
    if e.is_zero() {
        point[0].domain().zero()
    } else {
        e.eval(point)
    }
}

/// Exact product `a · b`.
pub fn matmul(a: &GradedMatrix, b: &GradedMatrix) -> Result<GradedMatrix> {
    if a.col_twists != b.row_twists {
        return Err(Error::TwistMismatch(format!(
            "source twists {:?} of the left factor differ from target twists {:?} of the right factor",
            a.col_twists, b.row_twists
        )));
    }
    if a.nvars != b.nvars {
        return Err(Error::InvalidArgument("variable count mismatch".into()));
    }
    let mut entries = Vec::with_capacity(a.rows());
    for i in 0..a.rows() {
        let mut row = Vec::with_capacity(b.cols());
        for j in 0..b.cols() {
            let mut acc = HomPoly::zero(a.nvars);
            for k in 0..a.cols() {
                let (x, y) = (&a.entries[i][k], &b.entries[k][j]);
                if !x.is_zero() && !y.is_zero() {
                    acc.add_scaled_assign(&x.mul(y), None);
                }
            }
            row.push(acc);
        }
        entries.push(row);
    }
    GradedMatrix::new(a.nvars, a.row_twists.clone(), b.col_twists.clone(), entries)
}

/// Determinant of a square matrix of polynomials whose entries have
/// compatible degrees (as in any square submatrix of a graded matrix).
///
/// Cofactor expansion below size 6, fraction-free Bareiss elimination from
/// size 6 on.
pub fn determinant(nvars: usize, m: Vec<Vec<HomPoly>>) -> HomPoly {
    let k = m.len();
    if k == 0 {
        return HomPoly::zero(nvars);
    }
    if k < 6 {
        laplace(nvars, &m)
    } else {
        bareiss(nvars, m)
    }
}

/// Cofactor expansion along rows, memoized on the set of used columns.
fn laplace(nvars: usize, m: &[Vec<HomPoly>]) -> HomPoly {
    fn rec(
        nvars: usize,
        m: &[Vec<HomPoly>],
        row: usize,
        used: u64,
        memo: &mut HashMap<u64, HomPoly>,
    ) -> HomPoly {
        let k = m.len();
        if row == k {
            // empty product: the constant 1 of the entries' domain
            let one = m
                .iter()
                .flatten()
                .flat_map(|p| p.terms().map(|(_, c)| c.domain().one()))
                .next()
                .expect("nonzero entry");
            return HomPoly::constant(nvars, one);
        }
        if let Some(v) = memo.get(&used) {
            return v.clone();
        }
        let mut acc = HomPoly::zero(nvars);
        let mut free_pos = 0usize;
        for col in 0..k {
            if used & (1 << col) != 0 {
                continue;
            }
            let e = &m[row][col];
            if !e.is_zero() {
                let sub = rec(nvars, m, row + 1, used | (1 << col), memo);
                if !sub.is_zero() {
                    let term = e.mul(&sub);
                    if free_pos.is_multiple_of(2) {
                        acc.add_scaled_assign(&term, None);
                    } else {
                        acc.add_scaled_assign(&term.neg(), None);
                    }
                }
            }
            free_pos += 1;
        }
        memo.insert(used, acc.clone());
        acc
    }
    if m.iter().flatten().all(HomPoly::is_zero) {
        return HomPoly::zero(nvars);
    }
    rec(nvars, m, 0, 0, &mut HashMap::new())
}

fn bareiss(nvars: usize, mut m: Vec<Vec<HomPoly>>) -> HomPoly {
    let k = m.len();
    let mut negate = false;
    let mut prev: Option<HomPoly> = None;
    for p in 0..k {
        let Some(pivot_row) = (p..k).find(|&r| !m[r][p].is_zero()) else {
            return HomPoly::zero(nvars);
        };
        if pivot_row != p {
            m.swap(p, pivot_row);
            negate = !negate;
        }
        for i in p + 1..k {
            for j in p + 1..k {
                let num = m[i][j].mul(&m[p][p]).sub(&m[i][p].mul(&m[p][j]));
                m[i][j] = match &prev {
                    Some(d) => num.div_exact(d).expect("Bareiss division is exact"),
                    None => num,
                };
            }
            m[i][p] = HomPoly::zero(nvars);
        }
        prev = Some(m[p][p].clone());
    }
    let det = m[k - 1][k - 1].clone();
    if negate {
        det.neg()
    } else {
        det
    }
}

/// Lexicographically ordered `k`-subsets of `0..n`.
pub fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if k <= n {
        rec(0, n, k, &mut Vec::with_capacity(k), &mut out);
    }
    out
}

/// Sign of the shuffle that moves the subset `s` of `0..` to the front:
/// `(-1)^(Σ s - k(k-1)/2)`.
pub fn shuffle_sign(s: &[usize]) -> bool {
    let k = s.len();
    let total: usize = s.iter().sum();
    (total - k * (k.saturating_sub(1)) / 2) % 2 == 1
}

/// All maximal minors of `m` (transposing first when `rows > cols`), over
/// lexicographically ordered subsets of the long side, each multiplied by
/// the shuffle sign of its subset.
///
/// With this sign, for a `k x (k+1)` matrix the minors are the signed
/// cofactors `(-1)^(k-j) det(m without column j)`, listed for
/// `j = k, k-1, ..., 0`, and each row of `m` pairs to zero with them.
pub fn maximal_minors(m: &GradedMatrix) -> Vec<HomPoly> {
    let owned;
    let m = if m.rows() > m.cols() {
        owned = m.transpose();
        &owned
    } else {
        m
    };
    let k = m.rows();
    let rows: Vec<usize> = (0..k).collect();
    subsets(m.cols(), k)
        .into_iter()
        .map(|s| {
            let det = m.minor(&rows, &s);
            if shuffle_sign(&s) {
                det.neg()
            } else {
                det
            }
        })
        .collect()
}

/// For an `(r+1) x r` matrix, the row vector `P` with `P_j = (-1)^j det(m
/// without row j)`, which satisfies `P · m = 0`.
pub fn hilbert_burch_row(m: &GradedMatrix) -> Result<Vec<HomPoly>> {
    if m.rows() != m.cols() + 1 {
        return Err(Error::InvalidArgument(format!(
            "Hilbert-Burch matrix must be (r+1) x r, got {} x {}",
            m.rows(),
            m.cols()
        )));
    }
    let cols: Vec<usize> = (0..m.cols()).collect();
    Ok((0..m.rows())
        .map(|j| {
            let rows: Vec<usize> = (0..m.rows()).filter(|&i| i != j).collect();
            let det = m.minor(&rows, &cols);
            if j % 2 == 1 {
                det.neg()
            } else {
                det
            }
        })
        .collect())
}
