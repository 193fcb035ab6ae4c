//! Linear endomorphisms of a free vector space, stored column-wise.

use std::collections::BTreeMap;
use std::fmt;

use num::{One, Zero};

use crate::error::{Error, Result};
use crate::scalar::Scalar;

use super::label::{Basis, BasisLabel};
use super::sum::FreeVector;
use super::text;

/// A linear map from a free vector space to itself.
///
/// Column `i` is the image of the `i`-th basis label. Supports are always
/// contained in the declared basis.
#[derive(Clone, Debug)]
pub struct LinearEndo {
    basis: Basis,
    columns: Vec<FreeVector>,
}

impl LinearEndo {
    pub fn identity(basis: Basis) -> Self {
        let columns = basis
            .labels()
            .iter()
            .map(|l| FreeVector::single(l.clone()))
            .collect();
        LinearEndo { basis, columns }
    }

    /// Builds a map from a column function.
    pub fn from_columns<F>(basis: Basis, mut column: F) -> Result<Self>
    where
        F: FnMut(&BasisLabel) -> FreeVector,
    {
        let columns: Vec<FreeVector> = basis.labels().iter().map(&mut column).collect();
        for col in &columns {
            for (l, _) in col.terms() {
                if !basis.contains(l) {
                    return Err(Error::UnknownLabel(l.to_string()));
                }
            }
        }
        Ok(LinearEndo { basis, columns })
    }

    /// Builds a map from an explicit label-to-column association. Every
    /// basis label must be present.
    pub fn from_column_map(
        basis: Basis,
        mut map: BTreeMap<BasisLabel, FreeVector>,
    ) -> Result<Self> {
        for key in map.keys() {
            if !basis.contains(key) {
                return Err(Error::UnknownLabel(key.to_string()));
            }
        }
        let mut columns = Vec::with_capacity(basis.len());
        for l in basis.labels() {
            match map.remove(l) {
                Some(col) => columns.push(col),
                None => return Err(Error::MissingColumn(l.to_string())),
            }
        }
        for col in &columns {
            for (l, _) in col.terms() {
                if !basis.contains(l) {
                    return Err(Error::UnknownLabel(l.to_string()));
                }
            }
        }
        Ok(LinearEndo { basis, columns })
    }

    pub fn basis(&self) -> &Basis {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Image of a single basis label.
    pub fn column(&self, label: &BasisLabel) -> Result<&FreeVector> {
        let i = self
            .basis
            .pos(label)
            .ok_or_else(|| Error::UnknownLabel(label.to_string()))?;
        Ok(&self.columns[i])
    }

    pub fn column_at(&self, i: usize) -> &FreeVector {
        &self.columns[i]
    }

    /// Linear extension of the column action.
    pub fn apply(&self, v: &FreeVector) -> Result<FreeVector> {
        let mut out = FreeVector::zero();
        for (l, c) in v.terms() {
            let col = self.column(l)?;
            for (m, a) in col.terms() {
                out.insert_add(m.clone(), a * c);
            }
        }
        Ok(out)
    }

    /// Composition `self` after `other`: `(self.compose(other))(x) = self(other(x))`.
    pub fn compose(&self, other: &LinearEndo) -> Result<LinearEndo> {
        if self.basis != other.basis {
            return Err(Error::BasisMismatch);
        }
        let columns = other
            .columns
            .iter()
            .map(|col| self.apply(col).expect("support stays in basis"))
            .collect();
        Ok(LinearEndo {
            basis: self.basis.clone(),
            columns,
        })
    }

    pub fn is_identity(&self) -> bool {
        self.basis
            .labels()
            .iter()
            .zip(&self.columns)
            .all(|(l, col)| col.len() == 1 && col.coeff(l).is_one())
    }

    /// Exact inverse by Gauss-Jordan elimination.
    pub fn invert(&self) -> Result<LinearEndo> {
        let n = self.dim();
        let inv_cols = invert_dense(n, |row, col| self.columns[col].coeff(self.basis.get(row)))
            .ok_or(Error::Singular)?;
        let columns = inv_cols
            .into_iter()
            .map(|col| {
                FreeVector::from_terms(
                    col.into_iter()
                        .enumerate()
                        .map(|(r, c)| (self.basis.get(r).clone(), c)),
                )
            })
            .collect();
        Ok(LinearEndo {
            basis: self.basis.clone(),
            columns,
        })
    }

    /// Renders the matrix text format.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        out.push_str("basis:");
        for l in self.basis.labels() {
            out.push(' ');
            out.push_str(&l.to_string());
        }
        out.push('\n');
        for (l, col) in self.basis.labels().iter().zip(&self.columns) {
            out.push_str(&format!(
                "col {} = {}\n",
                l,
                text::format_vector(col, &self.basis)
            ));
        }
        out
    }

    /// Parses the matrix text format. Labels must be plain identifiers
    /// (with the `h_` prefix denoting shadow labels).
    pub fn parse(input: &str) -> Result<LinearEndo> {
        let raw = read_matrix_text(input)?;
        for (line, s) in &raw.label_lines {
            if !super::label::is_valid_name(s) {
                return Err(Error::Syntax {
                    line: *line,
                    msg: format!("invalid label `{s}`"),
                });
            }
        }
        let basis = Basis::new(raw.basis.iter().map(|s| BasisLabel::parse(s)).collect())?;
        let mut map = BTreeMap::new();
        for (col_label, terms) in raw.columns {
            let col =
                FreeVector::from_terms(terms.into_iter().map(|(l, c)| (BasisLabel::parse(&l), c)));
            map.insert(BasisLabel::parse(&col_label), col);
        }
        LinearEndo::from_column_map(basis, map)
    }
}

impl PartialEq for LinearEndo {
    fn eq(&self, other: &Self) -> bool {
        self.basis == other.basis && self.columns == other.columns
    }
}

impl Eq for LinearEndo {}

impl fmt::Display for LinearEndo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

/// Inverts the matrix with entries `entry(row, col)`, returning the
/// columns of the inverse, or `None` when singular.
///
/// Gauss-Jordan with the pivot chosen as the first row (lowest index)
/// holding a nonzero entry.
pub(crate) fn invert_dense<F>(n: usize, entry: F) -> Option<Vec<Vec<Scalar>>>
where
    F: Fn(usize, usize) -> Scalar,
{
    let mut rows: Vec<Vec<Scalar>> = (0..n)
        .map(|r| {
            let mut row: Vec<Scalar> = (0..n).map(|c| entry(r, c)).collect();
            row.extend((0..n).map(|c| {
                if c == r {
                    Scalar::one()
                } else {
                    Scalar::zero()
                }
            }));
            row
        })
        .collect();

    for col in 0..n {
        let pivot = (col..n).find(|&r| !rows[r][col].is_zero())?;
        rows.swap(col, pivot);
        let p = rows[col][col].clone();
        for value in rows[col].iter_mut().skip(col) {
            *value = &*value / &p;
        }
        let pivot_row = rows[col].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r == col || row[col].is_zero() {
                continue;
            }
            let factor = row[col].clone();
            for (value, pv) in row.iter_mut().zip(&pivot_row).skip(col) {
                *value = &*value - &(&factor * pv);
            }
        }
    }

    Some(
        (0..n)
            .map(|c| (0..n).map(|r| rows[r][n + c].clone()).collect())
            .collect(),
    )
}

pub(crate) struct RawMatrix {
    pub basis: Vec<String>,
    pub columns: Vec<(String, Vec<(String, Scalar)>)>,
    /// Every label occurrence with its line, for validation by the caller.
    pub label_lines: Vec<(usize, String)>,
}

/// Line-level reader for the matrix text format, shared by plain and
/// pair-labelled matrices. Checks that every basis label has exactly one
/// column and that all mentioned labels belong to the basis.
pub(crate) fn read_matrix_text(input: &str) -> Result<RawMatrix> {
    let mut basis: Option<Vec<String>> = None;
    let mut columns: Vec<(String, Vec<(String, Scalar)>)> = Vec::new();
    let mut label_lines: Vec<(usize, String)> = Vec::new();

    for (idx, raw_line) in input.lines().enumerate() {
        let line_no = idx + 1;
        let line = text::strip_comment(raw_line).trim();
        if line.is_empty() {
            continue;
        }
        if let Some(rest) = line.strip_prefix("basis:") {
            if basis.is_some() {
                return Err(Error::Syntax {
                    line: line_no,
                    msg: "repeated basis line".into(),
                });
            }
            let labels: Vec<String> = rest.split_whitespace().map(str::to_string).collect();
            if labels.is_empty() {
                return Err(Error::Syntax {
                    line: line_no,
                    msg: "empty basis".into(),
                });
            }
            for l in &labels {
                label_lines.push((line_no, l.clone()));
            }
            basis = Some(labels);
            continue;
        }
        let Some(rest) = line.strip_prefix("col ") else {
            return Err(Error::Syntax {
                line: line_no,
                msg: format!("expected `basis:` or `col` line, found `{line}`"),
            });
        };
        if basis.is_none() {
            return Err(Error::Syntax {
                line: line_no,
                msg: "column before basis line".into(),
            });
        }
        let Some((label, rhs)) = rest.split_once('=') else {
            return Err(Error::Syntax {
                line: line_no,
                msg: "missing `=`".into(),
            });
        };
        let label = label.trim().to_string();
        label_lines.push((line_no, label.clone()));
        let terms = text::parse_sum(rhs, 1).map_err(|msg| Error::Syntax { line: line_no, msg })?;
        let terms: Vec<(String, Scalar)> = terms
            .into_iter()
            .map(|(mut labels, c)| (labels.pop().expect("one factor"), c))
            .collect();
        for (l, _) in &terms {
            label_lines.push((line_no, l.clone()));
        }
        columns.push((label, terms));
    }

    let basis = basis.ok_or(Error::Syntax {
        line: 0,
        msg: "missing basis line".into(),
    })?;

    let mut seen = std::collections::HashSet::new();
    for b in &basis {
        if !seen.insert(b.clone()) {
            return Err(Error::DuplicateLabel(b.clone()));
        }
    }
    let mut have_col = std::collections::HashSet::new();
    for (label, terms) in &columns {
        if !seen.contains(label) {
            return Err(Error::UnknownLabel(label.clone()));
        }
        if !have_col.insert(label.clone()) {
            return Err(Error::DuplicateLabel(label.clone()));
        }
        for (l, _) in terms {
            if !seen.contains(l) {
                return Err(Error::UnknownLabel(l.clone()));
            }
        }
    }
    for b in &basis {
        if !have_col.contains(b) {
            return Err(Error::MissingColumn(b.clone()));
        }
    }

    Ok(RawMatrix {
        basis,
        columns,
        label_lines,
    })
}
