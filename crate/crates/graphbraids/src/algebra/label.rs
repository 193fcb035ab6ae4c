//! Basis labels and ordered bases of free vector spaces.

use std::collections::HashMap;
use std::fmt;

use crate::error::{Error, Result};

/// A named basis element.
///
/// `Vertex` labels name graph vertices; `Shadow` labels are the doubled
/// partners introduced by companion constructions and render as `h_<name>`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum BasisLabel {
    Vertex(String),
    Shadow(String),
}

impl BasisLabel {
    pub fn vertex(name: impl Into<String>) -> Self {
        BasisLabel::Vertex(name.into())
    }

    pub fn shadow(name: impl Into<String>) -> Self {
        BasisLabel::Shadow(name.into())
    }

    pub fn name(&self) -> &str {
        match self {
            BasisLabel::Vertex(n) | BasisLabel::Shadow(n) => n,
        }
    }

    pub fn is_shadow(&self) -> bool {
        matches!(self, BasisLabel::Shadow(_))
    }

    /// Inverse of `Display`: `h_<rest>` reads as a shadow label, anything
    /// else as a vertex label.
    pub fn parse(text: &str) -> BasisLabel {
        match text.strip_prefix("h_") {
            Some(rest) if !rest.is_empty() => BasisLabel::Shadow(rest.to_string()),
            _ => BasisLabel::Vertex(text.to_string()),
        }
    }
}

impl fmt::Display for BasisLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BasisLabel::Vertex(n) => write!(f, "{n}"),
            BasisLabel::Shadow(n) => write!(f, "h_{n}"),
        }
    }
}

/// True for identifiers matching `[A-Za-z_][A-Za-z0-9_]*`.
pub fn is_valid_name(s: &str) -> bool {
    let mut bytes = s.bytes();
    match bytes.next() {
        Some(b) if b.is_ascii_alphabetic() || b == b'_' => {}
        _ => return false,
    }
    bytes.all(|b| b.is_ascii_alphanumeric() || b == b'_')
}

/// An ordered basis with O(1) position lookup.
///
/// The order is the declaration order, which every printout follows.
#[derive(Clone, Debug)]
pub struct Basis {
    labels: Vec<BasisLabel>,
    index: HashMap<BasisLabel, usize>,
}

impl Basis {
    pub fn new(labels: Vec<BasisLabel>) -> Result<Self> {
        if labels.is_empty() {
            return Err(Error::EmptyBasis);
        }
        let mut index = HashMap::with_capacity(labels.len());
        for (i, l) in labels.iter().enumerate() {
            if index.insert(l.clone(), i).is_some() {
                return Err(Error::DuplicateLabel(l.to_string()));
            }
        }
        Ok(Basis { labels, index })
    }

    /// Basis of vertex labels, in the given order.
    pub fn from_names<I, S>(names: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        Basis::new(names.into_iter().map(BasisLabel::vertex).collect())
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[BasisLabel] {
        &self.labels
    }

    pub fn get(&self, i: usize) -> &BasisLabel {
        &self.labels[i]
    }

    pub fn pos(&self, label: &BasisLabel) -> Option<usize> {
        self.index.get(label).copied()
    }

    pub fn contains(&self, label: &BasisLabel) -> bool {
        self.index.contains_key(label)
    }

    /// All ordered pairs in row-major order (left factor varies slowest).
    pub fn pairs_row_major(&self) -> impl Iterator<Item = (&BasisLabel, &BasisLabel)> {
        self.labels
            .iter()
            .flat_map(move |x| self.labels.iter().map(move |y| (x, y)))
    }
}

impl PartialEq for Basis {
    fn eq(&self, other: &Self) -> bool {
        self.labels == other.labels
    }
}

impl Eq for Basis {}
