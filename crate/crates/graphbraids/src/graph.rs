//! Weighted directed graphs and their text format.
//!
//! A graph is a finite vertex list plus at most one weighted arc per
//! ordered vertex pair. Weights are nonzero exact rationals; a zero
//! weight would be indistinguishable from an absent arc once the graph is
//! turned into coproducts, so it is rejected outright.
//!
//! File format: one arc per line as `src -> dst [weight]` (weight an
//! integer or `p/q`, default 1), `#` comments, and an optional leading
//! `vertices: ...` line pinning the vertex order. Without that line the
//! order is first mention.

use std::collections::{BTreeMap, HashMap};

use num::{One, Signed, Zero};

use crate::algebra::is_valid_name;
use crate::error::{Error, Result};
use crate::scalar::{format_scalar, parse_scalar, Scalar};

#[derive(Clone, Debug)]
pub struct WeightedDigraph {
    vertices: Vec<String>,
    vindex: HashMap<String, usize>,
    arcs: BTreeMap<(usize, usize), Scalar>,
}

/// Vertices violating the no-sink/no-source assumption.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeReport {
    /// Vertices with no incoming arc.
    pub sources: Vec<String>,
    /// Vertices with no outgoing arc.
    pub sinks: Vec<String>,
}

impl DegreeReport {
    pub fn is_valid(&self) -> bool {
        self.sources.is_empty() && self.sinks.is_empty()
    }
}

impl WeightedDigraph {
    pub fn new<I>(vertices: Vec<String>, arcs: I) -> Result<Self>
    where
        I: IntoIterator<Item = (String, String, Scalar)>,
    {
        let mut vindex = HashMap::with_capacity(vertices.len());
        for (i, v) in vertices.iter().enumerate() {
            if !is_valid_name(v) {
                return Err(Error::Syntax {
                    line: 0,
                    msg: format!("invalid vertex name `{v}`"),
                });
            }
            if vindex.insert(v.clone(), i).is_some() {
                return Err(Error::DuplicateLabel(v.clone()));
            }
        }
        let mut g = WeightedDigraph {
            vertices,
            vindex,
            arcs: BTreeMap::new(),
        };
        for (src, dst, w) in arcs {
            g.add_arc(&src, &dst, w)?;
        }
        Ok(g)
    }

    fn add_arc(&mut self, src: &str, dst: &str, w: Scalar) -> Result<()> {
        let s = *self
            .vindex
            .get(src)
            .ok_or_else(|| Error::UnknownVertex(src.to_string()))?;
        let d = *self
            .vindex
            .get(dst)
            .ok_or_else(|| Error::UnknownVertex(dst.to_string()))?;
        if w.is_zero() {
            return Err(Error::ZeroWeight {
                src: src.to_string(),
                dst: dst.to_string(),
            });
        }
        if self.arcs.insert((s, d), w).is_some() {
            return Err(Error::DuplicateArc {
                src: src.to_string(),
                dst: dst.to_string(),
            });
        }
        Ok(())
    }

    /// Parses the graph file format.
    pub fn parse(input: &str) -> Result<Self> {
        let mut declared: Option<Vec<String>> = None;
        let mut seen_arc = false;
        let mut arcs: Vec<(usize, String, String, Scalar)> = Vec::new();
        let mut order: Vec<String> = Vec::new();
        let mut known: HashMap<String, ()> = HashMap::new();

        for (idx, raw_line) in input.lines().enumerate() {
            let line_no = idx + 1;
            let line = crate::algebra::text::strip_comment(raw_line).trim();
            if line.is_empty() {
                continue;
            }
            if let Some(rest) = line.strip_prefix("vertices:") {
                if declared.is_some() {
                    return Err(Error::Syntax {
                        line: line_no,
                        msg: "repeated vertices line".into(),
                    });
                }
                if seen_arc {
                    return Err(Error::Syntax {
                        line: line_no,
                        msg: "vertices line must precede arcs".into(),
                    });
                }
                let names: Vec<String> = rest.split_whitespace().map(str::to_string).collect();
                for n in &names {
                    if !is_valid_name(n) {
                        return Err(Error::Syntax {
                            line: line_no,
                            msg: format!("invalid vertex name `{n}`"),
                        });
                    }
                }
                declared = Some(names);
                continue;
            }
            let tokens: Vec<&str> = line.split_whitespace().collect();
            if tokens.len() < 3 || tokens.len() > 4 || tokens[1] != "->" {
                return Err(Error::Syntax {
                    line: line_no,
                    msg: format!("expected `src -> dst [weight]`, found `{line}`"),
                });
            }
            let (src, dst) = (tokens[0], tokens[2]);
            for name in [src, dst] {
                if !is_valid_name(name) {
                    return Err(Error::Syntax {
                        line: line_no,
                        msg: format!("invalid vertex name `{name}`"),
                    });
                }
            }
            let weight = match tokens.get(3) {
                Some(tok) => {
                    parse_scalar(tok).map_err(|msg| Error::Syntax { line: line_no, msg })?
                }
                None => Scalar::one(),
            };
            seen_arc = true;
            if declared.is_none() {
                for name in [src, dst] {
                    if known.insert(name.to_string(), ()).is_none() {
                        order.push(name.to_string());
                    }
                }
            }
            arcs.push((line_no, src.to_string(), dst.to_string(), weight));
        }

        let vertices = match declared {
            Some(names) => names,
            None => order,
        };
        let mut g = WeightedDigraph::new(vertices, [])?;
        for (line_no, src, dst, w) in arcs {
            g.add_arc(&src, &dst, w).map_err(|e| match e {
                Error::Syntax { msg, .. } => Error::Syntax { line: line_no, msg },
                other => other,
            })?;
        }
        Ok(g)
    }

    /// Canonical text form; `parse` of the result reproduces the graph.
    pub fn to_text(&self) -> String {
        let mut out = String::from("vertices:");
        for v in &self.vertices {
            out.push(' ');
            out.push_str(v);
        }
        out.push('\n');
        for ((s, d), w) in &self.arcs {
            if w.is_one() {
                out.push_str(&format!("{} -> {}\n", self.vertices[*s], self.vertices[*d]));
            } else {
                out.push_str(&format!(
                    "{} -> {} {}\n",
                    self.vertices[*s],
                    self.vertices[*d],
                    format_scalar(w)
                ));
            }
        }
        out
    }

    /// Plain dot-style rendering of the support.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph {\n");
        for v in &self.vertices {
            out.push_str(&format!("  {v};\n"));
        }
        for ((s, d), w) in &self.arcs {
            out.push_str(&format!(
                "  {} -> {} [label=\"{}\"];\n",
                self.vertices[*s],
                self.vertices[*d],
                format_scalar(w)
            ));
        }
        out.push_str("}\n");
        out
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn arc_count(&self) -> usize {
        self.arcs.len()
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn has_vertex(&self, name: &str) -> bool {
        self.vindex.contains_key(name)
    }

    /// Arcs in (source, destination) vertex order.
    pub fn arcs(&self) -> impl Iterator<Item = (&str, &str, &Scalar)> {
        self.arcs
            .iter()
            .map(|((s, d), w)| (self.vertices[*s].as_str(), self.vertices[*d].as_str(), w))
    }

    pub fn weight(&self, src: &str, dst: &str) -> Option<&Scalar> {
        let s = *self.vindex.get(src)?;
        let d = *self.vindex.get(dst)?;
        self.arcs.get(&(s, d))
    }

    /// Outgoing arcs of `v` as (destination, weight), in vertex order.
    pub fn out_arcs(&self, v: &str) -> Vec<(&str, &Scalar)> {
        let Some(&i) = self.vindex.get(v) else {
            return Vec::new();
        };
        self.arcs
            .range((i, 0)..(i + 1, 0))
            .map(|((_, d), w)| (self.vertices[*d].as_str(), w))
            .collect()
    }

    /// Incoming arcs of `v` as (source, weight), in vertex order.
    pub fn in_arcs(&self, v: &str) -> Vec<(&str, &Scalar)> {
        let Some(&i) = self.vindex.get(v) else {
            return Vec::new();
        };
        self.arcs
            .iter()
            .filter(|((_, d), _)| *d == i)
            .map(|((s, _), w)| (self.vertices[*s].as_str(), w))
            .collect()
    }

    /// Lists every sink and source; the standing assumption is that there
    /// are none.
    pub fn validate_no_sink_no_source(&self) -> DegreeReport {
        let n = self.vertices.len();
        let mut has_out = vec![false; n];
        let mut has_in = vec![false; n];
        for (s, d) in self.arcs.keys() {
            has_out[*s] = true;
            has_in[*d] = true;
        }
        DegreeReport {
            sources: (0..n)
                .filter(|&i| !has_in[i])
                .map(|i| self.vertices[i].clone())
                .collect(),
            sinks: (0..n)
                .filter(|&i| !has_out[i])
                .map(|i| self.vertices[i].clone())
                .collect(),
        }
    }

    /// True when every vertex's outgoing weights are nonnegative and sum
    /// to one.
    pub fn is_row_stochastic(&self) -> bool {
        let n = self.vertices.len();
        let mut sums = vec![Scalar::zero(); n];
        for ((s, _), w) in &self.arcs {
            if w.is_negative() {
                return false;
            }
            sums[*s] = &sums[*s] + w;
        }
        sums.iter().all(|s| s.is_one())
    }
}

impl PartialEq for WeightedDigraph {
    fn eq(&self, other: &Self) -> bool {
        self.vertices == other.vertices && self.arcs == other.arcs
    }
}

impl Eq for WeightedDigraph {}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{int, ratio};

    #[test]
    fn parses_unweighted_arcs() {
        let g = WeightedDigraph::parse("a -> b\nb -> a\n").unwrap();
        assert_eq!(g.vertex_count(), 2);
        assert_eq!(g.arc_count(), 2);
        assert_eq!(g.weight("a", "b"), Some(&int(1)));
        assert_eq!(g.vertices(), ["a".to_string(), "b".to_string()]);
    }

    #[test]
    fn zero_weight_is_rejected() {
        let err = WeightedDigraph::parse("a -> b 0").unwrap_err();
        assert_eq!(
            err,
            Error::ZeroWeight {
                src: "a".into(),
                dst: "b".into()
            }
        );
    }

    #[test]
    fn duplicate_arcs_are_rejected() {
        let err = WeightedDigraph::parse("a -> b\na -> b 2\n").unwrap_err();
        assert_eq!(
            err,
            Error::DuplicateArc {
                src: "a".into(),
                dst: "b".into()
            }
        );
    }

    #[test]
    fn declared_vertices_pin_order_and_scope() {
        let g = WeightedDigraph::parse("vertices: d c b a\na -> b\n").unwrap();
        assert_eq!(g.vertices(), ["d", "c", "b", "a"]);
        let err = WeightedDigraph::parse("vertices: a\na -> b\n").unwrap_err();
        assert_eq!(err, Error::UnknownVertex("b".into()));
    }

    #[test]
    fn malformed_lines_are_syntax_errors() {
        for bad in ["a b", "a -> ", "-> b", "a -> b 1 2", "a => b", "1a -> b"] {
            assert!(
                matches!(WeightedDigraph::parse(bad), Err(Error::Syntax { .. })),
                "accepted `{bad}`"
            );
        }
    }

    #[test]
    fn comments_and_blank_lines_are_ignored() {
        let g = WeightedDigraph::parse("# header\n\na -> b 1/2 # inline\n").unwrap();
        assert_eq!(g.weight("a", "b"), Some(&ratio(1, 2)));
    }

    #[test]
    fn single_arc_graph_has_source_and_sink() {
        let g = WeightedDigraph::parse("a -> b").unwrap();
        let report = g.validate_no_sink_no_source();
        assert_eq!(report.sources, ["a"]);
        assert_eq!(report.sinks, ["b"]);
        assert!(!report.is_valid());
    }

    #[test]
    fn loop_is_neither_sink_nor_source() {
        let g = WeightedDigraph::parse("a -> a").unwrap();
        assert!(g.validate_no_sink_no_source().is_valid());
        assert!(g.is_row_stochastic());
    }

    #[test]
    fn row_stochastic_checks_sums_and_signs() {
        let half = WeightedDigraph::parse("a -> a 1/2\na -> b 1/2\nb -> a\n").unwrap();
        assert!(half.is_row_stochastic());
        let ones = WeightedDigraph::parse("a -> a\na -> b\nb -> a\n").unwrap();
        assert!(!ones.is_row_stochastic());
        let neg = WeightedDigraph::parse("a -> a 3/2\na -> b -1/2\nb -> a\n").unwrap();
        assert!(!neg.is_row_stochastic());
    }

    #[test]
    fn text_round_trip() {
        let g = WeightedDigraph::parse("vertices: b a\na -> b 2/3\nb -> b\n").unwrap();
        let text = g.to_text();
        assert_eq!(WeightedDigraph::parse(&text).unwrap(), g);
        assert_eq!(text, "vertices: b a\nb -> b\na -> b 2/3\n");
    }

    #[test]
    fn arc_set_queries() {
        let g = WeightedDigraph::parse("a -> a\na -> b\nc -> b 5\n").unwrap();
        let out: Vec<_> = g.out_arcs("a").into_iter().map(|(d, _)| d).collect();
        assert_eq!(out, ["a", "b"]);
        let inn: Vec<_> = g
            .in_arcs("b")
            .into_iter()
            .map(|(s, w)| (s, w.clone()))
            .collect();
        assert_eq!(inn, [("a", int(1)), ("c", int(5))]);
        assert!(g.out_arcs("b").is_empty());
    }
}
