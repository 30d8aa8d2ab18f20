use std::collections::HashSet;
use std::fmt;

use super::QuiverError;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Arrow {
    pub name: String,
    pub source: usize,
    pub target: usize,
}

/// A finite quiver. Vertex and arrow indices follow declaration order, and
/// that order is the basis order used everywhere else.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Quiver {
    vertices: Vec<String>,
    arrows: Vec<Arrow>,
}

impl Quiver {
    pub fn new<V, A, S>(vertices: V, arrows: A) -> Result<Self, QuiverError>
    where
        V: IntoIterator<Item = S>,
        S: Into<String>,
        A: IntoIterator<Item = (S, S, S)>,
    {
        let vertices: Vec<String> = vertices.into_iter().map(Into::into).collect();
        let mut seen = HashSet::new();
        for v in &vertices {
            if !seen.insert(v.clone()) {
                return Err(QuiverError::DuplicateVertex(v.clone()));
            }
        }
        let mut q = Quiver {
            vertices,
            arrows: Vec::new(),
        };
        let mut names = HashSet::new();
        for (name, s, t) in arrows {
            let (name, s, t): (String, String, String) = (name.into(), s.into(), t.into());
            if !names.insert(name.clone()) {
                return Err(QuiverError::DuplicateArrow(name));
            }
            let source = q.vertex_index(&s)?;
            let target = q.vertex_index(&t)?;
            q.arrows.push(Arrow { name, source, target });
        }
        Ok(q)
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn arrow_count(&self) -> usize {
        self.arrows.len()
    }

    pub fn vertex_name(&self, v: usize) -> &str {
        &self.vertices[v]
    }

    pub fn arrow(&self, a: usize) -> &Arrow {
        &self.arrows[a]
    }

    pub fn vertex_index(&self, name: &str) -> Result<usize, QuiverError> {
        self.vertices
            .iter()
            .position(|v| v == name)
            .ok_or_else(|| QuiverError::UnknownVertex(name.to_string()))
    }

    pub fn arrow_index(&self, name: &str) -> Result<usize, QuiverError> {
        self.arrows
            .iter()
            .position(|a| a.name == name)
            .ok_or_else(|| QuiverError::UnknownArrow(name.to_string()))
    }

    /// Arrows `from -> to`, in declaration order.
    pub fn arrows_between(&self, from: usize, to: usize) -> Vec<usize> {
        (0..self.arrows.len())
            .filter(|&a| self.arrows[a].source == from && self.arrows[a].target == to)
            .collect()
    }

    /// Same shape with every arrow reversed and every name passed through `rename`.
    pub(crate) fn reversed_renamed(&self, rename: impl Fn(&str) -> String) -> Quiver {
        Quiver {
            vertices: self.vertices.iter().map(|v| rename(v)).collect(),
            arrows: self
                .arrows
                .iter()
                .map(|a| Arrow {
                    name: rename(&a.name),
                    source: a.target,
                    target: a.source,
                })
                .collect(),
        }
    }

    pub(crate) fn renamed(&self, rename: impl Fn(&str) -> String) -> Quiver {
        Quiver {
            vertices: self.vertices.iter().map(|v| rename(v)).collect(),
            arrows: self
                .arrows
                .iter()
                .map(|a| Arrow {
                    name: rename(&a.name),
                    source: a.source,
                    target: a.target,
                })
                .collect(),
        }
    }

    /// All paths of exactly `length` arrows, optionally filtered by endpoints,
    /// ordered lexicographically by their written arrow sequence (arrow
    /// declaration order). Trivial paths come in vertex order.
    pub fn paths(&self, length: usize, source: Option<usize>, target: Option<usize>) -> Vec<Path> {
        if length == 0 {
            return (0..self.vertices.len())
                .filter(|v| source.is_none_or(|s| s == *v) && target.is_none_or(|t| t == *v))
                .map(Path::trivial)
                .collect();
        }
        let mut out = Vec::new();
        let mut stack = Vec::with_capacity(length);
        for a in 0..self.arrows.len() {
            if target.is_some_and(|t| self.arrows[a].target != t) {
                continue;
            }
            stack.push(a);
            self.extend_paths(length, source, &mut stack, &mut out);
            stack.pop();
        }
        out
    }

    // `stack` holds the written sequence so far; the next arrow is applied
    // before the last one in the stack.
    fn extend_paths(&self, length: usize, source: Option<usize>, stack: &mut Vec<usize>, out: &mut Vec<Path>) {
        let last = *stack.last().expect("nonempty");
        if stack.len() == length {
            let src = self.arrows[last].source;
            if source.is_none_or(|s| s == src) {
                out.push(Path {
                    source: src,
                    target: self.arrows[stack[0]].target,
                    arrows: stack.clone(),
                });
            }
            return;
        }
        let need = self.arrows[last].source;
        for a in 0..self.arrows.len() {
            if self.arrows[a].target == need {
                stack.push(a);
                self.extend_paths(length, source, stack, out);
                stack.pop();
            }
        }
    }

    pub fn format_path(&self, p: &Path) -> String {
        if p.arrows.is_empty() {
            return format!("e_{}", self.vertices[p.source]);
        }
        p.arrows
            .iter()
            .map(|&a| self.arrows[a].name.as_str())
            .collect::<Vec<_>>()
            .join(" ")
    }
}

/// A path in written (right-to-left) order: `arrows[0]` is applied last.
/// The trivial path at `v` has no arrows and `source == target == v`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Path {
    pub source: usize,
    pub target: usize,
    pub arrows: Vec<usize>,
}

impl Path {
    pub fn trivial(v: usize) -> Self {
        Path {
            source: v,
            target: v,
            arrows: Vec::new(),
        }
    }

    pub fn arrow(q: &Quiver, a: usize) -> Self {
        let ar = q.arrow(a);
        Path {
            source: ar.source,
            target: ar.target,
            arrows: vec![a],
        }
    }

    pub fn len(&self) -> usize {
        self.arrows.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.arrows.is_empty()
    }

    /// `self · other`: `other` first, then `self`. `None` unless
    /// `other` ends where `self` starts.
    pub fn compose(&self, other: &Path) -> Option<Path> {
        if self.source != other.target {
            return None;
        }
        let mut arrows = self.arrows.clone();
        arrows.extend_from_slice(&other.arrows);
        Some(Path {
            source: other.source,
            target: self.target,
            arrows,
        })
    }

    /// The same path read in the opposite quiver.
    pub fn reversed(&self) -> Path {
        let mut arrows = self.arrows.clone();
        arrows.reverse();
        Path {
            source: self.target,
            target: self.source,
            arrows,
        }
    }
}

impl fmt::Display for Path {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.arrows.is_empty() {
            write!(f, "e{}", self.source)
        } else {
            let parts: Vec<String> = self.arrows.iter().map(|a| a.to_string()).collect();
            write!(f, "<{}>", parts.join(" "))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn loop_quiver() -> Quiver {
        Quiver::new(["1", "2"], [("alpha", "1", "2"), ("beta", "2", "2")]).unwrap()
    }

    pub(crate) fn square_quiver() -> Quiver {
        Quiver::new(
            ["1", "2", "3", "4", "5", "6"],
            [
                ("alpha", "1", "3"),
                ("beta", "2", "4"),
                ("gamma", "3", "4"),
                ("delta", "3", "5"),
                ("eps", "4", "6"),
                ("zeta", "5", "6"),
            ],
        )
        .unwrap()
    }

    fn names(q: &Quiver, ps: &[Path]) -> Vec<String> {
        ps.iter().map(|p| q.format_path(p)).collect()
    }

    #[test]
    fn length_two_paths() {
        let q = loop_quiver();
        assert_eq!(names(&q, &q.paths(2, None, None)), ["beta alpha", "beta beta"]);
        let q = square_quiver();
        assert_eq!(
            names(&q, &q.paths(2, None, None)),
            ["gamma alpha", "delta alpha", "eps beta", "eps gamma", "zeta delta"]
        );
    }

    #[test]
    fn trivial_paths() {
        let q = square_quiver();
        let p = q.paths(0, None, None);
        assert_eq!(p.len(), 6);
        assert!(p.iter().all(Path::is_trivial));
        assert_eq!(q.paths(0, Some(2), Some(2)).len(), 1);
        assert_eq!(q.paths(0, Some(2), Some(3)).len(), 0);
    }

    #[test]
    fn endpoint_filters() {
        let q = loop_quiver();
        let p = q.paths(3, Some(0), None);
        assert_eq!(names(&q, &p), ["beta beta alpha"]);
        assert!(q.paths(3, None, Some(0)).is_empty());
    }

    #[test]
    fn rejects_bad_quivers() {
        assert_eq!(
            Quiver::new(["1", "1"], Vec::<(&str, &str, &str)>::new()),
            Err(QuiverError::DuplicateVertex("1".into()))
        );
        assert_eq!(
            Quiver::new(["1"], [("a", "1", "1"), ("a", "1", "1")]),
            Err(QuiverError::DuplicateArrow("a".into()))
        );
        assert_eq!(
            Quiver::new(["1"], [("a", "1", "2")]),
            Err(QuiverError::UnknownVertex("2".into()))
        );
    }

    #[test]
    fn composition_is_right_to_left() {
        let q = loop_quiver();
        let alpha = Path::arrow(&q, 0);
        let beta = Path::arrow(&q, 1);
        let ba = beta.compose(&alpha).unwrap();
        assert_eq!(q.format_path(&ba), "beta alpha");
        assert_eq!((ba.source, ba.target), (0, 1));
        assert!(alpha.compose(&beta).is_none());
    }
}
