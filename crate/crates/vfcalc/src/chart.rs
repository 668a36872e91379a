//! Variable naming for a chart: coordinates first, then symbolic parameters.

use crate::VfError;
use polyalg::{rat, Rational};
use std::collections::HashSet;

/// Ordered variable list of a chart of ℝⁿ. The first `dim` names are the
/// coordinates; any trailing names are symbolic parameters that appear in
/// field coefficients but are never differentiated or flowed along.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Chart {
    names: Vec<String>,
    dim: usize,
}

impl Chart {
    pub fn new(coords: &[&str], params: &[&str]) -> Result<Chart, VfError> {
        if coords.is_empty() {
            return Err(VfError::NoCoordinates);
        }
        let mut seen = HashSet::new();
        for name in coords.iter().chain(params) {
            if !seen.insert(*name) {
                return Err(VfError::DuplicateName(name.to_string()));
            }
        }
        let names = coords.iter().chain(params).map(|s| s.to_string()).collect();
        Ok(Chart { names, dim: coords.len() })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn nvars(&self) -> usize {
        self.names.len()
    }

    /// All variable names in order, for parsing and rendering.
    pub fn names(&self) -> Vec<&str> {
        self.names.iter().map(|s| s.as_str()).collect()
    }

    pub fn coord_names(&self) -> &[String] {
        &self.names[..self.dim]
    }

    pub fn param_names(&self) -> &[String] {
        &self.names[self.dim..]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn origin(&self) -> Vec<Rational> {
        vec![rat(0, 1); self.dim]
    }

    /// Substitution vector fixing the coordinates at `point` and leaving
    /// the parameters symbolic.
    pub fn coord_assignment(&self, point: &[Rational]) -> Result<Vec<Option<Rational>>, VfError> {
        if point.len() != self.dim {
            return Err(VfError::PointLength { expected: self.dim, got: point.len() });
        }
        let mut assignment: Vec<Option<Rational>> = point.iter().cloned().map(Some).collect();
        assignment.resize(self.names.len(), None);
        Ok(assignment)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn coordinate_parameter_split() {
        let c = Chart::new(&["x1", "x2", "t"], &["a"]).unwrap();
        assert_eq!(c.dim(), 3);
        assert_eq!(c.nvars(), 4);
        assert_eq!(c.coord_names(), ["x1", "x2", "t"]);
        assert_eq!(c.param_names(), ["a"]);
        assert_eq!(c.index_of("a"), Some(3));
        assert_eq!(c.index_of("b"), None);
        assert_eq!(c.origin(), vec![rat(0, 1); 3]);
    }

    #[test]
    fn rejects_duplicates_and_empty() {
        assert_eq!(
            Chart::new(&["x", "x"], &[]),
            Err(VfError::DuplicateName("x".into()))
        );
        assert_eq!(
            Chart::new(&["x"], &["x"]),
            Err(VfError::DuplicateName("x".into()))
        );
        assert_eq!(Chart::new(&[], &["a"]), Err(VfError::NoCoordinates));
    }

    #[test]
    fn assignment_fixes_coordinates_only() {
        let c = Chart::new(&["x", "t"], &["a"]).unwrap();
        let a = c.coord_assignment(&[rat(1, 2), rat(0, 1)]).unwrap();
        assert_eq!(a, vec![Some(rat(1, 2)), Some(rat(0, 1)), None]);
        assert_eq!(
            c.coord_assignment(&[rat(1, 1)]),
            Err(VfError::PointLength { expected: 2, got: 1 })
        );
    }
}
