//! Finite groups given by Cayley tables, their unitary representations and
//! irreducible-representation data.

mod irreps;
mod rep;

pub use irreps::{builtin_irreps, reference_state, rep_in_irrep_basis, BasisLabel, Irrep, IrrepSet, ReferenceFrame};
pub use rep::{
    path_interchange_representation, pauli_representation, regular_representation, validate_representation,
    Cocycle, RepClassification, RepKind, RepViolation, UnitaryRep,
};

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};

/// Builtin group families.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BuiltinGroup {
    Cyclic(usize),
    Klein4,
    Dihedral(usize),
    Symmetric3,
}

impl fmt::Display for BuiltinGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BuiltinGroup::Cyclic(n) => write!(f, "cyclic:{n}"),
            BuiltinGroup::Klein4 => f.write_str("klein4"),
            BuiltinGroup::Dihedral(n) => write!(f, "dihedral:{n}"),
            BuiltinGroup::Symmetric3 => f.write_str("symmetric3"),
        }
    }
}

impl FromStr for BuiltinGroup {
    type Err = Error;

    /// Parses `kind[:param]` strings such as `cyclic:4` or `klein4`.
    fn from_str(s: &str) -> Result<Self> {
        let (kind, param) = match s.split_once(':') {
            Some((k, p)) => (k, Some(p)),
            None => (s, None),
        };
        let number = |p: Option<&str>| -> Result<usize> {
            let p = p.ok_or_else(|| Error::BadParameter(format!("`{kind}` needs a parameter, e.g. `{kind}:3`")))?;
            p.parse().map_err(|_| Error::BadParameter(format!("`{p}` is not a non-negative integer")))
        };
        match kind {
            "cyclic" => Ok(BuiltinGroup::Cyclic(number(param)?)),
            "dihedral" => Ok(BuiltinGroup::Dihedral(number(param)?)),
            "klein4" if param.is_none() => Ok(BuiltinGroup::Klein4),
            "symmetric3" if param.is_none() => Ok(BuiltinGroup::Symmetric3),
            _ => Err(Error::BadParameter(format!("unknown builtin group `{s}`"))),
        }
    }
}

/// A defect found while validating a Cayley table.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum GroupViolation {
    Empty,
    LabelCount { labels: usize, rows: usize },
    DuplicateLabel { label: String },
    /// The product in row `row`, column `col` is missing or out of range.
    Closure { row: usize, col: usize, value: Option<usize> },
    NoIdentity,
    /// `(a∘b)∘c != a∘(b∘c)`.
    Associativity { a: usize, b: usize, c: usize },
    NoInverse { element: usize },
}

impl fmt::Display for GroupViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupViolation::Empty => f.write_str("group has no elements"),
            GroupViolation::LabelCount { labels, rows } => write!(f, "{labels} labels but {rows} table rows"),
            GroupViolation::DuplicateLabel { label } => write!(f, "duplicate label `{label}`"),
            GroupViolation::Closure { row, col, value: Some(v) } => {
                write!(f, "closure: entry ({row},{col}) = {v} is out of range")
            }
            GroupViolation::Closure { row, col, value: None } => write!(f, "closure: entry ({row},{col}) is missing"),
            GroupViolation::NoIdentity => f.write_str("no identity element"),
            GroupViolation::Associativity { a, b, c } => write!(f, "associativity fails on ({a},{b},{c})"),
            GroupViolation::NoInverse { element } => write!(f, "element {element} has no inverse"),
        }
    }
}

/// Checks the group axioms on a raw Cayley table, reporting every violation.
/// Associativity is only checked once closure holds.
pub fn validate_group(labels: &[String], table: &[Vec<usize>]) -> std::result::Result<(), Vec<GroupViolation>> {
    analyze_table(labels, table).map(|_| ())
}

/// Returns `(identity, inverses)` for a valid table.
fn analyze_table(labels: &[String], table: &[Vec<usize>]) -> std::result::Result<(usize, Vec<usize>), Vec<GroupViolation>> {
    let n = table.len();
    let mut violations = Vec::new();
    if n == 0 {
        return Err(vec![GroupViolation::Empty]);
    }
    if labels.len() != n {
        violations.push(GroupViolation::LabelCount { labels: labels.len(), rows: n });
    }
    for (i, l) in labels.iter().enumerate() {
        if labels[..i].contains(l) {
            violations.push(GroupViolation::DuplicateLabel { label: l.clone() });
        }
    }
    for (row, entries) in table.iter().enumerate() {
        for col in 0..n {
            match entries.get(col) {
                Some(&v) if v < n => {}
                value => violations.push(GroupViolation::Closure { row, col, value: value.copied() }),
            }
        }
    }
    if !violations.is_empty() {
        return Err(violations);
    }

    for a in 0..n {
        for b in 0..n {
            let ab = table[a][b];
            for c in 0..n {
                if table[ab][c] != table[a][table[b][c]] {
                    violations.push(GroupViolation::Associativity { a, b, c });
                }
            }
        }
    }
    let identity = (0..n).find(|&e| (0..n).all(|g| table[e][g] == g && table[g][e] == g));
    let Some(e) = identity else {
        violations.push(GroupViolation::NoIdentity);
        return Err(violations);
    };
    let mut inverse = vec![0; n];
    for (g, inv) in inverse.iter_mut().enumerate() {
        match (0..n).find(|&h| table[g][h] == e && table[h][g] == e) {
            Some(h) => *inv = h,
            None => violations.push(GroupViolation::NoInverse { element: g }),
        }
    }
    if violations.is_empty() {
        Ok((e, inverse))
    } else {
        Err(violations)
    }
}

/// A finite group: labels plus a validated Cayley table with
/// `table[i][j]` the index of `gᵢ∘gⱼ`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteGroup {
    name: String,
    labels: Vec<String>,
    table: Vec<Vec<usize>>,
    identity: usize,
    inverse: Vec<usize>,
}

impl FiniteGroup {
    pub fn new(name: impl Into<String>, labels: Vec<String>, table: Vec<Vec<usize>>) -> Result<Self> {
        match analyze_table(&labels, &table) {
            Ok((identity, inverse)) => Ok(Self { name: name.into(), labels, table, identity, inverse }),
            Err(v) => Err(Error::InvalidGroup(v.iter().map(ToString::to_string).collect::<Vec<_>>().join("; "))),
        }
    }

    pub fn builtin(kind: BuiltinGroup) -> Result<Self> {
        let name = kind.to_string();
        match kind {
            BuiltinGroup::Cyclic(n) => {
                if n < 1 {
                    return Err(Error::BadParameter("cyclic group needs n >= 1".into()));
                }
                let table = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
                Self::new(name, (0..n).map(rotation_label).collect(), table)
            }
            BuiltinGroup::Klein4 => {
                let labels = ["e", "x", "y", "z"].map(String::from).to_vec();
                let table = (0..4).map(|a| (0..4).map(|b| a ^ b).collect()).collect();
                Self::new(name, labels, table)
            }
            BuiltinGroup::Dihedral(n) => {
                if n < 3 {
                    return Err(Error::BadParameter("dihedral group needs n >= 3".into()));
                }
                Self::new(name, dihedral_labels(n), dihedral_table(n))
            }
            BuiltinGroup::Symmetric3 => {
                let (labels, table) = symmetric3_from_permutations();
                Self::new(name, labels, table)
            }
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn order(&self) -> usize {
        self.table.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, g: usize) -> &str {
        &self.labels[g]
    }

    pub fn index_of(&self, label: &str) -> Result<usize> {
        self.labels.iter().position(|l| l == label).ok_or_else(|| Error::UnknownElement(label.to_string()))
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.table
    }

    /// Index of `a∘b`.
    #[inline]
    pub fn compose(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    #[inline]
    pub fn inverse(&self, g: usize) -> usize {
        self.inverse[g]
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn is_abelian(&self) -> bool {
        let n = self.order();
        (0..n).all(|a| (0..n).all(|b| self.table[a][b] == self.table[b][a]))
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.order()
    }
}

fn rotation_label(k: usize) -> String {
    match k {
        0 => "e".into(),
        1 => "r".into(),
        k => format!("r{k}"),
    }
}

/// Element `k + n·m` is `r^k s^m`.
fn dihedral_labels(n: usize) -> Vec<String> {
    let mut labels: Vec<String> = (0..n).map(rotation_label).collect();
    labels.extend((0..n).map(|k| match k {
        0 => "s".to_string(),
        k => format!("{}s", rotation_label(k)),
    }));
    labels
}

fn dihedral_table(n: usize) -> Vec<Vec<usize>> {
    // (r^a s^b)(r^c s^d) = r^{a + (-1)^b c} s^{b+d}
    let idx = |k: usize, m: usize| k + n * m;
    let mut table = vec![vec![0; 2 * n]; 2 * n];
    for (x, row) in table.iter_mut().enumerate() {
        let (a, b) = (x % n, x / n);
        for (y, entry) in row.iter_mut().enumerate() {
            let (c, d) = (y % n, y / n);
            let k = if b == 0 { (a + c) % n } else { (a + n - c) % n };
            *entry = idx(k, (b + d) % 2);
        }
    }
    table
}

/// S₃ realized as permutations of {0,1,2}, with `r` the 3-cycle
/// 0→1→2→0 and `s` the transposition of 1 and 2.
fn symmetric3_from_permutations() -> (Vec<String>, Vec<Vec<usize>>) {
    type Perm = [usize; 3];
    let compose = |p: &Perm, q: &Perm| -> Perm { [p[q[0]], p[q[1]], p[q[2]]] };
    let e: Perm = [0, 1, 2];
    let r: Perm = [1, 2, 0];
    let s: Perm = [0, 2, 1];
    let mut elements = Vec::with_capacity(6);
    for sm in [e, s] {
        let mut rk = e;
        for _ in 0..3 {
            elements.push(compose(&rk, &sm));
            rk = compose(&r, &rk);
        }
    }
    let table = elements
        .iter()
        .map(|a| {
            elements
                .iter()
                .map(|b| {
                    let ab = compose(a, b);
                    elements.iter().position(|x| *x == ab).expect("S3 is closed")
                })
                .collect()
        })
        .collect();
    (dihedral_labels(3), table)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclic_two() {
        let g = FiniteGroup::builtin(BuiltinGroup::Cyclic(2)).unwrap();
        assert_eq!(g.order(), 2);
        assert_eq!(g.table(), &[vec![0, 1], vec![1, 0]]);
        assert_eq!(g.labels(), &["e", "r"]);
    }

    #[test]
    fn klein_four_is_elementary_abelian() {
        let g = FiniteGroup::builtin(BuiltinGroup::Klein4).unwrap();
        assert_eq!(g.order(), 4);
        assert!(g.is_abelian());
        assert!(g.elements().all(|x| g.inverse(x) == x));
    }

    #[test]
    fn symmetric3_is_non_abelian() {
        let g = FiniteGroup::builtin(BuiltinGroup::Symmetric3).unwrap();
        assert_eq!(g.order(), 6);
        assert!(!g.is_abelian());
        // matches the dihedral presentation with the same labels
        assert_eq!(g.table(), FiniteGroup::builtin(BuiltinGroup::Dihedral(3)).unwrap().table());
    }

    #[test]
    fn dihedral_relations() {
        for n in 3..8 {
            let g = FiniteGroup::builtin(BuiltinGroup::Dihedral(n)).unwrap();
            let r = g.index_of("r").unwrap();
            let s = g.index_of("s").unwrap();
            // s r s = r⁻¹
            assert_eq!(g.compose(g.compose(s, r), s), g.inverse(r));
        }
    }

    #[test]
    fn bad_parameters() {
        assert!(FiniteGroup::builtin(BuiltinGroup::Cyclic(0)).is_err());
        assert!(FiniteGroup::builtin(BuiltinGroup::Dihedral(2)).is_err());
        assert!("cyclic".parse::<BuiltinGroup>().is_err());
        assert!("cyclic:x".parse::<BuiltinGroup>().is_err());
        assert!("tetra".parse::<BuiltinGroup>().is_err());
        assert_eq!("cyclic:4".parse::<BuiltinGroup>().unwrap(), BuiltinGroup::Cyclic(4));
        assert_eq!("symmetric3".parse::<BuiltinGroup>().unwrap(), BuiltinGroup::Symmetric3);
    }

    fn labels(n: usize) -> Vec<String> {
        (0..n).map(|i| format!("g{i}")).collect()
    }

    #[test]
    fn validate_accepts_cyclic_three() {
        let g = FiniteGroup::builtin(BuiltinGroup::Cyclic(3)).unwrap();
        assert_eq!(validate_group(g.labels(), g.table()), Ok(()));
    }

    #[test]
    fn validate_flags_short_row() {
        let table = vec![vec![0, 1, 2], vec![1, 2], vec![2, 0, 1]];
        let v = validate_group(&labels(3), &table).unwrap_err();
        assert_eq!(v, vec![GroupViolation::Closure { row: 1, col: 2, value: None }]);
        let table = vec![vec![0, 1, 2], vec![1, 2, 3], vec![2, 0, 1]];
        let v = validate_group(&labels(3), &table).unwrap_err();
        assert_eq!(v, vec![GroupViolation::Closure { row: 1, col: 2, value: Some(3) }]);
    }

    #[test]
    fn validate_finds_associativity_witness() {
        // a∘b = (b - a) mod 3: has a right identity only and is not associative
        let table: Vec<Vec<usize>> = (0..3).map(|a| (0..3).map(|b| (b + 3 - a) % 3).collect()).collect();
        let v = validate_group(&labels(3), &table).unwrap_err();
        // exhaustive oracle for the witness set
        let mut expected = Vec::new();
        for a in 0..3 {
            for b in 0..3 {
                for c in 0..3 {
                    if table[table[a][b]][c] != table[a][table[b][c]] {
                        expected.push(GroupViolation::Associativity { a, b, c });
                    }
                }
            }
        }
        assert!(!expected.is_empty());
        for w in &expected {
            assert!(v.contains(w));
        }
        assert!(v.contains(&GroupViolation::NoIdentity));
    }
}
