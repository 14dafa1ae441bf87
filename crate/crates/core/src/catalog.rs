//! Named algebras with explicit multiplication tables.
//!
//! Basis order follows the printed tables: `e₁..e_d`, and for `H(n,m)` the
//! central generator `x` is the last basis vector of the Heisenberg block.

use std::fmt;
use std::str::FromStr;

use crate::algebra::NLieAlgebra;
use crate::error::{AlgebraError, CatalogError};
use crate::field::Field;

/// The two readings of the doubly assigned `L_{7,3}` row.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum L73Reading {
    /// `[e₁,e₂]=e₅, [e₃,e₄]=e₅, [e₁,e₃]=e₆`.
    A,
    /// `[e₁,e₂]=e₅, [e₃,e₄]=e₆` (the same table as `L_{7,4}`).
    B,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Label {
    /// `F(d)`, with arity `n`.
    Abelian { n: usize, d: usize },
    /// `H(n,m) ⊕ F(k)`; plain `H(n,m)` when `k = 0`.
    Heisenberg { n: usize, m: usize, k: usize },
    /// The indexed families `A_{n,d,k}` with `d - n ∈ {2,3,4,5}`.
    Family { n: usize, d: usize, k: usize },
    /// The 3-Lie algebra `[e₁,e₂,e₃]=e₇, [e₄,e₅,e₆]=e₈`.
    A387,
    /// The same algebra with the central vectors swapped.
    A381,
    /// `L_{7,i}`; `i = 3` needs a reading.
    L7 { i: usize, reading: Option<L73Reading> },
    /// The 5-dimensional Lie algebra `[x₁,x₂]=x₄, [x₁,x₃]=x₅`.
    L5,
}

impl Label {
    pub fn heisenberg(n: usize, m: usize, k: usize) -> Self {
        Label::Heisenberg { n, m, k }
    }

    pub fn family(n: usize, offset: usize, k: usize) -> Self {
        Label::Family { n, d: n + offset, k }
    }

    pub fn arity(&self) -> usize {
        match *self {
            Label::Abelian { n, .. } | Label::Heisenberg { n, .. } | Label::Family { n, .. } => n,
            Label::A387 | Label::A381 => 3,
            Label::L7 { .. } | Label::L5 => 2,
        }
    }

    pub fn dim(&self) -> usize {
        match *self {
            Label::Abelian { d, .. } | Label::Family { d, .. } => d,
            Label::Heisenberg { n, m, k } => n * m + 1 + k,
            Label::A387 | Label::A381 => 8,
            Label::L7 { .. } => 7,
            Label::L5 => 5,
        }
    }

    /// Whether the table is nilpotent of class exactly two.
    pub fn is_class_two(&self) -> bool {
        !matches!(self, Label::Abelian { .. }) && !self.is_class_three()
    }

    fn is_class_three(&self) -> bool {
        matches!(*self, Label::Family { n, d, k: 1 } if d == n + 2)
    }

    /// Checks the side conditions of each family.
    pub fn validate(&self) -> Result<(), CatalogError> {
        let bad = || CatalogError::InvalidParameters(self.to_string());
        let ok = match *self {
            Label::Abelian { n, .. } => n >= 2,
            Label::Heisenberg { n, m, .. } => n >= 2 && m >= 1,
            Label::Family { n, d, k } => match d.checked_sub(n) {
                Some(2) | Some(3) => n >= 2 && k == 1,
                Some(4) => n >= 3 && (1..=3).contains(&k),
                Some(5) => n >= 3 && (1..=7).contains(&k) && (k != 3 || n >= 4),
                _ => false,
            },
            Label::A387 | Label::A381 | Label::L5 => true,
            Label::L7 { i, reading } => {
                if i == 3 && reading.is_none() {
                    return Err(CatalogError::DisputedEntry);
                }
                (1..=10).contains(&i) && (i == 3 || reading.is_none())
            }
        };
        if ok {
            Ok(())
        } else {
            Err(bad())
        }
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Label::Abelian { d, .. } => write!(f, "F({d})"),
            Label::Heisenberg { n, m, k: 0 } => write!(f, "H({n},{m})"),
            Label::Heisenberg { n, m, k } => write!(f, "H({n},{m})+F({k})"),
            Label::Family { n, d, k } => write!(f, "A({n},{d},{k})"),
            Label::A387 => write!(f, "A_387"),
            Label::A381 => write!(f, "A_381"),
            Label::L7 { i, reading: None } => write!(f, "L7({i})"),
            Label::L7 { i, reading: Some(r) } => write!(f, "L7({i}{r:?})"),
            Label::L5 => write!(f, "L5"),
        }
    }
}

fn parse_args(s: &str, prefix: &str) -> Option<Vec<usize>> {
    let inner = s.strip_prefix(prefix)?.strip_prefix('(')?.strip_suffix(')')?;
    inner.split(',').map(|t| t.trim().parse().ok()).collect()
}

impl Label {
    /// Parses a label; `F(d)` needs an arity since the name does not carry one.
    pub fn parse(s: &str, arity: Option<usize>) -> Result<Self, CatalogError> {
        let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let bad = || CatalogError::BadLabel(s.to_string());
        let label = match t.as_str() {
            "A_387" | "A387" => Label::A387,
            "A_381" | "A381" => Label::A381,
            "L5" => Label::L5,
            "L7(3A)" => Label::L7 { i: 3, reading: Some(L73Reading::A) },
            "L7(3B)" => Label::L7 { i: 3, reading: Some(L73Reading::B) },
            _ => {
                if let Some((h, rest)) = t.split_once(")+F(") {
                    let hv = parse_args(&format!("{h})"), "H").ok_or_else(bad)?;
                    let k: usize = rest.strip_suffix(')').and_then(|x| x.parse().ok()).ok_or_else(bad)?;
                    match hv[..] {
                        [n, m] => Label::Heisenberg { n, m, k },
                        _ => return Err(bad()),
                    }
                } else if let Some(v) = parse_args(&t, "H") {
                    match v[..] {
                        [n, m] => Label::Heisenberg { n, m, k: 0 },
                        _ => return Err(bad()),
                    }
                } else if let Some(v) = parse_args(&t, "A") {
                    match v[..] {
                        [n, d, k] => Label::Family { n, d, k },
                        _ => return Err(bad()),
                    }
                } else if let Some(v) = parse_args(&t, "L7") {
                    match v[..] {
                        [i] => Label::L7 { i, reading: None },
                        _ => return Err(bad()),
                    }
                } else if let Some(v) = parse_args(&t, "F") {
                    match (&v[..], arity) {
                        ([d], Some(n)) => Label::Abelian { n, d: *d },
                        ([n, d], _) => Label::Abelian { n: *n, d: *d },
                        _ => return Err(bad()),
                    }
                } else {
                    return Err(bad());
                }
            }
        };
        Ok(label)
    }
}

impl FromStr for Label {
    type Err = CatalogError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Label::parse(s, None)
    }
}

/// `1..=n` shifted: the 1-based run `start..start+len`.
fn run(start: usize, len: usize) -> Vec<usize> {
    (start..start + len).collect()
}

/// `1..=n` without `skip`, then `extra` appended.
fn run_without(n: usize, skip: &[usize], extra: &[usize]) -> Vec<usize> {
    (1..=n).filter(|i| !skip.contains(i)).chain(extra.iter().copied()).collect()
}

/// The monomial rows `(args, target)` of a table, all 1-based.
fn rows(label: &Label) -> Vec<(Vec<usize>, usize)> {
    match *label {
        Label::Abelian { .. } => vec![],
        Label::Heisenberg { n, m, .. } => (0..m).map(|i| (run(n * i + 1, n), n * m + 1)).collect(),
        Label::Family { n, d, k } => match (d - n, k) {
            (2, _) => vec![(run(1, n), n + 1), (run(2, n), n + 2)],
            // Two central blocks shifted by one.
            (3, _) => vec![(run(2, n), n + 3), (run(1, n), n + 2)],
            (4, 1) => vec![(run(1, n), n + 3), (run(2, n), n + 4)],
            (4, 2) => vec![(run(1, n), n + 3), (run(3, n), n + 4)],
            (4, 3) => vec![
                (run(1, n), n + 1),
                (run_without(n, &[1], &[n + 2]), n + 3),
                (run_without(n, &[2], &[n + 2]), n + 4),
            ],
            (5, 1) => vec![(run(1, n), n + 4), (run(2, n), n + 5)],
            (5, 2) => vec![(run(1, n), n + 4), (run(3, n), n + 5)],
            (5, 3) => vec![(run(1, n), n + 5), (run(4, n), n + 4)],
            (5, 4) => vec![(run(1, n), n + 3), (run(2, n), n + 4), (run_without(n + 1, &[2], &[]), n + 5)],
            (5, 5) => vec![(run(1, n), n + 3), (run(2, n), n + 4), (run_without(n, &[1], &[n + 2]), n + 5)],
            (5, 6) => vec![(run(1, n), n + 3), (run(2, n), n + 4), (run(3, n), n + 5)],
            (5, 7) => vec![
                (run(1, n), n + 1),
                (run_without(n, &[3], &[n + 2]), n + 5),
                (run_without(n, &[2], &[n + 2]), n + 4),
                (run_without(n, &[1], &[n + 2]), n + 3),
            ],
            _ => unreachable!("validated"),
        },
        Label::A387 => vec![(vec![1, 2, 3], 7), (vec![4, 5, 6], 8)],
        Label::A381 => vec![(vec![1, 2, 3], 8), (vec![4, 5, 6], 7)],
        Label::L5 => vec![(vec![1, 2], 4), (vec![1, 3], 5)],
        Label::L7 { i, reading } => match (i, reading) {
            (1, _) => vec![(vec![1, 2], 4), (vec![1, 3], 5)],
            (2, _) => vec![(vec![1, 2], 4), (vec![1, 3], 5), (vec![2, 3], 6)],
            (3, Some(L73Reading::A)) => vec![(vec![1, 2], 5), (vec![3, 4], 5), (vec![1, 3], 6)],
            (3, _) | (4, _) => vec![(vec![1, 2], 5), (vec![3, 4], 6)],
            (5, _) => vec![(vec![1, 2], 5), (vec![2, 3], 6), (vec![2, 4], 7)],
            (6, _) => vec![(vec![1, 2], 5), (vec![2, 3], 6), (vec![3, 4], 7)],
            (7, _) => vec![(vec![1, 2], 5), (vec![3, 4], 5), (vec![2, 3], 6), (vec![2, 4], 7)],
            (8, _) => vec![(vec![1, 2], 5), (vec![3, 4], 5), (vec![1, 3], 6), (vec![2, 4], 7)],
            (9, _) => vec![(vec![1, 5], 6), (vec![3, 4], 6), (vec![2, 5], 7)],
            (10, _) => vec![(vec![1, 2], 6), (vec![3, 4], 6), (vec![1, 5], 7), (vec![2, 3], 7)],
            _ => unreachable!("validated"),
        },
    }
}

/// Builds the table of a label over `field`.
pub fn build<F: Field>(label: &Label, field: &F) -> Result<NLieAlgebra<F>, CatalogError> {
    label.validate()?;
    let fail = |e: AlgebraError| CatalogError::InvalidParameters(format!("{label}: {e}"));
    let (n, d) = (label.arity(), label.dim());
    let mut a = NLieAlgebra::new(field, n, d).map_err(fail)?;
    for (args, target) in rows(label) {
        // Rows sharing a key add up (L7 rows never collide after validation).
        let mut v = a.bracket_basis(&args.iter().map(|i| i - 1).collect::<Vec<_>>());
        v[target - 1] = field.add(&v[target - 1], &field.one());
        a.set_bracket(&args.iter().map(|i| i - 1).collect::<Vec<_>>(), v).map_err(fail)?;
    }
    if let Label::Heisenberg { n, m, .. } = *label {
        let mut names: Vec<String> = (1..=n * m).map(|i| format!("x{i}")).collect();
        names.push("x".into());
        names.extend((1..=d - n * m - 1).map(|i| format!("f{i}")));
        a = a.with_labels(names);
    }
    Ok(a)
}

/// The class-two table with two shifted generator blocks on `n + k` generators:
/// `[e_{k-1},…,e_{n+k-2}] = e_{n+k}`, `[e₁,…,eₙ] = e_{n+k-1}`, for `3 ≤ k ≤ n+1`.
pub fn shifted_pair<F: Field>(n: usize, k: usize, field: &F) -> Result<NLieAlgebra<F>, CatalogError> {
    if n < 2 || !(3..=n + 1).contains(&k) {
        return Err(CatalogError::InvalidParameters(format!("shifted pair n={n} k={k}")));
    }
    let fail = |e: AlgebraError| CatalogError::InvalidParameters(e.to_string());
    let mut a = NLieAlgebra::new(field, n, n + k).map_err(fail)?;
    a.set_monomial(&run(k - 1, n), n + k).map_err(fail)?;
    a.set_monomial(&run(1, n), n + k - 1).map_err(fail)?;
    Ok(a)
}

/// A list of labels and whether it is the complete classification.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LabelList {
    pub labels: Vec<Label>,
    pub complete: bool,
}

/// The class-two algebras of arity `n` and dimension `d` known to the catalog.
///
/// When no class-two algebra exists the list is `[F(d)]`.
pub fn list_for(n: usize, d: usize) -> LabelList {
    let mut labels = Vec::new();
    let mut complete = false;
    if n >= 3 {
        match d.checked_sub(n) {
            Some(0) => complete = true,
            Some(1) => {
                labels.push(Label::heisenberg(n, 1, 0));
                complete = true;
            }
            Some(2) => {
                labels.push(Label::heisenberg(n, 1, 1));
                complete = true;
            }
            Some(3) => {
                labels.push(Label::heisenberg(n, 1, 2));
                labels.push(Label::family(n, 3, 1));
            }
            Some(4) => {
                labels.push(Label::heisenberg(n, 1, 3));
                labels.extend((1..=3).map(|k| Label::family(n, 4, k)));
                if n == 3 {
                    labels.push(Label::heisenberg(3, 2, 0));
                }
                complete = true;
            }
            Some(5) => {
                labels.push(Label::heisenberg(n, 1, 4));
                if n == 3 {
                    labels.push(Label::heisenberg(3, 2, 1));
                    labels.push(Label::A387);
                }
                if n == 4 {
                    labels.push(Label::heisenberg(4, 2, 0));
                }
                labels.extend((1..=7).filter(|&k| k != 3 || n >= 4).map(|k| Label::family(n, 5, k)));
                complete = true;
            }
            Some(_) => {
                for m in 1..=(d - 1) / n {
                    labels.push(Label::heisenberg(n, m, d - n * m - 1));
                }
            }
            None => {}
        }
    } else if n == 2 {
        for m in 1..=(d.saturating_sub(1)) / 2 {
            labels.push(Label::heisenberg(2, m, d - 2 * m - 1));
        }
        if d == 5 {
            labels.push(Label::L5);
        }
        if d == 7 {
            labels.extend((1..=10).filter(|&i| i != 3).map(|i| Label::L7 { i, reading: None }));
        }
    }
    if labels.is_empty() {
        labels.push(Label::Abelian { n, d });
    }
    LabelList { labels, complete }
}

/// Every non-abelian label the catalog can build for arity `n` (no readings of `L7(3)`).
pub fn all_labels(n: usize) -> Vec<Label> {
    let mut out = Vec::new();
    if n == 2 {
        out.push(Label::L5);
        out.extend((1..=10).filter(|&i| i != 3).map(|i| Label::L7 { i, reading: None }));
        out.push(Label::L7 { i: 3, reading: Some(L73Reading::A) });
        out.push(Label::L7 { i: 3, reading: Some(L73Reading::B) });
    }
    for m in 1..=2 {
        for k in 0..=4 {
            out.push(Label::heisenberg(n, m, k));
        }
    }
    for offset in 2..=5 {
        for k in 1..=7 {
            let l = Label::family(n, offset, k);
            if l.validate().is_ok() {
                out.push(l);
            }
        }
    }
    if n == 3 {
        out.push(Label::A387);
        out.push(Label::A381);
    }
    out
}
