//! Oriented link diagrams from planar-diagram (PD) codes and braid words.
//!
//! PD convention: `X[a,b,c,d]` lists the four edge labels at a crossing
//! counterclockwise, starting from the incoming under-strand, so the under
//! strand runs `a → c`. The over strand runs either `d → b` (positive
//! crossing) or `b → d` (negative crossing); which one is decided by
//! propagating edge orientations around each component. A component that
//! never passes under anything is oriented so that it runs `d → b` at its
//! first crossing in input order.
//!
//! Components are ordered by their smallest edge label. `O[c]` adds a
//! crossingless circle labelled `c`.

mod braid;
mod parse;

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::linalg::IntMatrix;

pub use braid::BraidWord;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("link input error at byte {pos}: {msg}")]
pub struct LinkParseError {
    pub pos: usize,
    pub msg: String,
}

impl LinkParseError {
    pub(crate) fn new(pos: usize, msg: impl Into<String>) -> Self {
        LinkParseError { pos, msg: msg.into() }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Crossing {
    pub pd: [u32; 4],
    pub sign: i8,
}

impl Crossing {
    pub fn under_in(&self) -> u32 {
        self.pd[0]
    }

    pub fn under_out(&self) -> u32 {
        self.pd[2]
    }

    pub fn over_in(&self) -> u32 {
        if self.sign > 0 {
            self.pd[3]
        } else {
            self.pd[1]
        }
    }

    pub fn over_out(&self) -> u32 {
        if self.sign > 0 {
            self.pd[1]
        } else {
            self.pd[3]
        }
    }
}

/// Validated, oriented link diagram.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinkDiagram {
    crossings: Vec<Crossing>,
    loops: Vec<u32>,
    /// Edge labels of each component in traversal order, starting at the
    /// smallest label.
    components: Vec<Vec<u32>>,
    edge_component: BTreeMap<u32, usize>,
    /// Crossing index at which each edge ends.
    edge_head: BTreeMap<u32, usize>,
}

impl LinkDiagram {
    pub fn crossings(&self) -> &[Crossing] {
        &self.crossings
    }

    /// Labels of crossingless components.
    pub fn loops(&self) -> &[u32] {
        &self.loops
    }

    pub fn num_components(&self) -> usize {
        self.components.len()
    }

    pub fn components(&self) -> &[Vec<u32>] {
        &self.components
    }

    pub fn component_of(&self, edge: u32) -> usize {
        self.edge_component[&edge]
    }

    /// Crossing where `edge` ends (`None` for crossingless circles).
    pub fn head(&self, edge: u32) -> Option<usize> {
        self.edge_head.get(&edge).copied()
    }

    /// The `μ×μ` linking matrix (half the signed count of mixed crossings).
    pub fn linking_matrix(&self) -> IntMatrix {
        let n = self.num_components();
        let mut twice = vec![vec![0i64; n]; n];
        for c in &self.crossings {
            let i = self.component_of(c.pd[0]);
            let j = self.component_of(c.pd[1]);
            if i != j {
                twice[i][j] += i64::from(c.sign);
                twice[j][i] += i64::from(c.sign);
            }
        }
        let rows: Vec<Vec<i64>> = twice
            .iter()
            .map(|r| {
                r.iter()
                    .map(|&x| {
                        assert!(x % 2 == 0, "odd mixed crossing count in a valid diagram");
                        x / 2
                    })
                    .collect()
            })
            .collect();
        IntMatrix::from_rows(n, &rows)
    }

    pub fn linking_number(&self, i: usize, j: usize) -> i64 {
        let m = self.linking_matrix();
        i64::try_from(m.get(i, j)).expect("linking number fits in i64")
    }

    /// Sum of signs of crossings of component `i` with itself.
    pub fn self_writhe(&self, i: usize) -> i64 {
        self.crossings
            .iter()
            .filter(|c| self.component_of(c.pd[0]) == i && self.component_of(c.pd[1]) == i)
            .map(|c| i64::from(c.sign))
            .sum()
    }

    /// Mirror image: every crossing switched, orientations kept.
    pub fn mirror(&self) -> LinkDiagram {
        let crossings: Vec<[u32; 4]> = self
            .crossings
            .iter()
            .map(|c| {
                let [a, b, cc, d] = c.pd;
                if c.sign > 0 {
                    [d, a, b, cc]
                } else {
                    [b, cc, d, a]
                }
            })
            .collect();
        parse::build(&crossings, &self.loops, &vec![0; crossings.len()]).expect("mirror of a valid diagram")
    }

    /// PD text; `parse_pd(print_pd(d)) == d`.
    pub fn print_pd(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for LinkDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut toks: Vec<String> =
            self.crossings.iter().map(|c| format!("X[{},{},{},{}]", c.pd[0], c.pd[1], c.pd[2], c.pd[3])).collect();
        toks.extend(self.loops.iter().map(|l| format!("O[{l}]")));
        f.write_str(&toks.join(" "))
    }
}

/// Parse whitespace-separated `X[a,b,c,d]` and `O[c]` tokens, or the form
/// `UNKNOT n` for the `n`-component unlink.
pub fn parse_pd(text: &str) -> Result<LinkDiagram, LinkParseError> {
    parse::parse_pd(text)
}

/// Parse any accepted link text: a braid `BR n: …`, `UNKNOT n`, or PD tokens.
pub fn parse_link(text: &str) -> Result<LinkDiagram, LinkParseError> {
    let t = text.trim_start();
    if t.starts_with("BR") {
        let b: BraidWord = text.parse()?;
        Ok(b.closure())
    } else {
        parse_pd(text)
    }
}

pub fn from_braid(b: &BraidWord) -> LinkDiagram {
    b.closure()
}

/// Names accepted by [`builtin`].
pub const BUILTIN_NAMES: &[&str] = &[
    "unknot",
    "hopf",
    "hopf_r2",
    "hopf_negative",
    "trefoil",
    "figure8",
    "solomon",
    "whitehead",
    "hopf_sum_trefoil",
    "unlink2",
    "unlink3",
];

/// Fixed reference diagrams. `unlinkN` gives the `N`-component unlink.
pub fn builtin(name: &str) -> Option<LinkDiagram> {
    let text = match name {
        "unknot" => "O[1]".to_string(),
        "hopf" => "X[1,3,2,4] X[3,1,4,2]".to_string(),
        // Hopf link with a Reidemeister II pair inserted (closure of σ1 σ1 σ1^-1 σ1).
        "hopf_r2" => "X[1,4,3,2] X[4,6,5,3] X[5,6,8,7] X[8,1,2,7]".to_string(),
        "hopf_negative" => "BR 2: -1 -1".to_string(),
        "trefoil" => "BR 2: 1 1 1".to_string(),
        "figure8" => "BR 3: 1 -2 1 -2".to_string(),
        "solomon" => "BR 2: 1 1 1 1".to_string(),
        "whitehead" => "BR 3: 1 1 -2 1 -2".to_string(),
        "hopf_sum_trefoil" => "BR 3: 1 1 1 2 2".to_string(),
        _ => {
            let n: usize = name.strip_prefix("unlink")?.parse().ok()?;
            if n == 0 {
                return None;
            }
            format!("UNKNOT {n}")
        }
    };
    Some(parse_link(&text).expect("built-in diagrams are valid"))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lk(d: &LinkDiagram) -> Vec<Vec<i64>> {
        let m = d.linking_matrix();
        (0..m.rows()).map(|i| m.row(i).iter().map(|x| i64::try_from(x).unwrap()).collect()).collect()
    }

    #[test]
    fn hopf_pd() {
        let d = parse_pd("X[1,3,2,4] X[3,1,4,2]").unwrap();
        assert_eq!(d.num_components(), 2);
        assert_eq!(d.crossings().len(), 2);
        assert_eq!(lk(&d), vec![vec![0, 1], vec![1, 0]]);
    }

    #[test]
    fn pd_errors() {
        assert_eq!(parse_pd("").unwrap_err().msg, "empty PD");
        assert_eq!(parse_pd("   ").unwrap_err().msg, "empty PD");
        let e = parse_pd("X[1,2,3]").unwrap_err();
        assert_eq!(e.msg, "crossing needs 4 arcs");
        assert_eq!(e.pos, 0);
        let e = parse_pd("X[1,3,2,4] X[3,1,4,5]").unwrap_err();
        assert!(e.msg.contains("appears"), "{}", e.msg);
        assert!(parse_pd("X[1,2,3,4").is_err());
        assert!(parse_pd("Y[1]").is_err());
        // Edge 1 enters both crossings as the under strand.
        let e = parse_pd("X[1,3,2,4] X[1,4,2,3]").unwrap_err();
        assert!(e.msg.contains("orientation"), "{}", e.msg);
        assert_eq!(e.pos, 11);
    }

    #[test]
    fn unknot_forms() {
        let d = parse_pd("UNKNOT 1").unwrap();
        assert_eq!(d.num_components(), 1);
        assert_eq!(parse_pd("O[1]").unwrap(), d);
        assert_eq!(parse_pd("UNKNOT 2").unwrap(), builtin("unlink2").unwrap());
    }

    #[test]
    fn braid_closures() {
        let h = from_braid(&"BR 2: 1 1".parse().unwrap());
        assert_eq!(h.num_components(), 2);
        assert_eq!(lk(&h), vec![vec![0, 1], vec![1, 0]]);
        let t = from_braid(&"BR 2: 1 1 1".parse().unwrap());
        assert_eq!(t.num_components(), 1);
        assert_eq!(t.self_writhe(0), 3);
        let u = from_braid(&"BR 2:".parse().unwrap());
        assert_eq!(u.num_components(), 2);
        assert_eq!(lk(&u), vec![vec![0, 0], vec![0, 0]]);
        let n = from_braid(&"BR 2: -1 -1".parse().unwrap());
        assert_eq!(lk(&n), vec![vec![0, -1], vec![-1, 0]]);
    }

    #[test]
    fn builtins_have_expected_shape() {
        let expect = [
            ("unknot", 1, 0),
            ("hopf", 2, 1),
            ("hopf_r2", 2, 1),
            ("hopf_negative", 2, -1),
            ("trefoil", 1, 0),
            ("figure8", 1, 0),
            ("solomon", 2, 2),
            ("whitehead", 2, 0),
            ("hopf_sum_trefoil", 2, 1),
            ("unlink2", 2, 0),
        ];
        for (name, mu, l) in expect {
            let d = builtin(name).unwrap();
            assert_eq!(d.num_components(), mu, "{name}");
            if mu == 2 {
                assert_eq!(d.linking_number(0, 1), l, "{name}");
            }
        }
        assert_eq!(builtin("hopf_r2").unwrap().crossings().len(), 4);
        assert!(builtin("nope").is_none());
        assert!(builtin("unlink0").is_none());
    }

    #[test]
    fn corpus_round_trips_and_mirrors() {
        for name in BUILTIN_NAMES {
            let d = builtin(name).unwrap();
            assert_eq!(parse_pd(&d.print_pd()).unwrap(), d, "{name}");
            let m = lk(&d);
            let mm = lk(&d.mirror());
            for i in 0..m.len() {
                assert_eq!(m[i][i], 0);
                for j in 0..m.len() {
                    assert_eq!(m[i][j], m[j][i]);
                    assert_eq!(mm[i][j], -m[i][j]);
                }
            }
            assert_eq!(d.mirror().mirror(), d);
        }
    }
}
