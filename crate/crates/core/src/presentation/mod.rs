//! Finitely presented groups: words, Wirtinger presentations of link
//! groups with peripheral words, the closed manifold `M_L`, and
//! abelianization by Smith normal form.

mod wirtinger;

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::linalg::{smith_normal_form, IntMatrix};

pub use wirtinger::{glue_ml, longitude, wirtinger, MeridianMap, MlPresentation, PeripheralData, Wirtinger};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PresentationError {
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("relator {relator} uses undeclared generator {gen}")]
    UnknownGenerator { relator: usize, gen: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    pub gen: usize,
    pub inv: bool,
}

impl Letter {
    pub fn new(gen: usize) -> Self {
        Letter { gen, inv: false }
    }

    pub fn inverse(self) -> Self {
        Letter { gen: self.gen, inv: !self.inv }
    }

    pub fn exponent(self) -> i64 {
        if self.inv {
            -1
        } else {
            1
        }
    }
}

pub type Word = Vec<Letter>;

/// `g^k` as a word.
pub fn power(gen: usize, k: i64) -> Word {
    let l = Letter { gen, inv: k < 0 };
    vec![l; k.unsigned_abs() as usize]
}

pub fn inverse(w: &[Letter]) -> Word {
    w.iter().rev().map(|l| l.inverse()).collect()
}

/// Cancel adjacent inverse pairs.
pub fn reduce(w: &[Letter]) -> Word {
    let mut out: Word = Vec::with_capacity(w.len());
    for &l in w {
        if out.last() == Some(&l.inverse()) {
            out.pop();
        } else {
            out.push(l);
        }
    }
    out
}

pub fn concat(parts: &[&[Letter]]) -> Word {
    reduce(&parts.concat())
}

/// `[u, v] = u v u⁻¹ v⁻¹`.
pub fn commutator(u: &[Letter], v: &[Letter]) -> Word {
    concat(&[u, v, &inverse(u), &inverse(v)])
}

/// Exponent sum of each generator.
pub fn exponent_sums(w: &[Letter], ngens: usize) -> Vec<i64> {
    let mut v = vec![0; ngens];
    for l in w {
        v[l.gen] += l.exponent();
    }
    v
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupPresentation {
    generators: Vec<String>,
    relators: Vec<Word>,
}

impl GroupPresentation {
    /// Relators are freely reduced; empty ones are dropped.
    pub fn new(generators: Vec<String>, relators: Vec<Word>) -> Result<Self, PresentationError> {
        for (k, r) in relators.iter().enumerate() {
            if let Some(l) = r.iter().find(|l| l.gen >= generators.len()) {
                return Err(PresentationError::UnknownGenerator { relator: k, gen: l.gen });
            }
        }
        let relators = relators.iter().map(|r| reduce(r)).filter(|r| !r.is_empty()).collect();
        Ok(GroupPresentation { generators, relators })
    }

    /// Free group on `n` generators named `x1 … xn`.
    pub fn free(n: usize) -> Self {
        GroupPresentation { generators: (1..=n).map(|i| format!("x{i}")).collect(), relators: vec![] }
    }

    pub fn generators(&self) -> &[String] {
        &self.generators
    }

    pub fn num_generators(&self) -> usize {
        self.generators.len()
    }

    pub fn relators(&self) -> &[Word] {
        &self.relators
    }

    pub fn word_to_string(&self, w: &[Letter]) -> String {
        if w.is_empty() {
            return "1".to_string();
        }
        let parts: Vec<String> = w
            .iter()
            .map(|l| if l.inv { format!("{}^-1", self.generators[l.gen]) } else { self.generators[l.gen].clone() })
            .collect();
        parts.join(" ")
    }

    /// Relation matrix: one row per relator, one column per generator.
    pub fn relation_matrix(&self) -> IntMatrix {
        let rows: Vec<Vec<i64>> = self.relators.iter().map(|r| exponent_sums(r, self.num_generators())).collect();
        IntMatrix::from_rows(self.num_generators(), &rows)
    }

    /// Eliminate generators that occur exactly once in some relator, by
    /// solving that relator for the generator and substituting.
    pub fn simplify(&self) -> GroupPresentation {
        let mut gens: Vec<Option<String>> = self.generators.iter().cloned().map(Some).collect();
        let mut rels: Vec<Word> = self.relators.clone();
        loop {
            let mut hit = None;
            'search: for (ri, r) in rels.iter().enumerate() {
                for (pos, l) in r.iter().enumerate() {
                    if r.iter().filter(|m| m.gen == l.gen).count() == 1 {
                        hit = Some((ri, pos));
                        break 'search;
                    }
                }
            }
            let Some((ri, pos)) = hit else { break };
            let r = rels.remove(ri);
            let l = r[pos];
            // r = u g^e v = 1  =>  g^e = u^-1 v^-1  =>  g = (v u)^-e
            let vu: Word = [&r[pos + 1..], &r[..pos]].concat();
            let image = if l.inv { reduce(&vu) } else { inverse(&vu) };
            rels = rels
                .iter()
                .map(|w| {
                    let mut out = Vec::new();
                    for m in w {
                        if m.gen == l.gen {
                            out.extend(if m.inv { inverse(&image) } else { image.clone() });
                        } else {
                            out.push(*m);
                        }
                    }
                    reduce(&out)
                })
                .filter(|w| !w.is_empty())
                .collect();
            gens[l.gen] = None;
        }
        // Renumber surviving generators.
        let mut map = vec![usize::MAX; gens.len()];
        let mut names = Vec::new();
        for (i, g) in gens.iter().enumerate() {
            if let Some(n) = g {
                map[i] = names.len();
                names.push(n.clone());
            }
        }
        let rels = rels.iter().map(|w| w.iter().map(|l| Letter { gen: map[l.gen], inv: l.inv }).collect()).collect();
        GroupPresentation::new(names, rels).expect("renumbered generators are declared")
    }
}

impl fmt::Display for GroupPresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rels: Vec<String> = self.relators.iter().map(|r| self.word_to_string(r)).collect();
        write!(f, "⟨{} | {}⟩", self.generators.join(", "), rels.join(", "))
    }
}

/// `H₁` of a presentation: invariant factors (`0` for a free summand,
/// units dropped) and each generator's coordinates in that decomposition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Abelianization {
    pub invariants: Vec<BigInt>,
    pub generator_images: Vec<Vec<BigInt>>,
}

impl Abelianization {
    pub fn free_rank(&self) -> usize {
        self.invariants.iter().filter(|d| d.is_zero()).count()
    }

    pub fn is_free_of_rank(&self, r: usize) -> bool {
        self.invariants.len() == r && self.free_rank() == r
    }

    /// `Z^3`, `Z/3 + Z^2`, `0`.
    pub fn describe(&self) -> String {
        describe_invariants(&self.invariants)
    }
}

pub fn describe_invariants(inv: &[BigInt]) -> String {
    let mut parts: Vec<String> = inv.iter().filter(|d| !d.is_zero()).map(|d| format!("Z/{d}")).collect();
    let r = inv.iter().filter(|d| d.is_zero()).count();
    match r {
        0 => {}
        1 => parts.push("Z".into()),
        _ => parts.push(format!("Z^{r}")),
    }
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join(" + ")
    }
}

pub fn abelianize(p: &GroupPresentation) -> Abelianization {
    let a = p.relation_matrix();
    let snf = smith_normal_form(&a);
    let diag = snf.diagonal();
    let n = p.num_generators();
    let d: Vec<BigInt> = (0..n).map(|k| diag.get(k).cloned().unwrap_or_else(BigInt::zero)).collect();
    let keep: Vec<usize> = (0..n).filter(|&k| !d[k].is_one()).collect();
    let invariants = keep.iter().map(|&k| d[k].clone()).collect();
    let generator_images = (0..n)
        .map(|g| {
            keep.iter()
                .map(|&k| {
                    let x = snf.v.get(g, k).clone();
                    if d[k].is_zero() {
                        x
                    } else {
                        x.mod_floor(&d[k])
                    }
                })
                .collect()
        })
        .collect();
    Abelianization { invariants, generator_images }
}
