//! Potentials: finite linear combinations of cycles, and their mutation.

use std::collections::BTreeMap;
use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::quiver::{composite_name, star_name, Quiver};

/// A cycle up to rotation. Paths list arrow names in traversal order (the first
/// arrow is traversed first) and are kept in their lexicographically least rotation.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum CyclicWord {
    /// The length-0 cycle `(i)` at a vertex.
    Vertex(String),
    Path(Vec<String>),
}

impl CyclicWord {
    pub fn path<S: Into<String>>(arrows: impl IntoIterator<Item = S>) -> Self {
        CyclicWord::Path(least_rotation(arrows.into_iter().map(Into::into).collect()))
    }

    pub fn vertex(label: impl Into<String>) -> Self {
        CyclicWord::Vertex(label.into())
    }

    /// Checks that the word is a closed path in `q`.
    pub fn check(&self, q: &Quiver) -> Result<()> {
        match self {
            CyclicWord::Vertex(v) => q.vertex_index(v).map(|_| ()),
            CyclicWord::Path(names) => {
                if names.is_empty() {
                    return Err(Error::NotComposable("empty path".into()));
                }
                let index = q.arrow_index();
                let mut ends = Vec::with_capacity(names.len());
                for name in names {
                    let e = index
                        .get(name.as_str())
                        .ok_or_else(|| Error::UnknownArrow(name.clone()))?;
                    ends.push(*e);
                }
                for k in 0..ends.len() {
                    let next = ends[(k + 1) % ends.len()];
                    if ends[k].1 != next.0 {
                        return Err(Error::NotComposable(format!(
                            "`{}` does not end where `{}` starts",
                            names[k],
                            names[(k + 1) % names.len()]
                        )));
                    }
                }
                Ok(())
            }
        }
    }
}

impl fmt::Display for CyclicWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CyclicWord::Vertex(v) => write!(f, "({v})"),
            CyclicWord::Path(p) => write!(f, "{}", p.join("·")),
        }
    }
}

fn least_rotation(word: Vec<String>) -> Vec<String> {
    let n = word.len();
    (0..n.max(1))
        .map(|r| {
            let mut w = word.clone();
            w.rotate_left(r.min(n));
            w
        })
        .min()
        .unwrap_or_default()
}

/// `W = Σ c_σ σ` with rotation-equivalent cycles merged and zero terms dropped.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Potential {
    terms: BTreeMap<CyclicWord, BigRational>,
}

impl Potential {
    pub fn zero() -> Self {
        Potential::default()
    }

    /// Builds and validates a potential on `q`.
    pub fn new(q: &Quiver, terms: Vec<(BigRational, CyclicWord)>) -> Result<Self> {
        let mut w = Potential::zero();
        for (c, word) in terms {
            word.check(q)?;
            w.add_term(c, word);
        }
        Ok(w)
    }

    fn add_term(&mut self, c: BigRational, word: CyclicWord) {
        let word = match word {
            CyclicWord::Path(p) => CyclicWord::Path(least_rotation(p)),
            v => v,
        };
        let entry = self.terms.entry(word.clone()).or_insert_with(BigRational::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&word);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&CyclicWord, &BigRational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, word: &CyclicWord) -> BigRational {
        self.terms.get(word).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }
}

/// Mutation of a quiver with potential at a loop-free vertex `i0`, `W' = W1 + W2 + W3`.
pub fn mutate_potential(q: &Quiver, w: &Potential, i0: &str) -> Result<(Quiver, Potential)> {
    let k = q.vertex_index(i0)?;
    let qm = q.mutate(i0)?;
    let index = q.arrow_index();
    let mut out = Potential::zero();

    // W1: the cubic terms α*, [β∘α], β* for every path j1 -α-> i0 -β-> j2.
    for alpha in q.arrows().iter().filter(|a| a.head == i0) {
        for beta in q.arrows().iter().filter(|b| b.tail == i0) {
            out.add_term(
                BigRational::one(),
                CyclicWord::path([
                    star_name(&alpha.name),
                    composite_name(&beta.name, &alpha.name),
                    star_name(&beta.name),
                ]),
            );
        }
    }

    for (word, c) in w.terms() {
        word.check(q)?;
        match word {
            CyclicWord::Vertex(v) if v == i0 => {
                // W3 = c·(−(i0) + Σ_j a_{j i0} (j))
                out.add_term(-c.clone(), CyclicWord::vertex(i0));
                for (j, label) in q.vertices().iter().enumerate() {
                    let a = q.count(j, k);
                    if a > 0 {
                        out.add_term(c * BigRational::from_integer(a.into()), CyclicWord::vertex(label));
                    }
                }
            }
            CyclicWord::Vertex(v) => out.add_term(c.clone(), CyclicWord::vertex(v)),
            CyclicWord::Path(names) => {
                let modified = modify_cycle(names, &index, k);
                out.add_term(c.clone(), CyclicWord::path(modified));
            }
        }
    }

    for (word, _) in out.terms() {
        word.check(&qm)?;
    }
    Ok((qm, out))
}

/// Replaces every consecutive pair (α into i0, β out of i0) by `[β∘α]`.
fn modify_cycle(
    names: &[String],
    index: &BTreeMap<&str, (usize, usize)>,
    i0: usize,
) -> Vec<String> {
    // Start at an arrow whose tail is not i0; one exists since i0 carries no loop.
    let start = names
        .iter()
        .position(|n| index[n.as_str()].0 != i0)
        .expect("cycle through a loop-free vertex leaves it");
    let mut rotated = names.to_vec();
    rotated.rotate_left(start);
    let mut out = Vec::with_capacity(rotated.len());
    let mut k = 0;
    while k < rotated.len() {
        let (_, head) = index[rotated[k].as_str()];
        if head == i0 {
            out.push(composite_name(&rotated[k + 1], &rotated[k]));
            k += 2;
        } else {
            out.push(rotated[k].clone());
            k += 1;
        }
    }
    out
}
