use std::collections::BTreeMap;
use std::fmt;

use super::rewrite::{reduce, rewrite_at, Rules, Word};
use super::{NCElement, NCPresentation};
use crate::error::Result;
use crate::scalar::Scalar;

/// A word whose reductions disagree, with two of the normal forms reached.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnresolvedOverlap<K> {
    pub word: Vec<usize>,
    /// Positions of the first rewriting step of each branch.
    pub sites: (usize, usize),
    pub left: NCElement<K>,
    pub right: NCElement<K>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConfluenceReport<K> {
    pub max_len: usize,
    pub words_checked: usize,
    pub unresolved: Vec<UnresolvedOverlap<K>>,
    names: Vec<String>,
}

impl<K: Scalar> ConfluenceReport<K> {
    pub fn resolved(&self) -> bool {
        self.unresolved.is_empty()
    }
}

impl<K: Scalar> fmt::Display for ConfluenceReport<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.resolved() {
            return writeln!(
                f,
                "resolved up to length {} ({} overlap words checked)",
                self.max_len, self.words_checked
            );
        }
        writeln!(
            f,
            "{} unresolved overlap words up to length {}",
            self.unresolved.len(),
            self.max_len
        )?;
        for u in &self.unresolved {
            let w: Vec<&str> = u.word.iter().map(|&s| self.names[s].as_str()).collect();
            writeln!(
                f,
                "{}: rewriting at {} gives {}, at {} gives {}",
                w.join("*"),
                u.sites.0,
                u.left,
                u.sites.1,
                u.right
            )?;
        }
        Ok(())
    }
}

fn branch<K: Scalar>(rules: &Rules<K>, w: &[usize], k: usize) -> Result<BTreeMap<Word, K>> {
    reduce(rules, rewrite_at(rules, w, k, &K::one()))
}

/// Reduces every word of length `3..=max_len` having at least two
/// reducible positions along each possible first step and compares the
/// normal forms. This is a bounded check of the diamond condition, not a
/// proof.
pub fn confluence_check<K: Scalar>(p: &NCPresentation<K>, max_len: usize) -> Result<ConfluenceReport<K>> {
    let rules = p.rules();
    let m = p.symbol_count();
    let mut unresolved = Vec::new();
    let mut checked = 0;
    for len in 3..=max_len {
        let mut w = vec![0usize; len];
        loop {
            let sites: Vec<usize> = (0..len - 1).filter(|&k| w[k] > w[k + 1]).collect();
            if sites.len() >= 2 {
                checked += 1;
                let first = branch(&rules, &w, sites[0])?;
                for &k in &sites[1..] {
                    let other = branch(&rules, &w, k)?;
                    if other != first {
                        unresolved.push(UnresolvedOverlap {
                            word: w.clone(),
                            sites: (sites[0], k),
                            left: NCElement::from_normal_words(p.ext_ring(), first.clone()),
                            right: NCElement::from_normal_words(p.ext_ring(), other),
                        });
                        break;
                    }
                }
            }
            // next word in lexicographic order
            let mut i = len;
            loop {
                if i == 0 {
                    break;
                }
                i -= 1;
                w[i] += 1;
                if w[i] < m {
                    break;
                }
                w[i] = 0;
                if i == 0 {
                    i = usize::MAX;
                    break;
                }
            }
            if i == usize::MAX {
                break;
            }
        }
    }
    Ok(ConfluenceReport {
        max_len,
        words_checked: checked,
        unresolved,
        names: p.ext_ring().names().to_vec(),
    })
}
